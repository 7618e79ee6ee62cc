//! Lattice points of `Z^d` under a positive-definite quadratic form.
//!
//! Everything here reduces to one enumeration kernel: the complete set of
//! lattice points closest to a rational target, found by a Fincke-Pohst
//! search over the `LDL^T` factorisation of the form. Coset minima and the
//! Voronoi-relevant vectors are derived from it.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{ldl_decompose, Ldl};
use crate::{Error, Rational, RationalMatrix, RationalVector, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 6;

/// A validated positive-definite Gram matrix on `Z^d`, `2 <= d <= 6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: RationalMatrix,
    ldl: Ldl,
}

impl QuadraticForm {
    pub fn new(gram: RationalMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let d = gram.rows();
        if !(MIN_DIM..=MAX_DIM).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        let ldl = ldl_decompose(&gram)?;
        Ok(QuadraticForm { gram, ldl })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(RationalMatrix::from_i64_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn ldl(&self) -> &Ldl {
        &self.ldl
    }

    /// `x^T Q x` for a rational vector.
    pub fn norm(&self, x: &[Rational]) -> Result<Rational> {
        self.check_dim(x.len())?;
        Ok(self.bilinear(x, x))
    }

    /// `x^T Q y`; both vectors must already have the form's dimension.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let d = self.dim();
        let mut acc = Rational::zero();
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..d {
                if !y[j].is_zero() {
                    row += self.gram.get(i, j) * &y[j];
                }
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// `x^T Q y` for lattice vectors.
    pub fn bilinear_int(&self, x: &LatticeVector, y: &LatticeVector) -> Rational {
        let d = self.dim();
        let mut acc = Rational::zero();
        for i in 0..d {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y.0[j] != 0 {
                    acc += self.gram.get(i, j) * Rational::from_integer(BigInt::from(x.0[i] * y.0[j]));
                }
            }
        }
        acc
    }

    pub fn norm_int(&self, x: &LatticeVector) -> Rational {
        self.bilinear_int(x, x)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

/// `x^T Q x`.
pub fn q_norm(q: &QuadraticForm, x: &[Rational]) -> Result<Rational> {
    q.norm(x)
}

/// A point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// First nonzero coordinate is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    /// The member of `{v, -v}` whose first nonzero coordinate is positive.
    pub fn lex_positive(&self) -> LatticeVector {
        if self.is_lex_positive() || self.is_zero() {
            self.clone()
        } else {
            -self
        }
    }

    pub fn parity(&self) -> ParityClass {
        ParityClass::of(self)
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector::from_i64(&self.0)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// An element of `Z^d / 2Z^d`.
///
/// Bits are stored most-significant-first (coordinate 0 is the highest of the
/// `d` bits), so the derived ordering is the lexicographic order of the
/// `d`-bit strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParityClass {
    bits: u8,
    dim: u8,
}

impl ParityClass {
    pub fn new(dim: usize, bits: u8) -> Self {
        debug_assert!(dim <= 8);
        let mask = if dim == 8 { u8::MAX } else { (1u8 << dim) - 1 };
        ParityClass {
            bits: bits & mask,
            dim: dim as u8,
        }
    }

    pub fn of(v: &LatticeVector) -> Self {
        let d = v.dim();
        let bits = v
            .0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x.rem_euclid(2) == 1)
            .fold(0u8, |acc, (i, _)| acc | (1 << (d - 1 - i)));
        ParityClass::new(d, bits)
    }

    /// All `2^d - 1` nonzero classes in increasing order.
    pub fn nonzero(dim: usize) -> impl Iterator<Item = ParityClass> {
        (1u16..(1u16 << dim)).map(move |b| ParityClass::new(dim, b as u8))
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i` of the canonical 0/1 representative.
    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> (self.dim as usize - 1 - i)) & 1 == 1
    }

    /// The 0/1 representative as a lattice vector.
    pub fn representative(&self) -> LatticeVector {
        LatticeVector((0..self.dim()).map(|i| i64::from(self.bit(i))).collect())
    }

    pub fn sum(self, other: ParityClass) -> ParityClass {
        ParityClass::new(self.dim(), self.bits ^ other.bits)
    }
}

impl PartialOrd for ParityClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParityClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, self.bits).cmp(&(other.dim, other.bits))
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Minimum value and the complete, sorted set of minimisers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimizers {
    pub value: Rational,
    pub points: Vec<LatticeVector>,
}

fn round_half_up(x: &Rational) -> BigInt {
    (x + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("lattice coordinate exceeds i64")
}

struct ClosestSearch<'a> {
    ldl: &'a Ldl,
    target: &'a [Rational],
    coords: Vec<i64>,
    best: Rational,
    found: Vec<LatticeVector>,
}

impl ClosestSearch<'_> {
    /// Centre of coordinate `i` once coordinates `i+1..` are fixed.
    fn center(&self, i: usize) -> Rational {
        let d = self.target.len();
        let mut c = self.target[i].clone();
        for j in (i + 1)..d {
            let lji = self.ldl.l.get(j, i);
            if !lji.is_zero() {
                c -= lji * (Rational::from_integer(self.coords[j].into()) - &self.target[j]);
            }
        }
        c
    }

    fn term(&self, i: usize, x: i64, center: &Rational) -> Rational {
        let y = Rational::from_integer(x.into()) - center;
        &self.ldl.d[i] * &y * &y
    }

    fn visit(&mut self, x: i64, i: usize, center: &Rational, partial: &Rational) -> bool {
        let total = partial + self.term(i, x, center);
        if total > self.best {
            return false;
        }
        self.coords[i] = x;
        if i == 0 {
            if total < self.best {
                self.best = total;
                self.found.clear();
            }
            self.found.push(LatticeVector(self.coords.clone()));
        } else {
            self.descend(i - 1, &total);
        }
        true
    }

    fn descend(&mut self, i: usize, partial: &Rational) {
        let center = self.center(i);
        let start = to_i64(&round_half_up(&center));
        // Zig-zag outward from the rounded centre; each side stops at the
        // first coordinate whose contribution alone exceeds the bound.
        self.visit(start, i, &center, partial);
        let mut up = true;
        let mut down = true;
        let mut step = 1;
        while up || down {
            if up && !self.visit(start + step, i, &center, partial) {
                up = false;
            }
            if down && !self.visit(start - step, i, &center, partial) {
                down = false;
            }
            step += 1;
        }
    }
}

/// All lattice points `t` minimising `Q(b - t)`, with the minimal value.
pub fn closest_lattice_points(q: &QuadraticForm, target: &[Rational]) -> Result<Minimizers> {
    q.check_dim(target.len())?;
    let d = q.dim();
    let rounded: Vec<Rational> = target
        .iter()
        .map(|x| Rational::from_integer(round_half_up(x)))
        .collect();
    let diff: Vec<Rational> = target.iter().zip(&rounded).map(|(a, b)| a - b).collect();
    let initial = q.bilinear(&diff, &diff);
    let mut search = ClosestSearch {
        ldl: q.ldl(),
        target,
        coords: vec![0; d],
        best: initial,
        found: Vec::new(),
    };
    search.descend(d - 1, &Rational::zero());
    let mut points = search.found;
    points.sort();
    points.dedup();
    Ok(Minimizers {
        value: search.best,
        points,
    })
}

/// Minimal vectors of the coset `c + 2Z^d`, `c != 0`.
///
/// Writing `v = c + 2w`, `Q(v) = 4 Q(w + c/2)`, so this is a closest-point
/// query for the target `-c/2`.
pub fn shortest_vectors_in_coset(q: &QuadraticForm, c: ParityClass) -> Minimizers {
    debug_assert!(!c.is_zero(), "zero coset has the trivial minimiser");
    let rep = c.representative();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let target: Vec<Rational> = rep
        .0
        .iter()
        .map(|&x| -Rational::from_integer(x.into()) * &half)
        .collect();
    let m = closest_lattice_points(q, &target).expect("dimension checked");
    let mut points: Vec<LatticeVector> = m
        .points
        .iter()
        .map(|w| LatticeVector(rep.0.iter().zip(&w.0).map(|(c, w)| c + 2 * w).collect()))
        .collect();
    points.sort();
    Minimizers {
        value: m.value * Rational::from_integer(BigInt::from(4)),
        points,
    }
}

/// Voronoi-relevant vectors, one lexicographically positive representative
/// per `±` pair, sorted.
///
/// `v` is relevant iff `±v` are the only minimal vectors of its parity coset.
pub fn relevant_vectors(q: &QuadraticForm) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = ParityClass::nonzero(q.dim())
        .filter_map(|c| {
            let m = shortest_vectors_in_coset(q, c);
            (m.points.len() == 2).then(|| m.points[0].lex_positive())
        })
        .collect();
    out.sort();
    out
}
