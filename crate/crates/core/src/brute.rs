//! Exhaustive box scans used to cross-check the enumeration kernels.
//!
//! Nothing here shares code with the Fincke-Pohst search. The form is scaled
//! to an integer matrix and every candidate in the coordinate box
//! `|x_i| <= radius` is evaluated in `i128`. Each scan is repeated with the
//! radius doubled, and a changed answer is reported as [`Error::BoxTooSmall`]
//! instead of being silently truncated.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::solve_linear;
use crate::{Error, LatticeVector, ParityClass, QuadraticForm, Rational};

/// Largest dimension the oracle accepts.
pub const MAX_ORACLE_DIM: usize = 4;

/// The coordinate box `|x_i| <= radius`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    pub radius: u32,
}

impl BoxSpec {
    pub fn new(radius: u32) -> Self {
        assert!(radius >= 1, "box radius must be positive");
        BoxSpec { radius }
    }

    fn doubled(self) -> Self {
        BoxSpec {
            radius: self.radius * 2,
        }
    }
}

/// The form times the lcm of its denominators, as machine integers.
struct IntForm {
    g: Vec<Vec<i128>>,
}

impl IntForm {
    fn new(q: &QuadraticForm) -> Result<Self, Error> {
        let d = q.dim();
        if d > MAX_ORACLE_DIM {
            return Err(Error::OracleDimension {
                max: MAX_ORACLE_DIM,
                found: d,
            });
        }
        let gram = q.gram();
        let mut lcm = BigInt::one();
        for i in 0..d {
            for j in 0..d {
                lcm = lcm.lcm(gram.get(i, j).denom());
            }
        }
        let g = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let x = gram.get(i, j);
                        (x.numer() * (&lcm / x.denom()))
                            .to_i128()
                            .expect("oracle forms have small entries")
                    })
                    .collect()
            })
            .collect();
        Ok(IntForm { g })
    }

    fn norm(&self, v: &[i128]) -> i128 {
        let mut acc = 0;
        for (i, row) in self.g.iter().enumerate() {
            if v[i] == 0 {
                continue;
            }
            let mut s = 0;
            for (j, x) in row.iter().enumerate() {
                s += x * v[j];
            }
            acc += v[i] * s;
        }
        acc
    }
}

/// Every point of the box in lexicographic order.
fn box_points(d: usize, b: BoxSpec) -> impl Iterator<Item = Vec<i64>> {
    let r = i64::from(b.radius);
    let side = (2 * r + 1) as u64;
    let total = side.pow(d as u32);
    (0..total).map(move |mut n| {
        let mut p = vec![0i64; d];
        for i in (0..d).rev() {
            p[i] = (n % side) as i64 - r;
            n /= side;
        }
        p
    })
}

fn stable<T: PartialEq>(b: BoxSpec, scan: impl Fn(BoxSpec) -> T) -> Result<T, Error> {
    let small = scan(b);
    if small != scan(b.doubled()) {
        return Err(Error::BoxTooSmall { radius: b.radius });
    }
    Ok(small)
}

/// Minimal scaled value and all minimisers of `value(p)` over box points
/// accepted by `keep`.
fn argmin(
    d: usize,
    b: BoxSpec,
    keep: impl Fn(&[i64]) -> bool,
    value: impl Fn(&[i64]) -> i128,
) -> Option<(i128, BTreeSet<LatticeVector>)> {
    let mut best: Option<(i128, BTreeSet<LatticeVector>)> = None;
    for p in box_points(d, b) {
        if !keep(&p) {
            continue;
        }
        let v = value(&p);
        match &mut best {
            Some((m, set)) if v == *m => {
                set.insert(LatticeVector(p));
            }
            Some((m, _)) if v > *m => {}
            _ => {
                let mut set = BTreeSet::new();
                set.insert(LatticeVector(p));
                best = Some((v, set));
            }
        }
    }
    best
}

fn scale_of(q: &QuadraticForm) -> Rational {
    let gram = q.gram();
    let d = q.dim();
    let mut lcm = BigInt::one();
    for i in 0..d {
        for j in 0..d {
            lcm = lcm.lcm(gram.get(i, j).denom());
        }
    }
    Rational::from_integer(lcm)
}

/// Minimal norm and all minimisers in the coset `c + 2Z^d` by scanning the box.
pub fn brute_shortest_in_coset(
    q: &QuadraticForm,
    c: ParityClass,
    b: BoxSpec,
) -> Result<(Rational, Vec<LatticeVector>), Error> {
    let f = IntForm::new(q)?;
    let d = q.dim();
    let scan = |b: BoxSpec| {
        argmin(
            d,
            b,
            |p| ParityClass::of(&LatticeVector(p.to_vec())) == c,
            |p| f.norm(&p.iter().map(|&x| i128::from(x)).collect::<Vec<_>>()),
        )
    };
    let (m, set) = stable(b, scan)?.ok_or(Error::EmptyInput)?;
    Ok((
        Rational::from_integer(BigInt::from(m)) / scale_of(q),
        set.into_iter().collect(),
    ))
}

/// All lattice points nearest to the rational point `target`, by scanning the
/// box.
pub fn brute_dual_cell(
    q: &QuadraticForm,
    target: &[Rational],
    b: BoxSpec,
) -> Result<Vec<LatticeVector>, Error> {
    let f = IntForm::new(q)?;
    let d = q.dim();
    if target.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: target.len(),
        });
    }
    // target = p / m with integer p, so Q(target - t) m^2 = Q(p - m t).
    let m = target.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let p: Vec<i128> = target
        .iter()
        .map(|x| (x.numer() * (&m / x.denom())).to_i128().expect("small target"))
        .collect();
    let m = m.to_i128().expect("small denominator");
    let scan = |b: BoxSpec| {
        argmin(
            d,
            b,
            |_| true,
            |t| {
                let diff: Vec<i128> = p
                    .iter()
                    .zip(t)
                    .map(|(pi, &ti)| pi - m * i128::from(ti))
                    .collect();
                f.norm(&diff)
            },
        )
        .map(|(_, set)| set)
    };
    Ok(stable(b, scan)?
        .ok_or(Error::EmptyInput)?
        .into_iter()
        .collect())
}

/// Every signed lattice vector `t` whose bisector supports a facet of the
/// Voronoi cell of the origin.
///
/// The witness for `t` is the midpoint `t/2`: it lies on the bisector of `t`
/// and the facet is irredundant exactly when every other lattice point is
/// strictly farther from it than `0` and `t` are. Equivalently
/// `Q(t - 2u) > Q(t)` for every box point `u` outside `{0, t}`.
pub fn brute_voronoi_facets(q: &QuadraticForm, b: BoxSpec) -> Result<Vec<LatticeVector>, Error> {
    let f = IntForm::new(q)?;
    let d = q.dim();
    let scan = |b: BoxSpec| {
        let r = i64::from(b.radius);
        // Every t - 2u lies in the box of radius 3r. Bucket those points by
        // parity and sort by norm so each witness test stops at Q(t).
        let mut by_class: Vec<Vec<(i128, Vec<i64>)>> = vec![Vec::new(); 1 << d];
        for v in box_points(d, BoxSpec { radius: 3 * b.radius }) {
            let n = f.norm(&v.iter().map(|&x| i128::from(x)).collect::<Vec<_>>());
            by_class[ParityClass::of(&LatticeVector(v.clone())).bits() as usize].push((n, v));
        }
        for bucket in &mut by_class {
            bucket.sort();
        }
        let mut out = BTreeSet::new();
        for t in box_points(d, b) {
            if t.iter().all(|&x| x == 0) {
                continue;
            }
            let nt = f.norm(&t.iter().map(|&x| i128::from(x)).collect::<Vec<_>>());
            let bucket = &by_class[ParityClass::of(&LatticeVector(t.clone())).bits() as usize];
            let beaten = bucket
                .iter()
                .take_while(|(n, _)| *n <= nt)
                .any(|(_, v)| {
                    let reachable = v.iter().zip(&t).all(|(a, b)| (a - b).abs() <= 2 * r);
                    let trivial = v == &t || v.iter().zip(&t).all(|(a, b)| *a == -b);
                    reachable && !trivial
                });
            if !beaten {
                out.insert(LatticeVector(t));
            }
        }
        out
    };
    Ok(stable(b, scan)?.into_iter().collect())
}

/// `(Q^{-1})_{ii}` for every `i`.
fn inverse_diagonal(q: &QuadraticForm) -> Vec<Rational> {
    let d = q.dim();
    (0..d)
        .map(|i| {
            let mut e = vec![Rational::zero(); d];
            e[i] = Rational::one();
            let col = solve_linear(q.gram(), &e)
                .expect("square system")
                .expect("positive definite forms are invertible");
            col[i].clone()
        })
        .collect()
}

/// Smallest `r >= 0` with `r^2 >= x`.
fn ceil_sqrt(x: &Rational) -> u32 {
    let mut r = 0u32;
    while Rational::from_integer(BigInt::from(r) * BigInt::from(r)) < *x {
        r += 1;
    }
    r
}

/// A box radius containing every lattice point `x` with
/// `Q(x - center) <= bound`, from `(x_i - c_i)^2 <= bound (Q^{-1})_{ii}`.
pub fn radius_for(q: &QuadraticForm, center: &[Rational], bound: &Rational) -> u32 {
    inverse_diagonal(q)
        .iter()
        .zip(center)
        .map(|(inv, c)| ceil_sqrt(&(bound * inv)) + c.abs().ceil().to_integer().to_u32().expect("small centre"))
        .max()
        .unwrap_or(1)
        .max(1)
}

/// A radius that contains every coset minimum, and hence every relevant
/// vector together with all competitors its witness test needs.
pub fn sufficient_radius_for_cosets(q: &QuadraticForm) -> u32 {
    let d = q.dim();
    let bound = ParityClass::nonzero(d)
        .map(|c| q.norm_int(&c.representative()))
        .max()
        .expect("d >= 1");
    radius_for(q, &vec![Rational::zero(); d], &bound)
}

/// A radius that contains every lattice point nearest to `target`.
pub fn sufficient_radius_for_target(q: &QuadraticForm, target: &[Rational]) -> u32 {
    let rounded: Vec<Rational> = target.iter().map(|x| x.round()).collect();
    let diff: Vec<Rational> = target.iter().zip(&rounded).map(|(a, b)| a - b).collect();
    radius_for(q, target, &q.bilinear(&diff, &diff))
}

/// Retries a scan with growing boxes, starting at `radius`, until it is stable
/// or `max_radius` is exceeded.
pub fn with_growing_box<T>(
    radius: u32,
    max_radius: u32,
    mut scan: impl FnMut(BoxSpec) -> Result<T, Error>,
) -> Result<T, Error> {
    let mut r = radius;
    loop {
        match scan(BoxSpec::new(r)) {
            Err(Error::BoxTooSmall { .. }) if r * 2 <= max_radius => r *= 2,
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RationalVector;

    fn hex() -> QuadraticForm {
        QuadraticForm::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap()
    }

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn coset_scan_square() {
        let q = QuadraticForm::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let (m, pts) = brute_shortest_in_coset(&q, ParityClass::new(2, 0b10), BoxSpec::new(2)).unwrap();
        assert_eq!(m, r(1, 1));
        assert_eq!(pts, vec![lv(&[-1, 0]), lv(&[1, 0])]);
    }

    #[test]
    fn coset_scan_hexagon() {
        let (m, pts) = brute_shortest_in_coset(&hex(), ParityClass::new(2, 0b11), BoxSpec::new(3)).unwrap();
        assert_eq!(m, r(2, 1));
        assert_eq!(pts, vec![lv(&[-1, 1]), lv(&[1, -1])]);
    }

    #[test]
    fn small_box_is_detected() {
        // Basis (1,0), (2,1): the shortest odd-second-coordinate vector is (-2,1).
        let q = QuadraticForm::from_i64_rows(&[&[1, 2], &[2, 5]]).unwrap();
        let c = ParityClass::new(2, 0b01);
        assert_eq!(
            brute_shortest_in_coset(&q, c, BoxSpec::new(1)),
            Err(Error::BoxTooSmall { radius: 1 })
        );
        let (m, _) = brute_shortest_in_coset(&q, c, BoxSpec::new(2)).unwrap();
        assert_eq!(m, r(1, 1));
    }

    #[test]
    fn facet_scans() {
        let sq = QuadraticForm::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(brute_voronoi_facets(&sq, BoxSpec::new(2)).unwrap().len(), 4);
        assert_eq!(brute_voronoi_facets(&hex(), BoxSpec::new(2)).unwrap().len(), 6);
        let cube = QuadraticForm::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(brute_voronoi_facets(&cube, BoxSpec::new(2)).unwrap().len(), 6);
    }

    #[test]
    fn dual_cell_scans() {
        let sq = QuadraticForm::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let half = [r(1, 2), r(1, 2)];
        assert_eq!(brute_dual_cell(&sq, &half, BoxSpec::new(2)).unwrap().len(), 4);
        let third = [r(1, 3), r(1, 3)];
        assert_eq!(brute_dual_cell(&hex(), &third, BoxSpec::new(2)).unwrap().len(), 3);
        let p = RationalVector::from_i64(&[1, -1]);
        assert_eq!(brute_dual_cell(&sq, &p, BoxSpec::new(2)).unwrap(), vec![lv(&[1, -1])]);
    }

    #[test]
    fn oracle_refuses_large_dimensions() {
        let q = crate::forms::NamedLattice::parse("Z5").unwrap().form();
        assert!(matches!(
            brute_voronoi_facets(&q, BoxSpec::new(1)),
            Err(Error::OracleDimension { max: 4, found: 5 })
        ));
    }

    #[test]
    fn sufficient_radii() {
        let q = QuadraticForm::from_i64_rows(&[&[1, 2], &[2, 5]]).unwrap();
        // Q^{-1} = [[5, -2], [-2, 1]]; the largest 0/1 norm is 10.
        assert_eq!(sufficient_radius_for_cosets(&q), 8);
        let sq = QuadraticForm::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(sufficient_radius_for_target(&sq, &[r(1, 2), r(1, 2)]), 2);
        assert_eq!(sufficient_radius_for_target(&sq, &[r(0, 1), r(0, 1)]), 1);
    }

    #[test]
    fn growing_box_recovers() {
        let q = QuadraticForm::from_i64_rows(&[&[1, 2], &[2, 5]]).unwrap();
        let c = ParityClass::new(2, 0b01);
        let (m, _) = with_growing_box(1, 8, |b| brute_shortest_in_coset(&q, c, b)).unwrap();
        assert_eq!(m, r(1, 1));
    }
}
