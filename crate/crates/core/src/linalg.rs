//! Exact linear algebra over the rationals.
//!
//! Ranks are computed by fraction-free elimination on integer rows: every
//! rational row is first cleared of denominators, and each updated row is
//! divided by the gcd of its entries so intermediate values stay small on the
//! sparse incidence matrices that dominate the topology checks. Determinants
//! use Bareiss elimination.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// A dense vector of exact rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl Deref for RationalVector {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl AsRef<[Rational]> for RationalVector {
    fn as_ref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(v: Vec<Rational>) -> Self {
        RationalVector(v)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    /// Convenience constructor for small integer matrices.
    ///
    /// Panics if the rows are ragged.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| Rational::from_integer(x.into())))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<RationalVector> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(RationalVector(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(x)
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    /// Returns the first off-diagonal position where `M != M^T`, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.get(r, c) != self.get(c, r) {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        self.get(r, c)
    }
}

/// Scales a rational row to a primitive integer row with the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank over the rationals of a list of integer rows of equal length `cols`.
///
/// Pivoting takes the first row with a nonzero entry in the current column.
pub fn integer_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = &pivot[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let g = a.gcd(pv);
            let (mp, ma) = (pv / &g, &a / &g);
            for c in col..cols {
                if pivot[c].is_zero() {
                    if !row[c].is_zero() {
                        row[c] *= &mp;
                    }
                } else {
                    row[c] = &row[c] * &mp - &ma * &pivot[c];
                }
            }
            make_primitive(&mut row[col + 1..]);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact rank of a rational matrix.
pub fn rank(m: &RationalMatrix) -> usize {
    let rows = (0..m.rows())
        .map(|r| integer_row(m.row(r)))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    integer_rank(rows, m.cols())
}

/// Rank of the given rows, each of length `cols`.
pub fn rank_of_rows<R: AsRef<[Rational]>>(rows: &[R], cols: usize) -> usize {
    let rows = rows
        .iter()
        .map(|r| integer_row(r.as_ref()))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    integer_rank(rows, cols)
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dimension<P: AsRef<[Rational]>>(points: &[P]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?.as_ref();
    let dim = first.len();
    let mut diffs = Vec::with_capacity(points.len().saturating_sub(1));
    for p in &points[1..] {
        let p = p.as_ref();
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let row: Vec<Rational> = p.iter().zip(first).map(|(a, b)| a - b).collect();
        diffs.push(row);
    }
    Ok(rank_of_rows(&diffs, dim))
}

/// `Q = L D L^T` with `L` unit lower triangular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldl {
    pub l: RationalMatrix,
    pub d: Vec<Rational>,
}

impl Ldl {
    pub fn reconstruct(&self) -> RationalMatrix {
        let n = self.d.len();
        let mut out = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..=i.min(j) {
                    acc += self.l.get(i, k) * &self.d[k] * self.l.get(j, k);
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

/// LDL^T factorisation of a symmetric matrix, failing unless every pivot is
/// strictly positive.
pub fn ldl_decompose(q: &RationalMatrix) -> Result<Ldl> {
    if !q.is_square() {
        return Err(Error::NotSquare {
            rows: q.rows(),
            cols: q.cols(),
        });
    }
    if let Some((row, col)) = q.asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let n = q.rows();
    let mut l = RationalMatrix::identity(n);
    let mut d: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        let mut di = q.get(i, i).clone();
        for k in 0..i {
            let lik = l.get(i, k);
            di -= lik * lik * &d[k];
        }
        if !di.is_positive() {
            return Err(Error::NotPositiveDefinite { pivot: i });
        }
        for j in (i + 1)..n {
            let mut v = q.get(j, i).clone();
            for k in 0..i {
                v -= l.get(j, k) * l.get(i, k) * &d[k];
            }
            l.set(j, i, v / &di);
        }
        d.push(di);
    }
    Ok(Ldl { l, d })
}

/// One exact solution of `A x = b`, with non-pivot variables set to zero, or
/// `None` if the system is inconsistent.
pub fn solve_linear(a: &RationalMatrix, b: &[Rational]) -> Result<Option<RationalVector>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..=cols {
                let v = &m[r][k] * &f;
                m[i][k] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(None);
    }
    let mut x = RationalVector::zeros(cols);
    for (i, &c) in pivots.iter().enumerate() {
        x.0[c] = m[i][cols].clone();
    }
    Ok(Some(x))
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    // Clear denominators row by row, remembering the scale.
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { prev };
    Ok(Rational::new(sign * det, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::zeros(2, 3)), 0);
    }

    #[test]
    fn rank_triangle_incidence() {
        // rows = vertices, cols = edges 01, 02, 12
        let m = RationalMatrix::from_i64_rows(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.transpose()), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 3)],
            vec![q(3, 2), q(1, 1)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn affine_dimension_examples() {
        let pts = [
            RationalVector::from_i64(&[0, 0]),
            RationalVector::from_i64(&[1, 0]),
            RationalVector::from_i64(&[0, 1]),
        ];
        assert_eq!(affine_dimension(&pts).unwrap(), 2);
        let line = [
            RationalVector::from_i64(&[0, 0, 0]),
            RationalVector::from_i64(&[1, 1, 1]),
            RationalVector::from_i64(&[2, 2, 2]),
        ];
        assert_eq!(affine_dimension(&line).unwrap(), 1);
        // 0, e1, e2, e3, e1+e2, e1+e2-e3 padded to dimension 5
        let oct = [
            RationalVector::from_i64(&[0, 0, 0, 0, 0]),
            RationalVector::from_i64(&[1, 0, 0, 0, 0]),
            RationalVector::from_i64(&[0, 1, 0, 0, 0]),
            RationalVector::from_i64(&[0, 0, 1, 0, 0]),
            RationalVector::from_i64(&[1, 1, 0, 0, 0]),
            RationalVector::from_i64(&[1, 1, -1, 0, 0]),
        ];
        assert_eq!(affine_dimension(&oct).unwrap(), 3);
    }

    #[test]
    fn affine_dimension_errors() {
        let empty: [RationalVector; 0] = [];
        assert_eq!(affine_dimension(&empty), Err(Error::EmptyInput));
        let bad = [
            RationalVector::from_i64(&[0, 0]),
            RationalVector::from_i64(&[0, 0, 1]),
        ];
        assert!(matches!(
            affine_dimension(&bad),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ldl_examples() {
        let i5 = RationalMatrix::identity(5);
        let f = ldl_decompose(&i5).unwrap();
        assert_eq!(f.l, i5);
        assert!(f.d.iter().all(|x| x.is_one()));

        let hex = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]);
        let f = ldl_decompose(&hex).unwrap();
        assert_eq!(f.d, vec![q(2, 1), q(3, 2)]);
        assert_eq!(*f.l.get(1, 0), q(1, 2));
        assert_eq!(f.reconstruct(), hex);

        let indef = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 1]]);
        assert_eq!(
            ldl_decompose(&indef),
            Err(Error::NotPositiveDefinite { pivot: 1 })
        );
        let asym = RationalMatrix::from_i64_rows(&[&[1, 2], &[0, 1]]);
        assert!(matches!(ldl_decompose(&asym), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn solve_examples() {
        let x = solve_linear(&RationalMatrix::identity(2), &[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, Some(RationalVector::from_i64(&[3, 5])));

        let a = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let x = solve_linear(&a, &[q(2, 1)]).unwrap();
        assert_eq!(x, Some(RationalVector::from_i64(&[2, 0])));

        let a = RationalMatrix::from_i64_rows(&[&[1], &[1]]);
        assert_eq!(solve_linear(&a, &[q(0, 1), q(1, 1)]).unwrap(), None);

        assert!(solve_linear(&a, &[q(0, 1)]).is_err());
    }

    #[test]
    fn determinant_examples() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]);
        assert_eq!(determinant(&m).unwrap(), q(3, 1));
        let m = RationalMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(determinant(&m).unwrap(), q(-1, 1));
        let m = RationalMatrix::from_rows(vec![
            vec![q(1, 2), q(0, 1)],
            vec![q(7, 3), q(2, 5)],
        ])
        .unwrap();
        assert_eq!(determinant(&m).unwrap(), q(1, 5));
        let singular = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&singular).unwrap(), q(0, 1));
    }
}
