//! Gram matrices of the classical root lattices and their duals.
//!
//! All matrices are integral; dual lattices are rescaled so that their Gram
//! matrices have integer entries. Scaling a form does not change its Voronoi
//! cell combinatorics.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{MAX_DIM, MIN_DIM};
use crate::{Error, QuadraticForm, RationalMatrix, Result};

/// The named families the generator knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// The cubic lattice `Z^d`.
    Z,
    /// The root lattice `A_d`.
    A,
    /// Its dual `A_d^*`, scaled by `d + 1`.
    ADual,
    /// The root lattice `D_d` (`d >= 3`; `D_2` is `Z^2` scaled by 2).
    D,
    /// Its dual `D_d^*`, scaled by 4.
    DDual,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Z, Family::A, Family::ADual, Family::D, Family::DDual];

    /// Short name used in file names: `Z`, `A`, `Astar`, `D`, `Dstar`.
    pub fn name(self) -> &'static str {
        match self {
            Family::Z => "Z",
            Family::A => "A",
            Family::ADual => "Astar",
            Family::D => "D",
            Family::DDual => "Dstar",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family member in a given dimension, e.g. `Astar5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NamedLattice {
    pub family: Family,
    pub dim: usize,
}

impl NamedLattice {
    pub fn new(family: Family, dim: usize) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(NamedLattice { family, dim })
    }

    /// Parses names like `Z5`, `A4`, `Astar5`, `dstar4`.
    pub fn parse(s: &str) -> Option<Self> {
        let split = s.find(|c: char| c.is_ascii_digit())?;
        let family = Family::from_name(&s[..split])?;
        let dim = s[split..].parse().ok()?;
        NamedLattice::new(family, dim).ok()
    }

    pub fn id(&self) -> String {
        alloc::format!("{}{}", self.family.name(), self.dim)
    }

    pub fn gram_i64(&self) -> Vec<Vec<i64>> {
        gram_i64(self.family, self.dim)
    }

    pub fn form(&self) -> QuadraticForm {
        let rows = self.gram_i64();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        QuadraticForm::new(RationalMatrix::from_i64_rows(&refs))
            .expect("named lattices are positive definite")
    }
}

/// Integral Gram matrix of a named lattice in dimension `d`.
pub fn gram_i64(family: Family, d: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; d]; d];
    match family {
        Family::Z => {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = 1;
            }
        }
        Family::A => {
            for i in 0..d {
                g[i][i] = 2;
                if i + 1 < d {
                    g[i][i + 1] = -1;
                    g[i + 1][i] = -1;
                }
            }
        }
        Family::ADual => {
            for (i, row) in g.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = if i == j { d as i64 } else { -1 };
                }
            }
        }
        Family::D => {
            if d == 2 {
                g[0][0] = 2;
                g[1][1] = 2;
                return g;
            }
            // Chain 0 - 1 - ... - (d-2), with node d-1 attached to d-3.
            for i in 0..d {
                g[i][i] = 2;
            }
            for i in 0..d - 2 {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
            g[d - 3][d - 1] = -1;
            g[d - 1][d - 3] = -1;
        }
        Family::DDual => {
            // Basis 2e_1, ..., 2e_{d-1}, (1, ..., 1).
            for i in 0..d - 1 {
                g[i][i] = 4;
                g[i][d - 1] = 2;
                g[d - 1][i] = 2;
            }
            g[d - 1][d - 1] = d as i64;
        }
    }
    g
}

/// Every named lattice for `d` in the given range.
pub fn all_named(dims: core::ops::RangeInclusive<usize>) -> Vec<NamedLattice> {
    let mut out = Vec::new();
    for d in dims {
        for family in Family::ALL {
            if let Ok(n) = NamedLattice::new(family, d) {
                out.push(n);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::relevant_vectors;
    use crate::linalg::determinant;
    use crate::Rational;
    use num_bigint::BigInt;

    fn det(n: NamedLattice) -> Rational {
        determinant(n.form().gram()).unwrap()
    }

    fn int(x: i64) -> Rational {
        Rational::from_integer(BigInt::from(x))
    }

    #[test]
    fn determinants_match_the_known_discriminants() {
        for d in 2..=6 {
            let n = |f| NamedLattice::new(f, d).unwrap();
            assert_eq!(det(n(Family::Z)), int(1));
            assert_eq!(det(n(Family::A)), int(d as i64 + 1));
            // det(A_d^*) = 1/(d+1), scaled by (d+1)^d.
            assert_eq!(det(n(Family::ADual)), int((d as i64 + 1).pow(d as u32 - 1)));
            assert_eq!(det(n(Family::D)), int(4));
            // det(D_d^*) = 1/4, scaled by 4^d.
            assert_eq!(det(n(Family::DDual)), int(4i64.pow(d as u32 - 1)));
        }
    }

    #[test]
    fn relevant_vector_counts() {
        let count = |s: &str| relevant_vectors(&NamedLattice::parse(s).unwrap().form()).len();
        assert_eq!(count("Z5"), 5);
        // A_d has d(d+1)/2 pairs of roots, all relevant.
        assert_eq!(count("A4"), 10);
        // The permutohedron has 2^(d+1) - 2 facets.
        assert_eq!(count("Astar5"), 31);
        assert_eq!(count("Astar3"), 7);
        // D_d: d(d-1) pairs of roots.
        assert_eq!(count("D4"), 12);
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            NamedLattice::parse("astar5"),
            Some(NamedLattice { family: Family::ADual, dim: 5 })
        );
        assert_eq!(NamedLattice::parse("Z7"), None);
        assert_eq!(NamedLattice::parse("E8"), None);
        assert_eq!(NamedLattice::parse("Dstar4").unwrap().id(), "Dstar4");
    }
}
