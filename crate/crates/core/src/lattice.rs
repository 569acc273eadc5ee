//! Pure sublattices of `Z^m` with explicit bases.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{saturate, solve, to_rat_mat, transpose, IntMat};
use crate::num::{Int, Rat};

/// The sublattice `span_Q(vs) ∩ Z^m`, with a basis stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureLattice {
    basis: IntMat,
    ambient: usize,
}

impl PureLattice {
    pub fn spanned_by(vs: &[Vec<Int>], ambient: usize) -> Self {
        PureLattice {
            basis: saturate(vs, ambient),
            ambient,
        }
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Integer coordinates of `v` in the stored basis.
    pub fn coords(&self, v: &[Int]) -> Result<Vec<Int>> {
        let a = transpose(&to_rat_mat(&self.basis));
        let b: Vec<Rat> = v.iter().cloned().map(Rat::from_integer).collect();
        let x = solve(&a, &b)
            .ok_or_else(|| Error::InvalidInput("vector outside the lattice span".into()))?;
        x.into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Internal("non-integral lattice coordinates".into()))
                }
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[Int]) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.ambient];
        for (ci, row) in c.iter().zip(&self.basis) {
            for (x, r) in v.iter_mut().zip(row) {
                *x += ci * r;
            }
        }
        v
    }

    /// Rational coordinates of a vector of the rational span.
    pub fn rat_coords(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let a = transpose(&to_rat_mat(&self.basis));
        solve(&a, v).ok_or_else(|| Error::InvalidInput("vector outside the lattice span".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    #[test]
    fn coordinates_round_trip() {
        let l = PureLattice::spanned_by(&[vec![int(2), int(4), int(6)], vec![int(0), int(0), int(3)]], 3);
        assert_eq!(l.rank(), 2);
        let v = vec![int(1), int(2), int(7)];
        let c = l.coords(&v).unwrap();
        assert_eq!(l.from_coords(&c), v);
        assert!(l.coords(&[int(1), int(0), int(0)]).is_err());
    }
}
