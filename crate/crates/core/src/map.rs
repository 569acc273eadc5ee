//! Elements of `GL(n,Z) ⋉ Z^n` and the map determined by two regular
//! simplexes.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{det_int, identity_int, inverse_int, mat_mul_int, transpose, IntMat};
use crate::num::{Int, Rat};
use crate::point::{lift_rows, RatPoint};
use crate::simplex::{extends_to_basis, RatSimplex};

/// The affine map `x ↦ A x + t` with `A` an integer matrix of determinant ±1
/// and `t` an integer vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniAffMap {
    matrix: IntMat,
    translation: Vec<Int>,
}

impl UniAffMap {
    pub fn new(matrix: IntMat, translation: Vec<Int>) -> Result<Self> {
        let n = translation.len();
        check_dim(n, matrix.len())?;
        for r in &matrix {
            check_dim(n, r.len())?;
        }
        let det = det_int(&matrix);
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(UniAffMap { matrix, translation })
    }

    pub fn from_i64(matrix: &[&[i64]], translation: &[i64]) -> Result<Self> {
        UniAffMap::new(
            matrix
                .iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
            translation.iter().map(|&x| Int::from(x)).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        UniAffMap {
            matrix: identity_int(n),
            translation: vec![Int::zero(); n],
        }
    }

    pub fn translation_by(t: Vec<Int>) -> Self {
        UniAffMap {
            matrix: identity_int(t.len()),
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn translation(&self) -> &[Int] {
        &self.translation
    }

    /// The `(n+1) x (n+1)` matrix acting on homogeneous correspondents.
    pub fn homogeneous(&self) -> IntMat {
        let n = self.dim();
        let mut m: IntMat = self
            .matrix
            .iter()
            .zip(&self.translation)
            .map(|(r, t)| {
                let mut r = r.clone();
                r.push(t.clone());
                r
            })
            .collect();
        let mut last = vec![Int::zero(); n + 1];
        last[n] = Int::one();
        m.push(last);
        m
    }

    /// Reads back a homogeneous matrix whose last row is `(0, …, 0, 1)`.
    pub fn from_homogeneous(m: &IntMat) -> Result<Self> {
        let n1 = m.len();
        if n1 == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        let n = n1 - 1;
        let last = &m[n];
        if !last[..n].iter().all(|x| x.is_zero()) || !last[n].is_one() {
            return Err(Error::Internal("homogeneous matrix is not affine".into()));
        }
        UniAffMap::new(
            m[..n].iter().map(|r| r[..n].to_vec()).collect(),
            m[..n].iter().map(|r| r[n].clone()).collect(),
        )
    }

    pub fn apply(&self, x: &RatPoint) -> Result<RatPoint> {
        x.check_dim(self.dim())?;
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &RatPoint) -> RatPoint {
        RatPoint(
            self.matrix
                .iter()
                .zip(&self.translation)
                .map(|(r, t)| {
                    r.iter()
                        .zip(&x.0)
                        .fold(Rat::from_integer(t.clone()), |s, (a, b)| s + b * Rat::from_integer(a.clone()))
                })
                .collect(),
        )
    }

    pub fn apply_all(&self, xs: &[RatPoint]) -> Result<Vec<RatPoint>> {
        xs.iter().map(|x| self.apply(x)).collect()
    }

    /// Linear part applied to a direction vector.
    pub fn apply_linear(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Rat::zero(), |s, (a, b)| s + b * Rat::from_integer(a.clone()))
            })
            .collect()
    }

    pub fn apply_simplex(&self, s: &RatSimplex) -> Result<RatSimplex> {
        RatSimplex::new(self.apply_all(s.vertices())?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UniAffMap) -> Result<UniAffMap> {
        check_dim(self.dim(), other.dim())?;
        UniAffMap::from_homogeneous(&mat_mul_int(&self.homogeneous(), &other.homogeneous()))
    }

    pub fn inverse(&self) -> UniAffMap {
        let inv = inverse_int(&self.homogeneous()).expect("unimodular matrices invert over Z");
        UniAffMap::from_homogeneous(&inv).expect("inverse stays affine")
    }

    pub fn is_identity(&self) -> bool {
        *self == UniAffMap::identity(self.dim())
    }
}

/// The unique `γ ∈ GL(n,Z) ⋉ Z^n` with `γ(v_i) = w_i`, for two regular
/// `n`-simplexes with pairwise equal vertex denominators.
pub fn phi_vw(v: &[RatPoint], w: &[RatPoint]) -> Result<UniAffMap> {
    let n = v
        .first()
        .map(|p| p.dim())
        .ok_or_else(|| Error::InvalidInput("empty vertex list".into()))?;
    check_dim(n + 1, v.len())?;
    check_dim(n + 1, w.len())?;
    for (a, b) in v.iter().zip(w) {
        a.check_dim(n)?;
        b.check_dim(n)?;
        if a.den() != b.den() {
            return Err(Error::DenominatorMismatch);
        }
    }
    let lv = lift_rows(v);
    let lw = lift_rows(w);
    for l in [&lv, &lw] {
        if !extends_to_basis(l).unwrap_or(false) {
            return Err(Error::NotRegular);
        }
    }
    // Columns are lifts, so M = W̃ Ṽ⁻¹ = (Ṽᵀ⁻¹ W̃ᵀ)ᵀ.
    let vt_inv = inverse_int(&lv).ok_or(Error::NotRegular)?;
    let m = mat_mul_int(&transpose(&lw), &transpose(&vt_inv));
    let g = UniAffMap::from_homogeneous(&m)?;
    for (a, b) in v.iter().zip(w) {
        if g.apply(a)? != *b {
            return Err(Error::Internal("map does not send V onto W".into()));
        }
    }
    Ok(g)
}
