//! Rational simplexes, Farey regularity and lattice basis completion.

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{column_echelon, inverse_int, maximal_minor_gcd, rank, IntMat};
use crate::num::{Int, Rat};
use crate::point::{lift_rows, unlift_any, RatPoint};

/// Convex hull of affinely independent rational points, kept as an ordered
/// vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatSimplex {
    vertices: Vec<RatPoint>,
}

impl RatSimplex {
    pub fn new(vertices: Vec<RatPoint>) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::InvalidInput("simplex needs at least one vertex".into()))?;
        let n = first.dim();
        for v in &vertices {
            check_dim(n, v.dim())?;
        }
        if !affinely_independent(&vertices) {
            return Err(Error::Degenerate("simplex vertices are affinely dependent".into()));
        }
        Ok(RatSimplex { vertices })
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<RatPoint> {
        self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Vertex lifts as integer rows.
    pub fn lifts(&self) -> IntMat {
        lift_rows(&self.vertices)
    }

    /// Same vertex set in sorted order.
    pub fn canonical(&self) -> RatSimplex {
        let mut v = self.vertices.clone();
        v.sort();
        RatSimplex { vertices: v }
    }

    pub fn barycenter(&self) -> RatPoint {
        let k = Rat::from_integer(Int::from(self.vertices.len()));
        let n = self.ambient();
        RatPoint(
            (0..n)
                .map(|i| self.vertices.iter().fold(Rat::zero(), |s, v| s + &v.0[i]) / &k)
                .collect(),
        )
    }
}

pub fn affinely_independent(points: &[RatPoint]) -> bool {
    if points.is_empty() {
        return false;
    }
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            let mut r = p.0.clone();
            r.push(Rat::one());
            r
        })
        .collect();
    rank(&rows) == points.len()
}

fn check_vectors(vs: &[Vec<Int>]) -> Result<usize> {
    let m = vs
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::InvalidInput("empty vector set".into()))?;
    for v in vs {
        check_dim(m, v.len())?;
    }
    Ok(m)
}

/// True iff the integer vectors `vs` are part of a basis of `Z^m`, decided
/// by the gcd of the maximal minors of the matrix they form.
pub fn extends_to_basis(vs: &[Vec<Int>]) -> Result<bool> {
    let m = check_vectors(vs)?;
    let g = maximal_minor_gcd(vs, m);
    if g.is_zero() {
        return Err(Error::LinearlyDependent);
    }
    Ok(g.is_one())
}

/// A basis of `Z^m` whose first members are `vs`.
pub fn complete_to_lattice_basis(vs: &[Vec<Int>]) -> Result<IntMat> {
    let m = check_vectors(vs)?;
    if !extends_to_basis(vs)? {
        return Err(Error::NotExtendable);
    }
    let ce = column_echelon(vs, m);
    let u_inv = inverse_int(&ce.u).ok_or_else(|| Error::Internal("echelon transform".into()))?;
    let mut basis = vs.to_vec();
    basis.extend(u_inv.into_iter().skip(vs.len()));
    Ok(basis)
}

/// True iff the vertex lifts of `s` extend to a basis of `Z^{n+1}`.
pub fn is_regular(s: &RatSimplex) -> bool {
    extends_to_basis(&s.lifts()).unwrap_or(false)
}

/// Affine correspondent of the sum of the vertex lifts of a regular simplex.
pub fn farey_mediant(s: &RatSimplex) -> Result<RatPoint> {
    if !is_regular(s) {
        return Err(Error::NotRegular);
    }
    let lifts = s.lifts();
    let m = lifts[0].len();
    let sum: Vec<Int> = (0..m)
        .map(|j| lifts.iter().fold(Int::zero(), |acc, r| acc + &r[j]))
        .collect();
    unlift_any(&sum)
}
