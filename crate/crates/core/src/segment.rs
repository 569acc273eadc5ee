//! Hirzebruch–Jung chains of rational segments, the invariant length λ₁ and
//! the complete side invariant.

use num_traits::{One, Signed, Zero};

use crate::affine::{affine_span, c_invariant, extend_with_tail};
use crate::complex::Triangulation;
use crate::error::{check_dim, Error, Result};
use crate::lattice::PureLattice;
use crate::linalg::solve;
use crate::map::{phi_vw, UniAffMap};
use crate::num::{ceil, Int, Rat};
use crate::point::{unlift, RatPoint};
use crate::simplex::{complete_to_lattice_basis, is_regular, RatSimplex};

/// The segment `conv(a, b)` oriented from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedSegment {
    pub a: RatPoint,
    pub b: RatPoint,
}

impl OrientedSegment {
    pub fn new(a: RatPoint, b: RatPoint) -> Result<Self> {
        check_dim(a.dim(), b.dim())?;
        if a == b {
            return Err(Error::Degenerate("segment endpoints coincide".into()));
        }
        Ok(OrientedSegment { a, b })
    }

    pub fn ambient(&self) -> usize {
        self.a.dim()
    }

    pub fn image(&self, g: &UniAffMap) -> Result<OrientedSegment> {
        OrientedSegment::new(g.apply(&self.a)?, g.apply(&self.b)?)
    }

    /// Parameter `t` with `x = a + t (b - a)`, if `x` lies on the line.
    pub fn parameter(&self, x: &RatPoint) -> Option<Rat> {
        let d = self.b.sub(&self.a);
        let r = x.sub(&self.a);
        let i = d.iter().position(|c| !c.is_zero())?;
        let t = &r[i] / &d[i];
        d.iter().zip(&r).all(|(di, ri)| di * &t == *ri).then_some(t)
    }
}

/// Vertices `x_0 = a, x_1, …, x_{u+1} = b` of the Hirzebruch–Jung chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HjChain {
    pub vertices: Vec<RatPoint>,
}

/// Successive vertices of the canonical regular triangulation: from `x_i`
/// the next vertex is `u + ⌈β/μ⌉ x̃_i`, where `{x̃_i, u}` is a basis of the
/// segment's rank-2 lift lattice and `b̃ = β x̃_i + μ u` with `μ > 0`.
pub fn hj(s: &OrientedSegment) -> HjChain {
    let lat = PureLattice::spanned_by(&[s.a.lift().0, s.b.lift().0], s.ambient() + 1);
    let target = lat.coords(&s.b.lift().0).expect("b lifts into its lattice");
    let mut cur = lat.coords(&s.a.lift().0).expect("a lifts into its lattice");
    let mut vertices = vec![s.a.clone()];
    while cur != target {
        let basis = complete_to_lattice_basis(&[cur.clone()]).expect("lifts are primitive");
        let mut u = basis[1].clone();
        let m = vec![
            vec![Rat::from_integer(cur[0].clone()), Rat::from_integer(u[0].clone())],
            vec![Rat::from_integer(cur[1].clone()), Rat::from_integer(u[1].clone())],
        ];
        let rhs = vec![Rat::from_integer(target[0].clone()), Rat::from_integer(target[1].clone())];
        let sol = solve(&m, &rhs).expect("basis is invertible");
        let (beta, mut mu) = (sol[0].clone(), sol[1].clone());
        if mu.is_negative() {
            u = u.into_iter().map(|x| -x).collect();
            mu = -mu;
        }
        let k = ceil(&(beta / mu));
        let next: Vec<Int> = u.iter().zip(&cur).map(|(ui, ci)| ui + &k * ci).collect();
        vertices.push(unlift(&lat.from_coords(&next)).expect("regular successor is primitive"));
        cur = next;
    }
    HjChain { vertices }
}

fn chain_sum(vertices: &[RatPoint]) -> Rat {
    vertices
        .windows(2)
        .map(|w| Rat::new(Int::one(), w[0].den() * w[1].den()))
        .fold(Rat::zero(), |s, x| s + x)
}

/// `λ₁ = Σ 1/(den(x_i) den(x_{i+1}))` over the chain.
pub fn lambda1(s: &OrientedSegment) -> Rat {
    chain_sum(&hj(s).vertices)
}

/// `λ₁` evaluated on an arbitrary regular triangulation of the segment.
pub fn lambda1_via(s: &OrientedSegment, t: &Triangulation) -> Result<Rat> {
    let mut intervals = Vec::new();
    for c in t.cells() {
        if c.dim() != 1 {
            return Err(Error::InvalidInput("cells must be segments".into()));
        }
        if !is_regular(c) {
            return Err(Error::NotRegular);
        }
        let p: Vec<Rat> = c
            .vertices()
            .iter()
            .map(|v| s.parameter(v))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidInput("cell off the segment line".into()))?;
        let (lo, hi) = if p[0] < p[1] { (0, 1) } else { (1, 0) };
        intervals.push((p[lo].clone(), p[hi].clone(), c.vertices()[lo].den() * c.vertices()[hi].den()));
    }
    intervals.sort();
    let mut at = Rat::zero();
    let mut sum = Rat::zero();
    for (lo, hi, dd) in intervals {
        if lo != at {
            return Err(Error::InvalidInput("cells do not tile the segment".into()));
        }
        at = hi;
        sum += Rat::new(Int::one(), dd);
    }
    if at != Rat::one() {
        return Err(Error::InvalidInput("cells do not tile the segment".into()));
    }
    Ok(sum)
}

/// The chain as a triangulation of the segment.
pub fn hj_triangulation(s: &OrientedSegment) -> Triangulation {
    let v = hj(s).vertices;
    Triangulation::from_cells(
        v.windows(2)
            .map(|w| RatSimplex::new(w.to_vec()).expect("distinct points"))
            .collect(),
    )
}

/// `(c_aff, λ₁, den(a), den(x_1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideInv {
    pub c: Int,
    pub lambda1: Rat,
    pub den_a: Int,
    pub den_x1: Int,
}

pub fn side_inv(s: &OrientedSegment) -> Result<SideInv> {
    let chain = hj(s);
    let c = c_invariant(&affine_span(&[s.a.clone(), s.b.clone()])?)?.c;
    Ok(SideInv {
        c,
        lambda1: chain_sum(&chain.vertices),
        den_a: s.a.den(),
        den_x1: chain.vertices[1].den(),
    })
}

/// A map sending the first regular cell of one chain to the other's, extended
/// by witness vertices of denominator `c_aff`.
pub(crate) fn first_cell_map(s: &OrientedSegment, t: &OrientedSegment) -> Result<UniAffMap> {
    let x1 = hj(s).vertices[1].clone();
    let y1 = hj(t).vertices[1].clone();
    let fs = affine_span(&[s.a.clone(), s.b.clone()])?;
    let ft = affine_span(&[t.a.clone(), t.b.clone()])?;
    let v = extend_with_tail(&[s.a.clone(), x1], &c_invariant(&fs)?, 1)?;
    let w = extend_with_tail(&[t.a.clone(), y1], &c_invariant(&ft)?, 1)?;
    phi_vw(&v, &w)
}

/// A map carrying `A` onto `A'` (respecting orientation), or `None` when the
/// side invariants differ.
pub fn segment_equiv(s: &OrientedSegment, t: &OrientedSegment) -> Result<Option<UniAffMap>> {
    check_dim(s.ambient(), t.ambient())?;
    if side_inv(s)? != side_inv(t)? {
        return Ok(None);
    }
    let g = first_cell_map(s, t)?;
    let mapped = g.apply_all(&hj(s).vertices)?;
    if mapped != hj(t).vertices {
        return Err(Error::Internal("map does not match the chains".into()));
    }
    Ok(Some(g))
}
