//! Rational half-lines, oriented angles and oriented triangles: the points
//! `q_H` and `p_HK`, the angle invariant and the side-angle-side triangle
//! invariant, each with its orbit decision.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::affine::{affine_span, c_invariant, extend_with_tail};
use crate::error::{check_dim, Error, Result};
use crate::lattice::PureLattice;
use crate::linalg::{dot_rat, primitive_from_rat, rank, solve, transpose};
use crate::map::{phi_vw, UniAffMap};
use crate::num::{ceil, ext_gcd, floor, Int, Rat};
use crate::point::{unlift, RatPoint};
use crate::segment::{side_inv, OrientedSegment, SideInv};
use crate::simplex::{affinely_independent, complete_to_lattice_basis};

/// `v + R_{≥0} · direction` with a primitive integer direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfLine {
    pub origin: RatPoint,
    pub direction: Vec<Int>,
}

impl HalfLine {
    pub fn new(origin: RatPoint, direction: &[Rat]) -> Result<Self> {
        check_dim(origin.dim(), direction.len())?;
        if direction.iter().all(|x| x.is_zero()) {
            return Err(Error::Degenerate("zero direction".into()));
        }
        Ok(HalfLine {
            origin,
            direction: primitive_from_rat(direction),
        })
    }

    /// The half-line from `origin` through `through`.
    pub fn through(origin: RatPoint, through: &RatPoint) -> Result<Self> {
        check_dim(origin.dim(), through.dim())?;
        let d = through.sub(&origin);
        HalfLine::new(origin, &d)
    }

    pub fn image(&self, g: &UniAffMap) -> Result<HalfLine> {
        let d: Vec<Rat> = self.direction.iter().cloned().map(Rat::from_integer).collect();
        HalfLine::new(g.apply(&self.origin)?, &g.apply_linear(&d))
    }

    fn dir_rat(&self) -> Vec<Rat> {
        self.direction.iter().cloned().map(Rat::from_integer).collect()
    }

    fn dir_lift(&self) -> Vec<Int> {
        let mut v = self.direction.clone();
        v.push(Int::zero());
        v
    }
}

/// A pair of half-lines with common origin spanning a plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedAngle {
    pub h: HalfLine,
    pub k: HalfLine,
}

impl OrientedAngle {
    pub fn new(h: HalfLine, k: HalfLine) -> Result<Self> {
        if h.origin != k.origin {
            return Err(Error::InvalidInput("half-lines must share their origin".into()));
        }
        if h.origin.dim() < 2 {
            return Err(Error::NotInClass("angles need ambient dimension at least 2".into()));
        }
        if rank(&[h.dir_rat(), k.dir_rat()]) < 2 {
            return Err(Error::NotInClass("trivial angle".into()));
        }
        Ok(OrientedAngle { h, k })
    }

    /// The angle at `v` from the half-line through `h` to the one through `k`.
    pub fn from_points(v: &RatPoint, h: &RatPoint, k: &RatPoint) -> Result<Self> {
        OrientedAngle::new(HalfLine::through(v.clone(), h)?, HalfLine::through(v.clone(), k)?)
    }

    pub fn vertex(&self) -> &RatPoint {
        &self.h.origin
    }

    pub fn ambient(&self) -> usize {
        self.vertex().dim()
    }

    pub fn image(&self, g: &UniAffMap) -> Result<OrientedAngle> {
        OrientedAngle::new(self.h.image(g)?, self.k.image(g)?)
    }
}

fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Coordinates of `target` in the basis `basis` (rows), over `Q`.
fn rat_coords(basis: &[Vec<Int>], target: &[Int]) -> Vec<Rat> {
    let cols: Vec<Vec<Rat>> = basis.iter().map(|b| rat_vec(b)).collect();
    solve(&transpose(&cols), &rat_vec(target)).expect("target lies in the span")
}

/// The point of `H` of least denominator among those `x` with `conv(v, x)`
/// regular, which is also the farthest such point from `v`.
pub fn q_of(h: &HalfLine) -> RatPoint {
    let v_lift = h.origin.lift().0;
    let lat = PureLattice::spanned_by(&[v_lift.clone(), h.dir_lift()], v_lift.len());
    let cv = lat.coords(&v_lift).expect("origin lifts into its lattice");
    let cd = lat.coords(&h.dir_lift()).expect("direction lies in the lattice");
    let mut u = complete_to_lattice_basis(&[cv.clone()]).expect("primitive")[1].clone();
    let delta = rat_coords(&[cv.clone(), u.clone()], &cd);
    let (d1, mut d2) = (delta[0].clone(), delta[1].clone());
    if d2.is_negative() {
        u = u.into_iter().map(|x| -x).collect();
        d2 = -d2;
    }
    let k = floor(&(d1 / d2)) + 1;
    let w: Vec<Int> = u.iter().zip(&cv).map(|(a, b)| a + &k * b).collect();
    unlift(&lat.from_coords(&w)).expect("regular point is primitive")
}

fn dist2_to_ray(y: &RatPoint, ray: &HalfLine) -> Rat {
    let d = ray.dir_rat();
    let r = y.sub(&ray.origin);
    let t = dot_rat(&r, &d) / dot_rat(&d, &d);
    let t = if t.is_negative() { Rat::zero() } else { t };
    let diff: Vec<Rat> = r.iter().zip(&d).map(|(a, b)| a - b * &t).collect();
    dot_rat(&diff, &diff)
}

/// Among rational points `y` of the angle region with `conv(v, q_H, y)`
/// regular and `den(y)` minimal, the one nearest to `K`.
pub fn p_of(a: &OrientedAngle) -> Result<RatPoint> {
    let v = a.vertex();
    let n = a.ambient();
    let q = q_of(&a.h);
    let v_lift = v.lift().0;
    let q_lift = q.lift().0;
    let lat = PureLattice::spanned_by(&[v_lift.clone(), a.h.dir_lift(), a.k.dir_lift()], n + 1);
    let cv = lat.coords(&v_lift)?;
    let cq = lat.coords(&q_lift)?;
    let ck = lat.coords(&a.k.dir_lift())?;
    let mut s = complete_to_lattice_basis(&[cv.clone(), cq.clone()])?[2].clone();
    let kappa = rat_coords(&[cv.clone(), cq.clone(), s.clone()], &ck);
    if kappa[2].is_negative() {
        s = s.into_iter().map(|x| -x).collect();
    }
    let kappa = rat_coords(&[cv.clone(), cq.clone(), s.clone()], &ck);
    let dv = v.den();
    let dq = q.den();
    let ls = lat.from_coords(&s)[n].clone();
    let g = dv.gcd(&dq);
    let mut m = ls.mod_floor(&g);
    if m.is_zero() {
        m = g.clone();
    }
    // b·dq ≡ m - ls (mod dv), b ≥ κ2/κ3 minimal.
    let step = &dv / &g;
    let r = (&m - &ls) / &g;
    let dq_red = &dq / &g;
    let b_res = if step.is_one() {
        Int::zero()
    } else {
        let (_, inv, _) = ext_gcd(&dq_red.mod_floor(&step), &step);
        (r * inv).mod_floor(&step)
    };
    let b_min = ceil(&(&kappa[1] / &kappa[2]));
    let b = &b_min + (&b_res - &b_min).mod_floor(&step);
    let a_coef = (&m - &ls - &b * &dq) / &dv;
    let build = |b: &Int, a_coef: &Int| -> Result<RatPoint> {
        let w: Vec<Int> = (0..3).map(|i| &s[i] + a_coef * &cv[i] + b * &cq[i]).collect();
        unlift(&lat.from_coords(&w))
    };
    let p = build(&b, &a_coef)?;
    let next_b = &b + &step;
    let next_a = (&m - &ls - &next_b * &dq) / &dv;
    let further = build(&next_b, &next_a)?;
    if dist2_to_ray(&p, &a.k) >= dist2_to_ray(&further, &a.k) {
        return Err(Error::Internal("nearest point to K is not unique".into()));
    }
    Ok(p)
}

/// Angle invariant: `(den v, den q_H, den p_HK)`, the first two barycentric
/// coordinates of `q_K` with respect to `(v, q_H, p_HK)`, and the `c`
/// invariant of the angle's plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleInv {
    pub den_v: Int,
    pub den_qh: Int,
    pub den_phk: Int,
    pub bary: (Rat, Rat),
    pub c_plane: Int,
}

struct AngleData {
    q_h: RatPoint,
    p_hk: RatPoint,
    inv: AngleInv,
}

fn angle_data(a: &OrientedAngle) -> Result<AngleData> {
    let v = a.vertex().clone();
    let q_h = q_of(&a.h);
    let q_k = q_of(&a.k);
    let p_hk = p_of(a)?;
    let e1 = q_h.sub(&v);
    let e2 = p_hk.sub(&v);
    let sol = solve(&transpose(&[e1, e2]), &q_k.sub(&v))
        .ok_or_else(|| Error::Internal("q_K outside the angle plane".into()))?;
    let bary = (Rat::one() - &sol[0] - &sol[1], sol[0].clone());
    let plane = affine_span(&[v.clone(), q_h.clone(), p_hk.clone()])?;
    let inv = AngleInv {
        den_v: v.den(),
        den_qh: q_h.den(),
        den_phk: p_hk.den(),
        bary,
        c_plane: c_invariant(&plane)?.c,
    };
    Ok(AngleData { q_h, p_hk, inv })
}

pub fn angle_inv(a: &OrientedAngle) -> Result<AngleInv> {
    Ok(angle_data(a)?.inv)
}

/// The map sending `(v, q_H, p_HK)` onto `(v', q_H', p_HK')`, extended to
/// regular `n`-simplexes by witness vertices of denominator `c_plane`.
fn angle_map(a: &OrientedAngle, da: &AngleData, b: &OrientedAngle, db: &AngleData) -> Result<UniAffMap> {
    let side = |x: &OrientedAngle, d: &AngleData| -> Result<Vec<RatPoint>> {
        let r = vec![x.vertex().clone(), d.q_h.clone(), d.p_hk.clone()];
        let plane = affine_span(&r)?;
        extend_with_tail(&r, &c_invariant(&plane)?, 2)
    };
    phi_vw(&side(a, da)?, &side(b, db)?)
}

/// A map `θ` with `θ(H) = H'` and `θ(K) = K'`, or `None` when the angle
/// invariants differ.
pub fn angle_equiv(a: &OrientedAngle, b: &OrientedAngle) -> Result<Option<UniAffMap>> {
    check_dim(a.ambient(), b.ambient())?;
    let da = angle_data(a)?;
    let db = angle_data(b)?;
    if da.inv != db.inv {
        return Ok(None);
    }
    let theta = angle_map(a, &da, b, &db)?;
    if a.image(&theta)? != *b {
        return Err(Error::Internal("map does not carry the angle".into()));
    }
    Ok(Some(theta))
}

/// The triangle `conv(u, v, w)` oriented `u → v → w`; its angle sits at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedTriangle {
    pub u: RatPoint,
    pub v: RatPoint,
    pub w: RatPoint,
}

impl OrientedTriangle {
    pub fn new(u: RatPoint, v: RatPoint, w: RatPoint) -> Result<Self> {
        check_dim(u.dim(), v.dim())?;
        check_dim(u.dim(), w.dim())?;
        if !affinely_independent(&[u.clone(), v.clone(), w.clone()]) {
            return Err(Error::Degenerate("triangle vertices are collinear".into()));
        }
        Ok(OrientedTriangle { u, v, w })
    }

    pub fn ambient(&self) -> usize {
        self.v.dim()
    }

    pub fn image(&self, g: &UniAffMap) -> Result<OrientedTriangle> {
        OrientedTriangle::new(g.apply(&self.u)?, g.apply(&self.v)?, g.apply(&self.w)?)
    }

    pub fn angle(&self) -> Result<OrientedAngle> {
        OrientedAngle::from_points(&self.v, &self.u, &self.w)
    }

    pub fn side_vu(&self) -> Result<OrientedSegment> {
        OrientedSegment::new(self.v.clone(), self.u.clone())
    }

    pub fn side_vw(&self) -> Result<OrientedSegment> {
        OrientedSegment::new(self.v.clone(), self.w.clone())
    }
}

/// `(side(conv(v,u)), angle(H_vu, K_vw), side(conv(v,w)))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriInv {
    pub side_vu: SideInv,
    pub angle: AngleInv,
    pub side_vw: SideInv,
}

pub fn tri_inv(t: &OrientedTriangle) -> Result<TriInv> {
    Ok(TriInv {
        side_vu: side_inv(&t.side_vu()?)?,
        angle: angle_inv(&t.angle()?)?,
        side_vw: side_inv(&t.side_vw()?)?,
    })
}

/// A map `γ` with `γ(u, v, w) = (u', v', w')`, or `None` when the triangle
/// invariants differ.
pub fn tri_equiv(t: &OrientedTriangle, s: &OrientedTriangle) -> Result<Option<UniAffMap>> {
    check_dim(t.ambient(), s.ambient())?;
    if tri_inv(t)? != tri_inv(s)? {
        return Ok(None);
    }
    let (a, b) = (t.angle()?, s.angle()?);
    let gamma = angle_map(&a, &angle_data(&a)?, &b, &angle_data(&b)?)?;
    if t.image(&gamma)? != *s {
        return Err(Error::Internal("map does not carry the triangle".into()));
    }
    Ok(Some(gamma))
}
