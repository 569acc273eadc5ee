//! Rational affine spaces: the invariant `(dim F, d_F, c_F)`, its witness
//! regular simplexes and the orbit decision for affine spaces.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cone::{desingularize, Cone};
use crate::error::{check_dim, Error, Result};
use crate::lattice::PureLattice;
use crate::linalg::{det_int, dot_rat, int_solve, nullspace, primitive_from_rat, rref, saturate, IntMat};
use crate::map::{phi_vw, UniAffMap};
use crate::num::{ext_gcd, gcd_all, Int, Rat};
use crate::point::{lift_rows, unlift, unlift_any, RatPoint};
use crate::simplex::{complete_to_lattice_basis, extends_to_basis};

/// The affine hull of a nonempty finite set of rational points.
#[derive(Clone, Debug)]
pub struct AffSpace {
    generators: Vec<RatPoint>,
    directions: Vec<Vec<Rat>>,
    equations: Vec<(Vec<Int>, Int)>,
    lifts: PureLattice,
}

impl AffSpace {
    pub fn generators(&self) -> &[RatPoint] {
        &self.generators
    }

    pub fn anchor(&self) -> &RatPoint {
        &self.generators[0]
    }

    pub fn ambient(&self) -> usize {
        self.anchor().dim()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Rational basis of the direction space, in reduced echelon form.
    pub fn directions(&self) -> &[Vec<Rat>] {
        &self.directions
    }

    /// Integer equations `a · x = b` cutting out the space.
    pub fn equations(&self) -> &[(Vec<Int>, Int)] {
        &self.equations
    }

    /// The pure lattice `span(lifts of F) ∩ Z^{n+1}`; lifts of points of `F`
    /// are its primitive members with positive last entry.
    pub fn lift_lattice(&self) -> &PureLattice {
        &self.lifts
    }

    pub fn contains(&self, x: &RatPoint) -> bool {
        x.dim() == self.ambient()
            && self.equations.iter().all(|(a, b)| {
                let lhs = a
                    .iter()
                    .zip(&x.0)
                    .fold(Rat::zero(), |s, (ai, xi)| s + xi * Rat::from_integer(ai.clone()));
                lhs == Rat::from_integer(b.clone())
            })
    }

    /// Basis of the integer direction lattice `dir(F) ∩ Z^n`.
    pub fn direction_lattice(&self) -> IntMat {
        let ints: IntMat = self.directions.iter().map(|d| primitive_from_rat(d)).collect();
        saturate(&ints, self.ambient())
    }

    /// `d_F`, read off as the gcd of the last entries of the lift lattice.
    pub fn min_den(&self) -> Int {
        let m = self.ambient();
        gcd_all(self.lifts.basis().iter().map(|r| &r[m]))
    }

    pub fn same_set(&self, other: &AffSpace) -> bool {
        self.dim() == other.dim() && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn image(&self, g: &UniAffMap) -> Result<AffSpace> {
        affine_span(&g.apply_all(&self.generators)?)
    }
}

/// The affine span of a nonempty list of points.
pub fn affine_span(points: &[RatPoint]) -> Result<AffSpace> {
    let anchor = points
        .first()
        .ok_or_else(|| Error::InvalidInput("affine span of an empty set".into()))?;
    let n = anchor.dim();
    for p in points {
        check_dim(n, p.dim())?;
    }
    let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| p.sub(anchor)).collect();
    let (red, pivots) = rref(&diffs);
    let directions: Vec<Vec<Rat>> = red.into_iter().take(pivots.len()).collect();
    let normals = nullspace(&directions, n);
    let equations = normals
        .into_iter()
        .map(|w| {
            let mut row = w.clone();
            row.push(dot_rat(&w, &anchor.0));
            let mut ints = primitive_from_rat(&row);
            let b = ints.pop().expect("nonempty");
            (ints, b)
        })
        .collect();
    let lifts = PureLattice::spanned_by(&lift_rows(points), n + 1);
    Ok(AffSpace {
        generators: points.to_vec(),
        directions,
        equations,
        lifts,
    })
}

/// A point of `F` of minimal denominator `d_F`, found by testing the
/// denominators `k = 1, 2, …` for an integer solution of the system
/// describing `F ∩ (1/k) Z^n`.
pub fn min_den_point(f: &AffSpace) -> RatPoint {
    let n = f.ambient();
    let a: IntMat = f.equations.iter().map(|(a, _)| a.clone()).collect();
    let mut k = Int::one();
    loop {
        let rhs: Vec<Int> = f.equations.iter().map(|(_, b)| b * &k).collect();
        if let Some(z) = int_solve(&a, &rhs, n) {
            return RatPoint(z.into_iter().map(|zi| Rat::new(zi, k.clone())).collect());
        }
        k += 1;
    }
}

/// A regular `e`-simplex `conv(v0, …, v_e) ⊆ F` whose vertices all have
/// denominator `d_F`, obtained from a regular cell at `ṽ0` of the
/// desingularized cone over an `e`-simplex of `F`.
pub fn regular_frame_in(f: &AffSpace, v0: &RatPoint) -> Result<Vec<RatPoint>> {
    let d = f.min_den();
    if !f.contains(v0) || v0.den() != d {
        return Err(Error::InvalidInput(
            "frame origin must be a minimal-denominator point of the space".into(),
        ));
    }
    let e = f.dim();
    if e == 0 {
        return Ok(vec![v0.clone()]);
    }
    let v0_lift = v0.lift().0;
    let mut gens = vec![v0_lift.clone()];
    for b in f.direction_lattice() {
        let w = v0.add_vec(&b.into_iter().map(Rat::from_integer).collect::<Vec<_>>());
        gens.push(w.lift().0);
    }
    let fan = desingularize(&Cone::new(gens)?);
    let cell = fan
        .cones()
        .iter()
        .find(|c| c.generators().contains(&v0_lift))
        .ok_or_else(|| Error::Internal("no cell at the frame origin".into()))?;
    let n = f.ambient();
    let mut frame = vec![v0.clone()];
    for g in cell.generators().iter().filter(|g| **g != v0_lift) {
        let t = &g[n] / &d - 1;
        let w: Vec<Int> = g.iter().zip(&v0_lift).map(|(x, y)| x - &t * y).collect();
        frame.push(unlift(&w)?);
    }
    Ok(frame)
}

/// Invariant `(dim F, d_F, c_F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineInv {
    pub dim: usize,
    pub d: Int,
    pub c: Int,
}

/// `c_F` with a witness regular `n`-simplex: the first `dim F + 1` vertices
/// lie in `F` with denominator `d_F`, the others have denominator `c_F`.
#[derive(Clone, Debug)]
pub struct CWitness {
    pub c: Int,
    pub simplex: Vec<RatPoint>,
}

impl CWitness {
    /// Vertices outside `F`.
    pub fn tail(&self, dim: usize) -> &[RatPoint] {
        &self.simplex[dim + 1..]
    }
}

/// Coefficients `w` with `det[rows; y] = w · y` for every `y`.
fn cofactor_vector(rows: &[Vec<Int>]) -> Vec<Int> {
    let m = rows.len() + 1;
    (0..m)
        .map(|i| {
            let mut full = rows.to_vec();
            let mut e = vec![Int::zero(); m];
            e[i] = Int::one();
            full.push(e);
            det_int(&full)
        })
        .collect()
}

/// Codimension-one apex: the least `k` admitting an apex of denominator `k`,
/// then an apex of that denominator from a particular solution of
/// `w · (z, k) = ±1`.
fn codim_one_apex(frame: &[RatPoint], d: &Int) -> Result<RatPoint> {
    let n = frame[0].dim();
    let lifts = lift_rows(frame);
    let w = cofactor_vector(&lifts);
    let (g, coeffs) = bezout(&w[..n]);
    if g.is_zero() {
        return Err(Error::Internal("degenerate hyperplane".into()));
    }
    let bound = std::cmp::max(Int::one(), d / 2);
    let mut k = Int::one();
    loop {
        let base = &w[n] * &k;
        for eps in [1i64, -1] {
            let rest = Int::from(eps) - &base;
            if rest.is_multiple_of(&g) {
                let q = &rest / &g;
                let mut y: Vec<Int> = coeffs.iter().map(|c| c * &q).collect();
                y.push(k.clone());
                return unlift_any(&y);
            }
        }
        k += 1;
        if k > bound {
            return Err(Error::Internal("no apex within the denominator bound".into()));
        }
    }
}

/// Integers `c` with `Σ c_i v_i = gcd(v)`.
fn bezout(vals: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut coeffs: Vec<Int> = Vec::with_capacity(vals.len());
    for v in vals {
        let (h, s, t) = ext_gcd(&g, v);
        coeffs.iter_mut().for_each(|c| *c *= &s);
        coeffs.push(t);
        g = h;
    }
    (g, coeffs)
}

/// Shifts `mu` by multiples of `g` until its entries are coprime.
fn coprime_shift(mu: &[Int], g: &Int) -> Vec<Int> {
    if gcd_all(mu).is_one() {
        return mu.to_vec();
    }
    let r = mu.len();
    for k in 1i64.. {
        let side = (2 * k + 1) as usize;
        for idx in 0..side.pow(r as u32) {
            let mut rest = idx;
            let cand: Vec<Int> = mu
                .iter()
                .map(|m| {
                    let s = (rest % side) as i64 - k;
                    rest /= side;
                    m + g * Int::from(s)
                })
                .collect();
            if gcd_all(&cand).is_one() {
                return cand;
            }
        }
    }
    unreachable!("unbounded search")
}

/// An integer point `y` such that the lifts followed by `ỹ` still extend to a
/// basis. Requires at least two missing basis vectors, or an integer point
/// among the lifts.
fn integer_vertex(lifts: &[Vec<Int>]) -> Result<Vec<Int>> {
    let basis = complete_to_lattice_basis(lifts)?;
    let m = basis.len();
    let ext = &basis[lifts.len()..];
    let l: Vec<Int> = lifts.iter().map(|r| r[m - 1].clone()).collect();
    let t: Vec<Int> = ext.iter().map(|r| r[m - 1].clone()).collect();
    let (g, lam0) = bezout(&l);
    let mut all = vec![g.clone()];
    all.extend(t.iter().cloned());
    let (_, c) = bezout(&all);
    let mu = if g.is_one() {
        let mut e = vec![Int::zero(); t.len()];
        e[0] = Int::one();
        e
    } else {
        coprime_shift(&c[1..], &g)
    };
    let rest = Int::one() - mu.iter().zip(&t).fold(Int::zero(), |s, (a, b)| s + a * b);
    if !rest.is_multiple_of(&g) {
        return Err(Error::Internal("no integer completion".into()));
    }
    let q = &rest / &g;
    let mut y = vec![Int::zero(); m];
    for (coef, row) in lam0.iter().map(|x| x * &q).zip(lifts).chain(mu.into_iter().zip(ext)) {
        for (yi, ri) in y.iter_mut().zip(row) {
            *yi += &coef * ri;
        }
    }
    let mut cand = lifts.to_vec();
    cand.push(y.clone());
    if y[m - 1] != Int::one() || !extends_to_basis(&cand)? {
        return Err(Error::Internal("integer completion is not regular".into()));
    }
    Ok(y)
}

/// Completes a regular frame of a space of codimension at least two with
/// integer points.
fn integer_completion(frame: &[RatPoint], v0: &RatPoint) -> Result<Vec<RatPoint>> {
    let n = v0.dim();
    let mut lifts = lift_rows(frame);
    let mut tail = Vec::new();
    while lifts.len() < n + 1 {
        let y = integer_vertex(&lifts)?;
        tail.push(unlift(&y)?);
        lifts.push(y);
    }
    Ok(tail)
}

/// `c_F` together with a witness regular `n`-simplex.
pub fn c_invariant(f: &AffSpace) -> Result<CWitness> {
    let v0 = min_den_point(f);
    let frame = regular_frame_in(f, &v0)?;
    c_invariant_from_frame(f, frame)
}

pub(crate) fn c_invariant_from_frame(f: &AffSpace, frame: Vec<RatPoint>) -> Result<CWitness> {
    let n = f.ambient();
    let e = f.dim();
    let d = f.min_den();
    let v0 = frame[0].clone();
    if e == n {
        return Ok(CWitness { c: Int::one(), simplex: frame });
    }
    if e + 1 == n {
        let apex = codim_one_apex(&frame, &d)?;
        let c = apex.den();
        let mut simplex = frame;
        simplex.push(apex);
        return Ok(CWitness { c, simplex });
    }
    let tail = integer_completion(&frame, &v0)?;
    let mut simplex = frame;
    simplex.extend(tail);
    Ok(CWitness { c: Int::one(), simplex })
}

pub fn affine_invariant(f: &AffSpace) -> Result<AffineInv> {
    let inv = AffineInv {
        dim: f.dim(),
        d: f.min_den(),
        c: c_invariant(f)?.c,
    };
    check_invariant(&inv, f.ambient())?;
    Ok(inv)
}

fn check_invariant(inv: &AffineInv, n: usize) -> Result<()> {
    let ok = if inv.dim + 1 == n {
        inv.c >= Int::one()
            && inv.c <= std::cmp::max(Int::one(), &inv.d / 2)
            && inv.c.gcd(&inv.d).is_one()
    } else {
        inv.c.is_one()
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!("invariant out of range: {inv:?}")))
    }
}

/// A map `γ` with `γ(F) = G`, or `None` when the invariants differ.
pub fn affine_equiv(f: &AffSpace, g: &AffSpace) -> Result<Option<UniAffMap>> {
    check_dim(f.ambient(), g.ambient())?;
    if f.dim() != g.dim() || f.min_den() != g.min_den() {
        return Ok(None);
    }
    let wf = c_invariant(f)?;
    let wg = c_invariant(g)?;
    if wf.c != wg.c {
        return Ok(None);
    }
    let gamma = phi_vw(&wf.simplex, &wg.simplex)?;
    let forward = gamma.apply_all(f.generators())?.iter().all(|x| g.contains(x));
    let back = gamma.inverse().apply_all(g.generators())?.iter().all(|x| f.contains(x));
    if !(forward && back) {
        return Err(Error::Internal("witness map does not carry F onto G".into()));
    }
    Ok(Some(gamma))
}

/// Extends a regular simplex spanning `F` to a regular `n`-simplex using the
/// vertices of a witness outside `F`.
pub(crate) fn extend_with_tail(simplex: &[RatPoint], witness: &CWitness, dim: usize) -> Result<Vec<RatPoint>> {
    let mut out = simplex.to_vec();
    out.extend(witness.tail(dim).iter().cloned());
    if !extends_to_basis(&lift_rows(&out))? {
        return Err(Error::Internal("tail does not extend the simplex".into()));
    }
    Ok(out)
}
