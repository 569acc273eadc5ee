//! Rational polyhedra: exact triangulation, set equality and the orbit
//! decision procedure.

pub mod hull;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;

use crate::affine::{affine_equiv, affine_span, c_invariant};
use crate::complex::Triangulation;
use crate::cone::{desingularize, Cone};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot_rat, primitive_from_rat};
use crate::map::{phi_vw, UniAffMap};
use crate::num::{Int, Limits, Rat};
use crate::point::{lift_rows, unlift, RatPoint};
use crate::simplex::{extends_to_basis, is_regular, RatSimplex};

pub use hull::{barycentric, convex_hull, in_simplex, lattice_points_in, Constraint, ConvexPolytope, Split};

/// A finite union of rational simplexes of any dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    simplexes: Vec<RatSimplex>,
}

impl Polyhedron {
    pub fn new(simplexes: Vec<RatSimplex>) -> Result<Self> {
        let n = simplexes
            .first()
            .map(|s| s.ambient())
            .ok_or_else(|| Error::InvalidInput("polyhedron needs a simplex".into()))?;
        for s in &simplexes {
            check_dim(n, s.ambient())?;
        }
        Ok(Polyhedron { simplexes })
    }

    pub fn simplexes(&self) -> &[RatSimplex] {
        &self.simplexes
    }

    pub fn ambient(&self) -> usize {
        self.simplexes[0].ambient()
    }

    pub fn vertices(&self) -> Vec<RatPoint> {
        let set: BTreeSet<RatPoint> = self
            .simplexes
            .iter()
            .flat_map(|s| s.vertices().iter().cloned())
            .collect();
        set.into_iter().collect()
    }

    pub fn contains(&self, x: &RatPoint) -> bool {
        self.simplexes.iter().any(|s| in_simplex(s.vertices(), x))
    }

    pub fn image(&self, g: &UniAffMap) -> Result<Polyhedron> {
        Polyhedron::new(
            self.simplexes
                .iter()
                .map(|s| g.apply_simplex(s))
                .collect::<Result<_>>()?,
        )
    }
}

/// True iff two simplexes intersect in a common face (or not at all).
pub fn meet_in_common_face(a: &RatSimplex, b: &RatSimplex) -> bool {
    let ha = convex_hull(a.vertices()).expect("nonempty");
    let hb = convex_hull(b.vertices()).expect("nonempty");
    let shared: Vec<RatPoint> = a
        .vertices()
        .iter()
        .filter(|v| b.vertices().contains(v))
        .cloned()
        .collect();
    match ha.intersect(&hb) {
        None => shared.is_empty(),
        Some(inter) => {
            !shared.is_empty()
                && convex_hull(&shared).expect("nonempty").vertices() == inter.vertices()
        }
    }
}

fn canonical_hyperplane(c: &Constraint) -> Constraint {
    let mut row = c.0.clone();
    row.push(c.1.clone());
    let mut ints = primitive_from_rat(&row);
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| *x < Int::zero()) {
        ints = ints.into_iter().map(|x| -x).collect();
    }
    let b = Rat::from_integer(ints.pop().expect("nonempty"));
    (ints.into_iter().map(Rat::from_integer).collect(), b)
}

/// Hyperplanes of `R^n` cutting out every simplex of every given polyhedron:
/// the equations of each affine hull and an extension of each facet.
fn arrangement(polys: &[&Polyhedron]) -> Vec<Constraint> {
    let mut set = BTreeSet::new();
    for p in polys {
        for s in &p.simplexes {
            let h = convex_hull(s.vertices()).expect("nonempty");
            for c in h.equations().iter().chain(h.facets()) {
                set.insert(canonical_hyperplane(c));
            }
        }
    }
    set.into_iter().collect()
}

fn refine(s: &RatSimplex, hyperplanes: &[Constraint]) -> Vec<ConvexPolytope> {
    let mut pieces = vec![convex_hull(s.vertices()).expect("nonempty")];
    for (h, b) in hyperplanes {
        let mut next = Vec::with_capacity(pieces.len());
        for p in pieces {
            match p.split(h, b) {
                Split::Cut(lo, hi) => {
                    next.push(lo);
                    next.push(hi);
                }
                _ => next.push(p),
            }
        }
        pieces = next;
    }
    pieces
}

/// Cells of the arrangement lying in `p`, keyed by their sorted vertex list.
fn cells(p: &Polyhedron, hyperplanes: &[Constraint]) -> BTreeMap<Vec<RatPoint>, ConvexPolytope> {
    let mut out = BTreeMap::new();
    for s in &p.simplexes {
        for c in refine(s, hyperplanes) {
            out.entry(c.vertices().to_vec()).or_insert(c);
        }
    }
    out
}

fn maximal_cells(cells: BTreeMap<Vec<RatPoint>, ConvexPolytope>) -> Vec<ConvexPolytope> {
    let keys: Vec<BTreeSet<RatPoint>> = cells.keys().map(|k| k.iter().cloned().collect()).collect();
    cells
        .into_values()
        .enumerate()
        .filter(|(i, _)| {
            !keys
                .iter()
                .enumerate()
                .any(|(j, k)| j != *i && keys[*i].is_subset(k) && keys[*i].len() < k.len())
        })
        .map(|(_, c)| c)
        .collect()
}

/// Pulling triangulation: cone the least vertex over the triangulations of
/// the facets not containing it.
fn pull(vertices: &[RatPoint]) -> Vec<Vec<RatPoint>> {
    let hull = convex_hull(vertices).expect("nonempty");
    let vs = hull.vertices();
    if hull.dim() == 0 {
        return vec![vec![vs[0].clone()]];
    }
    let apex = vs[0].clone();
    let mut out = Vec::new();
    for f in hull.facets() {
        let fv = hull.facet_vertices(f);
        if fv.contains(&apex) {
            continue;
        }
        for mut s in pull(&fv) {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    out
}

/// A triangulation whose support is exactly `p`, with rational vertices.
pub fn triangulate(p: &Polyhedron) -> Triangulation {
    let h = arrangement(&[p]);
    let mut simplexes: BTreeSet<Vec<RatPoint>> = BTreeSet::new();
    for c in maximal_cells(cells(p, &h)) {
        for mut s in pull(c.vertices()) {
            s.sort();
            simplexes.insert(s);
        }
    }
    let cells: Vec<RatSimplex> = simplexes
        .into_iter()
        .map(|s| RatSimplex::new(s).expect("pulled simplexes are independent"))
        .collect();
    Triangulation::from_cells(cells)
}

/// Whether the simplex `s` lies in `q`: the parts of `s` outside each simplex
/// of `q` are peeled off facet by facet, keeping only pieces of full
/// dimension, since `s \ q` is either empty or open in `aff(s)`.
fn simplex_covered(s: &RatSimplex, q: &Polyhedron) -> bool {
    let hull = convex_hull(s.vertices()).expect("nonempty");
    let e = hull.dim();
    if e == 0 {
        return q.contains(&hull.vertices()[0]);
    }
    let mut pieces = vec![hull];
    for t in &q.simplexes {
        let th = convex_hull(t.vertices()).expect("nonempty");
        let spans = th
            .equations()
            .iter()
            .all(|(a, b)| s.vertices().iter().all(|v| dot_rat(a, &v.0) == *b));
        if !spans {
            continue;
        }
        let mut rest = Vec::new();
        for piece in pieces {
            let mut cur = Some(piece);
            for (a, b) in th.facets() {
                let Some(c) = cur.take() else { break };
                match c.split(a, b) {
                    Split::Inside | Split::Below => cur = Some(c),
                    Split::Above => rest.push(c),
                    Split::Cut(lo, hi) => {
                        rest.push(hi);
                        cur = Some(lo);
                    }
                }
            }
        }
        pieces = rest;
        if pieces.is_empty() {
            return true;
        }
    }
    false
}

/// Exact point-set equality of two polyhedra.
pub fn poly_set_equal(p: &Polyhedron, q: &Polyhedron) -> bool {
    p.ambient() == q.ambient()
        && p.simplexes.iter().all(|s| simplex_covered(s, q))
        && q.simplexes.iter().all(|s| simplex_covered(s, p))
}

/// A regular simplex of full dimension inside a convex polytope: the cell at
/// the least vertex of the desingularized cone over a simplex of the hull.
pub fn regular_simplex_in_convex(c: &ConvexPolytope) -> Result<RatSimplex> {
    let mut chosen: Vec<RatPoint> = Vec::new();
    for v in c.vertices() {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if crate::simplex::affinely_independent(&trial) {
            chosen = trial;
        }
    }
    if chosen.len() != c.dim() + 1 {
        return Err(Error::Degenerate("polytope has no full-dimensional simplex".into()));
    }
    if is_regular(&RatSimplex::new(chosen.clone())?) {
        return RatSimplex::new(chosen);
    }
    let apex = chosen[0].lift().0;
    let fan = desingularize(&Cone::new(lift_rows(&chosen))?);
    let cell = fan
        .cones()
        .iter()
        .find(|k| k.generators().contains(&apex))
        .ok_or_else(|| Error::Internal("no cell at the least vertex".into()))?;
    let vs = cell
        .generators()
        .iter()
        .map(|g| unlift(g))
        .collect::<Result<Vec<_>>>()?;
    RatSimplex::new(vs)
}

/// Lattice content of a difference vector, preserved by every map of the
/// group: its denominator and the gcd of its scaled entries.
fn difference_content(x: &RatPoint, y: &RatPoint) -> (Int, Int) {
    let d = RatPoint(x.sub(y));
    let den = d.den();
    let scaled: Vec<Int> = d
        .0
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    (den, crate::num::gcd_all(&scaled))
}

/// Data shared by both decision variants: hulls, the affine map between the
/// hulls' spans, and the regular frame `R*`.
struct Setup {
    hull: ConvexPolytope,
    hull_target: ConvexPolytope,
    frame: Vec<RatPoint>,
    tail_images: Vec<RatPoint>,
    e: usize,
}

fn setup(p: &Polyhedron, q: &Polyhedron) -> Result<Option<Setup>> {
    check_dim(p.ambient(), q.ambient())?;
    let hull = convex_hull(&p.vertices())?;
    let hull_target = convex_hull(&q.vertices())?;
    let f = affine_span(hull.vertices())?;
    let f2 = affine_span(hull_target.vertices())?;
    let Some(gamma) = affine_equiv(&f, &f2)? else {
        return Ok(None);
    };
    let e = hull.dim();
    let r = regular_simplex_in_convex(&hull)?;
    let witness = c_invariant(&f)?;
    let mut frame = r.into_vertices();
    frame.extend(witness.tail(e).iter().cloned());
    if !extends_to_basis(&lift_rows(&frame))? {
        return Err(Error::Internal("frame extension is not regular".into()));
    }
    let tail_images = gamma.apply_all(&frame[e + 1..])?;
    Ok(Some(Setup {
        hull,
        hull_target,
        frame,
        tail_images,
        e,
    }))
}

fn try_candidates(
    p: &Polyhedron,
    q: &Polyhedron,
    st: &Setup,
    candidates: BTreeSet<Vec<RatPoint>>,
) -> Result<Option<UniAffMap>> {
    let target_vertices: BTreeSet<RatPoint> = st.hull_target.vertices().iter().cloned().collect();
    for s in candidates {
        let mut u = s.clone();
        u.extend(st.tail_images.iter().cloned());
        let phi = match phi_vw(&st.frame, &u) {
            Ok(m) => m,
            Err(Error::NotRegular) | Err(Error::DenominatorMismatch) => continue,
            Err(e) => return Err(e),
        };
        let moved = phi.apply_all(st.hull.vertices())?;
        if moved.len() != target_vertices.len() || !moved.iter().all(|v| target_vertices.contains(v)) {
            continue;
        }
        let image = p.image(&phi)?;
        if poly_set_equal(&image, q) {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// A map `δ` with `δ(P) = P'`, or `None` if none exists.
///
/// Candidate tuples `s` are restricted to images of the frame under affine
/// bijections sending hull vertices to hull vertices; every successful tuple
/// of the full candidate set has this form, so the first success in
/// lexicographic order is the same.
pub fn poly_equiv(p: &Polyhedron, q: &Polyhedron) -> Result<Option<UniAffMap>> {
    let Some(st) = setup(p, q)? else {
        return Ok(None);
    };
    let e = st.e;
    let src = st.hull.vertices();
    let dst = st.hull_target.vertices();
    if src.len() != dst.len() {
        return Ok(None);
    }
    // An affinely independent basis of hull vertices, and affine coordinates
    // of the frame and of every hull vertex with respect to it.
    let mut basis: Vec<RatPoint> = Vec::new();
    for v in src {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if crate::simplex::affinely_independent(&trial) {
            basis = trial;
        }
    }
    let coords = |x: &RatPoint| -> Result<Vec<Rat>> {
        barycentric(&basis, x).ok_or_else(|| Error::Internal("point outside the hull span".into()))
    };
    let frame_coords: Vec<Vec<Rat>> = st.frame[..=e].iter().map(coords).collect::<Result<_>>()?;
    let vertex_coords: Vec<Vec<Rat>> = src.iter().map(coords).collect::<Result<_>>()?;
    let dst_set: BTreeSet<RatPoint> = dst.iter().cloned().collect();
    let combine = |c: &[Rat], pts: &[&RatPoint]| -> RatPoint {
        let n = pts[0].dim();
        RatPoint(
            (0..n)
                .map(|i| c.iter().zip(pts).fold(Rat::zero(), |s, (a, p)| s + a * &p.0[i]))
                .collect(),
        )
    };
    let mut candidates = BTreeSet::new();
    let mut assignment: Vec<&RatPoint> = Vec::new();
    search_assignments(&basis, dst, &mut assignment, &mut |assigned| {
        if !crate::simplex::affinely_independent(&assigned.iter().map(|p| (*p).clone()).collect::<Vec<_>>()) {
            return;
        }
        if !vertex_coords.iter().all(|c| dst_set.contains(&combine(c, assigned))) {
            return;
        }
        let s: Vec<RatPoint> = frame_coords.iter().map(|c| combine(c, assigned)).collect();
        if s.iter().zip(&st.frame).all(|(a, b)| a.den() == b.den()) {
            candidates.insert(s);
        }
    });
    try_candidates(p, q, &st, candidates)
}

fn search_assignments<'a>(
    basis: &[RatPoint],
    dst: &'a [RatPoint],
    assigned: &mut Vec<&'a RatPoint>,
    visit: &mut dyn FnMut(&[&'a RatPoint]),
) {
    let k = assigned.len();
    if k == basis.len() {
        visit(assigned);
        return;
    }
    for t in dst {
        if assigned.contains(&t) || t.den() != basis[k].den() {
            continue;
        }
        let consistent = (0..k).all(|j| {
            difference_content(&basis[k], &basis[j]) == difference_content(t, assigned[j])
        });
        if !consistent {
            continue;
        }
        assigned.push(t);
        search_assignments(basis, dst, assigned, visit);
        assigned.pop();
    }
}

/// The same decision with the candidate set enumerated in full: all tuples of
/// points of the target hull with matching denominators spanning a regular
/// simplex.
pub fn poly_equiv_exhaustive(p: &Polyhedron, q: &Polyhedron, limits: &Limits) -> Result<Option<UniAffMap>> {
    let Some(st) = setup(p, q)? else {
        return Ok(None);
    };
    let e = st.e;
    let max_den = st.frame[..=e].iter().map(|r| r.den()).max().expect("nonempty");
    let bound = u64::try_from(max_den).map_err(|_| Error::ResourceExceeded("denominator".into()))?;
    let points = lattice_points_in(&st.hull_target, bound, limits)?;
    let per_slot: Vec<Vec<&RatPoint>> = st.frame[..=e]
        .iter()
        .map(|r| points.iter().filter(|x| x.den() == r.den()).collect())
        .collect();
    let mut candidates = BTreeSet::new();
    for tuple in per_slot.into_iter().multi_cartesian_product() {
        let s: Vec<RatPoint> = tuple.into_iter().cloned().collect();
        if crate::simplex::affinely_independent(&s) && extends_to_basis(&lift_rows(&s)).unwrap_or(false) {
            candidates.insert(s);
        }
    }
    try_candidates(p, q, &st, candidates)
}
