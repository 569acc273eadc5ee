//! Exact convex hulls within the affine hull of the input, hyperplane
//! clipping, and enumeration of rational points of bounded denominator.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_rat, nullspace, primitive_from_rat, rank, rref, solve};
use crate::num::{ceil, floor, Int, Limits, Rat};
use crate::point::RatPoint;

/// An affine constraint `a · x (≤ or =) b`.
pub type Constraint = (Vec<Rat>, Rat);

/// A convex polytope given by both its vertices and an inequality
/// description relative to its affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolytope {
    dim: usize,
    vertices: Vec<RatPoint>,
    equations: Vec<Constraint>,
    facets: Vec<Constraint>,
}

impl ConvexPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Vertices in sorted order.
    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn equations(&self) -> &[Constraint] {
        &self.equations
    }

    /// Facet inequalities `a · x ≤ b`, valid on the affine hull.
    pub fn facets(&self) -> &[Constraint] {
        &self.facets
    }

    pub fn contains(&self, x: &RatPoint) -> bool {
        self.equations.iter().all(|(a, b)| dot_rat(a, &x.0) == *b)
            && self.facets.iter().all(|(a, b)| dot_rat(a, &x.0) <= *b)
    }

    pub fn contains_in_relative_interior(&self, x: &RatPoint) -> bool {
        self.equations.iter().all(|(a, b)| dot_rat(a, &x.0) == *b)
            && self.facets.iter().all(|(a, b)| dot_rat(a, &x.0) < *b)
    }

    pub fn barycenter(&self) -> RatPoint {
        let k = Rat::from_integer(Int::from(self.vertices.len()));
        RatPoint(
            (0..self.ambient())
                .map(|i| self.vertices.iter().fold(Rat::zero(), |s, v| s + &v.0[i]) / &k)
                .collect(),
        )
    }

    /// Vertices lying on the given facet.
    pub fn facet_vertices(&self, facet: &Constraint) -> Vec<RatPoint> {
        self.vertices
            .iter()
            .filter(|v| dot_rat(&facet.0, &v.0) == facet.1)
            .cloned()
            .collect()
    }

    /// Pieces on either side of the hyperplane `h · x = beta`.
    pub fn split(&self, h: &[Rat], beta: &Rat) -> Split {
        let side: Vec<Rat> = self.vertices.iter().map(|v| dot_rat(h, &v.0) - beta).collect();
        let neg = side.iter().any(|s| s.is_negative());
        let pos = side.iter().any(|s| s.is_positive());
        match (neg, pos) {
            (false, false) => Split::Inside,
            (true, false) => Split::Below,
            (false, true) => Split::Above,
            (true, true) => {
                let below = self.half(&side, false);
                let above = self.half(&side, true);
                Split::Cut(below, above)
            }
        }
    }

    fn half(&self, side: &[Rat], upper: bool) -> ConvexPolytope {
        let keep = |s: &Rat| if upper { !s.is_negative() } else { !s.is_positive() };
        let mut pts: Vec<RatPoint> = self
            .vertices
            .iter()
            .zip(side)
            .filter(|(_, s)| keep(s))
            .map(|(v, _)| v.clone())
            .collect();
        for (i, j) in (0..self.vertices.len()).tuple_combinations() {
            let (si, sj) = (&side[i], &side[j]);
            if (si.is_negative() && sj.is_positive()) || (si.is_positive() && sj.is_negative()) {
                let t = si / (si - sj);
                let (a, b) = (&self.vertices[i], &self.vertices[j]);
                pts.push(RatPoint(
                    a.0.iter().zip(&b.0).map(|(x, y)| x + (y - x) * &t).collect(),
                ));
            }
        }
        convex_hull(&pts).expect("nonempty clip")
    }

    /// Intersection with the closed half-space `h · x ≤ beta`.
    pub fn clip_le(&self, h: &[Rat], beta: &Rat) -> Option<ConvexPolytope> {
        match self.split(h, beta) {
            Split::Inside | Split::Below => Some(self.clone()),
            Split::Cut(below, _) => Some(below),
            Split::Above => {
                let touching: Vec<RatPoint> = self
                    .vertices
                    .iter()
                    .filter(|v| dot_rat(h, &v.0) == *beta)
                    .cloned()
                    .collect();
                if touching.is_empty() {
                    None
                } else {
                    convex_hull(&touching).ok()
                }
            }
        }
    }

    /// Intersection with another polytope (possibly empty or lower
    /// dimensional).
    pub fn intersect(&self, other: &ConvexPolytope) -> Option<ConvexPolytope> {
        let mut cur = self.clone();
        for (a, b) in &other.equations {
            cur = cur.clip_le(a, b)?;
            let na: Vec<Rat> = a.iter().map(|x| -x).collect();
            cur = cur.clip_le(&na, &-b)?;
        }
        for (a, b) in &other.facets {
            cur = cur.clip_le(a, b)?;
        }
        Some(cur)
    }
}

/// Result of cutting a polytope by a hyperplane.
#[derive(Clone, Debug)]
pub enum Split {
    /// The polytope lies in the hyperplane.
    Inside,
    Below,
    Above,
    Cut(ConvexPolytope, ConvexPolytope),
}

fn normalise(w: &[Rat], beta: &Rat) -> Constraint {
    let mut row = w.to_vec();
    row.push(beta.clone());
    let mut ints = primitive_from_rat(&row);
    let b = Rat::from_integer(ints.pop().expect("nonempty"));
    (ints.into_iter().map(Rat::from_integer).collect(), b)
}

/// Exact vertex and facet description of `conv(points)` within its affine
/// hull.
pub fn convex_hull(points: &[RatPoint]) -> Result<ConvexPolytope> {
    let set: BTreeSet<RatPoint> = points.iter().cloned().collect();
    let pts: Vec<RatPoint> = set.into_iter().collect();
    let p0 = pts
        .first()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("convex hull of an empty set".into()))?;
    let n = p0.dim();
    for p in &pts {
        p.check_dim(n)?;
    }
    let diffs: Vec<Vec<Rat>> = pts[1..].iter().map(|p| p.sub(&p0)).collect();
    let (red, pivots) = rref(&diffs);
    let e = pivots.len();
    let basis: Vec<Vec<Rat>> = red.into_iter().take(e).collect();
    let equations: Vec<Constraint> = nullspace(&basis, n)
        .into_iter()
        .map(|w| {
            let b = dot_rat(&w, &p0.0);
            normalise(&w, &b)
        })
        .collect();
    if e == 0 {
        return Ok(ConvexPolytope {
            dim: 0,
            vertices: vec![p0],
            equations,
            facets: Vec::new(),
        });
    }
    // Local coordinates: the rref basis makes y_i = x[pivot_i] - p0[pivot_i].
    let local: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| pivots.iter().map(|&c| &p.0[c] - &p0.0[c]).collect())
        .collect();
    let mut local_facets: BTreeSet<Constraint> = BTreeSet::new();
    for combo in (0..pts.len()).combinations(e) {
        let base = &local[combo[0]];
        let d: Vec<Vec<Rat>> = combo[1..]
            .iter()
            .map(|&i| local[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let ns = nullspace(&d, e);
        if ns.len() != 1 {
            continue;
        }
        let w = &ns[0];
        let beta = dot_rat(w, base);
        let vals: Vec<Rat> = local.iter().map(|y| dot_rat(w, y) - &beta).collect();
        let le = vals.iter().all(|v| !v.is_positive());
        let ge = vals.iter().all(|v| !v.is_negative());
        if le {
            local_facets.insert(normalise(w, &beta));
        } else if ge {
            let nw: Vec<Rat> = w.iter().map(|x| -x).collect();
            local_facets.insert(normalise(&nw, &-beta));
        }
    }
    let mut vertices = Vec::new();
    for (p, y) in pts.iter().zip(&local) {
        let tight: Vec<Vec<Rat>> = local_facets
            .iter()
            .filter(|(w, b)| dot_rat(w, y) == *b)
            .map(|(w, _)| w.clone())
            .collect();
        if rank(&tight) == e {
            vertices.push(p.clone());
        }
    }
    let facets = local_facets
        .into_iter()
        .map(|(w, b)| {
            let mut a = vec![Rat::zero(); n];
            let mut rhs = b;
            for (wi, &c) in w.iter().zip(&pivots) {
                a[c] = wi.clone();
                rhs += wi * &p0.0[c];
            }
            (a, rhs)
        })
        .collect();
    Ok(ConvexPolytope {
        dim: e,
        vertices,
        equations,
        facets,
    })
}

/// All rational points of `region` with denominator at most `d`, ordered by
/// denominator and then coordinates.
pub fn lattice_points_in(region: &ConvexPolytope, d: u64, limits: &Limits) -> Result<Vec<RatPoint>> {
    limits.check_den(&Int::from(d), "lattice point enumeration")?;
    let n = region.ambient();
    let lo: Vec<Rat> = (0..n)
        .map(|i| region.vertices.iter().map(|v| v.0[i].clone()).min().expect("nonempty"))
        .collect();
    let hi: Vec<Rat> = (0..n)
        .map(|i| region.vertices.iter().map(|v| v.0[i].clone()).max().expect("nonempty"))
        .collect();
    let mut out = Vec::new();
    for k in 1..=d {
        let kk = Rat::from_integer(Int::from(k));
        let ranges: Vec<(Int, Int)> = (0..n)
            .map(|i| (ceil(&(&lo[i] * &kk)), floor(&(&hi[i] * &kk))))
            .collect();
        if ranges.iter().any(|(a, b)| a > b) {
            continue;
        }
        let mut z: Vec<Int> = ranges.iter().map(|(a, _)| a.clone()).collect();
        'outer: loop {
            let x = RatPoint(z.iter().map(|zi| Rat::new(zi.clone(), Int::from(k))).collect());
            if x.den() == Int::from(k) && region.contains(&x) {
                out.push(x);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                z[i] += 1;
                if z[i] <= ranges[i].1 {
                    break;
                }
                z[i] = ranges[i].0.clone();
            }
        }
    }
    Ok(out)
}

/// Barycentric coordinates of `x` with respect to affinely independent
/// vertices, if `x` lies in their affine hull.
pub fn barycentric(vertices: &[RatPoint], x: &RatPoint) -> Option<Vec<Rat>> {
    let n = x.dim();
    let k = vertices.len();
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| vertices.iter().map(|v| v.0[i].clone()).collect())
        .collect();
    rows.push(vec![Rat::one(); k]);
    let mut rhs = x.0.clone();
    rhs.push(Rat::one());
    let sol = solve(&rows, &rhs)?;
    let back: Vec<Rat> = (0..=n)
        .map(|i| rows[i].iter().zip(&sol).fold(Rat::zero(), |s, (a, b)| s + a * b))
        .collect();
    (back == rhs).then_some(sol)
}

/// True iff `x` lies in the closed simplex spanned by `vertices`.
pub fn in_simplex(vertices: &[RatPoint], x: &RatPoint) -> bool {
    barycentric(vertices, x).is_some_and(|b| b.iter().all(|c| !c.is_negative()))
}
