//! Simplicial rational cones, stellar subdivision and desingularization.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::PureLattice;
use crate::linalg::{column_echelon, det_int, inverse, primitive, rank, to_rat_mat, transpose, IntMat};
use crate::num::{Int, Rat};

/// `pos[w_1, …, w_t]` for linearly independent primitive integer vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    generators: IntMat,
}

impl Cone {
    pub fn new(generators: IntMat) -> Result<Self> {
        let m = generators
            .first()
            .map(|g| g.len())
            .ok_or_else(|| Error::InvalidInput("cone needs a generator".into()))?;
        for g in &generators {
            crate::error::check_dim(m, g.len())?;
            if g.iter().all(|x| x.is_zero()) {
                return Err(Error::Degenerate("zero generator".into()));
            }
            if primitive(g) != *g {
                return Err(Error::NotPrimitive);
            }
        }
        if rank(&to_rat_mat(&generators)) < generators.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(Cone { generators })
    }

    pub fn generators(&self) -> &IntMat {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn is_regular(&self) -> bool {
        crate::simplex::extends_to_basis(&self.generators).unwrap_or(false)
    }
}

/// A finite collection of simplicial cones meeting in common faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    cones: Vec<Cone>,
}

impl Fan {
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Distinct rays of the fan, sorted.
    pub fn rays(&self) -> Vec<Vec<Int>> {
        let set: BTreeSet<Vec<Int>> = self
            .cones
            .iter()
            .flat_map(|c| c.generators.iter().cloned())
            .collect();
        set.into_iter().collect()
    }

    pub fn is_regular(&self) -> bool {
        self.cones.iter().all(Cone::is_regular)
    }
}

/// Coefficients of `p` in terms of the (independent) generators, if `p` lies
/// in their linear span.
pub(crate) fn cone_coefficients(gens: &[Vec<Int>], p: &[Int]) -> Option<Vec<Rat>> {
    let a = transpose(&to_rat_mat(gens));
    let b: Vec<Rat> = p.iter().cloned().map(Rat::from_integer).collect();
    crate::linalg::solve(&a, &b).filter(|x| {
        let back: Vec<Rat> = (0..p.len())
            .map(|i| x.iter().zip(gens).fold(Rat::zero(), |s, (c, g)| s + c * Rat::from_integer(g[i].clone())))
            .collect();
        back == b
    })
}

/// Stellar subdivision of one simplicial cell at a vector `p`: if `p` lies in
/// `pos[gens]`, the cell is replaced by the cells obtained by swapping `p`
/// for each generator in the support of `p`. Returns `None` when `p` is
/// outside the cell.
pub fn stellar_split(gens: &[Vec<Int>], p: &[Int]) -> Option<Vec<IntMat>> {
    let mu = cone_coefficients(gens, p)?;
    if mu.iter().any(|c| c.is_negative()) {
        return None;
    }
    let cells = mu
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_positive())
        .map(|(s, _)| {
            let mut g = gens.to_vec();
            g[s] = p.to_vec();
            g
        })
        .collect();
    Some(cells)
}

/// Stellar subdivision of a whole collection of cells at `p`.
pub fn stellar_subdivide(cells: &[IntMat], p: &[Int]) -> Vec<IntMat> {
    let mut out = Vec::new();
    for c in cells {
        match stellar_split(c, p) {
            Some(split) => out.extend(split),
            None => out.push(c.clone()),
        }
    }
    out
}

/// The nonzero lattice point of the half-open parallelepiped
/// `{Σ λ_i g_i : 0 ≤ λ_i < 1}` minimizing `Σ λ_i`, ties broken
/// lexicographically. Generators must form a full-rank square matrix.
fn best_parallelepiped_point(gens: &[Vec<Int>]) -> Option<Vec<Int>> {
    let k = gens.len();
    // Rows of the transposed echelon form are a triangular basis of the
    // lattice generated by `gens`; the box below the diagonal gives coset
    // representatives of Z^k modulo that lattice.
    let ce = column_echelon(&transpose(gens), k);
    let diag: Vec<Int> = (0..k).map(|i| ce.h[i][i].clone()).collect();
    let g_inv = inverse(&to_rat_mat(gens)).expect("generators are independent");
    let mut best: Option<(Rat, Vec<Int>)> = None;
    let mut z = vec![Int::zero(); k];
    loop {
        if z.iter().any(|x| !x.is_zero()) {
            // λ = z G⁻¹ (row vector), reduced into [0,1).
            let lambda: Vec<Rat> = (0..k)
                .map(|j| {
                    (0..k).fold(Rat::zero(), |s, i| s + Rat::from_integer(z[i].clone()) * &g_inv[i][j])
                })
                .collect();
            let frac: Vec<Rat> = lambda.iter().map(|l| l - l.floor()).collect();
            if frac.iter().any(|f| !f.is_zero()) {
                let sum = frac.iter().fold(Rat::zero(), |s, f| s + f);
                let point: Vec<Int> = (0..k)
                    .map(|j| {
                        frac.iter()
                            .zip(gens)
                            .fold(Rat::zero(), |s, (f, g)| s + f * Rat::from_integer(g[j].clone()))
                            .to_integer()
                    })
                    .collect();
                let better = match &best {
                    None => true,
                    Some((bs, bp)) => sum < *bs || (sum == *bs && point < *bp),
                };
                if better {
                    best = Some((sum, point));
                }
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return best.map(|(_, p)| p);
            }
            z[i] += 1;
            if z[i] < diag[i] {
                break;
            }
            z[i] = Int::zero();
            i += 1;
        }
    }
}

/// Regular fan subdividing `c`: while some cell is singular, subdivide every
/// cell at the best lattice point of that cell's fundamental parallelepiped.
pub fn desingularize(c: &Cone) -> Fan {
    let m = c.generators[0].len();
    let lat = PureLattice::spanned_by(&c.generators, m);
    let to_coords = |g: &Vec<Int>| lat.coords(g).expect("generators lie in their span");
    let mut cells: Vec<IntMat> = vec![c.generators.iter().map(to_coords).collect()];
    while let Some(bad) = cells.iter().find(|g| !det_int(g).abs().is_one()) {
        let p = best_parallelepiped_point(bad).expect("singular cell has an interior point");
        cells = stellar_subdivide(&cells, &p);
    }
    let cones = cells
        .into_iter()
        .map(|g| Cone {
            generators: g.iter().map(|x| lat.from_coords(x)).collect(),
        })
        .collect();
    Fan { cones }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn cone(gs: &[&[i64]]) -> Cone {
        Cone::new(gs.iter().map(|g| iv(g)).collect()).unwrap()
    }

    #[test]
    fn regular_cone_is_untouched() {
        let f = desingularize(&cone(&[&[1, 0], &[0, 1]]));
        assert_eq!(f.cones().len(), 1);
    }

    #[test]
    fn simple_split() {
        let f = desingularize(&cone(&[&[1, 0], &[1, 2]]));
        assert_eq!(f.rays(), vec![iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2])]);
        assert_eq!(f.cones().len(), 2);
        assert!(f.is_regular());
    }

    #[test]
    fn figure_one_rays() {
        let f = desingularize(&cone(&[&[-1, 2], &[5, 8]]));
        let mut expected = vec![iv(&[-1, 2]), iv(&[0, 1]), iv(&[1, 2]), iv(&[3, 5]), iv(&[5, 8])];
        expected.sort();
        assert_eq!(f.rays(), expected);
        assert!(f.is_regular());
    }

    #[test]
    fn three_dimensional_cone() {
        let f = desingularize(&cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]));
        assert!(f.is_regular());
        let gens = [iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 3])];
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    let p: Vec<Int> = (0..3)
                        .map(|j| &gens[0][j] * a + &gens[1][j] * b + &gens[2][j] * c)
                        .collect();
                    assert!(f.cones().iter().any(|cell| {
                        cone_coefficients(cell.generators(), &p)
                            .is_some_and(|mu| mu.iter().all(|x| !x.is_negative()))
                    }));
                }
            }
        }
    }

    #[test]
    fn lower_dimensional_cone_uses_its_own_lattice() {
        let f = desingularize(&cone(&[&[1, 0, 1], &[1, 2, 1]]));
        assert!(f.is_regular());
        assert!(f.rays().contains(&iv(&[1, 1, 1])));
    }
}
