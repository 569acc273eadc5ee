//! Finite simplicial complexes with rational vertices and their Farey
//! blow-ups.

use std::collections::BTreeSet;

use crate::cone::stellar_split;
use crate::error::{Error, Result};
use crate::point::{unlift_any, RatPoint};
use crate::simplex::{farey_mediant, is_regular, RatSimplex};

/// A simplicial complex, stored by its maximal cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    cells: Vec<RatSimplex>,
}

impl Triangulation {
    /// Wraps a list of cells without checking the complex property; see
    /// [`Triangulation::is_complex`].
    pub fn from_cells(cells: Vec<RatSimplex>) -> Self {
        Triangulation { cells }
    }

    pub fn cells(&self) -> &[RatSimplex] {
        &self.cells
    }

    pub fn vertices(&self) -> Vec<RatPoint> {
        let set: BTreeSet<RatPoint> = self
            .cells
            .iter()
            .flat_map(|c| c.vertices().iter().cloned())
            .collect();
        set.into_iter().collect()
    }

    /// True iff `s` (as a vertex set) is a face of some cell.
    pub fn has_face(&self, s: &RatSimplex) -> bool {
        self.cells
            .iter()
            .any(|c| s.vertices().iter().all(|v| c.vertices().contains(v)))
    }

    pub fn is_regular(&self) -> bool {
        self.cells.iter().all(is_regular)
    }

    /// Every face of every cell, as sorted vertex sets.
    pub fn faces(&self) -> BTreeSet<Vec<RatPoint>> {
        let mut out = BTreeSet::new();
        for c in &self.cells {
            let vs = c.canonical().into_vertices();
            let k = vs.len();
            for mask in 1u32..(1 << k) {
                out.insert(
                    (0..k)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| vs[i].clone())
                        .collect(),
                );
            }
        }
        out
    }

    /// Exact check that any two cells meet in a common face (possibly empty).
    pub fn is_complex(&self) -> bool {
        for (i, a) in self.cells.iter().enumerate() {
            for b in &self.cells[i + 1..] {
                if !crate::polyhedra::meet_in_common_face(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Stellar subdivision of `t` at the Farey mediant of its face `s`.
pub fn blow_up(t: &Triangulation, s: &RatSimplex) -> Result<Triangulation> {
    if !t.has_face(s) {
        return Err(Error::InvalidInput("simplex is not a face of the triangulation".into()));
    }
    let c = farey_mediant(s)?;
    let p = c.lift().0;
    let mut cells = Vec::new();
    for cell in &t.cells {
        match stellar_split(&cell.lifts(), &p) {
            Some(split) => {
                for g in split {
                    let vs = g.iter().map(|v| unlift_any(v)).collect::<Result<Vec<_>>>()?;
                    cells.push(RatSimplex::new(vs)?);
                }
            }
            None => cells.push(cell.clone()),
        }
    }
    Ok(Triangulation { cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: (i64, i64), b: (i64, i64)) -> RatSimplex {
        RatSimplex::new(vec![RatPoint::from_fracs(&[a]), RatPoint::from_fracs(&[b])]).unwrap()
    }

    #[test]
    fn one_dimensional_blow_ups() {
        let t = Triangulation::from_cells(vec![seg((0, 1), (1, 1))]);
        let b = blow_up(&t, &seg((0, 1), (1, 1))).unwrap();
        let mut cells: Vec<_> = b.cells().iter().map(|c| c.canonical()).collect();
        cells.sort();
        assert_eq!(cells, vec![seg((0, 1), (1, 2)), seg((1, 2), (1, 1))]);
        let t = Triangulation::from_cells(vec![seg((0, 1), (1, 2))]);
        let b = blow_up(&t, &seg((0, 1), (1, 2))).unwrap();
        let mut cells: Vec<_> = b.cells().iter().map(|c| c.canonical()).collect();
        cells.sort();
        assert_eq!(cells, vec![seg((0, 1), (1, 3)), seg((1, 3), (1, 2))]);
        assert!(b.is_regular());
    }

    #[test]
    fn triangle_blow_up() {
        let unit = RatSimplex::new(vec![
            RatPoint::from_ints(&[0, 0]),
            RatPoint::from_ints(&[1, 0]),
            RatPoint::from_ints(&[0, 1]),
        ])
        .unwrap();
        let b = blow_up(&Triangulation::from_cells(vec![unit.clone()]), &unit).unwrap();
        let m = RatPoint::from_fracs(&[(1, 3), (1, 3)]);
        assert_eq!(b.cells().len(), 3);
        assert!(b.cells().iter().all(|c| c.vertices().contains(&m)));
        assert!(b.is_regular());
        assert!(b.is_complex());
    }

    #[test]
    fn blow_up_rejects_foreign_simplex() {
        let t = Triangulation::from_cells(vec![seg((0, 1), (1, 1))]);
        assert!(blow_up(&t, &seg((0, 1), (2, 1))).is_err());
    }
}
