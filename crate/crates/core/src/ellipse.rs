//! Minimal-index conjugate semi-diameters, the ellipse invariant and the
//! ellipse orbit decision.

use std::collections::BTreeSet;

use crate::angle::{tri_equiv, tri_inv, OrientedTriangle, TriInv};
use crate::conic::{rational_points, RationalEllipse};
use crate::error::{Error, Result};
use crate::map::UniAffMap;
use crate::num::{Int, Limits};
use crate::point::RatPoint;

/// Conjugate semi-diameters `conv(O, x)` and `conv(O, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiDiamPair {
    pub center: RatPoint,
    pub x: RatPoint,
    pub y: RatPoint,
}

impl SemiDiamPair {
    pub fn index(&self) -> Int {
        self.x.den() + self.y.den()
    }

    /// The triangle oriented `O → x → y`.
    pub fn triangle(&self) -> Result<OrientedTriangle> {
        OrientedTriangle::new(self.center.clone(), self.x.clone(), self.y.clone())
    }
}

/// The smallest index `d` and every ordered conjugate pair of index `d`.
/// Points are scanned by increasing denominator `j`; once a pair of index
/// `d` is known only `j < d` can still contribute.
pub fn min_index_pairs(e: &RationalEllipse) -> Result<(Int, Vec<SemiDiamPair>)> {
    min_index_pairs_within(e, &Limits::UNBOUNDED)
}

/// As [`min_index_pairs`], failing once the scan passes `limits.max_den`.
pub fn min_index_pairs_within(e: &RationalEllipse, limits: &Limits) -> Result<(Int, Vec<SemiDiamPair>)> {
    if !e.has_rational_conjugates() {
        return Err(Error::NotInClass(
            "ellipse has no rational conjugate semi-diameters".into(),
        ));
    }
    let mut best: Option<Int> = None;
    let mut pairs = Vec::new();
    let mut j: u64 = 1;
    loop {
        let jj = Int::from(j);
        if let Some(b) = &best {
            if &jj >= b {
                break;
            }
        }
        limits.check_den(&jj, "the semi-diameter search")?;
        for x in rational_points(e, j).into_iter().filter(|p| p.den() == jj) {
            for y in e.conjugate_partners(&x)? {
                let pair = SemiDiamPair {
                    center: e.center.clone(),
                    x: x.clone(),
                    y,
                };
                let idx = pair.index();
                match &best {
                    Some(b) if &idx > b => {}
                    Some(b) if &idx == b => pairs.push(pair),
                    _ => {
                        best = Some(idx);
                        pairs = vec![pair];
                    }
                }
            }
        }
        j += 1;
    }
    pairs.sort();
    Ok((best.expect("loop exits after a pair is found"), pairs))
}

/// The set of triangle invariants over all minimal-index ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EllInv(pub BTreeSet<TriInv>);

pub fn ell_inv(e: &RationalEllipse) -> Result<EllInv> {
    Ok(ell_inv_within(e, &Limits::UNBOUNDED)?.1)
}

/// The smallest index together with the invariant.
pub fn ell_inv_within(e: &RationalEllipse, limits: &Limits) -> Result<(Int, EllInv)> {
    let (d, pairs) = min_index_pairs_within(e, limits)?;
    let set = pairs
        .iter()
        .map(|p| tri_inv(&p.triangle()?))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok((d, EllInv(set)))
}

/// A map carrying `e` onto `f`, or `None` when the invariants differ.
pub fn ellipse_equiv(e: &RationalEllipse, f: &RationalEllipse) -> Result<Option<UniAffMap>> {
    ellipse_equiv_within(e, f, &Limits::UNBOUNDED)
}

pub fn ellipse_equiv_within(e: &RationalEllipse, f: &RationalEllipse, limits: &Limits) -> Result<Option<UniAffMap>> {
    let (_, pe) = min_index_pairs_within(e, limits)?;
    let (_, pf) = min_index_pairs_within(f, limits)?;
    let inv = |ps: &[SemiDiamPair]| -> Result<Vec<TriInv>> { ps.iter().map(|p| tri_inv(&p.triangle()?)).collect() };
    let (ie, jf) = (inv(&pe)?, inv(&pf)?);
    let se: BTreeSet<_> = ie.iter().cloned().collect();
    let sf: BTreeSet<_> = jf.iter().cloned().collect();
    if se != sf {
        return Ok(None);
    }
    let t = pe[0].triangle()?;
    let k = jf
        .iter()
        .position(|x| *x == ie[0])
        .ok_or_else(|| Error::Internal("matching pair vanished".into()))?;
    let g = tri_equiv(&t, &pf[k].triangle()?)?
        .ok_or_else(|| Error::Internal("equal triangle invariants without a map".into()))?;
    if !f.conic.pullback(&g)?.same_up_to_scalar(&e.conic) || g.apply(&e.center)? != f.center {
        return Err(Error::Internal("map does not carry the ellipse".into()));
    }
    Ok(Some(g))
}
