mod common;

use afflat_core::affine::{affine_invariant, affine_span};
use afflat_core::angle::{angle_inv, tri_inv, OrientedAngle, OrientedTriangle};
use afflat_core::conic::{
    classify, conjugate_diameter, ellipse_from_semidiameters, rational_points, Conic, RationalEllipse,
};
use afflat_core::ellipse::ell_inv;
use afflat_core::num::{Int, Limits, Rat};
use afflat_core::polyhedra::{poly_equiv, poly_equiv_exhaustive, poly_set_equal, Polyhedron};
use afflat_core::segment::{hj, lambda1, side_inv, OrientedSegment};
use afflat_core::{RatPoint, RatSimplex};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rat_strategy(max_den: i64, range: i64) -> impl Strategy<Value = Rat> {
    (1..=max_den).prop_flat_map(move |q| (-range * q..=range * q).prop_map(move |p| Rat::new(Int::from(p), Int::from(q))))
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn lambda1_is_length_on_the_line(a in rat_strategy(60, 4), b in rat_strategy(60, 4)) {
        prop_assume!(a != b);
        let s = OrientedSegment::new(RatPoint::new(vec![a.clone()]), RatPoint::new(vec![b.clone()])).unwrap();
        prop_assert_eq!(lambda1(&s), (&b - &a).abs());
    }

    #[test]
    fn chain_steps_are_regular(a in rat_strategy(40, 2), b in rat_strategy(40, 2)) {
        prop_assume!(a != b);
        let s = OrientedSegment::new(RatPoint::new(vec![a.clone()]), RatPoint::new(vec![b.clone()])).unwrap();
        let chain = hj(&s).vertices;
        prop_assert_eq!(&chain[0].0[0], &a);
        prop_assert_eq!(&chain[chain.len() - 1].0[0], &b);
        for w in chain.windows(2) {
            let (x, y) = (&w[0].0[0], &w[1].0[0]);
            let det = x.numer() * y.denom() - y.numer() * x.denom();
            prop_assert_eq!(det.abs(), Int::from(1));
            prop_assert!((x < y) == (a < b));
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn invariants_are_preserved_by_the_group(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=3);
        let g = random_map(&mut r, n);
        let k = r.gen_range(1..=n + 1);
        let pts = random_independent(&mut r, n, k, 5, 2);
        let f = affine_span(&pts).unwrap();
        prop_assert_eq!(affine_invariant(&f).unwrap(), affine_invariant(&f.image(&g).unwrap()).unwrap());
        let tri = random_independent(&mut r, n, 3, 5, 2);
        let s = OrientedSegment::new(tri[0].clone(), tri[1].clone()).unwrap();
        prop_assert_eq!(side_inv(&s).unwrap(), side_inv(&s.image(&g).unwrap()).unwrap());
        let a = OrientedAngle::from_points(&tri[0], &tri[1], &tri[2]).unwrap();
        prop_assert_eq!(angle_inv(&a).unwrap(), angle_inv(&a.image(&g).unwrap()).unwrap());
        let t = OrientedTriangle::new(tri[0].clone(), tri[1].clone(), tri[2].clone()).unwrap();
        prop_assert_eq!(tri_inv(&t).unwrap(), tri_inv(&t.image(&g).unwrap()).unwrap());
    }

    #[test]
    fn ellipse_invariant_is_preserved(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts = random_independent(&mut r, 2, 3, 2, 2);
        let e = RationalEllipse::new(ellipse_from_semidiameters(&pts[0], &pts[1], &pts[2]).unwrap()).unwrap();
        let g = random_map(&mut r, 2);
        prop_assert_eq!(ell_inv(&e).unwrap(), ell_inv(&e.image(&g).unwrap()).unwrap());
    }

    #[test]
    fn classification_ignores_scaling(coef in prop::array::uniform6(-4i64..=4), num in 1i64..=9, den in 1i64..=9, neg in any::<bool>()) {
        prop_assume!(coef[0] != 0 || coef[1] != 0 || coef[2] != 0);
        let c = Conic::from_i64(coef).unwrap();
        let l = Rat::new(Int::from(if neg { -num } else { num }), Int::from(den));
        prop_assert_eq!(classify(&c).unwrap(), classify(&c.scaled(&l).unwrap()).unwrap());
    }

    #[test]
    fn conjugate_diameters_are_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pts = random_independent(&mut r, 2, 3, 3, 2);
        let e = RationalEllipse::new(ellipse_from_semidiameters(&pts[0], &pts[1], &pts[2]).unwrap()).unwrap();
        let o = e.center.clone();
        let x = pts[1].clone();
        let xm = RatPoint::new(o.0.iter().zip(&x.0).map(|(c, p)| c * Rat::from_integer(Int::from(2)) - p).collect());
        let (y, ym) = conjugate_diameter(&e, &(x.clone(), xm.clone())).unwrap();
        prop_assert!(e.conic.contains(&y) && e.conic.contains(&ym));
        prop_assert!(e.conjugate(&x, &y));
        let (x2, xm2) = conjugate_diameter(&e, &(y, ym)).unwrap();
        let back = [x2, xm2];
        prop_assert!(back.contains(&x) && back.contains(&xm));
    }
}

fn random_polyhedron(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> Polyhedron {
    let count = r.gen_range(1..=3);
    let simplexes = (0..count)
        .map(|_| {
            let k = r.gen_range(1..=n + 1);
            RatSimplex::new(random_independent(r, n, k, 3, 1)).unwrap()
        })
        .collect();
    Polyhedron::new(simplexes).unwrap()
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn pruned_and_exhaustive_decisions_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let p = random_polyhedron(&mut r, n);
        let q = if r.gen_bool(0.5) { p.image(&random_map(&mut r, n)).unwrap() } else { random_polyhedron(&mut r, n) };
        let pruned = poly_equiv(&p, &q).unwrap();
        let full = poly_equiv_exhaustive(&p, &q, &Limits::UNBOUNDED).unwrap();
        prop_assert_eq!(pruned.is_some(), full.is_some());
        for h in pruned.iter().chain(full.iter()) {
            prop_assert!(poly_set_equal(&p.image(h).unwrap(), &q));
        }
    }
}

/// Points of the ellipse with denominator at most `max_den`, by scanning a
/// grid over the bounding box.
fn grid_points(e: &RationalEllipse, max_den: i64, half_width: i64) -> Vec<RatPoint> {
    let mut out = Vec::new();
    for q in 1..=max_den {
        for x in -half_width * q..=half_width * q {
            for y in -half_width * q..=half_width * q {
                let p = RatPoint::new(vec![
                    Rat::new(Int::from(x), Int::from(q)),
                    Rat::new(Int::from(y), Int::from(q)),
                ]);
                if p.den() == Int::from(q) && e.conic.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(|a, b| a.den().cmp(&b.den()).then_with(|| a.cmp(b)));
    out
}

#[test]
fn rational_points_match_a_grid_scan() {
    for coef in [[1, 0, 1, 0, 0, -1], [1, 1, 1, 0, 0, -1], [2, 0, 1, -2, 0, -1], [1, 0, 2, 0, 0, -1]] {
        let c = Conic::from_i64(coef).unwrap();
        let e = RationalEllipse::new(c).unwrap();
        let mut lib = rational_points(&e, 8);
        lib.sort_by(|a, b| a.den().cmp(&b.den()).then_with(|| a.cmp(b)));
        assert_eq!(lib, grid_points(&e, 8, 2), "{coef:?}");
        assert!(lib.iter().all(|p| !p.den().is_zero()));
    }
}
