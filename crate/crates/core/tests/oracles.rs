mod common;

use afflat_core::affine::{affine_invariant, affine_span};
use afflat_core::num::Int;
use afflat_core::RatPoint;

use common::*;

#[test]
fn line_invariants_match_exhaustive_search() {
    for (a, b) in [(1, 1), (1, 2), (2, 1), (1, -1), (2, -1), (2, 3), (3, -2)] {
        for q in 1..=7i64 {
            for p in 0..q {
                let rhs = |x: i64| (p - a * q * x, q * b);
                let (n0, d0) = rhs(0);
                let (n1, d1) = rhs(1);
                let f = affine_span(&[
                    RatPoint::from_fracs(&[(0, 1), (n0, d0)]),
                    RatPoint::from_fracs(&[(1, 1), (n1, d1)]),
                ])
                .unwrap();
                let inv = affine_invariant(&f).unwrap();
                let (d, c) = line_oracle(&f, 4);
                assert_eq!((inv.d.clone(), inv.c.clone()), (d, c), "{a}x + {b}y = {p}/{q}");
                assert!(inv.c <= std::cmp::max(Int::from(1), &inv.d / 2));
            }
        }
    }
}

#[test]
fn small_extension_questions_match_enumeration() {
    let mut r = rng(11);
    use rand::Rng;
    for _ in 0..2000 {
        let m = r.gen_range(2..=3);
        let k = r.gen_range(1..=m);
        let vs: Vec<Vec<i64>> = (0..k).map(|_| (0..m).map(|_| r.gen_range(-6..=6)).collect()).collect();
        let big: Vec<Vec<Int>> = vs.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect()).collect();
        assert_eq!(afflat_core::extends_to_basis(&big).ok(), extends_oracle(&vs), "{vs:?}");
    }
}
