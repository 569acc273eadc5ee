#![allow(dead_code)]

use afflat_core::affine::AffSpace;
use afflat_core::num::{int, Int, Rat};
use afflat_core::{RatPoint, UniAffMap};
use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A unimodular map built from random elementary operations, a signed
/// permutation and a translation in `[-5, 5]^n`.
pub fn random_map(rng: &mut ChaCha8Rng, n: usize) -> UniAffMap {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n > 1 {
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let k = rng.gen_range(-2..=2);
            for c in 0..n {
                m[i][c] += k * m[j][c];
            }
        }
        for _ in 0..n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            m.swap(i, j);
        }
    }
    for row in m.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let t: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    UniAffMap::from_i64(&rows, &t).expect("unimodular by construction")
}

pub fn random_rat(rng: &mut ChaCha8Rng, max_den: i64, range: i64) -> Rat {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(-range * q..=range * q);
    Rat::new(Int::from(p), Int::from(q))
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, max_den: i64, range: i64) -> RatPoint {
    RatPoint::new((0..n).map(|_| random_rat(rng, max_den, range)).collect())
}

/// `k` random points whose affine hull has dimension `k - 1`.
pub fn random_independent(rng: &mut ChaCha8Rng, n: usize, k: usize, max_den: i64, range: i64) -> Vec<RatPoint> {
    loop {
        let pts: Vec<RatPoint> = (0..k).map(|_| random_point(rng, n, max_den, range)).collect();
        if afflat_core::simplex::affinely_independent(&pts) {
            return pts;
        }
    }
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!(),
    }
}

/// Whether the half-open parallelepiped `{Σ t_i v_i : 0 ≤ t_i < 1}` contains
/// an integer point other than 0, found by scanning its bounding box and
/// solving for `t` on the coordinates of a nonsingular minor.
/// Returns `None` when the vectors are linearly dependent.
pub fn parallelepiped_has_point(vs: &[Vec<i64>]) -> Option<bool> {
    let k = vs.len();
    let m = vs[0].len();
    let minor = (0..m)
        .combinations(k)
        .find(|rs| det_i64(&rs.iter().map(|&r| vs.iter().map(|v| v[r]).collect()).collect::<Vec<_>>()) != 0)?;
    let sub: Vec<Vec<i64>> = minor.iter().map(|&r| vs.iter().map(|v| v[r]).collect()).collect();
    let det = det_i64(&sub);
    let lo: Vec<i64> = (0..m).map(|i| vs.iter().map(|v| v[i].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..m).map(|i| vs.iter().map(|v| v[i].max(0)).sum()).collect();
    let mut x = lo.clone();
    loop {
        if x.iter().any(|&c| c != 0) {
            let mut inside = true;
            let mut t = Vec::with_capacity(k);
            for j in 0..k {
                let mut s = sub.clone();
                for (a, &r) in minor.iter().enumerate() {
                    s[a][j] = x[r];
                }
                let num = det_i64(&s);
                // 0 ≤ num/det < 1
                let (n2, d2) = if det < 0 { (-num, -det) } else { (num, det) };
                if n2 < 0 || n2 >= d2 {
                    inside = false;
                    break;
                }
                t.push((n2, d2));
            }
            if inside {
                let on_span = (0..m).all(|r| {
                    let s: i128 = t.iter().zip(vs).map(|((n, _), v)| i128::from(*n) * i128::from(v[r])).sum();
                    s == i128::from(x[r]) * i128::from(t[0].1)
                });
                if on_span {
                    return Some(true);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return Some(false);
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// Oracle for `extends_to_basis`: a determinant of `±1` for a square system,
/// otherwise independence and an empty parallelepiped.
pub fn extends_oracle(vs: &[Vec<i64>]) -> Option<bool> {
    if vs.len() == vs[0].len() && vs.len() <= 3 {
        let det = det_i64(vs);
        return (det != 0).then_some(det.abs() == 1);
    }
    parallelepiped_has_point(vs).map(|has| !has)
}

/// All reduced fractions `p/q` with `q ≤ n` in `[lo, hi]`, sorted.
pub fn farey_in(lo: &Rat, hi: &Rat, n: i64) -> Vec<Rat> {
    let mut out = Vec::new();
    for q in 1..=n {
        let qi = Int::from(q);
        let from = (lo * Rat::from_integer(qi.clone())).ceil().to_integer().to_i64().unwrap();
        let to = (hi * Rat::from_integer(qi.clone())).floor().to_integer().to_i64().unwrap();
        for p in from..=to {
            if p.gcd(&q) == 1 {
                out.push(Rat::new(Int::from(p), qi.clone()));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn den1(x: &Rat) -> Int {
    x.denom().clone()
}

/// Oracle for one step of the chain in `R¹`: among points `y ∈ (x, b]` with
/// `|num(x) den(y) - num(y) den(x)| = 1`, the one of least denominator.
pub fn hj_step_oracle(x: &Rat, b: &Rat, n: i64) -> Rat {
    let forward = b > x;
    let (lo, hi) = if forward { (x.clone(), b.clone()) } else { (b.clone(), x.clone()) };
    farey_in(&lo, &hi, n)
        .into_iter()
        .filter(|y| y != x)
        .filter(|y| (x.numer() * den1(y) - y.numer() * den1(x)).abs() == int(1))
        .min_by(|a, c| den1(a).cmp(&den1(c)).then_with(|| if forward { c.cmp(a) } else { a.cmp(c) }))
        .expect("the Farey neighbour of x towards b is a candidate")
}

pub fn hj_oracle(a: &Rat, b: &Rat) -> Vec<Rat> {
    let n = den1(a).max(den1(b)).to_i64().unwrap();
    let mut out = vec![a.clone()];
    while out.last().unwrap() != b {
        let next = hj_step_oracle(out.last().unwrap(), b, n);
        out.push(next);
    }
    out
}

/// Brute-force search for a nontrivial solution of `p x² + q y² + r z² = 0`
/// with `|x|, |y|, |z| ≤ bound`.
pub fn legendre_oracle(p: i64, q: i64, r: i64, bound: i64) -> bool {
    if (p > 0 && q > 0 && r > 0) || (p < 0 && q < 0 && r < 0) {
        return false;
    }
    for z in 0..=bound {
        for y in 0..=bound {
            if y == 0 && z == 0 {
                continue;
            }
            let rest = -(q * y * y + r * z * z);
            if rest % p != 0 {
                continue;
            }
            let x2 = rest / p;
            if x2 < 0 {
                continue;
            }
            let x = (x2 as f64).sqrt().round() as i64;
            if (x - 1..=x + 1).any(|c| c >= 0 && c * c == x2 && c <= bound) {
                return true;
            }
        }
    }
    false
}

pub fn grid(den: i64, range: i64) -> Vec<Rat> {
    (-range * den..=range * den).map(|p| Rat::new(Int::from(p), Int::from(den))).collect()
}

pub fn lift_i64(p: &RatPoint) -> Vec<i64> {
    p.lift().0.iter().map(|x| x.to_i64().unwrap()).collect()
}

/// `d_F` and `c_F` of a line in the plane by exhaustive search over points
/// of small denominator.
pub fn line_oracle(f: &AffSpace, range: i64) -> (Int, Int) {
    let pts_of_den = |s: i64| -> Vec<RatPoint> {
        let g = grid(s, range);
        let mut out = Vec::new();
        for x in &g {
            for y in &g {
                let p = RatPoint::new(vec![x.clone(), y.clone()]);
                if p.den() == Int::from(s) {
                    out.push(p);
                }
            }
        }
        out
    };
    let d = (1..).find(|&s| pts_of_den(s).iter().any(|p| f.contains(p))).unwrap();
    let on_f: Vec<RatPoint> = pts_of_den(d).into_iter().filter(|p| f.contains(p)).collect();
    let dist = |a: &RatPoint, b: &RatPoint| a.sub(b).iter().map(|x| x.abs()).sum::<Rat>();
    let frame = on_f
        .iter()
        .flat_map(|a| {
            let mut near: Vec<&RatPoint> = on_f.iter().collect();
            near.sort_by_key(|b| dist(a, b));
            near.into_iter().map(move |b| (a, b))
        })
        .find(|(a, b)| a != b && extends_oracle(&[lift_i64(a), lift_i64(b)]) == Some(true))
        .expect("regular frame in the box");
    let c = (1..=d)
        .find(|&j| {
            pts_of_den(j)
                .iter()
                .any(|y| extends_oracle(&[lift_i64(frame.0), lift_i64(frame.1), lift_i64(y)]) == Some(true))
        })
        .unwrap();
    (Int::from(d), Int::from(c))
}
