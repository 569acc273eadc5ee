//! Primitive integer solutions of `p x² + q y² + r z² = 0`.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::{int_sqrt_exact, isqrt, Int, Rat};

/// Coefficients above this bound are refused: reduction factors by trial
/// division.
const MAX_COEFFICIENT: u64 = 1 << 24;
const MAX_SEARCH: i128 = 100_000_000;

/// `(s, c)` with `v = s² c` and `c` squarefree.
fn square_split(v: &Int) -> (Int, Int) {
    let mut n = v.abs().to_u128().expect("coefficient bound checked");
    let mut s = 1u128;
    let mut c = 1u128;
    let mut p = 2u128;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            c *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    c *= n;
    let c = Int::from(c);
    (Int::from(s), if v.is_negative() { -c } else { c })
}

/// Reduced coefficients together with `x_i = factor_i · x_i'`.
struct Reduced {
    coef: [Int; 3],
    factor: [Rat; 3],
}

fn reduce(c: [Int; 3]) -> Reduced {
    let mut r = Reduced {
        coef: c,
        factor: [Rat::one(), Rat::one(), Rat::one()],
    };
    loop {
        for i in 0..3 {
            let (s, sq) = square_split(&r.coef[i]);
            r.coef[i] = sq;
            r.factor[i] = &r.factor[i] / Rat::from_integer(s);
        }
        let g = r.coef[0].gcd(&r.coef[1]).gcd(&r.coef[2]);
        if !g.is_one() {
            for c in r.coef.iter_mut() {
                *c = &*c / &g;
            }
            continue;
        }
        let mut changed = false;
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let g = r.coef[j].gcd(&r.coef[k]);
            if !g.is_one() {
                r.coef[i] = &r.coef[i] * &g;
                r.coef[j] = &r.coef[j] / &g;
                r.coef[k] = &r.coef[k] / &g;
                r.factor[i] = &r.factor[i] * Rat::from_integer(g);
                changed = true;
                break;
            }
        }
        if !changed {
            return r;
        }
    }
}

/// Symmetric range `0, 1, -1, 2, -2, …` up to `bound`.
fn signed_range(bound: i64) -> impl Iterator<Item = i64> {
    (0..=bound).flat_map(|v| if v == 0 { vec![0] } else { vec![v, -v] })
}

/// Exhaustive search over `|y| ≤ √|ac|, |z| ≤ √|ab|` on the reduced form,
/// solving for `x`; absence there certifies that no solution exists.
fn search(c: &[Int; 3]) -> Result<Option<[Int; 3]>> {
    let bound = |i: usize, j: usize| isqrt(&(&c[i] * &c[j]).abs()).to_i64().unwrap_or(i64::MAX);
    let (yb, zb) = (bound(0, 2), bound(0, 1));
    if (yb as i128 + 1) * (zb as i128 + 1) > MAX_SEARCH {
        return Err(Error::ResourceExceeded("Legendre search box too large".into()));
    }
    for z in 0..=zb {
        for y in signed_range(yb) {
            if y == 0 && z == 0 {
                continue;
            }
            let rest = -(&c[1] * Int::from(y * y) + &c[2] * Int::from(z * z));
            if !rest.is_multiple_of(&c[0]) {
                continue;
            }
            let x2 = rest / &c[0];
            if x2.is_negative() {
                continue;
            }
            if let Some(x) = int_sqrt_exact(&x2) {
                return Ok(Some([x, Int::from(y), Int::from(z)]));
            }
        }
    }
    Ok(None)
}

fn primitive3(v: [Rat; 3]) -> [Int; 3] {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(Int::zero(), |g, x| g.gcd(x));
    [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g]
}

/// A primitive solution of `p x² + q y² + r z² = 0`, if any exists.
pub fn legendre_solve(p: &Int, q: &Int, r: &Int) -> Result<Option<[Int; 3]>> {
    let c = [p.clone(), q.clone(), r.clone()];
    if c.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidInput("Legendre coefficients must be nonzero".into()));
    }
    if c.iter().any(|x| x.abs() > Int::from(MAX_COEFFICIENT)) {
        return Err(Error::ResourceExceeded("Legendre coefficient too large".into()));
    }
    if c.iter().all(|x| x.is_positive()) || c.iter().all(|x| x.is_negative()) {
        return Ok(None);
    }
    let red = reduce(c.clone());
    let Some(sol) = search(&red.coef)? else {
        return Ok(None);
    };
    let back = [0, 1, 2].map(|i| Rat::from_integer(sol[i].clone()) * &red.factor[i]);
    let out = primitive3(back);
    let check: Int = (0..3).map(|i| &c[i] * &out[i] * &out[i]).sum();
    if !check.is_zero() {
        return Err(Error::Internal("Legendre solution does not satisfy the equation".into()));
    }
    Ok(Some(out))
}
