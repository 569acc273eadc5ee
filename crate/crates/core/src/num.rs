//! Arbitrary-precision integers and rationals plus the small helpers the
//! rest of the crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: Int) -> Rat {
    Rat::from_integer(v)
}

pub fn lcm(a: &Int, b: &Int) -> Int {
    a.lcm(b)
}

/// Non-negative gcd of a slice; zero for an all-zero (or empty) slice.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(vals: I) -> Int {
    vals.into_iter().fold(Int::zero(), |g, v| g.gcd(v))
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(v: &Int) -> Int {
    assert!(!v.is_negative(), "isqrt of a negative integer");
    v.sqrt()
}

/// Exact square root of an integer, if it is a perfect square.
pub fn int_sqrt_exact(v: &Int) -> Option<Int> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rat_sqrt_exact(v: &Rat) -> Option<Rat> {
    let n = int_sqrt_exact(v.numer())?;
    let d = int_sqrt_exact(v.denom())?;
    Some(Rat::new(n, d))
}

/// Smallest integer `m >= 0` with `m*m >= v` for a non-negative rational.
pub fn ceil_sqrt(v: &Rat) -> Int {
    assert!(!v.is_negative());
    let c = ceil(v);
    let mut r = isqrt(&c);
    while Rat::from_integer(&r * &r) < *v {
        r += 1;
    }
    r
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Formats a rational as `"p/q"`, or `"p"` when it is an integer.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer literal.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_int(s: &str) -> Result<Int> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}")))
}

/// Caps on enumeration-based searches. The default is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_den: u64,
}

impl Limits {
    pub const UNBOUNDED: Limits = Limits { max_den: u64::MAX };

    pub fn with_max_den(max_den: u64) -> Self {
        Limits { max_den }
    }

    pub fn check_den(&self, den: &Int, what: &str) -> Result<()> {
        if *den > Int::from(self.max_den) {
            Err(Error::ResourceExceeded(format!(
                "{what} needs denominators up to {den}, above the cap {}",
                self.max_den
            )))
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::UNBOUNDED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-5").unwrap(), rat(-5, 1));
        assert_eq!(format_rat(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rat(&rat(4, 2)), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(rat_sqrt_exact(&rat(9, 25)), Some(rat(3, 5)));
        assert_eq!(rat_sqrt_exact(&rat(2, 1)), None);
        assert_eq!(ceil_sqrt(&rat(2, 1)), int(2));
        assert_eq!(ceil_sqrt(&rat(9, 4)), int(2));
        assert_eq!(ceil_sqrt(&rat(0, 1)), int(0));
    }

    #[test]
    fn extended_gcd_is_normalised() {
        let (g, s, t) = ext_gcd(&int(-4), &int(6));
        assert_eq!(g, int(2));
        assert_eq!(s * int(-4) + t * int(6), int(2));
    }
}
