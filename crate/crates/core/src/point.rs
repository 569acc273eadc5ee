//! Rational points and their homogeneous correspondents.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::num::{format_rat, gcd_all, Int, Rat};

/// A point of `Q^n` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint(pub Vec<Rat>);

impl RatPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        RatPoint(coords)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatPoint(v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        RatPoint(v.iter().map(|&(p, q)| Rat::new(Int::from(p), Int::from(q))).collect())
    }

    pub fn origin(n: usize) -> Self {
        RatPoint(vec![Rat::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    /// Least common denominator of the coordinates.
    pub fn den(&self) -> Int {
        self.0.iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
    }

    /// Homogeneous correspondent `(den(x) * x, den(x))`.
    pub fn lift(&self) -> HomVec {
        let d = self.den();
        let dr = Rat::from_integer(d.clone());
        let mut v: Vec<Int> = self.0.iter().map(|x| (x * &dr).to_integer()).collect();
        v.push(d);
        HomVec(v)
    }

    pub fn sub(&self, other: &RatPoint) -> Vec<Rat> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn add_vec(&self, v: &[Rat]) -> RatPoint {
        RatPoint(self.0.iter().zip(v).map(|(a, b)| a + b).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        check_dim(n, self.dim())
    }

    /// Orders by denominator first, then lexicographically by coordinates.
    pub fn cmp_den_lex(&self, other: &RatPoint) -> Ordering {
        self.den().cmp(&other.den()).then_with(|| self.cmp(other))
    }
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(x))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A primitive integer vector of `Z^{n+1}`; when it represents an affine
/// point its last entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HomVec(pub Vec<Int>);

impl HomVec {
    /// Validates primitivity and a positive last entry.
    pub fn new(entries: Vec<Int>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("empty homogeneous vector".into()));
        }
        if !gcd_all(&entries).is_one() {
            return Err(Error::NotPrimitive);
        }
        if !entries.last().unwrap().is_positive() {
            return Err(Error::NonPositiveWeight);
        }
        Ok(HomVec(entries))
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn weight(&self) -> &Int {
        self.0.last().expect("nonempty")
    }

    /// The affine correspondent `x / x_{n+1}`.
    pub fn unlift(&self) -> RatPoint {
        let d = self.weight();
        RatPoint(
            self.0[..self.0.len() - 1]
                .iter()
                .map(|x| Rat::new(x.clone(), d.clone()))
                .collect(),
        )
    }
}

pub fn den(x: &RatPoint) -> Int {
    x.den()
}

pub fn lift(x: &RatPoint) -> HomVec {
    x.lift()
}

/// Affine correspondent of a primitive vector with positive last entry.
pub fn unlift(q: &[Int]) -> Result<RatPoint> {
    Ok(HomVec::new(q.to_vec())?.unlift())
}

/// Affine correspondent of any integer vector with positive last entry
/// (primitivity is not required).
pub fn unlift_any(q: &[Int]) -> Result<RatPoint> {
    let w = q.last().ok_or_else(|| Error::InvalidInput("empty vector".into()))?;
    if !w.is_positive() {
        return Err(Error::NonPositiveWeight);
    }
    Ok(RatPoint(
        q[..q.len() - 1].iter().map(|x| Rat::new(x.clone(), w.clone())).collect(),
    ))
}

/// Lifts of a list of points, as integer rows.
pub fn lift_rows(points: &[RatPoint]) -> Vec<Vec<Int>> {
    points.iter().map(|p| p.lift().0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    #[test]
    fn denominators_and_lifts() {
        let x = RatPoint::from_fracs(&[(1, 2), (1, 3)]);
        assert_eq!(x.den(), int(6));
        assert_eq!(x.lift().0, vec![int(3), int(2), int(6)]);
        assert_eq!(x.lift().unlift(), x);
        assert_eq!(RatPoint::from_ints(&[0, 0]).den(), int(1));
        assert_eq!(RatPoint::from_fracs(&[(5, 8)]).lift().0, vec![int(5), int(8)]);
        assert_eq!(RatPoint::from_fracs(&[(3, 5), (0, 1)]).den(), int(5));
    }

    #[test]
    fn unlift_rejects_bad_vectors() {
        assert_eq!(unlift(&[int(2), int(4)]), Err(Error::NotPrimitive));
        assert_eq!(unlift(&[int(1), int(-1)]), Err(Error::NonPositiveWeight));
        assert_eq!(unlift(&[int(0), int(1)]).unwrap(), RatPoint::from_ints(&[0]));
        assert_eq!(
            unlift(&[int(5), int(8)]).unwrap(),
            RatPoint::from_fracs(&[(5, 8)])
        );
    }
}
