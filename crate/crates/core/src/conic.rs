//! Rational plane conics: classification, rational points, centers,
//! conjugate diameters and the ellipse spanned by two semi-diameters.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::legendre::legendre_solve;
use crate::linalg::{inverse, solve};
use crate::map::UniAffMap;
use crate::num::{ceil, ceil_sqrt, floor, rat_sqrt_exact, Int, Rat};
use crate::point::RatPoint;

/// `φ(x, y) = a x² + b xy + c y² + d x + e y + f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Conic {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    pub e: Rat,
    pub f: Rat,
}

impl Conic {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat, e: Rat, f: Rat) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::InvalidInput("zero quadratic part".into()));
        }
        Ok(Conic { a, b, c, d, e, f })
    }

    pub fn from_i64(v: [i64; 6]) -> Result<Self> {
        let r = v.map(|x| Rat::from_integer(Int::from(x)));
        let [a, b, c, d, e, f] = r;
        Conic::new(a, b, c, d, e, f)
    }

    pub fn coefficients(&self) -> [&Rat; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f]
    }

    pub fn eval(&self, p: &RatPoint) -> Rat {
        let (x, y) = (&p.0[0], &p.0[1]);
        &self.a * x * x + &self.b * x * y + &self.c * y * y + &self.d * x + &self.e * y + &self.f
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        p.dim() == 2 && self.eval(p).is_zero()
    }

    /// The symmetric matrix `S` with `φ(p) = (p, 1)ᵀ S (p, 1)`.
    fn symmetric(&self) -> [[Rat; 3]; 3] {
        let h = |r: &Rat| r / Rat::from_integer(Int::from(2));
        [
            [self.a.clone(), h(&self.b), h(&self.d)],
            [h(&self.b), self.c.clone(), h(&self.e)],
            [h(&self.d), h(&self.e), self.f.clone()],
        ]
    }

    fn from_symmetric(s: &[[Rat; 3]; 3]) -> Result<Self> {
        let two = Rat::from_integer(Int::from(2));
        Conic::new(
            s[0][0].clone(),
            &s[0][1] * &two,
            s[1][1].clone(),
            &s[0][2] * &two,
            &s[1][2] * &two,
            s[2][2].clone(),
        )
    }

    /// `φ ∘ g`.
    pub fn pullback(&self, g: &UniAffMap) -> Result<Conic> {
        if g.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: g.dim() });
        }
        let h: Vec<Vec<Rat>> = g
            .homogeneous()
            .into_iter()
            .map(|r| r.into_iter().map(Rat::from_integer).collect())
            .collect();
        let s = self.symmetric();
        let mut out: [[Rat; 3]; 3] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, o) in row.iter_mut().enumerate() {
                let mut acc = Rat::zero();
                for k in 0..3 {
                    for l in 0..3 {
                        acc += &h[k][i] * &s[k][l] * &h[l][j];
                    }
                }
                *o = acc;
            }
        }
        Conic::from_symmetric(&out)
    }

    /// The conic whose zero set is `g` applied to this one's: `φ ∘ g⁻¹`.
    pub fn image(&self, g: &UniAffMap) -> Result<Conic> {
        self.pullback(&g.inverse())
    }

    pub fn scaled(&self, l: &Rat) -> Result<Conic> {
        if l.is_zero() {
            return Err(Error::InvalidInput("zero scalar".into()));
        }
        let [a, b, c, d, e, f] = self.coefficients().map(|x| x * l);
        Conic::new(a, b, c, d, e, f)
    }

    /// Scaled so that the leading nonzero coefficient is 1.
    pub fn normalized(&self) -> Conic {
        let lead = self.coefficients().into_iter().find(|x| !x.is_zero()).expect("nonzero").clone();
        self.scaled(&(Rat::one() / lead)).expect("nonzero lead")
    }

    pub fn same_up_to_scalar(&self, other: &Conic) -> bool {
        self.normalized() == other.normalized()
    }

    /// `b² - 4ac`.
    pub fn discriminant(&self) -> Rat {
        &self.b * &self.b - Rat::from_integer(Int::from(4)) * &self.a * &self.c
    }

    /// The solution of `∇φ = 0`, when unique.
    pub fn center(&self) -> Option<RatPoint> {
        let two = Rat::from_integer(Int::from(2));
        let m = vec![
            vec![&two * &self.a, self.b.clone()],
            vec![self.b.clone(), &two * &self.c],
        ];
        if self.discriminant().is_zero() {
            return None;
        }
        solve(&m, &[-self.d.clone(), -self.e.clone()]).map(RatPoint::new)
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x^2", "xy", "y^2", "x", "y", ""];
        let mut first = true;
        for (c, n) in self.coefficients().into_iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let m = c.abs();
            if !m.is_one() || n.is_empty() {
                write!(f, "{m}")?;
            }
            write!(f, "{n}")?;
            first = false;
        }
        write!(f, " = 0")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicClass {
    EllipseInE,
    EllipseNoRationalPoint,
    NotAnEllipse,
}

impl ConicClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConicClass::EllipseInE => "ellipse-in-𝓔",
            ConicClass::EllipseNoRationalPoint => "ellipse-no-rational-point",
            ConicClass::NotAnEllipse => "not-an-ellipse",
        }
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Center `O`, positive definite `Q` and `k > 0` with
/// `φ(p) ∝ (p - O)ᵀ Q (p - O) - k`.
struct Normal {
    center: RatPoint,
    q: [[Rat; 2]; 2],
    k: Rat,
}

fn normal_form(phi: &Conic) -> Option<Normal> {
    if !phi.discriminant().is_negative() {
        return None;
    }
    let phi = if phi.a.is_negative() {
        phi.scaled(&-Rat::one()).expect("nonzero")
    } else {
        phi.clone()
    };
    let center = phi.center()?;
    let k = -phi.eval(&center);
    if !k.is_positive() {
        return None;
    }
    let half = &phi.b / Rat::from_integer(Int::from(2));
    Some(Normal {
        center,
        q: [[phi.a.clone(), half.clone()], [half, phi.c.clone()]],
        k,
    })
}

fn det2(q: &[[Rat; 2]; 2]) -> Rat {
    &q[0][0] * &q[1][1] - &q[0][1] * &q[1][0]
}

/// A rational point of the ellipse, through the Legendre equation
/// `X² + (4ac - b²) V² - 4ak Z² = 0` of the completed square.
fn rational_witness(n: &Normal) -> Result<Option<RatPoint>> {
    let (a, b) = (&n.q[0][0], &(&n.q[0][1] * Rat::from_integer(Int::from(2))));
    let four = Rat::from_integer(Int::from(4));
    let q = &four * det2(&n.q);
    let r = -(&four * a * &n.k);
    let l = q.denom().lcm(r.denom());
    let lr = Rat::from_integer(l.clone());
    let Some([x, v, z]) = legendre_solve(&l, &(q * &lr).to_integer(), &(r * &lr).to_integer())? else {
        return Ok(None);
    };
    let z = Rat::from_integer(z);
    let v = Rat::from_integer(v) / &z;
    let u = (Rat::from_integer(x) / &z - b * &v) / (a * Rat::from_integer(Int::from(2)));
    Ok(Some(n.center.add_vec(&[u, v])))
}

pub fn classify(phi: &Conic) -> Result<ConicClass> {
    Ok(match normal_form(phi) {
        None => ConicClass::NotAnEllipse,
        Some(n) => match rational_witness(&n)? {
            Some(_) => ConicClass::EllipseInE,
            None => ConicClass::EllipseNoRationalPoint,
        },
    })
}

/// An ellipse with a rational point, its center and one rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalEllipse {
    pub conic: Conic,
    pub center: RatPoint,
    pub witness: RatPoint,
    q: [[Rat; 2]; 2],
    k: Rat,
}

impl RationalEllipse {
    pub fn new(conic: Conic) -> Result<Self> {
        let n = normal_form(&conic).ok_or_else(|| Error::NotInClass("not an ellipse".into()))?;
        let witness = rational_witness(&n)?
            .ok_or_else(|| Error::NotInClass("ellipse without rational points".into()))?;
        if !conic.contains(&witness) {
            return Err(Error::Internal("witness is off the ellipse".into()));
        }
        Ok(RationalEllipse {
            conic,
            center: n.center,
            witness,
            q: n.q,
            k: n.k,
        })
    }

    pub fn image(&self, g: &UniAffMap) -> Result<RationalEllipse> {
        RationalEllipse::new(self.conic.image(g)?)
    }

    /// Whether rational points have rational conjugate partners, i.e.
    /// whether `4ac - b²` is a rational square.
    pub fn has_rational_conjugates(&self) -> bool {
        rat_sqrt_exact(&det2(&self.q)).is_some()
    }

    fn q_apply(&self, u: &[Rat]) -> [Rat; 2] {
        [
            &self.q[0][0] * &u[0] + &self.q[0][1] * &u[1],
            &self.q[1][0] * &u[0] + &self.q[1][1] * &u[1],
        ]
    }

    pub fn conjugate(&self, x: &RatPoint, y: &RatPoint) -> bool {
        let qu = self.q_apply(&x.sub(&self.center));
        let v = y.sub(&self.center);
        (&qu[0] * &v[0] + &qu[1] * &v[1]).is_zero()
    }

    /// The two endpoints `O ± t·JQu` of the diameter conjugate to the one
    /// through `x`.
    pub fn conjugate_partners(&self, x: &RatPoint) -> Result<[RatPoint; 2]> {
        if !self.conic.contains(x) {
            return Err(Error::InvalidInput("point is not on the ellipse".into()));
        }
        let t = rat_sqrt_exact(&(Rat::one() / det2(&self.q))).ok_or_else(|| {
            Error::NotInClass("conjugate diameters of rational points are irrational".into())
        })?;
        let qu = self.q_apply(&x.sub(&self.center));
        let v = [-&qu[1] * &t, &qu[0] * &t];
        let plus = self.center.add_vec(&v);
        let minus = self.center.add_vec(&[-v[0].clone(), -v[1].clone()]);
        Ok([plus, minus])
    }
}

/// All rational points with denominator at most `max_den`, ordered by
/// denominator, then lexicographically.
pub fn rational_points(e: &RationalEllipse, max_den: u64) -> Vec<RatPoint> {
    let inv = inverse(&[e.q[0].to_vec(), e.q[1].to_vec()]).expect("definite");
    let o = &e.center.0;
    let r = Rat::from_integer(ceil_sqrt(&(&e.k * &inv[0][0])));
    let (lo, hi) = (&o[0] - &r, &o[0] + &r);
    let phi = &e.conic;
    let two = Rat::from_integer(Int::from(2));
    let four = Rat::from_integer(Int::from(4));
    let md = Int::from(max_den);
    let mut out = Vec::new();
    for q in 1..=max_den {
        let qi = Int::from(q);
        let qr = Rat::from_integer(qi.clone());
        let mut p = ceil(&(&lo * &qr));
        let end = floor(&(&hi * &qr));
        while p <= end {
            if p.gcd(&qi).is_one() {
                let x = Rat::new(p.clone(), qi.clone());
                let bb = &phi.b * &x + &phi.e;
                let cc = &phi.a * &x * &x + &phi.d * &x + &phi.f;
                let disc = &bb * &bb - &four * &phi.c * &cc;
                if !disc.is_negative() {
                    if let Some(s) = rat_sqrt_exact(&disc) {
                        for y in [(-&bb - &s) / (&two * &phi.c), (-&bb + &s) / (&two * &phi.c)] {
                            let pt = RatPoint::new(vec![x.clone(), y]);
                            if pt.den() <= md {
                                out.push(pt);
                            }
                        }
                    }
                }
            }
            p += 1;
        }
    }
    out.sort_by(|a, b| a.cmp_den_lex(b));
    out.dedup();
    out
}

/// The diameter conjugate to the diameter `c`, with `C** = C` checked.
pub fn conjugate_diameter(e: &RationalEllipse, c: &(RatPoint, RatPoint)) -> Result<(RatPoint, RatPoint)> {
    let (x, y) = c;
    if x == y || !e.conic.contains(x) || !e.conic.contains(y) {
        return Err(Error::InvalidInput("not a chord of the ellipse".into()));
    }
    let mid: Vec<Rat> = x.0.iter().zip(&y.0).map(|(a, b)| (a + b) / Rat::from_integer(Int::from(2))).collect();
    if mid != e.center.0 {
        return Err(Error::InvalidInput("chord does not pass through the center".into()));
    }
    let [p, m] = e.conjugate_partners(x)?;
    let [pp, mm] = e.conjugate_partners(&p)?;
    if !((pp == *x && mm == *y) || (pp == *y && mm == *x)) {
        return Err(Error::Internal("conjugation is not involutive".into()));
    }
    Ok((p, m))
}

/// The unique ellipse with `conv(O, x)` and `conv(O, y)` as conjugate
/// semi-diameters: `(p - O)ᵀ (MMᵀ)⁻¹ (p - O) = 1` with `M = [x - O | y - O]`.
pub fn ellipse_from_semidiameters(o: &RatPoint, x: &RatPoint, y: &RatPoint) -> Result<Conic> {
    o.check_dim(2)?;
    x.check_dim(2)?;
    y.check_dim(2)?;
    let (u, v) = (x.sub(o), y.sub(o));
    let mmt = vec![
        vec![&u[0] * &u[0] + &v[0] * &v[0], &u[0] * &u[1] + &v[0] * &v[1]],
        vec![&u[1] * &u[0] + &v[1] * &v[0], &u[1] * &u[1] + &v[1] * &v[1]],
    ];
    let q = inverse(&mmt).ok_or_else(|| Error::Degenerate("semi-diameters are collinear".into()))?;
    let two = Rat::from_integer(Int::from(2));
    let qo = [
        &q[0][0] * &o.0[0] + &q[0][1] * &o.0[1],
        &q[1][0] * &o.0[0] + &q[1][1] * &o.0[1],
    ];
    let conic = Conic::new(
        q[0][0].clone(),
        &two * &q[0][1],
        q[1][1].clone(),
        -(&two * &qo[0]),
        -(&two * &qo[1]),
        &o.0[0] * &qo[0] + &o.0[1] * &qo[1] - Rat::one(),
    )?;
    let e = RationalEllipse::new(conic.clone())?;
    if !e.conic.contains(x) || !e.conic.contains(y) || !e.conjugate(x, y) {
        return Err(Error::Internal("semi-diameters are not conjugate".into()));
    }
    Ok(conic)
}
