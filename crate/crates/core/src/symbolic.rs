//! Rational functions of `u` over Q and the quadratic extension by
//! `s = √(1+u)`, with exact derivatives.  Enough field arithmetic to carry
//! out the elimination of the radial system by hand-style substitution.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{format_q, q, Q};

/// Polynomial in `u`, coefficients low→high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `u`.
    pub fn u() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, u: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * u + c)
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + crate::exact::to_f64(c))
    }

    /// Euclidean division.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.lead().recip();
        let mut rem = self.0.clone();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, dc) in d.0.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = rhs.0.get(i).cloned().unwrap_or_else(Q::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(&q(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_q(c),
                1 => format!("{}*u", format_q(c)),
                _ => format!("{}*u^{i}", format_q(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Reduced rational function with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.lead();
        RatFunc {
            num: n.scale(&lead.recip()),
            den: d.scale(&lead.recip()),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::constant(Q::one()),
        }
    }

    pub fn constant(c: Q) -> Self {
        RatFunc::new(Poly::constant(c), Poly::constant(Q::one()))
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc::new(p, Poly::constant(Q::one()))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> RatFunc {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(top, &self.den * &self.den)
    }

    pub fn eval(&self, u: &Q) -> Q {
        self.num.eval(u) / self.den.eval(u)
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.num.eval_f64(u) / self.den.eval_f64(u)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "rational function division by zero");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.scale(&q(-1)),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `rational + irrational·√(1+u)` with both parts in Q(u).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtExt {
    pub rational: RatFunc,
    pub irrational: RatFunc,
}

impl SqrtExt {
    pub fn new(rational: RatFunc, irrational: RatFunc) -> Self {
        SqrtExt { rational, irrational }
    }

    pub fn zero() -> Self {
        SqrtExt::new(RatFunc::zero(), RatFunc::zero())
    }

    pub fn from_rat(r: RatFunc) -> Self {
        SqrtExt::new(r, RatFunc::zero())
    }

    /// `c₀ + c₁·u + c₂·√(1+u)`, the shape of every operator entry.
    pub fn affine(constant: &Q, linear: &Q, sqrt: &Q) -> Self {
        SqrtExt::new(
            RatFunc::poly(Poly::new(vec![constant.clone(), linear.clone()])),
            RatFunc::constant(sqrt.clone()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irrational.is_zero()
    }

    fn one_plus_u() -> RatFunc {
        RatFunc::poly(Poly::from_ints(&[1, 1]))
    }

    /// Multiplicative inverse via the conjugate `p − q s`.
    pub fn recip(&self) -> SqrtExt {
        let norm = &(&self.rational * &self.rational) - &(&(&self.irrational * &self.irrational) * &Self::one_plus_u());
        SqrtExt::new(&self.rational / &norm, &(-&self.irrational) / &norm)
    }

    /// `d/du`, using `ds/du = s / (2(1+u))`.
    pub fn derivative(&self) -> SqrtExt {
        let half_over = RatFunc::new(Poly::constant(Q::one()), Poly::from_ints(&[2, 2]));
        SqrtExt::new(
            self.rational.derivative(),
            &self.irrational.derivative() + &(&self.irrational * &half_over),
        )
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.rational.eval_f64(u) + self.irrational.eval_f64(u) * (1.0 + u).sqrt()
    }
}

impl Add for &SqrtExt {
    type Output = SqrtExt;
    fn add(self, rhs: &SqrtExt) -> SqrtExt {
        SqrtExt::new(&self.rational + &rhs.rational, &self.irrational + &rhs.irrational)
    }
}

impl Sub for &SqrtExt {
    type Output = SqrtExt;
    fn sub(self, rhs: &SqrtExt) -> SqrtExt {
        SqrtExt::new(&self.rational - &rhs.rational, &self.irrational - &rhs.irrational)
    }
}

impl Mul for &SqrtExt {
    type Output = SqrtExt;
    fn mul(self, rhs: &SqrtExt) -> SqrtExt {
        let rr = &self.rational * &rhs.rational;
        let ii = &(&self.irrational * &rhs.irrational) * &SqrtExt::one_plus_u();
        let ri = &(&self.rational * &rhs.irrational) + &(&self.irrational * &rhs.rational);
        SqrtExt::new(&rr + &ii, ri)
    }
}

impl Div for &SqrtExt {
    type Output = SqrtExt;
    fn div(self, rhs: &SqrtExt) -> SqrtExt {
        self * &rhs.recip()
    }
}

impl Neg for &SqrtExt {
    type Output = SqrtExt;
    fn neg(self) -> SqrtExt {
        SqrtExt::new(-&self.rational, -&self.irrational)
    }
}

impl fmt::Display for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.irrational.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "[{}]*sqrt(1+u)", self.irrational),
            (false, false) => write!(f, "{} + [{}]*sqrt(1+u)", self.rational, self.irrational),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    #[test]
    fn poly_gcd_and_division() {
        // (u+1)(u+2) and (u+1)(u-3)
        let a = Poly::from_ints(&[2, 3, 1]);
        let b = Poly::from_ints(&[-3, -2, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[1, 1]));
        let (qt, r) = a.div_rem(&Poly::from_ints(&[1, 1]));
        assert_eq!(qt, Poly::from_ints(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn ratfunc_reduces() {
        let r = RatFunc::new(Poly::from_ints(&[2, 2]), Poly::from_ints(&[0, 4, 4]));
        assert_eq!(r.numer(), &Poly::constant(qf(1, 2)));
        assert_eq!(r.denom(), &Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn sqrt_ext_field_ops() {
        let s = SqrtExt::affine(&q(0), &q(0), &q(1));
        let sq = &s * &s;
        assert!(sq.is_rational());
        assert_eq!(sq.rational, RatFunc::poly(Poly::from_ints(&[1, 1])));
        let x = SqrtExt::affine(&q(3), &q(1), &q(-2));
        let one = &x * &x.recip();
        assert_eq!(one, SqrtExt::from_rat(RatFunc::constant(q(1))));
    }

    #[test]
    fn sqrt_derivative_matches_numeric() {
        let x = &SqrtExt::affine(&q(1), &q(2), &q(3)) / &SqrtExt::affine(&q(2), &q(-1), &q(1));
        let d = x.derivative();
        let u = 2.0;
        let h = 1e-6;
        let fd = (x.eval_f64(u + h) - x.eval_f64(u - h)) / (2.0 * h);
        assert!((fd - d.eval_f64(u)).abs() < 1e-6);
    }
}
