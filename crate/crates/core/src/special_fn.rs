//! Gauss hypergeometric function on the real axis below 1, the closed-form
//! radial solution and its value at infinity.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, format_q, q, to_f64, Q};
use crate::invariants::{sigma1_pairing_spectrum, BlockLabel};
use crate::radial::{integrate_with, IntegrationOptions};

/// Series term cap.
pub const MAX_TERMS: usize = 100_000;
const STOP_TOL: f64 = 1e-16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeomParams {
    pub a: Q,
    pub b: Q,
    pub c: Q,
}

impl HypergeomParams {
    pub fn new(a: Q, b: Q, c: Q) -> Self {
        HypergeomParams { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new(q(a), q(b), q(c))
    }

    /// `((K+L)/2 − 1, (K+L)/2 + 1; L + 2)`.
    pub fn for_block(label: BlockLabel) -> Self {
        let h = Q::new((label.k + label.l).into(), 2.into());
        Self::new(&h - q(1), &h + q(1), q(label.l + 2))
    }

    /// Parameters of the `n`-th derivative: `(a+n, b+n; c+n)`.
    pub fn shifted(&self, n: i64) -> Self {
        Self::new(&self.a + q(n), &self.b + q(n), &self.c + q(n))
    }

    fn check(&self) -> Result<()> {
        if self.c.is_integer() && !self.c.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "c = {} is a nonpositive integer",
                format_q(&self.c)
            )));
        }
        Ok(())
    }

    fn as_f64(&self) -> (f64, f64, f64) {
        (to_f64(&self.a), to_f64(&self.b), to_f64(&self.c))
    }
}

/// `x` as a double-double, accurate to about 32 digits.
fn dd_of(x: &Q) -> TwoFloat {
    let n = TwoFloat::from(x.numer().to_f64().unwrap_or(f64::NAN));
    n / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// The defining power series, with no transformation, summed in
/// double-double arithmetic so that the cancellation of an alternating
/// series at negative `z` does not eat the double-precision result.
/// Needs `|z| < 1`; convergence is slow as `|z| → 1`.
pub fn direct_series(p: &HypergeomParams, z: f64) -> Result<f64> {
    p.check()?;
    if !(z.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!("series needs |z| < 1, got {z}")));
    }
    let (a, b) = (dd_of(&p.a), dd_of(&p.b));
    // c + n = (pc + n·qc)/qc with an exact integer numerator: dividing a
    // double-double by an f64 is accurate, dividing by a double-double is not.
    let (pc, qc) = (
        p.c.numer().to_f64().unwrap_or(f64::NAN),
        p.c.denom().to_f64().unwrap_or(f64::NAN),
    );
    let zz = TwoFloat::from(z);
    let one = TwoFloat::from(1.0);
    let mut sum = one;
    let mut term = one;
    // Past this index every factor (a+n), (b+n), (c+n) is positive, so the
    // term ratio is monotone and bounds the tail geometrically.
    let (af, bf, cf) = p.as_f64();
    let settle = af.abs().max(bf.abs()).max(cf.abs()).ceil() as usize + 1;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) * zz * qc / (pc + nf * qc) / (nf + 1.0);
        term *= ratio;
        if term.hi() == 0.0 {
            return Ok(sum.into());
        }
        sum += term;
        if n >= settle {
            let rho = ratio.hi().abs().max(z.abs());
            if rho < 1.0 && term.hi().abs() / (1.0 - rho) <= STOP_TOL * sum.hi().abs() {
                return Ok(sum.into());
            }
        }
    }
    Err(Error::NonConvergence { terms: MAX_TERMS })
}

/// `F(a, b; c; z)` for real `z < 1`.
///
/// Negative arguments go through the Pfaff transformation
/// `(1−z)^{−a} F(a, c−b; c; z/(z−1))`, which lands in `[0, 1)`.  Arguments
/// within 1/100 of 1, before or after that step, use the expansion around
/// `z = 1`.
pub fn gauss_2f1(p: &HypergeomParams, z: f64) -> Result<f64> {
    p.check()?;
    if !(z < 1.0) || !z.is_finite() {
        return Err(Error::InvalidParameter(format!("z = {z} must be finite and < 1")));
    }
    if z >= 0.0 {
        return near_zero_or_one(p, z, 1.0 - z);
    }
    let pf = HypergeomParams::new(p.a.clone(), &p.c - &p.b, p.c.clone());
    // 1 − w is formed directly to keep its digits when |z| is huge.
    let (w, one_minus_w) = (z / (z - 1.0), 1.0 / (1.0 - z));
    let f = near_zero_or_one(&pf, w, one_minus_w)?;
    Ok((1.0 - z).powf(-to_f64(&p.a)) * f)
}

fn near_zero_or_one(p: &HypergeomParams, z: f64, one_minus_z: f64) -> Result<f64> {
    let terminates = |x: &Q| x.is_integer() && !x.is_positive();
    if one_minus_z >= 0.01 || terminates(&p.a) || terminates(&p.b) {
        direct_series(p, z)
    } else {
        around_one(p, one_minus_z)
    }
}

/// `F(a, b; c; 1−y)` for small `y > 0` from the connection formulas at
/// `z = 1`, including the logarithmic case `c − a − b ∈ ℤ`.
fn around_one(p: &HypergeomParams, y: f64) -> Result<f64> {
    let s = &p.c - &p.a - &p.b;
    if s.is_integer() && s.is_negative() {
        // Euler: F(a,b;c;z) = (1−z)^{c−a−b} F(c−a, c−b; c; z).
        let e = HypergeomParams::new(&p.c - &p.a, &p.c - &p.b, p.c.clone());
        return Ok(y.powf(to_f64(&s)) * around_one(&e, y)?);
    }
    let (a, b, c) = p.as_f64();
    if !s.is_integer() {
        let sf = to_f64(&s);
        let one_minus = HypergeomParams::new(p.a.clone(), p.b.clone(), q(1) - &s);
        let one_plus = HypergeomParams::new(&p.c - &p.a, &p.c - &p.b, q(1) + &s);
        let g1 = libm::tgamma(c) * libm::tgamma(sf) * rgamma(c - a) * rgamma(c - b);
        let g2 = libm::tgamma(c) * libm::tgamma(-sf) * rgamma(a) * rgamma(b);
        return Ok(g1 * direct_series(&one_minus, y)? + y.powf(sf) * g2 * direct_series(&one_plus, y)?);
    }
    let m = s.to_integer().to_i64().expect("small integer");
    let mf = m as f64;
    // Finite part: Γ(m)Γ(c)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a)_n(b)_n/(n!(1−m)_n) yⁿ.
    let mut finite = 0.0;
    if m > 0 {
        let mut t = 1.0;
        for n in 0..m {
            let nf = n as f64;
            finite += t;
            t *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * y;
        }
        finite *= libm::tgamma(mf) * libm::tgamma(c) * rgamma(a + mf) * rgamma(b + mf);
    }
    // Logarithmic part:
    // Σ (a+m)_n(b+m)_n/(n!(n+m)!) yⁿ [ln y − ψ(n+1) − ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)].
    let ln_y = y.ln();
    let mut t = 1.0 / libm::tgamma(mf + 1.0);
    let (mut p1, mut pm1) = (digamma(1.0), digamma(mf + 1.0));
    let (mut pa, mut pb) = (digamma(a + mf), digamma(b + mf));
    let mut sum = 0.0;
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = t * (ln_y - p1 - pm1 + pa + pb);
        sum += term;
        if n > 2 && term.abs() <= STOP_TOL * sum.abs() && t.abs() <= STOP_TOL * sum.abs() {
            converged = true;
            break;
        }
        t *= (a + mf + nf) * (b + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * y;
        p1 += 1.0 / (nf + 1.0);
        pm1 += 1.0 / (nf + mf + 1.0);
        pa += 1.0 / (a + nf + mf);
        pb += 1.0 / (b + nf + mf);
    }
    if !converged {
        return Err(Error::NonConvergence { terms: MAX_TERMS });
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let log_part = sign * y.powi(m as i32) * libm::tgamma(c) * rgamma(a) * rgamma(b) * sum;
    Ok(finite - log_part)
}

/// `1/Γ(x)`, zero at the poles.
fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}

/// `ψ(x)` by upward recurrence to `x ≥ 16` and the asymptotic series;
/// reflection below 1/2.
pub fn digamma(x: f64) -> f64 {
    if x < 0.5 {
        return digamma(1.0 - x) - std::f64::consts::PI / (std::f64::consts::PI * x).tan();
    }
    let mut acc = 0.0;
    let mut x = x;
    while x < 16.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    let tail = 1.0 / 132.0 - x2 * (691.0 / 32760.0 - x2 / 12.0);
    let series = x2 * (1.0 / 12.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 252.0 - x2 * (1.0 / 240.0 - x2 * tail))));
    acc + x.ln() - 0.5 / x - series
}

/// Leading term `z^{−a} Γ(c)Γ(b−a)/(Γ(b)Γ(c−a))` of `F(a, b; c; −z)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticTerm {
    /// The Γ-ratio, exact when all parameters are integers.
    #[serde(serialize_with = "crate::output::ser_opt_q")]
    pub coefficient_exact: Option<Q>,
    pub coefficient: f64,
    pub exponent: f64,
    pub value: f64,
}

fn int_of(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

/// `Γ(n)` for a positive integer, exactly.
fn gamma_int(n: i64) -> BigInt {
    factorial((n - 1) as u64)
}

pub fn asympt_2f1(p: &HypergeomParams, z: f64) -> Result<AsymptoticTerm> {
    if p.a >= p.b {
        return Err(Error::InvalidParameter("leading asymptotic term needs a < b".into()));
    }
    p.check()?;
    let ints = (int_of(&p.a), int_of(&p.b), int_of(&p.c));
    let exact = match ints {
        (Some(a), Some(b), Some(c)) if b > 0 => {
            if c - a <= 0 {
                // 1/Γ(c−a) vanishes at the poles.
                Some(Q::zero())
            } else {
                let num = gamma_int(c) * gamma_int(b - a);
                let den = gamma_int(b) * gamma_int(c - a);
                Some(Q::new(num, den))
            }
        }
        _ => None,
    };
    let coefficient = match &exact {
        Some(e) => to_f64(e),
        None => {
            let (a, b, c) = p.as_f64();
            libm::tgamma(c) * libm::tgamma(b - a) / (libm::tgamma(b) * libm::tgamma(c - a))
        }
    };
    let exponent = -to_f64(&p.a);
    Ok(AsymptoticTerm {
        coefficient_exact: exact,
        coefficient,
        exponent,
        value: coefficient * z.powf(exponent),
    })
}

fn admissible(label: BlockLabel) -> Result<()> {
    if !label.parity_ok() {
        return Err(Error::Inadmissible {
            label,
            reason: "K and L have different parity".into(),
        });
    }
    if label.k.abs() > label.l - 4 {
        return Err(Error::Inadmissible {
            label,
            reason: "|K| > L - 4, no harmonic spinor in this block".into(),
        });
    }
    Ok(())
}

/// `a₄(r) = A₄ sinh(r)^{L−4} cosh(r)^{K−2} F(a, b; c; −sinh²r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormSolution {
    pub label: BlockLabel,
    pub amplitude: f64,
    pub params: HypergeomParams,
}

/// `a₄` and its first two `u`-derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct A4Jet {
    pub u: f64,
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl ClosedFormSolution {
    fn exponents(&self) -> (f64, f64) {
        ((self.label.l - 4) as f64 / 2.0, (self.label.k - 2) as f64 / 2.0)
    }

    pub fn a4(&self, r: f64) -> Result<f64> {
        let s = r.sinh();
        let f = gauss_2f1(&self.params, -s * s)?;
        Ok(self.amplitude * s.powi((self.label.l - 4) as i32) * r.cosh().powi((self.label.k - 2) as i32) * f)
    }

    /// `a₄(r) / r^{L−4}`, which tends to `A₄` at the origin.
    pub fn normalized_at_origin(&self, r: f64) -> Result<f64> {
        Ok(self.a4(r)? / r.powi((self.label.l - 4) as i32))
    }

    /// Value and `u`-derivatives of `a₄ = A₄ u^α (1+u)^β F(−u)` from the
    /// contiguous derivative formula `d/dz F = (ab/c) F(a+1, b+1; c+1)`.
    pub fn jet_u(&self, u: f64) -> Result<A4Jet> {
        if !(u > 0.0) {
            return Err(Error::InvalidParameter(format!("u = {u} must be positive")));
        }
        let (alpha, beta) = self.exponents();
        let (a, b, c) = self.params.as_f64();
        let f0 = gauss_2f1(&self.params, -u)?;
        let f1 = -(a * b / c) * gauss_2f1(&self.params.shifted(1), -u)?;
        let f2 = (a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0))) * gauss_2f1(&self.params.shifted(2), -u)?;
        let g = self.amplitude * u.powf(alpha) * (1.0 + u).powf(beta);
        let p = alpha / u + beta / (1.0 + u);
        let dp = -alpha / (u * u) - beta / ((1.0 + u) * (1.0 + u));
        Ok(A4Jet {
            u,
            value: g * f0,
            d1: g * (p * f0 + f1),
            d2: g * ((p * p + dp) * f0 + 2.0 * p * f1 + f2),
        })
    }
}

pub fn closed_form(label: BlockLabel, amplitude: f64) -> Result<ClosedFormSolution> {
    admissible(label)?;
    Ok(ClosedFormSolution {
        label,
        amplitude,
        params: HypergeomParams::for_block(label),
    })
}

/// `C(L+2, (K+L)/2) / (L+2)`.
pub fn c_infinity(label: BlockLabel) -> Result<Q> {
    admissible(label)?;
    let n = label.l + 2;
    Ok(Q::new(binomial(n, (label.k + label.l) / 2), BigInt::from(n)))
}

/// Radius at which the boundary value is read off numerically.
pub const BOUNDARY_RADIUS: f64 = 12.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryValue {
    pub label: BlockLabel,
    #[serde(serialize_with = "crate::output::ser_q")]
    pub c_inf: Q,
    pub c_inf_f64: f64,
    /// `sinh⁴(r)·a₄(r)/A₄` at the boundary radius.
    pub c_inf_numeric: f64,
    pub relative_error: f64,
    /// `lim sinh⁴(r)·(a₄, a₋₄)`, coordinates on `P₄ ⊕ P₋₄`.
    pub s_inf: [f64; 2],
    /// Largest `sinh⁴(r)·|a_k|` for `k = 2, 0, −2`, relative to `|s∞|`.
    pub leakage: f64,
    /// Whether `s∞` lies in the top eigenspace of the σ₁ pairing.
    pub in_top_eigenspace: bool,
}

/// Exact `c∞` and its numeric cross-check from the radial integrator.
pub fn boundary_value(label: BlockLabel, amplitude: f64) -> Result<BoundaryValue> {
    let c_inf = c_infinity(label)?;
    let opts = IntegrationOptions {
        r_max: BOUNDARY_RADIUS,
        samples: 2,
        amplitude,
        ..IntegrationOptions::default()
    };
    let profile = integrate_with(label, &opts)?;
    let r = *profile.r.last().unwrap();
    let w = profile.components.last().unwrap();
    let s4 = r.sinh().powi(4);
    let scaled: Vec<f64> = w.iter().map(|x| x * s4).collect();
    let s_inf = [scaled[0], scaled[4]];
    let top = s_inf[0].abs().max(s_inf[1].abs());
    let leakage = scaled[1..4].iter().fold(0.0f64, |m, x| m.max(x.abs())) / top;
    let spectrum = sigma1_pairing_spectrum();
    let c_inf_f64 = to_f64(&c_inf);
    let c_inf_numeric = s_inf[0] / amplitude;
    Ok(BoundaryValue {
        label,
        c_inf,
        c_inf_f64,
        c_inf_numeric,
        relative_error: (c_inf_numeric - c_inf_f64).abs() / c_inf_f64,
        s_inf,
        leakage,
        in_top_eigenspace: spectrum.eigenspace_in_s4 && spectrum.max_eigenvalue == q(3),
    })
}

/// Whether the boundary map is injective on this block: `c∞ ≠ 0`.
/// `None` when the block carries no harmonic spinor (vacuous).
pub fn injectivity_witness(label: BlockLabel) -> Option<bool> {
    c_infinity(label).ok().map(|c| !c.is_zero())
}

/// Checks `c∞ = Γ-ratio` as rationals: the prefactor
/// `u^{(L−4)/2}(1+u)^{(K−2)/2}` times `u^{−a}` is `u^{−2}` at leading order,
/// so the two must agree exactly.
pub fn c_infinity_matches_gamma_ratio(label: BlockLabel) -> Result<bool> {
    let c = c_infinity(label)?;
    let p = HypergeomParams::for_block(label);
    let lead_power = Q::new((label.l - 4).into(), 2.into()) + Q::new((label.k - 2).into(), 2.into()) - &p.a;
    let term = asympt_2f1(&p, 1.0)?;
    Ok(lead_power == q(-2) && term.coefficient_exact.as_ref() == Some(&c))
}

/// `"C(n,k)/n = p/q"`, for reports.
pub fn c_infinity_formula(label: BlockLabel) -> Result<String> {
    let c = c_infinity(label)?;
    let n = label.l + 2;
    let k = (label.k + label.l) / 2;
    Ok(format!("C({n},{k})/{n} = {}", format_q(&c)))
}
