//! The radial Dirac operator on one block: assembly, exact elimination down
//! to a scalar second-order equation for `a₄`, numerical integration of the
//! first-order system, and indicial data.
//!
//! With `u = sinh²r` the operator reads
//!
//! ```text
//! P = −2u(1+u)∂_u + M(u),   M(u) = M_const + u·M_u + √(1+u)·M_sqrt,
//! ```
//!
//! acting on `w = Σ a_k σ_k` and landing in `span(σ) ⊕ span(τ)`.  Since
//! `2u(1+u)∂_u = sinh r cosh r ∂_r`, the σ rows give the ODE in `r` and the τ
//! rows give the algebraic constraint.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{q, qf, to_f64, QMatrix, Q};
use crate::invariants::{sigma1_pairing_spectrum, weight_operators, BasisSlot, BlockLabel, ZerothOrder};
use crate::ode::{dopri5, Tolerances};
use crate::rep_core::{decompose, make_irrep, pairing_op, piece_spectrum, tensor_chain, Sl2Module};
use crate::special_fn::{closed_form, ClosedFormSolution};
use crate::symbolic::{Poly, RatFunc, SqrtExt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialOperator {
    pub label: BlockLabel,
    pub slots: Vec<BasisSlot>,
    pub n_sigma: usize,
    pub m_const: QMatrix,
    pub m_u: QMatrix,
    pub m_sqrt: QMatrix,
}

impl RadialOperator {
    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn zeroth_order(&self) -> ZerothOrder {
        ZerothOrder {
            constant: self.m_const.clone(),
            linear: self.m_u.clone(),
            sqrt: self.m_sqrt.clone(),
        }
    }

    /// The coefficient of `∂_u`, `−2u(1+u)`, the same for every block.
    pub fn derivative_coefficient() -> Poly {
        Poly::from_ints(&[0, -2, -2])
    }

    pub fn index(&self, slot: BasisSlot) -> Option<usize> {
        self.slots.iter().position(|&s| s == slot)
    }

    /// Entry `(i, j)` of `M(u)` as an element of `Q(u)[√(1+u)]`.
    pub fn entry(&self, i: usize, j: usize) -> SqrtExt {
        SqrtExt::affine(self.m_const.get(i, j), self.m_u.get(i, j), self.m_sqrt.get(i, j))
    }

    fn entry_at(&self, slot_row: BasisSlot, slot_col: BasisSlot) -> SqrtExt {
        match (self.index(slot_row), self.index(slot_col)) {
            (Some(i), Some(j)) => self.entry(i, j),
            _ => SqrtExt::zero(),
        }
    }

    /// Rows `× σ`-columns of `M(u)` in floating point.
    fn float_parts(&self) -> FloatParts {
        let cols: Vec<usize> = (0..self.n_sigma).collect();
        let rows: Vec<usize> = (0..self.dim()).collect();
        FloatParts {
            constant: self.m_const.select(&rows, &cols).to_f64(),
            linear: self.m_u.select(&rows, &cols).to_f64(),
            sqrt: self.m_sqrt.select(&rows, &cols).to_f64(),
        }
    }
}

struct FloatParts {
    constant: Vec<Vec<f64>>,
    linear: Vec<Vec<f64>>,
    sqrt: Vec<Vec<f64>>,
}

impl FloatParts {
    fn at(&self, i: usize, j: usize, u: f64, s: f64) -> f64 {
        self.constant[i][j] + u * self.linear[i][j] + s * self.sqrt[i][j]
    }

    fn at_dual(&self, i: usize, j: usize, u: Dual) -> Dual {
        let s = (u + 1.0).sqrt();
        Dual::constant(self.constant[i][j]) + u * self.linear[i][j] + s * self.sqrt[i][j]
    }
}

pub fn assemble_radial(label: BlockLabel) -> Result<RadialOperator> {
    let ops = weight_operators(label)?;
    let z = ops.zeroth_order();
    Ok(RadialOperator {
        label,
        slots: ops.slots.clone(),
        n_sigma: ops.n_sigma,
        m_const: z.constant,
        m_u: z.linear,
        m_sqrt: z.sqrt,
    })
}

fn require_full(label: BlockLabel) -> Result<()> {
    if label.is_full() {
        Ok(())
    } else {
        Err(Error::Inadmissible {
            label,
            reason: "block is not full (needs |K| <= L - 4 and matching parity)".into(),
        })
    }
}

fn mismatch(label: BlockLabel, detail: impl Into<String>) -> Error {
    Error::ReductionMismatch {
        label,
        detail: detail.into(),
    }
}

/// `a₀ = coeff_a2·a₂ + coeff_a4·a₄`, from the τ₂ row of `P w = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRelation {
    pub label: BlockLabel,
    pub coeff_a2: SqrtExt,
    pub coeff_a4: SqrtExt,
}

pub fn constraint_a0(label: BlockLabel) -> Result<ConstraintRelation> {
    require_full(label)?;
    let op = assemble_radial(label)?;
    let row = BasisSlot::Tau(2);
    for k in [-2, -4] {
        if !op.entry_at(row, BasisSlot::Sigma(k)).is_zero() {
            return Err(mismatch(label, format!("tau_2 row couples to sigma_{k}")));
        }
    }
    let c0 = op.entry_at(row, BasisSlot::Sigma(0));
    if c0.is_zero() {
        return Err(mismatch(label, "tau_2 row does not involve a_0"));
    }
    let inv = c0.recip();
    Ok(ConstraintRelation {
        label,
        coeff_a2: &(-&op.entry_at(row, BasisSlot::Sigma(2))) * &inv,
        coeff_a4: &(-&op.entry_at(row, BasisSlot::Sigma(4))) * &inv,
    })
}

/// `p2·a₄″ + p1·a₄′ + p0·a₄ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderODE {
    pub label: BlockLabel,
    pub p2: RatFunc,
    pub p1: RatFunc,
    pub p0: RatFunc,
}

impl SecondOrderODE {
    fn with_numerator(label: BlockLabel, num: Poly) -> Self {
        SecondOrderODE {
            label,
            p2: RatFunc::poly(Poly::from_ints(&[0, 1, 1])),
            p1: RatFunc::poly(Poly::from_ints(&[6, 7])),
            p0: RatFunc::new(num, Poly::from_ints(&[0, 4, 4])),
        }
    }

    /// `u(u+1)a″ + (7u+6)a′ + [−(u+1)L(L+2) + (K²−4K+60)u + 24]/(4u(u+1)) a`,
    /// the equation in its published form.
    pub fn as_quoted(label: BlockLabel) -> Self {
        let (k, l) = (label.k, label.l);
        let c = l * (l + 2);
        Self::with_numerator(label, Poly::from_ints(&[24 - c, k * k - 4 * k + 60 - c]))
    }

    /// The equation annihilating `u^{L/2−2}(1+u)^{K/2−1}F((K+L)/2−1, (K+L)/2+1; L+2; −u)`:
    /// the printed one with `32u²` added to the numerator.
    pub fn hypergeometric(label: BlockLabel) -> Self {
        let (k, l) = (label.k, label.l);
        let c = l * (l + 2);
        Self::with_numerator(label, Poly::from_ints(&[24 - c, k * k - 4 * k + 60 - c, 32]))
    }

    /// `p0 − p0(as printed)`; identically zero would mean agreement.
    pub fn discrepancy_from_quoted(&self) -> RatFunc {
        &self.p0 - &Self::as_quoted(self.label).p0
    }

    /// Whether the leading and first-order coefficients agree with the
    /// printed equation.
    pub fn principal_part_matches_quoted(&self) -> bool {
        let quoted = Self::as_quoted(self.label);
        self.p2 == quoted.p2 && self.p1 == quoted.p1
    }
}

impl fmt::Display for SecondOrderODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] a'' + [{}] a' + [{}] a = 0", self.p2, self.p1, self.p0)
    }
}

/// Linear form in `(a₄, a₄′, a₄″)` with coefficients in `Q(u)[√(1+u)]`.
#[derive(Clone, Debug)]
struct LinForm([SqrtExt; 3]);

impl LinForm {
    fn unit(i: usize) -> Self {
        let mut c = [SqrtExt::zero(), SqrtExt::zero(), SqrtExt::zero()];
        c[i] = SqrtExt::from_rat(RatFunc::constant(q(1)));
        LinForm(c)
    }

    fn scale(&self, s: &SqrtExt) -> Self {
        LinForm([&self.0[0] * s, &self.0[1] * s, &self.0[2] * s])
    }

    fn add(&self, o: &LinForm) -> Self {
        LinForm([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }

    fn derivative(&self, label: BlockLabel) -> Result<Self> {
        if !self.0[2].is_zero() {
            return Err(mismatch(label, "third derivative of a_4 would appear"));
        }
        Ok(LinForm([
            self.0[0].derivative(),
            &self.0[1].derivative() + &self.0[0],
            &self.0[2].derivative() + &self.0[1],
        ]))
    }
}

fn two_u_one_plus_u() -> SqrtExt {
    SqrtExt::from_rat(RatFunc::poly(Poly::from_ints(&[0, 2, 2])))
}

/// Eliminates `a₂` (σ₄ row) and `a₀` (τ₂ row) from the σ₂ row in
/// `Q(u)[√(1+u)]`, and checks the result against the equation solved by the
/// closed form.  The printed equation differs from it by `8u/(u+1)` in the
/// zeroth-order coefficient; see [`SecondOrderODE::discrepancy_from_quoted`].
pub fn reduce_to_ode(label: BlockLabel) -> Result<SecondOrderODE> {
    require_full(label)?;
    let op = assemble_radial(label)?;
    let sig = BasisSlot::Sigma;
    for k in [0, -2, -4] {
        if !op.entry_at(sig(4), sig(k)).is_zero() {
            return Err(mismatch(label, format!("sigma_4 row couples to sigma_{k}")));
        }
    }
    for k in [-2, -4] {
        if !op.entry_at(sig(2), sig(k)).is_zero() {
            return Err(mismatch(label, format!("sigma_2 row couples to sigma_{k}")));
        }
    }
    let m42 = op.entry_at(sig(4), sig(2));
    if m42.is_zero() {
        return Err(mismatch(label, "sigma_4 row does not involve a_2"));
    }
    let a4 = LinForm::unit(0);
    let a4p = LinForm::unit(1);
    let a2 = a4p
        .scale(&two_u_one_plus_u())
        .add(&a4.scale(&-&op.entry_at(sig(4), sig(4))))
        .scale(&m42.recip());
    let rel = constraint_a0(label)?;
    let a0 = a2.scale(&rel.coeff_a2).add(&a4.scale(&rel.coeff_a4));
    let a2p = a2.derivative(label)?;
    let eq = a2p
        .scale(&-&two_u_one_plus_u())
        .add(&a2.scale(&op.entry_at(sig(2), sig(2))))
        .add(&a4.scale(&op.entry_at(sig(2), sig(4))))
        .add(&a0.scale(&op.entry_at(sig(2), sig(0))));
    if eq.0[2].is_zero() {
        return Err(mismatch(label, "reduced equation is not of second order"));
    }
    let norm = &SqrtExt::from_rat(RatFunc::poly(Poly::from_ints(&[0, 1, 1]))) / &eq.0[2];
    let coeffs: Vec<SqrtExt> = eq.0.iter().map(|c| c * &norm).collect();
    if let Some(c) = coeffs.iter().find(|c| !c.is_rational()) {
        return Err(mismatch(label, format!("irrational coefficient survives: {c}")));
    }
    let ode = SecondOrderODE {
        label,
        p2: coeffs[2].rational.clone(),
        p1: coeffs[1].rational.clone(),
        p0: coeffs[0].rational.clone(),
    };
    let expected = SecondOrderODE::hypergeometric(label);
    if ode != expected {
        return Err(mismatch(label, format!("got {ode}, expected {expected}")));
    }
    Ok(ode)
}

/// First-order dual number for `d/du`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Dual {
    v: f64,
    d: f64,
}

impl Dual {
    fn constant(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }

    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Dual {
            v: s,
            d: self.d / (2.0 * s),
        }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }
}

impl Add<f64> for Dual {
    type Output = Dual;
    fn add(self, o: f64) -> Dual {
        Dual {
            v: self.v + o,
            d: self.d,
        }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual {
            v: self.v - o.v,
            d: self.d - o.d,
        }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, o: f64) -> Dual {
        Dual {
            v: self.v * o,
            d: self.d * o,
        }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual {
            v: self.v / o.v,
            d: (self.d * o.v - self.v * o.d) / (o.v * o.v),
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

/// Gaussian elimination with partial pivoting on the value part.
fn solve_dual(mut m: Vec<Vec<Dual>>, mut rhs: Vec<Dual>) -> Result<Vec<Dual>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].v.abs().total_cmp(&m[b][col].v.abs()))
            .unwrap();
        if m[piv][col].v == 0.0 {
            return Err(Error::Singular);
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for c in col..n {
                let t = m[col][c];
                m[row][c] = m[row][c] - f * t;
            }
            let t = rhs[col];
            rhs[row] = rhs[row] - f * t;
        }
    }
    let mut x = vec![Dual::constant(0.0); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for c in row + 1..n {
            acc = acc - m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

/// The full closed-form spinor `(a₄, a₂, a₀, a₋₂, a₋₄)` and its `u`-derivative
/// at one point.  `a₄` comes from the hypergeometric formula, the other four
/// components from the σ₄ row and the three τ rows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorJet {
    pub u: f64,
    pub w: [f64; 5],
    pub dw_du: [f64; 5],
}

struct Evaluator {
    op: RadialOperator,
    parts: FloatParts,
}

impl Evaluator {
    fn new(label: BlockLabel) -> Result<Self> {
        require_full(label)?;
        let op = assemble_radial(label)?;
        let parts = op.float_parts();
        Ok(Evaluator { op, parts })
    }

    fn spinor(&self, cf: &ClosedFormSolution, u: f64) -> Result<SpinorJet> {
        let jet = cf.jet_u(u)?;
        let a4 = Dual {
            v: jet.value,
            d: jet.d1,
        };
        let a4p = Dual { v: jet.d1, d: jet.d2 };
        let ud = Dual { v: u, d: 1.0 };
        let n = self.op.dim();
        let ns = self.op.n_sigma;
        // σ₄ row and the τ rows, unknowns a₂ … a₋₄.
        let rows: Vec<usize> = std::iter::once(0).chain(ns..n).collect();
        let mut m = Vec::new();
        let mut rhs = Vec::new();
        for &i in &rows {
            m.push((1..ns).map(|j| self.parts.at_dual(i, j, ud)).collect());
            let mut r = -(self.parts.at_dual(i, 0, ud) * a4);
            if i == 0 {
                r = r + ud * (ud + 1.0) * 2.0 * a4p;
            }
            rhs.push(r);
        }
        let rest = solve_dual(m, rhs)?;
        let mut w = [0.0; 5];
        let mut dw = [0.0; 5];
        w[0] = a4.v;
        dw[0] = a4.d;
        for (k, x) in rest.iter().enumerate() {
            w[k + 1] = x.v;
            dw[k + 1] = x.d;
        }
        Ok(SpinorJet { u, w, dw_du: dw })
    }

    /// `‖P w‖_∞ / max(‖2u(1+u) w′‖_∞, ‖M w‖_∞)` over all rows.
    fn dirac_residual(&self, u: f64, w: &[f64], dw_du: &[f64]) -> f64 {
        let s = (1.0 + u).sqrt();
        let ns = self.op.n_sigma;
        let mut num = 0.0f64;
        let mut deriv = 0.0f64;
        let mut zeroth = 0.0f64;
        for i in 0..self.op.dim() {
            let mw: f64 = (0..ns).map(|j| self.parts.at(i, j, u, s) * w[j]).sum();
            let dpart = if i < ns { 2.0 * u * (1.0 + u) * dw_du[i] } else { 0.0 };
            num = num.max((mw - dpart).abs());
            deriv = deriv.max(dpart.abs());
            zeroth = zeroth.max(mw.abs());
        }
        num / deriv.max(zeroth)
    }

    /// `‖B_r w‖₂ / ‖w‖₂` with `B_r = M_τσ / (sinh r cosh r)`.
    fn constraint_residual(&self, r: f64, w: &[f64]) -> f64 {
        let u = r.sinh().powi(2);
        let s = (1.0 + u).sqrt();
        let ns = self.op.n_sigma;
        let sc = r.sinh() * r.cosh();
        let bw: f64 = (ns..self.op.dim())
            .map(|i| {
                let x: f64 = (0..ns).map(|j| self.parts.at(i, j, u, s) * w[j]).sum();
                (x / sc).powi(2)
            })
            .sum();
        let nw: f64 = w.iter().map(|x| x * x).sum();
        (bw / nw).sqrt()
    }
}

pub fn closed_form_spinor(label: BlockLabel, amplitude: f64, r: f64) -> Result<SpinorJet> {
    let ev = Evaluator::new(label)?;
    let cf = closed_form(label, amplitude)?;
    ev.spinor(&cf, r.sinh().powi(2))
}

/// Relative Dirac residual of the closed-form spinor at each radius.
pub fn closed_form_residuals(label: BlockLabel, radii: &[f64]) -> Result<Vec<f64>> {
    let ev = Evaluator::new(label)?;
    let cf = closed_form(label, 1.0)?;
    radii
        .iter()
        .map(|&r| {
            let jet = ev.spinor(&cf, r.sinh().powi(2))?;
            Ok(ev.dirac_residual(jet.u, &jet.w, &jet.dw_du))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialProfile {
    pub label: BlockLabel,
    pub r: Vec<f64>,
    /// `(a₄, a₂, a₀, a₋₂, a₋₄)` at each radius.
    pub components: Vec<[f64; 5]>,
    pub dirac_residual: Vec<f64>,
    pub constraint_residual: Vec<f64>,
}

impl RadialProfile {
    pub fn max_constraint_residual(&self) -> f64 {
        self.constraint_residual.iter().fold(0.0, |m, &x| m.max(x))
    }

    pub fn max_dirac_residual(&self) -> f64 {
        self.dirac_residual.iter().fold(0.0, |m, &x| m.max(x))
    }
}

/// Decay rate of harmonic spinors at infinity, `w = O(e^{−4r})`.
pub const DECAY_RATE: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationOptions {
    pub r0: f64,
    pub r_max: f64,
    pub samples: usize,
    pub amplitude: f64,
    pub tol: Tolerances,
    /// Relative constraint residual beyond which integration aborts.
    pub blowup: f64,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            r0: 0.5,
            r_max: 12.0,
            samples: 256,
            amplitude: 1.0,
            tol: Tolerances::default(),
            blowup: 1e-6,
        }
    }
}

pub fn integrate(label: BlockLabel, r_max: f64, samples: usize, amplitude: f64) -> Result<RadialProfile> {
    integrate_with(
        label,
        &IntegrationOptions {
            r_max,
            samples,
            amplitude,
            ..IntegrationOptions::default()
        },
    )
}

/// Integrates `da/dr = A(u) a / (sinh r cosh r)` on the σ components from
/// closed-form data at `r0`, sampling on an even grid `[r0, r_max]`.
pub fn integrate_with(label: BlockLabel, opts: &IntegrationOptions) -> Result<RadialProfile> {
    let cf = closed_form(label, opts.amplitude)?;
    if !(opts.r_max >= 1.0 && opts.r_max > opts.r0) {
        return Err(Error::InvalidParameter(format!(
            "r_max = {} must be >= 1 and > r0",
            opts.r_max
        )));
    }
    if opts.samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    if opts.amplitude == 0.0 || !opts.amplitude.is_finite() {
        return Err(Error::InvalidParameter("A4 must be finite and nonzero".into()));
    }
    let ev = Evaluator::new(label)?;
    let init = ev.spinor(&cf, opts.r0.sinh().powi(2))?;
    let ns = ev.op.n_sigma;
    let step = (opts.r_max - opts.r0) / (opts.samples - 1) as f64;
    let grid: Vec<f64> = (0..opts.samples)
        .map(|i| {
            if i + 1 == opts.samples {
                opts.r_max
            } else {
                opts.r0 + step * i as f64
            }
        })
        .collect();
    // The solution decays like e^{−4r}; integrating b = e^{4(r−r0)}·a keeps
    // the unknowns of order one so the absolute tolerance stays meaningful.
    let weight = |r: f64| (DECAY_RATE * (r - opts.r0)).exp();
    let rhs = |r: f64, a: &[f64], da: &mut [f64]| {
        let u = r.sinh().powi(2);
        let s = (1.0 + u).sqrt();
        let sc = r.sinh() * r.cosh();
        for (i, d) in da.iter_mut().enumerate().take(ns) {
            *d = (0..ns).map(|j| ev.parts.at(i, j, u, s) * a[j]).sum::<f64>() / sc;
        }
    };
    let weighted_rhs = |r: f64, b: &[f64], db: &mut [f64]| {
        rhs(r, b, db);
        for (d, x) in db.iter_mut().zip(b) {
            *d += DECAY_RATE * x;
        }
    };
    let mut profile = RadialProfile {
        label,
        r: Vec::with_capacity(grid.len()),
        components: Vec::with_capacity(grid.len()),
        dirac_residual: Vec::with_capacity(grid.len()),
        constraint_residual: Vec::with_capacity(grid.len()),
    };
    dopri5(weighted_rhs, opts.r0, &init.w, &grid, opts.tol, |r, b| {
        let scale = weight(r).recip();
        let a: Vec<f64> = b.iter().map(|x| x * scale).collect();
        let u = r.sinh().powi(2);
        let mut da = [0.0; 5];
        rhs(r, &a, &mut da);
        // da/du = (da/dr) / (2 sinh r cosh r)
        let dw_du: Vec<f64> = da.iter().map(|x| x / (2.0 * r.sinh() * r.cosh())).collect();
        let cres = ev.constraint_residual(r, &a);
        if !(cres <= opts.blowup) {
            return Err(Error::ResidualBlowUp { r, residual: cres });
        }
        profile.r.push(r);
        profile.components.push([a[0], a[1], a[2], a[3], a[4]]);
        profile.dirac_residual.push(ev.dirac_residual(u, &a, &dw_du));
        profile.constraint_residual.push(cres);
        Ok(())
    })?;
    Ok(profile)
}

/// Indicial exponents of one block.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicialData {
    pub label: BlockLabel,
    /// `(highest weight of the summand of S₁S₃S_L, λ)`.
    pub lambdas: Vec<(usize, i64)>,
    /// `−3 + λ`, aligned with `lambdas`.
    pub origin_exponents: Vec<i64>,
    #[serde(serialize_with = "crate::output::ser_q")]
    pub decay_at_infinity: Q,
    /// Exponent on the `S_{L−4}` summand: the solution extending to the origin.
    pub regular_exponent: Option<i64>,
    /// Exponent on the `S_{L+4}` summand.
    pub rejected_exponent: i64,
}

/// `λ` = eigenvalues of `Σ ρ₁(σᵢ)(ρ₃ + ρ_L)(σᵢ)` summand by summand, read off
/// the constructed operators.
pub fn indicial_data(label: BlockLabel) -> Result<IndicialData> {
    let l = label.l as usize;
    let s1 = make_irrep(1);
    let rest = tensor_chain(&[3, l]);
    let pairing = pairing_op(&s1, &rest)?;
    let total = tensor_chain(&[1, 3, l]);
    let pieces = decompose(&total);
    let spec = piece_spectrum(&total, &pairing, &pieces)?;
    let lambdas: Vec<(usize, i64)> = spec
        .iter()
        .map(|p| {
            (
                p.highest_weight,
                p.eigenvalue.to_integer().to_i64().expect("integral λ"),
            )
        })
        .collect();
    let origin_exponents: Vec<i64> = lambdas.iter().map(|&(_, lam)| lam - 3).collect();
    let on = |mu: usize| lambdas.iter().find(|&&(m, _)| m == mu).map(|&(_, lam)| lam - 3);
    let sigma1 = sigma1_pairing_spectrum();
    Ok(IndicialData {
        label,
        origin_exponents,
        decay_at_infinity: qf(11, 2) - sigma1.max_eigenvalue / q(2),
        regular_exponent: l.checked_sub(4).and_then(on),
        rejected_exponent: on(l + 4).expect("S_{L+4} always occurs"),
        lambdas,
    })
}

/// `δ± = 2 ± √(4+λ)`.
pub fn critical_weights(lambda: f64) -> Result<(f64, f64)> {
    if !(lambda >= -4.0) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} < -4")));
    }
    let s = (4.0 + lambda).sqrt();
    Ok((2.0 - s, 2.0 + s))
}

/// Spectrum of `−Σ ρ₀(Yᵢ)²` on `S₃ ⊗ S⁺` with
/// `Y₁ = ½σ₁⁻ − (3/2)σ₁⁺`, `Y₂ = σ₂⁻`, `Y₃ = σ₃⁻`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiracSquareSpectrum {
    /// `(m₃, m₊, eigenvalue)` per weight vector.
    #[serde(serialize_with = "crate::output::ser_weighted_q")]
    pub eigenvalues: Vec<(i64, i64, Q)>,
    #[serde(serialize_with = "crate::output::ser_q")]
    pub min_eigenvalue: Q,
    pub minimizers: Vec<(i64, i64)>,
    /// `scal/4` for `Ric = −6g`.
    #[serde(serialize_with = "crate::output::ser_q")]
    pub scalar_shift: Q,
    #[serde(serialize_with = "crate::output::ser_q")]
    pub lambda_min: Q,
}

impl DiracSquareSpectrum {
    pub fn eigenvalue_at(&self, m3: i64, mplus: i64) -> Option<&Q> {
        self.eigenvalues
            .iter()
            .find(|(a, b, _)| *a == m3 && *b == mplus)
            .map(|(_, _, e)| e)
    }
}

pub fn dirac_sq_order0_spectrum() -> DiracSquareSpectrum {
    let s3 = make_irrep(3);
    let mplus = QMatrix::diagonal(&[q(1), q(-1)]);
    let i2 = QMatrix::identity(2);
    let i4 = QMatrix::identity(4);
    let y1 = &s3.h().kron(&i2).scale(&qf(1, 2)) - &i4.kron(&mplus).scale(&qf(3, 2));
    let xy = s3.x().matmul(s3.y());
    let yx = s3.y().matmul(s3.x());
    let transverse = (&xy + &yx).scale(&q(2)).kron(&i2);
    let m = &y1.matmul(&y1) + &transverse;
    let diag = m.diagonal_entries().expect("weight vectors diagonalize the operator");
    let w3 = s3.weights();
    let eigenvalues: Vec<(i64, i64, Q)> = diag
        .into_iter()
        .enumerate()
        .map(|(i, e)| (w3[i / 2], if i % 2 == 0 { 1 } else { -1 }, e))
        .collect();
    let min = eigenvalues.iter().map(|(_, _, e)| e.clone()).min().unwrap();
    let minimizers = eigenvalues
        .iter()
        .filter(|(_, _, e)| *e == min)
        .map(|&(a, b, _)| (a, b))
        .collect();
    let scalar_shift = q(-24) / q(4);
    DiracSquareSpectrum {
        lambda_min: &min + &scalar_shift,
        eigenvalues,
        min_eigenvalue: min,
        minimizers,
        scalar_shift,
    }
}

/// Checks the assembled matrices against `−6 − B`, `−11/2 + A/2`, `−2C`.
pub fn matches_operator_formula(op: &RadialOperator) -> Result<bool> {
    let ops = weight_operators(op.label)?;
    let n = ops.dim();
    Ok(op.m_const == &QMatrix::scalar(n, q(-6)) - &ops.opb
        && op.m_u == &QMatrix::scalar(n, qf(-11, 2)) + &ops.opa.scale(&qf(1, 2))
        && op.m_sqrt == ops.opc.scale(&q(-2)))
}

/// `to_f64` of an exact entry, for reports.
pub fn entry_value(m: &QMatrix, i: usize, j: usize) -> f64 {
    to_f64(m.get(i, j))
}
