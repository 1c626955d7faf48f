//! Named verification suites: each check reports pass/fail and, where it
//! makes sense, the largest measured error.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::exact::{q, qf, Q};
use crate::invariants::{
    claim_identities, invariant_basis, invariant_dim, isotypic_membership, sigma1_pairing_spectrum, weight_operators,
    BlockLabel, InvariantTarget, WeightOperators,
};
use crate::moduli::{
    audit_report, bland_project, classify_block, constrained_solution_count, contacto_action, is_phi_admissible,
    kernel_dim, tangent_project, DeformationSpectrum, Domain, Tag,
};
use crate::radial::{
    assemble_radial, closed_form_residuals, constraint_a0, critical_weights, dirac_sq_order0_spectrum, indicial_data,
    integrate_with, matches_operator_formula, reduce_to_ode, IntegrationOptions,
};
use crate::rep_core::{casimir, decompose, make_irrep, pairing_op, piece_spectrum, tensor_chain, Sl2Module};
use crate::special_fn::{boundary_value, c_infinity_matches_gamma_ratio, direct_series, gauss_2f1, HypergeomParams};
use crate::symbolic::{Poly, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Algebra,
    Ode,
    Asymptotics,
    Moduli,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "algebra" => Suite::Algebra,
            "ode" => Suite::Ode,
            "asymptotics" => Suite::Asymptotics,
            "moduli" => Suite::Moduli,
            other => return Err(Error::Config(format!("unknown suite `{other}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Ode => "ode",
            Suite::Asymptotics => "asymptotics",
            Suite::Moduli => "moduli",
        })
    }
}

/// Deliberate corruption, to confirm the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Fault {
    /// Adds 1 to the first diagonal entry of OpB on every block.
    CorruptOpB,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrupt-opb" => Ok(Fault::CorruptOpB),
            other => Err(Error::Config(format!("unknown fault `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Largest error observed, for numerical checks.
    pub measured: Option<f64>,
    pub threshold: Option<f64>,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, if self.passed { "pass" } else { "FAIL" })?;
        if let Some(m) = self.measured {
            write!(f, " (max error {m:.3e}")?;
            if let Some(t) = self.threshold {
                write!(f, ", threshold {t:.0e}")?;
            }
            write!(f, ")")?;
        }
        if !self.detail.is_empty() {
            write!(f, " [{}]", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub l_max: i64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "suite {}: {} checks, {} failed",
            self.suite,
            self.checks.len(),
            failed
        )
    }
}

/// Outcome of one check body before timing is attached.
struct Outcome {
    passed: bool,
    measured: Option<f64>,
    threshold: Option<f64>,
    detail: String,
}

impl Outcome {
    fn exact(failures: Vec<String>, tested: usize) -> Self {
        let detail = match failures.first() {
            None => format!("{tested} cases"),
            Some(first) => format!("{} of {tested} failed, first: {first}", failures.len()),
        };
        Outcome {
            passed: failures.is_empty(),
            measured: None,
            threshold: None,
            detail,
        }
    }

    fn bounded(max_err: f64, threshold: f64, detail: String) -> Self {
        Outcome {
            passed: max_err <= threshold,
            measured: Some(max_err),
            threshold: Some(threshold),
            detail,
        }
    }
}

fn run_check(name: &str, body: impl FnOnce() -> Result<Outcome>) -> Check {
    let start = Instant::now();
    let out = body().unwrap_or_else(|e| Outcome {
        passed: false,
        measured: None,
        threshold: None,
        detail: format!("error: {e}"),
    });
    Check {
        name: name.to_string(),
        passed: out.passed,
        measured: out.measured,
        threshold: out.threshold,
        detail: out.detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Blocks used by the closed-form and constraint checks.
pub const REFERENCE_BLOCKS: [(i64, i64); 4] = [(0, 4), (0, 8), (2, 6), (4, 8)];

fn reference_blocks() -> Vec<BlockLabel> {
    REFERENCE_BLOCKS.iter().map(|&(k, l)| BlockLabel::new(k, l)).collect()
}

/// Weight operators with an optional injected fault.
pub fn operators(label: BlockLabel, fault: Option<Fault>) -> Result<WeightOperators> {
    let mut ops = weight_operators(label)?;
    if let Some(Fault::CorruptOpB) = fault {
        let v = ops.opb.get(0, 0) + q(1);
        ops.opb.set(0, 0, v);
    }
    Ok(ops)
}

pub fn run(suite: Suite, cfg: &RunConfig, fault: Option<Fault>) -> Report {
    let mut checks = Vec::new();
    let l = cfg.l_max;
    if matches!(suite, Suite::All | Suite::Algebra) {
        checks.push(run_check("casimir", || check_casimir(20)));
        checks.push(run_check("pairing-spectrum", || check_pairing_spectrum(12)));
        checks.push(run_check("decomposition", || check_decomposition(l)));
        checks.push(run_check("eigenvalue-table", || check_eigenvalue_table(l)));
        checks.push(run_check("claim-identities", || check_claims(l.max(16), fault)));
        checks.push(run_check("invariant-dims", || check_invariant_dims(24, 20)));
        checks.push(run_check("isotypic-membership", || check_isotypic_membership(l)));
        checks.push(run_check("sigma1-spectrum", check_sigma1));
        checks.push(run_check("operator-formula", || check_operator_formula(l)));
    }
    if matches!(suite, Suite::All | Suite::Ode) {
        checks.push(run_check("ode-reduction", || check_ode_reduction(l)));
        checks.push(run_check("quoted-ode-offset", || check_quoted_offset(l)));
        checks.push(run_check("constraint-a0", || check_constraint_a0(l)));
        checks.push(run_check("closed-form-residual", || check_closed_form_residual(l)));
        checks.push(run_check("constraint-residual", || check_constraint_residual(l, cfg)));
    }
    if matches!(suite, Suite::All | Suite::Asymptotics) {
        checks.push(run_check("hypergeometric-pfaff", || check_pfaff(16)));
        checks.push(run_check("hypergeometric-ln2", check_ln2));
        checks.push(run_check("c-infinity", || check_c_infinity(l)));
        checks.push(run_check("c-infinity-gamma-ratio", || check_gamma_ratio(l)));
        checks.push(run_check("indicial-exponents", || check_indicial(l)));
        checks.push(run_check("dirac-square-minimum", check_dirac_square));
        checks.push(run_check("critical-weights", check_critical_weights));
    }
    if matches!(suite, Suite::All | Suite::Moduli) {
        checks.push(run_check("kernel-dims", || check_kernel_dims(24, 20)));
        checks.push(run_check("constrained-count", || check_constrained_count(l)));
        checks.push(run_check("harmonic-target-tags", || check_harmonic_targets(24, 20)));
        checks.push(run_check("contacto-support", || check_contacto(20)));
        checks.push(run_check("block-partition", || check_partition(20)));
        checks.push(run_check("dimension-ledger", || check_ledger(20)));
        checks.push(run_check("projections", || check_projections(20)));
    }
    Report {
        suite,
        l_max: cfg.l_max,
        checks,
    }
}

fn collect_failures<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync + Send,
) -> Result<Vec<String>> {
    let results: Vec<Result<Option<String>>> = items.par_iter().map(f).collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(msg) = r? {
            out.push(msg);
        }
    }
    Ok(out)
}

fn max_error<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64> {
    let results: Vec<Result<f64>> = items.par_iter().map(f).collect();
    let mut m = 0.0f64;
    for r in results {
        let e = r?;
        // NaN must fail the check, so it wins the comparison.
        m = if e.is_nan() || m.is_nan() { f64::NAN } else { m.max(e) };
    }
    Ok(m)
}

fn check_casimir(l_max: usize) -> Result<Outcome> {
    let ls: Vec<usize> = (0..=l_max).collect();
    let fails = collect_failures(&ls, |&l| {
        let c = casimir(&make_irrep(l))?;
        let want = q((l * (l + 2)) as i64);
        Ok((c != want).then(|| format!("S_{l}: {c} != {want}")))
    })?;
    Ok(Outcome::exact(fails, ls.len()))
}

fn check_pairing_spectrum(l_max: usize) -> Result<Outcome> {
    let ls: Vec<usize> = (1..=l_max).collect();
    let fails = collect_failures(&ls, |&l| {
        let (s1, sl) = (make_irrep(1), make_irrep(l));
        let op = pairing_op(&s1, &sl)?;
        let t = tensor_chain(&[1, l]);
        let spec = piece_spectrum(&t, &op, &decompose(&t))?;
        let mut got: Vec<(Q, usize)> = spec.into_iter().map(|p| (p.eigenvalue, p.multiplicity)).collect();
        got.sort();
        let li = l as i64;
        let mut want = vec![(q(-li), l + 2), (q(li + 2), l)];
        want.sort();
        Ok((got != want).then(|| format!("l={l}: {got:?}")))
    })?;
    Ok(Outcome::exact(fails, ls.len()))
}

fn check_decomposition(l_max: i64) -> Result<Outcome> {
    let ls: Vec<usize> = (0..=l_max as usize).collect();
    let fails = collect_failures(&ls, |&l| {
        let t = tensor_chain(&[1, 3, l]);
        let pieces = decompose(&t);
        let total: usize = pieces.iter().map(|p| p.highest_weight + 1).sum();
        if total != t.dim() {
            return Ok(Some(format!("L={l}: dimensions sum to {total}, not {}", t.dim())));
        }
        for p in &pieces {
            let mut v = p.hw_vector.clone();
            let killed_by_x = t.x().mul_vec(&v).iter().all(Zero::is_zero);
            for _ in 0..=p.highest_weight {
                v = t.y().mul_vec(&v);
            }
            if !killed_by_x || !v.iter().all(Zero::is_zero) {
                return Ok(Some(format!(
                    "L={l}: piece S_{} is not a highest weight string",
                    p.highest_weight
                )));
            }
        }
        Ok(None)
    })?;
    Ok(Outcome::exact(fails, ls.len()))
}

/// `(μ, λ)` pairs of `Σ ρ₁(σᵢ)(ρ₃ + ρ_L)(σᵢ)` on `S₁S₃S_L`, `L ≥ 4`.
pub fn expected_eigenvalue_table(l: i64) -> Vec<(usize, i64)> {
    let mut v: Vec<(usize, i64)> = vec![
        (l + 4, -(l + 3)),
        (l + 2, -(l + 1)),
        (l, -(l - 1)),
        (l - 2, -(l - 3)),
        (l + 2, l + 5),
        (l, l + 3),
        (l - 2, l + 1),
        (l - 4, l - 1),
    ]
    .into_iter()
    .map(|(m, lam)| (m as usize, lam))
    .collect();
    v.sort();
    v
}

fn check_eigenvalue_table(l_max: i64) -> Result<Outcome> {
    let mut ls: Vec<i64> = (4..=l_max).collect();
    for extra in [8, 12, 16] {
        if !ls.contains(&extra) {
            ls.push(extra);
        }
    }
    let fails = collect_failures(&ls, |&l| {
        let data = indicial_data(BlockLabel::new(l % 2, l))?;
        let mut got = data.lambdas.clone();
        got.sort();
        Ok((got != expected_eigenvalue_table(l)).then(|| format!("L={l}: {got:?}")))
    })?;
    Ok(Outcome::exact(fails, ls.len()))
}

fn check_claims(l_max: i64, fault: Option<Fault>) -> Result<Outcome> {
    let blocks = BlockLabel::full_blocks(l_max);
    let fails = collect_failures(&blocks, |&b| {
        let ops = operators(b, fault)?;
        let bad: Vec<String> = claim_identities(&ops)?
            .into_iter()
            .filter(|c| !c.holds)
            .map(|c| c.name)
            .collect();
        Ok((!bad.is_empty()).then(|| format!("{b}: {}", bad.join("; "))))
    })?;
    Ok(Outcome::exact(fails, blocks.len()))
}

/// Number of pairs `(k₁, k₂)` of weights of `S_L` and the target with
/// `k₂ = −K − k₁`, by enumeration.
pub fn weight_pair_count(label: BlockLabel, target: InvariantTarget) -> usize {
    let sl: Vec<i64> = (0..=label.l).map(|j| label.l - 2 * j).collect();
    sl.iter()
        .flat_map(|k1| target.weights().iter().map(move |k2| (k1, k2)))
        .filter(|&(k1, k2)| *k2 == -label.k - k1)
        .count()
}

fn all_labels(k_max: i64, l_max: i64) -> Vec<BlockLabel> {
    BlockLabel::sweep(l_max, |_| -k_max..k_max + 1)
}

fn check_invariant_dims(k_max: i64, l_max: i64) -> Result<Outcome> {
    let labels = all_labels(k_max, l_max);
    let targets = [
        InvariantTarget::S4,
        InvariantTarget::S2,
        InvariantTarget::C4,
        InvariantTarget::C0,
    ];
    let fails = collect_failures(&labels, |&b| {
        for t in targets {
            let (got, want) = (invariant_dim(b, t), weight_pair_count(b, t));
            if got != want {
                return Ok(Some(format!("{b} {t:?}: {got} != {want}")));
            }
        }
        let s4 = invariant_dim(b, InvariantTarget::S4);
        if (s4 == 5) != b.is_full() {
            return Ok(Some(format!("{b}: dim 5 does not match |K| <= L-4")));
        }
        if (s4 == 0) != (!b.parity_ok() || b.k.abs() > b.l + 4) {
            return Ok(Some(format!("{b}: emptiness does not match |K| > L+4")));
        }
        let basis = invariant_basis(b);
        if basis.sigma_count() != s4 {
            return Ok(Some(format!(
                "{b}: basis has {} sigmas, count {s4}",
                basis.sigma_count()
            )));
        }
        Ok(None)
    })?;
    Ok(Outcome::exact(fails, labels.len()))
}

fn check_isotypic_membership(l_max: i64) -> Result<Outcome> {
    let labels: Vec<BlockLabel> = all_labels(l_max + 4, l_max)
        .into_iter()
        .filter(|b| b.parity_ok() && b.k.abs() <= b.l + 4)
        .collect();
    let fails = collect_failures(&labels, |&b| {
        Ok((!isotypic_membership(&invariant_basis(b))?).then(|| format!("{b}")))
    })?;
    Ok(Outcome::exact(fails, labels.len()))
}

fn check_sigma1() -> Result<Outcome> {
    let s = sigma1_pairing_spectrum();
    let mut fails = Vec::new();
    if s.max_eigenvalue != q(3) {
        fails.push(format!("max eigenvalue {}", s.max_eigenvalue));
    }
    if s.min_eigenvalue != q(-3) {
        fails.push(format!("min eigenvalue {}", s.min_eigenvalue));
    }
    if s.eigenspace_dim() != 2 || !s.eigenspace_in_s4 {
        fails.push("top eigenspace is not span(s4, s-4)".into());
    }
    Ok(Outcome::exact(fails, 3))
}

fn check_operator_formula(l_max: i64) -> Result<Outcome> {
    let labels: Vec<BlockLabel> = all_labels(l_max + 4, l_max)
        .into_iter()
        .filter(|b| b.parity_ok() && b.k.abs() <= b.l + 4)
        .collect();
    let fails = collect_failures(&labels, |&b| {
        Ok((!matches_operator_formula(&assemble_radial(b)?)?).then(|| format!("{b}")))
    })?;
    Ok(Outcome::exact(fails, labels.len()))
}

fn check_ode_reduction(l_max: i64) -> Result<Outcome> {
    let blocks = BlockLabel::full_blocks(l_max);
    let fails = collect_failures(&blocks, |&b| match reduce_to_ode(b) {
        Ok(ode) if ode.principal_part_matches_quoted() => Ok(None),
        Ok(_) => Ok(Some(format!("{b}: principal part differs"))),
        Err(e) => Ok(Some(format!("{b}: {e}"))),
    })?;
    Ok(Outcome::exact(fails, blocks.len()))
}

/// `8u/(u+1)`: the difference between the zeroth-order coefficient of the
/// reduced equation and the quoted one.
pub fn quoted_offset() -> RatFunc {
    RatFunc::new(Poly::from_ints(&[0, 8]), Poly::from_ints(&[1, 1]))
}

fn check_quoted_offset(l_max: i64) -> Result<Outcome> {
    let blocks = BlockLabel::full_blocks(l_max);
    let offset = quoted_offset();
    let fails = collect_failures(&blocks, |&b| {
        let d = reduce_to_ode(b)?.discrepancy_from_quoted();
        Ok((d != offset).then(|| format!("{b}: offset {d}")))
    })?;
    let mut out = Outcome::exact(fails, blocks.len());
    out.detail = format!(
        "reduced minus quoted zeroth-order coefficient is {offset}; {}",
        out.detail
    );
    Ok(out)
}

fn check_constraint_a0(l_max: i64) -> Result<Outcome> {
    let blocks: Vec<BlockLabel> = BlockLabel::full_blocks(l_max)
        .into_iter()
        .filter(|b| b.k >= 2)
        .collect();
    let err = max_error(&blocks, |&b| {
        let rel = constraint_a0(b)?;
        Ok(rel.coeff_a2.eval_f64((b.k - 2) as f64).abs())
    })?;
    Ok(Outcome::bounded(
        err,
        1e-12,
        format!("a2 coefficient at u = K-2, {} blocks", blocks.len()),
    ))
}

fn sweep_with_reference(l_max: i64) -> Vec<BlockLabel> {
    let mut blocks = BlockLabel::full_blocks(l_max);
    for b in reference_blocks() {
        if !blocks.contains(&b) {
            blocks.push(b);
        }
    }
    blocks
}

fn check_closed_form_residual(l_max: i64) -> Result<Outcome> {
    let radii: Vec<f64> = (0..512).map(|i| 0.1 + 4.9 * i as f64 / 511.0).collect();
    let blocks = sweep_with_reference(l_max);
    let err = max_error(&blocks, |&b| {
        Ok(closed_form_residuals(b, &radii)?.into_iter().fold(0.0, f64::max))
    })?;
    Ok(Outcome::bounded(
        err,
        1e-8,
        format!("r in [0.1, 5], 512 points, {} blocks", blocks.len()),
    ))
}

fn check_constraint_residual(l_max: i64, cfg: &RunConfig) -> Result<Outcome> {
    let blocks = sweep_with_reference(l_max);
    let opts = IntegrationOptions {
        r_max: cfg.r_max,
        samples: cfg.samples,
        tol: cfg.tolerances(),
        ..IntegrationOptions::default()
    };
    let err = max_error(&blocks, |&b| Ok(integrate_with(b, &opts)?.max_constraint_residual()))?;
    Ok(Outcome::bounded(
        err,
        1e-8,
        format!("r up to {}, {} blocks", cfg.r_max, blocks.len()),
    ))
}

/// Sample points in the open interval `(−0.9, 0.9)`.
pub fn pfaff_grid() -> Vec<f64> {
    (1..180).map(|i| -0.9 + 0.01 * i as f64).collect()
}

fn check_pfaff(l_max: i64) -> Result<Outcome> {
    let blocks = BlockLabel::full_blocks(l_max);
    let grid = pfaff_grid();
    let err = max_error(&blocks, |&b| {
        let p = HypergeomParams::for_block(b);
        let mut m = 0.0f64;
        for &z in &grid {
            let (t, d) = (gauss_2f1(&p, z)?, direct_series(&p, z)?);
            m = m.max((t - d).abs() / t.abs().max(f64::MIN_POSITIVE));
        }
        Ok(m)
    })?;
    Ok(Outcome::bounded(
        err,
        1e-12,
        format!("{} blocks x {} points", blocks.len(), grid.len()),
    ))
}

fn check_ln2() -> Result<Outcome> {
    let f = gauss_2f1(&HypergeomParams::from_ints(1, 1, 2), -1.0)?;
    Ok(Outcome::bounded(
        (f - std::f64::consts::LN_2).abs(),
        1e-12,
        "F(1,1;2;-1)".into(),
    ))
}

fn check_c_infinity(l_max: i64) -> Result<Outcome> {
    let blocks = BlockLabel::full_blocks(l_max);
    let values: Vec<Result<(f64, f64, bool)>> = blocks
        .par_iter()
        .map(|&b| boundary_value(b, 1.0).map(|v| (v.relative_error, v.leakage, v.in_top_eigenspace)))
        .collect();
    let (mut err, mut leak, mut top) = (0.0f64, 0.0f64, true);
    for v in values {
        let (e, l, t) = v?;
        err = if e.is_nan() { f64::NAN } else { err.max(e) };
        leak = leak.max(l);
        top &= t;
    }
    let mut out = Outcome::bounded(
        err,
        1e-4,
        format!("{} blocks, largest off-top leakage {leak:.1e}", blocks.len()),
    );
    out.passed &= top;
    Ok(out)
}

fn check_gamma_ratio(l_max: i64) -> Result<Outcome> {
    let blocks = BlockLabel::full_blocks(l_max);
    let fails = collect_failures(&blocks, |&b| {
        Ok((!c_infinity_matches_gamma_ratio(b)?).then(|| format!("{b}")))
    })?;
    Ok(Outcome::exact(fails, blocks.len()))
}

fn check_indicial(l_max: i64) -> Result<Outcome> {
    let ls: Vec<i64> = (4..=l_max).collect();
    let fails = collect_failures(&ls, |&l| {
        let d = indicial_data(BlockLabel::new(l % 2, l))?;
        let ok = d.origin_exponents.len() == 8
            && d.regular_exponent == Some(l - 4)
            && d.rejected_exponent == -l - 6
            && d.decay_at_infinity == q(4);
        Ok((!ok).then(|| format!("L={l}: {:?}", d.origin_exponents)))
    })?;
    Ok(Outcome::exact(fails, ls.len()))
}

fn check_dirac_square() -> Result<Outcome> {
    let s = dirac_sq_order0_spectrum();
    let mut fails = Vec::new();
    if s.min_eigenvalue != q(6) {
        fails.push(format!("minimum {}", s.min_eigenvalue));
    }
    if !s.lambda_min.is_zero() {
        fails.push(format!("lambda_min {}", s.lambda_min));
    }
    if s.scalar_shift != qf(-6, 1) {
        fails.push(format!("scalar shift {}", s.scalar_shift));
    }
    Ok(Outcome::exact(fails, 3))
}

fn check_critical_weights() -> Result<Outcome> {
    let (lo, hi) = critical_weights(0.0)?;
    Ok(Outcome::bounded(
        lo.abs().max((hi - 4.0).abs()),
        0.0,
        format!("({lo}, {hi})"),
    ))
}

/// `(punctured, global)` kernel dimensions from the weight-pair count alone.
pub fn kernel_dims_by_count(label: BlockLabel) -> (usize, usize) {
    let v = (label.l + 1) as usize;
    match weight_pair_count(label, InvariantTarget::S4) {
        5 => (2 * v, v),
        0 => (0, 0),
        _ => (v, 0),
    }
}

fn check_kernel_dims(k_max: i64, l_max: i64) -> Result<Outcome> {
    let labels = all_labels(k_max, l_max);
    let fails = collect_failures(&labels, |&b| {
        let got = (kernel_dim(b, Domain::Punctured), kernel_dim(b, Domain::Global));
        let want = kernel_dims_by_count(b);
        Ok((got != want).then(|| format!("{b}: {got:?} != {want:?}")))
    })?;
    Ok(Outcome::exact(fails, labels.len()))
}

/// L = 0 is excluded: there the rank count finds no solution at K = ±2.
fn check_constrained_count(l_max: i64) -> Result<Outcome> {
    let labels: Vec<BlockLabel> = BlockLabel::sweep(l_max, |l| -l - 6..l + 7)
        .into_iter()
        .filter(|b| b.l >= 1)
        .collect();
    let fails = collect_failures(&labels, |&b| {
        let per_copy = kernel_dim(b, Domain::Punctured) / (b.l + 1) as usize;
        let n = constrained_solution_count(b).unwrap_or(0);
        Ok((n != per_copy).then(|| format!("{b}: {n} != {per_copy}")))
    })?;
    Ok(Outcome::exact(fails, labels.len()))
}

fn check_harmonic_targets(k_max: i64, l_max: i64) -> Result<Outcome> {
    let labels = all_labels(k_max, l_max);
    let fails = collect_failures(&labels, |&b| {
        let g = kernel_dim(b, Domain::Global) > 0;
        let tag = classify_block(b).has(Tag::HarmonicTarget);
        let full = b.is_full();
        Ok((g != tag || tag != full).then(|| format!("{b}")))
    })?;
    Ok(Outcome::exact(fails, labels.len()))
}

fn check_contacto(l_max: i64) -> Result<Outcome> {
    let labels: Vec<BlockLabel> = BlockLabel::sweep(l_max, |l| -l..l + 1)
        .into_iter()
        .filter(BlockLabel::parity_ok)
        .collect();
    let fails = collect_failures(&labels, |&b| {
        let nonzero = !contacto_action(b)?.is_zero();
        Ok((nonzero != (b.k <= b.l - 4)).then(|| format!("{b}")))
    })?;
    Ok(Outcome::exact(fails, labels.len()))
}

fn check_partition(l_max: i64) -> Result<Outcome> {
    let report = audit_report(l_max)?;
    let fails: Vec<String> = report.partition_failures.iter().map(|b| b.to_string()).collect();
    let tested = BlockLabel::sweep(l_max, |l| -l - 4..l - 3)
        .into_iter()
        .filter(|b| is_phi_admissible(*b))
        .count();
    Ok(Outcome::exact(fails, tested))
}

fn check_ledger(l_max: i64) -> Result<Outcome> {
    let report = audit_report(l_max)?;
    let fails: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.balanced)
        .map(|r| {
            format!(
                "(+-{},{}): {} != {} + {}",
                r.k, r.l, r.cr_deformations, r.contacto_gauge, r.harmonic_targets
            )
        })
        .collect();
    Ok(Outcome::exact(fails, report.rows.len()))
}

fn check_projections(l_max: i64) -> Result<Outcome> {
    let mut s = DeformationSpectrum::new(false);
    for (i, b) in BlockLabel::sweep(l_max, |l| -l - 4..l - 3)
        .into_iter()
        .filter(|b| is_phi_admissible(*b))
        .enumerate()
    {
        s.insert(b, num_complex::Complex64::new(1.0 + i as f64, -(i as f64)))?;
    }
    let (pb, pt) = (bland_project(&s), tangent_project(&s));
    let mut fails = Vec::new();
    if bland_project(&pb) != pb || tangent_project(&pt) != pt {
        fails.push("not idempotent".to_string());
    }
    if bland_project(&pt) != tangent_project(&pb) {
        fails.push("projections do not commute".to_string());
    }
    if !bland_project(&pt).is_empty() {
        fails.push("fillable and tangent supports overlap".to_string());
    }
    if pb.len() + pt.len() != s.len() {
        fails.push(format!("{} + {} blocks do not exhaust {}", pb.len(), pt.len(), s.len()));
    }
    Ok(Outcome::exact(fails, s.len()))
}

/// Whether `ops` differs from the freshly built operators in OpB.
pub fn opb_is_corrupted(ops: &WeightOperators) -> Result<bool> {
    Ok(weight_operators(ops.label)?.opb != ops.opb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("ode".parse::<Suite>().unwrap(), Suite::Ode);
        assert!("everything".parse::<Suite>().is_err());
        assert_eq!("corrupt-opb".parse::<Fault>().unwrap(), Fault::CorruptOpB);
    }

    #[test]
    fn eigenvalue_table_at_8() {
        assert_eq!(
            expected_eigenvalue_table(8),
            vec![(4, 7), (6, -5), (6, 9), (8, -7), (8, 11), (10, -9), (10, 13), (12, -11)]
        );
    }

    #[test]
    fn count_oracle_examples() {
        assert_eq!(weight_pair_count(BlockLabel::new(6, 8), InvariantTarget::S4), 4);
        assert_eq!(kernel_dims_by_count(BlockLabel::new(0, 8)), (18, 9));
        assert_eq!(kernel_dims_by_count(BlockLabel::new(13, 8)), (0, 0));
    }

    #[test]
    fn fault_breaks_claims() {
        let ops = operators(BlockLabel::new(0, 8), Some(Fault::CorruptOpB)).unwrap();
        assert!(opb_is_corrupted(&ops).unwrap());
        assert!(claim_identities(&ops).unwrap().iter().any(|c| !c.holds));
    }
}
