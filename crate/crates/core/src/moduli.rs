//! Block-level bookkeeping for CR deformations of the sphere: kernel
//! dimensions, tags, the Bland and tangent filters, the contactomorphism
//! action, and the dimension audit.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{q, QMatrix, Q};
use crate::invariants::{invariant_dim, weight_operators, BlockLabel, InvariantTarget};
use crate::rep_core::{make_irrep, Sl2Module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tag {
    ParityEmpty,
    KeFillable,
    HarmonicTarget,
    Gauge,
    SdTangent,
    Void,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::ParityEmpty => "PARITY_EMPTY",
            Tag::KeFillable => "KE_FILLABLE",
            Tag::HarmonicTarget => "HARMONIC_TARGET",
            Tag::Gauge => "GAUGE",
            Tag::SdTangent => "SD_TANGENT",
            Tag::Void => "VOID",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// `CH² ∖ {0}`.
    Punctured,
    Global,
}

/// Dimension of the space of `L²`-at-infinity Dirac solutions with values in
/// `S₄⁻` coming from the block.
pub fn kernel_dim(label: BlockLabel, domain: Domain) -> usize {
    if !label.parity_ok() {
        return 0;
    }
    let (k, l) = (label.k.abs(), label.l);
    let v = (l + 1) as usize;
    match domain {
        Domain::Punctured if k <= l - 4 => 2 * v,
        Domain::Punctured if k <= l + 4 => v,
        Domain::Global if k <= l - 4 => v,
        _ => 0,
    }
}

/// `n_σ − rank B(u)` at `u = 3`, where `√(1+u) = 2` keeps everything exact:
/// the number of constrained solutions of the radial system per copy of
/// `V_ρ`.  `None` for empty blocks.
pub fn constrained_solution_count(label: BlockLabel) -> Option<usize> {
    let ops = weight_operators(label).ok()?;
    let split = ops.block_split();
    let b = &split.b;
    let u = q(3);
    let m: QMatrix = &(&b.constant + &b.linear.scale(&u)) + &b.sqrt.scale(&q(2));
    Some(ops.n_sigma - m.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDims {
    pub s4: usize,
    pub s2: usize,
    pub c4: usize,
    pub c0: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockClassification {
    pub label: BlockLabel,
    pub dims: BlockDims,
    pub kernel_dim_punctured: usize,
    pub kernel_dim_global: usize,
    pub tags: Vec<Tag>,
}

impl BlockClassification {
    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }

    pub fn tag_string(&self) -> String {
        self.tags.iter().map(Tag::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn tags_for(label: BlockLabel) -> Vec<Tag> {
    if !label.parity_ok() {
        return vec![Tag::ParityEmpty];
    }
    let (k, l) = (label.k.abs(), label.l);
    let mut tags = Vec::new();
    if k <= l {
        tags.push(Tag::KeFillable);
    }
    if k <= l - 4 {
        tags.push(Tag::HarmonicTarget);
    }
    if l - 4 < k && k <= l {
        tags.push(Tag::Gauge);
    }
    if k == l + 2 || k == l + 4 {
        tags.push(Tag::SdTangent);
    }
    if k > l + 4 {
        tags.push(Tag::Void);
    }
    tags
}

pub fn classify_block(label: BlockLabel) -> BlockClassification {
    BlockClassification {
        label,
        dims: BlockDims {
            s4: invariant_dim(label, InvariantTarget::S4),
            s2: invariant_dim(label, InvariantTarget::S2),
            c4: invariant_dim(label, InvariantTarget::C4),
            c0: invariant_dim(label, InvariantTarget::C0),
        },
        kernel_dim_punctured: kernel_dim(label, Domain::Punctured),
        kernel_dim_global: kernel_dim(label, Domain::Global),
        tags: tags_for(label),
    }
}

/// Every block with `L ≤ l_max`, `|K| ≤ k_max`, sorted by `(L, K)`.
pub fn classify_sweep(l_max: i64, k_max: i64) -> Vec<BlockClassification> {
    let labels = BlockLabel::sweep(l_max, |_| -k_max..k_max + 1);
    let mut rows: Vec<BlockClassification> = labels.par_iter().map(|&b| classify_block(b)).collect();
    rows.sort_by_key(|r| r.label);
    rows
}

/// `f ↦ −i ρ(Y)² f` on the weight `−K` vector of `S_L`, landing in the
/// weight `−K−4` line of the CR-deformation block at the same label.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactoAction {
    pub label: BlockLabel,
    pub source_weight: i64,
    pub target_weight: i64,
    /// Coordinates of `ρ(Y)² v` in the lowering basis of `S_L`.
    #[serde(skip)]
    pub image: Vec<Q>,
    pub scalar_re: f64,
    pub scalar_im: f64,
}

impl ContactoAction {
    pub fn is_zero(&self) -> bool {
        self.scalar_re == 0.0 && self.scalar_im == 0.0
    }

    pub fn scalar(&self) -> Complex64 {
        Complex64::new(self.scalar_re, self.scalar_im)
    }
}

pub fn contacto_action(label: BlockLabel) -> Result<ContactoAction> {
    if !label.parity_ok() || label.k.abs() > label.l {
        return Err(Error::NoFunctionBlock(label));
    }
    let sl = make_irrep(label.l as usize);
    let n = (label.l + 1) as usize;
    let mut v = vec![Q::from_integer(0.into()); n];
    v[((label.l + label.k) / 2) as usize] = q(1);
    let image = sl.y().mul_vec(&sl.y().mul_vec(&v));
    let target = -label.k - 4;
    let scalar = if image.iter().all(|x| *x == q(0)) {
        Complex64::new(0.0, 0.0)
    } else {
        // Y v_j = v_{j+1} in the lowering basis, so the coefficient is 1.
        Complex64::new(0.0, -1.0)
    };
    Ok(ContactoAction {
        label,
        source_weight: -label.k,
        target_weight: target,
        image,
        scalar_re: scalar.re,
        scalar_im: scalar.im,
    })
}

/// The φ-component of a CR deformation, block by block.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DeformationSpectrum {
    coefficients: BTreeMap<BlockLabel, Complex64>,
    /// Real deformation: the coefficient at `(K, L)` with `K > 0` is the
    /// conjugate of the one at `(−K, L)`, and only `K ≤ 0` is stored.
    real: bool,
}

/// Blocks that can carry a φ-coefficient: `−L−4 ≤ K ≤ L−4` with parity.
pub fn is_phi_admissible(label: BlockLabel) -> bool {
    invariant_dim(label, InvariantTarget::C4) == 1
}

impl DeformationSpectrum {
    pub fn new(real: bool) -> Self {
        DeformationSpectrum {
            coefficients: BTreeMap::new(),
            real,
        }
    }

    pub fn from_entries(real: bool, entries: impl IntoIterator<Item = (BlockLabel, Complex64)>) -> Result<Self> {
        let mut s = Self::new(real);
        for (label, c) in entries {
            s.insert(label, c)?;
        }
        Ok(s)
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Adds to the coefficient at `label`; zero results are dropped.
    pub fn insert(&mut self, label: BlockLabel, c: Complex64) -> Result<()> {
        if !is_phi_admissible(label) {
            return Err(Error::InvalidSpectrum(format!(
                "block {label} carries no CR deformation (needs -L-4 <= K <= L-4 with parity)"
            )));
        }
        if self.real && label.k > 0 {
            return Err(Error::InvalidSpectrum(format!(
                "real spectrum stores K <= 0 representatives only, got {label}"
            )));
        }
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidSpectrum(format!("non-finite coefficient at {label}")));
        }
        let e = self.coefficients.entry(label).or_default();
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.coefficients.remove(&label);
        }
        Ok(())
    }

    /// Coefficient at any admissible block, resolving the reality pairing.
    pub fn coefficient(&self, label: BlockLabel) -> Complex64 {
        if self.real && label.k > 0 {
            return self
                .coefficients
                .get(&BlockLabel::new(-label.k, label.l))
                .map_or(Complex64::default(), |c| c.conj());
        }
        self.coefficients.get(&label).copied().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &BlockLabel> {
        self.coefficients.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BlockLabel, &Complex64)> {
        self.coefficients.iter()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn filtered(&self, keep: impl Fn(BlockLabel) -> bool) -> Self {
        DeformationSpectrum {
            coefficients: self
                .coefficients
                .iter()
                .filter(|(b, _)| keep(**b))
                .map(|(b, c)| (*b, *c))
                .collect(),
            real: self.real,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SpectrumFile::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: SpectrumFile = serde_json::from_str(s)?;
        file.try_into()
    }
}

/// Zeroes every coefficient with `|K| > L`.
pub fn bland_project(s: &DeformationSpectrum) -> DeformationSpectrum {
    s.filtered(|b| b.k.abs() <= b.l)
}

/// Keeps exactly the blocks with `|K| ∈ {L+2, L+4}`.
pub fn tangent_project(s: &DeformationSpectrum) -> DeformationSpectrum {
    s.filtered(|b| b.k.abs() == b.l + 2 || b.k.abs() == b.l + 4)
}

pub fn is_fillable(s: &DeformationSpectrum) -> bool {
    bland_project(s) == *s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "L")]
    pub l: i64,
    pub re: f64,
    pub im: f64,
}

/// On-disk form: a flat record list, or an object adding the reality flag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumFile {
    Flat(Vec<SpectrumRecord>),
    Flagged {
        real: bool,
        coefficients: Vec<SpectrumRecord>,
    },
}

impl From<&DeformationSpectrum> for SpectrumFile {
    fn from(s: &DeformationSpectrum) -> Self {
        let records: Vec<SpectrumRecord> = s
            .iter()
            .map(|(b, c)| SpectrumRecord {
                k: b.k,
                l: b.l,
                re: c.re,
                im: c.im,
            })
            .collect();
        if s.real {
            SpectrumFile::Flagged {
                real: true,
                coefficients: records,
            }
        } else {
            SpectrumFile::Flat(records)
        }
    }
}

impl TryFrom<SpectrumFile> for DeformationSpectrum {
    type Error = Error;

    fn try_from(f: SpectrumFile) -> Result<Self> {
        let (real, records) = match f {
            SpectrumFile::Flat(r) => (false, r),
            SpectrumFile::Flagged { real, coefficients } => (real, coefficients),
        };
        let mut s = DeformationSpectrum::new(real);
        for r in records {
            if r.l < 0 {
                return Err(Error::InvalidSpectrum(format!("negative L = {}", r.l)));
            }
            s.insert(BlockLabel::new(r.k, r.l), Complex64::new(r.re, r.im))?;
        }
        Ok(s)
    }
}

/// Real-dimension ledger of one `±K` pair with `|K| ≤ L−4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "L")]
    pub l: i64,
    pub cr_deformations: usize,
    pub contacto_gauge: usize,
    pub harmonic_targets: usize,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub l_max: i64,
    pub rows: Vec<AuditRow>,
    /// φ-admissible blocks not carrying exactly one of KE_FILLABLE,
    /// SD_TANGENT, or carrying GAUGE outside KE_FILLABLE.
    pub partition_failures: Vec<BlockLabel>,
}

impl AuditReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.balanced).count() + self.partition_failures.len()
    }
}

fn audit_row(k: i64, l: i64) -> AuditRow {
    let (plus, minus) = (BlockLabel::new(k, l), BlockLabel::new(-k, l));
    let v = (l + 1) as usize;
    let dim = |b, t| invariant_dim(b, t);
    let cr = 2 * (dim(plus, InvariantTarget::C4) + dim(minus, InvariantTarget::C4)) * v;
    let gauge = (dim(plus, InvariantTarget::C0) + dim(minus, InvariantTarget::C0)) * v;
    let target = kernel_dim(plus, Domain::Global) + kernel_dim(minus, Domain::Global);
    AuditRow {
        k,
        l,
        cr_deformations: cr,
        contacto_gauge: gauge,
        harmonic_targets: target,
        balanced: cr == gauge + target && cr == 4 * v && target == 2 * v,
    }
}

fn partition_ok(label: BlockLabel) -> bool {
    let c = classify_block(label);
    let ke = c.has(Tag::KeFillable);
    let sd = c.has(Tag::SdTangent);
    let sd_rule = sd == (label.k.abs() == label.l + 2 || label.k.abs() == label.l + 4);
    (ke != sd) && (!c.has(Tag::Gauge) || ke) && !c.has(Tag::Void) && sd_rule
}

/// Builds the ledger without failing on mismatches.
pub fn audit_report(l_max: i64) -> Result<AuditReport> {
    if l_max < 4 {
        return Err(Error::InvalidParameter(format!("L_max = {l_max} must be >= 4")));
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for l in 0..=l_max {
        for k in (0..=l - 4).filter(|k| (k - l) % 2 == 0) {
            rows.push(audit_row(k, l));
        }
        for k in -l - 4..=l - 4 {
            let b = BlockLabel::new(k, l);
            if is_phi_admissible(b) && !partition_ok(b) {
                failures.push(b);
            }
        }
    }
    Ok(AuditReport {
        l_max,
        rows,
        partition_failures: failures,
    })
}

/// As [`audit_report`], failing on any ledger mismatch.
pub fn transversality_audit(l_max: i64) -> Result<AuditReport> {
    let report = audit_report(l_max)?;
    if report.mismatches() > 0 {
        return Err(Error::InvalidSpectrum(format!(
            "dimension ledger has {} mismatches",
            report.mismatches()
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(k: i64, l: i64) -> BlockLabel {
        BlockLabel::new(k, l)
    }

    #[test]
    fn kernel_dims() {
        assert_eq!(kernel_dim(b(0, 8), Domain::Global), 9);
        assert_eq!(kernel_dim(b(6, 8), Domain::Global), 0);
        assert_eq!(kernel_dim(b(6, 8), Domain::Punctured), 9);
        assert_eq!(kernel_dim(b(13, 8), Domain::Punctured), 0);
    }

    #[test]
    fn constrained_count_matches_punctured_kernel() {
        // L = 0 is degenerate: the rank count gives 0 at K = ±2.
        assert_eq!(constrained_solution_count(b(2, 0)), Some(0));
        for l in 1..=10 {
            for k in -l - 6..=l + 6 {
                let label = b(k, l);
                let per_copy = kernel_dim(label, Domain::Punctured) / (l + 1) as usize;
                let n = constrained_solution_count(label).unwrap_or(0);
                assert_eq!(n, per_copy, "{label}");
            }
        }
    }

    #[test]
    fn tags() {
        assert_eq!(tags_for(b(6, 4)), vec![Tag::SdTangent]);
        assert_eq!(tags_for(b(0, 8)), vec![Tag::KeFillable, Tag::HarmonicTarget]);
        assert_eq!(tags_for(b(4, 4)), vec![Tag::KeFillable, Tag::Gauge]);
        assert_eq!(tags_for(b(3, 8)), vec![Tag::ParityEmpty]);
        assert_eq!(classify_block(b(0, 8)).tag_string(), "KE_FILLABLE,HARMONIC_TARGET");
    }

    #[test]
    fn contacto() {
        assert!(!contacto_action(b(0, 4)).unwrap().is_zero());
        assert!(contacto_action(b(4, 4)).unwrap().is_zero());
        assert!(matches!(contacto_action(b(-6, 4)), Err(Error::NoFunctionBlock(_))));
        assert_eq!(contacto_action(b(0, 4)).unwrap().scalar(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn projections() {
        let one = Complex64::new(1.0, 0.0);
        let s = DeformationSpectrum::from_entries(false, [(b(-6, 4), one)]).unwrap();
        assert!(bland_project(&s).is_empty());
        let s = DeformationSpectrum::from_entries(false, [(b(0, 8), one)]).unwrap();
        assert_eq!(bland_project(&s), s);
        assert!(tangent_project(&s).is_empty());
        let s = DeformationSpectrum::from_entries(false, [(b(-6, 4), one), (b(-8, 4), one)]).unwrap();
        assert_eq!(tangent_project(&s), s);
        assert!(DeformationSpectrum::from_entries(false, [(b(8, 4), one)]).is_err());
    }

    #[test]
    fn json_forms() {
        let s = DeformationSpectrum::from_json(r#"[{"K":0,"L":8,"re":1.5,"im":-2}]"#).unwrap();
        assert_eq!(s.coefficient(b(0, 8)), Complex64::new(1.5, -2.0));
        let r =
            DeformationSpectrum::from_json(r#"{"real":true,"coefficients":[{"K":-2,"L":8,"re":1,"im":1}]}"#).unwrap();
        assert_eq!(r.coefficient(b(2, 8)), Complex64::new(1.0, -1.0));
        assert_eq!(DeformationSpectrum::from_json(&r.to_json().unwrap()).unwrap(), r);
    }

    #[test]
    fn audit_l8() {
        let rep = transversality_audit(8).unwrap();
        let row = rep.rows.iter().find(|r| r.k == 0 && r.l == 8).unwrap();
        assert_eq!(
            (row.cr_deformations, row.contacto_gauge, row.harmonic_targets),
            (36, 18, 18)
        );
        assert!(audit_report(3).is_err());
    }
}
