//! S¹-invariant bases of a Fourier block and the algebraic operators of the
//! radial Dirac operator on them.
//!
//! The ambient space is `S₁ ⊗ S₃ ⊗ S_L` (spinor factor, `S₃`, block factor).
//! With `e`, `f` the highest weight vectors of `S₁`, `S₃` and `g` the weight-K
//! vector of `S_L`,
//!
//! ```text
//! s₄ = e⊗f,  s_{4−2j} = Y^j s₄,     t₂ = e⊗Yf − 3 Ye⊗f,  t_{2−2j} = Y^j t₂,
//! σ₄ = s₄⊗Y²g, σ₂ = s₂⊗Yg, σ₀ = s₀⊗g, σ₋₂ = s₋₂⊗Xg, σ₋₄ = s₋₄⊗X²g,
//! τ₂ = t₂⊗Yg,  τ₀ = t₀⊗g,  τ₋₂ = t₋₂⊗Xg.
//! ```
//!
//! The invariant vectors are the total H-weight K vectors; the S_L weight
//! `k₁` and the S₄ weight `k₂` satisfy `k₁ + k₂ = K`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{q, qf, to_f64, vec_is_zero, QMatrix, Q};
use crate::rep_core::{decompose, isotypic_projector, make_irrep, tensor_chain, Sl2Module, WeightModule};

/// A Fourier block `C_K ⊗ S_L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockLabel {
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "L")]
    pub l: i64,
}

impl BlockLabel {
    pub fn new(k: i64, l: i64) -> Self {
        assert!(l >= 0, "L must be a natural number");
        BlockLabel { k, l }
    }

    pub fn parity_ok(&self) -> bool {
        (self.k - self.l).rem_euclid(2) == 0
    }

    /// `|K| ≤ L − 4` with matching parity: the full 5 + 3 basis exists.
    pub fn is_full(&self) -> bool {
        self.parity_ok() && self.k.abs() <= self.l - 4
    }

    /// Blocks ordered by `(L, K)`, the order of every emitted table.
    pub fn sweep(l_max: i64, k_range: impl Fn(i64) -> Range<i64>) -> Vec<BlockLabel> {
        (0..=l_max)
            .flat_map(|l| k_range(l).map(move |k| BlockLabel::new(k, l)))
            .collect()
    }

    /// Every block with `|K| ≤ L − 4` and matching parity, `L ≤ l_max`.
    pub fn full_blocks(l_max: i64) -> Vec<BlockLabel> {
        Self::sweep(l_max, |l| -(l - 4)..(l - 4) + 1)
            .into_iter()
            .filter(BlockLabel::is_full)
            .collect()
    }
}

impl Ord for BlockLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.l, self.k).cmp(&(other.l, other.k))
    }
}

impl PartialOrd for BlockLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InvariantTarget {
    /// The spinor bundle factor S₄ (weights 0, ±2, ±4).
    S4,
    /// The S₂ factor receiving the constraint (weights 0, ±2).
    S2,
    /// CR deformation blocks (weight 4).
    C4,
    /// Function blocks (weight 0).
    C0,
}

impl InvariantTarget {
    pub fn weights(self) -> &'static [i64] {
        match self {
            InvariantTarget::S4 => &[4, 2, 0, -2, -4],
            InvariantTarget::S2 => &[2, 0, -2],
            InvariantTarget::C4 => &[4],
            InvariantTarget::C0 => &[0],
        }
    }
}

/// `#{k₂ : |K + k₂| ≤ L, K + k₂ ≡ L (mod 2)}` over the target's weights.
pub fn invariant_dim(label: BlockLabel, target: InvariantTarget) -> usize {
    target
        .weights()
        .iter()
        .filter(|&&k2| {
            let w = label.k + k2;
            w.abs() <= label.l && (w - label.l).rem_euclid(2) == 0
        })
        .count()
}

/// Which invariant vector a basis slot holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisSlot {
    Sigma(i64),
    Tau(i64),
}

impl BasisSlot {
    pub const SIGMA_WEIGHTS: [i64; 5] = [4, 2, 0, -2, -4];
    pub const TAU_WEIGHTS: [i64; 3] = [2, 0, -2];

    /// Weight of the S₄ (or S₂) component.
    pub fn weight(self) -> i64 {
        match self {
            BasisSlot::Sigma(w) | BasisSlot::Tau(w) => w,
        }
    }

    pub fn is_sigma(self) -> bool {
        matches!(self, BasisSlot::Sigma(_))
    }
}

impl fmt::Display for BasisSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSlot::Sigma(w) => write!(f, "sigma{w}"),
            BasisSlot::Tau(w) => write!(f, "tau{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    pub label: BlockLabel,
    /// σ₄, σ₂, σ₀, σ₋₂, σ₋₄ in `S₁⊗S₃⊗S_L` coordinates; `None` when absent.
    pub sigma: [Option<Vec<Q>>; 5],
    /// τ₂, τ₀, τ₋₂.
    pub tau: [Option<Vec<Q>>; 3],
    pub parity_empty: bool,
}

impl InvariantBasis {
    /// Present vectors, σ's first, in decreasing weight.
    pub fn present(&self) -> Vec<(BasisSlot, &Vec<Q>)> {
        let sig = BasisSlot::SIGMA_WEIGHTS
            .iter()
            .zip(&self.sigma)
            .filter_map(|(&w, v)| v.as_ref().map(|v| (BasisSlot::Sigma(w), v)));
        let tau = BasisSlot::TAU_WEIGHTS
            .iter()
            .zip(&self.tau)
            .filter_map(|(&w, v)| v.as_ref().map(|v| (BasisSlot::Tau(w), v)));
        sig.chain(tau).collect()
    }

    pub fn sigma_count(&self) -> usize {
        self.sigma.iter().flatten().count()
    }

    pub fn tau_count(&self) -> usize {
        self.tau.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma_count() + self.tau_count() == 0
    }
}

/// `S₁ ⊗ S₃` with `s_k`, `t_k` as coordinate vectors of length 8.
struct SpinorFactor {
    s: Vec<Vec<Q>>,
    t: Vec<Vec<Q>>,
}

fn spinor_factor() -> SpinorFactor {
    let st = tensor_chain(&[1, 3]);
    // index = i1 * 4 + i3
    let mut s4 = vec![Q::zero(); 8];
    s4[0] = q(1);
    let mut t2 = vec![Q::zero(); 8];
    t2[1] = q(1);
    t2[4] = q(-3);
    let mut s = vec![s4];
    for _ in 0..4 {
        let next = st.y().mul_vec(s.last().unwrap());
        s.push(next);
    }
    let mut t = vec![t2];
    for _ in 0..2 {
        let next = st.y().mul_vec(t.last().unwrap());
        t.push(next);
    }
    SpinorFactor { s, t }
}

fn kron_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = q(1);
    v
}

/// The S_L factor paired with an S₄ (or S₂) weight `k`: `Y^{k/2} g`, `g`,
/// `X^{|k|/2} g` when the weight-K vector `g` exists, and otherwise the
/// lowering-basis vector of weight `K − k`.
fn block_factor(label: BlockLabel, sl: &WeightModule, k: i64) -> Option<Vec<Q>> {
    let l = label.l;
    let n = (l + 1) as usize;
    let target = label.k - k;
    if target.abs() > l || (target - l).rem_euclid(2) != 0 {
        return None;
    }
    if label.k.abs() <= l {
        let mut v = unit(n, ((l - label.k) / 2) as usize);
        let op = if k > 0 { sl.y() } else { sl.x() };
        for _ in 0..(k.abs() / 2) {
            v = op.mul_vec(&v);
        }
        (!vec_is_zero(&v)).then_some(v)
    } else {
        Some(unit(n, ((l - target) / 2) as usize))
    }
}

pub fn invariant_basis(label: BlockLabel) -> InvariantBasis {
    let mut basis = InvariantBasis {
        label,
        sigma: Default::default(),
        tau: Default::default(),
        parity_empty: !label.parity_ok(),
    };
    if basis.parity_empty {
        return basis;
    }
    let sl = make_irrep(label.l as usize);
    let sp = spinor_factor();
    for (i, &w) in BasisSlot::SIGMA_WEIGHTS.iter().enumerate() {
        basis.sigma[i] = block_factor(label, &sl, w).map(|g| kron_vec(&sp.s[i], &g));
    }
    for (i, &w) in BasisSlot::TAU_WEIGHTS.iter().enumerate() {
        basis.tau[i] = block_factor(label, &sl, w).map(|g| kron_vec(&sp.t[i], &g));
    }
    basis
}

/// `M(u) = constant + u·linear + √(1+u)·sqrt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZerothOrder {
    pub constant: QMatrix,
    pub linear: QMatrix,
    pub sqrt: QMatrix,
}

impl ZerothOrder {
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> ZerothOrder {
        let r: Vec<usize> = rows.collect();
        let c: Vec<usize> = cols.collect();
        ZerothOrder {
            constant: self.constant.select(&r, &c),
            linear: self.linear.select(&r, &c),
            sqrt: self.sqrt.select(&r, &c),
        }
    }

    pub fn eval(&self, u: f64) -> Vec<Vec<f64>> {
        let s = (1.0 + u).sqrt();
        let (c, l, r) = (self.constant.to_f64(), self.linear.to_f64(), self.sqrt.to_f64());
        c.iter()
            .zip(&l)
            .zip(&r)
            .map(|((cr, lr), rr)| cr.iter().zip(lr).zip(rr).map(|((a, b), d)| a + u * b + s * d).collect())
            .collect()
    }
}

/// The 2×2 block form `[[A, C], [B, D]]` with respect to `S₄ ⊕ S₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSplit {
    /// S₄ → S₄.
    pub a: ZerothOrder,
    /// S₄ → S₂, the constraint block.
    pub b: ZerothOrder,
    /// S₂ → S₄.
    pub c: ZerothOrder,
    /// S₂ → S₂.
    pub d: ZerothOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOperators {
    pub label: BlockLabel,
    pub slots: Vec<BasisSlot>,
    pub n_sigma: usize,
    /// `ρ⁻(H)ρ₃⁻(H)`.
    pub opa: QMatrix,
    /// `ρ⁻(H)ρ(H)`.
    pub opb: QMatrix,
    /// `ρ⁻(X)ρ(Y) + ρ⁻(Y)ρ(X)`.
    pub opc: QMatrix,
}

impl WeightOperators {
    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn index(&self, slot: BasisSlot) -> Option<usize> {
        self.slots.iter().position(|&s| s == slot)
    }

    /// Zeroth-order part of `P = −2u(1+u)∂_u − 6 − (11/2)u + (u/2)A − B − 2√(1+u)C`.
    pub fn zeroth_order(&self) -> ZerothOrder {
        let n = self.dim();
        ZerothOrder {
            constant: &QMatrix::scalar(n, q(-6)) - &self.opb,
            linear: &QMatrix::scalar(n, qf(-11, 2)) + &self.opa.scale(&qf(1, 2)),
            sqrt: self.opc.scale(&q(-2)),
        }
    }

    pub fn block_split(&self) -> BlockSplit {
        let m = self.zeroth_order();
        let (s, n) = (self.n_sigma, self.dim());
        BlockSplit {
            a: m.block(0..s, 0..s),
            b: m.block(s..n, 0..s),
            c: m.block(0..s, s..n),
            d: m.block(s..n, s..n),
        }
    }

    /// Image of a basis vector as coordinates in the present basis.
    pub fn column(&self, op: &QMatrix, slot: BasisSlot) -> Option<Vec<Q>> {
        self.index(slot).map(|j| op.column(j))
    }
}

/// Exact matrices of OpA, OpB, OpC on the span of the present σ's and τ's.
pub fn weight_operators(label: BlockLabel) -> Result<WeightOperators> {
    let basis = invariant_basis(label);
    if basis.is_empty() {
        return Err(Error::EmptyBlock(label));
    }
    let present = basis.present();
    let slots: Vec<BasisSlot> = present.iter().map(|(s, _)| *s).collect();
    let vectors: Vec<Vec<Q>> = present.iter().map(|(_, v)| (*v).clone()).collect();
    let s1 = make_irrep(1);
    let s3 = make_irrep(3);
    let sl = make_irrep(label.l as usize);
    let i3 = QMatrix::identity(4);
    let il = QMatrix::identity(sl.dim());
    let amb_a = s1.h().kron(s3.h()).kron(&il);
    let amb_b = s1.h().kron(&i3).kron(sl.h());
    let amb_c = &s1.x().kron(&i3).kron(sl.y()) + &s1.y().kron(&i3).kron(sl.x());
    let frame = QMatrix::from_columns(vectors[0].len(), &vectors);
    let restrict = |op: &QMatrix| -> Result<QMatrix> {
        let cols: Vec<Vec<Q>> = vectors
            .iter()
            .map(|v| frame.solve(&op.mul_vec(v)))
            .collect::<Result<_>>()?;
        Ok(QMatrix::from_columns(vectors.len(), &cols))
    };
    Ok(WeightOperators {
        label,
        n_sigma: basis.sigma_count(),
        opa: restrict(&amb_a)?,
        opb: restrict(&amb_b)?,
        opc: restrict(&amb_c)?,
        slots,
    })
}

/// One of the nine closed-form operator identities on σ₄, σ₂, σ₀.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub name: String,
    pub holds: bool,
}

fn combo(ops: &WeightOperators, terms: &[(BasisSlot, Q)]) -> Option<Vec<Q>> {
    let mut v = vec![Q::zero(); ops.dim()];
    for (slot, c) in terms {
        v[ops.index(*slot)?] += c;
    }
    Some(v)
}

/// Checks the nine identities for `A`, `B`, `C` on σ₄, σ₂, σ₀.
/// Requires a full block.
pub fn claim_identities(ops: &WeightOperators) -> Result<Vec<ClaimCheck>> {
    let label = ops.label;
    if !label.is_full() {
        return Err(Error::Inadmissible {
            label,
            reason: "identities need |K| <= L-4 with matching parity".into(),
        });
    }
    use BasisSlot::{Sigma, Tau};
    let (k, l) = (label.k, label.l);
    let c4 = qf(l * (l + 2) - (k - 2) * (k - 4), 16);
    let c2 = qf(l * (l + 2) - k * (k - 2), 16);
    let half = qf(1, 2);
    let quarter = qf(1, 4);
    let expected: Vec<(&str, &QMatrix, BasisSlot, Vec<(BasisSlot, Q)>)> = vec![
        ("A sigma4 = 3 sigma4", &ops.opa, Sigma(4), vec![(Sigma(4), q(3))]),
        ("A sigma2 = tau2", &ops.opa, Sigma(2), vec![(Tau(2), q(1))]),
        ("A sigma0 = -sigma0", &ops.opa, Sigma(0), vec![(Sigma(0), q(-1))]),
        (
            "B sigma4 = (K-4) sigma4",
            &ops.opb,
            Sigma(4),
            vec![(Sigma(4), q(k - 4))],
        ),
        (
            "B sigma2 = (K-2)/2 (sigma2 + tau2)",
            &ops.opb,
            Sigma(2),
            vec![(Sigma(2), qf(k - 2, 2)), (Tau(2), qf(k - 2, 2))],
        ),
        ("B sigma0 = K tau0", &ops.opb, Sigma(0), vec![(Tau(0), q(k))]),
        (
            "C sigma4 = c4 (sigma2 - tau2)",
            &ops.opc,
            Sigma(4),
            vec![(Sigma(2), c4.clone()), (Tau(2), -c4)],
        ),
        (
            "C sigma2 = sigma4 + c2 (sigma0 - tau0)",
            &ops.opc,
            Sigma(2),
            vec![(Sigma(4), q(1)), (Sigma(0), c2.clone()), (Tau(0), -c2)],
        ),
        (
            "C sigma0 = (3 sigma2 + tau2)/2 + (sigma-2 - tau-2)/4",
            &ops.opc,
            Sigma(0),
            vec![
                (Sigma(2), &half * q(3)),
                (Tau(2), half),
                (Sigma(-2), quarter.clone()),
                (Tau(-2), -quarter),
            ],
        ),
    ];
    Ok(expected
        .into_iter()
        .map(|(name, op, slot, terms)| {
            let holds = match (ops.column(op, slot), combo(ops, &terms)) {
                (Some(got), Some(want)) => got == want,
                _ => false,
            };
            ClaimCheck {
                name: name.to_string(),
                holds,
            }
        })
        .collect())
}

/// Verifies that every σ lies in the S₄ part of `S₁⊗S₃` and every τ in the
/// S₂ part, using the isotypic projectors of the decomposition.
pub fn isotypic_membership(basis: &InvariantBasis) -> Result<bool> {
    let st = tensor_chain(&[1, 3]);
    let pieces = decompose(&st);
    let p4 = isotypic_projector(&st, &pieces, 4)?;
    let p2 = isotypic_projector(&st, &pieces, 2)?;
    let inner = (basis.label.l + 1) as usize;
    let sigma_ok = basis
        .sigma
        .iter()
        .flatten()
        .all(|v| vec_is_zero(&apply_first_factor(&p2, v, inner)));
    let tau_ok = basis
        .tau
        .iter()
        .flatten()
        .all(|v| vec_is_zero(&apply_first_factor(&p4, v, inner)));
    Ok(sigma_ok && tau_ok)
}

/// Applies `P ⊗ 1` to a vector of `V ⊗ W` with `dim W = inner`.
fn apply_first_factor(p: &QMatrix, v: &[Q], inner: usize) -> Vec<Q> {
    let outer = p.rows();
    let mut out = vec![Q::zero(); v.len()];
    for i in 0..outer {
        for j in 0..outer {
            let c = p.get(i, j);
            if c.is_zero() {
                continue;
            }
            for w in 0..inner {
                let x = &v[j * inner + w];
                if !x.is_zero() {
                    out[i * inner + w] += c * x;
                }
            }
        }
    }
    out
}

/// H-weights `(k₁, k₂)` of a present basis vector: the S_L weight and the
/// S₄/S₂ weight.  Returns `None` if the vector is not a pure weight vector.
pub fn weight_split(basis: &InvariantBasis, slot: BasisSlot) -> Option<(i64, i64)> {
    let v = basis.present().into_iter().find(|(s, _)| *s == slot).map(|(_, v)| v)?;
    let l = basis.label.l;
    let inner = (l + 1) as usize;
    let st_weights = tensor_chain(&[1, 3]).weights();
    let mut seen: Option<(i64, i64)> = None;
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (outer, j) = (idx / inner, idx % inner);
        let w = (l - 2 * j as i64, st_weights[outer]);
        match seen {
            None => seen = Some(w),
            Some(prev) if prev != w => return None,
            _ => {}
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma1Spectrum {
    /// `−ρ⁻(σ₁)ρ₃⁻(σ₁) = H ⊗ H` on `S₁ ⊗ S₃`.
    pub matrix: QMatrix,
    pub max_eigenvalue: Q,
    pub min_eigenvalue: Q,
    pub eigenspace: Vec<Vec<Q>>,
    /// Whether the top eigenspace is `span(s₄, s₋₄)` inside S₄.
    pub eigenspace_in_s4: bool,
}

impl Sigma1Spectrum {
    pub fn eigenspace_dim(&self) -> usize {
        self.eigenspace.len()
    }
}

pub fn sigma1_pairing_spectrum() -> Sigma1Spectrum {
    let (s1, s3) = (make_irrep(1), make_irrep(3));
    let matrix = s1.h().kron(s3.h());
    let diag = matrix.diagonal_entries().expect("H ⊗ H is diagonal");
    let max = diag.iter().max().cloned().unwrap();
    let min = diag.iter().min().cloned().unwrap();
    let shifted = &matrix - &QMatrix::scalar(8, max.clone());
    let eigenspace = shifted.nullspace();
    let sp = spinor_factor();
    let frame = QMatrix::from_columns(8, &[sp.s[0].clone(), sp.s[4].clone()]);
    let in_s4 = eigenspace.len() == 2 && eigenspace.iter().all(|v| frame.solve(v).is_ok());
    Sigma1Spectrum {
        matrix,
        max_eigenvalue: max,
        min_eigenvalue: min,
        eigenspace,
        eigenspace_in_s4: in_s4,
    }
}

/// `f64` view of an exact matrix entry, for reports.
pub fn entry_f64(m: &QMatrix, i: usize, j: usize) -> f64 {
    to_f64(m.get(i, j))
}
