//! Finite-dimensional sl₂ modules with exact rational matrices.
//!
//! Every module is presented in an unnormalized lowering basis
//! `v_j = Y^j v_0`, so that `H`, `X` and `Y` are integer matrices:
//!
//! ```text
//! H v_j = (L - 2j) v_j,   Y v_j = v_{j+1},   X v_j = j (L - j + 1) v_{j-1}.
//! ```
//!
//! The `σᵢ` of su₂ enter only through `σ₁ = iH`, `Y = ½(σ₂ + iσ₃)` and
//! `X = ½(−σ₂ + iσ₃)`; all quadratic expressions in the `σᵢ` used here are
//! rewritten in terms of `H`, `X`, `Y` so no complex entries ever appear.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{proportionality, q, rational_eigenvalues, QMatrix, Q};

/// Anything carrying an sl₂ action by explicit matrices.
pub trait Sl2Module {
    fn h(&self) -> &QMatrix;
    fn x(&self) -> &QMatrix;
    fn y(&self) -> &QMatrix;
    /// Irreducible factors, in tensor order.
    fn factors(&self) -> Vec<WeightModule>;

    fn dim(&self) -> usize {
        self.h().rows()
    }

    /// H-weights of the basis vectors (the action of `H` is diagonal).
    fn weights(&self) -> Vec<i64> {
        let h = self.h();
        (0..h.rows())
            .map(|i| h.get(i, i).to_integer().to_i64().expect("weights fit in i64"))
            .collect()
    }

    /// Checks `[H,X] = 2X`, `[H,Y] = −2Y`, `[X,Y] = H` exactly.
    fn satisfies_sl2_relations(&self) -> bool {
        let (h, x, y) = (self.h(), self.x(), self.y());
        h.commutator(x) == x.scale(&q(2)) && h.commutator(y) == y.scale(&q(-2)) && x.commutator(y) == *h
    }
}

/// The irreducible module S_L of dimension L+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    highest_weight: usize,
    h: QMatrix,
    x: QMatrix,
    y: QMatrix,
}

impl WeightModule {
    pub fn highest_weight(&self) -> usize {
        self.highest_weight
    }
}

impl Sl2Module for WeightModule {
    fn h(&self) -> &QMatrix {
        &self.h
    }
    fn x(&self) -> &QMatrix {
        &self.x
    }
    fn y(&self) -> &QMatrix {
        &self.y
    }
    fn factors(&self) -> Vec<WeightModule> {
        vec![self.clone()]
    }
}

/// Tensor product of irreducible modules with the Leibniz action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModule {
    factors: Vec<WeightModule>,
    h: QMatrix,
    x: QMatrix,
    y: QMatrix,
}

impl Sl2Module for TensorModule {
    fn h(&self) -> &QMatrix {
        &self.h
    }
    fn x(&self) -> &QMatrix {
        &self.x
    }
    fn y(&self) -> &QMatrix {
        &self.y
    }
    fn factors(&self) -> Vec<WeightModule> {
        self.factors.clone()
    }
}

/// One irreducible summand: a highest-weight vector in the ambient module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicPiece {
    pub highest_weight: usize,
    pub hw_vector: Vec<Q>,
    /// Position among the pieces sharing this highest weight.
    pub multiplicity_index: usize,
}

pub fn make_irrep(highest_weight: usize) -> WeightModule {
    let l = highest_weight as i64;
    let n = highest_weight + 1;
    let mut h = QMatrix::zeros(n, n);
    let mut x = QMatrix::zeros(n, n);
    let mut y = QMatrix::zeros(n, n);
    for j in 0..n {
        let jj = j as i64;
        h.set(j, j, q(l - 2 * jj));
        if j + 1 < n {
            y.set(j + 1, j, q(1));
        }
        if j > 0 {
            x.set(j - 1, j, q(jj * (l - jj + 1)));
        }
    }
    WeightModule {
        highest_weight,
        h,
        x,
        y,
    }
}

/// The matrix `H² + 2H + 4YX`, which is the action of `−Σσᵢ²`.
pub fn casimir_matrix<M: Sl2Module + ?Sized>(m: &M) -> QMatrix {
    let h = m.h();
    let h2 = h.matmul(h);
    let yx = m.y().matmul(m.x());
    &(&h2 + &h.scale(&q(2))) + &yx.scale(&q(4))
}

/// Scalar value of the Casimir; errors if the module is not isotypic.
pub fn casimir<M: Sl2Module + ?Sized>(m: &M) -> Result<Q> {
    casimir_matrix(m).as_scalar().ok_or(Error::NotScalar)
}

pub fn tensor<A: Sl2Module + ?Sized, B: Sl2Module + ?Sized>(m1: &A, m2: &B) -> TensorModule {
    let i1 = QMatrix::identity(m1.dim());
    let i2 = QMatrix::identity(m2.dim());
    let leibniz = |a: &QMatrix, b: &QMatrix| &a.kron(&i2) + &i1.kron(b);
    let mut factors = m1.factors();
    factors.extend(m2.factors());
    TensorModule {
        factors,
        h: leibniz(m1.h(), m2.h()),
        x: leibniz(m1.x(), m2.x()),
        y: leibniz(m1.y(), m2.y()),
    }
}

/// Convenience: the tensor product of a chain of irreducibles.
pub fn tensor_chain(highest_weights: &[usize]) -> TensorModule {
    let mut iter = highest_weights.iter();
    let first = make_irrep(*iter.next().expect("non-empty chain"));
    let mut acc = TensorModule {
        factors: vec![first.clone()],
        h: first.h.clone(),
        x: first.x.clone(),
        y: first.y.clone(),
    };
    for &l in iter {
        acc = tensor(&acc, &make_irrep(l));
    }
    acc
}

/// Highest-weight vectors of every irreducible summand.
///
/// On each weight space of non-negative weight μ, `ker X` is computed by
/// exact row reduction with coordinates in increasing basis order; its basis
/// vectors give the pieces of highest weight μ in that order.  The result is
/// sorted by decreasing highest weight.
pub fn decompose<M: Sl2Module + ?Sized>(t: &M) -> Vec<IsotypicPiece> {
    let weights = t.weights();
    let dim = weights.len();
    let mut mus: Vec<i64> = weights.iter().copied().filter(|&w| w >= 0).collect();
    mus.sort_unstable_by(|a, b| b.cmp(a));
    mus.dedup();
    let mut pieces = Vec::new();
    for mu in mus {
        let space: Vec<usize> = (0..dim).filter(|&i| weights[i] == mu).collect();
        let target: Vec<usize> = (0..dim).filter(|&i| weights[i] == mu + 2).collect();
        let kernel = if target.is_empty() {
            (0..space.len())
                .map(|k| {
                    let mut v = vec![Q::zero(); space.len()];
                    v[k] = q(1);
                    v
                })
                .collect()
        } else {
            t.x().select(&target, &space).nullspace()
        };
        for (idx, local) in kernel.into_iter().enumerate() {
            let mut hw = vec![Q::zero(); dim];
            for (k, &i) in space.iter().enumerate() {
                hw[i] = local[k].clone();
            }
            pieces.push(IsotypicPiece {
                highest_weight: mu as usize,
                hw_vector: hw,
                multiplicity_index: idx,
            });
        }
    }
    pieces
}

/// Multiset of highest weights, in decomposition order.
pub fn highest_weights(pieces: &[IsotypicPiece]) -> Vec<usize> {
    pieces.iter().map(|p| p.highest_weight).collect()
}

/// Basis adapted to a decomposition: for each piece, `Y^k hw` for
/// `k = 0..=μ`.  Returns the basis vectors and, for each, its piece index.
pub fn adapted_basis<M: Sl2Module + ?Sized>(t: &M, pieces: &[IsotypicPiece]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut basis = Vec::new();
    let mut owner = Vec::new();
    for (p, piece) in pieces.iter().enumerate() {
        let mut v = piece.hw_vector.clone();
        for _ in 0..=piece.highest_weight {
            basis.push(v.clone());
            owner.push(p);
            v = t.y().mul_vec(&v);
        }
    }
    (basis, owner)
}

/// Projector onto the sum of the summands with highest weight `mu`.
pub fn isotypic_projector<M: Sl2Module + ?Sized>(t: &M, pieces: &[IsotypicPiece], mu: usize) -> Result<QMatrix> {
    let (basis, owner) = adapted_basis(t, pieces);
    let b = QMatrix::from_columns(t.dim(), &basis);
    let inv = b.inverse()?;
    let mask: Vec<Q> = owner
        .iter()
        .map(|&p| {
            if pieces[p].highest_weight == mu {
                q(1)
            } else {
                Q::zero()
            }
        })
        .collect();
    Ok(b.matmul(&QMatrix::diagonal(&mask)).matmul(&inv))
}

/// `Σ ρ₁(σᵢ)ρ₂(σᵢ)` on `m1 ⊗ m2`, realized as `−(H⊗H + 2X⊗Y + 2Y⊗X)` and
/// cross-checked against `½(C(ρ₁) + C(ρ₂) − C(ρ₁⊗ρ₂))`.
pub fn pairing_op<A: Sl2Module + ?Sized, B: Sl2Module + ?Sized>(m1: &A, m2: &B) -> Result<QMatrix> {
    let direct = pairing_formula(m1, m2);
    let i1 = QMatrix::identity(m1.dim());
    let i2 = QMatrix::identity(m2.dim());
    let c_sum = &casimir_matrix(m1).kron(&i2) + &i1.kron(&casimir_matrix(m2));
    let c_prod = casimir_matrix(&tensor(m1, m2));
    let via_casimir = (&c_sum - &c_prod).scale(&Q::new(1.into(), 2.into()));
    if via_casimir != direct {
        return Err(Error::PairingMismatch);
    }
    Ok(direct)
}

fn pairing_formula<A: Sl2Module + ?Sized, B: Sl2Module + ?Sized>(m1: &A, m2: &B) -> QMatrix {
    let hh = m1.h().kron(m2.h());
    let xy = m1.x().kron(m2.y());
    let yx = m1.y().kron(m2.x());
    let sum = &(&hh + &xy.scale(&q(2))) + &yx.scale(&q(2));
    -&sum
}

/// Eigenvalue of an sl₂-equivariant operator on one summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceEigenvalue {
    pub highest_weight: usize,
    pub eigenvalue: Q,
    /// Dimension of the summand, μ + 1.
    pub multiplicity: usize,
}

/// Spectrum of an operator commuting with sl₂, read off on the highest
/// weight spaces.  Within a weight μ with several summands the operator is
/// restricted to span(hw vectors) and diagonalized exactly.
pub fn piece_spectrum<M: Sl2Module + ?Sized>(
    t: &M,
    op: &QMatrix,
    pieces: &[IsotypicPiece],
) -> Result<Vec<PieceEigenvalue>> {
    let mut out = Vec::new();
    let mut mus: Vec<usize> = pieces.iter().map(|p| p.highest_weight).collect();
    mus.dedup();
    for mu in mus {
        let hws: Vec<Vec<Q>> = pieces
            .iter()
            .filter(|p| p.highest_weight == mu)
            .map(|p| p.hw_vector.clone())
            .collect();
        let basis = QMatrix::from_columns(t.dim(), &hws);
        let images: Vec<Vec<Q>> = hws.iter().map(|v| basis.solve(&op.mul_vec(v))).collect::<Result<_>>()?;
        let restricted = QMatrix::from_columns(hws.len(), &images);
        let eig = rational_eigenvalues(&restricted).ok_or(Error::NotInSpan)?;
        for e in eig {
            out.push(PieceEigenvalue {
                highest_weight: mu,
                eigenvalue: e,
                multiplicity: mu + 1,
            });
        }
    }
    Ok(out)
}

/// Eigenvalue of `op` on a vector, when the vector is an eigenvector.
pub fn eigenvalue_on(op: &QMatrix, v: &[Q]) -> Option<Q> {
    proportionality(&op.mul_vec(v), v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rep() {
        let m = make_irrep(0);
        assert_eq!(m.h(), &QMatrix::zeros(1, 1));
        assert!(m.x().is_zero() && m.y().is_zero());
        assert_eq!(casimir(&m).unwrap(), q(0));
    }

    #[test]
    fn s2_matrices() {
        let m = make_irrep(2);
        assert_eq!(m.h().diagonal_entries().unwrap(), vec![q(2), q(0), q(-2)]);
        assert_eq!(m.x().get(0, 1), &q(2));
        assert_eq!(m.x().get(1, 2), &q(2));
        assert!(m.satisfies_sl2_relations());
    }

    #[test]
    fn s3_weights() {
        let m = make_irrep(3);
        assert_eq!(m.weights(), vec![3, 1, -1, -3]);
        assert_eq!(casimir(&m).unwrap(), q(15));
        assert_eq!(casimir(&make_irrep(5)).unwrap(), q(35));
    }

    #[test]
    fn reducible_casimir_is_rejected() {
        let t = tensor_chain(&[1, 1]);
        assert!(matches!(casimir(&t), Err(Error::NotScalar)));
    }

    #[test]
    fn tensor_dims() {
        assert_eq!(tensor_chain(&[1, 3]).dim(), 8);
        assert_eq!(tensor_chain(&[1, 3, 8]).dim(), 72);
        let t = tensor_chain(&[0, 5]);
        assert_eq!(highest_weights(&decompose(&t)), vec![5]);
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(highest_weights(&decompose(&tensor_chain(&[1, 3]))), vec![4, 2]);
        assert_eq!(highest_weights(&decompose(&tensor_chain(&[3, 8]))), vec![11, 9, 7, 5]);
        assert_eq!(
            highest_weights(&decompose(&tensor_chain(&[1, 3, 8]))),
            vec![12, 10, 10, 8, 8, 6, 6, 4]
        );
    }

    #[test]
    fn pairing_s1_s3() {
        let (s1, s3) = (make_irrep(1), make_irrep(3));
        let op = pairing_op(&s1, &s3).unwrap();
        let t = tensor(&s1, &s3);
        let spec = piece_spectrum(&t, &op, &decompose(&t)).unwrap();
        assert_eq!(spec[0].highest_weight, 4);
        assert_eq!(spec[0].eigenvalue, q(-3));
        assert_eq!(spec[1].highest_weight, 2);
        assert_eq!(spec[1].eigenvalue, q(5));
    }

    #[test]
    fn pairing_with_trivial_is_zero() {
        assert!(pairing_op(&make_irrep(1), &make_irrep(0)).unwrap().is_zero());
    }

    #[test]
    fn projector_is_idempotent() {
        let t = tensor_chain(&[1, 3]);
        let pieces = decompose(&t);
        let p4 = isotypic_projector(&t, &pieces, 4).unwrap();
        let p2 = isotypic_projector(&t, &pieces, 2).unwrap();
        assert_eq!(p4.matmul(&p4), p4);
        assert!(p4.matmul(&p2).is_zero());
        assert_eq!(&p4 + &p2, QMatrix::identity(8));
    }
}
