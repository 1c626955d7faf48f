//! Exact rational scalars, dense matrices and the row-reduction routines
//! shared by the representation-theory layers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` (or `p` for integers), the wire form used for exact fields.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn to_f64(x: &Q) -> f64 {
    // BigRational::to_f64 rounds correctly for the magnitudes we meet.
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact binomial coefficient C(n, k) for 0 ≤ k ≤ n, zero otherwise.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format_q(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Q) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Returns `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Q> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Q::zero());
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = i == j;
                let v = self.get(i, j);
                if (expect && *v != c) || (!expect && !v.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn diagonal_entries(&self) -> Option<Vec<Q>> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect())
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = vec![Q::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`, first factor most significant.
    pub fn kron(&self, rhs: &QMatrix) -> QMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = QMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &QMatrix) -> QMatrix {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in col..m.cols {
                    if m.get(row, j).is_zero() {
                        continue;
                    }
                    let v = m.get(r, j) - &f * m.get(row, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column taken in
    /// increasing column order; the free coordinate is set to one.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self · x = b`; errors when `b` is not in the column space.
    /// When the columns are dependent the free coordinates are set to zero.
    pub fn solve(&self, b: &[Q]) -> Result<Vec<Q>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch in solve");
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::NotInSpan);
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Extracts the sub-matrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut out = QMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| to_f64(self.get(i, j))).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.matmul(rhs)
    }
}

pub fn vec_is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

/// If `v = c·w` for some scalar `c`, returns `c`.
pub fn proportionality(v: &[Q], w: &[Q]) -> Option<Q> {
    let idx = w.iter().position(|x| !x.is_zero())?;
    let c = &v[idx] / &w[idx];
    v.iter().zip(w).all(|(a, b)| *a == &c * b).then_some(c)
}

/// Rational roots, with multiplicity, of a polynomial given low→high.
/// Returns `None` if the polynomial does not split over Q.
pub fn rational_roots(coeffs: &[Q]) -> Option<Vec<Q>> {
    let mut poly: Vec<Q> = coeffs.to_vec();
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots = Vec::new();
    // Strip zero roots first.
    while poly.len() > 1 && poly[0].is_zero() {
        roots.push(Q::zero());
        poly.remove(0);
    }
    while poly.len() > 1 {
        // Clear denominators.
        let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = poly
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = ints.last().cloned().unwrap();
        let constant = ints[0].clone();
        let root = divisors(&constant).into_iter().find_map(|p| {
            divisors(&lead).into_iter().find_map(|qd| {
                [Q::new(p.clone(), qd.clone()), Q::new(-p.clone(), qd)]
                    .into_iter()
                    .find(|cand| eval_poly(&poly, cand).is_zero())
            })
        })?;
        poly = deflate(&poly, &root);
        roots.push(root);
    }
    roots.sort();
    Some(roots)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let limit = n.to_u64().unwrap_or(u64::MAX);
    assert!(limit < 1 << 40, "rational root search on a huge constant term");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= limit {
        if limit % d == 0 {
            out.push(BigInt::from(d));
            if d * d != limit {
                out.push(BigInt::from(limit / d));
            }
        }
        d += 1;
    }
    out.sort();
    out
}

pub fn eval_poly(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn deflate(coeffs: &[Q], root: &Q) -> Vec<Q> {
    // Synthetic division by (x - root).
    let n = coeffs.len();
    let mut out = vec![Q::zero(); n - 1];
    let mut carry = Q::zero();
    for i in (1..n).rev() {
        carry = &coeffs[i] + carry * root;
        out[i - 1] = carry.clone();
    }
    out
}

/// Characteristic polynomial det(xI − M), low→high, via Faddeev–LeVerrier.
pub fn characteristic_polynomial(m: &QMatrix) -> Vec<Q> {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = QMatrix::zeros(n, n);
    for k in 1..=n {
        let shifted = &mk + &QMatrix::scalar(n, coeffs[n - k + 1].clone());
        mk = m.matmul(&shifted);
        let trace = (0..n).fold(Q::zero(), |acc, i| acc + mk.get(i, i));
        coeffs[n - k] = -trace / q(k as i64);
    }
    coeffs
}

/// Eigenvalues of a matrix whose characteristic polynomial splits over Q.
pub fn rational_eigenvalues(m: &QMatrix) -> Option<Vec<Q>> {
    rational_roots(&characteristic_polynomial(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_nullspace_and_solve() {
        let m = QMatrix::from_columns(2, &[vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(vec_is_zero(&m.mul_vec(&ns[0])));
        let x = m.solve(&[q(3), q(7)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(3), q(7)]);
    }

    #[test]
    fn solve_rejects_out_of_span() {
        let m = QMatrix::from_columns(2, &[vec![q(1), q(1)]]);
        assert!(matches!(m.solve(&[q(1), q(2)]), Err(Error::NotInSpan)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_columns(2, &[vec![q(2), q(1)], vec![q(1), q(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), QMatrix::identity(2));
    }

    #[test]
    fn eigenvalues_of_small_matrix() {
        let m = QMatrix::from_columns(2, &[vec![q(1), q(2)], vec![q(2), q(1)]]);
        assert_eq!(rational_eigenvalues(&m).unwrap(), vec![q(-1), q(3)]);
        let rot = QMatrix::from_columns(2, &[vec![q(0), q(1)], vec![q(-1), q(0)]]);
        assert!(rational_eigenvalues(&rot).is_none());
    }

    #[test]
    fn q_text_form() {
        assert_eq!(format_q(&qf(10, 4)), "5/2");
        assert_eq!(format_q(&q(-3)), "-3");
        assert_eq!(parse_q("5/2"), Some(qf(5, 2)));
        assert_eq!(parse_q("21"), Some(q(21)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(10, 6), BigInt::from(210));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
