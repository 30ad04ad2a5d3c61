//! Dense complex vectors and matrices.
//!
//! Everything in this crate lives in dimension at most a few dozen, so the
//! representation is a plain row-major `Vec<Complex64>` with no sparsity or
//! blocking. Values are immutable after construction and all operations are
//! pure functions.

use crate::error::{Error, Result};
use crate::tol::{TOL_HERM, TOL_NORM};

pub type Complex64 = num_complex::Complex<f64>;

/// Shorthand for a complex number from real and imaginary parts.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A column vector in C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    entries: Vec<Complex64>,
}

impl Ket {
    /// Build a ket, rejecting non-finite entries.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("ket must have dimension >= 1".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Ket { entries })
    }

    /// Ket with real entries.
    pub fn from_real(reals: &[f64]) -> Result<Self> {
        Ket::new(reals.iter().map(|&r| c64(r, 0.0)).collect())
    }

    /// Computational basis state |index> in dimension `dim`.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut entries = vec![c64(0.0, 0.0); dim];
        entries[index] = c64(1.0, 0.0);
        Ket { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// True when the norm deviates from 1 by at most `tol`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Rescaled copy with unit norm. Errors on the zero vector.
    pub fn normalized(&self) -> Result<Ket> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::NotNormalized(1.0));
        }
        Ok(self.scale(c64(1.0 / n, 0.0)))
    }

    /// Inner product 〈self|other〉 (conjugate-linear in `self`).
    pub fn inner(&self, other: &Ket) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Tensor product |self〉⊗|other〉 with the left factor as the slow index.
    pub fn tensor(&self, other: &Ket) -> Ket {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        Ket { entries }
    }

    pub fn scale(&self, factor: Complex64) -> Ket {
        Ket {
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Ket) -> Ket {
        assert_eq!(self.dim(), other.dim(), "addition dimension mismatch");
        Ket {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Ket) -> Ket {
        self.add(&other.scale(c64(-1.0, 0.0)))
    }

    /// |〈self|other〉|², the Born overlap.
    pub fn overlap_sqr(&self, other: &Ket) -> f64 {
        self.inner(other).norm_sqr()
    }
}

/// A dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix data length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![c64(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, c64(1.0, 0.0));
        }
        m
    }

    /// Square matrix from nested rows of (re, im) pairs; test and fixture helper.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        ComplexMatrix::new(r, c, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.cols + j] = value;
    }

    /// Column `j` as a ket.
    pub fn column(&self, j: usize) -> Ket {
        Ket {
            entries: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.add(&other.scale(c64(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Ket) -> Ket {
        assert_eq!(self.cols, v.dim(), "apply dimension mismatch");
        let entries = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v.get(j))
                    .sum::<Complex64>()
            })
            .collect();
        Ket { entries }
    }

    /// 〈v|M|v〉 as a real number (meaningful for Hermitian `self`).
    pub fn expectation(&self, v: &Ket) -> f64 {
        v.inner(&self.apply(v)).re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        self.sub(&self.adjoint()).frobenius_norm() <= tol
    }

    /// Projector check: Hermitian and idempotent within `tol`.
    pub fn is_projector(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.mul(self).sub(self).frobenius_norm() <= tol
    }

    /// Residual max(‖M−M†‖, ‖M²−M‖); zero for an exact projector.
    pub fn projector_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let herm = self.sub(&self.adjoint()).frobenius_norm();
        let idem = self.mul(self).sub(self).frobenius_norm();
        herm.max(idem)
    }
}

/// Tensor (Kronecker) product with standard ordering: the left factor is the
/// slow index, so `kron(A, B)[(i1*rB + i2), (j1*cB + j2)] = A[i1,j1] * B[i2,j2]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let f = a.get(i1, j1);
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for i2 in 0..b.rows() {
                for j2 in 0..b.cols() {
                    out.set(i1 * b.rows() + i2, j1 * b.cols() + j2, f * b.get(i2, j2));
                }
            }
        }
    }
    out
}

/// Rank-one projector |v〉〈v| of a normalized ket.
pub fn projector(v: &Ket) -> Result<ComplexMatrix> {
    let dev = (v.norm() - 1.0).abs();
    if dev > TOL_NORM {
        return Err(Error::NotNormalized(dev));
    }
    let d = v.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out.set(i, j, v.get(i) * v.get(j).conj());
        }
    }
    Ok(out)
}

/// Sum of |v〉〈v| over a frame of orthonormal kets.
pub fn projector_onto_span(frame: &[Ket]) -> Result<ComplexMatrix> {
    let d = frame
        .first()
        .map(Ket::dim)
        .ok_or_else(|| Error::DimensionMismatch("empty frame".into()))?;
    let mut out = ComplexMatrix::zeros(d, d);
    for v in frame {
        if v.dim() != d {
            return Err(Error::DimensionMismatch("frame kets differ in dimension".into()));
        }
        out = out.add(&projector(v)?);
    }
    Ok(out)
}

/// Validate that `m` is a projector within `TOL_HERM`, reporting the residual.
pub fn require_projector(m: &ComplexMatrix) -> Result<()> {
    let res = m.projector_residual();
    if res > TOL_HERM {
        return Err(Error::NotProjector(res));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)])
            .unwrap()
    }

    // Independent oracle: naive triple-loop product used to cross-check kron.
    fn naive_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Vec<Complex64> {
        let mut out = vec![c64(0.0, 0.0); a.rows() * b.cols()];
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                for k in 0..a.cols() {
                    out[i * b.cols() + j] += a.get(i, k) * b.get(k, j);
                }
            }
        }
        out
    }

    #[test]
    fn kron_identity_case() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = kron(&i2, &i2);
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_pauli_z_pair_is_diagonal_signs() {
        let zz = kron(&pauli_z(), &pauli_z());
        let expected = [1.0, -1.0, -1.0, 1.0];
        for (i, e) in expected.iter().enumerate() {
            assert!((zz.get(i, i) - c64(*e, 0.0)).norm() < 1e-15);
            for j in 0..4 {
                if j != i {
                    assert_eq!(zz.get(i, j), c64(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn kron_mixed_product_matches_direct_multiplication() {
        // kron(A,B) * kron(C,D) == kron(A*C, B*D), checked against the naive oracle.
        let mk = |seed: u64| {
            let mut s = seed;
            let mut next = move || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) as f64 / (1u64 << 31) as f64) - 1.0
            };
            ComplexMatrix::new(2, 2, (0..4).map(|_| c64(next(), next())).collect()).unwrap()
        };
        let (a, b, c, d) = (mk(1), mk(2), mk(3), mk(4));
        let lhs = kron(&a, &b).mul(&kron(&c, &d));
        let rhs = kron(&a.mul(&c), &b.mul(&d));
        let diff = lhs.sub(&rhs).frobenius_norm();
        assert!(diff < 1e-12, "mixed product residual {diff}");
        // and ComplexMatrix::mul itself agrees with the oracle
        let ac = a.mul(&c);
        for (z, w) in ac.data.iter().zip(naive_mul(&a, &c)) {
            assert!((z - w).norm() < 1e-14);
        }
    }

    #[test]
    fn projector_of_basis_state() {
        let p = projector(&Ket::basis_state(2, 0)).unwrap();
        assert_eq!(p.get(0, 0), c64(1.0, 0.0));
        assert_eq!(p.get(1, 1), c64(0.0, 0.0));
    }

    #[test]
    fn projector_of_plus_state_is_half_everywhere() {
        let v = Ket::from_real(&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap();
        let p = projector(&v).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((p.get(i, j) - c64(0.5, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn projector_rejects_unnormalized() {
        let v = Ket::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(projector(&v), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn ket_constructor_rejects_nan() {
        assert!(matches!(Ket::new(vec![c64(f64::NAN, 0.0)]), Err(Error::NonFinite)));
    }
}
