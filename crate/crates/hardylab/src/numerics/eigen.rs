//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! Each sweep visits every off-diagonal pair (p, q) and applies a complex
//! Givens rotation that annihilates the (p, q) entry. For the matrix sizes in
//! this crate (dimension <= ~32) the method converges in a handful of sweeps
//! and delivers eigenvectors accurate to near machine precision.

use crate::error::{Error, Result};
use crate::numerics::matrix::{c64, ComplexMatrix, Ket};
use crate::tol::TOL_EIGEN;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix, sorted by
/// eigenvalue in descending order.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, Vec<Ket>)> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("eigendecomposition needs a square matrix".into()));
    }
    if !m.is_hermitian(1e-8) {
        return Err(Error::DimensionMismatch("matrix is not Hermitian".into()));
    }
    let n = m.rows();
    // Work on the Hermitian average to wash out tiny asymmetries in the input.
    let mut a = m.add(&m.adjoint()).scale(c64(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < TOL_EIGEN {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, Ket)> = (0..n).map(|i| (a.get(i, i).re, v.column(i))).collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    Ok(pairs.into_iter().unzip())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating a[p][q], accumulated into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let b = apq.norm();
    if b < 1e-300 {
        return;
    }
    let phase = apq / b; // a[p][q] = b * phase
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // Columns transform as col_p' = c*col_p - s*conj(phase)*col_q,
    //                     col_q' = s*phase*col_p + c*col_q.
    let su = phase * s;
    let n = a.rows();
    // A <- J^dagger A J applied as row and column updates.
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * c - akq * su.conj());
        a.set(k, q, akp * su + akq * c);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * c - aqk * su);
        a.set(q, k, apk * su.conj() + aqk * c);
    }
    // Clean the annihilated pair to keep the Hermitian structure exact.
    a.set(p, q, c64(0.0, 0.0));
    a.set(q, p, c64(0.0, 0.0));
    let app_new = a.get(p, p);
    let aqq_new = a.get(q, q);
    a.set(p, p, c64(app_new.re, 0.0));
    a.set(q, q, c64(aqq_new.re, 0.0));
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * c - vkq * su.conj());
        v.set(k, q, vkp * su + vkq * c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::projector;

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c64(2.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)],
        )
        .unwrap();
        let (vals, _) = hermitian_eigen(&m).unwrap();
        assert!((vals[0] - 2.0).abs() < 1e-12 && (vals[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn projector_spectrum_is_zero_one() {
        let v = Ket::new(vec![c64(0.6, 0.0), c64(0.0, 0.8)]).unwrap();
        let p = projector(&v).unwrap();
        let (vals, vecs) = hermitian_eigen(&p).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!(vals[1].abs() < 1e-12);
        // Eigenvector of eigenvalue 1 reproduces v up to phase.
        assert!((vecs[0].overlap_sqr(&v) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        // V diag(w) V^dagger must reproduce the input.
        let mut s = 42u64;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        let n = 6;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c64(next(), 0.0));
            for j in (i + 1)..n {
                let z = c64(next(), next());
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        let mut rec = ComplexMatrix::zeros(n, n);
        for (w, u) in vals.iter().zip(vecs.iter()) {
            rec = rec.add(&projector(u).unwrap().scale(c64(*w, 0.0)));
        }
        assert!(rec.sub(&m).frobenius_norm() < 1e-10);
        // Orthonormality of the eigenbasis.
        for i in 0..n {
            for j in 0..n {
                let ip = vecs[i].inner(&vecs[j]);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c64(expected, 0.0)).norm() < 1e-10);
            }
        }
    }
}
