//! Spin component operators n̂·S for arbitrary half-integer spin, built from
//! the standard angular-momentum ladder matrices.

use crate::error::{Error, Result};
use crate::numerics::{c64, hermitian_eigen, projector, ComplexMatrix};
use crate::quantum::GeneralMeasurement;
use crate::tol::TOL_NORM;

/// The (2s+1)-dimensional Hermitian matrix n̂·S for spin `s` along a unit
/// 3-vector `direction`. Basis order is m = s, s−1, …, −s, so the z-axis
/// operator is diag(s, s−1, …, −s).
pub fn spin_operator(s: f64, direction: [f64; 3]) -> Result<ComplexMatrix> {
    let doubled = 2.0 * s;
    if !(doubled.is_finite() && doubled > 0.0 && (doubled - doubled.round()).abs() < 1e-12) {
        return Err(Error::BadSpin(s));
    }
    let norm = (direction[0] * direction[0]
        + direction[1] * direction[1]
        + direction[2] * direction[2])
        .sqrt();
    if (norm - 1.0).abs() > TOL_NORM.max(1e-9) {
        return Err(Error::BadDirection(norm));
    }
    let d = (doubled.round() as usize) + 1;
    let m_of = |i: usize| s - i as f64;

    // S+ |s,m> = sqrt(s(s+1) - m(m+1)) |s,m+1>; with descending m the raising
    // operator populates the superdiagonal.
    let mut sx = ComplexMatrix::zeros(d, d);
    let mut sy = ComplexMatrix::zeros(d, d);
    let mut sz = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        sz.set(i, i, c64(m_of(i), 0.0));
    }
    for i in 1..d {
        let m = m_of(i); // raising from |m> (row index i) lands on index i-1
        let amp = (s * (s + 1.0) - m * (m + 1.0)).sqrt();
        // S+ contributes amp at (i-1, i); S- is its adjoint.
        sx.set(i - 1, i, sx.get(i - 1, i) + c64(amp / 2.0, 0.0));
        sx.set(i, i - 1, sx.get(i, i - 1) + c64(amp / 2.0, 0.0));
        sy.set(i - 1, i, sy.get(i - 1, i) + c64(0.0, -amp / 2.0));
        sy.set(i, i - 1, sy.get(i, i - 1) + c64(0.0, amp / 2.0));
    }

    let mut out = ComplexMatrix::zeros(d, d);
    out = out.add(&sx.scale(c64(direction[0], 0.0)));
    out = out.add(&sy.scale(c64(direction[1], 0.0)));
    out = out.add(&sz.scale(c64(direction[2], 0.0)));
    Ok(out)
}

/// The projective measurement of n̂·S with outcomes ordered by decreasing
/// spin value: outcome index i corresponds to m = s − i.
pub fn spin_measurement(s: f64, direction: [f64; 3]) -> Result<GeneralMeasurement> {
    let op = spin_operator(s, direction)?;
    let (_, vecs) = hermitian_eigen(&op)?;
    // hermitian_eigen sorts descending, matching the m = s..-s order.
    let effects = vecs
        .iter()
        .map(|v| projector(v))
        .collect::<Result<Vec<_>>>()?;
    GeneralMeasurement::new(effects)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_half_z_is_half_pauli_z() {
        let op = spin_operator(0.5, [0.0, 0.0, 1.0]).unwrap();
        assert!((op.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((op.get(1, 1).re + 0.5).abs() < 1e-15);
        assert!(op.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn spin_one_z_is_diag() {
        let op = spin_operator(1.0, [0.0, 0.0, 1.0]).unwrap();
        for (i, expect) in [1.0, 0.0, -1.0].iter().enumerate() {
            assert!((op.get(i, i).re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn spectra_are_m_values_for_random_directions() {
        // Jacobi-eigensolver oracle: eigenvalues must be exactly {-s..s}.
        let mut seed = 3u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for s2 in 1..=4u32 {
            let s = s2 as f64 / 2.0;
            for _ in 0..25 {
                let v = [next(), next(), next()];
                let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if n < 0.1 {
                    continue;
                }
                let dir = [v[0] / n, v[1] / n, v[2] / n];
                let op = spin_operator(s, dir).unwrap();
                let (vals, _) = hermitian_eigen(&op).unwrap();
                let d = (2.0 * s) as usize + 1;
                assert_eq!(vals.len(), d);
                for (i, w) in vals.iter().enumerate() {
                    let expect = s - i as f64;
                    assert!((w - expect).abs() < 1e-10, "s={s} eigenvalue {w} vs {expect}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_spin_and_direction() {
        assert!(matches!(spin_operator(0.3, [0.0, 0.0, 1.0]), Err(Error::BadSpin(_))));
        assert!(matches!(spin_operator(0.0, [0.0, 0.0, 1.0]), Err(Error::BadSpin(_))));
        assert!(matches!(spin_operator(1.0, [0.0, 0.0, 2.0]), Err(Error::BadDirection(_))));
    }

    #[test]
    fn spin_measurement_effects_are_complete() {
        let m = spin_measurement(1.5, [0.6, 0.0, 0.8]).unwrap();
        assert_eq!(m.outcomes(), 4);
    }
}
