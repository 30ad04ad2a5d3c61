//! Canonical two-qubit constructions: the nonmaximally entangled family that
//! satisfies all four clauses, its closed-form success probability, the
//! self-testing optimum, and the unique state determined by four noncommuting
//! observables.

use crate::error::{Error, Result};
use crate::numerics::{c64, max_overlap_orthogonal_to, Complex64, Ket};
use crate::quantum::{Observable, PureState};
use crate::tol::TOL_NORM;

/// |b|² = (3 − √5)/2 at the maximum of the success probability.
pub const OPTIMAL_AMPLITUDE_SQ: f64 = 0.381_966_011_250_105_1;

/// The dimension-independent ceiling (5√5 − 11)/2 of the success probability.
pub fn hardy_maximum() -> f64 {
    (5.0 * 5f64.sqrt() - 11.0) / 2.0
}

/// Amplitudes (a, b, c) of the canonical state
/// `a|v1 v2> + b|u1 v2> + c|v1 u2>` with a·b·c ≠ 0, written in the
/// computational basis as v = |0>, u = |1>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalHardyFamily {
    a: Complex64,
    b: Complex64,
    c: Complex64,
}

impl CanonicalHardyFamily {
    /// Validate normalization and that every amplitude is nonzero.
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let norm_sq = a.norm_sqr() + b.norm_sqr() + c.norm_sqr();
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite);
        }
        if (norm_sq - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized((norm_sq.sqrt() - 1.0).abs()));
        }
        let smallest = a.norm().min(b.norm()).min(c.norm());
        if smallest < 1e-9 {
            return Err(Error::DegenerateFamily(smallest));
        }
        Ok(CanonicalHardyFamily { a, b, c })
    }

    /// Real family from moduli, normalizing the inputs.
    pub fn from_real(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = (a * a + b * b + c * c).sqrt();
        if !n.is_finite() || n < 1e-300 {
            return Err(Error::NonFinite);
        }
        CanonicalHardyFamily::new(c64(a / n, 0.0), c64(b / n, 0.0), c64(c / n, 0.0))
    }

    /// The family at which the success probability attains its maximum:
    /// |b| = |c| = √((3−√5)/2) with a phase e^{iθ} on the a-amplitude.
    pub fn optimal(theta: f64) -> Self {
        let b = OPTIMAL_AMPLITUDE_SQ.sqrt();
        let a = (1.0 - 2.0 * OPTIMAL_AMPLITUDE_SQ).sqrt();
        CanonicalHardyFamily::new(Complex64::from_polar(a, theta), c64(b, 0.0), c64(b, 0.0))
            .expect("optimal family is valid")
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }
}

/// The canonical state a|00> + b|10> + c|01> as a two-qubit pure state.
pub fn canonical_state(fam: &CanonicalHardyFamily) -> PureState {
    let ket = Ket::new(vec![fam.a, fam.c, fam.b, c64(0.0, 0.0)]).expect("finite amplitudes");
    let ket = ket.normalized().expect("family is normalized");
    PureState::new(ket, vec![2, 2]).expect("two qubits")
}

/// The observables under which the canonical state meets all four clauses:
///
/// - A has +1 eigenvector w1⊥ where w1 ∝ a|0> + b|1>,
/// - A' has +1 eigenvector |1>,
/// - B has +1 eigenvector w2⊥ where w2 ∝ a|0> + c|1>,
/// - B' has +1 eigenvector |1>.
///
/// Returned as ((A, A'), (B, B')).
pub fn canonical_observables(
    fam: &CanonicalHardyFamily,
) -> ((Observable, Observable), (Observable, Observable)) {
    let w1_perp = Ket::new(vec![fam.b.conj(), -fam.a.conj()])
        .expect("finite")
        .normalized()
        .expect("nonzero");
    let w2_perp = Ket::new(vec![fam.c.conj(), -fam.a.conj()])
        .expect("finite")
        .normalized()
        .expect("nonzero");
    let a = Observable::from_plus_eigvec(&w1_perp).expect("unit vector");
    let b = Observable::from_plus_eigvec(&w2_perp).expect("unit vector");
    let primed = Observable::from_plus_eigvec(&Ket::basis_state(2, 1)).expect("basis vector");
    ((a, primed.clone()), (b, primed))
}

/// Closed form of the nonzero clause for the canonical family:
/// |a|²|b|²|c|² / ((|a|²+|b|²)(|a|²+|c|²)).
pub fn hardy_probability_formula(fam: &CanonicalHardyFamily) -> f64 {
    let (a2, b2, c2) = (fam.a.norm_sqr(), fam.b.norm_sqr(), fam.c.norm_sqr());
    a2 * b2 * c2 / ((a2 + b2) * (a2 + c2))
}

/// The state and observables reaching the maximum success probability, with
/// the free phase θ of the optimal family. Every θ gives identical
/// statistics. Returned as (state, (A, A'), (B, B')).
pub fn optimal_selftest_point(
    theta: f64,
) -> (PureState, (Observable, Observable), (Observable, Observable)) {
    let fam = CanonicalHardyFamily::optimal(theta);
    let (alice, bob) = canonical_observables(&fam);
    (canonical_state(&fam), alice, bob)
}

/// The unique two-qubit state satisfying the four clauses for the given
/// noncommuting observables: the state orthogonal to |a1'⊥ b1>, |a1 b1'⊥>,
/// and |a1' b1'>, which then overlaps |a1 b1>.
///
/// Errors with [`Error::CommutingObservables`] when either side's pair
/// commutes, since the three vectors degenerate in that case.
pub fn unique_hardy_state(
    a: &Observable,
    a_primed: &Observable,
    b: &Observable,
    b_primed: &Observable,
) -> Result<PureState> {
    for o in [a, a_primed, b, b_primed] {
        if o.dim() != 2 {
            return Err(Error::DimensionMismatch("unique state construction needs qubits".into()));
        }
    }
    let comm_a = a.commutator_norm(a_primed);
    let comm_b = b.commutator_norm(b_primed);
    let tol_comm = 1e-9;
    if comm_a < tol_comm || comm_b < tol_comm {
        return Err(Error::CommutingObservables(comm_a.min(comm_b)));
    }

    let plus_vec = |o: &Observable| plus_eigvec(o);
    let minus_vec = |o: &Observable| plus_eigvec_of_minus(o);

    let a1 = plus_vec(a)?;
    let a1p = plus_vec(a_primed)?;
    let a1p_perp = minus_vec(a_primed)?;
    let b1 = plus_vec(b)?;
    let b1p = plus_vec(b_primed)?;
    let b1p_perp = minus_vec(b_primed)?;

    let forbidden = vec![
        a1p_perp.tensor(&b1),
        a1.tensor(&b1p_perp),
        a1p.tensor(&b1p),
    ];
    let target = a1.tensor(&b1);
    let (_, state) = max_overlap_orthogonal_to(&target, &forbidden)?
        .ok_or_else(|| Error::CommutingObservables(comm_a.min(comm_b)))?;
    PureState::new(state, vec![2, 2])
}

/// Unit vector spanning the +1 eigenspace of a rank-one qubit observable.
fn plus_eigvec(o: &Observable) -> Result<Ket> {
    let p = o.plus_projector();
    // For a qubit projector of rank 1 the larger-norm column spans the range.
    let c0 = p.column(0);
    let c1 = p.column(1);
    let col = if c0.norm() >= c1.norm() { c0 } else { c1 };
    if col.norm() < 1e-9 {
        return Err(Error::NotProjector(col.norm()));
    }
    col.normalized()
}

fn plus_eigvec_of_minus(o: &Observable) -> Result<Ket> {
    let minus = Observable::new(o.minus_projector())?;
    plus_eigvec(&minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::{hardy_witness, HardyRoles};
    use crate::quantum::born_behavior;
    use crate::tol::Tolerances;

    fn behavior_of(
        state: &PureState,
        alice: &(Observable, Observable),
        bob: &(Observable, Observable),
    ) -> crate::quantum::Behavior {
        born_behavior(
            state,
            &[
                vec![alice.0.to_measurement(), alice.1.to_measurement()],
                vec![bob.0.to_measurement(), bob.1.to_measurement()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn equal_amplitude_family_gives_one_twelfth() {
        // Born-rule oracle against the closed form.
        let fam = CanonicalHardyFamily::from_real(1.0, 1.0, 1.0).unwrap();
        let formula = hardy_probability_formula(&fam);
        assert!((formula - 1.0 / 12.0).abs() < 1e-15);
        let (alice, bob) = canonical_observables(&fam);
        let cert = hardy_witness(
            &behavior_of(&canonical_state(&fam), &alice, &bob),
            &HardyRoles::default(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(cert.satisfied);
        assert!((cert.q1 - formula).abs() < 1e-12);
        assert!(cert.q2 < 1e-12 && cert.q3 < 1e-12 && cert.q4 < 1e-12);
    }

    #[test]
    fn optimal_family_attains_the_maximum() {
        let fam = CanonicalHardyFamily::optimal(0.0);
        assert!((hardy_probability_formula(&fam) - hardy_maximum()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_family_is_rejected() {
        assert!(matches!(
            CanonicalHardyFamily::from_real(1.0, 0.0, 0.5),
            Err(Error::DegenerateFamily(_))
        ));
    }

    #[test]
    fn formula_is_symmetric_under_b_c_swap() {
        let f1 = CanonicalHardyFamily::from_real(0.5, 0.7, 0.3).unwrap();
        let f2 = CanonicalHardyFamily::from_real(0.5, 0.3, 0.7).unwrap();
        assert!((hardy_probability_formula(&f1) - hardy_probability_formula(&f2)).abs() < 1e-15);
    }

    #[test]
    fn random_families_match_formula_and_zero_clauses() {
        let mut seed = 11u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64 / (1u64 << 32) as f64) + 0.05
        };
        for _ in 0..25 {
            let (ra, pa) = (next(), next() * 6.0);
            let (rb, pb) = (next(), next() * 6.0);
            let (rc, pc) = (next(), next() * 6.0);
            let n = (ra * ra + rb * rb + rc * rc).sqrt();
            let fam = CanonicalHardyFamily::new(
                Complex64::from_polar(ra / n, pa),
                Complex64::from_polar(rb / n, pb),
                Complex64::from_polar(rc / n, pc),
            )
            .unwrap();
            let (alice, bob) = canonical_observables(&fam);
            let cert = hardy_witness(
                &behavior_of(&canonical_state(&fam), &alice, &bob),
                &HardyRoles::default(),
                &Tolerances::default(),
            )
            .unwrap();
            assert!(cert.q2 < 1e-12 && cert.q3 < 1e-12 && cert.q4 < 1e-12);
            assert!((cert.q1 - hardy_probability_formula(&fam)).abs() < 1e-12);
            assert!(cert.q1 <= hardy_maximum() + 1e-12);
        }
    }

    #[test]
    fn unique_state_for_z_x_observables_is_the_equal_family() {
        let a = Observable::from_plus_eigvec(&Ket::basis_state(2, 0)).unwrap();
        let ap = Observable::from_bloch(std::f64::consts::FRAC_PI_2, 0.0);
        let state = unique_hardy_state(&a, &ap, &a, &ap).unwrap();
        // q1 = |<00|psi>|^2 = 1/12 for sigma_z / sigma_x on both sides.
        let q1 = state.ket().get(0).norm_sqr();
        assert!((q1 - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn unique_state_rejects_commuting_pair() {
        let a = Observable::from_plus_eigvec(&Ket::basis_state(2, 0)).unwrap();
        let b = Observable::from_bloch(1.1, 0.3);
        let bp = Observable::from_bloch(2.0, 1.0);
        assert!(matches!(
            unique_hardy_state(&a, &a, &b, &bp),
            Err(Error::CommutingObservables(_))
        ));
    }

    #[test]
    fn selftest_point_is_phase_independent() {
        let tol = Tolerances::default();
        let (s0, a0, b0) = optimal_selftest_point(0.0);
        let c0 = hardy_witness(&behavior_of(&s0, &a0, &b0), &HardyRoles::default(), &tol).unwrap();
        for theta in [std::f64::consts::FRAC_PI_3, 1.0, 2.5] {
            let (s, a, b) = optimal_selftest_point(theta);
            let c = hardy_witness(&behavior_of(&s, &a, &b), &HardyRoles::default(), &tol).unwrap();
            assert!((c.q1 - c0.q1).abs() < 1e-12);
            assert!(c.q2 < 1e-12 && c.q3 < 1e-12 && c.q4 < 1e-12);
        }
        assert!((c0.q1 - hardy_maximum()).abs() < 1e-12);
    }

    #[test]
    fn selftest_point_matches_unique_state() {
        let (state, alice, bob) = optimal_selftest_point(0.7);
        let recovered = unique_hardy_state(&alice.0, &alice.1, &bob.0, &bob.1).unwrap();
        let fidelity = recovered.ket().overlap_sqr(state.ket());
        assert!(fidelity > 1.0 - 1e-10, "fidelity {fidelity}");
    }
}
