//! Tripartite Hardy-type conditions and their maximization.
//!
//! Each of three parties chooses between two ±1 observables U_j (setting 0)
//! and D_j (setting 1). The clause set is
//!
//! ```text
//! P(D1=+1, U2=+1, U3=+1) = 0      (z1)
//! P(U1=+1, D2=+1, U3=+1) = 0      (z2)
//! P(U1=+1, U2=+1, D3=+1) = 0      (z3)
//! P(D1=-1, D2=-1, D3=-1) = 0      (z4)
//! P(U1=+1, U2=+1, U3=+1) = q > 0
//! ```
//!
//! which no local-realistic model satisfies jointly. The quantum maximum of q
//! is 1/8, reached by states locally equivalent to the GHZ state.

use crate::error::{Error, Result};
use crate::numerics::{max_overlap_orthogonal_to, Ket};
use crate::optim::NelderMeadOptions;
use crate::quantum::{born_behavior, Behavior, Observable, PureState};
use crate::search::penalty_maximize;
use crate::tol::Tolerances;

/// The five tripartite clause probabilities with a verdict at a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteCertificate {
    /// The nonzero clause P(U1=U2=U3=+1).
    pub q: f64,
    /// The four zero clauses in the order listed in the module docs.
    pub zeros: [f64; 4],
    pub satisfied: bool,
    pub tol_zero: f64,
    pub tol_success: f64,
}

impl TripartiteCertificate {
    pub fn zero_clause_sum(&self) -> f64 {
        self.zeros.iter().sum()
    }
}

/// Read the five clause probabilities off a three-party two-setting
/// two-outcome behavior. Setting 0 is U_j, setting 1 is D_j, outcome 0 is +1.
pub fn tripartite_witness(behavior: &Behavior, tol: &Tolerances) -> Result<TripartiteCertificate> {
    let sc = behavior.scenario();
    if sc.parties() != 3
        || sc.settings_per_party().iter().any(|&s| s != 2)
        || sc.outcomes_per_setting().iter().flatten().any(|&o| o != 2)
    {
        return Err(Error::ScenarioMismatch(
            "tripartite witness needs 3 parties, 2 settings, 2 outcomes".into(),
        ));
    }
    let z1 = behavior.prob(&[1, 0, 0], &[0, 0, 0])?;
    let z2 = behavior.prob(&[0, 1, 0], &[0, 0, 0])?;
    let z3 = behavior.prob(&[0, 0, 1], &[0, 0, 0])?;
    let z4 = behavior.prob(&[1, 1, 1], &[1, 1, 1])?;
    let q = behavior.prob(&[0, 0, 0], &[0, 0, 0])?;
    let zeros = [z1, z2, z3, z4];
    let satisfied = zeros.iter().all(|&z| z < tol.zero) && q > tol.success;
    Ok(TripartiteCertificate {
        q,
        zeros,
        satisfied,
        tol_zero: tol.zero,
        tol_success: tol.success,
    })
}

/// Restricted three-qubit families for the comparison runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripartiteFamily {
    /// Local unitaries on (|000> + |111>)/√2.
    GhzClass,
    /// Fully product states.
    Product,
}

/// Best point found by a tripartite search.
#[derive(Debug, Clone)]
pub struct TripartiteSearchResult {
    pub certificate: TripartiteCertificate,
    pub state: PureState,
    /// Per party, (U_j, D_j).
    pub observables: Vec<(Observable, Observable)>,
}

impl TripartiteSearchResult {
    pub fn behavior(&self) -> Result<Behavior> {
        born_behavior(
            &self.state,
            &self
                .observables
                .iter()
                .map(|(u, d)| vec![u.to_measurement(), d.to_measurement()])
                .collect::<Vec<_>>(),
        )
    }
}

fn bloch_pair(theta: f64, phi: f64) -> (Ket, Ket) {
    let v = Ket::new(vec![
        crate::numerics::c64((theta / 2.0).cos(), 0.0),
        num_complex::Complex::from_polar((theta / 2.0).sin(), phi),
    ])
    .expect("finite");
    let perp = Ket::new(vec![-v.get(1).conj(), v.get(0).conj()]).expect("finite");
    (v, perp)
}

struct TripartiteVectors {
    u_plus: [Ket; 3],
    d_plus: [Ket; 3],
    d_minus: [Ket; 3],
}

fn vectors_from_params(x: &[f64]) -> TripartiteVectors {
    let mut u_plus = Vec::with_capacity(3);
    let mut d_plus = Vec::with_capacity(3);
    let mut d_minus = Vec::with_capacity(3);
    for j in 0..3 {
        let (u, _) = bloch_pair(x[4 * j], x[4 * j + 1]);
        let (d, d_perp) = bloch_pair(x[4 * j + 2], x[4 * j + 3]);
        u_plus.push(u);
        d_plus.push(d);
        d_minus.push(d_perp);
    }
    TripartiteVectors {
        u_plus: u_plus.try_into().expect("three parties"),
        d_plus: d_plus.try_into().expect("three parties"),
        d_minus: d_minus.try_into().expect("three parties"),
    }
}

fn zero_clause_vectors(v: &TripartiteVectors) -> [Ket; 4] {
    [
        v.d_plus[0].tensor(&v.u_plus[1]).tensor(&v.u_plus[2]),
        v.u_plus[0].tensor(&v.d_plus[1]).tensor(&v.u_plus[2]),
        v.u_plus[0].tensor(&v.u_plus[1]).tensor(&v.d_plus[2]),
        v.d_minus[0].tensor(&v.d_minus[1]).tensor(&v.d_minus[2]),
    ]
}

fn target_vector(v: &TripartiteVectors) -> Ket {
    v.u_plus[0].tensor(&v.u_plus[1]).tensor(&v.u_plus[2])
}

/// Search over three-qubit pure states and rank-one ±1 observables for the
/// maximum of the nonzero clause with all four zero clauses at zero.
/// Deterministic per seed.
pub fn maximize_tripartite_hardy(restarts: usize, seed: u64) -> Result<TripartiteSearchResult> {
    let tol = Tolerances::default();
    // 12 parameters: Bloch angles of (U_j, D_j) for each of the three parties.
    // For fixed observables the best state is the projection of the target
    // product vector onto the joint kernel of the four zero clauses.
    let objective = |x: &[f64]| {
        let v = vectors_from_params(x);
        let forbidden = zero_clause_vectors(&v);
        match max_overlap_orthogonal_to(&target_vector(&v), &forbidden) {
            Ok(Some((value, _))) => -value,
            _ => f64::INFINITY,
        }
    };
    let opts = NelderMeadOptions {
        max_evals: 8000,
        ..NelderMeadOptions::default()
    };
    let best = crate::optim::restarted_minimize(
        objective,
        12,
        std::f64::consts::PI,
        restarts,
        seed,
        &opts,
    );
    let v = vectors_from_params(&best.x);
    let forbidden = zero_clause_vectors(&v);
    let (_, state) = max_overlap_orthogonal_to(&target_vector(&v), &forbidden)?
        .ok_or_else(|| Error::InvalidInput("search degenerated".into()))?;
    finish(state, &v, &tol)
}

/// Search restricted to a pinned state family: local unitaries of the family
/// are absorbed into the per-party observables, so the state is fixed to GHZ
/// or |000> and the zero clauses are enforced by penalty escalation.
pub fn maximize_tripartite_restricted(
    family: TripartiteFamily,
    restarts: usize,
    seed: u64,
) -> Result<TripartiteSearchResult> {
    let tol = Tolerances::default();
    let half = 1.0 / 2f64.sqrt();
    let ket = match family {
        TripartiteFamily::GhzClass => {
            let mut entries = vec![0.0; 8];
            entries[0] = half;
            entries[7] = half;
            Ket::from_real(&entries)?
        }
        TripartiteFamily::Product => Ket::basis_state(8, 0),
    };
    let psi = ket.clone();
    let eval = move |x: &[f64]| {
        let v = vectors_from_params(x);
        let q = psi.overlap_sqr(&target_vector(&v));
        let z: f64 = zero_clause_vectors(&v)
            .iter()
            .map(|f| psi.overlap_sqr(f))
            .sum();
        (q, z)
    };
    let out = penalty_maximize(eval, 12, restarts, seed, 6000);
    let v = vectors_from_params(&out.params);
    finish(ket, &v, &tol)
}

fn finish(state: Ket, v: &TripartiteVectors, tol: &Tolerances) -> Result<TripartiteSearchResult> {
    let state = PureState::new(state, vec![2, 2, 2])?;
    let observables: Vec<(Observable, Observable)> = (0..3)
        .map(|j| {
            Ok((
                Observable::from_plus_eigvec(&v.u_plus[j])?,
                Observable::from_plus_eigvec(&v.d_plus[j])?,
            ))
        })
        .collect::<Result<_>>()?;
    let behavior = born_behavior(
        &state,
        &observables
            .iter()
            .map(|(u, d)| vec![u.to_measurement(), d.to_measurement()])
            .collect::<Vec<_>>(),
    )?;
    let certificate = tripartite_witness(&behavior, tol)?;
    Ok(TripartiteSearchResult {
        certificate,
        state,
        observables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::Scenario;

    #[test]
    fn product_behavior_is_never_satisfied() {
        // Deterministic strategies on three parties: all 64 fail the clauses.
        let sc = Scenario::tripartite_dichotomic();
        for code in 0..64u32 {
            let pick = |j: u32, s: usize| ((code >> (2 * j + s as u32)) & 1) as usize;
            let mut rows = Vec::new();
            for st in sc.setting_tuples() {
                let mut row = vec![0.0; 8];
                let outcome = [pick(0, st[0]), pick(1, st[1]), pick(2, st[2])];
                let idx = sc.outcome_index(&st, &outcome).unwrap();
                row[idx] = 1.0;
                rows.push(row);
            }
            let b = Behavior::new(sc.clone(), rows).unwrap();
            let cert = tripartite_witness(&b, &Tolerances::default()).unwrap();
            assert!(!cert.satisfied);
        }
    }

    #[test]
    fn unrestricted_search_reaches_one_eighth() {
        let result = maximize_tripartite_hardy(8, 21).unwrap();
        let c = &result.certificate;
        assert!(c.satisfied, "certificate {c:?}");
        assert!((c.q - 0.125).abs() < 1e-4, "q = {}", c.q);
        assert!(c.zero_clause_sum() < 1e-10);
    }

    #[test]
    fn product_family_cannot_succeed() {
        let result = maximize_tripartite_restricted(TripartiteFamily::Product, 3, 4).unwrap();
        assert!(result.certificate.q < 1e-6);
        assert!(result.certificate.zero_clause_sum() < 3e-8);
    }
}
