//! Bipartite Hardy machinery: clause evaluation for qubits, the d-outcome
//! minimal form, and the spin-s clause set, plus canonical constructions and
//! numerical maximization (see [`canonical`], [`spin`], and [`search`]).
//!
//! The four clauses in the orientation used throughout this module are
//!
//! ```text
//! P(+1,+1 | A , B )  > 0        (q1, the nonzero clause)
//! P(-1,+1 | A', B )  = 0        (q2)
//! P(+1,-1 | A , B')  = 0        (q3)
//! P(+1,+1 | A', B')  = 0        (q4)
//! ```
//!
//! No local-realistic model satisfies all four at once, while suitable
//! entangled states do; `q1` is the success probability of the argument.

mod canonical;
mod search;
mod spin;

pub use canonical::{
    canonical_observables, canonical_state, hardy_maximum, hardy_probability_formula,
    optimal_selftest_point, unique_hardy_state, CanonicalHardyFamily, OPTIMAL_AMPLITUDE_SQ,
};
pub use search::{
    maximize_hardy, maximize_hardy_restricted, random_noncommuting_quadruple,
    refine_to_projective, BipartiteFamily, HardySearchResult,
};
pub use spin::{spin_measurement, spin_operator};

use crate::error::{Error, Result};
use crate::quantum::Behavior;
use crate::tol::Tolerances;

/// Which setting index plays a role and which outcome index counts as "+1".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SettingRole {
    pub setting: usize,
    pub plus_outcome: usize,
}

/// Assignment of the four observables A, A', B, B' to settings and outcomes
/// of a two-party behavior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HardyRoles {
    pub alice: SettingRole,
    pub alice_primed: SettingRole,
    pub bob: SettingRole,
    pub bob_primed: SettingRole,
}

impl Default for HardyRoles {
    /// A and B are setting 0, A' and B' setting 1, outcome 0 is +1 everywhere.
    fn default() -> Self {
        HardyRoles {
            alice: SettingRole { setting: 0, plus_outcome: 0 },
            alice_primed: SettingRole { setting: 1, plus_outcome: 0 },
            bob: SettingRole { setting: 0, plus_outcome: 0 },
            bob_primed: SettingRole { setting: 1, plus_outcome: 0 },
        }
    }
}

impl HardyRoles {
    /// Roles that make [`hardy_witness`] on a two-outcome behavior reproduce
    /// the minimal-form clauses, whose nonzero clause sits on the second
    /// setting pair.
    pub fn from_minimal(roles: &MinimalRoles) -> Self {
        HardyRoles {
            alice: SettingRole { setting: 1, plus_outcome: roles.a2 },
            alice_primed: SettingRole { setting: 0, plus_outcome: roles.a1 },
            bob: SettingRole { setting: 1, plus_outcome: roles.b2 },
            bob_primed: SettingRole { setting: 0, plus_outcome: roles.b1 },
        }
    }

    /// Roles under which [`hardy_witness`] agrees clause-for-clause with
    /// [`clifton_niemann_witness`] on a spin-1/2 behavior: the primed spin
    /// measurements carry the nonzero clause with outcome −s playing "+1".
    pub fn from_clifton_niemann_spin_half() -> Self {
        HardyRoles {
            alice: SettingRole { setting: 1, plus_outcome: 1 },
            alice_primed: SettingRole { setting: 0, plus_outcome: 0 },
            bob: SettingRole { setting: 1, plus_outcome: 1 },
            bob_primed: SettingRole { setting: 0, plus_outcome: 0 },
        }
    }
}

/// The four Hardy probabilities with a pass/fail verdict at a tolerance.
///
/// `satisfied` holds exactly when all three zero clauses fall below
/// `tol_zero` and the nonzero clause exceeds `tol_success`.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyCertificate {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
    pub satisfied: bool,
    pub tol_zero: f64,
    pub tol_success: f64,
}

impl HardyCertificate {
    pub fn from_probabilities(q1: f64, q2: f64, q3: f64, q4: f64, tol: &Tolerances) -> Self {
        let satisfied = q2 < tol.zero && q3 < tol.zero && q4 < tol.zero && q1 > tol.success;
        HardyCertificate {
            q1,
            q2,
            q3,
            q4,
            satisfied,
            tol_zero: tol.zero,
            tol_success: tol.success,
        }
    }

    /// Sum of the three zero clauses.
    pub fn zero_clause_sum(&self) -> f64 {
        self.q2 + self.q3 + self.q4
    }
}

fn two_outcome_check(behavior: &Behavior) -> Result<()> {
    let sc = behavior.scenario();
    if sc.parties() != 2 {
        return Err(Error::ScenarioMismatch(format!(
            "hardy witness needs 2 parties, got {}",
            sc.parties()
        )));
    }
    if sc.settings_per_party().iter().any(|&s| s != 2) {
        return Err(Error::ScenarioMismatch("each party needs exactly 2 settings".into()));
    }
    if sc.outcomes_per_setting().iter().flatten().any(|&o| o != 2) {
        return Err(Error::ScenarioMismatch("each setting needs exactly 2 outcomes".into()));
    }
    Ok(())
}

/// Read the four Hardy probabilities off a two-party two-setting two-outcome
/// behavior under the given role assignment.
pub fn hardy_witness(
    behavior: &Behavior,
    roles: &HardyRoles,
    tol: &Tolerances,
) -> Result<HardyCertificate> {
    two_outcome_check(behavior)?;
    for role in [roles.alice, roles.alice_primed, roles.bob, roles.bob_primed] {
        if role.setting > 1 || role.plus_outcome > 1 {
            return Err(Error::BadRoleLabels(format!(
                "setting {} / outcome {}",
                role.setting, role.plus_outcome
            )));
        }
    }
    let minus = |r: SettingRole| 1 - r.plus_outcome;
    let q1 = behavior.prob(
        &[roles.alice.setting, roles.bob.setting],
        &[roles.alice.plus_outcome, roles.bob.plus_outcome],
    )?;
    let q2 = behavior.prob(
        &[roles.alice_primed.setting, roles.bob.setting],
        &[minus(roles.alice_primed), roles.bob.plus_outcome],
    )?;
    let q3 = behavior.prob(
        &[roles.alice.setting, roles.bob_primed.setting],
        &[roles.alice.plus_outcome, minus(roles.bob_primed)],
    )?;
    let q4 = behavior.prob(
        &[roles.alice_primed.setting, roles.bob_primed.setting],
        &[roles.alice_primed.plus_outcome, roles.bob_primed.plus_outcome],
    )?;
    Ok(HardyCertificate::from_probabilities(q1, q2, q3, q4, tol))
}

/// Designated outcome labels (a1, b1, a2, b2) of the minimal-form clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimalRoles {
    pub a1: usize,
    pub b1: usize,
    pub a2: usize,
    pub b2: usize,
}

impl Default for MinimalRoles {
    fn default() -> Self {
        MinimalRoles { a1: 0, b1: 0, a2: 0, b2: 0 }
    }
}

/// The minimal four-clause form for two d-outcome measurements per party:
///
/// ```text
/// P(A1,a1 ; B1,b1)   = 0    (q2 slot of the certificate)
/// P(A1,¬a1 ; B2,b2)  = 0    (q3 slot)
/// P(A2,a2 ; B1,¬b1)  = 0    (q4 slot)
/// P(A2,a2 ; B2,b2)   = q1 > 0
/// ```
///
/// `¬a` means any outcome other than `a`; those clauses sum over the negated
/// outcome set. Setting index 0 is A1/B1 and index 1 is A2/B2, so the nonzero
/// clause sits on the second setting pair.
pub fn minimal_form_witness(
    behavior: &Behavior,
    roles: &MinimalRoles,
    tol: &Tolerances,
) -> Result<HardyCertificate> {
    let sc = behavior.scenario();
    if sc.parties() != 2 || sc.settings_per_party().iter().any(|&s| s != 2) {
        return Err(Error::ScenarioMismatch(
            "minimal form needs 2 parties with 2 settings each".into(),
        ));
    }
    let d_a1 = sc.outcomes_per_setting()[0][0];
    let d_a2 = sc.outcomes_per_setting()[0][1];
    let d_b1 = sc.outcomes_per_setting()[1][0];
    let d_b2 = sc.outcomes_per_setting()[1][1];
    if roles.a1 >= d_a1 || roles.a2 >= d_a2 || roles.b1 >= d_b1 || roles.b2 >= d_b2 {
        return Err(Error::BadRoleLabels(format!("{roles:?}")));
    }

    let z1 = behavior.prob(&[0, 0], &[roles.a1, roles.b1])?;
    let mut z2 = 0.0;
    for a in 0..d_a1 {
        if a != roles.a1 {
            z2 += behavior.prob(&[0, 1], &[a, roles.b2])?;
        }
    }
    let mut z3 = 0.0;
    for b in 0..d_b1 {
        if b != roles.b1 {
            z3 += behavior.prob(&[1, 0], &[roles.a2, b])?;
        }
    }
    let q1 = behavior.prob(&[1, 1], &[roles.a2, roles.b2])?;
    Ok(HardyCertificate::from_probabilities(q1, z1, z2, z3, tol))
}

/// The spin-s clause set for a behavior whose outcome index i labels the spin
/// value m = s − i (index 0 is +s, index d−1 is −s):
///
/// ```text
/// P(S_a = S_b = s)        = 0     (q2 slot)
/// P(S_a + S_b' >= 0)      = 1     (complement sum in the q3 slot)
/// P(S_a' + S_b >= 0)      = 1     (complement sum in the q4 slot)
/// P(S_a' = S_b' = -s)     = q1 > 0
/// ```
///
/// The two "= 1" clauses are stored through their complements
/// `P(S + S' < 0) = 0`, obtained by summing table entries over outcome pairs
/// with a negative spin sum.
pub fn clifton_niemann_witness(behavior: &Behavior, tol: &Tolerances) -> Result<HardyCertificate> {
    let sc = behavior.scenario();
    if sc.parties() != 2 || sc.settings_per_party().iter().any(|&s| s != 2) {
        return Err(Error::ScenarioMismatch(
            "spin-s clauses need 2 parties with 2 settings each".into(),
        ));
    }
    let d = sc.outcomes_per_setting()[0][0];
    if sc.outcomes_per_setting().iter().flatten().any(|&o| o != d) {
        return Err(Error::ScenarioMismatch(
            "spin-s clauses need the same outcome count for every setting".into(),
        ));
    }
    let spin2 = (d - 1) as i64; // 2s, so m(i) = (2s - 2i)/2; work with doubled values
    let m2 = |i: usize| spin2 - 2 * i as i64;

    let z_top = behavior.prob(&[0, 0], &[0, 0])?;
    let mut z_ab_prime = 0.0;
    let mut z_aprime_b = 0.0;
    for i in 0..d {
        for j in 0..d {
            if m2(i) + m2(j) < 0 {
                z_ab_prime += behavior.prob(&[0, 1], &[i, j])?;
                z_aprime_b += behavior.prob(&[1, 0], &[i, j])?;
            }
        }
    }
    let q = behavior.prob(&[1, 1], &[d - 1, d - 1])?;
    Ok(HardyCertificate::from_probabilities(
        q, z_top, z_ab_prime, z_aprime_b, tol,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::Scenario;

    fn behavior_from_rows(rows: Vec<Vec<f64>>) -> Behavior {
        Behavior::new(Scenario::bipartite_dichotomic(), rows).unwrap()
    }

    #[test]
    fn deterministic_behavior_is_never_satisfied() {
        // All sixteen deterministic strategies fail the four clauses.
        let tol = Tolerances::default();
        for code in 0..16u32 {
            let a = [(code & 1) as usize, ((code >> 1) & 1) as usize];
            let b = [((code >> 2) & 1) as usize, ((code >> 3) & 1) as usize];
            let mut rows = vec![vec![0.0; 4]; 4];
            for (s, (x, y)) in [(0, 0), (0, 1), (1, 0), (1, 1)].iter().enumerate() {
                rows[s][a[*x] * 2 + b[*y]] = 1.0;
            }
            let cert = hardy_witness(&behavior_from_rows(rows), &HardyRoles::default(), &tol).unwrap();
            assert!(!cert.satisfied, "strategy {code} claimed to satisfy the clauses");
        }
    }

    #[test]
    fn witness_reads_clause_positions() {
        let mut rows = vec![vec![0.25; 4]; 4];
        rows[0] = vec![0.7, 0.1, 0.1, 0.1]; // q1 = p(00|00)
        rows[1] = vec![0.1, 0.2, 0.3, 0.4]; // settings (0,1): q3 = p(0,1)=0.2
        rows[2] = vec![0.5, 0.1, 0.25, 0.15]; // settings (1,0): q2 = p(1,0)=0.25
        rows[3] = vec![0.35, 0.3, 0.2, 0.15]; // settings (1,1): q4 = p(0,0)=0.35
        let cert =
            hardy_witness(&behavior_from_rows(rows), &HardyRoles::default(), &Tolerances::default())
                .unwrap();
        assert_eq!(
            (cert.q1, cert.q2, cert.q3, cert.q4),
            (0.7, 0.25, 0.2, 0.35)
        );
        assert!(!cert.satisfied);
    }

    #[test]
    fn minimal_form_reduces_to_hardy_for_two_outcomes() {
        // With d = 2 the negated outcome is the single other outcome, so the
        // minimal clauses coincide with the relabeled Hardy clauses.
        let rows = vec![
            vec![0.05, 0.15, 0.35, 0.45],
            vec![0.1, 0.3, 0.2, 0.4],
            vec![0.25, 0.2, 0.15, 0.4],
            vec![0.3, 0.25, 0.25, 0.2],
        ];
        let b = behavior_from_rows(rows);
        let tol = Tolerances::default();
        let roles = MinimalRoles::default();
        let minimal = minimal_form_witness(&b, &roles, &tol).unwrap();
        let hardy = hardy_witness(&b, &HardyRoles::from_minimal(&roles), &tol).unwrap();
        assert!((minimal.q1 - hardy.q1).abs() < 1e-15);
        assert!((minimal.q2 - hardy.q4).abs() < 1e-15);
        assert!((minimal.q3 - hardy.q2).abs() < 1e-15);
        assert!((minimal.q4 - hardy.q3).abs() < 1e-15);
    }

    #[test]
    fn clifton_niemann_matches_hardy_for_spin_half() {
        let rows = vec![
            vec![0.05, 0.15, 0.35, 0.45],
            vec![0.1, 0.3, 0.2, 0.4],
            vec![0.25, 0.2, 0.15, 0.4],
            vec![0.3, 0.25, 0.25, 0.2],
        ];
        let b = behavior_from_rows(rows);
        let tol = Tolerances::default();
        let cn = clifton_niemann_witness(&b, &tol).unwrap();
        let hardy = hardy_witness(&b, &HardyRoles::from_clifton_niemann_spin_half(), &tol).unwrap();
        assert!((cn.q1 - hardy.q1).abs() < 1e-15);
        assert!((cn.q2 - hardy.q4).abs() < 1e-15);
        assert!((cn.q3 - hardy.q2).abs() < 1e-15);
        assert!((cn.q4 - hardy.q3).abs() < 1e-15);
    }

    #[test]
    fn uniform_random_behavior_fails_zero_clauses() {
        let rows = vec![vec![0.25; 4]; 4];
        let cert =
            hardy_witness(&behavior_from_rows(rows), &HardyRoles::default(), &Tolerances::default())
                .unwrap();
        assert!(!cert.satisfied);
        assert!(cert.q2 > 0.1);
    }

    #[test]
    fn witness_rejects_wrong_scenario() {
        let sc = Scenario::tripartite_dichotomic();
        let rows = vec![vec![0.125; 8]; 8];
        let b = Behavior::new(sc, rows).unwrap();
        assert!(hardy_witness(&b, &HardyRoles::default(), &Tolerances::default()).is_err());
    }

    #[test]
    fn minimal_form_rejects_bad_labels() {
        let rows = vec![vec![0.25; 4]; 4];
        let b = behavior_from_rows(rows);
        let roles = MinimalRoles { a1: 5, b1: 0, a2: 0, b2: 0 };
        assert!(matches!(
            minimal_form_witness(&b, &roles, &Tolerances::default()),
            Err(Error::BadRoleLabels(_))
        ));
    }
}
