//! The local-realistic and no-signalling polytope engine.
//!
//! Deterministic strategies (one fixed outcome per setting per party) are the
//! vertices of the local polytope; a behavior is local exactly when it is a
//! convex mixture of them, decided here by LP feasibility. The no-signalling
//! polytope is carved out by marginal equalities instead, and linear
//! programming over it yields the extremal Hardy probabilities and
//! randomness bounds of a theory constrained only by no-signalling.

mod lp;

pub use lp::{solve, LinearProgram, LpSolution};

use crate::error::{Error, Result};
use crate::hardy::HardyCertificate;
use crate::quantum::{Behavior, Scenario};
use crate::tol::{Tolerances, TOL_FEAS};

/// Default cap on the number of enumerated deterministic strategies.
pub const DEFAULT_STRATEGY_CAP: u64 = 1_000_000;

/// One fixed outcome per setting per party: `assignments[party][setting]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub assignments: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    /// Expand to the 0/1 behavior this strategy produces.
    pub fn behavior(&self, scenario: &Scenario) -> Result<Behavior> {
        let mut rows = Vec::with_capacity(scenario.setting_tuple_count());
        for settings in scenario.setting_tuples() {
            let outcome: Vec<usize> = settings
                .iter()
                .enumerate()
                .map(|(party, &s)| self.assignments[party][s])
                .collect();
            let mut row = vec![0.0; scenario.outcome_tuple_count(&settings)];
            row[scenario.outcome_index(&settings, &outcome)?] = 1.0;
            rows.push(row);
        }
        Behavior::new(scenario.clone(), rows)
    }
}

/// Number of deterministic strategies of a scenario.
pub fn strategy_count(scenario: &Scenario) -> u128 {
    let mut count: u128 = 1;
    for (party, &settings) in scenario.settings_per_party().iter().enumerate() {
        for s in 0..settings {
            count = count.saturating_mul(scenario.outcomes_per_setting()[party][s] as u128);
        }
    }
    count
}

/// Enumerate all deterministic strategies with the default cap.
pub fn enumerate_deterministic(scenario: &Scenario) -> Result<Vec<DeterministicStrategy>> {
    enumerate_deterministic_capped(scenario, DEFAULT_STRATEGY_CAP)
}

/// Enumerate all deterministic strategies, erroring when there are more than
/// `cap` of them.
pub fn enumerate_deterministic_capped(
    scenario: &Scenario,
    cap: u64,
) -> Result<Vec<DeterministicStrategy>> {
    let count = strategy_count(scenario);
    if count > cap as u128 {
        return Err(Error::SizeLimit { count, cap });
    }
    // Odometer over every (party, setting) slot.
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for (party, &settings) in scenario.settings_per_party().iter().enumerate() {
        for s in 0..settings {
            slots.push((party, s));
        }
    }
    let radix: Vec<usize> = slots
        .iter()
        .map(|&(party, s)| scenario.outcomes_per_setting()[party][s])
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; slots.len()];
    loop {
        let mut assignments: Vec<Vec<usize>> = scenario
            .settings_per_party()
            .iter()
            .map(|&s| vec![0; s])
            .collect();
        for (slot, &(party, s)) in slots.iter().enumerate() {
            assignments[party][s] = digits[slot];
        }
        out.push(DeterministicStrategy { assignments });
        // Increment.
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radix[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Nonnegative weights over the enumerated deterministic strategies that
/// reproduce a behavior.
#[derive(Debug, Clone)]
pub struct LocalModel {
    pub scenario: Scenario,
    pub weights: Vec<f64>,
}

impl LocalModel {
    /// The behavior generated by the weighted mixture.
    pub fn mixture(&self) -> Result<Behavior> {
        let strategies = enumerate_deterministic(&self.scenario)?;
        let mut rows: Vec<Vec<f64>> = self
            .scenario
            .setting_tuples()
            .iter()
            .map(|s| vec![0.0; self.scenario.outcome_tuple_count(s)])
            .collect();
        for (w, strat) in self.weights.iter().zip(&strategies) {
            if *w == 0.0 {
                continue;
            }
            let b = strat.behavior(&self.scenario)?;
            for (row, brow) in rows.iter_mut().zip(b.rows()) {
                for (r, p) in row.iter_mut().zip(brow) {
                    *r += w * p;
                }
            }
        }
        Behavior::new(self.scenario.clone(), rows)
    }

    /// Largest absolute entry difference between the mixture and `target`.
    pub fn reconstruction_error(&self, target: &Behavior) -> Result<f64> {
        let mix = self.mixture()?;
        let mut err: f64 = 0.0;
        for (r1, r2) in mix.rows().iter().zip(target.rows()) {
            for (a, b) in r1.iter().zip(r2) {
                err = err.max((a - b).abs());
            }
        }
        Ok(err)
    }
}

/// A Bell-type functional separating a nonlocal behavior from the local
/// polytope: `coefficients · q + offset <= 0` for every local behavior q,
/// positive on the behavior that was tested.
#[derive(Debug, Clone)]
pub struct SeparatingFunctional {
    /// One coefficient per (setting row, outcome) table entry, flattened in
    /// table order.
    pub coefficients: Vec<f64>,
    pub offset: f64,
    /// Value attained on the tested behavior.
    pub violation: f64,
}

impl SeparatingFunctional {
    pub fn evaluate(&self, behavior: &Behavior) -> f64 {
        let flat: Vec<f64> = behavior.rows().iter().flatten().copied().collect();
        self.coefficients
            .iter()
            .zip(&flat)
            .map(|(c, p)| c * p)
            .sum::<f64>()
            + self.offset
    }
}

/// Outcome of a local-polytope membership test.
#[derive(Debug, Clone)]
pub enum LocalTest {
    Local(LocalModel),
    Nonlocal(SeparatingFunctional),
}

/// Decide membership in the local polytope and expose the evidence: a
/// reproducing mixture of deterministic strategies, or a separating
/// Bell-type functional from the phase-1 duals.
pub fn local_test(behavior: &Behavior) -> Result<LocalTest> {
    let scenario = behavior.scenario();
    let strategies = enumerate_deterministic(scenario)?;
    let entries: Vec<f64> = behavior.rows().iter().flatten().copied().collect();
    let n_entries = entries.len();

    let mut lp = LinearProgram::new(strategies.len());
    let mut strategy_tables: Vec<Vec<f64>> = Vec::with_capacity(strategies.len());
    for strat in &strategies {
        strategy_tables.push(strat.behavior(scenario)?.rows().iter().flatten().copied().collect());
    }
    for e in 0..n_entries {
        let row: Vec<f64> = strategy_tables.iter().map(|t| t[e]).collect();
        lp.push_eq(row, entries[e]);
    }
    lp.push_eq(vec![1.0; strategies.len()], 1.0);

    match solve(&lp)? {
        LpSolution::Optimal { x, .. } => Ok(LocalTest::Local(LocalModel {
            scenario: scenario.clone(),
            weights: x,
        })),
        LpSolution::Infeasible { farkas, gap } => {
            let coefficients = farkas[0..n_entries].to_vec();
            let offset = farkas[n_entries];
            Ok(LocalTest::Nonlocal(SeparatingFunctional {
                coefficients,
                offset,
                violation: gap,
            }))
        }
        LpSolution::Unbounded => Err(Error::Infeasible(
            "membership feasibility problem cannot be unbounded".into(),
        )),
    }
}

/// The spec-level membership test: a reproducing local model, or `None`
/// certifying nonlocality at the solver tolerance.
pub fn is_local(behavior: &Behavior) -> Result<Option<LocalModel>> {
    match local_test(behavior)? {
        LocalTest::Local(model) => Ok(Some(model)),
        LocalTest::Nonlocal(_) => Ok(None),
    }
}

/// True when every party's marginal is independent of the other parties'
/// settings, within the solver tolerance.
pub fn is_no_signalling(behavior: &Behavior) -> bool {
    no_signalling_deviation(behavior) <= TOL_FEAS
}

/// Largest marginal deviation over all no-signalling equalities.
pub fn no_signalling_deviation(behavior: &Behavior) -> f64 {
    let sc = behavior.scenario();
    let mut worst: f64 = 0.0;
    for party in 0..sc.parties() {
        // Compare the marginal of `party` across its own settings, for every
        // fixed choice of the other parties' settings and outcomes.
        for settings in sc.setting_tuples() {
            if settings[party] == 0 {
                continue;
            }
            let mut reference = settings.clone();
            reference[party] = 0;
            // Marginal over this party's outcome for each joint outcome of the others.
            let counts = sc.outcome_counts(&settings);
            let ref_counts = sc.outcome_counts(&reference);
            // Outcome counts of other parties must match between the two
            // setting tuples (they differ only in `party`).
            let mut other_total = 1;
            for (k, &c) in counts.iter().enumerate() {
                if k != party {
                    other_total *= c;
                }
            }
            for other_idx in 0..other_total {
                // Decode other parties' outcomes.
                let mut rem = other_idx;
                let mut others = vec![0usize; counts.len()];
                for k in (0..counts.len()).rev() {
                    if k == party {
                        continue;
                    }
                    others[k] = rem % counts[k];
                    rem /= counts[k];
                }
                let mut sum_here = 0.0;
                for o in 0..counts[party] {
                    let mut outcome = others.clone();
                    outcome[party] = o;
                    sum_here += behavior.prob(&settings, &outcome).unwrap_or(0.0);
                }
                let mut sum_ref = 0.0;
                for o in 0..ref_counts[party] {
                    let mut outcome = others.clone();
                    outcome[party] = o;
                    sum_ref += behavior.prob(&reference, &outcome).unwrap_or(0.0);
                }
                worst = worst.max((sum_here - sum_ref).abs());
            }
        }
    }
    worst
}

/// True when every table entry is 0 or 1 within the solver tolerance.
pub fn is_predictable(behavior: &Behavior) -> bool {
    behavior
        .rows()
        .iter()
        .flatten()
        .all(|&p| p <= TOL_FEAS || (1.0 - p).abs() <= TOL_FEAS)
}

/// A Hardy-type clause pattern over a scenario: one target entry to maximize
/// and a list of zero clauses, each a set of (settings, outcomes) entries
/// whose probabilities must vanish.
#[derive(Debug, Clone)]
pub struct HardyClauses {
    pub scenario: Scenario,
    /// (settings tuple, outcomes tuple) of the nonzero clause.
    pub target: (Vec<usize>, Vec<usize>),
    /// Zero clauses; each clause lists every table entry it forces to zero.
    pub zeros: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
}

/// The bipartite clause pattern in the standard orientation.
pub fn bipartite_clauses() -> HardyClauses {
    HardyClauses {
        scenario: Scenario::bipartite_dichotomic(),
        target: (vec![0, 0], vec![0, 0]),
        zeros: vec![
            vec![(vec![1, 0], vec![1, 0])],
            vec![(vec![0, 1], vec![0, 1])],
            vec![(vec![1, 1], vec![0, 0])],
        ],
    }
}

/// The tripartite clause pattern (U = setting 0, D = setting 1, +1 = 0).
pub fn tripartite_clauses() -> HardyClauses {
    HardyClauses {
        scenario: Scenario::tripartite_dichotomic(),
        target: (vec![0, 0, 0], vec![0, 0, 0]),
        zeros: vec![
            vec![(vec![1, 0, 0], vec![0, 0, 0])],
            vec![(vec![0, 1, 0], vec![0, 0, 0])],
            vec![(vec![0, 0, 1], vec![0, 0, 0])],
            vec![(vec![1, 1, 1], vec![1, 1, 1])],
        ],
    }
}

fn flat_index(scenario: &Scenario, settings: &[usize], outcomes: &[usize]) -> Result<usize> {
    let mut offset = 0;
    let s = scenario.setting_index(settings)?;
    for r in 0..s {
        offset += scenario.outcome_tuple_count(&scenario.setting_tuple(r));
    }
    Ok(offset + scenario.outcome_index(settings, outcomes)?)
}

fn table_size(scenario: &Scenario) -> usize {
    scenario
        .setting_tuples()
        .iter()
        .map(|s| scenario.outcome_tuple_count(s))
        .sum()
}

/// Add normalization and no-signalling equalities over a flattened behavior
/// vector, with variable indices shifted by `offset` in an LP with
/// `lp_vars` total variables. When `mass` is `None` the rows are normalized
/// to 1; otherwise the total mass per setting is tied to the variable at
/// `mass` (for subnormalized boxes).
fn push_box_constraints(
    lp: &mut LinearProgram,
    scenario: &Scenario,
    offset: usize,
    mass: Option<usize>,
) {
    let n = lp.num_vars;
    // Row normalization (or equal total mass across setting tuples).
    let tuples = scenario.setting_tuples();
    for (r, settings) in tuples.iter().enumerate() {
        let mut row = vec![0.0; n];
        for o in 0..scenario.outcome_tuple_count(settings) {
            let idx = flat_index(scenario, settings, &scenario.outcome_tuple(settings, o))
                .expect("valid enumeration");
            row[offset + idx] = 1.0;
        }
        match mass {
            None => lp.push_eq(row, 1.0),
            Some(mass_var) => {
                if r == 0 {
                    row[mass_var] -= 1.0;
                    lp.push_eq(row, 0.0);
                } else {
                    // Equal mass across setting tuples.
                    let first = tuples.first().expect("nonempty");
                    for o in 0..scenario.outcome_tuple_count(first) {
                        let idx = flat_index(scenario, first, &scenario.outcome_tuple(first, o))
                            .expect("valid enumeration");
                        row[offset + idx] -= 1.0;
                    }
                    lp.push_eq(row, 0.0);
                }
            }
        }
    }
    // No-signalling equalities: party marginals independent of that party's
    // setting, for each joint choice of the others.
    let sc = scenario;
    for party in 0..sc.parties() {
        for settings in sc.setting_tuples() {
            if settings[party] == 0 {
                continue;
            }
            let mut reference = settings.clone();
            reference[party] = 0;
            let counts = sc.outcome_counts(&settings);
            let mut other_total = 1;
            for (k, &c) in counts.iter().enumerate() {
                if k != party {
                    other_total *= c;
                }
            }
            for other_idx in 0..other_total {
                let mut rem = other_idx;
                let mut others = vec![0usize; counts.len()];
                for k in (0..counts.len()).rev() {
                    if k == party {
                        continue;
                    }
                    others[k] = rem % counts[k];
                    rem /= counts[k];
                }
                let mut row = vec![0.0; n];
                for o in 0..counts[party] {
                    let mut outcome = others.clone();
                    outcome[party] = o;
                    let idx = flat_index(sc, &settings, &outcome).expect("valid entry");
                    row[offset + idx] += 1.0;
                    let idx_ref = flat_index(sc, &reference, &outcome).expect("valid entry");
                    row[offset + idx_ref] -= 1.0;
                }
                lp.push_eq(row, 0.0);
            }
        }
    }
}

/// Maximize the target clause over all no-signalling behaviors whose zero
/// clauses vanish. Returns the optimum and an extremal behavior attaining it.
pub fn gnlt_max_hardy(clauses: &HardyClauses) -> Result<(f64, Behavior)> {
    let sc = &clauses.scenario;
    let n = table_size(sc);
    let mut lp = LinearProgram::new(n);
    push_box_constraints(&mut lp, sc, 0, None);
    for clause in &clauses.zeros {
        for (settings, outcomes) in clause {
            let mut row = vec![0.0; n];
            row[flat_index(sc, settings, outcomes)?] = 1.0;
            lp.push_eq(row, 0.0);
        }
    }
    lp.objective[flat_index(sc, &clauses.target.0, &clauses.target.1)?] = 1.0;

    match solve(&lp)? {
        LpSolution::Optimal { value, x, .. } => {
            let mut rows = Vec::new();
            let mut cursor = 0;
            for settings in sc.setting_tuples() {
                let len = sc.outcome_tuple_count(&settings);
                let mut row: Vec<f64> = x[cursor..cursor + len].to_vec();
                // Clean LP round-off before constructing the behavior.
                let sum: f64 = row.iter().sum();
                if sum > 0.0 {
                    for p in row.iter_mut() {
                        *p = (*p / sum).clamp(0.0, 1.0);
                    }
                }
                rows.push(row);
                cursor += len;
            }
            Ok((value, Behavior::new(sc.clone(), rows)?))
        }
        LpSolution::Infeasible { gap, .. } => Err(Error::Infeasible(format!(
            "clause map admits no no-signalling behavior (gap {gap:.3e})"
        ))),
        LpSolution::Unbounded => Err(Error::Infeasible(
            "bounded polytope cannot yield an unbounded value".into(),
        )),
    }
}

/// The CH-type combination q1 − q2 − q3 − q4; nonpositive for every behavior
/// with a local model.
pub fn ch_value(cert: &HardyCertificate) -> f64 {
    cert.q1 - cert.q2 - cert.q3 - cert.q4
}

/// Min-entropy of the outcome distribution at one setting tuple:
/// −log2 max_outcomes p(outcomes | settings).
pub fn min_entropy(behavior: &Behavior, settings: &[usize]) -> Result<f64> {
    let s = behavior.scenario().setting_index(settings)?;
    let max = behavior.rows()[s]
        .iter()
        .cloned()
        .fold(f64::MIN, f64::max);
    if max <= 0.0 {
        return Err(Error::InvalidInput("empty outcome row".into()));
    }
    Ok(-max.log2())
}

/// Randomness certified by the constraints alone: the LP maximum of any
/// single outcome-pair probability at `settings` over no-signalling
/// behaviors reproducing `behavior`, as −log2 of the optimum.
///
/// The intended input is the behavior pinned down by a Hardy constraint set:
/// at the maximal success probability the zero clauses and the value of the
/// nonzero clause self-test the state and measurements, so the full table is
/// determined and stands in for the constraint set. Errors with
/// [`Error::Infeasible`] when the table is not consistent with
/// no-signalling.
pub fn adversarial_min_entropy(behavior: &Behavior, settings: &[usize]) -> Result<f64> {
    let sc = behavior.scenario().clone();
    sc.setting_index(settings)?;
    let n = table_size(&sc);
    let flat: Vec<f64> = behavior.rows().iter().flatten().copied().collect();
    let mut best = 0.0f64;
    for o in 0..sc.outcome_tuple_count(settings) {
        let mut lp = LinearProgram::new(n);
        push_box_constraints(&mut lp, &sc, 0, None);
        for (e, value) in flat.iter().enumerate() {
            let mut row = vec![0.0; n];
            row[e] = 1.0;
            lp.push_eq(row, *value);
        }
        let outcomes = sc.outcome_tuple(settings, o);
        lp.objective[flat_index(&sc, settings, &outcomes)?] = 1.0;
        match solve(&lp)? {
            LpSolution::Optimal { value, .. } => best = best.max(value),
            LpSolution::Infeasible { gap, .. } => {
                return Err(Error::Infeasible(format!(
                    "constraints are inconsistent with no-signalling (gap {gap:.3e})"
                )))
            }
            LpSolution::Unbounded => {
                return Err(Error::Infeasible("probability objective cannot be unbounded".into()))
            }
        }
    }
    if best <= 0.0 {
        return Err(Error::Infeasible("guessing probability vanished".into()));
    }
    Ok(-best.log2())
}

/// Guessing bound against a no-signalling adversary holding side
/// information: the largest probability with which the outcome pair at
/// `settings` can be guessed, over decompositions of `behavior` into
/// subnormalized no-signalling boxes (one per guess, summing to the observed
/// table entrywise). Returned as a min-entropy, −log2 of the LP optimum.
///
/// This bound is much weaker than its quantum-set counterpart because a
/// no-signalling adversary may decompose the statistics into supra-quantum
/// boxes.
pub fn ns_guessing_min_entropy(behavior: &Behavior, settings: &[usize]) -> Result<f64> {
    let sc = behavior.scenario().clone();
    sc.setting_index(settings)?;
    let n = table_size(&sc);
    let guesses = sc.outcome_tuple_count(settings);
    // One box per guess, plus one mass variable per guess.
    let num_vars = guesses * n + guesses;
    let mut lp = LinearProgram::new(num_vars);
    for g in 0..guesses {
        push_box_constraints(&mut lp, &sc, g * n, Some(guesses * n + g));
    }
    // Consistency: the boxes sum to the observed behavior entrywise.
    let flat: Vec<f64> = behavior.rows().iter().flatten().copied().collect();
    for e in 0..n {
        let mut row = vec![0.0; num_vars];
        for g in 0..guesses {
            row[g * n + e] = 1.0;
        }
        lp.push_eq(row, flat[e]);
    }
    // Objective: each box pays out on its own guess at the target settings.
    for g in 0..guesses {
        let outcomes = sc.outcome_tuple(settings, g);
        lp.objective[g * n + flat_index(&sc, settings, &outcomes)?] = 1.0;
    }
    match solve(&lp)? {
        LpSolution::Optimal { value, .. } => {
            if value <= 0.0 {
                return Err(Error::Infeasible("guessing probability vanished".into()));
            }
            Ok(-value.log2())
        }
        LpSolution::Infeasible { gap, .. } => Err(Error::Infeasible(format!(
            "behavior admits no no-signalling decomposition (gap {gap:.3e}); \
             is it no-signalling itself?"
        ))),
        LpSolution::Unbounded => Err(Error::Infeasible("guessing LP cannot be unbounded".into())),
    }
}

/// Maximum of the target clause over *local* behaviors satisfying the zero
/// clauses: an LP over strategy weights. Zero by the Hardy argument.
pub fn local_max_hardy(clauses: &HardyClauses) -> Result<f64> {
    let sc = &clauses.scenario;
    let strategies = enumerate_deterministic(sc)?;
    let tables: Vec<Vec<f64>> = strategies
        .iter()
        .map(|s| {
            s.behavior(sc)
                .map(|b| b.rows().iter().flatten().copied().collect())
        })
        .collect::<Result<_>>()?;
    let mut lp = LinearProgram::new(strategies.len());
    lp.push_eq(vec![1.0; strategies.len()], 1.0);
    for clause in &clauses.zeros {
        for (settings, outcomes) in clause {
            let e = flat_index(sc, settings, outcomes)?;
            let row: Vec<f64> = tables.iter().map(|t| t[e]).collect();
            lp.push_eq(row, 0.0);
        }
    }
    let target = flat_index(sc, &clauses.target.0, &clauses.target.1)?;
    lp.objective = tables.iter().map(|t| t[target]).collect();
    match solve(&lp)? {
        LpSolution::Optimal { value, .. } => Ok(value),
        LpSolution::Infeasible { .. } => Err(Error::Infeasible("no local behavior satisfies the zero clauses".into())),
        LpSolution::Unbounded => Err(Error::Infeasible("weight simplex is bounded".into())),
    }
}

/// Certificate evaluated with the default tolerances from a raw behavior via
/// the standard bipartite roles; convenience for polytope-side checks.
pub fn bipartite_certificate(behavior: &Behavior) -> Result<HardyCertificate> {
    crate::hardy::hardy_witness(
        behavior,
        &crate::hardy::HardyRoles::default(),
        &Tolerances::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_strategies_for_the_bipartite_scenario() {
        let sc = Scenario::bipartite_dichotomic();
        assert_eq!(strategy_count(&sc), 16);
        assert_eq!(enumerate_deterministic(&sc).unwrap().len(), 16);
    }

    #[test]
    fn sixty_four_strategies_for_three_parties() {
        let sc = Scenario::tripartite_dichotomic();
        assert_eq!(enumerate_deterministic(&sc).unwrap().len(), 64);
    }

    #[test]
    fn cap_is_enforced() {
        let sc = Scenario::bipartite_dichotomic();
        assert!(matches!(
            enumerate_deterministic_capped(&sc, 10),
            Err(Error::SizeLimit { count: 16, cap: 10 })
        ));
    }

    #[test]
    fn strategy_behaviors_are_predictable_and_no_signalling() {
        let sc = Scenario::bipartite_dichotomic();
        for strat in enumerate_deterministic(&sc).unwrap() {
            let b = strat.behavior(&sc).unwrap();
            assert!(is_predictable(&b));
            assert!(is_no_signalling(&b));
        }
    }

    #[test]
    fn uniform_behavior_is_local() {
        let sc = Scenario::bipartite_dichotomic();
        let b = Behavior::new(sc, vec![vec![0.25; 4]; 4]).unwrap();
        let model = is_local(&b).unwrap().expect("uniform is local");
        assert!(model.reconstruction_error(&b).unwrap() < 1e-8);
    }

    #[test]
    fn each_strategy_is_local_with_unit_weight() {
        let sc = Scenario::bipartite_dichotomic();
        for strat in enumerate_deterministic(&sc).unwrap().into_iter().take(4) {
            let b = strat.behavior(&sc).unwrap();
            let model = is_local(&b).unwrap().expect("vertices are local");
            assert!(model.reconstruction_error(&b).unwrap() < 1e-9);
        }
    }

    #[test]
    fn gnlt_bipartite_maximum_is_one_half() {
        let (value, extremal) = gnlt_max_hardy(&bipartite_clauses()).unwrap();
        assert!((value - 0.5).abs() < 1e-9, "value {value}");
        assert!(is_no_signalling(&extremal));
        assert!(extremal.prob(&[1, 0], &[1, 0]).unwrap() < 1e-9);
    }

    #[test]
    fn gnlt_tripartite_maximum_is_one_half() {
        let (value, extremal) = gnlt_max_hardy(&tripartite_clauses()).unwrap();
        assert!((value - 0.5).abs() < 1e-9, "value {value}");
        assert!(is_no_signalling(&extremal));
    }

    #[test]
    fn local_hardy_maximum_is_zero() {
        let value = local_max_hardy(&bipartite_clauses()).unwrap();
        assert!(value.abs() < 1e-9, "value {value}");
    }

    #[test]
    fn min_entropy_of_uniform_and_deterministic_rows() {
        let sc = Scenario::bipartite_dichotomic();
        let uniform = Behavior::new(sc.clone(), vec![vec![0.25; 4]; 4]).unwrap();
        assert!((min_entropy(&uniform, &[0, 0]).unwrap() - 2.0).abs() < 1e-12);
        let strategies = enumerate_deterministic(&sc).unwrap();
        let det = strategies[0].behavior(&sc).unwrap();
        assert!(min_entropy(&det, &[0, 0]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn no_predictable_no_signalling_behavior_satisfies_the_clauses() {
        // Exhaustive over the deterministic strategies, which are exactly the
        // predictable no-signalling behaviors of this scenario.
        let sc = Scenario::bipartite_dichotomic();
        for strat in enumerate_deterministic(&sc).unwrap() {
            let b = strat.behavior(&sc).unwrap();
            assert!(is_predictable(&b) && is_no_signalling(&b));
            let cert = bipartite_certificate(&b).unwrap();
            assert!(!cert.satisfied);
        }
    }

    #[test]
    fn ch_value_of_deterministic_strategies_is_nonpositive() {
        let sc = Scenario::bipartite_dichotomic();
        for strat in enumerate_deterministic(&sc).unwrap() {
            let cert = bipartite_certificate(&strat.behavior(&sc).unwrap()).unwrap();
            assert!(ch_value(&cert) <= 1e-9);
        }
    }
}
