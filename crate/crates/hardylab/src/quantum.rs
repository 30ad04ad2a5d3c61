//! Quantum states, projective measurements, Born-rule behavior tables, and a
//! seeded finite-statistics sampler.
//!
//! Outcome labeling convention: for a two-outcome (±1) observable, outcome
//! index 0 is +1 and index 1 is −1. Measurements with d outcomes use indices
//! 0..d−1 together with whatever label map the caller attaches (spin
//! measurements order outcomes by decreasing spin value).

use crate::error::{Error, Result};
use crate::numerics::{c64, kron, projector, Complex64, ComplexMatrix, Ket};
use crate::tol::{TOL_HERM, TOL_NORM, TOL_ROW_SUM};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Identifier of the sampling RNG, recorded in reports for reproducibility.
pub const RNG_ID: &str = "chacha12(seed_from_u64)";

/// A pure state of a multipartite system with fixed local dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    ket: Ket,
    local_dims: Vec<usize>,
}

impl PureState {
    pub fn new(ket: Ket, local_dims: Vec<usize>) -> Result<Self> {
        let product: usize = local_dims.iter().product();
        if local_dims.is_empty() || product != ket.dim() {
            return Err(Error::DimensionMismatch(format!(
                "local dims {:?} do not factor dimension {}",
                local_dims,
                ket.dim()
            )));
        }
        if !ket.is_normalized(TOL_NORM) {
            return Err(Error::NotNormalized((ket.norm() - 1.0).abs()));
        }
        Ok(PureState { ket, local_dims })
    }

    pub fn ket(&self) -> &Ket {
        &self.ket
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn parties(&self) -> usize {
        self.local_dims.len()
    }

    /// Density matrix |ψ〉〈ψ|.
    pub fn density(&self) -> ComplexMatrix {
        projector(&self.ket).expect("state ket is normalized")
    }
}

/// A two-outcome (±1) projective measurement stored as its +1 projector.
/// The −1 effect is the complement `I − P`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    plus_projector: ComplexMatrix,
}

impl Observable {
    pub fn new(plus_projector: ComplexMatrix) -> Result<Self> {
        crate::numerics::require_projector(&plus_projector)?;
        Ok(Observable { plus_projector })
    }

    /// Rank-one observable from the +1 eigenvector.
    pub fn from_plus_eigvec(v: &Ket) -> Result<Self> {
        Observable::new(projector(v)?)
    }

    /// Qubit observable with +1 eigenvector (cos(θ/2), e^{iφ} sin(θ/2)).
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let v = Ket::new(vec![
            c64((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ])
        .expect("finite angles");
        Observable::from_plus_eigvec(&v.normalized().expect("unit")).expect("projector")
    }

    pub fn dim(&self) -> usize {
        self.plus_projector.rows()
    }

    pub fn plus_projector(&self) -> &ComplexMatrix {
        &self.plus_projector
    }

    pub fn minus_projector(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim()).sub(&self.plus_projector)
    }

    /// The ±1 operator `P₊ − P₋ = 2P₊ − I`.
    pub fn matrix(&self) -> ComplexMatrix {
        self.plus_projector
            .scale(c64(2.0, 0.0))
            .sub(&ComplexMatrix::identity(self.dim()))
    }

    /// Effect for outcome index 0 (+1) or 1 (−1).
    pub fn effect(&self, outcome: usize) -> ComplexMatrix {
        match outcome {
            0 => self.plus_projector.clone(),
            1 => self.minus_projector(),
            _ => panic!("two-outcome observable has outcomes 0 and 1"),
        }
    }

    /// Frobenius norm of the commutator [self, other].
    pub fn commutator_norm(&self, other: &Observable) -> f64 {
        let a = self.matrix();
        let b = other.matrix();
        a.mul(&b).sub(&b.mul(&a)).frobenius_norm()
    }

    pub fn to_measurement(&self) -> GeneralMeasurement {
        GeneralMeasurement::new(vec![self.plus_projector.clone(), self.minus_projector()])
            .expect("observable effects are complete")
    }
}

/// A projective measurement with any number of mutually orthogonal effects
/// summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMeasurement {
    effects: Vec<ComplexMatrix>,
}

impl GeneralMeasurement {
    pub fn new(effects: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = effects
            .first()
            .map(ComplexMatrix::rows)
            .ok_or_else(|| Error::DimensionMismatch("measurement needs at least one effect".into()))?;
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &effects {
            crate::numerics::require_projector(e)?;
            if e.rows() != dim {
                return Err(Error::DimensionMismatch("effect dimensions differ".into()));
            }
            sum = sum.add(e);
        }
        let completeness = sum.sub(&ComplexMatrix::identity(dim)).frobenius_norm();
        if completeness > TOL_HERM {
            return Err(Error::DimensionMismatch(format!(
                "effects do not sum to identity (residual {completeness:.3e})"
            )));
        }
        for i in 0..effects.len() {
            for j in (i + 1)..effects.len() {
                let cross = effects[i].mul(&effects[j]).frobenius_norm();
                if cross > TOL_HERM {
                    return Err(Error::DimensionMismatch(format!(
                        "effects {i} and {j} are not orthogonal (residual {cross:.3e})"
                    )));
                }
            }
        }
        Ok(GeneralMeasurement { effects })
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].rows()
    }

    pub fn effect(&self, outcome: usize) -> &ComplexMatrix {
        &self.effects[outcome]
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }
}

/// Party, setting, and outcome counts of a measurement scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    settings_per_party: Vec<usize>,
    outcomes_per_setting: Vec<Vec<usize>>,
}

impl Scenario {
    pub fn new(settings_per_party: Vec<usize>, outcomes_per_setting: Vec<Vec<usize>>) -> Result<Self> {
        if settings_per_party.is_empty() || settings_per_party.len() != outcomes_per_setting.len() {
            return Err(Error::ScenarioMismatch(
                "settings and outcome lists must cover the same parties".into(),
            ));
        }
        for (k, (s, outs)) in settings_per_party
            .iter()
            .zip(outcomes_per_setting.iter())
            .enumerate()
        {
            if *s == 0 || outs.len() != *s || outs.iter().any(|&o| o == 0) {
                return Err(Error::ScenarioMismatch(format!(
                    "party {k} needs at least one setting and one outcome per setting"
                )));
            }
        }
        Ok(Scenario {
            settings_per_party,
            outcomes_per_setting,
        })
    }

    /// Two parties, two settings, two outcomes: the Hardy scenario.
    pub fn bipartite_dichotomic() -> Self {
        Scenario::new(vec![2, 2], vec![vec![2, 2], vec![2, 2]]).expect("valid")
    }

    /// Three parties, two settings, two outcomes.
    pub fn tripartite_dichotomic() -> Self {
        Scenario::new(vec![2, 2, 2], vec![vec![2, 2], vec![2, 2], vec![2, 2]]).expect("valid")
    }

    /// Two parties, two settings, d outcomes per setting.
    pub fn two_party_d_outcome(d: usize) -> Self {
        Scenario::new(vec![2, 2], vec![vec![d, d], vec![d, d]]).expect("valid")
    }

    pub fn parties(&self) -> usize {
        self.settings_per_party.len()
    }

    pub fn settings_per_party(&self) -> &[usize] {
        &self.settings_per_party
    }

    pub fn outcomes_per_setting(&self) -> &[Vec<usize>] {
        &self.outcomes_per_setting
    }

    pub fn setting_tuple_count(&self) -> usize {
        self.settings_per_party.iter().product()
    }

    /// Flat index of a setting tuple (mixed radix, first party slowest).
    pub fn setting_index(&self, settings: &[usize]) -> Result<usize> {
        if settings.len() != self.parties() {
            return Err(Error::ScenarioMismatch("settings tuple has wrong arity".into()));
        }
        let mut idx = 0;
        for (k, &s) in settings.iter().enumerate() {
            if s >= self.settings_per_party[k] {
                return Err(Error::ScenarioMismatch(format!(
                    "setting {s} out of range for party {k}"
                )));
            }
            idx = idx * self.settings_per_party[k] + s;
        }
        Ok(idx)
    }

    pub fn setting_tuple(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.parties()];
        for k in (0..self.parties()).rev() {
            tuple[k] = index % self.settings_per_party[k];
            index /= self.settings_per_party[k];
        }
        tuple
    }

    /// Outcome counts per party under a given setting tuple.
    pub fn outcome_counts(&self, settings: &[usize]) -> Vec<usize> {
        settings
            .iter()
            .enumerate()
            .map(|(k, &s)| self.outcomes_per_setting[k][s])
            .collect()
    }

    pub fn outcome_tuple_count(&self, settings: &[usize]) -> usize {
        self.outcome_counts(settings).iter().product()
    }

    pub fn outcome_index(&self, settings: &[usize], outcomes: &[usize]) -> Result<usize> {
        let counts = self.outcome_counts(settings);
        if outcomes.len() != counts.len() {
            return Err(Error::ScenarioMismatch("outcome tuple has wrong arity".into()));
        }
        let mut idx = 0;
        for (k, (&o, &n)) in outcomes.iter().zip(counts.iter()).enumerate() {
            if o >= n {
                return Err(Error::ScenarioMismatch(format!(
                    "outcome {o} out of range for party {k}"
                )));
            }
            idx = idx * n + o;
        }
        Ok(idx)
    }

    pub fn outcome_tuple(&self, settings: &[usize], mut index: usize) -> Vec<usize> {
        let counts = self.outcome_counts(settings);
        let mut tuple = vec![0; counts.len()];
        for k in (0..counts.len()).rev() {
            tuple[k] = index % counts[k];
            index /= counts[k];
        }
        tuple
    }

    /// All setting tuples in flat-index order.
    pub fn setting_tuples(&self) -> Vec<Vec<usize>> {
        (0..self.setting_tuple_count()).map(|i| self.setting_tuple(i)).collect()
    }
}

/// The full joint probability table p(outcomes | settings) of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior {
    scenario: Scenario,
    rows: Vec<Vec<f64>>,
}

impl Behavior {
    /// Validate entries in [0, 1] (tiny negative round-off is clamped) and
    /// row sums equal to 1 within `TOL_ROW_SUM`.
    pub fn new(scenario: Scenario, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != scenario.setting_tuple_count() {
            return Err(Error::ScenarioMismatch(format!(
                "table has {} rows, scenario needs {}",
                rows.len(),
                scenario.setting_tuple_count()
            )));
        }
        let mut clean = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            let settings = scenario.setting_tuple(i);
            let expect = scenario.outcome_tuple_count(&settings);
            if row.len() != expect {
                return Err(Error::ScenarioMismatch(format!(
                    "row {i} has {} entries, expected {expect}",
                    row.len()
                )));
            }
            let mut sum = 0.0;
            let mut fixed = Vec::with_capacity(row.len());
            for p in row {
                if !p.is_finite() || p < -1e-12 || p > 1.0 + 1e-9 {
                    return Err(Error::ScenarioMismatch(format!(
                        "entry {p} in row {i} is not a probability"
                    )));
                }
                let p = p.clamp(0.0, 1.0);
                sum += p;
                fixed.push(p);
            }
            if (sum - 1.0).abs() > TOL_ROW_SUM {
                return Err(Error::ScenarioMismatch(format!(
                    "row {i} sums to {sum}, not 1"
                )));
            }
            clean.push(fixed);
        }
        Ok(Behavior { scenario, rows: clean })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn prob(&self, settings: &[usize], outcomes: &[usize]) -> Result<f64> {
        let s = self.scenario.setting_index(settings)?;
        let o = self.scenario.outcome_index(settings, outcomes)?;
        Ok(self.rows[s][o])
    }

    /// Marginal probability of `party` producing `outcome` under a full
    /// setting tuple, summing over the other parties' outcomes.
    pub fn marginal(&self, party: usize, outcome: usize, settings: &[usize]) -> Result<f64> {
        let s = self.scenario.setting_index(settings)?;
        let n = self.scenario.outcome_tuple_count(settings);
        let mut total = 0.0;
        for idx in 0..n {
            let tuple = self.scenario.outcome_tuple(settings, idx);
            if tuple[party] == outcome {
                total += self.rows[s][idx];
            }
        }
        Ok(total)
    }
}

/// Evaluate the Born rule: table entries 〈ψ|(⊗ effects)|ψ〉 for every setting
/// and outcome tuple. `measurements[party][setting]` fixes the measurement.
pub fn born_behavior(state: &PureState, measurements: &[Vec<GeneralMeasurement>]) -> Result<Behavior> {
    if measurements.len() != state.parties() {
        return Err(Error::DimensionMismatch(format!(
            "{} measurement lists for {} parties",
            measurements.len(),
            state.parties()
        )));
    }
    for (k, per_party) in measurements.iter().enumerate() {
        if per_party.is_empty() {
            return Err(Error::DimensionMismatch(format!("party {k} has no settings")));
        }
        for m in per_party {
            if m.dim() != state.local_dims()[k] {
                return Err(Error::DimensionMismatch(format!(
                    "measurement dimension {} does not match local dimension {} of party {k}",
                    m.dim(),
                    state.local_dims()[k]
                )));
            }
        }
    }
    let scenario = Scenario::new(
        measurements.iter().map(Vec::len).collect(),
        measurements
            .iter()
            .map(|per_party| per_party.iter().map(GeneralMeasurement::outcomes).collect())
            .collect(),
    )?;

    let mut rows = Vec::with_capacity(scenario.setting_tuple_count());
    for s in 0..scenario.setting_tuple_count() {
        let settings = scenario.setting_tuple(s);
        let n = scenario.outcome_tuple_count(&settings);
        let mut row = Vec::with_capacity(n);
        for o in 0..n {
            let outcomes = scenario.outcome_tuple(&settings, o);
            let mut op: Option<ComplexMatrix> = None;
            for (party, (&setting, &outcome)) in settings.iter().zip(outcomes.iter()).enumerate() {
                let effect = measurements[party][setting].effect(outcome);
                op = Some(match op {
                    None => effect.clone(),
                    Some(acc) => kron(&acc, effect),
                });
            }
            let p = op.expect("at least one party").expectation(state.ket());
            row.push(p.max(0.0));
        }
        rows.push(row);
    }
    Behavior::new(scenario, rows)
}

/// Per-trial setting selection used by the sampler.
#[derive(Debug, Clone, PartialEq)]
pub enum SettingsPolicy {
    /// Choose a setting tuple uniformly at random each trial.
    Uniform,
    /// Use one fixed setting tuple for every trial.
    Fixed(Vec<usize>),
    /// Cycle through setting tuples in flat-index order.
    Cycle,
}

/// Empirical counts from a finite sampling run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleCounts {
    scenario: Scenario,
    counts: Vec<Vec<u64>>,
    trials: u64,
    seed: u64,
}

impl SampleCounts {
    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Trials that used the given setting tuple.
    pub fn trials_at(&self, settings: &[usize]) -> Result<u64> {
        let s = self.scenario.setting_index(settings)?;
        Ok(self.counts[s].iter().sum())
    }

    /// Empirical frequency of an outcome tuple conditioned on its setting
    /// tuple; 0 when that setting was never sampled.
    pub fn frequency(&self, settings: &[usize], outcomes: &[usize]) -> Result<f64> {
        let s = self.scenario.setting_index(settings)?;
        let o = self.scenario.outcome_index(settings, outcomes)?;
        let total: u64 = self.counts[s].iter().sum();
        if total == 0 {
            return Ok(0.0);
        }
        Ok(self.counts[s][o] as f64 / total as f64)
    }

    /// Frequency table as a behavior-shaped row list (rows with no trials
    /// come back as empty-sum zeros and are *not* normalized).
    pub fn frequencies(&self) -> Vec<Vec<f64>> {
        self.counts
            .iter()
            .map(|row| {
                let total: u64 = row.iter().sum();
                row.iter()
                    .map(|&c| if total == 0 { 0.0 } else { c as f64 / total as f64 })
                    .collect()
            })
            .collect()
    }
}

/// Draw `n` trials from a behavior. Deterministic for a fixed seed; the
/// generator is ChaCha12 seeded with `seed` (see [`RNG_ID`]).
pub fn sample_behavior(
    behavior: &Behavior,
    policy: &SettingsPolicy,
    n: u64,
    seed: u64,
) -> Result<SampleCounts> {
    if n == 0 {
        return Err(Error::InvalidInput("sample size must be at least 1".into()));
    }
    let scenario = behavior.scenario().clone();
    if let SettingsPolicy::Fixed(settings) = policy {
        scenario.setting_index(settings)?;
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut counts: Vec<Vec<u64>> = behavior.rows().iter().map(|r| vec![0u64; r.len()]).collect();
    let tuple_count = scenario.setting_tuple_count();
    for trial in 0..n {
        let s = match policy {
            SettingsPolicy::Uniform => rng.gen_range(0..tuple_count),
            SettingsPolicy::Fixed(settings) => scenario.setting_index(settings)?,
            SettingsPolicy::Cycle => (trial as usize) % tuple_count,
        };
        let row = &behavior.rows()[s];
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut chosen = row.len() - 1;
        for (o, p) in row.iter().enumerate() {
            acc += p;
            if u < acc {
                chosen = o;
                break;
            }
        }
        counts[s][chosen] += 1;
    }
    Ok(SampleCounts {
        scenario,
        counts,
        trials: n,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn computational_measurement() -> GeneralMeasurement {
        GeneralMeasurement::new(vec![
            projector(&Ket::basis_state(2, 0)).unwrap(),
            projector(&Ket::basis_state(2, 1)).unwrap(),
        ])
        .unwrap()
    }

    fn ket00() -> PureState {
        PureState::new(Ket::basis_state(4, 0), vec![2, 2]).unwrap()
    }

    #[test]
    fn born_product_state_computational_basis() {
        let m = computational_measurement();
        let b = born_behavior(&ket00(), &[vec![m.clone()], vec![m]]).unwrap();
        assert!((b.prob(&[0, 0], &[0, 0]).unwrap() - 1.0).abs() < 1e-15);
        assert!(b.prob(&[0, 0], &[0, 1]).unwrap() < 1e-15);
        assert!(b.prob(&[0, 0], &[1, 1]).unwrap() < 1e-15);
    }

    #[test]
    fn born_maximally_entangled_correlations() {
        let phi = Ket::from_real(&[1.0 / 2f64.sqrt(), 0.0, 0.0, 1.0 / 2f64.sqrt()]).unwrap();
        let state = PureState::new(phi, vec![2, 2]).unwrap();
        let m = computational_measurement();
        let b = born_behavior(&state, &[vec![m.clone()], vec![m]]).unwrap();
        assert!((b.prob(&[0, 0], &[0, 0]).unwrap() - 0.5).abs() < 1e-12);
        assert!((b.prob(&[0, 0], &[1, 1]).unwrap() - 0.5).abs() < 1e-12);
        assert!(b.prob(&[0, 0], &[0, 1]).unwrap() < 1e-12);
    }

    #[test]
    fn born_rows_are_normalized_and_phase_invariant() {
        let mut seed = 5u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for _ in 0..10 {
            let raw = Ket::new((0..4).map(|_| c64(next(), next())).collect()).unwrap();
            let ket = raw.normalized().unwrap();
            let state = PureState::new(ket.clone(), vec![2, 2]).unwrap();
            let ms = vec![
                vec![
                    Observable::from_bloch(next() * 3.0, next() * 3.0).to_measurement(),
                    Observable::from_bloch(next() * 3.0, next() * 3.0).to_measurement(),
                ],
                vec![
                    Observable::from_bloch(next() * 3.0, next() * 3.0).to_measurement(),
                    Observable::from_bloch(next() * 3.0, next() * 3.0).to_measurement(),
                ],
            ];
            let b = born_behavior(&state, &ms).unwrap();
            for row in b.rows() {
                let sum: f64 = row.iter().sum();
                assert!((sum - 1.0).abs() < 1e-12);
            }
            // Global phase leaves the table unchanged.
            let theta = 1.234;
            let phased = ket.scale(Complex64::from_polar(1.0, theta));
            let state2 = PureState::new(phased, vec![2, 2]).unwrap();
            let b2 = born_behavior(&state2, &ms).unwrap();
            for (r1, r2) in b.rows().iter().zip(b2.rows()) {
                for (p1, p2) in r1.iter().zip(r2) {
                    assert!((p1 - p2).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn sampler_is_deterministic_and_concentrates() {
        let scenario = Scenario::new(vec![1, 1], vec![vec![2], vec![2]]).unwrap();
        let fair = Behavior::new(scenario, vec![vec![0.25, 0.25, 0.25, 0.25]]).unwrap();
        let c1 = sample_behavior(&fair, &SettingsPolicy::Fixed(vec![0, 0]), 1_000_000, 7).unwrap();
        let c2 = sample_behavior(&fair, &SettingsPolicy::Fixed(vec![0, 0]), 1_000_000, 7).unwrap();
        assert_eq!(c1.counts(), c2.counts());
        // Hoeffding: P(|f - 0.25| > 5e-3) <= 2 exp(-2 * 1e6 * 2.5e-5) ~ 4e-22,
        // so the 5e-3 envelope is sound for a fixed seed.
        for f in &c1.frequencies()[0] {
            assert!((f - 0.25).abs() < 5e-3, "frequency {f}");
        }
    }

    #[test]
    fn sampler_deterministic_behavior_all_counts_in_one_cell() {
        let scenario = Scenario::new(vec![1, 1], vec![vec![2], vec![2]]).unwrap();
        let det = Behavior::new(scenario, vec![vec![1.0, 0.0, 0.0, 0.0]]).unwrap();
        let c = sample_behavior(&det, &SettingsPolicy::Fixed(vec![0, 0]), 5000, 3).unwrap();
        assert_eq!(c.counts()[0], vec![5000, 0, 0, 0]);
    }

    #[test]
    fn sampler_rejects_zero_trials() {
        let scenario = Scenario::new(vec![1, 1], vec![vec![2], vec![2]]).unwrap();
        let b = Behavior::new(scenario, vec![vec![0.25, 0.25, 0.25, 0.25]]).unwrap();
        assert!(sample_behavior(&b, &SettingsPolicy::Uniform, 0, 1).is_err());
    }

    #[test]
    fn behavior_rejects_bad_rows() {
        let scenario = Scenario::bipartite_dichotomic();
        let mut rows = vec![vec![0.25; 4]; 4];
        rows[2][0] = 0.5; // row sums to 1.25
        assert!(Behavior::new(scenario, rows).is_err());
    }

    #[test]
    fn measurement_requires_completeness() {
        let p0 = projector(&Ket::basis_state(3, 0)).unwrap();
        let p1 = projector(&Ket::basis_state(3, 1)).unwrap();
        assert!(GeneralMeasurement::new(vec![p0, p1]).is_err());
    }
}
