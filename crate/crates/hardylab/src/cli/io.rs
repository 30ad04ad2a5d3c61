//! JSON schema for states, observables, measurements, and behaviors.
//!
//! Conventions: complex numbers are two-element arrays `[re, im]`, kets are
//! arrays of complex numbers, matrices are row-major nested arrays, and a
//! behavior is `{"scenario": ..., "table": {"x,y": [[...]]}}` where the table
//! key joins the setting indices with commas and the nested array is indexed
//! by outcome per party (outcome index 0 is +1 for two-outcome observables).

use crate::error::{Error, Result};
use crate::hardy::{HardyRoles, MinimalRoles, SettingRole};
use crate::numerics::{c64, ComplexMatrix, Ket};
use crate::quantum::{Behavior, GeneralMeasurement, Observable, PureState, Scenario};
use crate::temporal::{InitialState, TemporalScenario};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KetJson(pub Vec<[f64; 2]>);

impl From<&Ket> for KetJson {
    fn from(k: &Ket) -> Self {
        KetJson(k.entries().iter().map(|z| [z.re, z.im]).collect())
    }
}

impl KetJson {
    pub fn to_ket(&self) -> Result<Ket> {
        Ket::new(self.0.iter().map(|[re, im]| c64(*re, *im)).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<[f64; 2]>>);

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        MatrixJson(
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
                .collect(),
        )
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self.0.len();
        let cols = self.0.first().map(Vec::len).unwrap_or(0);
        if self.0.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let data = self
            .0
            .iter()
            .flatten()
            .map(|[re, im]| c64(*re, *im))
            .collect();
        ComplexMatrix::new(rows, cols, data)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioJson {
    pub settings_per_party: Vec<usize>,
    pub outcomes_per_setting: Vec<Vec<usize>>,
}

impl From<&Scenario> for ScenarioJson {
    fn from(s: &Scenario) -> Self {
        ScenarioJson {
            settings_per_party: s.settings_per_party().to_vec(),
            outcomes_per_setting: s.outcomes_per_setting().to_vec(),
        }
    }
}

impl ScenarioJson {
    pub fn to_scenario(&self) -> Result<Scenario> {
        Scenario::new(self.settings_per_party.clone(), self.outcomes_per_setting.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BehaviorJson {
    pub scenario: ScenarioJson,
    /// Keyed by comma-joined setting tuple; values are nested outcome arrays
    /// with one nesting level per party.
    pub table: BTreeMap<String, serde_json::Value>,
}

fn nest_row(scenario: &Scenario, settings: &[usize], row: &[f64]) -> serde_json::Value {
    fn build(counts: &[usize], row: &[f64], offset: &mut usize) -> serde_json::Value {
        match counts.split_first() {
            None => {
                let v = row[*offset];
                *offset += 1;
                serde_json::json!(v)
            }
            Some((&first, rest)) => {
                let items: Vec<serde_json::Value> =
                    (0..first).map(|_| build(rest, row, offset)).collect();
                serde_json::Value::Array(items)
            }
        }
    }
    let counts = scenario.outcome_counts(settings);
    let mut offset = 0;
    build(&counts, row, &mut offset)
}

fn flatten_row(value: &serde_json::Value, counts: &[usize], out: &mut Vec<f64>) -> Result<()> {
    match counts.split_first() {
        None => match value.as_f64() {
            Some(p) => {
                out.push(p);
                Ok(())
            }
            None => Err(Error::InvalidInput("table leaf is not a number".into())),
        },
        Some((&first, rest)) => {
            let arr = value
                .as_array()
                .ok_or_else(|| Error::InvalidInput("table level is not an array".into()))?;
            if arr.len() != first {
                return Err(Error::InvalidInput(format!(
                    "table level has {} entries, expected {first}",
                    arr.len()
                )));
            }
            for item in arr {
                flatten_row(item, rest, out)?;
            }
            Ok(())
        }
    }
}

impl From<&Behavior> for BehaviorJson {
    fn from(b: &Behavior) -> Self {
        let sc = b.scenario();
        let mut table = BTreeMap::new();
        for (i, row) in b.rows().iter().enumerate() {
            let settings = sc.setting_tuple(i);
            let key = settings
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            table.insert(key, nest_row(sc, &settings, row));
        }
        BehaviorJson {
            scenario: sc.into(),
            table,
        }
    }
}

impl BehaviorJson {
    pub fn to_behavior(&self) -> Result<Behavior> {
        let scenario = self.scenario.to_scenario()?;
        let mut rows = vec![Vec::new(); scenario.setting_tuple_count()];
        let mut seen = vec![false; scenario.setting_tuple_count()];
        for (key, value) in &self.table {
            let settings: Vec<usize> = key
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad setting key '{key}'")))
                })
                .collect::<Result<_>>()?;
            let idx = scenario.setting_index(&settings)?;
            let counts = scenario.outcome_counts(&settings);
            let mut row = Vec::with_capacity(scenario.outcome_tuple_count(&settings));
            flatten_row(value, &counts, &mut row)?;
            rows[idx] = row;
            seen[idx] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput("table is missing setting tuples".into()));
        }
        Behavior::new(scenario, rows)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub local_dims: Vec<usize>,
    pub ket: KetJson,
}

impl From<&PureState> for StateJson {
    fn from(s: &PureState) -> Self {
        StateJson {
            local_dims: s.local_dims().to_vec(),
            ket: s.ket().into(),
        }
    }
}

impl StateJson {
    pub fn to_state(&self) -> Result<PureState> {
        PureState::new(self.ket.to_ket()?, self.local_dims.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObservableJson {
    pub plus_projector: MatrixJson,
}

impl From<&Observable> for ObservableJson {
    fn from(o: &Observable) -> Self {
        ObservableJson {
            plus_projector: o.plus_projector().into(),
        }
    }
}

impl ObservableJson {
    pub fn to_observable(&self) -> Result<Observable> {
        Observable::new(self.plus_projector.to_matrix()?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasurementJson {
    pub effects: Vec<MatrixJson>,
}

impl From<&GeneralMeasurement> for MeasurementJson {
    fn from(m: &GeneralMeasurement) -> Self {
        MeasurementJson {
            effects: m.effects().iter().map(MatrixJson::from).collect(),
        }
    }
}

impl MeasurementJson {
    pub fn to_measurement(&self) -> Result<GeneralMeasurement> {
        GeneralMeasurement::new(
            self.effects
                .iter()
                .map(MatrixJson::to_matrix)
                .collect::<Result<_>>()?,
        )
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SettingRoleJson {
    pub setting: usize,
    pub plus_outcome: usize,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RolesJson {
    pub alice: SettingRoleJson,
    pub alice_primed: SettingRoleJson,
    pub bob: SettingRoleJson,
    pub bob_primed: SettingRoleJson,
}

impl RolesJson {
    pub fn to_roles(self) -> HardyRoles {
        let conv = |r: SettingRoleJson| SettingRole {
            setting: r.setting,
            plus_outcome: r.plus_outcome,
        };
        HardyRoles {
            alice: conv(self.alice),
            alice_primed: conv(self.alice_primed),
            bob: conv(self.bob),
            bob_primed: conv(self.bob_primed),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MinimalRolesJson {
    pub a1: usize,
    pub b1: usize,
    pub a2: usize,
    pub b2: usize,
}

impl MinimalRolesJson {
    pub fn to_roles(self) -> MinimalRoles {
        MinimalRoles {
            a1: self.a1,
            b1: self.b1,
            a2: self.a2,
            b2: self.b2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemporalJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_ket: Option<KetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_density: Option<MatrixJson>,
    /// The t1 observables [A, A'].
    pub first: Vec<ObservableJson>,
    /// The t2 observables [B, B'].
    pub second: Vec<ObservableJson>,
}

impl From<&TemporalScenario> for TemporalJson {
    fn from(sc: &TemporalScenario) -> Self {
        let (initial_ket, initial_density) = match &sc.initial {
            InitialState::Pure(k) => (Some(k.into()), None),
            InitialState::Mixed(m) => (None, Some(m.into())),
        };
        TemporalJson {
            initial_ket,
            initial_density,
            first: vec![(&sc.first.0).into(), (&sc.first.1).into()],
            second: vec![(&sc.second.0).into(), (&sc.second.1).into()],
        }
    }
}

impl TemporalJson {
    pub fn to_scenario(&self) -> Result<TemporalScenario> {
        let initial = match (&self.initial_ket, &self.initial_density) {
            (Some(k), None) => InitialState::Pure(k.to_ket()?),
            (None, Some(m)) => InitialState::Mixed(m.to_matrix()?),
            _ => {
                return Err(Error::InvalidInput(
                    "provide exactly one of initial_ket, initial_density".into(),
                ))
            }
        };
        if self.first.len() != 2 || self.second.len() != 2 {
            return Err(Error::InvalidInput("each time needs exactly two observables".into()));
        }
        TemporalScenario::new(
            initial,
            (self.first[0].to_observable()?, self.first[1].to_observable()?),
            (self.second[0].to_observable()?, self.second[1].to_observable()?),
        )
    }
}

/// Input accepted by the witness and polytope commands: either a behavior
/// table directly, a (state, observables-or-measurements) pair run through
/// the Born rule, or a sequential scenario for the temporal variant.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct WitnessInputJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub behavior: Option<BehaviorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<StateJson>,
    /// Per party, per setting two-outcome observables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observables: Option<Vec<Vec<ObservableJson>>>,
    /// Per party, per setting measurements with any outcome count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measurements: Option<Vec<Vec<MeasurementJson>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roles: Option<RolesJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_roles: Option<MinimalRolesJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temporal: Option<TemporalJson>,
}

impl WitnessInputJson {
    /// Resolve the input to a behavior.
    pub fn resolve_behavior(&self) -> Result<Behavior> {
        if let Some(b) = &self.behavior {
            return b.to_behavior();
        }
        if let Some(t) = &self.temporal {
            return crate::temporal::sequential_behavior(&t.to_scenario()?);
        }
        let state = self
            .state
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("input needs a behavior, temporal scenario, or state".into()))?
            .to_state()?;
        let measurements: Vec<Vec<GeneralMeasurement>> = if let Some(ms) = &self.measurements {
            ms.iter()
                .map(|per_party| per_party.iter().map(MeasurementJson::to_measurement).collect())
                .collect::<Result<_>>()?
        } else if let Some(obs) = &self.observables {
            obs.iter()
                .map(|per_party| {
                    per_party
                        .iter()
                        .map(|o| o.to_observable().map(|o| o.to_measurement()))
                        .collect()
                })
                .collect::<Result<_>>()?
        } else {
            return Err(Error::InvalidInput(
                "a state input needs observables or measurements".into(),
            ));
        };
        crate::quantum::born_behavior(&state, &measurements)
    }
}

/// Hex SHA-256 digest of raw input bytes, recorded in reports.
pub fn digest(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn behavior_round_trips() {
        let sc = Scenario::bipartite_dichotomic();
        let rows = vec![
            vec![0.1, 0.2, 0.3, 0.4],
            vec![0.25; 4],
            vec![0.5, 0.5, 0.0, 0.0],
            vec![0.0, 0.0, 0.25, 0.75],
        ];
        let b = Behavior::new(sc, rows).unwrap();
        let json = serde_json::to_string(&BehaviorJson::from(&b)).unwrap();
        let parsed: BehaviorJson = serde_json::from_str(&json).unwrap();
        let b2 = parsed.to_behavior().unwrap();
        assert_eq!(b.rows(), b2.rows());
        // And the re-serialized form is identical text.
        let json2 = serde_json::to_string(&BehaviorJson::from(&b2)).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn tripartite_behavior_round_trips() {
        let sc = Scenario::tripartite_dichotomic();
        let rows = vec![vec![0.125; 8]; 8];
        let b = Behavior::new(sc, rows).unwrap();
        let json = serde_json::to_string(&BehaviorJson::from(&b)).unwrap();
        let parsed: BehaviorJson = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_behavior().unwrap().rows(), b.rows());
    }

    #[test]
    fn state_and_observable_round_trip() {
        let (state, alice, _) = crate::hardy::optimal_selftest_point(0.3);
        let sj = StateJson::from(&state);
        let back = sj.to_state().unwrap();
        assert!(back.ket().overlap_sqr(state.ket()) > 1.0 - 1e-12);
        let oj = ObservableJson::from(&alice.0);
        let obs = oj.to_observable().unwrap();
        assert!(obs
            .plus_projector()
            .sub(alice.0.plus_projector())
            .frobenius_norm()
            < 1e-12);
    }

    #[test]
    fn malformed_behavior_is_rejected() {
        let text = r#"{"scenario": {"settings_per_party": [2,2],
            "outcomes_per_setting": [[2,2],[2,2]]},
            "table": {"0,0": [[0.5, 0.5]]}}"#;
        let parsed: BehaviorJson = serde_json::from_str(text).unwrap();
        assert!(parsed.to_behavior().is_err());
    }
}
