//! JSON input/output and the subcommand entry points of the `hardylab`
//! binary.
//!
//! Every command builds a [`RunReport`]: a machine-readable JSON document
//! carrying the command name, tool version, an input digest, the seed and RNG
//! identifier for stochastic runs, the tolerance set in force, and the
//! results. Re-running a command with identical inputs and seed reproduces
//! the `results` field bit for bit. Exit codes follow one convention
//! throughout: 0 when the evaluated certificate is satisfied (or the command
//! has no pass/fail meaning), 1 when it is not satisfied, 2 on input errors.

mod io;

pub use io::*;

use crate::error::{Error, Result};
use crate::hardy::{self, BipartiteFamily, HardyRoles};
use crate::multiparty::{self, TripartiteFamily};
use crate::polytope;
use crate::quantum::{sample_behavior, Behavior, SettingsPolicy, RNG_ID};
use crate::temporal;
use crate::tol::Tolerances;
use serde::Serialize;
use serde_json::json;
use std::path::Path;
use std::time::Instant;

/// Exit code meaning "certificate satisfied" / generic success.
pub const EXIT_SATISFIED: i32 = 0;
/// Exit code meaning "evaluated but not satisfied".
pub const EXIT_NOT_SATISFIED: i32 = 1;
/// Exit code for malformed inputs or invalid flags.
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Machine-readable record of one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    pub tolerances: TolerancesReport,
    pub results: serde_json::Value,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TolerancesReport {
    pub zero: f64,
    pub success: f64,
    pub feas: f64,
}

impl From<&Tolerances> for TolerancesReport {
    fn from(t: &Tolerances) -> Self {
        TolerancesReport {
            zero: t.zero,
            success: t.success,
            feas: t.feas,
        }
    }
}

fn report(
    command: &str,
    tol: &Tolerances,
    inputs_digest: Option<String>,
    seed: Option<u64>,
    results: serde_json::Value,
    started: Instant,
) -> RunReport {
    RunReport {
        command: command.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        inputs_digest,
        seed,
        rng: seed.map(|_| RNG_ID.to_string()),
        tolerances: tol.into(),
        results,
        wall_time_ms: started.elapsed().as_secs_f64() * 1000.0,
    }
}

fn certificate_json(c: &hardy::HardyCertificate) -> serde_json::Value {
    json!({
        "q1": c.q1,
        "q2": c.q2,
        "q3": c.q3,
        "q4": c.q4,
        "satisfied": c.satisfied,
        "tol_zero": c.tol_zero,
        "tol_success": c.tol_success,
    })
}

fn tripartite_certificate_json(c: &multiparty::TripartiteCertificate) -> serde_json::Value {
    json!({
        "q": c.q,
        "zeros": c.zeros,
        "satisfied": c.satisfied,
        "tol_zero": c.tol_zero,
        "tol_success": c.tol_success,
    })
}

fn read_input(path: &Path) -> Result<(WitnessInputJson, String)> {
    let bytes = std::fs::read(path)?;
    let parsed: WitnessInputJson = serde_json::from_slice(&bytes)?;
    Ok((parsed, digest(&bytes)))
}

/// Which clause set `witness` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessVariant {
    Bipartite,
    Minimal,
    CliftonNiemann,
    Tripartite,
    Temporal,
}

/// Evaluate a witness on a JSON input file. Exit code 0 when satisfied,
/// 1 when not.
pub fn cmd_witness(
    input_path: &Path,
    variant: WitnessVariant,
    tol: &Tolerances,
) -> Result<(RunReport, i32)> {
    let started = Instant::now();
    let (input, input_digest) = read_input(input_path)?;
    let behavior = input.resolve_behavior()?;

    let (results, satisfied) = match variant {
        WitnessVariant::Bipartite => {
            let roles = input.roles.map(RolesJson::to_roles).unwrap_or_default();
            let cert = hardy::hardy_witness(&behavior, &roles, tol)?;
            (json!({"certificate": certificate_json(&cert)}), cert.satisfied)
        }
        WitnessVariant::Minimal => {
            let roles = input
                .minimal_roles
                .map(MinimalRolesJson::to_roles)
                .unwrap_or_default();
            let cert = hardy::minimal_form_witness(&behavior, &roles, tol)?;
            (json!({"certificate": certificate_json(&cert)}), cert.satisfied)
        }
        WitnessVariant::CliftonNiemann => {
            let cert = hardy::clifton_niemann_witness(&behavior, tol)?;
            (json!({"certificate": certificate_json(&cert)}), cert.satisfied)
        }
        WitnessVariant::Tripartite => {
            let cert = multiparty::tripartite_witness(&behavior, tol)?;
            (
                json!({"certificate": tripartite_certificate_json(&cert)}),
                cert.satisfied,
            )
        }
        WitnessVariant::Temporal => {
            let cert = temporal::temporal_hardy_witness(&behavior, tol)?;
            (json!({"certificate": certificate_json(&cert)}), cert.satisfied)
        }
    };
    let code = if satisfied { EXIT_SATISFIED } else { EXIT_NOT_SATISFIED };
    Ok((
        report("witness", tol, Some(input_digest), None, results, started),
        code,
    ))
}

/// Which maximizer `optimize` drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizeVariant {
    Bipartite,
    Tripartite,
    Temporal,
}

/// State family restriction accepted by `optimize`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyFlag {
    Free,
    MaximallyEntangled,
    Product,
    GhzClass,
}

/// Run a maximizer and emit the best certificate, state, and observables.
pub fn cmd_optimize(
    variant: OptimizeVariant,
    dims: &[usize],
    family: FamilyFlag,
    restarts: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<(RunReport, i32)> {
    let started = Instant::now();
    let (results, satisfied) = match variant {
        OptimizeVariant::Bipartite => {
            let result = match family {
                FamilyFlag::Free => {
                    if dims.len() != 2 {
                        return Err(Error::InvalidInput("bipartite needs --dims d_A,d_B".into()));
                    }
                    hardy::maximize_hardy((dims[0], dims[1]), restarts, seed)?
                }
                FamilyFlag::MaximallyEntangled => {
                    hardy::maximize_hardy_restricted(BipartiteFamily::MaximallyEntangled, restarts, seed)?
                }
                FamilyFlag::Product => {
                    hardy::maximize_hardy_restricted(BipartiteFamily::Product, restarts, seed)?
                }
                FamilyFlag::GhzClass => {
                    return Err(Error::InvalidInput("ghz family applies to the tripartite variant".into()))
                }
            };
            let satisfied = result.certificate.satisfied;
            (
                json!({
                    "certificate": certificate_json(&result.certificate),
                    "state": StateJson::from(&result.state),
                    "observables": [
                        [ObservableJson::from(&result.alice.0), ObservableJson::from(&result.alice.1)],
                        [ObservableJson::from(&result.bob.0), ObservableJson::from(&result.bob.1)],
                    ],
                    "behavior": BehaviorJson::from(&result.behavior()?),
                }),
                satisfied,
            )
        }
        OptimizeVariant::Tripartite => {
            let result = match family {
                FamilyFlag::Free => multiparty::maximize_tripartite_hardy(restarts, seed)?,
                FamilyFlag::GhzClass => {
                    multiparty::maximize_tripartite_restricted(TripartiteFamily::GhzClass, restarts, seed)?
                }
                FamilyFlag::Product => {
                    multiparty::maximize_tripartite_restricted(TripartiteFamily::Product, restarts, seed)?
                }
                FamilyFlag::MaximallyEntangled => {
                    return Err(Error::InvalidInput(
                        "max-entangled family applies to the bipartite variant".into(),
                    ))
                }
            };
            let satisfied = result.certificate.satisfied;
            let observables: Vec<Vec<ObservableJson>> = result
                .observables
                .iter()
                .map(|(u, d)| vec![ObservableJson::from(u), ObservableJson::from(d)])
                .collect();
            (
                json!({
                    "certificate": tripartite_certificate_json(&result.certificate),
                    "state": StateJson::from(&result.state),
                    "observables": observables,
                    "behavior": BehaviorJson::from(&result.behavior()?),
                }),
                satisfied,
            )
        }
        OptimizeVariant::Temporal => {
            if family != FamilyFlag::Free {
                return Err(Error::InvalidInput("temporal variant searches free states".into()));
            }
            let d = match dims {
                [] => 2,
                [d] => *d,
                _ => return Err(Error::InvalidInput("temporal needs a single dimension".into())),
            };
            let result = temporal::maximize_temporal_hardy(d, restarts, seed)?;
            let satisfied = result.certificate.satisfied;
            (
                json!({
                    "certificate": certificate_json(&result.certificate),
                    "scenario": TemporalJson::from(&result.scenario),
                    "behavior": BehaviorJson::from(&temporal::sequential_behavior(&result.scenario)?),
                }),
                satisfied,
            )
        }
    };
    let code = if satisfied { EXIT_SATISFIED } else { EXIT_NOT_SATISFIED };
    Ok((
        report("optimize", tol, None, Some(seed), results, started),
        code,
    ))
}

/// Subactions of the `polytope` command.
#[derive(Debug, Clone)]
pub enum PolytopeAction {
    /// LP membership test of the behavior in `input`.
    LocalTest { input: std::path::PathBuf },
    /// Extremal no-signalling value of the bipartite or tripartite clauses.
    NsMax { tripartite: bool },
    /// CH combination of the certificate evaluated on `input`.
    Ch { input: std::path::PathBuf },
    /// Min-entropy of a behavior (the built-in optimal point when `input` is
    /// absent) plus the no-signalling adversarial bound.
    Randomness {
        input: Option<std::path::PathBuf>,
        settings: Option<Vec<usize>>,
    },
}

/// Strategy-enumeration cap honoring the HARDYLAB_MAX_STRATEGIES override.
pub fn strategy_cap_from_env() -> u64 {
    std::env::var("HARDYLAB_MAX_STRATEGIES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(polytope::DEFAULT_STRATEGY_CAP)
}

/// The behavior of the built-in optimal bipartite point.
pub fn optimal_behavior() -> Result<Behavior> {
    let (state, alice, bob) = hardy::optimal_selftest_point(0.0);
    crate::quantum::born_behavior(
        &state,
        &[
            vec![alice.0.to_measurement(), alice.1.to_measurement()],
            vec![bob.0.to_measurement(), bob.1.to_measurement()],
        ],
    )
}

/// Run a polytope analysis. `local-test` exits 0 when the behavior is local,
/// 1 when nonlocal; the other subactions exit 0 on success.
pub fn cmd_polytope(action: &PolytopeAction, tol: &Tolerances) -> Result<(RunReport, i32)> {
    let started = Instant::now();
    match action {
        PolytopeAction::LocalTest { input } => {
            let (parsed, input_digest) = read_input(input)?;
            let behavior = parsed.resolve_behavior()?;
            let count = polytope::strategy_count(behavior.scenario());
            let cap = strategy_cap_from_env();
            if count > cap as u128 {
                return Err(Error::SizeLimit { count, cap });
            }
            let (results, code) = match polytope::local_test(&behavior)? {
                polytope::LocalTest::Local(model) => {
                    let err = model.reconstruction_error(&behavior)?;
                    (
                        json!({
                            "local": true,
                            "weights": model.weights,
                            "reconstruction_error": err,
                        }),
                        EXIT_SATISFIED,
                    )
                }
                polytope::LocalTest::Nonlocal(functional) => (
                    json!({
                        "local": false,
                        "separating_functional": {
                            "coefficients": functional.coefficients,
                            "offset": functional.offset,
                            "violation": functional.violation,
                        },
                    }),
                    EXIT_NOT_SATISFIED,
                ),
            };
            Ok((
                report("polytope local-test", tol, Some(input_digest), None, results, started),
                code,
            ))
        }
        PolytopeAction::NsMax { tripartite } => {
            let clauses = if *tripartite {
                polytope::tripartite_clauses()
            } else {
                polytope::bipartite_clauses()
            };
            let (value, extremal) = polytope::gnlt_max_hardy(&clauses)?;
            let results = json!({
                "variant": if *tripartite { "tripartite" } else { "bipartite" },
                "maximum": value,
                "extremal_behavior": BehaviorJson::from(&extremal),
                "no_signalling": polytope::is_no_signalling(&extremal),
            });
            Ok((
                report("polytope ns-max", tol, None, None, results, started),
                EXIT_SATISFIED,
            ))
        }
        PolytopeAction::Ch { input } => {
            let (parsed, input_digest) = read_input(input)?;
            let behavior = parsed.resolve_behavior()?;
            let roles = parsed.roles.map(RolesJson::to_roles).unwrap_or_default();
            let cert = hardy::hardy_witness(&behavior, &roles, tol)?;
            let ch = polytope::ch_value(&cert);
            let results = json!({
                "certificate": certificate_json(&cert),
                "ch_value": ch,
                "local_bound": 0.0,
            });
            Ok((
                report("polytope ch", tol, Some(input_digest), None, results, started),
                EXIT_SATISFIED,
            ))
        }
        PolytopeAction::Randomness { input, settings } => {
            let (behavior, input_digest) = match input {
                Some(path) => {
                    let (parsed, d) = read_input(path)?;
                    (parsed.resolve_behavior()?, Some(d))
                }
                None => (optimal_behavior()?, None),
            };
            // Default to the primed setting pair, where the clause structure
            // leaves every outcome undetermined at the optimum.
            let settings = settings.clone().unwrap_or_else(|| vec![1; behavior.scenario().parties()]);
            let observed = polytope::min_entropy(&behavior, &settings)?;
            let certified = polytope::adversarial_min_entropy(&behavior, &settings)?;
            let ns_guessing = polytope::ns_guessing_min_entropy(&behavior, &settings)?;
            let results = json!({
                "settings": settings,
                "observed_min_entropy_bits": observed,
                "adversarial_min_entropy_bits": certified,
                "ns_side_information_min_entropy_bits": ns_guessing,
                "reference_reported_bits": 1.35,
                "note": "the adversarial bound treats the table as pinned by the \
                         constraint set (self-testing at the optimum); the \
                         side-information bound lets a no-signalling adversary \
                         decompose the statistics and is much weaker. The reference \
                         value is reported alongside, not asserted.",
            });
            Ok((
                report("polytope randomness", tol, input_digest, None, results, started),
                EXIT_SATISFIED,
            ))
        }
    }
}

fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.96;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * ((p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt()) / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Sample a behavior file and report counts, frequencies, and a
/// frequency-estimated certificate with Wilson 95% intervals.
pub fn cmd_sample(
    input_path: &Path,
    n: u64,
    seed: u64,
    policy: &SettingsPolicy,
    tol: &Tolerances,
) -> Result<(RunReport, i32)> {
    let started = Instant::now();
    if n == 0 {
        return Err(Error::InvalidInput("sample size must be at least 1".into()));
    }
    let (parsed, input_digest) = read_input(input_path)?;
    let behavior = parsed.resolve_behavior()?;
    let counts = sample_behavior(&behavior, policy, n, seed)?;

    let mut results = json!({
        "trials": n,
        "counts": counts.counts(),
        "frequencies": counts.frequencies(),
    });

    // For the standard bipartite scenario, estimate the certificate.
    let sc = behavior.scenario();
    if sc.parties() == 2
        && sc.settings_per_party() == [2, 2]
        && sc.outcomes_per_setting().iter().flatten().all(|&o| o == 2)
    {
        let roles = parsed.roles.map(RolesJson::to_roles).unwrap_or_default();
        let minus = |r: crate::hardy::SettingRole| 1 - r.plus_outcome;
        let clause = |settings: [usize; 2], outcomes: [usize; 2]| -> Result<serde_json::Value> {
            let s = sc.setting_index(&settings)?;
            let o = sc.outcome_index(&settings, &outcomes)?;
            let row_total: u64 = counts.counts()[s].iter().sum();
            let k = counts.counts()[s][o];
            let freq = if row_total == 0 { 0.0 } else { k as f64 / row_total as f64 };
            let (lo, hi) = wilson_interval(k, row_total);
            Ok(json!({"estimate": freq, "wilson_95": [lo, hi], "count": k, "trials": row_total}))
        };
        let q1 = clause(
            [roles.alice.setting, roles.bob.setting],
            [roles.alice.plus_outcome, roles.bob.plus_outcome],
        )?;
        let q2 = clause(
            [roles.alice_primed.setting, roles.bob.setting],
            [minus(roles.alice_primed), roles.bob.plus_outcome],
        )?;
        let q3 = clause(
            [roles.alice.setting, roles.bob_primed.setting],
            [roles.alice.plus_outcome, minus(roles.bob_primed)],
        )?;
        let q4 = clause(
            [roles.alice_primed.setting, roles.bob_primed.setting],
            [roles.alice_primed.plus_outcome, roles.bob_primed.plus_outcome],
        )?;
        results["estimated_certificate"] = json!({
            "q1": q1, "q2": q2, "q3": q3, "q4": q4,
        });
    }

    Ok((
        report("sample", tol, Some(input_digest), Some(seed), results, started),
        EXIT_SATISFIED,
    ))
}

/// Sweep the canonical family along |b| = |c| and emit CSV rows
/// `parameter,q1,q2,q3,q4` where `parameter` is |b|².
pub fn cmd_sweep(points: usize, tol: &Tolerances) -> Result<String> {
    if points < 2 {
        return Err(Error::InvalidInput("sweep needs at least 2 points".into()));
    }
    let mut out = String::from("parameter,q1,q2,q3,q4\n");
    for i in 0..points {
        // |b|^2 ranges over (0, 1/2) exclusive; endpoints are degenerate.
        let b_sq = 0.5 * (i as f64 + 1.0) / (points as f64 + 1.0);
        let a_sq = 1.0 - 2.0 * b_sq;
        let fam = crate::hardy::CanonicalHardyFamily::from_real(a_sq.sqrt(), b_sq.sqrt(), b_sq.sqrt())?;
        let state = crate::hardy::canonical_state(&fam);
        let (alice, bob) = crate::hardy::canonical_observables(&fam);
        let behavior = crate::quantum::born_behavior(
            &state,
            &[
                vec![alice.0.to_measurement(), alice.1.to_measurement()],
                vec![bob.0.to_measurement(), bob.1.to_measurement()],
            ],
        )?;
        let cert = hardy::hardy_witness(&behavior, &HardyRoles::default(), tol)?;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            b_sq, cert.q1, cert.q2, cert.q3, cert.q4
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_behavior_certificate_is_satisfied() {
        let b = optimal_behavior().unwrap();
        let cert = hardy::hardy_witness(&b, &HardyRoles::default(), &Tolerances::default()).unwrap();
        assert!(cert.satisfied);
        assert!((cert.q1 - hardy::hardy_maximum()).abs() < 1e-12);
    }

    #[test]
    fn sweep_has_header_and_rows() {
        let csv = cmd_sweep(5, &Tolerances::default()).unwrap();
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "parameter,q1,q2,q3,q4");
    }

    #[test]
    fn wilson_interval_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(250, 1000);
        assert!(lo < 0.25 && 0.25 < hi);
        assert!(hi - lo < 0.06);
    }
}

