//! Thin command-line front end over the `hardylab` library: JSON reports on
//! stdout, diagnostics on stderr, exit code 0 for satisfied certificates,
//! 1 for unsatisfied, 2 for input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hardylab::cli::{
    self, FamilyFlag, OptimizeVariant, PolytopeAction, RunReport, WitnessVariant,
    EXIT_INPUT_ERROR,
};
use hardylab::quantum::SettingsPolicy;
use hardylab::tol::Tolerances;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hardylab",
    version,
    about = "Hardy-type nonlocality arguments: witnesses, optimizers, polytope bounds, randomness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    /// Zero-clause threshold.
    #[arg(long, global = true)]
    tol_zero: Option<f64>,
    /// Success (nonzero clause) threshold.
    #[arg(long, global = true)]
    tol_success: Option<f64>,
    /// LP feasibility threshold.
    #[arg(long, global = true)]
    tol_feas: Option<f64>,
}

impl TolArgs {
    fn to_tolerances(self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(z) = self.tol_zero {
            tol.zero = z;
        }
        if let Some(s) = self.tol_success {
            tol.success = s;
        }
        if let Some(f) = self.tol_feas {
            tol.feas = f;
        }
        tol
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessVariantArg {
    Bipartite,
    Minimal,
    CliftonNiemann,
    Tripartite,
    Temporal,
}

#[derive(Clone, Copy, ValueEnum)]
enum OptimizeVariantArg {
    Bipartite,
    Tripartite,
    Temporal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Free,
    MaxEntangled,
    Product,
    Ghz,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a Hardy-type witness on a JSON input.
    Witness {
        /// Input file: a behavior, a state with observables/measurements, or
        /// a temporal scenario.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        variant: WitnessVariantArg,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Maximize a Hardy-type success probability (seeded, deterministic).
    Optimize {
        #[arg(long, value_enum)]
        variant: OptimizeVariantArg,
        /// Local dimensions, comma separated (e.g. 2,2 or 3 for temporal).
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// State family restriction.
        #[arg(long, value_enum, default_value = "free")]
        family: FamilyArg,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// RNG seed; required for reproducible runs.
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Local-polytope and no-signalling analyses.
    Polytope {
        #[command(subcommand)]
        action: PolytopeCommand,
    },
    /// Draw finite statistics from a behavior and estimate its certificate.
    Sample {
        #[arg(long)]
        input: PathBuf,
        /// Number of trials.
        #[arg(long)]
        n: u64,
        /// RNG seed; required for reproducible runs.
        #[arg(long)]
        seed: u64,
        /// Setting policy: "uniform", "cycle", or "fixed:x,y".
        #[arg(long, default_value = "uniform")]
        policy: String,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Sweep the canonical family and emit CSV (parameter,q1..q4) on stdout.
    Sweep {
        /// Number of sweep points.
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
}

#[derive(Subcommand)]
enum PolytopeCommand {
    /// Decide membership in the local polytope; exit 0 local, 1 nonlocal.
    LocalTest {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Extremal no-signalling value of the Hardy clauses.
    NsMax {
        /// bipartite or tripartite.
        #[arg(long, default_value = "bipartite")]
        variant: String,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// CH combination q1 - q2 - q3 - q4 of a behavior's certificate.
    Ch {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Min-entropy of a behavior and the no-signalling adversarial bound.
    Randomness {
        /// Behavior file; defaults to the built-in optimal point.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Setting tuple, comma separated; defaults to the primed pair.
        #[arg(long, value_delimiter = ',')]
        settings: Option<Vec<usize>>,
        /// Use the built-in optimal bipartite point.
        #[arg(long)]
        at_optimum: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
}

fn parse_policy(text: &str) -> Result<SettingsPolicy, String> {
    match text {
        "uniform" => Ok(SettingsPolicy::Uniform),
        "cycle" => Ok(SettingsPolicy::Cycle),
        other => match other.strip_prefix("fixed:") {
            Some(rest) => {
                let tuple: Result<Vec<usize>, _> =
                    rest.split(',').map(|t| t.trim().parse::<usize>()).collect();
                tuple
                    .map(SettingsPolicy::Fixed)
                    .map_err(|_| format!("bad fixed policy '{other}'"))
            }
            None => Err(format!("unknown policy '{other}'")),
        },
    }
}

fn run() -> Result<(RunReport, i32), (String, i32)> {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Witness { input, variant, tol } => {
            let variant = match variant {
                WitnessVariantArg::Bipartite => WitnessVariant::Bipartite,
                WitnessVariantArg::Minimal => WitnessVariant::Minimal,
                WitnessVariantArg::CliftonNiemann => WitnessVariant::CliftonNiemann,
                WitnessVariantArg::Tripartite => WitnessVariant::Tripartite,
                WitnessVariantArg::Temporal => WitnessVariant::Temporal,
            };
            cli::cmd_witness(&input, variant, &tol.to_tolerances())
        }
        Command::Optimize {
            variant,
            dims,
            family,
            restarts,
            seed,
            tol,
        } => {
            let variant = match variant {
                OptimizeVariantArg::Bipartite => OptimizeVariant::Bipartite,
                OptimizeVariantArg::Tripartite => OptimizeVariant::Tripartite,
                OptimizeVariantArg::Temporal => OptimizeVariant::Temporal,
            };
            let family = match family {
                FamilyArg::Free => FamilyFlag::Free,
                FamilyArg::MaxEntangled => FamilyFlag::MaximallyEntangled,
                FamilyArg::Product => FamilyFlag::Product,
                FamilyArg::Ghz => FamilyFlag::GhzClass,
            };
            let dims = if dims.is_empty() && variant == OptimizeVariant::Bipartite {
                vec![2, 2]
            } else {
                dims
            };
            cli::cmd_optimize(variant, &dims, family, restarts, seed, &tol.to_tolerances())
        }
        Command::Polytope { action } => match action {
            PolytopeCommand::LocalTest { input, tol } => {
                cli::cmd_polytope(&PolytopeAction::LocalTest { input }, &tol.to_tolerances())
            }
            PolytopeCommand::NsMax { variant, tol } => {
                let tripartite = match variant.as_str() {
                    "bipartite" => false,
                    "tripartite" => true,
                    other => {
                        return Err((format!("unknown ns-max variant '{other}'"), EXIT_INPUT_ERROR))
                    }
                };
                cli::cmd_polytope(&PolytopeAction::NsMax { tripartite }, &tol.to_tolerances())
            }
            PolytopeCommand::Ch { input, tol } => {
                cli::cmd_polytope(&PolytopeAction::Ch { input }, &tol.to_tolerances())
            }
            PolytopeCommand::Randomness {
                input,
                settings,
                at_optimum,
                tol,
            } => {
                let input = if at_optimum { None } else { input };
                cli::cmd_polytope(
                    &PolytopeAction::Randomness { input, settings },
                    &tol.to_tolerances(),
                )
            }
        },
        Command::Sample {
            input,
            n,
            seed,
            policy,
            tol,
        } => {
            let policy = parse_policy(&policy).map_err(|e| (e, EXIT_INPUT_ERROR))?;
            cli::cmd_sample(&input, n, seed, &policy, &tol.to_tolerances())
        }
        Command::Sweep { points, tol } => {
            return match cli::cmd_sweep(points, &tol.to_tolerances()) {
                Ok(csv) => {
                    print!("{csv}");
                    std::process::exit(0);
                }
                Err(e) => Err((e.to_string(), EXIT_INPUT_ERROR)),
            };
        }
    };
    outcome.map_err(|e| (e.to_string(), EXIT_INPUT_ERROR))
}

fn main() -> ExitCode {
    match run() {
        Ok((report, code)) => {
            match serde_json::to_string_pretty(&report) {
                Ok(text) => println!("{text}"),
                Err(e) => {
                    eprintln!("error: failed to serialize report: {e}");
                    return ExitCode::from(EXIT_INPUT_ERROR as u8);
                }
            }
            ExitCode::from(code as u8)
        }
        Err((message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
