//! `arithx`: seeded experiments on Cayley hypergraphs, injective norms and
//! polynomial-method constructions.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use arithx::experiments::{
    self, ArGraphParams, ArHyperParams, ArithExpParams, DensecapParams, DeviationParams, DirectionSpec, ExperimentParams,
    MixingParams, SparsifyParams, SubsetSpec,
};
use arithx::field_group::FiniteGroup;
use arithx::hypergraph::{coset_representatives, sol_generator, EquationSystem, MultilinearForm};
use arithx::tensor_norm::{self, multilinear_norm, multilinear_norm_oracle, AscentConfig, OracleConfig, RealForm};
use arithx::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use output::{emit, Format};

#[derive(Parser)]
#[command(name = "arithx", version, about = "Arithmetic expanders, injective norms and the polynomial method")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 10)]
    restarts: usize,
    #[arg(long, global = true, default_value_t = tensor_norm::DEFAULT_TOL)]
    tol: f64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Cap on exhaustive enumerations.
    #[arg(long, global = true, default_value_t = 1u64 << 32)]
    budget: u64,
    /// Enforce n ≥ p² in densecap.
    #[arg(long, global = true)]
    strict_n: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// JSON file `{"C": …, "q": […]}`.
    #[arg(long, conflicts_with = "ap")]
    system: Option<PathBuf>,
    /// The t-term progression system with q = (1,…,1).
    #[arg(long)]
    ap: Option<usize>,
}

impl SystemArgs {
    fn load(&self) -> Result<EquationSystem> {
        match (&self.system, self.ap) {
            (Some(path), _) => EquationSystem::from_json(&std::fs::read_to_string(path)?),
            (None, Some(t)) => EquationSystem::ap(t),
            (None, None) => EquationSystem::ap(3),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// λ of Cayley graphs with k random generators.
    ArGraph {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Use every group element once.
        #[arg(long)]
        all_elements: bool,
    },
    /// λ_K of Cayley hypergraphs with k generators sampled from sol(C).
    ArHyper {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        all_generators: bool,
    },
    /// Mixing-lemma checks on random subsets.
    Mixing {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        system: SystemArgs,
        /// Generators of H; omit for H = K.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 20)]
        tests: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// ε-estimate of an arithmetic expander candidate.
    ArithExp {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        system: SystemArgs,
        /// `all`, `random:K`, `indices:1,2,3` or `directions:@file.json`.
        #[arg(long, default_value = "all")]
        subset: String,
        /// Seed with the dense rectangle built from the directions.
        #[arg(long)]
        densecap_witness: bool,
    },
    /// The direction-avoiding rectangle construction.
    Densecap {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Number of random distinct directions.
        #[arg(long, conflicts_with = "directions")]
        random: Option<usize>,
        /// JSON array of direction vectors.
        #[arg(long)]
        directions: Option<PathBuf>,
    },
    /// Injective norm of a multilinear form file.
    Norm {
        #[arg(long)]
        form: PathBuf,
        /// Exponent in [1, ∞]; `inf` allowed.
        #[arg(long, default_value = "2")]
        p: String,
        /// Also run the exact oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Rademacher sums of Cayley slices.
    Deviation {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', default_value = "1,1,1")]
        q: Vec<i64>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "3")]
        p: String,
    },
    /// Empirical sparsification of a sign tuple.
    Sparsify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        support: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        forms: usize,
    },
    /// Solutions or coset representatives of sol(C).
    Sol {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        system: SystemArgs,
        /// Print coset representatives instead of all solutions.
        #[arg(long)]
        reps: bool,
    },
}

fn parse_subset(spec: &str) -> Result<SubsetSpec> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "all" => Ok(SubsetSpec::All),
        "random" => Ok(SubsetSpec::Random {
            k: rest.parse().map_err(|_| Error::Parse(format!("bad subset size in {spec:?}")))?,
        }),
        "indices" => Ok(SubsetSpec::Indices {
            indices: rest
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad index in {spec:?}"))))
                .collect::<Result<_>>()?,
        }),
        "directions" => {
            let path = rest.strip_prefix('@').unwrap_or(rest);
            Ok(SubsetSpec::Directions {
                directions: serde_json::from_str(&std::fs::read_to_string(path)?)?,
            })
        }
        _ => Err(Error::Parse(format!("unknown subset {spec:?}"))),
    }
}

fn experiment(cli: &Cli) -> Result<Option<ExperimentParams>> {
    let c = &cli.common;
    Ok(Some(match &cli.command {
        Command::ArGraph { group, k, all_elements } => ExperimentParams::ArGraph(ArGraphParams {
            group: group.clone(),
            k: *k,
            trials: c.trials,
            seed: c.seed,
            all_elements: *all_elements,
        }),
        Command::ArHyper { group, system, k, all_generators } => ExperimentParams::ArHyper(ArHyperParams {
            group: group.clone(),
            system: system.load()?,
            k: *k,
            trials: c.trials,
            seed: c.seed,
            restarts: c.restarts,
            tol: c.tol,
            all_generators: *all_generators,
        }),
        Command::Mixing { group, system, k, tests, density } => ExperimentParams::Mixing(MixingParams {
            group: group.clone(),
            system: system.load()?,
            k: *k,
            tests: *tests,
            density: *density,
            seed: c.seed,
            restarts: c.restarts,
            tol: c.tol,
        }),
        Command::ArithExp { group, system, subset, densecap_witness } => ExperimentParams::ArithExp(ArithExpParams {
            group: group.clone(),
            system: system.load()?,
            subset: parse_subset(subset)?,
            seed: c.seed,
            restarts: c.restarts,
            tol: c.tol,
            densecap_witness: *densecap_witness,
        }),
        Command::Densecap { p, n, random, directions } => {
            let directions = match (random, directions) {
                (Some(count), _) => DirectionSpec::Random { count: *count },
                (None, Some(path)) => DirectionSpec::Explicit {
                    directions: serde_json::from_str(&std::fs::read_to_string(path)?)?,
                },
                (None, None) => DirectionSpec::Explicit { directions: Vec::new() },
            };
            ExperimentParams::Densecap(DensecapParams {
                p: *p,
                n: *n,
                directions,
                seed: c.seed,
                strict_n: c.strict_n,
                budget: c.budget,
            })
        }
        Command::Deviation { group, q, k, p } => ExperimentParams::Deviation(DeviationParams {
            group: group.clone(),
            q: q.clone(),
            k: *k,
            p: tensor_norm::parse_exponent(p)?,
            trials: c.trials,
            seed: c.seed,
            restarts: c.restarts,
            tol: c.tol,
        }),
        Command::Sparsify { n, support, eta, samples, forms } => ExperimentParams::Sparsify(SparsifyParams {
            n: *n,
            t: support.len(),
            support: support.clone(),
            eta: *eta,
            samples: *samples,
            forms: *forms,
            seed: c.seed,
        }),
        Command::Norm { .. } | Command::Sol { .. } => return Ok(None),
    }))
}

fn run(cli: &Cli) -> Result<bool> {
    let c = &cli.common;
    let format = match c.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    if let Some(params) = experiment(cli)? {
        let record = experiments::run(&params)?;
        emit(c.out.as_deref(), format, &output::record_output(&record))?;
        return Ok(record.pass());
    }
    match &cli.command {
        Command::Norm { form, p, oracle } => {
            let form = MultilinearForm::from_json(&std::fs::read_to_string(form)?)?;
            let p = tensor_norm::parse_exponent(p)?;
            let real = RealForm::from_form(&form);
            let cfg = AscentConfig {
                restarts: c.restarts,
                tol: c.tol,
                seed: c.seed,
                ..AscentConfig::default()
            };
            let estimate = multilinear_norm(&real, p, &cfg)?;
            let exact = if *oracle {
                Some(multilinear_norm_oracle(&real, p, &OracleConfig::default())?)
            } else {
                None
            };
            let value = json!({
                "schema": experiments::SCHEMA,
                "command": "norm",
                "p": tensor_norm::format_exponent(p),
                "estimate": estimate,
                "oracle": exact,
            });
            let rows = vec![vec![
                ("p".to_string(), tensor_norm::format_exponent(p)),
                ("estimate".to_string(), estimate.value.to_string()),
                ("oracle".to_string(), exact.as_ref().map_or(String::new(), |e| e.value.to_string())),
            ]];
            emit(c.out.as_deref(), format, &output::Output { json: value, rows })?;
            Ok(true)
        }
        Command::Sol { group, system, reps } => {
            let group: FiniteGroup = group.parse()?;
            let system = system.load()?;
            let budget = c.budget as u128;
            let tuples = if *reps {
                coset_representatives(&system, &group, budget)?
            } else {
                sol_generator(&system.rows, system.t(), &group, budget)?
            };
            let value = json!({
                "schema": experiments::SCHEMA,
                "command": "sol",
                "group": group.spec(),
                "system": system,
                "kind": if *reps { "representatives" } else { "solutions" },
                "count": tuples.len(),
                "tuples": tuples,
            });
            let rows = tuples
                .iter()
                .map(|t| {
                    t.iter()
                        .enumerate()
                        .map(|(j, x)| (format!("h{}", j + 1), x.to_string()))
                        .collect()
                })
                .collect();
            emit(c.out.as_deref(), format, &output::Output { json: value, rows })?;
            Ok(true)
        }
        _ => unreachable!("experiment commands are handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("arithx: invariant check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("arithx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
