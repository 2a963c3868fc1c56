use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpe_precision::bounds::{choose_time, CChoice, PrecisionTarget, DEFAULT_SLACK};
use qpe_precision::report::{
    cmd_analyze, cmd_bounds, cmd_simulate, cmd_sweep_qpe, cmd_sweep_trotter, write_csv, write_json, PlanSpec,
    RunConfig, QPE_SWEEP_SCHEMA, TROTTER_SWEEP_SCHEMA,
};
use qpe_precision::{ingest_hamiltonian, Error, IdentityConvention, TrotterOrder, TrotterPlan};

#[derive(Parser)]
#[command(name = "qpe-precision", version, about = "QPE precision under Trotterized controlled unitaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Pauli-term JSON file.
    #[arg(long)]
    hamiltonian: PathBuf,
    /// `α` in `t = α/Σ|γ|`, within [0.5, 1].
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Target energy precision in Ha.
    #[arg(long, default_value_t = 1.6e-3)]
    eps: f64,
    /// Optional trace-distance target.
    #[arg(long)]
    alpha_tar: Option<f64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    order: u8,
    /// Target eigenstate index.
    #[arg(long, default_value_t = 0)]
    state: usize,
    /// `C_p` used for step counts: spectral, variance, first-order or childs.
    #[arg(long, default_value = "spectral")]
    c_choice: String,
    /// Extra phase qubits `a` for `n_min-tot`.
    #[arg(long, default_value_t = 0)]
    extra_qubits: u32,
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    include_identity_in_one_norm: bool,
    /// Output directory; reports go to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fixture summary table.
    Analyze(Common),
    /// Condition ledger per controlled power.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Fixed step count for every power instead of the bound plan.
        #[arg(long)]
        n: Option<u64>,
        /// Phase qubits to check (defaults to N_min).
        #[arg(long = "N")]
        n_phase: Option<u32>,
    },
    /// Trotter error quantities against the step count.
    SweepTrotter {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "5,10,20,50,100,200,500")]
        n_list: Vec<u64>,
    },
    /// QPE precision against the number of phase qubits.
    SweepQpe {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N-list", value_delimiter = ',', default_value = "8,9,10,11,12,13")]
        n_list: Vec<u32>,
        /// exact, fixed:N, uniform:N, bound, bound-childs
        #[arg(long, value_delimiter = ',', default_value = "exact,bound")]
        plans: Vec<String>,
    },
    /// One QPE run.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N", default_value_t = 11)]
        n_phase: u32,
        #[arg(long, default_value = "bound")]
        plan: String,
        #[arg(long, default_value_t = false)]
        emit_distribution: bool,
    },
}

fn config_of(c: &Common) -> Result<RunConfig, Error> {
    let c_choice = match c.c_choice.as_str() {
        "spectral" => CChoice::Spectral,
        "variance" => CChoice::Variance,
        "first-order" => CChoice::FirstOrder,
        "childs" => CChoice::Childs,
        other => return Err(Error::InvalidArgument(format!("unknown --c-choice {other:?}"))),
    };
    Ok(RunConfig {
        alpha: c.alpha,
        target: PrecisionTarget::new(c.eps, c.alpha_tar, c.state)?,
        order: TrotterOrder::try_from(c.order)?,
        convention: if c.include_identity_in_one_norm {
            IdentityConvention::Include
        } else {
            IdentityConvention::Exclude
        },
        c_choice,
        extra_qubits: c.extra_qubits,
        slack: DEFAULT_SLACK,
    })
}

fn emit_json<T: serde::Serialize>(out: Option<&Path>, name: &str, value: &T) -> Result<(), Error> {
    match out {
        Some(dir) => write_json(&dir.join(name), value),
        None => {
            println!("{}", serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?);
            Ok(())
        }
    }
}

fn emit_csv<T: serde::Serialize>(out: Option<&Path>, name: &str, schema: &str, rows: &[T]) -> Result<(), Error> {
    match out {
        Some(dir) => write_csv(&dir.join(name), schema, rows),
        None => {
            print!("{}", qpe_precision::report::csv_string(schema, rows)?);
            Ok(())
        }
    }
}

fn prepare_out(c: &Common) -> Result<Option<PathBuf>, Error> {
    if let Some(dir) = &c.out {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.clone(), source })?;
    }
    Ok(c.out.clone())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze(c) => {
            let h = ingest_hamiltonian(&c.hamiltonian)?;
            let out = prepare_out(&c)?;
            let report = cmd_analyze(&h, &config_of(&c)?)?;
            eprint!("{}", report.render());
            emit_json(out.as_deref(), "analyze.json", &report)
        }
        Command::Bounds { common: c, n, n_phase } => {
            let h = ingest_hamiltonian(&c.hamiltonian)?;
            let out = prepare_out(&c)?;
            let config = config_of(&c)?;
            let plan = match n {
                Some(n) => {
                    let t = choose_time(&h, config.alpha, config.convention)?.t;
                    Some(TrotterPlan::fixed(config.order, t, n)?)
                }
                None => None,
            };
            let report = cmd_bounds(&h, &config, plan, n_phase)?;
            emit_json(out.as_deref(), "bounds.json", &report)
        }
        Command::SweepTrotter { common: c, n_list } => {
            let h = ingest_hamiltonian(&c.hamiltonian)?;
            let out = prepare_out(&c)?;
            let sweep = cmd_sweep_trotter(&h, &config_of(&c)?, &n_list)?;
            eprintln!(
                "slopes: residual vs λ {:?}, energy vs n {:?}, trace distance vs n {:?}",
                sweep.slopes.residual_vs_lambda, sweep.slopes.energy_vs_n, sweep.slopes.trace_vs_n
            );
            emit_csv(out.as_deref(), "sweep_trotter.csv", TROTTER_SWEEP_SCHEMA, &sweep.rows)
        }
        Command::SweepQpe { common: c, n_list, plans } => {
            let h = ingest_hamiltonian(&c.hamiltonian)?;
            let out = prepare_out(&c)?;
            let plans = plans.iter().map(|p| p.parse()).collect::<Result<Vec<PlanSpec>, _>>()?;
            let rows = cmd_sweep_qpe(&h, &config_of(&c)?, &plans, &n_list)?;
            emit_csv(out.as_deref(), "sweep_qpe.csv", QPE_SWEEP_SCHEMA, &rows)
        }
        Command::Simulate { common: c, n_phase, plan, emit_distribution } => {
            let h = ingest_hamiltonian(&c.hamiltonian)?;
            let out = prepare_out(&c)?;
            let report = cmd_simulate(&h, &config_of(&c)?, plan.parse()?, n_phase, emit_distribution)?;
            emit_json(out.as_deref(), "simulate.json", &report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
