use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use qfluct::figures::{dimer_table, figure_table, Figure, SweepSpec, Table, DEFAULT_POINTS};
use qfluct::measures::EntanglementStats;
use qfluct::mixed::concurrence_hw;
use qfluct::pure::{concurrence_pure, reduced_eigenvalues, PureState};
use qfluct::rho_file::read_rho;
use qfluct::solvers::solve_tau_f;
use qfluct::thermal::{entanglement_temperature, thermal_concurrence, DimerParams};

#[derive(Parser)]
#[command(
    name = "qfluct",
    version,
    about = "Two-qubit entanglement and its fluctuations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print C_f, tau_e, tau_f and tau_f/tau_e for |J| = 1.
    Constants {
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a pure state given as eight reals: re,im pairs for a,b,c,d.
    PureEval {
        #[arg(allow_hyphen_values = true)]
        amplitudes: String,
        /// Divide the amplitudes by their norm instead of requiring norm 1.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Hill–Wootters concurrence of a density matrix read from a JSON file.
    RhoConcurrence {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Thermal Heisenberg dimer over a list or a sweep of temperatures (CSV).
    Dimer {
        /// Exchange coupling; negative is antiferromagnetic.
        #[arg(long, allow_hyphen_values = true)]
        j: f64,
        /// Comma-separated temperatures; overrides the sweep flags.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        tau: Option<Vec<f64>>,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the data behind figure 1, 2, 3 or 4 as CSV.
    Fig {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
}

impl SweepArgs {
    fn resolve(&self, default: SweepSpec) -> Result<SweepSpec> {
        Ok(SweepSpec::new(
            self.start.unwrap_or(default.start),
            self.stop.unwrap_or(default.stop),
            self.points.unwrap_or(default.points),
        )?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Constants { json } => constants(json),
        Command::PureEval {
            amplitudes,
            normalize,
            json,
        } => pure_eval(&amplitudes, normalize, json),
        Command::RhoConcurrence { path, json } => rho_concurrence(&path, json),
        Command::Dimer { j, tau, sweep, out } => dimer(j, tau, &sweep, out.as_deref()),
        Command::Fig { which, sweep, out } => {
            let fig = Figure::from_number(which)?;
            let table = figure_table(fig, &sweep.resolve(fig.default_spec())?)?;
            write_table(&table, out.as_deref())
        }
    }
}

/// Ordered `key=value` lines, or one JSON object with `--json`.
fn report(fields: Vec<(&str, Value)>, json: bool) -> Result<()> {
    let mut out = io::stdout().lock();
    if json {
        let obj: Map<String, Value> = fields
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        writeln!(out, "{}", Value::Object(obj))?;
    } else {
        for (k, v) in fields {
            match v {
                Value::Null => writeln!(out, "{k}=")?,
                other => writeln!(out, "{k}={other}")?,
            }
        }
    }
    Ok(())
}

fn stats_fields(stats: &EntanglementStats) -> Vec<(&'static str, Value)> {
    vec![
        ("E", json!(stats.e)),
        ("dE", json!(stats.delta_e)),
        (
            "relE",
            stats.rel.as_option().map_or(Value::Null, |v| json!(v)),
        ),
    ]
}

fn constants(json: bool) -> Result<()> {
    let t = solve_tau_f()?;
    let tau_e = entanglement_temperature(-1.0)?;
    // residual of tau_f: distance of C(tau_f) from C_f
    let back = thermal_concurrence(&DimerParams::new(-1.0, t.tau_f)?).value();
    report(
        vec![
            ("c_f", json!(t.c_f.value)),
            ("c_f_residual", json!(t.c_f.residual)),
            ("c_f_iterations", json!(t.c_f.iterations)),
            ("tau_e", json!(tau_e)),
            ("tau_f", json!(t.tau_f)),
            ("tau_f_residual", json!(back - t.c_f.value)),
            ("tau_f_over_tau_e", json!(t.tau_f_over_tau_e)),
        ],
        json,
    )
}

fn parse_amplitudes(text: &str) -> Result<[f64; 8]> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("amplitude {:?} is not a number", s.trim()))
        })
        .collect::<Result<_>>()?;
    match <[f64; 8]>::try_from(parts) {
        Ok(a) => Ok(a),
        Err(v) => bail!(
            "expected 8 comma-separated reals (re,im for a,b,c,d), got {}",
            v.len()
        ),
    }
}

/// Typed amplitudes carry about eight digits, so a norm within this of 1 is
/// taken as intended to be normalized.
const TYPED_NORM_TOL: f64 = 1e-6;

fn pure_eval(amplitudes: &str, normalize: bool, json: bool) -> Result<()> {
    let parts = parse_amplitudes(amplitudes)?;
    let norm_sqr: f64 = parts.iter().map(|x| x * x).sum();
    let within = (norm_sqr - 1.0).abs() <= TYPED_NORM_TOL;
    let psi = PureState::from_reals(parts, normalize || within)?;
    let c = concurrence_pure(&psi);
    let (l1, l2) = reduced_eigenvalues(&psi);
    let mut fields = vec![("C", json!(c.value()))];
    fields.extend(stats_fields(&EntanglementStats::from_concurrence(c)));
    fields.push(("lambda1", json!(l1)));
    fields.push(("lambda2", json!(l2)));
    report(fields, json)
}

fn rho_concurrence(path: &Path, json: bool) -> Result<()> {
    let rho = read_rho(path)?;
    let hw = concurrence_hw(&rho)?;
    let mut fields = vec![("C", json!(hw.concurrence.value()))];
    let names = [
        "sqrt_lambda1",
        "sqrt_lambda2",
        "sqrt_lambda3",
        "sqrt_lambda4",
    ];
    fields.extend(
        names
            .into_iter()
            .zip(hw.sqrt_lambdas)
            .map(|(k, v)| (k, json!(v))),
    );
    fields.extend(stats_fields(&EntanglementStats::from_concurrence(
        hw.concurrence,
    )));
    report(fields, json)
}

fn dimer(j: f64, tau: Option<Vec<f64>>, sweep: &SweepArgs, out: Option<&Path>) -> Result<()> {
    let tau_e = entanglement_temperature(j)?;
    if j > 0.0 {
        eprintln!("note: J > 0 is ferromagnetic; the dimer is never entangled");
    }
    let taus = match tau {
        Some(list) => list,
        None => {
            let default = SweepSpec {
                start: 0.01 * tau_e,
                stop: 1.2 * tau_e,
                points: DEFAULT_POINTS,
            };
            sweep.resolve(default)?.grid()
        }
    };
    let table = dimer_table(j, &taus)?;
    if table
        .column("hw_flag")
        .unwrap_or_default()
        .contains(&Some(1.0))
    {
        eprintln!("warning: Hill-Wootters cross-check deviates from the closed form");
    }
    write_table(&table, out)
}

fn write_table(table: &Table, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            let mut w = BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush()
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
        None => table.write_csv(io::stdout().lock())?,
    }
    Ok(())
}
