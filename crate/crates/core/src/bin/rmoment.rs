use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rmoment::criteria::{evaluate, CriterionId, CriterionResult};
use rmoment::maps::{partial_transpose, realign, Subsystem};
use rmoment::numfmt::sig17;
use rmoment::states::{load_state, BipartiteDims};
use rmoment::sweep::{
    check_to_csv, check_to_json, check_to_table, find_boundary, run_survey, run_sweep,
    run_sweep_serial, Family, FamilySpec, Format, Sampler,
};
use rmoment::tolerance::{HankelMode, Tolerances};
use rmoment::{Error, Result};

/// Entanglement detection from moments of realigned and partially transposed
/// density matrices.
#[derive(Parser, Debug)]
#[command(name = "rmoment", version)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Relative singular-value cutoff for the numerical rank.
    #[arg(long, global = true, default_value_t = rmoment::tolerance::RANK_RELATIVE)]
    rank_tol: f64,

    /// Margin a criterion value must clear to count as a detection.
    #[arg(long, global = true, default_value_t = rmoment::tolerance::VERDICT)]
    verdict_tol: f64,

    /// Hankel moment sequence: default (1, r2, r3, ...) or raw (1, r1, r2, ...).
    #[arg(long, global = true, default_value = "default")]
    hankel_mode: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate criteria on a state file.
    Check {
        #[arg(long)]
        state: PathBuf,
        /// Comma-separated criterion ids, or `all`.
        #[arg(long, default_value = "all")]
        criteria: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Evaluate criteria on a closed parameter grid of a family.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        /// Number of grid points, endpoints included.
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "all")]
        criteria: String,
        /// Output file, `-` for stdout.
        #[arg(long)]
        out: PathBuf,
        /// Defaults to the extension of --out (json or csv), else csv.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Evaluate grid points on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// Bisect for the parameter where a criterion's verdict flips.
    Boundary {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        criterion: String,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Detection counts over seeded random states.
    Survey {
        /// Local dimensions as `MxN`.
        #[arg(long)]
        dims: String,
        #[arg(long)]
        samples: usize,
        /// Rank of the Ginibre states; defaults to full rank.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "all")]
        criteria: String,
        #[arg(long, value_enum, default_value_t = SamplerArg::Density)]
        sampler: SamplerArg,
        /// Product terms per separable sample.
        #[arg(long, default_value_t = 4)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Print the realigned or partially transposed matrix of a state.
    Dump {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum)]
        map: MapArg,
        /// Subsystem for `--map pt`.
        #[arg(long, value_enum, default_value_t = SubsystemArg::B)]
        subsystem: SubsystemArg,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// isotropic, toth, garg, rudolph, filtered or belldiag.
    #[arg(long)]
    family: String,
    /// Swept parameter; defaults to the family's first parameter.
    #[arg(long)]
    param: Option<String>,
    /// Pin another parameter, `name=value`. Repeatable.
    #[arg(long = "fix", value_name = "NAME=VALUE")]
    fix: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SamplerArg {
    Density,
    Separable,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MapArg {
    Realign,
    Pt,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SubsystemArg {
    A,
    B,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn tolerances(args: &TolArgs) -> Result<Tolerances> {
    if !(args.rank_tol > 0.0) {
        return Err(usage("--rank-tol must be positive"));
    }
    if !(args.verdict_tol >= 0.0) {
        return Err(usage("--verdict-tol must be non-negative"));
    }
    Ok(Tolerances {
        rank_rel: args.rank_tol,
        verdict: args.verdict_tol,
        hankel_mode: args.hankel_mode.parse::<HankelMode>()?,
    })
}

/// `all` expands to every criterion defined for the given dimensions.
fn criteria_for(list: &str, two_qubit: bool) -> Result<Vec<CriterionId>> {
    let ids = CriterionId::parse_list(list)?;
    if list.trim() == "all" && !two_qubit {
        return Ok(ids.into_iter().filter(|id| *id != CriterionId::R2).collect());
    }
    Ok(ids)
}

fn is_two_qubit(dims: BipartiteDims) -> bool {
    dims.m() == 2 && dims.n() == 2
}

fn family_spec(args: &FamilyArgs, from: f64, to: f64, steps: usize) -> Result<FamilySpec> {
    let family: Family = args.family.parse()?;
    let param = args.param.as_deref().unwrap_or(family.parameters()[0].0);
    let mut spec = FamilySpec::new(family, param, from, to, steps)?;
    for f in &args.fix {
        let (name, value) = f
            .split_once('=')
            .ok_or_else(|| usage(format!("--fix expects NAME=VALUE, got '{f}'")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("--fix {name}: '{value}' is not a number")))?;
        spec = spec.fix(name.trim(), value)?;
    }
    Ok(spec)
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(Error::from)
    }
}

fn run(cli: Cli) -> Result<()> {
    let tol = tolerances(&cli.tol)?;
    match cli.command {
        Command::Check { state, criteria, format } => {
            let rho = load_state(&state)?;
            let ids = criteria_for(&criteria, is_two_qubit(rho.dims()))?;
            let results = ids
                .iter()
                .map(|&id| evaluate(id, &rho, &tol))
                .collect::<Result<Vec<CriterionResult>>>()?;
            let text = match format {
                FormatArg::Json => check_to_json(rho.dims(), &results),
                FormatArg::Csv => check_to_csv(&results),
                FormatArg::Table => check_to_table(&results),
            };
            print!("{text}");
        }
        Command::Sweep { family, from, to, steps, criteria, out, format, serial } => {
            let spec = family_spec(&family, from, to, steps)?;
            let two_qubit = !matches!(spec.family(), Family::Toth | Family::Garg);
            let ids = criteria_for(&criteria, two_qubit)?;
            let report = if serial {
                run_sweep_serial(&spec, &ids, &tol)?
            } else {
                run_sweep(&spec, &ids, &tol)?
            };
            let format = match format {
                Some(f) => f.into(),
                None => match out.extension().and_then(|e| e.to_str()) {
                    Some("json") => Format::Json,
                    _ => Format::Csv,
                },
            };
            write_out(&out, &report.emit(format))?;
        }
        Command::Boundary { family, criterion, lo, hi, tol: param_tol } => {
            let spec = family_spec(&family, lo, hi, 2)?;
            let id: CriterionId = criterion.parse()?;
            let b = find_boundary(&spec, id, lo, hi, param_tol, &tol)?;
            println!("{}", sig17(b));
        }
        Command::Survey { dims, samples, rank, seed, criteria, sampler, terms, format } => {
            let dims: BipartiteDims = dims.parse()?;
            let ids = criteria_for(&criteria, is_two_qubit(dims))?;
            let sampler = match sampler {
                SamplerArg::Density => Sampler::Density { rank: rank.unwrap_or(dims.total()) },
                SamplerArg::Separable => Sampler::Separable { terms },
            };
            let report = run_survey(dims, samples, sampler, seed, &ids, &tol)?;
            print!("{}", report.emit(format.into()));
        }
        Command::Dump { state, map, subsystem } => {
            let rho = load_state(&state)?;
            let out = match map {
                MapArg::Realign => realign(&rho),
                MapArg::Pt => partial_transpose(
                    &rho,
                    match subsystem {
                        SubsystemArg::A => Subsystem::A,
                        SubsystemArg::B => Subsystem::B,
                    },
                ),
            };
            print!("{}", out.to_json());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rmoment: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
