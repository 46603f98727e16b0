use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dicke_core::antisym::enumerate_all_antisym;
use dicke_core::entanglement::{
    check_fig1_shape, check_fig2_shape, fig1_data, fig2_data, negativity_sweep, NamedState, StateFamily, FIG2_SIZES,
};
use dicke_core::io;
use dicke_core::tables::{load_golden_dir, verify_tables, TABLE_TOL};
use dicke_core::{
    compare_with_direct, dicke_expansion_with, enumerate_basis, negativity, oracle_expansion, parse_twice,
    DickeError, SpinSpecies, WeightConvention,
};

mod svg;

const EXIT_USAGE: u8 = 2;
const EXIT_MISSING_DATA: u8 = 3;
const EXIT_PROPERTY: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "dicke", version, about = "Dicke states, antisymmetric states and two-qutrit negativity")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Subspace {
    /// Single-particle spin: 1/2, 1, 3/2 or 2.
    #[arg(long)]
    spin: SpinSpecies,
    /// Number of particles.
    #[arg(long)]
    n: u32,
    /// Magnetization, e.g. 3, -1 or 7/2.
    #[arg(long, allow_hyphen_values = true)]
    m: String,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the occupation basis of an (N, M) subspace.
    Basis {
        #[command(flatten)]
        subspace: Subspace,
        #[command(flatten)]
        output: Output,
        /// Report the parametrized enumeration against the direct one on stderr.
        #[arg(long)]
        check_bounds: bool,
    },
    /// Closed-form expansion of |J, M>.
    Expand {
        #[command(flatten)]
        subspace: Subspace,
        #[command(flatten)]
        output: Output,
        /// Use the species-specific prefactors instead of binomial weights.
        #[arg(long)]
        species_prefactor: bool,
    },
    /// Expansion of |J, M> by repeated lowering from |J, J>.
    Oracle {
        #[command(flatten)]
        subspace: Subspace,
        #[command(flatten)]
        output: Output,
        /// Print the largest deviation from the closed form on stderr.
        #[arg(long)]
        diff_closed_form: bool,
    },
    /// Check the golden coefficient tables.
    VerifyTables {
        /// Directory with table1.csv … table6.csv.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        #[arg(long)]
        species_prefactor: bool,
        /// Pass threshold for the absolute deviation.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// List all antisymmetric states of one species.
    Antisym {
        #[arg(long)]
        spin: SpinSpecies,
        #[command(flatten)]
        output: Output,
    },
    /// Negativity of a named two-qutrit state or a spin-1 family member.
    Negativity {
        /// bg, psie, psi2, bsplus, bsminus, dicke20, psi1:C1,C2, dicke or equal.
        #[arg(long)]
        state: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sweep")]
        m: Option<String>,
        /// Every M from -J to J.
        #[arg(long)]
        sweep: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Write the negativity figure data and SVG plots.
    Figures {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Render a sweep CSV as an SVG line chart.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    MissingData(String),
    Property(String),
}

impl From<DickeError> for Failure {
    fn from(e: DickeError) -> Self {
        match e {
            DickeError::MissingData(_) | DickeError::Io(_) => Failure::MissingData(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn write_output(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| Failure::Usage(e.to_string()))
}

fn emit<T: Serialize>(output: &Output, value: &T, csv: impl FnOnce() -> dicke_core::Result<String>) -> CliResult<()> {
    let text = match output.format {
        Format::Csv => csv()?,
        Format::Json => to_json(value)?,
    };
    write_output(&output.out, &text)
}

fn twice_m(s: &str) -> CliResult<i64> {
    Ok(parse_twice(s)?)
}

fn default_golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/tables")
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Basis { subspace: s, output, check_bounds } => {
            let tm = twice_m(&s.m)?;
            let basis = enumerate_basis(s.spin, s.n, tm)?;
            if check_bounds {
                let c = compare_with_direct(s.spin, s.n, tm)?;
                eprintln!(
                    "direct {} vectors, formula count {}, parametrized {} ({} missing, {} spurious)",
                    c.direct_count,
                    c.formula_count,
                    c.parametrized.vectors.len(),
                    c.missing.len(),
                    c.spurious.len()
                );
            }
            emit(&output, &basis, || io::basis_to_csv(s.spin, &basis))
        }
        Command::Expand { subspace: s, output, species_prefactor } => {
            let convention = if species_prefactor { WeightConvention::SpeciesPrefactor } else { WeightConvention::Binomial };
            let x = dicke_expansion_with(s.spin, s.n, twice_m(&s.m)?, convention)?;
            emit(&output, &x, || io::expansion_to_csv(&x))
        }
        Command::Oracle { subspace: s, output, diff_closed_form } => {
            let tm = twice_m(&s.m)?;
            let x = oracle_expansion(s.spin, s.n, tm)?;
            if diff_closed_form {
                let closed = dicke_expansion_with(s.spin, s.n, tm, WeightConvention::Binomial)?;
                eprintln!("max |oracle - closed form| = {:e}", x.max_deviation(&closed));
            }
            emit(&output, &x, || io::expansion_to_csv(&x))
        }
        Command::VerifyTables { golden_dir, species_prefactor, tolerance, json } => {
            let tol = tolerance.unwrap_or(TABLE_TOL);
            if !(tol > 0.0) {
                return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
            }
            let rows = load_golden_dir(&golden_dir.unwrap_or_else(default_golden_dir))?;
            let convention = if species_prefactor { WeightConvention::SpeciesPrefactor } else { WeightConvention::Binomial };
            let report = verify_tables(&rows, convention, tol)?;
            if json {
                print!("{}", to_json(&report)?);
            } else {
                for t in &report.tables {
                    println!(
                        "{} rows={} closed_form={:.3e} oracle={:.3e} {}",
                        t.table,
                        t.rows,
                        t.max_dev_closed_form,
                        t.max_dev_oracle,
                        if t.pass { "PASS" } else { "FAIL" }
                    );
                }
                for e in &report.corrections {
                    println!(
                        "corrected {} M={} listed {} {} -> {} {:.4}",
                        e.table,
                        dicke_core::format_half(e.twice_m),
                        e.listed_occupation,
                        e.listed_coefficient,
                        e.corrected_occupation,
                        e.corrected_coefficient
                    );
                }
            }
            if report.pass() {
                Ok(())
            } else {
                Err(Failure::Property(format!("table verification failed ({} convention)", report.convention)))
            }
        }
        Command::Antisym { spin, output } => {
            let states = enumerate_all_antisym(spin);
            emit(&output, &states, || io::antisym_to_csv(&states))
        }
        Command::Negativity { state, n, m, sweep, output } => negativity_command(&state, n, m, sweep, &output),
        Command::Figures { out_dir } => figures(&out_dir),
        Command::Plot { input, out } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Failure::MissingData(format!("cannot read {}: {e}", input.display())))?;
            let chart = svg::chart_from_csv(&text, &input.file_stem().unwrap_or_default().to_string_lossy())
                .map_err(Failure::Usage)?;
            write_file(&out, &chart)
        }
    }
}

fn negativity_command(state: &str, n: Option<u32>, m: Option<String>, sweep: bool, output: &Output) -> CliResult<()> {
    if let Ok(family) = state.parse::<StateFamily>() {
        let n = n.ok_or_else(|| Failure::Usage(format!("--n is required for `{family}`")))?;
        let ms: Vec<i64> = if sweep {
            let tj = SpinSpecies::ONE.twice_j(n);
            (-tj..=tj).step_by(2).collect()
        } else {
            let m = m.ok_or_else(|| Failure::Usage("give --m or --sweep".into()))?;
            vec![twice_m(&m)?]
        };
        let points = negativity_sweep(family, n, &ms)?;
        return if sweep {
            emit(output, &points, || io::sweep_to_csv(&points))
        } else {
            let v = points[0].negativity;
            emit(output, &points[0], || Ok(format!("{v:.6}\n")))
        };
    }
    if n.is_some() || m.is_some() || sweep {
        return Err(Failure::Usage(format!("`{state}` is a fixed two-qutrit state; drop --n/--m/--sweep")));
    }
    let named: NamedState = state.parse()?;
    let report = negativity(&named.state()?.density()?)?;
    emit(output, &report, || Ok(format!("{:.6}\n", report.value)))
}

fn figures(out_dir: &Path) -> CliResult<()> {
    fs::create_dir_all(out_dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", out_dir.display())))?;
    let fig1 = fig1_data()?;
    let problems = check_fig1_shape(&fig1);
    if !problems.is_empty() {
        return Err(Failure::Property(problems.join("\n")));
    }
    let fig1_csv = io::multi_sweep_to_csv(&fig1)?;
    let mut files = vec![("fig1.csv".to_string(), fig1_csv.clone())];
    files.push(("fig1.svg".into(), svg::chart_from_csv(&fig1_csv, "Dicke negativity").map_err(Failure::Usage)?));
    for n in FIG2_SIZES {
        let series = fig2_data(n)?;
        let problems = check_fig2_shape(&series);
        if !problems.is_empty() {
            return Err(Failure::Property(problems.join("\n")));
        }
        let csv = io::fig2_to_csv(&series)?;
        let title = format!("Dicke vs equal-probability, N = {n}");
        files.push((format!("fig2_n{n}.svg"), svg::chart_from_csv(&csv, &title).map_err(Failure::Usage)?));
        files.push((format!("fig2_n{n}.csv"), csv));
    }
    for (name, text) in files {
        write_file(&out_dir.join(&name), &text)?;
        eprintln!("wrote {}", out_dir.join(&name).display());
    }
    Ok(())
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("DICKE_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("DICKE_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::MissingData(m) => (EXIT_MISSING_DATA, m),
                Failure::Property(m) => (EXIT_PROPERTY, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
