use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entmoments::convexroof::RoofConfig;
use entmoments::{family, Family};

use entmoments_cli::columns::{format_number, Column};
use entmoments_cli::report::{self, AnalyzeOptions};
use entmoments_cli::scan::{self, Range, ScanOptions};
use entmoments_cli::threshold::{self, Statistic};
use entmoments_cli::{exit, statefile, CliError, Result};

/// Moment-based entanglement criteria and measures.
///
/// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 usage or domain
/// error, 5 no sign change in a threshold search.
#[derive(Parser)]
#[command(name = "entmoments", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run all criteria and measures on one state.
    Analyze(AnalyzeArgs),
    /// Tabulate columns over a one-parameter family.
    Scan(ScanArgs),
    /// Bisect for the parameter where a criterion switches verdict.
    Threshold(ThresholdArgs),
    /// List the built-in state families.
    Families,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct RoofArgs {
    /// Add the convex-roof upper-bound estimate (slow).
    #[arg(long)]
    roof: bool,
    /// Restarts for the roof estimator.
    #[arg(long, default_value_t = 16)]
    roof_restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl RoofArgs {
    fn config(&self) -> Option<RoofConfig> {
        self.roof.then(|| RoofConfig {
            restarts: self.roof_restarts,
            seed: self.seed,
            ..RoofConfig::default()
        })
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// State file (JSON with `dims` and `matrix` or `vector`).
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Analyze a built-in family instead of a file.
    #[arg(long)]
    family: Option<String>,
    /// Family parameters, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<f64>,
    /// Strictness tolerance for the criteria.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    roof: RoofArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    family: String,
    /// A:B:STEPS, inclusive grid.
    #[arg(long)]
    range: String,
    /// Comma-separated columns (default: all but roof_estimate).
    #[arg(long)]
    columns: Option<String>,
    #[command(flatten)]
    roof: RoofArgs,
    /// Relative-improvement stopping tolerance of the roof estimator.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    family: String,
    /// theorem1, theorem2, realignment, ppt or conc_lower_bound.
    #[arg(long)]
    criterion: String,
    /// Search interval A:B.
    #[arg(long)]
    range: String,
    /// Stop once the bracket is shorter than this.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let io_err = |p: &Path| {
        let path = p.display().to_string();
        move |source| CliError::Io { path, source }
    };
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err(p))?);
            f(&mut w)?;
            w.flush().map_err(io_err(p))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)?;
            lock.flush().map_err(io_err(Path::new("<stdout>")))
        }
    }
}

fn write_json(w: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, v).map_err(|e| CliError::Usage(format!("writing json: {e}")))?;
    writeln!(w).map_err(|source| CliError::Io {
        path: "<output>".into(),
        source,
    })
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    if a.format == Format::Csv {
        return Err(CliError::Usage("analyze writes JSON only; use scan for CSV".into()));
    }
    let state = match (&a.file, &a.family) {
        (Some(path), _) => statefile::load_state(path)?,
        (None, Some(name)) => family(name, &a.params)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let doc = report::analyze(
        &state,
        &AnalyzeOptions {
            tol: a.tol,
            roof: a.roof.config(),
        },
    )?;
    with_output(a.out.as_deref(), |w| write_json(w, &doc))
}

fn scan(a: ScanArgs) -> Result<()> {
    let range = Range::parse(&a.range)?;
    let columns = match &a.columns {
        Some(list) => Column::parse_list(list)?,
        None => Column::defaults(),
    };
    let mut roof = a.roof.config();
    if let (Some(cfg), Some(tol)) = (roof.as_mut(), a.tol) {
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
        cfg.tol = tol;
    }
    let opts = ScanOptions {
        columns,
        seed: a.roof.seed,
        roof,
    };
    let result = scan::run_scan(&a.family, &range, &opts)?;
    with_output(a.out.as_deref(), |w| match a.format {
        Format::Csv => result.write_csv(w),
        Format::Json => write_json(w, &result.to_json()),
    })
}

fn threshold(a: ThresholdArgs) -> Result<()> {
    let range = Range::parse(&a.range)?;
    if range.steps.is_some() {
        return Err(CliError::Usage("threshold takes an interval A:B".into()));
    }
    let stat: Statistic = a.criterion.parse()?;
    let t = threshold::find_threshold(&a.family, stat, range.start, range.end, a.tol)?;
    with_output(a.out.as_deref(), |w| match a.format {
        Format::Json => write_json(w, &serde_json::to_value(&t).expect("plain data")),
        Format::Csv => {
            let io = |source| CliError::Io {
                path: "<output>".into(),
                source,
            };
            writeln!(w, "family,criterion,root,lo,hi,f_lo,f_hi,iterations").map_err(io)?;
            let nums: Vec<String> = [t.root, t.lo, t.hi, t.f_lo, t.f_hi].map(format_number).into();
            writeln!(w, "{},{},{},{}", t.family, t.criterion, nums.join(","), t.iterations).map_err(io)
        }
    })
}

fn families() -> Result<()> {
    let mut out = io::stdout().lock();
    let io = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    for fam in Family::ALL {
        let range = match fam.domain() {
            Some((lo, hi)) => format!("{}  = [{lo:.6}, {hi:.6}]", fam.domain_label()),
            None => fam.domain_label().to_string(),
        };
        writeln!(out, "{:<16} {}\n{:<16} {}", fam.name(), range, "", fam.description()).map_err(io)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let res = match cli.cmd {
        Cmd::Analyze(a) => analyze(a),
        Cmd::Scan(a) => scan(a),
        Cmd::Threshold(a) => threshold(a),
        Cmd::Families => families(),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
