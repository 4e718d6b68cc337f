//! Command line front end. A run is described by flags, optionally seeded
//! from a `key = value` config file; flags win over the file. One-off runs
//! print a summary and can dump the solution; `--study` sweeps a list of
//! root cell counts and tabulates errors, orders and timings.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use sgweno::error::{Error, Result};
use sgweno::problems::{catalog_lookup, ProblemSpec, PROBLEM_NAMES};
use sgweno::prolong::ProlongationKind;
use sgweno::report::ConvergenceReport;
use sgweno::run::{dump_solution, reference_norms, run, run_study, DumpFormat, Mode, RunConfig};
use sgweno::weno::SchemeVariant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Single,
    Sparse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Linear,
    Weno,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProlongArg {
    Lagrange,
    Weno,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Single => Mode::Single,
            ModeArg::Sparse => Mode::Sparse,
        }
    }
}

impl From<SchemeArg> for SchemeVariant {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Linear => SchemeVariant::Linear,
            SchemeArg::Weno => SchemeVariant::Weno,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sgweno",
    version,
    about = "Third-order WENO solver for periodic scalar conservation laws \
             on single or semi-coarsened sparse grids"
)]
struct Cli {
    /// Problem to solve: linear3d, burgers_source_2d, burgers_source_3d,
    /// burgers2d or burgers3d.
    #[arg(long)]
    problem: Option<String>,

    /// March one full grid or the sparse family of component grids
    /// [default: sparse].
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,

    /// Spatial reconstruction: fixed linear weights or smoothness-adapted
    /// weights [default: weno].
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,

    /// Interpolation used when component grids are prolonged for the
    /// combination [default: weno].
    #[arg(long, value_enum)]
    prolongation: Option<ProlongArg>,

    /// Cells per axis of the level-0 root grid [default: 40].
    #[arg(long)]
    nr: Option<usize>,

    /// Finest refinement level; the finest grid has nr * 2^nl cells per
    /// axis [default: 3].
    #[arg(long)]
    nl: Option<usize>,

    /// CFL number [default: the problem's value].
    #[arg(long)]
    cfl: Option<f64>,

    /// Regularization of the smoothness weights [default: 1e-6].
    #[arg(long)]
    eps: Option<f64>,

    /// Final time [default: the problem's value].
    #[arg(long)]
    tfinal: Option<f64>,

    /// Directory for output files: solution dumps for a one-off run,
    /// report.csv for a study.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads for the line sweeps; 0 picks the library default.
    #[arg(long)]
    threads: Option<usize>,

    /// Comma-separated root cell counts, e.g. 10,20,40; runs each and
    /// tabulates errors, orders and timings.
    #[arg(long)]
    study: Option<String>,

    /// Config file of `key = value` lines using the flag names; flags given
    /// on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Settings read from a config file, all optional.
#[derive(Debug, Default)]
struct FileConfig {
    problem: Option<String>,
    mode: Option<ModeArg>,
    scheme: Option<SchemeArg>,
    prolongation: Option<ProlongArg>,
    nr: Option<usize>,
    nl: Option<usize>,
    cfl: Option<f64>,
    eps: Option<f64>,
    tfinal: Option<f64>,
    out: Option<PathBuf>,
    threads: Option<usize>,
    study: Option<String>,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::InvalidConfig(format!("bad value '{value}' for {key}: {e}")))
}

fn parse_choice<T: ValueEnum + Copy>(key: &str, value: &str) -> Result<T> {
    T::from_str(value, true)
        .map_err(|e| Error::InvalidConfig(format!("bad value '{value}' for {key}: {e}")))
}

impl FileConfig {
    fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "problem" => cfg.problem = Some(value.to_string()),
                "mode" => cfg.mode = Some(parse_choice(key, value)?),
                "scheme" => cfg.scheme = Some(parse_choice(key, value)?),
                "prolongation" => cfg.prolongation = Some(parse_choice(key, value)?),
                "nr" => cfg.nr = Some(parse_num(key, value)?),
                "nl" => cfg.nl = Some(parse_num(key, value)?),
                "cfl" => cfg.cfl = Some(parse_num(key, value)?),
                "eps" => cfg.eps = Some(parse_num(key, value)?),
                "tfinal" => cfg.tfinal = Some(parse_num(key, value)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "threads" => cfg.threads = Some(parse_num(key, value)?),
                "study" => cfg.study = Some(value.to_string()),
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )));
                }
            }
        }
        Ok(cfg)
    }

    fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// The fully merged settings for one invocation.
#[derive(Debug)]
struct Settings {
    problem: ProblemSpec,
    cfg: RunConfig,
    out: Option<PathBuf>,
    threads: Option<usize>,
    study: Option<Vec<usize>>,
}

fn parse_study_list(text: &str) -> Result<Vec<usize>> {
    let roots = text
        .split(',')
        .map(|s| parse_num::<usize>("study", s.trim()))
        .collect::<Result<Vec<_>>>()?;
    if roots.is_empty() {
        return Err(Error::InvalidConfig("empty study list".into()));
    }
    Ok(roots)
}

fn merge(cli: Cli) -> Result<Settings> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let name = cli.problem.or(file.problem).ok_or_else(|| {
        Error::InvalidConfig(format!(
            "no problem selected; pass --problem with one of: {}",
            PROBLEM_NAMES.join(", ")
        ))
    })?;
    let problem = catalog_lookup(&name)?;
    let epsilon = cli.eps.or(file.eps).unwrap_or(1e-6);
    let prolongation = match cli.prolongation.or(file.prolongation).unwrap_or(ProlongArg::Weno) {
        ProlongArg::Lagrange => ProlongationKind::Lagrange,
        ProlongArg::Weno => ProlongationKind::Weno { epsilon },
    };
    let cfg = RunConfig {
        mode: cli.mode.or(file.mode).unwrap_or(ModeArg::Sparse).into(),
        scheme: cli.scheme.or(file.scheme).unwrap_or(SchemeArg::Weno).into(),
        prolongation,
        root_cells: cli.nr.or(file.nr).unwrap_or(40),
        finest_level: cli.nl.or(file.nl).unwrap_or(3),
        cfl: cli.cfl.or(file.cfl),
        epsilon,
        t_final: cli.tfinal.or(file.tfinal),
    };
    let study = match cli.study.or(file.study) {
        Some(text) => Some(parse_study_list(&text)?),
        None => None,
    };
    Ok(Settings {
        problem,
        cfg,
        out: cli.out.or(file.out),
        threads: cli.threads.or(file.threads),
        study,
    })
}

fn fmt_opt(x: Option<f64>, precision: usize) -> String {
    match x {
        Some(v) => format!("{v:.precision$e}"),
        None => "-".to_string(),
    }
}

fn fmt_order(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:.2}"),
        None => "-".to_string(),
    }
}

fn print_report(report: &ConvergenceReport) {
    println!(
        "{:>14} {:>10} {:>12} {:>6} {:>12} {:>6} {:>9}  status",
        "mesh", "points", "max error", "order", "rms error", "order", "seconds"
    );
    for r in &report.rows {
        println!(
            "{:>14} {:>10} {:>12} {:>6} {:>12} {:>6} {:>9.3}  {}",
            r.mesh,
            r.points,
            fmt_opt(r.linf, 3),
            fmt_order(r.linf_order),
            fmt_opt(r.l2, 3),
            fmt_order(r.l2_order),
            r.cpu_seconds,
            r.status
        );
    }
}

fn run_study_command(s: &Settings, roots: &[usize]) -> Result<()> {
    let report = run_study(&s.problem, &s.cfg, roots);
    print_report(&report);
    if let Some(dir) = &s.out {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("report.csv");
        report.write_csv(&path)?;
        println!("wrote {}", path.display());
    }
    if report.rows.iter().all(|r| r.status.starts_with("ok")) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("one or more study rows failed, see table".into()))
    }
}

fn run_once_command(s: &Settings) -> Result<()> {
    let outcome = run(&s.problem, &s.cfg)?;
    let t = s.cfg.resolved_t_final(&s.problem);
    let d = s.problem.dim();
    let finest = s.cfg.root_cells << s.cfg.finest_level;
    println!("problem   {}", s.problem.name);
    println!(
        "mode      {}",
        match s.cfg.mode {
            Mode::Single => "single",
            Mode::Sparse => "sparse",
        }
    );
    println!("mesh      {}", vec![finest.to_string(); d].join("x"));
    println!("points    {}", outcome.points);
    println!("time      {t}");
    println!("seconds   {:.3}", outcome.seconds);
    let (lo, hi) = outcome
        .solution
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    println!("range     [{lo:.6}, {hi:.6}]");
    match reference_norms(&outcome.solution, &s.problem, t) {
        Some((linf, l2)) => {
            println!("max error {linf:.5e}");
            println!("rms error {l2:.5e}");
        }
        None => println!("max error - (no reference solution at t = {t})"),
    }
    if let Some(dir) = &s.out {
        let formats: &[DumpFormat] = if d == 2 {
            &[DumpFormat::FullField, DumpFormat::DiagonalCut]
        } else {
            &[DumpFormat::DiagonalCut, DumpFormat::PlaneSlice]
        };
        for path in dump_solution(&outcome.solution, dir, formats)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    let settings = merge(cli)?;
    let body = || match &settings.study {
        Some(roots) => run_study_command(&settings, roots),
        None => run_once_command(&settings),
    };
    match settings.threads {
        Some(n) if n > 0 => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| {
                Error::InvalidParameter(format!("could not build a {n}-thread pool: {e}"))
            })?;
            pool.install(body)
        }
        _ => body(),
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
