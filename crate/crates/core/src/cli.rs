//! Command-line driver. Exit statuses: 0 success, 1 semantic failure,
//! 2 input error, 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::autcalc::{self, GroupTriple, Selector};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::families;
use crate::gapio::{self, QuandleLibrary, TableFormat};
use crate::quandle::Quandle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "quandles", version, about = "Finite quandles and their groups")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Time budget in seconds for enumeration.
    #[arg(long, global = true, value_parser = parse_budget)]
    pub budget: Option<Duration>,

    /// Worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    #[arg(long, global = true, value_enum, default_value_t = SelectorArg::Dis)]
    pub selector: SelectorArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every entry of a .qmat or .qlib file against the quandle axioms.
    Validate { path: PathBuf },
    /// Tabulate Dis, Inn or Aut for a file or a family spec such as "R:5".
    Groups { input: String },
    /// Generate one quandle per isomorphism class of order n.
    Enumerate {
        n: usize,
        /// Write the representatives here as a .qlib library.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the structural checks and the golden Dis-name comparison.
    Verify {
        #[arg(default_value_t = 10)]
        max_n: usize,
        /// Golden CSV to compare instead of the built-in table.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Convert between .qlib and .qmat; the output extension picks the format.
    Convert { input: PathBuf, output: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelectorArg {
    Dis,
    Inn,
    Aut,
    All,
}

impl SelectorArg {
    fn selectors(self) -> Vec<Selector> {
        match self {
            SelectorArg::Dis => vec![Selector::Dis],
            SelectorArg::Inn => vec![Selector::Inn],
            SelectorArg::Aut => vec![Selector::Aut],
            SelectorArg::All => Selector::ALL.to_vec(),
        }
    }
}

fn parse_budget(s: &str) -> std::result::Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if secs.is_finite() && secs > 0.0 {
        Ok(Duration::from_secs_f64(secs))
    } else {
        Err("budget must be a positive number of seconds".into())
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded => EXIT_BUDGET,
        Error::Axiom(_) | Error::LibraryEntry { .. } | Error::ResourceLimit { .. } => EXIT_FAILURE,
        Error::ThreadPool(_) => EXIT_FAILURE,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Validate { path } => cmd_validate(path, out),
        Command::Groups { input } => cmd_groups(input, cfg, out),
        Command::Enumerate { n, output } => cmd_enumerate(*n, output.as_deref(), cfg, out, err),
        Command::Verify { max_n, golden } => cmd_verify(*max_n, golden.as_deref(), out),
        Command::Convert { input, output } => cmd_convert(input, output, out),
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let entries = gapio::scan_quandles(&read(path)?)?;
    let mut bad = 0;
    for (i, r) in entries.iter().enumerate() {
        match r {
            Ok(q) => writeln!(out, "entry {}: valid quandle of order {}", i + 1, q.order())?,
            Err(v) => {
                bad += 1;
                writeln!(out, "entry {}: {v}", i + 1)?;
            }
        }
    }
    writeln!(out, "{} entries, {bad} invalid", entries.len())?;
    Ok(if bad == 0 { EXIT_OK } else { EXIT_FAILURE })
}

/// A path if one exists, otherwise a family spec.
fn load_input(input: &str) -> Result<Vec<Quandle>> {
    let path = Path::new(input);
    if path.exists() {
        gapio::parse_quandles(&read(path)?)
    } else {
        Ok(vec![families::parse_family(input)?])
    }
}

pub fn cmd_groups(input: &str, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let quandles = load_input(input)?;
    let compute = || {
        quandles
            .into_par_iter()
            .map(|q| autcalc::group_triple(&q).map(|t| (q, t)))
            .collect::<Result<Vec<(Quandle, GroupTriple)>>>()
    };
    let rows = match cfg.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(compute)?,
        None => compute()?,
    };
    let format = match cfg.format {
        FormatArg::Csv => TableFormat::Csv,
        FormatArg::Md => TableFormat::Markdown,
    };
    write!(
        out,
        "{}",
        gapio::emit_results_table(&rows, &cfg.selector.selectors(), format)
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_enumerate(
    n: usize,
    output: Option<&Path>,
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let opts = enumerate::Options {
        budget: cfg.budget,
        jobs: cfg.jobs.map(|j| j as usize),
        progress: false,
    };
    let start = std::time::Instant::now();
    let count = match output {
        Some(path) => {
            let r = enumerate::enumerate_with(n, &opts)?;
            let text = gapio::emit_library(&QuandleLibrary::new(r.quandles)) + "\n";
            std::fs::write(path, text)?;
            r.count
        }
        None => enumerate::count_with(n, &opts)?,
    };
    writeln!(out, "{count}")?;
    writeln!(
        err,
        "order {n}: {count} quandles in {:.2?}",
        start.elapsed()
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(max_n: usize, golden: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    if max_n < 3 {
        return Err(Error::Family(format!(
            "verify needs max_n >= 3, got {max_n}"
        )));
    }
    let report = autcalc::verify_theorems(max_n);
    write!(out, "{report}")?;
    let golden_text = match golden {
        Some(path) => read(path)?,
        None => autcalc::GOLDEN_DIS_CSV.to_string(),
    };
    let diff = autcalc::compare_golden(&golden_text)?;
    let label = golden.map_or("builtin".to_string(), |p| p.display().to_string());
    if diff.is_empty() {
        writeln!(out, "CHECK golden {label} PASS all rows match")?;
    } else {
        writeln!(out, "CHECK golden {label} FAIL {} mismatches", diff.len())?;
        for d in &diff {
            writeln!(out, "  {d}")?;
        }
    }
    let failed = report.failures().count() + usize::from(!diff.is_empty());
    writeln!(out, "{} checks, {failed} failed", report.checks.len() + 1)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

pub fn cmd_convert(input: &Path, output: &Path, out: &mut dyn Write) -> Result<i32> {
    let quandles = gapio::parse_quandles(&read(input)?)?;
    let text = match output.extension().and_then(|e| e.to_str()) {
        Some("qlib") => gapio::emit_library(&QuandleLibrary::new(quandles.clone())) + "\n",
        Some("qmat") => gapio::emit_matrices(&quandles),
        _ => {
            return Err(Error::Family(format!(
                "output {} must end in .qlib or .qmat",
                output.display()
            )))
        }
    };
    std::fs::write(output, text)?;
    writeln!(
        out,
        "wrote {} quandles to {}",
        quandles.len(),
        output.display()
    )?;
    Ok(EXIT_OK)
}
