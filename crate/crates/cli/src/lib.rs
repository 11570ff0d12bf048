//! Command-line front end: reads spec files, dispatches to `ncfree-core`
//! and prints TSV.
//!
//! Exit status is 0 on success, 1 when a check fails (a `WITNESS<TAB>` line
//! is printed) and 2 on usage, input or evaluation errors.

pub mod specfile;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ncfree_core::mc::{self, McConfig};
use ncfree_core::ncpartition::Partition;
use ncfree_core::opvalued::{self, Algebra, Extraction, OpSpace};
use ncfree_core::rcyclic::{self, MatrixFamily};
use ncfree_core::series::{self, Series};
use ncfree_core::verify::{self, Suite};

pub use specfile::{parse_spec, Declaration, SpecError, SpecFile};

#[derive(Parser, Debug)]
#[command(
    name = "ncfree",
    version,
    about = "Exact free-probability combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one of the standard series as TSV.
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        /// Number of indeterminates.
        #[arg(long)]
        d: usize,
        #[arg(long)]
        order: usize,
    },
    /// Determining series, moments or R-transform of an R-cyclic family.
    Rcyclic {
        #[arg(value_enum)]
        action: RcyclicAction,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Structural checks on the family of a spec file.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[arg(long)]
        spec: PathBuf,
        /// Degree budget (defaults to min(order, 4)).
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Operator-valued cumulant of matrices from a spec file, as a TSV matrix.
    Opcumulant {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        /// Matrix indices, e.g. `1,1,2` for k(A1, A1, A2).
        #[arg(long)]
        word: String,
        /// Evaluate k_pi instead of k_n, e.g. `{1,3}{2}`.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Run oracle comparison suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Monte Carlo comparison with Gaussian random block matrices.
    Mc {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 512)]
        size: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_moment: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesKind {
    #[value(name = "zeta", alias = "Zeta")]
    Zeta,
    #[value(name = "moebius", alias = "Moebius", alias = "mob")]
    Moebius,
    #[value(name = "delta", alias = "Delta")]
    Delta,
    #[value(name = "Gd", alias = "gd")]
    Gd,
    #[value(name = "Hd", alias = "hd")]
    Hd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RcyclicAction {
    DeterminingSeries,
    Moments,
    Rtransform,
    PartialSums,
    Check,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Rcyclic,
    AmalgFreeness,
    Chain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "D", alias = "d")]
    D,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Status {
    Ok,
    Failed,
}

struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(Status::Ok) => Outcome {
            code: 0,
            stdout: out,
            stderr: String::new(),
        },
        Ok(Status::Failed) => Outcome {
            code: 1,
            stdout: out,
            stderr: String::new(),
        },
        Err(Fatal(msg)) => Outcome {
            code: 2,
            stdout: out,
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn read_spec(path: &Path) -> Result<SpecFile, Fatal> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Fatal(format!("{}:{}: {}", path.display(), e.line, e.message)))
}

fn witness(out: &mut String, line: impl std::fmt::Display) -> Status {
    let _ = writeln!(out, "WITNESS\t{line}");
    Status::Failed
}

// The R-cyclic determining series, or the witness that there is none.
fn determining(fam: &MatrixFamily, out: &mut String) -> Result<Option<Series>, Fatal> {
    match rcyclic::rcyclic_violation(fam)? {
        Some(v) => {
            witness(out, v);
            Ok(None)
        }
        None => Ok(Some(rcyclic::determining_series(fam)?)),
    }
}

fn dispatch(command: Command, out: &mut String) -> Result<Status, Fatal> {
    match command {
        Command::Series { kind, d, order } => {
            if d == 0 || order == 0 {
                return Err(Fatal("--d and --order must be positive".into()));
            }
            let f = match kind {
                SeriesKind::Zeta => series::zeta(d, order),
                SeriesKind::Moebius => series::moebius(d, order),
                SeriesKind::Delta => series::delta(d, order),
                SeriesKind::Gd => series::geometric(d, order),
                SeriesKind::Hd => series::h_series(d, order),
            };
            out.push_str(&f.to_tsv());
            Ok(Status::Ok)
        }
        Command::Rcyclic { action, spec } => {
            let spec = read_spec(&spec)?;
            let fam = spec.entry_model()?.family();
            let Some(f) = determining(&fam, out)? else {
                return Ok(Status::Failed);
            };
            let d = fam.d();
            match action {
                RcyclicAction::DeterminingSeries => out.push_str(&f.to_tsv_pairs(d)),
                RcyclicAction::Moments => out.push_str(&rcyclic::family_moments(&f, d)?.to_tsv()),
                RcyclicAction::Rtransform => {
                    out.push_str(&rcyclic::family_rtransform(&f, d)?.to_tsv())
                }
                RcyclicAction::PartialSums => match rcyclic::partial_sum_violation(&f, d) {
                    Some(v) => return Ok(witness(out, v)),
                    None => out.push_str(&rcyclic::partial_sum_rtransform(&f, d)?.to_tsv()),
                },
                RcyclicAction::Check => out.push_str("PASS\trcyclic\n"),
            }
            Ok(Status::Ok)
        }
        Command::Check { what, spec, budget } => {
            let spec = read_spec(&spec)?;
            let budget = budget.unwrap_or(spec.order.min(4));
            let fam = spec.entry_model()?.family();
            let mut space = OpSpace::new(fam.model());
            let (name, found) = match what {
                CheckKind::Rcyclic => (
                    "rcyclic",
                    rcyclic::rcyclic_violation(&fam)?.map(|v| v.to_string()),
                ),
                CheckKind::AmalgFreeness => (
                    "amalg-freeness",
                    opvalued::check_amalgamated_freeness(&mut space, fam.matrices(), budget)?
                        .map(|w| w.to_string()),
                ),
                CheckKind::Chain => (
                    "chain",
                    opvalued::chain_hypothesis_violation(&mut space, fam.matrices(), budget)?
                        .map(|v| v.to_string()),
                ),
            };
            match found {
                Some(w) => Ok(witness(out, w)),
                None => {
                    let _ = writeln!(out, "PASS\t{name}\tbudget={budget}");
                    Ok(Status::Ok)
                }
            }
        }
        Command::Opcumulant {
            spec,
            algebra,
            word,
            partition,
        } => {
            let spec = read_spec(&spec)?;
            let fam = spec.entry_model()?.family();
            let rword = parse_word(&word, fam.s())?;
            let xs: Vec<_> = rword
                .iter()
                .map(|&r| fam.matrices()[r - 1].clone())
                .collect();
            let algebra = match algebra {
                AlgebraArg::B => Algebra::B,
                AlgebraArg::D => Algebra::D,
            };
            let mut space = OpSpace::new(fam.model());
            let value = match partition {
                Some(p) => {
                    let p: Partition = p.parse()?;
                    space.cumulant_pi(&p, &xs, algebra, Extraction::Leftmost)?
                }
                None => space.cumulant(&xs, algebra)?,
            };
            out.push_str(&value.to_tsv());
            Ok(Status::Ok)
        }
        Command::Verify { suite, order } => {
            let suite: Suite = suite.parse()?;
            let reports = verify::run(suite, order)?;
            let mut status = Status::Ok;
            for r in &reports {
                let _ = writeln!(out, "{r}");
            }
            for r in reports.iter().filter(|r| !r.pass) {
                status = witness(out, r);
            }
            Ok(status)
        }
        Command::Mc {
            spec,
            size,
            trials,
            seed,
            max_moment,
        } => {
            let spec = read_spec(&spec)?;
            let cfg = McConfig {
                d: spec.dim,
                radii: spec.radii().map_err(Fatal)?,
                matrix_size: size,
                trials,
                seed,
            };
            let rows = mc::run(&cfg, max_moment)?;
            let _ = writeln!(out, "{}", mc::MC_HEADER);
            for r in &rows {
                let _ = writeln!(out, "{r}");
            }
            let mut status = Status::Ok;
            for r in rows.iter().filter(|r| !r.pass) {
                status = witness(out, format!("{r}\ttolerance={:.6}", r.tolerance));
            }
            Ok(status)
        }
    }
}

fn parse_word(text: &str, s: usize) -> Result<Vec<usize>, Fatal> {
    let word: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            Fatal(format!(
                "--word: expected comma-separated matrix indices, found {text:?}"
            ))
        })?;
    if let Some(r) = word.iter().find(|&&r| r == 0 || r > s) {
        return Err(Fatal(format!("--word: matrix {r} out of range 1..={s}")));
    }
    Ok(word)
}
