//! The `linefree` command line. [`run`] takes the arguments and output
//! streams explicitly so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 falsification or
//! discrepancy, 3 internal failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{self, AnalysisError, BoundStatus, SectionReport};
use crate::bounds;
use crate::form::{parse_form_file, HomogeneousForm};
use crate::gf::FieldSpec;
use crate::search::{self, RunOptions, ScanRecord, ScanState, ScanSummary, ScanTask, SearchError, Space};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "linefree",
    version,
    about = "Point counts and bounds for line-free hypersurfaces over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count F_q-points and compare with the line-free bound.
    Count(FormInput),
    /// Write the hyperplane-section report as JSON.
    Profile {
        #[command(flatten)]
        input: FormInput,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a bound as an exact integer.
    Bounds {
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        q: i64,
        /// Print the plane-curve bound (d-1)q + 1 instead.
        #[arg(long)]
        sziklai: bool,
        /// Print the bound for point sets with at most this many points on
        /// every hyperplane.
        #[arg(long)]
        delta: Option<i64>,
        /// Print theta_q(s) instead.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<i64>,
    },
    /// Check the subset-section bound on every subset of P^n(F_q).
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
    },
    /// Exhaustive or random scan with summary, record stream and checkpoints.
    Scan(ScanArgs),
    /// Run the deterministic verification bundle.
    VerifyPaper,
}

#[derive(Debug, Args)]
pub struct FormInput {
    /// Field characteristic and extension degree.
    #[arg(long, num_args = 2, value_names = ["P", "E"])]
    pub field: Option<Vec<u32>>,
    /// Ambient dimension; the form then has n + 1 variables.
    #[arg(long)]
    pub n: Option<usize>,
    /// Inline form text.
    #[arg(long, conflicts_with = "form_file", required_unless_present = "form_file")]
    pub form: Option<String>,
    /// Form file (`field p e` header, one form per line).
    #[arg(long)]
    pub form_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Field characteristic and extension degree (default 2 2).
    #[arg(long, num_args = 2, value_names = ["P", "E"])]
    pub field: Option<Vec<u32>>,
    /// Ambient dimension (default 2).
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree (default 4).
    #[arg(long)]
    pub d: Option<u32>,
    /// Enumerate normalized coefficient vectors in index order.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub exhaustive: bool,
    /// Sample uniform coefficient vectors.
    #[arg(long)]
    pub random: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of samples in random mode.
    #[arg(long)]
    pub samples: Option<u64>,
    /// First index (exhaustive mode).
    #[arg(long)]
    pub start: Option<u64>,
    /// End index, exclusive (exhaustive mode; default: the whole space).
    #[arg(long)]
    pub end: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Summary JSON path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON-lines file for streamed records.
    #[arg(long)]
    pub records: Option<PathBuf>,
    /// Checkpoint file, rewritten after every batch of work units.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from `--checkpoint`.
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
    /// Stop after passing this index, leaving the checkpoint behind.
    #[arg(long, hide = true)]
    pub stop_at: Option<u64>,
    /// Work units between checkpoints (0: four per thread).
    #[arg(long, hide = true, default_value_t = 0)]
    pub batch_units: usize,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::SelfCheck { .. } | SearchError::Threads(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn load_forms(input: &FormInput) -> Result<Vec<HomogeneousForm>, Failure> {
    let field_arg = match input.field.as_deref() {
        Some(&[p, e]) => Some(FieldSpec::new(p, e).map_err(|x| Failure::usage(x.to_string()))?),
        Some(_) => return Err(Failure::usage("--field takes P E")),
        None => None,
    };
    let n_vars = input.n.map(|n| n + 1);
    if let Some(path) = &input.form_file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let file = parse_form_file(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        if let Some(f) = &field_arg {
            if f.id() != file.field.id() {
                return Err(Failure::usage(format!(
                    "--field {} disagrees with file field {}",
                    f.id(),
                    file.field.id()
                )));
            }
        }
        let mut forms = file.forms;
        if let Some(m) = n_vars {
            forms = forms.into_iter().map(|g| widen(g, m)).collect::<Result<_, _>>()?;
        }
        if forms.is_empty() {
            return Err(Failure::usage(format!("{}: no forms", path.display())));
        }
        return Ok(forms);
    }
    let text = input.form.as_deref().expect("clap enforces one input");
    let field = field_arg.ok_or_else(|| Failure::usage("--form needs --field P E"))?;
    let g = match n_vars {
        Some(m) => HomogeneousForm::parse_in(text, &field, m),
        None => HomogeneousForm::parse(text, &field),
    }
    .map_err(|e| Failure::usage(format!("cannot parse form: {e}")))?;
    Ok(vec![g])
}

/// Re-reads a form in `m` variables (a file form may use fewer).
fn widen(g: HomogeneousForm, m: usize) -> Result<HomogeneousForm, Failure> {
    if g.n_vars() == m {
        return Ok(g);
    }
    HomogeneousForm::parse_in(&g.format(), g.field(), m).map_err(|e| Failure::usage(e.to_string()))
}

fn check_dim(g: &HomogeneousForm) -> Result<(), Failure> {
    if g.dim() < 2 {
        return Err(Failure::usage(format!(
            "form has {} variables; use --n to place it in P^n with n >= 2",
            g.n_vars()
        )));
    }
    Ok(())
}

fn cmd_count(input: &FormInput, out: &mut dyn Write) -> Outcome {
    let mut code = EXIT_OK;
    for g in load_forms(input)? {
        check_dim(&g)?;
        let n_points = analysis::count_points(&g);
        let bound = bounds::main_bound(g.dim() as i64, i64::from(g.degree()), i64::from(g.field().q()))
            .map_err(|e| Failure::usage(e.to_string()))?;
        match analysis::check_bound(&g) {
            Ok(v) => {
                let exception = if v.exception_flag { " exception=K" } else { "" };
                writeln!(
                    out,
                    "N={} bound={} status={}{exception}",
                    v.n_points,
                    v.bound,
                    v.status.as_str()
                )?;
                if v.is_falsification() {
                    code = EXIT_FALSIFIED;
                }
            }
            Err(AnalysisError::NotLineFree(k)) => {
                writeln!(out, "N={n_points} bound={bound} status=NOT_LINE_FREE lines={k}")?;
            }
            Err(AnalysisError::DegreeOne) => {
                writeln!(out, "N={n_points} bound={bound} status=NOT_LINE_FREE degree=1")?;
            }
            Err(e) => return Err(Failure::usage(e.to_string())),
        }
    }
    Ok(code)
}

fn cmd_profile(input: &FormInput, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let forms = load_forms(input)?;
    let mut reports = Vec::with_capacity(forms.len());
    let mut code = EXIT_OK;
    for g in &forms {
        check_dim(g)?;
        let r = SectionReport::build(g).map_err(|e| Failure::usage(e.to_string()))?;
        if r.status == Some(BoundStatus::Exceeds) && !r.exception {
            code = EXIT_FALSIFIED;
        }
        if r.table_check.as_ref().is_some_and(|t| !t.violations.is_empty()) {
            code = EXIT_FALSIFIED;
        }
        reports.push(r);
    }
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(&reports).expect("reports serialize")
    };
    match path {
        Some(p) => std::fs::write(p, json + "\n")?,
        None => writeln!(out, "{json}")?,
    }
    Ok(code)
}

fn cmd_bounds(
    n: Option<i64>,
    d: Option<i64>,
    q: i64,
    sziklai: bool,
    delta: Option<i64>,
    theta: Option<i64>,
    out: &mut dyn Write,
) -> Outcome {
    let err = |e: bounds::BoundError| Failure::usage(e.to_string());
    let need = |v: Option<i64>, name: &str| v.ok_or_else(|| Failure::usage(format!("--{name} is required")));
    let text = if let Some(s) = theta {
        bounds::theta(q, s).map_err(err)?.to_string()
    } else if let Some(delta) = delta {
        bounds::subset_section_bound(delta, need(n, "n")?, q)
            .map_err(err)?
            .to_string()
    } else if sziklai {
        bounds::sziklai_bound(need(d, "d")?, q).map_err(err)?.to_string()
    } else {
        bounds::main_bound_value(need(n, "n")?, need(d, "d")?, q)
            .map_err(err)?
            .to_string()
    };
    writeln!(out, "{text}")?;
    Ok(EXIT_OK)
}

fn cmd_oracle(n: usize, q: u32, out: &mut dyn Write) -> Outcome {
    let field = FieldSpec::for_order(q).map_err(|e| Failure::usage(e.to_string()))?;
    let r = analysis::oracle_subset_bound(n, &field).map_err(|e| Failure::usage(e.to_string()))?;
    if r.passed() {
        writeln!(out, "PASS {} subsets", r.subsets)?;
        Ok(EXIT_OK)
    } else {
        writeln!(
            out,
            "FAIL {} of {} subsets violate the bound",
            r.violations.len(),
            r.subsets
        )?;
        Ok(EXIT_FALSIFIED)
    }
}

#[derive(Serialize)]
struct Throughput {
    seconds: f64,
    candidates_per_second: f64,
    threads: usize,
}

#[derive(Serialize)]
struct ScanReport<'a> {
    summary: &'a ScanSummary,
    throughput: Throughput,
}

fn scan_task(a: &ScanArgs) -> Result<ScanTask, Failure> {
    let (p, e) = match a.field.as_deref() {
        Some(&[p, e]) => (p, e),
        Some(_) => return Err(Failure::usage("--field takes P E")),
        None => (2, 2),
    };
    let space = Space {
        n: a.n.unwrap_or(2),
        d: a.d.unwrap_or(4),
        p,
        e,
    };
    if a.random {
        let seed = a.seed.ok_or_else(|| Failure::usage("--random requires --seed"))?;
        let samples = a.samples.ok_or_else(|| Failure::usage("--random requires --samples"))?;
        if a.start.is_some() || a.end.is_some() {
            return Err(Failure::usage("--start/--end apply to --exhaustive only"));
        }
        Ok(ScanTask::random(space, seed, samples)?)
    } else {
        if a.seed.is_some() || a.samples.is_some() {
            return Err(Failure::usage("--seed/--samples apply to --random only"));
        }
        space.validate()?;
        let size = space.candidate_count(true);
        let end = match a.end {
            Some(e) => e,
            None => u64::try_from(size.min(search::EXHAUSTIVE_LIMIT + 1)).unwrap_or(u64::MAX),
        };
        Ok(ScanTask::exhaustive(space, a.start.unwrap_or(0), end)?)
    }
}

/// Keeps the first `keep` lines of a records file, dropping records written
/// after the last checkpoint.
fn truncate_lines(path: &Path, keep: u64) -> Result<(), Failure> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound && keep == 0 => return Ok(()),
        Err(e) => return Err(e.into()),
    };
    let kept: Vec<&str> = text.lines().take(keep as usize).collect();
    if (kept.len() as u64) < keep {
        return Err(Failure::usage(format!(
            "{} has {} records, checkpoint expects {keep}",
            path.display(),
            kept.len()
        )));
    }
    let mut body = kept.join("\n");
    if !body.is_empty() {
        body.push('\n');
    }
    std::fs::write(path, body)?;
    Ok(())
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> Outcome {
    let task = scan_task(a)?;
    let mut state = match (&a.checkpoint, a.resume) {
        (Some(cp), true) => search::resume(cp, Some(&task))?,
        _ => ScanState::new(&task)?,
    };
    let mut records_file = match &a.records {
        Some(p) => {
            if a.resume {
                truncate_lines(p, state.records_emitted)?;
            }
            Some(
                std::fs::OpenOptions::new()
                    .create(true)
                    .append(a.resume)
                    .write(true)
                    .truncate(!a.resume)
                    .open(p)?,
            )
        }
        None => None,
    };
    let opts = RunOptions {
        threads: a.threads,
        batch_units: a.batch_units,
        stop_at: a.stop_at,
    };
    let processed_before = state.summary.counts.total;
    let t0 = Instant::now();
    search::advance(&mut state, &opts, |s, batch: &[ScanRecord]| {
        if let Some(f) = records_file.as_mut() {
            for r in batch {
                let line = serde_json::to_string(r).expect("record serializes");
                writeln!(f, "{line}").map_err(|e| search::CheckpointError::Io(e.to_string()))?;
            }
            f.flush().map_err(|e| search::CheckpointError::Io(e.to_string()))?;
        }
        if let Some(cp) = &a.checkpoint {
            search::checkpoint(s, cp)?;
        }
        Ok(())
    })?;
    let seconds = t0.elapsed().as_secs_f64();
    let done = state.summary.counts.total - processed_before;
    let report = ScanReport {
        summary: &state.summary,
        throughput: Throughput {
            seconds,
            candidates_per_second: if seconds > 0.0 { done as f64 / seconds } else { 0.0 },
            threads: a.threads.unwrap_or_else(rayon::current_num_threads),
        },
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &a.out {
        Some(p) => std::fs::write(p, json + "\n")?,
        None => writeln!(out, "{json}")?,
    }
    Ok(if state.summary.counts.exceeds_unflagged > 0 {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    })
}

fn cmd_verify(out: &mut dyn Write) -> Outcome {
    let checks = verify::verify_all();
    for c in &checks {
        writeln!(out, "{}", c.line())?;
    }
    Ok(if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Count(input) => cmd_count(input, out),
        Command::Profile { input, out: path } => cmd_profile(input, path.as_deref(), out),
        &Command::Bounds {
            n,
            d,
            q,
            sziklai,
            delta,
            theta,
        } => cmd_bounds(n, d, q, sziklai, delta, theta, out),
        &Command::Oracle { n, q } => cmd_oracle(n, q, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::VerifyPaper => cmd_verify(out),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(&cli, out)));
    match result {
        Ok(Ok(code)) => code,
        Ok(Err(f)) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal assertion failed");
            EXIT_INTERNAL
        }
    }
}
