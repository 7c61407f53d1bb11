//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch or runtime failure,
//! 2 usage error, 3 infeasible request.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seidel_forge_core::enumeration::{s_table, transversal, CLASS_COUNT, S_TABLE_MAX};
use seidel_forge_core::orbits::TRANSVERSAL_LIMIT;

use crate::checks::{self, Context, VerifyOptions, CHECKS};
use crate::formats::{
    text_table, to_json, to_jsonl, ClassEntry, ClassIndexFile, CountFile, Meta, OmegaFile, OracleFile, RepLine,
    STableFile, TransversalLine, SCHEMA_VERSION,
};
use crate::{fixtures, parallel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Largest order for the exhaustive oracle.
pub const ORACLE_MAX: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "seidel-forge", version, about = "Switching classes of Seidel matrices with largest eigenvalue at most 3")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = parallel::THREADS_ENV, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Report timings on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Jsonl,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Omit the provenance header (timestamp and version).
    #[arg(long)]
    pub no_meta: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ω(n) and the raw orbit counts c(n) for n = 0..=28.
    OmegaTable {
        #[command(flatten)]
        out: OutputArgs,
        /// Compare against the reference table; exit 1 on mismatch.
        #[arg(long)]
        check_paper: bool,
    },
    /// s(n) and s_e(n) for n = 0..=n_max.
    STable {
        #[arg(long, default_value_t = 13)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
        /// Compare n ≤ 13 against the reference table; exit 1 on mismatch.
        #[arg(long)]
        check_paper: bool,
    },
    /// Run the consistency checks and print a pass/fail ledger.
    Verify {
        /// Run every check (the default when no --only is given).
        #[arg(long)]
        all: bool,
        /// Run only the named check; repeatable.
        #[arg(long)]
        only: Vec<String>,
        /// Largest graph order for the exhaustive oracle.
        #[arg(long, default_value_t = ORACLE_MAX)]
        n_max: usize,
        /// Random graphs for the cone-rank check.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// List the available checks and exit.
        #[arg(long)]
        list: bool,
    },
    /// Orbit representatives of n-subsets of classes with their switching classes.
    Reps {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exhaustive switching-class counts for n = 0..=n_max (n_max ≤ 7).
    Oracle {
        #[arg(long, default_value_t = ORACLE_MAX)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The 28 pair-classes with their index.
    Classes {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Orbit counts on n-subsets of the classes as an array of 29 integers.
    Counts {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lexicographically minimal orbit representatives of n-subsets.
    Transversal {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Error carrying an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INFEASIBLE, message: message.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure { code: EXIT_MISMATCH, message: format!("{e:#}") }
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    stdout: &'a mut (dyn Write + Send),
    stderr: &'a mut (dyn Write + Send),
    verbose: u8,
    started: Instant,
}

impl Io<'_> {
    fn note(&mut self, what: &str) {
        if self.verbose > 0 {
            let _ = writeln!(self.stderr, "[{:>8.2}s] {what}", self.started.elapsed().as_secs_f64());
        }
    }

    fn emit(&mut self, out: &OutputArgs, body: &str) -> Result<(), Failure> {
        match &out.output {
            Some(path) => std::fs::write(path, body)
                .map_err(|e| Failure { code: EXIT_MISMATCH, message: format!("cannot write {}: {e}", path.display()) }),
            None => self
                .stdout
                .write_all(body.as_bytes())
                .map_err(|e| Failure { code: EXIT_MISMATCH, message: format!("cannot write to stdout: {e}") }),
        }
    }
}

fn check_output_path(path: Option<&Path>) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    if path.is_dir() {
        return Err(Failure::usage(format!("output path {} is a directory", path.display())));
    }
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    if !parent.is_dir() {
        return Err(Failure::usage(format!("directory {} does not exist", parent.display())));
    }
    Ok(())
}

fn resolve_format(out: &OutputArgs, default: Format, allowed: &[Format], command: &str) -> Result<Format, Failure> {
    let format = out.format.unwrap_or(default);
    if !allowed.contains(&format) {
        return Err(Failure::usage(format!("{command} does not support --format {format:?}").to_lowercase()));
    }
    check_output_path(out.output.as_deref())?;
    Ok(format)
}

fn meta(out: &OutputArgs) -> Option<Meta> {
    (!out.no_meta).then(Meta::now)
}

fn transversal_range_message(n: usize) -> String {
    let lo = CLASS_COUNT - TRANSVERSAL_LIMIT;
    if n > CLASS_COUNT {
        return format!("n = {n} exceeds the {CLASS_COUNT} classes");
    }
    format!(
        "n = {n} is out of range: transversals are listed for n ≤ {TRANSVERSAL_LIMIT} directly and for \
         n ≥ {lo} as complements of the ({CLASS_COUNT}−n)-subset transversal; n = {n} would need \
         {}-subset complements, which are out of range too (use `counts` for the number of orbits)",
        CLASS_COUNT - n
    )
}

fn check_transversal_n(n: usize) -> Result<(), Failure> {
    if n > CLASS_COUNT || (n > TRANSVERSAL_LIMIT && n < CLASS_COUNT - TRANSVERSAL_LIMIT) {
        return Err(Failure::infeasible(transversal_range_message(n)));
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match parallel::pool(cli.threads.map(|t| t as usize)) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let mut io = Io { stdout, stderr, verbose: cli.verbose, started: Instant::now() };
    let result = pool.install(|| dispatch(&cli.command, &mut io));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: &Command, io: &mut Io<'_>) -> Outcome {
    match command {
        Command::OmegaTable { out, check_paper } => omega_table(out, *check_paper, io),
        Command::STable { n_max, out, check_paper } => s_table_cmd(*n_max, out, *check_paper, io),
        Command::Verify { all, only, n_max, samples, seed, list } => {
            verify(*all, only, VerifyOptions { oracle_n_max: *n_max, cao_samples: *samples, seed: *seed, ..VerifyOptions::default() }, *list, io)
        }
        Command::Reps { n, out } => reps(*n, out, io),
        Command::Oracle { n_max, out } => oracle(*n_max, out, io),
        Command::Classes { out } => classes(out, io),
        Command::Counts { out } => counts(out, io),
        Command::Transversal { n, out } => transversal_cmd(*n, out, io),
    }
}

fn omega_table(out: &OutputArgs, check_paper: bool, io: &mut Io<'_>) -> Outcome {
    let format = resolve_format(out, Format::Text, &[Format::Json, Format::Text], "omega-table")?;
    let ctx = Context::new()?;
    io.note("frame built");
    let table = ctx.omega()?;
    io.note("orbit counts done");
    let body = match format {
        Format::Json => to_json(&OmegaFile::new(table, meta(out))),
        _ => text_table(0..CLASS_COUNT + 2, &[("ω(n)", &table.omega), ("c(n)", &table.raw_orbit_counts)]),
    };
    io.emit(out, &body)?;
    if check_paper {
        return Ok(report_fixture(io, "ω", &fixtures::mismatches(&table.omega, &fixtures::OMEGA)));
    }
    Ok(EXIT_OK)
}

fn report_fixture(io: &mut Io<'_>, what: &str, mismatches: &[(usize, u64, u64)]) -> i32 {
    if mismatches.is_empty() {
        let _ = writeln!(io.stderr, "{what}: matches the reference table");
        return EXIT_OK;
    }
    for (n, c, p) in mismatches {
        let _ = writeln!(io.stderr, "{what}({n}) = {c}, reference {p}");
    }
    EXIT_MISMATCH
}

fn s_table_cmd(n_max: usize, out: &OutputArgs, check_paper: bool, io: &mut Io<'_>) -> Outcome {
    let format = resolve_format(out, Format::Text, &[Format::Json, Format::Text], "s-table")?;
    if n_max > S_TABLE_MAX {
        return Err(Failure::infeasible(format!("--n-max {n_max} exceeds {S_TABLE_MAX}")));
    }
    let ctx = Context::new()?;
    let omega = ctx.omega()?;
    io.note("orbit counts done");
    let small = parallel::small_exact_counts(ctx.frame()).map_err(anyhow::Error::from)?;
    io.note("small representatives done");
    let table = s_table(n_max, omega, &small).map_err(anyhow::Error::from)?;
    let residual_failures = checks::excess_failures(&table, omega);
    let body = match format {
        Format::Json => to_json(&STableFile::new(&table, meta(out))),
        _ => {
            let mut text = text_table(0..n_max + 1, &[("s(n)", &table.s), ("s_e(n)", &table.s_e)]);
            if n_max >= 8 {
                let ns = 8..n_max + 1;
                let excess: Vec<u64> = (0..=n_max).map(|n| table.s[n].saturating_sub(omega.omega(n))).collect();
                let predicted: Vec<u64> =
                    (0..=n_max).map(|n| if n <= 12 { (n as u64).saturating_sub(6) } else { n as u64 / 2 + 1 }).collect();
                let gap: Vec<u64> = (0..=n_max).map(|n| table.s[n].saturating_sub(table.s_e[n])).collect();
                text.push('\n');
                text.push_str(&text_table(
                    ns,
                    &[("s(n)-ω(n)", &excess), ("predicted", &predicted), ("s(n)-s_e(n)", &gap)],
                ));
                let verdict = if residual_failures.is_empty() { "all match" } else { "MISMATCH" };
                text.push_str(&format!("residuals for 8 ≤ n ≤ {n_max}: {verdict}\n"));
            }
            text
        }
    };
    io.emit(out, &body)?;
    if !residual_failures.is_empty() {
        for f in &residual_failures {
            let _ = writeln!(io.stderr, "{f}");
        }
        return Ok(EXIT_MISMATCH);
    }
    if check_paper {
        let top = n_max.min(fixtures::S_MAX);
        let mut mismatches = fixtures::mismatches(&table.s, &fixtures::S[..=top]);
        let code = report_fixture(io, "s", &mismatches);
        mismatches = fixtures::mismatches(&table.s_e, &fixtures::S_E[..=top]);
        let code_e = report_fixture(io, "s_e", &mismatches);
        return Ok(code.max(code_e));
    }
    Ok(EXIT_OK)
}

fn verify(all: bool, only: &[String], opts: VerifyOptions, list: bool, io: &mut Io<'_>) -> Outcome {
    if list {
        for (name, subject) in CHECKS {
            let _ = writeln!(io.stdout, "{name:<20} {subject}");
        }
        return Ok(EXIT_OK);
    }
    if all && !only.is_empty() {
        return Err(Failure::usage("--all and --only are mutually exclusive"));
    }
    if let Some(bad) = only.iter().find(|n| !checks::is_check(n)) {
        let names: Vec<&str> = CHECKS.iter().map(|(n, _)| *n).collect();
        return Err(Failure::usage(format!("unknown check `{bad}`; available: {}", names.join(", "))));
    }
    let wants_oracle = only.is_empty() || only.iter().any(|n| n == "oracle");
    if wants_oracle && opts.oracle_n_max > ORACLE_MAX {
        return Err(Failure::infeasible(format!("--n-max {} exceeds the oracle limit {ORACLE_MAX}", opts.oracle_n_max)));
    }
    let names: Vec<&str> =
        if only.is_empty() { CHECKS.iter().map(|(n, _)| *n).collect() } else { only.iter().map(String::as_str).collect() };
    let ctx = Context::new()?;
    let mut failed = 0;
    for name in &names {
        let outcome = checks::run_check(name, &ctx, &opts)?;
        io.note(name);
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(io.stdout, "{tag} {:<20} {}: {}", outcome.name, outcome.subject, outcome.detail);
        if !outcome.passed {
            failed += 1;
        }
    }
    let _ = writeln!(io.stdout, "{} of {} checks passed", names.len() - failed, names.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn reps(n: usize, out: &OutputArgs, io: &mut Io<'_>) -> Outcome {
    resolve_format(out, Format::Jsonl, &[Format::Jsonl], "reps")?;
    check_transversal_n(n)?;
    let ctx = Context::new()?;
    let reps = parallel::representatives(ctx.frame(), n).map_err(anyhow::Error::from)?;
    io.note("representatives done");
    let lines: Vec<RepLine> = reps.iter().map(|r| RepLine::new(r, &ctx.frame().classes)).collect();
    io.emit(out, &to_jsonl(&lines))?;
    Ok(EXIT_OK)
}

fn oracle(n_max: usize, out: &OutputArgs, io: &mut Io<'_>) -> Outcome {
    let format = resolve_format(out, Format::Text, &[Format::Json, Format::Text], "oracle")?;
    if n_max > ORACLE_MAX {
        return Err(Failure::infeasible(format!("--n-max {n_max} exceeds the oracle limit {ORACLE_MAX}")));
    }
    let mut counts = Vec::new();
    for n in 0..=n_max {
        counts.push(parallel::brute_force_counts(n).map_err(anyhow::Error::from)?);
        io.note(&format!("n = {n} enumerated"));
    }
    let body = match format {
        Format::Json => to_json(&OracleFile::new(&counts, meta(out))),
        _ => {
            let s: Vec<u64> = counts.iter().map(|c| c.s).collect();
            let s_e: Vec<u64> = counts.iter().map(|c| c.s_e).collect();
            let w: Vec<u64> = counts.iter().map(|c| c.omega).collect();
            text_table(0..n_max + 1, &[("s(n)", &s), ("s_e(n)", &s_e), ("ω(n)", &w)])
        }
    };
    io.emit(out, &body)?;
    Ok(EXIT_OK)
}

fn classes(out: &OutputArgs, io: &mut Io<'_>) -> Outcome {
    resolve_format(out, Format::Json, &[Format::Json], "classes")?;
    let ctx = Context::new()?;
    let f = ctx.frame();
    let file = ClassIndexFile {
        schema_version: SCHEMA_VERSION,
        meta: meta(out),
        switching_root: f.switching_root.coords2().to_vec(),
        classes: f
            .classes
            .iter()
            .enumerate()
            .map(|(index, c)| ClassEntry {
                index,
                representative: c.representative.coords2().to_vec(),
                partner: c.partner.coords2().to_vec(),
            })
            .collect(),
    };
    io.emit(out, &to_json(&file))?;
    Ok(EXIT_OK)
}

fn counts(out: &OutputArgs, io: &mut Io<'_>) -> Outcome {
    let format = resolve_format(out, Format::Json, &[Format::Json, Format::Text], "counts")?;
    let ctx = Context::new()?;
    let counts = ctx.omega()?.raw_orbit_counts.clone();
    let body = match format {
        Format::Json => to_json(&CountFile { schema_version: SCHEMA_VERSION, meta: meta(out), counts }),
        _ => text_table(0..CLASS_COUNT + 1, &[("c(n)", &counts)]),
    };
    io.emit(out, &body)?;
    Ok(EXIT_OK)
}

fn transversal_cmd(n: usize, out: &OutputArgs, io: &mut Io<'_>) -> Outcome {
    resolve_format(out, Format::Jsonl, &[Format::Jsonl], "transversal")?;
    check_transversal_n(n)?;
    let ctx = Context::new()?;
    let subsets = transversal(ctx.frame(), n).map_err(anyhow::Error::from)?;
    let lines: Vec<TransversalLine> =
        subsets.into_iter().map(|subset| TransversalLine { schema_version: SCHEMA_VERSION, n, subset }).collect();
    io.emit(out, &to_jsonl(&lines))?;
    Ok(EXIT_OK)
}
