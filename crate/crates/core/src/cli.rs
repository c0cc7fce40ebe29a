//! Command-line front end.
//!
//! Exit codes: 0 on success (and for `member`, membership), 1 for a
//! non-member or a failing self-test, 2 for any usage, parse or I/O error.
//! Results go to standard output and diagnostics to standard error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, Floats, PrimeField, Rationals};
use crate::io::{
    periodic_to_string, read_periodic, read_pgm, read_seq_csv, write_kernel_report, write_pgm,
    write_seq_csv, write_seq_csv_to,
};
use crate::laurent::LaurentPoly;
use crate::laws;
use crate::operators::{scalar_product, shift_apply, shift_apply_periodic};
use crate::parser::{parse_poly, parse_system, AnySystem};
use crate::sequence::SeqVector;
use crate::system::System;

/// Seed used by `selftest` when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_1a7e;

#[derive(Debug, Parser)]
#[command(
    name = "bilaurent",
    version,
    about = "Laurent polynomial operators on Z^r-indexed sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the scalar product <d, W>.
    Pair(PairArgs),
    /// Apply the shift action d ∘ W and print the result.
    Shift(ShiftArgs),
    /// Filter a CSV signal or PGM image with a kernel polynomial.
    Filter(FilterArgs),
    /// Compute the periodic solutions of a system.
    Kernel(KernelArgs),
    /// Test whether a sequence solves a system.
    Member(MemberArgs),
    /// Run the randomized algebraic law suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Number of variables.
    #[arg(long)]
    pub rank: Option<usize>,
    /// `rational`, `gf:<p>` or `float[:<tol>]`.
    #[arg(long)]
    pub field: Option<String>,
}

impl FieldArgs {
    fn rank(&self) -> usize {
        self.rank.unwrap_or(1)
    }

    fn descriptor(&self) -> Result<FieldDescriptor> {
        self.field.as_deref().unwrap_or("rational").parse()
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "signal")]
pub struct SignalArgs {
    /// Finite sequence as CSV (`i1,...,ir,value` per line).
    #[arg(long, group = "signal")]
    pub seq: Option<PathBuf>,
    /// Periodic sequence as JSON.
    #[arg(long, group = "signal")]
    pub periodic: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub poly: String,
    #[command(flatten)]
    pub signal: SignalArgs,
    #[command(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    #[arg(long)]
    pub poly: String,
    #[command(flatten)]
    pub signal: SignalArgs,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[arg(long)]
    pub kernel: String,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Treat input and output as binary PGM images (rank 2, float field).
    #[arg(long)]
    pub pgm: bool,
    #[command(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Comma-separated periods, one per variable.
    #[arg(long)]
    pub period: String,
    /// Where to write the JSON kernel report.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// One CSV file per component.
    #[arg(
        long,
        conflicts_with = "periodic",
        required_unless_present = "periodic"
    )]
    pub seq: Vec<PathBuf>,
    /// One periodic JSON file per component.
    #[arg(long)]
    pub periodic: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "rational")]
    pub field: String,
}

macro_rules! with_field {
    ($desc:expr, |$f:ident| $body:expr) => {
        match $desc {
            FieldDescriptor::Rational => {
                let $f = &Rationals;
                $body
            }
            FieldDescriptor::Prime(p) => {
                let $f = &PrimeField::new(p)?;
                $body
            }
            FieldDescriptor::Float(tol) => {
                let $f = &Floats::new(tol)?;
                $body
            }
        }
    };
}

macro_rules! with_system {
    ($sys:expr, |$s:ident| $body:expr) => {
        match $sys {
            AnySystem::Rational($s) => $body,
            AnySystem::Prime($s) => $body,
            AnySystem::Float($s) => $body,
        }
    };
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Pair(a) => {
            with_field!(a.field.descriptor()?, |f| pair(f, &a, out))?;
            Ok(0)
        }
        Command::Shift(a) => {
            with_field!(a.field.descriptor()?, |f| shift(f, &a, out))?;
            Ok(0)
        }
        Command::Filter(a) => {
            filter(&a)?;
            Ok(0)
        }
        Command::Kernel(a) => {
            let system = parse_system(&fs::read_to_string(&a.system)?)?;
            with_system!(system, |s| kernel(&s, &a, out))?;
            Ok(0)
        }
        Command::Member(a) => {
            let system = parse_system(&fs::read_to_string(&a.system)?)?;
            let member = with_system!(system, |s| member(&s, &a))?;
            writeln!(out, "{}", if member { "yes" } else { "no" })?;
            Ok(if member { 0 } else { 1 })
        }
        Command::Selftest(a) => selftest(&a, out, err),
    }
}

fn pair<K: Field>(field: &K, a: &PairArgs, out: &mut dyn Write) -> Result<()> {
    let rank = a.field.rank();
    let d = parse_poly(&a.poly, rank, field)?;
    let value = match (&a.signal.seq, &a.signal.periodic) {
        (Some(path), _) => scalar_product(&d, &read_seq_csv(path, rank, field)?)?,
        (None, Some(path)) => scalar_product(&d, &read_periodic(path, field)?)?,
        (None, None) => unreachable!("clap requires one signal"),
    };
    writeln!(out, "{}", field.format(&value))?;
    Ok(())
}

fn shift<K: Field>(field: &K, a: &ShiftArgs, out: &mut dyn Write) -> Result<()> {
    let rank = a.field.rank();
    let d = parse_poly(&a.poly, rank, field)?;
    let mut buf = Vec::new();
    match (&a.signal.seq, &a.signal.periodic) {
        (Some(path), _) => write_seq_csv_to(
            &shift_apply(&d, &read_seq_csv(path, rank, field)?)?,
            &mut buf,
        )?,
        (None, Some(path)) => {
            let w = shift_apply_periodic(&d, &read_periodic(path, field)?)?;
            buf.extend_from_slice(periodic_to_string(&w).as_bytes());
        }
        (None, None) => unreachable!("clap requires one signal"),
    }
    match &a.output {
        Some(path) => fs::write(path, buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(())
}

fn filter(a: &FilterArgs) -> Result<()> {
    if a.pgm {
        let field = match a.field.field.as_deref() {
            None => Floats::default(),
            Some(s) => match s.parse()? {
                FieldDescriptor::Float(tol) => Floats::new(tol)?,
                other => {
                    return Err(Error::InvalidField(format!(
                        "images need a float field, got {other}"
                    )))
                }
            },
        };
        if let Some(r) = a.field.rank.filter(|&r| r != 2) {
            return Err(Error::RankMismatch {
                expected: 2,
                found: r,
            });
        }
        let kernel = parse_poly(&a.kernel, 2, &field)?;
        let (image, info) = read_pgm(&a.input, &field)?;
        return write_pgm(&shift_apply(&kernel, &image)?, info, &a.output);
    }
    with_field!(a.field.descriptor()?, |f| {
        let rank = a.field.rank();
        let kernel: LaurentPoly<_> = parse_poly(&a.kernel, rank, f)?;
        let input = read_seq_csv(&a.input, rank, f)?;
        write_seq_csv(&shift_apply(&kernel, &input)?, &a.output)
    })
}

/// Parses `"4"` or `"4,2"`.
pub fn parse_periods(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidPeriods(format!("not a period: {t:?}")))
        })
        .collect()
}

fn kernel<K: Field>(s: &System<K>, a: &KernelArgs, out: &mut dyn Write) -> Result<()> {
    let periods = parse_periods(&a.period)?;
    let basis = s.periodic_kernel(&periods)?;
    writeln!(out, "dimension: {}", basis.dimension())?;
    if let Some(path) = &a.report {
        write_kernel_report(&basis, path)?;
    }
    Ok(())
}

fn member<K: Field>(s: &System<K>, a: &MemberArgs) -> Result<bool> {
    let field = s.field();
    let w = if a.periodic.is_empty() {
        SeqVector::finite(
            a.seq
                .iter()
                .map(|p| read_seq_csv(p, s.rank(), field))
                .collect::<Result<_>>()?,
        )?
    } else {
        SeqVector::periodic(
            a.periodic
                .iter()
                .map(|p| read_periodic(p, field))
                .collect::<Result<_>>()?,
        )?
    };
    s.contains(&w)
}

fn selftest(a: &SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let descriptor: FieldDescriptor = a.field.parse()?;
    if !descriptor.is_exact() {
        return Err(Error::InvalidField(format!(
            "self-tests need an exact field, got {descriptor}"
        )));
    }
    if a.trials == 0 {
        writeln!(
            err,
            "warning: --trials 0 runs no cases; every suite passes vacuously"
        )?;
    }
    let reports = with_field!(descriptor, |f| laws::run_all(f, a.trials, a.seed))?;
    let mut failed = 0;
    for r in &reports {
        writeln!(
            out,
            "{} {}: {} trials, {} failures",
            if r.passed() { "PASS" } else { "FAIL" },
            r.name,
            r.trials,
            r.failures
        )?;
        if let Some(repro) = &r.first_failure {
            failed += 1;
            writeln!(err, "{}: minimal failing case: {repro}", r.name)?;
        }
    }
    writeln!(
        out,
        "{} of {} suites passed (field {descriptor}, seed {})",
        reports.len() - failed,
        reports.len(),
        a.seed
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}
