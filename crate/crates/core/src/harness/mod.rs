//! Command-line driver.
//!
//! ```text
//! pascalforge row    --n N --mod K [--census] [--format jsonl|csv]
//! pascalforge census --from A --to B --mod K [--out FILE] [--workers W] [--checkpoint FILE]
//! pascalforge conj1  --from A --to B [--workers W] [--checkpoint FILE]
//! pascalforge conj2  --p P [--full-period | --n N]
//! pascalforge frac   --m M --count N
//! pascalforge period --m M
//! ```
//!
//! Exit codes: 0 clean, 1 an audited statement was violated, 2 usage error.
//! Records go to stdout (or `--out`), one per line; progress and timing go
//! to stderr.

pub mod checkpoint;
pub mod partition;
pub mod records;

use std::ffi::OsString;
use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Seek, SeekFrom, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::audit::periods::period_factors;
use crate::audit::{conj2_exceptional_set, conj2_verify, frac_binom, frac_period, Conj2Predictor};
use crate::census::census_row;
use crate::scan::RowScanner;

pub use checkpoint::ScanCheckpoint;
pub use partition::{
    conj1_checkpointed, parallel_chunks, partition_scan, HarnessError, ScanControl, ScanOutcome,
};
pub use records::{PeriodFactor, Record};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const WORKERS_ENV: &str = "PASCALFORGE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "pascalforge",
    version,
    about = "Binomial coefficients modulo k: rows, censuses and conjecture audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Residues of row N modulo K, or their census.
    Row {
        #[arg(long)]
        n: u64,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        census: bool,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Per-row censuses modulo K for rows A..=B.
    Census {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long, hide = true)]
        stop_after: Option<u64>,
    },
    /// Mod-16 odd-residue census audit and value set for rows A..=B.
    Conj1 {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, hide = true)]
        stop_after: Option<u64>,
    },
    /// Exceptional-class prediction of C(n, 2P) mod n.
    Conj2 {
        #[arg(long)]
        p: u64,
        /// Audit every n in one full period (the default).
        #[arg(long, conflicts_with = "n")]
        full_period: bool,
        /// Check a single n.
        #[arg(long)]
        n: Option<u64>,
    },
    /// First COUNT terms of Frac(C(n, M) / n), n = 1, 2, ...
    Frac {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        count: u64,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Period of Frac(C(n, M) / n) and its prime-power constituents.
    Period {
        #[arg(long)]
        m: u64,
    },
}

/// Record sink that knows the output format and counts bytes.
struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    header_done: bool,
}

impl<'a> Emitter<'a> {
    fn new(out: &'a mut dyn Write, format: Format) -> Self {
        Emitter {
            out,
            format,
            header_done: false,
        }
    }

    fn emit(&mut self, record: &Record) -> io::Result<u64> {
        let mut text = String::new();
        match (self.format, record.to_csv()) {
            (Format::Csv, Some(row)) => {
                if !self.header_done {
                    text.push_str(&record.csv_header().unwrap_or_default());
                    text.push('\n');
                    self.header_done = true;
                }
                text.push_str(&row);
            }
            _ => text.push_str(&record.to_line()),
        }
        text.push('\n');
        self.out.write_all(text.as_bytes())?;
        Ok(text.len() as u64)
    }
}

fn resolve_workers(flag: Option<usize>) -> Result<usize, HarnessError> {
    match flag {
        Some(0) => Err(HarnessError::Usage("--workers must be at least 1".into())),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn usage(e: impl ToString) -> HarnessError {
    HarnessError::Usage(e.to_string())
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = run_with(args, &mut out, &mut io::stderr());
    if out.flush().is_err() {
        return EXIT_USAGE;
    }
    code
}

/// As [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_CLEAN
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(HarnessError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(HarnessError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, HarnessError> {
    let start = Instant::now();
    let code = match cmd {
        Command::Row {
            n,
            modulus,
            census,
            format,
        } => {
            let mut emitter = Emitter::new(out, format);
            if census {
                let c = census_row(n, modulus).map_err(usage)?;
                emitter.emit(&Record::Census {
                    n,
                    k: modulus,
                    counts: c.counts,
                })?;
            } else {
                let scanner = RowScanner::new(modulus).map_err(usage)?;
                for (m, residue) in scanner.row(n).enumerate() {
                    emitter.emit(&Record::Residue {
                        n,
                        k: modulus,
                        m: m as u64,
                        residue,
                    })?;
                }
            }
            EXIT_CLEAN
        }
        Command::Census {
            from,
            to,
            modulus,
            out: path,
            workers,
            checkpoint,
            format,
            stop_after,
        } => {
            crate::census::check_census_modulus(modulus).map_err(usage)?;
            let workers = resolve_workers(workers)?;
            let canonical = format!(
                "census --from {from} --to {to} --mod {modulus} --format {format:?} --out {}",
                path.as_ref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_default()
            );
            let resumed = match &checkpoint {
                Some(c) => ScanCheckpoint::load(c)?,
                None => None,
            };
            let mut file: Option<File> = None;
            let mut start_len = 0;
            if let Some(path) = &path {
                let mut f = OpenOptions::new()
                    .create(true)
                    .write(true)
                    .truncate(false)
                    .open(path)?;
                start_len = resumed.as_ref().and_then(|c| c.output_len).unwrap_or(0);
                f.set_len(start_len)?;
                f.seek(SeekFrom::End(0))?;
                file = Some(f);
            }
            let mut file_writer = file.map(BufWriter::new);
            let sink: &mut dyn Write = match file_writer.as_mut() {
                Some(w) => w,
                None => out,
            };
            let mut emitter = Emitter::new(sink, format);
            // a resumed CSV file already has its header
            emitter.header_done = resumed.is_some() && start_len > 0;
            let outcome = partition::census_checkpointed(
                from,
                to,
                modulus,
                &canonical,
                start_len,
                &mut |c| {
                    let rec = Record::Census {
                        n: c.n,
                        k: c.k,
                        counts: c.counts.clone(),
                    };
                    let bytes = emitter.emit(&rec)?;
                    Ok(bytes)
                },
                ScanControl {
                    workers,
                    checkpoint: checkpoint.as_deref(),
                    stop_after,
                    progress: err,
                },
            );
            if let Some(w) = file_writer.as_mut() {
                w.flush()?;
            }
            if let ScanOutcome::Interrupted { last_completed } = outcome? {
                writeln!(err, "census: stopped after row {last_completed}")?;
            }
            EXIT_CLEAN
        }
        Command::Conj1 {
            from,
            to,
            workers,
            checkpoint,
            stop_after,
        } => {
            let workers = resolve_workers(workers)?;
            let outcome = conj1_checkpointed(
                from,
                to,
                ScanControl {
                    workers,
                    checkpoint: checkpoint.as_deref(),
                    stop_after,
                    progress: err,
                },
            )?;
            match outcome {
                ScanOutcome::Complete(report) => {
                    let clean = report.is_clean();
                    Emitter::new(out, Format::Jsonl).emit(&Record::Conj1Report { report })?;
                    if clean {
                        EXIT_CLEAN
                    } else {
                        EXIT_VIOLATION
                    }
                }
                ScanOutcome::Interrupted { last_completed } => {
                    writeln!(err, "conj1: stopped after row {last_completed}")?;
                    EXIT_CLEAN
                }
            }
        }
        Command::Conj2 {
            p,
            full_period: _,
            n,
        } => {
            let predictor = Conj2Predictor::new(p).map_err(usage)?;
            let mut emitter = Emitter::new(out, Format::Jsonl);
            match n {
                Some(n) => {
                    let predicted = predictor.predict(n).map_err(usage)?;
                    let observed = frac_binom(n, 2 * p).map_err(usage)?;
                    let same = predicted == observed;
                    emitter.emit(&Record::Conj2Point {
                        n,
                        p,
                        exceptional: predictor.exceptional().contains(n),
                        predicted,
                        observed,
                    })?;
                    if same {
                        EXIT_CLEAN
                    } else {
                        EXIT_VIOLATION
                    }
                }
                None => {
                    let report = conj2_verify(p).map_err(usage)?;
                    let clean = report.is_clean();
                    writeln!(err, "conj2: {} values checked", report.checked)?;
                    emitter.emit(&Record::Conj2Report {
                        exceptional: conj2_exceptional_set(p).map_err(usage)?,
                        report,
                    })?;
                    if clean {
                        EXIT_CLEAN
                    } else {
                        EXIT_VIOLATION
                    }
                }
            }
        }
        Command::Frac { m, count, format } => {
            let mut emitter = Emitter::new(out, format);
            for n in 1..=count {
                let fraction = frac_binom(n, m).map_err(usage)?;
                emitter.emit(&Record::Frac { n, m, fraction })?;
            }
            EXIT_CLEAN
        }
        Command::Period { m } => {
            let period = frac_period(m).map_err(usage)?;
            let factors = if m > 1 {
                period_factors(m - 1, m)
                    .into_iter()
                    .map(|(p, power)| PeriodFactor { p, power })
                    .collect()
            } else {
                Vec::new()
            };
            Emitter::new(out, Format::Jsonl).emit(&Record::Period {
                m,
                frac_period: period,
                k: m.saturating_sub(1),
                factors,
            })?;
            EXIT_CLEAN
        }
    };
    writeln!(err, "elapsed: {:.3?}", start.elapsed())?;
    Ok(code)
}
