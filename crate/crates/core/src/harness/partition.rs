//! Parallel, resumable scans over ranges of rows.
//!
//! A scan is a sequence of batches. Each batch is split into small
//! contiguous chunks handed out through an atomic work queue; results are
//! reassembled in chunk order, so nothing downstream depends on which
//! worker ran what. After a batch the coordinator may write a checkpoint.

use std::io::{self, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::audit::conj1::{census_scanner, conj1_scan_with};
use crate::audit::{AuditReport, Scope};
use crate::census::{census_with, RowResidueCensus};
use crate::scan::RowScanner;

use super::checkpoint::{fingerprint, ScanCheckpoint};

/// Rows per work-queue item.
const CHUNK_ROWS: u64 = 16;
/// Checkpoint at least this often, in rows...
const CHECKPOINT_ROWS: u64 = 1 << 12;
/// ...or in wall-clock time, whichever comes first.
const CHECKPOINT_INTERVAL: Duration = Duration::from_secs(5);
/// Target number of row entries per worker per batch, which keeps batches
/// well under the checkpoint interval even near row 2^20.
const BATCH_ENTRIES_PER_WORKER: u64 = 1 << 24;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Runs `f(lo, hi)` over contiguous chunks of `from..=to` on `workers`
/// threads and returns the results in chunk order.
pub fn parallel_chunks<T, F>(from: u64, to: u64, workers: usize, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    if from > to {
        return Vec::new();
    }
    let chunk = chunk.max(1);
    let chunks = (to - from) / chunk + 1;
    let workers = workers.clamp(1, chunks.min(usize::MAX as u64) as usize);
    let next = AtomicU64::new(0);
    let work = || {
        let mut local = Vec::new();
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            if i >= chunks {
                break;
            }
            let lo = from + i * chunk;
            let hi = lo.saturating_add(chunk - 1).min(to);
            local.push((i, f(lo, hi)));
        }
        local
    };
    let mut parts: Vec<(u64, T)> = if workers == 1 {
        work()
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|_| s.spawn(work)).collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("scan worker panicked"))
                .collect()
        })
    };
    parts.sort_by_key(|&(i, _)| i);
    parts.into_iter().map(|(_, t)| t).collect()
}

/// Mod-16 census audit of rows `from..=to` split across `workers` threads.
/// The report does not depend on `workers`.
pub fn partition_scan(from: u64, to: u64, workers: usize) -> AuditReport {
    partition_scan_with(&census_scanner(), from, to, workers)
}

fn partition_scan_with(scanner: &RowScanner, from: u64, to: u64, workers: usize) -> AuditReport {
    let start = Instant::now();
    let mut report = AuditReport::new(Scope::Rows { from, to });
    for part in parallel_chunks(from, to, workers, CHUNK_ROWS, |lo, hi| {
        conj1_scan_with(scanner, lo, hi)
    }) {
        report.merge(part);
    }
    report.scope = Scope::Rows { from, to };
    report.elapsed = start.elapsed();
    report
}

fn batch_rows(next: u64, workers: usize) -> u64 {
    (BATCH_ENTRIES_PER_WORKER * workers as u64 / (next / 2 + 1)).clamp(1, CHECKPOINT_ROWS)
}

/// Knobs shared by the resumable scans.
pub struct ScanControl<'a> {
    pub workers: usize,
    pub checkpoint: Option<&'a Path>,
    /// Stop (after checkpointing) once this many rows were processed in
    /// this invocation. Used to exercise resumption.
    pub stop_after: Option<u64>,
    /// Progress lines; stdout is never used for these.
    pub progress: &'a mut dyn Write,
}

#[derive(Debug)]
pub enum ScanOutcome<T> {
    Complete(T),
    Interrupted { last_completed: u64 },
}

struct Cadence {
    rows: u64,
    since: Instant,
}

impl Cadence {
    fn new() -> Self {
        Cadence {
            rows: 0,
            since: Instant::now(),
        }
    }

    fn due(&mut self, rows: u64) -> bool {
        self.rows += rows;
        if self.rows >= CHECKPOINT_ROWS || self.since.elapsed() >= CHECKPOINT_INTERVAL {
            self.rows = 0;
            self.since = Instant::now();
            true
        } else {
            false
        }
    }
}

fn resume(path: Option<&Path>, fp: &str) -> Result<Option<ScanCheckpoint>, HarnessError> {
    let Some(path) = path else { return Ok(None) };
    match ScanCheckpoint::load(path)? {
        Some(c) if c.fingerprint != fp => Err(HarnessError::Usage(format!(
            "checkpoint {} was written by a different command",
            path.display()
        ))),
        other => Ok(other),
    }
}

pub fn conj1_fingerprint(from: u64, to: u64) -> String {
    fingerprint(&format!("conj1 --from {from} --to {to}"))
}

/// Mod-16 census audit of `from..=to` with optional checkpointing. A
/// resumed scan produces the same report as an uninterrupted one.
pub fn conj1_checkpointed(
    from: u64,
    to: u64,
    ctl: ScanControl<'_>,
) -> Result<ScanOutcome<AuditReport>, HarnessError> {
    let start = Instant::now();
    let fp = conj1_fingerprint(from, to);
    let scanner = census_scanner();
    let mut acc = AuditReport::new(Scope::Rows { from, to });
    let mut next = from;
    if let Some(c) = resume(ctl.checkpoint, &fp)? {
        writeln!(
            ctl.progress,
            "conj1: resuming after row {}",
            c.last_completed
        )?;
        acc.checked = c.checked;
        acc.value_set = c.value_set;
        acc.violations = c.violations;
        next = c.last_completed.saturating_add(1);
    }
    let mut cadence = Cadence::new();
    let mut this_run = 0u64;
    while next <= to {
        let hi = next
            .saturating_add(batch_rows(next, ctl.workers) - 1)
            .min(to);
        acc.merge(partition_scan_with(&scanner, next, hi, ctl.workers));
        let rows = hi - next + 1;
        this_run += rows;
        let stopping = hi < to && ctl.stop_after.is_some_and(|s| this_run >= s);
        if let Some(path) = ctl.checkpoint {
            if cadence.due(rows) || stopping || hi == to {
                ScanCheckpoint {
                    fingerprint: fp.clone(),
                    last_completed: hi,
                    checked: acc.checked,
                    value_set: acc.value_set.clone(),
                    violations: acc.violations.clone(),
                    output_len: None,
                }
                .save(path)?;
            }
        }
        writeln!(
            ctl.progress,
            "conj1: rows {from}..={hi} done, {} violations, {:.1?}",
            acc.violations.len(),
            start.elapsed()
        )?;
        if stopping {
            return Ok(ScanOutcome::Interrupted { last_completed: hi });
        }
        if hi == u64::MAX {
            break;
        }
        next = hi + 1;
    }
    acc.scope = Scope::Rows { from, to };
    acc.elapsed = start.elapsed();
    Ok(ScanOutcome::Complete(acc))
}

/// Censuses of `from..=to` modulo `k`, computed in parallel and handed to
/// `emit` in row order. `emit` returns the number of bytes it wrote, which
/// is stored in the checkpoint so a resumed run can truncate partial output.
pub fn census_checkpointed(
    from: u64,
    to: u64,
    k: u64,
    canonical: &str,
    start_len: u64,
    emit: &mut dyn FnMut(&RowResidueCensus) -> io::Result<u64>,
    ctl: ScanControl<'_>,
) -> Result<ScanOutcome<u64>, HarnessError> {
    let start = Instant::now();
    let fp = fingerprint(canonical);
    let scanner = RowScanner::new(k).map_err(|e| HarnessError::Usage(e.to_string()))?;
    let mut next = from;
    let mut written = start_len;
    if let Some(c) = resume(ctl.checkpoint, &fp)? {
        writeln!(
            ctl.progress,
            "census: resuming after row {}",
            c.last_completed
        )?;
        next = c.last_completed.saturating_add(1);
    }
    let mut cadence = Cadence::new();
    let mut this_run = 0u64;
    while next <= to {
        let hi = next
            .saturating_add(batch_rows(next, ctl.workers) - 1)
            .min(to);
        let rows = parallel_chunks(next, hi, ctl.workers, CHUNK_ROWS, |lo, hi| {
            (lo..=hi)
                .map(|n| census_with(&scanner, n))
                .collect::<Vec<_>>()
        });
        for c in rows.iter().flatten() {
            written += emit(c)?;
        }
        let count = hi - next + 1;
        this_run += count;
        let stopping = hi < to && ctl.stop_after.is_some_and(|s| this_run >= s);
        if let Some(path) = ctl.checkpoint {
            if cadence.due(count) || stopping || hi == to {
                ScanCheckpoint {
                    fingerprint: fp.clone(),
                    last_completed: hi,
                    checked: hi - from + 1,
                    value_set: Default::default(),
                    violations: Vec::new(),
                    output_len: Some(written),
                }
                .save(path)?;
            }
        }
        writeln!(
            ctl.progress,
            "census: rows {from}..={hi} done, {:.1?}",
            start.elapsed()
        )?;
        if stopping {
            return Ok(ScanOutcome::Interrupted { last_completed: hi });
        }
        if hi == u64::MAX {
            break;
        }
        next = hi + 1;
    }
    Ok(ScanOutcome::Complete(written))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::conj1_scan;

    #[test]
    fn chunks_come_back_in_order() {
        for workers in [1, 3, 8] {
            let got = parallel_chunks(5, 100, workers, 7, |lo, hi| (lo, hi));
            assert_eq!(got.first(), Some(&(5, 11)));
            assert_eq!(got.last(), Some(&(96, 100)));
            assert!(got.windows(2).all(|w| w[0].1 + 1 == w[1].0));
        }
        assert!(parallel_chunks(3, 2, 4, 1, |lo, _| lo).is_empty());
    }

    #[test]
    fn partition_matches_sequential() {
        let seq = conj1_scan(0, 700);
        for workers in [1, 2, 8] {
            let par = partition_scan(0, 700, workers);
            assert_eq!(par.value_set, seq.value_set);
            assert_eq!(par.violations, seq.violations);
            assert_eq!(par.checked, seq.checked);
            assert_eq!(par.scope, seq.scope);
        }
    }

    #[test]
    fn empty_range() {
        let r = partition_scan(10, 9, 4);
        assert_eq!(r.checked, 0);
        assert!(r.is_clean());
    }

    #[test]
    fn interrupted_conj1_resumes_identically() {
        let dir = tempfile::tempdir().unwrap();
        let ckpt = dir.path().join("c.json");
        let mut sink = Vec::new();
        let full = match conj1_checkpointed(
            0,
            9000,
            ScanControl {
                workers: 2,
                checkpoint: None,
                stop_after: None,
                progress: &mut sink,
            },
        )
        .unwrap()
        {
            ScanOutcome::Complete(r) => r,
            _ => unreachable!(),
        };
        let first = conj1_checkpointed(
            0,
            9000,
            ScanControl {
                workers: 3,
                checkpoint: Some(&ckpt),
                stop_after: Some(1),
                progress: &mut sink,
            },
        )
        .unwrap();
        assert!(matches!(first, ScanOutcome::Interrupted { .. }));
        let resumed = match conj1_checkpointed(
            0,
            9000,
            ScanControl {
                workers: 5,
                checkpoint: Some(&ckpt),
                stop_after: None,
                progress: &mut sink,
            },
        )
        .unwrap()
        {
            ScanOutcome::Complete(r) => r,
            _ => unreachable!(),
        };
        assert_eq!(
            serde_json::to_string(&full).unwrap(),
            serde_json::to_string(&resumed).unwrap()
        );
    }

    #[test]
    fn foreign_checkpoint_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let ckpt = dir.path().join("c.json");
        let mut sink = Vec::new();
        conj1_checkpointed(
            0,
            50,
            ScanControl {
                workers: 1,
                checkpoint: Some(&ckpt),
                stop_after: None,
                progress: &mut sink,
            },
        )
        .unwrap();
        let err = conj1_checkpointed(
            0,
            51,
            ScanControl {
                workers: 1,
                checkpoint: Some(&ckpt),
                stop_after: None,
                progress: &mut sink,
            },
        )
        .unwrap_err();
        assert!(matches!(err, HarnessError::Usage(_)));
    }
}
