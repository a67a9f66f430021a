//! Level scans over every ideal up to a norm bound, with checkpointing.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::h1::{bianchi_h1, H1Options, H1Report};
use crate::error::Result;
use crate::quadfield::{ideals_up_to, Field};
use crate::subgroups::{bianchi_presentation, GroupKind};

pub const CHECKPOINT_EVERY: usize = 25;

/// Histogram bins for cuspidal dimension: 0, 1, …, 5 and ≥ 6.
pub const BINS: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub reports: Vec<H1Report>,
    pub failures: Vec<(String, String)>,
    pub histogram: [usize; BINS],
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub h1: H1Options,
    pub min_norm: u64,
    pub max_norm: u64,
    pub checkpoint: Option<PathBuf>,
    /// Tag written to the checkpoint; a checkpoint with another tag is ignored.
    pub config_hash: String,
}

#[derive(Serialize, Deserialize)]
struct CheckpointLine {
    config: String,
    key: String,
    report: Option<serde_json::Value>,
    error: Option<String>,
}

pub fn histogram(reports: &[H1Report]) -> [usize; BINS] {
    let mut h = [0; BINS];
    for r in reports {
        h[r.cuspidal_dim.min(BINS - 1)] += 1;
    }
    h
}

fn level_key(hnf: &[String; 4]) -> String {
    hnf.join(",")
}

fn load_checkpoint(opts: &ScanOptions) -> BTreeMap<String, std::result::Result<H1Report, String>> {
    let mut done = BTreeMap::new();
    let Some(path) = &opts.checkpoint else {
        return done;
    };
    let Ok(file) = std::fs::File::open(path) else {
        return done;
    };
    for line in BufReader::new(file).lines().map_while(|l| l.ok()) {
        let Ok(cl) = serde_json::from_str::<CheckpointLine>(&line) else {
            continue;
        };
        if cl.config != opts.config_hash {
            continue;
        }
        let entry = match (cl.report, cl.error) {
            (Some(r), _) => match serde_json::from_value::<H1Report>(r) {
                Ok(r) => Ok(r),
                Err(_) => continue,
            },
            (None, Some(e)) => Err(e),
            _ => continue,
        };
        done.insert(cl.key, entry);
    }
    done
}

/// Runs the H1 pipeline on every ideal with norm in `[min_norm, max_norm]`.
/// Per-level failures are recorded and the scan continues. Output order is
/// by norm, then Hermite key, independent of scheduling.
pub fn level_scan(d: u32, kind: GroupKind, opts: &ScanOptions) -> Result<ScanResult> {
    let pres = bianchi_presentation(d, kind)?;
    let field = Field::new(d)?;
    let levels: Vec<_> = ideals_up_to(field, opts.max_norm)
        .into_iter()
        .filter(|i| i.norm_u64() >= opts.min_norm)
        .collect();
    let mut done = load_checkpoint(opts);
    let pending: Vec<_> = levels
        .iter()
        .filter(|l| !done.contains_key(&level_key(&l.hnf_tuple())))
        .collect();
    if !done.is_empty() {
        log::info!("resuming scan: {} levels already in checkpoint", done.len());
    }
    for chunk in pending.chunks(CHECKPOINT_EVERY) {
        let results: Vec<_> = chunk
            .par_iter()
            .map(|level| {
                (
                    level_key(&level.hnf_tuple()),
                    bianchi_h1(&pres, level, &opts.h1).map_err(|e| e.to_string()),
                )
            })
            .collect();
        if let Some(path) = &opts.checkpoint {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            for (key, r) in &results {
                let line = CheckpointLine {
                    config: opts.config_hash.clone(),
                    key: key.clone(),
                    report: r.as_ref().ok().map(|r| serde_json::to_value(r).unwrap()),
                    error: r.as_ref().err().cloned(),
                };
                writeln!(f, "{}", serde_json::to_string(&line)?)?;
            }
            f.flush()?;
        }
        for (key, r) in results {
            if let Err(e) = &r {
                log::warn!("level {key}: {e}");
            }
            done.insert(key, r);
        }
    }
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for level in &levels {
        match done.remove(&level_key(&level.hnf_tuple())) {
            Some(Ok(r)) => reports.push(r),
            Some(Err(e)) => failures.push((level.label(), e)),
            None => {}
        }
    }
    let histogram = histogram(&reports);
    Ok(ScanResult {
        reports,
        failures,
        histogram,
    })
}
