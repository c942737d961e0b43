//! Sweeps over the mixing parameter: generate a grid of simulated runs,
//! apply every requested detector to each, and score the recovered
//! communities against the planted ones.
//!
//! Each (grid position, replicate) cell gets its own seed derived from the
//! base seed, and each detector inside a cell gets a further derived seed,
//! so results are reproducible cell-by-cell and independent of execution
//! order — sweeps parallelize without changing their output.

use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bcsbm::{simulate, BcsbmParams};
use crate::error::{Error, Result};
use crate::pipeline::{evaluate, run_detector, DetectOptions, Detector};
use crate::rng::{cell_seed, derive_seed};

/// One sweep configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    /// Mixing-parameter values to simulate at.
    pub lambda_grid: Vec<f64>,
    /// Independent replicates per grid value.
    pub replicates: usize,
    /// Every cell seed is derived from this.
    pub base_seed: u64,
    /// Detectors to run on every replicate.
    pub detectors: Vec<Detector>,
    /// Generator parameters; `lambda` and `seed` are overridden per cell.
    pub generator: BcsbmParams,
    /// Detection options; `seed` is overridden per detector per cell.
    pub detect: DetectOptions,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            lambda_grid: (0..=10).map(|i| i as f64 / 10.0).collect(),
            replicates: 10,
            base_seed: 42,
            detectors: Detector::ALL.to_vec(),
            generator: BcsbmParams::default(),
            detect: DetectOptions::default(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.lambda_grid.is_empty() {
            return Err(Error::invalid("lambda_grid", "must not be empty"));
        }
        for (i, &l) in self.lambda_grid.iter().enumerate() {
            if !l.is_finite() || !(0.0..=1.0).contains(&l) {
                return Err(Error::invalid(
                    "lambda_grid",
                    format!("values must be in [0, 1], got {l}"),
                ));
            }
            if self.lambda_grid[..i].contains(&l) {
                return Err(Error::invalid("lambda_grid", format!("{l} listed twice")));
            }
        }
        if self.replicates == 0 {
            return Err(Error::invalid("replicates", "need at least 1"));
        }
        if self.detectors.is_empty() {
            return Err(Error::invalid("detectors", "must not be empty"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for d in &self.detectors {
            if !seen.insert(*d) {
                return Err(Error::invalid("detectors", format!("{d} listed twice")));
            }
        }
        self.generator.validate()
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let pstr = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(&pstr, e))?;
        let spec: SweepSpec =
            serde_json::from_str(&text).map_err(|e| Error::parse(&pstr, e.line(), e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let pstr = path.display().to_string();
        let text = serde_json::to_string_pretty(self).expect("spec serializes") + "\n";
        std::fs::write(path, text).map_err(|e| Error::io(&pstr, e))
    }
}

/// One detector's score on one replicate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub replicate: usize,
    pub detector: Detector,
    pub nmi: f64,
    pub ari: f64,
    /// Fraction of the replicate's edges inside planted communities.
    pub intra_edge_fraction: f64,
}

/// A cell that could not be scored, with the reason.
#[derive(Debug, Clone, Serialize)]
pub struct SweepFailure {
    pub lambda: f64,
    pub replicate: usize,
    pub detector: Detector,
    pub error: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepResult {
    /// Scored rows, ordered by grid position, then replicate, then detector
    /// name.
    pub rows: Vec<SweepRow>,
    pub failures: Vec<SweepFailure>,
}

fn detector_salt(d: Detector) -> u64 {
    match d {
        Detector::Bursty => 1,
        Detector::LouvainEdges => 2,
        Detector::LpaEdges => 3,
    }
}

/// Run the whole sweep. Per-cell failures don't abort the sweep; they come
/// back in [`SweepResult::failures`].
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let cells: Vec<(usize, usize)> = (0..spec.lambda_grid.len())
        .flat_map(|li| (0..spec.replicates).map(move |rep| (li, rep)))
        .collect();

    let per_cell: Vec<(Vec<SweepRow>, Vec<SweepFailure>)> = cells
        .par_iter()
        .map(|&(li, rep)| {
            let lambda = spec.lambda_grid[li];
            let seed = cell_seed(spec.base_seed, li, rep);
            let mut params = spec.generator.clone();
            params.lambda = lambda;
            params.seed = seed;
            let mut rows = Vec::new();
            let mut failures = Vec::new();
            match simulate(&params) {
                Ok(run) => {
                    let intra = run.intra_edge_fraction();
                    for &det in &spec.detectors {
                        let mut opts = spec.detect.clone();
                        opts.seed = derive_seed(seed, &[detector_salt(det)]);
                        match run_detector(&run, det, &opts)
                            .and_then(|p| evaluate(&p, &run.truth))
                        {
                            Ok(report) => rows.push(SweepRow {
                                lambda,
                                replicate: rep,
                                detector: det,
                                nmi: report.nmi,
                                ari: report.ari,
                                intra_edge_fraction: intra,
                            }),
                            Err(e) => failures.push(SweepFailure {
                                lambda,
                                replicate: rep,
                                detector: det,
                                error: e.to_string(),
                            }),
                        }
                    }
                }
                Err(e) => {
                    for &det in &spec.detectors {
                        failures.push(SweepFailure {
                            lambda,
                            replicate: rep,
                            detector: det,
                            error: format!("simulation failed: {e}"),
                        });
                    }
                }
            }
            (rows, failures)
        })
        .collect();

    let mut result = SweepResult::default();
    for (rows, failures) in per_cell {
        result.rows.extend(rows);
        result.failures.extend(failures);
    }
    // cells come back in grid order already; order detectors by name within
    // each cell so the output never depends on the spec's detector order
    let grid_pos = |l: f64| {
        spec.lambda_grid
            .iter()
            .position(|&g| g == l)
            .expect("row lambda comes from the grid")
    };
    result
        .rows
        .sort_by(|a, b| {
            (grid_pos(a.lambda), a.replicate, a.detector.name())
                .cmp(&(grid_pos(b.lambda), b.replicate, b.detector.name()))
        });
    result
        .failures
        .sort_by(|a, b| {
            (grid_pos(a.lambda), a.replicate, a.detector.name())
                .cmp(&(grid_pos(b.lambda), b.replicate, b.detector.name()))
        });
    Ok(result)
}

/// Write sweep rows as CSV. Floats use Rust's shortest round-trip display,
/// so identical results produce identical bytes.
pub fn write_rows_csv(rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let pstr = path.display().to_string();
    let file = std::fs::File::create(path).map_err(|e| Error::io(&pstr, e))?;
    let mut w = std::io::BufWriter::new(file);
    writeln!(w, "lambda,replicate,detector,nmi,ari,intra_edge_fraction")
        .map_err(|e| Error::io(&pstr, e))?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.lambda, r.replicate, r.detector, r.nmi, r.ari, r.intra_edge_fraction
        )
        .map_err(|e| Error::io(&pstr, e))?;
    }
    w.flush().map_err(|e| Error::io(&pstr, e))
}

/// Write the failure manifest (pretty JSON array).
pub fn write_failures_json(failures: &[SweepFailure], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let pstr = path.display().to_string();
    let text = serde_json::to_string_pretty(failures).expect("failures serialize") + "\n";
    std::fs::write(path, text).map_err(|e| Error::io(&pstr, e))
}
