//! End-to-end detection and evaluation.
//!
//! Ties the lower layers together: event log -> timing profiles -> pairwise
//! KS distances -> similarity graph -> communities, plus the structural
//! baselines that cluster the aggregated contact graph directly, and the
//! scoring helpers that compare any predicted partition against a planted
//! one.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::bcsbm::TemporalGraphRun;
use crate::community::{label_propagation, louvain, Partition};
use crate::error::{Error, Result};
use crate::events::{build_profiles, pairwise_ks, BuildOptions, Event, EventLog, ProfileKey, Window};
use crate::graph::WeightedGraph;
use crate::metrics::{ari, nmi};
use crate::simgraph::{build_similarity_graph, Sparsify, Transform};

/// Sweep cap for the label-propagation baseline.
pub const LPA_MAX_ITERS: usize = 100;

/// The detectors a sweep can run against each simulated network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detector {
    /// Timing-only detection on participation events.
    Bursty,
    /// Louvain on the aggregated contact graph.
    LouvainEdges,
    /// Label propagation on the aggregated contact graph.
    LpaEdges,
}

impl Detector {
    pub const ALL: [Detector; 3] = [Detector::Bursty, Detector::LouvainEdges, Detector::LpaEdges];

    pub fn name(&self) -> &'static str {
        match self {
            Detector::Bursty => "bursty",
            Detector::LouvainEdges => "louvain_edges",
            Detector::LpaEdges => "lpa_edges",
        }
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Detector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bursty" => Ok(Detector::Bursty),
            "louvain_edges" => Ok(Detector::LouvainEdges),
            "lpa_edges" => Ok(Detector::LpaEdges),
            other => Err(Error::invalid(
                "detector",
                format!("unknown detector {other:?} (expected bursty, louvain_edges, or lpa_edges)"),
            )),
        }
    }
}

/// Options for timing-based detection.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectOptions {
    /// Distance-to-weight transform for the similarity graph.
    pub transform: Transform,
    /// Edge sparsification applied to the similarity graph.
    pub sparsify: Sparsify,
    /// Profiles with fewer events are dropped (and reported).
    pub min_events: usize,
    /// Keep zero gaps from exactly tied timestamps.
    pub keep_zero_deltas: bool,
    /// Restrict to events in this half-open time window.
    pub window: Option<Window>,
    /// Only score pairs from different domains.
    pub cross_domain_only: bool,
    /// Louvain resolution on the similarity graph.
    pub resolution: f64,
    /// Seed for the clustering stage.
    pub seed: u64,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            transform: Transform::OneMinusKs,
            sparsify: Sparsify::None,
            min_events: 5,
            keep_zero_deltas: false,
            window: None,
            cross_domain_only: false,
            resolution: 1.0,
            seed: 42,
        }
    }
}

/// Everything the timing detector produces.
#[derive(Debug)]
pub struct DetectOutcome {
    pub partition: Partition,
    /// The similarity graph the communities were found on.
    pub graph: WeightedGraph,
    pub n_profiles: usize,
    /// Keys dropped for having too few events, with their event counts.
    pub omitted: Vec<(ProfileKey, usize)>,
}

/// Detect coordinating groups from event timing alone.
pub fn detect_bursty(log: &EventLog, opts: &DetectOptions) -> Result<DetectOutcome> {
    let outcome = build_profiles(
        log,
        &BuildOptions {
            min_events: opts.min_events,
            keep_zero_deltas: opts.keep_zero_deltas,
            window: opts.window,
        },
    )?;
    let table = pairwise_ks(&outcome.profiles, opts.cross_domain_only)?;
    let graph = build_similarity_graph(&table, opts.transform, opts.sparsify)?;
    let partition = louvain(&graph, opts.resolution, opts.seed)?;
    Ok(DetectOutcome {
        partition,
        graph,
        n_profiles: outcome.profiles.len(),
        omitted: outcome.omitted,
    })
}

/// Run one detector against a simulated run, returning its partition of the
/// node set.
///
/// The timing detector sees participation events (each edge timestamps both
/// endpoints), which keeps every node's event rate sensitive to how often
/// its community is targeted, not only to how often it fires.
pub fn run_detector(
    run: &TemporalGraphRun,
    detector: Detector,
    opts: &DetectOptions,
) -> Result<Partition> {
    match detector {
        Detector::Bursty => Ok(detect_bursty(&run.participation_log(), opts)?.partition),
        Detector::LouvainEdges => louvain(&run.aggregate_graph(), opts.resolution, opts.seed),
        Detector::LpaEdges => Ok(label_propagation(
            &run.aggregate_graph(),
            opts.seed,
            LPA_MAX_ITERS,
        )),
    }
}

/// Reconstruct participation events from a `snapshots.csv` file
/// (`t,src,dst` rows): each data row contributes one event per endpoint,
/// and the event time is the row's 0-based data index, so ordering inside a
/// snapshot is preserved.
pub fn participation_events_from_snapshots(
    path: impl AsRef<Path>,
    domain: &str,
) -> Result<EventLog> {
    let path = path.as_ref();
    let pstr = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(&pstr, e))?;
    let mut events = Vec::new();
    let mut slot = 0u64;
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            if line.trim() != "t,src,dst" {
                return Err(Error::parse(&pstr, 1, "expected header t,src,dst"));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::parse(&pstr, idx + 1, format!("expected t,src,dst, got {line:?}"));
        let mut parts = line.split(',');
        let _t: u64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let src = parts.next().ok_or_else(bad)?.trim();
        let dst = parts.next().ok_or_else(bad)?.trim();
        if src.is_empty() || dst.is_empty() || parts.next().is_some() {
            return Err(bad());
        }
        for v in [src, dst] {
            events.push(Event {
                entity: v.to_string(),
                domain: domain.to_string(),
                t: slot as f64,
            });
        }
        slot += 1;
    }
    if events.is_empty() {
        return Err(Error::Insufficient(format!("{pstr}: no event rows")));
    }
    Ok(EventLog::new(events))
}

/// Agreement between a predicted partition and a reference one.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub nmi: f64,
    pub ari: f64,
    /// Communities among the compared nodes, prediction side.
    pub n_pred_communities: usize,
    /// Communities among the compared nodes, reference side.
    pub n_true_communities: usize,
    /// Nodes present in both partitions (the comparison set).
    pub n_nodes_compared: usize,
    /// Nodes only in the prediction, dropped before scoring.
    pub n_pred_only: usize,
    /// Nodes only in the reference, dropped before scoring.
    pub n_truth_only: usize,
}

fn crop(p: &Partition, keep: &[&str]) -> Partition {
    Partition::new(
        keep.iter()
            .map(|&n| (n.to_string(), p.get(n).expect("kept nodes exist in both")))
            .collect(),
    )
}

/// Score a prediction against a reference partition on their common nodes.
pub fn evaluate(pred: &Partition, truth: &Partition) -> Result<EvalReport> {
    let common: Vec<&str> = pred
        .iter()
        .map(|(n, _)| n)
        .filter(|n| truth.get(n).is_some())
        .collect();
    if common.is_empty() {
        return Err(Error::Insufficient(
            "the predicted and reference partitions share no nodes".into(),
        ));
    }
    let p = crop(pred, &common);
    let t = crop(truth, &common);
    Ok(EvalReport {
        nmi: nmi(&p, &t)?,
        ari: ari(&p, &t)?,
        n_pred_communities: p.n_communities(),
        n_true_communities: t.n_communities(),
        n_nodes_compared: common.len(),
        n_pred_only: pred.n_nodes() - common.len(),
        n_truth_only: truth.n_nodes() - common.len(),
    })
}

/// NMI scores of the prediction against label-shuffled copies of the
/// reference — a null distribution for "how much agreement is luck".
pub fn shuffled_null_nmi(
    pred: &Partition,
    truth: &Partition,
    n_shuffles: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let common: Vec<&str> = pred
        .iter()
        .map(|(n, _)| n)
        .filter(|n| truth.get(n).is_some())
        .collect();
    if common.is_empty() {
        return Err(Error::Insufficient(
            "the predicted and reference partitions share no nodes".into(),
        ));
    }
    let p = crop(pred, &common);
    let t = crop(truth, &common);
    let names: Vec<String> = t.iter().map(|(n, _)| n.to_string()).collect();
    let mut labels: Vec<u64> = t.iter().map(|(_, c)| c).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_shuffles);
    for _ in 0..n_shuffles {
        labels.shuffle(&mut rng);
        let shuffled = Partition::new(names.iter().cloned().zip(labels.iter().copied()).collect());
        out.push(nmi(&p, &shuffled)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcsbm::{simulate, BcsbmParams};
    use std::collections::BTreeMap;

    fn part(pairs: &[(&str, u64)]) -> Partition {
        Partition::new(
            pairs
                .iter()
                .map(|&(n, c)| (n.to_string(), c))
                .collect::<BTreeMap<_, _>>(),
        )
    }

    #[test]
    fn detector_names_round_trip() {
        for d in Detector::ALL {
            assert_eq!(d.name().parse::<Detector>().unwrap(), d);
        }
        assert!("louvain".parse::<Detector>().is_err());
    }

    #[test]
    fn structural_baseline_recovers_a_strongly_assortative_run() {
        let p = BcsbmParams {
            n: 45,
            t_steps: 60,
            community_sizes: vec![15, 15, 15],
            community_weights: vec![1.0, 1.0, 1.0],
            lambda: 0.95,
            seed: 5,
            ..Default::default()
        };
        let run = simulate(&p).unwrap();
        let pred = run_detector(&run, Detector::LouvainEdges, &DetectOptions::default()).unwrap();
        let report = evaluate(&pred, &run.truth).unwrap();
        assert!(report.nmi > 0.95, "nmi = {}", report.nmi);
        assert_eq!(report.n_nodes_compared, 45);
    }

    #[test]
    fn timing_detector_separates_rate_distinct_communities() {
        let p = BcsbmParams {
            n: 45,
            t_steps: 80,
            community_sizes: vec![15, 15, 15],
            community_weights: vec![1.0, 4.0, 16.0],
            lambda: 0.5,
            seed: 3,
            ..Default::default()
        };
        let run = simulate(&p).unwrap();
        let pred = run_detector(&run, Detector::Bursty, &DetectOptions::default()).unwrap();
        let report = evaluate(&pred, &run.truth).unwrap();
        assert!(report.nmi > 0.5, "nmi = {}", report.nmi);
        // same seed, same answer
        let again = run_detector(&run, Detector::Bursty, &DetectOptions::default()).unwrap();
        let rep2 = evaluate(&again, &run.truth).unwrap();
        assert_eq!(report.nmi, rep2.nmi);
    }

    #[test]
    fn evaluation_crops_to_the_common_node_set() {
        let pred = part(&[("a", 0), ("b", 0), ("c", 1), ("x", 9)]);
        let truth = part(&[("a", 5), ("b", 5), ("c", 7), ("y", 0), ("z", 0)]);
        let r = evaluate(&pred, &truth).unwrap();
        assert_eq!(r.n_nodes_compared, 3);
        assert_eq!(r.n_pred_only, 1);
        assert_eq!(r.n_truth_only, 2);
        assert_eq!(r.nmi, 1.0);
        assert_eq!(r.ari, 1.0);
        assert_eq!(r.n_pred_communities, 2);
        assert_eq!(r.n_true_communities, 2);
    }

    #[test]
    fn disjoint_node_sets_are_an_error() {
        let pred = part(&[("a", 0)]);
        let truth = part(&[("b", 0)]);
        assert!(evaluate(&pred, &truth).is_err());
    }

    #[test]
    fn shuffled_null_sits_well_below_a_perfect_match() {
        let names: Vec<(String, u64)> =
            (0..60).map(|i| (format!("n{i:02}"), (i / 20) as u64)).collect();
        let truth = Partition::new(names.into_iter().collect());
        let nulls = shuffled_null_nmi(&truth, &truth, 50, 42).unwrap();
        assert_eq!(nulls.len(), 50);
        let mean: f64 = nulls.iter().sum::<f64>() / nulls.len() as f64;
        assert!(mean < 0.2, "null mean = {mean}");
        // deterministic
        let again = shuffled_null_nmi(&truth, &truth, 50, 42).unwrap();
        assert_eq!(nulls, again);
    }

    #[test]
    fn snapshot_rows_become_participation_events() {
        let dir = tempfile::tempdir().unwrap();
        let p = BcsbmParams {
            n: 12,
            t_steps: 6,
            community_sizes: vec![4, 4, 4],
            community_weights: vec![1.0, 2.0, 4.0],
            seed: 9,
            ..Default::default()
        };
        let run = simulate(&p).unwrap();
        run.write_dir(dir.path()).unwrap();
        let from_file =
            participation_events_from_snapshots(dir.path().join("snapshots.csv"), "d0").unwrap();
        let direct = run.participation_log();
        assert_eq!(from_file.len(), direct.len());
        let key = |e: &Event| (e.entity.clone(), e.domain.clone(), e.t.to_bits());
        let mut a: Vec<_> = from_file.events.iter().map(key).collect();
        let mut b: Vec<_> = direct.events.iter().map(key).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn malformed_snapshot_rows_name_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("snapshots.csv");
        std::fs::write(&path, "t,src,dst\n0,1,2\n0,oops\n").unwrap();
        let err = participation_events_from_snapshots(&path, "d0").unwrap_err();
        assert!(err.to_string().contains(":3:"), "{err}");
    }
}
