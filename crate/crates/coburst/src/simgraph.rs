//! Similarity graph over timing profiles.
//!
//! Pairwise KS distances are mapped to edge weights (small distance = strong
//! edge) and optionally sparsified. Every profile becomes a node even if all
//! of its edges are pruned, so downstream clustering always assigns it a
//! community.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::{KsTable, ProfileKey};
use crate::graph::WeightedGraph;

/// Distance-to-weight transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Transform {
    /// `w = 1 - d`. The default: linear, parameter-free, weights in [0, 1].
    OneMinusKs,
    /// `w = exp(-d / scale)` with `scale > 0`.
    ExpNegKs { scale: f64 },
}

impl Default for Transform {
    fn default() -> Self {
        Transform::OneMinusKs
    }
}

impl Transform {
    pub fn validate(&self) -> Result<()> {
        if let Transform::ExpNegKs { scale } = self {
            if !scale.is_finite() || *scale <= 0.0 {
                return Err(Error::invalid("transform scale", format!("got {scale}")));
            }
        }
        Ok(())
    }

    pub fn weight(&self, d: f64) -> f64 {
        match self {
            Transform::OneMinusKs => 1.0 - d,
            Transform::ExpNegKs { scale } => (-d / scale).exp(),
        }
    }
}

/// Edge-pruning rule applied after the transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Sparsify {
    /// Keep every edge. The default.
    None,
    /// Keep the union over nodes of each node's `k` strongest edges.
    /// Equal weights are broken toward the lexicographically smaller
    /// `(entity, domain)` endpoint.
    TopK { k: usize },
    /// Keep edges with weight at least `theta`.
    Threshold { theta: f64 },
}

impl Default for Sparsify {
    fn default() -> Self {
        Sparsify::None
    }
}

impl Sparsify {
    pub fn validate(&self) -> Result<()> {
        match self {
            Sparsify::None => Ok(()),
            Sparsify::TopK { k } => {
                if *k == 0 {
                    Err(Error::invalid("top_k", "k must be at least 1"))
                } else {
                    Ok(())
                }
            }
            Sparsify::Threshold { theta } => {
                if theta.is_finite() {
                    Ok(())
                } else {
                    Err(Error::invalid("threshold", format!("got {theta}")))
                }
            }
        }
    }
}

/// Stable node names for a set of profile keys: the bare entity when
/// entities are globally unique, otherwise `entity@domain`.
pub fn node_names_for(keys: &[ProfileKey]) -> Vec<String> {
    let mut entities = BTreeSet::new();
    let unique = keys.iter().all(|k| entities.insert(k.entity.as_str()));
    keys.iter()
        .map(|k| {
            if unique {
                k.entity.clone()
            } else {
                format!("{}@{}", k.entity, k.domain)
            }
        })
        .collect()
}

/// Build the weighted similarity graph from a distance table.
///
/// Edges whose transformed weight is zero are dropped (they carry no
/// information for weighted clustering); excluded pairs in the table never
/// produce an edge.
pub fn build_similarity_graph(
    table: &KsTable,
    transform: Transform,
    sparsify: Sparsify,
) -> Result<WeightedGraph> {
    transform.validate()?;
    sparsify.validate()?;
    let n = table.len();
    let names = node_names_for(table.keys());

    let candidate = |i: usize, j: usize| -> Option<f64> {
        let w = transform.weight(table.get(i, j)?);
        (w > 0.0).then_some(w)
    };

    let kept: Vec<(usize, usize, f64)> = match sparsify {
        Sparsify::None => table
            .pairs()
            .filter_map(|(i, j, _)| candidate(i, j).map(|w| (i, j, w)))
            .collect(),
        Sparsify::Threshold { theta } => table
            .pairs()
            .filter_map(|(i, j, _)| candidate(i, j).map(|w| (i, j, w)))
            .filter(|&(_, _, w)| w >= theta)
            .collect(),
        Sparsify::TopK { k } => {
            let mut keep: BTreeSet<(usize, usize)> = BTreeSet::new();
            for i in 0..n {
                let mut incident: Vec<(usize, f64)> = (0..n)
                    .filter(|&j| j != i)
                    .filter_map(|j| candidate(i, j).map(|w| (j, w)))
                    .collect();
                incident.sort_by(|a, b| {
                    b.1.partial_cmp(&a.1)
                        .unwrap()
                        .then_with(|| table.keys()[a.0].cmp(&table.keys()[b.0]))
                });
                for &(j, _) in incident.iter().take(k) {
                    keep.insert((i.min(j), i.max(j)));
                }
            }
            keep.into_iter()
                .map(|(i, j)| (i, j, candidate(i, j).expect("kept edge has a weight")))
                .collect()
        }
    };

    WeightedGraph::from_edges(names, kept)
}
