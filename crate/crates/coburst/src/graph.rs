//! Weighted undirected graph with stable, name-addressed nodes.
//!
//! Adjacency lists are kept sorted by neighbor index and parallel edges are
//! merged by summing weights, so any algorithm that iterates neighbors in
//! order is deterministic for a given construction sequence.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Weighted undirected graph. Self-loops are representable (their weight
/// contributes twice to the node degree, once per edge end).
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    names: Vec<String>,
    adj: Vec<Vec<(usize, f64)>>, // sorted by neighbor index, no self entries
    self_loops: Vec<f64>,
}

impl WeightedGraph {
    /// Create a graph with the given node names and no edges.
    /// Names must be unique.
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::invalid("graph", format!("duplicate node name {n:?}")));
            }
        }
        let n = names.len();
        Ok(WeightedGraph {
            names,
            adj: vec![Vec::new(); n],
            self_loops: vec![0.0; n],
        })
    }

    /// Build from explicit undirected edges given as index pairs.
    /// Repeated pairs accumulate weight.
    pub fn from_edges(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut g = WeightedGraph::new(names)?;
        let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(
                    "graph",
                    format!("edge endpoint out of range: ({u}, {v}) with {n} nodes"),
                ));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::invalid("graph", format!("bad edge weight {w}")));
            }
            if u == v {
                g.self_loops[u] += w;
            } else {
                *acc.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
            }
        }
        for ((u, v), w) in acc {
            g.adj[u].push((v, w));
            g.adj[v].push((u, w));
        }
        for row in &mut g.adj {
            row.sort_by_key(|&(j, _)| j);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Neighbors of `i` (excluding `i` itself), sorted by index.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }

    pub fn self_loop(&self, i: usize) -> f64 {
        self.self_loops[i]
    }

    /// Weighted degree: sum of incident edge weights, with self-loops
    /// counting twice.
    pub fn degree(&self, i: usize) -> f64 {
        self.adj[i].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[i]
    }

    /// Total weight counted per edge end (i.e. `2m`).
    pub fn total_degree(&self) -> f64 {
        (0..self.n()).map(|i| self.degree(i)).sum()
    }

    /// Number of distinct non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.len()).sum::<usize>() / 2
    }

    /// Iterate distinct non-loop edges as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter_map(move |&(v, w)| (u < v).then_some((u, v, w))))
    }

    /// Return a copy with every weight multiplied by `c`.
    pub fn scaled(&self, c: f64) -> WeightedGraph {
        let mut g = self.clone();
        for row in &mut g.adj {
            for e in row.iter_mut() {
                e.1 *= c;
            }
        }
        for w in &mut g.self_loops {
            *w *= c;
        }
        g
    }

    /// Write edges as CSV `src,dst,weight`, one row per distinct edge, with
    /// `src < dst` lexicographically by node name and rows sorted the same
    /// way. Self-loops are not emitted.
    pub fn write_edge_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let pstr = path.as_ref().display().to_string();
        let file = File::create(path.as_ref()).map_err(|e| Error::io(&pstr, e))?;
        let mut w = BufWriter::new(file);
        writeln!(w, "src,dst,weight").map_err(|e| Error::io(&pstr, e))?;
        let mut rows: Vec<(&str, &str, f64)> = self
            .edges()
            .map(|(u, v, wt)| {
                let (a, b) = (self.name(u), self.name(v));
                if a <= b {
                    (a, b, wt)
                } else {
                    (b, a, wt)
                }
            })
            .collect();
        rows.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        for (a, b, wt) in rows {
            writeln!(w, "{a},{b},{wt}").map_err(|e| Error::io(&pstr, e))?;
        }
        w.flush().map_err(|e| Error::io(&pstr, e))
    }

    /// Read a CSV written by [`WeightedGraph::write_edge_csv`]. Node names are
    /// collected from the edge rows in sorted order.
    pub fn read_edge_csv(path: impl AsRef<Path>) -> Result<Self> {
        let pstr = path.as_ref().display().to_string();
        let file = File::open(path.as_ref()).map_err(|e| Error::io(&pstr, e))?;
        let mut rdr = csv::Reader::from_reader(file);
        let mut rows: Vec<(String, String, f64)> = Vec::new();
        for rec in rdr.deserialize::<(String, String, f64)>() {
            let row = rec.map_err(|e| {
                let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
                Error::parse(&pstr, line, e.to_string())
            })?;
            rows.push(row);
        }
        let mut names: Vec<String> = rows
            .iter()
            .flat_map(|(a, b, _)| [a.clone(), b.clone()])
            .collect();
        names.sort();
        names.dedup();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let edges: Vec<(usize, usize, f64)> = rows
            .iter()
            .map(|(a, b, w)| (index[a.as_str()], index[b.as_str()], *w))
            .collect();
        WeightedGraph::from_edges(names, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("n{i}")).collect()
    }

    #[test]
    fn parallel_edges_merge() {
        let g = WeightedGraph::from_edges(names(3), vec![(0, 1, 1.0), (1, 0, 2.0), (1, 2, 1.0)])
            .unwrap();
        assert_eq!(g.neighbors(0), &[(1, 3.0)]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(1), 4.0);
        assert_eq!(g.total_degree(), 8.0);
    }

    #[test]
    fn self_loops_count_twice_in_degree() {
        let g = WeightedGraph::from_edges(names(2), vec![(0, 0, 1.5), (0, 1, 1.0)]).unwrap();
        assert_eq!(g.degree(0), 4.0);
        assert_eq!(g.self_loop(0), 1.5);
        assert_eq!(g.edges().count(), 1);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(WeightedGraph::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn out_of_range_and_bad_weights_rejected() {
        assert!(WeightedGraph::from_edges(names(2), vec![(0, 5, 1.0)]).is_err());
        assert!(WeightedGraph::from_edges(names(2), vec![(0, 1, -1.0)]).is_err());
        assert!(WeightedGraph::from_edges(names(2), vec![(0, 1, f64::NAN)]).is_err());
    }

    #[test]
    fn edge_csv_round_trip_is_sorted_and_stable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("graph.csv");
        let g = WeightedGraph::from_edges(
            vec!["zeta".into(), "alpha".into(), "mid".into()],
            vec![(0, 1, 2.0), (2, 0, 0.5), (1, 2, 1.25)],
        )
        .unwrap();
        g.write_edge_csv(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        // src < dst lexicographically, rows sorted
        assert_eq!(
            text,
            "src,dst,weight\nalpha,mid,1.25\nalpha,zeta,2\nmid,zeta,0.5\n"
        );
        let back = WeightedGraph::read_edge_csv(&path).unwrap();
        assert_eq!(back.n(), 3);
        assert_eq!(back.total_degree(), g.total_degree());
        // Re-export is byte-identical.
        let path2 = dir.path().join("graph2.csv");
        back.write_edge_csv(&path2).unwrap();
        assert_eq!(std::fs::read_to_string(&path2).unwrap(), text);
    }
}
