//! Community assignment: greedy modularity optimization (Louvain) and
//! asynchronous label propagation, plus the partition type they produce.
//!
//! Both algorithms take an explicit seed; node visiting order is shuffled
//! with a seeded generator, so results are reproducible bit-for-bit.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A community assignment: every node name maps to a community label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    map: BTreeMap<String, u64>,
}

impl Partition {
    pub fn new(map: BTreeMap<String, u64>) -> Self {
        Partition { map }
    }

    pub fn from_labels(names: &[String], labels: &[usize]) -> Self {
        assert_eq!(names.len(), labels.len());
        Partition {
            map: names
                .iter()
                .zip(labels)
                .map(|(n, &l)| (n.clone(), l as u64))
                .collect(),
        }
    }

    pub fn get(&self, node: &str) -> Option<u64> {
        self.map.get(node).copied()
    }

    pub fn n_nodes(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Iterate `(node, label)` sorted by node name.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.map.iter().map(|(n, &l)| (n.as_str(), l))
    }

    pub fn n_communities(&self) -> usize {
        let mut labels: Vec<u64> = self.map.values().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    /// Group node names by community label.
    pub fn communities(&self) -> BTreeMap<u64, Vec<&str>> {
        let mut out: BTreeMap<u64, Vec<&str>> = BTreeMap::new();
        for (n, &l) in &self.map {
            out.entry(l).or_default().push(n.as_str());
        }
        out
    }

    /// Relabel communities as 0..k-1, ordered by each community's smallest
    /// member name, so equal partitions always serialize identically.
    pub fn relabel_contiguous(&self) -> Partition {
        // BTreeMap iteration is name-sorted, so first appearance order is
        // "smallest member" order.
        let mut next = 0u64;
        let mut relabel: BTreeMap<u64, u64> = BTreeMap::new();
        let mut map = BTreeMap::new();
        for (n, &l) in &self.map {
            let new = *relabel.entry(l).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            });
            map.insert(n.clone(), new);
        }
        Partition { map }
    }

    /// Write CSV `node,community`, rows sorted by node name.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let pstr = path.as_ref().display().to_string();
        let file = File::create(path.as_ref()).map_err(|e| Error::io(&pstr, e))?;
        let mut w = BufWriter::new(file);
        writeln!(w, "node,community").map_err(|e| Error::io(&pstr, e))?;
        for (n, l) in &self.map {
            writeln!(w, "{n},{l}").map_err(|e| Error::io(&pstr, e))?;
        }
        w.flush().map_err(|e| Error::io(&pstr, e))
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let pstr = path.as_ref().display().to_string();
        let file = File::open(path.as_ref()).map_err(|e| Error::io(&pstr, e))?;
        let mut rdr = csv::Reader::from_reader(file);
        let mut map = BTreeMap::new();
        for rec in rdr.deserialize::<(String, u64)>() {
            let (node, label) = rec.map_err(|e| {
                let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
                Error::parse(&pstr, line, e.to_string())
            })?;
            if map.insert(node.clone(), label).is_some() {
                return Err(Error::invalid("partition", format!("node {node:?} listed twice")));
            }
        }
        Ok(Partition { map })
    }
}

/// Modularity of `partition` on `g` at the given resolution.
///
/// Uses the per-edge-end convention: with total weight `2m`, community
/// internal edge ends `in_c`, and community degree `deg_c`,
/// `Q = sum_c [ in_c/2m - resolution * (deg_c/2m)^2 ]`.
pub fn modularity(g: &WeightedGraph, partition: &Partition, resolution: f64) -> Result<f64> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(Error::invalid("resolution", format!("got {resolution}")));
    }
    let labels: Vec<u64> = g
        .names()
        .iter()
        .map(|n| {
            partition
                .get(n)
                .ok_or_else(|| Error::invalid("partition", format!("node {n:?} missing")))
        })
        .collect::<Result<_>>()?;
    let m2 = g.total_degree();
    if m2 <= 0.0 {
        return Ok(0.0);
    }
    let mut in_ends: BTreeMap<u64, f64> = BTreeMap::new();
    let mut deg: BTreeMap<u64, f64> = BTreeMap::new();
    for i in 0..g.n() {
        *deg.entry(labels[i]).or_insert(0.0) += g.degree(i);
        *in_ends.entry(labels[i]).or_insert(0.0) += 2.0 * g.self_loop(i);
        for &(j, w) in g.neighbors(i) {
            if labels[j] == labels[i] {
                *in_ends.entry(labels[i]).or_insert(0.0) += w;
            }
        }
    }
    let mut q = 0.0;
    for (label, d) in deg {
        let inw = in_ends.get(&label).copied().unwrap_or(0.0);
        q += inw / m2 - resolution * (d / m2) * (d / m2);
    }
    Ok(q)
}

// One coarsening level: adjacency without self entries, plus per-node
// internal weight (counted once; contributes twice to the node degree).
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_w: Vec<f64>,
}

impl Level {
    fn from_graph(g: &WeightedGraph) -> Self {
        Level {
            adj: (0..g.n()).map(|i| g.neighbors(i).to_vec()).collect(),
            self_w: (0..g.n()).map(|i| g.self_loop(i)).collect(),
        }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, i: usize) -> f64 {
        self.adj[i].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_w[i]
    }
}

/// Greedy modularity clustering.
///
/// Classic two-phase scheme: repeated single-node moves (strictly positive
/// gain only; ties keep the current community, then prefer the smallest
/// community id) followed by graph aggregation, until no move improves
/// modularity. Node visiting order is reshuffled each pass from `seed`.
pub fn louvain(g: &WeightedGraph, resolution: f64, seed: u64) -> Result<Partition> {
    Ok(louvain_impl(g, resolution, seed, false)?.0)
}

/// Like [`louvain`], but also returns the modularity value after each
/// accepted move (preceded by the initial value), measured on the input
/// graph with the composed assignment. The sequence is non-decreasing.
pub fn louvain_with_trace(
    g: &WeightedGraph,
    resolution: f64,
    seed: u64,
) -> Result<(Partition, Vec<f64>)> {
    louvain_impl(g, resolution, seed, true)
}

fn louvain_impl(
    g: &WeightedGraph,
    resolution: f64,
    seed: u64,
    trace_on: bool,
) -> Result<(Partition, Vec<f64>)> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(Error::invalid("resolution", format!("got {resolution}")));
    }
    let n = g.n();
    let mut trace = Vec::new();
    let singletons: Vec<usize> = (0..n).collect();
    let m2 = g.total_degree();
    if n == 0 || m2 <= 0.0 {
        return Ok((Partition::from_labels(g.names(), &singletons), trace));
    }

    let mut rng = StdRng::seed_from_u64(seed);
    let mut level = Level::from_graph(g);
    // Which level node each original node currently belongs to.
    let mut level_of: Vec<usize> = singletons.clone();

    if trace_on {
        let p = Partition::from_labels(g.names(), &level_of);
        trace.push(modularity(g, &p, resolution)?);
    }

    loop {
        let mut comm: Vec<usize> = (0..level.n()).collect();
        let k: Vec<f64> = (0..level.n()).map(|i| level.degree(i)).collect();
        let mut sum_tot = k.clone();
        let mut order: Vec<usize> = (0..level.n()).collect();
        let mut moved_any = false;

        loop {
            order.shuffle(&mut rng);
            let mut moved_pass = false;
            for &v in &order {
                let cv = comm[v];
                let mut w_to: BTreeMap<usize, f64> = BTreeMap::new();
                for &(u, w) in &level.adj[v] {
                    *w_to.entry(comm[u]).or_insert(0.0) += w;
                }
                sum_tot[cv] -= k[v];
                let mut best_c = cv;
                let mut best_gain =
                    w_to.get(&cv).copied().unwrap_or(0.0) - resolution * k[v] * sum_tot[cv] / m2;
                for (&c, &wc) in &w_to {
                    if c == cv {
                        continue;
                    }
                    let gain = wc - resolution * k[v] * sum_tot[c] / m2;
                    if gain > best_gain {
                        best_gain = gain;
                        best_c = c;
                    }
                }
                sum_tot[best_c] += k[v];
                if best_c != cv {
                    comm[v] = best_c;
                    moved_pass = true;
                    moved_any = true;
                    if trace_on {
                        let labels: Vec<usize> =
                            level_of.iter().map(|&lv| comm[lv]).collect();
                        let p = Partition::from_labels(g.names(), &labels);
                        trace.push(modularity(g, &p, resolution)?);
                    }
                }
            }
            if !moved_pass {
                break;
            }
        }

        if !moved_any {
            break;
        }

        // Aggregate: compact community ids in ascending order, then merge.
        let mut used: Vec<usize> = comm.clone();
        used.sort_unstable();
        used.dedup();
        let new_id: BTreeMap<usize, usize> =
            used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let kn = used.len();
        let mut self_w = vec![0.0f64; kn];
        let mut between: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for v in 0..level.n() {
            let cv = new_id[&comm[v]];
            self_w[cv] += level.self_w[v];
            for &(u, w) in &level.adj[v] {
                if u <= v {
                    continue; // each undirected pair once
                }
                let cu = new_id[&comm[u]];
                if cu == cv {
                    self_w[cv] += w;
                } else {
                    *between.entry((cv.min(cu), cv.max(cu))).or_insert(0.0) += w;
                }
            }
        }
        let mut adj = vec![Vec::new(); kn];
        for ((a, b), w) in between {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for row in &mut adj {
            row.sort_by_key(|&(j, _)| j);
        }
        for o in level_of.iter_mut() {
            *o = new_id[&comm[*o]];
        }
        level = Level { adj, self_w };
        if level.n() == 1 {
            break;
        }
    }

    Ok((Partition::from_labels(g.names(), &level_of), trace))
}

/// Asynchronous weighted label propagation.
///
/// Each node adopts the label with the largest summed incident weight;
/// exact ties are broken uniformly at random from the seeded generator.
/// Stops after a sweep with no change, or after `max_iters` sweeps
/// (`max_iters = 0` returns the all-singletons start).
pub fn label_propagation(g: &WeightedGraph, seed: u64, max_iters: usize) -> Partition {
    let n = g.n();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..max_iters {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            let mut tally: BTreeMap<usize, f64> = BTreeMap::new();
            for &(u, w) in g.neighbors(v) {
                *tally.entry(labels[u]).or_insert(0.0) += w;
            }
            let Some(&max_w) = tally.values().reduce(|a, b| if b > a { b } else { a }) else {
                continue; // isolated node keeps its own label
            };
            if max_w <= 0.0 {
                continue;
            }
            let winners: Vec<usize> = tally
                .iter()
                .filter_map(|(&l, &w)| (w == max_w).then_some(l))
                .collect();
            let new = if winners.len() == 1 {
                winners[0]
            } else {
                winners[rng.gen_range(0..winners.len())]
            };
            if new != labels[v] {
                labels[v] = new;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Partition::from_labels(g.names(), &labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        // zero-padded so lexicographic order == numeric order
        (0..n).map(|i| format!("n{i:02}")).collect()
    }

    fn two_cliques_with_bridge() -> WeightedGraph {
        let mut edges = Vec::new();
        for a in 0..5usize {
            for b in (a + 1)..5 {
                edges.push((a, b, 1.0));
                edges.push((a + 5, b + 5, 1.0));
            }
        }
        edges.push((0, 5, 1.0));
        WeightedGraph::from_edges(names(10), edges).unwrap()
    }

    /// Enumerate all set partitions of n items as restricted growth strings.
    fn all_partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(i: usize, maxc: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for c in 0..=maxc {
                cur[i] = c;
                rec(i + 1, maxc.max(c + 1), cur, out);
            }
        }
        rec(1, 1, &mut cur, &mut out);
        out
    }

    #[test]
    fn louvain_matches_exhaustive_modularity_maximum_on_two_cliques() {
        let g = two_cliques_with_bridge();
        // Independent oracle: brute-force the best partition over all
        // 115975 set partitions of 10 nodes.
        let mut best_q = f64::NEG_INFINITY;
        let mut best: Vec<usize> = Vec::new();
        for labels in all_partitions(10) {
            let p = Partition::from_labels(g.names(), &labels);
            let q = modularity(&g, &p, 1.0).unwrap();
            if q > best_q {
                best_q = q;
                best = labels;
            }
        }
        let oracle = Partition::from_labels(g.names(), &best).relabel_contiguous();
        for seed in [0u64, 1, 42, 1234] {
            let got = louvain(&g, 1.0, seed).unwrap().relabel_contiguous();
            assert_eq!(got, oracle, "seed {seed}");
            let q = modularity(&g, &got, 1.0).unwrap();
            assert!((q - best_q).abs() < 1e-12);
        }
        // And the oracle itself is the two cliques.
        let comms = oracle.communities();
        assert_eq!(comms.len(), 2);
        assert_eq!(comms[&0], vec!["n00", "n01", "n02", "n03", "n04"]);
    }

    #[test]
    fn modularity_hand_values() {
        let g = WeightedGraph::from_edges(names(2), vec![(0, 1, 1.0)]).unwrap();
        let together = Partition::from_labels(g.names(), &[0, 0]);
        let apart = Partition::from_labels(g.names(), &[0, 1]);
        assert!((modularity(&g, &together, 1.0).unwrap() - 0.0).abs() < 1e-15);
        assert!((modularity(&g, &apart, 1.0).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_weight_graph_yields_singletons() {
        let g = WeightedGraph::new(names(4)).unwrap();
        let p = louvain(&g, 1.0, 7).unwrap();
        assert_eq!(p.n_communities(), 4);
    }

    #[test]
    fn louvain_is_deterministic_and_scale_invariant() {
        let g = two_cliques_with_bridge();
        let base = louvain(&g, 1.0, 9).unwrap();
        assert_eq!(base, louvain(&g, 1.0, 9).unwrap());
        // Scaling all weights by a constant must not change the output.
        for c in [1024.0, 3.0, 0.125] {
            let scaled = g.scaled(c);
            assert_eq!(
                base.relabel_contiguous(),
                louvain(&scaled, 1.0, 9).unwrap().relabel_contiguous(),
                "scale {c}"
            );
        }
    }

    #[test]
    fn trace_is_nondecreasing_and_ends_at_final_modularity() {
        let g = two_cliques_with_bridge();
        let (p, trace) = louvain_with_trace(&g, 1.0, 3).unwrap();
        assert!(!trace.is_empty());
        for w in trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "trace decreased: {} -> {}", w[0], w[1]);
        }
        let q = modularity(&g, &p, 1.0).unwrap();
        assert!((q - trace.last().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn high_resolution_splits_what_low_resolution_merges() {
        let g = two_cliques_with_bridge();
        let fine = louvain(&g, 8.0, 5).unwrap();
        let coarse = louvain(&g, 0.05, 5).unwrap();
        assert!(fine.n_communities() > coarse.n_communities());
        assert_eq!(coarse.n_communities(), 1);
    }

    #[test]
    fn label_propagation_star_converges_to_one_label() {
        let edges: Vec<(usize, usize, f64)> = (1..6).map(|i| (0usize, i, 1.0)).collect();
        let g = WeightedGraph::from_edges(names(6), edges).unwrap();
        let p = label_propagation(&g, 11, 100);
        assert_eq!(p.n_communities(), 1);
    }

    #[test]
    fn label_propagation_zero_iters_returns_singletons() {
        let g = two_cliques_with_bridge();
        let p = label_propagation(&g, 11, 0);
        assert_eq!(p.n_communities(), 10);
    }

    #[test]
    fn label_propagation_finds_cliques() {
        let g = two_cliques_with_bridge();
        let p = label_propagation(&g, 4, 100);
        let expect = Partition::from_labels(g.names(), &[0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        assert_eq!(
            p.relabel_contiguous(),
            expect.relabel_contiguous()
        );
    }

    #[test]
    fn partition_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("partition.csv");
        let p = Partition::from_labels(&names(3), &[1, 0, 1]);
        p.write_csv(&path).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            "node,community\nn00,1\nn01,0\nn02,1\n"
        );
        assert_eq!(Partition::read_csv(&path).unwrap(), p);
    }

    #[test]
    fn duplicate_node_in_partition_csv_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "node,community\na,0\na,1\n").unwrap();
        assert!(Partition::read_csv(&path).is_err());
    }
}
