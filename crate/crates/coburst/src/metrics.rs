//! Partition agreement scores: normalized mutual information and the
//! adjusted Rand index.
//!
//! Both scores require the two partitions to cover exactly the same node
//! set; cropping to a common subset is the caller's job (see
//! `pipeline::evaluate`).

use std::collections::BTreeMap;

use crate::community::Partition;
use crate::error::{Error, Result};

fn contingency(x: &Partition, y: &Partition) -> Result<(BTreeMap<(u64, u64), f64>, f64)> {
    if x.n_nodes() != y.n_nodes() {
        return Err(Error::invalid(
            "partitions",
            format!("node counts differ: {} vs {}", x.n_nodes(), y.n_nodes()),
        ));
    }
    if x.is_empty() {
        return Err(Error::Insufficient("cannot score empty partitions".into()));
    }
    let mut table: BTreeMap<(u64, u64), f64> = BTreeMap::new();
    for (node, lx) in x.iter() {
        let Some(ly) = y.get(node) else {
            return Err(Error::invalid(
                "partitions",
                format!("node {node:?} present in one partition only"),
            ));
        };
        *table.entry((lx, ly)).or_insert(0.0) += 1.0;
    }
    let n = x.n_nodes() as f64;
    Ok((table, n))
}

fn marginals(table: &BTreeMap<(u64, u64), f64>) -> (BTreeMap<u64, f64>, BTreeMap<u64, f64>) {
    let mut a: BTreeMap<u64, f64> = BTreeMap::new();
    let mut b: BTreeMap<u64, f64> = BTreeMap::new();
    for (&(lx, ly), &c) in table {
        *a.entry(lx).or_insert(0.0) += c;
        *b.entry(ly).or_insert(0.0) += c;
    }
    (a, b)
}

/// Normalized mutual information, `2 I(X;Y) / (H(X) + H(Y))`, natural log.
///
/// When both partitions are single-community (both entropies zero) the
/// partitions are identical and the score is 1. When exactly one is
/// trivial the mutual information is zero and so is the score.
pub fn nmi(x: &Partition, y: &Partition) -> Result<f64> {
    let (table, n) = contingency(x, y)?;
    let (ma, mb) = marginals(&table);
    let h = |m: &BTreeMap<u64, f64>| -> f64 {
        m.values()
            .map(|&c| {
                let p = c / n;
                -p * p.ln()
            })
            .sum()
    };
    let (hx, hy) = (h(&ma), h(&mb));
    if hx + hy == 0.0 {
        return Ok(1.0);
    }
    let mut mi = 0.0;
    for (&(lx, ly), &c) in &table {
        let p = c / n;
        let pa = ma[&lx] / n;
        let pb = mb[&ly] / n;
        if p > 0.0 {
            mi += p * (p / (pa * pb)).ln();
        }
    }
    Ok((2.0 * mi / (hx + hy)).clamp(0.0, 1.0))
}

/// Adjusted Rand index. 1 for identical partitions, about 0 for independent
/// ones, negative for systematic disagreement. A degenerate denominator
/// (both partitions trivial in the same way) scores 1.
pub fn ari(x: &Partition, y: &Partition) -> Result<f64> {
    let (table, n) = contingency(x, y)?;
    let (ma, mb) = marginals(&table);
    let c2 = |v: f64| v * (v - 1.0) / 2.0;
    let index: f64 = table.values().map(|&c| c2(c)).sum();
    let sum_a: f64 = ma.values().map(|&c| c2(c)).sum();
    let sum_b: f64 = mb.values().map(|&c| c2(c)).sum();
    let total = c2(n);
    let expected = sum_a * sum_b / total;
    let max_index = 0.5 * (sum_a + sum_b);
    let denom = max_index - expected;
    if denom.abs() < 1e-12 {
        return Ok(1.0);
    }
    Ok((index - expected) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn part(pairs: &[(&str, u64)]) -> Partition {
        Partition::new(
            pairs
                .iter()
                .map(|&(n, l)| (n.to_string(), l))
                .collect::<BTreeMap<_, _>>(),
        )
    }

    #[test]
    fn identical_partitions_score_one() {
        let x = part(&[("a", 0), ("b", 0), ("c", 1), ("d", 1)]);
        let y = part(&[("a", 7), ("b", 7), ("c", 3), ("d", 3)]); // relabeled
        assert_eq!(nmi(&x, &y).unwrap(), 1.0);
        assert_eq!(ari(&x, &y).unwrap(), 1.0);
    }

    #[test]
    fn crossed_pairs_hand_values() {
        // {ab|cd} vs {ac|bd}: independent given the marginals.
        let x = part(&[("a", 0), ("b", 0), ("c", 1), ("d", 1)]);
        let y = part(&[("a", 0), ("b", 1), ("c", 0), ("d", 1)]);
        assert!(nmi(&x, &y).unwrap().abs() < 1e-12);
        // index = 0, expected = 2*2/6 = 2/3, max = 2 -> (0 - 2/3)/(2 - 2/3) = -1/2
        assert!((ari(&x, &y).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn one_trivial_partition_scores_zero() {
        let x = part(&[("a", 0), ("b", 0), ("c", 1), ("d", 1)]);
        let y = part(&[("a", 5), ("b", 5), ("c", 5), ("d", 5)]);
        assert_eq!(nmi(&x, &y).unwrap(), 0.0);
        assert_eq!(ari(&x, &y).unwrap(), 0.0);
    }

    #[test]
    fn both_trivial_partitions_score_one() {
        let x = part(&[("a", 0), ("b", 0)]);
        let y = part(&[("a", 9), ("b", 9)]);
        assert_eq!(nmi(&x, &y).unwrap(), 1.0);
        assert_eq!(ari(&x, &y).unwrap(), 1.0);
    }

    #[test]
    fn mismatched_node_sets_are_rejected() {
        let x = part(&[("a", 0), ("b", 0)]);
        let y = part(&[("a", 0), ("c", 0)]);
        assert!(nmi(&x, &y).is_err());
        assert!(ari(&x, &y).is_err());
        let z = part(&[("a", 0)]);
        assert!(nmi(&x, &z).is_err());
    }

    #[test]
    fn all_singletons_vs_blocks() {
        // Singletons against two blocks of two: H differs, NMI strictly
        // between 0 and 1, ARI exactly 0 (index = expected = 0).
        let x = part(&[("a", 0), ("b", 1), ("c", 2), ("d", 3)]);
        let y = part(&[("a", 0), ("b", 0), ("c", 1), ("d", 1)]);
        let v = nmi(&x, &y).unwrap();
        assert!(v > 0.0 && v < 1.0);
        assert!(ari(&x, &y).unwrap().abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn scores_are_symmetric_and_label_invariant(
            labels_x in proptest::collection::vec(0u64..4, 8),
            labels_y in proptest::collection::vec(0u64..4, 8),
            shift in 1u64..100,
        ) {
            let names: Vec<String> = (0..8).map(|i| format!("v{i}")).collect();
            let mk = |ls: &[u64]| Partition::new(
                names.iter().cloned().zip(ls.iter().copied()).collect()
            );
            let x = mk(&labels_x);
            let y = mk(&labels_y);
            // relabel y by an order-scrambling injective map
            let y2 = mk(&labels_y.iter().map(|&l| (13 * l + shift) % 101).collect::<Vec<_>>());
            let n1 = nmi(&x, &y).unwrap();
            prop_assert!((nmi(&y, &x).unwrap() - n1).abs() < 1e-12);
            prop_assert!((nmi(&x, &y2).unwrap() - n1).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&n1));
            let a1 = ari(&x, &y).unwrap();
            prop_assert!((ari(&y, &x).unwrap() - a1).abs() < 1e-12);
            prop_assert!((ari(&x, &y2).unwrap() - a1).abs() < 1e-12);
            prop_assert!(a1 <= 1.0 + 1e-12);
        }
    }
}
