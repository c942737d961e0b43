//! Build inter-event profiles from a hand-made event log and print the
//! pairwise KS distance matrix. Entities "a*" fire with fast exponential
//! gaps, entities "b*" with slow ones; the matrix shows the two rhythm
//! groups, and clustering the similarity graph recovers them exactly.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coburst::events::{build_profiles, pairwise_ks, BuildOptions, Event, EventLog};
use coburst::community::louvain;
use coburst::simgraph::{build_similarity_graph, Sparsify, Transform};

fn main() -> coburst::Result<()> {
    let mut rng = StdRng::seed_from_u64(99);
    let mut log = EventLog::default();
    for (prefix, rate) in [("a", 4.0), ("b", 0.5)] {
        for i in 0..3 {
            let entity = format!("{prefix}{i}");
            let mut t = 0.0;
            for _ in 0..80 {
                let u: f64 = rng.gen_range(f64::EPSILON..1.0);
                t += -u.ln() / rate; // exponential inter-event gap
                log.events.push(Event {
                    entity: entity.clone(),
                    domain: "demo".into(),
                    t,
                });
            }
        }
    }

    let outcome = build_profiles(&log, &BuildOptions::default())?;
    let table = pairwise_ks(&outcome.profiles, false)?;
    let keys = table.keys();

    print!("{:>8}", "");
    for k in keys {
        print!("{:>8}", k.entity);
    }
    println!();
    for (i, k) in keys.iter().enumerate() {
        print!("{:>8}", k.entity);
        for j in 0..keys.len() {
            if i == j {
                print!("{:>8}", "-");
            } else {
                print!("{:>8.3}", table.get(i, j).unwrap());
            }
        }
        println!();
    }

    let graph = build_similarity_graph(&table, Transform::OneMinusKs, Sparsify::None)?;
    let partition = louvain(&graph, 1.0, 1)?;
    println!("\nclusters:");
    for (node, community) in partition.iter() {
        println!("  {node} -> {community}");
    }
    Ok(())
}
