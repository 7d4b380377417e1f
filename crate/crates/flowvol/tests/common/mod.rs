//! Test-side oracles, independent of the library's counting engines.

use flowvol::{BinaryWord, Dag, NetflowVector};

pub fn member(bits: &str) -> Dag {
    flowvol::dag_from_word(&BinaryWord::parse(bits).unwrap())
}

pub fn complete_dag(vertex_count: usize) -> Dag {
    let mut pairs = Vec::new();
    for i in 1..=vertex_count {
        for j in i + 1..=vertex_count {
            pairs.push((i, j));
        }
    }
    Dag::new(vertex_count, pairs).unwrap()
}

/// Counts nonnegative integer flows by plain nested iteration over bounded
/// edge-value ranges. The value on an edge leaving `u` can never exceed the
/// net supply of the vertices up to `u`, which bounds each range; beyond
/// that there is no shared machinery with the library engines.
pub fn brute_force_flow_count(dag: &Dag, netflow: &NetflowVector) -> u64 {
    let bounds: Vec<i64> = dag
        .edges()
        .iter()
        .map(|e| (1..=e.tail).map(|v| netflow.at(v).max(0)).sum())
        .collect();
    if bounds.iter().any(|&b| b < 0) {
        return 0;
    }
    let mut values = vec![0i64; dag.edge_count()];
    count_rec(dag, netflow, &bounds, &mut values, 0)
}

fn count_rec(
    dag: &Dag,
    netflow: &NetflowVector,
    bounds: &[i64],
    values: &mut Vec<i64>,
    edge: usize,
) -> u64 {
    if edge == dag.edge_count() {
        let balanced = (1..=dag.vertex_count()).all(|v| {
            let mut net = 0i64;
            for (i, e) in dag.edges().iter().enumerate() {
                if e.tail == v {
                    net += values[i];
                }
                if e.head == v {
                    net -= values[i];
                }
            }
            net == netflow.at(v)
        });
        return balanced as u64;
    }
    let mut total = 0;
    for value in 0..=bounds[edge] {
        values[edge] = value;
        total += count_rec(dag, netflow, bounds, values, edge + 1);
    }
    values[edge] = 0;
    total
}

/// A random small multigraph (tail < head, multiplicities up to 2) together
/// with a feasible netflow, obtained by reading the netflow off a random
/// flow.
pub fn random_dag_with_feasible_netflow(rng: &mut impl rand::Rng) -> (Dag, NetflowVector) {
    loop {
        let vertex_count = rng.gen_range(3..=6);
        let mut pairs = Vec::new();
        for i in 1..=vertex_count {
            for j in i + 1..=vertex_count {
                for _ in 0..rng.gen_range(0..=2) {
                    pairs.push((i, j));
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        let dag = Dag::new(vertex_count, pairs).unwrap();
        let mut entries = vec![0i64; vertex_count];
        for e in dag.edges() {
            let value = rng.gen_range(0..=2i64);
            entries[e.tail - 1] += value;
            entries[e.head - 1] -= value;
        }
        let netflow = NetflowVector::new(entries).unwrap();
        return (dag, netflow);
    }
}
