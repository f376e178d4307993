//! Seeded workloads shared by the benchmarks.

use qnc_core::codes::{compose, five_qubit_code, Composition};
use qnc_core::contraction::{BellConvention, ContractionInstance};
use qnc_core::graphstate::{ghz_stabilizers, GraphState};
use qnc_core::network::{random_connected_topology, NetworkTopology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> GraphState {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    GraphState::from_edges(n, edges).expect("edges are in range")
}

/// `len` three-qubit GHZ states fused end to end by Bell projections.
pub fn ghz_chain(len: usize) -> ContractionInstance {
    let nodes = vec![ghz_stabilizers(3); len];
    let pairs = (0..len.saturating_sub(1))
        .map(|i| (3 * i + 2, 3 * i + 3))
        .collect();
    ContractionInstance::consecutive(nodes, pairs, BellConvention::PlusPair).expect("valid chain")
}

/// `m` five-qubit codes in a ring, neighbours sharing one Bell pair.
pub fn five_qubit_ring(m: usize) -> Composition {
    assert!(m >= 2);
    let codes = vec![five_qubit_code(); m];
    let pairs: Vec<(usize, usize)> = (0..m).map(|i| (5 * i + 3, 5 * ((i + 1) % m) + 4)).collect();
    compose(&codes, &pairs, BellConvention::GraphEdge).expect("ring composes")
}

/// Random connected topology and its clients, at most `max_nodes` nodes.
pub fn random_network(seed: u64, max_nodes: usize) -> NetworkTopology {
    random_connected_topology(&mut rng(seed), max_nodes)
}
