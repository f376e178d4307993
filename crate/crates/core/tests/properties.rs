//! Randomized properties of min-cuts, network contraction and composed codes.

mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use qnc_core::codes::singleton_max_distance;
use qnc_core::contraction::{contract, BellConvention, ContractionStatus};
use qnc_core::graphstate::{Bipartition, GraphState};
use qnc_core::network::{
    feasibility, min_cut, random_connected_topology, to_contraction, NetworkTopology,
    DEFAULT_MAX_CLIENTS,
};
use qnc_core::pauli::PauliOperator;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sides(clients: &[usize], part: &Bipartition) -> (Vec<usize>, Vec<usize>) {
    (
        part.side_a().iter().map(|&i| clients[i]).collect(),
        part.side_b().iter().map(|&i| clients[i]).collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_cut_symmetric_and_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_connected_topology(&mut rng, 10);
        let clients = t.clients();
        let mask = rng.gen_range(1..(1u64 << clients.len()) - 1);
        let (a, b) = sides(&clients, &Bipartition::from_mask(clients.len(), mask).unwrap());
        let before = min_cut(&t, &a, &b).unwrap();
        prop_assert_eq!(before, min_cut(&t, &b, &a).unwrap());

        let u = rng.gen_range(0..t.num_nodes());
        let v = (u + rng.gen_range(1..t.num_nodes())) % t.num_nodes();
        let mut edges = t.edges().to_vec();
        edges.push(qnc_core::network::Edge { u, v, channels: rng.gen_range(1..=2) });
        let bigger = NetworkTopology::new(t.nodes().to_vec(), edges).unwrap();
        prop_assert!(min_cut(&bigger, &a, &b).unwrap() >= before);
    }
}

/// Whatever the relays prepare, a pure client state never carries more
/// entanglement across a client cut than the cut's capacity.
#[test]
fn contracted_states_respect_min_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut pure_cases = 0;
    for _ in 0..150 {
        let t = random_connected_topology(&mut rng, 7);
        let mut assignment = BTreeMap::new();
        for r in t.relays() {
            let arity = t.channel_degree(r) + rng.gen_range(0..=1);
            if arity == 0 || arity > 6 {
                continue;
            }
            assignment.insert(r, random_lc_state(&mut rng, arity).0);
        }
        let convention = if rng.gen_bool(0.5) {
            BellConvention::PlusPair
        } else {
            BellConvention::GraphEdge
        };
        let Ok(nc) = to_contraction(&t, &assignment, convention) else {
            continue;
        };
        let r = contract(&nc.instance).unwrap();
        if r.status != ContractionStatus::Pure {
            continue;
        }
        pure_cases += 1;
        let clients = t.clients();
        let profile = nc.client_rank_profile(&r, &clients);
        for (part, &rank) in Bipartition::enumerate(clients.len()).zip(&profile) {
            let (a, b) = sides(&clients, &part);
            assert!(rank as u64 <= min_cut(&t, &a, &b).unwrap());
        }
        // The distributed state is LC-equivalent to some graph state; if it
        // is the GHZ class, the feasibility test must accept a GHZ target.
        if profile.iter().all(|&x| x == 1) {
            let ghz = GraphState::star(clients.len());
            assert!(
                feasibility(&t, &clients, &ghz, DEFAULT_MAX_CLIENTS)
                    .unwrap()
                    .feasible
            );
        }
    }
    assert!(pure_cases >= 30, "only {pure_cases} pure cases");
}

#[test]
fn triangle_code_survives_two_erasures() {
    let code = triangle(BellConvention::GraphEdge).code;
    let letters = ['I', 'X', 'Y', 'Z'];
    for i in 0..9 {
        for j in i + 1..9 {
            for a in letters {
                for b in letters {
                    let mut s: Vec<char> = vec!['I'; 9];
                    s[i] = a;
                    s[j] = b;
                    let p: PauliOperator = s.iter().collect::<String>().parse().unwrap();
                    if p.is_identity_pattern() {
                        continue;
                    }
                    // Undetectable operators inside the erased pair must be stabilizers.
                    if code.group().centralizes(&p).unwrap() {
                        assert!(code.group().basis().contains_pattern(&p).unwrap(), "{p}");
                    }
                }
            }
        }
    }
}

#[test]
fn random_code_distances_respect_singleton() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..60 {
        let l = rng.gen_range(2..=7);
        let k = rng.gen_range(1..l);
        let Some(code) = random_code(&mut rng, l, k) else {
            continue;
        };
        let d = qnc_core::codes::distance(&code, l)
            .unwrap()
            .exact()
            .unwrap();
        assert!(d <= singleton_max_distance(l, k).unwrap());
        checked += 1;
    }
    assert!(checked > 40);
}

#[test]
fn composition_counts_logical_qubits() {
    let composed = triangle(BellConvention::GraphEdge);
    assert_eq!(composed.contraction.residual.len(), 9 - 3);
    let plus = triangle(BellConvention::PlusPair);
    assert_eq!(plus.code.k(), 3);
}
