//! Helpers shared by the integration suites.
#![allow(dead_code)]

use qnc_core::codes::{compose, five_qubit_code, Composition, StabilizerCode};
use qnc_core::contraction::{BellConvention, ContractionInstance};
use qnc_core::graphstate::GraphState;
use qnc_core::oracle::{DenseState, Oracle};
use qnc_core::pauli::{Letter, PauliOperator, StabilizerGroup};
use rand::seq::SliceRandom;
use rand::Rng;

/// Triangle pairing of three five-qubit codes laid out at offsets 0, 5, 10:
/// the fourth and fifth qubit of each code meet a neighbour.
pub const TRIANGLE_PAIRS: [(usize, usize); 3] = [(3, 8), (9, 14), (13, 4)];

/// The six nine-qubit generators listed for the composed triangle code.
pub const TRIANGLE_GENERATORS: [&str; 6] = [
    "XZZXIXZZX",
    "XIXXZZXZZ",
    "IXZZXIIXZ",
    "ZXIIXZZXI",
    "ZYYXZZIII",
    "YXXYXXIII",
];

/// Symplectic matrix `[X | Z]` of the six generators, as printed.
pub const TRIANGLE_H: [&str; 6] = [
    "100101001011000110",
    "101100100000011011",
    "010010010001100001",
    "010010010100001100",
    "011100000111011000",
    "111111000100100000",
];

pub fn triangle(convention: BellConvention) -> Composition {
    let five = five_qubit_code();
    compose(
        &[five.clone(), five.clone(), five],
        &TRIANGLE_PAIRS,
        convention,
    )
    .expect("triangle composes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H,
    S,
    X,
    Z,
}

pub const GATES: [Gate; 4] = [Gate::H, Gate::S, Gate::X, Gate::Z];

/// `U P U†` for a single-qubit Clifford `U` on qubit `q`.
pub fn conjugate(p: &PauliOperator, gate: Gate, q: usize) -> PauliOperator {
    use Letter::*;
    let (letter, negate) = match (gate, p.letter(q)) {
        (_, I) => (I, false),
        (Gate::H, X) => (Z, false),
        (Gate::H, Z) => (X, false),
        (Gate::H, Y) => (Y, true),
        (Gate::S, X) => (Y, false),
        (Gate::S, Y) => (X, true),
        (Gate::S, Z) => (Z, false),
        (Gate::X, X) => (X, false),
        (Gate::X, l) => (l, true),
        (Gate::Z, Z) => (Z, false),
        (Gate::Z, l) => (l, true),
    };
    let mut out = p.clone();
    out.set_letter(q, letter);
    if negate {
        out.negated()
    } else {
        out
    }
}

pub fn apply_gate(state: &mut DenseState, gate: Gate, q: usize) {
    match gate {
        Gate::H => state.apply_h(q),
        Gate::S => state.apply_s(q),
        Gate::X => {
            *state = state.apply_pauli(&PauliOperator::single(state.num_qubits(), q, Letter::X))
        }
        Gate::Z => {
            *state = state.apply_pauli(&PauliOperator::single(state.num_qubits(), q, Letter::Z))
        }
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> GraphState {
    let mut g = GraphState::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// A random graph state dressed with random single-qubit Cliffords, as a
/// stabilizer group and, independently, as a dense vector built gate by gate.
pub fn random_lc_state<R: Rng>(rng: &mut R, n: usize) -> (StabilizerGroup, DenseState) {
    let g = random_graph(rng, n, 0.5);
    let mut dense = Oracle::default().graph_state_vector(&g).unwrap();
    let mut gens: Vec<PauliOperator> = g.stabilizer_generators().generators().to_vec();
    for q in 0..n {
        for _ in 0..rng.gen_range(0..4) {
            let gate = *GATES.choose(rng).unwrap();
            apply_gate(&mut dense, gate, q);
            for s in gens.iter_mut() {
                *s = conjugate(s, gate, q);
            }
        }
    }
    (StabilizerGroup::new(n, gens).unwrap(), dense)
}

pub struct RandomInstance {
    pub instance: ContractionInstance,
    pub states: Vec<DenseState>,
}

/// Random node states laid out consecutively with random disjoint pairings;
/// at most `max_qubits` qubits in total.
pub fn random_instance<R: Rng>(rng: &mut R, max_qubits: usize) -> RandomInstance {
    let mut sizes = Vec::new();
    let mut total = 0;
    let nodes = rng.gen_range(1..=4);
    for _ in 0..nodes {
        let size = rng.gen_range(1..=4usize).min(max_qubits - total);
        if size == 0 {
            break;
        }
        sizes.push(size);
        total += size;
    }
    let (groups, states): (Vec<_>, Vec<_>) = sizes.iter().map(|&k| random_lc_state(rng, k)).unzip();
    let mut qubits: Vec<usize> = (0..total).collect();
    qubits.shuffle(rng);
    let pairs = rng.gen_range(0..=total / 2);
    let pairings = (0..pairs)
        .map(|i| (qubits[2 * i], qubits[2 * i + 1]))
        .collect();
    let convention = if rng.gen_bool(0.5) {
        BellConvention::PlusPair
    } else {
        BellConvention::GraphEdge
    };
    RandomInstance {
        instance: ContractionInstance::consecutive(groups, pairings, convention).unwrap(),
        states,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn edge_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices.
pub fn connected_graph_classes(n: usize) -> Vec<GraphState> {
    let m = n * (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|perm| {
            pairs
                .iter()
                .map(|&(a, b)| edge_index(n, perm[a], perm[b]))
                .collect()
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for mask in 0u64..1 << m {
        let g = GraphState::from_edge_mask(n, mask);
        if !g.is_connected() {
            continue;
        }
        let canonical = maps
            .iter()
            .map(|map| {
                (0..m)
                    .filter(|&e| mask >> e & 1 == 1)
                    .fold(0u64, |acc, e| acc | 1 << map[e])
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            reps.push(g);
        }
    }
    reps
}

/// Random `[[l, k]]` code from greedily chosen commuting independent
/// operators; `None` if the greedy search stalls.
pub fn random_code<R: Rng>(rng: &mut R, l: usize, k: usize) -> Option<StabilizerCode> {
    let mut chosen: Vec<PauliOperator> = Vec::new();
    for _ in 0..500 {
        if chosen.len() == l - k {
            break;
        }
        let letters: String = (0..l)
            .map(|_| *['I', 'X', 'Y', 'Z'].choose(rng).unwrap())
            .collect();
        let p: PauliOperator = letters.parse().unwrap();
        if p.is_identity_pattern() || !chosen.iter().all(|c| c.commutes_with(&p).unwrap()) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(p);
        if StabilizerGroup::new(l, trial.clone()).is_ok() {
            chosen = trial;
        }
    }
    (chosen.len() == l - k).then(|| StabilizerCode::new(StabilizerGroup::new(l, chosen).unwrap()))
}
