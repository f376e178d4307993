//! Graph states: adjacency, stabilizer generators, bipartition ranks.
//!
//! A GHZ state is handled as the star graph, which is local-Clifford
//! equivalent to it. Ranks and feasibility verdicts are LC-invariant, so the
//! substitution is exact for everything in this crate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{gf2_rank, BitVec};
use crate::pauli::{Letter, PauliOperator, StabilizerGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("bipartition side {0} is empty")]
    EmptySide(char),
    #[error("bipartition is over {got} vertices, graph has {expected}")]
    PartitionSize { expected: usize, got: usize },
    #[error("vertex {0} listed twice in bipartition")]
    DuplicateVertex(usize),
    #[error("upper-triangle string has length {got}, expected {expected} for n = {n}")]
    TriangleLength {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid character {ch:?} at position {pos} of upper-triangle string")]
    TriangleChar { pos: usize, ch: char },
    #[error("graph file needs exactly one of `edges` or `upper_triangle`")]
    AmbiguousEncoding,
    #[error("{labels} labels given for {n} vertices")]
    LabelCount { n: usize, labels: usize },
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct GraphState {
    adjacency: Vec<BitVec>,
    labels: Option<Vec<String>>,
}

impl GraphState {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![BitVec::zeros(n); n],
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Cycle `0-1-…-(n-1)-0`.
    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).filter(|(a, b)| a != b);
        Self::from_edges(n, edges).expect("cycle edges are in range")
    }

    /// Star with centre 0; the graph form of an n-party GHZ state.
    pub fn star(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (0, i))).expect("star edges are in range")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are in range")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Self::from_edges(n, edges).expect("complete edges are in range")
    }

    /// Graph whose upper-triangle pairs `(0,1), (0,2), …, (0,n-1), (1,2), …`
    /// are switched on by the bits of `mask`, lowest bit first.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(a, b).expect("in range");
                }
                bit += 1;
            }
        }
        g
    }

    /// Parses the compact upper-triangle encoding: `n(n-1)/2` characters of
    /// `0`/`1` in the order `(0,1), (0,2), …, (0,n-1), (1,2), …`.
    pub fn from_upper_triangle(n: usize, bits: &str) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        let chars: Vec<char> = bits.chars().collect();
        if chars.len() != expected {
            return Err(GraphError::TriangleLength {
                n,
                expected,
                got: chars.len(),
            });
        }
        let mut g = Self::empty(n);
        let mut pos = 0;
        for a in 0..n {
            for b in a + 1..n {
                match chars[pos] {
                    '1' => g.add_edge(a, b)?,
                    '0' => {}
                    ch => return Err(GraphError::TriangleChar { pos, ch }),
                }
                pos += 1;
            }
        }
        Ok(g)
    }

    pub fn to_upper_triangle(&self) -> String {
        let n = self.num_vertices();
        let mut s = String::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                s.push(if self.has_edge(a, b) { '1' } else { '0' });
            }
        }
        s
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.num_vertices() {
            return Err(GraphError::LabelCount {
                n: self.num_vertices(),
                labels: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.num_vertices() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.num_vertices(),
            });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adjacency[u].set(v, true);
        self.adjacency[v].set(u, true);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].get(v)
    }

    /// Row `a` of the adjacency matrix, i.e. the neighbourhood `N_a`.
    pub fn neighborhood(&self, a: usize) -> &BitVec {
        &self.adjacency[a]
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[a].iter_ones()
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adjacency[a].count_ones()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_vertices())
            .flat_map(|a| {
                self.neighbors(a)
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(BitVec::count_ones).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = BitVec::zeros(n);
        let mut stack = vec![0];
        seen.set(0, true);
        while let Some(a) = stack.pop() {
            for b in self.neighbors(a) {
                if !seen.get(b) {
                    seen.set(b, true);
                    stack.push(b);
                }
            }
        }
        seen.count_ones() == n
    }

    /// `K_a = X_a Z_{N_a}` for every vertex, all with sign +.
    pub fn stabilizer_generators(&self) -> StabilizerGroup {
        let n = self.num_vertices();
        let gens = (0..n)
            .map(|a| {
                let mut k = PauliOperator::single(n, a, Letter::X);
                for b in self.neighbors(a) {
                    k.set_letter(b, Letter::Z);
                }
                k
            })
            .collect();
        StabilizerGroup::new(n, gens).expect("graph-state generators are independent and commute")
    }

    /// Off-diagonal adjacency block `Γ_AB`: rows indexed by `A`, columns by `B`.
    pub fn cut_matrix(&self, part: &Bipartition) -> Vec<BitVec> {
        part.a
            .iter()
            .map(|&a| self.adjacency[a].select(&part.b))
            .collect()
    }

    /// `rank_F2(Γ_AB)`, which equals `log2 rank(ρ_A)` for the graph state.
    pub fn entanglement_rank(&self, part: &Bipartition) -> Result<usize> {
        if part.n != self.num_vertices() {
            return Err(GraphError::PartitionSize {
                expected: self.num_vertices(),
                got: part.n,
            });
        }
        Ok(gf2_rank(&self.cut_matrix(part)))
    }

    /// Ranks for every bipartition produced by [`Bipartition::enumerate`].
    pub fn rank_profile(&self) -> Vec<(Bipartition, usize)> {
        Bipartition::enumerate(self.num_vertices())
            .map(|p| {
                let r = gf2_rank(&self.cut_matrix(&p));
                (p, r)
            })
            .collect()
    }
}

/// A split of `0..n` into two nonempty sides.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Bipartition {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Bipartition {
    /// `a` is one side; the other side is its complement in `0..n`.
    pub fn new(n: usize, a: &[usize]) -> Result<Self> {
        let mut in_a = vec![false; n];
        for &v in a {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if in_a[v] {
                return Err(GraphError::DuplicateVertex(v));
            }
            in_a[v] = true;
        }
        let mut a_sorted: Vec<usize> = a.to_vec();
        a_sorted.sort_unstable();
        let b: Vec<usize> = (0..n).filter(|&v| !in_a[v]).collect();
        if a_sorted.is_empty() {
            return Err(GraphError::EmptySide('A'));
        }
        if b.is_empty() {
            return Err(GraphError::EmptySide('B'));
        }
        Ok(Self { n, a: a_sorted, b })
    }

    /// Side `A` from the bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        Self::new(n, &a)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn side_a(&self) -> &[usize] {
        &self.a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.b
    }

    pub fn swapped(&self) -> Self {
        Self {
            n: self.n,
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// All `2^(n-1) - 1` unordered bipartitions, each listed once with
    /// vertex 0 on side `A`.
    pub fn enumerate(n: usize) -> impl Iterator<Item = Bipartition> {
        assert!(n < 64, "bipartition enumeration is limited to 63 vertices");
        let count: u64 = if n < 2 { 0 } else { (1u64 << (n - 1)) - 1 };
        (0..count).map(move |rest| {
            let mask = 1 | (rest << 1);
            Self::from_mask(n, mask).expect("mask leaves both sides nonempty")
        })
    }
}

/// Appends a fresh qubit `ā` (index `n`) holding a computational-basis copy
/// of qubit `a`: every generator with an X component on `a` gains `X` on `ā`,
/// and `Z_a Z_ā` is added.
///
/// Applied to a graph state this yields
/// `|0⟩_ā|0⟩_a|G/a⟩ + |1⟩_ā|1⟩_a Z_{N_a}|G/a⟩`.
pub fn augment(group: &StabilizerGroup, a: usize) -> Result<StabilizerGroup> {
    let n = group.num_qubits();
    if a >= n {
        return Err(GraphError::VertexOutOfRange { vertex: a, n });
    }
    let positions: Vec<usize> = (0..n).collect();
    let mut gens: Vec<PauliOperator> = group
        .generators()
        .iter()
        .map(|g| {
            let mut out = g.embed(n + 1, &positions);
            if g.x_bits().get(a) {
                out.set_letter(n, Letter::X);
            }
            out
        })
        .collect();
    let mut zz = PauliOperator::single(n + 1, a, Letter::Z);
    zz.set_letter(n, Letter::Z);
    gens.push(zz);
    Ok(StabilizerGroup::new(n + 1, gens)
        .expect("basis copy preserves independence and commutation"))
}

/// Stabilizers of `(|0…0⟩ + |1…1⟩)/√2`: `X^{⊗n}` and `Z_i Z_{i+1}`.
///
/// This is the state a relay running the repetition isometry
/// `I^{⊗n} ⊗ |0⟩⟨0| + X^{⊗n} ⊗ |1⟩⟨1|` prepares; for `n = 1` it is `|+⟩`.
pub fn ghz_stabilizers(n: usize) -> StabilizerGroup {
    assert!(n >= 1, "GHZ state needs at least one qubit");
    let mut gens = vec![PauliOperator::from_letters(&vec![Letter::X; n], 0)];
    for i in 0..n - 1 {
        let mut zz = PauliOperator::single(n, i, Letter::Z);
        zz.set_letter(i + 1, Letter::Z);
        gens.push(zz);
    }
    StabilizerGroup::new(n, gens).expect("GHZ generators are valid")
}

/// On-disk graph description. Exactly one of `edges` and `upper_triangle`
/// is present.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_triangle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TryFrom<GraphFile> for GraphState {
    type Error = GraphError;

    fn try_from(file: GraphFile) -> Result<Self> {
        let g = match (file.edges, file.upper_triangle) {
            (Some(edges), None) => {
                Self::from_edges(file.n, edges.into_iter().map(|[u, v]| (u, v)))?
            }
            (None, Some(bits)) => Self::from_upper_triangle(file.n, &bits)?,
            _ => return Err(GraphError::AmbiguousEncoding),
        };
        match file.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

impl From<GraphState> for GraphFile {
    fn from(g: GraphState) -> Self {
        GraphFile {
            n: g.num_vertices(),
            edges: Some(g.edges().into_iter().map(|(u, v)| [u, v]).collect()),
            upper_triangle: None,
            labels: g.labels,
        }
    }
}
