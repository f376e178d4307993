//! Network topologies, client min-cuts and the single-shot feasibility test.
//!
//! Edge capacities are integer `log2` dimensions, i.e. the number of qubit
//! channels an edge carries, so min-cut values are integers.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contraction::{BellConvention, ContractionInstance, ContractionResult, NodeState};
use crate::graphstate::{ghz_stabilizers, Bipartition, GraphError, GraphState};
use crate::pauli::StabilizerGroup;

/// Exhaustive bipartition sweeps stop at this many clients unless the caller
/// raises the cap or passes explicit bipartitions.
pub const DEFAULT_MAX_CLIENTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("unknown node id {0:?}")]
    UnknownNode(String),
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("self-loop on node {0:?}")]
    SelfLoop(String),
    #[error("edge {u:?}-{v:?} must carry at least one channel")]
    ZeroChannels { u: String, v: String },
    #[error("node {0:?} is not a client")]
    NotAClient(String),
    #[error("client {0:?} listed twice")]
    RepeatedClient(String),
    #[error("cut sides must be nonempty and disjoint")]
    BadCutSides,
    #[error("{clients} clients given for a {vertices}-vertex target")]
    TargetSize { clients: usize, vertices: usize },
    #[error(
        "{clients} clients exceed the exhaustive sweep cap of {cap}; pass explicit bipartitions"
    )]
    TooManyClients { clients: usize, cap: usize },
    #[error("relay {relay:?} needs a state on at least {needed} qubits, got {got}")]
    ArityMismatch {
        relay: String,
        needed: usize,
        got: usize,
    },
    #[error("node {0:?} is a client and cannot be assigned a state")]
    AssignmentToClient(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("contraction: {0}")]
    Contraction(#[from] crate::contraction::ContractionError),
}

pub type Result<T, E = NetworkError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Relay,
    Client,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub role: Role,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// `log2` of the edge dimension.
    pub channels: u32,
}

impl Edge {
    pub fn other(&self, end: usize) -> usize {
        if end == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TopologyFile", into = "TopologyFile")]
pub struct NetworkTopology {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

impl NetworkTopology {
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if seen.insert(n.id.clone(), i).is_some() {
                return Err(NetworkError::DuplicateNode(n.id.clone()));
            }
        }
        for e in &edges {
            for end in [e.u, e.v] {
                if end >= nodes.len() {
                    return Err(NetworkError::NodeOutOfRange(end));
                }
            }
            if e.u == e.v {
                return Err(NetworkError::SelfLoop(nodes[e.u].id.clone()));
            }
            if e.channels == 0 {
                return Err(NetworkError::ZeroChannels {
                    u: nodes[e.u].id.clone(),
                    v: nodes[e.v].id.clone(),
                });
            }
        }
        Ok(Self { nodes, edges })
    }

    /// Incremental construction helper used by the named topologies.
    pub fn builder() -> TopologyBuilder {
        TopologyBuilder::default()
    }

    /// One central relay `r` with `leaves` clients `c0…`, unit edges.
    pub fn star(leaves: usize) -> Self {
        let mut b = Self::builder();
        let r = b.relay("r");
        for i in 0..leaves {
            let c = b.client(&format!("c{i}"));
            b.edge(r, c, 1);
        }
        b.build()
    }

    /// Regular tree: a central relay, relays down to depth `depth - 1`, each
    /// with `branching` children, and `branching` clients under every
    /// deepest relay. Clients sit at distance `depth` from the centre.
    pub fn regular_tree(branching: usize, depth: usize) -> Self {
        assert!(branching >= 1 && depth >= 1);
        let mut b = Self::builder();
        let root = b.relay("r");
        let mut frontier = vec![(root, String::from("r"))];
        for level in 1..=depth {
            let mut next = Vec::new();
            for (parent, name) in &frontier {
                for k in 0..branching {
                    let child_name = format!("{name}.{k}");
                    let child = if level == depth {
                        b.client(&format!("c{}", child_name.trim_start_matches("r.")))
                    } else {
                        b.relay(&child_name)
                    };
                    b.edge(*parent, child, 1);
                    next.push((child, child_name));
                }
            }
            frontier = next;
        }
        b.build()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n.id == id)
            .ok_or_else(|| NetworkError::UnknownNode(id.to_string()))
    }

    pub fn id(&self, index: usize) -> &str {
        &self.nodes[index].id
    }

    pub fn clients(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].role == Role::Client)
            .collect()
    }

    pub fn relays(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].role == Role::Relay)
            .collect()
    }

    /// Indices into [`edges`](Self::edges) touching `node`, in edge order.
    pub fn incident_edges(&self, node: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].u == node || self.edges[e].v == node)
            .collect()
    }

    /// Total channels on edges touching `node`.
    pub fn channel_degree(&self, node: usize) -> usize {
        self.incident_edges(node)
            .iter()
            .map(|&e| self.edges[e].channels as usize)
            .sum()
    }

    pub fn total_channels(&self) -> usize {
        self.edges.iter().map(|e| e.channels as usize).sum()
    }

    /// Hop distances from `source` (unweighted BFS); `None` if unreachable.
    pub fn hop_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut dist = vec![None; self.nodes.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            let d = dist[a].expect("queued nodes have a distance");
            for &b in &adj[a] {
                if dist[b].is_none() {
                    dist[b] = Some(d + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.nodes.is_empty() || self.hop_distances(0).iter().all(Option::is_some)
    }

    fn check_cut_sides(&self, a: &[usize], b: &[usize]) -> Result<()> {
        if a.is_empty() || b.is_empty() {
            return Err(NetworkError::BadCutSides);
        }
        let mut side = vec![0u8; self.nodes.len()];
        for (&v, tag) in a.iter().map(|v| (v, 1u8)).chain(b.iter().map(|v| (v, 2u8))) {
            if v >= self.nodes.len() {
                return Err(NetworkError::NodeOutOfRange(v));
            }
            if side[v] != 0 && side[v] != tag {
                return Err(NetworkError::BadCutSides);
            }
            side[v] = tag;
        }
        Ok(())
    }
}

#[derive(Default)]
pub struct TopologyBuilder {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

impl TopologyBuilder {
    pub fn relay(&mut self, id: &str) -> usize {
        self.node(id, Role::Relay)
    }

    pub fn client(&mut self, id: &str) -> usize {
        self.node(id, Role::Client)
    }

    pub fn node(&mut self, id: &str, role: Role) -> usize {
        self.nodes.push(Node {
            id: id.to_string(),
            role,
        });
        self.nodes.len() - 1
    }

    pub fn edge(&mut self, u: usize, v: usize, channels: u32) -> &mut Self {
        self.edges.push(Edge { u, v, channels });
        self
    }

    /// Panics on invalid input; use [`NetworkTopology::new`] for fallible
    /// construction.
    pub fn build(self) -> NetworkTopology {
        NetworkTopology::new(self.nodes, self.edges).expect("builder produced a valid topology")
    }

    pub fn try_build(self) -> Result<NetworkTopology> {
        NetworkTopology::new(self.nodes, self.edges)
    }
}

/// A minimum cut separating two client sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub value: u64,
    /// Nodes on the source side of one minimum cut.
    pub source_side: Vec<usize>,
}

/// Minimum, over node partitions with `a` on one side and `b` on the other,
/// of the channels crossing the partition.
pub fn min_cut(t: &NetworkTopology, a: &[usize], b: &[usize]) -> Result<u64> {
    Ok(min_cut_with_witness(t, a, b)?.value)
}

/// Max-flow (shortest augmenting paths) from a super-source joined to `a`
/// to a super-sink joined to `b`.
pub fn min_cut_with_witness(t: &NetworkTopology, a: &[usize], b: &[usize]) -> Result<MinCut> {
    t.check_cut_sides(a, b)?;
    let n = t.num_nodes();
    let source = n;
    let sink = n + 1;
    let size = n + 2;
    let unbounded = t.total_channels() as u64 + 1;
    let mut cap = vec![vec![0u64; size]; size];
    for e in &t.edges {
        cap[e.u][e.v] += e.channels as u64;
        cap[e.v][e.u] += e.channels as u64;
    }
    for &v in a {
        cap[source][v] = unbounded;
    }
    for &v in b {
        cap[v][sink] = unbounded;
    }
    let mut flow = 0u64;
    loop {
        let mut parent = vec![usize::MAX; size];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..size {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            let source_side = (0..n).filter(|&v| parent[v] != usize::MAX).collect();
            return Ok(MinCut {
                value: flow,
                source_side,
            });
        }
        let mut bottleneck = u64::MAX;
        let mut v = sink;
        while v != source {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u][v]);
            v = u;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        flow += bottleneck;
    }
}

/// One row of a feasibility table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCheck {
    /// Client ids on each side.
    pub bipartition: [Vec<String>; 2],
    pub mincut: u64,
    pub rank: usize,
    pub ok: bool,
}

/// How far the verdict goes beyond the necessary condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Achievability {
    /// One relay is adjacent to every client: it can hand out Bell pairs and
    /// any graph state follows.
    StarTopology,
    /// Every target rank is at most 1 (GHZ class); repetition isometries at
    /// the relays realize it on any topology passing the test.
    GhzClass,
    /// Every cut admits the required rank, but no construction is known.
    NecessaryConditionSatisfied,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub achievability: Achievability,
    /// First violated bipartition, present iff infeasible.
    pub witness: Option<CutCheck>,
    pub table: Vec<CutCheck>,
}

fn check_clients(t: &NetworkTopology, clients: &[usize], target: &GraphState) -> Result<()> {
    if clients.len() != target.num_vertices() {
        return Err(NetworkError::TargetSize {
            clients: clients.len(),
            vertices: target.num_vertices(),
        });
    }
    let mut seen = vec![false; t.num_nodes()];
    for &c in clients {
        if c >= t.num_nodes() {
            return Err(NetworkError::NodeOutOfRange(c));
        }
        if t.nodes[c].role != Role::Client {
            return Err(NetworkError::NotAClient(t.nodes[c].id.clone()));
        }
        if seen[c] {
            return Err(NetworkError::RepeatedClient(t.nodes[c].id.clone()));
        }
        seen[c] = true;
    }
    Ok(())
}

/// Checks `MC(A,B) ≥ rank(Γ_AB)` for every bipartition of the clients, where
/// `clients[i]` holds target vertex `i`.
pub fn feasibility(
    t: &NetworkTopology,
    clients: &[usize],
    target: &GraphState,
    max_clients: usize,
) -> Result<FeasibilityVerdict> {
    check_clients(t, clients, target)?;
    if clients.len() > max_clients {
        return Err(NetworkError::TooManyClients {
            clients: clients.len(),
            cap: max_clients,
        });
    }
    let parts: Vec<Bipartition> = Bipartition::enumerate(clients.len()).collect();
    feasibility_for(t, clients, target, &parts)
}

/// [`feasibility`] restricted to the given bipartitions of target vertices.
pub fn feasibility_for(
    t: &NetworkTopology,
    clients: &[usize],
    target: &GraphState,
    bipartitions: &[Bipartition],
) -> Result<FeasibilityVerdict> {
    check_clients(t, clients, target)?;
    let mut table = Vec::with_capacity(bipartitions.len());
    for part in bipartitions {
        let rank = target.entanglement_rank(part)?;
        let side_a: Vec<usize> = part.side_a().iter().map(|&i| clients[i]).collect();
        let side_b: Vec<usize> = part.side_b().iter().map(|&i| clients[i]).collect();
        let mincut = min_cut(t, &side_a, &side_b)?;
        table.push(CutCheck {
            bipartition: [
                side_a.iter().map(|&v| t.id(v).to_string()).collect(),
                side_b.iter().map(|&v| t.id(v).to_string()).collect(),
            ],
            mincut,
            rank,
            ok: mincut >= rank as u64,
        });
    }
    let witness = table.iter().find(|row| !row.ok).cloned();
    let feasible = witness.is_none();
    let achievability = if !feasible {
        Achievability::Infeasible
    } else if is_star_for(t, clients) {
        Achievability::StarTopology
    } else if table.iter().all(|row| row.rank <= 1) && clients_connected(t, clients) {
        Achievability::GhzClass
    } else {
        Achievability::NecessaryConditionSatisfied
    };
    Ok(FeasibilityVerdict {
        feasible,
        achievability,
        witness,
        table,
    })
}

fn is_star_for(t: &NetworkTopology, clients: &[usize]) -> bool {
    t.relays().into_iter().any(|r| {
        clients.iter().all(|&c| {
            t.edges
                .iter()
                .any(|e| (e.u == r && e.v == c) || (e.v == r && e.u == c))
        })
    })
}

fn clients_connected(t: &NetworkTopology, clients: &[usize]) -> bool {
    let Some(&first) = clients.first() else {
        return true;
    };
    let dist = t.hop_distances(first);
    clients.iter().all(|&c| dist[c].is_some())
}

/// The contraction picture of a network: relay states as node kets, one Bell
/// bra per relay–relay channel.
#[derive(Clone, Debug)]
pub struct NetworkContraction {
    pub instance: ContractionInstance,
    /// For every client node, the global qubits it ends up holding.
    pub client_qubits: BTreeMap<usize, Vec<usize>>,
}

impl NetworkContraction {
    /// Positions within the residual (boundary order) held by `client`.
    pub fn residual_positions(&self, client: usize) -> Vec<usize> {
        let boundary = self.instance.boundary();
        self.client_qubits
            .get(&client)
            .map(|qs| {
                qs.iter()
                    .map(|q| {
                        boundary
                            .binary_search(q)
                            .expect("client qubits are on the boundary")
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Entanglement rank of the residual state across every bipartition of
    /// `clients` (listed in [`Bipartition::enumerate`] order).
    pub fn client_rank_profile(&self, result: &ContractionResult, clients: &[usize]) -> Vec<usize> {
        Bipartition::enumerate(clients.len())
            .map(|part| {
                let qubits: Vec<usize> = part
                    .side_a()
                    .iter()
                    .flat_map(|&i| self.residual_positions(clients[i]))
                    .collect();
                result.residual.subsystem_entropy(&qubits)
            })
            .collect()
    }
}

/// Builds the contraction instance for relays running the assigned states.
///
/// A relay's state has one qubit per incident channel, in edge order, followed
/// by any number of control qubits that are post-selected on `|+⟩`. Channels
/// towards clients hand the relay's qubit to the client; client–client edges
/// become Bell pairs owned by the two clients.
pub fn to_contraction(
    t: &NetworkTopology,
    assignment: &BTreeMap<usize, StabilizerGroup>,
    convention: BellConvention,
) -> Result<NetworkContraction> {
    for &node in assignment.keys() {
        if node >= t.num_nodes() {
            return Err(NetworkError::NodeOutOfRange(node));
        }
        if t.nodes[node].role == Role::Client {
            return Err(NetworkError::AssignmentToClient(t.nodes[node].id.clone()));
        }
    }
    let mut nodes = Vec::new();
    let mut next_qubit = 0;
    // (edge, endpoint) -> first qubit of that endpoint's channels.
    let mut port: HashMap<(usize, usize), usize> = HashMap::new();
    let mut controls = Vec::new();
    for r in t.relays() {
        let incident = t.incident_edges(r);
        let needed = t.channel_degree(r);
        if needed == 0 && !assignment.contains_key(&r) {
            continue;
        }
        let group = assignment.get(&r);
        let got = group.map_or(0, StabilizerGroup::num_qubits);
        if got < needed || group.is_none() {
            return Err(NetworkError::ArityMismatch {
                relay: t.id(r).to_string(),
                needed: needed.max(1),
                got,
            });
        }
        let base = next_qubit;
        let mut offset = base;
        for e in incident {
            port.insert((e, r), offset);
            offset += t.edges[e].channels as usize;
        }
        controls.extend(offset..base + got);
        nodes.push(NodeState::new(
            (base..base + got).collect(),
            group.expect("checked").clone(),
        ));
        next_qubit += got;
    }

    let mut pairings = Vec::new();
    let mut client_qubits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in t.clients() {
        client_qubits.insert(c, Vec::new());
    }
    for (ei, e) in t.edges.iter().enumerate() {
        let (ru, rv) = (t.nodes[e.u].role, t.nodes[e.v].role);
        for ch in 0..e.channels as usize {
            match (ru, rv) {
                (Role::Relay, Role::Relay) => {
                    pairings.push((port[&(ei, e.u)] + ch, port[&(ei, e.v)] + ch));
                }
                (Role::Relay, Role::Client) => {
                    client_qubits
                        .get_mut(&e.v)
                        .expect("client")
                        .push(port[&(ei, e.u)] + ch);
                }
                (Role::Client, Role::Relay) => {
                    client_qubits
                        .get_mut(&e.u)
                        .expect("client")
                        .push(port[&(ei, e.v)] + ch);
                }
                (Role::Client, Role::Client) => {
                    let pair = vec![next_qubit, next_qubit + 1];
                    nodes.push(NodeState::new(pair, convention.group()));
                    client_qubits
                        .get_mut(&e.u)
                        .expect("client")
                        .push(next_qubit);
                    client_qubits
                        .get_mut(&e.v)
                        .expect("client")
                        .push(next_qubit + 1);
                    next_qubit += 2;
                }
            }
        }
    }
    for q in controls {
        nodes.push(NodeState::new(
            vec![next_qubit],
            convention.plus_projector_partner(),
        ));
        pairings.push((q, next_qubit));
        next_qubit += 1;
    }
    let instance = ContractionInstance::new(nodes, pairings, convention)?;
    Ok(NetworkContraction {
        instance,
        client_qubits,
    })
}

/// Every relay prepares a GHZ state over its channels, the output of the
/// repetition isometry `I^{⊗n} ⊗ |0⟩⟨0| + X^{⊗n} ⊗ |1⟩⟨1|`.
pub fn repetition_assignment(t: &NetworkTopology) -> BTreeMap<usize, StabilizerGroup> {
    t.relays()
        .into_iter()
        .filter(|&r| t.channel_degree(r) > 0)
        .map(|r| (r, ghz_stabilizers(t.channel_degree(r))))
        .collect()
}

/// Random connected topology with at most `max_nodes` nodes and at least two
/// clients. Relays form a random spanning tree plus a few extra links carrying
/// one or two channels; each client hangs off a random relay by one channel.
pub fn random_connected_topology<R: Rng + ?Sized>(
    rng: &mut R,
    max_nodes: usize,
) -> NetworkTopology {
    assert!(max_nodes >= 3, "need room for one relay and two clients");
    let relays = rng.gen_range(1..=max_nodes - 2);
    let clients = rng.gen_range(2..=max_nodes - relays);
    let mut b = NetworkTopology::builder();
    let relay_ids: Vec<usize> = (0..relays).map(|i| b.relay(&format!("r{i}"))).collect();
    let mut linked = std::collections::HashSet::new();
    for i in 1..relays {
        let j = rng.gen_range(0..i);
        b.edge(relay_ids[j], relay_ids[i], rng.gen_range(1..=2));
        linked.insert((j, i));
    }
    let extra = if relays > 2 {
        rng.gen_range(0..relays)
    } else {
        0
    };
    for _ in 0..extra {
        let i = rng.gen_range(0..relays);
        let j = rng.gen_range(0..relays);
        let key = (i.min(j), i.max(j));
        if i != j && linked.insert(key) {
            b.edge(relay_ids[key.0], relay_ids[key.1], rng.gen_range(1..=2));
        }
    }
    let mut order: Vec<usize> = (0..clients).collect();
    order.shuffle(rng);
    for k in order {
        let c = b.client(&format!("c{k}"));
        let r = relay_ids[rng.gen_range(0..relays)];
        b.edge(r, c, 1);
    }
    b.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum NodeIdRepr {
    Text(String),
    Number(u64),
}

impl From<NodeIdRepr> for String {
    fn from(id: NodeIdRepr) -> Self {
        match id {
            NodeIdRepr::Text(s) => s,
            NodeIdRepr::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeRecord {
    #[serde(deserialize_with = "deserialize_id")]
    pub id: String,
    pub role: Role,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeRecord {
    #[serde(deserialize_with = "deserialize_id")]
    pub u: String,
    #[serde(deserialize_with = "deserialize_id")]
    pub v: String,
    #[serde(default = "one")]
    pub channels: u32,
}

fn one() -> u32 {
    1
}

fn deserialize_id<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    NodeIdRepr::deserialize(d).map(String::from)
}

/// On-disk topology: `{"nodes": [{"id", "role"}], "edges": [{"u", "v", "channels"}]}`.
/// Ids may be strings or integers; `channels` defaults to 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TopologyFile {
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl TryFrom<TopologyFile> for NetworkTopology {
    type Error = NetworkError;

    fn try_from(file: TopologyFile) -> Result<Self> {
        let nodes: Vec<Node> = file
            .nodes
            .into_iter()
            .map(|n| Node {
                id: n.id,
                role: n.role,
            })
            .collect();
        let lookup = |id: &str| {
            nodes
                .iter()
                .position(|n| n.id == id)
                .ok_or_else(|| NetworkError::UnknownNode(id.to_string()))
        };
        let edges = file
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    u: lookup(&e.u)?,
                    v: lookup(&e.v)?,
                    channels: e.channels,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        NetworkTopology::new(nodes, edges)
    }
}

impl From<NetworkTopology> for TopologyFile {
    fn from(t: NetworkTopology) -> Self {
        TopologyFile {
            edges: t
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    u: t.nodes[e.u].id.clone(),
                    v: t.nodes[e.v].id.clone(),
                    channels: e.channels,
                })
                .collect(),
            nodes: t
                .nodes
                .into_iter()
                .map(|n| NodeRecord {
                    id: n.id,
                    role: n.role,
                })
                .collect(),
            description: None,
        }
    }
}
