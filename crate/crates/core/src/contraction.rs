//! Bell-pair contraction of stabilizer states.
//!
//! Node states are kets on disjoint sets of global qubit indices. Each pairing
//! projects two node qubits onto a Bell bra. What survives on the unpaired
//! (boundary) qubits is again described by a stabilizer group: the boundary
//! restrictions of those products `s·t` (with `s` from the node groups and `t`
//! from the Bell groups) that act as the identity on every paired qubit.
//!
//! The engine finds those products as the left kernel of the generator rows
//! restricted to the paired columns, then materializes every kernel vector as
//! an explicit operator product so that signs are exact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{left_kernel, BitVec};
use crate::pauli::{reduce_generators, PauliError, PauliOperator, StabilizerGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} belongs to more than one node state")]
    SharedQubit(usize),
    #[error("qubit {0} is not held by any node state")]
    UncoveredQubit(usize),
    #[error("qubit {0} appears in more than one pairing")]
    RepeatedPairQubit(usize),
    #[error("pairing ({0}, {0}) contracts a qubit with itself")]
    SelfPair(usize),
    #[error("node {node} lists {listed} qubits but its state acts on {arity}")]
    NodeArity {
        node: usize,
        listed: usize,
        arity: usize,
    },
    #[error("instance file must give either `qubit_offsets` or `qubits`, not both")]
    AmbiguousLayout,
    #[error("node state {0} is empty; its qubit count is unknown")]
    EmptyNodeState(usize),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

pub type Result<T, E = ContractionError> = std::result::Result<T, E>;

/// Which two-qubit state the pairings project onto.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BellConvention {
    /// `(|00⟩ + |11⟩)/√2`, stabilized by `XX` and `ZZ`.
    #[default]
    PlusPair,
    /// The two-vertex graph state `CZ|++⟩`, stabilized by `XZ` and `ZX`.
    GraphEdge,
}

impl BellConvention {
    pub fn generators(self) -> [PauliOperator; 2] {
        let (a, b) = match self {
            BellConvention::PlusPair => ("XX", "ZZ"),
            BellConvention::GraphEdge => ("XZ", "ZX"),
        };
        [a.parse().expect("literal"), b.parse().expect("literal")]
    }

    pub fn group(self) -> StabilizerGroup {
        StabilizerGroup::new(2, self.generators().to_vec()).expect("Bell generators are valid")
    }

    /// The four group elements `II, g1, g2, g1·g2`.
    pub fn elements(self) -> [PauliOperator; 4] {
        let [g1, g2] = self.generators();
        let g12 = g1.multiply(&g2).expect("same length");
        [PauliOperator::identity(2), g1, g2, g12]
    }

    /// Single-qubit state that, paired with a qubit through this Bell bra,
    /// projects that qubit onto `|+⟩`.
    pub fn plus_projector_partner(self) -> StabilizerGroup {
        let s = match self {
            BellConvention::PlusPair => "X",
            BellConvention::GraphEdge => "Z",
        };
        StabilizerGroup::from_strings(&[s]).expect("literal")
    }
}

/// A stabilizer state or code living on the listed global qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeState {
    pub qubits: Vec<usize>,
    pub group: StabilizerGroup,
}

impl NodeState {
    pub fn new(qubits: Vec<usize>, group: StabilizerGroup) -> Self {
        Self { qubits, group }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionInstance {
    num_qubits: usize,
    nodes: Vec<NodeState>,
    pairings: Vec<(usize, usize)>,
    convention: BellConvention,
    boundary: Vec<usize>,
}

impl ContractionInstance {
    /// Every qubit in `0..num_qubits` must belong to exactly one node state;
    /// pairings must be disjoint.
    pub fn new(
        nodes: Vec<NodeState>,
        pairings: Vec<(usize, usize)>,
        convention: BellConvention,
    ) -> Result<Self> {
        let num_qubits = nodes
            .iter()
            .flat_map(|s| s.qubits.iter().map(|q| q + 1))
            .max()
            .unwrap_or(0);
        let mut owner = vec![false; num_qubits];
        for (i, node) in nodes.iter().enumerate() {
            if node.qubits.len() != node.group.num_qubits() {
                return Err(ContractionError::NodeArity {
                    node: i,
                    listed: node.qubits.len(),
                    arity: node.group.num_qubits(),
                });
            }
            for &q in &node.qubits {
                if owner[q] {
                    return Err(ContractionError::SharedQubit(q));
                }
                owner[q] = true;
            }
        }
        if let Some(q) = owner.iter().position(|&o| !o) {
            return Err(ContractionError::UncoveredQubit(q));
        }
        let mut paired = vec![false; num_qubits];
        for &(p, q) in &pairings {
            if p == q {
                return Err(ContractionError::SelfPair(p));
            }
            for r in [p, q] {
                if r >= num_qubits {
                    return Err(ContractionError::QubitOutOfRange {
                        qubit: r,
                        n: num_qubits,
                    });
                }
                if paired[r] {
                    return Err(ContractionError::RepeatedPairQubit(r));
                }
                paired[r] = true;
            }
        }
        let boundary = (0..num_qubits).filter(|&q| !paired[q]).collect();
        Ok(Self {
            num_qubits,
            nodes,
            pairings,
            convention,
            boundary,
        })
    }

    /// Node states laid out back to back starting at qubit 0.
    pub fn consecutive(
        groups: Vec<StabilizerGroup>,
        pairings: Vec<(usize, usize)>,
        convention: BellConvention,
    ) -> Result<Self> {
        let mut offset = 0;
        let nodes = groups
            .into_iter()
            .map(|g| {
                let qubits = (offset..offset + g.num_qubits()).collect();
                offset += g.num_qubits();
                NodeState::new(qubits, g)
            })
            .collect();
        Self::new(nodes, pairings, convention)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn nodes(&self) -> &[NodeState] {
        &self.nodes
    }

    pub fn pairings(&self) -> &[(usize, usize)] {
        &self.pairings
    }

    pub fn convention(&self) -> BellConvention {
        self.convention
    }

    /// Unpaired qubits in ascending order; residual qubit `j` is `boundary[j]`.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn contracted_qubits(&self) -> Vec<usize> {
        let mut qs: Vec<usize> = self.pairings.iter().flat_map(|&(p, q)| [p, q]).collect();
        qs.sort_unstable();
        qs
    }

    pub fn with_convention(&self, convention: BellConvention) -> Self {
        Self {
            convention,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ContractionStatus {
    /// Full-rank residual group: a unique boundary state.
    Pure,
    /// Residual group smaller than the boundary: a code space, or a mixed
    /// state when the inputs were codes.
    Mixed,
    /// The projection is the zero vector.
    Annihilated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionResult {
    pub status: ContractionStatus,
    /// Global indices of the residual's qubits.
    pub boundary: Vec<usize>,
    /// Trivial when annihilated.
    pub residual: StabilizerGroup,
    /// `log2` of the probability that all Bell projections succeed when each
    /// node holds the normalized (maximally mixed, for codes) stabilizer state.
    /// Absent when annihilated.
    pub log_norm_exponent: Option<i64>,
}

impl ContractionResult {
    pub fn is_pure_stabilizer_state(&self) -> PurityCertificate {
        PurityCertificate {
            pure: self.status == ContractionStatus::Pure,
            generators: self.residual.len(),
            boundary: self.boundary.len(),
        }
    }
}

/// Evidence for [`ContractionResult::is_pure_stabilizer_state`]: the state is
/// pure iff the residual has one generator per boundary qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PurityCertificate {
    pub pure: bool,
    pub generators: usize,
    pub boundary: usize,
}

/// Computes the boundary stabilizer group of `inst`.
pub fn contract(inst: &ContractionInstance) -> Result<ContractionResult> {
    let n = inst.num_qubits;
    let contracted = inst.contracted_qubits();
    let boundary = inst.boundary.clone();

    let mut ops: Vec<PauliOperator> = Vec::new();
    for node in &inst.nodes {
        for g in node.group.generators() {
            ops.push(g.embed(n, &node.qubits));
        }
    }
    for &(p, q) in &inst.pairings {
        for g in inst.convention.generators() {
            ops.push(g.embed(n, &[p, q]));
        }
    }

    let rows: Vec<BitVec> = ops
        .iter()
        .map(|op| {
            op.x_bits()
                .select(&contracted)
                .concat(&op.z_bits().select(&contracted))
        })
        .collect();
    let kernel = left_kernel(&rows, 2 * contracted.len());

    let residuals: Vec<PauliOperator> = kernel
        .iter()
        .map(|combo| {
            // Node generators precede Bell generators in `ops`, so this is s·t.
            let product = combo
                .iter_ones()
                .fold(PauliOperator::identity(n), |acc, i| {
                    acc.multiply(&ops[i]).expect("uniform length")
                });
            debug_assert!(product.is_hermitian());
            product.restrict(&boundary)
        })
        .collect();

    let result = match reduce_generators(boundary.len(), &residuals) {
        Ok(residual) => {
            let identity_products = kernel.len() - residual.len();
            let status = if residual.is_full_rank() {
                ContractionStatus::Pure
            } else {
                ContractionStatus::Mixed
            };
            ContractionResult {
                status,
                boundary,
                residual,
                log_norm_exponent: Some(identity_products as i64 - 2 * inst.pairings.len() as i64),
            }
        }
        Err(PauliError::NegativeIdentity { .. }) => ContractionResult {
            status: ContractionStatus::Annihilated,
            residual: StabilizerGroup::trivial(boundary.len()),
            boundary,
            log_norm_exponent: None,
        },
        Err(e) => return Err(e.into()),
    };
    Ok(result)
}

/// Contracts a single group element: if `s` restricted to every pair equals
/// (up to sign) an element `t` of the Bell group, returns the boundary part of
/// `s·t` with its accumulated sign; otherwise `None`.
pub fn contract_single_element(
    s: &PauliOperator,
    pairs: &[(usize, usize)],
    convention: BellConvention,
) -> Option<PauliOperator> {
    let n = s.num_qubits();
    let elements = convention.elements();
    let mut acc = s.clone();
    let mut paired = vec![false; n];
    for &(p, q) in pairs {
        let local = s.restrict(&[p, q]);
        let t = elements.iter().find(|t| t.same_pattern(&local))?;
        acc = acc.multiply(&t.embed(n, &[p, q])).ok()?;
        paired[p] = true;
        paired[q] = true;
    }
    let boundary: Vec<usize> = (0..n).filter(|&q| !paired[q]).collect();
    Some(acc.restrict(&boundary))
}

/// On-disk contraction instance.
///
/// Node qubits come either from `qubit_offsets` (node `i` occupies
/// `offset_i .. offset_i + arity_i`) or from explicit `qubits` lists. With
/// neither, nodes are laid out consecutively.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub node_states: Vec<Vec<PauliOperator>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubit_offsets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub pairings: Vec<[usize; 2]>,
    #[serde(default)]
    pub convention: BellConvention,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<ContractionInstance> {
        let mut groups = Vec::with_capacity(self.node_states.len());
        for (i, ops) in self.node_states.into_iter().enumerate() {
            let Some(first) = ops.first() else {
                return Err(ContractionError::EmptyNodeState(i));
            };
            let arity = first.num_qubits();
            groups.push(StabilizerGroup::new(arity, ops)?);
        }
        let pairings = self.pairings.into_iter().map(|[p, q]| (p, q)).collect();
        let layouts: Vec<Vec<usize>> = match (self.qubit_offsets, self.qubits) {
            (Some(_), Some(_)) => return Err(ContractionError::AmbiguousLayout),
            (Some(offsets), None) => {
                if offsets.len() != groups.len() {
                    return Err(ContractionError::NodeArity {
                        node: offsets.len().min(groups.len()),
                        listed: offsets.len(),
                        arity: groups.len(),
                    });
                }
                offsets
                    .iter()
                    .zip(&groups)
                    .map(|(&o, g)| (o..o + g.num_qubits()).collect())
                    .collect()
            }
            (None, Some(qubits)) => qubits,
            (None, None) => {
                return ContractionInstance::consecutive(groups, pairings, self.convention)
            }
        };
        if layouts.len() != groups.len() {
            return Err(ContractionError::NodeArity {
                node: layouts.len().min(groups.len()),
                listed: layouts.len(),
                arity: groups.len(),
            });
        }
        let nodes = layouts
            .into_iter()
            .zip(groups)
            .map(|(q, g)| NodeState::new(q, g))
            .collect();
        ContractionInstance::new(nodes, pairings, self.convention)
    }

    pub fn from_instance(inst: &ContractionInstance) -> Self {
        InstanceFile {
            node_states: inst
                .nodes
                .iter()
                .map(|n| n.group.generators().to_vec())
                .collect(),
            qubit_offsets: None,
            qubits: Some(inst.nodes.iter().map(|n| n.qubits.clone()).collect()),
            pairings: inst.pairings.iter().map(|&(p, q)| [p, q]).collect(),
            convention: inst.convention,
            description: None,
        }
    }
}

/// On-disk contraction result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultFile {
    pub status: ContractionStatus,
    pub boundary: Vec<usize>,
    pub residual: Vec<PauliOperator>,
    pub log_norm_exponent: Option<i64>,
}

impl From<&ContractionResult> for ResultFile {
    fn from(r: &ContractionResult) -> Self {
        ResultFile {
            status: r.status,
            boundary: r.boundary.clone(),
            residual: r.residual.generators().to_vec(),
            log_norm_exponent: r.log_norm_exponent,
        }
    }
}
