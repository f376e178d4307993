//! Stabilizer-level tools for quantum networks whose relays apply local
//! quantum coding: Pauli algebra over GF(2), graph states, Bell-pair
//! contraction, min-cut feasibility, code composition and comparison metrics.

pub mod bits;
pub mod codes;
pub mod contraction;
pub mod graphstate;
pub mod metrics;
pub mod network;
#[cfg(any(test, feature = "testing"))]
pub mod oracle;
pub mod pauli;

pub use codes::{
    compose, distance, five_qubit_code, singleton_max_distance, storage_bound, StabilizerCode,
};
pub use contraction::{
    contract, BellConvention, ContractionInstance, ContractionResult, ContractionStatus,
};
pub use graphstate::{augment, Bipartition, GraphState};
pub use network::{feasibility, min_cut, to_contraction, FeasibilityVerdict, NetworkTopology};
pub use pauli::{PauliOperator, StabilizerGroup};
