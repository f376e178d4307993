//! Stabilizer codes: the five-qubit code, composition by Bell contraction,
//! brute-force distance and the singleton-style bounds.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contraction::{
    contract, BellConvention, ContractionError, ContractionInstance, ContractionResult,
    ContractionStatus,
};
use crate::pauli::{PauliError, PauliOperator, StabilizerGroup};

/// Default cap on the number of candidate operators a distance search may
/// visit. Override with the `QNC_DISTANCE_BUDGET` environment variable.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 100_000_000;

/// Distance search packs operators into machine words.
pub const MAX_DISTANCE_QUBITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code declares k = {declared} but {n} qubits with {generators} generators give k = {derived}")]
    LogicalMismatch {
        declared: usize,
        derived: usize,
        n: usize,
        generators: usize,
    },
    #[error("code declares n = {declared} but its generators act on {actual} qubits")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("composition annihilated the code space")]
    Annihilated,
    #[error("code encodes no logical qubits; distance is undefined")]
    NoLogicalQubits,
    #[error("weight cap must be at least 1")]
    ZeroWeightCap,
    #[error("searching up to weight {cap} on {n} qubits visits ~{candidates} operators, over the budget of {budget}")]
    OverBudget {
        n: usize,
        cap: usize,
        candidates: u128,
        budget: u128,
    },
    #[error("distance search supports at most {MAX_DISTANCE_QUBITS} qubits, got {0}")]
    TooManyQubits(usize),
    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: usize, k: usize },
    #[error("bound arguments must be positive")]
    NonPositive,
    #[error("k·m = {km} exceeds the boundary size {boundary}")]
    BoundaryTooSmall { km: usize, boundary: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
}

pub type Result<T, E = CodeError> = std::result::Result<T, E>;

/// An `[[n, k, d]]` stabilizer code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeFile", into = "CodeFile")]
pub struct StabilizerCode {
    group: StabilizerGroup,
    distance: Option<usize>,
}

impl StabilizerCode {
    pub fn new(group: StabilizerGroup) -> Self {
        Self {
            group,
            distance: None,
        }
    }

    pub fn from_strings<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        Ok(Self::new(StabilizerGroup::from_strings(generators)?))
    }

    pub fn n(&self) -> usize {
        self.group.num_qubits()
    }

    pub fn k(&self) -> usize {
        self.group.logical_qubits()
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn generators(&self) -> &[PauliOperator] {
        self.group.generators()
    }

    /// The distance, if it has been computed.
    pub fn known_distance(&self) -> Option<usize> {
        self.distance
    }

    /// Computes and caches the distance when it is at most `weight_cap`.
    pub fn with_distance(mut self, weight_cap: usize) -> Result<Self> {
        if let Distance::Exact(d) = distance(&self, weight_cap)? {
            self.distance = Some(d);
        }
        Ok(self)
    }

    /// True when some generator anticommutes with `error`.
    pub fn detects(&self, error: &PauliOperator) -> Result<bool> {
        for g in self.generators() {
            if !g.commutes_with(error)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// An undetectable operator that is not a stabilizer up to sign.
    pub fn is_logical(&self, p: &PauliOperator) -> Result<bool> {
        Ok(self.group.centralizes(p)? && !self.group.basis().contains_pattern(p)?)
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.distance {
            Some(d) => write!(f, "[[{},{},{}]]", self.n(), self.k(), d),
            None => write!(f, "[[{},{},?]]", self.n(), self.k()),
        }
    }
}

/// `XZZXI` and its cyclic shifts (four of them are independent).
pub fn five_qubit_code() -> StabilizerCode {
    StabilizerCode {
        group: StabilizerGroup::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])
            .expect("literal generators"),
        distance: Some(3),
    }
}

/// A composed code together with the contraction that produced it.
#[derive(Clone, Debug)]
pub struct Composition {
    pub code: StabilizerCode,
    pub contraction: ContractionResult,
}

/// Lays the codes out back to back, contracts the paired qubits and returns
/// the code left on the unpaired qubits.
pub fn compose(
    codes: &[StabilizerCode],
    pairings: &[(usize, usize)],
    convention: BellConvention,
) -> Result<Composition> {
    let inst = ContractionInstance::consecutive(
        codes.iter().map(|c| c.group.clone()).collect(),
        pairings.to_vec(),
        convention,
    )?;
    compose_instance(&inst)
}

/// [`compose`] for an instance already laid out.
pub fn compose_instance(inst: &ContractionInstance) -> Result<Composition> {
    let result = contract(inst)?;
    if result.status == ContractionStatus::Annihilated {
        return Err(CodeError::Annihilated);
    }
    Ok(Composition {
        code: StabilizerCode::new(result.residual.clone()),
        contraction: result,
    })
}

/// Outcome of a bounded distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Exact(usize),
    /// No logical operator of weight `≤ cap` exists.
    AboveCap(usize),
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::AboveCap(_) => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AboveCap(cap) => write!(f, ">{cap}"),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of non-identity Pauli operators of weight `1..=cap` on `n` qubits.
pub fn candidate_count(n: usize, cap: usize) -> u128 {
    (1..=cap.min(n))
        .map(|w| binomial(n, w).saturating_mul(3u128.saturating_pow(w as u32)))
        .fold(0u128, u128::saturating_add)
}

fn budget_from_env() -> u128 {
    std::env::var("QNC_DISTANCE_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DISTANCE_BUDGET)
}

/// Minimum weight of an operator that commutes with every generator but whose
/// letter pattern is not in the stabilizer group. An operator equal to `-s`
/// for a stabilizer `s` acts trivially on the code space and is not counted.
pub fn distance(code: &StabilizerCode, weight_cap: usize) -> Result<Distance> {
    distance_with_budget(code, weight_cap, budget_from_env())
}

pub fn distance_with_budget(
    code: &StabilizerCode,
    weight_cap: usize,
    budget: u128,
) -> Result<Distance> {
    let n = code.n();
    if weight_cap == 0 {
        return Err(CodeError::ZeroWeightCap);
    }
    if code.k() == 0 {
        return Err(CodeError::NoLogicalQubits);
    }
    if n > MAX_DISTANCE_QUBITS {
        return Err(CodeError::TooManyQubits(n));
    }
    let cap = weight_cap.min(n);
    let candidates = candidate_count(n, cap);
    if candidates > budget {
        return Err(CodeError::OverBudget {
            n,
            cap,
            candidates,
            budget,
        });
    }
    let search = PackedSearch::new(code);
    for w in 1..=cap {
        let found = (0..n)
            .into_par_iter()
            .any(|lead| search.any_logical_with_lead(lead, w));
        if found {
            return Ok(Distance::Exact(w));
        }
    }
    Ok(Distance::AboveCap(cap))
}

/// Generators and stabilizer row space packed into words.
struct PackedSearch {
    n: usize,
    gens: Vec<(u64, u64)>,
    /// Echelon basis of `x | z << 64`, each row paired with its pivot bit.
    basis: Vec<(u128, u128)>,
}

impl PackedSearch {
    fn new(code: &StabilizerCode) -> Self {
        let pack = |b: &crate::bits::BitVec| b.iter_ones().fold(0u64, |acc, i| acc | 1 << i);
        let gens: Vec<(u64, u64)> = code
            .generators()
            .iter()
            .map(|g| (pack(g.x_bits()), pack(g.z_bits())))
            .collect();
        let mut basis: Vec<(u128, u128)> = Vec::new();
        for &(x, z) in &gens {
            let mut row = x as u128 | (z as u128) << 64;
            for &(b, pivot) in &basis {
                if row & pivot != 0 {
                    row ^= b;
                }
            }
            if row != 0 {
                let pivot = row & row.wrapping_neg();
                for entry in basis.iter_mut() {
                    if entry.0 & pivot != 0 {
                        entry.0 ^= row;
                    }
                }
                basis.push((row, pivot));
            }
        }
        Self {
            n: code.n(),
            gens,
            basis,
        }
    }

    fn in_span(&self, x: u64, z: u64) -> bool {
        let mut row = x as u128 | (z as u128) << 64;
        for &(b, pivot) in &self.basis {
            if row & pivot != 0 {
                row ^= b;
            }
        }
        row == 0
    }

    fn is_logical(&self, x: u64, z: u64) -> bool {
        self.gens
            .iter()
            .all(|&(gx, gz)| ((x & gz).count_ones() + (z & gx).count_ones()) % 2 == 0)
            && !self.in_span(x, z)
    }

    /// Operators of weight `w` whose lowest support qubit is `lead`.
    fn any_logical_with_lead(&self, lead: usize, w: usize) -> bool {
        if lead + w > self.n {
            return false;
        }
        let mut support = Vec::with_capacity(w);
        support.push(lead);
        self.extend_support(&mut support, w)
    }

    fn extend_support(&self, support: &mut Vec<usize>, w: usize) -> bool {
        if support.len() == w {
            return self.any_letters(support);
        }
        let start = support.last().expect("nonempty") + 1;
        let remaining = w - support.len();
        for q in start..=self.n - remaining {
            support.push(q);
            if self.extend_support(support, w) {
                return true;
            }
            support.pop();
        }
        false
    }

    /// Tries all `3^w` non-identity letter assignments on `support`.
    fn any_letters(&self, support: &[usize]) -> bool {
        // Letter codes 1 = X, 2 = Z, 3 = Y.
        let mut digits = vec![1u8; support.len()];
        loop {
            let (mut x, mut z) = (0u64, 0u64);
            for (&q, &d) in support.iter().zip(&digits) {
                if d & 1 != 0 {
                    x |= 1 << q;
                }
                if d & 2 != 0 {
                    z |= 1 << q;
                }
            }
            if self.is_logical(x, z) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return false;
                }
                if digits[i] < 3 {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 1;
                i += 1;
            }
        }
    }
}

/// Largest `d` with `k ≤ n − 2(d − 1)`.
pub fn singleton_max_distance(n: usize, k: usize) -> Result<usize> {
    if k > n {
        return Err(CodeError::KExceedsN { n, k });
    }
    Ok((n - k) / 2 + 1)
}

/// Upper bound on the distance of the `[[boundary, m·k]]` code obtained by
/// contracting `m` copies of `[[l, k, d]]` codes:
/// `floor((|B| + m·l − 2m(d−1) − 2k·m) / 2) + 1`.
pub fn storage_bound(boundary: usize, m: usize, l: usize, k: usize, d: usize) -> Result<i64> {
    if [boundary, m, l, k, d].contains(&0) {
        return Err(CodeError::NonPositive);
    }
    if k * m > boundary {
        return Err(CodeError::BoundaryTooSmall {
            km: k * m,
            boundary,
        });
    }
    let (b, m, l, k, d) = (boundary as i64, m as i64, l as i64, k as i64, d as i64);
    Ok((b + m * l - 2 * m * (d - 1) - 2 * k * m).div_euclid(2) + 1)
}

/// On-disk code: `{"n": 5, "generators": ["XZZXI", …], "k": 1}`. `k` and
/// `distance` are optional; a given `k` must match `n − |generators|`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFile {
    pub n: usize,
    pub generators: Vec<PauliOperator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl TryFrom<CodeFile> for StabilizerCode {
    type Error = CodeError;

    fn try_from(file: CodeFile) -> Result<Self> {
        if let Some(g) = file.generators.first() {
            if g.num_qubits() != file.n {
                return Err(CodeError::LengthMismatch {
                    declared: file.n,
                    actual: g.num_qubits(),
                });
            }
        }
        let generators = file.generators.len();
        let group = StabilizerGroup::new(file.n, file.generators)?;
        let derived = group.logical_qubits();
        if let Some(declared) = file.k {
            if declared != derived {
                return Err(CodeError::LogicalMismatch {
                    declared,
                    derived,
                    n: file.n,
                    generators,
                });
            }
        }
        Ok(StabilizerCode {
            group,
            distance: file.distance,
        })
    }
}

impl From<StabilizerCode> for CodeFile {
    fn from(code: StabilizerCode) -> Self {
        CodeFile {
            n: code.n(),
            k: Some(code.k()),
            distance: code.distance,
            generators: code.group.generators().to_vec(),
            description: None,
        }
    }
}
