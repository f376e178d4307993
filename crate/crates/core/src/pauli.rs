//! Signed Pauli operators in symplectic form and stabilizer groups.
//!
//! # Phase convention
//!
//! A [`PauliOperator`] is `i^phase` times a tensor product of the Hermitian
//! letters `I, X, Y, Z`. Per qubit the letter is encoded by an `(x, z)` bit
//! pair: `I = (0,0)`, `X = (1,0)`, `Z = (0,1)` and `Y = (1,1)` where
//! `Y = i·X·Z`. So `"-YY"` has `x = 11`, `z = 11` and `phase = 2`, and every
//! Hermitian operator has an even phase. This is the only place the
//! convention is fixed; multiplication derives its phase rule from it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::{BitVec, Echelon, Insert};

pub use crate::bits::gf2_rank;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("invalid character {ch:?} at position {pos} in Pauli string")]
    Parse { pos: usize, ch: char },
    #[error("Pauli string has no qubit letters")]
    Empty,
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("generators {first} and {second} anticommute")]
    Anticommuting { first: usize, second: usize },
    #[error("generator {index} is not Hermitian (phase {phase})")]
    NonHermitian { index: usize, phase: u8 },
    #[error("the generators produce -I (generator {index} closes the contradiction)")]
    NegativeIdentity { index: usize },
    #[error("generator {index} is a product of earlier generators")]
    Dependent { index: usize },
}

pub type Result<T, E = PauliError> = std::result::Result<T, E>;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub const NON_IDENTITY: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];
}

/// An n-qubit Pauli operator with a phase in `{1, i, -1, -i}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Builds an operator from its symplectic parts. `phase` is reduced mod 4.
    pub fn from_parts(x: BitVec, z: BitVec, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self {
            x,
            z,
            phase: phase % 4,
        })
    }

    /// `letter` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(q, letter);
        p
    }

    pub fn from_letters(letters: &[Letter], phase: u8) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l);
        }
        p.phase = phase % 4;
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Exponent of `i` in front of the letter string.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase % 2 == 0
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        let (x, z) = letter.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_qubits()).map(|q| self.letter(q)).collect()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.support_bits().count_ones()
    }

    pub fn support_bits(&self) -> BitVec {
        let mut s = self.x.clone();
        for i in self.z.iter_ones() {
            s.set(i, true);
        }
        s
    }

    pub fn support(&self) -> Vec<usize> {
        self.support_bits().iter_ones().collect()
    }

    /// True when every letter is `I`, whatever the phase.
    pub fn is_identity_pattern(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn negated(&self) -> Self {
        Self {
            phase: (self.phase + 2) % 4,
            ..self.clone()
        }
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        Self {
            phase: phase % 4,
            ..self.clone()
        }
    }

    /// Whether `self` and `other` have the same letters, ignoring phase.
    pub fn same_pattern(&self, other: &Self) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Row `[x | z]` of length `2n`.
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::LengthMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// The product `self · other`.
    ///
    /// Writing each letter as `i^{xz} X^x Z^z`, the product picks up
    /// `i^{x1·z1 + x2·z2 - x3·z3} (-1)^{z1·x2}` with `x3 = x1^x2`, `z3 = z1^z2`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let up = self.x.and_count(&self.z) + other.x.and_count(&other.z);
        let swap = 2 * self.z.and_count(&other.x);
        let down = x.and_count(&z);
        let phase = (self.phase as usize + other.phase as usize + up + swap + 4 - down % 4) % 4;
        Ok(Self {
            x,
            z,
            phase: phase as u8,
        })
    }

    /// Symplectic inner product test: `x_p·z_q + z_p·x_q = 0 (mod 2)`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok((self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 0)
    }

    /// Operator on the listed qubits only, in the given order. Phase is kept.
    pub fn restrict(&self, qubits: &[usize]) -> Self {
        Self {
            x: self.x.select(qubits),
            z: self.z.select(qubits),
            phase: self.phase,
        }
    }

    /// Places `self` on qubits `positions` of an `n`-qubit register.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Self {
        assert_eq!(
            positions.len(),
            self.num_qubits(),
            "embedding arity mismatch"
        );
        let mut out = Self::identity(n);
        for (j, &q) in positions.iter().enumerate() {
            out.set_letter(q, self.letter(j));
        }
        out.phase = self.phase;
        out
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) % 4,
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    /// Accepts an optional `+`/`-`, an optional `i`, then letters `IXYZ`.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut phase = 0u8;
        match chars.first() {
            Some('+') => pos = 1,
            Some('-') => {
                phase = 2;
                pos = 1;
            }
            _ => {}
        }
        if chars.get(pos) == Some(&'i') {
            phase += 1;
            pos += 1;
        }
        let mut letters = Vec::with_capacity(chars.len() - pos);
        for (offset, &ch) in chars[pos..].iter().enumerate() {
            letters.push(match ch {
                'I' => Letter::I,
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                _ => {
                    return Err(PauliError::Parse {
                        pos: pos + offset,
                        ch,
                    })
                }
            });
        }
        if letters.is_empty() {
            return Err(PauliError::Empty);
        }
        Ok(Self::from_letters(&letters, phase))
    }
}

/// Parses a signed Pauli string such as `"XZZXI"` or `"-YY"`.
pub fn parse_pauli(text: &str) -> Result<PauliOperator> {
    text.parse()
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Free-function form of [`PauliOperator::multiply`].
pub fn multiply(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    p.multiply(q)
}

/// Free-function form of [`PauliOperator::commutes_with`].
pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    p.commutes_with(q)
}

/// Result of a membership query against a [`StabilizerGroup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// The operator is the product of the generators at these indices.
    Member(Vec<usize>),
    /// The product of these generators equals the operator up to a phase
    /// other than +1 (for Hermitian operators: the negated operator).
    PhaseMismatch(Vec<usize>),
    Absent,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    /// Member up to sign.
    pub fn pattern_found(&self) -> bool {
        !matches!(self, Membership::Absent)
    }
}

/// An abelian group of Hermitian Paulis not containing `-I`, held as an
/// independent generating list.
#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerGroup {
    /// The trivial group on `n` qubits.
    pub fn trivial(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
        }
    }

    /// Validates that `generators` already form an independent commuting set
    /// without `-I`. Dependent generators are rejected rather than dropped;
    /// see [`reduce_generators`] for the forgiving variant.
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        let reduced = Self::reduce(n, &generators)?;
        if let Some(index) = reduced.dropped.first() {
            return Err(PauliError::Dependent { index: *index });
        }
        Ok(reduced.group)
    }

    /// Parses signed strings into a group; all strings must share a length.
    pub fn from_strings<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        let ops = strings
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<PauliOperator>>>()?;
        let n = ops.first().map_or(0, PauliOperator::num_qubits);
        Self::new(n, ops)
    }

    fn reduce(n: usize, ops: &[PauliOperator]) -> Result<Reduced> {
        for (i, p) in ops.iter().enumerate() {
            if p.num_qubits() != n {
                return Err(PauliError::LengthMismatch {
                    left: n,
                    right: p.num_qubits(),
                });
            }
            if !p.is_hermitian() {
                return Err(PauliError::NonHermitian {
                    index: i,
                    phase: p.phase(),
                });
            }
        }
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if !ops[i].commutes_with(&ops[j])? {
                    return Err(PauliError::Anticommuting {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let mut ech = Echelon::new(2 * n, ops.len());
        let mut kept: Vec<usize> = Vec::new();
        let mut dropped = Vec::new();
        for (i, p) in ops.iter().enumerate() {
            match ech.insert(&p.symplectic_row()) {
                Insert::Independent => kept.push(i),
                Insert::Dependent(combo) => {
                    // combo indexes the input list; dependent inputs never
                    // appear in it because they never enter the basis.
                    let mut prod = PauliOperator::identity(n);
                    for j in combo.iter_ones() {
                        prod = prod.multiply(&ops[j])?;
                    }
                    if prod.phase() != p.phase() {
                        return Err(PauliError::NegativeIdentity { index: i });
                    }
                    dropped.push(i);
                }
            }
        }
        Ok(Reduced {
            group: Self {
                n,
                generators: kept.iter().map(|&i| ops[i].clone()).collect(),
            },
            dropped,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `n - |generators|`, the number of encoded qubits.
    pub fn logical_qubits(&self) -> usize {
        self.n - self.generators.len()
    }

    /// A full-rank group stabilizes a unique state.
    pub fn is_full_rank(&self) -> bool {
        self.generators.len() == self.n
    }

    /// Stacked `[x | z]` rows, one per generator.
    pub fn check_matrix(&self) -> Vec<BitVec> {
        self.generators
            .iter()
            .map(PauliOperator::symplectic_row)
            .collect()
    }

    /// Product of the generators at `indices`, multiplied left to right.
    pub fn product(&self, indices: &[usize]) -> PauliOperator {
        indices
            .iter()
            .fold(PauliOperator::identity(self.n), |acc, &i| {
                acc.multiply(&self.generators[i])
                    .expect("generator length checked at construction")
            })
    }

    /// Reusable elimination state for repeated membership queries.
    pub fn basis(&self) -> GroupBasis<'_> {
        let mut ech = Echelon::new(2 * self.n, self.generators.len());
        for g in &self.generators {
            ech.insert(&g.symplectic_row());
        }
        GroupBasis { group: self, ech }
    }

    /// Decides whether `p` (sign included) is a product of generators.
    pub fn membership(&self, p: &PauliOperator) -> Result<Membership> {
        self.basis().membership(p)
    }

    pub fn contains(&self, p: &PauliOperator) -> Result<bool> {
        Ok(self.membership(p)?.is_member())
    }

    /// Same group, signs included: equal size and mutual membership.
    pub fn same_group(&self, other: &StabilizerGroup) -> bool {
        if self.n != other.n || self.len() != other.len() {
            return false;
        }
        let basis = self.basis();
        other
            .generators
            .iter()
            .all(|g| matches!(basis.membership(g), Ok(Membership::Member(_))))
    }

    /// Commutes with every generator.
    pub fn centralizes(&self, p: &PauliOperator) -> Result<bool> {
        for g in &self.generators {
            if !g.commutes_with(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Restricts every generator to `qubits`, in that order. The result is a
    /// plain operator list: restrictions need not commute.
    pub fn restrict_generators(&self, qubits: &[usize]) -> Vec<PauliOperator> {
        self.generators.iter().map(|g| g.restrict(qubits)).collect()
    }

    /// Von Neumann entropy (in bits) of the reduced state on `subset` for the
    /// normalized stabilizer state `2^-n Σ_{s∈S} s`: `|A| - dim S_A`, where
    /// `S_A` is the subgroup supported inside `A`.
    ///
    /// For full-rank groups this is the entanglement rank across `{A, B}`.
    pub fn subsystem_entropy(&self, subset: &[usize]) -> usize {
        let mut in_a = vec![false; self.n];
        for &q in subset {
            in_a[q] = true;
        }
        let complement: Vec<usize> = (0..self.n).filter(|&q| !in_a[q]).collect();
        let outside = self.restrict_generators(&complement);
        let rows: Vec<BitVec> = outside.iter().map(PauliOperator::symplectic_row).collect();
        let dim_inside = self.len() - gf2_rank(&rows);
        subset.len() - dim_inside
    }
}

struct Reduced {
    group: StabilizerGroup,
    dropped: Vec<usize>,
}

/// Precomputed echelon form of a group's generators.
pub struct GroupBasis<'a> {
    group: &'a StabilizerGroup,
    ech: Echelon,
}

impl GroupBasis<'_> {
    /// Generator combination reproducing `p`'s letters, if any.
    pub fn pattern_combination(&self, p: &PauliOperator) -> Result<Option<BitVec>> {
        if p.num_qubits() != self.group.n {
            return Err(PauliError::LengthMismatch {
                left: self.group.n,
                right: p.num_qubits(),
            });
        }
        Ok(self.ech.solve(&p.symplectic_row()))
    }

    /// Letters match some group element (sign ignored).
    pub fn contains_pattern(&self, p: &PauliOperator) -> Result<bool> {
        Ok(self.pattern_combination(p)?.is_some())
    }

    pub fn membership(&self, p: &PauliOperator) -> Result<Membership> {
        let Some(combo) = self.pattern_combination(p)? else {
            return Ok(Membership::Absent);
        };
        let indices: Vec<usize> = combo.iter_ones().collect();
        let prod = self.group.product(&indices);
        Ok(if prod.phase() == p.phase() {
            Membership::Member(indices)
        } else {
            Membership::PhaseMismatch(indices)
        })
    }
}

/// Keeps the first independent occurrence of each generator.
///
/// Fails on anticommuting pairs, on non-Hermitian inputs, and, distinctly,
/// when the inputs generate `-I` (an empty joint eigenspace).
pub fn reduce_generators(n: usize, ops: &[PauliOperator]) -> Result<StabilizerGroup> {
    Ok(StabilizerGroup::reduce(n, ops)?.group)
}

impl fmt::Debug for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StabilizerGroup")
            .field("n", &self.n)
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", strings.join(", "))
    }
}

/// Serialized as a JSON list of signed strings. The qubit count of an empty
/// list cannot be recovered, so empty groups deserialize with `n = 0`.
impl Serialize for StabilizerGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StabilizerGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        StabilizerGroup::from_strings(&strings).map_err(serde::de::Error::custom)
    }
}
