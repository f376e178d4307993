//! Dense state-vector reference implementation for cross-checking the
//! stabilizer engine on small instances.
//!
//! Qubit 0 is the most significant bit of a basis index. States are compared
//! up to global phase through `|⟨a|b⟩|`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::contraction::{BellConvention, ContractionInstance};
use crate::graphstate::GraphState;
use crate::pauli::{PauliOperator, StabilizerGroup};

pub const DEFAULT_CAP: usize = 12;

/// Singular values at or below this count as zero in rank computations.
pub const RANK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n} qubits exceed the dense oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("post-selection has zero norm")]
    ZeroNorm,
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("stabilizer group on {n} qubits has only {generators} generators; a state needs {n}")]
    NotFullRank { n: usize, generators: usize },
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;

fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(OracleError::DimensionMismatch(format!(
                "{} amplitudes for {n} qubits",
                amps.len()
            )));
        }
        Ok(Self { n, amps })
    }

    /// Real amplitudes, convenient for literals.
    pub fn from_real(n: usize, amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(n, amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }

    pub fn zeros(n: usize) -> Self {
        Self::basis(n, 0)
    }

    /// `|+⟩^{⊗n}`.
    pub fn plus(n: usize) -> Self {
        let a = Complex64::new((1u64 << n) as f64, 0.0).sqrt().inv();
        Self {
            n,
            amps: vec![a; 1 << n],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm <= 1e-12 {
            return Err(OracleError::ZeroNorm);
        }
        Ok(self.scaled(1.0 / norm))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n, other.n, "inner product of different sizes");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨a|b⟩| / (‖a‖‖b‖)`: 1 exactly when the states agree up to phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm() / (self.norm() * other.norm())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self {
            n: self.n + other.n,
            amps,
        }
    }

    fn check_qubit(&self, q: usize) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
    }

    pub fn apply_pauli(&self, p: &PauliOperator) -> Self {
        assert_eq!(p.num_qubits(), self.n, "Pauli length differs from state");
        let (mut x, mut z, mut ys) = (0usize, 0usize, 0u32);
        for q in 0..self.n {
            let (xb, zb) = p.letter(q).bits();
            if xb {
                x |= bit(self.n, q);
            }
            if zb {
                z |= bit(self.n, q);
            }
            if xb && zb {
                ys += 1;
            }
        }
        // Y = i·X·Z, so the operator is i^(phase + #Y) · X^x · Z^z.
        let global = Complex64::i().powu((p.phase() as u32 + ys) % 4);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (b & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            amps[b ^ x] = global * a * sign;
        }
        Self { n: self.n, amps }
    }

    /// `P|ψ⟩ = |ψ⟩` within `tol`.
    pub fn is_stabilized_by(&self, p: &PauliOperator, tol: f64) -> bool {
        let image = self.apply_pauli(p);
        image
            .amps
            .iter()
            .zip(&self.amps)
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn apply_h(&mut self, q: usize) {
        self.check_qubit(q);
        let m = bit(self.n, q);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for b in 0..self.amps.len() {
            if b & m == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | m]);
                self.amps[b] = (a0 + a1) * s;
                self.amps[b | m] = (a0 - a1) * s;
            }
        }
    }

    /// Phase gate `diag(1, i)`.
    pub fn apply_s(&mut self, q: usize) {
        self.check_qubit(q);
        let m = bit(self.n, q);
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & m != 0 {
                *a *= Complex64::i();
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        self.check_qubit(a);
        self.check_qubit(b);
        let mask = bit(self.n, a) | bit(self.n, b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        self.check_qubit(control);
        self.check_qubit(target);
        let (c, t) = (bit(self.n, control), bit(self.n, target));
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    /// Moves qubit `i` to position `positions[i]`.
    pub fn reorder(&self, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.n, "one position per qubit");
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let mut target = 0;
            for (q, &pos) in positions.iter().enumerate() {
                if b & bit(self.n, q) != 0 {
                    target |= bit(self.n, pos);
                }
            }
            amps[target] = *a;
        }
        Self { n: self.n, amps }
    }

    /// Appends a fresh qubit and copies qubit `a` onto it with a CNOT.
    pub fn basis_copy(&self, a: usize) -> Self {
        let mut out = self.tensor(&Self::zeros(1));
        out.apply_cnot(a, self.n);
        out
    }

    /// Projects each pair onto the Bell bra of `convention` and drops the
    /// paired qubits; survivors keep their relative order.
    pub fn project_pairs(
        &self,
        pairs: &[(usize, usize)],
        convention: BellConvention,
    ) -> Result<Self> {
        let mut paired = vec![false; self.n];
        for &(p, q) in pairs {
            for x in [p, q] {
                if x >= self.n {
                    return Err(OracleError::QubitOutOfRange {
                        qubit: x,
                        n: self.n,
                    });
                }
                if paired[x] {
                    return Err(OracleError::DimensionMismatch(format!(
                        "qubit {x} paired twice"
                    )));
                }
                paired[x] = true;
            }
        }
        let rest: Vec<usize> = (0..self.n).filter(|&q| !paired[q]).collect();
        let bell = bell_vector(convention);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << rest.len()];
        for (out, amp) in amps.iter_mut().enumerate() {
            let mut base = 0;
            for (j, &q) in rest.iter().enumerate() {
                if out & bit(rest.len(), j) != 0 {
                    base |= bit(self.n, q);
                }
            }
            for assignment in 0usize..1 << (2 * pairs.len()) {
                let mut index = base;
                let mut coeff = 1.0;
                for (k, &(p, q)) in pairs.iter().enumerate() {
                    let ab = assignment >> (2 * k) & 3;
                    coeff *= bell[ab];
                    if coeff == 0.0 {
                        break;
                    }
                    if ab & 2 != 0 {
                        index |= bit(self.n, p);
                    }
                    if ab & 1 != 0 {
                        index |= bit(self.n, q);
                    }
                }
                if coeff != 0.0 {
                    *amp += self.amps[index] * coeff;
                }
            }
        }
        Ok(Self {
            n: rest.len(),
            amps,
        })
    }
}

/// Real amplitudes of the Bell ket, indexed by `2a + b`.
pub fn bell_vector(convention: BellConvention) -> [f64; 4] {
    match convention {
        BellConvention::PlusPair => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            [s, 0.0, 0.0, s]
        }
        BellConvention::GraphEdge => [0.5, 0.5, 0.5, -0.5],
    }
}

/// Dense operations with an adjustable qubit cap.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(OracleError::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// `Π CZ_ab |+⟩^{⊗n}` over the edges.
    pub fn graph_state_vector(&self, g: &GraphState) -> Result<DenseState> {
        self.check(g.num_vertices())?;
        let mut s = DenseState::plus(g.num_vertices());
        for (a, b) in g.edges() {
            s.apply_cz(a, b);
        }
        Ok(s)
    }

    /// The unique state fixed by a full-rank group, normalized.
    pub fn stabilizer_state(&self, group: &StabilizerGroup) -> Result<DenseState> {
        let n = group.num_qubits();
        self.check(n)?;
        if !group.is_full_rank() {
            return Err(OracleError::NotFullRank {
                n,
                generators: group.len(),
            });
        }
        let start = DenseState::basis(n, support_index(group));
        project(&start, group).normalized()
    }

    /// Orthonormal basis of the code space (dimension `2^k`).
    pub fn code_space_basis(&self, group: &StabilizerGroup) -> Result<Vec<DenseState>> {
        let n = group.num_qubits();
        self.check(n)?;
        let dim = 1usize << group.logical_qubits();
        let mut basis: Vec<DenseState> = Vec::with_capacity(dim);
        for index in 0..1usize << n {
            if basis.len() == dim {
                break;
            }
            let mut v = project(&DenseState::basis(n, index), group);
            for b in &basis {
                let c = b.inner(&v);
                for (x, y) in v.amps.iter_mut().zip(&b.amps) {
                    *x -= c * y;
                }
            }
            if v.norm() > 1e-6 {
                basis.push(v.normalized()?);
            }
        }
        Ok(basis)
    }

    pub fn tensor(&self, states: &[DenseState]) -> Result<DenseState> {
        self.check(states.iter().map(DenseState::num_qubits).sum())?;
        Ok(states.iter().fold(
            DenseState::from_real(0, &[1.0]).expect("scalar"),
            |acc, s| acc.tensor(s),
        ))
    }

    /// Tensors `states` in order and projects the pairs (global indices).
    /// The result is unnormalized and may be zero.
    pub fn dense_contract(
        &self,
        states: &[DenseState],
        pairings: &[(usize, usize)],
        convention: BellConvention,
    ) -> Result<DenseState> {
        self.tensor(states)?.project_pairs(pairings, convention)
    }

    /// Dense counterpart of a contraction instance whose node groups are all
    /// full rank. Boundary qubits come out in ascending order.
    pub fn contract_instance(&self, inst: &ContractionInstance) -> Result<DenseState> {
        self.check(inst.num_qubits())?;
        let states = inst
            .nodes()
            .iter()
            .map(|node| self.stabilizer_state(&node.group))
            .collect::<Result<Vec<_>>>()?;
        let positions: Vec<usize> = inst
            .nodes()
            .iter()
            .flat_map(|node| node.qubits.iter().copied())
            .collect();
        let global = self.tensor(&states)?.reorder(&positions);
        global.project_pairs(inst.pairings(), inst.convention())
    }

    /// Applies `Σ_i U^(i) ⊗ |i⟩⟨i|_c`, where `U^(i)` prepares `branches[i]`
    /// on fresh qubits appended after `control`'s qubits, and the control
    /// register is `control_qubits` read big-endian. With `measure`, the
    /// control register is post-selected on the uniform Fourier outcome and
    /// removed; the result is then normalized.
    pub fn apply_controlled_isometry(
        &self,
        control: &DenseState,
        control_qubits: &[usize],
        branches: &[DenseState],
        measure: bool,
    ) -> Result<DenseState> {
        let d = 1usize << control_qubits.len();
        if branches.len() != d {
            return Err(OracleError::DimensionMismatch(format!(
                "{} branches for a {}-qubit control register",
                branches.len(),
                control_qubits.len()
            )));
        }
        let m = branches[0].num_qubits();
        if branches.iter().any(|b| b.num_qubits() != m) {
            return Err(OracleError::DimensionMismatch(
                "branches differ in size".into(),
            ));
        }
        for &q in control_qubits {
            if q >= control.n {
                return Err(OracleError::QubitOutOfRange {
                    qubit: q,
                    n: control.n,
                });
            }
        }
        let n = control.n;
        let out_n = if measure {
            n - control_qubits.len() + m
        } else {
            n + m
        };
        self.check(out_n)?;

        let register = |b: usize| {
            control_qubits
                .iter()
                .fold(0usize, |acc, &q| acc << 1 | usize::from(b & bit(n, q) != 0))
        };
        if !measure {
            let mut amps = vec![Complex64::new(0.0, 0.0); 1 << out_n];
            for (b, a) in control.amps.iter().enumerate() {
                let branch = &branches[register(b)];
                for (j, t) in branch.amps.iter().enumerate() {
                    amps[b << m | j] = a * t;
                }
            }
            return Ok(DenseState { n: out_n, amps });
        }

        let keep: Vec<usize> = (0..n).filter(|q| !control_qubits.contains(q)).collect();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << out_n];
        let weight = 1.0 / (d as f64).sqrt();
        for (b, a) in control.amps.iter().enumerate() {
            let rest = keep
                .iter()
                .fold(0usize, |acc, &q| acc << 1 | usize::from(b & bit(n, q) != 0));
            let branch = &branches[register(b)];
            for (j, t) in branch.amps.iter().enumerate() {
                amps[rest << m | j] += a * t * weight;
            }
        }
        DenseState { n: out_n, amps }.normalized()
    }

    /// Rank of the reduced density matrix on `subset`, i.e. the Schmidt rank
    /// across `subset` versus the rest.
    pub fn reduced_rank(&self, state: &DenseState, subset: &[usize]) -> Result<usize> {
        let n = state.n;
        self.check(n)?;
        for &q in subset {
            if q >= n {
                return Err(OracleError::QubitOutOfRange { qubit: q, n });
            }
        }
        let rest: Vec<usize> = (0..n).filter(|q| !subset.contains(q)).collect();
        let state = state.normalized()?;
        let mut m = DMatrix::<Complex64>::zeros(1 << subset.len(), 1 << rest.len());
        for (b, a) in state.amps.iter().enumerate() {
            let row = subset
                .iter()
                .fold(0usize, |acc, &q| acc << 1 | usize::from(b & bit(n, q) != 0));
            let col = rest
                .iter()
                .fold(0usize, |acc, &q| acc << 1 | usize::from(b & bit(n, q) != 0));
            m[(row, col)] = *a;
        }
        let singular = m.singular_values();
        Ok(singular.iter().filter(|&&s| s > RANK_TOLERANCE).count())
    }
}

/// Applies `Π (I + g)/2` over the generators.
fn project(state: &DenseState, group: &StabilizerGroup) -> DenseState {
    group.generators().iter().fold(state.clone(), |acc, g| {
        let image = acc.apply_pauli(g);
        DenseState {
            n: acc.n,
            amps: acc
                .amps
                .iter()
                .zip(&image.amps)
                .map(|(a, b)| (a + b) * 0.5)
                .collect(),
        }
    })
}

/// A basis index with nonzero amplitude in the group's state: any solution
/// of the constraints imposed by the Z-only elements of the group.
fn support_index(group: &StabilizerGroup) -> usize {
    let n = group.num_qubits();
    let mut rows: Vec<PauliOperator> = group.generators().to_vec();
    // Eliminate X components so the rows without X span the Z-only subgroup.
    let mut pivot_row = 0;
    for q in 0..n {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r].x_bits().get(q)) else {
            continue;
        };
        rows.swap(pivot_row, found);
        for r in 0..rows.len() {
            if r != pivot_row && rows[r].x_bits().get(q) {
                rows[r] = rows[r].multiply(&rows[pivot_row]).expect("same length");
            }
        }
        pivot_row += 1;
    }
    // Solve z·b = s over the Z-only rows, where the row is (-1)^s Z^z.
    let mut eqs: Vec<(Vec<bool>, bool)> = rows[pivot_row..]
        .iter()
        .map(|r| ((0..n).map(|q| r.z_bits().get(q)).collect(), r.phase() == 2))
        .collect();
    let mut assignment = vec![false; n];
    let mut pivots = Vec::new();
    let mut row = 0;
    for q in 0..n {
        let Some(found) = (row..eqs.len()).find(|&r| eqs[r].0[q]) else {
            continue;
        };
        eqs.swap(row, found);
        for r in 0..eqs.len() {
            if r != row && eqs[r].0[q] {
                let (pz, ps) = eqs[row].clone();
                for (a, b) in eqs[r].0.iter_mut().zip(&pz) {
                    *a ^= b;
                }
                eqs[r].1 ^= ps;
            }
        }
        pivots.push(q);
        row += 1;
    }
    for (r, &q) in pivots.iter().enumerate() {
        assignment[q] = eqs[r].1;
    }
    assignment
        .iter()
        .enumerate()
        .fold(0usize, |acc, (q, &v)| if v { acc | bit(n, q) } else { acc })
}
