//! Packed bit-vectors and elimination over GF(2).
//!
//! Everything in the crate that talks about symplectic rows, adjacency
//! blocks or coefficient vectors goes through [`BitVec`]. Elimination always
//! pivots on the lowest-index set bit so that results are reproducible.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length bit-vector stored in 64-bit words.
///
/// Bits past `len` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones at `indices`.
    ///
    /// Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Low `len` bits of `value`, bit `i` of the integer at position `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            v.words[0] = value & mask;
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit-vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "bit-vector length mismatch");
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Popcount of `self & other`.
    pub fn and_count(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len, "bit-vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.and_count(other) % 2 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Gathers the bits at `positions` into a new vector, in order.
    pub fn select(&self, positions: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(j, true);
            }
        }
        out
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// Incremental row-echelon basis over GF(2) that remembers, for every basis
/// row, which input rows were summed to produce it.
///
/// Each basis row has a distinct pivot (its lowest set bit) and no bits at the
/// pivots of rows with smaller pivots, so a single ascending sweep reduces any
/// vector completely.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    capacity: usize,
    inserted: usize,
    // Sorted by pivot.
    rows: Vec<(usize, BitVec, BitVec)>,
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The row was independent and extended the basis.
    Independent,
    /// The row is the XOR of the earlier input rows flagged in the vector.
    Dependent(BitVec),
}

impl Echelon {
    /// `width` is the row length, `capacity` the maximum number of rows that
    /// will ever be inserted (the length of combination vectors).
    pub fn new(width: usize, capacity: usize) -> Self {
        Self {
            width,
            capacity,
            inserted: 0,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the basis. Returns the residue and the combination
    /// of input rows that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut residue = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        for (pivot, row, c) in &self.rows {
            if residue.get(*pivot) {
                residue.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (residue, combo)
    }

    /// Solves `v = XOR of input rows`, returning the input-row combination.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        let (residue, combo) = self.reduce(v);
        residue.is_zero().then_some(combo)
    }

    pub fn insert(&mut self, v: &BitVec) -> Insert {
        assert!(self.inserted < self.capacity, "echelon capacity exceeded");
        let index = self.inserted;
        self.inserted += 1;
        let (residue, mut combo) = self.reduce(v);
        match residue.first_one() {
            None => Insert::Dependent(combo),
            Some(pivot) => {
                combo.flip(index);
                let at = self.rows.partition_point(|(p, _, _)| *p < pivot);
                self.rows.insert(at, (pivot, residue, combo));
                Insert::Independent
            }
        }
    }
}

/// Rank over GF(2) of equal-length rows. Empty input has rank 0.
pub fn gf2_rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut ech = Echelon::new(first.len(), rows.len());
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Basis of `{c : XOR_{i in c} rows[i] = 0}`, the left kernel of the row set.
///
/// One basis vector per dependent row, in input order.
pub fn left_kernel(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let mut ech = Echelon::new(width, rows.len());
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if let Insert::Dependent(mut combo) = ech.insert(r) {
            combo.flip(i);
            kernel.push(combo);
        }
    }
    kernel
}
