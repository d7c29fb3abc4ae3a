//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are at most [`MAX_DIM`] bits long and live in a single `u64` word,
//! which is plenty for desk-scale experiments and keeps row operations at one
//! XOR each. Columns are 0-based here; the 1-based message indexing of the
//! problem model is applied by the callers.

use num_bigint::BigUint;

/// Hard cap on vector length (bits per word).
pub const MAX_DIM: usize = 64;

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A vector of `len` bits over GF(2).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: u64,
    len: usize,
}

impl BitVector {
    /// All-zero vector of the given length.
    ///
    /// Panics if `len` is 0 or exceeds [`MAX_DIM`].
    pub fn zeros(len: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&len), "vector length {len} out of range");
        BitVector { bits: 0, len }
    }

    /// Vector with ones exactly at the given 0-based positions.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            assert!(i < len, "bit {i} out of range for length {len}");
            v.bits |= 1 << i;
        }
        v
    }

    pub fn from_word(len: usize, word: u64) -> Self {
        assert!((1..=MAX_DIM).contains(&len));
        debug_assert_eq!(word & !mask(len), 0, "stray bits past length {len}");
        BitVector { bits: word & mask(len), len }
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn basis(len: usize, i: usize) -> Self {
        Self::from_support(len, &[i])
    }

    /// Bit length; at least 1 by construction.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.bits ^= 1 << i;
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// 0-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        self.bits ^= other.bits;
    }

    /// Raw word, low bit = column 0.
    pub fn as_word(&self) -> u64 {
        self.bits
    }
}

impl std::fmt::Debug for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A matrix over GF(2) stored as one word per row.
///
/// Rows are transmissions, columns index messages when used as the generator
/// of a broadcast code.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<u64>,
    cols: usize,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&cols), "column count {cols} out of range");
        BitMatrix { rows: Vec::new(), cols }
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Self {
        assert!(!rows.is_empty(), "need at least one row");
        let cols = rows[0].len();
        for r in &rows {
            assert_eq!(r.len(), cols, "rows of unequal length");
        }
        BitMatrix {
            rows: rows.iter().map(BitVector::as_word).collect(),
            cols,
        }
    }

    /// Build from 0-based support lists, one per row.
    pub fn from_supports(cols: usize, supports: &[Vec<usize>]) -> Self {
        let rows = supports
            .iter()
            .map(|s| BitVector::from_support(cols, s))
            .collect();
        Self::from_rows(rows)
    }

    pub fn from_words(cols: usize, words: Vec<u64>) -> Self {
        let mut m = Self::new(cols);
        for w in words {
            debug_assert_eq!(w & !mask(cols), 0);
            m.rows.push(w & mask(cols));
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_words(n, (0..n).map(|i| 1u64 << i).collect())
    }

    /// Row count (the code length ell when used as a generator).
    pub fn ell(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_word(self.cols, self.rows[i])
    }

    pub fn rows(&self) -> impl Iterator<Item = BitVector> + '_ {
        self.rows.iter().map(|&w| BitVector::from_word(self.cols, w))
    }

    pub fn row_words(&self) -> &[u64] {
        &self.rows
    }

    pub fn push_row(&mut self, v: BitVector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.rows.push(v.as_word());
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(col < self.cols);
        (self.rows[row] >> col) & 1 == 1
    }

    /// Reduced row echelon form and rank.
    ///
    /// Leftmost-pivot, topmost-row elimination; zero rows sink to the bottom
    /// and the row count is preserved. Idempotent.
    pub fn rref(&self) -> (BitMatrix, usize) {
        let mut rows = self.rows.clone();
        let rank = rref_words(&mut rows, self.cols);
        (BitMatrix { rows, cols: self.cols }, rank)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        rref_words(&mut rows, self.cols)
    }

    /// Whether `v` is a GF(2) linear combination of the rows.
    pub fn span_contains(&self, v: &BitVector) -> bool {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length {} does not match column count {}",
            v.len(),
            self.cols
        );
        let mut rows = self.rows.clone();
        let rank = rref_words(&mut rows, self.cols);
        rows.truncate(rank);
        reduce_word(v.as_word(), &rows) == 0
    }

    /// Some `v` in the row space with `support(v) ⊆ allowed ∪ {pivot}` and
    /// bit `pivot` set, if one exists. `allowed` is a 0-based column mask and
    /// must not contain `pivot`.
    ///
    /// Eliminates on the complement columns: the rows surviving elimination
    /// span exactly the subspace of the row space vanishing outside
    /// `allowed ∪ {pivot}`, so existence reduces to a scan for the pivot bit.
    /// The returned witness is canonical (first RREF row with the pivot set).
    pub fn span_vector_with_support_mask(&self, allowed: u64, pivot: usize) -> Option<BitVector> {
        assert!(pivot < self.cols, "pivot column {pivot} out of range");
        assert_eq!(allowed >> pivot & 1, 0, "pivot must not be an allowed column");
        debug_assert_eq!(allowed & !mask(self.cols), 0);

        let keep = allowed | (1 << pivot);
        let forbidden = mask(self.cols) & !keep;
        let mut rows = self.rows.clone();
        eliminate_columns(&mut rows, forbidden);
        rref_words(&mut rows, self.cols);
        rows.into_iter()
            .find(|w| (w >> pivot) & 1 == 1)
            .map(|w| BitVector::from_word(self.cols, w))
    }

    /// Set-based convenience wrapper around
    /// [`span_vector_with_support_mask`](Self::span_vector_with_support_mask).
    pub fn span_vector_with_support(
        &self,
        allowed: impl IntoIterator<Item = usize>,
        pivot: usize,
    ) -> Option<BitVector> {
        let mut m = 0u64;
        for i in allowed {
            assert!(i < self.cols, "allowed column {i} out of range");
            m |= 1 << i;
        }
        self.span_vector_with_support_mask(m, pivot)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in self.rows() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// In-place RREF on raw row words; returns the rank. Zero rows end up last.
pub(crate) fn rref_words(rows: &mut [u64], cols: usize) -> usize {
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| (rows[r] >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let p = rows[pivot_row];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pivot_row && (*row >> col) & 1 == 1 {
                *row ^= p;
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

/// Reduce `v` against rows that are already in echelon form.
pub(crate) fn reduce_word(mut v: u64, echelon_rows: &[u64]) -> u64 {
    for &r in echelon_rows {
        if r == 0 {
            continue;
        }
        let lead = r.trailing_zeros();
        if (v >> lead) & 1 == 1 {
            v ^= r;
        }
    }
    v
}

/// For each set bit of `forbidden` (ascending), pick one row with that bit,
/// XOR it into every other row carrying the bit, and drop it. What remains
/// spans exactly the vectors of the original row space that vanish on all
/// forbidden columns.
pub(crate) fn eliminate_columns(rows: &mut Vec<u64>, forbidden: u64) {
    let mut f = forbidden;
    while f != 0 {
        let col = f.trailing_zeros();
        f &= f - 1;
        let Some(idx) = rows.iter().position(|&w| (w >> col) & 1 == 1) else {
            continue;
        };
        let p = rows.swap_remove(idx);
        for row in rows.iter_mut() {
            if (*row >> col) & 1 == 1 {
                *row ^= p;
            }
        }
    }
}

/// Number of k-dimensional subspaces of GF(2)^m, as an exact integer:
/// the product of (2^m − 2^i) / (2^k − 2^i) over i < k.
pub fn gaussian_binomial(m: usize, k: usize) -> BigUint {
    assert!(k <= m, "k={k} exceeds m={m}");
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one;
    for i in 0..k {
        num *= (BigUint::from(1u32) << m) - (BigUint::from(1u32) << i);
        den *= (BigUint::from(1u32) << k) - (BigUint::from(1u32) << i);
    }
    num / den
}

/// All increasing k-subsets of {0, .., m−1} in lexicographic order.
///
/// These are the possible pivot-column patterns of a rank-k RREF matrix; the
/// subspace stream can be split along them for parallel search.
pub fn pivot_patterns(m: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(k <= m);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for c in start..=(m - remaining) {
            current.push(c);
            rec(m, k, c + 1, current, out);
            current.pop();
        }
    }
    if k == 0 {
        out.push(Vec::new());
    } else {
        rec(m, k, 0, &mut current, &mut out);
    }
    out
}

/// Number of free entries of an RREF matrix with the given pivot pattern.
pub fn free_entry_count(m: usize, pivots: &[usize]) -> usize {
    let k = pivots.len();
    pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| (m - p - 1) - (k - 1 - i))
        .sum()
}

/// Stream of all RREF matrices with a fixed pivot pattern.
///
/// Free entries are filled from a binary counter: bit `t` of the counter maps
/// to the `t`-th free position in row-major order, and the counter runs from
/// 0 upward, which fixes the enumeration order.
pub struct PatternSubspaces {
    m: usize,
    pivots: Vec<usize>,
    pivot_mask: u64,
    counter: u64,
    total: u64,
}

impl PatternSubspaces {
    pub fn new(m: usize, pivots: &[usize]) -> Self {
        assert!(m <= MAX_DIM);
        let free = free_entry_count(m, pivots);
        assert!(free < 64, "2^{free} subspaces for one pivot pattern is not enumerable");
        let mut pivot_mask = 0u64;
        for &p in pivots {
            assert!(p < m);
            pivot_mask |= 1 << p;
        }
        PatternSubspaces {
            m,
            pivots: pivots.to_vec(),
            pivot_mask,
            counter: 0,
            total: 1u64 << free,
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// The matrix for a specific counter value, without advancing the stream.
    pub fn matrix_at(&self, counter: u64) -> BitMatrix {
        let mut rows = vec![0u64; self.pivots.len()];
        let mut bit = 0;
        for (i, &p) in self.pivots.iter().enumerate() {
            rows[i] |= 1 << p;
            for j in (p + 1)..self.m {
                if (self.pivot_mask >> j) & 1 == 0 {
                    if (counter >> bit) & 1 == 1 {
                        rows[i] |= 1 << j;
                    }
                    bit += 1;
                }
            }
        }
        BitMatrix { rows, cols: self.m }
    }
}

impl Iterator for PatternSubspaces {
    type Item = BitMatrix;

    fn next(&mut self) -> Option<BitMatrix> {
        if self.counter == self.total {
            return None;
        }
        let m = self.matrix_at(self.counter);
        self.counter += 1;
        Some(m)
    }
}

/// Canonical enumeration of all k-dimensional subspaces of GF(2)^m: exactly
/// one RREF representative per subspace, ordered by pivot pattern then by the
/// free-entry counter. The total count equals [`gaussian_binomial`]`(m, k)`.
pub fn enumerate_subspaces(m: usize, k: usize) -> impl Iterator<Item = BitMatrix> {
    pivot_patterns(m, k)
        .into_iter()
        .flat_map(move |p| PatternSubspaces::new(m, &p))
}
