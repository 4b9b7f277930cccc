//! Packed GF(2) vectors and generator matrices.
//!
//! Vectors are stored as little-endian `u64` words (bit `i` lives in word
//! `i / 64` at position `i % 64`). All indices in this module are 0-based.
//! The packing never leaks through the public API: everything is expressed
//! in bit positions, and the external text formats are character based.

use std::fmt;

use thiserror::Error;

/// Default largest dimension for which [`GenMatrix::min_distance`] enumerates
/// all `2^k - 1` nonzero codewords.
pub const DEFAULT_DISTANCE_CAP: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix has no rows")]
    NoRows,
    #[error("matrix has no columns")]
    NoColumns,
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension k = {k} exceeds the exhaustive-enumeration cap {cap}")]
    DimensionTooLarge { k: usize, cap: usize },
    #[error("invalid character {ch:?} in bit string")]
    InvalidBit { ch: char },
}

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A binary vector of fixed length.
///
/// Bits at positions `>= len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![!0; words_for(len)],
        };
        v.mask_tail();
        v
    }

    /// The unit vector with a single one at position `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    /// Parses a string of `'0'`/`'1'` characters, ignoring ASCII whitespace.
    pub fn parse(s: &str) -> Result<Self, Gf2Error> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars().filter(|c| !c.is_ascii_whitespace()) {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ch => return Err(Gf2Error::InvalidBit { ch }),
            }
        }
        Ok(Self::from_bools(&bits))
    }

    /// Builds a vector of length `len <= 64` from the low bits of `word`.
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_word needs len <= 64, got {len}");
        let mut v = Self {
            len,
            words: if len == 0 { vec![] } else { vec![word] },
        };
        v.mask_tail();
        v
    }

    /// The packed value when the vector fits in a single word.
    pub fn to_word(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place GF(2) addition. Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch in and");
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch in or");
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Number of positions where both vectors are one.
    pub fn overlap(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in overlap");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn distance(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in distance");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Positions of the ones, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
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

    pub fn support(&self) -> Vec<usize> {
        self.ones_iter().collect()
    }

    /// A new vector holding `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones_iter() {
            out.set(i, true);
        }
        for i in other.ones_iter() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Keeps only the listed positions, in the order given.
    pub fn select(&self, positions: &[usize]) -> Self {
        let mut out = Self::zeros(positions.len());
        for (dst, &src) in positions.iter().enumerate() {
            if self.get(src) {
                out.set(dst, true);
            }
        }
        out
    }

    /// Removes position `i`, shifting later bits down by one.
    pub fn remove(&self, i: usize) -> Self {
        assert!(i < self.len);
        let mut out = Self::zeros(self.len - 1);
        for j in self.ones_iter() {
            match j.cmp(&i) {
                std::cmp::Ordering::Less => out.set(j, true),
                std::cmp::Ordering::Greater => out.set(j - 1, true),
                std::cmp::Ordering::Equal => {}
            }
        }
        out
    }

    /// Lowest set position.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Reduced row echelon form of a set of rows; returns the pivot column of
/// each nonzero row (rows are rewritten in place, zero rows moved last).
fn echelonize(rows: &mut [BitVector], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[BitVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let width = first.len();
    let mut rows = vectors.to_vec();
    echelonize(&mut rows, width).len()
}

/// All solutions `x` of `sum_j x_j * columns[j] = target`.
///
/// The solution set is `particular + span(kernel)`; `kernel` is a basis of
/// the null space, one vector per free column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutions {
    pub particular: BitVector,
    pub kernel: Vec<BitVector>,
}

impl AffineSolutions {
    /// Visits every solution once, in Gray-code order over the kernel basis.
    pub fn for_each<F: FnMut(&BitVector)>(&self, mut f: F) {
        let mut x = self.particular.clone();
        f(&x);
        let d = self.kernel.len();
        assert!(d < 64, "kernel dimension {d} too large to enumerate");
        for g in 1u64..(1u64 << d) {
            x.xor_assign(&self.kernel[g.trailing_zeros() as usize]);
            f(&x);
        }
    }
}

/// Solves `sum_j x_j * columns[j] = target` over GF(2).
///
/// `columns` must all have the length of `target`. Returns `None` when the
/// target is outside the column span.
pub fn solve(columns: &[BitVector], target: &BitVector) -> Option<AffineSolutions> {
    let m = target.len();
    let ncols = columns.len();
    assert!(
        columns.iter().all(|c| c.len() == m),
        "column length mismatch"
    );

    // Augmented row-major system: each row is (coefficients | rhs).
    let mut rows: Vec<BitVector> = (0..m)
        .map(|r| {
            let mut row = BitVector::zeros(ncols + 1);
            for (j, c) in columns.iter().enumerate() {
                if c.get(r) {
                    row.set(j, true);
                }
            }
            if target.get(r) {
                row.set(ncols, true);
            }
            row
        })
        .collect();
    let pivots = echelonize(&mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }

    let mut particular = BitVector::zeros(ncols);
    for (r, &p) in pivots.iter().enumerate() {
        if rows[r].get(ncols) {
            particular.set(p, true);
        }
    }

    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVector::unit(ncols, f);
            for (r, &p) in pivots.iter().enumerate() {
                if rows[r].get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();

    Some(AffineSolutions { particular, kernel })
}

/// A `k x n` binary generator matrix, stored by rows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenMatrix {
    n: usize,
    rows: Vec<BitVector>,
}

impl GenMatrix {
    pub fn new(rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        let first = rows.first().ok_or(Gf2Error::NoRows)?;
        let n = first.len();
        if n == 0 {
            return Err(Gf2Error::NoColumns);
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Gf2Error::RaggedRows {
                row,
                expected: n,
                found: r.len(),
            });
        }
        Ok(Self { n, rows })
    }

    /// Parses one `'0'`/`'1'` string per row (whitespace inside rows is ignored).
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self, Gf2Error> {
        let rows = rows
            .iter()
            .map(|s| BitVector::parse(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    /// Builds a matrix from its columns, each of length `k`.
    pub fn from_columns(columns: &[BitVector]) -> Result<Self, Gf2Error> {
        let first = columns.first().ok_or(Gf2Error::NoColumns)?;
        let k = first.len();
        if k == 0 {
            return Err(Gf2Error::NoRows);
        }
        let mut rows = vec![BitVector::zeros(columns.len()); k];
        for (j, c) in columns.iter().enumerate() {
            if c.len() != k {
                return Err(Gf2Error::RaggedRows {
                    row: j,
                    expected: k,
                    found: c.len(),
                });
            }
            for i in c.ones_iter() {
                rows[i].set(j, true);
            }
        }
        Self::new(rows)
    }

    pub fn identity(k: usize) -> Self {
        Self::new((0..k).map(|i| BitVector::unit(k, i)).collect()).expect("k >= 1")
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Column `j` as a length-`k` vector.
    pub fn column(&self, j: usize) -> BitVector {
        assert!(j < self.n, "column {j} out of range for n = {}", self.n);
        BitVector::from_indices(
            self.k(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.get(j))
                .map(|(i, _)| i),
        )
    }

    pub fn columns(&self) -> Vec<BitVector> {
        let mut cols = vec![BitVector::zeros(self.k()); self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones_iter() {
                cols[j].set(i, true);
            }
        }
        cols
    }

    /// Columns packed into single words; `None` when `k > 64`.
    pub fn column_words(&self) -> Option<Vec<u64>> {
        if self.k() > WORD {
            return None;
        }
        let mut cols = vec![0u64; self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones_iter() {
                cols[j] |= 1 << i;
            }
        }
        Some(cols)
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }

    pub fn has_full_rank(&self) -> bool {
        self.rank() == self.k()
    }

    /// True iff the first `k` columns are exactly the identity.
    pub fn is_systematic(&self) -> bool {
        let k = self.k();
        k <= self.n
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, row)| (0..k).all(|j| row.get(j) == (i == j)))
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(BitVector::weight).collect()
    }

    /// The common row weight, if every row has the same weight.
    pub fn constant_row_weight(&self) -> Option<usize> {
        let w = self.rows[0].weight();
        self.rows.iter().all(|r| r.weight() == w).then_some(w)
    }

    /// Minimum distance of the row space with the default enumeration cap.
    pub fn min_distance(&self) -> Result<usize, Gf2Error> {
        self.min_distance_capped(DEFAULT_DISTANCE_CAP)
    }

    /// Minimum weight over all `2^k - 1` nonzero messages, enumerated in
    /// Gray-code order. Returns 0 if the rows are linearly dependent.
    pub fn min_distance_capped(&self, cap: usize) -> Result<usize, Gf2Error> {
        let k = self.k();
        if k > cap || k >= 64 {
            return Err(Gf2Error::DimensionTooLarge { k, cap });
        }
        let mut acc = BitVector::zeros(self.n);
        let mut best = usize::MAX;
        for g in 1u64..(1u64 << k) {
            acc.xor_assign(&self.rows[g.trailing_zeros() as usize]);
            best = best.min(acc.weight());
            if best == 0 {
                break;
            }
        }
        Ok(best)
    }

    /// Minimum Hamming distance between two distinct rows, treating the
    /// rows as a (nonlinear) set of words. `None` for a single row.
    pub fn min_row_distance(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (a, ra) in self.rows.iter().enumerate() {
            for rb in &self.rows[a + 1..] {
                let d = ra.distance(rb);
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    /// `[self | other]`; both must have the same number of rows.
    pub fn hstack(&self, other: &Self) -> Option<Self> {
        (self.k() == other.k()).then(|| {
            Self::new(
                self.rows
                    .iter()
                    .zip(&other.rows)
                    .map(|(a, b)| a.concat(b))
                    .collect(),
            )
            .expect("nonempty")
        })
    }

    pub fn remove_column(&self, j: usize) -> Result<Self, Gf2Error> {
        Self::new(self.rows.iter().map(|r| r.remove(j)).collect())
    }

    pub fn remove_row(&self, i: usize) -> Result<Self, Gf2Error> {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, v)| v.clone())
            .collect();
        Self::new(rows)
    }

    pub fn push_column(&self, column: &BitVector) -> Self {
        assert_eq!(column.len(), self.k());
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::from_bools(&[column.get(i)])))
            .collect();
        Self::new(rows).expect("nonempty")
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Self, Gf2Error> {
        Self::new(self.rows.iter().map(|r| r.select(columns)).collect())
    }

    /// Sum of the columns indexed by `coords`.
    pub fn column_sum<I: IntoIterator<Item = usize>>(&self, coords: I) -> BitVector {
        let mut acc = BitVector::zeros(self.k());
        for j in coords {
            for (i, row) in self.rows.iter().enumerate() {
                if row.get(j) {
                    acc.flip(i);
                }
            }
        }
        acc
    }
}

impl fmt::Display for GenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenMatrix[{}x{}](", self.k(), self.n)?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn eq1() -> GenMatrix {
        GenMatrix::from_strings(&["10111001", "01100111"]).unwrap()
    }

    /// Independent oracle: re-enumerate messages as integers and sum rows bit by bit.
    fn naive_min_distance(g: &GenMatrix) -> usize {
        let (k, n) = (g.k(), g.n());
        (1u32..(1 << k))
            .map(|u| {
                (0..n)
                    .filter(|&j| {
                        (0..k).filter(|&i| (u >> i) & 1 == 1 && g.get(i, j)).count() % 2 == 1
                    })
                    .count()
            })
            .min()
            .unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, k: usize, n: usize) -> GenMatrix {
        let rows = (0..k)
            .map(|_| BitVector::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>()))
            .collect();
        GenMatrix::new(rows).unwrap()
    }

    #[test]
    fn tail_bits_stay_zero() {
        let v = BitVector::ones(70);
        assert_eq!(v.weight(), 70);
        let w = BitVector::from_word(5, u64::MAX);
        assert_eq!(w.weight(), 5);
        assert_eq!(w.to_word(), Some(0b11111));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(GenMatrix::identity(2).rank(), 2);
        assert_eq!(eq1().rank(), 2);
        let dup = GenMatrix::from_strings(&["0110", "0110"]).unwrap();
        assert_eq!(dup.rank(), 1);
    }

    #[test]
    fn systematic_examples() {
        assert!(eq1().is_systematic());
        let reversed = GenMatrix::from_strings(&["10011101", "11100110"]).unwrap();
        assert!(!reversed.is_systematic());
        assert!(GenMatrix::identity(4).is_systematic());
    }

    #[test]
    fn min_distance_examples() {
        // rows weigh 5 and 5, their sum weighs 6
        assert_eq!(eq1().min_distance().unwrap(), 5);
        let rep = GenMatrix::from_strings(&["11111"]).unwrap();
        assert_eq!(rep.min_distance().unwrap(), 5);
    }

    #[test]
    fn min_distance_cap() {
        let g = GenMatrix::identity(30);
        assert_eq!(
            g.min_distance(),
            Err(Gf2Error::DimensionTooLarge { k: 30, cap: 28 })
        );
        assert_eq!(g.min_distance_capped(30).unwrap(), 1);
    }

    #[test]
    fn min_distance_matches_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let k = rng.gen_range(1..=10);
            let n = rng.gen_range(k..=20);
            let g = random_matrix(&mut rng, k, n);
            if g.rank() < k {
                continue;
            }
            assert_eq!(g.min_distance().unwrap(), naive_min_distance(&g), "{g:?}");
        }
    }

    #[test]
    fn systematic_columns_are_units() {
        let g = eq1();
        for j in 0..g.k() {
            assert_eq!(g.column(j), BitVector::unit(2, j));
        }
        assert_eq!(g.columns()[7], BitVector::ones(2));
        assert_eq!(g.column_words().unwrap()[2], 0b11);
    }

    #[test]
    fn solve_finds_all_solutions() {
        let g = eq1();
        let cols = g.columns();
        let sols = solve(&cols, &BitVector::unit(2, 0)).unwrap();
        assert_eq!(sols.kernel.len(), 6);
        let mut count = 0;
        sols.for_each(|x| {
            assert_eq!(g.column_sum(x.ones_iter()), BitVector::unit(2, 0));
            count += 1;
        });
        assert_eq!(count, 64);

        let zero_cols = vec![BitVector::zeros(3); 4];
        assert!(solve(&zero_cols, &BitVector::unit(3, 1)).is_none());
    }

    #[test]
    fn row_distance_and_concat() {
        let g = eq1();
        assert_eq!(g.min_row_distance(), Some(6));
        let h = g.hstack(&GenMatrix::identity(2)).unwrap();
        assert_eq!((h.k(), h.n()), (2, 10));
        assert_eq!(h.remove_column(8).unwrap().n(), 9);
    }

    proptest! {
        #[test]
        fn rank_invariant_under_row_ops(seed in any::<u64>(), k in 1usize..8, n in 1usize..24) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_matrix(&mut rng, k, n);
            let before = g.rank();
            let mut rows = g.rows().to_vec();
            for _ in 0..10 {
                let a = rng.gen_range(0..k);
                let b = rng.gen_range(0..k);
                if rng.gen_bool(0.5) {
                    rows.swap(a, b);
                } else if a != b {
                    let add = rows[b].clone();
                    rows[a].xor_assign(&add);
                }
            }
            prop_assert_eq!(GenMatrix::new(rows).unwrap().rank(), before);
            prop_assert!(before <= k.min(n));
        }

        #[test]
        fn parse_display_roundtrip(bits in proptest::collection::vec(any::<bool>(), 1..150)) {
            let v = BitVector::from_bools(&bits);
            prop_assert_eq!(BitVector::parse(&v.to_string()).unwrap(), v.clone());
            prop_assert_eq!(v.weight(), bits.iter().filter(|b| **b).count());
        }
    }
}
