//! Bit-packed linear algebra over GF(2).
//!
//! Vectors and matrices store bits in `u64` words, matrices row-major with a
//! fixed word stride per row. Everything here is a pure function of its inputs.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length bit vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = !0;
        }
        v.clear_tail();
        v
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

    /// Builds a vector of length `len` with the listed positions set. Repeated
    /// positions toggle.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, idx: I) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.toggle(i);
        }
        v
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVec { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
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
        assert_eq!(self.len, other.len, "length mismatch in and");
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

    pub fn or(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "length mismatch in or");
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        dot_words(&self.words, &other.words)
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
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

    /// Bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[inline]
fn dot_words(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() % 2 == 1
}

/// Dense bit matrix, row-major, one word-aligned stride per row.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks row vectors. All rows must share the column count `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row {r} has wrong length");
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    /// Convenience constructor from 0/1 entries.
    pub fn from_dense(entries: &[&[u8]]) -> Self {
        let cols = entries.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(entries.len(), cols);
        for (r, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &b) in row.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        assert!(r < self.rows);
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Number of set bits in row `r`.
    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// row[dst] ^= row[src]
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (lo, hi) = if src < dst {
            let (a, b) = self.data.split_at_mut(dst * s);
            (&a[src * s..src * s + s], &mut b[..s])
        } else {
            let (a, b) = self.data.split_at_mut(src * s);
            // dst < src
            let dst_row = &mut a[dst * s..dst * s + s];
            let src_row = &b[..s];
            for (d, x) in dst_row.iter_mut().zip(src_row) {
                *d ^= *x;
            }
            return;
        };
        for (d, x) in hi.iter_mut().zip(lo) {
            *d ^= *x;
        }
    }

    /// Matrix-vector product `M·x`.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if dot_words(self.row_words(r), x.words()) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVec::from_words(self.cols, self.row_words(r).to_vec()).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(None);
        (m, pivots)
    }

    /// Gauss-Jordan elimination. When `track` is given, the same row operations
    /// are applied to it.
    fn reduce_in_place(&mut self, mut track: Option<&mut BitMatrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(r, p);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                    if let Some(t) = track.as_deref_mut() {
                        t.xor_row_into(r, i);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some `x` with `M·x = b`, or `None` when inconsistent. Free variables are
    /// fixed to zero, so the answer is canonical.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        LinearSolver::new(self).solve(b)
    }

    /// Basis of `{v : M·v = 0}`; one vector per free column, in column order.
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|f| {
                let mut v = BitVec::zeros(self.cols);
                v.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        self.transpose().solve(v).is_some()
    }
}

/// Pre-factored solver for repeated right-hand sides of one matrix.
///
/// Stores the row transform `T` with `T·M = rref(M)`; each solve is then a
/// matrix-vector product plus a consistency check.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    cols: usize,
    transform: BitMatrix,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(m: &BitMatrix) -> Self {
        let mut reduced = m.clone();
        let mut transform = BitMatrix::identity(m.rows());
        let pivots = reduced.reduce_in_place(Some(&mut transform));
        LinearSolver {
            cols: m.cols(),
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether `M·x = b` has a solution.
    pub fn is_consistent(&self, b: &BitVec) -> bool {
        let c = self.transform.mul_vec(b);
        (self.pivots.len()..c.len()).all(|i| !c.get(i))
    }

    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(
            b.len(),
            self.transform.cols(),
            "rhs length must equal row count"
        );
        let c = self.transform.mul_vec(b);
        if (self.pivots.len()..c.len()).any(|i| c.get(i)) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            if c.get(i) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}
