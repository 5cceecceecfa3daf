//! Dense linear algebra over GF(2).
//!
//! Vectors and matrix rows are packed 64 bits per word, least significant
//! bit first. Bits past the logical length of a vector are always zero, so
//! equality, hashing and weight can work word-by-word.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A bit-packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        BinaryVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Standard basis vector with a one at `index` (0-based).
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector with ones at the given 0-based positions.
    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len);
        for &i in indices {
            if i >= len {
                return Err(Error::IndexOutOfRange {
                    index: i + 1,
                    bound: len,
                });
            }
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `mask`, bit `j` becoming position `j`.
    pub fn from_u64(len: usize, mask: u64) -> Self {
        assert!(len <= WORD_BITS);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask & low_mask(len);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BinaryVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BinaryVector) -> BinaryVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BinaryVector) -> BinaryVector {
        debug_assert_eq!(self.len, other.len);
        BinaryVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Removes the ones of `other` from `self` (set difference).
    pub fn and_not(&self, other: &BinaryVector) -> BinaryVector {
        debug_assert_eq!(self.len, other.len);
        BinaryVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BinaryVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Support containment: every one of `self` is a one of `other`.
    pub fn is_subset_of(&self, other: &BinaryVector) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BinaryVector) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// 0-based positions of the ones, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    /// Orders by weight, then lexicographically by sorted support.
    pub fn cmp_by_support(&self, other: &BinaryVector) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.iter_ones().cmp(other.iter_ones()))
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn low_mask(bits: usize) -> u64 {
    if bits >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// A bit-packed matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BinaryVector>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        Ok(BinaryMatrix {
            cols,
            rows: vec![BinaryVector::zeros(cols); rows],
        })
    }

    pub fn identity(size: usize) -> Result<Self> {
        let mut m = Self::zeros(size, size)?;
        for i in 0..size {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<BinaryVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, BinaryVector::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix {
                rows: rows.len(),
                cols,
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(BinaryMatrix { cols, rows })
    }

    /// Parses rows written as strings of `0`/`1` characters.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(line, r)| {
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Parse {
                            line: line + 1,
                            message: format!("unexpected character {other:?}"),
                        }),
                    })
                    .collect::<Result<Vec<bool>>>()
                    .map(|bits| BinaryVector::from_bools(&bits))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn from_columns(columns: &[BinaryVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, BinaryVector::len);
        let mut m = Self::zeros(rows, columns.len())?;
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BinaryVector {
        &self.rows[r]
    }

    pub fn row_vectors(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BinaryVector {
        let mut v = BinaryVector::zeros(self.rows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BinaryVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// `M · xᵀ`, a vector of length `rows`.
    pub fn mul_vec(&self, x: &BinaryVector) -> Result<BinaryVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = BinaryVector::zeros(self.rows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `u · M`, the combination of rows selected by `u`.
    pub fn combine_rows(&self, u: &BinaryVector) -> Result<BinaryVector> {
        if u.len() != self.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                found: u.len(),
            });
        }
        let mut out = BinaryVector::zeros(self.cols);
        for i in u.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        BinaryMatrix {
            cols: self.rows(),
            rows: self.columns(),
        }
    }

    /// Reorders columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BinaryMatrix> {
        if perm.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: perm.len(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = BinaryVector::zeros(self.cols);
                for (j, &src) in perm.iter().enumerate() {
                    if row.get(src) {
                        out.set(j, true);
                    }
                }
                out
            })
            .collect();
        Ok(BinaryMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BinaryMatrix {
            cols: self.cols,
            rows,
        })
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row-echelon form and its pivot columns (strictly increasing).
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            BinaryMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    /// Basis of `{x : M·xᵀ = 0}`, one vector per non-pivot column.
    pub fn nullspace_basis(&self) -> Vec<BinaryVector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BinaryVector::zeros(self.cols);
                x.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.get(i, f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// Some `x` with `M·xᵀ = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &BinaryVector) -> Result<Option<BinaryVector>> {
        if b.len() != self.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                found: b.len(),
            });
        }
        let mut rows = self.rows.clone();
        let mut rhs: Vec<bool> = (0..self.rows()).map(|i| b.get(i)).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            rhs.swap(r, p);
            let pivot_row = rows[r].clone();
            let pivot_rhs = rhs[r];
            for i in 0..rows.len() {
                if i != r && rows[i].get(c) {
                    rows[i].xor_assign(&pivot_row);
                    rhs[i] ^= pivot_rhs;
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rhs[r..].iter().any(|&bit| bit) {
            return Ok(None);
        }
        let mut x = BinaryVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if rhs[i] {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Iterator over every element of a span, the zero vector first.
///
/// Successive elements differ by one basis vector (binary reflected Gray
/// code), so each step costs a single XOR.
#[derive(Debug, Clone)]
pub struct SpanIter<'a> {
    basis: &'a [BinaryVector],
    current: BinaryVector,
    step: u64,
    total: u64,
}

impl Iterator for SpanIter<'_> {
    type Item = BinaryVector;

    fn next(&mut self) -> Option<BinaryVector> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[flip]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanIter<'_> {}

/// Enumerates the `2^|basis|` elements of `span(basis)` in `F_2^len`.
///
/// Refuses when the span exceeds `cap` vectors, and when the basis vectors
/// have the wrong length or are linearly dependent (duplicates would make the
/// stream repeat elements).
pub fn enumerate_span(basis: &[BinaryVector], len: usize, cap: u64) -> Result<SpanIter<'_>> {
    if let Some(bad) = basis.iter().find(|b| b.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    let dim = basis.len();
    if dim >= 64 || (1u64 << dim) > cap {
        return Err(Error::SpanTooLarge { log2_size: dim, cap });
    }
    if dim > 0 {
        let rank = BinaryMatrix::from_rows(basis.to_vec())?.rank();
        if rank < dim {
            return Err(Error::DependentBasis { rank, count: dim });
        }
    }
    Ok(SpanIter {
        basis,
        current: BinaryVector::zeros(len),
        step: 0,
        total: 1u64 << dim,
    })
}

/// Iterates a span starting from `offset` instead of zero (a coset).
pub(crate) fn enumerate_coset<'a>(
    offset: &BinaryVector,
    basis: &'a [BinaryVector],
    cap: u64,
) -> Result<impl Iterator<Item = BinaryVector> + 'a> {
    let offset = offset.clone();
    Ok(enumerate_span(basis, offset.len(), cap)?.map(move |v| v.xor(&offset)))
}
