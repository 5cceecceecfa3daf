//! Binary linear codes bound to a concrete generator matrix.
//!
//! Service-rate quantities depend on which column each server stores, so a
//! [`LinearCode`] is never silently normalized: [`LinearCode::systematic_form`]
//! exists but callers opt in to it.

mod families;
pub mod gm;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf2::{enumerate_span, BinaryMatrix, BinaryVector};

pub(crate) use families::next_combination;
pub use families::{
    hamming, random_code, reed_muller, repetition, simplex, simplex_evaluation, spc, SimplexForms,
    RANDOM_CODE_PRNG,
};

/// Weight distribution `A_0..A_n` of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub coefficients: Vec<u128>,
}

impl WeightEnumerator {
    /// Smallest nonzero weight that occurs, if any.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &a)| a > 0)
            .map(|(w, _)| w)
    }

    pub fn total(&self) -> u128 {
        self.coefficients.iter().sum()
    }
}

/// A binary `[n, k]` code given by a full-rank `k × n` generator matrix,
/// with lazily cached distance data.
#[derive(Debug)]
pub struct LinearCode {
    generator: BinaryMatrix,
    dual_basis: Vec<BinaryVector>,
    systematic_map: Vec<Option<usize>>,
    enumerator: OnceLock<WeightEnumerator>,
    dual_enumerator: OnceLock<WeightEnumerator>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        LinearCode {
            generator: self.generator.clone(),
            dual_basis: self.dual_basis.clone(),
            systematic_map: self.systematic_map.clone(),
            enumerator: self.enumerator.clone(),
            dual_enumerator: self.dual_enumerator.clone(),
        }
    }
}

impl LinearCode {
    /// Wraps a generator matrix. Every row is one stored data object, so a
    /// rank-deficient matrix is rejected, naming the first dependent row.
    pub fn from_generator(generator: BinaryMatrix) -> Result<Self> {
        let mut echelon: Vec<(usize, BinaryVector)> = Vec::new();
        for (i, row) in generator.row_vectors().iter().enumerate() {
            let mut v = row.clone();
            for (lead, e) in &echelon {
                if v.get(*lead) {
                    v.xor_assign(e);
                }
            }
            let lead = v.iter_ones().next();
            match lead {
                Some(lead) => {
                    for (_, e) in echelon.iter_mut() {
                        if e.get(lead) {
                            e.xor_assign(&v);
                        }
                    }
                    echelon.push((lead, v));
                }
                None => return Err(Error::RankDeficient { row: i + 1 }),
            };
        }
        let dual_basis = generator.nullspace_basis();
        let k = generator.rows();
        let columns = generator.columns();
        let systematic_map = (0..k)
            .map(|l| {
                let unit = BinaryVector::unit(k, l);
                columns.iter().position(|c| *c == unit)
            })
            .collect();
        Ok(LinearCode {
            generator,
            dual_basis,
            systematic_map,
            enumerator: OnceLock::new(),
            dual_enumerator: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    /// Basis of the dual code, `n − k` vectors.
    pub fn dual_basis(&self) -> &[BinaryVector] {
        &self.dual_basis
    }

    /// Column `j` of the generator (0-based).
    pub fn column(&self, j: usize) -> BinaryVector {
        self.generator.column(j)
    }

    /// The first column equal to `e_object`, if any (0-based in and out).
    pub fn systematic_column(&self, object: usize) -> Option<usize> {
        self.systematic_map.get(object).copied().flatten()
    }

    pub fn is_systematic(&self) -> bool {
        self.systematic_map.iter().all(Option::is_some)
    }

    /// Codeword `a · G` for message `a`.
    pub fn encode(&self, message: &BinaryVector) -> Result<BinaryVector> {
        self.generator.combine_rows(message)
    }

    /// `G · xᵀ = 0`.
    pub fn is_dual_codeword(&self, x: &BinaryVector) -> Result<bool> {
        Ok(self.generator.mul_vec(x)?.is_zero())
    }

    pub fn check_object(&self, object: usize) -> Result<()> {
        if object >= self.k() {
            Err(Error::IndexOutOfRange {
                index: object + 1,
                bound: self.k(),
            })
        } else {
            Ok(())
        }
    }

    /// The `[n, n − k]` dual code, generated by the dual basis.
    pub fn dual(&self) -> Result<LinearCode> {
        if self.dual_basis.is_empty() {
            return Err(Error::TrivialDual { n: self.n() });
        }
        LinearCode::from_generator(BinaryMatrix::from_rows(self.dual_basis.clone())?)
    }

    /// True when both generators span the same space.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        if self.n() != other.n() || self.k() != other.k() {
            return false;
        }
        match self.generator.vstack(&other.generator) {
            Ok(stacked) => stacked.rank() == self.k(),
            Err(_) => false,
        }
    }

    /// All `2^k` codewords, zero first.
    pub fn codewords(&self, cap: u64) -> Result<Vec<BinaryVector>> {
        Ok(enumerate_span(self.generator.row_vectors(), self.n(), cap)?.collect())
    }

    /// All `2^(n−k)` dual codewords, zero first.
    pub fn dual_codewords(&self, cap: u64) -> Result<Vec<BinaryVector>> {
        Ok(enumerate_span(&self.dual_basis, self.n(), cap)?.collect())
    }

    /// Weight distribution, enumerating whichever of the code and its dual is
    /// smaller and applying the MacWilliams transform in the second case.
    pub fn weight_enumerator(&self, cap: u64) -> Result<WeightEnumerator> {
        if let Some(e) = self.enumerator.get() {
            return Ok(e.clone());
        }
        let e = if self.k() <= self.n() - self.k() {
            direct_enumerator(self.generator.row_vectors(), self.n(), cap)?
        } else {
            let dual = direct_enumerator(&self.dual_basis, self.n(), cap)?;
            macwilliams(&dual, self.n(), self.n() - self.k())
        };
        Ok(self.enumerator.get_or_init(|| e).clone())
    }

    /// Weight distribution of the dual code.
    pub fn dual_weight_enumerator(&self, cap: u64) -> Result<WeightEnumerator> {
        if let Some(e) = self.dual_enumerator.get() {
            return Ok(e.clone());
        }
        let e = if self.n() - self.k() <= self.k() {
            direct_enumerator(&self.dual_basis, self.n(), cap)?
        } else {
            let code = direct_enumerator(self.generator.row_vectors(), self.n(), cap)?;
            macwilliams(&code, self.n(), self.k())
        };
        Ok(self.dual_enumerator.get_or_init(|| e).clone())
    }

    /// Weight distribution by enumerating the code itself (no transform).
    pub fn weight_enumerator_direct(&self, cap: u64) -> Result<WeightEnumerator> {
        direct_enumerator(self.generator.row_vectors(), self.n(), cap)
    }

    pub fn min_distance(&self, cap: u64) -> Result<usize> {
        self.weight_enumerator(cap)?
            .min_nonzero_weight()
            .ok_or_else(|| Error::Internal("code of dimension >= 1 has no nonzero word".into()))
    }

    /// Minimum weight of a nonzero dual codeword; `None` when `k = n`.
    pub fn dual_distance(&self, cap: u64) -> Result<Option<usize>> {
        if self.dual_basis.is_empty() {
            return Ok(None);
        }
        Ok(self.dual_weight_enumerator(cap)?.min_nonzero_weight())
    }

    /// Codewords of weight exactly `weight`, optionally only those with a one
    /// at `through`, sorted by support. The zero word is never returned.
    pub fn codewords_of_weight(
        &self,
        weight: usize,
        through: Option<usize>,
        cap: u64,
    ) -> Result<Vec<BinaryVector>> {
        if let Some(j) = through {
            if j >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: j + 1,
                    bound: self.n(),
                });
            }
        }
        if weight == 0 {
            return Ok(Vec::new());
        }
        let mut out: Vec<BinaryVector> = enumerate_span(self.generator.row_vectors(), self.n(), cap)?
            .filter(|w| w.weight() == weight && through.is_none_or(|j| w.get(j)))
            .collect();
        out.sort_by(BinaryVector::cmp_by_support);
        Ok(out)
    }

    /// Supports (0-based) of the codewords of weight `weight`.
    pub fn min_weight_codewords(
        &self,
        weight: usize,
        through: Option<usize>,
        cap: u64,
    ) -> Result<Vec<Vec<usize>>> {
        Ok(self
            .codewords_of_weight(weight, through, cap)?
            .iter()
            .map(BinaryVector::support)
            .collect())
    }

    /// An equivalent generator of the form `[I_k | P]` obtained by row
    /// reduction plus a column permutation. Column `j` of the result is column
    /// `perm[j]` of `self`. Reordering columns moves objects between servers,
    /// so analyzing the result answers a different storage question.
    pub fn systematic_form(&self) -> Result<(LinearCode, Vec<usize>)> {
        let (reduced, pivots) = self.generator.rref();
        let mut perm = pivots.clone();
        perm.extend((0..self.n()).filter(|j| !pivots.contains(j)));
        let code = LinearCode::from_generator(reduced.permute_columns(&perm)?)?;
        Ok((code, perm))
    }
}

fn direct_enumerator(basis: &[BinaryVector], n: usize, cap: u64) -> Result<WeightEnumerator> {
    let mut coefficients = vec![0u128; n + 1];
    for w in enumerate_span(basis, n, cap)? {
        coefficients[w.weight()] += 1;
    }
    Ok(WeightEnumerator { coefficients })
}

/// Krawtchouk polynomial `K_j(i)` for length `n`.
fn krawtchouk(n: usize, j: usize, i: usize) -> BigInt {
    let mut total = BigInt::zero();
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let term = binomial(i, s) * binomial(n - i, j - s);
        if s % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for t in 0..r {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// Weight distribution of the dual of a code with distribution `other`,
/// where `other` has dimension `dim` and length `n`:
/// `A_j = 2^(−dim) Σ_i B_i K_j(i)`.
pub fn macwilliams(other: &WeightEnumerator, n: usize, dim: usize) -> WeightEnumerator {
    let scale = BigInt::one() << dim;
    let coefficients = (0..=n)
        .map(|j| {
            let sum: BigInt = other
                .coefficients
                .iter()
                .enumerate()
                .filter(|(_, &b)| b > 0)
                .map(|(i, &b)| BigInt::from(b) * krawtchouk(n, j, i))
                .sum();
            debug_assert!(!sum.is_negative());
            debug_assert!((&sum % &scale).is_zero());
            (sum / &scale).to_u128().expect("dual weight count fits in u128")
        })
        .collect();
    WeightEnumerator { coefficients }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::DEFAULT_SPAN_CAP as CAP;

    #[test]
    fn from_generator_examples() {
        let c = LinearCode::from_generator(simplex_evaluation(4).unwrap()).unwrap();
        assert_eq!((c.n(), c.k()), (15, 4));
        assert_eq!(c.dual_basis().len(), 11);

        let id = LinearCode::from_generator(BinaryMatrix::identity(3).unwrap()).unwrap();
        assert_eq!((id.n(), id.k()), (3, 3));
        assert!(id.dual_basis().is_empty());
        assert_eq!(id.min_distance(CAP).unwrap(), 1);
        assert_eq!(id.dual_distance(CAP).unwrap(), None);

        let rep = BinaryMatrix::from_strs(&["1100", "0111", "1100"]).unwrap();
        assert_eq!(
            LinearCode::from_generator(rep).unwrap_err(),
            Error::RankDeficient { row: 3 }
        );
        let sum = BinaryMatrix::from_strs(&["1100", "0110", "1010"]).unwrap();
        assert_eq!(
            LinearCode::from_generator(sum).unwrap_err(),
            Error::RankDeficient { row: 3 }
        );
    }

    #[test]
    fn dual_examples() {
        let h = hamming(4).unwrap();
        let d = h.dual().unwrap();
        assert_eq!((d.n(), d.k()), (15, 4));
        assert_eq!(d.min_distance(CAP).unwrap(), 8);
        let s = LinearCode::from_generator(simplex_evaluation(4).unwrap()).unwrap();
        assert!(d.same_code(&s));

        let r = repetition(6).unwrap().dual().unwrap();
        assert_eq!((r.n(), r.k(), r.min_distance(CAP).unwrap()), (6, 5, 2));

        let self_dual = LinearCode::from_generator(BinaryMatrix::from_strs(&["11"]).unwrap()).unwrap();
        assert!(self_dual.dual().unwrap().same_code(&self_dual));

        let id = LinearCode::from_generator(BinaryMatrix::identity(2).unwrap()).unwrap();
        assert_eq!(id.dual().unwrap_err(), Error::TrivialDual { n: 2 });
    }

    #[test]
    fn dual_of_dual() {
        for code in [hamming(3).unwrap(), reed_muller(1, 4).unwrap(), spc(5).unwrap()] {
            assert!(code.dual().unwrap().dual().unwrap().same_code(&code));
        }
    }

    #[test]
    fn enumerator_examples() {
        let s = LinearCode::from_generator(simplex_evaluation(4).unwrap()).unwrap();
        let e = s.weight_enumerator(CAP).unwrap();
        assert_eq!(e.coefficients[0], 1);
        assert_eq!(e.coefficients[8], 15);
        assert_eq!(e.total(), 16);

        let r = repetition(5).unwrap();
        assert_eq!(
            r.weight_enumerator(CAP).unwrap().coefficients,
            vec![1, 0, 0, 0, 0, 1]
        );

        // Frozen from direct enumeration of all 2^11 words.
        let h = hamming(4).unwrap();
        let e = h.weight_enumerator(CAP).unwrap();
        assert_eq!(e.coefficients[3], 35);
        assert_eq!(e, h.weight_enumerator_direct(CAP).unwrap());
    }

    #[test]
    fn enumerator_cap_uses_smaller_side() {
        // Hamming(4): 2^11 words, but the dual side has only 2^4.
        let h = hamming(4).unwrap();
        assert!(h.weight_enumerator(16).is_ok());
        assert!(h.weight_enumerator_direct(16).is_err());
        let r = hamming(5).unwrap();
        assert!(matches!(
            r.weight_enumerator(16),
            Err(Error::SpanTooLarge {
                log2_size: 5,
                cap: 16
            })
        ));
    }

    #[test]
    fn distances() {
        let h = hamming(4).unwrap();
        assert_eq!(h.min_distance(CAP).unwrap(), 3);
        assert_eq!(h.dual_distance(CAP).unwrap(), Some(8));
        let s = simplex(4).unwrap().systematic;
        assert_eq!(s.min_distance(CAP).unwrap(), 8);
        assert_eq!(s.dual_distance(CAP).unwrap(), Some(3));
        let p = spc(4).unwrap();
        assert_eq!(p.min_distance(CAP).unwrap(), 2);
        assert_eq!(p.dual_distance(CAP).unwrap(), Some(4));
    }

    #[test]
    fn codewords_of_weight() {
        let h = hamming(4).unwrap();
        assert!(h.min_weight_codewords(0, None, CAP).unwrap().is_empty());
        assert_eq!(h.min_weight_codewords(3, None, CAP).unwrap().len(), 35);
        assert!(h.min_weight_codewords(3, Some(15), CAP).is_err());
    }

    #[test]
    fn systematic_form_permutation() {
        let h = hamming(4).unwrap();
        let (sys, perm) = h.systematic_form().unwrap();
        for l in 0..sys.k() {
            assert_eq!(sys.systematic_column(l), Some(l));
        }
        assert!(sys.generator().permute_columns(&invert(&perm)).is_ok());

        let id = LinearCode::from_generator(BinaryMatrix::identity(4).unwrap()).unwrap();
        let (_, perm) = id.systematic_form().unwrap();
        assert_eq!(perm, vec![0, 1, 2, 3]);

        let r = random_code(10, 4, 1).unwrap();
        let (sys, perm) = r.systematic_form().unwrap();
        for l in 0..4 {
            assert_eq!(sys.column(l), BinaryVector::unit(4, l));
        }
        // Same code after undoing the column permutation.
        let back =
            LinearCode::from_generator(sys.generator().permute_columns(&invert(&perm)).unwrap()).unwrap();
        assert!(back.same_code(&r));
    }

    fn invert(perm: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; perm.len()];
        for (j, &p) in perm.iter().enumerate() {
            inv[p] = j;
        }
        inv
    }
}
