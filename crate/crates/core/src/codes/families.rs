//! Constructors for standard code families.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};

/// PRNG behind [`random_code`]. Seeds reproduce only under this exact
/// algorithm and seeding scheme.
pub const RANDOM_CODE_PRNG: &str = "ChaCha8 (rand_chacha 0.3, seed_from_u64)";

/// The `r × (2^r − 1)` matrix whose column `j` (1-based) is the binary
/// expansion of `j`, most significant bit in row 1.
pub fn simplex_evaluation(r: usize) -> Result<BinaryMatrix> {
    if !(2..=20).contains(&r) {
        return Err(Error::InvalidParameters(format!(
            "simplex/hamming order must be in 2..=20, got {r}"
        )));
    }
    let n = (1usize << r) - 1;
    let mut m = BinaryMatrix::zeros(r, n)?;
    for j in 1..=n {
        for i in 0..r {
            if (j >> (r - 1 - i)) & 1 == 1 {
                m.set(i, j - 1, true);
            }
        }
    }
    Ok(m)
}

/// Both generator forms of the `[2^r − 1, r, 2^(r−1)]` simplex code.
#[derive(Debug, Clone)]
pub struct SimplexForms {
    /// Column `j` is the binary expansion of `j`.
    pub evaluation: LinearCode,
    /// `[I_r | P]`, the systematic form of the evaluation generator.
    pub systematic: LinearCode,
}

pub fn simplex(r: usize) -> Result<SimplexForms> {
    let evaluation = LinearCode::from_generator(simplex_evaluation(r)?)?;
    let (systematic, _) = evaluation.systematic_form()?;
    Ok(SimplexForms {
        evaluation,
        systematic,
    })
}

/// The `[2^r − 1, 2^r − r − 1, 3]` Hamming code, as the reduced row-echelon
/// generator of the dual of [`simplex_evaluation`].
///
/// Every object has an identity column (its pivot) and coordinate 1 carries
/// `e_1`. The pivots are not all in front: for `r = 4` they are columns
/// 1..=10 and 12. Use [`LinearCode::systematic_form`] for `[I | P]`.
pub fn hamming(r: usize) -> Result<LinearCode> {
    let parity = simplex_evaluation(r)?;
    let basis = parity.nullspace_basis();
    let (reduced, _) = BinaryMatrix::from_rows(basis)?.rref();
    LinearCode::from_generator(reduced)
}

/// The `[n, 1, n]` repetition code.
pub fn repetition(n: usize) -> Result<LinearCode> {
    if n == 0 {
        return Err(Error::InvalidParameters("repetition length must be >= 1".into()));
    }
    let mut m = BinaryMatrix::zeros(1, n)?;
    for j in 0..n {
        m.set(0, j, true);
    }
    LinearCode::from_generator(m)
}

/// The systematic `[n, n − 1, 2]` single parity-check code `[I | 1]`.
pub fn spc(n: usize) -> Result<LinearCode> {
    if n < 2 {
        return Err(Error::InvalidParameters(
            "single parity-check length must be >= 2".into(),
        ));
    }
    let mut m = BinaryMatrix::zeros(n - 1, n)?;
    for i in 0..n - 1 {
        m.set(i, i, true);
        m.set(i, n - 1, true);
    }
    LinearCode::from_generator(m)
}

/// `RM(r, m)` by monomial evaluation.
///
/// Rows are the monomials of degree at most `r` in `x_1..x_m`, ordered by
/// degree and then lexicographically by variable set (so row 1 is the
/// constant). Column `v` (0-based) evaluates at the point whose `x_i` is bit
/// `m − i` of `v`.
pub fn reed_muller(r: usize, m: usize) -> Result<LinearCode> {
    if r > m || m > 20 {
        return Err(Error::InvalidParameters(format!(
            "reed-muller needs 0 <= r <= m <= 20, got r = {r}, m = {m}"
        )));
    }
    let n = 1usize << m;
    let mut monomials: Vec<Vec<usize>> = Vec::new();
    for degree in 0..=r {
        let mut combo: Vec<usize> = (0..degree).collect();
        loop {
            monomials.push(combo.clone());
            if !next_combination(&mut combo, m) {
                break;
            }
        }
    }
    let rows = monomials
        .iter()
        .map(|vars| {
            let mut row = BinaryVector::zeros(n);
            for v in 0..n {
                if vars.iter().all(|&i| (v >> (m - 1 - i)) & 1 == 1) {
                    row.set(v, true);
                }
            }
            row
        })
        .collect();
    LinearCode::from_generator(BinaryMatrix::from_rows(rows)?)
}

/// Advances a sorted k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A uniformly random full-rank `k × n` generator, deterministic per seed.
///
/// Each row is filled from consecutive `next_u64()` outputs of
/// [`RANDOM_CODE_PRNG`], 64 columns per word with column `j` at bit `j % 64`
/// of word `j / 64`. Whole matrices are redrawn until full rank.
pub fn random_code(n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "random code needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<BinaryVector> = (0..k)
            .map(|_| {
                let mut row = BinaryVector::zeros(n);
                for start in (0..n).step_by(64) {
                    let word = rng.next_u64();
                    for bit in 0..(n - start).min(64) {
                        if (word >> bit) & 1 == 1 {
                            row.set(start + bit, true);
                        }
                    }
                }
                row
            })
            .collect();
        let m = BinaryMatrix::from_rows(rows)?;
        if m.rank() == k {
            return LinearCode::from_generator(m);
        }
    }
}
