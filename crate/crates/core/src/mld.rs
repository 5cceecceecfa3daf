//! One-step majority-logic decoding.
//!
//! For object `ℓ` with smallest recovery set `O` and a family of checks
//! orthogonal on `O`, the sets `O, I_1 \ O, …, I_J \ O` are pairwise
//! disjoint and each sums to `e_ℓ`. Each gives an estimate of `a_ℓ` as the
//! parity of the received word over it; the decoder takes the majority and
//! breaks ties toward 0.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::{disjoint_recovery_sets, SearchMode};
use crate::codes::{next_combination, LinearCode};
use crate::designs::binomial;
use crate::error::{Error, Result};
use crate::gf2::BinaryVector;
use crate::limits::Limits;
use crate::recovery::{column_sum, format_set};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteSet {
    pub object: usize,
    pub direct_positions: Vec<usize>,
    pub check_sums: Vec<Vec<usize>>,
}

impl VoteSet {
    /// Validates that every position set sums to `e_object` and that the
    /// sets are pairwise disjoint.
    pub fn from_checks(
        code: &LinearCode,
        object: usize,
        direct_positions: Vec<usize>,
        check_sums: Vec<Vec<usize>>,
    ) -> Result<VoteSet> {
        code.check_object(object)?;
        let target = BinaryVector::unit(code.k(), object);
        let mut used = BinaryVector::zeros(code.n());
        for set in std::iter::once(&direct_positions).chain(&check_sums) {
            let v = BinaryVector::from_indices(code.n(), set)?;
            if set.is_empty() || column_sum(code, set)? != target {
                return Err(Error::Precondition(format!(
                    "vote {} does not sum to e_{}",
                    format_set(set),
                    object + 1
                )));
            }
            if v.intersects(&used) {
                return Err(Error::Precondition(format!(
                    "vote {} overlaps an earlier vote",
                    format_set(set)
                )));
            }
            used.xor_assign(&v);
        }
        Ok(VoteSet {
            object,
            direct_positions,
            check_sums,
        })
    }

    /// Number of estimates, `1 + J`.
    pub fn votes(&self) -> usize {
        1 + self.check_sums.len()
    }

    pub fn j(&self) -> usize {
        self.check_sums.len()
    }

    fn sets(&self) -> impl Iterator<Item = &Vec<usize>> {
        std::iter::once(&self.direct_positions).chain(&self.check_sums)
    }

    /// The parity of `y` over each vote, direct vote first.
    pub fn estimates(&self, y: &BinaryVector) -> Vec<bool> {
        self.sets()
            .map(|s| s.iter().fold(false, |acc, &j| acc ^ y.get(j)))
            .collect()
    }

    /// Majority of the estimates; ties decode to 0.
    pub fn decode_symbol(&self, y: &BinaryVector) -> bool {
        let ones = self.estimates(y).iter().filter(|&&b| b).count();
        2 * ones > self.votes()
    }
}

/// Votes from a maximum orthogonal family on the best smallest recovery set.
pub fn build_votes(code: &LinearCode, object: usize, mode: SearchMode, limits: &Limits) -> Result<VoteSet> {
    let d = disjoint_recovery_sets(code, object, mode, limits)?;
    let mut sets = d.sets.into_iter().map(|s| s.servers);
    let direct = sets
        .next()
        .ok_or_else(|| Error::Internal("no direct vote".into()))?;
    VoteSet::from_checks(code, object, direct, sets.collect())
}

/// Decodes every message symbol with its own vote set.
pub fn decode_message(votes: &[VoteSet], y: &BinaryVector) -> Vec<bool> {
    votes.iter().map(|v| v.decode_symbol(y)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapabilityVerdict {
    pub t: usize,
    pub patterns_checked: u64,
    /// A failing error pattern of least weight (lexicographically first).
    pub counterexample: Option<Vec<usize>>,
}

impl CapabilityVerdict {
    pub fn corrects(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Whether the decoder recovers `a_ℓ` under error pattern `e` for every
/// codeword. Each vote errs iff `e` has odd weight on it, whatever was sent,
/// so decoding the all-zero word and the word with `a = e_ℓ` covers both
/// symbol values. Ties decode to 0, so a tie is correct for the first and
/// wrong for the second.
fn pattern_decodes(votes: &VoteSet, unit_word: &BinaryVector, e: &BinaryVector) -> bool {
    !votes.decode_symbol(e) && votes.decode_symbol(&unit_word.xor(e))
}

/// Exhausts all error patterns of weight at most `t`, lightest first.
pub fn verify_capability(
    code: &LinearCode,
    votes: &VoteSet,
    t: usize,
    limits: &Limits,
) -> Result<CapabilityVerdict> {
    let n = code.n();
    let t = t.min(n);
    let needed: u128 = (0..=t).map(|w| binomial(n, w)).sum();
    if needed > limits.error_pattern_cap as u128 {
        return Err(Error::CapExceeded {
            what: "error patterns",
            needed,
            cap: limits.error_pattern_cap,
        });
    }
    let unit_word = code.encode(&BinaryVector::unit(code.k(), votes.object))?;
    let mut checked = 0u64;
    for w in 0..=t {
        let patterns = patterns_of_weight(n, w);
        checked += patterns.len() as u64;
        let failure = patterns.par_iter().find_first(|p| {
            let e = BinaryVector::from_indices(n, p).expect("pattern within length");
            !pattern_decodes(votes, &unit_word, &e)
        });
        if let Some(p) = failure {
            return Ok(CapabilityVerdict {
                t,
                patterns_checked: checked,
                counterexample: Some(p.clone()),
            });
        }
    }
    Ok(CapabilityVerdict {
        t,
        patterns_checked: checked,
        counterexample: None,
    })
}

fn patterns_of_weight(n: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..w).collect();
    loop {
        out.push(combo.clone());
        if !next_combination(&mut combo, n) {
            break;
        }
    }
    out
}

/// Decoding success over error patterns of one weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternTally {
    pub weight: usize,
    pub decoded: u64,
    pub total: u64,
    pub sampled: bool,
    /// First failing pattern in enumeration (or sampling) order.
    pub first_failure: Option<Vec<usize>>,
}

/// All weight-`w` patterns, counting those decoded correctly.
pub fn tally_exhaustive(
    code: &LinearCode,
    votes: &VoteSet,
    weight: usize,
    limits: &Limits,
) -> Result<PatternTally> {
    let needed = binomial(code.n(), weight);
    if needed > limits.error_pattern_cap as u128 {
        return Err(Error::CapExceeded {
            what: "error patterns",
            needed,
            cap: limits.error_pattern_cap,
        });
    }
    let unit_word = code.encode(&BinaryVector::unit(code.k(), votes.object))?;
    let patterns = patterns_of_weight(code.n(), weight.min(code.n()));
    let outcomes: Vec<bool> = patterns
        .par_iter()
        .map(|p| {
            let e = BinaryVector::from_indices(code.n(), p).expect("pattern within length");
            pattern_decodes(votes, &unit_word, &e)
        })
        .collect();
    Ok(PatternTally {
        weight,
        decoded: outcomes.iter().filter(|&&ok| ok).count() as u64,
        total: patterns.len() as u64,
        sampled: false,
        first_failure: outcomes.iter().position(|&ok| !ok).map(|i| patterns[i].clone()),
    })
}

/// `samples` uniformly random weight-`w` patterns from a seeded ChaCha8.
pub fn tally_sampled(
    code: &LinearCode,
    votes: &VoteSet,
    weight: usize,
    samples: u64,
    seed: u64,
) -> Result<PatternTally> {
    if weight > code.n() {
        return Err(Error::InvalidParameters(format!(
            "error weight {weight} exceeds length {}",
            code.n()
        )));
    }
    let unit_word = code.encode(&BinaryVector::unit(code.k(), votes.object))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut decoded = 0;
    let mut first_failure = None;
    for _ in 0..samples {
        let mut positions = sample(&mut rng, code.n(), weight).into_vec();
        positions.sort_unstable();
        let e = BinaryVector::from_indices(code.n(), &positions)?;
        if pattern_decodes(votes, &unit_word, &e) {
            decoded += 1;
        } else if first_failure.is_none() {
            first_failure = Some(positions);
        }
    }
    Ok(PatternTally {
        weight,
        decoded,
        total: samples,
        sampled: true,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming, repetition, simplex};
    use rand::Rng;

    fn s(labels: &[usize]) -> Vec<usize> {
        labels.iter().map(|l| l - 1).collect()
    }

    fn worked_votes() -> (LinearCode, VoteSet) {
        let g = simplex(4).unwrap().evaluation;
        let v = VoteSet::from_checks(
            &g,
            3,
            s(&[1]),
            vec![s(&[12, 13]), s(&[2, 3]), s(&[4, 11, 14]), s(&[7, 9, 15])],
        )
        .unwrap();
        (g, v)
    }

    #[test]
    fn literal_votes_are_rejected() {
        let g = simplex(4).unwrap().evaluation;
        let err = VoteSet::from_checks(
            &g,
            3,
            s(&[1]),
            vec![s(&[12, 13]), s(&[2, 3]), s(&[4, 14]), s(&[7, 15])],
        )
        .unwrap_err();
        assert!(err.to_string().contains("{4,14}"), "{err}");
        assert!(VoteSet::from_checks(&g, 3, s(&[1]), vec![s(&[1, 2, 3])]).is_err());
    }

    #[test]
    fn worked_example_patterns() {
        let (g, v) = worked_votes();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..32 {
            let a = BinaryVector::from_u64(4, rng.gen_range(0..16));
            let x = g.encode(&a).unwrap();
            assert_eq!(v.decode_symbol(&x), a.get(3));
            let mut y = x.clone();
            for p in s(&[2, 4]) {
                y.flip(p);
            }
            let est = v.estimates(&y);
            let wrong: Vec<bool> = est.iter().map(|&e| e != a.get(3)).collect();
            assert_eq!(wrong, vec![false, false, true, true, false]);
            assert_eq!(v.decode_symbol(&y), a.get(3));
            let mut y = x;
            for p in s(&[2, 3, 4, 14]) {
                y.flip(p);
            }
            assert!(v.estimates(&y).iter().all(|&e| e == a.get(3)));
        }
    }

    #[test]
    fn worked_example_capability() {
        let (g, v) = worked_votes();
        let limits = Limits::default();
        let two = verify_capability(&g, &v, 2, &limits).unwrap();
        assert!(two.corrects());
        assert_eq!(two.patterns_checked, 1 + 15 + 105);
        let three = verify_capability(&g, &v, 3, &limits).unwrap();
        assert_eq!(three.counterexample.as_ref().map(Vec::len), Some(3));
    }

    #[test]
    fn maximum_family_votes() {
        let limits = Limits::default();
        let g = simplex(4).unwrap().evaluation;
        let v = build_votes(&g, 3, SearchMode::Exact, &limits).unwrap();
        assert_eq!(v.votes(), 8);
        assert!(verify_capability(&g, &v, 3, &limits).unwrap().corrects());
        let four = verify_capability(&g, &v, 4, &limits).unwrap();
        assert_eq!(four.counterexample.map(|c| c.len()), Some(4));

        let h = hamming(4).unwrap();
        let v = build_votes(&h, 0, SearchMode::Exact, &limits).unwrap();
        assert_eq!(v.votes(), 2);

        let r = repetition(5).unwrap();
        let v = build_votes(&r, 0, SearchMode::Exact, &limits).unwrap();
        assert_eq!(v.votes(), 5);
        assert!(v.sets().all(|s| s.len() == 1));
        assert!(verify_capability(&r, &v, 2, &limits).unwrap().corrects());
        assert!(!verify_capability(&r, &v, 3, &limits).unwrap().corrects());
    }

    #[test]
    fn ties_decode_to_zero() {
        let r = repetition(4).unwrap();
        let v = VoteSet::from_checks(&r, 0, vec![0], vec![vec![1], vec![2], vec![3]]).unwrap();
        assert!(!v.decode_symbol(&BinaryVector::from_indices(4, &[0, 1]).unwrap()));
        assert!(v.decode_symbol(&BinaryVector::from_indices(4, &[0, 1, 2]).unwrap()));
    }

    #[test]
    fn full_message_and_tallies() {
        let limits = Limits::default();
        let h = hamming(3).unwrap();
        let votes: Vec<VoteSet> = (0..h.k())
            .map(|l| build_votes(&h, l, SearchMode::Exact, &limits).unwrap())
            .collect();
        for m in 0..16u64 {
            let a = BinaryVector::from_u64(4, m);
            let x = h.encode(&a).unwrap();
            let decoded = decode_message(&votes, &x);
            assert_eq!(BinaryVector::from_bools(&decoded), a);
        }
        let (g, v) = worked_votes();
        let t = tally_exhaustive(&g, &v, 3, &limits).unwrap();
        assert_eq!(t.total, 455);
        assert!(t.decoded < t.total && t.decoded > 0);
        assert_eq!(t.first_failure.as_ref().map(Vec::len), Some(3));
        let s1 = tally_sampled(&g, &v, 3, 200, 1).unwrap();
        let s2 = tally_sampled(&g, &v, 3, 200, 1).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn pattern_cap() {
        let (g, v) = worked_votes();
        let limits = Limits {
            error_pattern_cap: 10,
            ..Limits::default()
        };
        assert!(matches!(
            verify_capability(&g, &v, 2, &limits),
            Err(Error::CapExceeded { .. })
        ));
    }
}
