//! Independent brute-force computations, checked against the library and
//! used to freeze the derived constants the unit tests rely on.

use srrlab::checks::{max_orthogonal_family, parity_checks_through, SearchMode};
use srrlab::codes::{hamming, macwilliams, random_code, simplex, LinearCode};
use srrlab::limits::Limits;
use srrlab::mld::{build_votes, tally_exhaustive};
use srrlab::rational::Rational;
use srrlab::srr::{feasible, max_demand};

fn masks(code: &LinearCode) -> Vec<u64> {
    code.generator()
        .row_vectors()
        .iter()
        .map(|v| v.iter_ones().fold(0, |acc, j| acc | 1 << j))
        .collect()
}

fn codeword_masks(code: &LinearCode) -> Vec<u64> {
    let rows = masks(code);
    (0..1u64 << rows.len())
        .map(|m| {
            (0..rows.len())
                .filter(|i| m >> i & 1 == 1)
                .fold(0, |acc, i| acc ^ rows[i])
        })
        .collect()
}

fn dual_masks(code: &LinearCode) -> Vec<u64> {
    let rows = masks(code);
    (0..1u64 << code.n())
        .filter(|&x| rows.iter().all(|r| (r & x).count_ones() % 2 == 0))
        .collect()
}

fn distribution(words: &[u64], n: usize) -> Vec<u128> {
    let mut a = vec![0u128; n + 1];
    for w in words {
        a[w.count_ones() as usize] += 1;
    }
    a
}

#[test]
fn weight_enumerators_match_enumeration_and_macwilliams() {
    for seed in 0..40 {
        let n = 3 + (seed % 10) as usize;
        let k = 1 + (seed as usize / 10) % n;
        let code = random_code(n, k, seed).unwrap();
        let we = code.weight_enumerator(1 << 16).unwrap();
        let dual = code.dual_weight_enumerator(1 << 16).unwrap();
        assert_eq!(we.coefficients, distribution(&codeword_masks(&code), n));
        assert_eq!(dual.coefficients, distribution(&dual_masks(&code), n));
        assert_eq!(macwilliams(&we, n, k), dual);
        assert_eq!(macwilliams(&dual, n, n - k), we);
    }
}

#[test]
fn hamming_15_distribution() {
    let h = hamming(4).unwrap();
    let expected = distribution(&codeword_masks(&h), 15);
    assert_eq!(
        expected,
        vec![1, 0, 0, 35, 105, 168, 280, 435, 435, 280, 168, 105, 35, 0, 0, 1]
    );
    assert_eq!(h.weight_enumerator(1 << 16).unwrap().coefficients, expected);
}

#[test]
fn simplex_checks_through_first_coordinate() {
    let code = simplex(4).unwrap().evaluation;
    let through: Vec<u64> = dual_masks(&code)
        .into_iter()
        .filter(|x| x & 1 == 1 && *x != 1)
        .collect();
    assert_eq!(through.len(), 1024);
    let lib = parity_checks_through(&code, &[0], &Limits::default()).unwrap();
    assert_eq!(lib.len(), through.len());
    // Residuals outside {1} need at least two positions each, so at most 7
    // disjoint ones fit in the remaining 14 coordinates; greedy packing of
    // weight-3 checks finds 7.
    let mut used = 1u64;
    let mut family = 0;
    for x in through.iter().filter(|x| x.count_ones() == 3) {
        if x & used == 1 {
            used |= x;
            family += 1;
        }
    }
    assert_eq!(family, 7);
    let fam = max_orthogonal_family(&code, &[0], SearchMode::Exact, &Limits::default()).unwrap();
    assert_eq!(fam.j(), 7);
}

/// Majority vote recomputed from raw bit masks.
fn decodes(vote_masks: &[u64], codeword: u64, error: u64, bit: bool) -> bool {
    let y = codeword ^ error;
    let ones = vote_masks
        .iter()
        .filter(|v| (y & **v).count_ones() % 2 == 1)
        .count();
    (2 * ones > vote_masks.len()) == bit
}

#[test]
fn simplex_max_family_tallies() {
    let code = simplex(4).unwrap().evaluation;
    let limits = Limits::default();
    let votes = build_votes(&code, 3, SearchMode::Exact, &limits).unwrap();
    let mut vote_masks = vec![votes.direct_positions.iter().fold(0u64, |a, j| a | 1 << j)];
    vote_masks.extend(
        votes
            .check_sums
            .iter()
            .map(|s| s.iter().fold(0u64, |a, j| a | 1 << j)),
    );
    let unit = codeword_masks(&code)[1 << 3];
    let mut frozen = Vec::new();
    for w in 1..=5u32 {
        let (mut ok, mut total) = (0u64, 0u64);
        for e in (0..1u64 << 15).filter(|e| e.count_ones() == w) {
            total += 1;
            if decodes(&vote_masks, 0, e, false) && decodes(&vote_masks, unit, e, true) {
                ok += 1;
            }
        }
        let t = tally_exhaustive(&code, &votes, w as usize, &limits).unwrap();
        assert_eq!((t.decoded, t.total), (ok, total));
        frozen.push(ok);
    }
    assert_eq!(frozen, vec![15, 105, 455, 525, 1771]);
}

#[test]
fn demand_beyond_max_is_infeasible() {
    let h = hamming(4).unwrap();
    let limits = Limits::default();
    assert_eq!(
        max_demand(&h, 0, &limits).unwrap().value,
        Rational::from_integer(3)
    );
    let mut demand = vec![Rational::zero(); 11];
    demand[0] = Rational::new(31, 10);
    assert!(!feasible(&h, &demand, &limits).unwrap().is_feasible());
    demand[0] = Rational::from_integer(3);
    assert!(feasible(&h, &demand, &limits).unwrap().is_feasible());
}

#[test]
fn distances_match_enumeration() {
    for seed in 100..140 {
        let n = 4 + (seed % 9) as usize;
        let k = 1 + (seed as usize) % (n - 1);
        let code = random_code(n, k, seed).unwrap();
        let d = codeword_masks(&code)
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .min()
            .unwrap();
        let d_dual = dual_masks(&code)
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .min();
        assert_eq!(code.min_distance(1 << 16).unwrap(), d as usize);
        assert_eq!(code.dual_distance(1 << 16).unwrap(), d_dual.map(|x| x as usize));
    }
}
