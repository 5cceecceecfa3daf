// One-step majority-logic decoding of a_4 in the [15, 4] simplex code,
// first with a hand-picked family of five votes and then with a maximum
// orthogonal family.

use std::fmt::Write;

use srrlab::checks::SearchMode;
use srrlab::codes::simplex;
use srrlab::error::Result;
use srrlab::gf2::BinaryVector;
use srrlab::limits::Limits;
use srrlab::mld::{build_votes, tally_exhaustive, verify_capability, VoteSet};
use srrlab::recovery::format_set;

fn zero_based(sets: &[&[usize]]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|p| p - 1).collect()).collect()
}

pub fn run() -> Result<String> {
    let mut out = String::new();
    let limits = Limits::default();
    let code = simplex(4)?.evaluation;
    let object = 3;

    let sets = zero_based(&[&[1], &[12, 13], &[2, 3], &[4, 11, 14], &[7, 9, 15]]);
    let votes = VoteSet::from_checks(&code, object, sets[0].clone(), sets[1..].to_vec())?;
    writeln!(out, "five votes for a_4 (J = {})", votes.j()).unwrap();

    let message = BinaryVector::from_indices(4, &[1, 3])?;
    let sent = code.encode(&message)?;
    for pattern in [vec![1, 3], vec![1, 2, 3, 13]] {
        let received = sent.xor(&BinaryVector::from_indices(code.n(), &pattern)?);
        let estimates: Vec<u8> = votes.estimates(&received).iter().map(|&b| b as u8).collect();
        writeln!(
            out,
            "  errors {}: votes {:?} -> a_4 = {}",
            format_set(&pattern),
            estimates,
            votes.decode_symbol(&received) as u8
        )
        .unwrap();
    }
    for t in [2, 3] {
        let v = verify_capability(&code, &votes, t, &limits)?;
        match v.counterexample {
            None => writeln!(out, "  t = {t}: PASS ({} patterns)", v.patterns_checked),
            Some(p) => writeln!(out, "  t = {t}: FAIL at {}", format_set(&p)),
        }
        .unwrap();
    }

    let best = build_votes(&code, object, SearchMode::Exact, &limits)?;
    writeln!(out, "maximum family: {} votes (J = {})", best.votes(), best.j()).unwrap();
    for w in 1..=5 {
        let tally = tally_exhaustive(&code, &best, w, &limits)?;
        writeln!(out, "  weight {w}: {}/{} decoded", tally.decoded, tally.total).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
