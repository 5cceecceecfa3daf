// Minimal recovery sets of one object and the parity checks formed by
// symmetric differences of pairs of them.

use std::fmt::Write;

use srrlab::codes::simplex;
use srrlab::error::Result;
use srrlab::recovery::{format_set, minimal_recovery_sets, symmetric_difference_check};

pub fn run() -> Result<String> {
    let mut out = String::new();
    let code = simplex(4)?.evaluation;
    let object = 3;
    let sets = minimal_recovery_sets(&code, object, 1 << 16)?;
    writeln!(
        out,
        "simplex(4), object {}: {} minimal recovery sets",
        object + 1,
        sets.len()
    )
    .unwrap();
    for size in 1..=code.n() {
        let count = sets.iter().filter(|s| s.len() == size).count();
        if count > 0 {
            writeln!(out, "  size {size}: {count}").unwrap();
        }
    }
    let shown: Vec<String> = sets.iter().take(6).map(|s| s.label()).collect();
    writeln!(out, "smallest: {}", shown.join(" ")).unwrap();
    let check = symmetric_difference_check(&code, object, &sets[1].servers, &sets[2].servers, 1 << 16)?;
    writeln!(
        out,
        "{} xor {} = check {} of weight {}",
        sets[1].label(),
        sets[2].label(),
        format_set(&check.support()),
        check.weight()
    )
    .unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
