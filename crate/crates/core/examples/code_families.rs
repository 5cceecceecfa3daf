// Builds each standard family and prints its parameters and weight
// distribution, checking the dual distribution against MacWilliams.

use std::fmt::Write;

use srrlab::codes::{hamming, macwilliams, reed_muller, repetition, simplex, spc, LinearCode};
use srrlab::error::Result;

const CAP: u64 = 1 << 20;

fn describe(out: &mut String, name: &str, code: &LinearCode) -> Result<()> {
    let we = code.weight_enumerator(CAP)?;
    let dual = code.dual_weight_enumerator(CAP)?;
    let predicted = macwilliams(&we, code.n(), code.k());
    let d_dual = code.dual_distance(CAP)?.map_or("-".into(), |d| d.to_string());
    writeln!(
        out,
        "{name:<12} [{}, {}, {}]  d_dual = {d_dual:<2}  A = {:?}  macwilliams {}",
        code.n(),
        code.k(),
        code.min_distance(CAP)?,
        we.coefficients,
        if predicted == dual { "ok" } else { "MISMATCH" }
    )
    .unwrap();
    Ok(())
}

pub fn run() -> Result<String> {
    let mut out = String::new();
    describe(&mut out, "hamming(3)", &hamming(3)?)?;
    describe(&mut out, "hamming(4)", &hamming(4)?)?;
    describe(&mut out, "simplex(3)", &simplex(3)?.systematic)?;
    describe(&mut out, "simplex(4)", &simplex(4)?.evaluation)?;
    describe(&mut out, "rep(5)", &repetition(5)?)?;
    describe(&mut out, "spc(5)", &spc(5)?)?;
    describe(&mut out, "RM(1,3)", &reed_muller(1, 3)?)?;
    describe(&mut out, "RM(1,4)", &reed_muller(1, 4)?)?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
