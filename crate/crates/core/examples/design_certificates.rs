// Codeword supports that form designs: the simplex and Hamming 2-designs,
// their reductions to 1-designs, and the counting identity behind the
// design allocation.

use std::fmt::Write;

use srrlab::codes::{hamming, simplex, LinearCode};
use srrlab::designs::{check_t_design, counting_identity, reduce_design, BlockCollection};
use srrlab::error::Result;

const CAP: u64 = 1 << 20;

fn blocks(code: &LinearCode) -> Result<BlockCollection> {
    let d = code.min_distance(CAP)?;
    BlockCollection::new(code.n(), code.min_weight_codewords(d, None, CAP)?)
}

pub fn run() -> Result<String> {
    let mut out = String::new();
    for (name, code) in [
        ("simplex(4)", simplex(4)?.evaluation),
        ("hamming(4)", hamming(4)?),
    ] {
        let bc = blocks(&code)?;
        let two = check_t_design(&bc, 2, CAP)?;
        let one = check_t_design(&bc, 1, CAP)?;
        let reduced = check_t_design(&reduce_design(&bc, &[0])?, 1, CAP)?;
        writeln!(out, "{name}: {two}").unwrap();
        writeln!(out, "  as 1-design: {one}").unwrap();
        writeln!(out, "  through point 1, point removed: {reduced}").unwrap();
    }

    let h = hamming(4)?;
    let supports = h.dual()?.min_weight_codewords(8, Some(0), CAP)?;
    let bc = reduce_design(&BlockCollection::new(15, supports)?, &[0])?;
    let report = check_t_design(&bc, 1, CAP)?;
    let r = report.replication.unwrap_or(0);
    let identity = counting_identity(14, r, bc.len() as u64, 8)?;
    writeln!(
        out,
        "weight-8 dual words through 1: {} blocks, {report}; 14 * {r} = {} * 7: {}",
        bc.len(),
        bc.len(),
        identity.holds()
    )
    .unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
