// Exact maximum demand of every object of the [15, 11] Hamming code, with
// the LP certificates re-verified and the design-based allocation.

use std::fmt::Write;

use srrlab::codes::hamming;
use srrlab::error::Result;
use srrlab::limits::Limits;
use srrlab::srr::{audit_certificates, design_allocation, max_demand};

pub fn run() -> Result<String> {
    let mut out = String::new();
    let limits = Limits::default();
    let code = hamming(4)?;
    for object in 0..code.k() {
        let sol = max_demand(&code, object, &limits)?;
        let audit = audit_certificates(&code, &sol, &limits)?;
        writeln!(
            out,
            "object {:>2}: lambda_max = {}  ({} variables, certificates {})",
            object + 1,
            sol.value,
            sol.variables,
            if audit.is_valid() { "verified" } else { "INVALID" }
        )
        .unwrap();
    }
    if let Some(d) = design_allocation(&code, 0, &limits)? {
        writeln!(out, "object 1 via design {}: rate {}", d.design, d.rate).unwrap();
        for (set, rate) in &d.allocation {
            writeln!(out, "  {:<24} {rate}", set.label()).unwrap();
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
