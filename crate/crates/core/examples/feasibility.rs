// Membership of demand vectors in the service rate region, with an
// allocation for feasible demands and a separating certificate otherwise.

use std::fmt::Write;

use srrlab::codes::hamming;
use srrlab::error::Result;
use srrlab::limits::Limits;
use srrlab::rational::Rational;
use srrlab::srr::{feasible, verify_allocation, verify_infeasibility, Feasibility};

fn demand(text: &str) -> Vec<Rational> {
    text.split(',')
        .map(|s| s.parse().expect("literal demand"))
        .collect()
}

pub fn run() -> Result<String> {
    let mut out = String::new();
    let limits = Limits::default();
    let code = hamming(3)?;
    for text in ["3,0,0,0", "1,1,1,1", "2,1,0,0", "31/10,0,0,0", "2,2,2,2"] {
        let lambda = demand(text);
        match feasible(&code, &lambda, &limits)? {
            Feasibility::Feasible(alloc) => {
                let ok = verify_allocation(&code, &lambda, &alloc)?;
                writeln!(out, "({text}): feasible with {} sets, verified {ok}", alloc.len()).unwrap();
            }
            Feasibility::Infeasible(cert) => {
                let ok = verify_infeasibility(&code, &lambda, &cert, &limits)?;
                let u: Vec<String> = cert.object_multipliers.iter().map(|x| x.to_string()).collect();
                let v: Vec<String> = cert.server_multipliers.iter().map(|x| x.to_string()).collect();
                writeln!(
                    out,
                    "({text}): infeasible, u = [{}], v = [{}], verified {ok}",
                    u.join(" "),
                    v.join(" ")
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
