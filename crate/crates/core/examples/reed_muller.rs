// First-order Reed-Muller code RM(1,3): the refined upper bound is met by
// the exact LP for every object.

use std::fmt::Write;

use srrlab::checks::SearchMode;
use srrlab::codes::reed_muller;
use srrlab::error::Result;
use srrlab::limits::Limits;
use srrlab::srr::demand_bounds;

pub fn run() -> Result<String> {
    let mut out = String::new();
    let limits = Limits::default();
    let (code, _) = reed_muller(1, 3)?.systematic_form()?;
    for object in 0..code.k() {
        let b = demand_bounds(&code, object, true, SearchMode::Exact, &limits)?;
        let lp = b.lp_exact().cloned();
        writeln!(
            out,
            "object {}: a = {}, upper = {}, lambda_max = {}, tight = {}",
            object + 1,
            b.a,
            b.upper_refined.as_ref().map_or("-".into(), |x| x.to_string()),
            lp.as_ref().map_or("-".into(), |x| x.to_string()),
            lp.is_some() && lp == b.upper_refined
        )
        .unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
