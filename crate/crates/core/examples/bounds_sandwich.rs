// Lower and upper bounds on the maximum demand next to the exact LP value,
// for a few seeded random codes.

use std::fmt::Write;

use srrlab::checks::SearchMode;
use srrlab::codes::random_code;
use srrlab::error::Result;
use srrlab::limits::Limits;
use srrlab::srr::demand_bounds;

fn show(r: &Option<srrlab::rational::Rational>) -> String {
    r.as_ref().map_or("-".into(), |x| x.to_string())
}

pub fn run() -> Result<String> {
    let mut out = String::new();
    let limits = Limits::default();
    for seed in [1, 2, 3] {
        let code = random_code(10, 4, seed)?;
        writeln!(
            out,
            "random [10, 4] seed {seed}, d_dual = {:?}",
            code.dual_distance(1 << 16)?
        )
        .unwrap();
        for object in 0..code.k() {
            let b = demand_bounds(&code, object, true, SearchMode::Exact, &limits)?;
            writeln!(
                out,
                "  object {}: a = {} J = {}  {} <= {} <= {} <= {}  {}",
                object + 1,
                b.a,
                b.j,
                b.lower,
                show(&b.lp_exact().cloned()),
                show(&b.upper_refined),
                show(&b.upper_loose),
                if b.sandwich_holds() { "ok" } else { "VIOLATED" }
            )
            .unwrap();
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
