// Full per-object report for a code read from `.gm` text, rendered as a
// table and as JSON.

use srrlab::codes::{gm, LinearCode};
use srrlab::error::Result;
use srrlab::limits::Limits;
use srrlab::report::{analyze, AnalysisReport, Format};

const GM: &str = "\
# [7, 4] Hamming code
7 4
1000110
0100101
0010011
0001111
";

pub fn run() -> Result<String> {
    let code = LinearCode::from_generator(gm::parse(GM)?)?;
    let report = analyze(&code, None, true, &Limits::default())?;
    let json = report.render(Format::Json)?;
    assert_eq!(AnalysisReport::from_json(&json)?, report);
    let mut out = report.render(Format::Table)?;
    out.push_str(&report.render(Format::Csv)?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
