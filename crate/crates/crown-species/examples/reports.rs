//! Running named checks programmatically and rendering their reports as text and JSON.

use crown_species::cli::{default_suite, run_check, Params};
use crown_species::report::VerificationReport;

fn main() -> crown_species::Result<()> {
    let p = Params { n: Some(3), j: Some(2), ..Params::default() };
    let r = run_check("remark-3.16", &p)?;
    println!("{}", r.to_text());

    let json = r.to_json();
    let back = VerificationReport::from_json(&json).expect("valid JSON");
    assert_eq!(back, r);
    println!("{json}");

    for (id, params) in default_suite() {
        let r = run_check(id, &params)?;
        println!("{id:<18} {}", r.status.as_str());
    }
    Ok(())
}
