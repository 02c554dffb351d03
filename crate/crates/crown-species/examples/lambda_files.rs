//! Reading and writing representation files and certifying them.

use crown_species::descent::{certify_lambda, normal_form_nonhomogeneous, LambdaRep, Variant, Witness, Family};

fn main() -> crown_species::Result<()> {
    let l = normal_form_nonhomogeneous(2, 3, Variant::BId)?;
    let text = l.to_file(Some(3), Some(&Witness::Family(Family::N, 2)));
    println!("{text}");

    let file = LambdaRep::parse_file(&text)?;
    let period = file.period.unwrap_or(file.rep.n);
    let report = certify_lambda(&file.rep, period, file.witness.as_ref());
    println!("{}", report.to_text());

    match LambdaRep::parse_file("lambda-rep n=2 m=1 mp=1\nA:\n1, 2\nB:\n1\n") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("malformed file: {e}"),
    }
    Ok(())
}
