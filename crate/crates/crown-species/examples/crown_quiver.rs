//! The n-crown: Euler form, the minimal imaginary root, defects of strings and the band.

use crown_species::crown::{CrownQuiver, DimVector, Vertex};

fn main() -> crown_species::Result<()> {
    let q = CrownQuiver::new(3)?;
    println!("vertices: {}", q.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    println!("arrows:   {}", q.arrows().iter().map(|a| format!("{a}:{}->{}", q.tail(*a), q.head(*a))).collect::<Vec<_>>().join(" "));
    let delta = q.minimal_imaginary_root();
    println!("delta = {delta}, <delta, delta> = {}", q.euler_form(&delta, &delta));

    let s = DimVector::unit(3, Vertex::Sink(1));
    println!("reflection of {s} at 1': {}", q.reflect(&s, Vertex::Sink(1)));

    println!("\nstrings of length <= 3 starting at 1':");
    for j in 1..=3 {
        let w = q.string_word(Vertex::Sink(1), j)?;
        let dv = w.dim_vector();
        println!("  {w:<24} dim {dv}  defect {}", q.defect(&dv));
    }
    println!("\nthe band: {}", q.the_band());
    println!("all strings: {}", q.strings().len());
    Ok(())
}
