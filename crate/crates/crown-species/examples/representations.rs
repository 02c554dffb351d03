//! Representations over k_d: string and band modules, Hom spaces, isomorphism and the twist.

use crown_species::crown::{CrownQuiver, Vertex};
use crown_species::reps::{band_module, end_dim, hom_space, isomorphism, smallest_twist_period, string_module, MatK};
use crown_species::scalars::el;

fn main() -> crown_species::Result<()> {
    let q = CrownQuiver::new(3)?;
    let word = q.string_word(Vertex::Sink(1), 3)?;
    let m = string_module(&q, &word, 3)?;
    println!("M({word}):\n{m}");
    println!("dim End = {}, defect = {}, twist period = {}", end_dim(&m)?, m.defect(), smallest_twist_period(&m)?);

    let n = m.twist(1);
    println!("dim Hom(M, twist M) = {}", hom_space(&m, &n)?.dim);

    let band = band_module(&q, &q.the_band(), &MatK::scalar(el("e^(1/3)")), 3)?;
    let same = band_module(&q, &q.the_band(), &MatK::scalar(el("e^(1/3)")), 3)?;
    let (decision, iso) = isomorphism(&band, &same)?;
    println!("\nband with parameter e^(1/3): End dim {}, iso to itself: {decision:?} ({} components)", end_dim(&band)?, iso.map_or(0, |f| f.len()));
    println!("band twisted once:\n{}", band.twist(1));
    Ok(())
}
