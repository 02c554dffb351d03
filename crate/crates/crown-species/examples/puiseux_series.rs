//! Arithmetic in k_n = C((e^(1/n))) with precision tracking, Galois action and root extraction.

use crown_species::scalars::{el, is_generic, norm, norm_root, nth_root, FieldTowerCtx};

fn main() -> crown_species::Result<()> {
    let a = el("e^(1/2) + 3*e - e^(3/2)");
    let b = el("z6 + e^(1/3)");
    println!("a       = {a}");
    println!("b       = {b}");
    println!("a + b   = {}", a.add(&b));
    println!("a * b   = {}", a.mul(&b));
    println!("1/a     = {}", a.invert_to(6)?);
    println!("sigma a = {}", a.sigma(1));
    println!("codeg a = {:?}, generic in k_2: {}", a.codeg(), is_generic(&a)?);

    let ctx = FieldTowerCtx::for_rams(&[6]);
    let c = el("8*e^5 + e^6");
    let (r, m) = nth_root(&ctx, &c, 3, 8)?;
    println!("\n{c} = r^3 e^{m} with r = {r}");
    println!("check: {}", r.pow(3).shift(m as i64));

    let x = norm_root(&ctx, &el("e^(1/2)"), 2, 6, 12)?;
    println!("\nnorm from k_6 to k_2 of {x} is {}", norm(&x, 2, 6));
    Ok(())
}
