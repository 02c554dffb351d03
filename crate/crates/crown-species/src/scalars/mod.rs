//! Exact scalars: the cyclotomic field `ℚ(ζ_N)` and truncated Puiseux series over it.

mod cyclo;
mod puiseux;
mod roots;
mod text;

pub use cyclo::{cyclotomic_poly, totient, CycScalar};
pub use puiseux::{Codeg, PuiseuxElement, DEFAULT_PREC};
pub use roots::{is_generic, norm, norm_root, nth_root, FieldTowerCtx};
pub use text::{parse_element, parse_element_at};

/// Shorthand for parsing literals that are known to be well formed.
pub fn el(s: &str) -> PuiseuxElement {
    parse_element(s).unwrap_or_else(|e| panic!("bad element literal {s:?}: {e}"))
}
