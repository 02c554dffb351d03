use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclo::CycScalar;
use super::puiseux::{PuiseuxElement, DEFAULT_PREC};
use crate::error::{Error, Result};

/// Computation context: the cyclotomic order `N` holding every root of unity in play and
/// the default relative precision for series expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldTowerCtx {
    pub order: u32,
    pub default_prec: i64,
}

impl FieldTowerCtx {
    pub fn new(order: u32, default_prec: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("cyclotomic order must be at least 1".into()));
        }
        if default_prec < 1 {
            return Err(Error::Invalid("precision must be at least 1".into()));
        }
        Ok(FieldTowerCtx { order, default_prec })
    }

    /// Context whose order is `2·lcm(rams)`, enough for the roots used by the descent builders.
    pub fn for_rams(rams: &[u32]) -> Self {
        let l = rams.iter().fold(1u32, |a, b| a.lcm(b));
        FieldTowerCtx { order: 2 * l, default_prec: DEFAULT_PREC }
    }

    pub fn check_ram(&self, n: u32) -> Result<()> {
        if self.order % n == 0 {
            Ok(())
        } else {
            Err(Error::OrderTooSmall { order: self.order, needed: n })
        }
    }

    /// `σ_n^j(x)` with `n = x.ram()`, refusing when `ζ_n ∉ ℚ(ζ_N)`.
    pub fn sigma(&self, x: &PuiseuxElement, j: i64) -> Result<PuiseuxElement> {
        self.check_ram(x.ram())?;
        Ok(x.sigma(j))
    }
}

impl Default for FieldTowerCtx {
    fn default() -> Self {
        FieldTowerCtx { order: 24, default_prec: DEFAULT_PREC }
    }
}

/// Whether the `σ_n`-orbit of an exact `x ∈ k_n` has `n` elements.
///
/// `x` lies in a proper subfield `k_m` exactly when all exponents share a factor with `n`.
pub fn is_generic(x: &PuiseuxElement) -> Result<bool> {
    if !x.is_exact() {
        return Err(Error::Inexact);
    }
    let mut g = x.ram() as i64;
    for e in x.terms().keys() {
        g = g.gcd(e);
    }
    Ok(g == 1)
}

fn rational_root(r: &BigRational, n: u32) -> Option<BigRational> {
    let root = |v: &BigInt| -> Option<BigInt> {
        let s = v.abs().nth_root(n);
        (s.pow(n) == v.abs()).then_some(s)
    };
    let num = root(r.numer())?;
    let den = root(r.denom())?;
    let s = BigRational::new(num, den);
    if r.is_negative() {
        (n % 2 == 1).then(|| -s)
    } else {
        Some(s)
    }
}

/// Principal `n`-th root of `c` inside `ℚ(ζ_N)`.
///
/// Roots of the form `s·ζ_N^k` with `s` rational are searched; the smallest `k` with `s > 0`
/// wins, so the root of a positive rational is the positive real root.
pub fn principal_root(c: &CycScalar, n: u32, order: u32) -> Result<CycScalar> {
    let no_root = Error::NoRoot { n, order };
    let c = if order % c.order() == 0 { c.clone() } else { c.minimal_order() };
    if order % c.order() != 0 {
        return Err(no_root);
    }
    let mut negative: Option<CycScalar> = None;
    for k in 0..order as i64 {
        let t = c.mul(&CycScalar::zeta(order, -k * n as i64));
        let Some(r) = t.as_rational() else { continue };
        if let Some(s) = rational_root(&r, n) {
            let root = CycScalar::from_rational(s.clone()).mul(&CycScalar::zeta(order, k));
            if s.is_positive() {
                return Ok(root);
            }
            if negative.is_none() {
                negative = Some(root);
            }
        }
    }
    negative.ok_or(no_root)
}

/// Root extraction in the variable `x = ε^{1/ram}`: returns `(b, m)` with
/// `a = b^n x^m`, `0 ≤ m < n`, `m ≡ codeg(a) (mod n)`, correct to relative precision `p`.
pub fn nth_root(ctx: &FieldTowerCtx, a: &PuiseuxElement, n: u32, p: i64) -> Result<(PuiseuxElement, u32)> {
    if n == 0 {
        return Err(Error::Invalid("root degree must be positive".into()));
    }
    let (v, c) = match a.leading() {
        Some((v, c)) => (v, c.clone()),
        None => {
            return Err(match a.prec() {
                Some(p) => Error::ZeroAtPrecision(p),
                None => Error::DivisionByZero,
            })
        }
    };
    let ram = a.ram();
    let m = v.rem_euclid(n as i64);
    let c0 = principal_root(&c, n, ctx.order)?;
    let rel = match a.prec() {
        Some(pa) => (pa - v).min(p),
        None => p,
    };
    let cinv = c.inv()?;
    let u: Vec<(i64, CycScalar)> = a
        .terms()
        .iter()
        .skip(1)
        .filter(|(e, _)| **e - v < rel)
        .map(|(e, x)| (e - v, x.mul(&cinv)))
        .collect();
    let shift = (v - m) / n as i64;
    if a.terms().len() == 1 && a.is_exact() {
        return Ok((PuiseuxElement::monomial(c0, shift, ram), m as u32));
    }
    // (1+u) y' = α u' y with α = 1/n gives k y_k = Σ_i (α i - (k - i)) u_i y_{k-i}
    let alpha = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut y: Vec<CycScalar> = vec![CycScalar::one()];
    for k in 1..rel {
        let mut acc = CycScalar::zero();
        for (i, ui) in &u {
            if *i > k {
                break;
            }
            let prev = &y[(k - i) as usize];
            if prev.is_zero() {
                continue;
            }
            let w = &alpha * BigRational::from_integer(BigInt::from(*i))
                - BigRational::from_integer(BigInt::from(k - i));
            if !w.is_zero() {
                acc = acc.add(&ui.mul(prev).scale(&w));
            }
        }
        y.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k))));
    }
    let terms = y.into_iter().enumerate().map(|(k, yk)| (k as i64 + shift, yk.mul(&c0)));
    Ok((PuiseuxElement::new(ram, terms, Some(shift + rel)), m as u32))
}

/// Solves the norm equation `Π_{t<d/m} σ_d^{tm}(b) = a` for `b ∈ k_d`, given `a ∈ k_m`.
///
/// Writing `codeg(a) = q·s + r` with `q = d/m`, one takes `b = ε^{r/d}·u` with
/// `u^q = (-1)^{r(q-1)} a ε^{-r/m}`; the sign is the norm of `ε^{1/d}`.
pub fn norm_root(ctx: &FieldTowerCtx, a: &PuiseuxElement, m: u32, d: u32, p: i64) -> Result<PuiseuxElement> {
    if d % m != 0 {
        return Err(Error::RamDivisibility { from: m, to: d });
    }
    let a = a.embed(m)?;
    let q = d / m;
    let v = a.codeg().finite().ok_or(Error::DivisionByZero)?;
    let r = v.rem_euclid(q as i64);
    let sign = if (r * (q as i64 - 1)) % 2 == 0 { 1 } else { -1 };
    let target = a.shift(-r).mul(&PuiseuxElement::from_int(sign));
    let (u, rest) = nth_root(ctx, &target, q, p)?;
    debug_assert_eq!(rest, 0);
    Ok(u.embed(d)?.mul(&PuiseuxElement::eps(r, d)))
}

/// Norm from `k_d` down to `k_m`: `Π_{t<d/m} σ^{tm}(b)`.
pub fn norm(b: &PuiseuxElement, m: u32, d: u32) -> PuiseuxElement {
    let q = d / m;
    let mut acc = PuiseuxElement::one();
    for t in 0..q {
        acc = acc.mul(&b.sigma((t * m) as i64));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::el;

    #[test]
    fn square_root_of_one_plus_eps() {
        let ctx = FieldTowerCtx::default();
        let (b, m) = nth_root(&ctx, &el("1 + e"), 2, 3).unwrap();
        assert_eq!(m, 0);
        assert_eq!(b, el("1 + (1/2)*e^(1/1) - (1/8)*e^(2/1) + O(e^(3/1))"));
    }

    #[test]
    fn norm_root_sign() {
        let ctx = FieldTowerCtx::for_rams(&[4]);
        let a = el("e^(1/2)");
        let b = norm_root(&ctx, &a, 2, 4, 24).unwrap();
        assert_eq!(norm(&b, 2, 4), a.embed(4).unwrap());
    }
}
