use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

type Poly = Vec<BigRational>;

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d a proper divisor of n
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d);
            num = monic_div_exact(&num, &div);
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn monic_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Euler's totient, the degree of `Φ_n`.
pub fn totient(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An exact element of `ℚ(ζ_N)`, stored as a polynomial in `ζ_N` of degree `< φ(N)`.
///
/// Elements of different orders combine by embedding both into `ℚ(ζ_lcm)`.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn from_rational(r: BigRational) -> Self {
        CycScalar { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(i)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ_order^k`.
    pub fn zeta(order: u32, k: i64) -> Self {
        assert!(order >= 1);
        let e = k.rem_euclid(order as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self::from_poly(order, p)
    }

    /// Reduces an arbitrary polynomial in `ζ_order` modulo `Φ_order`.
    pub fn from_poly(order: u32, mut p: Poly) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        while p.len() > deg {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - deg;
            for (i, c) in phi.iter().take(deg).enumerate() {
                p[shift + i] -= &top * BigRational::from_integer(c.clone());
            }
        }
        p.resize(deg, BigRational::zero());
        CycScalar { order, coeffs: p }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let m = self.minimal_order();
        if m.order == 1 {
            Some(m.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The same element expressed in `ℚ(ζ_target)`; `order` must divide `target`.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target % self.order == 0, "cannot lift order {} to {}", self.order, target);
        let step = (target / self.order) as usize;
        let mut p = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Self::from_poly(target, p)
    }

    /// Rewrites the element in the smallest `ℚ(ζ_m)`, `m | order`, that contains it.
    pub fn minimal_order(&self) -> Self {
        let mut best = self.clone();
        let n = self.order;
        for m in 1..n {
            if n % m != 0 || totient(m) > best.coeffs.len() {
                continue;
            }
            if let Some(c) = self.try_descend(m) {
                if c.coeffs.len() < best.coeffs.len() || c.order < best.order {
                    best = c;
                    break;
                }
            }
        }
        best
    }

    fn try_descend(&self, m: u32) -> Option<Self> {
        // solve for y in Q(ζ_m) with lift(y) = self via the power basis
        let k = totient(m);
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(k);
        for i in 0..k {
            rows.push(CycScalar::zeta(m, i as i64).lift(self.order).coeffs);
        }
        let sol = solve_rational(&rows, &self.coeffs)?;
        Some(CycScalar { order: m, coeffs: sol })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.order, other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return CycScalar { order: self.order, coeffs };
        }
        let (a, b) = self.common(other);
        a.add(&b)
    }

    pub fn neg(&self) -> Self {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let mut p = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.order, p)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let phi: Poly = cyclotomic_poly(self.order)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a = trim(self.coeffs.clone());
        // invariant: r_i = s_i * a (mod phi)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![BigRational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].recip();
        let s: Poly = s1.iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(self.order, s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Image under `ζ_N ↦ ζ_N^k` (an automorphism when `gcd(k, N) = 1`).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        let mut p = vec![BigRational::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = ((i as i64) * k).rem_euclid(n) as usize;
            p[e] += c;
        }
        Self::from_poly(self.order, p)
    }

    /// Lexicographic comparison of coefficient vectors after lifting to a common order.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = self.common(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut p = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            p[i + j] += x * y;
        }
    }
    trim(p)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut p = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        p[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        p[i] -= y;
    }
    trim(p)
}

/// Solves `Σ_i y_i rows[i] = target` over `ℚ`, if a solution exists.
fn solve_rational(rows: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = rows.len();
    let n = target.len();
    // augmented matrix: n equations, k unknowns
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..k).map(|c| rows[c][r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][k].clone();
    }
    Some(sol)
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "({}/{})", r.numer(), r.denom())
    }
}

impl CycScalar {
    pub(crate) fn monomials(&self) -> Vec<(usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Sign of a single-monomial element (`None` for sums).
    pub(crate) fn monomial_negative(&self) -> Option<bool> {
        let m = self.monomials();
        match m.len() {
            0 => Some(false),
            1 => Some(m[0].1.is_negative()),
            _ => None,
        }
    }

    fn fmt_monomial(&self, i: usize, c: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if i == 0 {
            return fmt_rational(c, f);
        }
        if !c.is_one() {
            fmt_rational(c, f)?;
            write!(f, "*")?;
        }
        write!(f, "z{}^{}", self.order, i)
    }

    /// Writes `|self|` for a single-monomial element, the whole element otherwise.
    pub(crate) fn fmt_abs(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.monomial_negative() {
            Some(_) => {
                let m = self.monomials();
                if m.is_empty() {
                    return write!(f, "0");
                }
                self.fmt_monomial(m[0].0, &m[0].1.abs(), f)
            }
            None => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.monomials();
        match m.len() {
            0 => write!(f, "0"),
            1 => {
                if m[0].1.is_negative() {
                    write!(f, "-")?;
                }
                self.fmt_monomial(m[0].0, &m[0].1.abs(), f)
            }
            _ => {
                write!(f, "(")?;
                for (k, (i, c)) in m.iter().enumerate() {
                    if k > 0 {
                        write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
                    } else if c.is_negative() {
                        write!(f, "-")?;
                    }
                    self.fmt_monomial(*i, &c.abs(), f)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        let as_i64 = |n| cyclotomic_poly(n).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in 1..=12u32 {
            assert!(CycScalar::zeta(n, n as i64).is_one());
            for j in 1..n {
                assert!(!CycScalar::zeta(n, j as i64).is_one());
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let x = CycScalar::zeta(5, 1).add(&CycScalar::from_int(3));
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn mixed_orders() {
        let i = CycScalar::zeta(4, 1);
        let w = CycScalar::zeta(3, 1);
        assert_eq!(i.mul(&w), CycScalar::zeta(12, 7));
        assert_eq!(CycScalar::zeta(12, 6), CycScalar::from_int(-1));
        assert_eq!(CycScalar::zeta(12, 3).minimal_order().order(), 4);
    }
}
