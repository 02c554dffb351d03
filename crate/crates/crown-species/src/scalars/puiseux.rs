use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::cyclo::CycScalar;
use crate::error::{Error, Result};

/// Relative precision used when an exact element must be expanded into a series.
pub const DEFAULT_PREC: i64 = 24;

/// Codegree of a Puiseux element, in units of `1/ram`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codeg {
    Finite(i64),
    /// The exact zero element.
    Infinite,
    /// No known nonzero term below the stored precision.
    ZeroAtPrecision(i64),
}

impl Codeg {
    pub fn finite(self) -> Option<i64> {
        match self {
            Codeg::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// A truncated element of `k_n = ℂ((ε^{1/n}))` with coefficients in `ℚ(ζ_N)`.
///
/// `terms[j]` is the coefficient of `ε^{j/ram}`; all exponents `≥ prec` are unknown.
/// `prec = None` marks an exact Laurent polynomial.
#[derive(Clone, Debug)]
pub struct PuiseuxElement {
    ram: u32,
    terms: BTreeMap<i64, CycScalar>,
    prec: Option<i64>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl PuiseuxElement {
    /// Builds an element, dropping zero coefficients and terms at or beyond `prec`.
    pub fn new(ram: u32, terms: impl IntoIterator<Item = (i64, CycScalar)>, prec: Option<i64>) -> Self {
        assert!(ram >= 1, "ramification index must be positive");
        let mut map: BTreeMap<i64, CycScalar> = BTreeMap::new();
        for (e, c) in terms {
            if prec.is_some_and(|p| e >= p) {
                continue;
            }
            match map.get_mut(&e) {
                Some(old) => *old = old.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxElement { ram, terms: map, prec }
    }

    pub fn zero() -> Self {
        Self::new(1, [], None)
    }

    pub fn one() -> Self {
        Self::constant(CycScalar::one())
    }

    pub fn from_int(i: i64) -> Self {
        Self::constant(CycScalar::from_int(i))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::constant(CycScalar::from_rational(r))
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::new(1, [(0, c)], None)
    }

    /// `c·ε^{j/ram}`.
    pub fn monomial(c: CycScalar, j: i64, ram: u32) -> Self {
        Self::new(ram, [(j, c)], None)
    }

    /// `ε^{j/ram}`.
    pub fn eps(j: i64, ram: u32) -> Self {
        Self::monomial(CycScalar::one(), j, ram)
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn terms(&self) -> &BTreeMap<i64, CycScalar> {
        &self.terms
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True for the exact zero and for elements that vanish at their precision.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// A single exact term: a unit of the Laurent polynomial ring.
    pub fn is_exact_monomial(&self) -> bool {
        self.is_exact() && self.terms.len() == 1
    }

    pub fn codeg(&self) -> Codeg {
        match (self.terms.keys().next(), self.prec) {
            (Some(&j), _) => Codeg::Finite(j),
            (None, None) => Codeg::Infinite,
            (None, Some(p)) => Codeg::ZeroAtPrecision(p),
        }
    }

    /// Lowest term `(exponent, coefficient)`.
    pub fn leading(&self) -> Option<(i64, &CycScalar)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Highest stored exponent.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Codegree as a rational exponent of `ε`.
    pub fn valuation(&self) -> Option<BigRational> {
        self.codeg()
            .finite()
            .map(|v| BigRational::new(BigInt::from(v), BigInt::from(self.ram)))
    }

    /// Precision as a rational exponent of `ε` (`None` when exact).
    pub fn prec_eps(&self) -> Option<BigRational> {
        self.prec.map(|p| BigRational::new(BigInt::from(p), BigInt::from(self.ram)))
    }

    /// The same element viewed in `k_n`; `ram` must divide `n`.
    pub fn embed(&self, n: u32) -> Result<Self> {
        if n == 0 || n % self.ram != 0 {
            return Err(Error::RamDivisibility { from: self.ram, to: n });
        }
        let f = (n / self.ram) as i64;
        Ok(PuiseuxElement {
            ram: n,
            terms: self.terms.iter().map(|(e, c)| (e * f, c.clone())).collect(),
            prec: self.prec.map(|p| p * f),
        })
    }

    fn lift(&self, n: u32) -> Self {
        self.embed(n).expect("lift to a multiple")
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.ram == other.ram {
            (self.clone(), other.clone())
        } else {
            let l = self.ram.lcm(&other.ram);
            (self.lift(l), other.lift(l))
        }
    }

    /// Smallest ramification carrying the same element.
    pub fn reduce_ram(&self) -> Self {
        let mut g = self.ram as i64;
        for e in self.terms.keys() {
            g = g.gcd(e);
        }
        if let Some(p) = self.prec {
            g = g.gcd(&p);
        }
        if g <= 1 {
            return self.clone();
        }
        PuiseuxElement {
            ram: self.ram / g as u32,
            terms: self.terms.iter().map(|(e, c)| (e / g, c.clone())).collect(),
            prec: self.prec.map(|p| p / g),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.ram != other.ram {
            let (a, b) = self.common(other);
            return a.add(&b);
        }
        let prec = min_opt(self.prec, other.prec);
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(e, c)| (*e, c.clone()));
        Self::new(self.ram, terms, prec)
    }

    pub fn neg(&self) -> Self {
        PuiseuxElement {
            ram: self.ram,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Lower bound for the codegree used by the precision rules.
    fn codeg_bound(&self) -> Option<i64> {
        match self.codeg() {
            Codeg::Finite(v) => Some(v),
            Codeg::ZeroAtPrecision(p) => Some(p),
            Codeg::Infinite => None,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.ram != other.ram {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::new(self.ram, [], None);
        }
        // prec(xy) = min(prec x + codeg y, prec y + codeg x)
        let p1 = self.prec.zip(other.codeg_bound()).map(|(p, c)| p + c);
        let p2 = other.prec.zip(self.codeg_bound()).map(|(p, c)| p + c);
        let prec = min_opt(p1, p2);
        let mut out: BTreeMap<i64, CycScalar> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if prec.is_some_and(|p| e >= p) {
                    continue;
                }
                let t = ca.mul(cb);
                match out.get_mut(&e) {
                    Some(old) => *old = old.add(&t),
                    None => {
                        out.insert(e, t);
                    }
                }
            }
        }
        Self::new(self.ram, out, prec)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::new(self.ram, [], None);
        }
        PuiseuxElement {
            ram: self.ram,
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by `ε^{j/ram}` (exact shift).
    pub fn shift(&self, j: i64) -> Self {
        PuiseuxElement {
            ram: self.ram,
            terms: self.terms.iter().map(|(e, c)| (e + j, c.clone())).collect(),
            prec: self.prec.map(|p| p + j),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse with the default relative precision for exact non-monomial inputs.
    pub fn invert(&self) -> Result<Self> {
        self.invert_to(DEFAULT_PREC)
    }

    /// Inverse by leading term times a geometric series.
    ///
    /// For exact inputs the series is carried to `rel` units past the leading term; for
    /// inexact inputs the available relative precision `prec - codeg` bounds it.
    pub fn invert_to(&self, rel: i64) -> Result<Self> {
        let (v, c) = match self.leading() {
            Some((v, c)) => (v, c.clone()),
            None => {
                return Err(match self.prec {
                    Some(p) => Error::ZeroAtPrecision(p),
                    None => Error::DivisionByZero,
                })
            }
        };
        let cinv = c.inv()?;
        if self.is_exact() && self.terms.len() == 1 {
            return Ok(Self::monomial(cinv, -v, self.ram));
        }
        let r = match self.prec {
            Some(p) => p - v,
            None => rel,
        };
        // u = x / (c ε^v) - 1, supported on 1..r
        let u: Vec<(i64, CycScalar)> = self
            .terms
            .iter()
            .skip(1)
            .filter(|(e, _)| **e - v < r)
            .map(|(e, x)| (e - v, x.mul(&cinv)))
            .collect();
        let mut y: Vec<CycScalar> = Vec::with_capacity(r.max(0) as usize);
        for k in 0..r {
            if k == 0 {
                y.push(CycScalar::one());
                continue;
            }
            let mut acc = CycScalar::zero();
            for (i, ui) in &u {
                if *i > k {
                    break;
                }
                let prev = &y[(k - i) as usize];
                if !prev.is_zero() {
                    acc = acc.sub(&ui.mul(prev));
                }
            }
            y.push(acc);
        }
        let terms = y.into_iter().enumerate().map(|(k, yk)| (k as i64 - v, yk.mul(&cinv)));
        Ok(Self::new(self.ram, terms, Some(r - v)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// `σ^j`: the term `c·ε^{l/n}` goes to `c·ζ_n^{jl}·ε^{l/n}`.
    ///
    /// The maps for different `n` are compatible, so the element's own `ram` is used.
    pub fn sigma(&self, j: i64) -> Self {
        let n = self.ram;
        if n == 1 {
            return self.clone();
        }
        PuiseuxElement {
            ram: n,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| {
                    let k = (j.rem_euclid(n as i64) * l.rem_euclid(n as i64)) % n as i64;
                    let t = if k == 0 { c.clone() } else { c.mul(&CycScalar::zeta(n, k)) };
                    (*l, t)
                })
                .collect(),
            prec: self.prec,
        }
    }

    /// Drops every term at or beyond `p` and records `p` as the precision.
    pub fn truncate(&self, p: i64) -> Self {
        let prec = min_opt(self.prec, Some(p));
        Self::new(self.ram, self.terms.iter().map(|(e, c)| (*e, c.clone())), prec)
    }

    /// Equality on the overlap of the known ranges.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Coefficient of `ε^{j/ram}` (zero when absent).
    pub fn coefficient(&self, j: i64) -> CycScalar {
        self.terms.get(&j).cloned().unwrap_or_else(CycScalar::zero)
    }
}

impl PartialEq for PuiseuxElement {
    /// Structural equality after lifting to a common ramification: same precision and
    /// same known terms.
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.prec == b.prec
            && a.terms.len() == b.terms.len()
            && a.terms.iter().zip(b.terms.iter()).all(|(x, y)| x.0 == y.0 && x.1 == y.1)
    }
}

impl fmt::Display for PuiseuxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_element(self, f)
    }
}

impl Default for PuiseuxElement {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&PuiseuxElement> for &PuiseuxElement {
            type Output = PuiseuxElement;
            fn $m(self, rhs: &PuiseuxElement) -> PuiseuxElement {
                PuiseuxElement::$m(self, rhs)
            }
        }
        impl std::ops::$tr for PuiseuxElement {
            type Output = PuiseuxElement;
            fn $m(self, rhs: PuiseuxElement) -> PuiseuxElement {
                PuiseuxElement::$m(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Neg for &PuiseuxElement {
    type Output = PuiseuxElement;
    fn neg(self) -> PuiseuxElement {
        PuiseuxElement::neg(self)
    }
}

impl std::ops::Neg for PuiseuxElement {
    type Output = PuiseuxElement;
    fn neg(self) -> PuiseuxElement {
        PuiseuxElement::neg(&self)
    }
}

impl From<i64> for PuiseuxElement {
    fn from(i: i64) -> Self {
        Self::from_int(i)
    }
}

impl From<CycScalar> for PuiseuxElement {
    fn from(c: CycScalar) -> Self {
        Self::constant(c)
    }
}

