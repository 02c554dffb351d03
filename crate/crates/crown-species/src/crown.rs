//! The n-crown quiver: sources `1..n`, sinks `1'..n'`, arrows `α_i : i → i'` (named `a{i}`)
//! and `α_{i'} : i-1 → i'` (named `b{i}`), indices mod `n`. For `n = 1` this is the
//! Kronecker quiver with arrows `a1, b1 : 1 → 1'`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Vertex {
    Source(u32),
    Sink(u32),
}

impl Vertex {
    pub fn index(self) -> u32 {
        match self {
            Vertex::Source(i) | Vertex::Sink(i) => i,
        }
    }

    pub fn is_sink(self) -> bool {
        matches!(self, Vertex::Sink(_))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Source(i) => write!(f, "{i}"),
            Vertex::Sink(i) => write!(f, "{i}'"),
        }
    }
}

impl std::str::FromStr for Vertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, sink) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let i: u32 = body.parse().map_err(|_| Error::Invalid(format!("bad vertex {s:?}")))?;
        Ok(if sink { Vertex::Sink(i) } else { Vertex::Source(i) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Arrow {
    /// `α_i : i → i'`
    A(u32),
    /// `α_{i'} : i-1 → i'`
    B(u32),
}

impl Arrow {
    pub fn index(self) -> u32 {
        match self {
            Arrow::A(i) | Arrow::B(i) => i,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::A(i) => write!(f, "a{i}"),
            Arrow::B(i) => write!(f, "b{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrownQuiver {
    n: u32,
}

impl CrownQuiver {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("crown size must be at least 1".into()));
        }
        Ok(CrownQuiver { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `i` reduced into `1..=n`.
    pub fn wrap(&self, i: i64) -> u32 {
        (i - 1).rem_euclid(self.n as i64) as u32 + 1
    }

    /// Sources first, then sinks.
    pub fn vertices(&self) -> Vec<Vertex> {
        (1..=self.n).map(Vertex::Source).chain((1..=self.n).map(Vertex::Sink)).collect()
    }

    pub fn vertex_position(&self, v: Vertex) -> usize {
        match v {
            Vertex::Source(i) => i as usize - 1,
            Vertex::Sink(i) => (self.n + i) as usize - 1,
        }
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        (1..=self.n).map(Arrow::A).chain((1..=self.n).map(Arrow::B)).collect()
    }

    pub fn tail(&self, a: Arrow) -> Vertex {
        match a {
            Arrow::A(i) => Vertex::Source(i),
            Arrow::B(i) => Vertex::Source(self.wrap(i as i64 - 1)),
        }
    }

    pub fn head(&self, a: Arrow) -> Vertex {
        Vertex::Sink(a.index())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.n).contains(&v.index())
    }

    /// The reverse shift `γ_n^power`: `i ↦ i - power` on sources, sinks and arrows.
    pub fn gamma(&self, v: Vertex, power: i64) -> Vertex {
        match v {
            Vertex::Source(i) => Vertex::Source(self.wrap(i as i64 - power)),
            Vertex::Sink(i) => Vertex::Sink(self.wrap(i as i64 - power)),
        }
    }

    pub fn gamma_arrow(&self, a: Arrow, power: i64) -> Arrow {
        match a {
            Arrow::A(i) => Arrow::A(self.wrap(i as i64 - power)),
            Arrow::B(i) => Arrow::B(self.wrap(i as i64 - power)),
        }
    }

    /// `a_{uv} = 2δ_{uv} − #{edges between u and v}`, vertices ordered sources then sinks.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let size = 2 * self.n as usize;
        let mut c = vec![vec![0i64; size]; size];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for a in self.arrows() {
            let t = self.vertex_position(self.tail(a));
            let h = self.vertex_position(self.head(a));
            c[t][h] -= 1;
            c[h][t] -= 1;
        }
        c
    }

    /// `⟨a,b⟩ = Σ a_v b_v − Σ_{ρ:u→v} a_u b_v`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> i64 {
        let diag: i64 = self.vertices().iter().map(|&v| a.get(v) * b.get(v)).sum();
        let arrows: i64 = self.arrows().iter().map(|&r| a.get(self.tail(r)) * b.get(self.head(r))).sum();
        diag - arrows
    }

    /// The symmetrisation `(a,b) = ⟨a,b⟩ + ⟨b,a⟩`.
    pub fn symmetric_form(&self, a: &DimVector, b: &DimVector) -> i64 {
        self.euler_form(a, b) + self.euler_form(b, a)
    }

    pub fn minimal_imaginary_root(&self) -> DimVector {
        DimVector::constant(self.n, 1)
    }

    pub fn reflect(&self, a: &DimVector, v: Vertex) -> DimVector {
        let e = DimVector::unit(self.n, v);
        let c = self.symmetric_form(a, &e);
        let mut out = a.clone();
        out.set(v, a.get(v) - c);
        out
    }

    /// `defect(a) = ⟨δ, a⟩`, which for crowns is `Σ_U a_i − Σ_W a_{i'}`.
    pub fn defect(&self, a: &DimVector) -> i64 {
        self.euler_form(&self.minimal_imaginary_root(), a)
    }

    fn check_start(&self, start: Vertex) -> Result<()> {
        if !self.contains(start) {
            return Err(Error::OutOfRange(format!("vertex {start} not in the {}-crown", self.n)));
        }
        Ok(())
    }

    /// `s_{i',j}` (start a sink) or `s_{i,j}` (start a source). Lengths up to `2n-1` are
    /// accepted; beyond that a vertex would repeat.
    pub fn string_word(&self, start: Vertex, j: u32) -> Result<StringWord> {
        self.check_start(start)?;
        if j == 0 || j > 2 * self.n - 1 {
            return Err(Error::OutOfRange(format!("string length {j} outside 1..={}", 2 * self.n - 1)));
        }
        if self.n == 1 {
            // s_{1'} = a1^{-1}, s_1 = b1
            let letter = match start {
                Vertex::Sink(_) => Letter::inverse(Arrow::A(1)),
                Vertex::Source(_) => Letter::direct(Arrow::B(1)),
            };
            return StringWord::new(self, start, vec![letter]);
        }
        let shift = start.index() as i64 - 1;
        // positions in the pattern α_1^{-1} α'_2 α_2^{-1} α'_3 ...; a source start skips the first
        let offset = if start.is_sink() { 0 } else { 1 };
        let letters = (offset..offset + j as i64)
            .map(|k| {
                if k % 2 == 0 {
                    Letter::inverse(Arrow::A(self.wrap(k / 2 + 1 + shift)))
                } else {
                    Letter::direct(Arrow::B(self.wrap((k + 1) / 2 + 1 + shift)))
                }
            })
            .collect();
        StringWord::new(self, start, letters)
    }

    /// All `s_{v,j}` for every vertex `v` and `1 ≤ j ≤ n`.
    pub fn strings(&self) -> Vec<StringWord> {
        let mut out = vec![];
        for v in self.vertices() {
            for j in 1..=self.n {
                out.push(self.string_word(v, j).expect("in range"));
            }
        }
        out
    }

    /// `(α'_1)^{-1} α_n (α'_n)^{-1} ⋯ (α'_2)^{-1} α_1`; for `n = 1` the Kronecker band `b1^{-1} a1`.
    pub fn the_band(&self) -> BandWord {
        let mut letters = vec![Letter::inverse(Arrow::B(1))];
        for i in (1..=self.n).rev() {
            letters.push(Letter::direct(Arrow::A(i)));
            if i > 1 {
                letters.push(Letter::inverse(Arrow::B(i)));
            }
        }
        BandWord::new(self, letters).expect("the crown band is valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DimVector {
    pub sources: Vec<i64>,
    pub sinks: Vec<i64>,
}

impl DimVector {
    pub fn zero(n: u32) -> Self {
        Self::constant(n, 0)
    }

    pub fn constant(n: u32, c: i64) -> Self {
        DimVector { sources: vec![c; n as usize], sinks: vec![c; n as usize] }
    }

    pub fn unit(n: u32, v: Vertex) -> Self {
        let mut d = Self::zero(n);
        d.set(v, 1);
        d
    }

    pub fn n(&self) -> u32 {
        self.sources.len() as u32
    }

    /// Missing entries read as zero.
    pub fn get(&self, v: Vertex) -> i64 {
        let list = if v.is_sink() { &self.sinks } else { &self.sources };
        list.get(v.index() as usize - 1).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Vertex, value: i64) {
        let list = if v.is_sink() { &mut self.sinks } else { &mut self.sources };
        list[v.index() as usize - 1] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        DimVector {
            sources: self.sources.iter().zip(&other.sources).map(|(a, b)| a + b).collect(),
            sinks: self.sinks.iter().zip(&other.sinks).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        DimVector {
            sources: self.sources.iter().map(|a| a * c).collect(),
            sinks: self.sinks.iter().map(|a| a * c).collect(),
        }
    }

    pub fn total(&self) -> i64 {
        self.sources.iter().chain(&self.sinks).sum()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sources.iter().chain(&self.sinks).map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A direct or formally inverted arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub arrow: Arrow,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: Arrow) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inverse(arrow: Arrow) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    pub fn tail(self, q: &CrownQuiver) -> Vertex {
        if self.inverse {
            q.head(self.arrow)
        } else {
            q.tail(self.arrow)
        }
    }

    pub fn head(self, q: &CrownQuiver) -> Vertex {
        if self.inverse {
            q.tail(self.arrow)
        } else {
            q.head(self.arrow)
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.arrow)
        } else {
            write!(f, "{}", self.arrow)
        }
    }
}

fn check_letters(q: &CrownQuiver, letters: &[Letter]) -> Result<()> {
    for l in letters {
        if !(1..=q.n()).contains(&l.arrow.index()) {
            return Err(Error::OutOfRange(format!("arrow {} not in the {}-crown", l.arrow, q.n())));
        }
    }
    for w in letters.windows(2) {
        if w[1].tail(q) != w[0].head(q) {
            return Err(Error::Invalid(format!("{} does not follow {}", w[1], w[0])));
        }
        if w[1] == w[0].inv() {
            return Err(Error::Invalid(format!("{} cancels {}", w[1], w[0])));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringWord {
    n: u32,
    start: Vertex,
    letters: Vec<Letter>,
}

impl StringWord {
    pub fn new(q: &CrownQuiver, start: Vertex, letters: Vec<Letter>) -> Result<Self> {
        q.check_start(start)?;
        if let Some(first) = letters.first() {
            if first.tail(q) != start {
                return Err(Error::Invalid(format!("{first} does not start at {start}")));
            }
        }
        check_letters(q, &letters)?;
        Ok(StringWord { n: q.n(), start, letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    /// Vertices `u(0), …, u(j)`.
    pub fn trail(&self) -> Vec<Vertex> {
        let q = CrownQuiver { n: self.n };
        let mut out = vec![self.start];
        out.extend(self.letters.iter().map(|l| l.head(&q)));
        out
    }

    pub fn vertices_distinct(&self) -> bool {
        let t = self.trail();
        let set: std::collections::BTreeSet<_> = t.iter().collect();
        set.len() == t.len()
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = DimVector::zero(self.n);
        for v in self.trail() {
            d.set(v, d.get(v) + 1);
        }
        d
    }
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e{}", self.start);
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandWord {
    n: u32,
    letters: Vec<Letter>,
}

impl BandWord {
    /// Validates closure, that every power is a string, and primitivity.
    pub fn new(q: &CrownQuiver, letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Invalid("empty band".into()));
        }
        let mut doubled = letters.clone();
        doubled.extend(letters.iter().copied());
        check_letters(q, &doubled)?;
        let len = letters.len();
        for p in 1..len {
            if len % p == 0 && (0..len).all(|i| letters[i] == letters[i % p]) {
                return Err(Error::Invalid(format!("band is a power of period {p}")));
            }
        }
        Ok(BandWord { n: q.n(), letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertices visited in one period, starting at the tail of the first letter.
    pub fn trail(&self) -> Vec<Vertex> {
        let q = CrownQuiver { n: self.n };
        self.letters.iter().map(|l| l.tail(&q)).collect()
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = DimVector::zero(self.n);
        for v in self.trail() {
            d.set(v, d.get(v) + 1);
        }
        d
    }
}

impl fmt::Display for BandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cartan() {
        let c = CrownQuiver::new(2).unwrap().cartan_matrix();
        assert_eq!(c, vec![vec![2, 0, -1, -1], vec![0, 2, -1, -1], vec![-1, -1, 2, 0], vec![-1, -1, 0, 2]]);
        let k = CrownQuiver::new(1).unwrap().cartan_matrix();
        assert_eq!(k, vec![vec![2, -2], vec![-2, 2]]);
    }

    #[test]
    fn explicit_strings() {
        let q = CrownQuiver::new(3).unwrap();
        assert_eq!(q.string_word(Vertex::Sink(1), 3).unwrap().to_string(), "a1^-1 b2 a2^-1");
        assert_eq!(q.string_word(Vertex::Source(1), 2).unwrap().to_string(), "b2 a2^-1");
        assert_eq!(q.string_word(Vertex::Sink(2), 1).unwrap().to_string(), "a2^-1");
        assert_eq!(q.string_word(Vertex::Source(1), 1).unwrap().to_string(), "b2");
        assert!(q.string_word(Vertex::Sink(1), 6).is_err());
        assert!(q.string_word(Vertex::Sink(1), 5).unwrap().vertices_distinct());
    }

    #[test]
    fn band_shape() {
        let q = CrownQuiver::new(3).unwrap();
        assert_eq!(q.the_band().to_string(), "b1^-1 a3 b3^-1 a2 b2^-1 a1");
        assert_eq!(CrownQuiver::new(2).unwrap().the_band().to_string(), "b1^-1 a2 b2^-1 a1");
        assert_eq!(CrownQuiver::new(1).unwrap().the_band().to_string(), "b1^-1 a1");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(CrownQuiver::new(2).unwrap().strings().len(), 8);
        assert_eq!(CrownQuiver::new(5).unwrap().strings().len(), 50);
    }
}
