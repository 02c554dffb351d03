//! Hom-spaces between crown representations by sparse elimination over `k_d`, and the
//! isomorphism tests built on them.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalars::PuiseuxElement;

use super::matrix::{pivot_rank, MatK};
use super::rep::Representation;

type Row = BTreeMap<usize, PuiseuxElement>;

/// A basis of `Hom(M, N)`; each element is a family of matrices indexed by vertex position.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Vec<MatK>>,
    pub dim: usize,
    /// `true` when every pivot decision was made on exact data.
    pub exact: bool,
    pub precision_note: String,
}

/// Kernel of a sparse system, returned as column vectors (`None` entries are zero).
pub(crate) struct Kernel {
    pub vectors: Vec<Vec<PuiseuxElement>>,
    pub exact: bool,
    pub ambiguous: bool,
}

fn row_combine(target: &Row, p: &PuiseuxElement, f: &PuiseuxElement, pivot: &Row) -> Row {
    // p·target − f·pivot
    let mut out = Row::new();
    let scale_target = !p.is_one();
    for (&c, x) in target {
        out.insert(c, if scale_target { x.mul(p) } else { x.clone() });
    }
    for (&c, y) in pivot {
        let t = y.mul(f);
        let v = match out.remove(&c) {
            Some(x) => x.sub(&t),
            None => t.neg(),
        };
        if !v.is_exact_zero() {
            out.insert(c, v);
        }
    }
    out.retain(|_, v| !v.is_exact_zero());
    out
}

/// Reduced fraction-free elimination; pivots are chosen by [`pivot_rank`].
pub(crate) fn kernel(mut rows: Vec<Row>, ncols: usize) -> Result<Kernel> {
    rows.retain(|r| !r.is_empty());
    let mut exact = rows.iter().all(|r| r.values().all(|x| x.is_exact()));
    let mut ambiguous = false;
    let mut pivots: Vec<(usize, usize)> = vec![]; // (column, row index)
    let mut used = vec![false; rows.len()];
    for col in 0..ncols {
        let mut best: Option<usize> = None;
        for (i, r) in rows.iter().enumerate() {
            if used[i] {
                continue;
            }
            match r.get(&col) {
                Some(x) if x.is_zero() => ambiguous = true,
                Some(x) => {
                    if best.map(|b| pivot_rank(x) < pivot_rank(&rows[b][&col])).unwrap_or(true) {
                        best = Some(i);
                    }
                }
                None => {}
            }
        }
        let Some(pi) = best else { continue };
        used[pi] = true;
        let p = rows[pi][&col].clone();
        if p.is_exact_monomial() || !p.is_exact() {
            if !p.is_exact() {
                exact = false;
            }
            let inv = p.invert()?;
            let r: Row = rows[pi]
                .iter()
                .map(|(&c, x)| (c, if c == col { PuiseuxElement::one() } else { x.mul(&inv) }))
                .filter(|(_, x)| !x.is_exact_zero())
                .collect();
            rows[pi] = r;
        }
        let pivot_row = rows[pi].clone();
        let p = pivot_row[&col].clone();
        for i in 0..rows.len() {
            if i == pi {
                continue;
            }
            if let Some(f) = rows[i].get(&col).cloned() {
                rows[i] = row_combine(&rows[i], &p, &f, &pivot_row);
                rows[i].remove(&col);
            }
        }
        pivots.push((col, pi));
    }
    for (i, r) in rows.iter().enumerate() {
        if !used[i] && r.values().any(|x| !x.is_zero()) {
            return Err(Error::Invalid("elimination left a nonzero unused row".into()));
        }
        if !used[i] && !r.is_empty() {
            ambiguous = true;
        }
    }
    let pivot_cols: BTreeMap<usize, usize> = pivots.iter().copied().collect();
    let mut vectors = vec![];
    for free in (0..ncols).filter(|c| !pivot_cols.contains_key(c)) {
        // rows involved: pivot rows with a nonzero entry at `free`
        let involved: Vec<(usize, usize)> =
            pivots.iter().copied().filter(|(_, r)| rows[*r].contains_key(&free)).collect();
        let mut scale = PuiseuxElement::one();
        for (c, r) in &involved {
            let p = &rows[*r][c];
            if !p.is_one() {
                scale = scale.mul(p);
            }
        }
        let mut v = vec![PuiseuxElement::zero(); ncols];
        v[free] = scale.clone();
        for (c, r) in &involved {
            let mut others = PuiseuxElement::one();
            for (c2, r2) in &involved {
                if r2 != r {
                    let q = &rows[*r2][c2];
                    if !q.is_one() {
                        others = others.mul(q);
                    }
                }
            }
            v[*c] = rows[*r][&free].mul(&others).neg();
        }
        vectors.push(v);
    }
    Ok(Kernel { vectors, exact, ambiguous })
}

/// Unknown layout: for each vertex in order, `f_v` of shape `dim_N(v) × dim_M(v)`, row-major.
fn layout(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut offsets = vec![];
    let mut total = 0;
    for v in m.quiver().vertices() {
        offsets.push(total);
        total += m.dim(v) * n.dim(v);
    }
    (offsets, total)
}

/// `Hom(M, N)`: families `f` with `N_a f_{t(a)} = f_{h(a)} M_a` for every arrow `a`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    if m.quiver() != n.quiver() {
        return Err(Error::Shape("hom between representations of different quivers".into()));
    }
    let q = *m.quiver();
    let (offsets, total) = layout(m, n);
    let var = |v: crate::crown::Vertex, i: usize, j: usize| offsets[q.vertex_position(v)] + i * m.dim(v) + j;
    let mut rows: Vec<Row> = vec![];
    for a in q.arrows() {
        let (t, h) = (q.tail(a), q.head(a));
        let (ma, na) = (m.arrow(a), n.arrow(a));
        // entry (r, c) of N_a f_t − f_h M_a, r < dim_N(h), c < dim_M(t)
        for r in 0..n.dim(h) {
            for c in 0..m.dim(t) {
                let mut row = Row::new();
                for k in 0..n.dim(t) {
                    let x = na.get(r, k);
                    if !x.is_exact_zero() {
                        let e = row.entry(var(t, k, c)).or_insert_with(PuiseuxElement::zero);
                        *e = e.add(x);
                    }
                }
                for k in 0..m.dim(h) {
                    let x = ma.get(k, c);
                    if !x.is_exact_zero() {
                        let e = row.entry(var(h, r, k)).or_insert_with(PuiseuxElement::zero);
                        *e = e.sub(x);
                    }
                }
                row.retain(|_, x| !x.is_exact_zero());
                rows.push(row);
            }
        }
    }
    let ker = kernel(rows, total)?;
    if ker.ambiguous {
        return Err(Error::PrecisionExhausted("a pivot is zero at working precision".into()));
    }
    let basis: Vec<Vec<MatK>> = ker
        .vectors
        .iter()
        .map(|v| {
            q.vertices()
                .iter()
                .map(|&x| MatK::from_fn(n.dim(x), m.dim(x), |i, j| v[var(x, i, j)].clone()))
                .collect()
        })
        .collect();
    let note = if ker.exact {
        "exact".to_string()
    } else {
        let p = basis.iter().flatten().filter_map(|f| f.precision()).min();
        match p {
            Some(p) => format!("truncated at O(e^{p})"),
            None => "truncated".to_string(),
        }
    };
    Ok(HomSpace { dim: basis.len(), basis, exact: ker.exact, precision_note: note })
}

/// Whether `f` satisfies every intertwiner equation.
pub fn is_morphism(m: &Representation, n: &Representation, f: &[MatK]) -> Result<bool> {
    let q = m.quiver();
    for a in q.arrows() {
        let ft = &f[q.vertex_position(q.tail(a))];
        let fh = &f[q.vertex_position(q.head(a))];
        let lhs = n.arrow(a).mul(ft)?;
        let rhs = fh.mul(m.arrow(a))?;
        if !lhs.agrees_with(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

const ROUNDS: u64 = 16;

fn weights(round: u64, count: usize) -> Vec<i64> {
    if round == 0 {
        return vec![1; count];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(round);
    (0..count).map(|_| rng.gen_range(-15i64..=15)).collect()
}

/// Searches `Hom(M, N)` for an element invertible at every vertex.
pub fn isomorphism(m: &Representation, n: &Representation) -> Result<(Decision, Option<Vec<MatK>>)> {
    if m.dims() != n.dims() {
        return Ok((Decision::No, None));
    }
    let h = hom_space(m, n)?;
    if h.dim == 0 {
        return Ok((Decision::No, None));
    }
    for round in 0..ROUNDS {
        let w = weights(round, h.dim);
        let f: Vec<MatK> = (0..h.basis[0].len())
            .map(|v| {
                let mut acc = MatK::zero(h.basis[0][v].rows(), h.basis[0][v].cols());
                for (b, &wi) in h.basis.iter().zip(&w) {
                    if wi != 0 {
                        acc = acc.add(&b[v].scale(&PuiseuxElement::from_int(wi))).expect("same shape");
                    }
                }
                acc
            })
            .collect();
        let mut ok = true;
        for x in &f {
            let det = x.det()?;
            if det.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok((Decision::Yes, Some(f)));
        }
    }
    if h.dim == 1 && h.exact {
        // every morphism is a multiple of the singular basis element
        return Ok((Decision::No, None));
    }
    // an isomorphism forces dim Hom(M,N) = dim End(M) = dim Hom(N,M)
    let end = hom_space(m, m)?;
    let back = hom_space(n, m)?;
    if h.dim < end.dim || back.dim != h.dim {
        return Ok((Decision::No, None));
    }
    Ok((Decision::Undecided, None))
}

pub fn iso_decision(m: &Representation, n: &Representation) -> Result<Decision> {
    Ok(isomorphism(m, n)?.0)
}

/// `true`/`false`, or `PrecisionExhausted` when the search cannot decide.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    match iso_decision(m, n)? {
        Decision::Yes => Ok(true),
        Decision::No => Ok(false),
        Decision::Undecided => Err(Error::PrecisionExhausted("isomorphism search undecided".into())),
    }
}

pub fn is_ii(m: &Representation) -> Result<bool> {
    is_isomorphic(m, &m.twist(1))
}

/// Least `p ≥ 1` with `twist(M, p) ≅ M`; at most `d`.
pub fn smallest_twist_period(m: &Representation) -> Result<u32> {
    for p in 1..=m.d() {
        if p == m.d() || is_isomorphic(m, &m.twist(p as i64))? {
            return Ok(p);
        }
    }
    Ok(m.d())
}

pub fn end_dim(m: &Representation) -> Result<usize> {
    Ok(hom_space(m, m)?.dim)
}
