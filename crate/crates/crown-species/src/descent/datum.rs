use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::reps::{is_morphism, MatK, Representation};
use crate::scalars::PuiseuxElement;

/// The cyclic shift `E_size` with `E e_k = e_{k+1}` and `E e_size = e_1`.
pub fn shift_matrix(size: usize) -> MatK {
    MatK::from_fn(size, size, |i, j| {
        if i == (j + 1) % size {
            PuiseuxElement::one()
        } else {
            PuiseuxElement::zero()
        }
    })
}

/// `E^{-1}`, the transpose of [`shift_matrix`].
pub fn shift_matrix_inv(size: usize) -> MatK {
    shift_matrix(size).transpose()
}

/// A morphism `f : M → twist(M, 1)` with a cocycle order `l`.
#[derive(Clone, Debug)]
pub struct DescentDatum {
    pub rep: Representation,
    /// One matrix per vertex, sources then sinks.
    pub f: Vec<MatK>,
    pub order: u32,
}

impl DescentDatum {
    pub fn new(rep: Representation, f: Vec<MatK>, order: u32) -> Result<Self> {
        if f.len() != rep.dims().len() {
            return Err(Error::Shape(format!("expected {} components, got {}", rep.dims().len(), f.len())));
        }
        Ok(DescentDatum { rep, f, order })
    }

    /// `σ^{l-1}(f_{v+l-1}) ⋯ σ(f_{v+1}) f_v` at the vertex in position `pos`.
    pub fn composite(&self, pos: usize) -> Result<MatK> {
        let q = *self.rep.quiver();
        let v = q.vertices()[pos];
        let mut acc = self.f[pos].clone();
        for r in 1..self.order as i64 {
            let w = q.gamma(v, -r);
            let step = self.f[q.vertex_position(w)].sigma(r);
            acc = step.mul(&acc)?;
        }
        Ok(acc)
    }

    /// Returns a copy with `f_v` multiplied by `c` at one vertex.
    pub fn perturbed(&self, pos: usize, c: &PuiseuxElement) -> Self {
        let mut f = self.f.clone();
        f[pos] = f[pos].scale(c);
        DescentDatum { rep: self.rep.clone(), f, order: self.order }
    }

    pub fn with_order(&self, order: u32) -> Self {
        DescentDatum { rep: self.rep.clone(), f: self.f.clone(), order }
    }
}

fn precision_of(m: &MatK) -> String {
    match m.precision() {
        None => "exact".into(),
        Some(p) => format!("O(e^{p})"),
    }
}

/// Checks that `f` is a morphism into the twist, that every `f_v` is invertible, and that the
/// order-`l` composite is the identity at every vertex.
pub fn verify_cocycle(datum: &DescentDatum) -> VerificationReport {
    let rep = &datum.rep;
    let mut report = VerificationReport::new("cocycle")
        .param("n", rep.n())
        .param("d", rep.d())
        .param("l", datum.order);
    let twisted = rep.twist(1);
    let shapes_ok = rep.quiver().vertices().iter().enumerate().all(|(p, &v)| {
        datum.f[p].shape() == (twisted.dim(v), rep.dim(v))
    });
    if !shapes_ok {
        report.push("component shapes", "dim twist(M)_v × dim M_v", "mismatch", "exact", false);
        return report.finish();
    }
    let morphism = is_morphism(rep, &twisted, &datum.f);
    report.push(
        "morphism into twist",
        "all arrow squares commute",
        match &morphism {
            Ok(true) => "all commute",
            Ok(false) => "some square fails",
            Err(_) => "shape error",
        },
        "exact",
        matches!(morphism, Ok(true)),
    );
    let mut singular = vec![];
    for (p, m) in datum.f.iter().enumerate() {
        match m.det() {
            Ok(det) if !det.is_zero() => {}
            _ => singular.push(rep.quiver().vertices()[p].to_string()),
        }
    }
    report.push(
        "components invertible",
        "all",
        &if singular.is_empty() { "all".to_string() } else { format!("singular at {}", singular.join(",")) },
        "exact",
        singular.is_empty(),
    );
    let periodic = rep.twist(datum.order as i64) == *rep;
    report.push("twist^l(M) = M", "equal", if periodic { "equal" } else { "different" }, "exact", periodic);
    for (p, v) in rep.quiver().vertices().iter().enumerate() {
        let name = format!("composite at {v}");
        match datum.composite(p) {
            Ok(c) if c.is_square() && c.rows() == rep.dim(*v) => {
                let ok = c.is_identity();
                let got = if ok { "id".to_string() } else { c.to_string() };
                report.push(&name, "id", &got, &precision_of(&c), ok);
            }
            Ok(c) => report.push(&name, "id", &format!("{}x{} matrix", c.rows(), c.cols()), "exact", false),
            Err(e) => report.push(&name, "id", &e.to_string(), "exact", false),
        }
    }
    report.finish()
}
