use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use crown_species::crown::{CrownQuiver, Vertex};
use crown_species::descent::{rep_family_m, rep_m_a};
use crown_species::reps::{
    end_dim, hom_space, is_isomorphic, is_morphism, isomorphism, smallest_twist_period, string_module, Decision, MatK,
    Representation,
};
use crown_species::scalars::{el, PuiseuxElement};

type Q = BigRational;

fn q(i: i64) -> Q {
    Q::from_integer(i.into())
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / pivot.clone();
                for k in 0..ncols {
                    let t = rows[r][k].clone() * f.clone();
                    rows[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Integer-valued representation data: dims (sources then sinks) and one integer matrix per arrow.
#[derive(Clone, Debug)]
struct IntRep {
    n: u32,
    dims: Vec<usize>,
    mats: Vec<Vec<Vec<i64>>>,
}

impl IntRep {
    fn build(&self) -> Representation {
        let q = CrownQuiver::new(self.n).unwrap();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let rows = m.iter().map(|r| r.iter().map(|&x| PuiseuxElement::from_int(x)).collect()).collect::<Vec<_>>();
                if rows.is_empty() {
                    MatK::zero(0, 0)
                } else {
                    MatK::from_rows(rows).unwrap()
                }
            })
            .collect::<Vec<_>>();
        let mats = q
            .arrows()
            .into_iter()
            .zip(mats)
            .map(|(a, m)| {
                // an arrow with zero-dimensional head comes out of the strategy as an empty row list
                let shape = (self.dims[q.vertex_position(q.head(a))], self.dims[q.vertex_position(q.tail(a))]);
                if m.shape() == shape { m } else { MatK::zero(shape.0, shape.1) }
            })
            .collect();
        Representation::new(q, self.n, self.dims.clone(), mats).unwrap()
    }
}

fn int_rep(n: u32) -> impl Strategy<Value = IntRep> {
    let q = CrownQuiver::new(n).unwrap();
    prop::collection::vec(0usize..=2, 2 * n as usize).prop_flat_map(move |dims| {
        let shapes: Vec<(usize, usize)> = q
            .arrows()
            .into_iter()
            .map(|a| (dims[q.vertex_position(q.head(a))], dims[q.vertex_position(q.tail(a))]))
            .collect();
        let mats = shapes
            .into_iter()
            .map(|(r, c)| prop::collection::vec(prop::collection::vec(-2i64..=2, c), r))
            .collect::<Vec<_>>();
        (Just(dims), mats).prop_map(move |(dims, mats)| IntRep { n, dims, mats })
    })
}

fn int_pair() -> impl Strategy<Value = (IntRep, IntRep)> {
    (1u32..=3).prop_flat_map(|n| (int_rep(n), int_rep(n)))
}

/// `dim Hom(M, N)` as the nullity of the stacked intertwiner equations.
fn hom_dim_oracle(m: &IntRep, n: &IntRep) -> usize {
    let quiver = CrownQuiver::new(m.n).unwrap();
    let verts = quiver.vertices();
    let mut offsets = vec![];
    let mut total = 0;
    for v in &verts {
        offsets.push(total);
        let p = quiver.vertex_position(*v);
        total += m.dims[p] * n.dims[p];
    }
    let entry = |mat: &Vec<Vec<i64>>, i: usize, j: usize| mat.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0);
    let mut rows = vec![];
    for (ai, a) in quiver.arrows().into_iter().enumerate() {
        let (t, h) = (quiver.vertex_position(quiver.tail(a)), quiver.vertex_position(quiver.head(a)));
        for r in 0..n.dims[h] {
            for c in 0..m.dims[t] {
                let mut row = vec![q(0); total];
                for k in 0..n.dims[t] {
                    row[offsets[t] + k * m.dims[t] + c] += q(entry(&n.mats[ai], r, k));
                }
                for k in 0..m.dims[h] {
                    row[offsets[h] + r * m.dims[h] + k] -= q(entry(&m.mats[ai], k, c));
                }
                rows.push(row);
            }
        }
    }
    if total == 0 {
        return 0;
    }
    total - rank(rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_dimension_matches_oracle((a, b) in int_pair()) {
        let h = hom_space(&a.build(), &b.build()).unwrap();
        prop_assert_eq!(h.dim, hom_dim_oracle(&a, &b));
        for f in &h.basis {
            prop_assert!(is_morphism(&a.build(), &b.build(), f).unwrap());
        }
    }

    #[test]
    fn hom_is_additive((a, b) in int_pair()) {
        let (ra, rb) = (a.build(), b.build());
        let sum = ra.direct_sum(&rb).unwrap();
        let lhs = hom_space(&ra, &sum).unwrap().dim;
        let rhs = hom_space(&ra, &ra).unwrap().dim + hom_space(&ra, &rb).unwrap().dim;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_by_d_is_identity(a in (1u32..=3).prop_flat_map(int_rep)) {
        let r = a.build().with_d(2 * a.n).unwrap();
        prop_assert_eq!(r.twist(r.d() as i64), r.clone());
        prop_assert_eq!(r.twist(1).twist(-1), r.clone());
    }

    #[test]
    fn direct_sum_adds_invariants((a, b) in int_pair()) {
        let (ra, rb) = (a.build(), b.build());
        let s = ra.direct_sum(&rb).unwrap();
        prop_assert_eq!(s.dim_vector(), ra.dim_vector().add(&rb.dim_vector()));
        prop_assert_eq!(s.defect(), ra.defect() + rb.defect());
    }

    #[test]
    fn determinant_is_multiplicative(x in prop::collection::vec(-3i64..=3, 9), y in prop::collection::vec(-3i64..=3, 9)) {
        let m = |v: &Vec<i64>| MatK::from_fn(3, 3, |i, j| PuiseuxElement::from_int(v[3 * i + j]));
        let (a, b) = (m(&x), m(&y));
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), a.det().unwrap().mul(&b.det().unwrap()));
    }
}

#[test]
fn simple_string_has_trivial_endomorphisms() {
    let q3 = CrownQuiver::new(3).unwrap();
    let m = string_module(&q3, &q3.string_word(Vertex::Sink(1), 1).unwrap(), 3).unwrap();
    assert_eq!(end_dim(&m).unwrap(), 1);
}

#[test]
fn band_parameters_separate_isomorphism_classes() {
    let a = rep_m_a(&el("e^(1/2)"), 2, 2).unwrap();
    let b = rep_m_a(&el("-e^(1/2)"), 2, 2).unwrap();
    assert!(is_isomorphic(&a, &a).unwrap());
    assert!(!is_isomorphic(&a, &b).unwrap());
    let c = rep_m_a(&el("e^(1/2) + e"), 2, 2).unwrap();
    assert!(!is_isomorphic(&a, &c).unwrap());
}

#[test]
fn twisting_a_band_moves_its_parameter() {
    let a = el("e^(1/3) + 2*e");
    let m = rep_m_a(&a, 3, 3).unwrap();
    let moved = rep_m_a(&a.sigma(1), 3, 3).unwrap();
    assert!(is_isomorphic(&m.twist(1), &moved).unwrap());
    assert_eq!(smallest_twist_period(&m).unwrap(), 3);
}

#[test]
fn one_arrow_string_is_not_twist_invariant() {
    for n in 2..=4 {
        let m = rep_family_m(1, n).unwrap();
        assert!(!is_isomorphic(&m, &m.twist(1)).unwrap());
        assert_eq!(smallest_twist_period(&m).unwrap(), n);
    }
}

#[test]
fn doubled_module_has_large_endomorphism_ring() {
    let m = rep_m_a(&el("e^(1/2)"), 2, 2).unwrap();
    let mm = m.direct_sum(&m).unwrap();
    assert!(end_dim(&mm).unwrap() >= 4);
}

#[test]
fn isomorphism_is_returned() {
    let m = rep_m_a(&el("e^(1/2)"), 2, 2).unwrap();
    let (dec, f) = isomorphism(&m, &m).unwrap();
    assert_eq!(dec, Decision::Yes);
    assert!(is_morphism(&m, &m, &f.unwrap()).unwrap());
}

#[test]
fn matrix_text_round_trip() {
    let m = MatK::parse("1, e^(1/2); -e, 0").unwrap();
    assert_eq!(MatK::parse(&m.to_string()).unwrap(), m);
    assert_eq!(m.det().unwrap(), el("e^(3/2)"));
    let inv = m.inverse().unwrap();
    assert!(m.mul(&inv).unwrap().is_identity());
}

#[test]
fn shape_errors() {
    let q = CrownQuiver::new(2).unwrap();
    let bad = Representation::new(q, 2, vec![1, 1, 1, 1], vec![MatK::identity(2); 4]);
    assert!(bad.is_err());
    assert!(Representation::new(q, 3, vec![0; 4], vec![MatK::zero(0, 0); 4]).is_err());
}

#[test]
fn rank_helper_sanity() {
    assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
    assert!(Q::one() > Q::zero());
}
