use std::sync::Arc;

use crate::algebra::{build_path_algebra, Algebra, Quiver, Relation};
use crate::exactla::Field;
use crate::triangular::{build_triangular, Bimodule, Orientation, TriangularData};

pub fn build(
    name: &str,
    field: Field,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    rels: &[&str],
) -> Arc<Algebra> {
    let q = Quiver::new(vertices, arrows).unwrap();
    let rels: Vec<Relation> = rels.iter().map(|r| Relation::parse(&q, field, r).unwrap()).collect();
    build_path_algebra(name, field, &q, &rels, 32).unwrap()
}

pub fn field_k(field: Field) -> Arc<Algebra> {
    build("K", field, &["1"], &[], &[])
}

pub fn dual_numbers(field: Field) -> Arc<Algebra> {
    build("D", field, &["1"], &[("x", "1", "1")], &["x*x"])
}

pub fn fix_a(field: Field) -> Arc<Algebra> {
    build(
        "A",
        field,
        &["1", "2"],
        &[("a", "1", "1"), ("b", "1", "2"), ("g", "2", "1")],
        &["a*a", "g*b", "b*a"],
    )
}

pub fn fix_a_prime(field: Field) -> Arc<Algebra> {
    build("A'", field, &["1", "2"], &[("a", "1", "1"), ("b", "1", "2")], &["a*a", "b*a"])
}

pub fn fix_a_dprime(field: Field) -> Arc<Algebra> {
    build(
        "A''",
        field,
        &["1", "2"],
        &[("a", "1", "1"), ("b", "2", "1"), ("c", "2", "1")],
        &["a*a"],
    )
}

pub const Q: Field = Field::Rational;

fn scalar_action(a: &Arc<Algebra>) -> Vec<crate::exactla::Mat> {
    (0..a.dim())
        .map(|j| {
            let c = a.top_coefficients(j).unwrap().iter().fold(a.field().zero(), |acc, x| &acc + x);
            crate::exactla::Mat::from_rows(a.field(), vec![vec![c]]).unwrap()
        })
        .collect()
}

/// `(K M; 0 D)` with `M` one-dimensional and the radical of `D` acting by zero.
pub fn aprime_data(field: Field) -> TriangularData {
    let (k, d) = (field_k(field), dual_numbers(field));
    let m = Bimodule::new(&k, &d, vec!["m".into()], scalar_action(&k), scalar_action(&d)).unwrap();
    build_triangular(&k, &d, &m, Orientation::Upper).unwrap()
}

/// `(K 0; N D)` with `N = D²` free on the left and `K` acting by scalars on the right.
pub fn adprime_data(field: Field) -> TriangularData {
    let (k, d) = (field_k(field), dual_numbers(field));
    let left = d.left_mult_all().iter().map(|l| crate::exactla::Mat::block_diag(field, &[l, l])).collect();
    let right = vec![crate::exactla::Mat::identity(field, 4)];
    let labels = ["1", "x", "1'", "x'"].iter().map(|s| s.to_string()).collect();
    let n = Bimodule::new(&d, &k, labels, left, right).unwrap();
    build_triangular(&k, &d, &n, Orientation::Lower).unwrap()
}

/// `(D D; 0 D)` over the regular bimodule.
pub fn dd_data(field: Field) -> TriangularData {
    let d = dual_numbers(field);
    build_triangular(&d, &d, &Bimodule::regular(&d), Orientation::Upper).unwrap()
}
