mod support;

use std::sync::Arc;

use sgcert::algebra::{build_path_algebra, Algebra, Quiver, Relation};
use sgcert::exactla::Field;
use sgcert::homology::stable_hom_dim;
use sgcert::module::{standard_module, StandardKind};
use support::brute::{stable_hom_by_factoring, Presentation};

struct Fixture {
    name: &'static str,
    vertices: &'static [&'static str],
    arrows: &'static [(&'static str, &'static str, &'static str)],
    relations: &'static [&'static str],
    dim: usize,
}

const FIXTURES: &[Fixture] = &[
    Fixture { name: "K", vertices: &["1"], arrows: &[], relations: &[], dim: 1 },
    Fixture { name: "D", vertices: &["1"], arrows: &[("x", "1", "1")], relations: &["x*x"], dim: 2 },
    Fixture {
        name: "A",
        vertices: &["1", "2"],
        arrows: &[("a", "1", "1"), ("b", "1", "2"), ("g", "2", "1")],
        relations: &["a*a", "g*b", "b*a"],
        dim: 7,
    },
    Fixture {
        name: "A'",
        vertices: &["1", "2"],
        arrows: &[("a", "1", "1"), ("b", "1", "2")],
        relations: &["a*a", "b*a"],
        dim: 4,
    },
    Fixture {
        name: "A''",
        vertices: &["1", "2"],
        arrows: &[("a", "1", "1"), ("b", "2", "1"), ("c", "2", "1")],
        relations: &["a*a"],
        dim: 7,
    },
    Fixture {
        name: "square",
        vertices: &["1", "2", "3", "4"],
        arrows: &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        relations: &["b*a - d*c"],
        dim: 9,
    },
    Fixture {
        name: "exterior",
        vertices: &["1"],
        arrows: &[("x", "1", "1"), ("y", "1", "1")],
        relations: &["x*y + y*x", "x*x", "y*y"],
        dim: 4,
    },
];

fn presentation(f: &Fixture) -> Presentation {
    Presentation {
        vertices: f.vertices.iter().map(|v| v.to_string()).collect(),
        arrows: f.arrows.iter().map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string())).collect(),
        relations: f.relations.iter().map(|r| r.to_string()).collect(),
    }
}

fn build(f: &Fixture, field: Field) -> Arc<Algebra> {
    let q = Quiver::new(f.vertices, f.arrows).unwrap();
    let rels: Vec<Relation> = f.relations.iter().map(|r| Relation::parse(&q, field, r).unwrap()).collect();
    build_path_algebra(f.name, field, &q, &rels, 32).unwrap()
}

#[test]
fn groebner_dimension_matches_path_enumeration() {
    for f in FIXTURES {
        let oracle = presentation(f).dimension();
        assert_eq!(oracle, f.dim, "oracle for {}", f.name);
        for field in [Field::Rational, Field::Prime(101)] {
            assert_eq!(build(f, field).dim(), oracle, "{} over {field}", f.name);
        }
    }
}

#[test]
fn stable_hom_matches_factoring_oracle() {
    let kinds = [StandardKind::Simple, StandardKind::Projective, StandardKind::Injective];
    for f in &FIXTURES[..5] {
        let a = build(f, Field::Rational);
        let mods: Vec<_> = kinds
            .iter()
            .flat_map(|&k| (0..a.num_prims()).map(move |i| (k, i)))
            .map(|(k, i)| standard_module(&a, k, i).unwrap())
            .collect();
        for m in &mods {
            for n in &mods {
                assert_eq!(stable_hom_dim(m, n).unwrap(), stable_hom_by_factoring(m, n), "{}", f.name);
            }
        }
    }
}
