use sgcert::algebra::{
    build_path_algebra, check_algebra, corner, find_algebra_iso, verify_algebra_iso, Idempotent, Quiver,
    Relation,
};
use sgcert::exactla::Field;

fn build(field: Field, vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[&str]) -> std::sync::Arc<sgcert::algebra::Algebra> {
    let q = Quiver::new(vertices, arrows).unwrap();
    let rels: Vec<Relation> = rels.iter().map(|r| Relation::parse(&q, field, r).unwrap()).collect();
    build_path_algebra("X", field, &q, &rels, 32).unwrap()
}

#[test]
fn vertex_corners_are_dual_numbers() {
    for field in [Field::Rational, Field::Prime(101)] {
        let d = build(field, &["1"], &[("x", "1", "1")], &["x*x"]);
        let algebras = [
            build(field, &["1", "2"], &[("a", "1", "1"), ("b", "1", "2"), ("g", "2", "1")], &["a*a", "g*b", "b*a"]),
            build(field, &["1", "2"], &[("a", "1", "1"), ("b", "1", "2")], &["a*a", "b*a"]),
            build(field, &["1", "2"], &[("a", "1", "1"), ("b", "2", "1"), ("c", "2", "1")], &["a*a"]),
        ];
        for a in &algebras {
            let c = corner(a, &Idempotent::from_labels(a, &["1"]).unwrap()).unwrap();
            assert_eq!(c.algebra.dim(), 2);
            assert!(check_algebra(&c.algebra).all_passed());
            let iso = find_algebra_iso(&d, &c.algebra, 32, 7).unwrap().expect("corner is the dual numbers");
            assert!(verify_algebra_iso(&d, &c.algebra, &iso));
        }
        // e2·A·e2 is spanned by e2 and b*g, and (b*g)² = 0
        let c = corner(&algebras[0], &Idempotent::from_labels(&algebras[0], &["2"]).unwrap()).unwrap();
        assert!(find_algebra_iso(&d, &c.algebra, 32, 7).unwrap().is_some());
        // the other vertex of A' and A'' is a bare field
        for a in &algebras[1..] {
            let c = corner(a, &Idempotent::from_labels(a, &["2"]).unwrap()).unwrap();
            assert_eq!(c.algebra.dim(), 1);
            assert!(c.algebra.is_semisimple());
        }
    }
}
