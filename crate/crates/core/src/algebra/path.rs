use std::collections::HashMap;
use std::sync::Arc;

use crate::exactla::{Field, Mat};

use super::groebner::GroebnerBasis;
use super::quiver::{PathPoly, PathWord, Quiver, Relation};
use super::{Algebra, AlgebraError, Elem, Provenance, StructureData};

pub const DEFAULT_DEGREE_BOUND: usize = 32;

/// A basis element of a path algebra: a trivial path or a normal nontrivial path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisPath {
    Vertex(usize),
    Word(PathWord),
}

/// The quiver presentation behind a path algebra's basis.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: Quiver,
    pub paths: Vec<BasisPath>,
}

impl Presentation {
    /// Presentation of the opposite algebra: reversed quiver, reversed words.
    pub fn opposite(&self) -> Presentation {
        Presentation {
            quiver: self.quiver.opposite(),
            paths: self
                .paths
                .iter()
                .map(|p| match p {
                    BasisPath::Vertex(v) => BasisPath::Vertex(*v),
                    BasisPath::Word(w) => {
                        BasisPath::Word(PathWord(w.0.iter().rev().copied().collect()))
                    }
                })
                .collect(),
        }
    }

    /// `(source, target)` of a basis path.
    pub fn endpoints(&self, i: usize) -> (usize, usize) {
        match &self.paths[i] {
            BasisPath::Vertex(v) => (*v, *v),
            BasisPath::Word(w) => self.quiver.endpoints(w).expect("basis paths compose"),
        }
    }
}

/// Builds `KQ/I` for an admissible ideal `I` generated by `relations`.
///
/// The basis consists of the trivial paths (one per vertex, in vertex order) followed by the
/// normal paths of a Gröbner basis for the length-lexicographic order.
pub fn build_path_algebra(
    name: &str,
    field: Field,
    quiver: &Quiver,
    relations: &[Relation],
    degree_bound: usize,
) -> Result<Arc<Algebra>, AlgebraError> {
    let gb = GroebnerBasis::compute(quiver, field, relations, degree_bound)?;
    let words = gb.normal_words(quiver)?;

    let nv = quiver.vertices().len();
    let mut paths: Vec<BasisPath> = (0..nv).map(BasisPath::Vertex).collect();
    paths.extend(words.iter().cloned().map(BasisPath::Word));
    let n = paths.len();
    let index: HashMap<&PathWord, usize> = words.iter().enumerate().map(|(i, w)| (w, nv + i)).collect();

    let unit = |i: usize| {
        let mut v: Elem = vec![field.zero(); n];
        v[i] = field.one();
        v
    };
    let endpoints = |p: &BasisPath| match p {
        BasisPath::Vertex(v) => (*v, *v),
        BasisPath::Word(w) => quiver.endpoints(w).expect("normal words compose"),
    };

    let product = |x: &BasisPath, y: &BasisPath| -> Elem {
        let (sx, _) = endpoints(x);
        let (_, ty) = endpoints(y);
        if sx != ty {
            return vec![field.zero(); n];
        }
        match (x, y) {
            (BasisPath::Vertex(_), _) => unit(position(&paths, y)),
            (_, BasisPath::Vertex(_)) => unit(position(&paths, x)),
            (BasisPath::Word(p), BasisPath::Word(q)) => {
                let poly: PathPoly = [(p.concat(q), field.one())].into_iter().collect();
                let reduced = gb.reduce(poly);
                let mut v = vec![field.zero(); n];
                for (w, c) in reduced {
                    let i = index[&w];
                    v[i] = c;
                }
                v
            }
        }
    };

    let mut left_mult = Vec::with_capacity(n);
    for x in &paths {
        let cols: Vec<Elem> = paths.iter().map(|y| product(x, y)).collect();
        left_mult.push(Mat::from_columns(field, n, &cols));
    }
    let labels = paths
        .iter()
        .map(|p| match p {
            BasisPath::Vertex(v) => format!("e{}", quiver.vertices()[*v]),
            BasisPath::Word(w) => quiver.word_label(w),
        })
        .collect();
    let prims = (0..nv).map(unit).collect();
    let radical = (nv..n).map(unit).collect();
    let data = StructureData {
        name: name.to_string(),
        field,
        labels,
        left_mult,
        prims,
        prim_labels: quiver.vertices().to_vec(),
        radical,
        provenance: Provenance::PathAlgebra,
    };
    Algebra::assemble(
        data,
        Some(Presentation {
            quiver: quiver.clone(),
            paths,
        }),
        None,
    )
}

fn position(paths: &[BasisPath], p: &BasisPath) -> usize {
    paths.iter().position(|q| q == p).expect("basis path")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_algebra;

    fn build(vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[&str]) -> Arc<Algebra> {
        let q = Quiver::new(vertices, arrows).unwrap();
        let rels: Vec<Relation> = rels
            .iter()
            .map(|r| Relation::parse(&q, Field::Rational, r).unwrap())
            .collect();
        build_path_algebra("T", Field::Rational, &q, &rels, DEFAULT_DEGREE_BOUND).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let d = build(&["1"], &[("x", "1", "1")], &["x*x"]);
        assert_eq!(d.labels(), ["e1", "x"]);
        assert!(check_algebra(&d).all_passed());
    }

    #[test]
    fn fix_a_basis() {
        let a = build(
            &["1", "2"],
            &[("a", "1", "1"), ("b", "1", "2"), ("g", "2", "1")],
            &["a*a", "g*b", "b*a"],
        );
        assert_eq!(a.labels(), ["e1", "e2", "a", "b", "g", "a*g", "b*g"]);
        // a · g = a*g
        let ag = a.product_basis(2, 4);
        assert_eq!(ag, a.basis_vector(5));
        // g · b = 0 and b · a = 0
        assert!(a.product_basis(4, 3).iter().all(|x| x.is_zero()));
        assert!(a.product_basis(3, 2).iter().all(|x| x.is_zero()));
        // e2 · b = b (b ends at 2), b · e1 = b (b starts at 1)
        assert_eq!(a.product_basis(1, 3), a.basis_vector(3));
        assert_eq!(a.product_basis(3, 0), a.basis_vector(3));
        assert!(check_algebra(&a).all_passed());
    }

    #[test]
    fn fix_a_prime_and_double_prime() {
        let ap = build(&["1", "2"], &[("a", "1", "1"), ("b", "1", "2")], &["a*a", "b*a"]);
        assert_eq!(ap.dim(), 4);
        let app = build(
            &["1", "2"],
            &[("a", "1", "1"), ("b", "2", "1"), ("c", "2", "1")],
            &["a*a"],
        );
        assert_eq!(app.dim(), 7);
        assert_eq!(app.labels(), ["e1", "e2", "a", "b", "c", "a*b", "a*c"]);
    }

    #[test]
    fn non_admissible_rejected() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let r = Relation::parse(&q, Field::Rational, "x").unwrap();
        assert!(matches!(
            build_path_algebra("bad", Field::Rational, &q, &[r], 32),
            Err(AlgebraError::NotAdmissible(_))
        ));
    }
}
