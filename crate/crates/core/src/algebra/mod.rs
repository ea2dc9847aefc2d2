//! Finite-dimensional algebras given by structure constants.
//!
//! Every algebra carries a complete list of primitive orthogonal idempotents and a basis of
//! its Jacobson radical. These are constructed for path algebras (vertex idempotents and the
//! arrow ideal) and propagated through corners, opposites and triangular constructions.

mod check;
mod groebner;
mod iso;
mod path;
mod quiver;

pub use check::{check_algebra, CheckItem, Diagnostics};
pub use groebner::GroebnerBasis;
pub use iso::{find_algebra_iso, peirce_dims, verify_algebra_iso};
pub use path::{build_path_algebra, BasisPath, Presentation, DEFAULT_DEGREE_BOUND};
pub use quiver::{Arrow, PathPoly, PathWord, Quiver, Relation};

use std::sync::{Arc, OnceLock, Weak};

use thiserror::Error;

use crate::exactla::{EchelonBasis, Field, LinalgError, Mat, Scalar, Subspace};

/// Coefficient vector of an algebra element over the chosen basis.
pub type Elem = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {name:?} in {context:?}")]
    UnknownArrow { name: String, context: String },
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("path {0} is not composable")]
    NonComposable(String),
    #[error("relation {0} mixes paths with different endpoints")]
    NotUniform(String),
    #[error("relation word {0} has length < 2 (not admissible)")]
    NotAdmissible(String),
    #[error("relation {0:?} is zero")]
    ZeroRelation(String),
    #[error("dimension not certified finite within degree bound {bound}")]
    NotFiniteWithinBound { bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("idempotent must select at least one primitive idempotent")]
    EmptyIdempotent,
    #[error("primitive idempotent index {0} out of range")]
    BadPrimitive(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How an algebra was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    PathAlgebra,
    Corner,
    Triangular,
    Opposite,
}

/// A generator of the radical modulo its square, lying in `e_to · rad · e_from`.
#[derive(Clone, Debug)]
pub struct RadicalGenerator {
    pub element: Elem,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug)]
struct Derived {
    generators: Vec<RadicalGenerator>,
    /// For each basis element, its coefficients on the primitive idempotents modulo the radical.
    top: Vec<Vec<Scalar>>,
}

/// A finite-dimensional basic algebra with structure constants.
#[derive(Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    /// `left_mult[i]` is the matrix of `y ↦ b_i · y`.
    left_mult: Vec<Mat>,
    prims: Vec<Elem>,
    prim_labels: Vec<String>,
    radical: Vec<Elem>,
    provenance: Provenance,
    presentation: Option<Presentation>,
    origin: Option<Weak<Algebra>>,
    opposite: OnceLock<Arc<Algebra>>,
    derived: OnceLock<Derived>,
    pub(crate) projectives: OnceLock<Vec<crate::module::ProjectiveData>>,
}

/// Raw structure data for [`Algebra::from_structure`].
#[derive(Clone, Debug)]
pub struct StructureData {
    pub name: String,
    pub field: Field,
    pub labels: Vec<String>,
    pub left_mult: Vec<Mat>,
    pub prims: Vec<Elem>,
    pub prim_labels: Vec<String>,
    pub radical: Vec<Elem>,
    pub provenance: Provenance,
}

impl Algebra {
    /// Assembles an algebra, checking shapes and field consistency only. Use
    /// [`check_algebra`] for the algebraic axioms.
    pub fn from_structure(data: StructureData) -> Result<Arc<Algebra>, AlgebraError> {
        Self::assemble(data, None, None)
    }

    fn assemble(
        data: StructureData,
        presentation: Option<Presentation>,
        origin: Option<Weak<Algebra>>,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        let n = data.labels.len();
        let shape_err = |m: String| Err(AlgebraError::Structure(m));
        if data.left_mult.len() != n {
            return shape_err(format!("{} multiplication matrices for dimension {n}", data.left_mult.len()));
        }
        for m in &data.left_mult {
            if m.rows() != n || m.cols() != n {
                return shape_err("multiplication matrix has the wrong shape".into());
            }
            if m.field() != data.field {
                return Err(LinalgError::MixedField.into());
            }
        }
        for v in data.prims.iter().chain(&data.radical) {
            if v.len() != n {
                return shape_err("element vector has the wrong length".into());
            }
            if v.iter().any(|x| x.field() != data.field) {
                return Err(LinalgError::MixedField.into());
            }
        }
        if data.prims.is_empty() && n > 0 {
            return shape_err("no primitive idempotents".into());
        }
        if data.prim_labels.len() != data.prims.len() {
            return shape_err("primitive idempotent labels do not match".into());
        }
        Ok(Arc::new(Algebra {
            name: data.name,
            field: data.field,
            labels: data.labels,
            left_mult: data.left_mult,
            prims: data.prims,
            prim_labels: data.prim_labels,
            radical: data.radical,
            provenance: data.provenance,
            presentation,
            origin,
            opposite: OnceLock::new(),
            derived: OnceLock::new(),
            projectives: OnceLock::new(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn prims(&self) -> &[Elem] {
        &self.prims
    }

    pub fn prim_labels(&self) -> &[String] {
        &self.prim_labels
    }

    pub fn num_prims(&self) -> usize {
        self.prims.len()
    }

    /// Index of the primitive idempotent with the given label (vertex name).
    pub fn prim_index(&self, label: &str) -> Option<usize> {
        self.prim_labels.iter().position(|l| l == label)
    }

    pub fn radical(&self) -> &[Elem] {
        &self.radical
    }

    pub fn left_mult(&self, i: usize) -> &Mat {
        &self.left_mult[i]
    }

    pub fn left_mult_all(&self) -> &[Mat] {
        &self.left_mult
    }

    pub fn basis_vector(&self, i: usize) -> Elem {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero(&self) -> Elem {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> Elem {
        let mut acc = self.zero();
        for p in &self.prims {
            acc = add(&acc, p);
        }
        acc
    }

    /// Matrix of `y ↦ x · y`.
    pub fn left_mult_elem(&self, x: &[Scalar]) -> Mat {
        crate::exactla::linear_combination(self.field, self.dim(), self.dim(), x, &self.left_mult)
    }

    /// Matrix of `y ↦ y · x`.
    pub fn right_mult_elem(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Elem> = self.left_mult.iter().map(|l| l.mul_vec(x)).collect();
        Mat::from_columns(self.field, self.dim(), &cols)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        let mut out = self.zero();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let prod = self.left_mult[i].mul_vec(y);
            for (o, p) in out.iter_mut().zip(prod) {
                if !p.is_zero() {
                    *o = &*o + &(c * &p);
                }
            }
        }
        out
    }

    /// `b_i · b_j` as a coefficient vector.
    pub fn product_basis(&self, i: usize, j: usize) -> Elem {
        self.left_mult[i].column(j)
    }

    /// Structural equality: same field, same structure constants and same primitive idempotents.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.field == other.field
            && self.left_mult == other.left_mult
            && self.prims == other.prims
    }

    /// The opposite algebra: same basis, reversed multiplication. Primitive idempotents and
    /// radical carry over unchanged. Taking the opposite twice returns the original `Arc`.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(origin) = self.origin.as_ref().and_then(Weak::upgrade) {
            return origin;
        }
        self.opposite
            .get_or_init(|| {
                let n = self.dim();
                let left_mult = (0..n)
                    .map(|i| {
                        let cols: Vec<Elem> = (0..n).map(|j| self.product_basis(j, i)).collect();
                        Mat::from_columns(self.field, n, &cols)
                    })
                    .collect();
                let name = match self.name.strip_suffix("^op") {
                    Some(base) => base.to_string(),
                    None => format!("{}^op", self.name),
                };
                let data = StructureData {
                    name,
                    field: self.field,
                    labels: self.labels.clone(),
                    left_mult,
                    prims: self.prims.clone(),
                    prim_labels: self.prim_labels.clone(),
                    radical: self.radical.clone(),
                    provenance: Provenance::Opposite,
                };
                let presentation = self.presentation.as_ref().map(Presentation::opposite);
                Algebra::assemble(data, presentation, Some(Arc::downgrade(self)))
                    .expect("opposite of a valid algebra")
            })
            .clone()
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let field = self.field;
            let n = self.dim();
            // rad^2
            let mut span = EchelonBasis::new(field, n);
            for r in &self.radical {
                for s in &self.radical {
                    span.insert(&self.mul(r, s));
                }
            }
            let mut generators = Vec::new();
            for (to, et) in self.prims.iter().enumerate() {
                for (from, ef) in self.prims.iter().enumerate() {
                    for r in &self.radical {
                        let v = self.mul(&self.mul(et, r), ef);
                        if span.insert(&v) {
                            generators.push(RadicalGenerator {
                                element: v,
                                from,
                                to,
                            });
                        }
                    }
                }
            }
            // top coefficients: basis elements in coordinates [prims | radical]
            let mut cols: Vec<Elem> = self.prims.clone();
            cols.extend(self.radical.iter().cloned());
            let top = match Subspace::new(Mat::from_columns(field, n, &cols)) {
                Ok(sub) if sub.dim() == n => (0..n)
                    .map(|i| {
                        let c = sub.coords(&self.basis_vector(i)).expect("full basis");
                        c[..self.prims.len()].to_vec()
                    })
                    .collect(),
                _ => Vec::new(),
            };
            Derived { generators, top }
        })
    }

    /// Lifts of a basis of `rad / rad²`, each inside some `e_j · rad · e_i`. Together with
    /// the primitive idempotents they generate the algebra.
    pub fn radical_generators(&self) -> &[RadicalGenerator] {
        &self.derived().generators
    }

    /// Coefficients of basis element `i` on the primitive idempotents modulo the radical.
    /// Empty when the primitive idempotents and radical do not span the algebra.
    pub fn top_coefficients(&self, i: usize) -> Option<&[Scalar]> {
        self.derived().top.get(i).map(Vec::as_slice)
    }

    /// `true` when `span(prims) ⊕ rad` is the whole algebra (basic and split).
    pub fn is_basic_split(&self) -> bool {
        !self.derived().top.is_empty() || self.dim() == 0
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical.is_empty()
    }
}

pub(crate) fn add(x: &[Scalar], y: &[Scalar]) -> Elem {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// A sum of primitive idempotents selected by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent {
    support: Vec<usize>,
    element: Elem,
}

impl Idempotent {
    pub fn new(alg: &Algebra, support: &[usize]) -> Result<Idempotent, AlgebraError> {
        let mut s: Vec<usize> = support.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&i| i >= alg.num_prims()) {
            return Err(AlgebraError::BadPrimitive(bad));
        }
        let mut element = alg.zero();
        for &i in &s {
            element = add(&element, &alg.prims()[i]);
        }
        Ok(Idempotent {
            support: s,
            element,
        })
    }

    pub fn full(alg: &Algebra) -> Idempotent {
        let all: Vec<usize> = (0..alg.num_prims()).collect();
        Idempotent::new(alg, &all).expect("all indices valid")
    }

    /// Looks primitive idempotents up by label (vertex name).
    pub fn from_labels<S: AsRef<str>>(alg: &Algebra, labels: &[S]) -> Result<Idempotent, AlgebraError> {
        let idx = labels
            .iter()
            .map(|l| {
                alg.prim_index(l.as_ref())
                    .ok_or_else(|| AlgebraError::UnknownVertex(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Idempotent::new(alg, &idx)
    }

    pub fn complement(&self, alg: &Algebra) -> Idempotent {
        let rest: Vec<usize> = (0..alg.num_prims())
            .filter(|i| !self.support.contains(i))
            .collect();
        Idempotent::new(alg, &rest).expect("indices valid")
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn element(&self) -> &[Scalar] {
        &self.element
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn describe(&self, alg: &Algebra) -> String {
        let names: Vec<&str> = self
            .support
            .iter()
            .map(|&i| alg.prim_labels()[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The corner algebra `eAe` with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Arc<Algebra>,
    /// Columns are the corner basis elements as elements of the ambient algebra.
    pub embedding: Mat,
    pub idempotent: Idempotent,
}

/// `eAe` with unit `e`, the selected primitive idempotents, and radical `e·rad(A)·e`.
pub fn corner(a: &Arc<Algebra>, e: &Idempotent) -> Result<Corner, AlgebraError> {
    if e.is_empty() {
        return Err(AlgebraError::EmptyIdempotent);
    }
    let field = a.field();
    let n = a.dim();
    let ev = e.element();
    let sandwich = &a.left_mult_elem(ev) * &a.right_mult_elem(ev);
    let r = sandwich.rref();
    let basis = sandwich.select_columns(&r.pivots);
    let labels: Vec<String> = r
        .pivots
        .iter()
        .enumerate()
        .map(|(c, &j)| {
            if basis.column(c) == a.basis_vector(j) {
                a.labels()[j].clone()
            } else {
                format!("e·{}·e", a.labels()[j])
            }
        })
        .collect();
    let sub = Subspace::new(basis.clone())?;
    let k = sub.dim();
    let coords = |v: &[Scalar]| sub.coords(v).expect("element of the corner");
    let mut left_mult = Vec::with_capacity(k);
    for i in 0..k {
        let bi = basis.column(i);
        let cols: Vec<Elem> = (0..k)
            .map(|j| coords(&a.mul(&bi, &basis.column(j))))
            .collect();
        left_mult.push(Mat::from_columns(field, k, &cols));
    }
    let prims: Vec<Elem> = e.support().iter().map(|&i| coords(&a.prims()[i])).collect();
    let prim_labels = e
        .support()
        .iter()
        .map(|&i| a.prim_labels()[i].clone())
        .collect();
    let mut span = EchelonBasis::new(field, n);
    let mut radical = Vec::new();
    for r in a.radical() {
        let v = a.mul(&a.mul(ev, r), ev);
        if span.insert(&v) {
            radical.push(coords(&v));
        }
    }
    let name = if e.support().len() == a.num_prims() {
        a.name().to_string()
    } else {
        format!("e{}e{}", a.name(), e.describe(a))
    };
    let algebra = Algebra::from_structure(StructureData {
        name,
        field,
        labels,
        left_mult,
        prims,
        prim_labels,
        radical,
        provenance: Provenance::Corner,
    })?;
    Ok(Corner {
        algebra,
        embedding: basis,
        idempotent: e.clone(),
    })
}
