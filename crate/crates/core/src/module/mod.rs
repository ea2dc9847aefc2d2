//! Finite-dimensional left modules given by one action matrix per algebra basis element.
//!
//! Every module is stored in a Peirce-adapted basis: the coordinates are grouped into
//! consecutive blocks, block `i` spanning `e_i · M`, so each primitive idempotent acts as the
//! coordinate projection onto its block. Homomorphisms are then block diagonal and hom spaces
//! are computed from the primitive idempotents and a generating set of the radical only.

mod hom;
mod iso;
mod ops;
mod random;
mod standard;

pub use hom::{hom_dim, hom_space};
pub use iso::{is_isomorphic, IsoVerdict, DEFAULT_ISO_ATTEMPTS};
pub use ops::{
    cokernel_of, direct_sum, image_of, kernel_of, quotient, submodule, DirectSum, ShortExact,
};
pub use random::random_module;
pub use standard::{
    hom_from_projective, injective, projective, projective_cover, regular, simple,
    standard_module, strip_projective_summands, syzygy, top_dims, ProjectiveCover, StandardKind,
    Stripped,
};
pub(crate) use standard::ProjectiveData;

use std::fmt;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, BasisPath};
use crate::exactla::{linear_combination, LinalgError, Mat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("operation needs a nonzero module")]
    ZeroModule,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("subspace is not a submodule")]
    NotSubmodule,
    #[error("randomized search needs characteristic 0 or p >= 11, not {0}")]
    FieldTooSmall(String),
    #[error("module needs an algebra with a quiver presentation")]
    NoPresentation,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug)]
struct Inner {
    algebra: Arc<Algebra>,
    blocks: Vec<usize>,
    action: Arc<Vec<Mat>>,
    generators: OnceLock<Vec<Mat>>,
}

/// A left module in a Peirce-adapted basis. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Module {
    inner: Arc<Inner>,
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

impl Module {
    /// Assembles a module from data already in Peirce-adapted form. Not verified.
    pub(crate) fn from_parts(algebra: Arc<Algebra>, blocks: Vec<usize>, action: Arc<Vec<Mat>>) -> Module {
        debug_assert_eq!(blocks.len(), algebra.num_prims());
        debug_assert_eq!(action.len(), algebra.dim());
        Module {
            inner: Arc::new(Inner {
                algebra,
                blocks,
                action,
                generators: OnceLock::new(),
            }),
        }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let field = algebra.field();
        let action = (0..algebra.dim()).map(|_| Mat::zeros(field, 0, 0)).collect();
        Module::from_parts(algebra.clone(), vec![0; algebra.num_prims()], Arc::new(action))
    }

    /// Builds a module from arbitrary action matrices (one per basis element), verifies the
    /// module axioms and changes to a Peirce-adapted basis. Returns the module together with
    /// the change-of-basis matrix whose columns are the new basis in old coordinates.
    pub fn from_action(algebra: &Arc<Algebra>, action: Vec<Mat>) -> Result<(Module, Mat), ModuleError> {
        let field = algebra.field();
        if action.len() != algebra.dim() {
            return Err(ModuleError::Shape(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let d = action.first().map_or(0, Mat::rows);
        for m in &action {
            if m.rows() != d || m.cols() != d {
                return Err(ModuleError::Shape("action matrices must be square of one size".into()));
            }
            if m.field() != field {
                return Err(LinalgError::MixedField.into());
            }
        }
        check_axioms(algebra, &action, d)?;
        let mut parts = Vec::new();
        let mut blocks = Vec::new();
        for p in algebra.prims() {
            let proj = linear_combination(field, d, d, p, &action);
            let cs = proj.column_space();
            blocks.push(cs.cols());
            parts.push(cs);
        }
        let refs: Vec<&Mat> = parts.iter().collect();
        let change = Mat::hstack(field, d, &refs);
        let inv = change.inverse().ok_or_else(|| {
            ModuleError::NotAModule("primitive idempotents do not decompose the space".into())
        })?;
        let adapted = action.iter().map(|a| &(&inv * a) * &change).collect();
        Ok((Module::from_parts(algebra.clone(), blocks, Arc::new(adapted)), change))
    }

    /// A representation of the quiver of a path algebra: vector space dimensions per vertex
    /// and one `dims[target] × dims[source]` matrix per arrow. The induced action is checked
    /// against the multiplication table, which verifies every relation.
    pub fn from_representation(algebra: &Arc<Algebra>, dims: &[usize], arrows: &[Mat]) -> Result<Module, ModuleError> {
        let pres = algebra.presentation().ok_or(ModuleError::NoPresentation)?;
        let field = algebra.field();
        let quiver = &pres.quiver;
        if dims.len() != quiver.vertices().len() || arrows.len() != quiver.arrows().len() {
            return Err(ModuleError::Shape("representation does not match the quiver".into()));
        }
        let offsets = offsets(dims);
        let d: usize = dims.iter().sum();
        let mut full = Vec::with_capacity(arrows.len());
        for (arrow, m) in quiver.arrows().iter().zip(arrows) {
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(ModuleError::Shape(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    arrow.name,
                    dims[arrow.target],
                    dims[arrow.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(LinalgError::MixedField.into());
            }
            let mut f = Mat::zeros(field, d, d);
            f.set_block(offsets[arrow.target], offsets[arrow.source], m);
            full.push(f);
        }
        let action: Vec<Mat> = pres
            .paths
            .iter()
            .map(|p| match p {
                BasisPath::Vertex(v) => {
                    let mut e = Mat::zeros(field, d, d);
                    e.set_block(offsets[*v], offsets[*v], &Mat::identity(field, dims[*v]));
                    e
                }
                BasisPath::Word(w) => {
                    let mut acc = full[w.0[0]].clone();
                    for &x in &w.0[1..] {
                        acc = &acc * &full[x];
                    }
                    acc
                }
            })
            .collect();
        check_axioms(algebra, &action, d)?;
        Ok(Module::from_parts(algebra.clone(), dims.to_vec(), Arc::new(action)))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.algebra
    }

    pub fn dim(&self) -> usize {
        self.inner.blocks.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// `dim e_i · M` for each primitive idempotent.
    pub fn peirce(&self) -> &[usize] {
        &self.inner.blocks
    }

    /// Coordinate range of block `i`.
    pub fn block_range(&self, i: usize) -> Range<usize> {
        let start: usize = self.inner.blocks[..i].iter().sum();
        start..start + self.inner.blocks[i]
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.inner.action[i]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.inner.action
    }

    pub(crate) fn actions_arc(&self) -> Arc<Vec<Mat>> {
        self.inner.action.clone()
    }

    /// Matrix of `m ↦ x · m`.
    pub fn act(&self, x: &[Scalar]) -> Mat {
        let d = self.dim();
        linear_combination(self.algebra().field(), d, d, x, &self.inner.action)
    }

    /// Actions of the radical generators, in the order of `Algebra::radical_generators`.
    pub(crate) fn generator_actions(&self) -> &[Mat] {
        self.inner.generators.get_or_init(|| {
            self.algebra()
                .radical_generators()
                .iter()
                .map(|g| self.act(&g.element))
                .collect()
        })
    }

    /// Re-checks the module axioms and the Peirce-adapted form.
    pub fn verify(&self) -> Result<(), ModuleError> {
        let d = self.dim();
        check_axioms(self.algebra(), self.actions(), d)?;
        let field = self.algebra().field();
        for (i, p) in self.algebra().prims().iter().enumerate() {
            let mut expected = Mat::zeros(field, d, d);
            let r = self.block_range(i);
            expected.set_block(r.start, r.start, &Mat::identity(field, r.len()));
            if self.act(p) != expected {
                return Err(ModuleError::NotAModule("basis is not Peirce-adapted".into()));
            }
        }
        Ok(())
    }

    /// Structural equality: same algebra, same blocks and same action matrices.
    pub fn same_as(&self, other: &Module) -> bool {
        same_algebra(self.algebra(), other.algebra())
            && self.peirce() == other.peirce()
            && self.actions() == other.actions()
    }

    /// The dual `Hom_K(M, K)` as a left module over the opposite algebra.
    pub fn dual(&self) -> Module {
        let op = self.algebra().opposite();
        let action = self.actions().iter().map(Mat::transpose).collect();
        Module::from_parts(op, self.peirce().to_vec(), Arc::new(action))
    }

    /// The same module regarded over a structurally identical algebra.
    pub fn transport(&self, algebra: &Arc<Algebra>) -> Result<Module, ModuleError> {
        if !same_algebra(self.algebra(), algebra) {
            return Err(ModuleError::AlgebraMismatch);
        }
        Ok(Module::from_parts(algebra.clone(), self.peirce().to_vec(), self.actions_arc()))
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.peirce().iter().map(ToString::to_string).collect();
        write!(f, "module of dimension {} ({})", self.dim(), parts.join(","))
    }
}

pub(crate) fn offsets(blocks: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in blocks {
        out.push(acc);
        acc += b;
    }
    out
}

fn check_axioms(algebra: &Algebra, action: &[Mat], d: usize) -> Result<(), ModuleError> {
    let field = algebra.field();
    let n = algebra.dim();
    if algebra.one().len() == n {
        let one = linear_combination(field, d, d, &algebra.one(), action);
        if !one.is_identity() {
            return Err(ModuleError::NotAModule("the unit does not act as the identity".into()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = &action[i] * &action[j];
            let rhs = linear_combination(field, d, d, &algebra.product_basis(i, j), action);
            if lhs != rhs {
                return Err(ModuleError::NotAModule(format!(
                    "action of {}·{} is not the product of the actions",
                    algebra.labels()[i],
                    algebra.labels()[j]
                )));
            }
        }
    }
    Ok(())
}

/// A module homomorphism `source → target`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: Mat,
}

impl ModuleMap {
    /// Checks shapes and the intertwining identity on every algebra basis element.
    pub fn new(source: Module, target: Module, matrix: Mat) -> Result<ModuleMap, ModuleError> {
        let f = ModuleMap {
            source,
            target,
            matrix,
        };
        f.verify()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Mat) -> ModuleMap {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn verify(&self) -> Result<(), ModuleError> {
        if !same_algebra(self.source.algebra(), self.target.algebra()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return Err(ModuleError::Shape("map matrix does not match the modules".into()));
        }
        for (i, (a, b)) in self
            .source
            .actions()
            .iter()
            .zip(self.target.actions())
            .enumerate()
        {
            if &self.matrix * a != b * &self.matrix {
                return Err(ModuleError::NotHomomorphism(format!(
                    "fails to commute with {}",
                    self.source.algebra().labels()[i]
                )));
            }
        }
        Ok(())
    }

    pub fn is_homomorphism(&self) -> bool {
        self.verify().is_ok()
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Mat::identity(m.algebra().field(), m.dim()))
    }

    pub fn zero(m: &Module, n: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(m.clone(), n.clone(), Mat::zeros(m.algebra().field(), n.dim(), m.dim()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if other.target.dim() != self.source.dim() {
            return Err(ModuleError::Shape("maps are not composable".into()));
        }
        Ok(ModuleMap::new_unchecked(
            other.source.clone(),
            self.target.clone(),
            &self.matrix * &other.matrix,
        ))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }
}

#[cfg(test)]
mod tests;
