//! The Schur functor `M ↦ eM` to a corner algebra, idempotent classification, and reports on
//! when singularity categories of an algebra and a corner (or of a triangular algebra and
//! one of its diagonal algebras) are equivalent.
//!
//! Regularity of an idempotent `e` is decided on simples: a module with `eM = M` is an
//! iterated extension of the simples `S_i` with `i` in the support of `e`, and finite
//! projective dimension is closed under extensions. All statements are for
//! finite-dimensional algebras.

mod report;

pub use report::{
    corner_report, triangular_report, EquivalenceReport, Hypothesis, ReportStatus, Theorem, Tri,
};

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{corner, Algebra, AlgebraError, Corner, Idempotent};
use crate::exactla::Mat;
use crate::homology::{proj_dim, DimResult, HomologyError, Params};
use crate::module::{same_algebra, simple, Module, ModuleError, ModuleMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("the two descriptions of the kernel disagree on a module")]
    KernelMismatch,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// `S_e : A-mod → eAe-mod`.
#[derive(Clone, Debug)]
pub struct SchurFunctor {
    pub ambient: Arc<Algebra>,
    pub corner: Corner,
}

impl SchurFunctor {
    pub fn new(a: &Arc<Algebra>, e: &Idempotent) -> Result<SchurFunctor, SchurError> {
        Ok(SchurFunctor {
            ambient: a.clone(),
            corner: corner(a, e)?,
        })
    }

    /// Coordinates of `e·M` inside `M`: the Peirce blocks in the support of `e`.
    fn support_indices(&self, m: &Module) -> Vec<usize> {
        self.corner
            .idempotent
            .support()
            .iter()
            .flat_map(|&i| m.block_range(i))
            .collect()
    }

    fn restrict(&self, m: &Module) -> Result<(Module, Mat), SchurError> {
        if !same_algebra(m.algebra(), &self.ambient) {
            return Err(ModuleError::AlgebraMismatch.into());
        }
        let idx = self.support_indices(m);
        let emb = &self.corner.embedding;
        let action = (0..emb.cols())
            .map(|c| m.act(&emb.column(c)).select_rows(&idx).select_columns(&idx))
            .collect();
        Ok(Module::from_action(&self.corner.algebra, action)?)
    }

    pub fn apply(&self, m: &Module) -> Result<Module, SchurError> {
        Ok(self.restrict(m)?.0)
    }

    /// `S_e(f)` between `S_e` of its source and target.
    pub fn apply_map(&self, f: &ModuleMap) -> Result<ModuleMap, SchurError> {
        let (src, cs) = self.restrict(&f.source)?;
        let (tgt, ct) = self.restrict(&f.target)?;
        let rows = self.support_indices(&f.target);
        let cols = self.support_indices(&f.source);
        let local = f.matrix.select_rows(&rows).select_columns(&cols);
        let inv = ct.inverse().expect("change of basis is invertible");
        Ok(ModuleMap::new(src, tgt, &(&inv * &local) * &cs)?)
    }
}

/// `e·M` as a module over `eAe`.
pub fn schur_apply(a: &Arc<Algebra>, e: &Idempotent, m: &Module) -> Result<Module, SchurError> {
    SchurFunctor::new(a, e)?.apply(m)
}

/// Whether `eM = 0`. Checked both as vanishing Peirce blocks and as `(1−e)` acting as the
/// identity; a disagreement is an error.
pub fn in_kernel(a: &Arc<Algebra>, e: &Idempotent, m: &Module) -> Result<bool, SchurError> {
    if !same_algebra(m.algebra(), a) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let by_blocks = e.support().iter().all(|&i| m.peirce()[i] == 0);
    let one_minus_e = e.complement(a);
    let by_action = m.act(one_minus_e.element()).is_identity();
    if by_blocks != by_action {
        return Err(SchurError::KernelMismatch);
    }
    Ok(by_blocks)
}

/// Whether every module supported on a set of vertices has finite projective dimension.
#[derive(Clone, Debug)]
pub enum Regularity {
    /// Projective dimensions of all relevant simples, all finite.
    Yes(Vec<(usize, DimResult)>),
    /// A simple with certified infinite projective dimension.
    No { simple: usize, result: DimResult },
    /// Some simple stayed undecided at the bound.
    Unknown { simple: usize },
}

impl Regularity {
    pub fn is_yes(&self) -> bool {
        matches!(self, Regularity::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Regularity::No { .. })
    }
}

#[derive(Clone, Debug)]
pub struct IdempotentClass {
    pub regular: Regularity,
    /// Regularity of `1 − e`.
    pub singularly_complete: Regularity,
}

fn regularity(a: &Arc<Algebra>, support: &[usize], params: &Params) -> Result<Regularity, SchurError> {
    let mut found = Vec::new();
    let mut unknown = None;
    for &i in support {
        let r = proj_dim(&simple(a, i)?, params)?;
        match r {
            DimResult::InfiniteCertified(_) => return Ok(Regularity::No { simple: i, result: r }),
            DimResult::Unknown(_) => {
                unknown.get_or_insert(i);
            }
            DimResult::Finite(_) => found.push((i, r)),
        }
    }
    Ok(match unknown {
        Some(simple) => Regularity::Unknown { simple },
        None => Regularity::Yes(found),
    })
}

pub fn classify_idempotent(a: &Arc<Algebra>, e: &Idempotent, params: &Params) -> Result<IdempotentClass, SchurError> {
    Ok(IdempotentClass {
        regular: regularity(a, e.support(), params)?,
        singularly_complete: regularity(a, e.complement(a).support(), params)?,
    })
}
