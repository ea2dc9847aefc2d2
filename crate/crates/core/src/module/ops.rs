use std::sync::Arc;

use crate::exactla::{Mat, Subspace};

use super::{offsets, same_algebra, Module, ModuleError, ModuleMap};

/// Rows `range` of `m` as a local matrix.
fn rows_of(m: &Mat, range: std::ops::Range<usize>) -> Mat {
    let idx: Vec<usize> = range.collect();
    m.select_rows(&idx)
}

/// Columns spanning `span(spanning)`, Peirce-adapted block by block.
fn adapted_basis(m: &Module, spanning: &Mat) -> (Mat, Vec<usize>) {
    let field = m.algebra().field();
    let mut blocks = Vec::new();
    let mut cols = Vec::new();
    for i in 0..m.peirce().len() {
        let r = m.block_range(i);
        let local = rows_of(spanning, r.clone()).column_space();
        blocks.push(local.cols());
        for c in 0..local.cols() {
            let mut v = vec![field.zero(); m.dim()];
            for (k, x) in local.column(c).into_iter().enumerate() {
                v[r.start + k] = x;
            }
            cols.push(v);
        }
    }
    (Mat::from_columns(field, m.dim(), &cols), blocks)
}

/// The submodule spanned by the columns of `spanning` (which must already be closed under
/// the action), with its inclusion.
pub fn submodule(m: &Module, spanning: &Mat) -> Result<(Module, ModuleMap), ModuleError> {
    if spanning.rows() != m.dim() {
        return Err(ModuleError::Shape("spanning set has the wrong length".into()));
    }
    let (w, blocks) = adapted_basis(m, spanning);
    let sub = Subspace::new(w.clone())?;
    if sub.coords_mat(spanning).is_none() {
        return Err(ModuleError::NotSubmodule);
    }
    let mut action = Vec::with_capacity(m.actions().len());
    for a in m.actions() {
        action.push(sub.coords_mat(&(a * &w)).ok_or(ModuleError::NotSubmodule)?);
    }
    let s = Module::from_parts(m.algebra().clone(), blocks, Arc::new(action));
    let incl = ModuleMap::new_unchecked(s.clone(), m.clone(), w);
    Ok((s, incl))
}

/// `m / span(spanning)` with the canonical projection. The span must be a submodule.
pub fn quotient(m: &Module, spanning: &Mat) -> Result<(Module, ModuleMap), ModuleError> {
    if spanning.rows() != m.dim() {
        return Err(ModuleError::Shape("spanning set has the wrong length".into()));
    }
    let field = m.algebra().field();
    let d = m.dim();
    let mut blocks = Vec::new();
    let mut q_parts = Vec::new();
    let mut c_cols = Vec::new();
    for i in 0..m.peirce().len() {
        let r = m.block_range(i);
        let local = rows_of(spanning, r.clone()).column_space();
        let di = r.len();
        let pivots = local.transpose().rref().pivots;
        let comp: Vec<usize> = (0..di).filter(|c| !pivots.contains(c)).collect();
        let mut full = local.clone();
        let mut e = Mat::zeros(field, di, comp.len());
        for (k, &c) in comp.iter().enumerate() {
            e.set(c, k, field.one());
            let mut v = vec![field.zero(); d];
            v[r.start + c] = field.one();
            c_cols.push(v);
        }
        full = Mat::hstack(field, di, &[&full, &e]);
        let inv = full.inverse().expect("complement completes a basis");
        let rows: Vec<usize> = (local.cols()..di).collect();
        q_parts.push(inv.select_rows(&rows));
        blocks.push(comp.len());
    }
    let refs: Vec<&Mat> = q_parts.iter().collect();
    let q = Mat::block_diag(field, &refs);
    let c = Mat::from_columns(field, d, &c_cols);
    let (w, _) = adapted_basis(m, spanning);
    let mut action = Vec::with_capacity(m.actions().len());
    for a in m.actions() {
        let qa = &q * a;
        if !(&qa * &w).is_zero() {
            return Err(ModuleError::NotSubmodule);
        }
        action.push(&qa * &c);
    }
    let quo = Module::from_parts(m.algebra().clone(), blocks, Arc::new(action));
    let proj = ModuleMap::new_unchecked(m.clone(), quo.clone(), q);
    Ok((quo, proj))
}

pub fn kernel_of(f: &ModuleMap) -> Result<(Module, ModuleMap), ModuleError> {
    submodule(&f.source, &f.matrix.kernel_basis())
}

pub fn image_of(f: &ModuleMap) -> Result<(Module, ModuleMap), ModuleError> {
    submodule(&f.target, &f.matrix.column_space())
}

pub fn cokernel_of(f: &ModuleMap) -> Result<(Module, ModuleMap), ModuleError> {
    quotient(&f.target, &f.matrix)
}

/// A direct sum with its coordinate injections; the projections are their transposes.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<Mat>,
}

impl DirectSum {
    pub fn injection(&self, k: usize, summand: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(summand.clone(), self.module.clone(), self.injections[k].clone())
    }

    pub fn projection(&self, k: usize, summand: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(self.module.clone(), summand.clone(), self.injections[k].transpose())
    }
}

pub fn direct_sum(summands: &[Module]) -> Result<DirectSum, ModuleError> {
    let Some(first) = summands.first() else {
        return Err(ModuleError::Shape("direct sum of no modules".into()));
    };
    let alg = first.algebra().clone();
    if summands.iter().any(|s| !same_algebra(s.algebra(), &alg)) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let field = alg.field();
    let np = alg.num_prims();
    let blocks: Vec<usize> = (0..np)
        .map(|i| summands.iter().map(|s| s.peirce()[i]).sum())
        .collect();
    let starts = offsets(&blocks);
    let d: usize = blocks.iter().sum();
    // position of every summand coordinate in the sum
    let mut positions: Vec<Vec<usize>> = Vec::new();
    for (k, s) in summands.iter().enumerate() {
        let mut pos = Vec::with_capacity(s.dim());
        for i in 0..np {
            let before: usize = summands[..k].iter().map(|t| t.peirce()[i]).sum();
            for l in 0..s.peirce()[i] {
                pos.push(starts[i] + before + l);
            }
        }
        positions.push(pos);
    }
    let mut action = Vec::with_capacity(alg.dim());
    for x in 0..alg.dim() {
        let mut a = Mat::zeros(field, d, d);
        for (s, pos) in summands.iter().zip(&positions) {
            let m = s.action(x);
            for r in 0..s.dim() {
                for c in 0..s.dim() {
                    let v = m.get(r, c);
                    if !v.is_zero() {
                        a.set(pos[r], pos[c], v.clone());
                    }
                }
            }
        }
        action.push(a);
    }
    let injections = summands
        .iter()
        .zip(&positions)
        .map(|(s, pos)| {
            let mut m = Mat::zeros(field, d, s.dim());
            for (c, &p) in pos.iter().enumerate() {
                m.set(p, c, field.one());
            }
            m
        })
        .collect();
    Ok(DirectSum {
        module: Module::from_parts(alg, blocks, Arc::new(action)),
        injections,
    })
}

/// `0 → sub → middle → quotient → 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub incl: ModuleMap,
    pub proj: ModuleMap,
}

impl ShortExact {
    pub fn sub(&self) -> &Module {
        &self.incl.source
    }

    pub fn middle(&self) -> &Module {
        &self.incl.target
    }

    pub fn quotient(&self) -> &Module {
        &self.proj.target
    }

    /// Both maps are homomorphisms, the first injective, the second surjective, the composite
    /// zero, and the image of the first has the dimension of the kernel of the second.
    pub fn verify(&self) -> Result<(), String> {
        if !self.proj.source.same_as(&self.incl.target) {
            return Err("maps are not composable".into());
        }
        self.incl.verify().map_err(|e| e.to_string())?;
        self.proj.verify().map_err(|e| e.to_string())?;
        if !self.incl.is_injective() {
            return Err("first map is not injective".into());
        }
        if !self.proj.is_surjective() {
            return Err("second map is not surjective".into());
        }
        if !(&self.proj.matrix * &self.incl.matrix).is_zero() {
            return Err("composite is nonzero".into());
        }
        if self.incl.rank() != self.middle().dim() - self.proj.rank() {
            return Err("not exact in the middle".into());
        }
        Ok(())
    }
}
