use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraError, Elem};
use crate::exactla::{Mat, Scalar, Subspace};

use super::{direct_sum, hom_space, kernel_of, Module, ModuleError, ModuleMap};

/// Cached description of the indecomposable projective `A·e_i`.
#[derive(Debug)]
pub(crate) struct ProjectiveData {
    blocks: Vec<usize>,
    action: Arc<Vec<Mat>>,
    /// Algebra elements of the module basis (all lie in `A·e_i`).
    elements: Vec<Elem>,
    /// Coefficient of `e_i` modulo the radical, as a functional on module coordinates.
    top: Vec<Scalar>,
}

fn projective_data(alg: &Algebra) -> &[ProjectiveData] {
    alg.projectives.get_or_init(|| {
        let field = alg.field();
        let n = alg.dim();
        (0..alg.num_prims())
            .map(|i| {
                let r = alg.right_mult_elem(&alg.prims()[i]);
                let mut blocks = Vec::new();
                let mut parts = Vec::new();
                for ej in alg.prims() {
                    let piece = (&alg.left_mult_elem(ej) * &r).column_space();
                    blocks.push(piece.cols());
                    parts.push(piece);
                }
                let refs: Vec<&Mat> = parts.iter().collect();
                let y = Mat::hstack(field, n, &refs);
                let sub = Subspace::new(y.clone()).expect("independent Peirce pieces");
                let action = alg
                    .left_mult_all()
                    .iter()
                    .map(|l| sub.coords_mat(&(l * &y)).expect("A·e_i is a left ideal"))
                    .collect();
                let elements = y.columns();
                let top = elements
                    .iter()
                    .map(|el| {
                        let mut acc = field.zero();
                        for (k, c) in el.iter().enumerate() {
                            if !c.is_zero() {
                                let t = alg
                                    .top_coefficients(k)
                                    .expect("algebra must be basic and split");
                                acc = &acc + &(c * &t[i]);
                            }
                        }
                        acc
                    })
                    .collect();
                ProjectiveData {
                    blocks,
                    action: Arc::new(action),
                    elements,
                    top,
                }
            })
            .collect()
    })
}

fn check_index(alg: &Algebra, i: usize) -> Result<(), ModuleError> {
    if i >= alg.num_prims() {
        return Err(AlgebraError::BadPrimitive(i).into());
    }
    Ok(())
}

/// `P(i) = A·e_i`.
pub fn projective(alg: &Arc<Algebra>, i: usize) -> Result<Module, ModuleError> {
    check_index(alg, i)?;
    let data = &projective_data(alg)[i];
    Ok(Module::from_parts(alg.clone(), data.blocks.clone(), data.action.clone()))
}

/// `S(i)`, the top of `P(i)`: every element acts by its coefficient on `e_i` modulo the radical.
pub fn simple(alg: &Arc<Algebra>, i: usize) -> Result<Module, ModuleError> {
    check_index(alg, i)?;
    let field = alg.field();
    let mut action = Vec::with_capacity(alg.dim());
    for k in 0..alg.dim() {
        let t = alg.top_coefficients(k).ok_or_else(|| {
            AlgebraError::Structure("algebra must be basic and split".into())
        })?;
        action.push(Mat::from_rows(field, vec![vec![t[i].clone()]])?);
    }
    let mut blocks = vec![0; alg.num_prims()];
    blocks[i] = 1;
    Ok(Module::from_parts(alg.clone(), blocks, Arc::new(action)))
}

/// `I(i) = D(e_i·A)`, the dual of the projective `P(i)` of the opposite algebra.
pub fn injective(alg: &Arc<Algebra>, i: usize) -> Result<Module, ModuleError> {
    let op = alg.opposite();
    let m = projective(&op, i)?.dual();
    m.transport(alg)
}

/// The regular left module `_A A`.
pub fn regular(alg: &Arc<Algebra>) -> Module {
    Module::from_action(alg, alg.left_mult_all().to_vec())
        .expect("the regular representation is a module")
        .0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Simple,
    Projective,
    Injective,
}

pub fn standard_module(alg: &Arc<Algebra>, kind: StandardKind, i: usize) -> Result<Module, ModuleError> {
    match kind {
        StandardKind::Simple => simple(alg, i),
        StandardKind::Projective => projective(alg, i),
        StandardKind::Injective => injective(alg, i),
    }
}

/// The homomorphism `P(i) → n` sending `e_i` to `v`.
pub fn hom_from_projective(i: usize, n: &Module, v: &[Scalar]) -> Result<ModuleMap, ModuleError> {
    let alg = n.algebra();
    let p = projective(alg, i)?;
    let data = &projective_data(alg)[i];
    let cols: Vec<Elem> = data
        .elements
        .iter()
        .map(|y| n.act(y).mul_vec(v))
        .collect();
    let matrix = Mat::from_columns(alg.field(), n.dim(), &cols);
    Ok(ModuleMap::new_unchecked(p, n.clone(), matrix))
}

fn radical_span(m: &Module) -> Mat {
    let field = m.algebra().field();
    let parts: Vec<Mat> = m.algebra().radical().iter().map(|r| m.act(r)).collect();
    let refs: Vec<&Mat> = parts.iter().collect();
    Mat::hstack(field, m.dim(), &refs)
}

/// Standard basis vectors completing `rad·M` to `M` inside each block, tagged with the block.
fn top_generators(m: &Module) -> Vec<(usize, Elem)> {
    let field = m.algebra().field();
    let rad = radical_span(m);
    let mut out = Vec::new();
    for i in 0..m.peirce().len() {
        let r = m.block_range(i);
        let idx: Vec<usize> = r.clone().collect();
        let local = rad.select_rows(&idx).column_space();
        let pivots = local.transpose().rref().pivots;
        for c in (0..r.len()).filter(|c| !pivots.contains(c)) {
            let mut v = vec![field.zero(); m.dim()];
            v[r.start + c] = field.one();
            out.push((i, v));
        }
    }
    out
}

/// Multiplicity of each simple in `top(M) = M / rad·M`.
pub fn top_dims(m: &Module) -> Vec<usize> {
    let mut dims = vec![0; m.peirce().len()];
    for (i, _) in top_generators(m) {
        dims[i] += 1;
    }
    dims
}

/// A projective cover `⊕ P(i) → M`; `summands[k]` is the vertex of the `k`-th summand.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub map: ModuleMap,
    pub summands: Vec<usize>,
}

pub fn projective_cover(m: &Module) -> Result<ProjectiveCover, ModuleError> {
    if m.is_zero() {
        return Err(ModuleError::ZeroModule);
    }
    let alg = m.algebra();
    let gens = top_generators(m);
    let mut modules = Vec::with_capacity(gens.len());
    let mut maps = Vec::with_capacity(gens.len());
    for (i, v) in &gens {
        let f = hom_from_projective(*i, m, v)?;
        modules.push(f.source.clone());
        maps.push(f.matrix);
    }
    let sum = direct_sum(&modules)?;
    let mut matrix = Mat::zeros(alg.field(), m.dim(), sum.module.dim());
    for (f, inj) in maps.iter().zip(&sum.injections) {
        matrix = matrix.add(&(f * &inj.transpose()));
    }
    Ok(ProjectiveCover {
        map: ModuleMap::new_unchecked(sum.module, m.clone(), matrix),
        summands: gens.into_iter().map(|(i, _)| i).collect(),
    })
}

/// `ΩM`, the kernel of the projective cover; zero for the zero module.
pub fn syzygy(m: &Module) -> Result<Module, ModuleError> {
    if m.is_zero() {
        return Ok(Module::zero(m.algebra()));
    }
    let cover = projective_cover(m)?;
    Ok(kernel_of(&cover.map)?.0)
}

/// A module with its projective direct summands split off.
#[derive(Clone, Debug)]
pub struct Stripped {
    /// A complement of the split-off projectives; has no projective summand.
    pub core: Module,
    pub inclusion: ModuleMap,
    /// Vertices of the removed indecomposable projectives.
    pub projective_summands: Vec<usize>,
}

/// Repeatedly finds `g: M → P(i)` and `m ∈ e_i M` with `g(m) ∉ rad P(i)`; then `P(i)` is a
/// summand with complement `ker g`.
pub fn strip_projective_summands(m: &Module) -> Result<Stripped, ModuleError> {
    let alg = m.algebra();
    let field = alg.field();
    let mut core = m.clone();
    let mut incl = Mat::identity(field, m.dim());
    let mut removed = Vec::new();
    'search: loop {
        for i in 0..alg.num_prims() {
            if core.peirce()[i] == 0 {
                continue;
            }
            let p = projective(alg, i)?;
            let top = &projective_data(alg)[i].top;
            for g in hom_space(&core, &p)? {
                let hits = core.block_range(i).any(|c| {
                    let mut acc = field.zero();
                    for (r, t) in top.iter().enumerate() {
                        let x = g.matrix.get(r, c);
                        if !t.is_zero() && !x.is_zero() {
                            acc = &acc + &(t * x);
                        }
                    }
                    !acc.is_zero()
                });
                if hits {
                    let (k, kincl) = kernel_of(&g)?;
                    incl = &incl * &kincl.matrix;
                    core = k;
                    removed.push(i);
                    continue 'search;
                }
            }
        }
        break;
    }
    Ok(Stripped {
        inclusion: ModuleMap::new_unchecked(core.clone(), m.clone(), incl),
        core,
        projective_summands: removed,
    })
}
