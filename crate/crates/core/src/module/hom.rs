use crate::exactla::Mat;

use super::{offsets, same_algebra, Module, ModuleError, ModuleMap};

/// Solves the intertwining system and returns the null space as columns, one unknown per
/// entry of the diagonal blocks `e_i M → e_i N`.
fn hom_kernel(m: &Module, n: &Module) -> Result<(Mat, Vec<usize>), ModuleError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let alg = m.algebra();
    let field = alg.field();
    let mb = m.peirce();
    let nb = n.peirce();
    let sizes: Vec<usize> = mb.iter().zip(nb).map(|(a, b)| a * b).collect();
    let var_off = offsets(&sizes);
    let nvars: usize = sizes.iter().sum();
    let mut rows: Vec<Vec<_>> = Vec::new();
    for (g, (ma, na)) in alg
        .radical_generators()
        .iter()
        .zip(m.generator_actions().iter().zip(n.generator_actions()))
    {
        let (s, t) = (g.from, g.to);
        let (ms, mt) = (m.block_range(s), m.block_range(t));
        let (ns, nt) = (n.block_range(s), n.block_range(t));
        // N_g[t,s] · F_s − F_t · M_g[t,s] = 0, an (n_t × m_s) system
        for p in 0..nt.len() {
            for q in 0..ms.len() {
                let mut row = vec![field.zero(); nvars];
                for r in 0..ns.len() {
                    let c = na.get(nt.start + p, ns.start + r);
                    if !c.is_zero() {
                        let v = var_off[s] + r * mb[s] + q;
                        row[v] = &row[v] + c;
                    }
                }
                for r in 0..mt.len() {
                    let c = ma.get(mt.start + r, ms.start + q);
                    if !c.is_zero() {
                        let v = var_off[t] + p * mb[t] + r;
                        row[v] = &row[v] - c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Mat::zeros(field, 0, nvars)
    } else {
        Mat::from_rows(field, rows)?
    };
    Ok((system.kernel_basis(), var_off))
}

/// A basis of `Hom_A(m, n)`.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMap>, ModuleError> {
    let (kernel, var_off) = hom_kernel(m, n)?;
    let field = m.algebra().field();
    let mb = m.peirce();
    let mut out = Vec::with_capacity(kernel.cols());
    for k in 0..kernel.cols() {
        let mut f = Mat::zeros(field, n.dim(), m.dim());
        for i in 0..mb.len() {
            let (mr, nr) = (m.block_range(i), n.block_range(i));
            for p in 0..nr.len() {
                for q in 0..mr.len() {
                    let x = kernel.get(var_off[i] + p * mb[i] + q, k);
                    if !x.is_zero() {
                        f.set(nr.start + p, mr.start + q, x.clone());
                    }
                }
            }
        }
        out.push(ModuleMap::new_unchecked(m.clone(), n.clone(), f));
    }
    Ok(out)
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize, ModuleError> {
    Ok(hom_kernel(m, n)?.0.cols())
}
