use crate::exactla::{Mat, Scalar, Subspace};
use crate::module::{
    hom_space, quotient, same_algebra, submodule, Module, ModuleError, ModuleMap, ShortExact,
};

use super::{build_triangular, Bimodule, Orientation, TriangularData, TriangularError};

/// A column module together with the change of basis from `X ⊕ Y` (in the bases of `X` and
/// `Y`) to the Peirce-adapted basis of the module.
#[derive(Clone, Debug)]
pub struct Column {
    pub module: Module,
    pub change: Mat,
}

/// Offsets of the target and source slots inside `X ⊕ Y`.
fn layout(t: &TriangularData, target_dim: usize, source_dim: usize) -> (usize, usize) {
    match t.orientation {
        Orientation::Upper => (0, target_dim),
        Orientation::Lower => (source_dim, 0),
    }
}

/// Residuals of the two compatibility conditions on `φ_k : source → target`:
/// `Σ_l λ_a[l,k] φ_l = T(a) φ_k` and `Σ_l ρ_b[l,k] φ_l = φ_k S(b)`.
/// Each entry is `(k, left?, algebra basis index, residual)`.
fn residuals(b: &Bimodule, target: &[Mat], source: &[Mat], phi: &[Mat]) -> Vec<(usize, bool, usize, Mat)> {
    let mut out = Vec::new();
    let field = b.left_algebra().field();
    let combine = |coeffs: &Mat, k: usize| -> Mat {
        let (r, c) = (phi.first().map_or(0, Mat::rows), phi.first().map_or(0, Mat::cols));
        let mut acc = Mat::zeros(field, r, c);
        for (l, p) in phi.iter().enumerate() {
            let x = coeffs.get(l, k);
            if !x.is_zero() {
                acc = acc.add(&p.scale(x));
            }
        }
        acc
    };
    for k in 0..b.dim() {
        for (a, ta) in target.iter().enumerate() {
            out.push((k, true, a, combine(b.left_action(a), k).sub(&(ta * &phi[k]))));
        }
        for (j, sj) in source.iter().enumerate() {
            out.push((k, false, j, combine(b.right_action(j), k).sub(&(&phi[k] * sj))));
        }
    }
    out
}

/// The target and source modules of a column `(X; Y)`.
fn slots<'a>(t: &TriangularData, x: &'a Module, y: &'a Module) -> (&'a Module, &'a Module) {
    match t.orientation {
        Orientation::Upper => (x, y),
        Orientation::Lower => (y, x),
    }
}

fn check_column_algebras(t: &TriangularData, x: &Module, y: &Module) -> Result<(), TriangularError> {
    if !same_algebra(x.algebra(), &t.r) || !same_algebra(y.algebra(), &t.s) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    Ok(())
}

/// Checks that `phi` is a valid structure map for the column `(X; Y)`. For the upper
/// orientation `phi[k] : Y → X` is `y ↦ φ(m_k ⊗ y)`; for the lower one `phi[k] : X → Y`.
pub fn verify_phi(t: &TriangularData, x: &Module, y: &Module, phi: &[Mat]) -> Result<(), TriangularError> {
    check_column_algebras(t, x, y)?;
    let (tg, sc) = slots(t, x, y);
    let b = &t.bimodule;
    if phi.len() != b.dim() || phi.iter().any(|p| p.rows() != tg.dim() || p.cols() != sc.dim()) {
        return Err(ModuleError::Shape(format!(
            "structure map needs {} matrices of shape {}x{}",
            b.dim(),
            tg.dim(),
            sc.dim()
        ))
        .into());
    }
    for (k, left, a, res) in residuals(b, tg.actions(), sc.actions(), phi) {
        if res.is_zero() {
            continue;
        }
        let vector = (0..res.cols()).find(|&c| res.column(c).iter().any(|x| !x.is_zero())).unwrap_or(0);
        let alg = if left { b.left_algebra() } else { b.right_algebra() };
        return Err(TriangularError::NotBalanced {
            element: b.labels()[k].clone(),
            by: alg.labels()[a].clone(),
            vector,
        });
    }
    Ok(())
}

/// A basis of all valid structure maps for `(X; Y)`.
pub fn phi_space(t: &TriangularData, x: &Module, y: &Module) -> Result<Vec<Vec<Mat>>, TriangularError> {
    check_column_algebras(t, x, y)?;
    let (tg, sc) = slots(t, x, y);
    let b = &t.bimodule;
    let field = t.algebra.field();
    let (rows, cols) = (tg.dim(), sc.dim());
    let per = rows * cols;
    let unknowns = b.dim() * per;
    let unpack = |v: &[Scalar]| -> Vec<Mat> {
        (0..b.dim())
            .map(|k| Mat::from_vec(field, rows, cols, v[k * per..(k + 1) * per].to_vec()).expect("shape"))
            .collect()
    };
    let mut columns = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut v = vec![field.zero(); unknowns];
        v[u] = field.one();
        let phi = unpack(&v);
        let flat: Vec<Scalar> = residuals(b, tg.actions(), sc.actions(), &phi)
            .into_iter()
            .flat_map(|(_, _, _, r)| r.flatten())
            .collect();
        columns.push(flat);
    }
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let system = Mat::from_columns(field, columns[0].len(), &columns);
    let kernel = system.kernel_basis();
    Ok(kernel.columns().iter().map(|v| unpack(v)).collect())
}

/// Assembles the column module from target and source actions and structure matrices,
/// without checking the structure map (the module axioms are still verified).
fn assemble(t: &TriangularData, target: &[Mat], source: &[Mat], phi: &[Mat]) -> Result<Column, TriangularError> {
    let field = t.algebra.field();
    let dt = target.first().map_or(0, Mat::rows);
    let ds = source.first().map_or(0, Mat::rows);
    let d = dt + ds;
    let (to, so) = layout(t, dt, ds);
    let (r_acts, s_acts, r_off, s_off) = match t.orientation {
        Orientation::Upper => (target, source, to, so),
        Orientation::Lower => (source, target, so, to),
    };
    let mut action = Vec::with_capacity(t.algebra.dim());
    for a in r_acts {
        let mut m = Mat::zeros(field, d, d);
        m.set_block(r_off, r_off, a);
        action.push(m);
    }
    for p in phi {
        let mut m = Mat::zeros(field, d, d);
        m.set_block(to, so, p);
        action.push(m);
    }
    for a in s_acts {
        let mut m = Mat::zeros(field, d, d);
        m.set_block(s_off, s_off, a);
        action.push(m);
    }
    let (module, change) = Module::from_action(&t.algebra, action)?;
    Ok(Column { module, change })
}

/// The column module `(X; Y)` with the given structure map (see [`verify_phi`]).
pub fn column_module(t: &TriangularData, x: &Module, y: &Module, phi: &[Mat]) -> Result<Column, TriangularError> {
    verify_phi(t, x, y, phi)?;
    let (tg, sc) = slots(t, x, y);
    assemble(t, tg.actions(), sc.actions(), phi)
}

/// `B ⊗ Y` over the left algebra of the bimodule `B`, for `Y` over its right algebra, with the
/// universal structure maps `y ↦ b_k ⊗ y`.
pub fn tensor_product(b: &Bimodule, y: &Module) -> Result<(Module, Vec<Mat>), TriangularError> {
    if !same_algebra(y.algebra(), b.right_algebra()) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let field = y.algebra().field();
    let (dm, dy) = (b.dim(), y.dim());
    let n = dm * dy;
    let action: Vec<Mat> = b
        .left_actions()
        .iter()
        .map(|l| kron(l, &Mat::identity(field, dy)))
        .collect();
    let (plain, change) = Module::from_action(b.left_algebra(), action)?;
    let inv = change.inverse().expect("change of basis is invertible");
    // relations b_k·s ⊗ y − b_k ⊗ s·y
    let mut rels = Vec::new();
    for (j, rho) in b.right_actions().iter().enumerate() {
        let lhs = kron(rho, &Mat::identity(field, dy));
        let rhs = kron(&Mat::identity(field, dm), y.action(j));
        rels.push(lhs.sub(&rhs));
    }
    let refs: Vec<&Mat> = rels.iter().collect();
    let spanning = if refs.is_empty() { Mat::zeros(field, n, 0) } else { Mat::hstack(field, n, &refs) };
    let (q, proj) = quotient(&plain, &(&inv * &spanning))?;
    let phi = (0..dm)
        .map(|k| {
            let mut e = Mat::zeros(field, n, dy);
            for a in 0..dy {
                e.set(k * dy + a, a, field.one());
            }
            &(&proj.matrix * &inv) * &e
        })
        .collect();
    Ok((q, phi))
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let field = a.field();
    let mut out = Mat::zeros(field, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if !x.is_zero() {
                out.set_block(i * b.rows(), j * b.cols(), &b.scale(x));
            }
        }
    }
    out
}

/// The column whose target slot is `t′` and whose source slot is `Hom(B, t′)` over the left
/// algebra of the bimodule `B`, with structure map given by evaluation. For the upper
/// orientation this is `(X′; Hom_R(M, X′))`; for the lower one `(Hom_S(N, Y′); Y′)`.
pub fn hom_induced_module(t: &TriangularData, target: &Module) -> Result<Column, TriangularError> {
    let b = &t.bimodule;
    if !same_algebra(target.algebra(), b.left_algebra()) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let field = t.algebra.field();
    let (bm, cb) = b.left_module()?;
    let cb_inv = cb.inverse().expect("change of basis is invertible");
    let maps: Vec<Mat> = hom_space(&bm, target)?
        .into_iter()
        .map(|f| &f.matrix * &cb_inv)
        .collect();
    let h = maps.len();
    let flat_len = target.dim() * b.dim();
    let sub = Subspace::new(Mat::from_columns(field, flat_len, &maps.iter().map(Mat::flatten).collect::<Vec<_>>()))?;
    let source: Vec<Mat> = b
        .right_actions()
        .iter()
        .map(|rho| {
            let cols: Vec<Vec<Scalar>> = maps
                .iter()
                .map(|f| sub.coords(&(f * rho).flatten()).expect("Hom space is closed under the action"))
                .collect();
            Mat::from_columns(field, h, &cols)
        })
        .collect();
    let phi: Vec<Mat> = (0..b.dim())
        .map(|k| {
            let cols: Vec<Vec<Scalar>> = maps.iter().map(|f| f.column(k)).collect();
            Mat::from_columns(field, target.dim(), &cols)
        })
        .collect();
    assemble(t, target.actions(), &source, &phi)
}

/// The raw actions of the bimodule on itself and of the source algebra on itself, with the
/// structure map given by the right action. This is the column `(M; S)` (upper) or `(R; N)`
/// (lower), which is the projective `T·e` for `e` the unit of the source algebra.
fn principal_parts(t: &TriangularData) -> (Vec<Mat>, Vec<Mat>, Vec<Mat>) {
    let b = &t.bimodule;
    let src = b.right_algebra();
    let field = src.field();
    let target = b.left_actions().to_vec();
    let source = src.left_mult_all().to_vec();
    let phi = (0..b.dim())
        .map(|k| {
            let cols: Vec<Vec<Scalar>> = b.right_actions().iter().map(|rho| rho.column(k)).collect();
            Mat::from_columns(field, b.dim(), &cols)
        })
        .collect();
    (target, source, phi)
}

/// `0 → (M;0) → (M;S) → (0;S) → 0` for the upper orientation and
/// `0 → (0;N) → (R;N) → (R;0) → 0` for the lower one.
pub fn principal_sequence(t: &TriangularData) -> Result<ShortExact, TriangularError> {
    let field = t.algebra.field();
    let (target, source, phi) = principal_parts(t);
    let (dt, ds) = (t.bimodule.dim(), t.bimodule.right_algebra().dim());
    let empty_t = vec![Mat::zeros(field, 0, 0); target.len()];
    let empty_s = vec![Mat::zeros(field, 0, 0); source.len()];
    let middle = assemble(t, &target, &source, &phi)?;
    let sub = assemble(t, &target, &empty_s, &vec![Mat::zeros(field, dt, 0); dt])?;
    let quot = assemble(t, &empty_t, &source, &vec![Mat::zeros(field, 0, ds); dt])?;
    let (to, so) = layout(t, dt, ds);
    let mut incl = Mat::zeros(field, dt + ds, dt);
    incl.set_block(to, 0, &Mat::identity(field, dt));
    let mut proj = Mat::zeros(field, ds, dt + ds);
    proj.set_block(0, so, &Mat::identity(field, ds));
    let adapt = |f: &Mat, from: &Column, to: &Column| -> Mat {
        &(&to.change.inverse().expect("invertible") * f) * &from.change
    };
    let incl = ModuleMap::new(sub.module.clone(), middle.module.clone(), adapt(&incl, &sub, &middle))?;
    let proj = ModuleMap::new(middle.module.clone(), quot.module.clone(), adapt(&proj, &middle, &quot))?;
    Ok(ShortExact { incl, proj })
}

/// `0 → I → T → T/I → 0` for the ideal `I` spanned by the bimodule block, as left
/// `T`-modules.
pub fn ideal_sequence(t: &TriangularData) -> Result<ShortExact, TriangularError> {
    let field = t.algebra.field();
    let n = t.algebra.dim();
    let (reg, change) = Module::from_action(&t.algebra, t.algebra.left_mult_all().to_vec())?;
    let inv = change.inverse().expect("invertible");
    let [_, mb, _] = t.blocks();
    let mut raw = Mat::zeros(field, n, mb.len());
    for (c, i) in mb.enumerate() {
        raw.set(i, c, field.one());
    }
    let spanning = &inv * &raw;
    let (_, incl) = submodule(&reg, &spanning)?;
    let (_, proj) = quotient(&reg, &spanning)?;
    incl.verify()?;
    proj.verify()?;
    Ok(ShortExact { incl, proj })
}

/// Whether the bimodule block is a two-sided ideal with `T/I` isomorphic to `R × S` via the
/// obvious basis, checked against the structure constants of the triangular algebra over the
/// zero bimodule.
pub fn quotient_is_product(t: &TriangularData) -> Result<bool, TriangularError> {
    let zero = Bimodule::zero(
        t.bimodule.left_algebra(),
        t.bimodule.right_algebra(),
    );
    let prod = build_triangular(&t.r, &t.s, &zero, t.orientation)?.algebra;
    let [rb, mb, sb] = t.blocks();
    let keep: Vec<usize> = rb.chain(sb).collect();
    let a = &t.algebra;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.product_basis(i, j);
            let touches_ideal = mb.contains(&i) || mb.contains(&j);
            if touches_ideal && keep.iter().any(|&k| !p[k].is_zero()) {
                return Ok(false);
            }
            if !touches_ideal {
                let (qi, qj) = (pos(&keep, i), pos(&keep, j));
                let reduced: Vec<Scalar> = keep.iter().map(|&k| p[k].clone()).collect();
                if reduced != prod.product_basis(qi, qj) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn pos(v: &[usize], x: usize) -> usize {
    v.iter().position(|&y| y == x).expect("index kept")
}
