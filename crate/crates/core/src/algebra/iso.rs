//! Algebra isomorphism certificates.
//!
//! A certificate is an invertible matrix whose columns are the images of the source basis,
//! checked to be unital and multiplicative on every pair of basis elements. Candidates are
//! found by aligning primitive idempotents and sending each arrow of the source presentation
//! to a random element of the matching Peirce piece of the target radical.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{EchelonBasis, Mat};

use super::{Algebra, AlgebraError, BasisPath, Elem};

/// `dims[j][i] = dim e_j · A · e_i`.
pub fn peirce_dims(a: &Algebra) -> Vec<Vec<usize>> {
    a.prims()
        .iter()
        .map(|ej| {
            a.prims()
                .iter()
                .map(|ei| (&a.left_mult_elem(ej) * &a.right_mult_elem(ei)).rank())
                .collect()
        })
        .collect()
}

/// Checks that `matrix` (target dim × source dim) is an isomorphism of unital algebras.
pub fn verify_algebra_iso(source: &Algebra, target: &Algebra, matrix: &Mat) -> bool {
    let n = source.dim();
    if target.dim() != n
        || matrix.rows() != n
        || matrix.cols() != n
        || source.field() != target.field()
        || !matrix.is_invertible()
    {
        return false;
    }
    if matrix.mul_vec(&source.one()) != target.one() {
        return false;
    }
    let images: Vec<Elem> = matrix.columns();
    for i in 0..n {
        for j in 0..n {
            let lhs = matrix.mul_vec(&source.product_basis(i, j));
            let rhs = target.mul(&images[i], &images[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Searches for an isomorphism from a path algebra `source` to `target`.
///
/// Returns `Ok(None)` when no certificate was found within `attempts` random trials per
/// admissible alignment of primitive idempotents. Over small prime fields the search is
/// refused, since random trials rarely succeed there.
pub fn find_algebra_iso(
    source: &Algebra,
    target: &Algebra,
    attempts: usize,
    seed: u64,
) -> Result<Option<Mat>, AlgebraError> {
    let pres = source.presentation().ok_or_else(|| {
        AlgebraError::Structure("isomorphism search needs a quiver presentation".into())
    })?;
    if source.field() != target.field() {
        return Err(crate::exactla::LinalgError::MixedField.into());
    }
    if !source.field().supports_randomized() {
        return Err(AlgebraError::Structure(format!(
            "randomized search needs characteristic 0 or p >= 11, not {}",
            source.field()
        )));
    }
    if source.dim() != target.dim() || source.num_prims() != target.num_prims() {
        return Ok(None);
    }
    if verify_algebra_iso(source, target, &Mat::identity(source.field(), source.dim())) {
        return Ok(Some(Mat::identity(source.field(), source.dim())));
    }
    let field = source.field();
    let sd = peirce_dims(source);
    let td = peirce_dims(target);
    let np = source.num_prims();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sigma in permutations(np) {
        let aligned = (0..np).all(|j| (0..np).all(|i| sd[j][i] == td[sigma[j]][sigma[i]]));
        if !aligned {
            continue;
        }
        // candidate images for every arrow: f_σ(t) · rad · f_σ(s)
        let arrow_spaces: Vec<Vec<Elem>> = pres
            .quiver
            .arrows()
            .iter()
            .map(|arrow| {
                let ft = &target.prims()[sigma[arrow.target]];
                let fs = &target.prims()[sigma[arrow.source]];
                let mut span = EchelonBasis::new(field, target.dim());
                target
                    .radical()
                    .iter()
                    .map(|r| target.mul(&target.mul(ft, r), fs))
                    .filter(|v| span.insert(v))
                    .collect()
            })
            .collect();
        for _ in 0..attempts {
            let arrow_images: Vec<Elem> = arrow_spaces
                .iter()
                .map(|space| {
                    let mut v = target.zero();
                    for b in space {
                        let c = field.random(&mut rng);
                        v = super::add(&v, &b.iter().map(|x| x * &c).collect::<Vec<_>>());
                    }
                    v
                })
                .collect();
            let columns: Vec<Elem> = pres
                .paths
                .iter()
                .map(|p| match p {
                    BasisPath::Vertex(v) => target.prims()[sigma[*v]].clone(),
                    BasisPath::Word(w) => {
                        let mut acc = arrow_images[w.0[0]].clone();
                        for &x in &w.0[1..] {
                            acc = target.mul(&acc, &arrow_images[x]);
                        }
                        acc
                    }
                })
                .collect();
            let matrix = Mat::from_columns(field, target.dim(), &columns);
            if verify_algebra_iso(source, target, &matrix) {
                return Ok(Some(matrix));
            }
        }
    }
    Ok(None)
}
