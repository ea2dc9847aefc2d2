use std::sync::Arc;

use rand::Rng;

use crate::algebra::Algebra;
use crate::exactla::{linear_combination, Mat};

use super::{
    cokernel_of, direct_sum, hom_space, image_of, injective, kernel_of, projective, simple, Module,
    ModuleError, ModuleMap,
};

fn random_sum<R: Rng + ?Sized>(
    alg: &Arc<Algebra>,
    rng: &mut R,
    build: fn(&Arc<Algebra>, usize) -> Result<Module, ModuleError>,
) -> Result<Module, ModuleError> {
    let count = rng.gen_range(1..=2);
    let parts = (0..count)
        .map(|_| build(alg, rng.gen_range(0..alg.num_prims())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(direct_sum(&parts)?.module)
}

fn random_map<R: Rng + ?Sized>(m: &Module, n: &Module, rng: &mut R) -> Result<ModuleMap, ModuleError> {
    let field = m.algebra().field();
    let basis = hom_space(m, n)?;
    let mats: Vec<Mat> = basis.iter().map(|f| f.matrix.clone()).collect();
    let coeffs: Vec<_> = (0..mats.len()).map(|_| field.random(rng)).collect();
    let f = linear_combination(field, n.dim(), m.dim(), &coeffs, &mats);
    Ok(ModuleMap::new_unchecked(m.clone(), n.clone(), f))
}

/// A small nonzero module: the cokernel, kernel or image of a random map between sums of one
/// or two indecomposable projectives, or the cokernel of a random map between injectives.
pub fn random_module<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Result<Module, ModuleError> {
    for _ in 0..8 {
        let m = match rng.gen_range(0..4) {
            0 => {
                let f = random_map(&random_sum(alg, rng, projective)?, &random_sum(alg, rng, projective)?, rng)?;
                cokernel_of(&f)?.0
            }
            1 => {
                let f = random_map(&random_sum(alg, rng, projective)?, &random_sum(alg, rng, projective)?, rng)?;
                kernel_of(&f)?.0
            }
            2 => {
                let f = random_map(&random_sum(alg, rng, projective)?, &random_sum(alg, rng, injective)?, rng)?;
                image_of(&f)?.0
            }
            _ => {
                let f = random_map(&random_sum(alg, rng, injective)?, &random_sum(alg, rng, injective)?, rng)?;
                cokernel_of(&f)?.0
            }
        };
        if !m.is_zero() {
            return Ok(m);
        }
    }
    simple(alg, rng.gen_range(0..alg.num_prims()))
}
