use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{linear_combination, Mat};

use super::{hom_dim, hom_space, same_algebra, top_dims, Module, ModuleError, ModuleMap};

pub const DEFAULT_ISO_ATTEMPTS: usize = 64;

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// An invertible homomorphism, verified before being returned.
    Iso(ModuleMap),
    /// A structural invariant that differs.
    NotIso(String),
    /// No certificate found within this many random trials.
    Unknown(usize),
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn certificate(&self) -> Option<&ModuleMap> {
        match self {
            IsoVerdict::Iso(f) => Some(f),
            _ => None,
        }
    }
}

fn socle_dims(m: &Module) -> Vec<usize> {
    let field = m.algebra().field();
    let parts: Vec<Mat> = m.algebra().radical().iter().map(|r| m.act(r)).collect();
    let refs: Vec<&Mat> = parts.iter().collect();
    let stacked = Mat::vstack(field, m.dim(), &refs);
    let soc = stacked.kernel_basis();
    (0..m.peirce().len())
        .map(|i| {
            let idx: Vec<usize> = m.block_range(i).collect();
            soc.select_rows(&idx).rank()
        })
        .collect()
}

/// Decides `m ≅ n` with a certificate, a structural witness, or gives up.
///
/// Invariants compared: dimension vectors, top and socle dimension vectors, and the four
/// hom dimensions between `m` and `n`. Then random combinations of a hom-space basis are
/// tested for invertibility.
pub fn is_isomorphic(m: &Module, n: &Module, attempts: usize, seed: u64) -> Result<IsoVerdict, ModuleError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let field = m.algebra().field();
    if m.peirce() != n.peirce() {
        return Ok(IsoVerdict::NotIso(format!(
            "dimension vectors {:?} and {:?} differ",
            m.peirce(),
            n.peirce()
        )));
    }
    if m.same_as(n) {
        return Ok(IsoVerdict::Iso(ModuleMap::identity(m)));
    }
    let (tm, tn) = (top_dims(m), top_dims(n));
    if tm != tn {
        return Ok(IsoVerdict::NotIso(format!("top dimension vectors {tm:?} and {tn:?} differ")));
    }
    let (sm, sn) = (socle_dims(m), socle_dims(n));
    if sm != sn {
        return Ok(IsoVerdict::NotIso(format!("socle dimension vectors {sm:?} and {sn:?} differ")));
    }
    let end_m = hom_dim(m, m)?;
    let checks = [
        ("End(N)", hom_dim(n, n)?),
        ("Hom(M,N)", hom_dim(m, n)?),
        ("Hom(N,M)", hom_dim(n, m)?),
    ];
    for (name, d) in checks {
        if d != end_m {
            return Ok(IsoVerdict::NotIso(format!("dim End(M) = {end_m} but dim {name} = {d}")));
        }
    }
    if !field.supports_randomized() {
        return Err(ModuleError::FieldTooSmall(field.to_string()));
    }
    let basis = hom_space(m, n)?;
    let mats: Vec<Mat> = basis.iter().map(|f| f.matrix.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let coeffs: Vec<_> = (0..mats.len()).map(|_| field.random(&mut rng)).collect();
        let f = linear_combination(field, n.dim(), m.dim(), &coeffs, &mats);
        if f.is_invertible() {
            let map = ModuleMap::new(m.clone(), n.clone(), f)?;
            return Ok(IsoVerdict::Iso(map));
        }
    }
    Ok(IsoVerdict::Unknown(attempts))
}
