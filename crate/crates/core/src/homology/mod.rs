//! Minimal projective resolutions and the invariants read off from them.
//!
//! Dimensions are tri-state. `Finite(n)` means the `n`-th syzygy is projective and the
//! previous one is not. `InfiniteCertified` carries an isomorphism between the
//! non-projective parts of two syzygies `Ω^j` and `Ω^k` with `j < k`, which forces the
//! resolution to be eventually periodic. Anything else is `Unknown` at the search bound.

mod gorenstein;

pub use gorenstein::{
    combine, gorenstein, is_mcm, is_mcm_with, GorensteinStatus, GorensteinVerdict, GorensteinWitness,
    McmVerdict, Side,
};

use std::fmt;

use thiserror::Error;

use crate::exactla::EchelonBasis;
use crate::module::{
    hom_dim, hom_space, is_isomorphic, kernel_of, projective_cover, strip_projective_summands,
    syzygy, IsoVerdict, Module, ModuleError, ModuleMap, ProjectiveCover, DEFAULT_ISO_ATTEMPTS,
};

pub const DEFAULT_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("finite injective dimensions of the regular module disagree: left {left}, right {right}")]
    ZaksViolation { left: usize, right: usize },
    #[error("{0}")]
    Precondition(String),
}

/// Search parameters shared by every randomized or bounded procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    /// Number of syzygies examined before answering `Unknown`.
    pub bound: usize,
    pub seed: u64,
    /// Random trials per isomorphism test.
    pub attempts: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            bound: DEFAULT_BOUND,
            seed: 0,
            attempts: DEFAULT_ISO_ATTEMPTS,
        }
    }
}

impl Params {
    pub fn with_bound(bound: usize) -> Params {
        Params {
            bound,
            ..Params::default()
        }
    }
}

/// `Ω^k M ≅ Ω^j M` (non-projective parts), `j < k`.
#[derive(Clone, Debug)]
pub struct Periodicity {
    pub j: usize,
    pub k: usize,
    /// The isomorphism from the core of `Ω^k` to the core of `Ω^j`.
    pub certificate: ModuleMap,
}

impl Periodicity {
    /// The certificate is an invertible homomorphism between nonzero modules.
    pub fn verify(&self) -> bool {
        self.j < self.k
            && !self.certificate.source.is_zero()
            && self.certificate.verify().is_ok()
            && self.certificate.is_isomorphism()
    }
}

#[derive(Clone, Debug)]
pub enum DimResult {
    Finite(usize),
    InfiniteCertified(Box<Periodicity>),
    Unknown(usize),
}

impl DimResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, DimResult::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DimResult::InfiniteCertified(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, DimResult::Unknown(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            DimResult::Finite(n) => Some(*n),
            _ => None,
        }
    }

    /// Verdict-level equality: same variant and, for `Finite`, same value.
    pub fn same_verdict(&self, other: &DimResult) -> bool {
        match (self, other) {
            (DimResult::Finite(a), DimResult::Finite(b)) => a == b,
            (DimResult::InfiniteCertified(_), DimResult::InfiniteCertified(_)) => true,
            (DimResult::Unknown(_), DimResult::Unknown(_)) => true,
            _ => false,
        }
    }

    /// `false` only when one side is finite and the other certified infinite, or both are
    /// finite with different values. Unknown never contradicts.
    pub fn compatible(&self, other: &DimResult) -> bool {
        match (self, other) {
            (DimResult::Unknown(_), _) | (_, DimResult::Unknown(_)) => true,
            _ => self.same_verdict(other),
        }
    }
}

impl fmt::Display for DimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimResult::Finite(n) => write!(f, "Finite({n})"),
            DimResult::InfiniteCertified(p) => write!(f, "InfiniteCertified(Ω^{} ≅ Ω^{})", p.k, p.j),
            DimResult::Unknown(b) => write!(f, "Unknown(>= {b})"),
        }
    }
}

/// A prefix of the minimal projective resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    /// `Ω^0 = M, Ω^1, …`.
    pub syzygies: Vec<Module>,
    /// `covers[k]: P_k → Ω^k`.
    pub covers: Vec<ProjectiveCover>,
    /// `inclusions[k]: Ω^{k+1} → P_k`.
    pub inclusions: Vec<ModuleMap>,
    pub bound: usize,
}

impl Resolution {
    /// `true` when a zero syzygy was reached.
    pub fn terminated(&self) -> bool {
        self.syzygies.last().is_some_and(Module::is_zero)
    }

    /// Length of the resolution when it terminated: the index of the last nonzero syzygy.
    pub fn length(&self) -> Option<usize> {
        if !self.terminated() {
            return None;
        }
        Some(self.syzygies.len().saturating_sub(2))
    }

    /// Checks every stage: covers surjective, inclusions injective, composites zero, the
    /// rank of each incoming map equal to the nullity of the outgoing one, and all maps
    /// homomorphisms.
    pub fn verify_exactness(&self) -> Result<(), String> {
        for (k, (cover, incl)) in self.covers.iter().zip(&self.inclusions).enumerate() {
            let c = &cover.map;
            if c.verify().is_err() || incl.verify().is_err() {
                return Err(format!("stage {k}: map is not a homomorphism"));
            }
            if !c.is_surjective() {
                return Err(format!("stage {k}: cover is not surjective"));
            }
            if !incl.is_injective() {
                return Err(format!("stage {k}: syzygy inclusion is not injective"));
            }
            if !(&c.matrix * &incl.matrix).is_zero() {
                return Err(format!("stage {k}: composite is nonzero"));
            }
            let nullity = c.source.dim() - c.rank();
            if incl.rank() != nullity {
                return Err(format!("stage {k}: rank {} but nullity {nullity}", incl.rank()));
            }
        }
        Ok(())
    }
}

pub fn resolve(m: &Module, bound: usize) -> Result<Resolution, HomologyError> {
    let mut syzygies = vec![m.clone()];
    let mut covers = Vec::new();
    let mut inclusions = Vec::new();
    while covers.len() < bound {
        let current = syzygies.last().expect("nonempty");
        if current.is_zero() {
            break;
        }
        let cover = projective_cover(current)?;
        let (next, incl) = kernel_of(&cover.map)?;
        covers.push(cover);
        inclusions.push(incl);
        syzygies.push(next);
    }
    Ok(Resolution {
        module: m.clone(),
        syzygies,
        covers,
        inclusions,
        bound,
    })
}

/// Projective dimension, comparing the non-projective part of each syzygy with all earlier
/// ones. The zero module is reported as `Finite(0)`.
pub fn proj_dim(m: &Module, params: &Params) -> Result<DimResult, HomologyError> {
    let mut cores: Vec<Module> = Vec::new();
    let mut current = m.clone();
    for k in 0..=params.bound {
        let core = strip_projective_summands(&current)?.core;
        if core.is_zero() {
            return Ok(DimResult::Finite(k));
        }
        for (j, earlier) in cores.iter().enumerate() {
            if earlier.peirce() != core.peirce() {
                continue;
            }
            let seed = params.seed.wrapping_mul(1_000_003).wrapping_add((k * 997 + j) as u64);
            if let IsoVerdict::Iso(f) = is_isomorphic(&core, earlier, params.attempts, seed)? {
                return Ok(DimResult::InfiniteCertified(Box::new(Periodicity {
                    j,
                    k,
                    certificate: f,
                })));
            }
        }
        if k == params.bound {
            break;
        }
        current = syzygy(&core)?;
        cores.push(core);
    }
    Ok(DimResult::Unknown(params.bound))
}

/// Injective dimension, as the projective dimension of the dual over the opposite algebra.
pub fn inj_dim(m: &Module, params: &Params) -> Result<DimResult, HomologyError> {
    proj_dim(&m.dual(), params)
}

/// Re-derives the syzygy cores of `m` and checks that a periodicity certificate is an
/// isomorphism between the recomputed cores.
pub fn reverify_periodicity(m: &Module, p: &Periodicity) -> Result<bool, HomologyError> {
    if !p.verify() {
        return Ok(false);
    }
    let mut current = m.clone();
    let mut cores = Vec::new();
    for _ in 0..=p.k {
        let core = strip_projective_summands(&current)?.core;
        current = syzygy(&core)?;
        cores.push(core);
    }
    let (later, earlier) = (&cores[p.k], &cores[p.j]);
    let f = &p.certificate;
    Ok(later.same_as(&f.source) && earlier.same_as(&f.target))
}

/// `dim Ext^i(m, n)` for `i = 0..=max_i`, from one minimal resolution.
pub fn ext_dims(m: &Module, n: &Module, max_i: usize) -> Result<Vec<usize>, HomologyError> {
    let res = resolve(m, max_i)?;
    let mut out = Vec::with_capacity(max_i + 1);
    for i in 0..=max_i {
        if i >= res.syzygies.len() {
            out.push(0);
            continue;
        }
        let omega = &res.syzygies[i];
        let total = hom_dim(omega, n)?;
        if i == 0 || total == 0 {
            out.push(total);
            continue;
        }
        let incl = &res.inclusions[i - 1];
        let p = &res.covers[i - 1].map.source;
        let field = m.algebra().field();
        let mut span = EchelonBasis::new(field, n.dim() * omega.dim());
        for h in hom_space(p, n)? {
            span.insert(&(&h.matrix * &incl.matrix).flatten());
        }
        out.push(total - span.dim());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtDim {
    Known(usize),
    /// `i` exceeds the bound.
    Unknown,
}

pub fn ext_dim(m: &Module, n: &Module, i: usize, bound: usize) -> Result<ExtDim, HomologyError> {
    if i > bound {
        return Ok(ExtDim::Unknown);
    }
    Ok(ExtDim::Known(ext_dims(m, n, i)?[i]))
}

/// `dim Hom(m, n)` modulo maps factoring through a projective, computed via the
/// projective cover of `n`.
pub fn stable_hom_dim(m: &Module, n: &Module) -> Result<usize, HomologyError> {
    let total = hom_dim(m, n)?;
    if n.is_zero() || m.is_zero() || total == 0 {
        return Ok(0);
    }
    let cover = projective_cover(n)?;
    let field = m.algebra().field();
    let mut span = EchelonBasis::new(field, n.dim() * m.dim());
    for g in hom_space(m, &cover.map.source)? {
        span.insert(&(&cover.map.matrix * &g.matrix).flatten());
    }
    Ok(total - span.dim())
}
