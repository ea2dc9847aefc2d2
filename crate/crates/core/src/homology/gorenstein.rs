use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::module::{injective, regular, Module};

use super::{ext_dims, proj_dim, DimResult, HomologyError, Params};

/// Which regular module a dimension refers to: `_A A` (left) or `A_A` (right).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GorensteinWitness {
    pub side: Side,
    /// Primitive idempotent whose indecomposable summand has infinite dimension.
    pub prim: usize,
    pub result: DimResult,
}

#[derive(Clone, Debug)]
pub enum GorensteinStatus {
    Gorenstein(usize),
    NotGorenstein(GorensteinWitness),
    Unknown,
}

/// Injective dimensions of the regular module on both sides.
///
/// The left side `inj.dim _A A` is the projective dimension of `D(_A A) = ⊕ D(A e_i)` over the
/// opposite algebra; the right side `inj.dim A_A` is the projective dimension of
/// `D(A_A) = ⊕ I(i)` over `A`. Both are recorded summand by summand.
#[derive(Clone, Debug)]
pub struct GorensteinVerdict {
    pub left: Vec<DimResult>,
    pub right: Vec<DimResult>,
    pub left_dim: DimResult,
    pub right_dim: DimResult,
    pub status: GorensteinStatus,
}

impl GorensteinVerdict {
    pub fn gdim(&self) -> Option<usize> {
        match self.status {
            GorensteinStatus::Gorenstein(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_gorenstein(&self) -> bool {
        self.gdim().is_some()
    }

    pub fn is_not_gorenstein(&self) -> bool {
        matches!(self.status, GorensteinStatus::NotGorenstein(_))
    }
}

/// Dimension of a direct sum from its summands.
pub fn combine(results: &[DimResult], bound: usize) -> DimResult {
    if let Some(inf) = results.iter().find(|r| r.is_infinite()) {
        return inf.clone();
    }
    if results.iter().any(DimResult::is_unknown) {
        return DimResult::Unknown(bound);
    }
    DimResult::Finite(results.iter().filter_map(DimResult::finite).max().unwrap_or(0))
}

pub fn gorenstein(a: &Arc<Algebra>, params: &Params) -> Result<GorensteinVerdict, HomologyError> {
    let op = a.opposite();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..a.num_prims() {
        left.push(proj_dim(&injective(&op, i)?, params)?);
        right.push(proj_dim(&injective(a, i)?, params)?);
    }
    let left_dim = combine(&left, params.bound);
    let right_dim = combine(&right, params.bound);
    let witness = |side, results: &[DimResult]| {
        results.iter().position(DimResult::is_infinite).map(|prim| GorensteinWitness {
            side,
            prim,
            result: results[prim].clone(),
        })
    };
    let status = match (&left_dim, &right_dim) {
        (DimResult::Finite(l), DimResult::Finite(r)) => {
            if l != r {
                return Err(HomologyError::ZaksViolation { left: *l, right: *r });
            }
            GorensteinStatus::Gorenstein(*l)
        }
        _ => match witness(Side::Right, &right).or_else(|| witness(Side::Left, &left)) {
            Some(w) => GorensteinStatus::NotGorenstein(w),
            None => GorensteinStatus::Unknown,
        },
    };
    Ok(GorensteinVerdict {
        left,
        right,
        left_dim,
        right_dim,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McmVerdict {
    /// `Ext^i(M, A) = 0` for `1 ≤ i ≤ d` with `d` the Gorenstein dimension, which suffices.
    Yes { certified_up_to: usize },
    No { degree: usize, ext_dim: usize },
    /// No Gorenstein dimension available and every degree up to the bound vanished.
    Unknown { checked: usize },
}

pub fn is_mcm(m: &Module, params: &Params) -> Result<McmVerdict, HomologyError> {
    let g = gorenstein(m.algebra(), params)?;
    is_mcm_with(m, g.gdim(), params)
}

/// As [`is_mcm`], with the Gorenstein dimension of the algebra supplied by the caller.
pub fn is_mcm_with(m: &Module, gdim: Option<usize>, params: &Params) -> Result<McmVerdict, HomologyError> {
    let a = regular(m.algebra());
    let top = gdim.unwrap_or(params.bound);
    let exts = ext_dims(m, &a, top)?;
    for (i, &e) in exts.iter().enumerate().skip(1) {
        if e != 0 {
            return Ok(McmVerdict::No { degree: i, ext_dim: e });
        }
    }
    Ok(match gdim {
        Some(d) => McmVerdict::Yes { certified_up_to: d },
        None => McmVerdict::Unknown { checked: params.bound },
    })
}
