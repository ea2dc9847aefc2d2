use std::sync::Arc;

use crate::algebra::Algebra;
use crate::homology::{gorenstein, proj_dim, DimResult, GorensteinVerdict, Params, Side};

use super::{TriangularData, TriangularError};

/// The bimodule viewed from one side has certified infinite projective dimension. `Left`
/// means over the bimodule's left algebra, `Right` over its right algebra.
#[derive(Clone, Debug)]
pub struct BimoduleWitness {
    pub side: Side,
    pub result: DimResult,
}

#[derive(Clone, Debug)]
pub enum TriangularVerdict {
    Gorenstein,
    NotGorenstein(BimoduleWitness),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct TriangularGorenstein {
    pub verdict: TriangularVerdict,
    pub left_pd: DimResult,
    pub right_pd: DimResult,
    pub r: GorensteinVerdict,
    pub s: GorensteinVerdict,
    /// The Gorenstein verdict computed directly on the triangular algebra.
    pub direct: GorensteinVerdict,
    /// `false` when the criterion and the direct computation are both decisive and disagree.
    pub consistent: bool,
    /// Bounds on the Gorenstein dimension of `T` from those of `R` and `S`.
    pub bounds: (usize, usize),
}

/// Decides whether `T` is Gorenstein from the projective dimensions of the bimodule on each
/// side, given that `R` and `S` are Gorenstein, and cross-checks against the direct verdict.
pub fn gorenstein_triangular(t: &TriangularData, params: &Params) -> Result<TriangularGorenstein, TriangularError> {
    let r = gorenstein(&t.r, params)?;
    let s = gorenstein(&t.s, params)?;
    let bounds = bounds_from(&r, &s)?;
    let b = &t.bimodule;
    let left_pd = proj_dim(&b.left_module()?.0, params)?;
    let right_pd = proj_dim(&b.right_module()?.0, params)?;
    let verdict = if left_pd.is_infinite() {
        TriangularVerdict::NotGorenstein(BimoduleWitness {
            side: Side::Left,
            result: left_pd.clone(),
        })
    } else if right_pd.is_infinite() {
        TriangularVerdict::NotGorenstein(BimoduleWitness {
            side: Side::Right,
            result: right_pd.clone(),
        })
    } else if left_pd.is_finite() && right_pd.is_finite() {
        TriangularVerdict::Gorenstein
    } else {
        TriangularVerdict::Unknown
    };
    let direct = gorenstein(&t.algebra, params)?;
    let consistent = match verdict {
        TriangularVerdict::Gorenstein => !direct.is_not_gorenstein(),
        TriangularVerdict::NotGorenstein(_) => !direct.is_gorenstein(),
        TriangularVerdict::Unknown => true,
    } && direct.gdim().is_none_or(|g| bounds.0 <= g && g <= bounds.1);
    Ok(TriangularGorenstein {
        verdict,
        left_pd,
        right_pd,
        r,
        s,
        direct,
        consistent,
        bounds,
    })
}

fn bounds_from(r: &GorensteinVerdict, s: &GorensteinVerdict) -> Result<(usize, usize), TriangularError> {
    match (r.gdim(), s.gdim()) {
        (Some(a), Some(b)) => Ok((a.max(b), a + b + 1)),
        (None, _) => Err(TriangularError::Precondition("the left corner algebra is not certified Gorenstein".into())),
        (_, None) => Err(TriangularError::Precondition("the right corner algebra is not certified Gorenstein".into())),
    }
}

/// `(max(G.dim R, G.dim S), G.dim R + G.dim S + 1)`.
pub fn gdim_bounds(r: &Arc<Algebra>, s: &Arc<Algebra>, params: &Params) -> Result<(usize, usize), TriangularError> {
    bounds_from(&gorenstein(r, params)?, &gorenstein(s, params)?)
}
