use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Idempotent};
use crate::homology::{gorenstein, proj_dim, stable_hom_dim, DimResult, Params};
use crate::module::{regular, simple, top_dims};
use crate::triangular::{Orientation, TriangularData};

use super::{classify_idempotent, schur_apply, Regularity, SchurError};

/// Which reduction a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// `D_sg(A) ≃ D_sg(eAe)` for a singularly-complete `e` with `eA` of finite projective
    /// dimension over `eAe`.
    Corner,
    /// `D_sg((R M; 0 S)) ≃ D_sg(S)` when `R` has finite global dimension.
    UpperTriangular,
    /// `D_sg((R 0; N S)) ≃ D_sg(S)` when `R` is regular, `S` is Gorenstein and `_S N` has
    /// finite projective dimension.
    LowerTriangular,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Corner => "corner reduction",
            Theorem::UpperTriangular => "upper triangular reduction",
            Theorem::LowerTriangular => "lower triangular reduction",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Hypothesis {
    pub name: String,
    pub status: Tri,
    pub detail: String,
    /// The dimension results the status rests on, labeled by module.
    pub certificates: Vec<(String, DimResult)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportStatus {
    Conclusive,
    /// The first hypothesis that is not a verified yes.
    Inconclusive { item: String, status: Tri },
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub theorem: Theorem,
    pub algebra: String,
    /// The algebra on the other side of the equivalence.
    pub target: Arc<Algebra>,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Option<String>,
    pub decorations: Vec<String>,
    pub scope: &'static str,
}

const SCOPE: &str = "finite-dimensional algebras over a field";

impl EquivalenceReport {
    pub fn status(&self) -> ReportStatus {
        match self.hypotheses.iter().find(|h| h.status != Tri::Yes) {
            None => ReportStatus::Conclusive,
            Some(h) => ReportStatus::Inconclusive {
                item: h.name.clone(),
                status: h.status,
            },
        }
    }

    pub fn is_conclusive(&self) -> bool {
        self.status() == ReportStatus::Conclusive
    }

    fn finish(
        theorem: Theorem,
        algebra: &Algebra,
        target: &Arc<Algebra>,
        hypotheses: Vec<Hypothesis>,
        params: &Params,
    ) -> Result<EquivalenceReport, SchurError> {
        let mut report = EquivalenceReport {
            theorem,
            algebra: algebra.name().to_string(),
            target: target.clone(),
            hypotheses,
            conclusion: None,
            decorations: Vec::new(),
            scope: SCOPE,
        };
        if report.is_conclusive() {
            report.conclusion = Some(format!("D_sg({}) ≃ D_sg({})", algebra.name(), target.name()));
            report.decorations = decorations(target, params)?;
        }
        Ok(report)
    }
}

fn tri_of(r: &DimResult) -> Tri {
    match r {
        DimResult::Finite(_) => Tri::Yes,
        DimResult::InfiniteCertified(_) => Tri::No,
        DimResult::Unknown(_) => Tri::Unknown,
    }
}

fn simple_label(a: &Algebra, i: usize) -> String {
    format!("S({})", a.prim_labels()[i])
}

fn regularity_hypothesis(name: String, a: &Algebra, r: &Regularity) -> Hypothesis {
    match r {
        Regularity::Yes(found) => Hypothesis {
            name,
            status: Tri::Yes,
            detail: if found.is_empty() {
                "no simples to check".into()
            } else {
                found
                    .iter()
                    .map(|(i, d)| format!("pd {} = {d}", simple_label(a, *i)))
                    .collect::<Vec<_>>()
                    .join(", ")
            },
            certificates: found.iter().map(|(i, d)| (simple_label(a, *i), d.clone())).collect(),
        },
        Regularity::No { simple, result } => Hypothesis {
            name,
            status: Tri::No,
            detail: format!("pd {} = {result}", simple_label(a, *simple)),
            certificates: vec![(simple_label(a, *simple), result.clone())],
        },
        Regularity::Unknown { simple } => Hypothesis {
            name,
            status: Tri::Unknown,
            detail: format!("pd {} undecided at the bound", simple_label(a, *simple)),
            certificates: Vec::new(),
        },
    }
}

/// Global dimension as the maximum projective dimension of the simples.
fn global_dimension(a: &Arc<Algebra>, params: &Params) -> Result<(Tri, String, Vec<(String, DimResult)>), SchurError> {
    let mut certs = Vec::new();
    for i in 0..a.num_prims() {
        certs.push((simple_label(a, i), proj_dim(&simple(a, i)?, params)?));
    }
    let status = if certs.iter().any(|(_, d)| d.is_infinite()) {
        Tri::No
    } else if certs.iter().all(|(_, d)| d.is_finite()) {
        Tri::Yes
    } else {
        Tri::Unknown
    };
    let detail = match status {
        Tri::Yes => format!(
            "gl.dim {} = {}",
            a.name(),
            certs.iter().filter_map(|(_, d)| d.finite()).max().unwrap_or(0)
        ),
        _ => certs
            .iter()
            .map(|(l, d)| format!("pd {l} = {d}"))
            .collect::<Vec<_>>()
            .join(", "),
    };
    Ok((status, detail, certs))
}

/// Descriptions of the singularity category of `b` that follow from its structure.
fn decorations(b: &Arc<Algebra>, params: &Params) -> Result<Vec<String>, SchurError> {
    let name = b.name();
    if b.is_semisimple() {
        return Ok(vec![format!("{name} is semisimple, so both singularity categories are trivial")]);
    }
    let mut out = Vec::new();
    let g = gorenstein(b, params)?;
    match g.gdim() {
        Some(0) => {
            out.push(format!("{name} is self-injective, so D_sg({name}) is its stable module category"));
            if b.num_prims() == 1 {
                let s = simple(b, 0)?;
                if let DimResult::InfiniteCertified(p) = proj_dim(&s, params)? {
                    let stable_end = stable_hom_dim(&s, &s)?;
                    if p.k - p.j == 1 && stable_end == 1 {
                        out.push(
                            "K-mod-like: self-injective with one simple, Ω-periodic of period 1, stable End of dimension 1"
                                .into(),
                        );
                    }
                }
            }
        }
        Some(d) => out.push(format!(
            "{name} is Gorenstein of dimension {d}, so D_sg({name}) is the stable category of its maximal Cohen-Macaulay modules"
        )),
        None => {}
    }
    Ok(out)
}

/// Checks that `e` is singularly-complete and that `eA` has finite projective dimension over
/// `eAe`; if both hold, `D_sg(A) ≃ D_sg(eAe)`.
pub fn corner_report(a: &Arc<Algebra>, e: &Idempotent, params: &Params) -> Result<EquivalenceReport, SchurError> {
    let class = classify_idempotent(a, e, params)?;
    let h1 = regularity_hypothesis(
        format!("{} is singularly-complete", e.describe(a)),
        a,
        &class.singularly_complete,
    );
    let functor = super::SchurFunctor::new(a, e)?;
    let corner = functor.corner.algebra.clone();
    let ea = schur_apply(a, e, &regular(a))?;
    let pd = proj_dim(&ea, params)?;
    let detail = match &pd {
        DimResult::Finite(0) => format!(
            "eA is projective over eAe of dimension {} with {} indecomposable summands",
            ea.dim(),
            top_dims(&ea).iter().sum::<usize>()
        ),
        other => format!("pd eA = {other}"),
    };
    let h2 = Hypothesis {
        name: "eA has finite projective dimension over eAe".into(),
        status: tri_of(&pd),
        detail,
        certificates: vec![("eA".into(), pd)],
    };
    EquivalenceReport::finish(Theorem::Corner, a, &corner, vec![h1, h2], params)
}

/// Upper orientation: `R` of finite global dimension. Lower orientation: `R` of finite global
/// dimension on both sides, `S` Gorenstein, and `_S N` of finite projective dimension. In
/// either case `D_sg(T) ≃ D_sg(S)`.
pub fn triangular_report(t: &TriangularData, params: &Params) -> Result<EquivalenceReport, SchurError> {
    let mut hyps = Vec::new();
    let (st, detail, certs) = global_dimension(&t.r, params)?;
    match t.orientation {
        Orientation::Upper => {
            hyps.push(Hypothesis {
                name: format!("{} has finite global dimension", t.r.name()),
                status: st,
                detail,
                certificates: certs,
            });
        }
        Orientation::Lower => {
            let (sto, detail_op, certs_op) = global_dimension(&t.r.opposite(), params)?;
            let both = match (st, sto) {
                (Tri::Yes, Tri::Yes) => Tri::Yes,
                (Tri::No, _) | (_, Tri::No) => Tri::No,
                _ => Tri::Unknown,
            };
            hyps.push(Hypothesis {
                name: format!("{} is regular (finite global dimension on both sides)", t.r.name()),
                status: both,
                detail: format!("left: {detail}; right: {detail_op}"),
                certificates: certs.into_iter().chain(certs_op).collect(),
            });
            let g = gorenstein(&t.s, params)?;
            hyps.push(Hypothesis {
                name: format!("{} is Gorenstein", t.s.name()),
                status: if g.is_gorenstein() {
                    Tri::Yes
                } else if g.is_not_gorenstein() {
                    Tri::No
                } else {
                    Tri::Unknown
                },
                detail: format!("inj.dim left {}, right {}", g.left_dim, g.right_dim),
                certificates: vec![
                    ("left regular module (injective dimension)".into(), g.left_dim.clone()),
                    ("right regular module (injective dimension)".into(), g.right_dim.clone()),
                ],
            });
            let (n, _) = t.bimodule.left_module()?;
            let pd = proj_dim(&n, params)?;
            hyps.push(Hypothesis {
                name: format!("N has finite projective dimension over {}", t.s.name()),
                status: tri_of(&pd),
                detail: format!("pd N = {pd}"),
                certificates: vec![("N".into(), pd)],
            });
        }
    }
    let theorem = match t.orientation {
        Orientation::Upper => Theorem::UpperTriangular,
        Orientation::Lower => Theorem::LowerTriangular,
    };
    EquivalenceReport::finish(theorem, &t.algebra, &t.s, hyps, params)
}
