//! JSON reports and their re-verification.

use serde::{Deserialize, Serialize};
use sgcert::algebra::verify_algebra_iso;
use sgcert::exactla::{Field, Mat};
use sgcert::homology::{DimResult, GorensteinStatus, GorensteinVerdict, Side};
use sgcert::module::{strip_projective_summands, syzygy, Module, ModuleMap};
use sgcert::schur::{EquivalenceReport, ReportStatus, Tri};

use crate::expr::{AlgebraExpr, ExprError, Input, Kind, ModuleExpr, Session};

pub const TOOL: &str = "sgcert";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub options: Options,
    pub inputs: Vec<Input>,
    pub outcome: Outcome,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    /// Field override; `None` means each file's own characteristic.
    pub field: Option<String>,
    pub bound: usize,
    pub seed: u64,
    pub attempts: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Decisive,
    Unknown,
    Inconsistent,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Decisive => 0,
            Outcome::Unknown => 1,
            Outcome::Inconsistent => 3,
        }
    }

    pub fn worst(self, other: Outcome) -> Outcome {
        let rank = |o| match o {
            Outcome::Decisive => 0,
            Outcome::Unknown => 1,
            Outcome::Inconsistent => 2,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Check(CheckBody),
    Resolve(ResolveBody),
    Gorenstein(GorensteinBody),
    Schur(SchurBody),
    Triangular(Box<TriangularBody>),
}

/// A matrix as row-major exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_mat(m: &Mat) -> MatrixJson {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn to_mat(&self, field: Field) -> Result<Mat, String> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(format!("matrix entries do not have shape {}x{}", self.rows, self.cols));
        }
        let mut m = Mat::zeros(field, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, field.parse(x).map_err(|e| e.to_string())?);
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Finite,
    Infinite,
    Unknown,
}

/// `Ω^k ≅ Ω^j` on the parts without projective summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityJson {
    pub j: usize,
    pub k: usize,
    pub matrix: MatrixJson,
}

/// A projective dimension together with the module it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub subject: ModuleExpr,
    pub verdict: Verdict,
    /// The dimension when finite, the bound when unknown.
    pub value: Option<usize>,
    pub display: String,
    pub certificate: Option<PeriodicityJson>,
}

impl DimEntry {
    pub fn new(subject: ModuleExpr, d: &DimResult) -> DimEntry {
        let (verdict, value, certificate) = match d {
            DimResult::Finite(n) => (Verdict::Finite, Some(*n), None),
            DimResult::InfiniteCertified(p) => (
                Verdict::Infinite,
                None,
                Some(PeriodicityJson {
                    j: p.j,
                    k: p.k,
                    matrix: MatrixJson::from_mat(&p.certificate.matrix),
                }),
            ),
            DimResult::Unknown(b) => (Verdict::Unknown, Some(*b), None),
        };
        DimEntry {
            subject,
            verdict,
            value,
            display: d.to_string(),
            certificate,
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self.verdict {
            Verdict::Unknown => Outcome::Unknown,
            _ => Outcome::Decisive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItemJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckBody {
    pub algebra: String,
    pub field: String,
    pub dim: usize,
    pub vertices: Vec<String>,
    pub basis: Vec<String>,
    pub nilpotency_index: Option<usize>,
    pub checks: Vec<CheckItemJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveBody {
    pub algebra: String,
    pub module: String,
    pub dim: usize,
    /// Dimensions of `Ω^0, Ω^1, …` as far as they were computed.
    pub syzygy_dims: Vec<usize>,
    /// Multiplicity of each indecomposable projective in each term of the resolution.
    pub projective_terms: Vec<Vec<usize>>,
    pub pd: DimEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    /// `right` for `A_A`, read off the injective `A`-modules; `left` for `_A A`.
    pub side: String,
    pub vertex: String,
    pub pd: String,
}

/// `pd M` against `id M` for one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementJson {
    pub module: String,
    pub pd: String,
    pub id: String,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinBody {
    pub algebra: String,
    pub status: String,
    pub gdim: Option<usize>,
    pub witness: Option<WitnessJson>,
    /// Injective dimension of `_A A`, summand by summand, as projective dimensions of the
    /// injective modules over the opposite algebra.
    pub left: Vec<DimEntry>,
    /// Injective dimension of `A_A`, as projective dimensions of the injective `A`-modules.
    pub right: Vec<DimEntry>,
    pub left_dim: String,
    pub right_dim: String,
    /// Filled in for Gorenstein algebras: finite projective and finite injective dimension
    /// must coincide on every standard module.
    pub agreement: Vec<AgreementJson>,
}

impl GorensteinBody {
    pub fn new(name: &str, expr: &AlgebraExpr, labels: &[String], g: &GorensteinVerdict) -> GorensteinBody {
        let entries = |alg: AlgebraExpr, results: &[DimResult]| -> Vec<DimEntry> {
            results
                .iter()
                .zip(labels)
                .map(|(d, v)| {
                    DimEntry::new(
                        ModuleExpr::Standard {
                            algebra: alg.clone(),
                            module: Kind::Injective,
                            vertex: v.clone(),
                        },
                        d,
                    )
                })
                .collect()
        };
        let (status, gdim, witness) = match &g.status {
            GorensteinStatus::Gorenstein(d) => ("gorenstein", Some(*d), None),
            GorensteinStatus::NotGorenstein(w) => (
                "not_gorenstein",
                None,
                Some(WitnessJson {
                    side: match w.side {
                        Side::Left => "left".into(),
                        Side::Right => "right".into(),
                    },
                    vertex: labels[w.prim].clone(),
                    pd: w.result.to_string(),
                }),
            ),
            GorensteinStatus::Unknown => ("unknown", None, None),
        };
        GorensteinBody {
            algebra: name.to_string(),
            status: status.into(),
            gdim,
            witness,
            left: entries(expr.opposite(), &g.left),
            right: entries(expr.clone(), &g.right),
            left_dim: g.left_dim.to_string(),
            right_dim: g.right_dim.to_string(),
            agreement: Vec::new(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        let base = if self.status == "unknown" {
            Outcome::Unknown
        } else {
            Outcome::Decisive
        };
        if self.agreement.iter().all(|a| a.consistent) {
            base
        } else {
            Outcome::Inconsistent
        }
    }

    fn entries(&self) -> impl Iterator<Item = &DimEntry> {
        self.left.iter().chain(&self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisJson {
    pub name: String,
    pub status: String,
    pub detail: String,
    pub certificates: Vec<DimEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceJson {
    pub theorem: String,
    pub algebra: String,
    pub target: String,
    pub status: String,
    /// The first hypothesis that is not a verified yes.
    pub open: Option<String>,
    pub hypotheses: Vec<HypothesisJson>,
    pub conclusion: Option<String>,
    pub decorations: Vec<String>,
    pub scope: String,
}

pub fn tri_str(t: Tri) -> String {
    t.to_string()
}

impl EquivalenceJson {
    /// `subjects` pairs every certificate of every hypothesis with the module it is about;
    /// `None` keeps the hypothesis without certificates.
    pub fn new(r: &EquivalenceReport, subjects: Vec<Option<Vec<DimEntry>>>) -> EquivalenceJson {
        let (status, open) = match r.status() {
            ReportStatus::Conclusive => ("conclusive".to_string(), None),
            ReportStatus::Inconclusive { item, status } => ("inconclusive".to_string(), Some(format!("{item}: {status}"))),
        };
        EquivalenceJson {
            theorem: r.theorem.to_string(),
            algebra: r.algebra.clone(),
            target: r.target.name().to_string(),
            status,
            open,
            hypotheses: r
                .hypotheses
                .iter()
                .zip(subjects)
                .map(|(h, certs)| HypothesisJson {
                    name: h.name.clone(),
                    status: tri_str(h.status),
                    detail: h.detail.clone(),
                    certificates: certs.unwrap_or_default(),
                })
                .collect(),
            conclusion: r.conclusion.clone(),
            decorations: r.decorations.clone(),
            scope: r.scope.to_string(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        if self.hypotheses.iter().any(|h| h.status == "unknown") {
            Outcome::Unknown
        } else {
            Outcome::Decisive
        }
    }
}

/// An isomorphism of algebras given on basis elements, source to target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoJson {
    pub source: AlgebraExpr,
    pub target: AlgebraExpr,
    pub source_name: String,
    pub target_name: String,
    pub found: bool,
    pub matrix: Option<MatrixJson>,
}

impl IsoJson {
    pub fn outcome(&self) -> Outcome {
        if self.found {
            Outcome::Decisive
        } else {
            Outcome::Unknown
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurBody {
    pub algebra: String,
    pub idempotent: Vec<String>,
    pub corner_dim: usize,
    pub corner_basis: Vec<String>,
    pub regular: String,
    pub singularly_complete: String,
    pub report: EquivalenceJson,
    pub iso: Option<IsoJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularGorensteinJson {
    pub verdict: String,
    /// `left` or `right`: the side of the bimodule with certified infinite projective dimension.
    pub witness: Option<String>,
    pub left_pd: DimEntry,
    pub right_pd: DimEntry,
    pub r: GorensteinBody,
    pub s: GorensteinBody,
    pub direct: GorensteinBody,
    pub consistent: bool,
    pub bounds: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularBody {
    pub shape: String,
    pub algebra: String,
    pub dims: [usize; 4],
    pub basis: Vec<String>,
    pub block_rule: bool,
    /// Why the Gorenstein criterion was not applied, if it was not.
    pub precondition: Option<String>,
    pub gorenstein: Option<TriangularGorensteinJson>,
    pub report: EquivalenceJson,
    pub iso: Option<IsoJson>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn dim_entries(&self) -> Vec<&DimEntry> {
        fn hyps(r: &EquivalenceJson) -> Vec<&DimEntry> {
            r.hypotheses.iter().flat_map(|h| h.certificates.iter()).collect()
        }
        match &self.body {
            Body::Check(_) => Vec::new(),
            Body::Resolve(b) => vec![&b.pd],
            Body::Gorenstein(g) => g.entries().collect(),
            Body::Schur(s) => hyps(&s.report),
            Body::Triangular(t) => {
                let mut out = hyps(&t.report);
                if let Some(g) = &t.gorenstein {
                    out.push(&g.left_pd);
                    out.push(&g.right_pd);
                    out.extend(g.r.entries());
                    out.extend(g.s.entries());
                    out.extend(g.direct.entries());
                }
                out
            }
        }
    }

    fn isos(&self) -> Vec<&IsoJson> {
        match &self.body {
            Body::Schur(s) => s.iso.iter().collect(),
            Body::Triangular(t) => t.iso.iter().collect(),
            _ => Vec::new(),
        }
    }
}

/// Outcome of re-checking every certificate in a report.
#[derive(Clone, Debug, Default)]
pub struct Reverification {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Reverification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The parts of `m` without projective summands, `core(Ω^0 M), …, core(Ω^n M)`.
fn cores(m: &Module, n: usize) -> Result<Vec<Module>, String> {
    let mut out = Vec::with_capacity(n + 1);
    let mut current = m.clone();
    for i in 0..=n {
        let core = strip_projective_summands(&current).map_err(|e| e.to_string())?.core;
        if i < n {
            current = syzygy(&core).map_err(|e| e.to_string())?;
        }
        out.push(core);
    }
    Ok(out)
}

fn check_entry(session: &mut Session, e: &DimEntry) -> Result<(), String> {
    let m = session.module(&e.subject).map_err(|e| e.to_string())?;
    match (e.verdict, e.value, &e.certificate) {
        (Verdict::Finite, Some(n), None) => {
            let cs = cores(&m, n)?;
            if !cs[n].is_zero() {
                return Err(format!("Ω^{n} of {} still has a non-projective part", e.subject));
            }
            if n > 0 && cs[n - 1].is_zero() {
                return Err(format!("{} has projective dimension below {n}", e.subject));
            }
            Ok(())
        }
        (Verdict::Infinite, None, Some(p)) => {
            if p.j >= p.k {
                return Err("periodicity needs j < k".into());
            }
            let cs = cores(&m, p.k)?;
            let f = p.matrix.to_mat(m.algebra().field())?;
            let map = ModuleMap::new(cs[p.k].clone(), cs[p.j].clone(), f).map_err(|e| e.to_string())?;
            if cs[p.k].is_zero() || !map.is_isomorphism() {
                return Err(format!("certificate for {} is not an isomorphism Ω^{} → Ω^{}", e.subject, p.k, p.j));
            }
            Ok(())
        }
        (Verdict::Unknown, Some(_), None) => Ok(()),
        _ => Err(format!("malformed entry for {}", e.subject)),
    }
}

fn check_iso(session: &mut Session, iso: &IsoJson) -> Result<(), String> {
    let Some(m) = &iso.matrix else {
        return if iso.found {
            Err("isomorphism marked found without a matrix".into())
        } else {
            Ok(())
        };
    };
    let s = session.algebra(&iso.source).map_err(|e| e.to_string())?;
    let t = session.algebra(&iso.target).map_err(|e| e.to_string())?;
    let f = m.to_mat(s.field())?;
    if verify_algebra_iso(&s, &t, &f) {
        Ok(())
    } else {
        Err(format!("matrix is not an algebra isomorphism {} → {}", iso.source_name, iso.target_name))
    }
}

/// Rebuilds every algebra and module a report refers to and re-checks its certificates.
/// Inputs are read relative to `base` and must still have their recorded digests.
pub fn reverify(report: &Report, base: &std::path::Path) -> Result<Reverification, ExprError> {
    let field = match &report.options.field {
        Some(f) => Some(crate::format::parse_field(f).map_err(ExprError::Build)?),
        None => None,
    };
    let mut session = Session::new(field, base);
    for input in &report.inputs {
        let i = session.add(input.role, &input.path)?;
        if session.inputs[i].sha256 != input.sha256 {
            return Err(ExprError::Build(format!("{} changed since the report was written", input.path)));
        }
    }
    let mut out = Reverification::default();
    for e in report.dim_entries() {
        out.checked += 1;
        if let Err(msg) = check_entry(&mut session, e) {
            out.failures.push(msg);
        }
    }
    for iso in report.isos() {
        out.checked += 1;
        if let Err(msg) = check_iso(&mut session, iso) {
            out.failures.push(msg);
        }
    }
    Ok(out)
}
