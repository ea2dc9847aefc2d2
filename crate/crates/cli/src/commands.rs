use std::path::{Path, PathBuf};

use sgcert::algebra::{check_algebra, find_algebra_iso, Idempotent};
use sgcert::exactla::Field;
use sgcert::homology::{gorenstein, inj_dim, proj_dim, resolve, GorensteinVerdict, Params};
use sgcert::module::{standard_module, top_dims, StandardKind};
use sgcert::schur::{classify_idempotent, corner_report, triangular_report, Regularity, SchurFunctor};
use sgcert::triangular::{gorenstein_triangular, TriangularError, TriangularVerdict};
use thiserror::Error;

use crate::expr::{AlgebraExpr, BimoduleSide, ExprError, Kind, ModuleExpr, Role, Session, Shape};
use crate::report::{
    AgreementJson, Body, CheckBody, CheckItemJson, DimEntry, EquivalenceJson, GorensteinBody, IsoJson, MatrixJson,
    Options, Outcome, Report, ResolveBody, SchurBody, TriangularBody, TriangularGorensteinJson, TOOL, VERSION,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> CliError {
        CliError::Input(e.to_string())
    }
}

fn internal<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Internal(e.to_string())
}

/// Options shared by every command.
#[derive(Clone, Debug)]
pub struct Settings {
    pub field: Option<Field>,
    pub bound: usize,
    pub seed: u64,
    pub attempts: usize,
    /// Directory that input paths are relative to.
    pub base: PathBuf,
}

impl Default for Settings {
    fn default() -> Self {
        let p = Params::default();
        Settings {
            field: None,
            bound: 20,
            seed: p.seed,
            attempts: p.attempts,
            base: PathBuf::from("."),
        }
    }
}

impl Settings {
    fn params(&self) -> Params {
        Params {
            bound: self.bound,
            seed: self.seed,
            attempts: self.attempts,
        }
    }

    fn session(&self) -> Session {
        Session::new(self.field, &self.base)
    }

    fn report(&self, command: &str, session: Session, outcome: Outcome, body: Body) -> Report {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            options: Options {
                field: self.field.map(|f| f.to_string()),
                bound: self.bound,
                seed: self.seed,
                attempts: self.attempts,
            },
            inputs: session.inputs,
            outcome,
            body,
        }
    }
}

pub fn check(settings: &Settings, algebra: &str) -> Result<Report, CliError> {
    let mut session = settings.session();
    let input = session.add(Role::Algebra, algebra)?;
    let a = session.algebra(&AlgebraExpr::File { input })?;
    let diag = check_algebra(&a);
    let outcome = if diag.all_passed() {
        Outcome::Decisive
    } else {
        Outcome::Inconsistent
    };
    let body = CheckBody {
        algebra: a.name().into(),
        field: a.field().to_string(),
        dim: a.dim(),
        vertices: a.prim_labels().to_vec(),
        basis: a.labels().to_vec(),
        nilpotency_index: diag.nilpotency_index,
        checks: diag
            .checks
            .iter()
            .map(|c| CheckItemJson {
                name: c.name.into(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    };
    Ok(settings.report("check", session, outcome, Body::Check(body)))
}

/// What `resolve` works on.
#[derive(Clone, Debug)]
pub enum Target {
    File(String),
    Standard(Kind, String),
}

pub fn resolve_cmd(settings: &Settings, algebra: &str, target: &Target) -> Result<Report, CliError> {
    let mut session = settings.session();
    let input = session.add(Role::Algebra, algebra)?;
    let alg = AlgebraExpr::File { input };
    let a = session.algebra(&alg)?;
    let subject = match target {
        Target::File(path) => ModuleExpr::File {
            algebra: alg,
            input: session.add(Role::Module, path)?,
        },
        Target::Standard(kind, vertex) => ModuleExpr::Standard {
            algebra: alg,
            module: *kind,
            vertex: vertex.clone(),
        },
    };
    let m = session.module(&subject)?;
    let pd = proj_dim(&m, &settings.params()).map_err(internal)?;
    let length = match &pd {
        sgcert::homology::DimResult::Finite(n) => *n + 1,
        sgcert::homology::DimResult::InfiniteCertified(p) => p.k + 1,
        sgcert::homology::DimResult::Unknown(b) => *b,
    };
    let res = resolve(&m, length).map_err(internal)?;
    res.verify_exactness().map_err(CliError::Internal)?;
    let body = ResolveBody {
        algebra: a.name().into(),
        module: subject.to_string(),
        dim: m.dim(),
        syzygy_dims: res.syzygies.iter().map(|s| s.dim()).collect(),
        projective_terms: res.covers.iter().map(|c| top_dims(&c.map.source)).collect(),
        pd: DimEntry::new(subject, &pd),
    };
    let outcome = body.pd.outcome();
    Ok(settings.report("resolve", session, outcome, Body::Resolve(body)))
}

/// Compares finite projective and finite injective dimension on every standard module.
fn agreement(a: &std::sync::Arc<sgcert::algebra::Algebra>, params: &Params) -> Result<Vec<AgreementJson>, CliError> {
    let mut out = Vec::new();
    for (kind, k) in [
        (StandardKind::Simple, Kind::Simple),
        (StandardKind::Projective, Kind::Projective),
        (StandardKind::Injective, Kind::Injective),
    ] {
        for i in 0..a.num_prims() {
            let m = standard_module(a, kind, i).map_err(internal)?;
            let pd = proj_dim(&m, params).map_err(internal)?;
            let id = inj_dim(&m, params).map_err(internal)?;
            let consistent = match (&pd, &id) {
                (p, q) if p.is_unknown() || q.is_unknown() => true,
                (p, q) => p.is_finite() == q.is_finite(),
            };
            out.push(AgreementJson {
                module: format!("{k}({})", a.prim_labels()[i]),
                pd: pd.to_string(),
                id: id.to_string(),
                consistent,
            });
        }
    }
    Ok(out)
}

fn gorenstein_body(
    session: &mut Session,
    expr: &AlgebraExpr,
    params: &Params,
) -> Result<(GorensteinBody, GorensteinVerdict), CliError> {
    let a = session.algebra(expr)?;
    let g = gorenstein(&a, params).map_err(internal)?;
    let mut body = GorensteinBody::new(a.name(), expr, a.prim_labels(), &g);
    if g.is_gorenstein() {
        body.agreement = agreement(&a, params)?;
    }
    Ok((body, g))
}

pub fn gorenstein_cmd(settings: &Settings, algebra: &str) -> Result<Report, CliError> {
    let mut session = settings.session();
    let input = session.add(Role::Algebra, algebra)?;
    let (body, _) = gorenstein_body(&mut session, &AlgebraExpr::File { input }, &settings.params())?;
    let outcome = body.outcome();
    Ok(settings.report("gorenstein", session, outcome, Body::Gorenstein(body)))
}

fn tri_of(r: &Regularity) -> String {
    match r {
        Regularity::Yes(_) => "yes",
        Regularity::No { .. } => "no",
        Regularity::Unknown { .. } => "unknown",
    }
    .into()
}

fn vertex_of_simple_label(label: &str) -> String {
    label
        .strip_prefix("S(")
        .and_then(|l| l.strip_suffix(')'))
        .unwrap_or(label)
        .to_string()
}

fn simple_entries(alg: &AlgebraExpr, certs: &[(String, sgcert::homology::DimResult)]) -> Vec<DimEntry> {
    certs
        .iter()
        .map(|(label, d)| {
            DimEntry::new(
                ModuleExpr::Standard {
                    algebra: alg.clone(),
                    module: Kind::Simple,
                    vertex: vertex_of_simple_label(label),
                },
                d,
            )
        })
        .collect()
}

fn find_iso(session: &mut Session, source: AlgebraExpr, target: AlgebraExpr, settings: &Settings) -> Result<IsoJson, CliError> {
    let s = session.algebra(&source)?;
    let t = session.algebra(&target)?;
    let found = find_algebra_iso(&s, &t, settings.attempts, settings.seed).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(IsoJson {
        source,
        target,
        source_name: s.name().into(),
        target_name: t.name().into(),
        found: found.is_some(),
        matrix: found.as_ref().map(MatrixJson::from_mat),
    })
}

/// Corner report for the idempotent on `vertices`. With `compare`, also searches for an
/// isomorphism from that algebra to the corner.
pub fn schur_cmd(settings: &Settings, algebra: &str, vertices: &[String], compare: Option<&str>) -> Result<Report, CliError> {
    let mut session = settings.session();
    let input = session.add(Role::Algebra, algebra)?;
    let alg = AlgebraExpr::File { input };
    let a = session.algebra(&alg)?;
    let e = Idempotent::from_labels(&a, vertices).map_err(|e| CliError::Input(e.to_string()))?;
    let params = settings.params();
    let class = classify_idempotent(&a, &e, &params).map_err(internal)?;
    let report = corner_report(&a, &e, &params).map_err(internal)?;
    let functor = SchurFunctor::new(&a, &e).map_err(internal)?;
    let corner = &functor.corner.algebra;
    let subjects = vec![
        Some(simple_entries(&alg, &report.hypotheses[0].certificates)),
        Some(
            report.hypotheses[1]
                .certificates
                .iter()
                .map(|(_, d)| {
                    DimEntry::new(
                        ModuleExpr::CornerRegular {
                            algebra: alg.clone(),
                            vertices: vertices.to_vec(),
                        },
                        d,
                    )
                })
                .collect(),
        ),
    ];
    let report = EquivalenceJson::new(&report, subjects);
    let corner_expr = AlgebraExpr::Corner {
        of: Box::new(alg),
        vertices: vertices.to_vec(),
    };
    let iso = match compare {
        Some(path) => {
            let other = session.add(Role::Algebra, path)?;
            Some(find_iso(&mut session, AlgebraExpr::File { input: other }, corner_expr, settings)?)
        }
        None => None,
    };
    let mut outcome = report.outcome();
    if let Some(i) = &iso {
        outcome = outcome.worst(i.outcome());
    }
    let body = SchurBody {
        algebra: a.name().into(),
        idempotent: vertices.to_vec(),
        corner_dim: corner.dim(),
        corner_basis: corner.labels().to_vec(),
        regular: tri_of(&class.regular),
        singularly_complete: tri_of(&class.singularly_complete),
        report,
        iso,
    };
    Ok(settings.report("schur", session, outcome, Body::Schur(body)))
}

/// Gorenstein criterion, singularity-category report and dimension bounds for a triangular
/// algebra. With `compare`, also searches for an isomorphism from that algebra to `T`.
pub fn triangular_cmd(
    settings: &Settings,
    shape: Shape,
    r: &str,
    s: &str,
    bimodule: &str,
    compare: Option<&str>,
) -> Result<Report, CliError> {
    let mut session = settings.session();
    let ri = session.add(Role::Algebra, r)?;
    let si = session.add(Role::Algebra, s)?;
    let bi = session.add(Role::Bimodule, bimodule)?;
    let texpr = AlgebraExpr::Triangular {
        shape,
        r: ri,
        s: si,
        bimodule: bi,
    };
    let t = session.triangular(&texpr)?;
    let params = settings.params();
    let rexpr = AlgebraExpr::File { input: ri };
    let sexpr = AlgebraExpr::File { input: si };

    let (gorenstein_json, precondition) = match gorenstein_triangular(&t, &params) {
        Ok(g) => {
            let bim = |side| ModuleExpr::Bimodule {
                triangular: texpr.clone(),
                side,
            };
            let (rb, _) = gorenstein_body(&mut session, &rexpr, &params)?;
            let (sb, _) = gorenstein_body(&mut session, &sexpr, &params)?;
            let (db, _) = gorenstein_body(&mut session, &texpr, &params)?;
            let (verdict, witness) = match &g.verdict {
                TriangularVerdict::Gorenstein => ("gorenstein", None),
                TriangularVerdict::NotGorenstein(w) => ("not_gorenstein", Some(w.side.to_string())),
                TriangularVerdict::Unknown => ("unknown", None),
            };
            let json = TriangularGorensteinJson {
                verdict: verdict.into(),
                witness,
                left_pd: DimEntry::new(bim(BimoduleSide::Left), &g.left_pd),
                right_pd: DimEntry::new(bim(BimoduleSide::Right), &g.right_pd),
                r: rb,
                s: sb,
                direct: db,
                consistent: g.consistent,
                bounds: g.bounds,
            };
            (Some(json), None)
        }
        Err(TriangularError::Precondition(msg)) => (None, Some(msg)),
        Err(e) => return Err(internal(e)),
    };

    let report = triangular_report(&t, &params).map_err(internal)?;
    let mut subjects = Vec::new();
    match shape {
        Shape::Upper => subjects.push(Some(simple_entries(&rexpr, &report.hypotheses[0].certificates))),
        Shape::Lower => {
            let k = t.r.num_prims();
            let certs = &report.hypotheses[0].certificates;
            let mut both = simple_entries(&rexpr, &certs[..k]);
            both.extend(simple_entries(&rexpr.opposite(), &certs[k..]));
            subjects.push(Some(both));
            let (sb, _) = gorenstein_body(&mut session, &sexpr, &params)?;
            subjects.push(Some(sb.left.into_iter().chain(sb.right).collect()));
            subjects.push(Some(
                report.hypotheses[2]
                    .certificates
                    .iter()
                    .map(|(_, d)| {
                        DimEntry::new(
                            ModuleExpr::Bimodule {
                                triangular: texpr.clone(),
                                side: BimoduleSide::Left,
                            },
                            d,
                        )
                    })
                    .collect(),
            ));
        }
    }
    let report = EquivalenceJson::new(&report, subjects);

    let iso = match compare {
        Some(path) => {
            let other = session.add(Role::Algebra, path)?;
            Some(find_iso(&mut session, AlgebraExpr::File { input: other }, texpr.clone(), settings)?)
        }
        None => None,
    };

    let mut outcome = report.outcome();
    if let Some(g) = &gorenstein_json {
        if !g.consistent {
            outcome = Outcome::Inconsistent;
        }
        if g.verdict == "unknown" {
            outcome = outcome.worst(Outcome::Unknown);
        }
        for b in [&g.r, &g.s, &g.direct] {
            outcome = outcome.worst(b.outcome());
        }
    }
    if let Some(i) = &iso {
        outcome = outcome.worst(i.outcome());
    }
    if !t.verify_block_rule() {
        outcome = Outcome::Inconsistent;
    }
    let [rb, mb, sb] = t.blocks();
    let body = TriangularBody {
        shape: t.orientation.to_string(),
        algebra: t.algebra.name().into(),
        dims: [rb.len(), mb.len(), sb.len(), t.algebra.dim()],
        basis: t.algebra.labels().to_vec(),
        block_rule: t.verify_block_rule(),
        precondition,
        gorenstein: gorenstein_json,
        report,
        iso,
    };
    Ok(settings.report("triangular", session, outcome, Body::Triangular(Box::new(body))))
}

/// Reads a saved report and re-checks all of its certificates against the current inputs.
pub fn verify_cmd(path: &Path) -> Result<(Report, crate::report::Reverification), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let report = Report::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let base = if base.as_os_str().is_empty() { Path::new(".") } else { base };
    let result = crate::report::reverify(&report, &report_base(base, &report))?;
    Ok((report, result))
}

/// Reports store input paths as they were given on the command line; they are resolved from
/// the current directory when they exist there and from the report's directory otherwise.
fn report_base(report_dir: &Path, report: &Report) -> PathBuf {
    let here_ok = report.inputs.iter().all(|i| Path::new(&i.path).exists());
    if here_ok {
        PathBuf::from(".")
    } else {
        report_dir.to_path_buf()
    }
}
