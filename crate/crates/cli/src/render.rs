use std::fmt::Write;

use crate::report::{Body, DimEntry, EquivalenceJson, GorensteinBody, IsoJson, Report};

fn entry(out: &mut String, indent: &str, e: &DimEntry) {
    let _ = writeln!(out, "{indent}pd {} = {}", e.subject, e.display);
}

fn gorenstein(out: &mut String, g: &GorensteinBody) {
    let verdict = match (g.status.as_str(), g.gdim) {
        ("gorenstein", Some(d)) => format!("Gorenstein of dimension {d}"),
        ("not_gorenstein", _) => "not Gorenstein".into(),
        _ => "unknown".into(),
    };
    let _ = writeln!(out, "{}: {verdict}", g.algebra);
    let _ = writeln!(out, "  inj.dim of the left regular module: {}", g.left_dim);
    let _ = writeln!(out, "  inj.dim of the right regular module: {}", g.right_dim);
    if let Some(w) = &g.witness {
        let _ = writeln!(out, "  witness: {} side, vertex {}, pd {}", w.side, w.vertex, w.pd);
    }
    for a in &g.agreement {
        let mark = if a.consistent { "ok" } else { "VIOLATED" };
        let _ = writeln!(out, "  {}: pd {}, id {} [{mark}]", a.module, a.pd, a.id);
    }
}

fn equivalence(out: &mut String, r: &EquivalenceJson) {
    let _ = writeln!(out, "{} for {} (target {}): {}", r.theorem, r.algebra, r.target, r.status);
    for h in &r.hypotheses {
        let _ = writeln!(out, "  [{}] {}: {}", h.status, h.name, h.detail);
    }
    if let Some(c) = &r.conclusion {
        let _ = writeln!(out, "  conclusion: {c}");
    }
    for d in &r.decorations {
        let _ = writeln!(out, "  note: {d}");
    }
}

fn iso(out: &mut String, i: &IsoJson) {
    if i.found {
        let _ = writeln!(out, "isomorphism {} → {}: found and verified", i.source_name, i.target_name);
    } else {
        let _ = writeln!(out, "isomorphism {} → {}: not found (inconclusive)", i.source_name, i.target_name);
    }
}

/// A plain-text summary of a report.
pub fn render(r: &Report) -> String {
    let mut out = String::new();
    match &r.body {
        Body::Check(c) => {
            let _ = writeln!(out, "{} over {}: dimension {}", c.algebra, c.field, c.dim);
            let _ = writeln!(out, "vertices: {}", c.vertices.join(", "));
            let _ = writeln!(out, "basis: {}", c.basis.join(", "));
            for item in &c.checks {
                let mark = if item.passed { "pass" } else { "FAIL" };
                let _ = writeln!(out, "[{mark}] {}: {}", item.name, item.detail);
            }
        }
        Body::Resolve(b) => {
            let _ = writeln!(out, "{} over {} (dimension {})", b.module, b.algebra, b.dim);
            for (i, d) in b.syzygy_dims.iter().enumerate() {
                let _ = write!(out, "  Ω^{i}: dimension {d}");
                match b.projective_terms.get(i) {
                    Some(p) => {
                        let _ = writeln!(out, ", cover multiplicities {p:?}");
                    }
                    None => out.push('\n'),
                }
            }
            entry(&mut out, "", &b.pd);
        }
        Body::Gorenstein(g) => gorenstein(&mut out, g),
        Body::Schur(s) => {
            let _ = writeln!(
                out,
                "idempotent {{{}}} of {}: regular {}, singularly-complete {}",
                s.idempotent.join(","),
                s.algebra,
                s.regular,
                s.singularly_complete
            );
            let _ = writeln!(out, "corner of dimension {}: {}", s.corner_dim, s.corner_basis.join(", "));
            equivalence(&mut out, &s.report);
            if let Some(i) = &s.iso {
                iso(&mut out, i);
            }
        }
        Body::Triangular(t) => {
            let [r, m, s, n] = t.dims;
            let _ = writeln!(out, "{} triangular algebra {}: dimensions {r} + {m} + {s} = {n}", t.shape, t.algebra);
            if let Some(p) = &t.precondition {
                let _ = writeln!(out, "Gorenstein criterion not applicable: {p}");
            }
            if let Some(g) = &t.gorenstein {
                let _ = writeln!(out, "Gorenstein criterion: {}", g.verdict);
                entry(&mut out, "  ", &g.left_pd);
                entry(&mut out, "  ", &g.right_pd);
                if let Some(w) = &g.witness {
                    let _ = writeln!(out, "  witness: the bimodule over its {w} algebra");
                }
                let _ = writeln!(out, "  bounds on G.dim: [{}, {}]", g.bounds.0, g.bounds.1);
                gorenstein(&mut out, &g.direct);
                if !g.consistent {
                    let _ = writeln!(out, "  criterion and direct computation DISAGREE");
                }
            }
            equivalence(&mut out, &t.report);
            if let Some(i) = &t.iso {
                iso(&mut out, i);
            }
        }
    }
    out
}
