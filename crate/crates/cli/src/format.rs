//! Text formats for algebras, modules and bimodules.
//!
//! All three are TOML documents. Path words compose like functions: `g*b` is the path that
//! traverses `b` first and then `g`. Matrix entries are integers or `"num/den"` strings, listed
//! row by row.
//!
//! Algebra (`.alg`):
//!
//! ```toml
//! name = "A"
//!
//! [field]
//! characteristic = 0
//!
//! [quiver]
//! vertices = ["1", "2"]
//! arrows = [{ name = "b", from = "1", to = "2" }, { name = "g", from = "2", to = "1" }]
//!
//! [relations]
//! items = ["g*b"]
//!
//! [options]
//! degree_bound = 32
//! ```
//!
//! Module (`.mod`): `[dims]` maps vertices to dimensions and `[arrows]` maps each arrow to a
//! `dim(to) × dim(from)` matrix. Omitted vertices have dimension 0 and omitted arrows act by 0.
//!
//! Bimodule (`.bim`): `labels` names the basis, and `[left_action]` / `[right_action]` give one
//! matrix per basis label of the left / right algebra (`m ↦ a·m` and `m ↦ m·a`, with column
//! `k` the image of basis element `k`). Omitted labels act by 0.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use sgcert::algebra::{build_path_algebra, Algebra, Quiver, Relation, DEFAULT_DEGREE_BOUND};
use sgcert::exactla::{Field, Mat};
use sgcert::module::Module;
use sgcert::triangular::Bimodule;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Syntax { path: String, message: String },
    #[error("{path}:{line}: {message}")]
    At {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

/// File contents together with their SHA-256 digest.
#[derive(Clone, Debug)]
pub struct Source {
    pub path: PathBuf,
    pub text: String,
    pub sha256: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Source, FormatError> {
        let bytes = fs::read(path).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let sha256 = digest(&bytes);
        let text = String::from_utf8(bytes).map_err(|e| FormatError::Syntax {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Ok(Source {
            path: path.to_path_buf(),
            text,
            sha256,
        })
    }

    fn name(&self) -> String {
        self.path.display().to_string()
    }

    fn parse<T: for<'de> Deserialize<'de>>(&self) -> Result<T, FormatError> {
        toml::from_str(&self.text).map_err(|e| FormatError::Syntax {
            path: self.name(),
            message: e.to_string().trim_end().to_string(),
        })
    }

    fn invalid(&self, message: impl Into<String>) -> FormatError {
        FormatError::Invalid {
            path: self.name(),
            message: message.into(),
        }
    }

    /// An error pointing at the first line that contains `needle` as a quoted string or
    /// starts with it as a bare key.
    fn at(&self, needle: &str, message: impl Into<String>) -> FormatError {
        let quoted = format!("\"{needle}\"");
        let is_key = |l: &str| {
            l.trim_start()
                .strip_prefix(needle)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        };
        match self.text.lines().position(|l| l.contains(&quoted) || is_key(l)) {
            Some(i) => FormatError::At {
                path: self.name(),
                line: i + 1,
                message: message.into(),
            },
            None => self.invalid(message),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: Option<String>,
    field: FieldBlock,
    quiver: QuiverBlock,
    #[serde(default)]
    relations: RelationsBlock,
    #[serde(default)]
    options: OptionsBlock,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldBlock {
    characteristic: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverBlock {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowSpec {
    name: String,
    from: String,
    to: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RelationsBlock {
    #[serde(default)]
    items: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionsBlock {
    #[serde(default = "default_degree_bound")]
    degree_bound: usize,
}

impl Default for OptionsBlock {
    fn default() -> Self {
        OptionsBlock {
            degree_bound: default_degree_bound(),
        }
    }
}

fn default_degree_bound() -> usize {
    DEFAULT_DEGREE_BOUND
}

/// Parses `0`, `Q`, a prime `p`, or `F_p`.
pub fn parse_field(text: &str) -> Result<Field, String> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix("f_")).unwrap_or(t);
    let c: u64 = digits.parse().map_err(|_| format!("not a field: {text}"))?;
    Field::from_characteristic(c).map_err(|e| e.to_string())
}

/// Builds the path algebra described by `src`. `field` overrides the characteristic in the file.
pub fn load_algebra(src: &Source, field: Option<Field>) -> Result<Arc<Algebra>, FormatError> {
    let file: AlgebraFile = src.parse()?;
    let field = match field {
        Some(f) => f,
        None => Field::from_characteristic(file.field.characteristic).map_err(|e| src.invalid(e.to_string()))?,
    };
    let arrows: Vec<(&str, &str, &str)> = file
        .quiver
        .arrows
        .iter()
        .map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str()))
        .collect();
    let vertices: Vec<&str> = file.quiver.vertices.iter().map(String::as_str).collect();
    let quiver = Quiver::new(&vertices, &arrows).map_err(|e| src.invalid(e.to_string()))?;
    let mut relations = Vec::new();
    for (i, text) in file.relations.items.iter().enumerate() {
        let rel = Relation::parse(&quiver, field, text)
            .map_err(|e| src.at(text, format!("relations.items[{i}] \"{text}\": {e}")))?;
        relations.push(rel);
    }
    let name = file.name.unwrap_or_else(|| {
        src.path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "A".into())
    });
    build_path_algebra(&name, field, &quiver, &relations, file.options.degree_bound)
        .map_err(|e| src.invalid(e.to_string()))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

type RawMatrix = Vec<Vec<Entry>>;

fn matrix(src: &Source, what: &str, field: Field, raw: &RawMatrix, rows: usize, cols: usize) -> Result<Mat, FormatError> {
    let shape_ok = raw.len() == rows && raw.iter().all(|r| r.len() == cols);
    if !shape_ok {
        let got_cols = raw.first().map_or(0, Vec::len);
        return Err(src.invalid(format!(
            "{what} needs a {rows}x{cols} matrix, got {}x{got_cols}",
            raw.len()
        )));
    }
    let mut m = Mat::zeros(field, rows, cols);
    for (i, row) in raw.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let x = match e {
                Entry::Int(n) => field.from_i64(*n),
                Entry::Text(t) => field.parse(t).map_err(|e| src.invalid(format!("{what}: {e}")))?,
            };
            m.set(i, j, x);
        }
    }
    Ok(m)
}

/// A path relative to the directory of `src`.
fn sibling(src: &Source, rel: &str) -> PathBuf {
    src.path.parent().unwrap_or(Path::new(".")).join(rel)
}

/// Checks that an optional algebra reference in a module or bimodule file describes `alg`.
fn check_reference(src: &Source, key: &str, reference: Option<&str>, alg: &Arc<Algebra>) -> Result<(), FormatError> {
    let Some(rel) = reference else { return Ok(()) };
    let other = load_algebra(&Source::read(&sibling(src, rel))?, Some(alg.field()))?;
    if other.same_structure(alg) {
        Ok(())
    } else {
        Err(src.invalid(format!("{key} = \"{rel}\" does not describe the algebra {}", alg.name())))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    algebra: Option<String>,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    arrows: BTreeMap<String, RawMatrix>,
}

/// Reads a quiver representation over `alg` and verifies it against the relations.
pub fn load_module(src: &Source, alg: &Arc<Algebra>) -> Result<Module, FormatError> {
    let file: ModuleFile = src.parse()?;
    check_reference(src, "algebra", file.algebra.as_deref(), alg)?;
    let pres = alg
        .presentation()
        .ok_or_else(|| src.invalid("the algebra has no quiver presentation"))?;
    let quiver = &pres.quiver;
    for v in file.dims.keys() {
        if quiver.vertex_index(v).is_none() {
            return Err(src.at(v, format!("unknown vertex {v}")));
        }
    }
    for a in file.arrows.keys() {
        if quiver.arrow_index(a).is_none() {
            return Err(src.at(a, format!("unknown arrow {a}")));
        }
    }
    let dims: Vec<usize> = quiver
        .vertices()
        .iter()
        .map(|v| file.dims.get(v).copied().unwrap_or(0))
        .collect();
    let field = alg.field();
    let mut arrows = Vec::new();
    for arrow in quiver.arrows() {
        let (r, c) = (dims[arrow.target], dims[arrow.source]);
        arrows.push(match file.arrows.get(&arrow.name) {
            Some(raw) => matrix(src, &format!("arrow {}", arrow.name), field, raw, r, c)?,
            None => Mat::zeros(field, r, c),
        });
    }
    Module::from_representation(alg, &dims, &arrows).map_err(|e| src.invalid(e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleFile {
    left: Option<String>,
    right: Option<String>,
    labels: Vec<String>,
    #[serde(default)]
    left_action: BTreeMap<String, RawMatrix>,
    #[serde(default)]
    right_action: BTreeMap<String, RawMatrix>,
}

fn actions(
    src: &Source,
    side: &str,
    alg: &Algebra,
    raw: &BTreeMap<String, RawMatrix>,
    n: usize,
) -> Result<Vec<Mat>, FormatError> {
    for l in raw.keys() {
        if !alg.labels().contains(l) {
            return Err(src.invalid(format!("{side}: {l} is not a basis label of {}", alg.name())));
        }
    }
    alg.labels()
        .iter()
        .map(|l| match raw.get(l) {
            Some(m) => matrix(src, &format!("{side}.{l}"), alg.field(), m, n, n),
            None => Ok(Mat::zeros(alg.field(), n, n)),
        })
        .collect()
}

/// Reads a `left`-`right`-bimodule and verifies the bimodule axioms.
pub fn load_bimodule(src: &Source, left: &Arc<Algebra>, right: &Arc<Algebra>) -> Result<Bimodule, FormatError> {
    let file: BimoduleFile = src.parse()?;
    check_reference(src, "left", file.left.as_deref(), left)?;
    check_reference(src, "right", file.right.as_deref(), right)?;
    let n = file.labels.len();
    let la = actions(src, "left_action", left, &file.left_action, n)?;
    let ra = actions(src, "right_action", right, &file.right_action, n)?;
    Bimodule::new(left, right, file.labels, la, ra).map_err(|e| src.invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn source(name: &str, text: &str) -> Source {
        Source {
            path: PathBuf::from(name),
            text: text.into(),
            sha256: digest(text.as_bytes()),
        }
    }

    const DUAL: &str = r#"
name = "D"
[field]
characteristic = 0
[quiver]
vertices = ["1"]
arrows = [{ name = "x", from = "1", to = "1" }]
[relations]
items = ["x*x"]
"#;

    #[test]
    fn parses_fields() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rational);
        assert_eq!(parse_field("0").unwrap(), Field::Rational);
        assert_eq!(parse_field("101").unwrap(), Field::Prime(101));
        assert_eq!(parse_field("F_101").unwrap(), Field::Prime(101));
        assert!(parse_field("100").is_err());
        assert!(parse_field("x").is_err());
    }

    #[test]
    fn loads_dual_numbers_with_override() {
        let d = load_algebra(&source("D.alg", DUAL), None).unwrap();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.field(), Field::Rational);
        let d = load_algebra(&source("D.alg", DUAL), Some(Field::Prime(101))).unwrap();
        assert_eq!(d.field(), Field::Prime(101));
    }

    #[test]
    fn unknown_arrow_reports_line() {
        let bad = DUAL.replace("\"x*x\"", "\"x*x\", \"x*q\"");
        let err = load_algebra(&source("D.alg", &bad), None).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, FormatError::At { line: 9, .. }), "{msg}");
        assert!(msg.contains("x*q"), "{msg}");
    }

    #[test]
    fn syntax_errors_are_reported() {
        assert!(matches!(
            load_algebra(&source("D.alg", "name = "), None),
            Err(FormatError::Syntax { .. })
        ));
        let extra = format!("{DUAL}\n[extra]\nx = 1\n");
        assert!(load_algebra(&source("D.alg", &extra), None).is_err());
    }

    #[test]
    fn module_shapes_and_relations_are_checked() {
        let d = load_algebra(&source("D.alg", DUAL), None).unwrap();
        let m = load_module(&source("m.mod", "[dims]\n1 = 2\n[arrows]\nx = [[0, 0], [1, 0]]\n"), &d).unwrap();
        assert_eq!(m.dim(), 2);
        let wrong_shape = source("m.mod", "[dims]\n1 = 2\n[arrows]\nx = [[0, 0]]\n");
        assert!(load_module(&wrong_shape, &d).is_err());
        let breaks_relation = source("m.mod", "[dims]\n1 = 1\n[arrows]\nx = [[\"1/2\"]]\n");
        assert!(load_module(&breaks_relation, &d).is_err());
        let unknown = source("m.mod", "[dims]\n7 = 1\n");
        assert!(matches!(load_module(&unknown, &d), Err(FormatError::At { line: 2, .. })));
    }

    #[test]
    fn bimodule_axioms_are_checked() {
        let d = load_algebra(&source("D.alg", DUAL), None).unwrap();
        let regular = "labels = [\"1\", \"x\"]\n[left_action]\ne1 = [[1, 0], [0, 1]]\nx = [[0, 0], [1, 0]]\n\
                       [right_action]\ne1 = [[1, 0], [0, 1]]\nx = [[0, 0], [1, 0]]\n";
        let b = load_bimodule(&source("D.bim", regular), &d, &d).unwrap();
        assert_eq!(b.dim(), 2);
        let no_unit = regular.replace("e1 = [[1, 0], [0, 1]]\nx = [[0, 0], [1, 0]]\n[right", "x = [[0, 0], [1, 0]]\n[right");
        assert!(load_bimodule(&source("D.bim", &no_unit), &d, &d).is_err());
    }
}
