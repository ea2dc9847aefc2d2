//! Descriptions of algebras and modules in terms of input files, so that a saved report can
//! rebuild every object a certificate talks about.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sgcert::algebra::{corner, Algebra, Idempotent};
use sgcert::exactla::Field;
use sgcert::module::{regular, standard_module, Module, StandardKind};
use sgcert::schur::schur_apply;
use sgcert::triangular::{build_triangular, Orientation, TriangularData};

use crate::format::{load_algebra, load_bimodule, load_module, FormatError, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Algebra,
    Module,
    Bimodule,
}

/// An input file as recorded in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub role: Role,
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Upper,
    Lower,
}

impl From<Shape> for Orientation {
    fn from(s: Shape) -> Orientation {
        match s {
            Shape::Upper => Orientation::Upper,
            Shape::Lower => Orientation::Lower,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum AlgebraExpr {
    File { input: usize },
    Opposite { of: Box<AlgebraExpr> },
    /// `eAe` for the idempotent on the listed vertices.
    Corner { of: Box<AlgebraExpr>, vertices: Vec<String> },
    Triangular { shape: Shape, r: usize, s: usize, bimodule: usize },
}

impl AlgebraExpr {
    pub fn opposite(&self) -> AlgebraExpr {
        AlgebraExpr::Opposite { of: Box::new(self.clone()) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Simple,
    Projective,
    Injective,
}

impl From<Kind> for StandardKind {
    fn from(k: Kind) -> StandardKind {
        match k {
            Kind::Simple => StandardKind::Simple,
            Kind::Projective => StandardKind::Projective,
            Kind::Injective => StandardKind::Injective,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Simple => "S",
            Kind::Projective => "P",
            Kind::Injective => "I",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BimoduleSide {
    /// Over the bimodule's left algebra.
    Left,
    /// Over the opposite of the bimodule's right algebra.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ModuleExpr {
    Standard { algebra: AlgebraExpr, module: Kind, vertex: String },
    File { algebra: AlgebraExpr, input: usize },
    /// `eA` over `eAe`.
    CornerRegular { algebra: AlgebraExpr, vertices: Vec<String> },
    /// The bimodule of a triangular algebra, viewed from one side.
    Bimodule { triangular: AlgebraExpr, side: BimoduleSide },
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Standard { module, vertex, .. } => write!(f, "{module}({vertex})"),
            ModuleExpr::File { .. } => f.write_str("M"),
            ModuleExpr::CornerRegular { .. } => f.write_str("eA"),
            ModuleExpr::Bimodule { side, .. } => match side {
                BimoduleSide::Left => f.write_str("bimodule over its left algebra"),
                BimoduleSide::Right => f.write_str("bimodule over its right algebra"),
            },
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("input {0} is missing or has the wrong role")]
    BadInput(usize),
    #[error("{0}")]
    Build(String),
}

fn build<E: fmt::Display>(e: E) -> ExprError {
    ExprError::Build(e.to_string())
}

/// Loads input files once and evaluates expressions over them.
pub struct Session {
    pub field: Option<Field>,
    base: PathBuf,
    pub inputs: Vec<Input>,
    sources: Vec<Source>,
    algebras: HashMap<AlgebraExpr, Arc<Algebra>>,
    triangular: HashMap<AlgebraExpr, TriangularData>,
}

impl Session {
    /// `base` is the directory relative paths of later inputs are resolved against.
    pub fn new(field: Option<Field>, base: &Path) -> Session {
        Session {
            field,
            base: base.to_path_buf(),
            inputs: Vec::new(),
            sources: Vec::new(),
            algebras: HashMap::new(),
            triangular: HashMap::new(),
        }
    }

    /// Registers an input file and returns its index.
    pub fn add(&mut self, role: Role, path: &str) -> Result<usize, ExprError> {
        let src = Source::read(&self.base.join(path))?;
        self.inputs.push(Input {
            role,
            path: path.to_string(),
            sha256: src.sha256.clone(),
        });
        self.sources.push(src);
        Ok(self.inputs.len() - 1)
    }

    fn source(&self, input: usize, role: Role) -> Result<&Source, ExprError> {
        match self.inputs.get(input) {
            Some(i) if i.role == role => Ok(&self.sources[input]),
            _ => Err(ExprError::BadInput(input)),
        }
    }

    pub fn algebra(&mut self, e: &AlgebraExpr) -> Result<Arc<Algebra>, ExprError> {
        if let Some(a) = self.algebras.get(e) {
            return Ok(a.clone());
        }
        let a = match e {
            AlgebraExpr::File { input } => load_algebra(self.source(*input, Role::Algebra)?, self.field)?,
            AlgebraExpr::Opposite { of } => self.algebra(of)?.opposite(),
            AlgebraExpr::Corner { of, vertices } => {
                let a = self.algebra(of)?;
                let idem = Idempotent::from_labels(&a, vertices).map_err(build)?;
                corner(&a, &idem).map_err(build)?.algebra
            }
            AlgebraExpr::Triangular { .. } => self.triangular(e)?.algebra.clone(),
        };
        self.algebras.insert(e.clone(), a.clone());
        Ok(a)
    }

    pub fn triangular(&mut self, e: &AlgebraExpr) -> Result<TriangularData, ExprError> {
        if let Some(t) = self.triangular.get(e) {
            return Ok(t.clone());
        }
        let AlgebraExpr::Triangular { shape, r, s, bimodule } = e else {
            return Err(ExprError::Build("not a triangular algebra".into()));
        };
        let ra = self.algebra(&AlgebraExpr::File { input: *r })?;
        let sa = self.algebra(&AlgebraExpr::File { input: *s })?;
        let (left, right) = match shape {
            Shape::Upper => (&ra, &sa),
            Shape::Lower => (&sa, &ra),
        };
        let b = load_bimodule(self.source(*bimodule, Role::Bimodule)?, left, right)?;
        let t = build_triangular(&ra, &sa, &b, (*shape).into()).map_err(build)?;
        self.triangular.insert(e.clone(), t.clone());
        Ok(t)
    }

    pub fn module(&mut self, e: &ModuleExpr) -> Result<Module, ExprError> {
        match e {
            ModuleExpr::Standard { algebra, module, vertex } => {
                let a = self.algebra(algebra)?;
                let i = a
                    .prim_index(vertex)
                    .ok_or_else(|| ExprError::Build(format!("{} has no vertex {vertex}", a.name())))?;
                standard_module(&a, (*module).into(), i).map_err(build)
            }
            ModuleExpr::File { algebra, input } => {
                let a = self.algebra(algebra)?;
                Ok(load_module(self.source(*input, Role::Module)?, &a)?)
            }
            ModuleExpr::CornerRegular { algebra, vertices } => {
                let a = self.algebra(algebra)?;
                let idem = Idempotent::from_labels(&a, vertices).map_err(build)?;
                schur_apply(&a, &idem, &regular(&a)).map_err(build)
            }
            ModuleExpr::Bimodule { triangular, side } => {
                let t = self.triangular(triangular)?;
                let m = match side {
                    BimoduleSide::Left => t.bimodule.left_module(),
                    BimoduleSide::Right => t.bimodule.right_module(),
                };
                Ok(m.map_err(build)?.0)
            }
        }
    }
}
