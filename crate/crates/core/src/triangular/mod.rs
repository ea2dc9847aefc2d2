//! Triangular matrix algebras `(R M; 0 S)` and `(R 0; N S)`, their column modules, and the
//! Gorenstein criterion in terms of the bimodule.
//!
//! Basis of `T` is `R ⊔ M ⊔ S` in both orientations. A lower triangular algebra over an
//! `S`-`R`-bimodule `N` is built as the opposite of the upper triangular algebra over
//! `R^op`, `S^op` and `N^op`.
//!
//! Column modules `(X; Y)` have `X` over `R` and `Y` over `S`. The structure map goes from
//! the slot over the bimodule's right algebra (the *source*) to the slot over its left
//! algebra (the *target*): `M ⊗_S Y → X` for upper and `N ⊗_R X → Y` for lower.

mod bimodule;
mod column;
mod gorenstein;

pub use bimodule::Bimodule;
pub use column::{
    column_module, hom_induced_module, ideal_sequence, phi_space, principal_sequence,
    quotient_is_product, tensor_product, verify_phi, Column,
};
pub use gorenstein::{
    gdim_bounds, gorenstein_triangular, BimoduleWitness, TriangularGorenstein, TriangularVerdict,
};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Elem, Provenance, StructureData};
use crate::exactla::{LinalgError, Mat};
use crate::homology::HomologyError;
use crate::module::ModuleError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangularError {
    #[error("not a bimodule: {0}")]
    NotABimodule(String),
    #[error("{0} algebra has dimension zero")]
    EmptyAlgebra(&'static str),
    #[error("bimodule is over different algebras than the ones given")]
    AlgebraMismatch,
    #[error("structure map is not balanced: bimodule element {element}, algebra element {by}, module vector {vector}")]
    NotBalanced {
        element: String,
        by: String,
        vector: usize,
    },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `(R M; 0 S)` with `M` an `R`-`S`-bimodule.
    Upper,
    /// `(R 0; N S)` with `N` an `S`-`R`-bimodule.
    Lower,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Upper => "upper",
            Orientation::Lower => "lower",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TriangularData {
    pub r: Arc<Algebra>,
    pub s: Arc<Algebra>,
    pub bimodule: Bimodule,
    pub orientation: Orientation,
    pub algebra: Arc<Algebra>,
}

impl TriangularData {
    /// Block ranges of the `R`, bimodule and `S` parts of the basis of `T`.
    pub fn blocks(&self) -> [std::ops::Range<usize>; 3] {
        let (a, b) = (self.r.dim(), self.bimodule.dim());
        [0..a, a..a + b, a + b..a + b + self.s.dim()]
    }

    /// Splits an element of `T` into its `(r, m, s)` components.
    pub fn components(&self, x: &[crate::exactla::Scalar]) -> (Elem, Elem, Elem) {
        let [r, m, s] = self.blocks();
        (x[r].to_vec(), x[m].to_vec(), x[s].to_vec())
    }

    /// Indices of the primitive idempotents of `T` coming from `R` and from `S`.
    pub fn prim_split(&self) -> (Vec<usize>, Vec<usize>) {
        let k = self.r.num_prims();
        ((0..k).collect(), (k..k + self.s.num_prims()).collect())
    }

    /// Recomputes every product of basis elements from the block rule and compares it with
    /// the structure constants of `T`.
    pub fn verify_block_rule(&self) -> bool {
        let t = &self.algebra;
        let [rb, mb, sb] = self.blocks();
        let n = t.dim();
        let b = &self.bimodule;
        for i in 0..n {
            for j in 0..n {
                let mut expect = t.zero();
                let put = |expect: &mut Elem, off: usize, v: &[crate::exactla::Scalar]| {
                    for (k, x) in v.iter().enumerate() {
                        expect[off + k] = x.clone();
                    }
                };
                let (ir, jr) = (rb.contains(&i), rb.contains(&j));
                let (im, jm) = (mb.contains(&i), mb.contains(&j));
                let (is, js) = (sb.contains(&i), sb.contains(&j));
                if ir && jr {
                    put(&mut expect, rb.start, &self.r.product_basis(i, j));
                } else if is && js {
                    put(&mut expect, sb.start, &self.s.product_basis(i - sb.start, j - sb.start));
                } else {
                    match self.orientation {
                        Orientation::Upper => {
                            if ir && jm {
                                put(&mut expect, mb.start, &b.left_action(i).column(j - mb.start));
                            } else if im && js {
                                put(&mut expect, mb.start, &b.right_action(j - sb.start).column(i - mb.start));
                            }
                        }
                        Orientation::Lower => {
                            if is && jm {
                                put(&mut expect, mb.start, &b.left_action(i - sb.start).column(j - mb.start));
                            } else if im && jr {
                                put(&mut expect, mb.start, &b.right_action(j).column(i - mb.start));
                            }
                        }
                    }
                }
                if t.product_basis(i, j) != expect {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds `T` from `R`, `S` and a bimodule: an `R`-`S`-bimodule for the upper orientation and
/// an `S`-`R`-bimodule for the lower one.
pub fn build_triangular(
    r: &Arc<Algebra>,
    s: &Arc<Algebra>,
    m: &Bimodule,
    orientation: Orientation,
) -> Result<TriangularData, TriangularError> {
    if r.dim() == 0 {
        return Err(TriangularError::EmptyAlgebra("left"));
    }
    if s.dim() == 0 {
        return Err(TriangularError::EmptyAlgebra("right"));
    }
    if r.field() != s.field() {
        return Err(LinalgError::MixedField.into());
    }
    let (ml, mr) = match orientation {
        Orientation::Upper => (r, s),
        Orientation::Lower => (s, r),
    };
    if !(ml.same_structure(m.left_algebra()) && mr.same_structure(m.right_algebra())) {
        return Err(TriangularError::AlgebraMismatch);
    }
    m.verify()?;
    let name = match orientation {
        Orientation::Upper => format!("({} M; 0 {})", r.name(), s.name()),
        Orientation::Lower => format!("({} 0; N {})", r.name(), s.name()),
    };
    let algebra = match orientation {
        Orientation::Upper => upper_structure(r, s, m, name)?,
        Orientation::Lower => {
            let up = upper_structure(&r.opposite(), &s.opposite(), &m.opposite(), String::new())?;
            let op = up.opposite();
            let mut labels = op.labels().to_vec();
            for l in labels[r.dim()..r.dim() + m.dim()].iter_mut() {
                *l = format!("N:{}", &l[2..]);
            }
            Algebra::from_structure(StructureData {
                name,
                field: op.field(),
                labels,
                left_mult: op.left_mult_all().to_vec(),
                prims: op.prims().to_vec(),
                prim_labels: op.prim_labels().to_vec(),
                radical: op.radical().to_vec(),
                provenance: Provenance::Triangular,
            })?
        }
    };
    Ok(TriangularData {
        r: r.clone(),
        s: s.clone(),
        bimodule: m.clone(),
        orientation,
        algebra,
    })
}

fn upper_structure(
    r: &Arc<Algebra>,
    s: &Arc<Algebra>,
    m: &Bimodule,
    name: String,
) -> Result<Arc<Algebra>, TriangularError> {
    let field = r.field();
    let (dr, dm, ds) = (r.dim(), m.dim(), s.dim());
    let n = dr + dm + ds;
    let mut left_mult = Vec::with_capacity(n);
    for i in 0..dr {
        let mut l = Mat::zeros(field, n, n);
        l.set_block(0, 0, r.left_mult(i));
        l.set_block(dr, dr, m.left_action(i));
        left_mult.push(l);
    }
    for k in 0..dm {
        // m_k · s_j = ρ_j e_k
        let mut l = Mat::zeros(field, n, n);
        for j in 0..ds {
            for (row, x) in m.right_action(j).column(k).into_iter().enumerate() {
                l.set(dr + row, dr + dm + j, x);
            }
        }
        left_mult.push(l);
    }
    for j in 0..ds {
        let mut l = Mat::zeros(field, n, n);
        l.set_block(dr + dm, dr + dm, s.left_mult(j));
        left_mult.push(l);
    }
    let embed = |v: &[crate::exactla::Scalar], off: usize| -> Elem {
        let mut e = vec![field.zero(); n];
        for (k, x) in v.iter().enumerate() {
            e[off + k] = x.clone();
        }
        e
    };
    let prims: Vec<Elem> = r
        .prims()
        .iter()
        .map(|p| embed(p, 0))
        .chain(s.prims().iter().map(|p| embed(p, dr + dm)))
        .collect();
    let prim_labels = r
        .prim_labels()
        .iter()
        .map(|l| format!("R:{l}"))
        .chain(s.prim_labels().iter().map(|l| format!("S:{l}")))
        .collect();
    let radical: Vec<Elem> = r
        .radical()
        .iter()
        .map(|v| embed(v, 0))
        .chain((0..dm).map(|k| {
            let mut e = vec![field.zero(); n];
            e[dr + k] = field.one();
            e
        }))
        .chain(s.radical().iter().map(|v| embed(v, dr + dm)))
        .collect();
    let labels = r
        .labels()
        .iter()
        .map(|l| format!("R:{l}"))
        .chain(m.labels().iter().map(|l| format!("M:{l}")))
        .chain(s.labels().iter().map(|l| format!("S:{l}")))
        .collect();
    Ok(Algebra::from_structure(StructureData {
        name,
        field,
        labels,
        left_mult,
        prims,
        prim_labels,
        radical,
        provenance: Provenance::Triangular,
    })?)
}

#[cfg(test)]
mod tests;
