use std::sync::Arc;

use crate::algebra::{corner, Algebra, Corner, Elem, Idempotent};
use crate::exactla::{linear_combination, LinalgError, Mat, Subspace};
use crate::module::{Module, ModuleError};

use super::TriangularError;

/// An `R`-`S`-bimodule given by one action matrix per basis element of each algebra.
///
/// `left_action[i]` is `m ↦ r_i · m` and `right_action[j]` is `m ↦ m · s_j`, so the right
/// action is anti-multiplicative: `ρ(s s′) = ρ(s′) ρ(s)`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    labels: Vec<String>,
    left_action: Vec<Mat>,
    right_action: Vec<Mat>,
}

impl Bimodule {
    /// Builds and verifies a bimodule.
    pub fn new(
        left: &Arc<Algebra>,
        right: &Arc<Algebra>,
        labels: Vec<String>,
        left_action: Vec<Mat>,
        right_action: Vec<Mat>,
    ) -> Result<Bimodule, TriangularError> {
        let b = Bimodule {
            left: left.clone(),
            right: right.clone(),
            labels,
            left_action,
            right_action,
        };
        b.verify()?;
        Ok(b)
    }

    pub fn zero(left: &Arc<Algebra>, right: &Arc<Algebra>) -> Bimodule {
        let f = left.field();
        Bimodule {
            left: left.clone(),
            right: right.clone(),
            labels: Vec::new(),
            left_action: vec![Mat::zeros(f, 0, 0); left.dim()],
            right_action: vec![Mat::zeros(f, 0, 0); right.dim()],
        }
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        let n = a.dim();
        let right_action = (0..n).map(|j| a.right_mult_elem(&a.basis_vector(j))).collect();
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            labels: a.labels().to_vec(),
            left_action: a.left_mult_all().to_vec(),
            right_action,
        }
    }

    /// `e·A·f` as a bimodule over the corners `eAe` and `fAf`, returned with both corners.
    pub fn corner_block(
        a: &Arc<Algebra>,
        e: &Idempotent,
        f: &Idempotent,
    ) -> Result<(Bimodule, Corner, Corner), TriangularError> {
        let ce = corner(a, e)?;
        let cf = corner(a, f)?;
        let sandwich = &a.left_mult_elem(e.element()) * &a.right_mult_elem(f.element());
        let pivots = sandwich.rref().pivots;
        let basis = sandwich.select_columns(&pivots);
        let labels: Vec<String> = pivots.iter().map(|&j| a.labels()[j].clone()).collect();
        let field = a.field();
        let k = basis.cols();
        let sub = Subspace::new(basis.clone())?;
        let coords = |v: &[crate::exactla::Scalar]| sub.coords(v).expect("element of e·A·f");
        let act = |emb: &Mat, on_left: bool| -> Vec<Mat> {
            (0..emb.cols())
                .map(|c| {
                    let x = emb.column(c);
                    let cols: Vec<Elem> = (0..k)
                        .map(|j| {
                            let m = basis.column(j);
                            coords(&if on_left { a.mul(&x, &m) } else { a.mul(&m, &x) })
                        })
                        .collect();
                    Mat::from_columns(field, k, &cols)
                })
                .collect()
        };
        let left_action = act(&ce.embedding, true);
        let right_action = act(&cf.embedding, false);
        let b = Bimodule::new(&ce.algebra, &cf.algebra, labels, left_action, right_action)?;
        Ok((b, ce, cf))
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn left_action(&self, i: usize) -> &Mat {
        &self.left_action[i]
    }

    pub fn right_action(&self, j: usize) -> &Mat {
        &self.right_action[j]
    }

    pub fn left_actions(&self) -> &[Mat] {
        &self.left_action
    }

    pub fn right_actions(&self) -> &[Mat] {
        &self.right_action
    }

    /// Checks shapes, fields, both module axioms and that the actions commute.
    pub fn verify(&self) -> Result<(), TriangularError> {
        let d = self.dim();
        let field = self.left.field();
        if self.right.field() != field {
            return Err(LinalgError::MixedField.into());
        }
        let bad = |msg: String| Err(TriangularError::NotABimodule(msg));
        if self.left_action.len() != self.left.dim() || self.right_action.len() != self.right.dim() {
            return bad("one action matrix per algebra basis element is required".into());
        }
        for m in self.left_action.iter().chain(&self.right_action) {
            if m.rows() != d || m.cols() != d {
                return bad(format!("action matrix is {}x{}, expected {d}x{d}", m.rows(), m.cols()));
            }
            if m.field() != field {
                return Err(LinalgError::MixedField.into());
            }
        }
        let lc = |acts: &[Mat], x: &[crate::exactla::Scalar]| linear_combination(field, d, d, x, acts);
        if !lc(&self.left_action, &self.left.one()).is_identity() {
            return bad("the unit of the left algebra does not act as the identity".into());
        }
        if !lc(&self.right_action, &self.right.one()).is_identity() {
            return bad("the unit of the right algebra does not act as the identity".into());
        }
        let (l, r) = (&self.left, &self.right);
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let lhs = &self.left_action[i] * &self.left_action[j];
                if lhs != lc(&self.left_action, &l.product_basis(i, j)) {
                    return bad(format!("left action of {}·{} is not multiplicative", l.labels()[i], l.labels()[j]));
                }
            }
        }
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let lhs = &self.right_action[j] * &self.right_action[i];
                if lhs != lc(&self.right_action, &r.product_basis(i, j)) {
                    return bad(format!("right action of {}·{} is not multiplicative", r.labels()[i], r.labels()[j]));
                }
            }
        }
        for (i, li) in self.left_action.iter().enumerate() {
            for (j, rj) in self.right_action.iter().enumerate() {
                if li * rj != rj * li {
                    return bad(format!(
                        "left action of {} does not commute with right action of {}",
                        l.labels()[i],
                        r.labels()[j]
                    ));
                }
            }
        }
        Ok(())
    }

    /// The same space as an `S^op`-`R^op`-bimodule.
    pub fn opposite(&self) -> Bimodule {
        Bimodule {
            left: self.right.opposite(),
            right: self.left.opposite(),
            labels: self.labels.clone(),
            left_action: self.right_action.clone(),
            right_action: self.left_action.clone(),
        }
    }

    /// The underlying left module, with the change of basis from the bimodule basis.
    pub fn left_module(&self) -> Result<(Module, Mat), ModuleError> {
        Module::from_action(&self.left, self.left_action.clone())
    }

    /// The underlying right module as a left module over the opposite of the right algebra.
    pub fn right_module(&self) -> Result<(Module, Mat), ModuleError> {
        Module::from_action(&self.right.opposite(), self.right_action.clone())
    }
}
