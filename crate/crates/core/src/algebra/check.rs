use std::fmt;

use crate::exactla::{EchelonBasis, Mat, Subspace};

use super::{Algebra, Elem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`check_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub checks: Vec<CheckItem>,
    /// Smallest `k` with `rad^k = 0`, if found.
    pub nilpotency_index: Option<usize>,
}

impl Diagnostics {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckItem> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "[{mark}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Verifies associativity, unit, primitive idempotent axioms and the radical (two-sided,
/// nilpotent, complementary to the span of the primitive idempotents).
pub fn check_algebra(a: &Algebra) -> Diagnostics {
    let n = a.dim();
    let field = a.field();
    let mut checks = Vec::new();
    let basis: Vec<Elem> = (0..n).map(|i| a.basis_vector(i)).collect();

    let mut bad = None;
    'assoc: for i in 0..n {
        for j in 0..n {
            let ij = a.product_basis(i, j);
            for (k, bk) in basis.iter().enumerate() {
                let left = a.mul(&ij, bk);
                let right = a.mul(&basis[i], &a.product_basis(j, k));
                if left != right {
                    bad = Some((i, j, k));
                    break 'assoc;
                }
            }
        }
    }
    checks.push(CheckItem {
        name: "associativity",
        passed: bad.is_none(),
        detail: match bad {
            None => format!("all {} basis triples", n * n * n),
            Some((i, j, k)) => format!(
                "({}·{})·{} differs from {}·({}·{})",
                a.labels[i], a.labels[j], a.labels[k], a.labels[i], a.labels[j], a.labels[k]
            ),
        },
    });

    let one = a.one();
    let unit_ok = basis
        .iter()
        .all(|b| a.mul(&one, b) == *b && a.mul(b, &one) == *b);
    checks.push(CheckItem {
        name: "unit",
        passed: unit_ok,
        detail: "sum of primitive idempotents is a two-sided unit".into(),
    });

    let mut idem_fail = None;
    for (i, ei) in a.prims().iter().enumerate() {
        for (j, ej) in a.prims().iter().enumerate() {
            let p = a.mul(ei, ej);
            let expected = if i == j { ei.clone() } else { a.zero() };
            if p != expected && idem_fail.is_none() {
                idem_fail = Some((i, j));
            }
        }
    }
    checks.push(CheckItem {
        name: "idempotents",
        passed: idem_fail.is_none(),
        detail: match idem_fail {
            None => format!("{} orthogonal idempotents", a.num_prims()),
            Some((i, j)) => format!(
                "e{}·e{} is wrong",
                a.prim_labels()[i], a.prim_labels()[j]
            ),
        },
    });

    let rad_span = if a.radical().is_empty() {
        None
    } else {
        Subspace::new(Mat::from_columns(field, n, a.radical())).ok()
    };
    let in_rad = |v: &[crate::exactla::Scalar]| match &rad_span {
        Some(s) => s.contains(v),
        None => v.iter().all(|x| x.is_zero()),
    };
    let independent = a.radical().is_empty() || rad_span.is_some();
    let ideal_ok = independent
        && a.radical().iter().all(|r| {
            basis
                .iter()
                .all(|b| in_rad(&a.mul(r, b)) && in_rad(&a.mul(b, r)))
        });
    checks.push(CheckItem {
        name: "radical ideal",
        passed: ideal_ok,
        detail: format!("radical of dimension {} is a two-sided ideal", a.radical().len()),
    });

    // powers of the radical
    let mut power: Vec<Elem> = a.radical().to_vec();
    let mut index = None;
    for k in 1..=n + 1 {
        if power.iter().all(|v| v.iter().all(|x| x.is_zero())) {
            index = Some(k);
            break;
        }
        let mut next = EchelonBasis::new(field, n);
        let mut kept = Vec::new();
        for p in &power {
            for r in a.radical() {
                let v = a.mul(p, r);
                if next.insert(&v) {
                    kept.push(v);
                }
            }
        }
        power = kept;
    }
    checks.push(CheckItem {
        name: "radical nilpotent",
        passed: index.is_some(),
        detail: match index {
            Some(k) => format!("rad^{k} = 0"),
            None => "radical powers do not vanish".into(),
        },
    });

    let mut all = EchelonBasis::new(field, n);
    let mut count = 0;
    for v in a.prims().iter().chain(a.radical()) {
        if all.insert(v) {
            count += 1;
        }
    }
    let split = count == n && a.num_prims() + a.radical().len() == n;
    checks.push(CheckItem {
        name: "semisimple quotient",
        passed: split,
        detail: format!(
            "{} primitive idempotents + radical of dimension {} against dimension {n}",
            a.num_prims(),
            a.radical().len()
        ),
    });

    Diagnostics {
        checks,
        nilpotency_index: index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_path_algebra, Provenance, Quiver, Relation, StructureData};
    use crate::exactla::Field;

    fn dual_numbers() -> std::sync::Arc<Algebra> {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let r = Relation::parse(&q, Field::Rational, "x*x").unwrap();
        build_path_algebra("D", Field::Rational, &q, &[r], 32).unwrap()
    }

    #[test]
    fn dual_numbers_nilpotency() {
        let d = check_algebra(&dual_numbers());
        assert!(d.all_passed());
        assert_eq!(d.nilpotency_index, Some(2));
    }

    #[test]
    fn corrupted_idempotent_detected() {
        // K × K with e1·e1 wrongly set to e2
        let f = Field::Rational;
        let l0 = Mat::from_i64(f, &[&[0, 0], &[1, 0]]);
        let l1 = Mat::from_i64(f, &[&[0, 0], &[0, 1]]);
        let alg = Algebra::from_structure(StructureData {
            name: "bad".into(),
            field: f,
            labels: vec!["e1".into(), "e2".into()],
            left_mult: vec![l0, l1],
            prims: vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
            prim_labels: vec!["1".into(), "2".into()],
            radical: vec![],
            provenance: Provenance::PathAlgebra,
        })
        .unwrap();
        let d = check_algebra(&alg);
        assert!(!d.get("idempotents").unwrap().passed);
        assert!(!d.all_passed());
    }
}
