//! Degree-bounded Gröbner completion for admissible ideals of a path algebra.
//!
//! Words are ordered by length, then lexicographically. The leading word of a rule is its
//! largest word; rules are kept monic and inter-reduced.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactla::{Field, Scalar};

use super::quiver::{PathPoly, PathWord, Quiver, Relation};
use super::AlgebraError;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: Field,
    rules: Vec<PathPoly>,
    degree_bound: usize,
}

fn leading(p: &PathPoly) -> Option<(&PathWord, &Scalar)> {
    p.iter().next_back()
}

fn make_monic(p: PathPoly) -> PathPoly {
    let Some((_, c)) = leading(&p) else {
        return p;
    };
    let inv = c.inv().expect("nonzero leading coefficient");
    p.into_iter().map(|(w, x)| (w, &x * &inv)).collect()
}

/// `p - c * (left · rule · right)` with the words concatenated in product order.
fn subtract_multiple(p: &mut PathPoly, c: &Scalar, left: &PathWord, rule: &PathPoly, right: &PathWord) {
    for (w, x) in rule {
        let word = left.concat(w).concat(right);
        let delta = c * x;
        let sum = match p.remove(&word) {
            Some(old) => &old - &delta,
            None => -&delta,
        };
        if !sum.is_zero() {
            p.insert(word, sum);
        }
    }
}

impl GroebnerBasis {
    /// Completes `relations` (validated as admissible) considering all overlaps whose word has
    /// length at most `degree_bound`.
    pub fn compute(
        quiver: &Quiver,
        field: Field,
        relations: &[Relation],
        degree_bound: usize,
    ) -> Result<GroebnerBasis, AlgebraError> {
        for r in relations {
            r.validate(quiver)?;
            if r.terms.values().any(|c| c.field() != field) {
                return Err(AlgebraError::Linalg(crate::exactla::LinalgError::MixedField));
            }
        }
        let mut gb = GroebnerBasis {
            field,
            rules: Vec::new(),
            degree_bound,
        };
        for r in relations {
            gb.add_rule(r.terms.clone());
        }
        loop {
            let pending: Vec<PathPoly> = gb
                .s_polynomials()
                .into_iter()
                .map(|s| gb.reduce(s))
                .filter(|s| !s.is_empty())
                .collect();
            if pending.is_empty() {
                break;
            }
            for s in pending {
                gb.add_rule(s);
            }
        }
        Ok(gb)
    }

    fn add_rule(&mut self, p: PathPoly) {
        let p = self.reduce(p);
        if p.is_empty() {
            return;
        }
        self.rules.push(make_monic(p));
        self.interreduce();
    }

    fn interreduce(&mut self) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.rules.len() {
                let rule = self.rules.remove(i);
                let reduced = self.reduce(rule.clone());
                if reduced.is_empty() {
                    changed = true;
                    continue;
                }
                let reduced = make_monic(reduced);
                if reduced != rule {
                    changed = true;
                }
                self.rules.insert(i, reduced);
                i += 1;
            }
            if !changed {
                break;
            }
        }
    }

    fn s_polynomials(&self) -> Vec<PathPoly> {
        let mut out = Vec::new();
        for f in &self.rules {
            let lf = leading(f).expect("nonzero rule").0;
            for g in &self.rules {
                let lg = leading(g).expect("nonzero rule").0;
                let max_overlap = lf.len().min(lg.len());
                for o in 1..max_overlap {
                    if lf.len() + lg.len() - o > self.degree_bound {
                        continue;
                    }
                    if lf.0[lf.len() - o..] != lg.0[..o] {
                        continue;
                    }
                    let left = PathWord(lf.0[..lf.len() - o].to_vec());
                    let right = PathWord(lg.0[o..].to_vec());
                    // f·right − left·g
                    let mut s = PathPoly::new();
                    let one = self.field.one();
                    subtract_multiple(&mut s, &-&one, &PathWord(vec![]), f, &right);
                    subtract_multiple(&mut s, &one, &left, g, &PathWord(vec![]));
                    if !s.is_empty() {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    /// Full reduction with the rules tried in their stored order.
    pub fn reduce(&self, p: PathPoly) -> PathPoly {
        let order: Vec<usize> = (0..self.rules.len()).collect();
        self.reduce_in_order(p, &order)
    }

    /// Full reduction where, at each step, the first rule of `order` that applies is used.
    pub fn reduce_in_order(&self, mut p: PathPoly, order: &[usize]) -> PathPoly {
        'outer: loop {
            let words: Vec<PathWord> = p.keys().rev().cloned().collect();
            for w in words {
                for &ri in order {
                    let rule = &self.rules[ri];
                    let lt = leading(rule).expect("nonzero rule").0;
                    if let Some(pos) = w.find(lt) {
                        let c = p[&w].clone();
                        let left = PathWord(w.0[..pos].to_vec());
                        let right = PathWord(w.0[pos + lt.len()..].to_vec());
                        subtract_multiple(&mut p, &c, &left, rule, &right);
                        continue 'outer;
                    }
                }
            }
            return p;
        }
    }

    /// Reduction with a freshly shuffled rule order.
    pub fn reduce_shuffled<R: Rng + ?Sized>(&self, p: PathPoly, rng: &mut R) -> PathPoly {
        let mut order: Vec<usize> = (0..self.rules.len()).collect();
        order.shuffle(rng);
        self.reduce_in_order(p, &order)
    }

    pub fn rules(&self) -> &[PathPoly] {
        &self.rules
    }

    pub fn leading_words(&self) -> Vec<PathWord> {
        self.rules
            .iter()
            .map(|r| leading(r).expect("nonzero rule").0.clone())
            .collect()
    }

    pub fn is_normal(&self, w: &PathWord) -> bool {
        self.rules
            .iter()
            .all(|r| w.find(leading(r).expect("nonzero rule").0).is_none())
    }

    /// All nontrivial normal paths, by increasing length. Fails when a normal path of length
    /// `degree_bound` survives, or when the longest leading word admits overlaps the
    /// completion did not examine.
    pub fn normal_words(&self, quiver: &Quiver) -> Result<Vec<PathWord>, AlgebraError> {
        let mut all = Vec::new();
        let mut layer: Vec<PathWord> = (0..quiver.arrows().len())
            .map(|a| PathWord(vec![a]))
            .filter(|w| self.is_normal(w))
            .collect();
        let mut len = 1;
        while !layer.is_empty() {
            if len >= self.degree_bound {
                return Err(AlgebraError::NotFiniteWithinBound {
                    bound: self.degree_bound,
                });
            }
            all.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for w in &layer {
                let (_, target) = quiver.endpoints(w).expect("normal words are paths");
                for (ai, a) in quiver.arrows().iter().enumerate() {
                    if a.source != target {
                        continue;
                    }
                    let mut letters = vec![ai];
                    letters.extend_from_slice(&w.0);
                    let cand = PathWord(letters);
                    if self.is_normal(&cand) {
                        next.push(cand);
                    }
                }
            }
            next.sort();
            layer = next;
            len += 1;
        }
        let longest = self.leading_words().iter().map(PathWord::len).max().unwrap_or(0);
        if longest > 0 && 2 * longest - 1 > self.degree_bound {
            return Err(AlgebraError::NotFiniteWithinBound {
                bound: self.degree_bound,
            });
        }
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    fn rels(quiver: &Quiver, texts: &[&str]) -> Vec<Relation> {
        texts
            .iter()
            .map(|t| Relation::parse(quiver, q(), t).unwrap())
            .collect()
    }

    #[test]
    fn monomial_relations_are_already_complete() {
        let quiver = Quiver::new(
            &["1", "2"],
            &[("a", "1", "1"), ("b", "1", "2"), ("g", "2", "1")],
        )
        .unwrap();
        let gb = GroebnerBasis::compute(&quiver, q(), &rels(&quiver, &["a*a", "g*b", "b*a"]), 32)
            .unwrap();
        assert_eq!(gb.rules().len(), 3);
        let words: Vec<String> = gb
            .normal_words(&quiver)
            .unwrap()
            .iter()
            .map(|w| quiver.word_label(w))
            .collect();
        assert_eq!(words, vec!["a", "b", "g", "a*g", "b*g"]);
    }

    #[test]
    fn completion_adds_overlap_consequences() {
        // Leading word of x*x - x*y is x*y; the overlap x*y*x forces x*x*x into the ideal.
        let quiver = Quiver::new(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
        let relations = rels(&quiver, &["x*x - x*y", "y*x", "y*y"]);
        let gb = GroebnerBasis::compute(&quiver, q(), &relations, 16).unwrap();
        // every rule reduces to zero against the basis
        for r in &relations {
            assert!(gb.reduce(r.terms.clone()).is_empty());
        }
        let words = gb.normal_words(&quiver).unwrap();
        let labels: Vec<String> = words.iter().map(|w| quiver.word_label(w)).collect();
        assert_eq!(labels, vec!["x", "y", "x*x"]);
        assert!(gb.leading_words().contains(&PathWord(vec![0, 0, 0])));
    }

    #[test]
    fn unbounded_algebra_is_rejected() {
        let quiver = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let gb = GroebnerBasis::compute(&quiver, q(), &[], 8).unwrap();
        assert!(matches!(
            gb.normal_words(&quiver),
            Err(AlgebraError::NotFiniteWithinBound { bound: 8 })
        ));
    }

    #[test]
    fn shuffled_reduction_is_confluent() {
        let quiver = Quiver::new(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
        let gb = GroebnerBasis::compute(&quiver, q(), &rels(&quiver, &["x*x - x*y", "y*x", "y*y"]), 16)
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let len = rng.gen_range(2..6);
            let w = PathWord((0..len).map(|_| rng.gen_range(0..2)).collect());
            let p: PathPoly = [(w, q().one())].into_iter().collect();
            let a = gb.reduce_shuffled(p.clone(), &mut rng);
            let b = gb.reduce_shuffled(p, &mut rng);
            assert_eq!(a, b);
        }
    }
}
