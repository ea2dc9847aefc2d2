use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::exactla::{Field, Scalar};

use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(name, source, target)` triples naming declared vertices.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        arrows: &[(S, S, S)],
    ) -> Result<Quiver, AlgebraError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(AlgebraError::DuplicateName(v.clone()));
            }
        }
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| AlgebraError::UnknownVertex(name.to_string()))
        };
        let mut out: Vec<Arrow> = Vec::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a| a.name == name) || vertices.contains(&name) {
                return Err(AlgebraError::DuplicateName(name));
            }
            out.push(Arrow {
                source: index(s.as_ref())?,
                target: index(t.as_ref())?,
                name,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// `(source, target)` of a nonempty word, `None` if it is not composable.
    ///
    /// Words are function-style: in `p*q` the right factor `q` is traversed first, so the
    /// last letter is traversed first.
    pub fn endpoints(&self, word: &PathWord) -> Option<(usize, usize)> {
        let letters = &word.0;
        let last = self.arrows.get(*letters.last()?)?;
        let mut at = last.target;
        for &x in letters.iter().rev().skip(1) {
            let a = self.arrows.get(x)?;
            if a.source != at {
                return None;
            }
            at = a.target;
        }
        Some((last.source, at))
    }

    pub fn word_label(&self, word: &PathWord) -> String {
        word.0
            .iter()
            .map(|&x| self.arrows[x].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A path written as arrow indices in product order (`p*q` traverses `q` first).
/// Ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord(pub Vec<usize>);

impl PathWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &PathWord) -> PathWord {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        PathWord(w)
    }

    /// Position of the first occurrence of `pat` as a contiguous subword.
    pub fn find(&self, pat: &PathWord) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }
}

impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of paths, ordered by `PathWord`.
pub type PathPoly = BTreeMap<PathWord, Scalar>;

/// A relation: a formal linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: PathPoly,
}

impl Relation {
    pub fn new(terms: PathPoly) -> Relation {
        Relation { terms }
    }

    /// Parses a signed sum of path words such as `"a*a"` or `"b*g - 2*a*g"` or `"1/2*x*y"`.
    pub fn parse(quiver: &Quiver, field: Field, text: &str) -> Result<Relation, AlgebraError> {
        let parse_err = |msg: &str| AlgebraError::Parse(format!("relation {text:?}: {msg}"));
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut leading_sign = false;
        for ch in text.chars() {
            match ch {
                '+' | '-' => {
                    if current.trim().is_empty() {
                        if leading_sign || !pieces.is_empty() {
                            return Err(parse_err("misplaced sign"));
                        }
                        leading_sign = true;
                    } else {
                        pieces.push((negative, std::mem::take(&mut current)));
                    }
                    current.clear();
                    negative = ch == '-';
                }
                c => current.push(c),
            }
        }
        if current.trim().is_empty() {
            return Err(parse_err("empty term"));
        }
        pieces.push((negative, current));

        let mut terms = PathPoly::new();
        for (neg, body) in pieces {
            let mut coeff = field.one();
            let mut word = Vec::new();
            for factor in body.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(parse_err("empty factor"));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    if !word.is_empty() {
                        return Err(parse_err("coefficient after a path factor"));
                    }
                    let c = field
                        .parse(factor)
                        .map_err(|e| parse_err(&e.to_string()))?;
                    coeff = &coeff * &c;
                } else {
                    let idx = quiver
                        .arrow_index(factor)
                        .ok_or_else(|| AlgebraError::UnknownArrow {
                            name: factor.to_string(),
                            context: text.to_string(),
                        })?;
                    word.push(idx);
                }
            }
            if word.is_empty() {
                return Err(parse_err("term without a path"));
            }
            if neg {
                coeff = -&coeff;
            }
            let w = PathWord(word);
            let sum = match terms.remove(&w) {
                Some(old) => &old + &coeff,
                None => coeff,
            };
            if !sum.is_zero() {
                terms.insert(w, sum);
            }
        }
        if terms.is_empty() {
            return Err(AlgebraError::ZeroRelation(text.to_string()));
        }
        Ok(Relation { terms })
    }

    /// Checks composability, parallelism and that every word has length at least 2.
    /// Returns the common `(source, target)`.
    pub fn validate(&self, quiver: &Quiver) -> Result<(usize, usize), AlgebraError> {
        let mut ends = None;
        for w in self.terms.keys() {
            let label = quiver.word_label(w);
            let e = quiver
                .endpoints(w)
                .ok_or_else(|| AlgebraError::NonComposable(label.clone()))?;
            if w.len() < 2 {
                return Err(AlgebraError::NotAdmissible(label));
            }
            match ends {
                None => ends = Some(e),
                Some(prev) if prev != e => {
                    return Err(AlgebraError::NotUniform(self.display(quiver)))
                }
                _ => {}
            }
        }
        ends.ok_or_else(|| AlgebraError::ZeroRelation(String::new()))
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| format!("{c}*{}", quiver.word_label(w)))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix_a() -> Quiver {
        Quiver::new(
            &["1", "2"],
            &[("a", "1", "1"), ("b", "1", "2"), ("g", "2", "1")],
        )
        .unwrap()
    }

    #[test]
    fn function_style_endpoints() {
        let q = fix_a();
        // g*b: b (1->2) first, then g (2->1)
        let gb = PathWord(vec![2, 1]);
        assert_eq!(q.endpoints(&gb), Some((0, 0)));
        // b*a: a then b, 1 -> 2
        assert_eq!(q.endpoints(&PathWord(vec![1, 0])), Some((0, 1)));
        // a*b is not composable: b ends at 2, a starts at 1
        assert_eq!(q.endpoints(&PathWord(vec![0, 1])), None);
    }

    #[test]
    fn parse_relations() {
        let q = fix_a();
        let f = Field::Rational;
        let r = Relation::parse(&q, f, "a*g - 2*a*g + 1/2*a*g").unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[&PathWord(vec![0, 2])], f.parse("-1/2").unwrap());
        assert!(matches!(
            Relation::parse(&q, f, "a*q"),
            Err(AlgebraError::UnknownArrow { .. })
        ));
        assert!(matches!(
            Relation::parse(&q, f, "a*a - a*a"),
            Err(AlgebraError::ZeroRelation(_))
        ));
        let neg = Relation::parse(&q, f, "-b*a").unwrap();
        assert_eq!(neg.terms[&PathWord(vec![1, 0])], f.from_i64(-1));
    }

    #[test]
    fn admissibility_checks() {
        let q = fix_a();
        let f = Field::Rational;
        assert!(Relation::parse(&q, f, "g*b").unwrap().validate(&q).is_ok());
        assert!(matches!(
            Relation::parse(&q, f, "a").unwrap().validate(&q),
            Err(AlgebraError::NotAdmissible(_))
        ));
        assert!(matches!(
            Relation::parse(&q, f, "a*b").unwrap().validate(&q),
            Err(AlgebraError::NonComposable(_))
        ));
        assert!(matches!(
            Relation::parse(&q, f, "g*b - a*g").unwrap().validate(&q),
            Err(AlgebraError::NotUniform(_))
        ));
    }

    #[test]
    fn quiver_validation() {
        assert!(matches!(
            Quiver::new(&["1"], &[("x", "1", "2")]),
            Err(AlgebraError::UnknownVertex(_))
        ));
        assert!(matches!(
            Quiver::new(&["1", "1"], &[]),
            Err(AlgebraError::DuplicateName(_))
        ));
    }
}
