//! Brute-force oracles that share no code with the Gröbner engine: path enumeration with
//! linear algebra mod a large prime for dimensions, and a factor-through-projectives count
//! for stable Hom.

use std::collections::HashMap;

use sgcert::exactla::EchelonBasis;
use sgcert::module::{hom_dim, hom_space, projective, Module};

/// A quiver with relations given as plain strings. Relations are signed sums of words with unit
/// coefficients, like `"b*a - d*c"`; a word lists arrows in written order, so its rightmost
/// arrow is traversed first.
pub struct Presentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<String>,
}

const P: u64 = 1_000_003;

impl Presentation {
    fn composable(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| self.arrows[p[0]].1 == self.arrows[p[1]].2)
    }

    fn words_of_length(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for a in 0..self.arrows.len() {
                    let mut v = w.clone();
                    v.push(a);
                    if self.composable(&v) {
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn parsed_relations(&self) -> Vec<Vec<(u64, Vec<usize>)>> {
        self.relations
            .iter()
            .map(|r| {
                let mut terms = Vec::new();
                let mut sign = 1u64;
                for tok in r.split_whitespace() {
                    match tok {
                        "+" => sign = 1,
                        "-" => sign = P - 1,
                        word => {
                            let w = word
                                .split('*')
                                .map(|n| self.arrows.iter().position(|a| a.0 == n).expect("known arrow"))
                                .collect();
                            terms.push((sign, w));
                        }
                    }
                }
                terms
            })
            .collect()
    }

    /// Dimension of the degree-`len` part of `KQ/I` for homogeneous relations: all paths of
    /// that length modulo the span of `u·r·v`.
    fn graded_piece(&self, rels: &[Vec<(u64, Vec<usize>)>], len: usize) -> usize {
        let words = self.words_of_length(len);
        if words.is_empty() {
            return 0;
        }
        let index: HashMap<&Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows = Vec::new();
        for rel in rels {
            let rl = rel[0].1.len();
            if rl > len {
                continue;
            }
            for left in 0..=len - rl {
                for u in self.words_of_length(left) {
                    for v in self.words_of_length(len - rl - left) {
                        let mut row = vec![0u64; words.len()];
                        let mut any = false;
                        for (c, w) in rel {
                            let full: Vec<usize> = u.iter().chain(w).chain(&v).copied().collect();
                            if let Some(&i) = index.get(&full) {
                                row[i] = (row[i] + c) % P;
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        words.len() - rank_mod_p(rows)
    }

    /// `dim KQ/I`, summing graded pieces until one vanishes.
    pub fn dimension(&self) -> usize {
        let rels = self.parsed_relations();
        let mut total = self.vertices.len();
        for len in 1..20 {
            let d = self.graded_piece(&rels, len);
            if d == 0 {
                // every longer path factors through a vanishing path of this length
                return total;
            }
            total += d;
        }
        panic!("presentation does not look finite-dimensional")
    }
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + (P - factor) * rows[rank][k]) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim Hom(m, n)` minus the span of all composites `m → P(j) → n`.
pub fn stable_hom_by_factoring(m: &Module, n: &Module) -> usize {
    let alg = m.algebra();
    let mut span = EchelonBasis::new(alg.field(), n.dim() * m.dim());
    for j in 0..alg.num_prims() {
        let pj = projective(alg, j).unwrap();
        for f in hom_space(m, &pj).unwrap() {
            for g in hom_space(&pj, n).unwrap() {
                span.insert(&(&g.matrix * &f.matrix).flatten());
            }
        }
    }
    hom_dim(m, n).unwrap() - span.dim()
}
