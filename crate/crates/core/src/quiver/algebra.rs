use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::rat::rat_serde;
use crate::exactcore::{Rat, RatMatrix};

/// Arrow indices in traversal order.
pub type Word = Vec<usize>;

/// `(end, degree, sparse coordinates over the standard words)`.
pub type NormalForm = (usize, usize, Vec<(usize, Rat)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
    #[serde(default = "one")]
    pub deg: u32,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelTerm {
    #[serde(with = "rat_serde")]
    pub coeff: Rat,
    /// Arrow names, rightmost traversed first.
    pub path: Vec<String>,
}

/// The JSON form of a quiver with relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<RelTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    pub deg: usize,
}

/// A quiver with multiplicity arrows expanded into scalar ones
/// (`alpha` with multiplicity 3 becomes `alpha1`, `alpha2`, `alpha3`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Invalid(format!("unknown vertex {name:?}")))
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Invalid(format!("unknown arrow {name:?}")))
    }

    pub fn nv(&self) -> usize {
        self.vertices.len()
    }
}

/// A homogeneous relation between paths with common endpoints.
#[derive(Clone, Debug)]
struct Relation {
    start: usize,
    end: usize,
    deg: usize,
    terms: Vec<(Rat, Word)>,
}

/// `prefix[start][end][deg][idx]`: `(end, idx, arrow)` of the word minus its last arrow.
type PrefixTable = Vec<Vec<Vec<Vec<Option<(usize, usize, usize)>>>>>;

/// `rmul[start][end][deg][idx][arrow]`: normal form of `word · arrow` as a
/// sparse vector over `words[start][dst(arrow)][deg + deg(arrow)]`.
type RmulTable = Vec<Vec<Vec<Vec<HashMap<usize, Vec<(usize, Rat)>>>>>>;

/// Path algebra modulo relations, with a basis of standard words in each
/// `(start, end, degree)` piece up to the truncation degree.
///
/// Standard words are prefix-closed: every basis word of degree `d` is a
/// basis word of lower degree followed by one arrow.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub quiver: Quiver,
    relations: Vec<Relation>,
    pub trunc: usize,
    words: Vec<Vec<Vec<Vec<Word>>>>,
    /// `(end, idx)` of the prefix of each standard word, with its last arrow.
    prefix: PrefixTable,
    rmul: RmulTable,
}

impl Algebra {
    pub fn from_spec(spec: &QuiverSpec, trunc: usize) -> Result<Self> {
        let mut arrows = Vec::new();
        for a in &spec.arrows {
            let src = index_of(&spec.vertices, &a.src)?;
            let dst = index_of(&spec.vertices, &a.dst)?;
            if a.deg == 0 {
                return Err(Error::Invalid(format!("arrow {} has degree 0", a.name)));
            }
            for k in 1..=a.mult {
                let name = if a.mult == 1 {
                    a.name.clone()
                } else {
                    format!("{}{k}", a.name)
                };
                arrows.push(Arrow {
                    name,
                    src,
                    dst,
                    deg: a.deg as usize,
                });
            }
        }
        let quiver = Quiver {
            vertices: spec.vertices.clone(),
            arrows,
        };
        let mut rels = Vec::new();
        for r in &spec.relations {
            let terms = r
                .iter()
                .map(|t| {
                    let mut w = t
                        .path
                        .iter()
                        .map(|n| quiver.arrow(n))
                        .collect::<Result<Word>>()?;
                    w.reverse();
                    Ok((t.coeff.clone(), w))
                })
                .collect::<Result<Vec<_>>>()?;
            rels.push(terms);
        }
        Self::new(quiver, rels, trunc)
    }

    /// Relations are given as `(coefficient, traversal-order word)` lists.
    pub fn new(quiver: Quiver, relations: Vec<Vec<(Rat, Word)>>, trunc: usize) -> Result<Self> {
        let nv = quiver.nv();
        let mut rels = Vec::new();
        for (ri, terms) in relations.into_iter().enumerate() {
            let mut ends: Option<(usize, usize, usize)> = None;
            for (_, w) in &terms {
                if w.is_empty() {
                    return Err(Error::Invalid(format!(
                        "relation {ri} contains a trivial path"
                    )));
                }
                for pair in w.windows(2) {
                    if quiver.arrows[pair[0]].dst != quiver.arrows[pair[1]].src {
                        return Err(Error::Invalid(format!(
                            "relation {ri} contains a non-composable path"
                        )));
                    }
                }
                let s = quiver.arrows[w[0]].src;
                let e = quiver.arrows[*w.last().expect("nonempty")].dst;
                let d = w.iter().map(|&a| quiver.arrows[a].deg).sum();
                match ends {
                    None => ends = Some((s, e, d)),
                    Some(x) if x != (s, e, d) => {
                        return Err(Error::Invalid(format!(
                            "relation {ri} mixes endpoints or degrees"
                        )))
                    }
                    _ => {}
                }
            }
            if let Some((start, end, deg)) = ends {
                rels.push(Relation {
                    start,
                    end,
                    deg,
                    terms,
                });
            }
        }
        let mut alg = Algebra {
            quiver,
            relations: rels,
            trunc,
            words: vec![vec![vec![Vec::new(); trunc + 1]; nv]; nv],
            prefix: vec![vec![vec![Vec::new(); trunc + 1]; nv]; nv],
            rmul: vec![vec![vec![Vec::new(); trunc + 1]; nv]; nv],
        };
        for s in 0..nv {
            alg.words[s][s][0].push(Vec::new());
            alg.prefix[s][s][0].push(None);
            alg.rmul[s][s][0].push(HashMap::new());
            for d in 1..=trunc {
                alg.build_degree(s, d)?;
            }
        }
        Ok(alg)
    }

    fn build_degree(&mut self, s: usize, d: usize) -> Result<()> {
        let nv = self.quiver.nv();
        for e in 0..nv {
            // candidates (end_b, idx_b, arrow) with b of degree d - deg(arrow)
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            let mut cand_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
            for (ai, a) in self.quiver.arrows.iter().enumerate() {
                if a.dst != e || a.deg > d {
                    continue;
                }
                for idx in 0..self.words[s][a.src][d - a.deg].len() {
                    cand_index.insert((a.src, idx, ai), cands.len());
                    cands.push((a.src, idx, ai));
                }
            }
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for r in self.relations.iter().filter(|r| r.end == e && r.deg <= d) {
                for u in 0..self.words[s][r.start][d - r.deg].len() {
                    let mut row = vec![Rat::zero(); cands.len()];
                    for (c, w) in &r.terms {
                        let (last, init) = w.split_last().expect("nonempty");
                        let mut cur: Vec<(usize, Rat)> = vec![(u, c.clone())];
                        let mut cur_end = r.start;
                        let mut cur_deg = d - r.deg;
                        for &a in init {
                            cur = self.rmul_sparse(s, cur_end, cur_deg, &cur, a);
                            cur_deg += self.quiver.arrows[a].deg;
                            cur_end = self.quiver.arrows[a].dst;
                        }
                        for (idx, x) in cur {
                            row[cand_index[&(cur_end, idx, *last)]] += x;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let (rref, pivots) = if rows.is_empty() {
                (RatMatrix::zeros(0, cands.len()), Vec::new())
            } else {
                RatMatrix::from_rows(rows)?.rref()
            };
            let nonpivots: Vec<usize> = (0..cands.len()).filter(|c| !pivots.contains(c)).collect();
            let std_pos: HashMap<usize, usize> =
                nonpivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            for &c in &nonpivots {
                let (be, bi, a) = cands[c];
                let mut w = self.words[s][be][d - self.quiver.arrows[a].deg][bi].clone();
                w.push(a);
                self.words[s][e][d].push(w);
                self.prefix[s][e][d].push(Some((be, bi, a)));
                self.rmul[s][e][d].push(HashMap::new());
            }
            for (c, &(be, bi, a)) in cands.iter().enumerate() {
                let nf: Vec<(usize, Rat)> = match std_pos.get(&c) {
                    Some(&i) => vec![(i, Rat::from_integer(1.into()))],
                    None => {
                        let row = pivots.iter().position(|&p| p == c).expect("pivot");
                        nonpivots
                            .iter()
                            .enumerate()
                            .filter(|(_, &np)| !rref.get(row, np).is_zero())
                            .map(|(i, &np)| (i, -rref.get(row, np).clone()))
                            .collect()
                    }
                };
                let bd = d - self.quiver.arrows[a].deg;
                self.rmul[s][be][bd][bi].insert(a, nf);
            }
        }
        Ok(())
    }

    /// `x · a` for `x` sparse over `words[s][end][deg]`.
    pub(crate) fn rmul_sparse(
        &self,
        s: usize,
        end: usize,
        deg: usize,
        x: &[(usize, Rat)],
        a: usize,
    ) -> Vec<(usize, Rat)> {
        let ar = &self.quiver.arrows[a];
        if ar.src != end || deg + ar.deg > self.trunc {
            return Vec::new();
        }
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for (i, c) in x {
            if let Some(v) = self.rmul[s][end][deg][*i].get(&a) {
                for (j, y) in v {
                    *acc.entry(*j).or_insert_with(Rat::zero) += c * y;
                }
            }
        }
        let mut out: Vec<(usize, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|p| p.0);
        out
    }

    pub fn nv(&self) -> usize {
        self.quiver.nv()
    }

    pub fn words(&self, s: usize, e: usize, d: usize) -> &[Word] {
        self.words
            .get(s)
            .and_then(|x| x.get(e))
            .and_then(|x| x.get(d))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub(crate) fn prefix(
        &self,
        s: usize,
        e: usize,
        d: usize,
        idx: usize,
    ) -> Option<(usize, usize, usize)> {
        self.prefix[s][e][d][idx]
    }

    pub fn dim(&self, s: usize, e: usize, d: usize) -> usize {
        self.words(s, e, d).len()
    }

    /// Total dimension up to the truncation degree.
    pub fn total_dim(&self) -> usize {
        let nv = self.nv();
        (0..nv)
            .flat_map(|s| (0..nv).flat_map(move |e| (0..=self.trunc).map(move |d| (s, e, d))))
            .map(|(s, e, d)| self.dim(s, e, d))
            .sum()
    }

    /// Normal form of a traversal-order path from `s`, or `None` past the truncation.
    pub fn normal_form(&self, s: usize, path: &[usize]) -> Option<NormalForm> {
        let mut cur = vec![(0usize, Rat::from_integer(1.into()))];
        let (mut end, mut deg) = (s, 0usize);
        for &a in path {
            let ar = &self.quiver.arrows[a];
            if ar.src != end || deg + ar.deg > self.trunc {
                return None;
            }
            cur = self.rmul_sparse(s, end, deg, &cur, a);
            end = ar.dst;
            deg += ar.deg;
        }
        Some((end, deg, cur))
    }

    /// Product `x·y` (traverse `x`, then `y`) of homogeneous elements given
    /// over standard words; `x` lives in `(s, m, dx)` and `y` in `(m, e, dy)`.
    #[allow(clippy::too_many_arguments)]
    pub fn mul(
        &self,
        s: usize,
        m: usize,
        dx: usize,
        x: &[(usize, Rat)],
        e: usize,
        dy: usize,
        y: &[(usize, Rat)],
    ) -> Vec<(usize, Rat)> {
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for (j, cy) in y {
            let Some(word) = self.words(m, e, dy).get(*j) else {
                continue;
            };
            let mut cur: Vec<(usize, Rat)> = x.iter().map(|(i, c)| (*i, c * cy)).collect();
            let (mut end, mut deg) = (m, dx);
            for &a in word {
                cur = self.rmul_sparse(s, end, deg, &cur, a);
                end = self.quiver.arrows[a].dst;
                deg += self.quiver.arrows[a].deg;
            }
            for (i, c) in cur {
                *acc.entry(i).or_insert_with(Rat::zero) += c;
            }
        }
        let mut out: Vec<(usize, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|p| p.0);
        out
    }
}

fn index_of(v: &[String], name: &str) -> Result<usize> {
    v.iter()
        .position(|x| x == name)
        .ok_or_else(|| Error::Invalid(format!("unknown vertex {name:?}")))
}
