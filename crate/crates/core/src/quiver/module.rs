use std::collections::HashMap;

use num_traits::{One, Zero};

use super::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactcore::{Rat, RatMatrix};

/// Anything with finite-dimensional graded pieces and an arrow action.
pub trait GradedRep {
    fn dim(&self, w: usize, k: usize) -> usize;
    /// Action of arrow `a` on `x` in degree `k` at its source; empty past the truncation.
    fn act(&self, alg: &Algebra, a: usize, k: usize, x: &[Rat]) -> Vec<Rat>;
}

/// A free graded module `⊕_j P_{v_j}⟨s_j⟩`, truncated at the algebra's degree.
///
/// The basis of the `(w, k)` piece is generator-major: for each generator `j`
/// the standard words from `v_j` to `w` of degree `k - s_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Free {
    pub gens: Vec<(usize, usize)>,
    offsets: Vec<Vec<Vec<usize>>>,
}

impl Free {
    pub fn new(alg: &Algebra, gens: Vec<(usize, usize)>) -> Self {
        let nv = alg.nv();
        let offsets = (0..nv)
            .map(|w| {
                (0..=alg.trunc)
                    .map(|k| {
                        let mut off = vec![0];
                        for &(v, s) in &gens {
                            let n = if k >= s { alg.dim(v, w, k - s) } else { 0 };
                            off.push(off.last().expect("nonempty") + n);
                        }
                        off
                    })
                    .collect()
            })
            .collect();
        Free { gens, offsets }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn offset(&self, w: usize, k: usize, j: usize) -> usize {
        self.offsets[w][k][j]
    }

    /// `(generator, word index)` of a basis vector.
    pub fn label(&self, w: usize, k: usize, idx: usize) -> (usize, usize) {
        let off = &self.offsets[w][k];
        let j = off.partition_point(|&o| o <= idx) - 1;
        (j, idx - off[j])
    }

    /// The generator `j` as a vector in its own piece.
    pub fn gen_vector(&self, j: usize) -> Vec<Rat> {
        let (v, s) = self.gens[j];
        let mut x = vec![Rat::zero(); self.dim(v, s)];
        x[self.offset(v, s, j)] = Rat::one();
        x
    }

    pub fn direct_sum(&self, alg: &Algebra, other: &Free) -> Free {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().copied());
        Free::new(alg, g)
    }
}

impl GradedRep for Free {
    fn dim(&self, w: usize, k: usize) -> usize {
        self.offsets
            .get(w)
            .and_then(|x| x.get(k))
            .map_or(0, |o| *o.last().expect("nonempty"))
    }

    fn act(&self, alg: &Algebra, a: usize, k: usize, x: &[Rat]) -> Vec<Rat> {
        let ar = &alg.quiver.arrows[a];
        let k2 = k + ar.deg;
        if k2 > alg.trunc {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); self.dim(ar.dst, k2)];
        for (j, &(v, s)) in self.gens.iter().enumerate() {
            if k < s {
                continue;
            }
            let lo = self.offset(ar.src, k, j);
            let hi = self.offset(ar.src, k, j + 1);
            let sparse: Vec<(usize, Rat)> = (lo..hi)
                .filter(|&i| !x[i].is_zero())
                .map(|i| (i - lo, x[i].clone()))
                .collect();
            if sparse.is_empty() {
                continue;
            }
            let base = self.offset(ar.dst, k2, j);
            for (i, c) in alg.rmul_sparse(v, ar.src, k - s, &sparse, a) {
                out[base + i] += c;
            }
        }
        out
    }
}

/// Applies a traversal-order word to `x` in piece `(w, k)`.
pub fn act_word<R: GradedRep + ?Sized>(
    alg: &Algebra,
    rep: &R,
    word: &[usize],
    w: usize,
    k: usize,
    x: &[Rat],
) -> Option<(usize, usize, Vec<Rat>)> {
    let (mut w, mut k, mut cur) = (w, k, x.to_vec());
    for &a in word {
        let ar = &alg.quiver.arrows[a];
        if ar.src != w || k + ar.deg > alg.trunc {
            return None;
        }
        cur = rep.act(alg, a, k, &cur);
        w = ar.dst;
        k += ar.deg;
    }
    Some((w, k, cur))
}

/// Matrix, at piece `(w, k)` of `src`, of the module map sending generator
/// `j` to `images[j]` (a vector in `tgt` at `(v_j, s_j + shift)`).
pub fn map_matrix<R: GradedRep + ?Sized>(
    alg: &Algebra,
    src: &Free,
    tgt: &R,
    images: &[Vec<Rat>],
    shift: usize,
    w: usize,
    k: usize,
) -> RatMatrix {
    let rows = tgt.dim(w, k + shift);
    let cols = src.dim(w, k);
    let mut m = RatMatrix::zeros(rows, cols);
    let mut memo: HashMap<(usize, usize, usize, usize), Vec<Rat>> = HashMap::new();
    for c in 0..cols {
        let (j, idx) = src.label(w, k, c);
        let col = image_of_word(
            alg,
            src,
            tgt,
            images,
            shift,
            j,
            w,
            k - src.gens[j].1,
            idx,
            &mut memo,
        );
        for (r, x) in col.into_iter().enumerate() {
            if !x.is_zero() {
                m.set(r, c, x);
            }
        }
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn image_of_word<R: GradedRep + ?Sized>(
    alg: &Algebra,
    src: &Free,
    tgt: &R,
    images: &[Vec<Rat>],
    shift: usize,
    j: usize,
    w: usize,
    d: usize,
    idx: usize,
    memo: &mut HashMap<(usize, usize, usize, usize), Vec<Rat>>,
) -> Vec<Rat> {
    if let Some(v) = memo.get(&(j, w, d, idx)) {
        return v.clone();
    }
    let v0 = src.gens[j].0;
    let out = match alg.prefix(v0, w, d, idx) {
        None => images[j].clone(),
        Some((pe, pi, a)) => {
            let pd = d - alg.quiver.arrows[a].deg;
            let prev = image_of_word(alg, src, tgt, images, shift, j, pe, pd, pi, memo);
            let k = src.gens[j].1 + pd + shift;
            if prev.is_empty() {
                vec![Rat::zero(); tgt.dim(w, k + alg.quiver.arrows[a].deg)]
            } else {
                tgt.act(alg, a, k, &prev)
            }
        }
    };
    memo.insert((j, w, d, idx), out.clone());
    out
}

/// Reduction data of a subspace: RREF rows, pivots and kept columns.
#[derive(Clone, Debug, Default)]
pub(crate) struct Reducer {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    keep: Vec<usize>,
}

impl Reducer {
    fn new(span: Vec<Vec<Rat>>, n: usize) -> Self {
        let (rows, pivots) = if span.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let (m, p) = RatMatrix::from_rows(span).expect("rect").rref();
            (m.to_rows().into_iter().take(p.len()).collect(), p)
        };
        let keep = (0..n).filter(|c| !pivots.contains(c)).collect();
        Reducer { rows, pivots, keep }
    }

    fn reduce(&self, x: &[Rat]) -> Vec<Rat> {
        let mut x = x.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !x[p].is_zero() {
                let f = x[p].clone();
                for (xi, ri) in x.iter_mut().zip(row) {
                    if !ri.is_zero() {
                        *xi -= &f * ri;
                    }
                }
            }
        }
        self.keep.iter().map(|&c| x[c].clone()).collect()
    }
}

/// Span, piece by piece, of the submodule of `rep` generated by `elems`
/// (each given with its piece `(w, k)`).
pub(crate) fn submodule_span<R: GradedRep + ?Sized>(
    alg: &Algebra,
    rep: &R,
    elems: &[(usize, usize, Vec<Rat>)],
) -> Vec<Vec<Vec<Vec<Rat>>>> {
    let nv = alg.nv();
    let mut span: Vec<Vec<Vec<Vec<Rat>>>> = vec![vec![Vec::new(); alg.trunc + 1]; nv];
    for k in 0..=alg.trunc {
        for w in 0..nv {
            let mut rows: Vec<Vec<Rat>> = elems
                .iter()
                .filter(|(ew, ek, _)| *ew == w && *ek == k)
                .map(|(_, _, x)| x.clone())
                .collect();
            for (a, ar) in alg.quiver.arrows.iter().enumerate() {
                if ar.dst != w || ar.deg > k {
                    continue;
                }
                for x in &span[ar.src][k - ar.deg] {
                    rows.push(rep.act(alg, a, k - ar.deg, x));
                }
            }
            span[w][k] = independent_rows(rows, rep.dim(w, k));
        }
    }
    span
}

/// A basis (RREF rows) of the span of `rows`.
pub(crate) fn independent_rows(rows: Vec<Vec<Rat>>, n: usize) -> Vec<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if rows.is_empty() || n == 0 {
        return Vec::new();
    }
    let (m, p) = RatMatrix::from_rows(rows).expect("rect").rref();
    m.to_rows().into_iter().take(p.len()).collect()
}

/// A finitely presented graded module: a free cover and relation elements.
#[derive(Clone, Debug)]
pub struct Presented {
    pub cover: Free,
    /// `(w, k, vector in cover)`.
    pub rels: Vec<(usize, usize, Vec<Rat>)>,
}

impl Presented {
    pub fn projective(alg: &Algebra, v: usize) -> Self {
        Presented {
            cover: Free::new(alg, vec![(v, 0)]),
            rels: Vec::new(),
        }
    }

    pub fn simple(alg: &Algebra, v: usize) -> Self {
        let cover = Free::new(alg, vec![(v, 0)]);
        let mut rels = Vec::new();
        for (a, ar) in alg.quiver.arrows.iter().enumerate() {
            if ar.src == v && ar.deg <= alg.trunc {
                let x = cover.act(alg, a, 0, &cover.gen_vector(0));
                rels.push((ar.dst, ar.deg, x));
            }
        }
        Presented { cover, rels }
    }

    /// Materialises the quotient module, truncated at the algebra's degree.
    pub fn module(&self, alg: &Algebra) -> Module {
        let nv = alg.nv();
        let span = submodule_span(alg, &self.cover, &self.rels);
        let red: Vec<Vec<Reducer>> = (0..nv)
            .map(|w| {
                (0..=alg.trunc)
                    .map(|k| Reducer::new(span[w][k].clone(), self.cover.dim(w, k)))
                    .collect()
            })
            .collect();
        let mut act = Vec::new();
        for (a, ar) in alg.quiver.arrows.iter().enumerate() {
            let mut per_k = Vec::new();
            for k in 0..=alg.trunc {
                if k + ar.deg > alg.trunc {
                    per_k.push(None);
                    continue;
                }
                let src_keep = &red[ar.src][k].keep;
                let dst = &red[ar.dst][k + ar.deg];
                let mut m = RatMatrix::zeros(dst.keep.len(), src_keep.len());
                for (ci, &c) in src_keep.iter().enumerate() {
                    let mut e = vec![Rat::zero(); self.cover.dim(ar.src, k)];
                    e[c] = Rat::one();
                    let img = dst.reduce(&self.cover.act(alg, a, k, &e));
                    for (r, x) in img.into_iter().enumerate() {
                        if !x.is_zero() {
                            m.set(r, ci, x);
                        }
                    }
                }
                per_k.push(Some(m));
            }
            act.push(per_k);
        }
        Module {
            cover: self.cover.clone(),
            red,
            act,
        }
    }
}

/// An explicit graded module presented as a quotient of a free cover.
#[derive(Clone, Debug)]
pub struct Module {
    pub cover: Free,
    red: Vec<Vec<Reducer>>,
    act: Vec<Vec<Option<RatMatrix>>>,
}

impl Module {
    pub fn dims(&self, alg: &Algebra) -> Vec<Vec<usize>> {
        (0..alg.nv())
            .map(|w| (0..=alg.trunc).map(|k| self.dim(w, k)).collect())
            .collect()
    }

    /// Dimension vector summed over degrees.
    pub fn dim_vector(&self, alg: &Algebra) -> Vec<usize> {
        self.dims(alg).iter().map(|r| r.iter().sum()).collect()
    }

    /// Projects a cover vector at `(w, k)` to module coordinates.
    pub fn project(&self, w: usize, k: usize, x: &[Rat]) -> Vec<Rat> {
        self.red[w][k].reduce(x)
    }

    /// Cover basis indices that form the module basis at `(w, k)`.
    pub fn kept(&self, w: usize, k: usize) -> &[usize] {
        &self.red[w][k].keep
    }
}

impl GradedRep for Module {
    fn dim(&self, w: usize, k: usize) -> usize {
        self.red
            .get(w)
            .and_then(|r| r.get(k))
            .map_or(0, |r| r.keep.len())
    }

    fn act(&self, _alg: &Algebra, a: usize, k: usize, x: &[Rat]) -> Vec<Rat> {
        match self
            .act
            .get(a)
            .and_then(|v| v.get(k))
            .and_then(|m| m.as_ref())
        {
            Some(m) => m.mul_vec(x).expect("shape"),
            None => Vec::new(),
        }
    }
}

/// Basis of the degree-`t` homomorphisms from a presented module into `tgt`,
/// each given as the list of generator images.
///
/// A relation whose image would sit past the truncation cannot be checked,
/// which makes the answer undecidable at this `D`.
pub fn hom_space<R: GradedRep + ?Sized>(
    alg: &Algebra,
    src: &Presented,
    tgt: &R,
    t: i64,
) -> Result<Vec<Vec<Vec<Rat>>>> {
    let gens = &src.cover.gens;
    let place = |s: usize| -> Option<usize> {
        let k = s as i64 + t;
        (0..=alg.trunc as i64).contains(&k).then_some(k as usize)
    };
    let block: Vec<usize> = gens
        .iter()
        .map(|&(v, s)| place(s).map_or(0, |k| tgt.dim(v, k)))
        .collect();
    let nunk: usize = block.iter().sum();
    let mut cons: Vec<Vec<Rat>> = Vec::new();
    for (w, k, r) in &src.rels {
        let Some(kt) = place(*k) else {
            if (*k as i64 + t) < 0 {
                continue;
            }
            if nunk > 0 {
                return Err(Error::Undecidable(
                    alg.trunc,
                    "relation image past truncation".into(),
                ));
            }
            continue;
        };
        let rows = tgt.dim(*w, kt);
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(nunk);
        for (j, &(v, s)) in gens.iter().enumerate() {
            let Some(ks) = place(s) else { continue };
            for i in 0..block[j] {
                let mut e = vec![Rat::zero(); block[j]];
                e[i] = Rat::one();
                let mut acc = vec![Rat::zero(); rows];
                if *k >= s {
                    let lo = src.cover.offset(*w, *k, j);
                    let hi = src.cover.offset(*w, *k, j + 1);
                    for (c, rc) in r.iter().enumerate().take(hi).skip(lo) {
                        if rc.is_zero() {
                            continue;
                        }
                        let word = &alg.words(v, *w, *k - s)[c - lo];
                        if let Some((_, _, y)) = act_word(alg, tgt, word, v, ks, &e) {
                            for (a, b) in acc.iter_mut().zip(y) {
                                *a += &r[c] * b;
                            }
                        }
                    }
                }
                cols.push(acc);
            }
        }
        for row in 0..rows {
            cons.push(cols.iter().map(|c| c[row].clone()).collect());
        }
    }
    let basis = if nunk == 0 {
        Vec::new()
    } else if cons.is_empty() {
        RatMatrix::identity(nunk).to_rows()
    } else {
        RatMatrix::from_rows(cons)?.nullspace()
    };
    Ok(basis
        .into_iter()
        .map(|sol| {
            let mut out = Vec::new();
            let mut pos = 0;
            for &b in &block {
                out.push(sol[pos..pos + b].to_vec());
                pos += b;
            }
            out
        })
        .collect())
}
