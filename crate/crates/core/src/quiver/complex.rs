use std::collections::HashMap;

use num_traits::{One, Zero};

use super::algebra::Algebra;
use super::module::{act_word, map_matrix, submodule_span, Free, GradedRep, Presented};
use crate::error::{Error, Result};
use crate::exactcore::{Rat, RatMatrix};

/// A bounded complex of free graded modules with degree-preserving
/// differentials, stored by generator images.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    /// Cohomological degree of `terms[0]`.
    pub lo: i32,
    pub terms: Vec<Free>,
    /// `diffs[i][g]`: image of generator `g` of `terms[i]` in `terms[i + 1]`.
    pub diffs: Vec<Vec<Vec<Rat>>>,
}

impl ProjComplex {
    pub fn single(term: Free, degree: i32) -> Self {
        ProjComplex {
            lo: degree,
            terms: vec![term],
            diffs: Vec::new(),
        }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn term(&self, n: i32) -> Option<&Free> {
        if n < self.lo {
            return None;
        }
        self.terms.get((n - self.lo) as usize)
    }

    pub fn diff(&self, n: i32) -> Option<&[Vec<Rat>]> {
        if n < self.lo {
            return None;
        }
        self.diffs.get((n - self.lo) as usize).map(|v| v.as_slice())
    }

    /// Shift `[s]`: the term in degree `n` moves to degree `n - s`.
    pub fn shifted(mut self, s: i32) -> Self {
        self.lo -= s;
        self
    }

    /// Generator counts per vertex in cohomological degree `n`.
    pub fn multiplicities(&self, nv: usize, n: i32) -> Vec<usize> {
        let mut m = vec![0; nv];
        if let Some(t) = self.term(n) {
            for &(v, _) in &t.gens {
                m[v] += 1;
            }
        }
        m
    }
}

/// Cached differential matrices of a complex, keyed by `(n, w, k)`.
pub(crate) struct DiffCache<'a> {
    alg: &'a Algebra,
    cx: &'a ProjComplex,
    cache: HashMap<(i32, usize, usize), RatMatrix>,
}

impl<'a> DiffCache<'a> {
    pub(crate) fn new(alg: &'a Algebra, cx: &'a ProjComplex) -> Self {
        DiffCache {
            alg,
            cx,
            cache: HashMap::new(),
        }
    }

    /// Matrix of `d: C^n → C^{n+1}` at piece `(w, k)`, if both terms exist.
    pub(crate) fn get(&mut self, n: i32, w: usize, k: usize) -> Option<&RatMatrix> {
        let (src, tgt, imgs) = (self.cx.term(n)?, self.cx.term(n + 1)?, self.cx.diff(n)?);
        let alg = self.alg;
        Some(
            self.cache
                .entry((n, w, k))
                .or_insert_with(|| map_matrix(alg, src, tgt, imgs, 0, w, k)),
        )
    }
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn reduce(&self, x: &[Rat]) -> Vec<Rat> {
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
        x
    }

    /// Adds `x` if it is independent of the current rows.
    pub(crate) fn insert(&mut self, x: &[Rat]) -> bool {
        let mut r = self.reduce(x);
        let Some(q) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = Rat::one() / r[q].clone();
        for c in r.iter_mut() {
            *c *= &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[q].is_zero() {
                let f = row[q].clone();
                for (a, b) in row.iter_mut().zip(&r) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(q);
        true
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Minimal generators of a submodule given piece by piece (closed under the action).
fn minimal_generators(
    alg: &Algebra,
    rep: &Free,
    sub: &[Vec<Vec<Vec<Rat>>>],
) -> Vec<(usize, usize, Vec<Rat>)> {
    let mut out = Vec::new();
    for k in 0..=alg.trunc {
        for w in 0..alg.nv() {
            if sub[w][k].is_empty() {
                continue;
            }
            let mut ech = Echelon::default();
            for (a, ar) in alg.quiver.arrows.iter().enumerate() {
                if ar.dst != w || ar.deg > k {
                    continue;
                }
                for x in &sub[ar.src][k - ar.deg] {
                    ech.insert(&rep.act(alg, a, k - ar.deg, x));
                }
            }
            for x in &sub[w][k] {
                if ech.insert(x) {
                    out.push((w, k, x.clone()));
                }
            }
        }
    }
    out
}

/// Minimal projective resolution of a presented module, exact in internal
/// degrees up to the truncation. The cover is taken as the degree-0 term, so
/// it should already be minimal (true for projectives and simples).
pub fn minimal_resolution(alg: &Algebra, m: &Presented) -> ProjComplex {
    let nv = alg.nv();
    let mut terms = vec![m.cover.clone()];
    let mut diffs: Vec<Vec<Vec<Rat>>> = Vec::new();
    let mut kernel = submodule_span(alg, &m.cover, &m.rels);
    loop {
        let prev = terms.last().expect("nonempty").clone();
        let gens = minimal_generators(alg, &prev, &kernel);
        if gens.is_empty() {
            break;
        }
        let free = Free::new(alg, gens.iter().map(|(w, k, _)| (*w, *k)).collect());
        let images: Vec<Vec<Rat>> = gens.into_iter().map(|(_, _, x)| x).collect();
        kernel = (0..nv)
            .map(|w| {
                (0..=alg.trunc)
                    .map(|k| {
                        if free.dim(w, k) == 0 {
                            return Vec::new();
                        }
                        let mm = map_matrix(alg, &free, &prev, &images, 0, w, k);
                        if mm.nrows() == 0 {
                            RatMatrix::identity(free.dim(w, k)).to_rows()
                        } else {
                            mm.nullspace()
                        }
                    })
                    .collect()
            })
            .collect();
        terms.push(free);
        diffs.push(images);
    }
    terms.reverse();
    diffs.reverse();
    let lo = -(terms.len() as i32 - 1);
    ProjComplex { lo, terms, diffs }
}

/// `dim Ext^k(S_α, S_β)`, read off the minimal resolution of `S_α`.
///
/// Generators of the `k`-th syzygy sit in internal degree at least `k`, so
/// any `k` beyond the truncation is undecidable.
pub fn ext_simples(alg: &Algebra, alpha: usize, beta: usize, k: usize) -> Result<usize> {
    if alpha >= alg.nv() || beta >= alg.nv() {
        return Err(Error::Invalid("vertex out of range".into()));
    }
    if k > alg.trunc {
        return Err(Error::Undecidable(
            alg.trunc,
            format!("Ext^{k} needs syzygies beyond degree {}", alg.trunc),
        ));
    }
    let res = minimal_resolution(alg, &Presented::simple(alg, alpha));
    Ok(res.multiplicities(alg.nv(), -(k as i32))[beta])
}

/// One block of a Hom complex: generator `g` of `Q^j` mapped into `C^{j+n}` at `(v_g, s_g + t)`.
struct Block {
    j: i32,
    g: usize,
    w: usize,
    k: usize,
    dim: usize,
    off: usize,
}

fn hom_blocks(
    alg: &Algebra,
    q: &ProjComplex,
    c: &ProjComplex,
    n: i32,
    t: i64,
) -> Result<(Vec<Block>, usize)> {
    let mut blocks = Vec::new();
    let mut off = 0;
    for j in q.lo..=q.hi() {
        let qt = q.term(j).expect("in range");
        let Some(ct) = c.term(j + n) else { continue };
        for (g, &(v, s)) in qt.gens.iter().enumerate() {
            let k = s as i64 + t;
            if k < 0 {
                continue;
            }
            if k > alg.trunc as i64 {
                if !ct.gens.is_empty() {
                    return Err(Error::Undecidable(
                        alg.trunc,
                        format!("Hom piece in internal degree {k}"),
                    ));
                }
                continue;
            }
            let k = k as usize;
            let dim = ct.dim(v, k);
            blocks.push(Block {
                j,
                g,
                w: v,
                k,
                dim,
                off,
            });
            off += dim;
        }
    }
    Ok((blocks, off))
}

/// Rank of `δ: Hom^n(Q, C)_t → Hom^{n+1}(Q, C)_t`, where
/// `δf = d_C ∘ f - (-1)^n f ∘ d_Q`.
fn hom_diff_rank(
    alg: &Algebra,
    q: &ProjComplex,
    c: &ProjComplex,
    dc: &mut DiffCache,
    n: i32,
    t: i64,
) -> Result<usize> {
    let (src, ns) = hom_blocks(alg, q, c, n, t)?;
    let (tgt, nt) = hom_blocks(alg, q, c, n + 1, t)?;
    if ns == 0 || nt == 0 {
        return Ok(0);
    }
    let tpos: HashMap<(i32, usize), &Block> = tgt.iter().map(|b| ((b.j, b.g), b)).collect();
    let sign = if n % 2 == 0 { -Rat::one() } else { Rat::one() };
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(ns);
    for b in &src {
        for i in 0..b.dim {
            let mut col = vec![Rat::zero(); nt];
            // d_C ∘ f lands in the same generator slot, one term up
            if let (Some(tb), Some(m)) = (tpos.get(&(b.j, b.g)), dc.get(b.j + n, b.w, b.k)) {
                for r in 0..m.nrows() {
                    let x = m.get(r, i);
                    if !x.is_zero() {
                        col[tb.off + r] += x;
                    }
                }
            }
            // f ∘ d_Q feeds every generator of Q^{j-1} whose differential meets g
            if let (Some(qprev), Some(imgs)) = (q.term(b.j - 1), q.diff(b.j - 1)) {
                let qj = q.term(b.j).expect("in range");
                let ct = c.term(b.j + n).expect("block exists");
                let (v, s) = qj.gens[b.g];
                for (g2, &(v2, s2)) in qprev.gens.iter().enumerate() {
                    let Some(tb) = tpos.get(&(b.j - 1, g2)) else {
                        continue;
                    };
                    if s2 < s {
                        continue;
                    }
                    let img = &imgs[g2];
                    let lo = qj.offset(v2, s2, b.g);
                    let hi = qj.offset(v2, s2, b.g + 1);
                    let mut e = vec![Rat::zero(); b.dim];
                    e[i] = Rat::one();
                    for (cidx, x) in img.iter().enumerate().take(hi).skip(lo) {
                        if x.is_zero() {
                            continue;
                        }
                        let word = &alg.words(v, v2, s2 - s)[cidx - lo];
                        if let Some((_, _, y)) = act_word(alg, ct, word, v, b.k, &e) {
                            let f = &sign * &img[cidx];
                            for (r, yv) in y.into_iter().enumerate() {
                                if !yv.is_zero() {
                                    col[tb.off + r] += &f * yv;
                                }
                            }
                        }
                    }
                }
            }
            cols.push(col);
        }
    }
    let mut ech = Echelon::default();
    for col in &cols {
        ech.insert(col);
    }
    Ok(ech.rank())
}

/// `(dim H^0, dim H^1)` of `Hom(Q, C)` in internal degree `t`.
pub(crate) fn hom_h01(
    alg: &Algebra,
    q: &ProjComplex,
    c: &ProjComplex,
    t: i64,
) -> Result<(usize, usize)> {
    let mut dc = DiffCache::new(alg, c);
    let (_, d0) = hom_blocks(alg, q, c, 0, t)?;
    let (_, d1) = hom_blocks(alg, q, c, 1, t)?;
    let rm = hom_diff_rank(alg, q, c, &mut dc, -1, t)?;
    let r0 = hom_diff_rank(alg, q, c, &mut dc, 0, t)?;
    let r1 = hom_diff_rank(alg, q, c, &mut dc, 1, t)?;
    Ok((d0 - r0 - rm, d1 - r1 - r0))
}

/// Representative cocycles for `Hom_D(X, S_θ⟨s⟩[n])`, one list per internal
/// shift `s`; each cocycle is a coefficient per generator of `X^{-n}`.
pub(crate) fn simple_cocycles(
    alg: &Algebra,
    x: &ProjComplex,
    theta: usize,
    n: i32,
) -> Vec<(usize, Vec<Vec<Rat>>)> {
    let Some(xt) = x.term(-n) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for s in 0..=alg.trunc {
        let slots: Vec<usize> = (0..xt.rank())
            .filter(|&g| xt.gens[g] == (theta, s))
            .collect();
        if slots.is_empty() {
            continue;
        }
        // coefficient of generator `g` (empty word) in an element of `term` at (θ, s)
        let coef = |term: &Free, g: usize, y: &[Rat]| y[term.offset(theta, s, g)].clone();
        // cocycle: φ ∘ d_X^{-n-1} = 0
        let mut cons: Vec<Vec<Rat>> = Vec::new();
        if let (Some(below), Some(imgs)) = (x.term(-n - 1), x.diff(-n - 1)) {
            for (g2, &(v2, s2)) in below.gens.iter().enumerate() {
                if (v2, s2) == (theta, s) {
                    cons.push(slots.iter().map(|&g| coef(xt, g, &imgs[g2])).collect());
                }
            }
        }
        let z = if cons.is_empty() {
            RatMatrix::identity(slots.len()).to_rows()
        } else {
            RatMatrix::from_rows(cons).expect("rect").nullspace()
        };
        // coboundaries: ψ ∘ d_X^{-n}
        let mut ech = Echelon::default();
        if let (Some(above), Some(imgs)) = (x.term(-n + 1), x.diff(-n)) {
            for (g3, &(v3, s3)) in above.gens.iter().enumerate() {
                if (v3, s3) != (theta, s) {
                    continue;
                }
                let row: Vec<Rat> = slots.iter().map(|&g| coef(above, g3, &imgs[g])).collect();
                ech.insert(&row);
            }
        }
        let mut reps = Vec::new();
        for zv in z {
            if ech.insert(&zv) {
                let mut phi = vec![Rat::zero(); xt.rank()];
                for (&g, c) in slots.iter().zip(zv) {
                    phi[g] = c;
                }
                reps.push(phi);
            }
        }
        if !reps.is_empty() {
            out.push((s, reps));
        }
    }
    out
}

/// Lifts a cocycle `φ: X^{-n} → S_θ⟨s⟩` to a chain map `X → R[n]`, with `R`
/// the minimal resolution of `S_θ⟨s⟩` (`R^0` a single generator).
/// Returns, for `k = 0, 1, ...`, the images of the generators of `X^{-n-k}` in `R^{-k}`.
pub(crate) fn lift_cocycle(
    alg: &Algebra,
    x: &ProjComplex,
    r: &ProjComplex,
    n: i32,
    phi: &[Rat],
) -> Result<Vec<Vec<Vec<Rat>>>> {
    let mut comps: Vec<Vec<Vec<Rat>>> = Vec::new();
    let Some(x0) = x.term(-n) else {
        return Ok(comps);
    };
    let r0 = r.term(0).expect("resolution has a degree-0 term");
    comps.push(
        x0.gens
            .iter()
            .enumerate()
            .map(|(g, &(v, s))| {
                let mut y = vec![Rat::zero(); r0.dim(v, s)];
                if !phi[g].is_zero() {
                    y[r0.offset(v, s, 0)] = phi[g].clone();
                }
                y
            })
            .collect(),
    );
    let mut k = 0i32;
    while let (Some(xs), Some(xd)) = (x.term(-n - k - 1), x.diff(-n - k - 1)) {
        let xt = x.term(-n - k).expect("in range");
        let rt = r.term(-k).expect("in range");
        let prev = comps.last().expect("nonempty").clone();
        let mut next = Vec::new();
        let rs = r.term(-k - 1);
        for (g, &(v, s)) in xs.gens.iter().enumerate() {
            // b = f_k(d_X g)
            let b = map_matrix(alg, xt, rt, &prev, 0, v, s).mul_vec(&xd[g])?;
            match (rs, r.diff(-k - 1)) {
                (Some(rs), Some(rd)) => {
                    let m = map_matrix(alg, rs, rt, rd, 0, v, s);
                    let y = if m.ncols() == 0 {
                        if b.iter().any(|c| !c.is_zero()) {
                            return Err(Error::Singular("cocycle does not lift".into()));
                        }
                        Vec::new()
                    } else {
                        m.solve_any(&b)?
                            .ok_or_else(|| Error::Singular("cocycle does not lift".into()))?
                    };
                    next.push(y);
                }
                _ => {
                    if b.iter().any(|c| !c.is_zero()) {
                        return Err(Error::Singular("cocycle does not lift".into()));
                    }
                }
            }
        }
        if rs.is_none() {
            break;
        }
        comps.push(next);
        k += 1;
    }
    Ok(comps)
}

/// `cone(u)[-1]` for `u = (u_m): X → ⊕_m R_m[n]`, each `u_m` given as returned
/// by [`lift_cocycle`]. Degree `j` holds `X^j ⊕ (⊕_m R_m^{j-1+n})` and
/// `d(x, y) = (d x, u x - d y)`.
pub(crate) fn cone_shift(
    alg: &Algebra,
    x: &ProjComplex,
    targets: &[(ProjComplex, Vec<Vec<Vec<Rat>>>)],
    n: i32,
) -> ProjComplex {
    // Y^j = ⊕ R_m^{j+n}; C^j = X^j ⊕ Y^{j-1}
    let y_term = |j: i32| -> Vec<(usize, &Free)> {
        targets
            .iter()
            .enumerate()
            .filter_map(|(m, (r, _))| r.term(j + n).map(|t| (m, t)))
            .collect()
    };
    let y_lo = targets.iter().map(|(r, _)| r.lo - n).min();
    let y_hi = targets.iter().map(|(r, _)| r.hi() - n).max();
    let lo = y_lo.map_or(x.lo, |l| x.lo.min(l + 1));
    let hi = y_hi.map_or(x.hi(), |h| x.hi().max(h + 1));
    let mut terms = Vec::new();
    for j in lo..=hi {
        let mut gens: Vec<(usize, usize)> = x.term(j).map_or(Vec::new(), |t| t.gens.clone());
        for (_, t) in y_term(j - 1) {
            gens.extend(t.gens.iter().copied());
        }
        terms.push(Free::new(alg, gens));
    }
    let mut diffs = Vec::new();
    for j in lo..hi {
        let src = &terms[(j - lo) as usize];
        let tgt = &terms[(j + 1 - lo) as usize];
        let x_src = x.term(j).map_or(0, |t| t.rank());
        let x_tgt = x.term(j + 1);
        let mut imgs = Vec::new();
        for (g, &(v, s)) in src.gens.iter().enumerate() {
            let mut y = vec![Rat::zero(); tgt.dim(v, s)];
            // position of each summand block inside tgt at (v, s)
            if g < x_src {
                if let (Some(xt), Some(xd)) = (x_tgt, x.diff(j)) {
                    place(&mut y, tgt, v, s, 0, xt, &xd[g]);
                }
                let mut base = x_tgt.map_or(0, |t| t.rank());
                for (m, rt) in y_term(j) {
                    let k = -(j + n);
                    if k >= 0 {
                        if let Some(img) = targets[m].1.get(k as usize).and_then(|c| c.get(g)) {
                            place(&mut y, tgt, v, s, base, rt, img);
                        }
                    }
                    base += rt.rank();
                }
            } else {
                // generator of some R_m^{j-1+n}; d(0, y) = (0, -d_R y)
                let mut idx = g - x_src;
                let base = x_tgt.map_or(0, |t| t.rank());
                let ys_next = y_term(j);
                for (m, rt) in y_term(j - 1) {
                    let r = &targets[m].0;
                    let next_base = ys_next.iter().find(|(mm, _)| *mm == m).map(|(_, t)| t);
                    if idx < rt.rank() {
                        if let (Some(nt), Some(rd)) = (next_base, r.diff(j - 1 + n)) {
                            let off = base
                                + ys_next
                                    .iter()
                                    .take_while(|(mm, _)| *mm != m)
                                    .map(|(_, t)| t.rank())
                                    .sum::<usize>();
                            let neg: Vec<Rat> = rd[idx].iter().map(|c| -c.clone()).collect();
                            place(&mut y, tgt, v, s, off, nt, &neg);
                        }
                        break;
                    }
                    idx -= rt.rank();
                }
            }
            imgs.push(y);
        }
        diffs.push(imgs);
    }
    ProjComplex { lo, terms, diffs }
}

/// Copies `src_vec` (an element of `part` at `(v, s)`) into `y`, where `part`'s
/// generators occupy slots `base..` of `whole`.
fn place(
    y: &mut [Rat],
    whole: &Free,
    v: usize,
    s: usize,
    base: usize,
    part: &Free,
    src_vec: &[Rat],
) {
    for g in 0..part.rank() {
        let lo = part.offset(v, s, g);
        let hi = part.offset(v, s, g + 1);
        let wlo = whole.offset(v, s, base + g);
        for i in lo..hi {
            if !src_vec[i].is_zero() {
                y[wlo + i - lo] += &src_vec[i];
            }
        }
    }
}
