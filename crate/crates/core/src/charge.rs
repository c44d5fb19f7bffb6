//! Euler-characteristic functionals `ℓ_α`, dimension polynomials and central
//! charges `Z_α` for the B₂ case (variables `a`, `b`) and for general ℤ_l
//! (variables `n0..n{l-1}`).
//!
//! Each `ℓ_α` is the linear functional on H* dual to the Chern characters of
//! the tautological bundles, evaluated on `ch O(n)` as a polynomial in the
//! twist. The two groups use opposite sign conventions: the B₂ tables pair
//! with the dual bundles `V_β*`, the general tables with `V_β` itself, so
//! `ℓ^cyclic(n) = ℓ^B₂(-n)` at `l = 2`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cohomology::{basis, ch_line_bundle, CohLabel, TautLabel};
use crate::error::{Error, Result};
use crate::exactcore::rat::{int, rat};
use crate::exactcore::{MPoly, Rat, RatMatrix};

/// Which labelling and sign convention a table uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// `l = 2` with variables `a` (coefficient of `d1`) and `b` (of `d0`).
    B2,
    /// ℤ_l with variables `n0..n{l-1}`.
    Cyclic(usize),
}

impl Group {
    pub fn l(self) -> usize {
        match self {
            Group::B2 => 2,
            Group::Cyclic(l) => l,
        }
    }

    pub fn validate(self) -> Result<Self> {
        if self.l() < 2 {
            return Err(Error::Invalid(format!(
                "l = {} must be at least 2",
                self.l()
            )));
        }
        Ok(self)
    }

    /// Polynomial variable names in the order used for shifts and evaluation.
    pub fn vars(self) -> Vec<String> {
        match self {
            Group::B2 => vec!["a".into(), "b".into()],
            Group::Cyclic(l) => (0..l).map(|i| format!("n{i}")).collect(),
        }
    }

    /// Name of the variable multiplying `d_k`.
    fn twist_var(self, k: usize) -> String {
        match self {
            Group::B2 => if k == 0 { "b" } else { "a" }.into(),
            Group::Cyclic(_) => format!("n{k}"),
        }
    }

    /// Display name of the simple object dual to `V_α`.
    pub fn simple_name(self, a: TautLabel) -> String {
        match (self, a.b2_index()) {
            (Group::B2, Some(k)) => format!("L{k}"),
            _ => a.to_string().replacen('V', "L", 1),
        }
    }

    /// Labels in table order: `L0..L4` for B₂, the canonical order otherwise.
    pub fn labels(self) -> Vec<TautLabel> {
        match self {
            Group::B2 => (0..5)
                .map(|k| TautLabel::b2(k).expect("in range"))
                .collect(),
            Group::Cyclic(l) => TautLabel::all(l),
        }
    }
}

/// `Σ c · O(n)`: a K-class as a combination of line bundles.
pub type Expansion = Vec<(Rat, Vec<i64>)>;

/// `ch(V_β) = Σ c·ch O(n)` over line bundles, as `(c, n)` pairs.
pub fn line_bundle_expansion(l: usize, b: TautLabel) -> Expansion {
    let e = |ks: &[usize]| {
        let mut v = vec![0i64; l];
        for &k in ks {
            v[k] += 1;
        }
        v
    };
    let h = rat(1, 2);
    match b {
        TautLabel::V0 => vec![(Rat::one(), e(&[]))],
        TautLabel::V(i) => vec![(Rat::one(), e(&[i]))],
        TautLabel::Sigma => vec![(Rat::one(), e(&[0]))],
        TautLabel::SigmaI(i) => vec![(Rat::one(), e(&[0, i]))],
        TautLabel::ZeroI(i) => vec![
            (rat(3, 2), e(&[i])),
            (h.clone(), e(&[0])),
            (h.clone(), e(&[0, i])),
            (-h, e(&[i, i])),
        ],
        TautLabel::IJ(i, j) => vec![
            (Rat::one(), e(&[i, j])),
            (h.clone(), e(&[0, i])),
            (-h.clone(), e(&[i, i])),
            (h.clone(), e(&[i])),
            (h.clone(), e(&[0, j])),
            (-h.clone(), e(&[j, j])),
            (h, e(&[j])),
        ],
    }
}

/// The linear system `ℓ_α(ch V_β^{(*)}) = δ_αβ` in the unknowns `ℓ_α(b)`.
#[derive(Clone, Debug)]
pub struct DualitySystem {
    pub group: Group,
    /// One row per constraint label; columns follow the cohomology basis.
    pub matrix: RatMatrix,
    pub constraints: Vec<(TautLabel, Expansion)>,
}

pub fn duality_system(group: Group) -> Result<DualitySystem> {
    let group = group.validate()?;
    let l = group.l();
    let dual = group == Group::B2;
    let labels = group.labels();
    let mut rows = Vec::new();
    let mut constraints = Vec::new();
    for &b in &labels {
        let mut exp = line_bundle_expansion(l, b);
        if dual {
            for (_, n) in exp.iter_mut() {
                n.iter_mut().for_each(|x| *x = -*x);
            }
        }
        let mut row = vec![Rat::zero(); basis(l).len()];
        for (c, n) in &exp {
            for (k, x) in ch_line_bundle(l, n)?.to_vec().into_iter().enumerate() {
                row[k] += c * x;
            }
        }
        rows.push(row);
        constraints.push((b, exp));
    }
    Ok(DualitySystem {
        group,
        matrix: RatMatrix::from_rows(rows)?,
        constraints,
    })
}

/// Coordinates of `ch O(Σ n_k d_k)` with symbolic twist, in basis order.
pub fn ch_line_bundle_symbolic(group: Group) -> Vec<(CohLabel, MPoly)> {
    let l = group.l();
    let n: Vec<MPoly> = (0..l).map(|k| MPoly::var(&group.twist_var(k))).collect();
    let half = rat(1, 2);
    basis(l)
        .into_iter()
        .map(|b| {
            let c = match b {
                CohLabel::One => MPoly::constant(Rat::one()),
                CohLabel::D(k) => n[k].clone(),
                CohLabel::P(i) => {
                    (&n[0] * &n[0]).scale(&half) + (&n[i] * &n[i]).scale(&half) + &n[0] * &n[i]
                }
                CohLabel::S(i) => (&n[0] * &n[i]).scale(&int(2)),
                CohLabel::P2(i, j) if i == j + 1 => &n[i] * &n[j] - (&n[0] * &n[0]).scale(&half),
                CohLabel::P2(i, j) => &n[i] * &n[j],
            };
            (b, c)
        })
        .collect()
}

/// Table of polynomials indexed by simple labels.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeTable {
    pub group: Group,
    pub entries: Vec<(TautLabel, MPoly)>,
}

impl ChargeTable {
    pub fn get(&self, a: TautLabel) -> Option<&MPoly> {
        self.entries.iter().find(|(b, _)| *b == a).map(|(_, p)| p)
    }

    pub fn labels(&self) -> Vec<TautLabel> {
        self.entries.iter().map(|(a, _)| *a).collect()
    }

    pub fn polys(&self) -> Vec<&MPoly> {
        self.entries.iter().map(|(_, p)| p).collect()
    }
}

impl Serialize for ChargeTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(
            self.entries
                .iter()
                .map(|(a, p)| (self.group.simple_name(*a), p)),
        )
    }
}

impl fmt::Display for ChargeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, p) in &self.entries {
            writeln!(f, "{} = {p}", self.group.simple_name(*a))?;
        }
        Ok(())
    }
}

/// The functionals `ℓ_α` as polynomials in the twist.
pub fn solve_functionals(group: Group) -> Result<ChargeTable> {
    let sys = duality_system(group)?;
    let u = sys
        .matrix
        .inverse()
        .map_err(|_| Error::Singular(format!("duality system for {group:?}")))?;
    let ch = ch_line_bundle_symbolic(group);
    let vars = group.vars();
    let entries = sys
        .constraints
        .iter()
        .enumerate()
        .map(|(ai, (a, _))| {
            let mut acc = MPoly::zero();
            for (bi, (_, c)) in ch.iter().enumerate() {
                let x = u.get(bi, ai);
                if !x.is_zero() {
                    acc = acc + c.scale(x);
                }
            }
            (*a, acc.with_vars(&vars).expect("twist variables"))
        })
        .collect();
    Ok(ChargeTable { group, entries })
}

/// Weighted shifts `(weight in ℚ[p], shift vector)` making up a dimension polynomial.
pub fn dimension_weights(group: Group) -> Vec<(MPoly, Vec<i64>)> {
    let p = |s: &str| MPoly::parse(s).expect("static weight");
    match group {
        Group::B2 => vec![
            (p("(p^2-1)/8"), vec![0, 0]),
            (p("(p^2-2p-3)/4"), vec![0, 1]),
            (p("(p^2-p)/2"), vec![1, 0]),
            (p("(p^2-4p+3)/4"), vec![1, 1]),
            (p("-(p^2-1)/8"), vec![2, 0]),
        ],
        Group::Cyclic(l) => {
            let lead = p("p^2").scale(&rat(1, (l * l) as i64));
            let w = |c: Rat| lead.scale(&c);
            let li = l as i64;
            let e = |ks: &[(usize, i64)]| {
                let mut v = vec![0i64; l];
                for &(k, x) in ks {
                    v[k] += x;
                }
                v
            };
            let mut out = vec![(w(rat(1, 2)), e(&[])), (w(rat(li, 2)), e(&[(0, 1)]))];
            for i in 1..l {
                out.push((w(rat(li + 2, 2)), e(&[(i, 1)])));
                out.push((w(rat(li, 2)), e(&[(0, 1), (i, 1)])));
                out.push((w(rat(-(li - 1), 2)), e(&[(i, 2)])));
            }
            for i in 1..l {
                for j in 1..i {
                    out.push((w(Rat::one()), e(&[(j, 1), (i, 1)])));
                }
            }
            out
        }
    }
}

/// `Σ w(p)·ℓ_α(x - v)` over the weighted shifts.
pub fn dimension_polynomial(ells: &ChargeTable, a: TautLabel) -> Result<MPoly> {
    let group = ells.group;
    let ell = ells
        .get(a)
        .ok_or_else(|| Error::Invalid(format!("label {a} not in table")))?;
    let vars = group.vars();
    let mut acc = MPoly::zero();
    for (w, shift) in dimension_weights(group) {
        let v: Vec<Rat> = shift.iter().map(|&x| int(x)).collect();
        acc = acc + &w * &ell.shift(&v)?;
    }
    let mut all = vars;
    all.push("p".into());
    acc.with_vars(&all)
}

/// Leading `p²` coefficient of each dimension polynomial.
pub fn central_charges(ells: &ChargeTable) -> Result<ChargeTable> {
    let vars = ells.group.vars();
    let entries = ells
        .labels()
        .into_iter()
        .map(|a| {
            Ok((
                a,
                dimension_polynomial(ells, a)?
                    .coeff_in("p", 2)
                    .with_vars(&vars)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChargeTable {
        group: ells.group,
        entries,
    })
}

pub fn central_charge(group: Group, a: TautLabel) -> Result<MPoly> {
    let z = central_charges(&solve_functionals(group)?)?;
    z.get(a)
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("label {a} does not exist for {group:?}")))
}

/// `Z'_j = Σ_i S[i][j]·Z_i` where column `j` of `s` is the `j`-th new simple class.
pub fn crossed_charges(base: &ChargeTable, s: &RatMatrix) -> Result<ChargeTable> {
    let n = base.entries.len();
    if s.nrows() != n || s.ncols() != n {
        return Err(Error::Mismatch(format!(
            "{}x{} matrix for {n} charges",
            s.nrows(),
            s.ncols()
        )));
    }
    let entries = (0..n)
        .map(|j| {
            let mut acc = MPoly::zero()
                .with_vars(base.group.vars().as_slice())
                .expect("empty");
            for i in 0..n {
                if !s.get(i, j).is_zero() {
                    acc = acc + base.entries[i].1.scale(s.get(i, j));
                }
            }
            (base.entries[j].0, acc)
        })
        .collect();
    Ok(ChargeTable {
        group: base.group,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::ch_tautological;

    #[test]
    fn expansions_reproduce_chern_characters() {
        for l in 2..6 {
            for a in TautLabel::all(l) {
                let mut acc = crate::cohomology::CohClass::zero(l);
                for (c, n) in line_bundle_expansion(l, a) {
                    acc = acc.add(&ch_line_bundle(l, &n).unwrap().scale(&c)).unwrap();
                }
                assert_eq!(acc, ch_tautological(l, a).unwrap(), "l={l} {a}");
            }
        }
    }

    #[test]
    fn symbolic_line_bundle_matches_numeric() {
        for l in 2..5 {
            let g = Group::Cyclic(l);
            let sym = ch_line_bundle_symbolic(g);
            let n: Vec<i64> = (0..l as i64).map(|k| 2 * k - 3).collect();
            let pt: Vec<(String, Rat)> = (0..l).map(|k| (format!("n{k}"), int(n[k]))).collect();
            let pt: Vec<(&str, Rat)> = pt.iter().map(|(s, x)| (s.as_str(), x.clone())).collect();
            let num = ch_line_bundle(l, &n).unwrap();
            for (b, c) in sym {
                assert_eq!(c.eval_named(&pt).unwrap(), num.coeff(b));
            }
        }
    }

    #[test]
    fn crossing_with_identity_is_identity() {
        let z = central_charges(&solve_functionals(Group::B2).unwrap()).unwrap();
        assert_eq!(crossed_charges(&z, &RatMatrix::identity(5)).unwrap(), z);
        assert!(crossed_charges(&z, &RatMatrix::identity(4)).is_err());
    }
}
