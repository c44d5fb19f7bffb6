//! The degree-≤4 cohomology ring of the Hilbert scheme of two points on the
//! minimal resolution of ℂ²/ℤ_l, presented by structure constants in the
//! basis `1, d_0..d_{l-1}, p_i, s_i, p_{i,j}`, together with Chern
//! characters of the tautological bundles and localization sums.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactcore::rat::{int, rat, rat_serde, rat_string};
use crate::exactcore::{Rat, RatMatrix};

/// Basis element of H*; `P2(i, j)` is `p_{i,j}` with `i > j >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CohLabel {
    One,
    D(usize),
    P(usize),
    S(usize),
    P2(usize, usize),
}

impl CohLabel {
    pub fn degree(self) -> u32 {
        match self {
            CohLabel::One => 0,
            CohLabel::D(_) => 2,
            _ => 4,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown cohomology label {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let s = s.trim();
        if s == "1" {
            return Ok(CohLabel::One);
        }
        let (head, rest) = s.split_at(1.min(s.len()));
        let rest = rest.trim_start_matches('_');
        match head {
            "d" => Ok(CohLabel::D(num(rest)?)),
            "s" => Ok(CohLabel::S(num(rest)?)),
            "p" => match rest.split_once(',') {
                Some((i, j)) => Ok(CohLabel::P2(num(i)?, num(j)?)),
                None => Ok(CohLabel::P(num(rest)?)),
            },
            _ => Err(bad()),
        }
    }

    fn valid(self, l: usize) -> bool {
        match self {
            CohLabel::One => true,
            CohLabel::D(i) => i < l,
            CohLabel::P(i) | CohLabel::S(i) => (1..l).contains(&i),
            CohLabel::P2(i, j) => 1 <= j && j < i && i < l,
        }
    }
}

impl fmt::Display for CohLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohLabel::One => f.write_str("1"),
            CohLabel::D(i) => write!(f, "d{i}"),
            CohLabel::P(i) => write!(f, "p{i}"),
            CohLabel::S(i) => write!(f, "s{i}"),
            CohLabel::P2(i, j) => write!(f, "p{i},{j}"),
        }
    }
}

/// The ordered basis for a given `l`.
pub fn basis(l: usize) -> Vec<CohLabel> {
    let mut b = vec![CohLabel::One];
    b.extend((0..l).map(CohLabel::D));
    b.extend((1..l).map(CohLabel::P));
    b.extend((1..l).map(CohLabel::S));
    for i in 1..l {
        for j in 1..i {
            b.push(CohLabel::P2(i, j));
        }
    }
    b
}

/// Irreducible representations of the order-2l binary dihedral-type group,
/// indexing tautological bundles (and dually the simple objects).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TautLabel {
    V0,
    V(usize),
    Sigma,
    SigmaI(usize),
    ZeroI(usize),
    /// `V_{i,j}` with `i > j >= 1`.
    IJ(usize, usize),
}

impl TautLabel {
    /// All labels for `l`, in the canonical order.
    pub fn all(l: usize) -> Vec<TautLabel> {
        let mut v = vec![TautLabel::V0];
        v.extend((1..l).map(TautLabel::V));
        v.push(TautLabel::Sigma);
        v.extend((1..l).map(TautLabel::SigmaI));
        v.extend((1..l).map(TautLabel::ZeroI));
        for i in 1..l {
            for j in 1..i {
                v.push(TautLabel::IJ(i, j));
            }
        }
        v
    }

    /// For `l = 2`, the labels named `V0..V4` in the B₂ tables.
    pub fn b2(k: usize) -> Result<TautLabel> {
        Ok(match k {
            0 => TautLabel::V0,
            1 => TautLabel::Sigma,
            2 => TautLabel::V(1),
            3 => TautLabel::SigmaI(1),
            4 => TautLabel::ZeroI(1),
            _ => return Err(Error::Invalid(format!("B2 label index {k} out of range"))),
        })
    }

    pub fn b2_index(self) -> Option<usize> {
        (0..5).find(|&k| TautLabel::b2(k).ok() == Some(self))
    }

    /// Accepts the general names (`V0`, `V_i`, `V_s`, `V_s,i`, `V_0,i`,
    /// `V_i,j`) and, when `l = 2`, the B₂ names `V1..V4`; `L` may replace `V`.
    pub fn parse(s: &str, l: usize) -> Result<TautLabel> {
        let bad = || Error::Parse(format!("unknown label {s:?} for l = {l}"));
        let s = s.trim();
        let body = s
            .strip_prefix('V')
            .or_else(|| s.strip_prefix('L'))
            .ok_or_else(bad)?;
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let lab = if body == "0" {
            TautLabel::V0
        } else if let Some(r) = body.strip_prefix('_') {
            match r.split_once(',') {
                None if r == "s" => TautLabel::Sigma,
                None => TautLabel::V(num(r)?),
                Some(("s", i)) => TautLabel::SigmaI(num(i)?),
                Some(("0", i)) => TautLabel::ZeroI(num(i)?),
                Some((i, j)) => TautLabel::IJ(num(i)?, num(j)?),
            }
        } else if l == 2 {
            TautLabel::b2(num(body)?)?
        } else {
            return Err(bad());
        };
        if lab.valid(l) {
            Ok(lab)
        } else {
            Err(bad())
        }
    }

    pub fn valid(self, l: usize) -> bool {
        match self {
            TautLabel::V0 | TautLabel::Sigma => true,
            TautLabel::V(i) | TautLabel::SigmaI(i) | TautLabel::ZeroI(i) => (1..l).contains(&i),
            TautLabel::IJ(i, j) => 1 <= j && j < i && i < l,
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            TautLabel::ZeroI(_) | TautLabel::IJ(..) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for TautLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TautLabel::V0 => f.write_str("V0"),
            TautLabel::V(i) => write!(f, "V_{i}"),
            TautLabel::Sigma => f.write_str("V_s"),
            TautLabel::SigmaI(i) => write!(f, "V_s,{i}"),
            TautLabel::ZeroI(i) => write!(f, "V_0,{i}"),
            TautLabel::IJ(i, j) => write!(f, "V_{i},{j}"),
        }
    }
}

/// A class in H*(Hilb²; ℚ) over the basis for a fixed `l`; absent labels are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    l: usize,
    coords: BTreeMap<CohLabel, Rat>,
}

impl CohClass {
    pub fn zero(l: usize) -> Self {
        CohClass {
            l,
            coords: BTreeMap::new(),
        }
    }

    pub fn one(l: usize) -> Self {
        Self::basis_elt(l, CohLabel::One)
    }

    pub fn basis_elt(l: usize, b: CohLabel) -> Self {
        let mut c = Self::zero(l);
        c.add_term(b, Rat::one());
        c
    }

    pub fn from_terms(l: usize, terms: &[(CohLabel, Rat)]) -> Result<Self> {
        let mut c = Self::zero(l);
        for (b, x) in terms {
            if !b.valid(l) {
                return Err(Error::Invalid(format!(
                    "label {b} does not exist for l = {l}"
                )));
            }
            c.add_term(*b, x.clone());
        }
        Ok(c)
    }

    /// Parses a linear combination such as `2*d0 - 1/2*p1 + p2,1`.
    pub fn parse(l: usize, s: &str) -> Result<Self> {
        let mut out = Self::zero(l);
        let s: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            chunks.push(cur);
        }
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, chunk.trim_start_matches('+')),
            };
            let (coef, lab) = match body.rsplit_once('*') {
                Some((c, b)) => (crate::exactcore::parse_rat(c)?, b),
                None => match crate::exactcore::parse_rat(body) {
                    Ok(c) => (c, "1"),
                    Err(_) => (Rat::one(), body),
                },
            };
            let lab = CohLabel::parse(lab)?;
            if !lab.valid(l) {
                return Err(Error::Invalid(format!(
                    "label {lab} does not exist for l = {l}"
                )));
            }
            out.add_term(lab, coef * int(sign));
        }
        Ok(out)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn coeff(&self, b: CohLabel) -> Rat {
        self.coords.get(&b).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CohLabel, &Rat)> {
        self.coords.iter()
    }

    /// Coordinates in basis order.
    pub fn to_vec(&self) -> Vec<Rat> {
        basis(self.l).into_iter().map(|b| self.coeff(b)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, o: &CohClass) -> Result<CohClass> {
        self.check_l(o)?;
        let mut c = self.clone();
        for (b, x) in &o.coords {
            c.add_term(*b, x.clone());
        }
        Ok(c)
    }

    pub fn scale(&self, x: &Rat) -> CohClass {
        let mut c = Self::zero(self.l);
        for (b, y) in &self.coords {
            c.add_term(*b, y * x);
        }
        c
    }

    /// Part of real degree `deg`.
    pub fn homogeneous(&self, deg: u32) -> CohClass {
        CohClass {
            l: self.l,
            coords: self
                .coords
                .iter()
                .filter(|(b, _)| b.degree() == deg)
                .map(|(b, x)| (*b, x.clone()))
                .collect(),
        }
    }

    fn check_l(&self, o: &CohClass) -> Result<()> {
        if self.l != o.l {
            return Err(Error::Mismatch(format!(
                "classes for l = {} and l = {}",
                self.l, o.l
            )));
        }
        Ok(())
    }

    fn add_term(&mut self, b: CohLabel, x: Rat) {
        if x.is_zero() {
            return;
        }
        let e = self.coords.entry(b).or_insert_with(Rat::zero);
        *e += x;
        if e.is_zero() {
            self.coords.remove(&b);
        }
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(b, x)| match b {
                CohLabel::One => rat_string(x),
                _ if x.is_one() => b.to_string(),
                _ => format!("{}*{b}", rat_string(x)),
            })
            .collect();
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

impl Serialize for CohClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(
            self.coords
                .iter()
                .map(|(b, x)| (b.to_string(), rat_string(x))),
        )
    }
}

/// Product of two basis elements.
fn basis_product(l: usize, a: CohLabel, b: CohLabel) -> CohClass {
    use CohLabel::*;
    let mut c = CohClass::zero(l);
    match (a, b) {
        (One, x) | (x, One) => c.add_term(x, Rat::one()),
        (D(0), D(0)) => {
            for j in 1..l {
                c.add_term(P(j), Rat::one());
            }
            for j in 1..l.saturating_sub(1) {
                c.add_term(P2(j + 1, j), -Rat::one());
            }
        }
        (D(0), D(i)) | (D(i), D(0)) => {
            c.add_term(P(i), Rat::one());
            c.add_term(S(i), int(2));
        }
        (D(i), D(j)) if i == j => c.add_term(P(i), Rat::one()),
        (D(i), D(j)) => c.add_term(P2(i.max(j), i.min(j)), Rat::one()),
        _ => {}
    }
    c
}

pub fn ring_mul(x: &CohClass, y: &CohClass) -> Result<CohClass> {
    x.check_l(y)?;
    let mut out = CohClass::zero(x.l);
    for (a, xa) in &x.coords {
        for (b, yb) in &y.coords {
            if a.degree() + b.degree() > 4 {
                continue;
            }
            let prod = xa * yb;
            for (c, z) in basis_product(x.l, *a, *b).coords {
                out.add_term(c, z * &prod);
            }
        }
    }
    Ok(out)
}

/// `Σ p_j/2 - Σ p_{j+1,j}/2`, the degree-4 part shared by several Chern characters.
fn half_d0_square(l: usize) -> Vec<(CohLabel, Rat)> {
    let mut v: Vec<(CohLabel, Rat)> = (1..l).map(|j| (CohLabel::P(j), rat(1, 2))).collect();
    v.extend((1..l.saturating_sub(1)).map(|j| (CohLabel::P2(j + 1, j), rat(-1, 2))));
    v
}

pub fn ch_tautological(l: usize, a: TautLabel) -> Result<CohClass> {
    use CohLabel::*;
    if l < 2 || !a.valid(l) {
        return Err(Error::Invalid(format!(
            "label {a} does not exist for l = {l}"
        )));
    }
    let one = Rat::one();
    let half = rat(1, 2);
    let mut t: Vec<(CohLabel, Rat)> = Vec::new();
    match a {
        TautLabel::V0 => t.push((One, one)),
        TautLabel::V(i) => t.extend([(One, one.clone()), (D(i), one), (P(i), half)]),
        TautLabel::Sigma => {
            t.extend([(One, one.clone()), (D(0), one)]);
            t.extend(half_d0_square(l));
        }
        TautLabel::SigmaI(i) => {
            t.extend([
                (One, one.clone()),
                (D(i), one.clone()),
                (D(0), one),
                (P(i), rat(3, 2)),
                (S(i), int(2)),
            ]);
            t.extend(half_d0_square(l));
        }
        TautLabel::ZeroI(i) => {
            t.extend([
                (One, int(2)),
                (D(0), one.clone()),
                (D(i), one.clone()),
                (P(i), half),
                (S(i), one),
            ]);
            t.extend(half_d0_square(l));
        }
        TautLabel::IJ(i, j) => {
            t.extend([
                (One, int(2)),
                (D(j), one.clone()),
                (D(i), one.clone()),
                (D(0), one.clone()),
                (P2(i, j), one.clone()),
                (P(i), half.clone()),
                (P(j), half),
                (S(i), one.clone()),
                (S(j), one),
            ]);
            t.extend(half_d0_square(l));
        }
    }
    CohClass::from_terms(l, &t)
}

/// Chern character of the line bundle with divisor `Σ n_k d_k`, in closed form.
pub fn ch_line_bundle(l: usize, n: &[i64]) -> Result<CohClass> {
    use CohLabel::*;
    if n.len() != l {
        return Err(Error::Mismatch(format!(
            "exponent vector of length {} for l = {l}",
            n.len()
        )));
    }
    let mut t: Vec<(CohLabel, Rat)> = vec![(One, Rat::one())];
    for (k, &nk) in n.iter().enumerate() {
        t.push((D(k), int(nk)));
    }
    let n0 = int(n[0]);
    let n0sq_half = &n0 * &n0 * rat(1, 2);
    for (b, x) in half_d0_square(l) {
        t.push((b, x * int(2) * &n0sq_half));
    }
    for i in 1..l {
        let ni = int(n[i]);
        t.push((P(i), &ni * &ni * rat(1, 2)));
        for (j, &nj) in n.iter().enumerate().take(i).skip(1) {
            t.push((P2(i, j), &ni * int(nj)));
        }
        t.push((P(i), &n0 * &ni));
        t.push((S(i), &n0 * &ni * int(2)));
    }
    CohClass::from_terms(l, &t)
}

/// `1 + D + D²/2` computed with the ring product, for `D = Σ n_k d_k`.
pub fn exp_divisor(l: usize, n: &[i64]) -> Result<CohClass> {
    if n.len() != l {
        return Err(Error::Mismatch(format!(
            "exponent vector of length {} for l = {l}",
            n.len()
        )));
    }
    let terms: Vec<(CohLabel, Rat)> = n
        .iter()
        .enumerate()
        .map(|(k, &x)| (CohLabel::D(k), int(x)))
        .collect();
    let d = CohClass::from_terms(l, &terms)?;
    let d2 = ring_mul(&d, &d)?.scale(&rat(1, 2));
    CohClass::one(l).add(&d)?.add(&d2)
}

/// Matrix whose column `α` holds the coordinates of `ch(V_α)`.
pub fn ch_matrix(l: usize) -> Result<RatMatrix> {
    let labels = TautLabel::all(l);
    let cols: Vec<Vec<Rat>> = labels
        .iter()
        .map(|&a| ch_tautological(l, a).map(|c| c.to_vec()))
        .collect::<Result<_>>()?;
    Ok(RatMatrix::from_rows(cols)?.transpose())
}

/// Coefficients of `ch(V_α)` in a linear combination.
pub type ChCombination = Vec<(TautLabel, Rat)>;

/// Each basis element written as a combination of Chern characters of
/// tautological bundles.
pub fn geometric_from_ch(l: usize) -> Result<Vec<(CohLabel, ChCombination)>> {
    let inv = ch_matrix(l)?
        .inverse()
        .map_err(|_| Error::Singular(format!("Chern characters do not span H* for l = {l}")))?;
    let labels = TautLabel::all(l);
    Ok(basis(l)
        .into_iter()
        .enumerate()
        .map(|(bi, b)| {
            let combo = labels
                .iter()
                .enumerate()
                .filter(|(ai, _)| !inv.get(*ai, bi).is_zero())
                .map(|(ai, a)| (*a, inv.get(ai, bi).clone()))
                .collect();
            (b, combo)
        })
        .collect())
}

/// One fixed point: tangent Euler class and second Chern class weights, both
/// in units of `u²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointRow {
    #[serde(with = "rat_serde")]
    pub euler: Rat,
    #[serde(with = "rat_serde")]
    pub c2: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointTable {
    pub component: String,
    pub rows: Vec<FixedPointRow>,
}

/// `Σ c2 / euler` over the fixed points of a component.
pub fn localization_sum(t: &FixedPointTable) -> Result<Rat> {
    let mut acc = Rat::zero();
    for r in &t.rows {
        if r.euler.is_zero() {
            return Err(Error::ZeroDivisor(format!(
                "zero tangent weight on {}",
                t.component
            )));
        }
        acc += &r.c2 / &r.euler;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        let l = 3;
        let d = |i| CohClass::basis_elt(l, CohLabel::D(i));
        assert_eq!(
            ring_mul(&d(0), &d(1)).unwrap(),
            CohClass::parse(l, "p1+2*s1").unwrap()
        );
        assert_eq!(
            ring_mul(&d(1), &d(1)).unwrap(),
            CohClass::parse(l, "p1").unwrap()
        );
        assert_eq!(
            ring_mul(&d(2), &d(1)).unwrap(),
            CohClass::parse(l, "p2,1").unwrap()
        );
        assert_eq!(
            ring_mul(&d(0), &d(0)).unwrap(),
            CohClass::parse(l, "p1+p2-p2,1").unwrap()
        );
        let x = CohClass::parse(l, "3 + d2 - 1/2*s2").unwrap();
        assert_eq!(ring_mul(&CohClass::one(l), &x).unwrap(), x);
        assert!(ring_mul(&x, &CohClass::one(2)).is_err());
    }

    #[test]
    fn labels_round_trip() {
        for l in 2..6 {
            let all = TautLabel::all(l);
            assert_eq!(all.len(), 2 * l + l * (l - 1) / 2);
            assert_eq!(basis(l).len(), l * (l + 3) / 2);
            for a in all {
                assert_eq!(TautLabel::parse(&a.to_string(), l).unwrap(), a);
            }
        }
        assert_eq!(TautLabel::parse("V3", 2).unwrap(), TautLabel::SigmaI(1));
        assert!(TautLabel::parse("V3", 3).is_err());
    }

    #[test]
    fn line_bundle_matches_tautological() {
        assert_eq!(ch_line_bundle(2, &[0, 0]).unwrap(), CohClass::one(2));
        assert_eq!(
            ch_line_bundle(2, &[0, 1]).unwrap(),
            ch_tautological(2, TautLabel::V(1)).unwrap()
        );
    }

    #[test]
    fn localization_rejects_zero_weight() {
        let t = FixedPointTable {
            component: "x".into(),
            rows: vec![FixedPointRow {
                euler: Rat::zero(),
                c2: Rat::one(),
            }],
        };
        assert!(localization_sum(&t).is_err());
    }
}
