//! Grothendieck-group bookkeeping: Euler forms from Ext tables, classes of
//! simples after tilting twice at a simple object, dual projective classes,
//! and Gram matrices in a new basis.
//!
//! Classes of new simples are stored as the columns of a matrix `S` over the
//! old simple basis; row `j` of `S⁻¹` is then the class of the `j`-th new
//! projective over the old projective basis, since `⟨V_a, L_b⟩ = δ_ab`.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::rat::{int, parse_rat, rat_string};
use crate::exactcore::{Rat, RatMatrix};

/// `ext[i][j][k] = dim Ext^k(L_i, L_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub labels: Vec<String>,
    pub ext: Vec<Vec<Vec<u32>>>,
}

impl ExtTable {
    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if self.ext.len() != n || self.ext.iter().any(|r| r.len() != n) {
            return Err(Error::Fixture(format!("Ext table is not {n}x{n}")));
        }
        for (i, row) in self.ext.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let hom = e.first().copied().ok_or_else(|| {
                    Error::Fixture(format!(
                        "missing Ext entries for ({}, {})",
                        self.labels[i], self.labels[j]
                    ))
                })?;
                if hom != u32::from(i == j) {
                    return Err(Error::Fixture(format!(
                        "Hom({}, {}) has dimension {hom}",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self, i: usize, j: usize, k: usize) -> u32 {
        self.ext[i][j].get(k).copied().unwrap_or(0)
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Invalid(format!("unknown simple {label:?}")))
    }
}

pub fn euler_form(t: &ExtTable) -> Result<RatMatrix> {
    t.validate()?;
    let n = t.len();
    let mut e = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x: i64 = t.ext[i][j]
                .iter()
                .enumerate()
                .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            e.set(i, j, int(x));
        }
    }
    Ok(e)
}

/// Columns are the classes of the simples after tilting at `S_θ` and then at `S_θ[1]`.
pub fn double_tilt_classes(t: &ExtTable, theta: usize) -> Result<RatMatrix> {
    t.validate()?;
    let n = t.len();
    if theta >= n {
        return Err(Error::Invalid(format!("simple index {theta} out of range")));
    }
    if t.dim(theta, theta, 1) != 0 {
        return Err(Error::Invalid(format!(
            "Ext^1({0}, {0}) is nonzero",
            t.labels[theta]
        )));
    }
    let mut s = RatMatrix::identity(n);
    for a in (0..n).filter(|&a| a != theta) {
        let e1 = t.dim(a, theta, 1);
        let c = if e1 != 0 {
            int(e1 as i64)
        } else {
            -int(t.dim(a, theta, 2) as i64)
        };
        s.set(theta, a, c);
    }
    Ok(s)
}

/// Columns are the classes of the simples after a single tilt at `S_θ`:
/// `S_θ[1]` and the universal extensions of each `L_α` by `Ext¹(L_α, S_θ)`.
pub fn single_tilt_classes(t: &ExtTable, theta: usize) -> Result<RatMatrix> {
    t.validate()?;
    let n = t.len();
    if theta >= n {
        return Err(Error::Invalid(format!("simple index {theta} out of range")));
    }
    let mut s = RatMatrix::identity(n);
    s.set(theta, theta, -Rat::one());
    for a in (0..n).filter(|&a| a != theta) {
        s.set(theta, a, int(t.dim(a, theta, 1) as i64));
    }
    Ok(s)
}

/// Rows of `S⁻¹`: classes of the new projectives over the old projective basis.
pub fn dual_basis(s: &RatMatrix) -> Result<RatMatrix> {
    let q = s.inverse()?;
    if !q.is_integral() {
        return Err(Error::Fixture("dual basis has non-integral entries".into()));
    }
    Ok(q)
}

pub fn gram_transform(e: &RatMatrix, s: &RatMatrix) -> Result<RatMatrix> {
    if e.nrows() != e.ncols() || s.nrows() != s.ncols() || s.nrows() != e.nrows() {
        return Err(Error::Mismatch(
            "Gram transform needs square matrices of equal size".into(),
        ));
    }
    s.transpose().mul(e)?.mul(s)
}

/// Whether some simultaneous row/column permutation carries `a` to `b`.
pub fn permutation_equivalent(a: &RatMatrix, b: &RatMatrix) -> Result<bool> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n || b.ncols() != n {
        return Err(Error::Mismatch(
            "permutation test needs square matrices of equal size".into(),
        ));
    }
    let sorted_diag = |m: &RatMatrix| {
        (0..n)
            .map(|i| m.get(i, i).clone())
            .sorted()
            .collect::<Vec<_>>()
    };
    if sorted_diag(a) != sorted_diag(b) {
        return Ok(false);
    }
    // perm[i] = index in `a` of the basis vector placed at position i of `b`
    fn extend(a: &RatMatrix, b: &RatMatrix, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == a.nrows() {
            return true;
        }
        for c in 0..a.nrows() {
            if used[c] || a.get(c, c) != b.get(i, i) {
                continue;
            }
            let ok = perm
                .iter()
                .enumerate()
                .all(|(j, &pj)| a.get(c, pj) == b.get(i, j) && a.get(pj, c) == b.get(j, i));
            if ok {
                perm.push(c);
                used[c] = true;
                if extend(a, b, perm, used) {
                    return true;
                }
                used[c] = false;
                perm.pop();
            }
        }
        false
    }
    Ok(extend(a, b, &mut Vec::new(), &mut vec![false; n]))
}

/// `[A]·[B]` pairing matrix `Q·S`; the identity means the two bases are dual.
pub fn pairing(q: &RatMatrix, s: &RatMatrix) -> Result<RatMatrix> {
    q.mul(s)
}

/// Renders coordinates as e.g. `[L1] - 3[L0]`.
pub fn format_class(coords: &[Rat], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        let coef = if a.is_one() {
            String::new()
        } else {
            rat_string(&a)
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&format!("{coef}[{l}]"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses sums like `[V0] + 3[V3] - 2[V4]`; repeated labels accumulate.
pub fn parse_class(s: &str, labels: &[String]) -> Result<Vec<Rat>> {
    let mut v = vec![Rat::zero(); labels.len()];
    let s: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, r) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let open = r
            .find('[')
            .ok_or_else(|| Error::Parse(format!("expected '[' in {s:?}")))?;
        let close = r
            .find(']')
            .ok_or_else(|| Error::Parse(format!("expected ']' in {s:?}")))?;
        let coef = match r[..open].trim_end_matches('*') {
            "" => Rat::one(),
            c => parse_rat(c)?,
        };
        let lab = &r[open + 1..close];
        let i = labels
            .iter()
            .position(|l| l == lab)
            .ok_or_else(|| Error::Parse(format!("unknown label {lab:?}")))?;
        v[i] += coef * int(sign);
        rest = &r[close + 1..];
    }
    Ok(v)
}

/// Column classes of `s` rendered over `labels`.
pub fn format_columns(s: &RatMatrix, labels: &[String]) -> Vec<String> {
    (0..s.ncols())
        .map(|j| format_class(&s.col(j), labels))
        .collect()
}

/// Row classes of `q` rendered over `labels`.
pub fn format_rows(q: &RatMatrix, labels: &[String]) -> Vec<String> {
    (0..q.nrows())
        .map(|i| format_class(q.row(i), labels))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(p: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{p}{i}")).collect()
    }

    #[test]
    fn class_text_round_trip() {
        let l = labels("V", 5);
        let v = parse_class("[V0]+[V1]+[V2]+3[V3]-2[V4]", &l).unwrap();
        assert_eq!(format_class(&v, &l), "[V0] + [V1] + [V2] + 3[V3] - 2[V4]");
        assert_eq!(parse_class("[V2]+[V0]+3[V2]", &l).unwrap()[2], int(4));
        assert!(parse_class("[V9]", &l).is_err());
    }

    #[test]
    fn permutation_search() {
        let a = RatMatrix::from_i64(&[vec![1, 2, 0], vec![2, 3, 4], vec![0, 4, 5]]).unwrap();
        let p = RatMatrix::from_i64(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let b = p.transpose().mul(&a).unwrap().mul(&p).unwrap();
        assert!(permutation_equivalent(&a, &b).unwrap());
        let mut c = b.clone();
        c.set(0, 1, int(7));
        assert!(!permutation_equivalent(&a, &c).unwrap());
    }

    #[test]
    fn trivial_tilt_is_identity() {
        let t = ExtTable {
            labels: labels("L", 2),
            ext: vec![vec![vec![1], vec![0]], vec![vec![0], vec![1]]],
        };
        assert_eq!(double_tilt_classes(&t, 0).unwrap(), RatMatrix::identity(2));
        assert_eq!(
            dual_basis(&RatMatrix::identity(2)).unwrap(),
            RatMatrix::identity(2)
        );
    }
}
