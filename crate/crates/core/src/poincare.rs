//! Poincaré series of Verma modules and of the irreducibles attached to the
//! trivial representation of `S_n` and to the one-row wreath characters `τ(i)`.
//!
//! Every series here has nonnegative exponents; a parameter choice that
//! would put `t` to a negative power is rejected rather than silently
//! producing a Laurent series.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::rat::int;
use crate::exactcore::{Partition, QSeries, RatFunc, UPoly};

/// Hook and leg length of every box, in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookData {
    pub partition: Partition,
    /// `(row, col, hook, leg)`
    pub boxes: Vec<(u32, u32, u32, u32)>,
}

pub fn hook_data(tau: &Partition) -> HookData {
    let boxes = tau
        .boxes()
        .into_iter()
        .map(|(i, j)| (i, j, tau.hook(i, j), tau.leg(i, j)))
        .collect();
    HookData {
        partition: tau.clone(),
        boxes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherednikParams {
    pub n: u32,
    pub l: u32,
    /// `m` for the symmetric group; `(m_0, m_1, …, m_l)` for the wreath family.
    pub m: Vec<i64>,
    pub p: u32,
}

impl CherednikParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.l == 0 || self.p == 0 {
            return Err(Error::Invalid("n, l and p must be positive".into()));
        }
        if self.m.is_empty() {
            return Err(Error::Invalid("m must have at least one entry".into()));
        }
        Ok(())
    }
}

fn t_pow(e: i64) -> Result<UPoly> {
    let k = usize::try_from(e).map_err(|_| Error::Invalid(format!("negative power t^{e}")))?;
    Ok(UPoly::monomial(int(1), k))
}

fn one_minus(e: i64) -> Result<UPoly> {
    Ok(&UPoly::one() - &t_pow(e)?)
}

/// `∏_{k ∈ ks} (1 - t^k)`
fn prod_one_minus(ks: impl IntoIterator<Item = i64>) -> Result<UPoly> {
    ks.into_iter()
        .try_fold(UPoly::one(), |acc, k| Ok(&acc * &one_minus(k)?))
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Graded multiplicity of `τ` in the coinvariant algebra, as a polynomial.
pub fn fake_degree(tau: &Partition) -> RatFunc {
    let n = tau.size() as i64;
    let hd = hook_data(tau);
    let num = hd.boxes.iter().fold(
        prod_one_minus(1..=n).expect("positive"),
        |acc, &(_, _, _, leg)| &acc * &UPoly::monomial(int(1), leg as usize),
    );
    let den = prod_one_minus(hd.boxes.iter().map(|b| b.2 as i64)).expect("positive hooks");
    let f = RatFunc::new(num, den).expect("hooks are positive");
    // the hook formula always divides out
    RatFunc::poly(f.as_poly().expect("hook-length quotient is a polynomial"))
}

/// `ξ_m(τ) = m·(C(n,2) - Σ contents)`.
pub fn xi(tau: &Partition, m: i64) -> i64 {
    m * (binom2(tau.size() as i64) - tau.content_sum())
}

pub fn verma_series(tau: &Partition, m: i64, n: u32) -> Result<RatFunc> {
    if tau.size() != n {
        return Err(Error::Invalid(format!(
            "partition of {} given for n = {n}",
            tau.size()
        )));
    }
    let num = &t_pow(xi(tau, m))? * fake_degree(tau).num();
    RatFunc::new(num, prod_one_minus(2..=n as i64)?)
}

/// The alternating Koszul sum for the trivial representation, modulo `t^trunc`.
pub fn koszul_trivial_sum(n: u32, m: i64, p: u32, trunc: usize) -> Result<QSeries> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let (n, p) = (n as i64, p as i64);
    let outer = RatFunc::new(one_minus(1)?, one_minus(n)?)?;
    let mut acc = QSeries::from_poly(&UPoly::zero(), trunc);
    for s in 1..=n {
        let e = (s - 1) * (m * n + p) + binom2(s);
        let mono = t_pow(e)?.scale(&int(if s % 2 == 1 { 1 } else { -1 }));
        let den = &prod_one_minus(1..s)? * &prod_one_minus(1..=n - s)?;
        let term = RatFunc::new(mono, den)?.mul(&outer);
        acc = &acc + &term.expand(trunc)?;
    }
    Ok(acc)
}

/// `(1-t)/(1-t^n) · ∏_{i=1}^{n-1} (1 - t^{mn+p+i})/(1 - t^i)`
pub fn koszul_trivial_closed_form(n: u32, m: i64, p: u32) -> Result<RatFunc> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let (n, p) = (n as i64, p as i64);
    let num = &one_minus(1)? * &prod_one_minus((1..n).map(|i| m * n + p + i))?;
    let den = &one_minus(n)? * &prod_one_minus(1..n)?;
    RatFunc::new(num, den)
}

fn tau_i_shift(params: &CherednikParams, i: u32) -> Result<i64> {
    params.validate()?;
    if i >= params.l {
        return Err(Error::Invalid(format!(
            "character index {i} out of range for l = {}",
            params.l
        )));
    }
    let mi1 = *params
        .m
        .get(i as usize + 1)
        .ok_or_else(|| Error::Invalid(format!("m needs an entry m_{} for i = {i}", i + 1)))?;
    Ok(params.m[0] * params.n as i64 + params.p as i64 + 1 + params.l as i64 * mi1)
}

/// Product form `t^{ni} ∏_{k=0}^{n-1} (1 - t^{lk+c}) / ∏_{k=1}^n (1 - t^{kl})`,
/// with `c = m_0 n + p + 1 + l m_{i+1}`.
pub fn closed_form_tau_i(params: &CherednikParams, i: u32) -> Result<RatFunc> {
    let c = tau_i_shift(params, i)?;
    let (n, l) = (params.n as i64, params.l as i64);
    // 1 - t^e = -t^e (1 - t^{-e}) moves a negative exponent into the prefactor
    let (mut shift, mut sign) = (n * i as i64, 1);
    let mut factors = Vec::new();
    for e in (0..n).map(|k| l * k + c) {
        if e < 0 {
            shift += e;
            sign = -sign;
        }
        factors.push(e.abs());
    }
    let num = (&t_pow(shift)? * &prod_one_minus(factors)?).scale(&int(sign));
    RatFunc::new(num, prod_one_minus((1..=n).map(|k| k * l))?)
}

/// The alternating Koszul sum over `s = 0..n` for `τ(i)`, modulo `t^trunc`.
pub fn alternating_sum_tau_i(params: &CherednikParams, i: u32, trunc: usize) -> Result<QSeries> {
    tau_i_shift(params, i)?;
    let (n, l, p, i) = (params.n as i64, params.l as i64, params.p as i64, i as i64);
    let mi1 = params.m[i as usize + 1];
    let mut acc = QSeries::from_poly(&UPoly::zero(), trunc);
    for s in 0..=n {
        let xi = s * (n * params.m[0] + l * mi1);
        let e = xi + s * p + s * (i + 1) + l * binom2(s) + (n - s) * i;
        let mono = t_pow(e)?.scale(&int(if s % 2 == 0 { 1 } else { -1 }));
        let den =
            &prod_one_minus((1..=s).map(|k| l * k))? * &prod_one_minus((1..=n - s).map(|k| l * k))?;
        acc = &acc + &RatFunc::new(mono, den)?.expand(trunc)?;
    }
    Ok(acc)
}

/// `[n]_t! / ([j]_t! [n-j]_t!)` as a polynomial.
pub fn q_binomial(n: u32, j: u32) -> UPoly {
    let qfact = |k: u32| {
        (1..=k).fold(UPoly::one(), |acc, r| {
            &acc * &UPoly::new(vec![int(1); r as usize])
        })
    };
    let f = RatFunc::new(qfact(n), &qfact(j) * &qfact(n - j)).expect("nonzero");
    f.as_poly().expect("Gaussian binomials are polynomials")
}

/// Checks `(x+a)(x+ta)⋯(x+t^{n-1}a) = Σ_j [n choose j]_t t^{C(j,2)} a^j x^{n-j}`
/// by comparing the coefficient of every `a^j x^{n-j}`.
pub fn kc_identity_check(n: u32) -> bool {
    // lhs[j] = coefficient of a^j x^{n-j}
    let mut lhs = vec![UPoly::one()];
    for k in 0..n as usize {
        let mut next = vec![UPoly::zero(); lhs.len() + 1];
        for (j, c) in lhs.iter().enumerate() {
            next[j] = &next[j] + c;
            next[j + 1] = &next[j + 1] + &(c * &UPoly::monomial(int(1), k));
        }
        lhs = next;
    }
    lhs.iter().enumerate().all(|(j, c)| {
        let j = j as u32;
        *c == &q_binomial(n, j) * &UPoly::monomial(int(1), binom2(j as i64) as usize)
    })
}

/// Coefficients of a series as integers, if they all are.
pub fn integer_coefficients(s: &QSeries) -> Option<Vec<i64>> {
    s.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                i64::try_from(c.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}

/// Value at `t = 1` of a polynomial rational function.
pub fn value_at_one(f: &RatFunc) -> Option<num_bigint::BigInt> {
    let p = f.as_poly()?;
    let v = p.eval(&crate::exactcore::Rat::one());
    v.is_integer().then(|| v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_fake_degrees() {
        assert_eq!(fake_degree(&part(&[3])).num(), &UPoly::one());
        assert_eq!(
            fake_degree(&part(&[2, 1])).num(),
            &UPoly::from_ints(&[0, 1, 1])
        );
        assert_eq!(
            fake_degree(&part(&[1, 1, 1, 1])).num(),
            &UPoly::monomial(int(1), 6)
        );
    }

    #[test]
    fn verma_examples() {
        let v = verma_series(&part(&[1, 1]), 1, 2).unwrap();
        let want = RatFunc::new(UPoly::monomial(int(1), 3), UPoly::one_minus_t_pow(2)).unwrap();
        assert!(v.same_as(&want));
        let triv = verma_series(&part(&[4]), 3, 4).unwrap();
        assert_eq!(triv.num(), &UPoly::one());
        assert!(verma_series(&part(&[2]), 1, 3).is_err());
    }

    #[test]
    fn koszul_small_cases() {
        let s = koszul_trivial_sum(2, 1, 5, 8).unwrap();
        assert_eq!(
            integer_coefficients(&s).unwrap(),
            vec![1, 0, 1, 0, 1, 0, 1, 0]
        );
        let one = koszul_trivial_sum(1, 4, 7, 10).unwrap();
        assert_eq!(
            integer_coefficients(&one).unwrap(),
            [vec![1], vec![0; 9]].concat()
        );
    }

    #[test]
    fn tau_i_reduces_for_rank_one() {
        let prm = CherednikParams {
            n: 1,
            l: 1,
            m: vec![2, 0],
            p: 5,
        };
        let f = closed_form_tau_i(&prm, 0).unwrap();
        let want =
            RatFunc::new(UPoly::one_minus_t_pow(2 + 5 + 1), UPoly::one_minus_t_pow(1)).unwrap();
        assert!(f.same_as(&want));
        assert!(closed_form_tau_i(&prm, 1).is_err());
    }

    #[test]
    fn kc_small() {
        assert!(kc_identity_check(0));
        assert!(kc_identity_check(2));
        assert_eq!(q_binomial(4, 2), UPoly::from_ints(&[1, 1, 2, 1, 1]));
    }
}
