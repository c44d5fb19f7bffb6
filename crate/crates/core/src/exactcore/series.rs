use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{int, rat_string, rat_vec_serde, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial in `t`; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(int(1), 0)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        &Self::one() - &Self::monomial(int(1), k)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::ZeroDivisor("polynomial division by zero".into()))?;
        let lead = &d.coeffs[dd];
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(dd)];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] / lead;
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &c * dj;
            }
            q[k - dd] = c;
        }
        Ok((UPoly::new(q), UPoly::new(r)))
    }

    /// Divides by `t^k`; the low coefficients must vanish.
    fn unshift(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn fmt_series(f: &mut fmt::Formatter<'_>, coeffs: &[Rat]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if mono.is_empty() {
            f.write_str(&rat_string(&a))?;
        } else if a.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{}*{mono}", rat_string(&a))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(f, &self.coeffs)
    }
}

/// Power series in `t` known modulo `t^trunc`; `coeffs.len() == trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    trunc: usize,
    #[serde(with = "rat_vec_serde")]
    coeffs: Vec<Rat>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rat>, trunc: usize) -> Result<Self> {
        if coeffs.len() != trunc {
            return Err(Error::Mismatch(format!(
                "{} coefficients for truncation order {trunc}",
                coeffs.len()
            )));
        }
        Ok(QSeries { trunc, coeffs })
    }

    pub fn from_poly(p: &UPoly, trunc: usize) -> Self {
        QSeries {
            trunc,
            coeffs: (0..trunc).map(|k| p.coeff(k)).collect(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Rat> {
        self.coeffs.get(k)
    }

    /// Reduces to a lower truncation order.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.trunc);
        QSeries {
            trunc: n,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let n = self.trunc.min(o.trunc);
        QSeries {
            trunc: n,
            coeffs: (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        let n = self.trunc.min(o.trunc);
        QSeries {
            trunc: n,
            coeffs: (0..n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let n = self.trunc.min(o.trunc);
        let mut v = vec![Rat::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                v[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        QSeries {
            trunc: n,
            coeffs: v,
        }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(f, &self.coeffs)?;
        write!(f, " + O(t^{})", self.trunc)
    }
}

/// Quotient of univariate polynomials in `t`; the denominator is nonzero.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(RatFunc { num, den })
    }

    pub fn poly(p: UPoly) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `num(t)/den(t)` at a point where the denominator does not vanish.
    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::ZeroDivisor(format!(
                "denominator vanishes at t = {t}"
            )));
        }
        Ok(self.num.eval(t) / d)
    }

    /// The polynomial `num/den` when the division is exact.
    pub fn as_poly(&self) -> Option<UPoly> {
        let (q, r) = self.num.div_rem(&self.den).ok()?;
        r.is_zero().then_some(q)
    }

    /// Cross-multiplied equality as rational functions.
    pub fn same_as(&self, o: &RatFunc) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// Power-series expansion modulo `t^n`.
    ///
    /// Common powers of `t` are cancelled first; what remains of the
    /// denominator must have a nonzero constant term.
    pub fn expand(&self, n: usize) -> Result<QSeries> {
        let vd = self.den.valuation().expect("nonzero denominator");
        let vn = self.num.valuation().unwrap_or(vd);
        if vn < vd {
            return Err(Error::ZeroDivisor(format!(
                "denominator divisible by t^{} after cancellation",
                vd - vn
            )));
        }
        let num = self.num.unshift(vd);
        let den = self.den.unshift(vd);
        let d0 = den.coeff(0);
        let mut q = vec![Rat::zero(); n];
        for k in 0..n {
            let mut acc = num.coeff(k);
            for j in 1..=k.min(den.degree().unwrap_or(0)) {
                acc -= den.coeff(j) * &q[k - j];
            }
            q[k] = acc / &d0;
        }
        Ok(QSeries {
            trunc: n,
            coeffs: q,
        })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QSeries {
        QSeries::new(v.iter().map(|&x| int(x)).collect(), v.len()).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let r = RatFunc::new(UPoly::one_minus_t_pow(8), UPoly::one_minus_t_pow(2)).unwrap();
        assert_eq!(r.expand(8).unwrap(), q(&[1, 0, 1, 0, 1, 0, 1, 0]));
        let r = RatFunc::new(UPoly::one(), UPoly::one_minus_t_pow(1)).unwrap();
        assert_eq!(r.expand(4).unwrap(), q(&[1, 1, 1, 1]));
        let r = RatFunc::new(UPoly::monomial(int(1), 1), UPoly::one_minus_t_pow(3)).unwrap();
        assert_eq!(r.expand(7).unwrap(), q(&[0, 1, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn expansion_cancels_common_t_powers() {
        let r = RatFunc::new(UPoly::from_ints(&[0, 0, 1]), UPoly::from_ints(&[0, 1, -1])).unwrap();
        assert_eq!(r.expand(3).unwrap(), q(&[0, 1, 1]));
        let bad = RatFunc::new(UPoly::one(), UPoly::from_ints(&[0, 1])).unwrap();
        assert!(bad.expand(3).is_err());
        assert!(RatFunc::new(UPoly::one(), UPoly::zero()).is_err());
    }
}
