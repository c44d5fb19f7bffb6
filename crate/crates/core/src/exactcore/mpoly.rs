use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{rat_serde, rat_string, Rat};
use crate::error::{Error, Result};

/// Multivariate polynomial over the rationals with named variables.
///
/// Zero coefficients are never stored and every exponent vector has one entry
/// per variable. Binary operations align variable lists by union (left
/// operand's order first), and equality ignores unused variables.
#[derive(Clone, Debug, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

/// Vanishing order along a hyperplane; the zero polynomial vanishes to every order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(k) => s.serialize_u32(*k),
            Multiplicity::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

/// Graded lexicographic comparison of exponent vectors.
pub(crate) fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rat::one());
        MPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeated monomials.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if !seen.insert(v) {
                return Err(Error::Invalid(format!("duplicate variable {v:?}")));
            }
        }
        let mut p = MPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Mismatch(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    p.vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse_poly(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in graded-lex descending order (leading term first).
    pub fn terms(&self) -> Vec<(&[u32], &Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.total_degree().unwrap_or(0) == 0 {
            Some(self.constant_term())
        } else {
            None
        }
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coeff(&self, monomial: &[(&str, u32)]) -> Rat {
        let mut e = vec![0u32; self.vars.len()];
        for (v, k) in monomial {
            match self.var_index(v) {
                Some(i) => e[i] += k,
                None if *k == 0 => {}
                None => return Rat::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: &str, k: u32) -> MPoly {
        let Some(i) = self.var_index(var) else {
            return if k == 0 {
                self.clone()
            } else {
                MPoly {
                    vars: self.vars.clone(),
                    terms: BTreeMap::new(),
                }
            };
        };
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Variables that actually occur, in stored order.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    /// Re-expresses over `vars`, which must contain every occurring variable.
    pub fn with_vars(&self, vars: &[String]) -> Result<MPoly> {
        for v in self.used_vars() {
            if !vars.contains(&v) {
                return Err(Error::Mismatch(format!(
                    "variable {v:?} missing from target list"
                )));
            }
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = MPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[i].expect("checked above")] = k;
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::constant(Rat::one())
            .with_vars(&self.vars)
            .expect("constant");
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution `var -> image` for each listed variable.
    pub fn substitute(&self, images: &[(&str, MPoly)]) -> MPoly {
        let mut vars = self.vars.clone();
        for (_, g) in images {
            for v in &g.vars {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        let idx: HashMap<usize, &MPoly> = images
            .iter()
            .filter_map(|(v, g)| self.var_index(v).map(|i| (i, g)))
            .collect();
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut mono = vec![0u32; vars.len()];
            let mut factor: Option<MPoly> = None;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match idx.get(&i) {
                    None => mono[i] = k,
                    Some(g) => {
                        let gk = cache.entry((i, k)).or_insert_with(|| g.pow(k)).clone();
                        factor = Some(match factor {
                            None => gk,
                            Some(f) => &f * &gk,
                        });
                    }
                }
            }
            let mut base = MPoly {
                vars: vars.clone(),
                terms: BTreeMap::new(),
            };
            base.add_term(mono, c.clone());
            let term = match factor {
                None => base,
                Some(f) => &base * &f,
            };
            out = &out + &term;
        }
        out.with_vars(&vars).expect("superset")
    }

    /// `f(x - v)`: every variable `x_i` (in stored order) replaced by `x_i - v_i`.
    pub fn shift(&self, v: &[Rat]) -> Result<MPoly> {
        if v.len() != self.vars.len() {
            return Err(Error::Mismatch(format!(
                "shift vector of length {} for {} variables",
                v.len(),
                self.vars.len()
            )));
        }
        let images: Vec<(&str, MPoly)> = self
            .vars
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(x, c)| (x.as_str(), &MPoly::var(x) - &MPoly::constant(c.clone())))
            .collect();
        Ok(self.substitute(&images))
    }

    /// `f(x - v)` with the shift given by variable name.
    pub fn shift_named(&self, v: &[(&str, Rat)]) -> MPoly {
        let images: Vec<(&str, MPoly)> = v
            .iter()
            .map(|(x, c)| (*x, &MPoly::var(x) - &MPoly::constant(c.clone())))
            .collect();
        self.substitute(&images)
    }

    /// Evaluates at a point given in stored variable order.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.vars.len() {
            return Err(Error::Mismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates with values given by name; every occurring variable must be bound.
    pub fn eval_named(&self, point: &[(&str, Rat)]) -> Result<Rat> {
        let images: Vec<(&str, MPoly)> = point
            .iter()
            .map(|(x, c)| (*x, MPoly::constant(c.clone())))
            .collect();
        let r = self.substitute(&images);
        r.as_constant()
            .ok_or_else(|| Error::Invalid(format!("unbound variables {:?}", r.used_vars())))
    }

    /// Division with remainder by a single divisor in lex order.
    ///
    /// Returns `(q, r)` with `self = q*g + r` and no term of `r` divisible by
    /// the lex-leading term of `g`; `r = 0` iff `g` divides `self`.
    pub fn div_rem(&self, g: &MPoly) -> Result<(MPoly, MPoly)> {
        if g.is_zero() {
            return Err(Error::ZeroDivisor("polynomial division by zero".into()));
        }
        let vars = self.union_vars(g);
        let f = self.with_vars(&vars)?;
        let g = g.with_vars(&vars)?;
        let (lg, lc) = g
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero");
        let mut p = f;
        let mut q = MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        let mut r = MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        while let Some((e, c)) = p
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            if e.iter().zip(&lg).all(|(a, b)| a >= b) {
                let de: Vec<u32> = e.iter().zip(&lg).map(|(a, b)| a - b).collect();
                let mut t = MPoly {
                    vars: vars.clone(),
                    terms: BTreeMap::new(),
                };
                t.add_term(de, &c / &lc);
                p = &p - &(&t * &g);
                q = &q + &t;
            } else {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
        Ok((q, r))
    }

    fn var_index(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    fn union_vars(&self, other: &MPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn combine(&self, other: &MPoly, sign: i8) -> MPoly {
        let vars = self.union_vars(other);
        let mut out = self.with_vars(&vars).expect("union");
        for (e, c) in other.with_vars(&vars).expect("union").terms {
            out.add_term(e, if sign < 0 { -c } else { c });
        }
        out
    }
}

/// Largest `k` with `h^k | f`, found by repeated exact division.
pub fn factor_multiplicity(f: &MPoly, h: &MPoly) -> Result<Multiplicity> {
    if h.is_zero() {
        return Err(Error::ZeroDivisor("zero hyperplane".into()));
    }
    if h.total_degree() != Some(1) {
        return Err(Error::Invalid(format!("{h} is not affine-linear")));
    }
    if f.is_zero() {
        return Ok(Multiplicity::Infinite);
    }
    let mut k = 0;
    let mut cur = f.clone();
    loop {
        let (q, r) = cur.div_rem(h)?;
        if !r.is_zero() {
            return Ok(Multiplicity::Finite(k));
        }
        k += 1;
        cur = q;
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.combine(other, -1).is_zero()
    }
}

impl Eq for MPoly {}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{k}", self.vars[i])
                    }
                })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                f.write_str(&rat_string(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", rat_string(&a))?;
                }
                f.write_str(&mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        self.combine(o, 1)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self.combine(o, -1)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let vars = self.union_vars(o);
        let a = self.with_vars(&vars).expect("union");
        let b = o.with_vars(&vars).expect("union");
        let mut out = MPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                #[allow(clippy::suspicious_arithmetic_impl)]
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly { (&self).$m(&o) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, o: &MPoly) -> MPoly { (&self).$m(o) }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "rat_serde")]
    coeff: Rat,
    exps: Vec<u32>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    coeff: c.clone(),
                    exps: e.to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        MPoly::from_terms(j.vars, j.terms.into_iter().map(|t| (t.exps, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, rat};

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn shift_substitutes_x_minus_v() {
        let f = p("1/2(a+b+1)(a+b+2)");
        assert_eq!(f.shift(&[int(1), int(0)]).unwrap(), p("1/2(a+b)(a+b+1)"));
    }

    #[test]
    fn expansion_and_linearity() {
        let h = p("2a+2b+1");
        assert_eq!(&h * &h, p("4a^2+8a*b+4b^2+4a+4b+1"));
        let z0 = p("1/8(2a+2b+1)^2");
        assert_eq!(&z0 + &z0.scale(&int(-3)), z0.scale(&int(-2)));
    }

    #[test]
    fn multiplicity_examples() {
        let h = p("2a+2b+1");
        assert_eq!(
            factor_multiplicity(&p("(2a+2b+1)^2/8"), &h).unwrap(),
            Multiplicity::Finite(2)
        );
        assert_eq!(
            factor_multiplicity(&p("-1/4(4a^2+4b^2-1)"), &h).unwrap(),
            Multiplicity::Finite(0)
        );
        assert_eq!(
            factor_multiplicity(&MPoly::zero(), &h).unwrap(),
            Multiplicity::Infinite
        );
        assert!(factor_multiplicity(&h, &MPoly::zero()).is_err());
        assert!(factor_multiplicity(&h, &p("a^2")).is_err());
    }

    #[test]
    fn json_is_graded_lex_descending() {
        let f = p("1 + a + b^2 + a*b");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["a","b"],"terms":[{"coeff":"1","exps":[1,1]},{"coeff":"1","exps":[0,2]},{"coeff":"1","exps":[1,0]},{"coeff":"1","exps":[0,0]}]}"#
        );
        let back: MPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn division_remainder() {
        let (q, r) = p("a^2 - b^2 + 1").div_rem(&p("a - b")).unwrap();
        assert_eq!(r, MPoly::constant(int(1)));
        assert_eq!(q, p("a + b"));
        assert_eq!(p("x^2/2").eval(&[rat(1, 3)]).unwrap(), rat(1, 18));
    }
}
