//! Walls as the linear factors of central charges, alcoves as sign patterns
//! on those walls, vanishing orders, and the order/positivity checks that a
//! family of charges must pass across a wall.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::charge::{crossed_charges, ChargeTable};
use crate::cohomology::TautLabel;
use crate::error::{Error, Result};
use crate::exactcore::rat::{int, rat};
use crate::exactcore::{factor_multiplicity, MPoly, Multiplicity, Rat, RatMatrix};

/// An affine hyperplane `h = 0`, normalised to primitive integer coefficients
/// with the first nonzero linear coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    h: MPoly,
}

impl Hyperplane {
    pub fn new(h: &MPoly) -> Result<Self> {
        if h.total_degree() != Some(1) {
            return Err(Error::Invalid(format!(
                "{h} is not a nonconstant affine form"
            )));
        }
        let vars = h.vars().to_vec();
        let coeffs: Vec<Rat> = vars
            .iter()
            .map(|v| h.coeff(&[(v.as_str(), 1)]))
            .chain(std::iter::once(h.constant_term()))
            .collect();
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rat::from(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead_neg = ints
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        let scale = Rat::new(den, if lead_neg { -g } else { g });
        Ok(Hyperplane { h: h.scale(&scale) })
    }

    pub fn parse(s: &str, vars: &[String]) -> Result<Self> {
        Self::new(&MPoly::parse(s)?.with_vars(vars)?)
    }

    pub fn form(&self) -> &MPoly {
        &self.h
    }

    /// `(linear coefficients in variable order, constant)` for sorting and output.
    pub fn coefficients(&self) -> (Vec<Rat>, Rat) {
        let lin = self
            .h
            .vars()
            .iter()
            .map(|v| self.h.coeff(&[(v.as_str(), 1)]))
            .collect();
        (lin, self.h.constant_term())
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        self.h.eval(point)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.h)
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Linear factors of a polynomial of degree at most two, with multiplicity,
/// and whatever is left over when the rest does not split over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub linear: Vec<(Hyperplane, u32)>,
    #[serde(serialize_with = "opt_poly")]
    pub nonlinear: Option<MPoly>,
}

fn opt_poly<S: Serializer>(p: &Option<MPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rat::new(n, d))
}

/// Symmetric matrix `M` with `f = x̂ᵀ M x̂`, `x̂ = (x, 1)`.
fn homogenized_matrix(f: &MPoly) -> RatMatrix {
    let vars = f.vars();
    let k = vars.len();
    let mut m = RatMatrix::zeros(k + 1, k + 1);
    let half = rat(1, 2);
    for i in 0..k {
        m.set(i, i, f.coeff(&[(vars[i].as_str(), 2)]));
        for j in i + 1..k {
            let c = f.coeff(&[(vars[i].as_str(), 1), (vars[j].as_str(), 1)]) * &half;
            m.set(i, j, c.clone());
            m.set(j, i, c);
        }
        let c = f.coeff(&[(vars[i].as_str(), 1)]) * &half;
        m.set(i, k, c.clone());
        m.set(k, i, c);
    }
    m.set(k, k, f.constant_term());
    m
}

/// `Σ_i w_i x̂_i` as a polynomial over `vars`.
fn affine_form(vars: &[String], w: &[Rat]) -> MPoly {
    let k = vars.len();
    let terms = (0..=k).map(|i| {
        let mut e = vec![0u32; k];
        if i < k {
            e[i] = 1;
        }
        (e, w[i].clone())
    });
    MPoly::from_terms(vars.to_vec(), terms).expect("consistent lengths")
}

fn push_factor(out: &mut Vec<(Hyperplane, u32)>, h: &MPoly, k: u32) -> Result<()> {
    if h.total_degree() != Some(1) {
        return Ok(());
    }
    let h = Hyperplane::new(h)?;
    match out.iter_mut().find(|(g, _)| *g == h) {
        Some((_, m)) => *m += k,
        None => out.push((h, k)),
    }
    Ok(())
}

/// Splits `f` into linear factors over ℚ when its degree is at most two.
/// Higher-degree input is returned whole as the nonlinear part.
pub fn linear_factors(f: &MPoly) -> Result<Factorization> {
    let mut linear = Vec::new();
    let deg = match f.total_degree() {
        None | Some(0) => {
            return Ok(Factorization {
                linear,
                nonlinear: None,
            })
        }
        Some(d) => d,
    };
    if deg == 1 {
        push_factor(&mut linear, f, 1)?;
        return Ok(Factorization {
            linear,
            nonlinear: None,
        });
    }
    if deg > 2 {
        return Ok(Factorization {
            linear,
            nonlinear: Some(f.clone()),
        });
    }
    let vars = f.vars().to_vec();
    let m = homogenized_matrix(f);
    let n = m.nrows();
    let irreducible = Factorization {
        linear: Vec::new(),
        nonlinear: Some(f.clone()),
    };
    match m.rank() {
        1 => {
            let i = (0..n)
                .find(|&i| !m.get(i, i).is_zero())
                .expect("rank-one symmetric has a nonzero diagonal");
            push_factor(&mut linear, &affine_form(&vars, m.row(i)), 2)?;
        }
        2 => {
            // a symmetric rank-two matrix has a nonsingular 2x2 principal block
            let (i, j) = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| m.get(i, i) * m.get(j, j) != m.get(i, j) * m.get(i, j))
                .expect("rank two");
            let b = RatMatrix::from_rows(vec![
                vec![m.get(i, i).clone(), m.get(i, j).clone()],
                vec![m.get(j, i).clone(), m.get(j, j).clone()],
            ])?;
            let bi = b.inverse()?;
            // f = yᵀ B⁻¹ y with y = (M_i·x̂, M_j·x̂)
            let (al, be, ga) = (
                bi.get(0, 0).clone(),
                bi.get(0, 1).clone(),
                bi.get(1, 1).clone(),
            );
            let y1 = affine_form(&vars, m.row(i));
            let y2 = affine_form(&vars, m.row(j));
            let Some(r) = rat_sqrt(&(&be * &be - &al * &ga)) else {
                return Ok(irreducible);
            };
            if al.is_zero() {
                // y2·(2β y1 + γ y2)
                push_factor(&mut linear, &y2, 1)?;
                push_factor(
                    &mut linear,
                    &(&y1.scale(&(&be * int(2))) + &y2.scale(&ga)),
                    1,
                )?;
            } else {
                for root in [(-&be + &r) / &al, (-&be - &r) / &al] {
                    push_factor(&mut linear, &(&y1 - &y2.scale(&root)), 1)?;
                }
            }
        }
        _ => return Ok(irreducible),
    }
    Ok(Factorization {
        linear,
        nonlinear: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallSet {
    pub walls: Vec<Hyperplane>,
    /// Factors that do not split into linear forms, by label.
    pub nonlinear: Vec<(String, String)>,
}

/// Deduplicated linear factors of every charge, in a canonical order.
pub fn walls_from_charges(z: &ChargeTable) -> Result<WallSet> {
    let mut walls: Vec<Hyperplane> = Vec::new();
    let mut nonlinear = Vec::new();
    for (a, p) in &z.entries {
        let fac = linear_factors(p)?;
        for (h, _) in fac.linear {
            if !walls.contains(&h) {
                walls.push(h);
            }
        }
        if let Some(q) = fac.nonlinear {
            nonlinear.push((z.group.simple_name(*a), q.to_string()));
        }
    }
    walls.sort_by_key(|h| {
        let (lin, c) = h.coefficients();
        (lin.into_iter().map(|x| -x).collect::<Vec<_>>(), -c)
    });
    Ok(WallSet { walls, nonlinear })
}

pub fn vanishing_order_on_wall(z: &MPoly, h: &Hyperplane) -> Result<Multiplicity> {
    let vars = union_vars(z.vars(), h.form().vars());
    factor_multiplicity(&z.with_vars(&vars)?, &h.form().with_vars(&vars)?)
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut v = a.to_vec();
    v.extend(b.iter().filter(|x| !a.contains(x)).cloned());
    v
}

/// Optional parallelepiped used to place grid points: `origin + Σ t_k e_k`
/// with `0 < t_k < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub origin: Vec<Rat>,
    pub edges: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alcove {
    pub vars: Vec<String>,
    /// `(wall, sign)` with `sign · h > 0` inside.
    pub constraints: Vec<(Hyperplane, i8)>,
    pub sample: Vec<Rat>,
    pub frame: Option<Frame>,
}

impl Alcove {
    /// Takes the sign of every wall at `sample`; the sample must avoid all walls.
    pub fn from_sample(
        vars: &[String],
        walls: &[Hyperplane],
        sample: Vec<Rat>,
        frame: Option<Frame>,
    ) -> Result<Self> {
        if sample.len() != vars.len() {
            return Err(Error::Mismatch(
                "sample point has the wrong dimension".into(),
            ));
        }
        let mut constraints = Vec::new();
        for h in walls {
            let h = Hyperplane::new(&h.form().with_vars(vars)?)?;
            let v = h.eval(&sample)?;
            if v.is_zero() {
                return Err(Error::Invalid(format!("sample lies on the wall {h}")));
            }
            constraints.push((h, if v.is_positive() { 1 } else { -1 }));
        }
        Ok(Alcove {
            vars: vars.to_vec(),
            constraints,
            sample,
            frame,
        })
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        for (h, s) in &self.constraints {
            let v = h.eval(x)?;
            if (v * int(*s as i64)) <= Rat::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Interior lattice points: cell centres of a `grid^dim` subdivision of the
    /// frame (or of the unit box around the sample), kept when strictly inside.
    pub fn grid_points(&self, grid: usize) -> Result<Vec<Vec<Rat>>> {
        let dim = self.vars.len();
        let (origin, edges) = match &self.frame {
            Some(f) => (f.origin.clone(), f.edges.clone()),
            None => {
                let origin = self.sample.iter().map(|x| x - int(1)).collect();
                let edges = (0..dim)
                    .map(|i| (0..dim).map(|j| int(if i == j { 2 } else { 0 })).collect())
                    .collect();
                (origin, edges)
            }
        };
        let mut out = Vec::new();
        if grid == 0 {
            return Ok(out);
        }
        let mut idx = vec![0usize; edges.len()];
        loop {
            let mut p = origin.clone();
            for (e, &k) in edges.iter().zip(&idx) {
                let t = rat(2 * k as i64 + 1, 2 * grid as i64);
                for (x, ei) in p.iter_mut().zip(e) {
                    *x += &t * ei;
                }
            }
            if self.contains(&p)? {
                out.push(p);
            }
            let mut c = 0;
            while c < idx.len() {
                idx[c] += 1;
                if idx[c] < grid {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
            if c == idx.len() {
                break;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityWitness {
    pub label: String,
    pub point: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub points_checked: usize,
    /// Smallest value seen for each label, with where it was attained.
    pub minima: Vec<PositivityWitness>,
    pub failures: Vec<PositivityWitness>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.points_checked > 0 && self.failures.is_empty()
    }
}

fn witness(label: String, point: &[Rat], value: &Rat) -> PositivityWitness {
    PositivityWitness {
        label,
        point: point.iter().map(crate::exactcore::rat_string).collect(),
        value: crate::exactcore::rat_string(value),
    }
}

/// Exact evaluation of every charge on the interior grid plus the sample point.
pub fn positivity_on_alcove(z: &ChargeTable, a: &Alcove, grid: usize) -> Result<PositivityReport> {
    let mut pts = a.grid_points(grid)?;
    if pts.is_empty() {
        return Ok(PositivityReport {
            points_checked: 0,
            minima: Vec::new(),
            failures: Vec::new(),
        });
    }
    if a.contains(&a.sample)? {
        pts.push(a.sample.clone());
    }
    let mut minima = Vec::new();
    let mut failures = Vec::new();
    for (lab, p) in &z.entries {
        let p = p.with_vars(&a.vars)?;
        let name = z.group.simple_name(*lab);
        let mut best: Option<(Rat, &Vec<Rat>)> = None;
        for x in &pts {
            let v = p.eval(x)?;
            if !v.is_positive() {
                failures.push(witness(name.clone(), x, &v));
            }
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, x));
            }
        }
        let (v, x) = best.expect("nonempty grid");
        minima.push(witness(name, x, &v));
    }
    Ok(PositivityReport {
        points_checked: pts.len(),
        minima,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RvscReport {
    pub wall: Hyperplane,
    /// Vanishing order of each charge on this side of the wall.
    pub orders: Vec<(String, Multiplicity)>,
    pub order_two: Vec<String>,
    pub order_one: Vec<String>,
    /// Some label vanishes on the wall.
    pub has_vanishing: bool,
    /// Exactly one label of order two and none of order one.
    pub single_order_two: bool,
    /// Only order-one labels vanish.
    pub order_one_only: bool,
    /// The far-side table equals the near side pushed through the class matrix.
    pub crossed_consistent: Option<bool>,
    pub pass: bool,
}

/// Order bookkeeping across the wall `h` between alcove `A` (charges `za`)
/// and its neighbour `A'` (charges `za2`), optionally checking that `za2`
/// is `za` transported along the class matrix `s`.
pub fn rvsc_check_pair(
    za: &ChargeTable,
    za2: &ChargeTable,
    h: &Hyperplane,
    s: Option<&RatMatrix>,
) -> Result<RvscReport> {
    if za.labels() != za2.labels() {
        return Err(Error::Mismatch(
            "charge tables over different labels".into(),
        ));
    }
    let mut orders = Vec::new();
    let (mut two, mut one) = (Vec::new(), Vec::new());
    for (lab, p) in &za.entries {
        let name = za.group.simple_name(*lab);
        let k = vanishing_order_on_wall(p, h)?;
        match k {
            Multiplicity::Finite(2) => two.push(name.clone()),
            Multiplicity::Finite(1) => one.push(name.clone()),
            _ => {}
        }
        orders.push((name, k));
    }
    let has_vanishing = orders.iter().any(|(_, k)| *k != Multiplicity::Finite(0));
    let higher = orders.iter().any(|(_, k)| {
        matches!(k, Multiplicity::Finite(n) if *n > 2) || *k == Multiplicity::Infinite
    });
    let single_order_two = two.len() == 1 && one.is_empty() && !higher;
    let order_one_only = !one.is_empty() && two.is_empty() && !higher;
    let crossed_consistent = match s {
        Some(s) => Some(crossed_charges(za, s)? == *za2),
        None => None,
    };
    let pass =
        has_vanishing && (single_order_two || order_one_only) && crossed_consistent != Some(false);
    Ok(RvscReport {
        wall: h.clone(),
        orders,
        order_two: two,
        order_one: one,
        has_vanishing,
        single_order_two,
        order_one_only,
        crossed_consistent,
        pass,
    })
}

/// Labels with positive vanishing order on `h`.
pub fn vanishing_labels(z: &ChargeTable, h: &Hyperplane) -> Result<Vec<(TautLabel, Multiplicity)>> {
    let mut out = Vec::new();
    for (a, p) in &z.entries {
        let k = vanishing_order_on_wall(p, h)?;
        if k != Multiplicity::Finite(0) {
            out.push((*a, k));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap().with_vars(&vars()).unwrap()
    }

    #[test]
    fn normalisation() {
        let h = Hyperplane::new(&p("-a - b - 1/2")).unwrap();
        assert_eq!(h.form(), &p("2*a + 2*b + 1"));
        assert_eq!(Hyperplane::new(&p("-3*b")).unwrap().form(), &p("b"));
        assert!(Hyperplane::new(&p("3")).is_err());
    }

    #[test]
    fn splits_products_and_squares() {
        let f = linear_factors(&p("-(2*a+1)*b")).unwrap();
        assert_eq!(f.nonlinear, None);
        let mut got: Vec<_> = f.linear.iter().map(|(h, k)| (h.to_string(), *k)).collect();
        got.sort();
        assert_eq!(got, vec![("2*a + 1".to_string(), 1), ("b".to_string(), 1)]);
        let sq = linear_factors(&p("1/8*(2*a-2*b-1)^2")).unwrap();
        assert_eq!(
            sq.linear,
            vec![(Hyperplane::new(&p("2*a-2*b-1")).unwrap(), 2)]
        );
        let circle = linear_factors(&p("-1/4*(4*a^2+4*b^2-1)")).unwrap();
        assert!(circle.linear.is_empty() && circle.nonlinear.is_some());
        // real roots but irrational
        let irr = linear_factors(&p("(2*a+2*b)^2 - 2")).unwrap();
        assert!(irr.linear.is_empty() && irr.nonlinear.is_some());
    }

    #[test]
    fn grid_stays_inside() {
        let h1 = Hyperplane::new(&p("a")).unwrap();
        let h2 = Hyperplane::new(&p("b")).unwrap();
        let a = Alcove::from_sample(&vars(), &[h1, h2], vec![rat(1, 2), rat(1, 2)], None).unwrap();
        let pts = a.grid_points(4).unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|x| x[0].is_positive() && x[1].is_positive()));
    }
}
