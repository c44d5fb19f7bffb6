//! Fixture-backed verification suites.
//!
//! Each check recomputes a quantity from first principles and compares it
//! with a data file. `Report` lines carry information that is shown but
//! never asserted; only `Fail` lines make a suite fail.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alcoves::{
    positivity_on_alcove, rvsc_check_pair, vanishing_order_on_wall, walls_from_charges, Hyperplane,
};
use crate::charge::{central_charges, crossed_charges, solve_functionals, ChargeTable, Group};
use crate::cohomology::{
    ch_line_bundle, ch_tautological, exp_divisor, geometric_from_ch, localization_sum, ring_mul,
    CohClass, CohLabel, TautLabel,
};
use crate::error::{Error, Result};
use crate::exactcore::rat::{int, rat_string};
use crate::exactcore::{MPoly, Multiplicity, Partition, Rat, RatMatrix};
use crate::fixtures::{
    fill, fill_poly, parse_matrix, B2Charges, B2Walls, B2ChClasses, CyclicCharges, CyclicInversion,
    CyclicWalls, Fixtures, Localization, PoincareRanges, QuiverRuns,
};
use crate::ktheory::{
    double_tilt_classes, dual_basis, euler_form, format_class, gram_transform, pairing,
    parse_class, permutation_equivalent, single_tilt_classes, ExtTable,
};
use crate::poincare::{
    alternating_sum_tau_i, closed_form_tau_i, fake_degree, kc_identity_check,
    koszul_trivial_closed_form, koszul_trivial_sum, value_at_one, CherednikParams,
};
use crate::quiver::{run_mutation, Algebra, MutationRun, QuiverSpec, Section};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    All,
    Charge,
    Ktheory,
    Walls,
    Poincare,
    Quiver,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::All => "all",
            SuiteName::Charge => "charge",
            SuiteName::Ktheory => "ktheory",
            SuiteName::Walls => "walls",
            SuiteName::Poincare => "poincare",
            SuiteName::Quiver => "quiver",
        }
    }

    fn members(self) -> Vec<SuiteName> {
        use SuiteName::*;
        match self {
            All => vec![Charge, Ktheory, Walls, Poincare, Quiver],
            s => vec![s],
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use SuiteName::*;
        [All, Charge, Ktheory, Walls, Poincare, Quiver]
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Report,
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: SuiteName,
    pub name: String,
    /// Acceptance criterion this check belongs to, if any.
    pub criterion: Option<u8>,
    pub fixture: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Checks tagged with criterion `n`; `None` when there are none.
    pub fn criterion(&self, n: u8) -> Option<bool> {
        let mut it = self
            .checks
            .iter()
            .filter(|c| c.criterion == Some(n))
            .peekable();
        it.peek()?;
        Some(it.all(|c| c.status != Status::Fail))
    }
}

struct Ctx<'a> {
    fx: &'a Fixtures,
    suite: SuiteName,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn push(
        &mut self,
        file: &str,
        name: impl Into<String>,
        criterion: Option<u8>,
        status: Status,
        detail: impl Into<String>,
    ) -> Result<()> {
        let anchor = self.fx.anchor(file)?.to_string();
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            criterion,
            fixture: file.into(),
            anchor,
            status,
            detail: detail.into(),
        });
        Ok(())
    }
}

pub fn run_suite(name: SuiteName, fx: &Fixtures) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for s in name.members() {
        let mut cx = Ctx {
            fx,
            suite: s,
            checks: Vec::new(),
        };
        match s {
            SuiteName::Charge => charge_suite(&mut cx)?,
            SuiteName::Ktheory => ktheory_suite(&mut cx)?,
            SuiteName::Walls => walls_suite(&mut cx)?,
            SuiteName::Poincare => poincare_suite(&mut cx)?,
            SuiteName::Quiver => quiver_suite(&mut cx)?,
            SuiteName::All => unreachable!("expanded by members"),
        }
        checks.extend(cx.checks);
    }
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(SuiteReport {
        suite: name,
        checks,
        passed,
    })
}

fn table_lookup<'a>(t: &'a ChargeTable, name: &str) -> Result<&'a MPoly> {
    t.entries
        .iter()
        .find(|(a, _)| t.group.simple_name(*a) == name)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::Fixture(format!("label {name} not in the computed table")))
}

/// `C0..C4` read off a B₂ functional: constant, `a`, `b`, `a²` and `(ab - 2a²)/4`.
pub fn b2_coefficients(ell: &MPoly) -> Vec<Rat> {
    let a2 = ell.coeff(&[("a", 2)]);
    let ab = ell.coeff(&[("a", 1), ("b", 1)]);
    vec![
        ell.constant_term(),
        ell.coeff(&[("a", 1)]),
        ell.coeff(&[("b", 1)]),
        a2.clone(),
        (ab - a2 * int(2)) / int(4),
    ]
}

fn charge_suite(cx: &mut Ctx) -> Result<()> {
    let f = "b2_charges.json";
    let data: B2Charges = cx.fx.load(f)?;
    let ell = solve_functionals(Group::B2)?;
    let z = central_charges(&ell)?;
    for e in &data.ell {
        let got = table_lookup(&ell, &e.label)?;
        let ok = *got == e.parse(&data.vars)?;
        cx.push(
            f,
            format!("B2 functional {}", e.label),
            Some(1),
            verdict(ok),
            format!("{got}"),
        )?;
    }
    for row in &data.coefficients.rows {
        let got = b2_coefficients(table_lookup(&ell, &row.label)?);
        let text: Vec<String> = got.iter().map(rat_string).collect();
        cx.push(
            f,
            format!("B2 coefficient row {}", row.label),
            None,
            verdict(got == row.values),
            text.join(", "),
        )?;
    }
    for e in &data.z {
        let got = table_lookup(&z, &e.label)?;
        let ok = *got == e.parse(&data.vars)?;
        cx.push(
            f,
            format!("B2 central charge {}", e.label),
            Some(1),
            verdict(ok),
            format!("{got}"),
        )?;
    }

    let f = "cyclic_charges.json";
    let data: CyclicCharges = cx.fx.load(f)?;
    for &l in &data.ls {
        let g = Group::Cyclic(l);
        let ell = solve_functionals(g)?;
        let z = central_charges(&ell)?;
        let rows = data.expand(l)?;
        let mut bad_ell = Vec::new();
        let mut bad_z = Vec::new();
        for r in &rows {
            if ell.get(r.label) != Some(&r.ell) {
                bad_ell.push(g.simple_name(r.label));
            }
            if z.get(r.label) != Some(&r.z) {
                bad_z.push(g.simple_name(r.label));
            }
        }
        let describe = |bad: &[String], t: &ChargeTable| {
            if bad.is_empty() {
                format!("{} entries agree", rows.len())
            } else {
                let shown: Vec<String> = bad
                    .iter()
                    .map(|n| {
                        format!(
                            "{n}: computed {}",
                            table_lookup(t, n)
                                .map(|p| p.to_string())
                                .unwrap_or_default()
                        )
                    })
                    .collect();
                format!("differs at {}", shown.join("; "))
            }
        };
        let d_ell = describe(&bad_ell, &ell);
        let d_z = describe(&bad_z, &z);
        cx.push(
            f,
            format!("functionals l={l}"),
            Some(2),
            verdict(bad_ell.is_empty()),
            d_ell,
        )?;
        cx.push(
            f,
            format!("central charges l={l}"),
            Some(2),
            verdict(bad_z.is_empty()),
            d_z,
        )?;
    }

    let f = "b2_ch_classes.json";
    let data: B2ChClasses = cx.fx.load(f)?;
    let images: Vec<(String, MPoly)> = data
        .dictionary
        .iter()
        .map(|(k, v)| Ok((k.clone(), MPoly::parse(v)?)))
        .collect::<Result<_>>()?;
    let images: Vec<(&str, MPoly)> = images
        .iter()
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();
    for c in &data.classes {
        let lab = TautLabel::parse(&c.label, 2)?;
        let p = MPoly::parse(&c.ch)?.substitute(&images);
        let free_of_f = p.degree_in("f") == 0;
        let mut terms = vec![(CohLabel::One, p.constant_term())];
        for (name, b) in [
            ("d0", CohLabel::D(0)),
            ("d1", CohLabel::D(1)),
            ("p1", CohLabel::P(1)),
            ("s1", CohLabel::S(1)),
        ] {
            terms.push((b, p.coeff(&[(name, 1)])));
        }
        let got = CohClass::from_terms(2, &terms)?;
        let want = ch_tautological(2, lab)?;
        let ok = free_of_f && p.total_degree().unwrap_or(0) <= 1 && got == want;
        cx.push(
            f,
            format!("B2 Chern character {}", c.label),
            None,
            verdict(ok),
            format!("{want}"),
        )?;
    }

    let f = "cyclic_inversion.json";
    let data: CyclicInversion = cx.fx.load(f)?;
    for &l in &data.ls {
        let want = data.expand(l)?;
        let got: BTreeMap<CohLabel, BTreeMap<TautLabel, Rat>> = geometric_from_ch(l)?
            .into_iter()
            .map(|(b, combo)| (b, combo.into_iter().collect()))
            .collect();
        let bad: Vec<String> = got
            .iter()
            .filter(|(b, c)| want.get(b) != Some(c))
            .map(|(b, _)| b.to_string())
            .collect();
        let ok = bad.is_empty() && got.len() == want.len();
        let detail = if ok {
            format!("{} basis elements agree", got.len())
        } else {
            format!("differs at {}", bad.join(", "))
        };
        cx.push(
            f,
            format!("geometric basis from Chern characters l={l}"),
            Some(7),
            verdict(ok),
            detail,
        )?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x3a11_c0de);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let l = rng.gen_range(2..=5usize);
        let n: Vec<i64> = (0..l).map(|_| rng.gen_range(-3..=3)).collect();
        let m: Vec<i64> = (0..l).map(|_| rng.gen_range(-3..=3)).collect();
        let sum: Vec<i64> = n.iter().zip(&m).map(|(a, b)| a + b).collect();
        let lhs = ring_mul(&ch_line_bundle(l, &n)?, &ch_line_bundle(l, &m)?)?;
        if lhs != ch_line_bundle(l, &sum)? || ch_line_bundle(l, &n)? != exp_divisor(l, &n)? {
            failures.push(format!("l={l} n={n:?} m={m:?}"));
        }
    }
    let detail = if failures.is_empty() {
        "100 exponent pairs".to_string()
    } else {
        failures.join("; ")
    };
    cx.push(
        "cyclic_inversion.json",
        "ch(O(n))·ch(O(m)) = ch(O(n+m))",
        Some(7),
        verdict(failures.is_empty()),
        detail,
    )?;

    let f = "localization.json";
    let data: Localization = cx.fx.load(f)?;
    for t in &data.tables {
        let got = localization_sum(&t.table())?;
        match t.expected()? {
            Some(want) => cx.push(
                f,
                format!("localization sum on {}", t.component),
                Some(7),
                verdict(got == want),
                rat_string(&got),
            )?,
            None => cx.push(
                f,
                format!("localization sum on {}", t.component),
                Some(7),
                Status::Report,
                rat_string(&got),
            )?,
        }
    }
    Ok(())
}

fn labels_of(v: &[String]) -> Vec<String> {
    v.to_vec()
}

/// Columns of the returned matrix are the parsed classes.
fn class_columns(classes: &[String], labels: &[String]) -> Result<RatMatrix> {
    let cols = classes
        .iter()
        .map(|c| parse_class(c, labels))
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_rows(cols)?.transpose())
}

fn class_rows(classes: &[String], labels: &[String]) -> Result<RatMatrix> {
    RatMatrix::from_rows(
        classes
            .iter()
            .map(|c| parse_class(c, labels))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn ktheory_suite(cx: &mut Ctx) -> Result<()> {
    let ext: ExtTable = cx.fx.load("b2_ext.json")?;
    let f = "b2_walls.json";
    let walls: B2Walls = cx.fx.load(f)?;
    let sl = labels_of(&walls.simple_labels);
    let pl = labels_of(&walls.projective_labels);
    let e = euler_form(&ext)?;
    let e_want = parse_matrix(&walls.euler)?;
    cx.push(
        f,
        "Euler form from the Ext table",
        Some(3),
        verdict(e == e_want),
        format!("{e}").trim_end().replace('\n', " "),
    )?;

    let z = central_charges(&solve_functionals(Group::B2)?)?;
    for w in &walls.walls {
        let theta = ext.index(&w.theta)?;
        let s = double_tilt_classes(&ext, theta)?;
        let s_want = class_columns(&w.simples, &sl)?;
        let shown: Vec<String> = (0..s.ncols())
            .map(|j| format_class(&s.col(j), &sl))
            .collect();
        cx.push(
            f,
            format!("simple classes across {}", w.name),
            Some(4),
            verdict(s == s_want),
            shown.join(", "),
        )?;

        let q = dual_basis(&s)?;
        let q_want = class_rows(&w.projectives, &pl)?;
        let shown: Vec<String> = (0..q.nrows())
            .map(|i| format_class(q.row(i), &pl))
            .collect();
        cx.push(
            f,
            format!("projective classes across {}", w.name),
            Some(3),
            verdict(q == q_want),
            shown.join(", "),
        )?;
        let delta = pairing(&q, &s)? == RatMatrix::identity(s.nrows());
        cx.push(
            f,
            format!("projective/simple pairing across {}", w.name),
            Some(3),
            verdict(delta),
            "",
        )?;

        let listed = class_rows(&w.projectives_listed, &pl)?;
        if listed != q_want {
            let rows: Vec<String> = (0..listed.nrows())
                .filter(|&i| listed.row(i) != q_want.row(i))
                .map(|i| {
                    let off = (0..s.ncols())
                        .map(|j| {
                            listed
                                .row(i)
                                .iter()
                                .zip(s.col(j))
                                .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
                        })
                        .map(|x| rat_string(&x))
                        .collect::<Vec<_>>();
                    format!("row {i} as listed pairs to ({})", off.join(", "))
                })
                .collect();
            cx.push(
                f,
                format!("listed projective classes across {}", w.name),
                Some(3),
                Status::Report,
                rows.join("; "),
            )?;
        }

        if let Some(g) = &w.gram {
            let got = gram_transform(&e, &s)?;
            let want = parse_matrix(g)?;
            cx.push(
                f,
                format!("Gram matrix across {}", w.name),
                Some(3),
                verdict(got == want),
                format!("{got}").trim_end().replace('\n', " "),
            )?;
            let perm = permutation_equivalent(&e, &got)?;
            cx.push(
                f,
                format!("Gram matrix across {} is not a relabelling", w.name),
                Some(3),
                verdict(!perm),
                format!("permutation equivalent: {perm}"),
            )?;
        }
        if let Some(single) = &w.single_tilt_projectives {
            let q1 = dual_basis(&single_tilt_classes(&ext, theta)?)?;
            let ok = q1 == class_rows(single, &pl)?;
            cx.push(
                f,
                format!("single-tilt projective classes at {}", w.theta),
                None,
                verdict(ok),
                "",
            )?;
        }
        if !w.crossed.is_empty() {
            let crossed = crossed_charges(&z, &s)?;
            for c in &w.crossed {
                let got = table_lookup(&crossed, &c.label)?;
                let ok = *got == c.parse(&Group::B2.vars())?;
                cx.push(
                    f,
                    format!("crossed charge {} across {}", c.label, w.name),
                    Some(4),
                    verdict(ok),
                    format!("{got}"),
                )?;
            }
            for c in &w.crossed_listed {
                let listed = c.parse(&Group::B2.vars())?;
                let got = table_lookup(&crossed, &c.label)?;
                let detail = format!(
                    "listed {listed}, differs from computed by {}",
                    got - &listed
                );
                cx.push(
                    f,
                    format!("listed crossed charge {} across {}", c.label, w.name),
                    None,
                    Status::Report,
                    detail,
                )?;
            }
        }
    }
    Ok(())
}

fn walls_suite(cx: &mut Ctx) -> Result<()> {
    let f = "b2_walls.json";
    let walls: B2Walls = cx.fx.load(f)?;
    let ext: ExtTable = cx.fx.load("b2_ext.json")?;
    let z = central_charges(&solve_functionals(Group::B2)?)?;
    let alcove = walls.alcove.build()?;
    let rep = positivity_on_alcove(&z, &alcove, walls.alcove.grid)?;
    let minima: Vec<String> = rep
        .minima
        .iter()
        .map(|m| format!("{} >= {}", m.label, m.value))
        .collect();
    cx.push(
        f,
        format!(
            "positivity on the initial alcove, grid {}",
            walls.alcove.grid
        ),
        Some(5),
        verdict(rep.passed()),
        format!("{} points; {}", rep.points_checked, minima.join(", ")),
    )?;
    let found = walls_from_charges(&z)?;
    let listed = walls.alcove.walls()?;
    let same = found.walls.len() == listed.len() && listed.iter().all(|h| found.walls.contains(h));
    let shown: Vec<String> = found.walls.iter().map(|h| h.to_string()).collect();
    cx.push(
        f,
        "walls are the linear factors of the charges",
        None,
        verdict(same),
        shown.join(", "),
    )?;

    for w in &walls.walls {
        let h = Hyperplane::parse(&w.form, &walls.alcove.vars)?;
        let s = double_tilt_classes(&ext, ext.index(&w.theta)?)?;
        let crossed = crossed_charges(&z, &s)?;
        let r = rvsc_check_pair(&z, &crossed, &h, Some(&s))?;
        let l4 = r.orders.iter().find(|(n, _)| n == "L4").map(|(_, k)| *k);
        let ok = r.pass
            && r.single_order_two
            && r.order_two == [w.vanishing.clone()]
            && l4 == Some(Multiplicity::Finite(0));
        let orders: Vec<String> = r.orders.iter().map(|(n, k)| format!("{n}:{k}")).collect();
        cx.push(
            f,
            format!("vanishing orders on {h}"),
            Some(5),
            verdict(ok),
            orders.join(" "),
        )?;
    }

    let f = "cyclic_walls.json";
    let data: CyclicWalls = cx.fx.load(f)?;
    for &l in &data.ls {
        let g = Group::Cyclic(l);
        let zc = central_charges(&solve_functionals(g)?)?;
        let found = walls_from_charges(&zc)?;
        let initial = data.initial_walls(l)?;
        let ok = initial.iter().all(|h| found.walls.contains(h));
        cx.push(
            f,
            format!("initial walls l={l} are charge factors"),
            None,
            verdict(ok),
            format!("{} walls", initial.len()),
        )?;

        let labels: Vec<String> = g.labels().into_iter().map(|a| g.simple_name(a)).collect();
        for crossing in &data.crossings {
            let mut any_basis = false;
            let mut bases = Vec::new();
            for reading in &data.readings {
                let classes = data.classes(crossing, reading, l)?;
                let is_basis = classes.len() == labels.len()
                    && class_columns(&classes, &labels)?
                        .determinant()?
                        .abs()
                        .is_one();
                any_basis |= is_basis;
                cx.push(
                    f,
                    format!("{} l={l} reading {}", crossing.name, reading.name),
                    None,
                    Status::Report,
                    format!(
                        "{} classes for {} simples, unimodular basis: {is_basis}",
                        classes.len(),
                        labels.len()
                    ),
                )?;
                if is_basis {
                    bases.push(class_columns(&classes, &labels)?);
                }
            }
            cx.push(
                f,
                format!("{} l={l} has a reading giving a basis", crossing.name),
                None,
                verdict(any_basis),
                "",
            )?;
            if let (Some(next), Some(s)) = (&crossing.next_wall, bases.first()) {
                let h = Hyperplane::new(&fill_poly(next, l, &[("l", l as i64)])?)?;
                let crossed = crossed_charges(&zc, s)?;
                let mut orders = Vec::new();
                for lab in &crossing.next_wall_labels {
                    let name = fill(lab, &[("l", l as i64)])?;
                    let k = vanishing_order_on_wall(table_lookup(&crossed, &name)?, &h)?;
                    orders.push(format!("{name}:{k}"));
                }
                cx.push(
                    f,
                    format!("orders on {h} after {} l={l}", crossing.name),
                    None,
                    Status::Report,
                    orders.join(" "),
                )?;
            }
        }
    }
    Ok(())
}

/// Standard Young tableaux of shape `tau`, by removing corners.
pub fn count_standard_tableaux(tau: &[u32]) -> u64 {
    fn go(shape: &mut Vec<u32>, memo: &mut BTreeMap<Vec<u32>, u64>) -> u64 {
        if shape.iter().all(|&r| r == 0) {
            return 1;
        }
        if let Some(&v) = memo.get(shape.as_slice()) {
            return v;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            let corner = shape[i] > 0 && (i + 1 == shape.len() || shape[i + 1] < shape[i]);
            if corner {
                shape[i] -= 1;
                total += go(shape, memo);
                shape[i] += 1;
            }
        }
        memo.insert(shape.clone(), total);
        total
    }
    go(&mut tau.to_vec(), &mut BTreeMap::new())
}

fn poincare_suite(cx: &mut Ctx) -> Result<()> {
    let f = "poincare.json";
    let r: PoincareRanges = cx.fx.load(f)?;
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 1..=r.koszul.n_max {
        for m in 0..=r.koszul.m_max {
            for &p in &r.koszul.primes {
                let sum = koszul_trivial_sum(n, m, p, r.order)?;
                let closed = koszul_trivial_closed_form(n, m, p)?.expand(r.order)?;
                count += 1;
                if sum != closed {
                    bad.push(format!("n={n} m={m} p={p}"));
                }
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{count} cases to order {}", r.order)
    } else {
        bad.join("; ")
    };
    cx.push(
        f,
        "Koszul sum for the trivial representation",
        Some(6),
        verdict(bad.is_empty()),
        detail,
    )?;

    let mut bad = Vec::new();
    let mut count = 0;
    for n in 1..=r.alternating.n_max {
        for l in 1..=r.alternating.l_max {
            for &p in &r.alternating.primes {
                for i in 0..l {
                    for (m0, mi) in [(0, 0), (1, 0), (0, 1), (2, 1)] {
                        let mut m = vec![0; l as usize + 1];
                        m[0] = m0;
                        m[i as usize + 1] = mi;
                        let prm = CherednikParams { n, l, m, p };
                        let sum = alternating_sum_tau_i(&prm, i, r.order)?;
                        let closed = closed_form_tau_i(&prm, i)?.expand(r.order)?;
                        count += 1;
                        if sum != closed {
                            bad.push(format!("n={n} l={l} p={p} i={i} m0={m0} m{}={mi}", i + 1));
                        }
                    }
                }
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{count} cases to order {}", r.order)
    } else {
        bad.join("; ")
    };
    cx.push(
        f,
        "alternating sum for the one-row wreath characters",
        Some(6),
        verdict(bad.is_empty()),
        detail,
    )?;

    let bad: Vec<u32> = (0..=r.kc_n_max)
        .filter(|&n| !kc_identity_check(n))
        .collect();
    cx.push(
        f,
        format!("q-binomial identity for n <= {}", r.kc_n_max),
        Some(6),
        verdict(bad.is_empty()),
        format!("{bad:?}"),
    )?;

    let mut bad = Vec::new();
    let mut count = 0;
    for size in 1..=r.fake_degree_max {
        for tau in Partition::all(size) {
            count += 1;
            let at_one = value_at_one(&fake_degree(&tau));
            let want = count_standard_tableaux(tau.parts());
            if at_one != Some(want.into()) {
                bad.push(format!("{:?}", tau.parts()));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{count} partitions")
    } else {
        bad.join("; ")
    };
    cx.push(
        f,
        "fake degree at t=1 counts standard tableaux",
        Some(6),
        verdict(bad.is_empty()),
        detail,
    )?;
    Ok(())
}

fn summarize(run: &MutationRun) -> String {
    run.steps
        .iter()
        .map(|s| {
            let pairing = match s.dual_pairing {
                Some(b) => b.to_string(),
                None => "undecided".into(),
            };
            format!(
                "step {}: mult {:?} dim {:?} injective {} pairing {}",
                s.record.step,
                s.record.multiplicities,
                s.record.dim_vector,
                s.record.injective,
                pairing
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Same verdicts and the same dimensions in every degree visible at the smaller truncation.
pub fn stable_between(a: &MutationRun, b: &MutationRun) -> bool {
    let d = a.trunc.min(b.trunc);
    a.steps.len() == b.steps.len()
        && a.steps.iter().zip(&b.steps).all(|(x, y)| {
            x.record.multiplicities == y.record.multiplicities
                && x.record.injective == y.record.injective
                && x.dual_pairing == y.dual_pairing
                && x.record
                    .dims
                    .iter()
                    .zip(&y.record.dims)
                    .all(|(u, v)| u[..=d.min(u.len() - 1)] == v[..=d.min(v.len() - 1)])
        })
}

fn quiver_suite(cx: &mut Ctx) -> Result<()> {
    let f = "quiver_runs.json";
    let runs: QuiverRuns = cx.fx.load(f)?;
    for run in &runs.runs {
        let spec: QuiverSpec = cx.fx.load(&run.quiver)?;
        let alg = Algebra::from_spec(&spec, run.trunc)?;
        let alg1 = Algebra::from_spec(&spec, run.trunc + 1)?;
        let theta = alg.quiver.vertex(&run.theta)?;
        let q = run.quiver.as_str();
        if let Some(t) = run.total_dim {
            let got = alg.total_dim();
            cx.push(
                q,
                format!("{q} total dimension"),
                None,
                verdict(got == t),
                got.to_string(),
            )?;
        }
        let none = BTreeMap::new();
        let a = run_mutation(&alg, theta, run.steps, Section::Full, &none)?;
        let b = run_mutation(&alg1, theta, run.steps, Section::Full, &none)?;
        cx.push(
            q,
            format!("{q} mutations at {}", run.theta),
            None,
            Status::Report,
            summarize(&a),
        )?;
        cx.push(
            q,
            format!("{q} injective at every step"),
            Some(8),
            verdict(a.all_injective()),
            "",
        )?;
        let pairs: Vec<String> = a
            .steps
            .iter()
            .map(|s| s.dual_pairing.map_or("undecided".into(), |b| b.to_string()))
            .collect();
        cx.push(
            q,
            format!("{q} dual pairing after every step"),
            Some(8),
            verdict(a.all_dual()),
            pairs.join(", "),
        )?;
        cx.push(
            q,
            format!("{q} stable from D={} to D={}", run.trunc, run.trunc + 1),
            Some(8),
            verdict(stable_between(&a, &b)),
            "",
        )?;
        if let Some(want) = &run.expected_dim_vectors {
            let got: Vec<Vec<usize>> = a
                .steps
                .iter()
                .map(|s| s.record.dim_vector.clone())
                .collect();
            cx.push(
                f,
                format!("{q} dimension vectors"),
                Some(8),
                verdict(&got == want),
                format!("{got:?}"),
            )?;
        }
        if let Some(e) = &run.expected_degree0 {
            let v = alg.quiver.vertex(&e.vertex)?;
            let step = a
                .steps
                .get(e.step - 1)
                .ok_or_else(|| Error::Fixture(format!("run has no step {}", e.step)))?;
            let deg0: Vec<usize> = step
                .record
                .dims
                .iter()
                .map(|d| d.first().copied().unwrap_or(0))
                .collect();
            let ok = deg0
                .iter()
                .enumerate()
                .all(|(w, &x)| x == if w == v { e.dim } else { 0 });
            cx.push(
                f,
                format!("{q} degree-0 part after step {}", e.step),
                Some(8),
                verdict(ok),
                format!("{deg0:?}"),
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tableaux_by_hook_counts() {
        assert_eq!(count_standard_tableaux(&[3, 2]), 5);
        assert_eq!(count_standard_tableaux(&[2, 2, 2]), 5);
        assert_eq!(count_standard_tableaux(&[1]), 1);
    }

    #[test]
    fn suite_names() {
        assert_eq!("walls".parse::<SuiteName>().unwrap(), SuiteName::Walls);
        assert!("everything".parse::<SuiteName>().is_err());
        assert_eq!(SuiteName::All.members().len(), 5);
    }
}
