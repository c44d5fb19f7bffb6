//! Versioned JSON data files and their manifest.
//!
//! The directory defaults to `fixtures/` next to this crate and can be moved
//! with the `WALLCROSS_FIXTURES` environment variable. Every data file
//! carries a `version` that must agree with its manifest entry.
//!
//! Families indexed by `l` are stored as templates: `{expr}` is replaced by
//! the value of a small index expression such as `i`, `l-1` or `k+1`, and in
//! polynomial templates `S` stands for `n1+...+n{l-1}`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::alcoves::{Alcove, Frame, Hyperplane};
use crate::cohomology::{CohLabel, FixedPointRow, FixedPointTable, TautLabel};
use crate::error::{Error, Result};
use crate::exactcore::rat::{parse_rat, rat_vec_serde};
use crate::exactcore::{MPoly, Rat, RatMatrix};

pub const ENV_VAR: &str = "WALLCROSS_FIXTURES";

pub fn default_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// An explicit path wins over the environment, which wins over the default.
pub fn resolve_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    match std::env::var_os(ENV_VAR) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => default_dir(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub version: u32,
    pub suite: String,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: String,
    pub files: BTreeMap<String, ManifestEntry>,
}

#[derive(Clone, Debug)]
pub struct Fixtures {
    dir: PathBuf,
    manifest: Manifest,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

impl Fixtures {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        let mpath = dir.join("manifest.json");
        if !mpath.is_file() {
            return Err(Error::Fixture(format!(
                "no manifest.json in {}",
                dir.display()
            )));
        }
        let manifest: Manifest = serde_json::from_str(&read(&mpath)?)
            .map_err(|e| Error::Fixture(format!("{}: {e}", mpath.display())))?;
        if manifest.files.is_empty() {
            return Err(Error::Fixture(format!(
                "{} lists no files",
                mpath.display()
            )));
        }
        Ok(Fixtures { dir, manifest })
    }

    pub fn from_env() -> Result<Self> {
        Self::open(resolve_dir(None))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn entry(&self, file: &str) -> Result<&ManifestEntry> {
        self.manifest
            .files
            .get(file)
            .ok_or_else(|| Error::Fixture(format!("{file} is not listed in the manifest")))
    }

    pub fn anchor(&self, file: &str) -> Result<&str> {
        Ok(&self.entry(file)?.anchor)
    }

    pub fn path(&self, file: &str) -> PathBuf {
        self.dir.join(file)
    }

    /// Reads `file`, checks its version against the manifest and decodes it.
    pub fn load<T: DeserializeOwned>(&self, file: &str) -> Result<T> {
        let want = self.entry(file)?.version;
        let path = self.path(file);
        let value: serde_json::Value = serde_json::from_str(&read(&path)?)
            .map_err(|e| Error::Fixture(format!("{file}: {e}")))?;
        let got = value.get("version").and_then(serde_json::Value::as_u64);
        if got != Some(u64::from(want)) {
            return Err(Error::Fixture(format!(
                "{file} has version {got:?}, manifest expects {want}"
            )));
        }
        serde_json::from_value(value).map_err(|e| Error::Fixture(format!("{file}: {e}")))
    }
}

/// Evaluates `3`, `i`, `l-2`, `k+1` and similar sums of integers and bound names.
pub fn eval_index(expr: &str, env: &[(&str, i64)]) -> Result<i64> {
    let bad = || Error::Parse(format!("bad index expression {expr:?}"));
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut total = 0i64;
    let mut sign = 1i64;
    let mut tok = String::new();
    let flush = |tok: &mut String, sign: i64, total: &mut i64| -> Result<()> {
        if tok.is_empty() {
            return Err(bad());
        }
        let v = match tok.parse::<i64>() {
            Ok(v) => v,
            Err(_) => env
                .iter()
                .find(|(n, _)| *n == tok.as_str())
                .map(|(_, v)| *v)
                .ok_or_else(bad)?,
        };
        *total += sign * v;
        tok.clear();
        Ok(())
    };
    for (pos, c) in s.chars().enumerate() {
        match c {
            '+' | '-' if pos == 0 => sign = if c == '-' { -1 } else { 1 },
            '+' | '-' => {
                flush(&mut tok, sign, &mut total)?;
                sign = if c == '-' { -1 } else { 1 };
            }
            _ => tok.push(c),
        }
    }
    flush(&mut tok, sign, &mut total)?;
    Ok(total)
}

/// Replaces every `{expr}` in `template` by its value under `env`.
pub fn fill(template: &str, env: &[(&str, i64)]) -> Result<String> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        let close = rest[open..]
            .find('}')
            .map(|c| open + c)
            .ok_or_else(|| Error::Parse(format!("unclosed brace in {template:?}")))?;
        out.push_str(&rest[..open]);
        out.push_str(&eval_index(&rest[open + 1..close], env)?.to_string());
        rest = &rest[close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// A polynomial template over `n0..n{l-1}`.
pub fn fill_poly(template: &str, l: usize, env: &[(&str, i64)]) -> Result<MPoly> {
    let sum = (1..l)
        .map(|k| format!("n{k}"))
        .collect::<Vec<_>>()
        .join("+");
    let text = fill(template, env)?.replace('S', &format!("({sum})"));
    let vars: Vec<String> = (0..l).map(|k| format!("n{k}")).collect();
    MPoly::parse(&text)?.with_vars(&vars)
}

/// Index bindings for an `index` field: none, `i` in `1..l`, or `i > j >= 1`.
fn bindings(
    index: Option<&str>,
    l: usize,
    range: Option<(i64, i64)>,
) -> Result<Vec<Vec<(&'static str, i64)>>> {
    let li = l as i64;
    let (lo, hi) = range.unwrap_or((1, li - 1));
    Ok(match index {
        None => vec![vec![("l", li)]],
        Some("i") => (lo..=hi).map(|i| vec![("l", li), ("i", i)]).collect(),
        Some("ij") => {
            let mut v = Vec::new();
            for i in 1..li {
                for j in 1..i {
                    v.push(vec![("l", li), ("i", i), ("j", j)]);
                }
            }
            v
        }
        Some(other) => return Err(Error::Fixture(format!("unknown index kind {other:?}"))),
    })
}

fn get(env: &[(&str, i64)], name: &str) -> i64 {
    env.iter().find(|(n, _)| *n == name).map_or(0, |(_, v)| *v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyEntry {
    pub label: String,
    pub poly: String,
}

impl PolyEntry {
    pub fn parse(&self, vars: &[String]) -> Result<MPoly> {
        MPoly::parse(&self.poly)?.with_vars(vars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub label: String,
    #[serde(with = "rat_vec_serde")]
    pub values: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub columns: Vec<String>,
    pub rows: Vec<CoeffRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct B2Charges {
    pub vars: Vec<String>,
    pub ell: Vec<PolyEntry>,
    pub z: Vec<PolyEntry>,
    pub coefficients: CoeffTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChEntry {
    pub label: String,
    pub ch: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct B2ChClasses {
    pub dictionary: BTreeMap<String, String>,
    pub classes: Vec<ChEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationEntry {
    pub component: String,
    pub expected: Option<String>,
    pub rows: Vec<FixedPointRow>,
}

impl LocalizationEntry {
    pub fn table(&self) -> FixedPointTable {
        FixedPointTable {
            component: self.component.clone(),
            rows: self.rows.clone(),
        }
    }

    pub fn expected(&self) -> Result<Option<Rat>> {
        self.expected.as_deref().map(parse_rat).transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Localization {
    pub tables: Vec<LocalizationEntry>,
}

pub fn parse_matrix(rows: &[Vec<String>]) -> Result<RatMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_rat(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub origin: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveSpec {
    pub vars: Vec<String>,
    pub sample: Vec<String>,
    pub walls: Vec<String>,
    pub frame: Option<FrameSpec>,
    pub grid: usize,
}

impl AlcoveSpec {
    pub fn walls(&self) -> Result<Vec<Hyperplane>> {
        self.walls
            .iter()
            .map(|w| Hyperplane::parse(w, &self.vars))
            .collect()
    }

    pub fn build(&self) -> Result<Alcove> {
        let rats = |v: &[String]| v.iter().map(|x| parse_rat(x)).collect::<Result<Vec<_>>>();
        let frame = match &self.frame {
            Some(f) => Some(Frame {
                origin: rats(&f.origin)?,
                edges: f.edges.iter().map(|e| rats(e)).collect::<Result<_>>()?,
            }),
            None => None,
        };
        Alcove::from_sample(&self.vars, &self.walls()?, rats(&self.sample)?, frame)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSpec {
    pub name: String,
    pub theta: String,
    pub form: String,
    pub vanishing: String,
    pub simples: Vec<String>,
    pub projectives_listed: Vec<String>,
    pub projectives: Vec<String>,
    #[serde(default)]
    pub single_tilt_projectives: Option<Vec<String>>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub crossed: Vec<PolyEntry>,
    /// Crossed charges as listed where the listing disagrees with `crossed`.
    #[serde(default)]
    pub crossed_listed: Vec<PolyEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct B2Walls {
    pub simple_labels: Vec<String>,
    pub projective_labels: Vec<String>,
    pub euler: Vec<Vec<String>>,
    pub alcove: AlcoveSpec,
    pub walls: Vec<WallSpec>,
}

impl B2Walls {
    pub fn wall(&self, name: &str) -> Result<&WallSpec> {
        self.walls
            .iter()
            .find(|w| w.name == name)
            .ok_or_else(|| Error::Invalid(format!("unknown wall {name:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeCase {
    pub when: String,
    pub ell: String,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeTemplate {
    pub label: String,
    #[serde(default)]
    pub index: Option<String>,
    pub cases: Vec<ChargeCase>,
}

/// One expanded row of the general-l charge list.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeRow {
    pub label: TautLabel,
    pub ell: MPoly,
    pub z: MPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCharges {
    pub ls: Vec<usize>,
    pub entries: Vec<ChargeTemplate>,
}

fn case_applies(when: &str, env: &[(&str, i64)]) -> Result<bool> {
    let (l, i, j) = (get(env, "l"), get(env, "i"), get(env, "j"));
    Ok(match when {
        "always" | "otherwise" => true,
        "endpoint" => i == 1 || i == l - 1,
        "interior" => i != 1 && i != l - 1,
        "adjacent" => (i - j).abs() == 1,
        other => return Err(Error::Fixture(format!("unknown case condition {other:?}"))),
    })
}

impl CyclicCharges {
    /// The list for one `l`; `{m}` counts the endpoint conditions `i = 1`, `i = l-1` that hold.
    pub fn expand(&self, l: usize) -> Result<Vec<ChargeRow>> {
        let mut out = Vec::new();
        for t in &self.entries {
            for mut env in bindings(t.index.as_deref(), l, None)? {
                let i = get(&env, "i");
                let m = i64::from(i == 1) + i64::from(i == l as i64 - 1);
                env.push(("m", m));
                let case = t
                    .cases
                    .iter()
                    .map(|c| case_applies(&c.when, &env).map(|ok| ok.then_some(c)))
                    .find_map(|r| r.transpose())
                    .transpose()?
                    .ok_or_else(|| Error::Fixture(format!("no case of {} applies", t.label)))?;
                out.push(ChargeRow {
                    label: TautLabel::parse(&fill(&t.label, &env)?, l)?,
                    ell: fill_poly(&case.ell, l, &env)?,
                    z: fill_poly(&case.z, l, &env)?,
                });
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumSpec {
    pub var: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermTemplate {
    pub coeff: String,
    pub label: String,
    #[serde(default)]
    pub sum: Option<SumSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionTemplate {
    pub basis: String,
    #[serde(default)]
    pub index: Option<String>,
    pub terms: Vec<TermTemplate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicInversion {
    pub ls: Vec<usize>,
    pub entries: Vec<InversionTemplate>,
}

/// A combination of Chern characters with zero coefficients dropped.
pub type ChCombo = BTreeMap<TautLabel, Rat>;

impl CyclicInversion {
    pub fn expand(&self, l: usize) -> Result<BTreeMap<CohLabel, ChCombo>> {
        let mut out = BTreeMap::new();
        for t in &self.entries {
            for env in bindings(t.index.as_deref(), l, None)? {
                let mut combo = ChCombo::new();
                for term in &t.terms {
                    let c = parse_rat(&term.coeff)?;
                    let envs = match &term.sum {
                        None => vec![env.clone()],
                        Some(s) => {
                            let (lo, hi) = (eval_index(&s.from, &env)?, eval_index(&s.to, &env)?);
                            (lo..=hi)
                                .map(|k| {
                                    let mut e: Vec<(&str, i64)> = env.clone();
                                    e.push((s.var.as_str(), k));
                                    e
                                })
                                .collect()
                        }
                    };
                    for e in envs {
                        let lab = TautLabel::parse(&fill(&term.label, &e)?, l)?;
                        *combo.entry(lab).or_insert_with(Rat::zero) += &c;
                    }
                }
                combo.retain(|_, v| !v.is_zero());
                let b = CohLabel::parse(&fill(&t.basis, &env)?)?;
                if out.insert(b, combo).is_some() {
                    return Err(Error::Fixture(format!("basis element {b} listed twice")));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reading {
    pub name: String,
    pub exclude: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTemplate {
    pub form: String,
    #[serde(default)]
    pub index: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTemplate {
    pub class: String,
    #[serde(default)]
    pub index: Option<String>,
    #[serde(default)]
    pub from: Option<String>,
    #[serde(default)]
    pub to: Option<String>,
    /// Subject to the reading's index exclusion.
    #[serde(default)]
    pub excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub name: String,
    pub wall: String,
    pub classes: Vec<ClassTemplate>,
    #[serde(default)]
    pub next_wall: Option<String>,
    #[serde(default)]
    pub next_wall_labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicWalls {
    pub ls: Vec<usize>,
    pub readings: Vec<Reading>,
    pub initial_walls: Vec<FormTemplate>,
    pub crossings: Vec<Crossing>,
}

impl CyclicWalls {
    pub fn initial_walls(&self, l: usize) -> Result<Vec<Hyperplane>> {
        let mut out = Vec::new();
        for f in &self.initial_walls {
            for env in bindings(f.index.as_deref(), l, None)? {
                out.push(Hyperplane::new(&fill_poly(&f.form, l, &env)?)?);
            }
        }
        Ok(out)
    }

    /// Class strings of a crossing for one `l` under one reading, in listed order.
    pub fn classes(&self, crossing: &Crossing, reading: &Reading, l: usize) -> Result<Vec<String>> {
        let base = [("l", l as i64)];
        let excluded: Vec<i64> = reading
            .exclude
            .iter()
            .map(|e| eval_index(e, &base))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        for c in &crossing.classes {
            let range = match (&c.from, &c.to) {
                (Some(a), Some(b)) => Some((eval_index(a, &base)?, eval_index(b, &base)?)),
                (None, None) => None,
                _ => return Err(Error::Fixture("class range needs both ends".into())),
            };
            for env in bindings(c.index.as_deref(), l, range)? {
                if c.excluded && excluded.contains(&get(&env, "i")) {
                    continue;
                }
                out.push(fill(&c.class, &env)?);
            }
        }
        Ok(out)
    }

    pub fn crossing(&self, name: &str) -> Result<&Crossing> {
        self.crossings
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Invalid(format!("unknown crossing {name:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulRange {
    pub n_max: u32,
    pub m_max: i64,
    pub primes: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingRange {
    pub n_max: u32,
    pub l_max: u32,
    pub primes: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareRanges {
    pub order: usize,
    pub koszul: KoszulRange,
    pub alternating: AlternatingRange,
    pub kc_n_max: u32,
    pub fake_degree_max: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree0Expectation {
    pub step: usize,
    pub vertex: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverRun {
    pub quiver: String,
    pub theta: String,
    pub steps: usize,
    pub trunc: usize,
    #[serde(default)]
    pub total_dim: Option<usize>,
    #[serde(default)]
    pub expected_dim_vectors: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub expected_degree0: Option<Degree0Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverRuns {
    pub runs: Vec<QuiverRun>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_expressions() {
        let env = [("l", 5), ("k", 2)];
        assert_eq!(eval_index("l-1", &env).unwrap(), 4);
        assert_eq!(eval_index("k+1", &env).unwrap(), 3);
        assert_eq!(eval_index("-k + l - 2", &env).unwrap(), 1);
        assert!(eval_index("q", &env).is_err());
        assert!(eval_index("l--", &env).is_err());
        assert_eq!(fill("V_{k+1},{k}", &env).unwrap(), "V_3,2");
        assert!(fill("V_{k", &env).is_err());
    }

    #[test]
    fn sum_placeholder() {
        let p = fill_poly("n0+S", 3, &[]).unwrap();
        assert_eq!(
            p,
            MPoly::parse("n0+n1+n2")
                .unwrap()
                .with_vars(&["n0".into(), "n1".into(), "n2".into()])
                .unwrap()
        );
    }
}
