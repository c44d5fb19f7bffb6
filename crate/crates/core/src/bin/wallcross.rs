use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use wallcross::alcoves::{positivity_on_alcove, rvsc_check_pair, Hyperplane};
use wallcross::charge::{
    central_charges, crossed_charges, dimension_polynomial, solve_functionals, ChargeTable, Group,
};
use wallcross::cohomology::{
    ch_line_bundle, ch_tautological, geometric_from_ch, ring_mul, CohClass, TautLabel,
};
use wallcross::exactcore::rat::{parse_rat, rat_string};
use wallcross::exactcore::{Rat, RatMatrix};
use wallcross::fixtures::{resolve_dir, B2Walls, Fixtures, ENV_VAR};
use wallcross::ktheory::{
    double_tilt_classes, dual_basis, format_columns, format_rows, gram_transform, ExtTable,
};
use wallcross::poincare::{
    alternating_sum_tau_i, closed_form_tau_i, integer_coefficients, koszul_trivial_closed_form,
    koszul_trivial_sum, CherednikParams,
};
use wallcross::quiver::{run_mutation, Algebra, QuiverSpec, Section};
use wallcross::suite::{run_suite, Status, SuiteName};
use wallcross::{Error, Result};

#[derive(Parser)]
#[command(
    name = "wallcross",
    version,
    about = "Central charges, wall-crossing data, Poincare series and quiver mutations"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Pretty, global = true)]
    emit: Emit,
    /// Fixture directory (defaults to the crate's fixtures/).
    #[arg(long, env = ENV_VAR, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    B2,
    Cyclo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CohOp {
    Mul,
    Ch,
    Invert,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Ell,
    Dim,
    Z,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Charge,
    Walls,
    Poincare,
    Quiver,
    Ktheory,
}

#[derive(Subcommand)]
enum Command {
    /// Products, Chern characters and the Chern-character inversion in H*.
    Cohomology {
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        op: CohOp,
        /// First factor for `mul`, e.g. "d0 + 2*p1".
        #[arg(long)]
        x: Option<String>,
        /// Second factor for `mul`.
        #[arg(long)]
        y: Option<String>,
        /// Tautological bundle for `ch`, e.g. "V_0,1".
        #[arg(long)]
        label: Option<String>,
        /// Line bundle exponents for `ch`, e.g. "1,0,-2".
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// Functionals, dimension polynomials or central charges.
    Charge {
        #[arg(long, value_enum, default_value_t = GroupArg::Cyclo)]
        group: GroupArg,
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum, default_value_t = What::Z)]
        what: What,
    },
    /// Vanishing orders across a wall and positivity on the initial alcove.
    Rvsc {
        #[arg(long, value_enum, default_value_t = GroupArg::B2)]
        group: GroupArg,
        /// Linear form of the wall, e.g. "2a+2b+1".
        #[arg(long)]
        wall: String,
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
    /// Classes of simples and projectives after crossing one of the B2 walls.
    CrossWall {
        #[arg(long, value_enum, default_value_t = GroupArg::B2)]
        group: GroupArg,
        /// z0, z1, z2 or z3.
        #[arg(long)]
        wall: String,
    },
    /// Koszul sums against their closed forms.
    Poincare {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        l: u32,
        /// Comma-separated m0,m1,...
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long)]
        p: u32,
        /// Character index; without it the trivial representation of S_n is used.
        #[arg(long)]
        i: Option<u32>,
        #[arg(long, default_value_t = 60)]
        trunc: usize,
    },
    /// Truncated mutation of one projective.
    Mutate {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, default_value_t = 6)]
        trunc: usize,
        /// full, zero, or a JSON file mapping vertex names to coefficient rows.
        #[arg(long, default_value = "full")]
        section: String,
        /// Section degrees for one step, as STEP=t0,t1,...; repeatable.
        #[arg(long)]
        degrees: Vec<String>,
    },
    /// Runs a fixture-backed verification suite.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

/// What a subcommand produced: a JSON value, a table for CSV and text.
struct Output {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    ok: bool,
}

impl Output {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Output {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            ok: true,
        }
    }

    fn with_ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn to_json<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn group(g: GroupArg, l: usize) -> Result<Group> {
    match g {
        GroupArg::B2 => Ok(Group::B2),
        GroupArg::Cyclo => Group::Cyclic(l).validate(),
    }
}

fn table_output(t: &ChargeTable, label: Option<&str>) -> Result<Output> {
    let l = t.group.l();
    let entries: Vec<_> = match label {
        Some(s) => {
            let a = TautLabel::parse(s, l)?;
            let p = t
                .get(a)
                .ok_or_else(|| Error::Invalid(format!("label {s} not in table")))?;
            vec![(a, p.clone())]
        }
        None => t.entries.clone(),
    };
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|(a, p)| vec![t.group.simple_name(*a), p.to_string()])
        .collect();
    let json = rows
        .iter()
        .map(|r| (r[0].clone(), Value::String(r[1].clone())))
        .collect();
    Ok(Output::new(Value::Object(json), &["label", "poly"], rows))
}

fn cohomology(
    l: usize,
    op: CohOp,
    x: Option<String>,
    y: Option<String>,
    label: Option<String>,
    n: Option<String>,
) -> Result<Output> {
    let class_rows = |c: &CohClass| {
        c.terms()
            .map(|(b, v)| vec![b.to_string(), rat_string(v)])
            .collect::<Vec<_>>()
    };
    match op {
        CohOp::Mul => {
            let need = |v: Option<String>, w: &str| {
                v.ok_or_else(|| Error::Invalid(format!("--{w} is required for mul")))
            };
            let p = ring_mul(
                &CohClass::parse(l, &need(x, "x")?)?,
                &CohClass::parse(l, &need(y, "y")?)?,
            )?;
            Ok(Output::new(
                to_json(&p)?,
                &["basis", "coeff"],
                class_rows(&p),
            ))
        }
        CohOp::Ch => {
            if let Some(n) = n {
                let n: Vec<i64> = n
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
                    })
                    .collect::<Result<_>>()?;
                let c = ch_line_bundle(l, &n)?;
                return Ok(Output::new(
                    to_json(&c)?,
                    &["basis", "coeff"],
                    class_rows(&c),
                ));
            }
            let labels = match label {
                Some(s) => vec![TautLabel::parse(&s, l)?],
                None => TautLabel::all(l),
            };
            let mut map = serde_json::Map::new();
            let mut rows = Vec::new();
            for a in labels {
                let c = ch_tautological(l, a)?;
                for (b, v) in c.terms() {
                    rows.push(vec![a.to_string(), b.to_string(), rat_string(v)]);
                }
                map.insert(a.to_string(), to_json(&c)?);
            }
            Ok(Output::new(
                Value::Object(map),
                &["bundle", "basis", "coeff"],
                rows,
            ))
        }
        CohOp::Invert => {
            let mut map = serde_json::Map::new();
            let mut rows = Vec::new();
            for (b, combo) in geometric_from_ch(l)? {
                let mut inner = serde_json::Map::new();
                for (a, c) in combo {
                    rows.push(vec![b.to_string(), a.to_string(), rat_string(&c)]);
                    inner.insert(a.to_string(), Value::String(rat_string(&c)));
                }
                map.insert(b.to_string(), Value::Object(inner));
            }
            Ok(Output::new(
                Value::Object(map),
                &["basis", "bundle", "coeff"],
                rows,
            ))
        }
    }
}

fn charge(g: GroupArg, l: usize, label: Option<String>, what: What) -> Result<Output> {
    let g = group(g, l)?;
    let ell = solve_functionals(g)?;
    match what {
        What::Ell => table_output(&ell, label.as_deref()),
        What::Z => table_output(&central_charges(&ell)?, label.as_deref()),
        What::Dim => {
            let labels = match &label {
                Some(s) => vec![TautLabel::parse(s, g.l())?],
                None => ell.labels(),
            };
            let entries = labels
                .into_iter()
                .map(|a| Ok((a, dimension_polynomial(&ell, a)?)))
                .collect::<Result<Vec<_>>>()?;
            table_output(&ChargeTable { group: g, entries }, None)
        }
    }
}

fn b2_only(g: GroupArg) -> Result<()> {
    if g != GroupArg::B2 {
        return Err(Error::Invalid(
            "wall data is only available for the b2 group".into(),
        ));
    }
    Ok(())
}

fn rvsc(fx: &Fixtures, g: GroupArg, wall: &str, grid: usize) -> Result<Output> {
    b2_only(g)?;
    let walls: B2Walls = fx.load("b2_walls.json")?;
    let ext: ExtTable = fx.load("b2_ext.json")?;
    let vars = Group::B2.vars();
    let h = Hyperplane::parse(wall, &vars)?;
    let z = central_charges(&solve_functionals(Group::B2)?)?;
    let mut known = None;
    for w in &walls.walls {
        if Hyperplane::parse(&w.form, &vars)? == h {
            known = Some(double_tilt_classes(&ext, ext.index(&w.theta)?)?);
        }
    }
    let crossed = match &known {
        Some(s) => crossed_charges(&z, s)?,
        None => z.clone(),
    };
    let report = rvsc_check_pair(&z, &crossed, &h, known.as_ref())?;
    let positivity = positivity_on_alcove(&z, &walls.alcove.build()?, grid)?;
    let rows = report
        .orders
        .iter()
        .map(|(n, k)| vec![n.clone(), k.to_string()])
        .collect();
    let ok = report.pass && positivity.passed();
    let json = json!({"wall": report, "positivity": positivity, "pass": ok});
    Ok(Output::new(json, &["label", "order"], rows).with_ok(ok))
}

fn cross_wall(fx: &Fixtures, g: GroupArg, wall: &str) -> Result<Output> {
    b2_only(g)?;
    let walls: B2Walls = fx.load("b2_walls.json")?;
    let ext: ExtTable = fx.load("b2_ext.json")?;
    let w = walls.wall(wall)?;
    let s = double_tilt_classes(&ext, ext.index(&w.theta)?)?;
    let q = dual_basis(&s)?;
    let e = wallcross::ktheory::euler_form(&ext)?;
    let gram = gram_transform(&e, &s)?;
    let simples = format_columns(&s, &walls.simple_labels);
    let projectives = format_rows(&q, &walls.projective_labels);
    let rows = simples
        .iter()
        .zip(&projectives)
        .enumerate()
        .map(|(i, (a, b))| vec![i.to_string(), a.clone(), b.clone()])
        .collect();
    let json = json!({"simples": simples, "projectives": projectives, "gram": gram});
    Ok(Output::new(json, &["index", "simple", "projective"], rows))
}

fn poincare(n: u32, l: u32, m: &str, p: u32, i: Option<u32>, trunc: usize) -> Result<Output> {
    let m: Vec<i64> = m
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad m entry {s:?}")))
        })
        .collect::<Result<_>>()?;
    let (sum, closed, closed_text) = match i {
        Some(i) => {
            let prm = CherednikParams { n, l, m, p };
            let c = closed_form_tau_i(&prm, i)?;
            (
                alternating_sum_tau_i(&prm, i, trunc)?,
                c.expand(trunc)?,
                c.to_string(),
            )
        }
        None => {
            let m0 = *m
                .first()
                .ok_or_else(|| Error::Invalid("m is empty".into()))?;
            let c = koszul_trivial_closed_form(n, m0, p)?;
            (
                koszul_trivial_sum(n, m0, p, trunc)?,
                c.expand(trunc)?,
                c.to_string(),
            )
        }
    };
    let ok = sum == closed;
    let coeffs: Vec<String> = sum.coeffs().iter().map(rat_string).collect();
    let rows = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| vec![k.to_string(), c.clone()])
        .collect();
    let json = json!({
        "series": coeffs,
        "integral": integer_coefficients(&sum).is_some(),
        "closed_form": closed_text,
        "trunc": trunc,
        "agree": ok,
    });
    Ok(Output::new(json, &["degree", "coeff"], rows).with_ok(ok))
}

fn read_section(path: &str, alg: &Algebra) -> Result<Section> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    let raw: BTreeMap<String, Vec<Vec<String>>> = serde_json::from_str(&text)?;
    let mut map = BTreeMap::new();
    for (v, rows) in raw {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_rat(x)).collect::<Result<Vec<Rat>>>())
            .collect::<Result<Vec<_>>>()?;
        map.insert(alg.quiver.vertex(&v)?, rows);
    }
    Ok(Section::Explicit(map))
}

fn mutate(
    quiver: &PathBuf,
    theta: &str,
    steps: usize,
    trunc: usize,
    section: &str,
    degrees: &[String],
) -> Result<Output> {
    let text = std::fs::read_to_string(quiver).map_err(|source| Error::Io {
        path: quiver.display().to_string(),
        source,
    })?;
    let spec: QuiverSpec = serde_json::from_str(&text)?;
    let alg = Algebra::from_spec(&spec, trunc)?;
    let theta = alg.quiver.vertex(theta)?;
    let section = match section {
        "full" => Section::Full,
        "zero" => Section::Zero,
        path => read_section(path, &alg)?,
    };
    let mut per_step = BTreeMap::new();
    for d in degrees {
        let (k, ts) = d
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected STEP=t0,t1,... in {d:?}")))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad step in {d:?}")))?;
        let ts = ts
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad degree in {d:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        per_step.insert(k, ts);
    }
    let run = run_mutation(&alg, theta, steps, section, &per_step)?;
    let rows = run
        .steps
        .iter()
        .map(|s| {
            let dv: Vec<String> = s.record.dim_vector.iter().map(|x| x.to_string()).collect();
            vec![
                s.record.step.to_string(),
                dv.join(" "),
                s.record.injective.to_string(),
                s.dual_pairing.map_or("undecided".into(), |b| b.to_string()),
            ]
        })
        .collect();
    let ok = run.all_injective() && run.all_dual();
    let mut json = to_json(&run)?;
    json["vertices"] = to_json(&alg.quiver.vertices)?;
    Ok(Output::new(
        json,
        &["step", "dim_vector", "injective", "dual_pairing"],
        rows,
    )
    .with_ok(ok))
}

fn verify(fx: &Fixtures, suite: SuiteArg) -> Result<Output> {
    let name = match suite {
        SuiteArg::All => SuiteName::All,
        SuiteArg::Charge => SuiteName::Charge,
        SuiteArg::Walls => SuiteName::Walls,
        SuiteArg::Poincare => SuiteName::Poincare,
        SuiteArg::Quiver => SuiteName::Quiver,
        SuiteArg::Ktheory => SuiteName::Ktheory,
    };
    let report = run_suite(name, fx)?;
    let rows = report
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Report => "report",
            };
            vec![
                c.suite.to_string(),
                status.into(),
                c.name.clone(),
                c.anchor.clone(),
                c.detail.clone(),
            ]
        })
        .collect();
    let ok = report.passed;
    Ok(Output::new(
        to_json(&report)?,
        &["suite", "status", "check", "anchor", "detail"],
        rows,
    )
    .with_ok(ok))
}

fn matrix_text(m: &RatMatrix) -> String {
    m.to_string()
}

fn emit(out: &Output, how: Emit) -> Result<()> {
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let io = |e: std::io::Error| Error::Io {
        path: "<stdout>".into(),
        source: e,
    };
    match how {
        Emit::Json => {
            serde_json::to_writer_pretty(&mut w, &out.json)?;
            writeln!(w).map_err(io)?;
        }
        Emit::Csv => {
            let mut c = csv::Writer::from_writer(w);
            let csv_err = |e: csv::Error| Error::Invalid(format!("csv output: {e}"));
            c.write_record(&out.header).map_err(csv_err)?;
            for r in &out.rows {
                c.write_record(r).map_err(csv_err)?;
            }
            c.flush().map_err(io)?;
        }
        Emit::Pretty => {
            let widths: Vec<usize> = (0..out.header.len())
                .map(|i| {
                    out.rows
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([out.header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let last = cells.len().saturating_sub(1);
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        if i == last {
                            c.clone()
                        } else {
                            format!("{c:<w$}", w = widths[i])
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(w, "{}", line(&out.header)).map_err(io)?;
            for r in &out.rows {
                writeln!(w, "{}", line(r).trim_end()).map_err(io)?;
            }
            if let Some(g) = out.json.get("gram") {
                if let Ok(rows) = serde_json::from_value::<Vec<Vec<String>>>(g.clone()) {
                    let m = RatMatrix::from_rows(
                        rows.iter()
                            .map(|r| r.iter().map(|x| parse_rat(x)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?,
                    )?;
                    write!(w, "gram\n{}", matrix_text(&m)).map_err(io)?;
                }
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Output> {
    let fixtures = || Fixtures::open(resolve_dir(cli.fixtures.as_deref()));
    match cli.command {
        Command::Cohomology {
            l,
            op,
            x,
            y,
            label,
            n,
        } => cohomology(l, op, x, y, label, n),
        Command::Charge {
            group,
            l,
            label,
            what,
        } => charge(group, l, label, what),
        Command::Rvsc {
            group,
            ref wall,
            grid,
        } => rvsc(&fixtures()?, group, wall, grid),
        Command::CrossWall { group, ref wall } => cross_wall(&fixtures()?, group, wall),
        Command::Poincare {
            n,
            l,
            ref m,
            p,
            i,
            trunc,
        } => poincare(n, l, m, p, i, trunc),
        Command::Mutate {
            ref quiver,
            ref theta,
            steps,
            trunc,
            ref section,
            ref degrees,
        } => mutate(quiver, theta, steps, trunc, section, degrees),
        Command::Verify { suite } => verify(&fixtures()?, suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let how = cli.emit;
    match run(cli).and_then(|out| emit(&out, how).map(|()| out.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wallcross: {e}");
            ExitCode::from(2)
        }
    }
}
