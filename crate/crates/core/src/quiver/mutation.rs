use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::Algebra;
use super::complex::{
    cone_shift, ext_simples, hom_h01, lift_cocycle, minimal_resolution, simple_cocycles,
    ProjComplex,
};
use super::module::{hom_space, map_matrix, Free, GradedRep, Presented};
use crate::error::{Error, Result};
use crate::exactcore::Rat;

/// Which degree-1 homomorphisms `P_θ → P_α` feed the mutation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Section {
    /// The whole degree-1 piece.
    #[default]
    Full,
    /// No homomorphisms at all; only useful as a counterexample.
    Zero,
    /// Per vertex, coefficient rows over the computed basis of the degree-1 piece.
    Explicit(BTreeMap<usize, Vec<Vec<Rat>>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    /// Copies of each `P_α` in the new middle term.
    pub multiplicities: Vec<usize>,
    pub injective: bool,
    /// First `(vertex, degree)` where injectivity fails.
    pub failure: Option<(usize, usize)>,
    /// `dims[v][k]` of the mutated projective.
    pub dims: Vec<Vec<usize>>,
    pub dim_vector: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Stage {
    /// Middle term `T_i` (for stage 0, `P_θ` itself).
    term: Free,
    /// Relations of `P^i_θ` inside `T_i`.
    rels: Vec<(usize, usize, Vec<Rat>)>,
    /// Images of the generators of `T_{i-1}` in `T_i`.
    images: Vec<Vec<Rat>>,
    /// Internal degree raised by the map `T_{i-1} → T_i`.
    shift: usize,
}

/// Iterated truncated mutation of one projective.
#[derive(Clone, Debug)]
pub struct MutationState<'a> {
    pub alg: &'a Algebra,
    pub theta: usize,
    pub section: Section,
    /// Degree `t_α` of the homomorphisms used for each vertex (default 1).
    pub degrees: Vec<usize>,
    stages: Vec<Stage>,
    pub records: Vec<StepRecord>,
}

impl<'a> MutationState<'a> {
    pub fn new(alg: &'a Algebra, theta: usize, section: Section) -> Result<Self> {
        if theta >= alg.nv() {
            return Err(Error::Invalid("vertex out of range".into()));
        }
        if ext_simples(alg, theta, theta, 1)? != 0 {
            return Err(Error::Invalid(format!(
                "vertex {} carries self-extensions",
                alg.quiver.vertices[theta]
            )));
        }
        let term = Free::new(alg, vec![(theta, 0)]);
        Ok(MutationState {
            alg,
            theta,
            section,
            degrees: vec![1; alg.nv()],
            stages: vec![Stage {
                term,
                rels: Vec::new(),
                images: Vec::new(),
                shift: 0,
            }],
            records: Vec::new(),
        })
    }

    /// Uses homomorphisms of degree `t_α` into `P_α` instead of degree 1.
    pub fn with_degrees(mut self, degrees: Vec<usize>) -> Result<Self> {
        if degrees.len() != self.alg.nv() || degrees.contains(&0) {
            return Err(Error::Invalid(
                "section degrees must be positive, one per vertex".into(),
            ));
        }
        self.degrees = degrees;
        Ok(self)
    }

    pub fn steps(&self) -> usize {
        self.stages.len() - 1
    }

    /// Current `P^i_θ` as a presented module.
    pub fn mutated(&self) -> Presented {
        let s = self.stages.last().expect("stage 0");
        Presented {
            cover: s.term.clone(),
            rels: s.rels.clone(),
        }
    }

    /// The current projective at `v`.
    pub fn projective(&self, v: usize) -> Presented {
        if v == self.theta {
            self.mutated()
        } else {
            Presented::projective(self.alg, v)
        }
    }

    /// Whether every recorded step had an injective map.
    pub fn all_injective(&self) -> bool {
        self.records.iter().all(|r| r.injective)
    }

    /// Replaces `P^i_θ` by the cokernel of `P^i_θ⟨1⟩ → ⊕_{α≠θ} P_α ⊗ Hom_1(P^i_θ, P_α)^*`.
    pub fn step(&mut self) -> Result<&StepRecord> {
        let alg = self.alg;
        let nv = alg.nv();
        let cur = self.mutated();
        let mut homs: Vec<(usize, Vec<Vec<Rat>>)> = Vec::new();
        let mut mult = vec![0; nv];
        for alpha in (0..nv).filter(|&a| a != self.theta) {
            let target = Free::new(alg, vec![(alpha, 0)]);
            let basis = hom_space(alg, &cur, &target, self.degrees[alpha] as i64)?;
            let chosen: Vec<Vec<Vec<Rat>>> = match &self.section {
                Section::Full => basis,
                Section::Zero => Vec::new(),
                Section::Explicit(map) => map
                    .get(&alpha)
                    .map(|rows| {
                        rows.iter()
                            .map(|coeffs| combine(&basis, coeffs))
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?
                    .unwrap_or_default(),
            };
            mult[alpha] = chosen.len();
            for h in chosen {
                homs.push((alpha, h));
            }
        }
        let tmax = homs
            .iter()
            .map(|(a, _)| self.degrees[*a])
            .max()
            .unwrap_or(1);
        let new_term = Free::new(
            alg,
            homs.iter()
                .map(|(a, _)| (*a, tmax - self.degrees[*a]))
                .collect(),
        );
        // generator g of T_i goes to Σ_copies φ_copy(g) in its own block
        let images: Vec<Vec<Rat>> = cur
            .cover
            .gens
            .iter()
            .enumerate()
            .map(|(g, &(v, s))| {
                let mut y = vec![Rat::from_integer(0.into()); new_term.dim(v, s + tmax)];
                if s + tmax > alg.trunc {
                    return y;
                }
                for (copy, (_, phi)) in homs.iter().enumerate() {
                    let img = phi[g].clone();
                    let off = new_term.offset(v, s + tmax, copy);
                    for (i, c) in img.into_iter().enumerate() {
                        y[off + i] = c;
                    }
                }
                y
            })
            .collect();
        // injectivity of P^i_θ⟨1⟩ → T_{i+1}, checked wherever the target is visible
        let m = cur.module(alg);
        let mut failure = None;
        'outer: for k in 0..=alg.trunc.saturating_sub(tmax) {
            for w in 0..nv {
                let keep = m.kept(w, k);
                if keep.is_empty() {
                    continue;
                }
                let full = map_matrix(alg, &cur.cover, &new_term, &images, tmax, w, k);
                let cols: Vec<Vec<Rat>> = keep.iter().map(|&c| full.col(c)).collect();
                let mut ech = super::complex::Echelon::default();
                let rank = cols.iter().filter(|c| ech.insert(c)).count();
                if rank < keep.len() {
                    failure = Some((w, k));
                    break 'outer;
                }
            }
        }
        let rels: Vec<(usize, usize, Vec<Rat>)> = cur
            .cover
            .gens
            .iter()
            .zip(&images)
            .map(|(&(v, s), y)| (v, s + tmax, y.clone()))
            .filter(|(_, k, _)| *k <= alg.trunc)
            .collect();
        let stage = Stage {
            term: new_term,
            rels,
            images,
            shift: tmax,
        };
        let pm = Presented {
            cover: stage.term.clone(),
            rels: stage.rels.clone(),
        }
        .module(alg);
        let dims = pm.dims(alg);
        let dim_vector = pm.dim_vector(alg);
        self.stages.push(stage);
        self.records.push(StepRecord {
            step: self.steps(),
            multiplicities: mult,
            injective: failure.is_none(),
            failure,
            dims,
            dim_vector,
        });
        Ok(self.records.last().expect("pushed"))
    }

    /// `P^i_θ` as the complex `P_θ → T_1 → … → T_i`, with `T_i` in degree 0.
    pub fn mutated_complex(&self) -> ProjComplex {
        let i = self.steps();
        let raise = |j: usize| -> usize { self.stages[j + 1..].iter().map(|st| st.shift).sum() };
        let terms: Vec<Free> = self
            .stages
            .iter()
            .enumerate()
            .map(|(j, st)| {
                Free::new(
                    self.alg,
                    st.term
                        .gens
                        .iter()
                        .map(|&(v, s)| (v, s + raise(j)))
                        .collect(),
                )
            })
            .collect();
        let diffs = self.stages[1..]
            .iter()
            .map(|st| st.images.clone())
            .collect();
        ProjComplex {
            lo: -(i as i32),
            terms,
            diffs,
        }
    }
}

fn combine(basis: &[Vec<Vec<Rat>>], coeffs: &[Rat]) -> Result<Vec<Vec<Rat>>> {
    if coeffs.len() != basis.len() {
        return Err(Error::Mismatch(format!(
            "section row has {} coefficients for a {}-dimensional Hom space",
            coeffs.len(),
            basis.len()
        )));
    }
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    let mut out: Vec<Vec<Rat>> = first
        .iter()
        .map(|b| vec![Rat::from_integer(0.into()); b.len()])
        .collect();
    for (b, c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(b) {
            for (oi, xi) in o.iter_mut().zip(x) {
                *oi += c * xi;
            }
        }
    }
    Ok(out)
}

/// One step of [`run_mutation`]: the step record and the duality verdict,
/// `None` when the truncation hides the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    #[serde(flatten)]
    pub record: StepRecord,
    /// Section degrees `t_α` used for this step.
    pub degrees: Vec<usize>,
    pub dual_pairing: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationRun {
    pub theta: usize,
    pub trunc: usize,
    pub total_dim: usize,
    pub steps: Vec<StepOutcome>,
}

impl MutationRun {
    pub fn all_injective(&self) -> bool {
        self.steps.iter().all(|s| s.record.injective)
    }

    pub fn all_dual(&self) -> bool {
        self.steps.iter().all(|s| s.dual_pairing == Some(true))
    }
}

/// Performs `steps` mutations at `theta` and checks duality after each;
/// `degrees` overrides the section degrees for the listed steps (1-based).
pub fn run_mutation(
    alg: &Algebra,
    theta: usize,
    steps: usize,
    section: Section,
    degrees: &BTreeMap<usize, Vec<usize>>,
) -> Result<MutationRun> {
    let mut st = MutationState::new(alg, theta, section)?;
    let default = vec![1; alg.nv()];
    let mut out = Vec::new();
    for k in 1..=steps {
        let d = degrees.get(&k).cloned().unwrap_or_else(|| default.clone());
        st = st.with_degrees(d.clone())?;
        let record = st.step()?.clone();
        let dual_pairing = match verify_dual_pairing(&st) {
            Ok(r) => Some(r.pass),
            Err(Error::Undecidable(..)) => None,
            Err(e) => return Err(e),
        };
        out.push(StepOutcome {
            record,
            degrees: d,
            dual_pairing,
        });
    }
    Ok(MutationRun {
        theta,
        trunc: alg.trunc,
        total_dim: alg.total_dim(),
        steps: out,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingEntry {
    pub alpha: usize,
    pub beta: usize,
    pub hom: usize,
    pub ext1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPairingReport {
    pub step: usize,
    pub trunc: usize,
    pub entries: Vec<PairingEntry>,
    pub pass: bool,
}

/// Simples of the `i`-fold tilt at `S_θ`, as complexes of projectives:
/// `S^i_θ = S_θ[i]` and `S^i_β = cone(S^{i-1}_β → Hom(S^{i-1}_β, S_θ[i])^* ⊗ S_θ[i])[-1]`.
pub fn tilted_simples(alg: &Algebra, theta: usize, steps: usize) -> Result<Vec<ProjComplex>> {
    let nv = alg.nv();
    let mut res_cache: BTreeMap<usize, ProjComplex> = BTreeMap::new();
    let mut resolution = |s: usize| -> ProjComplex {
        res_cache
            .entry(s)
            .or_insert_with(|| {
                let mut p = Presented::simple(alg, theta);
                p = shift_presented(alg, &p, s);
                minimal_resolution(alg, &p)
            })
            .clone()
    };
    let mut out: Vec<ProjComplex> = (0..nv)
        .map(|b| minimal_resolution(alg, &Presented::simple(alg, b)))
        .collect();
    for i in 1..=steps as i32 {
        for (b, cx) in out.iter_mut().enumerate() {
            if b == theta {
                continue;
            }
            let mut targets = Vec::new();
            for (s, reps) in simple_cocycles(alg, cx, theta, i) {
                let r = resolution(s);
                for phi in reps {
                    let u = lift_cocycle(alg, cx, &r, i, &phi)?;
                    targets.push((r.clone(), u));
                }
            }
            if !targets.is_empty() {
                *cx = cone_shift(alg, cx, &targets, i);
            }
        }
    }
    out[theta] = minimal_resolution(alg, &Presented::simple(alg, theta)).shifted(steps as i32);
    Ok(out)
}

fn shift_presented(alg: &Algebra, p: &Presented, s: usize) -> Presented {
    let cover = Free::new(alg, p.cover.gens.iter().map(|&(v, d)| (v, d + s)).collect());
    let rels = p
        .rels
        .iter()
        .filter(|(_, k, _)| k + s <= alg.trunc)
        .map(|(w, k, x)| (*w, k + s, x.clone()))
        .collect();
    Presented { cover, rels }
}

/// Checks `dim Hom(P^i_α, S^i_β) = δ_{αβ}` and `Ext^1(P^i_α, S^i_β) = 0`,
/// summing internal degrees `t` for which every piece involved lies within
/// the truncation.
pub fn verify_dual_pairing(state: &MutationState) -> Result<DualPairingReport> {
    let alg = state.alg;
    let nv = alg.nv();
    let i = state.steps();
    if i > 0 && state.mutated_complex().terms[0].gens[0].1 >= alg.trunc {
        return Err(Error::Undecidable(
            alg.trunc,
            format!("{i} steps leave no visible degrees"),
        ));
    }
    let simples = tilted_simples(alg, state.theta, i)?;
    let projectives: Vec<ProjComplex> = (0..nv)
        .map(|a| {
            if a == state.theta {
                state.mutated_complex()
            } else {
                ProjComplex::single(Free::new(alg, vec![(a, 0)]), 0)
            }
        })
        .collect();
    let mut entries = Vec::new();
    for (alpha, q) in projectives.iter().enumerate() {
        let top = q
            .terms
            .iter()
            .flat_map(|t| t.gens.iter().map(|g| g.1))
            .max()
            .unwrap_or(0);
        for (beta, c) in simples.iter().enumerate() {
            let (mut hom, mut ext1) = (0, 0);
            for t in -(top as i64)..=(alg.trunc - top) as i64 {
                let (h0, h1) = hom_h01(alg, q, c, t)?;
                hom += h0;
                ext1 += h1;
            }
            entries.push(PairingEntry {
                alpha,
                beta,
                hom,
                ext1,
            });
        }
    }
    let pass = entries
        .iter()
        .all(|e| e.hom == usize::from(e.alpha == e.beta) && e.ext1 == 0);
    Ok(DualPairingReport {
        step: i,
        trunc: alg.trunc,
        entries,
        pass,
    })
}
