//! The whole pipeline in one call, with a serializable result.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hasher;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Matroid;
use crate::bits;
use crate::flags::{g_presentation, FlagError, LiePresentation, RelationKind};
use crate::homotopy::{
    hilbert_m_for_chain, hilbert_u, homotopy_module_dims, m_support, HomotopyError, HomotopyTable, RankMode,
    SupportVerdict,
};
use crate::hypersolvable::{
    find_solvable_chain, hypothesis_verdict, singular_range, HypersolvableError, SingularOutcome, SingularRange,
    StepKind, Verdict,
};
use crate::os::OsAlgebra;
use crate::series::{pbw_lie_ranks, rescale_collapse, BigradedTable, SeriesError};

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error("hypersolvable: {0}")]
    Hypersolvable(#[from] HypersolvableError),
    #[error("homotopy-engine: {0}")]
    Homotopy(#[from] HomotopyError),
    #[error("series: {0}")]
    Series(#[from] SeriesError),
    #[error("presentation: {0}")]
    Flags(#[from] FlagError),
    #[error("value {0} does not fit in 64 bits")]
    Overflow(String),
}

/// Seed for the random primes derived from the input alone.
pub fn input_seed(m: &Matroid) -> u64 {
    let mut h = fnv::FnvHasher::default();
    h.write_u64(m.ground_size() as u64);
    h.write_u64(m.rank() as u64);
    for &c in m.circuits() {
        h.write_u64(c);
    }
    h.finish()
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub source: String,
    pub p_max: usize,
    pub mode: RankMode,
    /// `(q, degree bound)` for rescaled homotopy ranks.
    pub rescale: Option<(usize, usize)>,
    /// Central deformation with its hyperplane at infinity.
    pub deformation: Option<(Matroid, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub source: String,
    pub hyperplanes: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSummary {
    /// Stages as 1-based hyperplane lists.
    pub stages: Vec<Vec<usize>>,
    pub step_kinds: Vec<StepKind>,
    pub exponents: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MReport {
    pub p_max: usize,
    /// `false` means formal linear-strand homology without a Koszul certificate.
    pub certified: bool,
    pub mode: RankMode,
    pub primes: Vec<u64>,
    pub exact_fallback: bool,
    /// `q -> [M^0_q, ..., M^{p_max}_q]`, nonzero rows only.
    pub rows: BTreeMap<usize, Vec<usize>>,
    pub support: Vec<usize>,
    pub support_verdict: SupportVerdict,
    pub r_dims: Vec<usize>,
    /// Closed form of `h(M_l, t)` and its expansion to `p_max`, for generic slices.
    pub closed_form: Option<String>,
    pub closed_form_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UReport {
    pub p_max: usize,
    /// `p -> [(q, dim U^p_q)]`, nonzero entries.
    pub rows: BTreeMap<usize, Vec<(usize, u64)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiReport {
    pub rescale: usize,
    pub degree: usize,
    pub u_series: Vec<u64>,
    pub loop_ranks: BTreeMap<usize, u64>,
    pub pi_ranks: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationCounts {
    pub x_generators: usize,
    pub y_generators: usize,
    pub holonomy: usize,
    pub flag: usize,
    pub central: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub stage: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputSummary,
    pub poincare: Vec<usize>,
    pub chain: Option<ChainSummary>,
    pub singular_range: Option<SingularRange>,
    pub supersolvable: bool,
    pub verdict: Verdict,
    pub homotopy_module: MReport,
    pub useries: Option<UReport>,
    pub presentation: Option<PresentationCounts>,
    pub pi: Option<PiReport>,
    pub refusals: Vec<Refusal>,
}

fn to_u64(v: &num_bigint::BigInt) -> Result<u64, AnalyzeError> {
    v.to_u64().ok_or_else(|| AnalyzeError::Overflow(v.to_string()))
}

pub fn u_report(u: &BigradedTable) -> Result<UReport, AnalyzeError> {
    let mut rows: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for ((p, q), v) in &u.entries {
        rows.entry(*p).or_default().push((*q, to_u64(v)?));
    }
    Ok(UReport { p_max: u.p_max, rows })
}

/// Rescaled series and homotopy ranks from a `U` table.
pub fn pi_report(u: &BigradedTable, q: usize, degree: usize) -> Result<PiReport, AnalyzeError> {
    let s = rescale_collapse(u, q, degree)?;
    let e = pbw_lie_ranks(&s)?;
    let u_series = s.coeffs().iter().map(to_u64).collect::<Result<Vec<_>, _>>()?;
    let mut loop_ranks = BTreeMap::new();
    let mut pi_ranks = BTreeMap::new();
    for (i, v) in &e {
        let v = to_u64(v)?;
        loop_ranks.insert(*i, v);
        pi_ranks.insert(i + 1, v);
    }
    let mut u_series = u_series;
    u_series.resize(degree + 1, 0);
    Ok(PiReport { rescale: q, degree, u_series, loop_ranks, pi_ranks })
}

/// Homological depth of `U` needed to rescale up to `degree`.
pub fn u_depth_for(q: usize, degree: usize) -> usize {
    degree / (2 * q)
}

pub fn analyze(m: &Matroid, opts: &AnalyzeOptions) -> Result<Report, AnalyzeError> {
    let os = OsAlgebra::new(m);
    let poincare = os.dims();
    let chain = find_solvable_chain(m);
    let outcome = chain.as_ref().map(|c| singular_range(c, &poincare)).transpose()?;
    let verdict = hypothesis_verdict(outcome);
    let mut refusals = Vec::new();

    let u_need = opts.rescale.map_or(0, |(q, d)| u_depth_for(q, d));
    let p_max = opts.p_max.max(u_need.saturating_sub(2));
    let table = homotopy_module_dims(&os, p_max, chain.is_some(), opts.mode)?;

    let (closed_form, closed_form_agrees) = match (&chain, outcome) {
        (Some(c), Some(o)) => match hilbert_m_for_chain(c, o) {
            Ok(rf) => {
                let ell = match o {
                    SingularOutcome::Range(r) => r.c,
                    SingularOutcome::Supersolvable => c.exponents().len(),
                };
                let s = rf.expand(p_max)?;
                let agrees = (0..=p_max).all(|p| s.coeff(p) == crate::kernel::scalar::rat(table.get(p, ell) as i64));
                (Some(rf.to_string()), Some(agrees))
            }
            Err(_) => (None, None),
        },
        _ => (None, None),
    };
    let support = m_support(&table);
    let homotopy_module = MReport {
        p_max,
        certified: table.certified,
        mode: table.mode,
        primes: table.primes.clone(),
        exact_fallback: table.exact_fallback,
        rows: table.support().into_iter().map(|q| (q, table.row(q))).collect(),
        support: support.degrees,
        support_verdict: support.verdict,
        r_dims: table.r_dims.clone(),
        closed_form,
        closed_form_agrees,
    };

    let mut useries = None;
    let mut pi = None;
    if verdict.applicable() {
        let u = hilbert_u(&table.r_dims, &table, verdict, p_max + 2)?;
        useries = Some(u_report(&u)?);
        if let Some((q, d)) = opts.rescale {
            pi = Some(pi_report(&u, q, d)?);
        }
    } else {
        let reason = format!("hypothesis not satisfied: verdict {verdict:?}");
        refusals.push(Refusal { stage: "useries".into(), reason: reason.clone() });
        if opts.rescale.is_some() {
            refusals.push(Refusal { stage: "pi-ranks".into(), reason });
        }
    }

    let presentation = match outcome {
        Some(SingularOutcome::Range(SingularRange { c, d })) if c == d => {
            let def = opts.deformation.as_ref().map(|(b, i)| (b, *i));
            match g_presentation(m, def, c) {
                Ok(g) => Some(presentation_counts(&g)),
                Err(e) => {
                    refusals.push(Refusal { stage: "presentation".into(), reason: e.to_string() });
                    None
                }
            }
        }
        _ => {
            refusals.push(Refusal {
                stage: "presentation".into(),
                reason: "only generic slices of supersolvable arrangements are presented".into(),
            });
            None
        }
    };

    Ok(Report {
        input: InputSummary { source: opts.source.clone(), hyperplanes: m.ground_size(), rank: m.rank() },
        poincare,
        chain: chain.as_ref().map(|c| ChainSummary {
            stages: c.stages.iter().map(|&s| bits::iter(s).map(|i| i + 1).collect()).collect(),
            step_kinds: c.step_kinds.clone(),
            exponents: c.exponents(),
        }),
        singular_range: match outcome {
            Some(SingularOutcome::Range(r)) => Some(r),
            _ => None,
        },
        supersolvable: outcome == Some(SingularOutcome::Supersolvable),
        verdict,
        homotopy_module,
        useries,
        presentation,
        pi,
        refusals,
    })
}

pub fn presentation_counts(g: &LiePresentation) -> PresentationCounts {
    PresentationCounts {
        x_generators: g.generators.iter().filter(|g| g.bidegree == (1, 0)).count(),
        y_generators: g.generators.iter().filter(|g| g.bidegree != (1, 0)).count(),
        holonomy: g.count(RelationKind::Holonomy),
        flag: g.count(RelationKind::Flag),
        central: g.count(RelationKind::Central),
    }
}

/// `M` table rows `q: m0 m1 ...`.
pub fn format_m_rows(t: &HomotopyTable) -> String {
    let mut s = String::new();
    for q in t.support() {
        let row: Vec<String> = t.row(q).iter().map(|v| v.to_string()).collect();
        s += &format!("{q}: {}\n", row.join(" "));
    }
    s
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input: {} ({} hyperplanes, rank {})", self.input.source, self.input.hyperplanes, self.input.rank)?;
        writeln!(f, "poincare: {}", join(&self.poincare))?;
        match &self.chain {
            Some(c) => {
                let st: Vec<String> = c.stages.iter().map(|s| format!("{{{}}}", join(s).replace(' ', ","))).collect();
                writeln!(f, "chain: {}", st.join(" < "))?;
                writeln!(f, "exponents: {}", join(&c.exponents))?;
            }
            None => writeln!(f, "chain: none (not hypersolvable)")?,
        }
        match (self.supersolvable, self.singular_range) {
            (true, _) => writeln!(f, "singular range: none (supersolvable)")?,
            (_, Some(r)) => writeln!(f, "singular range: ({},{})", r.c, r.d)?,
            _ => {}
        }
        writeln!(f, "verdict: {:?}", self.verdict)?;
        let m = &self.homotopy_module;
        let label = if m.certified { "M" } else { "formal linear-strand homology" };
        writeln!(f, "{label} (p <= {}):", m.p_max)?;
        if m.rows.is_empty() {
            writeln!(f, "  zero")?;
        }
        for (q, row) in &m.rows {
            writeln!(f, "  {q}: {}", join(row))?;
        }
        writeln!(f, "support: {{{}}} at p <= {}, {:?}", join(&m.support).replace(' ', ","), m.p_max, m.support_verdict)?;
        if let Some(c) = &m.closed_form {
            writeln!(f, "closed form h(M,t) = {c} (matches table: {})", m.closed_form_agrees.unwrap_or(false))?;
        }
        writeln!(f, "R dims: {}", join(&m.r_dims))?;
        if let Some(u) = &self.useries {
            writeln!(f, "U (p <= {}):", u.p_max)?;
            for (p, row) in &u.rows {
                let cells: Vec<String> = row.iter().map(|(q, v)| format!("U^{p}_{q}={v}")).collect();
                writeln!(f, "  {}", cells.join(" "))?;
            }
        }
        if let Some(c) = &self.presentation {
            writeln!(
                f,
                "presentation: {} x, {} y, {} holonomy, {} flag, {} central relations",
                c.x_generators, c.y_generators, c.holonomy, c.flag, c.central
            )?;
        }
        if let Some(p) = &self.pi {
            writeln!(f, "rescaled series (q={}): {}", p.rescale, join(&p.u_series).replace(' ', ","))?;
            for (k, v) in &p.pi_ranks {
                writeln!(f, "pi_{k}(Y) (x) Q rank {v}")?;
            }
        }
        for r in &self.refusals {
            writeln!(f, "refused {}: {}", r.stage, r.reason)?;
        }
        Ok(())
    }
}
