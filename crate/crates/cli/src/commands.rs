//! The seven verbs. Each returns a serializable result and a human rendering.

use gkz_core::geom::{
    facet_forms, generic_triangulation, is_convergence_direction, pyramid_apexes,
    regular_triangulation, total_volume, triangulation_from_direction, ConvergenceDirection,
    Simplex, Triangulation,
};
use gkz_core::logseries::full_basis_blocks;
use gkz_core::series::{
    basis_for_triangulation, check_support, evaluate, face_solutions, full_support_cone,
    gamma_choices, gamma_series, GammaSeries,
};
use gkz_core::system::{
    face_restrict, is_nonresonant, rank, reducibility_witness, FaceRestriction, GkzSystem,
};
use gkz_core::weyl::{
    annihilation_residuals, contiguity_inverse, ContiguityConfig, DEFAULT_EFFORT,
};
use gkz_core::{GkzError, Result as CoreResult};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::job::{Input, JobSpec};
use crate::report::{
    big_i64, big_vec, one_based, operator_terms, rat_str, rat_strs, render_series, OperatorTerm,
    SeriesOut, SupportOut,
};
use crate::CliError;

/// Terms shown per series in human output.
const HUMAN_TERMS: usize = 6;

pub struct Outcome {
    pub command: &'static str,
    pub job: JobSpec,
    pub result: Value,
    pub human: String,
    /// Set when the command ran but its check failed.
    pub failure: Option<CliError>,
}

fn outcome<T: Serialize>(
    command: &'static str,
    job: &JobSpec,
    result: &T,
    human: String,
) -> Result<Outcome, CliError> {
    Ok(Outcome {
        command,
        job: job.clone(),
        result: serde_json::to_value(result).map_err(|e| CliError::Internal(e.to_string()))?,
        human,
        failure: None,
    })
}

fn triangulation_for(job: &JobSpec, sys: &GkzSystem) -> Result<Triangulation, CliError> {
    let cfg = sys.cfg();
    if let Some(h) = job.heights()? {
        return Ok(regular_triangulation(cfg, &h)?);
    }
    if let Some(rho) = job.rho()? {
        return Ok(triangulation_from_direction(
            cfg,
            &ConvergenceDirection(rho),
        )?);
    }
    Ok(generic_triangulation(cfg, job.seed())?)
}

fn simplex_list(t: &Triangulation) -> Vec<Vec<usize>> {
    t.simplices.iter().map(|s| one_based(s.indices())).collect()
}

// ---------------------------------------------------------------- analyze

#[derive(Serialize, Deserialize)]
struct FacetOut {
    form: String,
    coeffs: Vec<i64>,
    value: String,
    integral: bool,
}

#[derive(Serialize, Deserialize)]
struct WitnessOut {
    facet: String,
    shift: Vec<i64>,
    points: Vec<usize>,
    beta: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AnalyzeOut {
    points: usize,
    dim: usize,
    lattice_basis: Vec<Vec<i64>>,
    facets: Vec<FacetOut>,
    volume: i64,
    pyramid_apexes: Vec<usize>,
    nonresonant: bool,
    rank: i64,
    warnings: Vec<String>,
    hint: Option<String>,
    witness: Option<WitnessOut>,
}

fn witness_out(sys: &GkzSystem) -> Result<Option<WitnessOut>, CliError> {
    let Some(w) = reducibility_witness(sys)? else {
        return Ok(None);
    };
    Ok(Some(WitnessOut {
        facet: w.facet.to_string(),
        shift: big_vec(&w.shift)?,
        points: one_based(&w.restriction.points),
        beta: rat_strs(&w.restriction.beta),
    }))
}

pub fn analyze(input: &Input) -> Result<Outcome, CliError> {
    let job = &input.job;
    let sys = job.system()?;
    let cfg = sys.cfg();
    let res = is_nonresonant(&sys);
    let rk = rank(&sys);
    let facets = res
        .facets
        .iter()
        .map(|f| {
            Ok(FacetOut {
                form: f.form.to_string(),
                coeffs: big_vec(&f.form.coeffs)?,
                value: rat_str(&f.value),
                integral: f.integral,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let (hint, witness) = if res.nonresonant {
        (None, None)
    } else {
        let w = witness_out(&sys)?;
        let hint = Some(
            "alpha is resonant; `gkz restrict` builds the face restriction behind a reducibility witness"
                .to_string(),
        );
        (hint, w)
    };
    let out = AnalyzeOut {
        points: cfg.len(),
        dim: cfg.dim(),
        lattice_basis: cfg.relations().to_vec(),
        facets,
        volume: big_i64(&total_volume(cfg))?,
        pyramid_apexes: one_based(&pyramid_apexes(cfg)),
        nonresonant: res.nonresonant,
        rank: big_i64(&rk.rank)?,
        warnings: rk.warnings.clone(),
        hint,
        witness,
    };
    let mut h = format!("{} points in Z^{}\n", out.points, out.dim);
    h.push_str(&format!("lattice basis: {:?}\n", out.lattice_basis));
    h.push_str("facets:\n");
    for f in &out.facets {
        let mark = if f.integral { "  <- integral" } else { "" };
        h.push_str(&format!("  {} at alpha = {}{mark}\n", f.form, f.value));
    }
    h.push_str(&format!("volume: {}\n", out.volume));
    match out.pyramid_apexes.as_slice() {
        [] => h.push_str("pyramid: no\n"),
        apexes => h.push_str(&format!("pyramid: apex {:?}\n", apexes)),
    }
    h.push_str(&format!(
        "resonance: {}\n",
        if out.nonresonant {
            "nonresonant"
        } else {
            "resonant"
        }
    ));
    h.push_str(&format!("rank: {}\n", out.rank));
    for w in &out.warnings {
        h.push_str(&format!("warning: {w}\n"));
    }
    if let Some(hint) = &out.hint {
        h.push_str(&format!("hint: {hint}\n"));
    }
    if let Some(w) = &out.witness {
        h.push_str(&format!(
            "witness: facet {}, shift {:?}, beta = ({})\n",
            w.facet,
            w.shift,
            w.beta.join(", ")
        ));
    }
    outcome("analyze", job, &out, h)
}

// ---------------------------------------------------------------- triangulate

#[derive(Serialize, Deserialize)]
struct SimplexOut {
    points: Vec<usize>,
    volume: i64,
    convergent: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct TriangulateOut {
    heights: Option<Vec<String>>,
    simplices: Vec<SimplexOut>,
    total_volume: i64,
    volume_matches: bool,
    rho_consistent: Option<bool>,
}

pub fn triangulate(input: &Input) -> Result<Outcome, CliError> {
    let job = &input.job;
    let cfg = job.config()?;
    let t = match job.heights()? {
        Some(h) => regular_triangulation(&cfg, &h)?,
        None => match job.rho()? {
            Some(rho) => triangulation_from_direction(&cfg, &ConvergenceDirection(rho))?,
            None => generic_triangulation(&cfg, job.seed())?,
        },
    };
    let rho = job.rho()?.map(ConvergenceDirection);
    let mut simplices = Vec::new();
    for s in &t.simplices {
        let convergent = match &rho {
            Some(r) => Some(is_convergence_direction(&cfg, r, &s.complement(cfg.len()))?),
            None => None,
        };
        simplices.push(SimplexOut {
            points: one_based(s.indices()),
            volume: big_i64(&cfg.simplex_det(s.indices()).abs())?,
            convergent,
        });
    }
    let total = big_i64(&total_volume(&cfg))?;
    let sum: i64 = simplices.iter().map(|s| s.volume).sum();
    let out = TriangulateOut {
        heights: t.heights.as_ref().map(|h| rat_strs(h)),
        rho_consistent: rho
            .as_ref()
            .map(|_| simplices.iter().all(|s| s.convergent == Some(true))),
        simplices,
        total_volume: total,
        volume_matches: sum == total,
    };
    let mut h = String::new();
    if let Some(hs) = &out.heights {
        h.push_str(&format!("heights: ({})\n", hs.join(", ")));
    }
    for s in &out.simplices {
        let conv = match s.convergent {
            Some(true) => ", rho converges",
            Some(false) => ", rho does not converge",
            None => "",
        };
        h.push_str(&format!(
            "{} volume {}{conv}\n",
            Simplex(s.points.iter().map(|i| i - 1).collect()),
            s.volume
        ));
    }
    h.push_str(&format!(
        "total volume {} (sum {})\n",
        out.total_volume, sum
    ));
    outcome("triangulate", job, &out, h)
}

// ---------------------------------------------------------------- series

#[derive(Serialize, Deserialize)]
struct EvaluationOut {
    re: f64,
    im: f64,
    last_shell: f64,
    convergent: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct GammaSeriesOut {
    simplex: Vec<usize>,
    sector: Vec<usize>,
    norm: String,
    support: SupportOut,
    support_holds: bool,
    evaluation: Option<EvaluationOut>,
    series: SeriesOut,
}

#[derive(Serialize, Deserialize)]
struct SeriesListOut {
    triangulation: Vec<Vec<usize>>,
    count: usize,
    series: Vec<GammaSeriesOut>,
}

fn rat_f64(r: &gkz_core::intlin::Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn series(input: &Input) -> Result<Outcome, CliError> {
    let job = &input.job;
    let sys = job.system()?;
    let cfg = sys.cfg();
    let trunc = job.truncation();
    let t = triangulation_for(job, &sys)?;
    let list: Vec<GammaSeries> = match job.simplex0()? {
        Some(j) => gamma_choices(&sys, &Simplex::new(j))?
            .iter()
            .map(|g| gamma_series(&sys, g, trunc))
            .collect::<CoreResult<_>>()?,
        None => basis_for_triangulation(&sys, &t, trunc)?,
    };
    let point = job.point()?.map(|p| {
        p.iter()
            .map(|x| Complex64::new(rat_f64(x), 0.0))
            .collect::<Vec<_>>()
    });
    let rho = job.rho()?.map(ConvergenceDirection);
    let nonresonant = is_nonresonant(&sys).nonresonant;
    let mut out = Vec::new();
    for s in &list {
        let (support, holds) = if nonresonant {
            let cert = full_support_cone(&sys, &s.gamma)?;
            let holds = check_support(s, &cert).holds();
            (SupportOut::from(&cert), holds)
        } else {
            (
                SupportOut::Full {
                    nonintegral: Vec::new(),
                },
                false,
            )
        };
        let evaluation = match &point {
            Some(p) => {
                let e = evaluate(cfg, s, p, rho.as_ref())?;
                Some(EvaluationOut {
                    re: e.value.re,
                    im: e.value.im,
                    last_shell: e.last_shell,
                    convergent: e.convergent,
                })
            }
            None => None,
        };
        out.push(GammaSeriesOut {
            simplex: one_based(s.gamma.simplex().indices()),
            sector: one_based(&s.gamma.sector),
            norm: rat_str(&s.norm),
            support,
            support_holds: holds,
            evaluation,
            series: SeriesOut::from_series(&s.to_log_series()),
        });
    }
    let res = SeriesListOut {
        triangulation: simplex_list(&t),
        count: out.len(),
        series: out,
    };
    let mut h = format!("{} series\n", res.count);
    for (s, o) in list.iter().zip(&res.series) {
        h.push_str(&format!("simplex {}:\n", s.gamma.simplex()));
        h.push_str(&render_series(&s.to_log_series(), HUMAN_TERMS));
        if let Some(e) = &o.evaluation {
            h.push_str(&format!("    value at point: {} + {}i\n", e.re, e.im));
        }
    }
    outcome("series", job, &res, h)
}

// ---------------------------------------------------------------- logbasis

#[derive(Serialize, Deserialize)]
struct BlockOut {
    simplices: Vec<Vec<usize>>,
    gamma0: Vec<String>,
    series: Vec<SeriesOut>,
}

#[derive(Serialize, Deserialize)]
struct LogBasisOut {
    triangulation: Vec<Vec<usize>>,
    count: usize,
    blocks: Vec<BlockOut>,
}

pub fn logbasis(input: &Input) -> Result<Outcome, CliError> {
    let job = &input.job;
    let sys = job.system()?;
    let t = triangulation_for(job, &sys)?;
    let blocks = full_basis_blocks(&sys, &t, job.truncation(), job.eps_order)?;
    let res = LogBasisOut {
        triangulation: simplex_list(&t),
        count: blocks.iter().map(|b| b.series.len()).sum(),
        blocks: blocks
            .iter()
            .map(|b| BlockOut {
                simplices: b.simplices.iter().map(|s| one_based(s.indices())).collect(),
                gamma0: rat_strs(&b.gamma0),
                series: b.series.iter().map(SeriesOut::from_series).collect(),
            })
            .collect(),
    };
    let mut h = format!("{} solutions\n", res.count);
    for b in &blocks {
        let names: Vec<String> = b.simplices.iter().map(|s| s.to_string()).collect();
        h.push_str(&format!("block {}:\n", names.join(" ")));
        for s in &b.series {
            h.push_str(&render_series(s, HUMAN_TERMS));
        }
    }
    outcome("logbasis", job, &res, h)
}

// ---------------------------------------------------------------- verify

#[derive(Serialize, Deserialize)]
struct ResidualOut {
    operator: String,
    residual: String,
    truncation: i64,
}

#[derive(Serialize, Deserialize)]
struct VerifiedSeries {
    gamma: Vec<String>,
    weight: usize,
    residuals: Vec<ResidualOut>,
}

#[derive(Serialize, Deserialize)]
struct VerifyOut {
    source: String,
    all_zero: bool,
    series: Vec<VerifiedSeries>,
}

/// Every series object found anywhere in a report result.
fn collect_series(v: &Value, out: &mut Vec<SeriesOut>) {
    match v {
        Value::Object(map) => {
            if map.contains_key("gamma") && map.contains_key("terms") {
                if let Ok(s) = serde_json::from_value::<SeriesOut>(v.clone()) {
                    out.push(s);
                    return;
                }
            }
            for x in map.values() {
                collect_series(x, out);
            }
        }
        Value::Array(xs) => xs.iter().for_each(|x| collect_series(x, out)),
        _ => {}
    }
}

pub fn verify(input: &Input) -> Result<Outcome, CliError> {
    let job = &input.job;
    let sys = job.system()?;
    let mut supplied = Vec::new();
    if let Some(r) = &input.result {
        collect_series(r, &mut supplied);
    }
    let (source, basis) = if supplied.is_empty() {
        let t = triangulation_for(job, &sys)?;
        let blocks = full_basis_blocks(&sys, &t, job.truncation(), job.eps_order)?;
        (
            "built",
            blocks
                .into_iter()
                .flat_map(|b| b.series)
                .collect::<Vec<_>>(),
        )
    } else {
        (
            "supplied",
            supplied
                .iter()
                .map(SeriesOut::to_series)
                .collect::<Result<Vec<_>, _>>()?,
        )
    };
    let mut all_zero = true;
    let mut series = Vec::new();
    for s in &basis {
        if s.len() != sys.cfg().len() {
            return Err(CliError::Parse(
                "supplied series has the wrong number of exponents".into(),
            ));
        }
        let residuals = annihilation_residuals(&sys, s)
            .into_iter()
            .map(|r| {
                all_zero &= r.nonzero == 0;
                ResidualOut {
                    operator: r.operator,
                    residual: if r.nonzero == 0 {
                        "0".into()
                    } else {
                        format!("{} nonzero terms", r.nonzero)
                    },
                    truncation: r.truncation,
                }
            })
            .collect();
        series.push(VerifiedSeries {
            gamma: rat_strs(&s.gamma),
            weight: s.weight,
            residuals,
        });
    }
    let res = VerifyOut {
        source: source.into(),
        all_zero,
        series,
    };
    let mut h = format!("{} series ({source})\n", res.series.len());
    for s in &res.series {
        h.push_str(&format!(
            "gamma = ({}), weight {}\n",
            s.gamma.join(", "),
            s.weight
        ));
        for r in &s.residuals {
            h.push_str(&format!("  {}: {}\n", r.operator, r.residual));
        }
    }
    h.push_str(if all_zero {
        "all residuals are 0\n"
    } else {
        "NONZERO RESIDUALS\n"
    });
    let mut o = outcome("verify", job, &res, h)?;
    if !all_zero {
        let msg = "some operator does not annihilate a series".to_string();
        o.failure = Some(if source == "built" {
            CliError::Internal(msg)
        } else {
            CliError::User(msg)
        });
    }
    Ok(o)
}

// ---------------------------------------------------------------- contiguity

#[derive(Serialize, Deserialize)]
struct ContiguityOut {
    column: usize,
    effort: usize,
    rounds: usize,
    trace: Vec<String>,
    terms: usize,
    operator: Vec<OperatorTerm>,
    certified_series: usize,
    certified_truncation: i64,
}

/// `GKZ_EFFORT` overrides the default bound on raising rounds.
pub fn effort_from_env() -> Result<usize, CliError> {
    match std::env::var("GKZ_EFFORT") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("GKZ_EFFORT={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_EFFORT),
    }
}

pub fn contiguity(input: &Input) -> Result<Outcome, CliError> {
    let job = &input.job;
    let sys = job.system()?;
    let i = job.column0()?;
    let effort = effort_from_env()?;
    let triangulation = match (job.heights()?, job.rho()?) {
        (None, None) => None,
        _ => Some(triangulation_for(job, &sys)?),
    };
    let config = ContiguityConfig {
        effort,
        truncation: job.truncation(),
        triangulation,
        seed: job.seed(),
    };
    let inv = contiguity_inverse(&sys, i, &config)?;
    let res = ContiguityOut {
        column: i + 1,
        effort,
        rounds: inv.rounds,
        trace: inv.trace.clone(),
        terms: inv.operator.len(),
        operator: operator_terms(&inv.operator),
        certified_series: inv.certified_series,
        certified_truncation: inv.certified_truncation,
    };
    let mut h = format!(
        "inverse of ∂{} after {} rounds: {} terms\n",
        i + 1,
        inv.rounds,
        inv.operator.len()
    );
    for line in &inv.trace {
        h.push_str(&format!("  {line}\n"));
    }
    h.push_str(&format!("P' = {}\n", inv.operator));
    h.push_str(&format!(
        "certificate: P'∂{} s = s on {} basis series up to |l+| <= {}\n",
        i + 1,
        inv.certified_series,
        inv.certified_truncation
    ));
    outcome("contiguity", job, &res, h)
}

// ---------------------------------------------------------------- restrict

#[derive(Serialize, Deserialize)]
struct RestrictOut {
    facets: Vec<String>,
    shift: Option<Vec<i64>>,
    points: Vec<usize>,
    matrix: Vec<Vec<i64>>,
    beta: Vec<String>,
    restricted_alpha: Vec<String>,
    solutions: Vec<SeriesOut>,
    annihilated: bool,
}

/// A restriction and, when searched for, the shift that produced it.
type Restriction = (FaceRestriction, Option<Vec<i64>>);

fn restriction_for(job: &JobSpec, sys: &GkzSystem) -> Result<Option<Restriction>, CliError> {
    let forms = facet_forms(sys.cfg());
    if let Some(idx) = job.facets0(forms.len())? {
        let beta = job.beta()?.unwrap_or_else(|| sys.alpha().to_vec());
        return Ok(Some((face_restrict(sys, &idx, &beta)?, None)));
    }
    Ok(reducibility_witness(sys)?
        .map(|w| (w.restriction, Some(w.shift)))
        .map(|(r, s)| {
            let shift = s.map(|v| v.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect());
            (r, shift)
        }))
}

pub fn restrict(input: &Input) -> Result<Outcome, CliError> {
    let job = &input.job;
    let sys = job.system()?;
    let Some((fr, shift)) = restriction_for(job, &sys)? else {
        return Err(CliError::User(
            "no facet takes an integral value at alpha: the system has no reducibility witness"
                .into(),
        ));
    };
    let n = sys.cfg().len();
    let lifted = face_solutions(&fr, n, job.truncation(), job.seed())?;
    let annihilated = lifted.iter().all(|s| {
        annihilation_residuals(&sys, s)
            .iter()
            .all(|r| r.nonzero == 0)
    });
    let matrix = fr
        .system
        .cfg()
        .matrix()
        .row_vecs()
        .iter()
        .map(|r| big_vec(r))
        .collect::<Result<Vec<_>, _>>()?;
    let res = RestrictOut {
        facets: fr.facets.iter().map(|f| f.to_string()).collect(),
        shift,
        points: one_based(&fr.points),
        matrix,
        beta: rat_strs(&fr.beta),
        restricted_alpha: rat_strs(fr.system.alpha()),
        solutions: lifted.iter().map(SeriesOut::from_series).collect(),
        annihilated,
    };
    let mut h = format!(
        "face {} with points {:?}\n",
        res.facets.join(", "),
        res.points
    );
    if let Some(s) = &res.shift {
        h.push_str(&format!("shift m = {s:?}\n"));
    }
    h.push_str(&format!(
        "beta = ({}); restricted system A~ = {:?}, beta~ = ({})\n",
        res.beta.join(", "),
        res.matrix,
        res.restricted_alpha.join(", ")
    ));
    h.push_str(&format!("{} lifted solutions\n", lifted.len()));
    for s in &lifted {
        h.push_str(&render_series(s, HUMAN_TERMS));
    }
    h.push_str(if annihilated {
        "lifted solutions are annihilated by the full system\n"
    } else {
        "LIFTED SOLUTIONS ARE NOT ANNIHILATED\n"
    });
    let mut o = outcome("restrict", job, &res, h)?;
    if !annihilated {
        o.failure = Some(CliError::Internal(
            "lifted face solution fails the full system".into(),
        ));
    }
    Ok(o)
}

impl From<GkzError> for CliError {
    fn from(e: GkzError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Core(e)
        }
    }
}
