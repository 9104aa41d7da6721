//! Γ-series solutions `Φ_{L,γ} = sum_l v^{γ+l} / Γ(γ+l+1)` with exact
//! rational coefficients, truncated in the degree of `l⁺`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};
use crate::geom::{
    extreme_rays, generic_triangulation, is_convergence_direction, zero_in_hull,
    ConvergenceDirection, PointConfig, Simplex, Triangulation,
};
use crate::intlin::{
    coset_representatives, dot_rat, primitive_integer, rat_kernel, rat_mat_vec, rat_rank,
    to_rat_vec, LatticeBasis, Rat,
};
use crate::logpoly::{positive_degree, LogPoly, LogSeries};
use crate::system::{is_nonresonant, is_t_nonresonant, FaceRestriction, GkzSystem};

/// An exponent `γ` with `sum γ_i a_i = α`, integral on the sector `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVector {
    pub gamma: Vec<Rat>,
    pub sector: Vec<usize>,
}

impl GammaVector {
    pub fn new(sys: &GkzSystem, gamma: Vec<Rat>, sector: Vec<usize>) -> Result<Self> {
        let cfg = sys.cfg();
        if gamma.len() != cfg.len() {
            return Err(GkzError::Dimension("gamma must have N entries".into()));
        }
        crate::geom::sector_rays(cfg, &sector)?;
        if cfg.apply_rat(&gamma) != sys.alpha() {
            return Err(GkzError::Precondition(
                "sum of gamma_i a_i differs from alpha".into(),
            ));
        }
        if sector.iter().any(|&i| !gamma[i].is_integer()) {
            return Err(GkzError::Precondition(
                "gamma must be integral on the sector indices".into(),
            ));
        }
        let mut sector = sector;
        sector.sort_unstable();
        Ok(GammaVector { gamma, sector })
    }

    /// The simplex `J = I^c`.
    pub fn simplex(&self) -> Simplex {
        Simplex::new(
            (0..self.gamma.len())
                .filter(|i| !self.sector.contains(i))
                .collect(),
        )
    }

    pub fn nonintegral(&self) -> Vec<usize> {
        (0..self.gamma.len())
            .filter(|&i| !self.gamma[i].is_integer())
            .collect()
    }
}

/// True when `a - b` lies in the relation lattice.
pub fn same_class(cfg: &PointConfig, a: &[Rat], b: &[Rat]) -> bool {
    let diff: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    if diff.iter().any(|x| !x.is_integer()) {
        return false;
    }
    let ints: Vec<BigInt> = diff.iter().map(|x| x.to_integer()).collect();
    cfg.lattice().contains(&ints)
}

/// The `Δ_I = |det A_J|` exponents attached to the simplex `J`, one per class
/// of `Z^I / π_I(L)`, with canonical nonnegative sector entries.
pub fn gamma_choices(sys: &GkzSystem, j: &Simplex) -> Result<Vec<GammaVector>> {
    let cfg = sys.cfg();
    let n = cfg.len();
    if j.indices().len() != cfg.dim() || j.indices().iter().any(|&k| k >= n) {
        return Err(GkzError::Dimension(format!("{j} is not an r-subset")));
    }
    let inv = cfg
        .simplex_inverse(j.indices())
        .map_err(|_| GkzError::SingularSimplex(j.0.clone()))?;
    let sector = j.complement(n);
    let projected: Vec<Vec<BigInt>> = cfg
        .lattice()
        .vectors
        .iter()
        .map(|b| sector.iter().map(|&i| b[i].clone()).collect())
        .collect();
    let reps = coset_representatives(&LatticeBasis::new(sector.len(), projected)?)?;
    let mut out = Vec::with_capacity(reps.index());
    for k in &reps.reps {
        let mut rhs = sys.alpha().to_vec();
        for (t, &i) in sector.iter().enumerate() {
            for (row, a) in rhs.iter_mut().zip(cfg.column(i)) {
                *row -= Rat::from_integer(a * &k[t]);
            }
        }
        let gj = rat_mat_vec(&inv, &rhs);
        let mut gamma = vec![Rat::zero(); n];
        for (t, &i) in sector.iter().enumerate() {
            gamma[i] = Rat::from_integer(k[t].clone());
        }
        for (t, &i) in j.indices().iter().enumerate() {
            gamma[i] = gj[t].clone();
        }
        out.push(GammaVector {
            gamma,
            sector: sector.clone(),
        });
    }
    Ok(out)
}

/// Lattice vectors `l` with `l_i + γ_i >= 0` on the sector and `|l⁺| <= truncation`,
/// in lexicographic order.
///
/// The sector entries range over a box; the simplex entries are then forced
/// by `A l = 0` and kept when integral.
pub(crate) fn sector_terms(
    cfg: &PointConfig,
    gamma: &[Rat],
    sector: &[usize],
    truncation: i64,
) -> Result<Vec<Vec<i64>>> {
    let n = cfg.len();
    let simplex: Vec<usize> = (0..n).filter(|i| !sector.contains(i)).collect();
    if truncation < 0 {
        return Ok(Vec::new());
    }
    let inv = cfg.simplex_inverse(&simplex)?;
    // l_J = -(A_J^{-1} A_I) l_I, held as an integer matrix over a common denominator
    let mut m: Vec<Vec<Rat>> = vec![Vec::with_capacity(sector.len()); simplex.len()];
    for &i in sector {
        let col = rat_mat_vec(&inv, &to_rat_vec(cfg.column(i)));
        for (row, x) in m.iter_mut().zip(col) {
            row.push(-x);
        }
    }
    let denom = m
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let to_i128 = |x: BigInt| {
        x.to_i128()
            .ok_or_else(|| GkzError::Overflow(format!("sector matrix entry {x}")))
    };
    let denom_i = to_i128(denom.clone())?;
    let m_int: Vec<Vec<i128>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| to_i128((x * Rat::from_integer(denom.clone())).to_integer()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let ranges: Vec<std::ops::RangeInclusive<i64>> = sector
        .iter()
        .map(|&i| {
            let low = (-&gamma[i])
                .ceil()
                .to_integer()
                .to_i64()
                .unwrap_or(i64::MAX);
            low..=truncation
        })
        .collect();
    let mut out = Vec::new();
    let mut push = |k: &[i64]| {
        let mut l = vec![0i64; n];
        for (t, &i) in sector.iter().enumerate() {
            l[i] = k[t];
        }
        for (row, &jj) in m_int.iter().zip(&simplex) {
            let s: i128 = row.iter().zip(k).map(|(a, &b)| a * b as i128).sum();
            if s % denom_i != 0 {
                return;
            }
            l[jj] = (s / denom_i) as i64;
        }
        if positive_degree(&l) <= truncation {
            out.push(l);
        }
    };
    if sector.is_empty() {
        push(&[]);
    } else {
        for k in ranges.into_iter().multi_cartesian_product() {
            push(&k);
        }
    }
    out.sort();
    Ok(out)
}

/// `Γ(γ+1)/Γ(γ+l+1)` as a rational for non-integral `γ`.
pub(crate) fn pochhammer_ratio(g: &Rat, l: i64) -> Rat {
    let mut r = Rat::one();
    if l >= 0 {
        for j in 1..=l {
            r /= g + Rat::from_integer(BigInt::from(j));
        }
    } else {
        for j in 0..(-l) {
            r *= g - Rat::from_integer(BigInt::from(j));
        }
    }
    r
}

/// `1/n!`, or 0 for negative `n`.
pub(crate) fn inverse_factorial(n: i64) -> Rat {
    if n < 0 {
        return Rat::zero();
    }
    let f: BigInt = (1..=n).map(BigInt::from).product();
    Rat::new(BigInt::one(), f)
}

/// Coefficient of `v^{γ+l}` up to the constant `prod_{γ_i ∉ Z} 1/Γ(γ_i+1)`.
fn raw_coefficient(gamma: &[Rat], l: &[i64]) -> Rat {
    let mut c = Rat::one();
    for (g, &li) in gamma.iter().zip(l) {
        if g.is_integer() {
            let n = g.to_integer().to_i64().expect("small exponent") + li;
            if n < 0 {
                return Rat::zero();
            }
            c *= inverse_factorial(n);
        } else {
            c *= pochhammer_ratio(g, li);
        }
    }
    c
}

/// A truncated Γ-series.
///
/// The true coefficient of `v^{γ+l}` is
/// `terms[l] * norm * prod_{γ_i ∉ Z} 1/Γ(γ_i+1)`; `norm` is chosen so the
/// `l = 0` term is 1 when it is nonzero, and otherwise the first nonzero term
/// in lexicographic order is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSeries {
    pub gamma: GammaVector,
    pub truncation: i64,
    pub terms: BTreeMap<Vec<i64>, Rat>,
    pub norm: Rat,
}

impl GammaSeries {
    pub fn coefficient(&self, l: &[i64]) -> Rat {
        self.terms.get(l).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_log_series(&self) -> LogSeries {
        let n = self.gamma.gamma.len();
        let mut s = LogSeries::new(self.gamma.gamma.clone(), self.truncation, 0);
        for (l, c) in &self.terms {
            s.terms.insert(l.clone(), LogPoly::constant(n, c.clone()));
        }
        s
    }
}

fn normalize(raw: BTreeMap<Vec<i64>, Rat>) -> Result<(BTreeMap<Vec<i64>, Rat>, Rat)> {
    let n = raw.keys().next().map_or(0, Vec::len);
    let zero = vec![0i64; n];
    let norm = match raw.get(&zero) {
        Some(c) if !c.is_zero() => c.clone(),
        _ => raw
            .values()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(GkzError::DegenerateGamma)?,
    };
    let terms = raw.into_iter().map(|(l, c)| (l, c / &norm)).collect();
    Ok((terms, norm))
}

pub fn gamma_series(sys: &GkzSystem, gamma: &GammaVector, truncation: i64) -> Result<GammaSeries> {
    let ls = sector_terms(sys.cfg(), &gamma.gamma, &gamma.sector, truncation)?;
    let raw: BTreeMap<Vec<i64>, Rat> = ls
        .into_iter()
        .map(|l| {
            let c = raw_coefficient(&gamma.gamma, &l);
            (l, c)
        })
        .collect();
    let (terms, norm) = normalize(raw)?;
    Ok(GammaSeries {
        gamma: gamma.clone(),
        truncation,
        terms,
        norm,
    })
}

/// The series `∂_i Φ_{L,γ} = Φ_{L,γ-e_i}`, a solution of `H_A(α - a_i)`.
pub fn differentiate(s: &GammaSeries, i: usize) -> Result<GammaSeries> {
    let g = &s.gamma.gamma[i];
    let mut gamma = s.gamma.gamma.clone();
    gamma[i] -= Rat::one();
    let in_sector = s.gamma.sector.contains(&i);
    // the constant prod 1/Γ(γ_k+1) gains a factor γ_i when γ_i is not integral
    let prefactor_ratio = if g.is_integer() {
        Rat::one()
    } else {
        g.clone()
    };
    let mut raw = BTreeMap::new();
    for (l, c) in &s.terms {
        let shifted = g + Rat::from_integer(BigInt::from(l[i]));
        if in_sector && shifted.is_zero() {
            continue;
        }
        raw.insert(l.clone(), c * &s.norm * shifted / &prefactor_ratio);
    }
    let (terms, norm) = normalize(raw)?;
    Ok(GammaSeries {
        gamma: GammaVector {
            gamma,
            sector: s.gamma.sector.clone(),
        },
        truncation: s.truncation,
        terms,
        norm,
    })
}

/// Where the terms of a Γ-series are certainly nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportCertificate {
    /// `|R| = r`: every term of the sector is nonzero.
    Full { nonintegral: Vec<usize> },
    /// Terms `l` with `l_i >= apex_i` for every integral `γ_i` are nonzero;
    /// that region is `apex` plus the cone with the given rays and lineality
    /// space, whose interior is nonempty.
    Cone {
        nonintegral: Vec<usize>,
        rays: Vec<Vec<i64>>,
        lineality: Vec<Vec<i64>>,
        interior: Vec<i64>,
        apex: Vec<i64>,
    },
}

impl SupportCertificate {
    pub fn nonintegral(&self) -> &[usize] {
        match self {
            SupportCertificate::Full { nonintegral } => nonintegral,
            SupportCertificate::Cone { nonintegral, .. } => nonintegral,
        }
    }

    /// Whether the certificate promises a nonzero coefficient at `l`.
    pub fn covers(&self, l: &[i64]) -> bool {
        match self {
            SupportCertificate::Full { .. } => true,
            SupportCertificate::Cone {
                nonintegral, apex, ..
            } => (0..l.len())
                .filter(|i| !nonintegral.contains(i))
                .all(|i| l[i] >= apex[i]),
        }
    }
}

/// Result of holding a certificate against the computed terms of a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportCheck {
    /// Computed terms the certificate covers.
    pub covered: usize,
    /// Covered terms whose coefficient is nonetheless zero.
    pub zero: Vec<Vec<i64>>,
}

impl SupportCheck {
    pub fn holds(&self) -> bool {
        self.covered > 0 && self.zero.is_empty()
    }
}

pub fn check_support(s: &GammaSeries, cert: &SupportCertificate) -> SupportCheck {
    let mut covered = 0;
    let mut zero = Vec::new();
    for (l, c) in &s.terms {
        if positive_degree(l) <= s.truncation && cert.covers(l) {
            covered += 1;
            if c.is_zero() {
                zero.push(l.clone());
            }
        }
    }
    SupportCheck { covered, zero }
}

fn lattice_vector(basis: &LatticeBasis, coords: &[Rat]) -> Result<Vec<i64>> {
    let ints = primitive_integer(coords);
    crate::geom::to_i64_vec(&basis.combine(&ints))
}

/// An open cone of everywhere-nonzero terms.
///
/// With `R = {i : γ_i ∉ Z}`, a term vanishes only through an integral entry
/// `γ_i + l_i < 0`, so the region `l_i > 0` for `i ∉ R` (moved far enough
/// from the origin) carries only nonzero terms. It has interior exactly when
/// 0 is not a convex combination of the coordinate forms `l ↦ l_i`, `i ∉ R`.
pub fn full_support_cone(sys: &GkzSystem, gamma: &GammaVector) -> Result<SupportCertificate> {
    if !is_nonresonant(sys).nonresonant {
        return Err(GkzError::Precondition("the system is resonant".into()));
    }
    let nonintegral = gamma.nonintegral();
    if nonintegral.len() >= sys.cfg().dim() {
        return Ok(SupportCertificate::Full { nonintegral });
    }
    let basis = sys.lattice();
    let d = basis.rank();
    let integral: Vec<usize> = (0..gamma.gamma.len())
        .filter(|i| !nonintegral.contains(i))
        .collect();
    let forms: Vec<Vec<Rat>> = integral
        .iter()
        .map(|&i| {
            basis
                .vectors
                .iter()
                .map(|b| Rat::from_integer(b[i].clone()))
                .collect()
        })
        .collect();
    if let Some(lambda) = zero_in_hull(&forms, d) {
        let shown = lambda.iter().map(ToString::to_string).join(", ");
        return Err(GkzError::Internal(format!(
            "0 is the convex combination ({shown}) of the forms l_i for integral gamma_i, \
             contradicting nonresonance"
        )));
    }
    // restrict to the span of the forms, where the cone is pointed
    let mut span: Vec<Vec<Rat>> = Vec::new();
    for f in &forms {
        let mut trial = span.clone();
        trial.push(f.clone());
        if rat_rank(&trial) > span.len() {
            span = trial;
        }
    }
    let reduced: Vec<Vec<Rat>> = forms
        .iter()
        .map(|f| span.iter().map(|b| dot_rat(b, f)).collect())
        .collect();
    let rays_z = extreme_rays(&reduced, span.len());
    let rays_x: Vec<Vec<Rat>> = rays_z
        .iter()
        .map(|z| {
            (0..d)
                .map(|t| {
                    span.iter()
                        .zip(z)
                        .fold(Rat::zero(), |acc, (b, zk)| acc + &b[t] * zk)
                })
                .collect()
        })
        .collect();
    let mut interior_x = vec![Rat::zero(); d];
    for ray in &rays_x {
        let key = primitive_integer(ray);
        for (acc, x) in interior_x.iter_mut().zip(key) {
            *acc += Rat::from_integer(x);
        }
    }
    let rays = rays_x
        .iter()
        .map(|x| lattice_vector(basis, x))
        .collect::<Result<Vec<_>>>()?;
    let lineality = rat_kernel(&forms, d)
        .iter()
        .map(|x| lattice_vector(basis, x))
        .collect::<Result<Vec<_>>>()?;
    let interior = lattice_vector(basis, &interior_x)?;
    if integral.iter().any(|&i| interior[i] <= 0) {
        return Err(GkzError::Internal("support cone has empty interior".into()));
    }
    let mut t = 0i64;
    for &i in &integral {
        let need = (-&gamma.gamma[i]).to_integer().to_i64().unwrap_or(0);
        if need > 0 {
            t = t.max(Integer::div_ceil(&need, &interior[i]));
        }
    }
    let apex = interior.iter().map(|x| x * t).collect();
    Ok(SupportCertificate::Cone {
        nonintegral,
        rays,
        lineality,
        interior,
        apex,
    })
}

/// A partial sum at a complex point.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    /// Sum of the moduli of the terms with `|l⁺|` equal to the truncation.
    pub last_shell: f64,
    /// Set when a direction was supplied: whether it is a convergence
    /// direction for the series' sector.
    pub convergent: Option<bool>,
}

fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Evaluates the stored terms with principal-branch powers.
pub fn evaluate(
    cfg: &PointConfig,
    s: &GammaSeries,
    point: &[Complex64],
    rho: Option<&ConvergenceDirection>,
) -> Result<Evaluation> {
    if point.len() != s.gamma.gamma.len() {
        return Err(GkzError::Dimension("point must have N entries".into()));
    }
    let convergent = match rho {
        Some(r) => Some(is_convergence_direction(cfg, r, &s.gamma.sector)?),
        None => None,
    };
    let logs: Vec<Complex64> = point.iter().map(|z| z.ln()).collect();
    let mut value = Complex64::new(0.0, 0.0);
    let mut last_shell = 0.0;
    for (l, c) in &s.terms {
        if c.is_zero() {
            continue;
        }
        let mut term = Complex64::new(rat_to_f64(c), 0.0);
        for ((g, &li), (z, lz)) in s.gamma.gamma.iter().zip(l).zip(point.iter().zip(&logs)) {
            let e = g + Rat::from_integer(BigInt::from(li));
            if e.is_zero() {
                continue;
            }
            if *z == Complex64::new(0.0, 0.0) {
                term *= if e.is_positive() { 0.0 } else { f64::INFINITY };
                continue;
            }
            term *= (lz * rat_to_f64(&e)).exp();
        }
        if positive_degree(l) == s.truncation {
            last_shell += term.norm();
        }
        value += term;
    }
    Ok(Evaluation {
        value,
        last_shell,
        convergent,
    })
}

/// One Γ-series per exponent choice of every simplex of `t`.
pub fn basis_for_triangulation(
    sys: &GkzSystem,
    t: &Triangulation,
    truncation: i64,
) -> Result<Vec<GammaSeries>> {
    let report = is_t_nonresonant(sys, t)?;
    if report.t_nonresonant != Some(true) {
        let which = report
            .simplices
            .unwrap_or_default()
            .iter()
            .filter(|s| s.resonant)
            .map(|s| Simplex(s.simplex.clone()).to_string())
            .join(", ");
        return Err(GkzError::TResonant(format!("resonant simplices {which}")));
    }
    let mut out = Vec::new();
    for j in &t.simplices {
        for g in gamma_choices(sys, j)? {
            out.push(gamma_series(sys, &g, truncation)?);
        }
    }
    Ok(out)
}

/// Γ-series of the restricted system of a face, lifted to the full
/// configuration of `n` points. They are formal solutions whether or not
/// the restricted parameter is resonant; exponents whose series vanish are
/// skipped.
pub fn face_solutions(
    fr: &FaceRestriction,
    n: usize,
    truncation: i64,
    seed: u64,
) -> Result<Vec<LogSeries>> {
    let sub = &fr.system;
    let t = generic_triangulation(sub.cfg(), seed)?;
    let mut out: Vec<LogSeries> = Vec::new();
    for j in &t.simplices {
        for g in gamma_choices(sub, j)? {
            match gamma_series(sub, &g, truncation) {
                Ok(s) => {
                    let lifted = fr.lift_series(&s.to_log_series(), n);
                    if !out.contains(&lifted) {
                        out.push(lifted);
                    }
                }
                Err(GkzError::DegenerateGamma) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rat;
    use crate::system::tests::{e1, e1_square_t, e2};

    /// Γ(γ+1)/Γ(γ+l+1) by the recurrence Γ(x+1) = xΓ(x), one step at a time.
    fn ratio_oracle(g: &Rat, l: i64) -> Rat {
        let mut x = g.clone() + Rat::one();
        let mut r = Rat::one();
        if l >= 0 {
            for _ in 0..l {
                r /= x.clone();
                x += Rat::one();
            }
        } else {
            for _ in 0..(-l) {
                x -= Rat::one();
                r *= x.clone();
            }
        }
        r
    }

    #[test]
    fn pochhammer_matches_recurrence() {
        for (p, q) in [(1, 3), (-2, 15), (5, 7), (-7, 2)] {
            for l in -4..=4 {
                assert_eq!(pochhammer_ratio(&rat(p, q), l), ratio_oracle(&rat(p, q), l));
            }
        }
    }

    #[test]
    fn choices_unit_square() {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 1, 3])).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(
            g[0].gamma,
            vec![rat(-2, 15), rat(4, 21), rat(0, 1), rat(1, 7)]
        );
        assert_eq!(g[0].sector, vec![2]);
    }

    #[test]
    fn choices_twisted_cubic() {
        let sys = e2(&[(1, 2), (1, 3)]);
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 3])).unwrap();
        assert_eq!(g.len(), 3);
        for (a, b) in g.iter().tuple_combinations() {
            assert!(!same_class(sys.cfg(), &a.gamma, &b.gamma));
        }
        for x in &g {
            assert_eq!(sys.cfg().apply_rat(&x.gamma), sys.alpha());
        }
        assert!(matches!(
            gamma_choices(&sys, &Simplex::new(vec![1, 1])),
            Err(GkzError::Dimension(_))
        ));
    }

    #[test]
    fn series_unit_square() {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 1, 3]))
            .unwrap()
            .remove(0);
        let s = gamma_series(&sys, &g, 8).unwrap();
        assert_eq!(s.coefficient(&[0, 0, 0, 0]), Rat::one());
        assert_eq!(s.coefficient(&[-1, 1, 1, -1]), rat(-2, 125));
        // l_3 + γ_3 = -1 is outside the sector; 4 terms with k = 0..=4
        assert_eq!(s.terms.len(), 5);
        assert!(s.terms.keys().all(|l| l[2] >= 0));
    }

    #[test]
    fn zero_coefficient_rule() {
        // γ_4 = 0 on the simplex side: terms with γ_4 + l_4 < 0 vanish exactly
        let sys = e1(&[(1, 5), (1, 3), (0, 1)]);
        let g = GammaVector::new(
            &sys,
            vec![rat(-2, 15), rat(1, 3), rat(0, 1), rat(0, 1)],
            vec![2],
        )
        .unwrap();
        let s = gamma_series(&sys, &g, 8).unwrap();
        assert_eq!(s.coefficient(&[0, 0, 0, 0]), Rat::one());
        for k in 1..=4 {
            assert_eq!(s.coefficient(&[-k, k, k, -k]), Rat::zero());
        }
        let claim_all = SupportCertificate::Full {
            nonintegral: vec![0, 1],
        };
        assert_eq!(check_support(&s, &claim_all).zero.len(), 4);
        let g2 = GammaVector::new(
            &sys,
            vec![rat(1, 5), rat(1, 3), rat(0, 1), rat(-1, 3)],
            vec![2],
        );
        assert!(g2.is_err());
    }

    #[test]
    fn degenerate_normalizer() {
        // nothing but the l = 0 term in a zero lattice, and it vanishes
        let sys = crate::system::build_system(
            crate::intlin::IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap(),
            vec![rat(-1, 1), rat(0, 1)],
        )
        .unwrap();
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 1]))
            .unwrap()
            .remove(0);
        assert_eq!(g.gamma, vec![rat(-1, 1), rat(0, 1)]);
        assert_eq!(gamma_series(&sys, &g, 3), Err(GkzError::DegenerateGamma));
    }

    #[test]
    fn differentiation_matches_shifted_series() {
        for sys in [e1(&[(1, 5), (1, 3), (1, 7)]), e2(&[(1, 2), (1, 3)])] {
            let t = crate::geom::generic_triangulation(sys.cfg(), 3).unwrap();
            for s in basis_for_triangulation(&sys, &t, 8).unwrap() {
                for i in 0..sys.cfg().len() {
                    let d = differentiate(&s, i).unwrap();
                    let shifted = sys.contiguous(i);
                    let mut gamma = s.gamma.gamma.clone();
                    gamma[i] -= Rat::one();
                    let gv = GammaVector::new(&shifted, gamma, s.gamma.sector.clone()).unwrap();
                    assert_eq!(d, gamma_series(&shifted, &gv, 8).unwrap());
                }
            }
        }
    }

    #[test]
    fn differentiation_commutes() {
        let sys = e2(&[(1, 2), (1, 3)]);
        let t = crate::geom::generic_triangulation(sys.cfg(), 1).unwrap();
        for s in basis_for_triangulation(&sys, &t, 8).unwrap() {
            for (i, j) in (0..4).tuple_combinations() {
                let a = differentiate(&differentiate(&s, i).unwrap(), j).unwrap();
                let b = differentiate(&differentiate(&s, j).unwrap(), i).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn annihilated_term_disappears() {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 1, 3]))
            .unwrap()
            .remove(0);
        let s = gamma_series(&sys, &g, 6).unwrap();
        // γ_3 = 0 and l_3 = 0 at the origin: ∂_3 kills that term
        let d = differentiate(&s, 2).unwrap();
        assert!(!d.terms.contains_key(&vec![0, 0, 0, 0]));
        assert_eq!(d.gamma.gamma[2], rat(-1, 1));
    }

    #[test]
    fn support_certificates() {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 1, 3]))
            .unwrap()
            .remove(0);
        assert_eq!(
            full_support_cone(&sys, &g).unwrap(),
            SupportCertificate::Full {
                nonintegral: vec![0, 1, 3]
            }
        );
        // α_1 - α_2 integral makes γ_1 integral on J = {1,2}
        let sys = e2(&[(1, 3), (1, 3)]);
        assert!(is_nonresonant(&sys).nonresonant);
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 1]))
            .unwrap()
            .remove(0);
        assert!(g.gamma[0].is_integer());
        let cert = full_support_cone(&sys, &g).unwrap();
        let SupportCertificate::Cone { rays, interior, .. } = &cert else {
            panic!("expected a cone, got {cert:?}");
        };
        assert!(!rays.is_empty());
        assert!(interior.iter().enumerate().all(|(i, &x)| i == 1 || x > 0));
        let s = gamma_series(&sys, &g, 10).unwrap();
        let covered: Vec<_> = s.terms.iter().filter(|(l, _)| cert.covers(l)).collect();
        assert!(!covered.is_empty());
        assert!(covered.iter().all(|(_, c)| !c.is_zero()));
        assert!(check_support(&s, &cert).holds());
        assert!(matches!(
            full_support_cone(&e2(&[(1, 2), (1, 1)]), &g),
            Err(GkzError::Precondition(_))
        ));
    }

    #[test]
    fn lifted_face_solution() {
        let sys = e1(&[(1, 2), (0, 1), (1, 2)]);
        let w = crate::system::reducibility_witness(&sys).unwrap().unwrap();
        let sols = face_solutions(&w.restriction, 4, 8, 0).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(
            sols[0].gamma,
            vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1)]
        );
        assert_eq!(sols[0].terms.len(), 1);
    }

    #[test]
    fn basis_sizes() {
        let t = e1_square_t();
        assert_eq!(
            basis_for_triangulation(&e1(&[(1, 5), (1, 3), (1, 7)]), &t, 8)
                .unwrap()
                .len(),
            2
        );
        assert!(matches!(
            basis_for_triangulation(&e1(&[(1, 1), (1, 2), (1, 2)]), &t, 8),
            Err(GkzError::TResonant(_))
        ));
        let sys = e2(&[(1, 2), (1, 3)]);
        let h: Vec<Rat> = [0, 1, 4, 9].iter().map(|&x| rat(x, 1)).collect();
        let t = crate::geom::regular_triangulation(sys.cfg(), &h).unwrap();
        let b = basis_for_triangulation(&sys, &t, 8).unwrap();
        assert_eq!(b.len(), 3);
        for (x, y) in b.iter().tuple_combinations() {
            assert!(!same_class(sys.cfg(), &x.gamma.gamma, &y.gamma.gamma));
        }
    }

    #[test]
    fn evaluation_basics() {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        let g = gamma_choices(&sys, &Simplex::new(vec![0, 1, 3]))
            .unwrap()
            .remove(0);
        let mut s = gamma_series(&sys, &g, 0).unwrap();
        s.gamma.gamma = vec![Rat::zero(); 4];
        let one = Complex64::new(1.0, 0.0);
        let e = evaluate(
            sys.cfg(),
            &s,
            &[one, one, one, Complex64::new(0.3, 0.2)],
            None,
        )
        .unwrap();
        assert!((e.value - one).norm() < 1e-15);
    }
}
