//! The system `H_A(alpha)`: operators, resonance diagnostics, rank, and the
//! face restrictions that witness reducibility of resonant systems.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{GkzError, Result};
use crate::geom::{
    facet_forms, is_pyramid, simplex_facet_forms, total_volume, FacetForm, PointConfig,
    Triangulation,
};
use crate::intlin::{
    ext_gcd, hermite_normal_form, rat_inverse, rat_mat_vec, saturated_kernel, to_rat_vec,
    IntMatrix, LatticeBasis, Rat,
};
use crate::logpoly::LogSeries;

/// A configuration together with a rational parameter `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkzSystem {
    cfg: PointConfig,
    alpha: Vec<Rat>,
    facets: Vec<FacetForm>,
}

impl GkzSystem {
    pub fn new(cfg: PointConfig, alpha: Vec<Rat>) -> Result<Self> {
        if alpha.len() != cfg.dim() {
            return Err(GkzError::Dimension(format!(
                "alpha has {} entries, expected {}",
                alpha.len(),
                cfg.dim()
            )));
        }
        let facets = facet_forms(&cfg);
        Ok(GkzSystem { cfg, alpha, facets })
    }

    pub fn cfg(&self) -> &PointConfig {
        &self.cfg
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn facets(&self) -> &[FacetForm] {
        &self.facets
    }

    pub fn lattice(&self) -> &LatticeBasis {
        self.cfg.lattice()
    }

    /// The same configuration with another parameter.
    pub fn with_alpha(&self, alpha: Vec<Rat>) -> Result<Self> {
        if alpha.len() != self.cfg.dim() {
            return Err(GkzError::Dimension("alpha length".into()));
        }
        Ok(GkzSystem {
            cfg: self.cfg.clone(),
            alpha,
            facets: self.facets.clone(),
        })
    }

    /// The system `H_A(alpha - a_i)` reached by `∂_i`.
    pub fn contiguous(&self, i: usize) -> Self {
        let alpha = self
            .alpha
            .iter()
            .zip(self.cfg.column(i))
            .map(|(a, c)| a - Rat::from_integer(c.clone()))
            .collect();
        self.with_alpha(alpha).expect("same dimension")
    }

    pub fn euler_operators(&self) -> Vec<EulerOperator> {
        (0..self.cfg.dim())
            .map(|i| EulerOperator {
                row: i,
                coeffs: self.cfg.matrix().row(i).to_vec(),
                alpha: self.alpha[i].clone(),
            })
            .collect()
    }

    /// Box operators of the stored lattice basis.
    pub fn basis_boxes(&self) -> Vec<BoxOperator> {
        self.cfg
            .relations()
            .iter()
            .map(|l| BoxOperator { l: l.clone() })
            .collect()
    }
}

pub fn build_system(a: IntMatrix, alpha: Vec<Rat>) -> Result<GkzSystem> {
    GkzSystem::new(PointConfig::new(a)?, alpha)
}

/// `Z_i - alpha_i` with `Z_i = sum_j a_ij v_j ∂_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerOperator {
    pub row: usize,
    pub coeffs: Vec<BigInt>,
    pub alpha: Rat,
}

impl fmt::Display for EulerOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_one() {
                String::new()
            } else {
                format!("{c}")
            };
            parts.push(format!("{coef}v{}∂{}", j + 1, j + 1));
        }
        write!(
            f,
            "Z{} - {} = {} - {}",
            self.row + 1,
            self.alpha,
            parts.join(" + "),
            self.alpha
        )
    }
}

/// `∂^{l+} - ∂^{l-}` for a relation `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxOperator {
    pub l: Vec<i64>,
}

impl BoxOperator {
    pub fn plus(&self) -> Vec<u32> {
        self.l.iter().map(|&x| x.max(0) as u32).collect()
    }

    pub fn minus(&self) -> Vec<u32> {
        self.l.iter().map(|&x| (-x).max(0) as u32).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.l.iter().all(|&x| x == 0)
    }
}

fn fmt_partial_monomial(u: &[u32]) -> String {
    let s: String = u
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| {
            if e == 1 {
                format!("∂{}", j + 1)
            } else {
                format!("∂{}^{e}", j + 1)
            }
        })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl fmt::Display for BoxOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(
            f,
            "{} - {}",
            fmt_partial_monomial(&self.plus()),
            fmt_partial_monomial(&self.minus())
        )
    }
}

pub fn box_operator(sys: &GkzSystem, l: &[i64]) -> Result<BoxOperator> {
    if !sys.cfg.is_relation(l) {
        return Err(GkzError::NotInLattice(l.to_vec()));
    }
    Ok(BoxOperator { l: l.to_vec() })
}

/// A linear form evaluated at `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetValue {
    pub form: FacetForm,
    pub value: Rat,
    pub integral: bool,
}

impl FacetValue {
    fn new(form: FacetForm, alpha: &[Rat]) -> Self {
        let value = form.eval_rat(alpha);
        let integral = value.is_integer();
        FacetValue {
            form,
            value,
            integral,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexResonance {
    pub simplex: Vec<usize>,
    pub values: Vec<FacetValue>,
    pub resonant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceReport {
    pub facets: Vec<FacetValue>,
    pub nonresonant: bool,
    /// Present when a triangulation was supplied.
    pub simplices: Option<Vec<SimplexResonance>>,
    pub t_nonresonant: Option<bool>,
}

impl ResonanceReport {
    pub fn resonant_facets(&self) -> impl Iterator<Item = &FacetValue> {
        self.facets.iter().filter(|f| f.integral)
    }
}

/// `alpha + Z^r` meets the boundary of `C(A)` exactly when some facet form
/// takes an integral value at `alpha`: a primitive form is onto `Z`, so the
/// value can be shifted to zero, and a further shift deep into the facet
/// lands inside the cone.
pub fn is_nonresonant(sys: &GkzSystem) -> ResonanceReport {
    let facets: Vec<FacetValue> = sys
        .facets
        .iter()
        .map(|f| FacetValue::new(f.clone(), &sys.alpha))
        .collect();
    let nonresonant = facets.iter().all(|f| !f.integral);
    ResonanceReport {
        facets,
        nonresonant,
        simplices: None,
        t_nonresonant: None,
    }
}

/// Evaluates the facet forms of every simplicial cone of `t` at `alpha`.
pub fn is_t_nonresonant(sys: &GkzSystem, t: &Triangulation) -> Result<ResonanceReport> {
    let mut report = is_nonresonant(sys);
    let mut simplices = Vec::with_capacity(t.len());
    for s in &t.simplices {
        let values: Vec<FacetValue> = simplex_facet_forms(&sys.cfg, s)?
            .into_iter()
            .map(|f| FacetValue::new(f, &sys.alpha))
            .collect();
        let resonant = values.iter().any(|v| v.integral);
        simplices.push(SimplexResonance {
            simplex: s.0.clone(),
            values,
            resonant,
        });
    }
    report.t_nonresonant = Some(simplices.iter().all(|s| !s.resonant));
    report.simplices = Some(simplices);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: BigInt,
    pub warnings: Vec<String>,
}

/// The holonomic rank, `Vol(Q(A))`, guaranteed for nonresonant parameters.
pub fn rank(sys: &GkzSystem) -> RankReport {
    let mut warnings = Vec::new();
    if !is_nonresonant(sys).nonresonant {
        warnings.push(
            "alpha is resonant: the rank may exceed the volume unless the toric ideal is Cohen-Macaulay"
                .to_string(),
        );
    }
    if let Some(apex) = is_pyramid(&sys.cfg) {
        warnings.push(format!(
            "Q(A) is a pyramid with apex a{}; no relation involves that coordinate",
            apex + 1
        ));
    }
    RankReport {
        rank: total_volume(&sys.cfg),
        warnings,
    }
}

/// A system on a face of `C(A)` in adapted coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRestriction {
    /// Facet forms cutting out the face.
    pub facets: Vec<FacetForm>,
    /// Indices of the columns lying on the face.
    pub points: Vec<usize>,
    /// Unimodular `U`; the face spans the first `s` coordinates of `U x`.
    pub transform: IntMatrix,
    /// Set when the projected columns span a proper sublattice of `Z^s`:
    /// the rational inverse of the basis used to rescale them.
    pub rebase: Option<Vec<Vec<Rat>>>,
    pub beta: Vec<Rat>,
    pub system: GkzSystem,
}

impl FaceRestriction {
    /// An offset of the restricted system as an offset of the full one.
    pub fn lift_offset(&self, m: &[i64], n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for (k, &j) in self.points.iter().enumerate() {
            out[j] = m[k];
        }
        out
    }

    /// A solution of the restricted system as a function of all `N`
    /// variables, constant in the dropped ones.
    pub fn lift_series(&self, s: &LogSeries, n: usize) -> LogSeries {
        let mut gamma = vec![Rat::zero(); n];
        for (k, &j) in self.points.iter().enumerate() {
            gamma[j] = s.gamma[k].clone();
        }
        let terms = s
            .terms
            .iter()
            .map(|(m, p)| (self.lift_offset(m, n), p.embed(&self.points, n)))
            .collect();
        LogSeries {
            gamma,
            truncation: s.truncation,
            weight: s.weight,
            terms,
        }
    }
}

/// Completes the saturated rows `k` to a unimodular matrix whose last rows are `k`.
fn complete_to_unimodular(k: &[Vec<BigInt>], r: usize) -> Result<IntMatrix> {
    let s = r - k.len();
    for coords in (0..r).combinations(s) {
        let mut rows: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|&c| (0..r).map(|j| BigInt::from((j == c) as i64)).collect())
            .collect();
        rows.extend(k.iter().cloned());
        let m = IntMatrix::from_rows(&rows)?;
        if m.det().abs().is_one() {
            return Ok(m);
        }
    }
    // U K^T = [D; 0] with D unimodular, so the rows of U^{-T} beyond the
    // first k.len() complete k.
    let kt = IntMatrix::from_rows(k)?.transpose();
    let (_, u) = hermite_normal_form(&kt);
    let inv = rat_inverse(&u.to_rat_rows())
        .ok_or_else(|| GkzError::Internal("hermite transform is singular".into()))?;
    let mut rows: Vec<Vec<BigInt>> = (k.len()..r)
        .map(|i| (0..r).map(|j| inv[j][i].to_integer()).collect())
        .collect();
    rows.extend(k.iter().cloned());
    let m = IntMatrix::from_rows(&rows)?;
    if !m.det().abs().is_one() {
        return Err(GkzError::Internal(
            "face complement is not unimodular".into(),
        ));
    }
    Ok(m)
}

/// Restricts `sys` to the face cut out by the facets with indices `facet_idx`,
/// moving the parameter to `beta`.
pub fn face_restrict(
    sys: &GkzSystem,
    facet_idx: &[usize],
    beta: &[Rat],
) -> Result<FaceRestriction> {
    let r = sys.cfg.dim();
    if beta.len() != r {
        return Err(GkzError::Dimension("beta length".into()));
    }
    if facet_idx.iter().any(|&i| i >= sys.facets.len()) {
        return Err(GkzError::Precondition(format!(
            "facet indices {facet_idx:?} out of range ({} facets)",
            sys.facets.len()
        )));
    }
    if beta
        .iter()
        .zip(&sys.alpha)
        .any(|(b, a)| !(b - a).is_integer())
    {
        return Err(GkzError::Precondition(
            "beta - alpha is not integral".into(),
        ));
    }
    let chosen: Vec<FacetForm> = facet_idx
        .iter()
        .sorted()
        .dedup()
        .map(|&i| sys.facets[i].clone())
        .collect();
    let on_face = chosen.iter().all(|f| f.eval_rat(beta).is_zero());
    let in_cone = sys.facets.iter().all(|f| !f.eval_rat(beta).is_negative());
    if !on_face || !in_cone {
        return Err(GkzError::Precondition(
            "beta does not lie on the chosen face of C(A)".into(),
        ));
    }
    let points: Vec<usize> = (0..sys.cfg.len())
        .filter(|&j| chosen.iter().all(|f| f.eval(sys.cfg.column(j)).is_zero()))
        .collect();
    if chosen.is_empty() {
        return Ok(FaceRestriction {
            facets: chosen,
            points,
            transform: IntMatrix::identity(r),
            rebase: None,
            beta: beta.to_vec(),
            system: sys.with_alpha(beta.to_vec())?,
        });
    }
    let face_rows: Vec<Vec<BigInt>> = points.iter().map(|&j| sys.cfg.column(j).to_vec()).collect();
    let k = saturated_kernel(&IntMatrix::from_rows(&face_rows)?);
    let s = r - k.len();
    let u = complete_to_unimodular(&k, r)?;

    let mut projected: Vec<Vec<BigInt>> = points
        .iter()
        .map(|&j| u.mul_vec(sys.cfg.column(j))[..s].to_vec())
        .collect();
    let mut beta_t: Vec<Rat> = u.mul_rat_vec(beta)[..s].to_vec();

    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&projected)?);
    let basis: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| !h.is_zero_row(i))
        .map(|i| h.row(i).to_vec())
        .collect();
    let bmat = IntMatrix::from_rows(&basis)?;
    let rebase = if bmat.det().abs().is_one() {
        None
    } else {
        // coordinates with respect to the rows of the Hermite basis
        let inv_t = rat_inverse(&bmat.transpose().to_rat_rows())
            .ok_or_else(|| GkzError::Internal("face lattice basis is singular".into()))?;
        projected = projected
            .iter()
            .map(|c| {
                rat_mat_vec(&inv_t, &to_rat_vec(c))
                    .iter()
                    .map(|x| x.to_integer())
                    .collect()
            })
            .collect();
        beta_t = rat_mat_vec(&inv_t, &beta_t);
        Some(inv_t)
    };
    let cfg = PointConfig::new(IntMatrix::from_columns(s, &projected))?;
    let system = GkzSystem::new(cfg, beta_t)?;
    Ok(FaceRestriction {
        facets: chosen,
        points,
        transform: u,
        rebase,
        beta: beta.to_vec(),
        system,
    })
}

/// A parameter `beta ≡ alpha` on a facet together with the restricted system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub facet_index: usize,
    pub facet: FacetForm,
    pub shift: Vec<BigInt>,
    pub restriction: FaceRestriction,
}

/// Default search radius for shifts `m` with `beta = alpha + m`.
pub fn witness_bound(cfg: &PointConfig) -> i64 {
    let max = cfg
        .columns()
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::one);
    let max: i64 = max.try_into().unwrap_or(i64::MAX / 64);
    10 * max.max(1) * cfg.dim() as i64
}

fn in_facet_cone(sys: &GkzSystem, facet: usize, beta: &[Rat]) -> bool {
    sys.facets[facet].eval_rat(beta).is_zero()
        && sys.facets.iter().all(|f| !f.eval_rat(beta).is_negative())
}

/// Shifts `m` in the shell `max |m_i| = k`, in lexicographic order.
fn shell(r: usize, k: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..r)
        .map(|_| -k..=k)
        .multi_cartesian_product()
        .filter(move |m| m.iter().any(|x| x.abs() == k))
}

/// Searches for `beta = alpha + m` in a facet cone, for the first facet (in
/// sorted order) with an integral value at `alpha`.
///
/// Small shifts are tried first, shell by shell up to [`witness_bound`]. If
/// none lands in the facet cone, one is constructed: move `alpha` onto the
/// facet hyperplane with an integral preimage of `-l(alpha)`, then push it into
/// the cone along the sum of the facet's columns.
pub fn reducibility_witness(sys: &GkzSystem) -> Result<Option<Witness>> {
    let report = is_nonresonant(sys);
    let Some(facet_index) = report.facets.iter().position(|f| f.integral) else {
        return Ok(None);
    };
    let r = sys.cfg.dim();
    let to_beta = |m: &[BigInt]| -> Vec<Rat> {
        sys.alpha
            .iter()
            .zip(m)
            .map(|(a, x)| a + Rat::from_integer(x.clone()))
            .collect()
    };
    let bound = witness_bound(&sys.cfg);
    let mut shift = None;
    'search: for k in 0..=bound {
        for m in shell(r.max(1), k) {
            let m: Vec<BigInt> = m.into_iter().take(r).map(BigInt::from).collect();
            if in_facet_cone(sys, facet_index, &to_beta(&m)) {
                shift = Some(m);
                break 'search;
            }
        }
    }
    let shift = match shift {
        Some(m) => m,
        None => constructive_shift(sys, facet_index)?,
    };
    let beta = to_beta(&shift);
    let restriction = face_restrict(sys, &[facet_index], &beta)?;
    Ok(Some(Witness {
        facet_index,
        facet: sys.facets[facet_index].clone(),
        shift,
        restriction,
    }))
}

fn constructive_shift(sys: &GkzSystem, facet_index: usize) -> Result<Vec<BigInt>> {
    let l = &sys.facets[facet_index];
    let r = sys.cfg.dim();
    // x with l(x) = 1, by iterated extended gcd
    let mut x = vec![BigInt::zero(); r];
    let mut g = BigInt::zero();
    for (i, c) in l.coeffs.iter().enumerate() {
        let (d, s, t) = ext_gcd(&g, c);
        for xj in x.iter_mut() {
            *xj *= &s;
        }
        x[i] = t;
        g = d;
    }
    if !g.is_one() {
        return Err(GkzError::Internal(format!(
            "facet form {l} is not primitive"
        )));
    }
    let value = l.eval_rat(&sys.alpha).to_integer();
    let m0: Vec<BigInt> = x.iter().map(|xi| -(xi * &value)).collect();
    let beta0: Vec<Rat> = sys
        .alpha
        .iter()
        .zip(&m0)
        .map(|(a, m)| a + Rat::from_integer(m.clone()))
        .collect();
    let mut sigma = vec![BigInt::zero(); r];
    for c in sys.cfg.columns().iter().filter(|c| l.eval(c).is_zero()) {
        for (s, ci) in sigma.iter_mut().zip(c) {
            *s += ci;
        }
    }
    let mut k = BigInt::zero();
    for f in &sys.facets {
        let depth = f.eval(&sigma);
        let v = f.eval_rat(&beta0);
        if v.is_negative() {
            if depth.is_zero() {
                return Err(GkzError::Internal(format!(
                    "facet {f} vanishes on the face of {l}"
                )));
            }
            let need = (-v / Rat::from_integer(depth)).ceil().to_integer();
            k = k.max(need);
        }
    }
    let shift: Vec<BigInt> = m0.iter().zip(&sigma).map(|(m, s)| m + &k * s).collect();
    if !in_facet_cone(sys, facet_index, &{
        sys.alpha
            .iter()
            .zip(&shift)
            .map(|(a, m)| a + Rat::from_integer(m.clone()))
            .collect::<Vec<_>>()
    }) {
        return Err(GkzError::Internal(
            "constructed witness left the facet cone".into(),
        ));
    }
    Ok(shift)
}
