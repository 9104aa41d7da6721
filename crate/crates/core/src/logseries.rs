//! Logarithmic solutions for nonresonant but T-resonant parameters.
//!
//! The exponents of a resonant block coincide modulo `L`. Perturbing each by
//! `ε γ^(i)` gives `b` series `Ψ_i(ε, v)` with a common limit; the leading
//! coefficients of a suitable filtration of their span are solutions with
//! polynomial dependence on `log v`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};
use crate::geom::{simplex_facet_forms, Simplex, Triangulation};
use crate::intlin::{rat_mat_vec, rref, Rat};
use crate::logpoly::{LogPoly, LogSeries};
use crate::series::{
    full_support_cone, gamma_choices, gamma_series, pochhammer_ratio, same_class, sector_terms,
    GammaVector, SupportCertificate,
};
use crate::system::{is_nonresonant, GkzSystem};

/// A polynomial in `ε` truncated after `ε^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub coeffs: Vec<Rat>,
}

impl Jet {
    pub fn constant(c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        Jet { coeffs }
    }

    /// `a + b ε`.
    pub fn linear(a: Rat, b: Rat, order: usize) -> Self {
        let mut j = Jet::constant(a, order);
        if order >= 1 {
            j.coeffs[1] = b;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Jet { coeffs: out }
    }

    /// Exact division; `None` when the divisor has no constant term.
    pub fn div(&self, other: &Jet) -> Option<Jet> {
        let d0 = other.coeffs[0].clone();
        if d0.is_zero() {
            return None;
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut q: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &q[k - j];
            }
            q.push(acc / &d0);
        }
        Some(Jet { coeffs: q })
    }

    pub fn scale(&self, s: &Rat) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

/// `Ψ_i(ε, v) = sum_l v^{γ°+l+εγ^(i)} Γ(γ°+εγ^(i)+1)/Γ(γ°+εγ^(i)+l+1)`, truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSeries {
    pub gamma0: Vec<Rat>,
    pub direction: Vec<Rat>,
    pub simplex: Simplex,
    pub eps_order: usize,
    pub truncation: i64,
    pub terms: BTreeMap<Vec<i64>, Jet>,
}

impl EpsSeries {
    /// The `ε^n` coefficient of `Ψ_i` once `v^{εγ^(i)}` is expanded as
    /// `sum_n ε^n/n! (γ^(i) · log v)^n`.
    pub fn eps_coefficient(&self, n: usize) -> LogSeries {
        let carrier = LogPoly::linear(&self.direction);
        let dim = self.gamma0.len();
        // carrier^c / c! for c = 0..=n
        let mut powers = vec![LogPoly::constant(dim, Rat::one())];
        for c in 1..=n {
            let next = powers[c - 1]
                .mul(&carrier)
                .scaled(&Rat::new(BigInt::one(), BigInt::from(c)));
            powers.push(next);
        }
        let mut out = LogSeries::new(self.gamma0.clone(), self.truncation, n);
        for (l, jet) in &self.terms {
            let mut p = LogPoly::zero();
            for a in 0..=n.min(jet.order()) {
                if !jet.coeffs[a].is_zero() {
                    p.add_scaled(&powers[n - a], &jet.coeffs[a]);
                }
            }
            out.terms.insert(l.clone(), p);
        }
        out
    }
}

/// Simplices `J` of `t` with `γ°_i` integral for every `i ∉ J`.
pub fn resonating_simplices(sys: &GkzSystem, t: &Triangulation, gamma0: &[Rat]) -> Vec<Simplex> {
    let n = sys.cfg().len();
    let mut out: Vec<Simplex> = t
        .simplices
        .iter()
        .filter(|s| s.complement(n).iter().all(|&i| gamma0[i].is_integer()))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Largest `t` tried in the moment-curve candidates `(1, t, t^2, ...)`.
pub const DIRECTION_SEARCH_BOUND: i64 = 64;

/// The first candidate `α'` on which no simplex facet form of `t` vanishes,
/// so that `α + ε α'` is T-nonresonant for all small `ε ≠ 0`.
///
/// Candidates: the unit vectors, then points `(1, t, t^2, ...)` of the
/// moment curve for `t = 2, 3, ...`.
pub fn choose_generic_direction(sys: &GkzSystem, t: &Triangulation) -> Result<Vec<Rat>> {
    let r = sys.cfg().dim();
    let forms = t
        .simplices
        .iter()
        .map(|s| simplex_facet_forms(sys.cfg(), s))
        .collect::<Result<Vec<_>>>()?
        .concat();
    let unit = (0..r).map(|k| {
        (0..r)
            .map(|j| Rat::from_integer(BigInt::from((j == k) as i64)))
            .collect::<Vec<_>>()
    });
    let curve = (2..=DIRECTION_SEARCH_BOUND).map(|x| {
        (0..r as u32)
            .map(|k| Rat::from_integer(BigInt::from(x).pow(k)))
            .collect::<Vec<_>>()
    });
    unit.chain(curve)
        .find(|cand| forms.iter().all(|f| !f.eval_rat(cand).is_zero()))
        .ok_or(GkzError::NoGenericDirection)
}

/// `Γ(γ°+εg+1)/Γ(γ°+εg+l+1)` as an ε-jet.
fn jet_ratio(g0: &Rat, g: &Rat, l: i64, order: usize, term: &[i64]) -> Result<Jet> {
    if g.is_zero() {
        if g0.is_integer() {
            let n0 = g0.to_integer().to_i64().expect("small exponent");
            if n0 + l < 0 {
                return Ok(Jet::constant(Rat::zero(), order));
            }
            return Ok(Jet::constant(pochhammer_ratio(g0, l), order));
        }
        return Ok(Jet::constant(pochhammer_ratio(g0, l), order));
    }
    let mut num = Jet::constant(Rat::one(), order);
    let mut den = Jet::constant(Rat::one(), order);
    if l >= 0 {
        for j in 1..=l {
            den = den.mul(&Jet::linear(
                g0 + Rat::from_integer(BigInt::from(j)),
                g.clone(),
                order,
            ));
        }
    } else {
        for j in 0..(-l) {
            num = num.mul(&Jet::linear(
                g0 - Rat::from_integer(BigInt::from(j)),
                g.clone(),
                order,
            ));
        }
    }
    num.div(&den)
        .ok_or_else(|| GkzError::EpsilonPole(term.to_vec()))
}

/// The `b` perturbed series of a resonant block.
pub fn perturbed_solutions(
    sys: &GkzSystem,
    t: &Triangulation,
    gamma0: &[Rat],
    alpha_prime: &[Rat],
    eps_order: usize,
    truncation: i64,
) -> Result<Vec<EpsSeries>> {
    let cfg = sys.cfg();
    if cfg.apply_rat(gamma0) != sys.alpha() {
        return Err(GkzError::Precondition(
            "gamma° does not solve A gamma = alpha".into(),
        ));
    }
    if gamma0.iter().any(|g| g.is_integer() && g.is_negative()) {
        return Err(GkzError::Precondition(
            "gamma° must be nonnegative on its integral entries".into(),
        ));
    }
    let block = resonating_simplices(sys, t, gamma0);
    let b = block.len();
    if b < 2 {
        return Err(GkzError::Precondition(format!(
            "gamma° resonates with {b} simplices; at least 2 are needed"
        )));
    }
    if eps_order + 1 < b {
        return Err(GkzError::InsufficientOrder { eps_order, b });
    }
    let mut out = Vec::with_capacity(b);
    for j in block {
        let inv = cfg.simplex_inverse(j.indices())?;
        let gj = rat_mat_vec(&inv, alpha_prime);
        let mut direction = vec![Rat::zero(); cfg.len()];
        for (k, &i) in j.indices().iter().enumerate() {
            direction[i] = gj[k].clone();
        }
        let sector = j.complement(cfg.len());
        let mut terms = BTreeMap::new();
        for l in sector_terms(cfg, gamma0, &sector, truncation)? {
            let mut jet = Jet::constant(Rat::one(), eps_order);
            for k in 0..cfg.len() {
                jet = jet.mul(&jet_ratio(&gamma0[k], &direction[k], l[k], eps_order, &l)?);
            }
            terms.insert(l, jet);
        }
        out.push(EpsSeries {
            gamma0: gamma0.to_vec(),
            direction,
            simplex: j,
            eps_order,
            truncation,
            terms,
        });
    }
    Ok(out)
}

/// Scales so that the first nonzero coefficient (preferring the `l = 0`
/// term) has leading entry 1.
fn normalize_log(s: &mut LogSeries) {
    let zero = vec![0i64; s.len()];
    let pick = s
        .terms
        .get(&zero)
        .filter(|p| !p.is_zero())
        .or_else(|| s.terms.values().find(|p| !p.is_zero()))
        .and_then(|p| p.terms.values().next().cloned());
    if let Some(c) = pick {
        let inv = c.recip();
        for p in s.terms.values_mut() {
            *p = p.scaled(&inv);
        }
    }
}

/// The ε-filtration of the span of the `Ψ_i`, read off by exact elimination.
///
/// `V_w` holds the combinations vanishing to order `ε^w`. At each weight the
/// `ε^w` coefficients of a basis of `V_w` are row reduced: combinations with
/// independent images give solutions of weight `w`, and the combinations
/// with zero image span `V_{w+1}`.
pub fn extract_log_basis(psis: &[EpsSeries]) -> Result<Vec<LogSeries>> {
    let b = psis.len();
    if b == 0 {
        return Ok(Vec::new());
    }
    let order = psis.iter().map(|p| p.eps_order).min().unwrap_or(0);
    // current basis of V_w, as rows of coefficients on the Ψ_i
    let mut basis: Vec<Vec<Rat>> = (0..b)
        .map(|i| {
            (0..b)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for w in 0..=order {
        if basis.is_empty() {
            break;
        }
        let layers: Vec<LogSeries> = psis.iter().map(|p| p.eps_coefficient(w)).collect();
        let combine = |c: &[Rat]| -> LogSeries {
            let mut s = LogSeries::new(layers[0].gamma.clone(), layers[0].truncation, w);
            for (ci, layer) in c.iter().zip(&layers) {
                if !ci.is_zero() {
                    s.add_scaled(layer, ci);
                }
            }
            s.prune();
            s
        };
        let images: Vec<LogSeries> = basis.iter().map(|c| combine(c)).collect();
        let mut columns: BTreeMap<(Vec<i64>, Vec<u32>), usize> = BTreeMap::new();
        for img in &images {
            for (l, p) in &img.terms {
                for e in p.terms.keys() {
                    let next = columns.len();
                    columns.entry((l.clone(), e.clone())).or_insert(next);
                }
            }
        }
        let width = columns.len();
        let k = basis.len();
        let mut aug: Vec<Vec<Rat>> = images
            .iter()
            .enumerate()
            .map(|(row, img)| {
                let mut v = vec![Rat::zero(); width + k];
                for (l, p) in &img.terms {
                    for (e, c) in &p.terms {
                        v[columns[&(l.clone(), e.clone())]] = c.clone();
                    }
                }
                v[width + row] = Rat::one();
                v
            })
            .collect();
        let rank = rref(&mut aug, width).len();
        let express = |row: &[Rat]| -> Vec<Rat> {
            (0..b)
                .map(|j| {
                    row[width..]
                        .iter()
                        .zip(&basis)
                        .fold(Rat::zero(), |acc, (e, c)| acc + e * &c[j])
                })
                .collect()
        };
        for row in &aug[..rank] {
            let mut g = combine(&express(row));
            g.weight = w;
            normalize_log(&mut g);
            out.push(g);
        }
        basis = aug[rank..].iter().map(|row| express(row)).collect();
    }
    if out.len() != b {
        return Err(GkzError::Internal(format!(
            "elimination produced {} independent solutions instead of {b}",
            out.len()
        )));
    }
    Ok(out)
}

/// One residue class of exponents of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisBlock {
    pub simplices: Vec<Simplex>,
    /// Common exponent of the block, nonnegative on its integral entries.
    pub gamma0: Vec<Rat>,
    pub series: Vec<LogSeries>,
}

/// The solution basis of a nonresonant system attached to `t`, grouped by
/// residue class of the exponents modulo `L`.
pub fn full_basis_blocks(
    sys: &GkzSystem,
    t: &Triangulation,
    truncation: i64,
    eps_order: Option<usize>,
) -> Result<Vec<BasisBlock>> {
    if !is_nonresonant(sys).nonresonant {
        return Err(GkzError::Precondition(
            "logarithmic bases are constructed for nonresonant parameters only".into(),
        ));
    }
    let mut classes: Vec<Vec<GammaVector>> = Vec::new();
    for j in &t.simplices {
        for g in gamma_choices(sys, j)? {
            match classes
                .iter_mut()
                .find(|c| same_class(sys.cfg(), &c[0].gamma, &g.gamma))
            {
                Some(c) => c.push(g),
                None => classes.push(vec![g]),
            }
        }
    }
    let mut direction = None;
    let mut blocks = Vec::with_capacity(classes.len());
    for class in classes {
        if class.len() == 1 {
            let g = &class[0];
            let s = gamma_series(sys, g, truncation)?;
            blocks.push(BasisBlock {
                simplices: vec![g.simplex()],
                gamma0: g.gamma.clone(),
                series: vec![s.to_log_series()],
            });
            continue;
        }
        let gamma0 = match class
            .iter()
            .find(|g| g.gamma.iter().all(|x| !(x.is_integer() && x.is_negative())))
        {
            Some(g) => g.gamma.clone(),
            None => {
                let apex = match full_support_cone(sys, &class[0])? {
                    SupportCertificate::Cone { apex, .. } => apex,
                    SupportCertificate::Full { .. } => vec![0; class[0].gamma.len()],
                };
                class[0]
                    .gamma
                    .iter()
                    .zip(&apex)
                    .map(|(g, a)| g + Rat::from_integer(BigInt::from(*a)))
                    .collect()
            }
        };
        if direction.is_none() {
            direction = Some(choose_generic_direction(sys, t)?);
        }
        let alpha_prime = direction.as_ref().expect("set above");
        let b = class.len();
        let psis = perturbed_solutions(
            sys,
            t,
            &gamma0,
            alpha_prime,
            eps_order.unwrap_or(b),
            truncation,
        )?;
        if psis.len() != b {
            return Err(GkzError::Internal(format!(
                "class of size {b} resonates with {} simplices",
                psis.len()
            )));
        }
        let series = extract_log_basis(&psis)?;
        blocks.push(BasisBlock {
            simplices: psis.iter().map(|p| p.simplex.clone()).collect(),
            gamma0,
            series,
        });
    }
    Ok(blocks)
}

/// All `Vol(Q(A))` solutions, plain and logarithmic.
pub fn full_basis(
    sys: &GkzSystem,
    t: &Triangulation,
    truncation: i64,
    eps_order: Option<usize>,
) -> Result<Vec<LogSeries>> {
    Ok(full_basis_blocks(sys, t, truncation, eps_order)?
        .into_iter()
        .flat_map(|b| b.series)
        .collect())
}

/// Offset, exponent and log monomial of one leading-term column.
type TermKey = (Vec<i64>, Vec<Rat>, Vec<u32>);

/// Rank of the matrix of leading terms: for each series, the coefficients on
/// its lowest-degree offsets.
pub fn leading_term_rank(series: &[LogSeries]) -> usize {
    let mut columns: BTreeMap<TermKey, usize> = BTreeMap::new();
    let rows: Vec<Vec<(TermKey, Rat)>> = series
        .iter()
        .map(|s| {
            let entries: Vec<_> = s.terms.iter().filter(|(_, p)| !p.is_zero()).collect();
            let min_deg = entries
                .iter()
                .map(|(l, _)| crate::logpoly::positive_degree(l))
                .min()
                .unwrap_or(0);
            entries
                .into_iter()
                .filter(|(l, _)| crate::logpoly::positive_degree(l) == min_deg)
                .flat_map(|(l, p)| {
                    p.terms
                        .iter()
                        .map(|(e, c)| ((l.clone(), s.gamma.clone(), e.clone()), c.clone()))
                        .collect_vec()
                })
                .collect()
        })
        .collect();
    for row in &rows {
        for (key, _) in row {
            let next = columns.len();
            columns.entry(key.clone()).or_insert(next);
        }
    }
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|row| {
            let mut v = vec![Rat::zero(); columns.len()];
            for (key, c) in row {
                v[columns[key]] = c.clone();
            }
            v
        })
        .collect();
    rref(&mut m, columns.len()).len()
}
