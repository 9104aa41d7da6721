//! Operators `sum c v^w ∂^u` in the Weyl algebra and the inverse of the
//! contiguity map `∂_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{GkzError, Result};
use crate::geom::{
    generic_triangulation, nonneg_representation, saturation_point, FacetForm, PointConfig,
    Representation, Triangulation, REPRESENTATION_BUDGET,
};
use crate::intlin::Rat;
use crate::logpoly::{positive_degree, LogPoly, LogSeries};
use crate::logseries::full_basis;
use crate::system::{is_nonresonant, BoxOperator, EulerOperator, GkzSystem};

/// `sum c v^w ∂^u`, keyed by `(w, u)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOperator {
    pub n: usize,
    pub terms: BTreeMap<(Vec<i64>, Vec<u32>), Rat>,
}

fn unit_u(n: usize, i: usize) -> Vec<u32> {
    let mut u = vec![0; n];
    u[i] = 1;
    u
}

fn unit_w(n: usize, i: usize) -> Vec<i64> {
    let mut w = vec![0; n];
    w[i] = 1;
    w
}

/// `w (w-1) ... (w-k+1)`.
fn falling(w: i64, k: u32) -> BigInt {
    (0..k as i64).map(|j| BigInt::from(w - j)).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    let num: BigInt = (0..k).map(|j| BigInt::from(n - j)).product();
    let den: BigInt = (1..=k).map(BigInt::from).product();
    num / den
}

impl DiffOperator {
    pub fn zero(n: usize) -> Self {
        DiffOperator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        DiffOperator::monomial(vec![0; n], vec![0; n], Rat::one())
    }

    pub fn monomial(w: Vec<i64>, u: Vec<u32>, c: Rat) -> Self {
        let mut op = DiffOperator::zero(w.len());
        op.add_term(w, u, c);
        op
    }

    /// `∂_i`.
    pub fn partial(n: usize, i: usize) -> Self {
        DiffOperator::monomial(vec![0; n], unit_u(n, i), Rat::one())
    }

    /// Multiplication by `v_j`.
    pub fn coordinate(n: usize, j: usize) -> Self {
        DiffOperator::monomial(unit_w(n, j), vec![0; n], Rat::one())
    }

    pub fn from_euler(e: &EulerOperator) -> Self {
        let n = e.coeffs.len();
        let mut op = DiffOperator::monomial(vec![0; n], vec![0; n], -e.alpha.clone());
        for (j, a) in e.coeffs.iter().enumerate() {
            op.add_term(unit_w(n, j), unit_u(n, j), Rat::from_integer(a.clone()));
        }
        op
    }

    pub fn from_box(b: &BoxOperator) -> Self {
        let n = b.l.len();
        let mut op = DiffOperator::monomial(vec![0; n], b.plus(), Rat::one());
        op.add_term(vec![0; n], b.minus(), -Rat::one());
        op
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Vec<i64>, u: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (w, u);
        let sum = self.terms.remove(&key).unwrap_or_else(Rat::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add_scaled(&mut self, other: &DiffOperator, s: &Rat) {
        for ((w, u), c) in &other.terms {
            self.add_term(w.clone(), u.clone(), c * s);
        }
    }

    /// `max |(u - w)⁺|` over the terms: how far an application lowers the
    /// h-degree of offsets.
    pub fn reach(&self) -> i64 {
        self.terms
            .keys()
            .map(|(w, u)| {
                let d: Vec<i64> = u.iter().zip(w).map(|(&a, &b)| a as i64 - b).collect();
                positive_degree(&d)
            })
            .max()
            .unwrap_or(0)
    }

    /// `self ∘ other`, normal ordered with `∂^a v^b = sum_k C(a,k) b^(k) v^{b-k} ∂^{a-k}`.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero(self.n);
        for ((w1, u1), c1) in &self.terms {
            for ((w2, u2), c2) in &other.terms {
                // all k <= u1 componentwise
                let mut k = vec![0u32; self.n];
                loop {
                    let mut coeff = BigInt::one();
                    for j in 0..self.n {
                        coeff *= binomial(u1[j], k[j]) * falling(w2[j], k[j]);
                    }
                    if !coeff.is_zero() {
                        let w: Vec<i64> =
                            (0..self.n).map(|j| w1[j] + w2[j] - k[j] as i64).collect();
                        let u: Vec<u32> = (0..self.n).map(|j| u1[j] - k[j] + u2[j]).collect();
                        out.add_term(w, u, c1 * c2 * Rat::from_integer(coeff));
                    }
                    let mut j = 0;
                    while j < self.n {
                        if k[j] < u1[j] {
                            k[j] += 1;
                            break;
                        }
                        k[j] = 0;
                        j += 1;
                    }
                    if j == self.n {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Applies the operator to a series.
    ///
    /// The result is exact on offsets with `|m⁺| <= s.truncation - reach`.
    pub fn apply(&self, s: &LogSeries) -> LogSeries {
        let t_out = s.truncation - self.reach();
        let mut out = LogSeries::new(s.gamma.clone(), t_out, s.weight);
        for ((w, u), c) in &self.terms {
            for (m, p) in &s.terms {
                let target: Vec<i64> = (0..self.n).map(|j| m[j] - u[j] as i64 + w[j]).collect();
                if positive_degree(&target) > t_out {
                    continue;
                }
                let mut cur = p.clone();
                let mut exp: Vec<Rat> = (0..self.n)
                    .map(|j| &s.gamma[j] + Rat::from_integer(BigInt::from(m[j])))
                    .collect();
                for (j, &uj) in u.iter().enumerate() {
                    for _ in 0..uj {
                        let mut next = cur.scaled(&exp[j]);
                        next.add_scaled(&cur.derivative(j), &Rat::one());
                        cur = next;
                        exp[j] -= Rat::one();
                    }
                }
                if cur.is_zero() {
                    continue;
                }
                out.terms
                    .entry(target)
                    .or_insert_with(LogPoly::zero)
                    .add_scaled(&cur, c);
            }
        }
        out.prune();
        out
    }

    /// `min_{terms} l(A u)`.
    pub fn valuation(&self, cfg: &PointConfig, l: &FacetForm) -> Result<BigInt> {
        self.terms
            .keys()
            .map(|(_, u)| facet_weight(cfg, l, u))
            .min()
            .ok_or(GkzError::ZeroOperator)
    }
}

fn fmt_monomial(sym: &str, e: impl Iterator<Item = i64>) -> String {
    e.enumerate()
        .filter(|(_, k)| *k != 0)
        .map(|(j, k)| {
            if k == 1 {
                format!("{sym}{}", j + 1)
            } else {
                format!("{sym}{}^{k}", j + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((w, u), c)| {
                let mono: Vec<String> = [
                    fmt_monomial("v", w.iter().copied()),
                    fmt_monomial("∂", u.iter().map(|&x| x as i64)),
                ]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => format!("{c}"),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("({c})*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `l(A u) = sum_j u_j l(a_j)`.
pub fn facet_weight(cfg: &PointConfig, l: &FacetForm, u: &[u32]) -> BigInt {
    u.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(j, &x)| l.eval(cfg.column(j)) * BigInt::from(x))
        .sum()
}

/// Replaces `∂^u` by an operator equal to it modulo the left ideal of the
/// system, every term of which has `l`-valuation one higher.
///
/// Uses `l(Z - α) ∂^u = ∂^u (l(Z) - l(α - A u))`, so on solutions
/// `∂^u = l(α - A u)^{-1} sum_j l(a_j) v_j ∂_j ∂^u`.
pub fn raise_valuation(sys: &GkzSystem, u: &[u32], l: &FacetForm) -> Result<DiffOperator> {
    let cfg = sys.cfg();
    let den = l.eval_rat(sys.alpha()) - Rat::from_integer(facet_weight(cfg, l, u));
    if den.is_zero() {
        return Err(GkzError::ResonanceObstruction {
            facet: l.coeffs.clone(),
        });
    }
    let n = cfg.len();
    let mut op = DiffOperator::zero(n);
    for j in 0..n {
        let lj = l.eval(cfg.column(j));
        if lj.is_zero() {
            continue;
        }
        let mut u2 = u.to_vec();
        u2[j] += 1;
        op.add_term(unit_w(n, j), u2, Rat::from_integer(lj) / &den);
    }
    Ok(op)
}

/// Result of [`box_rewrite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxRewrite {
    /// `∂^w ≡ ∂^{w'} ∂^u` modulo the box operator of `relation = w - w' - u`.
    Found {
        w_prime: Vec<u32>,
        relation: Vec<i64>,
    },
    NotRepresentable,
    Inconclusive,
}

/// Looks for `w' >= 0` with `A w' = A (w - u)`.
pub fn box_rewrite(cfg: &PointConfig, w: &[u32], u: &[u32]) -> BoxRewrite {
    let diff: Vec<i64> = w
        .iter()
        .zip(u)
        .map(|(&a, &b)| a as i64 - b as i64)
        .collect();
    let target = cfg.apply_i64(&diff);
    match nonneg_representation(cfg, &target, REPRESENTATION_BUDGET) {
        Representation::Found(x) => {
            let w_prime: Vec<u32> = x
                .iter()
                .map(|v| u32::try_from(v).expect("small representation"))
                .collect();
            let relation = (0..w.len()).map(|j| diff[j] - w_prime[j] as i64).collect();
            BoxRewrite::Found { w_prime, relation }
        }
        Representation::NotRepresentable => BoxRewrite::NotRepresentable,
        Representation::Inconclusive => BoxRewrite::Inconclusive,
    }
}

/// Default limit on raising rounds.
pub const DEFAULT_EFFORT: usize = 64;

/// Knobs for [`contiguity_inverse`].
#[derive(Clone, Debug)]
pub struct ContiguityConfig {
    pub effort: usize,
    /// Truncation at which the certificate is checked.
    pub truncation: i64,
    /// Triangulation for the certificate basis; a generic one when absent.
    pub triangulation: Option<Triangulation>,
    pub seed: u64,
}

impl Default for ContiguityConfig {
    fn default() -> Self {
        ContiguityConfig {
            effort: DEFAULT_EFFORT,
            truncation: 6,
            triangulation: None,
            seed: 0,
        }
    }
}

/// A certified inverse of `∂_i : Sol(α) -> Sol(α - a_i)`.
#[derive(Clone, Debug)]
pub struct ContiguityInverse {
    pub i: usize,
    /// `P'` with `P' ∂_i ≡ 1` modulo the left ideal of `H_A(α)`.
    pub operator: DiffOperator,
    pub rounds: usize,
    pub trace: Vec<String>,
    /// Number of basis series on which `P' ∂_i s = s` was checked.
    pub certified_series: usize,
    pub certified_truncation: i64,
}

/// Builds `P'` by raising the valuations of `1` past `l(a_i) + l(p)` on every
/// facet, then factoring `∂_i` off each term through a box rewrite.
///
/// The result is checked by applying `P' ∂_i` to a basis of solutions.
pub fn contiguity_inverse(
    sys: &GkzSystem,
    i: usize,
    config: &ContiguityConfig,
) -> Result<ContiguityInverse> {
    let cfg = sys.cfg();
    let n = cfg.len();
    if i >= n {
        return Err(GkzError::Dimension(format!(
            "no column {} among {n}",
            i + 1
        )));
    }
    let report = is_nonresonant(sys);
    if !report.nonresonant {
        let bad: Vec<String> = report
            .resonant_facets()
            .map(|f| f.form.to_string())
            .collect();
        return Err(GkzError::Precondition(format!(
            "alpha is resonant on {}",
            bad.join(", ")
        )));
    }
    let (p, _) = saturation_point(cfg);
    let mut op = DiffOperator::identity(n);
    let mut rounds = 0;
    let mut trace = Vec::new();
    for l in sys.facets() {
        let target = l.eval(cfg.column(i)) + l.eval(&p);
        // l(a_j) and l(α), reused for every term
        let la: Vec<BigInt> = (0..n).map(|j| l.eval(cfg.column(j))).collect();
        let l_alpha = l.eval_rat(sys.alpha());
        let weight = |u: &[u32]| -> BigInt {
            u.iter()
                .zip(&la)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, a)| a * BigInt::from(x))
                .sum()
        };
        loop {
            let low = op.terms.keys().filter(|(_, u)| weight(u) < target).count();
            if low == 0 {
                break;
            }
            rounds += 1;
            if rounds > config.effort {
                return Err(GkzError::EffortExceeded {
                    rounds: config.effort,
                    trace,
                });
            }
            let mut next = DiffOperator::zero(n);
            for ((w, u), c) in &op.terms {
                let wu = weight(u);
                if wu >= target {
                    next.add_term(w.clone(), u.clone(), c.clone());
                    continue;
                }
                let den = &l_alpha - Rat::from_integer(wu);
                if den.is_zero() {
                    return Err(GkzError::ResonanceObstruction {
                        facet: l.coeffs.clone(),
                    });
                }
                let scale = c / den;
                for (j, lj) in la.iter().enumerate() {
                    if lj.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2[j] += 1;
                    let mut u2 = u.clone();
                    u2[j] += 1;
                    next.add_term(w2, u2, &scale * Rat::from_integer(lj.clone()));
                }
            }
            op = next;
            trace.push(format!(
                "round {rounds}: facet {l} target {target}: raised {low} terms, {} terms now",
                op.len()
            ));
        }
    }
    let e_i = unit_u(n, i);
    let mut factored = DiffOperator::zero(n);
    for ((w, u), c) in &op.terms {
        match box_rewrite(cfg, u, &e_i) {
            BoxRewrite::Found { w_prime, .. } => factored.add_term(w.clone(), w_prime, c.clone()),
            other => {
                return Err(GkzError::Internal(format!(
                    "term ∂^{u:?} above the saturation point has no factorization through ∂{} ({other:?})",
                    i + 1
                )))
            }
        }
    }
    // certificate: P' ∂_i acts as the identity on a basis of solutions
    let mut with_partial = DiffOperator::zero(n);
    for ((w, u), c) in &factored.terms {
        let mut u2 = u.clone();
        u2[i] += 1;
        with_partial.add_term(w.clone(), u2, c.clone());
    }
    let t = match &config.triangulation {
        Some(t) => t.clone(),
        None => generic_triangulation(cfg, config.seed)?,
    };
    let basis = full_basis(sys, &t, config.truncation + with_partial.reach(), None)?;
    for s in &basis {
        let image = with_partial.apply(s);
        if !image.agrees_with(s) {
            return Err(GkzError::Internal(format!(
                "P'∂{} differs from the identity on the series with exponent {:?}",
                i + 1,
                s.gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>()
            )));
        }
    }
    Ok(ContiguityInverse {
        i,
        operator: factored,
        rounds,
        trace,
        certified_series: basis.len(),
        certified_truncation: config.truncation,
    })
}

/// How far an operator of the system is from annihilating a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub operator: String,
    /// Offsets inside the checked range where the image is nonzero.
    pub nonzero: usize,
    pub truncation: i64,
}

/// Applies every Euler operator and every basis box operator to `s`.
pub fn annihilation_residuals(sys: &GkzSystem, s: &LogSeries) -> Vec<Residual> {
    let euler = sys
        .euler_operators()
        .into_iter()
        .map(|e| (e.to_string(), DiffOperator::from_euler(&e)));
    let boxes = sys
        .basis_boxes()
        .into_iter()
        .map(|b| (b.to_string(), DiffOperator::from_box(&b)));
    euler
        .chain(boxes)
        .map(|(name, op)| {
            let image = op.apply(s);
            Residual {
                operator: name,
                nonzero: image.nonzero_safe_terms().len(),
                truncation: image.truncation,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rat;
    use crate::series::{basis_for_triangulation, gamma_choices, gamma_series};
    use crate::system::tests::{e1, e1_square_t, e2, e3};

    fn sample_series() -> LogSeries {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        let g = gamma_choices(&sys, &crate::geom::Simplex::new(vec![0, 1, 3]))
            .unwrap()
            .remove(0);
        let mut s = gamma_series(&sys, &g, 8).unwrap().to_log_series();
        // give it a log part so the derivative rule is exercised
        for p in s.terms.values_mut() {
            let mut q = p.mul(&LogPoly::linear(&[
                rat(1, 1),
                rat(0, 1),
                rat(2, 1),
                rat(0, 1),
            ]));
            q.add_scaled(p, &rat(1, 1));
            *p = q;
        }
        s
    }

    #[test]
    fn leibniz_rule() {
        let s = sample_series();
        for i in 0..4 {
            for j in 0..4 {
                let lhs = DiffOperator::partial(4, i).compose(&DiffOperator::coordinate(4, j));
                let mut rhs = DiffOperator::monomial(unit_w(4, j), unit_u(4, i), rat(1, 1));
                if i == j {
                    rhs.add_term(vec![0; 4], vec![0; 4], rat(1, 1));
                }
                assert_eq!(lhs, rhs);
                let direct = lhs.apply(&s);
                let stepwise =
                    DiffOperator::partial(4, i).apply(&DiffOperator::coordinate(4, j).apply(&s));
                assert!(direct.agrees_with(&stepwise));
            }
        }
    }

    #[test]
    fn composition_matches_sequential_application() {
        let s = sample_series();
        let p = DiffOperator::monomial(vec![1, 0, 2, 0], vec![0, 2, 0, 1], rat(3, 2));
        let mut q = DiffOperator::monomial(vec![0, 1, 0, 0], vec![1, 0, 1, 0], rat(-1, 1));
        q.add_term(vec![0, 0, 0, 0], vec![0, 1, 0, 0], rat(5, 1));
        let composed = p.compose(&q).apply(&s);
        let seq = p.apply(&q.apply(&s));
        assert!(composed.agrees_with(&seq));
        // linearity
        let mut sum = p.clone();
        sum.add_scaled(&q, &rat(2, 1));
        let mut expected = p.apply(&s);
        expected.add_scaled(&q.apply(&s), &rat(2, 1));
        expected.prune();
        assert!(sum.apply(&s).agrees_with(&expected));
    }

    #[test]
    fn system_operators_annihilate_basis() {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        for s in basis_for_triangulation(&sys, &e1_square_t(), 8).unwrap() {
            let ls = s.to_log_series();
            for r in annihilation_residuals(&sys, &ls) {
                assert_eq!(r.nonzero, 0, "{}", r.operator);
            }
        }
        let other = e1(&[(1, 5), (1, 3), (1, 11)]);
        let s = basis_for_triangulation(&sys, &e1_square_t(), 8).unwrap()[0].to_log_series();
        assert!(annihilation_residuals(&other, &s)
            .iter()
            .any(|r| r.nonzero > 0));
    }

    #[test]
    fn valuations_and_raising() {
        let sys = e1(&[(1, 5), (1, 3), (1, 7)]);
        let cfg = sys.cfg();
        let l = &sys.facets()[0];
        let op = DiffOperator::identity(4);
        assert_eq!(op.valuation(cfg, l).unwrap(), BigInt::zero());
        let raised = raise_valuation(&sys, &[0; 4], l).unwrap();
        assert_eq!(raised.valuation(cfg, l).unwrap(), BigInt::one());
        assert_eq!(
            DiffOperator::zero(4).valuation(cfg, l),
            Err(GkzError::ZeroOperator)
        );
        // α on the facet: l(α - A·0) = 0
        let on_facet = e1(&[(1, 5), (1, 3), (0, 1)]);
        assert!(matches!(
            raise_valuation(&on_facet, &[0; 4], &on_facet.facets()[0]),
            Err(GkzError::ResonanceObstruction { .. })
        ));
    }

    #[test]
    fn box_rewrites() {
        let e1c = e1(&[(0, 1), (0, 1), (0, 1)]);
        match box_rewrite(e1c.cfg(), &[1, 0, 0, 1], &[0, 1, 1, 0]) {
            BoxRewrite::Found { w_prime, relation } => {
                assert_eq!(w_prime, vec![0; 4]);
                assert_eq!(relation, vec![1, -1, -1, 1]);
            }
            other => panic!("{other:?}"),
        }
        let e2c = e2(&[(0, 1), (0, 1)]);
        assert_eq!(
            box_rewrite(e2c.cfg(), &[0, 0, 1, 1], &[1, 0, 0, 0]),
            BoxRewrite::NotRepresentable
        );
        assert_eq!(
            box_rewrite(e2c.cfg(), &[0; 4], &[0, 1, 0, 0]),
            BoxRewrite::NotRepresentable
        );
    }

    #[test]
    fn inverse_of_contiguity() {
        for sys in [e1(&[(1, 5), (1, 3), (1, 7)]), e2(&[(1, 3), (2, 5)])] {
            for i in 0..4 {
                let inv = contiguity_inverse(&sys, i, &ContiguityConfig::default()).unwrap();
                assert!(inv.rounds > 0);
                assert_eq!(inv.certified_series, 2 + (sys.cfg().dim() == 2) as usize);
                assert!(!inv.operator.is_zero());
            }
        }
    }

    #[test]
    fn inverse_with_logarithmic_certificate() {
        let sys = e1(&[(1, 1), (1, 2), (1, 2)]);
        let cfg = ContiguityConfig {
            triangulation: Some(e1_square_t()),
            truncation: 4,
            ..ContiguityConfig::default()
        };
        let inv = contiguity_inverse(&sys, 3, &cfg).unwrap();
        assert_eq!(inv.certified_series, 2);
    }

    #[test]
    fn pyramid_contiguity() {
        assert!(matches!(
            contiguity_inverse(
                &e3(&[(1, 3), (1, 5), (0, 1)]),
                3,
                &ContiguityConfig::default()
            ),
            Err(GkzError::Precondition(_))
        ));
        let inv = contiguity_inverse(
            &e3(&[(1, 3), (1, 5), (2, 7)]),
            3,
            &ContiguityConfig::default(),
        )
        .unwrap();
        assert!(inv.certified_series == 2);
    }

    #[test]
    fn effort_limit() {
        let cfg = ContiguityConfig {
            effort: 1,
            ..ContiguityConfig::default()
        };
        match contiguity_inverse(&e1(&[(1, 5), (1, 3), (1, 7)]), 0, &cfg) {
            Err(GkzError::EffortExceeded { rounds, trace }) => {
                assert_eq!(rounds, 1);
                assert_eq!(trace.len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn display() {
        let op = DiffOperator::monomial(vec![1, 0], vec![0, 2], rat(-1, 2));
        assert_eq!(op.to_string(), "(-1/2)*v1*∂2^2");
        assert_eq!(DiffOperator::identity(2).to_string(), "1");
        assert_eq!(DiffOperator::zero(2).to_string(), "0");
    }
}
