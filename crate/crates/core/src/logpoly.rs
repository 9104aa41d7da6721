//! Polynomials in the formal symbols `log v_1, ..., log v_N` and series whose
//! coefficients are such polynomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::intlin::Rat;

/// `|m⁺|`, the h-degree of the positive part of an offset.
pub fn positive_degree(m: &[i64]) -> i64 {
    m.iter().filter(|&&x| x > 0).sum()
}

/// A polynomial in `log v_1 .. log v_N` with rational coefficients.
///
/// Keys are exponent vectors; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogPoly {
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl LogPoly {
    pub fn zero() -> Self {
        LogPoly::default()
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = LogPoly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    /// `sum_i g_i log v_i`.
    pub fn linear(g: &[Rat]) -> Self {
        let mut p = LogPoly::zero();
        for (i, gi) in g.iter().enumerate() {
            if !gi.is_zero() {
                let mut e = vec![0; g.len()];
                e[i] = 1;
                p.terms.insert(e, gi.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in the log symbols; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// The homogeneous part of the given degree.
    pub fn homogeneous(&self, degree: u32) -> LogPoly {
        LogPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LogPoly, s: &Rat) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * s);
        }
    }

    pub fn scaled(&self, s: &Rat) -> LogPoly {
        let mut out = LogPoly::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn mul(&self, other: &LogPoly) -> LogPoly {
        let mut out = LogPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Partial derivative with respect to the symbol `log v_i`.
    pub fn derivative(&self, i: usize) -> LogPoly {
        let mut out = LogPoly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Rat::from_integer(BigInt::from(e[i])));
            }
        }
        out
    }

    /// Places the symbols at `positions` of an `n`-symbol ring.
    pub fn embed(&self, positions: &[usize], n: usize) -> LogPoly {
        LogPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut big = vec![0; n];
                    for (k, &p) in positions.iter().enumerate() {
                        big[p] = e[k];
                    }
                    (big, c.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let logs: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("log(v{})", i + 1)
                    } else {
                        format!("log(v{})^{k}", i + 1)
                    }
                })
                .collect();
            if logs.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", logs.join("*"))?;
            } else {
                write!(f, "({c})*{}", logs.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `sum_m v^{gamma + m} P_m(log v)`, exact for offsets with `|m⁺| <= truncation`.
///
/// Plain series are the case where every `P_m` is constant (weight 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    pub gamma: Vec<Rat>,
    pub truncation: i64,
    pub weight: usize,
    pub terms: BTreeMap<Vec<i64>, LogPoly>,
}

impl LogSeries {
    pub fn new(gamma: Vec<Rat>, truncation: i64, weight: usize) -> Self {
        LogSeries {
            gamma,
            truncation,
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[i64]) -> LogPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest power of the log symbols in any term.
    pub fn log_degree(&self) -> u32 {
        self.terms.values().map(LogPoly::degree).max().unwrap_or(0)
    }

    pub fn add_scaled(&mut self, other: &LogSeries, s: &Rat) {
        self.truncation = self.truncation.min(other.truncation);
        for (m, p) in &other.terms {
            let entry = self.terms.entry(m.clone()).or_default();
            entry.add_scaled(p, s);
        }
    }

    /// Drops offsets beyond the truncation and zero coefficients.
    pub fn prune(&mut self) {
        let t = self.truncation;
        self.terms
            .retain(|m, p| positive_degree(m) <= t && !p.is_zero());
    }

    /// Nonzero coefficients on offsets within the truncation.
    pub fn nonzero_safe_terms(&self) -> Vec<(&Vec<i64>, &LogPoly)> {
        self.terms
            .iter()
            .filter(|(m, p)| positive_degree(m) <= self.truncation && !p.is_zero())
            .collect()
    }

    /// True when the two series agree on every offset within both truncations.
    pub fn agrees_with(&self, other: &LogSeries) -> bool {
        if self.gamma != other.gamma {
            return false;
        }
        let t = self.truncation.min(other.truncation);
        let keys: std::collections::BTreeSet<&Vec<i64>> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .filter(|m| positive_degree(m) <= t)
            .all(|m| self.coefficient(m) == other.coefficient(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rat;

    #[test]
    fn polynomial_arithmetic() {
        let l = LogPoly::linear(&[rat(1, 1), rat(-1, 1)]);
        let sq = l.mul(&l);
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.terms.len(), 3);
        assert_eq!(sq.derivative(0), l.scaled(&rat(2, 1)));
        let mut z = l.clone();
        z.add_scaled(&l, &rat(-1, 1));
        assert!(z.is_zero());
        assert_eq!(LogPoly::constant(2, rat(3, 2)).constant_term(), rat(3, 2));
        assert_eq!(l.to_string(), "(-1)*log(v2) + log(v1)");
    }

    #[test]
    fn embedding() {
        let p = LogPoly::linear(&[rat(1, 1), rat(2, 1)]);
        let q = p.embed(&[1, 3], 4);
        assert_eq!(
            q,
            LogPoly::linear(&[rat(0, 1), rat(1, 1), rat(0, 1), rat(2, 1)])
        );
    }

    #[test]
    fn series_agreement() {
        let mut a = LogSeries::new(vec![rat(1, 2)], 2, 0);
        a.terms.insert(vec![1], LogPoly::constant(1, rat(1, 1)));
        a.terms.insert(vec![3], LogPoly::constant(1, rat(5, 1)));
        let mut b = a.clone();
        b.terms.insert(vec![3], LogPoly::constant(1, rat(7, 1)));
        assert!(a.agrees_with(&b));
        b.terms.insert(vec![2], LogPoly::constant(1, rat(7, 1)));
        assert!(!a.agrees_with(&b));
        assert_eq!(positive_degree(&[2, -3, 1]), 3);
    }
}
