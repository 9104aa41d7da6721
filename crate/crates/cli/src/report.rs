//! Machine-readable report pieces and their conversions.
//!
//! Rationals are strings, exponent vectors integer arrays, point indices 1-based.

use std::collections::BTreeMap;

use gkz_core::intlin::Rat;
use gkz_core::logpoly::{LogPoly, LogSeries};
use gkz_core::series::SupportCertificate;
use gkz_core::weyl::DiffOperator;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::job::{parse_rat, parse_rats, JobSpec};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub job: JobSpec,
    pub result: T,
}

pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_strs(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(rat_str).collect()
}

pub fn big_i64(x: &BigInt) -> Result<i64, CliError> {
    x.to_i64()
        .ok_or_else(|| CliError::Internal(format!("{x} does not fit in 64 bits")))
}

pub fn big_vec(xs: &[BigInt]) -> Result<Vec<i64>, CliError> {
    xs.iter().map(big_i64).collect()
}

pub fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|i| i + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub log: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOut {
    pub l: Vec<i64>,
    /// The constant part of the coefficient.
    pub coefficient: String,
    /// Every monomial of the coefficient; empty when it is a plain constant.
    pub log_poly: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesOut {
    pub gamma: Vec<String>,
    pub truncation: i64,
    pub weight: usize,
    pub terms: Vec<TermOut>,
}

impl SeriesOut {
    pub fn from_series(s: &LogSeries) -> Self {
        let terms = s
            .nonzero_safe_terms()
            .into_iter()
            .map(|(l, p)| TermOut {
                l: l.clone(),
                coefficient: rat_str(&p.constant_term()),
                log_poly: if p.degree() == 0 {
                    Vec::new()
                } else {
                    p.terms
                        .iter()
                        .map(|(e, c)| Monomial {
                            log: e.clone(),
                            coefficient: rat_str(c),
                        })
                        .collect()
                },
            })
            .collect();
        SeriesOut {
            gamma: rat_strs(&s.gamma),
            truncation: s.truncation,
            weight: s.weight,
            terms,
        }
    }

    pub fn to_series(&self) -> Result<LogSeries, CliError> {
        let gamma = parse_rats(&self.gamma)?;
        let n = gamma.len();
        let mut terms = BTreeMap::new();
        for t in &self.terms {
            if t.l.len() != n {
                return Err(CliError::Parse(format!(
                    "term {:?} has the wrong length",
                    t.l
                )));
            }
            let mut p = LogPoly::zero();
            if t.log_poly.is_empty() {
                p = LogPoly::constant(n, parse_rat(&t.coefficient)?);
            } else {
                for m in &t.log_poly {
                    if m.log.len() != n {
                        return Err(CliError::Parse(format!(
                            "log exponent {:?} has the wrong length",
                            m.log
                        )));
                    }
                    p.add_term(m.log.clone(), parse_rat(&m.coefficient)?);
                }
                if p.constant_term() != parse_rat(&t.coefficient)? {
                    return Err(CliError::Parse(format!(
                        "term {:?}: constant part disagrees with its log polynomial",
                        t.l
                    )));
                }
            }
            terms.insert(t.l.clone(), p);
        }
        Ok(LogSeries {
            gamma,
            truncation: self.truncation,
            weight: self.weight,
            terms,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SupportOut {
    Full {
        nonintegral: Vec<usize>,
    },
    Cone {
        nonintegral: Vec<usize>,
        rays: Vec<Vec<i64>>,
        lineality: Vec<Vec<i64>>,
        interior: Vec<i64>,
        apex: Vec<i64>,
    },
}

impl From<&SupportCertificate> for SupportOut {
    fn from(c: &SupportCertificate) -> Self {
        match c {
            SupportCertificate::Full { nonintegral } => SupportOut::Full {
                nonintegral: one_based(nonintegral),
            },
            SupportCertificate::Cone {
                nonintegral,
                rays,
                lineality,
                interior,
                apex,
            } => SupportOut::Cone {
                nonintegral: one_based(nonintegral),
                rays: rays.clone(),
                lineality: lineality.clone(),
                interior: interior.clone(),
                apex: apex.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTerm {
    pub v: Vec<i64>,
    pub d: Vec<u32>,
    pub coefficient: String,
}

pub fn operator_terms(op: &DiffOperator) -> Vec<OperatorTerm> {
    op.terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((w, u), c)| OperatorTerm {
            v: w.clone(),
            d: u.clone(),
            coefficient: rat_str(c),
        })
        .collect()
}

pub fn render_series(s: &LogSeries, max_terms: usize) -> String {
    let gamma: Vec<String> = rat_strs(&s.gamma);
    let mut out = format!(
        "  gamma = ({}), weight {}, log degree {}, exact to |l+| <= {}\n",
        gamma.join(", "),
        s.weight,
        s.log_degree(),
        s.truncation
    );
    let terms = s.nonzero_safe_terms();
    for (l, p) in terms.iter().take(max_terms) {
        out.push_str(&format!("    l = {l:?}: {p}\n"));
    }
    if terms.len() > max_terms {
        out.push_str(&format!("    ... {} more terms\n", terms.len() - max_terms));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gkz_core::intlin::rat;

    #[test]
    fn series_round_trip() {
        let mut s = LogSeries::new(vec![rat(1, 2), rat(-1, 3)], 4, 1);
        let mut p = LogPoly::linear(&[rat(2, 1), rat(-1, 5)]);
        p.add_term(vec![0, 0], rat(7, 3));
        s.terms.insert(vec![1, -1], p);
        s.terms.insert(vec![0, 0], LogPoly::constant(2, rat(1, 1)));
        let out = SeriesOut::from_series(&s);
        assert_eq!(out.terms[1].coefficient, "7/3");
        let back = out.to_series().unwrap();
        assert_eq!(back, s);
        let text = serde_json::to_string(&out).unwrap();
        let again: SeriesOut = serde_json::from_str(&text).unwrap();
        assert_eq!(again, out);
    }

    #[test]
    fn inconsistent_constant_rejected() {
        let out = SeriesOut {
            gamma: vec!["0".into()],
            truncation: 1,
            weight: 1,
            terms: vec![TermOut {
                l: vec![0],
                coefficient: "2".into(),
                log_poly: vec![Monomial {
                    log: vec![1],
                    coefficient: "1".into(),
                }],
            }],
        };
        assert!(out.to_series().is_err());
    }
}
