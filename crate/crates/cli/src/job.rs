//! Job documents: the configuration, the parameter and per-command options.

use gkz_core::geom::PointConfig;
use gkz_core::intlin::{IntMatrix, Rat};
use gkz_core::system::GkzSystem;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// Default truncation when neither the job nor the flags give one.
pub const DEFAULT_TRUNCATION: i64 = 8;

/// Point indices are 1-based here, as in every printed report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(default)]
    pub alpha: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplex: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_order: Option<usize>,
    /// Facets (1-based, in the order `analyze` lists them) for `restrict`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<String>>,
    /// Column `i` of the contiguity map `∂_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    /// Evaluation point for `series`, one rational per column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A parsed input document. Reports carry their job, so a report can be fed
/// back in; `result` is then available to `verify`.
#[derive(Clone, Debug)]
pub struct Input {
    pub job: JobSpec,
    pub result: Option<Value>,
}

pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("not JSON: {e}")))?;
    let (job, result) = match value {
        Value::Object(mut map) if map.contains_key("job") => {
            let job = map.remove("job").expect("checked");
            (job, map.remove("result"))
        }
        other => (other, None),
    };
    let job: JobSpec =
        serde_json::from_value(job).map_err(|e| CliError::Parse(format!("bad job: {e}")))?;
    job.check_shape()?;
    Ok(Input { job, result })
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let t = s.trim();
    let r: Rat = t
        .parse()
        .map_err(|_| CliError::Parse(format!("not a rational: {s:?}")))?;
    Ok(r)
}

pub fn parse_rats(xs: &[String]) -> Result<Vec<Rat>, CliError> {
    xs.iter().map(|x| parse_rat(x)).collect()
}

/// Splits a comma separated flag value.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect()
}

fn one_based(name: &str, xs: &[usize], n: usize) -> Result<Vec<usize>, CliError> {
    xs.iter()
        .map(|&x| {
            if x == 0 || x > n {
                Err(CliError::Parse(format!(
                    "{name} index {x} is outside 1..={n}"
                )))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

impl JobSpec {
    /// Structural checks that need no arithmetic.
    fn check_shape(&self) -> Result<(), CliError> {
        let Some(first) = self.a.first() else {
            return Err(CliError::Parse("A has no rows".into()));
        };
        let n = first.len();
        if n == 0 || self.a.iter().any(|row| row.len() != n) {
            return Err(CliError::Parse(
                "A must be a nonempty rectangular matrix".into(),
            ));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.a[0].len()
    }

    pub fn truncation(&self) -> i64 {
        self.truncation.unwrap_or(DEFAULT_TRUNCATION)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn config(&self) -> Result<PointConfig, CliError> {
        let m = IntMatrix::from_rows(&self.a).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(PointConfig::new(m)?)
    }

    pub fn alpha(&self) -> Result<Vec<Rat>, CliError> {
        let alpha = parse_rats(&self.alpha)?;
        if alpha.len() != self.a.len() {
            return Err(CliError::Parse(format!(
                "alpha has {} entries for {} rows",
                alpha.len(),
                self.a.len()
            )));
        }
        Ok(alpha)
    }

    pub fn system(&self) -> Result<GkzSystem, CliError> {
        Ok(GkzSystem::new(self.config()?, self.alpha()?)?)
    }

    pub fn heights(&self) -> Result<Option<Vec<Rat>>, CliError> {
        self.heights.as_deref().map(parse_rats).transpose()
    }

    pub fn rho(&self) -> Result<Option<Vec<Rat>>, CliError> {
        self.rho.as_deref().map(parse_rats).transpose()
    }

    pub fn beta(&self) -> Result<Option<Vec<Rat>>, CliError> {
        self.beta.as_deref().map(parse_rats).transpose()
    }

    pub fn point(&self) -> Result<Option<Vec<Rat>>, CliError> {
        self.point.as_deref().map(parse_rats).transpose()
    }

    pub fn simplex0(&self) -> Result<Option<Vec<usize>>, CliError> {
        let n = self.n();
        self.simplex
            .as_deref()
            .map(|s| one_based("simplex", s, n))
            .transpose()
    }

    pub fn facets0(&self, count: usize) -> Result<Option<Vec<usize>>, CliError> {
        self.facets
            .as_deref()
            .map(|s| one_based("facet", s, count))
            .transpose()
    }

    pub fn column0(&self) -> Result<usize, CliError> {
        let c = self.column.ok_or_else(|| {
            CliError::Parse("contiguity needs a column (--column or \"column\")".into())
        })?;
        Ok(one_based("column", &[c], self.n())?[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_job_and_report() {
        let job = parse_input(r#"{"A": [[1,1],[0,1]], "alpha": ["1/2", "1/3"]}"#).unwrap();
        assert_eq!(job.job.alpha().unwrap()[1], Rat::new(1.into(), 3.into()));
        assert!(job.result.is_none());
        let rep = parse_input(
            r#"{"command": "x", "job": {"A": [[1,1]], "alpha": ["2"]}, "result": {"k": 1}}"#,
        )
        .unwrap();
        assert!(rep.result.is_some());
        assert_eq!(rep.job.truncation(), DEFAULT_TRUNCATION);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"A": [[1,1],[0]], "alpha": []}"#,
            r#"{"A": [], "alpha": []}"#,
            r#"{"A": [[1]], "alpha": ["x"], "what": 1}"#,
            "[1, 2",
        ] {
            assert!(matches!(parse_input(bad), Err(CliError::Parse(_))), "{bad}");
        }
        let j = parse_input(r#"{"A": [[1,1]], "alpha": ["1/0"]}"#).unwrap();
        assert!(j.job.alpha().is_err());
        assert!(parse_rat("3/-").is_err());
    }

    #[test]
    fn one_based_indices() {
        let j = parse_input(r#"{"A": [[1,1,1]], "alpha": ["1"], "simplex": [3], "column": 1}"#)
            .unwrap();
        assert_eq!(j.job.simplex0().unwrap(), Some(vec![2]));
        assert_eq!(j.job.column0().unwrap(), 0);
        let bad = parse_input(r#"{"A": [[1,1,1]], "alpha": ["1"], "simplex": [0]}"#).unwrap();
        assert!(bad.job.simplex0().is_err());
    }
}
