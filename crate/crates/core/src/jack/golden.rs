//! Text format for exact Jack expansions.
//!
//! One record per line:
//!
//! ```text
//! lambda=(2,1) n=3 theta=1/2 : (2,1)=4 (1,1,1)=6
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Coefficients are
//! exact rationals written `p/q` (or `p` for integers).

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::jack::{JackEngine, Partition};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRecord {
    pub lambda: Partition,
    pub nvars: usize,
    pub theta: Rational,
    pub terms: BTreeMap<Partition, Rational>,
}

impl GoldenRecord {
    pub fn compute(lambda: &Partition, nvars: usize, theta: &Rational) -> Result<Self> {
        let engine = JackEngine::new(theta.clone())?;
        let j = engine.expand(lambda, nvars)?;
        Ok(Self {
            lambda: lambda.clone(),
            nvars,
            theta: theta.clone(),
            terms: j.terms().map(|(k, v)| (k.clone(), v.clone())).collect(),
        })
    }

    pub fn to_line(&self) -> String {
        let mut s = format!("lambda={} n={} theta={} :", self.lambda, self.nvars, self.theta);
        // dominance-maximal first
        for (mu, c) in &self.terms {
            let _ = write!(s, " {mu}={c}");
        }
        s
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let bad = |what: &str| Error::Domain(format!("golden record {line:?}: {what}"));
        let (head, body) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let mut lambda = None;
        let mut nvars = None;
        let mut theta = None;
        for field in head.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| bad("field without '='"))?;
            match k {
                "lambda" => lambda = Some(v.parse::<Partition>()?),
                "n" => nvars = Some(v.parse::<usize>().map_err(|_| bad("bad n"))?),
                "theta" => theta = Some(Rational::parse_decimal(v).ok_or_else(|| bad("bad theta"))?),
                _ => return Err(bad("unknown field")),
            }
        }
        let mut terms = BTreeMap::new();
        for item in body.split_whitespace() {
            let (mu, c) = item.rsplit_once('=').ok_or_else(|| bad("term without '='"))?;
            let c = Rational::parse_decimal(c).ok_or_else(|| bad("bad coefficient"))?;
            terms.insert(mu.parse::<Partition>()?, c);
        }
        Ok(Self {
            lambda: lambda.ok_or_else(|| bad("missing lambda"))?,
            nvars: nvars.ok_or_else(|| bad("missing n"))?,
            theta: theta.ok_or_else(|| bad("missing theta"))?,
            terms,
        })
    }
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(GoldenRecord::parse_line)
        .collect()
}

pub fn write_golden(records: &[GoldenRecord]) -> String {
    let mut out = String::from("# exact monomial expansions of J_lambda(z; theta)\n");
    for r in records {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn line_round_trip() {
        let r = GoldenRecord::compute(&part![2, 1], 3, &Rational::from_ratio(1, 2)).unwrap();
        let line = r.to_line();
        assert!(line.starts_with("lambda=(2,1) n=3 theta=1/2 :"));
        assert_eq!(GoldenRecord::parse_line(&line).unwrap(), r);
    }

    #[test]
    fn malformed_lines() {
        assert!(GoldenRecord::parse_line("lambda=(2) n=1").is_err());
        assert!(GoldenRecord::parse_line("lambda=(1,2) n=1 theta=1 : (1)=1").is_err());
        assert!(GoldenRecord::parse_line("lambda=(2) n=1 theta=x : (2)=2").is_err());
    }
}
