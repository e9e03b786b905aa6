//! Structured verification results.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// The first coefficient at which two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Which comparison failed, e.g. `"count vs product"`.
    pub stage: String,
    /// The exponent (or monomial) at which the coefficients differ.
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

impl Mismatch {
    pub fn new(
        stage: &str,
        exponent: impl fmt::Display,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) -> Self {
        Mismatch {
            stage: stage.to_string(),
            exponent: exponent.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
    /// Lowest `δ/2` exponent of the closed character before renormalisation
    /// (character checks only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_shift: Option<i64>,
}

impl Report {
    pub(crate) fn finish(
        identity: String,
        order: i64,
        started: Instant,
        mismatch: Option<Mismatch>,
    ) -> Self {
        Report {
            identity,
            order,
            status: if mismatch.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            first_mismatch: mismatch,
            elapsed_ms: started.elapsed().as_millis() as u64,
            q_shift: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Zeroes the timing so that output is byte-reproducible.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} (order {})", self.identity, self.order)?;
        if let Some(m) = &self.first_mismatch {
            write!(
                f,
                ": {} differs at {}: {} != {}",
                m.stage, m.exponent, m.lhs, m.rhs
            )?;
        }
        Ok(())
    }
}

/// First index at which the two coefficient vectors differ.
pub fn first_difference<A, B>(stage: &str, lhs: &[A], rhs: &[B]) -> Option<Mismatch>
where
    A: Clone + Into<BigInt>,
    B: Clone + Into<BigInt>,
{
    let len = lhs.len().max(rhs.len());
    (0..len).find_map(|m| {
        let l: BigInt = lhs.get(m).cloned().map(Into::into).unwrap_or_default();
        let r: BigInt = rhs.get(m).cloned().map(Into::into).unwrap_or_default();
        (l != r).then(|| Mismatch::new(stage, format!("q^{m}"), l, r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_and_json() {
        assert!(first_difference("x", &[1u64, 2], &[BigInt::from(1), BigInt::from(2)]).is_none());
        let m = first_difference("x", &[1u64, 2], &[1u64, 3]).unwrap();
        assert_eq!(m.exponent, "q^1");
        let r = Report::finish("demo".into(), 1, Instant::now(), Some(m)).without_timing();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"identity":"demo","order":1,"status":"FAIL","first_mismatch":{"stage":"x","exponent":"q^1","lhs":"2","rhs":"3"},"elapsed_ms":0}"#
        );
    }
}
