//! Outcome of a single inequality evaluation.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::rational::Rational;

/// `lhs <= rhs` is the inequality being checked; `ratio = rhs / lhs` when
/// `lhs > 0`. For inequalities written with `>=` the smaller side is `lhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub inequality_id: String,
    #[serde(with = "crate::rational::serde_string")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub rhs: Rational,
    pub holds: bool,
    #[serde(with = "crate::rational::serde_string::option")]
    pub ratio: Option<Rational>,
    /// Parameters sufficient to rebuild the instance.
    pub digest: String,
    /// Optional certificate attached by the check (e.g. a translation vector).
    #[serde(skip)]
    pub witness: Option<Point>,
}

impl InequalityReport {
    pub fn new(inequality_id: impl Into<String>, lhs: Rational, rhs: Rational, digest: impl Into<String>) -> Self {
        let holds = lhs <= rhs;
        let ratio = if lhs.is_positive() { Some(&rhs / &lhs) } else { None };
        Self { inequality_id: inequality_id.into(), lhs, rhs, holds, ratio, digest: digest.into(), witness: None }
    }

    pub fn with_witness(mut self, w: Point) -> Self {
        self.witness = Some(w);
        self
    }

    /// Both sides vanish or coincide.
    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn is_degenerate(&self) -> bool {
        self.lhs.is_zero()
    }
}
