use thiserror::Error;

use crate::solver::Hypothesis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points must be strictly increasing (points[{index}] >= points[{}])", index + 1)]
    NonIncreasing { index: usize },
    #[error("time scale needs at least 3 points, got {len}")]
    TooShort { len: usize },
    #[error("invalid time scale parameter `{field}`: {reason}")]
    InvalidScale { field: &'static str, reason: String },
    #[error("index {index} out of range for a scale of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation not supported on a {0} scale")]
    UnsupportedScale(&'static str),
    #[error("sampled functions live on different time scales")]
    ScaleMismatch,
    #[error("anchor {0} is not a point of the time scale")]
    AnchorNotOnScale(f64),
    #[error("exponential is not regressive at grid index {index}")]
    NotRegressive { index: usize },
    #[error("repeated characteristic root: beta equals alpha^2")]
    DegenerateRoots,
    #[error("beta must be nonzero")]
    BetaZero,
    #[error("closed form needs forcing degree k >= 2, got k = {k}")]
    DegreeTooSmall { k: usize },
    #[error("scale has {len} points, need at least 3")]
    ScaleTooShort { len: usize },
    #[error("invalid problem field `{field}`: {reason}")]
    InvalidProblem { field: &'static str, reason: String },
    #[error("solution has no integration constants c1, c2")]
    MissingConstants,
    #[error("inadmissible problem: {}", fmt_hypotheses(.0))]
    Inadmissible(Vec<Hypothesis>),
}

fn fmt_hypotheses(failed: &[Hypothesis]) -> String {
    failed
        .iter()
        .map(|h| h.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
