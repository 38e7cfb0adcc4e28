//! Time-scale polynomials `h_k(·, a)`, the exponential `e_λ(·, a)` and the
//! circle-plus addition.
//!
//! On a discrete scale both families are built by prefix scans anchored at
//! `a`: forward for points right of the anchor, backward (negated sums,
//! reciprocal products) for points left of it. On a real interval they are
//! the classical `(t − a)^k / k!` and `exp(λ(t − a))`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::timescale::{SampledFunction, TimeScale};

/// Absolute threshold below which `|1 + μλ|` counts as zero.
pub const REGRESSIVITY_EPS: f64 = 1e-12;

/// Where the polynomials and exponentials are anchored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    /// A grid index (discrete scales only).
    Index(usize),
    /// A point of the scale. On a discrete scale it must coincide with a
    /// grid point; on a real interval it must lie in `[a, b]`.
    Point(f64),
}

impl From<usize> for Anchor {
    fn from(i: usize) -> Self {
        Anchor::Index(i)
    }
}

impl From<f64> for Anchor {
    fn from(t: f64) -> Self {
        Anchor::Point(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum ResolvedAnchor {
    Index(usize),
    Point(f64),
}

pub(crate) fn resolve_anchor(ts: &TimeScale, anchor: Anchor) -> Result<ResolvedAnchor> {
    let points = ts.points();
    if ts.is_discrete() {
        match anchor {
            Anchor::Index(i) if i < ts.len() => Ok(ResolvedAnchor::Index(i)),
            Anchor::Index(i) => Err(Error::IndexOutOfRange {
                index: i,
                len: ts.len(),
            }),
            Anchor::Point(t) => ts
                .index_of(t)
                .map(ResolvedAnchor::Index)
                .ok_or(Error::AnchorNotOnScale(t)),
        }
    } else {
        let t = match anchor {
            Anchor::Index(i) => ts.point(i)?,
            Anchor::Point(t) => t,
        };
        let (lo, hi) = (points[0], points[points.len() - 1]);
        if t.is_finite() && t >= lo && t <= hi {
            Ok(ResolvedAnchor::Point(t))
        } else {
            Err(Error::AnchorNotOnScale(t))
        }
    }
}

/// `h_0 .. h_{k_max}` anchored at `anchor`, each sampled on `ts`.
///
/// Discrete scales: `h_k(t_j, a) = Σ_{a ≤ t_i < t_j} μ_i h_{k−1}(t_i, a)`,
/// with the oriented (negated) sum for `t_j < a`. Cost is `O(k_max · N)`.
pub fn hk_table(
    ts: &TimeScale,
    anchor: impl Into<Anchor>,
    k_max: usize,
) -> Result<Vec<SampledFunction<'_>>> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match resolve_anchor(ts, anchor.into())? {
        ResolvedAnchor::Point(a) => {
            let mut table = Vec::with_capacity(k_max + 1);
            let mut factorial = 1.0;
            for k in 0..=k_max {
                if k > 0 {
                    factorial *= k as f64;
                }
                table.push(SampledFunction::from_real(ts, |t| {
                    (t - a).powi(k as i32) / factorial
                }));
            }
            Ok(table)
        }
        ResolvedAnchor::Index(a) => {
            let mu = ts.graininess_all();
            let n = ts.len();
            let mut prev = vec![one; n];
            let mut table = Vec::with_capacity(k_max + 1);
            table.push(SampledFunction::new(ts, prev.clone()));
            for _ in 1..=k_max {
                let mut next = vec![zero; n];
                for j in a..n - 1 {
                    next[j + 1] = next[j] + prev[j] * mu[j];
                }
                for j in (0..a).rev() {
                    next[j] = next[j + 1] - prev[j] * mu[j];
                }
                table.push(SampledFunction::new(ts, next.clone()));
                prev = next;
            }
            Ok(table)
        }
    }
}

/// First grid index where `|1 + μ_i λ| ≤ REGRESSIVITY_EPS`, if any.
pub fn first_nonregressive(ts: &TimeScale, lambda: Complex64) -> Option<usize> {
    if !ts.is_discrete() {
        return None;
    }
    ts.graininess_all()
        .iter()
        .position(|&mu| (1.0 + lambda * mu).norm() <= REGRESSIVITY_EPS)
}

/// The time-scale exponential `e_λ(·, a)`.
///
/// Discrete: ordered products of `(1 + μ_i λ)` away from the anchor, and
/// reciprocal products to its left. Real interval: `exp(λ(t − a))`.
pub fn exp_lambda(
    ts: &TimeScale,
    lambda: Complex64,
    anchor: impl Into<Anchor>,
) -> Result<SampledFunction<'_>> {
    match resolve_anchor(ts, anchor.into())? {
        ResolvedAnchor::Point(a) => Ok(SampledFunction::from_fn(ts, |t| (lambda * (t - a)).exp())),
        ResolvedAnchor::Index(a) => {
            if let Some(index) = first_nonregressive(ts, lambda) {
                return Err(Error::NotRegressive { index });
            }
            let mu = ts.graininess_all();
            let n = ts.len();
            let mut values = vec![Complex64::new(1.0, 0.0); n];
            for j in a..n - 1 {
                values[j + 1] = values[j] * (1.0 + lambda * mu[j]);
            }
            for j in (0..a).rev() {
                values[j] = values[j + 1] / (1.0 + lambda * mu[j]);
            }
            Ok(SampledFunction::new(ts, values))
        }
    }
}

/// `λ₁ ⊕ λ₂ = λ₁ + λ₂ + μ λ₁ λ₂`.
pub fn circle_plus(lambda1: Complex64, lambda2: Complex64, mu: f64) -> Complex64 {
    lambda1 + lambda2 + lambda1 * lambda2 * mu
}
