//! Concrete time scales and the delta-calculus primitives on them.
//!
//! Four kinds are supported: an explicit strictly increasing grid, a uniform
//! `hℤ` segment, a q-scale segment `{t₀ qʲ}` with `q > 1`, and a real
//! interval. The three discrete kinds consist of isolated points, where the
//! delta derivative is a forward difference quotient and the delta integral
//! is a graininess-weighted sum. A real interval is handled analytically by
//! [`crate::special`] and [`crate::verify`]; its `points` are output samples
//! only, and [`delta_derivative`] / [`delta_integral`] reject it.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of points for any time scale.
pub const MIN_POINTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleKind {
    Grid,
    RealInterval,
    Uniform,
    QScale,
}

impl ScaleKind {
    pub fn is_discrete(self) -> bool {
        !matches!(self, ScaleKind::RealInterval)
    }

    pub fn name(self) -> &'static str {
        match self {
            ScaleKind::Grid => "grid",
            ScaleKind::RealInterval => "real_interval",
            ScaleKind::Uniform => "uniform",
            ScaleKind::QScale => "q_scale",
        }
    }
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// JSON description of a time scale.
///
/// ```json
/// {"kind":"grid","points":[0,0.5,0.75,2]}
/// {"kind":"uniform","start":0,"step":0.5,"count":40}
/// {"kind":"q_scale","q":1.5,"first":1,"count":20}
/// {"kind":"real_interval","a":0,"b":6.283185307179586,"samples":100}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScaleSpec {
    Grid { points: Vec<f64> },
    Uniform { start: f64, step: f64, count: usize },
    QScale { q: f64, first: f64, count: usize },
    RealInterval { a: f64, b: f64, samples: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Params {
    Grid,
    Uniform { start: f64, step: f64 },
    QScale { q: f64, first: f64 },
    RealInterval { a: f64, b: f64 },
}

/// A finite time scale. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    params: Params,
    points: Vec<f64>,
}

fn finite(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidScale {
            field,
            reason: format!("{value} is not finite"),
        })
    }
}

fn check_count(count: usize) -> Result<()> {
    if count < MIN_POINTS {
        return Err(Error::TooShort { len: count });
    }
    Ok(())
}

impl TimeScale {
    /// An explicit grid of isolated points, stored verbatim.
    pub fn grid(points: Vec<f64>) -> Result<Self> {
        check_count(points.len())?;
        for &p in &points {
            finite("points", p)?;
        }
        if let Some(index) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasing { index });
        }
        Ok(TimeScale {
            params: Params::Grid,
            points,
        })
    }

    /// `{start + j·step : 0 ≤ j < count}`, each point generated by a single
    /// multiplication.
    pub fn uniform(start: f64, step: f64, count: usize) -> Result<Self> {
        finite("start", start)?;
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidScale {
                field: "step",
                reason: format!("must be finite and > 0, got {step}"),
            });
        }
        check_count(count)?;
        let points: Vec<f64> = (0..count).map(|j| start + j as f64 * step).collect();
        if let Some(index) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasing { index });
        }
        Ok(TimeScale {
            params: Params::Uniform { start, step },
            points,
        })
    }

    /// `{first · qʲ : 0 ≤ j < count}` with `q > 1`, `first > 0`.
    pub fn q_scale(q: f64, first: f64, count: usize) -> Result<Self> {
        if !(q.is_finite() && q > 1.0) {
            return Err(Error::InvalidScale {
                field: "q",
                reason: format!("must be finite and > 1, got {q}"),
            });
        }
        if !(first.is_finite() && first > 0.0) {
            return Err(Error::InvalidScale {
                field: "first",
                reason: format!("must be finite and > 0, got {first}"),
            });
        }
        check_count(count)?;
        let points: Vec<f64> = (0..count).map(|j| first * q.powi(j as i32)).collect();
        if let Some(bad) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidScale {
                field: "count",
                reason: format!("point {bad} overflows"),
            });
        }
        if let Some(index) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasing { index });
        }
        Ok(TimeScale {
            params: Params::QScale { q, first },
            points,
        })
    }

    /// The real interval `[a, b]`, sampled at `samples` equally spaced points
    /// for output. The last sample is exactly `b`.
    pub fn real_interval(a: f64, b: f64, samples: usize) -> Result<Self> {
        finite("a", a)?;
        finite("b", b)?;
        if a >= b {
            return Err(Error::InvalidScale {
                field: "b",
                reason: format!("must exceed a = {a}, got {b}"),
            });
        }
        check_count(samples)?;
        let last = samples - 1;
        let width = b - a;
        let points = (0..samples)
            .map(|j| {
                if j == last {
                    b
                } else {
                    a + width * (j as f64 / last as f64)
                }
            })
            .collect();
        Ok(TimeScale {
            params: Params::RealInterval { a, b },
            points,
        })
    }

    pub fn from_spec(spec: &ScaleSpec) -> Result<Self> {
        match spec {
            ScaleSpec::Grid { points } => Self::grid(points.clone()),
            ScaleSpec::Uniform { start, step, count } => Self::uniform(*start, *step, *count),
            ScaleSpec::QScale { q, first, count } => Self::q_scale(*q, *first, *count),
            ScaleSpec::RealInterval { a, b, samples } => Self::real_interval(*a, *b, *samples),
        }
    }

    pub fn to_spec(&self) -> ScaleSpec {
        let count = self.points.len();
        match self.params {
            Params::Grid => ScaleSpec::Grid {
                points: self.points.clone(),
            },
            Params::Uniform { start, step } => ScaleSpec::Uniform { start, step, count },
            Params::QScale { q, first } => ScaleSpec::QScale { q, first, count },
            Params::RealInterval { a, b } => ScaleSpec::RealInterval {
                a,
                b,
                samples: count,
            },
        }
    }

    pub fn kind(&self) -> ScaleKind {
        match self.params {
            Params::Grid => ScaleKind::Grid,
            Params::Uniform { .. } => ScaleKind::Uniform,
            Params::QScale { .. } => ScaleKind::QScale,
            Params::RealInterval { .. } => ScaleKind::RealInterval,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.kind().is_discrete()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: every scale has at least [`MIN_POINTS`] points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Result<f64> {
        self.points.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.len(),
        })
    }

    /// μ(t_i) = σ(t_i) − t_i.
    ///
    /// Zero everywhere on a real interval. On a discrete scale σ is undefined
    /// at the final point, so the last index is out of range.
    pub fn graininess(&self, i: usize) -> Result<f64> {
        let len = self.len();
        if !self.is_discrete() {
            return if i < len {
                Ok(0.0)
            } else {
                Err(Error::IndexOutOfRange { index: i, len })
            };
        }
        if i + 1 >= len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        Ok(match self.params {
            Params::Uniform { step, .. } => step,
            _ => self.points[i + 1] - self.points[i],
        })
    }

    /// Graininess at every index where it is defined: `len − 1` values on a
    /// discrete scale, `len` zeros on a real interval.
    pub fn graininess_all(&self) -> Vec<f64> {
        let n = if self.is_discrete() {
            self.len() - 1
        } else {
            self.len()
        };
        (0..n)
            .map(|i| self.graininess(i).expect("index in range"))
            .collect()
    }

    /// Index of the grid point equal to `t`, allowing for rounding in
    /// generated points (`|t_j − t| ≤ 1e−9·max(1, |t|)`).
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let tol = 1e-9 * t.abs().max(1.0);
        let j = self.points.partition_point(|&p| p < t);
        [j.checked_sub(1), Some(j)]
            .into_iter()
            .flatten()
            .filter(|&i| i < self.len())
            .min_by(|&i, &k| {
                (self.points[i] - t)
                    .abs()
                    .total_cmp(&(self.points[k] - t).abs())
            })
            .filter(|&i| (self.points[i] - t).abs() <= tol)
    }

    fn require_discrete(&self) -> Result<()> {
        if self.is_discrete() {
            Ok(())
        } else {
            Err(Error::UnsupportedScale(self.kind().name()))
        }
    }
}

/// Complex values of a function at the points of a [`TimeScale`].
///
/// Only a prefix of the values may be defined: derivatives lose one trailing
/// index per order on a discrete scale. Undefined entries are stored as NaN
/// and reported as `None` by [`SampledFunction::value`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<'a> {
    scale: &'a TimeScale,
    values: Vec<Complex64>,
    defined: usize,
}

const UNDEFINED: Complex64 = Complex64::new(f64::NAN, f64::NAN);

impl<'a> SampledFunction<'a> {
    /// All values defined. Panics if the length does not match the scale.
    pub fn new(scale: &'a TimeScale, values: Vec<Complex64>) -> Self {
        assert_eq!(
            values.len(),
            scale.len(),
            "one value per point of the time scale"
        );
        let defined = values.len();
        SampledFunction {
            scale,
            values,
            defined,
        }
    }

    /// Values at indices `defined..` are replaced by the undefined marker.
    pub fn with_defined(scale: &'a TimeScale, mut values: Vec<Complex64>, defined: usize) -> Self {
        assert_eq!(values.len(), scale.len());
        assert!(defined <= values.len());
        for v in &mut values[defined..] {
            *v = UNDEFINED;
        }
        SampledFunction {
            scale,
            values,
            defined,
        }
    }

    pub fn from_fn(scale: &'a TimeScale, f: impl Fn(f64) -> Complex64) -> Self {
        Self::new(scale, scale.points().iter().map(|&t| f(t)).collect())
    }

    pub fn from_real(scale: &'a TimeScale, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(scale, |t| Complex64::new(f(t), 0.0))
    }

    pub fn constant(scale: &'a TimeScale, c: Complex64) -> Self {
        Self::new(scale, vec![c; scale.len()])
    }

    pub fn scale(&self) -> &'a TimeScale {
        self.scale
    }

    /// All stored values, including undefined (NaN) trailing entries.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn defined_values(&self) -> &[Complex64] {
        &self.values[..self.defined]
    }

    /// Number of leading indices that carry a defined value.
    pub fn defined_len(&self) -> usize {
        self.defined
    }

    pub fn is_defined(&self, i: usize) -> bool {
        i < self.defined
    }

    pub fn value(&self, i: usize) -> Option<Complex64> {
        (i < self.defined).then(|| self.values[i])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest modulus over the defined entries.
    pub fn max_abs(&self) -> f64 {
        self.defined_values()
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: Complex64) -> SampledFunction<'a> {
        let values = self.values.iter().map(|&v| v * c).collect();
        Self::with_defined(self.scale, values, self.defined)
    }

    /// `a·self + b·other`, defined on the common defined prefix.
    pub fn combine(
        &self,
        a: Complex64,
        other: &SampledFunction<'_>,
        b: Complex64,
    ) -> Result<SampledFunction<'a>> {
        if !same_scale(self.scale, other.scale) {
            return Err(Error::ScaleMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| a * x + b * y)
            .collect();
        Ok(Self::with_defined(
            self.scale,
            values,
            self.defined.min(other.defined),
        ))
    }
}

pub(crate) fn same_scale(a: &TimeScale, b: &TimeScale) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// Forward difference quotient `(f[i+1] − f[i]) / μ_i`.
///
/// The result is defined on one index fewer than `f`.
pub fn delta_derivative<'a>(f: &SampledFunction<'a>) -> Result<SampledFunction<'a>> {
    let ts = f.scale();
    ts.require_discrete()?;
    let defined = f.defined_len().saturating_sub(1);
    let mut values = vec![UNDEFINED; ts.len()];
    for (i, v) in values.iter_mut().enumerate().take(defined) {
        let mu = ts.graininess(i)?;
        *v = (f.values[i + 1] - f.values[i]) / mu;
    }
    Ok(SampledFunction::with_defined(ts, values, defined))
}

/// Oriented delta integral `∫_{t_from}^{t_to} f(τ) Δτ = Σ_{i=from}^{to−1} μ_i f[i]`.
///
/// Summation runs left to right. For `from > to` the result is the negated
/// integral from `to` to `from`.
pub fn delta_integral(f: &SampledFunction<'_>, from: usize, to: usize) -> Result<Complex64> {
    let ts = f.scale();
    ts.require_discrete()?;
    let len = ts.len();
    for index in [from, to] {
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
    }
    let (lo, hi, sign) = if from <= to {
        (from, to, 1.0)
    } else {
        (to, from, -1.0)
    };
    if hi > f.defined_len() {
        return Err(Error::IndexOutOfRange {
            index: f.defined_len(),
            len,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in lo..hi {
        acc += f.values[i] * ts.graininess(i)?;
    }
    Ok(acc * sign)
}

/// Running integral `F[j] = ∫_{t_0}^{t_j} f Δτ`, accumulated left to right.
pub fn running_integral<'a>(f: &SampledFunction<'a>) -> Result<SampledFunction<'a>> {
    let ts = f.scale();
    ts.require_discrete()?;
    let defined = (f.defined_len() + 1).min(ts.len());
    let mut values = vec![UNDEFINED; ts.len()];
    let mut acc = Complex64::new(0.0, 0.0);
    values[0] = acc;
    for (i, slot) in values.iter_mut().enumerate().take(defined).skip(1) {
        acc += f.values[i - 1] * ts.graininess(i - 1)?;
        *slot = acc;
    }
    Ok(SampledFunction::with_defined(ts, values, defined))
}
