//! Independent checks of a computed solution.
//!
//! - [`residual`]: plug sampled values back into the equation using difference
//!   quotients (discrete scales) or exact derivative rules ([`residual_analytic`]).
//! - [`forward_step_oracle`]: simulate the equation point by point from the
//!   initial values, without roots, exponentials or ξ.
//! - [`wronskian_check`]: `y₁y₂^Δ − y₁^Δy₂` against `2√(α² − β) e_{−2α+μβ}`.
//! - [`full_report`]: all of the above, aggregated into a [`VerificationReport`].
//!
//! Comparisons between values that may grow exponentially use per-point
//! errors scaled by `max(1, |reference|)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::{
    self, check_admissibility, regressivity_polynomial, Admissibility, ProblemSpec, Solution,
};
use crate::special::{self, hk_table, resolve_anchor, Anchor, ResolvedAnchor};
use crate::timescale::{delta_derivative, same_scale, SampledFunction, TimeScale, MIN_POINTS};

/// Every discrepancy in a passing report is at most this.
pub const DISCREPANCY_TOL: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const UNDEFINED: Complex64 = Complex64::new(f64::NAN, f64::NAN);

/// `|got − want| / max(1, |want|)`.
pub fn scaled_error(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1.0)
}

/// Largest [`scaled_error`] over the common defined prefix.
pub fn max_scaled_error(got: &SampledFunction<'_>, want: &SampledFunction<'_>) -> f64 {
    let n = got.defined_len().min(want.defined_len());
    (0..n)
        .map(|i| scaled_error(got.values()[i], want.values()[i]))
        .fold(0.0, f64::max)
}

fn require_points(ts: &TimeScale) -> Result<()> {
    if ts.len() < MIN_POINTS {
        return Err(Error::ScaleTooShort { len: ts.len() });
    }
    Ok(())
}

/// The forcing `Σ_j γ_j h_j(·, a)` sampled on `ts`.
pub fn forcing<'a>(ts: &'a TimeScale, spec: &ProblemSpec) -> Result<SampledFunction<'a>> {
    solver::evaluate_particular(
        &spec
            .gamma
            .iter()
            .map(|&g| Complex64::new(g, 0.0))
            .collect::<Vec<_>>(),
        spec.anchor,
        ts,
    )
}

/// `y^ΔΔ + 2α y^Δ + β y − f` from difference quotients of sampled `y`.
///
/// Defined at indices `0..N−2` on a discrete scale.
pub fn residual<'a>(
    ts: &'a TimeScale,
    y: &SampledFunction<'_>,
    spec: &ProblemSpec,
) -> Result<SampledFunction<'a>> {
    let f = forcing(ts, spec)?;
    residual_with_forcing(ts, y, spec, &f)
}

fn residual_with_forcing<'a>(
    ts: &'a TimeScale,
    y: &SampledFunction<'_>,
    spec: &ProblemSpec,
    f: &SampledFunction<'_>,
) -> Result<SampledFunction<'a>> {
    require_points(ts)?;
    if !ts.is_discrete() {
        return Err(Error::UnsupportedScale(ts.kind().name()));
    }
    if !same_scale(ts, y.scale()) {
        return Err(Error::ScaleMismatch);
    }
    let yd = delta_derivative(y)?;
    let ydd = delta_derivative(&yd)?;
    let defined = ydd.defined_len();
    let mut values = vec![UNDEFINED; ts.len()];
    for (i, r) in values.iter_mut().enumerate().take(defined) {
        *r = ydd.values()[i] + 2.0 * spec.alpha * yd.values()[i] + spec.beta * y.values()[i]
            - f.values()[i];
    }
    Ok(SampledFunction::with_defined(ts, values, defined))
}

/// Residual of a [`Solution`] using `e_λ^Δ = λ e_λ` and `h_k^Δ = h_{k−1}`
/// instead of differencing samples. Works on every scale kind, and is the
/// only residual available on a real interval.
pub fn residual_analytic<'a>(
    sol: &Solution,
    spec: &ProblemSpec,
    ts: &'a TimeScale,
) -> Result<SampledFunction<'a>> {
    require_points(ts)?;
    let (c1, c2) = match (sol.c1, sol.c2) {
        (Some(c1), Some(c2)) => (c1, c2),
        _ => return Err(Error::MissingConstants),
    };
    let (l1, l2) = (sol.lambda1, sol.lambda2);
    let (alpha, beta) = (spec.alpha, spec.beta);
    let e1 = special::exp_lambda(ts, l1, spec.anchor)?;
    let e2 = special::exp_lambda(ts, l2, spec.anchor)?;
    let k = sol.xi.len().saturating_sub(1);
    let h = hk_table(ts, spec.anchor, k)?;
    let xi = |i: usize| sol.xi.get(i).copied().unwrap_or(ZERO);
    let gamma = |i: usize| spec.gamma.get(i).copied().unwrap_or(0.0);

    let mut values = Vec::with_capacity(ts.len());
    for j in 0..ts.len() {
        let (a, b) = (e1.values()[j], e2.values()[j]);
        let mut y = c1 * a + c2 * b;
        let mut yd = c1 * l1 * a + c2 * l2 * b;
        let mut ydd = c1 * l1 * l1 * a + c2 * l2 * l2 * b;
        let mut f = ZERO;
        for (i, hi) in h.iter().enumerate() {
            let hv = hi.values()[j];
            y += xi(i) * hv;
            yd += xi(i + 1) * hv;
            ydd += xi(i + 2) * hv;
            f += gamma(i) * hv;
        }
        values.push(ydd + 2.0 * alpha * yd + beta * y - f);
    }
    Ok(SampledFunction::new(ts, values))
}

/// Direct simulation of the equation from `y(a) = y0`, `y^Δ(a) = yd0`.
///
/// Right of the anchor, the pointwise equation at `t_i` is solved for
/// `y_{i+2}`; its leading coefficient `1/(μ_i μ_{i+1})` never vanishes, so no
/// regressivity is needed there. Left of the anchor it is solved for `y_i`,
/// whose coefficient is `(1 − 2αμ_i + βμ_i²)/μ_i²`; a vanishing coefficient
/// is reported as [`Error::NotRegressive`].
pub fn forward_step_oracle<'a>(
    ts: &'a TimeScale,
    spec: &ProblemSpec,
    y0: Complex64,
    yd0: Complex64,
) -> Result<SampledFunction<'a>> {
    let f = forcing(ts, spec)?;
    step_with_forcing(ts, spec, &f, y0, yd0)
}

fn step_with_forcing<'a>(
    ts: &'a TimeScale,
    spec: &ProblemSpec,
    f: &SampledFunction<'_>,
    y0: Complex64,
    yd0: Complex64,
) -> Result<SampledFunction<'a>> {
    require_points(ts)?;
    if !ts.is_discrete() {
        return Err(Error::UnsupportedScale(ts.kind().name()));
    }
    let a = match resolve_anchor(ts, Anchor::Point(spec.anchor))? {
        ResolvedAnchor::Index(a) => a,
        ResolvedAnchor::Point(_) => unreachable!("discrete scale"),
    };
    let (alpha, beta) = (spec.alpha, spec.beta);
    let mu = ts.graininess_all();
    let f = f.values();
    let n = ts.len();
    let mut y = vec![ZERO; n];
    y[a] = y0;
    if a + 1 < n {
        y[a + 1] = y0 + mu[a] * yd0;
        // y^Δ(t_{i+1}) = y^Δ(t_i) + μ_i (f_i − 2α y^Δ(t_i) − β y_i)
        let mut slope = yd0;
        for i in a..n - 2 {
            let next_slope = slope + mu[i] * (f[i] - 2.0 * alpha * slope - beta * y[i]);
            y[i + 2] = y[i + 1] + mu[i + 1] * next_slope;
            slope = next_slope;
        }
    }
    for i in (0..a).rev() {
        let m = mu[i];
        let lead = regressivity_polynomial(alpha, beta, m);
        if lead.abs() <= solver::REGRESSIVITY_EPS {
            return Err(Error::NotRegressive { index: i });
        }
        let slope_next = (y[i + 2] - y[i + 1]) / mu[i + 1];
        // slope_next/μ + (2α − 1/μ)(y_{i+1} − y_i)/μ + β y_i = f_i, solved for y_i
        let rhs = f[i] - slope_next / m - (2.0 * alpha - 1.0 / m) * y[i + 1] / m;
        y[i] = rhs * (m * m) / lead;
    }
    Ok(SampledFunction::new(ts, y))
}

/// Outcome of [`wronskian_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WronskianCheck {
    /// `max |W_direct − W_closed| / |W_closed|`.
    pub discrepancy_max: f64,
    /// `min |W_direct|`.
    pub min_abs: f64,
}

/// Compares `W = y₁y₂^Δ − y₁^Δy₂` for `y_j = e_{λ_j}(·, a)` with the closed
/// form `2√(α² − β) e_{−2α+μβ}(·, a)`, μ taken per point.
pub fn wronskian_check(ts: &TimeScale, spec: &ProblemSpec) -> Result<WronskianCheck> {
    let report = check_admissibility(spec, ts);
    if !report.failures.is_empty() {
        return Err(Error::Inadmissible(report.failures));
    }
    let (l1, l2) = solver::characteristic_roots(spec.alpha, spec.beta)?;
    let (alpha, beta) = (spec.alpha, spec.beta);
    let two_sqrt = 2.0 * Complex64::new(alpha * alpha - beta, 0.0).sqrt();
    let y1 = special::exp_lambda(ts, l1, spec.anchor)?;
    let y2 = special::exp_lambda(ts, l2, spec.anchor)?;

    let (direct, closed): (Vec<Complex64>, Vec<Complex64>) =
        match resolve_anchor(ts, Anchor::Point(spec.anchor))? {
            ResolvedAnchor::Point(a) => ts
                .points()
                .iter()
                .enumerate()
                .map(|(j, &t)| {
                    let (u, v) = (y1.values()[j], y2.values()[j]);
                    let direct = u * (l2 * v) - (l1 * u) * v;
                    let closed = two_sqrt * (-2.0 * alpha * (t - a)).exp();
                    (direct, closed)
                })
                .unzip(),
            ResolvedAnchor::Index(a) => {
                let d1 = delta_derivative(&y1)?;
                let d2 = delta_derivative(&y2)?;
                let mu = ts.graininess_all();
                let n = d1.defined_len();
                let mut exp_w = vec![Complex64::new(1.0, 0.0); ts.len()];
                for j in a..ts.len() - 1 {
                    let rate = -2.0 * alpha + mu[j] * beta;
                    exp_w[j + 1] = exp_w[j] * (1.0 + mu[j] * rate);
                }
                for j in (0..a).rev() {
                    let rate = -2.0 * alpha + mu[j] * beta;
                    exp_w[j] = exp_w[j + 1] / (1.0 + mu[j] * rate);
                }
                (0..n)
                    .map(|i| {
                        let direct = y1.values()[i] * d2.values()[i] - d1.values()[i] * y2.values()[i];
                        (direct, two_sqrt * exp_w[i])
                    })
                    .unzip()
            }
        };

    let mut discrepancy_max: f64 = 0.0;
    let mut min_abs = f64::INFINITY;
    for (d, c) in direct.iter().zip(&closed) {
        discrepancy_max = discrepancy_max.max((d - c).norm() / c.norm());
        min_abs = min_abs.min(d.norm());
    }
    Ok(WronskianCheck {
        discrepancy_max,
        min_abs,
    })
}

/// Aggregated verification of one (problem, scale, initial values) instance.
///
/// Fields that could not be computed (inadmissible input, or a check that
/// does not apply to the scale kind) are `None` and serialize as `null`;
/// the reason is recorded in `notes`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    /// `‖residual‖∞ / max(1, ‖y‖∞)`.
    pub residual_max: Option<f64>,
    /// Closed-form ξ against recursion ξ, per-entry scaled error.
    pub xi_discrepancy_max: Option<f64>,
    /// Forward stepping against the evaluated solution, per-point scaled error.
    pub step_oracle_discrepancy_max: Option<f64>,
    pub wronskian_discrepancy_max: Option<f64>,
    pub wronskian_min_abs: Option<f64>,
    pub admissibility: Admissibility,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn empty(admissibility: Admissibility) -> Self {
        VerificationReport {
            residual_max: None,
            xi_discrepancy_max: None,
            step_oracle_discrepancy_max: None,
            wronskian_discrepancy_max: None,
            wronskian_min_abs: None,
            admissibility,
            notes: Vec::new(),
        }
    }

    /// Admissible, every required check present, every discrepancy within
    /// `tol`, and the Wronskian bounded away from zero.
    pub fn passed_with(&self, tol: f64) -> bool {
        let within = |v: Option<f64>| v.is_some_and(|x| x.is_finite() && x <= tol);
        self.admissibility.passed()
            && within(self.residual_max)
            && within(self.xi_discrepancy_max)
            && within(self.wronskian_discrepancy_max)
            && self.step_oracle_discrepancy_max.is_none_or(|x| x <= tol)
            && self.wronskian_min_abs.is_some_and(|m| m > 0.0)
    }

    pub fn passed(&self) -> bool {
        self.passed_with(DISCREPANCY_TOL)
    }
}

/// Runs admissibility, both ξ paths, solution evaluation, residual, forward
/// stepping and the Wronskian check. Failures are recorded in the report;
/// only malformed input is an error.
pub fn full_report(
    spec: &ProblemSpec,
    ts: &TimeScale,
    y0: Complex64,
    yd0: Complex64,
) -> Result<VerificationReport> {
    spec.validate()?;
    require_points(ts)?;
    let admissibility = check_admissibility(spec, ts);
    let mut report = VerificationReport::empty(admissibility.clone());
    if !admissibility.failures.is_empty() {
        report.notes.extend(
            admissibility
                .failures
                .iter()
                .map(|h| format!("hypothesis failed: {h}")),
        );
        return Ok(report);
    }
    if !admissibility.factorization_consistent {
        report.notes.push(format!(
            "regressivity polynomial and its root factorization disagree by {:e}",
            admissibility.factorization_discrepancy_max
        ));
    }

    let recursion = solver::xi_backward_recursion(spec)?;
    let closed = solver::xi_closed_form(spec)?;
    let mut xi_disc: f64 = 0.0;
    for (i, (c, r)) in closed.iter().zip(&recursion).enumerate() {
        let e = scaled_error(*c, *r);
        if e > DISCREPANCY_TOL {
            report.notes.push(format!(
                "closed form and recursion differ at xi_{i}: {} vs {}",
                c, r
            ));
        }
        xi_disc = xi_disc.max(e);
    }
    report.xi_discrepancy_max = Some(xi_disc);
    if spec.degree() < 2 {
        report
            .notes
            .push("degree k < 2: xi taken from the terminal coefficients".into());
    }

    let outcome = (|| -> Result<()> {
        let sol = solver::solve_ivp(spec, ts, y0, yd0)?;
        let y = solver::evaluate_solution(&sol, spec, ts)?;
        let scale = y.max_abs().max(1.0);
        if ts.is_discrete() {
            let f = forcing(ts, spec)?;
            let r = residual_with_forcing(ts, &y, spec, &f)?;
            report.residual_max = Some(r.max_abs() / scale);
            let stepped = step_with_forcing(ts, spec, &f, y0, yd0)?;
            report.step_oracle_discrepancy_max = Some(max_scaled_error(&stepped, &y));
        } else {
            let r = residual_analytic(&sol, spec, ts)?;
            report.residual_max = Some(r.max_abs() / scale);
            report
                .notes
                .push("real interval: analytic residual, no stepping oracle".into());
        }
        let w = wronskian_check(ts, spec)?;
        report.wronskian_discrepancy_max = Some(w.discrepancy_max);
        report.wronskian_min_abs = Some(w.min_abs);
        Ok(())
    })();
    if let Err(e) = outcome {
        report.notes.push(format!("solution failed: {e}"));
    }
    Ok(report)
}
