//! Second-order constant-coefficient dynamic equations with polynomial forcing:
//!
//! ```text
//! y^ΔΔ + 2α y^Δ + β y = Σ_{i=0}^{k} γ_i h_i(·, a),   β ≠ 0, β ≠ α², 1 − 2αμ + βμ² ≠ 0
//! ```
//!
//! A general solution is `c₁ e_{λ₁} + c₂ e_{λ₂} + Σ ξ_i h_i` with
//! `λ₁,₂ = −α ∓ √(α² − β)`. The particular coefficients ξ satisfy the
//! backward recurrence `ξ_{i+2} + 2α ξ_{i+1} + β ξ_i = γ_i` seeded by
//! `ξ_k = γ_k / β` and `ξ_{k−1} = (γ_{k−1} − 2α γ_k / β) / β`. That recurrence
//! is the normative path; [`xi_closed_form`] evaluates the explicit
//! double-sum solution with the weights ω from [`omega_vector`] and is kept
//! as an independent cross-check.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::special::{self, hk_table, resolve_anchor, Anchor};
use crate::timescale::{SampledFunction, TimeScale};

/// Tolerance guarding the excluded hypersurfaces `β = 0` and `β = α²`.
pub const DEGENERACY_EPS: f64 = 1e-9;
/// `|1 − 2αμ + βμ²|` must exceed this at every grid index.
pub const REGRESSIVITY_EPS: f64 = special::REGRESSIVITY_EPS;
/// Required agreement of `1 − 2αμ + βμ²` and `(1 + μλ₁)(1 + μλ₂)`.
pub const FACTORIZATION_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Equation data: `α`, `β`, forcing coefficients `γ_0..γ_k` and the anchor `a`.
///
/// The degree `k` is `gamma.len() − 1` as declared; trailing zeros are kept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: Vec<f64>,
    pub anchor: f64,
}

impl ProblemSpec {
    /// Checks that the data is finite and `gamma` is nonempty. The
    /// hypotheses on `α`, `β` are reported by [`check_admissibility`] instead.
    pub fn new(alpha: f64, beta: f64, gamma: Vec<f64>, anchor: f64) -> Result<Self> {
        let spec = ProblemSpec {
            alpha,
            beta,
            gamma,
            anchor,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field, value: f64| Error::InvalidProblem {
            field,
            reason: format!("{value} is not finite"),
        };
        if !self.alpha.is_finite() {
            return Err(bad("alpha", self.alpha));
        }
        if !self.beta.is_finite() {
            return Err(bad("beta", self.beta));
        }
        if !self.anchor.is_finite() {
            return Err(bad("anchor", self.anchor));
        }
        if self.gamma.is_empty() {
            return Err(Error::InvalidProblem {
                field: "gamma",
                reason: "must contain at least one coefficient".into(),
            });
        }
        if let Some(g) = self.gamma.iter().find(|g| !g.is_finite()) {
            return Err(bad("gamma", *g));
        }
        Ok(())
    }

    /// Forcing degree `k`.
    pub fn degree(&self) -> usize {
        self.gamma.len() - 1
    }

    /// The same equation with every `γ_i` multiplied by `s`.
    pub fn with_scaled_forcing(&self, s: f64) -> ProblemSpec {
        ProblemSpec {
            gamma: self.gamma.iter().map(|g| g * s).collect(),
            ..self.clone()
        }
    }

    fn beta_nonzero(&self) -> bool {
        self.beta.abs() > DEGENERACY_EPS
    }

    fn distinct_roots(&self) -> bool {
        (self.beta - self.alpha * self.alpha).abs() > DEGENERACY_EPS
    }

    fn require_beta_nonzero(&self) -> Result<()> {
        if self.beta_nonzero() {
            Ok(())
        } else {
            Err(Error::BetaZero)
        }
    }
}

/// One hypothesis of the existence result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    BetaNonzero,
    DistinctRoots,
    /// `1 − 2αμ + βμ² ≠ 0`, failing first at the given grid index.
    Regressive { index: usize },
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::BetaNonzero => f.write_str("beta != 0"),
            Hypothesis::DistinctRoots => f.write_str("beta != alpha^2"),
            Hypothesis::Regressive { index } => {
                write!(f, "1 - 2*alpha*mu + beta*mu^2 != 0 (fails at grid index {index})")
            }
        }
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Pass/fail for each hypothesis on a concrete scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Admissibility {
    pub beta_nonzero: bool,
    pub distinct_roots: bool,
    pub regressive: bool,
    pub first_nonregressive_index: Option<usize>,
    /// `min_i |1 − 2αμ_i + βμ_i²|`.
    pub regressivity_min_abs: f64,
    /// Largest relative gap between the polynomial and its factorization
    /// `(1 + μλ₁)(1 + μλ₂)`, measured against the size of the terms.
    pub factorization_discrepancy_max: f64,
    pub factorization_consistent: bool,
    pub failures: Vec<Hypothesis>,
}

impl Admissibility {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.factorization_consistent
    }
}

/// `1 − 2αμ + βμ²`.
pub fn regressivity_polynomial(alpha: f64, beta: f64, mu: f64) -> f64 {
    1.0 - 2.0 * alpha * mu + beta * mu * mu
}

/// Evaluates every hypothesis on `ts`. Never fails; failures are listed in
/// the report.
pub fn check_admissibility(spec: &ProblemSpec, ts: &TimeScale) -> Admissibility {
    let (alpha, beta) = (spec.alpha, spec.beta);
    let beta_nonzero = spec.beta_nonzero();
    let distinct_roots = spec.distinct_roots();
    let (l1, l2) = roots_unchecked(alpha, beta);

    let mut first_bad = None;
    let mut min_abs = f64::INFINITY;
    let mut fact_max: f64 = 0.0;
    for (i, mu) in ts.graininess_all().into_iter().enumerate() {
        let poly = regressivity_polynomial(alpha, beta, mu);
        if poly.abs() <= REGRESSIVITY_EPS && first_bad.is_none() {
            first_bad = Some(i);
        }
        min_abs = min_abs.min(poly.abs());
        let product = (1.0 + l1 * mu) * (1.0 + l2 * mu);
        let size = 1.0 + (2.0 * alpha * mu).abs() + (beta * mu * mu).abs();
        fact_max = fact_max.max((product - poly).norm() / size);
    }

    let mut failures = Vec::new();
    if !beta_nonzero {
        failures.push(Hypothesis::BetaNonzero);
    }
    if !distinct_roots {
        failures.push(Hypothesis::DistinctRoots);
    }
    if let Some(index) = first_bad {
        failures.push(Hypothesis::Regressive { index });
    }
    Admissibility {
        beta_nonzero,
        distinct_roots,
        regressive: first_bad.is_none(),
        first_nonregressive_index: first_bad,
        regressivity_min_abs: min_abs,
        factorization_discrepancy_max: fact_max,
        factorization_consistent: fact_max <= FACTORIZATION_TOL,
        failures,
    }
}

fn roots_unchecked(alpha: f64, beta: f64) -> (Complex64, Complex64) {
    let disc = alpha * alpha - beta;
    if disc < 0.0 {
        let r = (-disc).sqrt();
        return (Complex64::new(-alpha, -r), Complex64::new(-alpha, r));
    }
    let s = disc.sqrt();
    // the root of larger modulus is formed without cancellation; the other
    // comes from the product λ₁λ₂ = β
    let (l1, l2) = if alpha > 0.0 {
        let l1 = -alpha - s;
        (l1, beta / l1)
    } else if alpha < 0.0 {
        let l2 = -alpha + s;
        (beta / l2, l2)
    } else {
        (-s, s)
    };
    (Complex64::new(l1, 0.0), Complex64::new(l2, 0.0))
}

/// `λ₁ = −α − √(α² − β)`, `λ₂ = −α + √(α² − β)` with the principal root,
/// so `λ₁ < λ₂` for real roots and `Im λ₁ < 0` for a complex pair.
pub fn characteristic_roots(alpha: f64, beta: f64) -> Result<(Complex64, Complex64)> {
    if (beta - alpha * alpha).abs() <= DEGENERACY_EPS {
        return Err(Error::DegenerateRoots);
    }
    Ok(roots_unchecked(alpha, beta))
}

/// `(ξ_{k−1}, ξ_k)`; the first is `None` when `k = 0`.
pub fn terminal_coefficients(spec: &ProblemSpec) -> Result<(Option<Complex64>, Complex64)> {
    spec.require_beta_nonzero()?;
    let (alpha, beta) = (spec.alpha, spec.beta);
    let k = spec.degree();
    let xi_k = spec.gamma[k] / beta;
    let xi_km1 = (k >= 1).then(|| (spec.gamma[k - 1] - 2.0 * alpha / beta * spec.gamma[k]) / beta);
    Ok((xi_km1.map(|x| Complex64::new(x, 0.0)), Complex64::new(xi_k, 0.0)))
}

/// ξ by backward recursion `ξ_i = (γ_i − ξ_{i+2} − 2α ξ_{i+1}) / β`.
pub fn xi_backward_recursion(spec: &ProblemSpec) -> Result<Vec<Complex64>> {
    let (xi_km1, xi_k) = terminal_coefficients(spec)?;
    let k = spec.degree();
    let mut xi = vec![0.0; k + 1];
    xi[k] = xi_k.re;
    if let Some(x) = xi_km1 {
        xi[k - 1] = x.re;
    }
    for i in (0..k.saturating_sub(1)).rev() {
        xi[i] = (spec.gamma[i] - xi[i + 2] - 2.0 * spec.alpha * xi[i + 1]) / spec.beta;
    }
    Ok(xi.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
}

/// The double sum `Σ_{τ=0}^{i−1} Σ_{s=0}^{τ−1} γ_s λ₁^{i+s−2τ} β^{τ−1−s}`.
///
/// Exponents of `λ₁` may be negative; `λ₁ ≠ 0` because `λ₁λ₂ = β ≠ 0`.
/// Only `γ_0..γ_{i−2}` enter.
pub fn particular_part(gamma: &[f64], lambda1: Complex64, beta: f64, i: usize) -> Complex64 {
    let mut acc = ZERO;
    for tau in 0..i {
        for (s, &g) in gamma.iter().enumerate().take(tau) {
            let lam_exp = i as i32 + s as i32 - 2 * tau as i32;
            let beta_exp = (tau - 1 - s) as i32;
            acc += g * lambda1.powi(lam_exp) * beta.powi(beta_exp);
        }
    }
    acc
}

/// `(ω₁, ω₂)` from the explicit inverse of the 2×2 terminal system
///
/// ```text
/// [ω₁]          1           [ λ₂^k   −λ₂^{k−1}] [ξ_{k−1} − p_{k−1}]
/// [ω₂] = ─────────────────  [−λ₁^k    λ₁^{k−1}] [ξ_k     − p_k    ]
///        2β^{k−1}√(α² − β)
/// ```
///
/// where `p_i` is [`particular_part`]. Needs `k ≥ 2`.
pub fn omega_vector(spec: &ProblemSpec) -> Result<(Complex64, Complex64)> {
    let k = spec.degree();
    if k < 2 {
        return Err(Error::DegreeTooSmall { k });
    }
    let (xi_km1, xi_k) = terminal_coefficients(spec)?;
    let xi_km1 = xi_km1.expect("k >= 2");
    let (l1, l2) = characteristic_roots(spec.alpha, spec.beta)?;
    let beta = spec.beta;

    let rhs_km1 = xi_km1 - particular_part(&spec.gamma, l1, beta, k - 1);
    let rhs_k = xi_k - particular_part(&spec.gamma, l1, beta, k);
    let sqrt_disc = Complex64::new(spec.alpha * spec.alpha - beta, 0.0).sqrt();
    let prefactor = 1.0 / (2.0 * beta.powi(k as i32 - 1) * sqrt_disc);
    let (ki, km1) = (k as i32, k as i32 - 1);

    let omega1 = prefactor * (l2.powi(ki) * rhs_km1 - l2.powi(km1) * rhs_k);
    let omega2 = prefactor * (-l1.powi(ki) * rhs_km1 + l1.powi(km1) * rhs_k);
    Ok((omega1, omega2))
}

/// ξ from the explicit solution `ξ_i = ω₁λ₁^i + ω₂λ₂^i + p_i`, evaluated at
/// every `i = 0..k` (so the terminal pair can be compared against
/// [`terminal_coefficients`]). For `k < 2` the terminal coefficients are
/// returned directly.
pub fn xi_closed_form(spec: &ProblemSpec) -> Result<Vec<Complex64>> {
    let k = spec.degree();
    if k < 2 {
        let (xi_km1, xi_k) = terminal_coefficients(spec)?;
        return Ok(xi_km1.into_iter().chain(std::iter::once(xi_k)).collect());
    }
    let (omega1, omega2) = omega_vector(spec)?;
    let (l1, l2) = characteristic_roots(spec.alpha, spec.beta)?;
    Ok((0..=k)
        .map(|i| {
            omega1 * l1.powi(i as i32)
                + omega2 * l2.powi(i as i32)
                + particular_part(&spec.gamma, l1, spec.beta, i)
        })
        .collect())
}

/// Roots, particular coefficients, homogeneous weights and (once an initial
/// value problem is imposed) the integration constants.
///
/// Serializes as `{lambda1, lambda2, xi, omega1, omega2, c1, c2}` with complex
/// numbers as `[re, im]` and absent values as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub xi: Vec<Complex64>,
    pub omega1: Option<Complex64>,
    pub omega2: Option<Complex64>,
    pub c1: Option<Complex64>,
    pub c2: Option<Complex64>,
}

impl Solution {
    /// ξ_1, or zero when the ansatz has no `h_1` term.
    pub fn xi1(&self) -> Complex64 {
        self.xi.get(1).copied().unwrap_or(ZERO)
    }
}

/// The general solution with `c₁`, `c₂` left free.
pub fn general_solution(spec: &ProblemSpec) -> Result<Solution> {
    spec.require_beta_nonzero()?;
    let (lambda1, lambda2) = characteristic_roots(spec.alpha, spec.beta)?;
    let xi = xi_backward_recursion(spec)?;
    let (omega1, omega2) = if spec.degree() >= 2 {
        let (w1, w2) = omega_vector(spec)?;
        (Some(w1), Some(w2))
    } else {
        (None, None)
    };
    Ok(Solution {
        lambda1,
        lambda2,
        xi,
        omega1,
        omega2,
        c1: None,
        c2: None,
    })
}

/// Fixes `c₁`, `c₂` from `y(a) = y0` and `y^Δ(a) = yd0`:
///
/// ```text
/// c₁ + c₂     = y0  − ξ₀
/// c₁λ₁ + c₂λ₂ = yd0 − ξ₁
/// ```
pub fn solve_ivp(
    spec: &ProblemSpec,
    ts: &TimeScale,
    y0: Complex64,
    yd0: Complex64,
) -> Result<Solution> {
    spec.validate()?;
    let report = check_admissibility(spec, ts);
    if !report.failures.is_empty() {
        return Err(Error::Inadmissible(report.failures));
    }
    resolve_anchor(ts, Anchor::Point(spec.anchor))?;
    Ok(with_initial_values(general_solution(spec)?, y0, yd0))
}

/// Sets `c₁`, `c₂` on a general solution without consulting any time scale.
/// Determinant `λ₂ − λ₁ = 2√(α² − β)` is nonzero for distinct roots.
pub fn with_initial_values(mut sol: Solution, y0: Complex64, yd0: Complex64) -> Solution {
    let (l1, l2) = (sol.lambda1, sol.lambda2);
    let r0 = y0 - sol.xi[0];
    let r1 = yd0 - sol.xi1();
    let det = l2 - l1;
    sol.c1 = Some((r0 * l2 - r1) / det);
    sol.c2 = Some((r1 - r0 * l1) / det);
    sol
}

/// `Σ ξ_i h_i(·, a)` on `ts`.
pub fn evaluate_particular<'a>(
    xi: &[Complex64],
    anchor: f64,
    ts: &'a TimeScale,
) -> Result<SampledFunction<'a>> {
    let k = xi.len().saturating_sub(1);
    let h = hk_table(ts, anchor, k)?;
    let mut values = vec![ZERO; ts.len()];
    for (coef, hi) in xi.iter().zip(&h) {
        for (v, &hv) in values.iter_mut().zip(hi.values()) {
            *v += coef * hv;
        }
    }
    Ok(SampledFunction::new(ts, values))
}

/// `c₁ e_{λ₁} + c₂ e_{λ₂} + Σ ξ_i h_i` sampled on `ts`.
pub fn evaluate_solution<'a>(
    sol: &Solution,
    spec: &ProblemSpec,
    ts: &'a TimeScale,
) -> Result<SampledFunction<'a>> {
    let (c1, c2) = match (sol.c1, sol.c2) {
        (Some(c1), Some(c2)) => (c1, c2),
        _ => return Err(Error::MissingConstants),
    };
    let e1 = special::exp_lambda(ts, sol.lambda1, spec.anchor)?;
    let e2 = special::exp_lambda(ts, sol.lambda2, spec.anchor)?;
    let yp = evaluate_particular(&sol.xi, spec.anchor, ts)?;
    let values = e1
        .values()
        .iter()
        .zip(e2.values())
        .zip(yp.values())
        .map(|((&a, &b), &p)| c1 * a + c2 * b + p)
        .collect();
    Ok(SampledFunction::new(ts, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timescale::delta_derivative;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn spec(alpha: f64, beta: f64, gamma: &[f64]) -> ProblemSpec {
        ProblemSpec::new(alpha, beta, gamma.to_vec(), 0.0).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    /// Quadratic formula on x² + 2αx + β, written independently of the
    /// stable evaluation used by `characteristic_roots`.
    fn quadratic_oracle(alpha: f64, beta: f64) -> (Complex64, Complex64) {
        let (a, b, cc) = (1.0, 2.0 * alpha, beta);
        let disc = Complex64::new(b * b - 4.0 * a * cc, 0.0).sqrt();
        ((-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a))
    }

    #[test]
    fn roots_match_quadratic_formula() {
        for (alpha, beta, want) in [
            (0.0, -1.0, (c(-1.0), c(1.0))),
            (3.0, 5.0, (c(-5.0), c(-1.0))),
            (
                0.0,
                1.0,
                (Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)),
            ),
        ] {
            let oracle = quadratic_oracle(alpha, beta);
            assert!(close(oracle.0, want.0, 1e-15) && close(oracle.1, want.1, 1e-15));
            let (l1, l2) = characteristic_roots(alpha, beta).unwrap();
            assert!(close(l1, want.0, 1e-14), "{alpha} {beta}: {l1}");
            assert!(close(l2, want.1, 1e-14), "{alpha} {beta}: {l2}");
        }
    }

    #[test]
    fn roots_reject_repeated() {
        assert_eq!(characteristic_roots(1.0, 1.0), Err(Error::DegenerateRoots));
        assert_eq!(
            characteristic_roots(2.0, 4.0 + 1e-10),
            Err(Error::DegenerateRoots)
        );
    }

    #[test]
    fn admissibility_examples() {
        let z = TimeScale::uniform(0.0, 1.0, 10).unwrap();
        let r = check_admissibility(&spec(1.0, 1.0, &[1.0]), &z);
        assert!(!r.regressive);
        assert_eq!(r.first_nonregressive_index, Some(0));
        assert!(r.failures.contains(&Hypothesis::Regressive { index: 0 }));
        assert!(r.failures.contains(&Hypothesis::DistinctRoots));

        let r = check_admissibility(&spec(0.0, 1.0, &[1.0]), &z);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.regressivity_min_abs, 2.0);

        let r = check_admissibility(&spec(2.0, 4.0, &[1.0]), &z);
        assert_eq!(r.failures, vec![Hypothesis::DistinctRoots]);

        let r = check_admissibility(&spec(1.0, 0.0, &[1.0]), &z);
        assert_eq!(r.failures, vec![Hypothesis::BetaNonzero]);
    }

    #[test]
    fn admissibility_on_real_interval_only_checks_coefficients() {
        let ts = TimeScale::real_interval(0.0, 1.0, 5).unwrap();
        assert!(check_admissibility(&spec(1.0, 0.5, &[1.0]), &ts).passed());
    }

    #[test]
    fn terminal_coefficient_cases() {
        assert_eq!(
            terminal_coefficients(&spec(0.3, 2.0, &[7.0])).unwrap(),
            (None, c(3.5))
        );
        assert_eq!(
            terminal_coefficients(&spec(0.3, 2.0, &[1.0, 0.0, 0.0])).unwrap(),
            (Some(c(0.0)), c(0.0))
        );
        let (km1, k) = terminal_coefficients(&spec(3.0, 5.0, &[0.0, 0.0, 5.0])).unwrap();
        assert_eq!(k, c(1.0));
        assert!(close(km1.unwrap(), c(-6.0 / 5.0), 1e-15));
        assert_eq!(
            terminal_coefficients(&spec(1.0, 0.0, &[1.0])),
            Err(Error::BetaZero)
        );
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            xi_backward_recursion(&spec(0.0, 1.0, &[1.0, 0.0, 0.0])).unwrap(),
            vec![c(1.0), c(0.0), c(0.0)]
        );
        let xi = xi_backward_recursion(&spec(3.0, 5.0, &[0.0, 0.0, 5.0])).unwrap();
        for (got, want) in xi.iter().zip([31.0 / 25.0, -6.0 / 5.0, 1.0]) {
            assert!(close(*got, c(want), 1e-15));
        }
        let xi = xi_backward_recursion(&spec(0.4, -1.5, &[0.0; 6])).unwrap();
        assert!(xi.iter().all(|x| *x == c(0.0)));
    }

    #[test]
    fn particular_part_hand_expansions() {
        let gamma = [0.7, -1.3, 2.0, 0.5];
        let (alpha, beta) = (0.4, -0.9);
        let (l1, _) = characteristic_roots(alpha, beta).unwrap();
        assert_eq!(particular_part(&gamma, l1, beta, 0), c(0.0));
        assert_eq!(particular_part(&gamma, l1, beta, 1), c(0.0));
        assert!(close(particular_part(&gamma, l1, beta, 2), c(gamma[0]), 1e-15));
        let p3 = gamma[0] * (l1 + beta / l1) + gamma[1];
        assert!(close(particular_part(&gamma, l1, beta, 3), p3, 1e-14));
        // p₃ + 2αp₂ + βp₁ = γ₁
        let lhs = p3 + 2.0 * alpha * gamma[0];
        assert!(close(lhs, c(gamma[1]), 1e-14));
    }

    #[test]
    fn omega_needs_degree_two() {
        assert_eq!(
            omega_vector(&spec(0.5, 2.0, &[1.0, 2.0])),
            Err(Error::DegreeTooSmall { k: 1 })
        );
        let (w1, w2) = omega_vector(&spec(0.5, 2.0, &[0.0; 4])).unwrap();
        assert_eq!((w1, w2), (c(0.0), c(0.0)));
    }

    #[test]
    fn closed_form_matches_example() {
        let s = spec(3.0, 5.0, &[0.0, 0.0, 5.0]);
        let xi = xi_closed_form(&s).unwrap();
        for (got, want) in xi.iter().zip([31.0 / 25.0, -6.0 / 5.0, 1.0]) {
            assert!(close(*got, c(want), 1e-12), "{got} vs {want}");
        }
    }

    #[test]
    fn closed_form_low_degree_is_terminal() {
        let s = spec(0.2, 3.0, &[1.5, -0.6]);
        assert_eq!(xi_closed_form(&s).unwrap(), xi_backward_recursion(&s).unwrap());
        let s = spec(0.2, 3.0, &[1.5]);
        assert_eq!(xi_closed_form(&s).unwrap(), vec![c(0.5)]);
    }

    #[test]
    fn ivp_pure_particular() {
        let ts = TimeScale::uniform(0.0, 0.5, 12).unwrap();
        let s = spec(3.0, 5.0, &[0.0, 0.0, 5.0]);
        let g = general_solution(&s).unwrap();
        let sol = solve_ivp(&s, &ts, g.xi[0], g.xi[1]).unwrap();
        assert_eq!(sol.c1, Some(c(0.0)));
        assert_eq!(sol.c2, Some(c(0.0)));
    }

    #[test]
    fn ivp_single_exponential() {
        let ts = TimeScale::uniform(0.0, 0.5, 12).unwrap();
        let s = spec(3.0, 5.0, &[0.0]);
        let (l1, _) = characteristic_roots(3.0, 5.0).unwrap();
        let sol = solve_ivp(&s, &ts, c(1.0), l1).unwrap();
        assert!(close(sol.c1.unwrap(), c(1.0), 1e-15));
        assert!(sol.c2.unwrap().norm() < 1e-15);
        let y = evaluate_solution(&sol, &s, &ts).unwrap();
        let e = special::exp_lambda(&ts, l1, 0usize).unwrap();
        for i in 0..ts.len() {
            assert!(close(y.value(i).unwrap(), e.value(i).unwrap(), 1e-13));
        }
    }

    #[test]
    fn ivp_constant_on_real_interval() {
        let ts = TimeScale::real_interval(0.0, 10.0, 50).unwrap();
        let s = spec(0.0, 1.0, &[1.0]);
        let sol = solve_ivp(&s, &ts, c(1.0), c(0.0)).unwrap();
        assert_eq!(sol.c1.unwrap() + sol.c2.unwrap(), c(0.0));
        let y = evaluate_solution(&sol, &s, &ts).unwrap();
        assert!(y.values().iter().all(|v| v.re == 1.0 && v.im.abs() == 0.0));
    }

    #[test]
    fn ivp_rejects_inadmissible() {
        let z = TimeScale::uniform(0.0, 1.0, 10).unwrap();
        let err = solve_ivp(&spec(0.0, -1.0, &[1.0]), &z, c(0.0), c(0.0)).unwrap_err();
        assert_eq!(
            err,
            Error::Inadmissible(vec![Hypothesis::Regressive { index: 0 }])
        );
        let err = solve_ivp(&spec(0.25, 0.0, &[1.0]), &z, c(0.0), c(0.0)).unwrap_err();
        assert_eq!(err, Error::Inadmissible(vec![Hypothesis::BetaNonzero]));
    }

    #[test]
    fn ivp_anchor_must_be_on_scale() {
        let z = TimeScale::uniform(0.0, 1.0, 10).unwrap();
        let s = ProblemSpec::new(0.0, 2.0, vec![1.0], 0.5).unwrap();
        assert_eq!(
            solve_ivp(&s, &z, c(0.0), c(0.0)),
            Err(Error::AnchorNotOnScale(0.5))
        );
    }

    #[test]
    fn evaluate_requires_constants() {
        let z = TimeScale::uniform(0.0, 1.0, 10).unwrap();
        let s = spec(0.0, 2.0, &[1.0]);
        let g = general_solution(&s).unwrap();
        assert_eq!(evaluate_solution(&g, &s, &z), Err(Error::MissingConstants));
    }

    #[test]
    fn evaluate_particular_only() {
        let z = TimeScale::q_scale(1.5, 1.0, 10).unwrap();
        let s = ProblemSpec::new(0.0, 1.0, vec![1.0, 0.0, 0.0], 1.0).unwrap();
        let mut sol = general_solution(&s).unwrap();
        sol.c1 = Some(c(0.0));
        sol.c2 = Some(c(0.0));
        let y = evaluate_solution(&sol, &s, &z).unwrap();
        assert!(y.values().iter().all(|v| *v == c(1.0)));
    }

    #[test]
    fn ivp_consistency_at_interior_anchor() {
        let ts = TimeScale::grid(vec![-1.0, -0.4, 0.0, 0.3, 0.9, 1.0, 1.6]).unwrap();
        let s = ProblemSpec::new(-0.3, 1.7, vec![0.5, -1.0, 2.0, 0.25], 0.0).unwrap();
        let (y0, yd0) = (Complex64::new(0.8, 0.0), Complex64::new(-1.1, 0.0));
        let sol = solve_ivp(&s, &ts, y0, yd0).unwrap();
        let y = evaluate_solution(&sol, &s, &ts).unwrap();
        assert!(close(y.value(2).unwrap(), y0, 1e-12));
        let d = delta_derivative(&y).unwrap();
        assert!(close(d.value(2).unwrap(), yd0, 1e-10));
        assert!(y.values().iter().all(|v| v.im.abs() <= 1e-9 * v.norm().max(1.0)));
    }

    #[test]
    fn solution_json_shape() {
        let s = spec(3.0, 5.0, &[0.0, 0.0, 5.0]);
        let g = general_solution(&s).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["lambda1"], serde_json::json!([-5.0, 0.0]));
        assert_eq!(v["xi"][2], serde_json::json!([1.0, 0.0]));
        assert!(v["c1"].is_null());
        let back: Solution = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }
}
