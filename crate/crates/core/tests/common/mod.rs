//! Seeded random problem corpus shared by the integration suites.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tsdyn::solver::{self, check_admissibility};
use tsdyn::{ProblemSpec, TimeScale};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gamma(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    (0..=k).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// α, β uniform in [−2, 2], rejecting |β| < 0.1 and |β − α²| < 0.1.
pub fn coefficients(rng: &mut impl Rng) -> (f64, f64) {
    loop {
        let alpha: f64 = rng.gen_range(-2.0..=2.0);
        let beta: f64 = rng.gen_range(-2.0..=2.0);
        if beta.abs() >= 0.1 && (beta - alpha * alpha).abs() >= 0.1 {
            return (alpha, beta);
        }
    }
}

/// Same distribution conditioned on a complex pair (α² < β).
pub fn complex_coefficients(rng: &mut impl Rng) -> (f64, f64) {
    loop {
        let (alpha, beta) = coefficients(rng);
        if alpha * alpha < beta {
            return (alpha, beta);
        }
    }
}

pub fn spec_with(rng: &mut impl Rng, (alpha, beta): (f64, f64), k: usize, anchor: f64) -> ProblemSpec {
    ProblemSpec::new(alpha, beta, gamma(rng, k), anchor).unwrap()
}

pub fn random_spec(rng: &mut impl Rng, k_lo: usize, k_hi: usize, anchor: f64) -> ProblemSpec {
    let coef = coefficients(rng);
    let k = rng.gen_range(k_lo..=k_hi);
    spec_with(rng, coef, k, anchor)
}

pub fn initial_values(rng: &mut impl Rng) -> (Complex64, Complex64) {
    (
        Complex64::new(rng.gen_range(-1.0..=1.0), 0.0),
        Complex64::new(rng.gen_range(-1.0..=1.0), 0.0),
    )
}

pub fn max_root_modulus(spec: &ProblemSpec) -> f64 {
    let (l1, l2) = solver::characteristic_roots(spec.alpha, spec.beta).unwrap();
    l1.norm().max(l2.norm())
}

/// A grid of at most 60 points on which every |λ μ| ≤ 3. Cycles through an
/// irregular grid, a uniform segment and a q-scale. Callers anchor at the
/// first point.
pub fn bounded_grid(rng: &mut impl Rng, spec: &ProblemSpec, variant: usize) -> TimeScale {
    let mu_max = 3.0 / max_root_modulus(spec);
    let count = rng.gen_range(20..=60);
    match variant % 3 {
        0 => {
            let mut t = 0.0;
            let mut points = vec![t];
            for _ in 1..count {
                t += mu_max * rng.gen_range(0.05..=1.0);
                points.push(t);
            }
            TimeScale::grid(points).unwrap()
        }
        1 => TimeScale::uniform(0.0, mu_max * rng.gen_range(0.1..=1.0), count).unwrap(),
        _ => {
            let q: f64 = rng.gen_range(1.02..=1.1);
            let count = count.min(40);
            // largest graininess is first·(q − 1)·q^(count − 2)
            let first = mu_max / ((q - 1.0) * q.powi(count as i32 - 2));
            TimeScale::q_scale(q, first, count).unwrap()
        }
    }
}

pub fn admissible(spec: &ProblemSpec, ts: &TimeScale) -> bool {
    check_admissibility(spec, ts).passed()
}

/// Error scaled by the size of the operands rather than the result, for
/// identities whose two sides can cancel to near zero.
pub fn rel_to_terms(got: Complex64, want: Complex64, terms: f64) -> f64 {
    (got - want).norm() / terms.max(want.norm()).max(f64::MIN_POSITIVE)
}
