//! Delta calculus on concrete time scales, and closed-form solutions of
//!
//! ```text
//! y^ΔΔ + 2α y^Δ + β y = Σ_{i=0}^{k} γ_i h_i(·, a)
//! ```
//!
//! where `h_i(·, a)` are the time-scale polynomials anchored at `a`.
//!
//! The crate is organised bottom-up:
//!
//! - [`timescale`]: concrete time scales (explicit grids, `hℤ` segments,
//!   q-scales, real intervals), graininess, delta derivative and integral.
//! - [`special`]: the polynomials `h_k`, the exponential `e_λ` and `⊕`.
//! - [`solver`]: admissibility, characteristic roots, particular-solution
//!   coefficients (backward recursion and the double-sum closed form),
//!   the homogeneous weights and IVP assembly.
//! - [`verify`]: independent oracles (residual, forward stepping, Wronskian)
//!   and a serializable [`verify::VerificationReport`].
//! - [`cli`]: the `tsdyn` command-line front end.
//!
//! ```
//! use tsdyn::{solver, ProblemSpec, TimeScale};
//! use num_complex::Complex64;
//!
//! let ts = TimeScale::uniform(0.0, 0.5, 20).unwrap();
//! let spec = ProblemSpec::new(3.0, 5.0, vec![0.0, 0.0, 5.0], 0.0).unwrap();
//! let sol = solver::solve_ivp(&spec, &ts, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
//! let y = solver::evaluate_solution(&sol, &spec, &ts).unwrap();
//! assert!(y.value(0).unwrap().norm() < 1e-12);
//! ```

pub mod cli;
mod error;
pub mod solver;
pub mod special;
pub mod timescale;
pub mod verify;

pub use error::{Error, Result};
pub use solver::{Admissibility, Hypothesis, ProblemSpec, Solution};
pub use special::Anchor;
pub use timescale::{SampledFunction, ScaleKind, ScaleSpec, TimeScale};
pub use verify::VerificationReport;

pub use num_complex::Complex64;
