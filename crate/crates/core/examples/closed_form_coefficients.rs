//! Particular-solution coefficients by backward recursion and by the closed
//! form through ω, for real and complex characteristic roots.

use tsdyn::solver::{self, characteristic_roots};
use tsdyn::ProblemSpec;

fn main() -> tsdyn::Result<()> {
    let cases = [
        ProblemSpec::new(3.0, 5.0, vec![0.0, 0.0, 5.0], 0.0)?,
        ProblemSpec::new(0.5, 2.0, vec![1.0, -1.0, 0.5, 2.0], 0.0)?,
        ProblemSpec::new(-1.2, 0.35, vec![0.0, 1.0, 0.0, 0.0, 1.0], 0.0)?,
    ];
    for spec in &cases {
        let (l1, l2) = characteristic_roots(spec.alpha, spec.beta)?;
        let rec = solver::xi_backward_recursion(spec)?;
        let closed = solver::xi_closed_form(spec)?;
        let (w1, w2) = solver::omega_vector(spec)?;
        println!("α={} β={} γ={:?}", spec.alpha, spec.beta, spec.gamma);
        println!("  λ1={l1:.6}  λ2={l2:.6}");
        println!("  ω=({w1:.6}, {w2:.6})");
        for (i, (a, b)) in rec.iter().zip(&closed).enumerate() {
            println!("  ξ_{i}: recursion {a:.10}  closed form {b:.10}");
        }
    }
    Ok(())
}
