//! Solve y^ΔΔ + 2α y^Δ + β y = Σ γ_i h_i(t, a) with initial values on an
//! irregular grid and check the pointwise residual.

use tsdyn::solver::{evaluate_solution, solve_ivp};
use tsdyn::verify::residual;
use tsdyn::{Complex64, ProblemSpec, TimeScale};

fn main() -> tsdyn::Result<()> {
    let ts = TimeScale::grid(vec![0.0, 0.2, 0.5, 0.6, 1.0, 1.3, 1.9, 2.0, 2.4, 3.0])?;
    let spec = ProblemSpec::new(0.4, 1.3, vec![1.0, -0.5, 0.25], 0.5)?;
    let (y0, yd0) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));

    let sol = solve_ivp(&spec, &ts, y0, yd0)?;
    println!("λ1={:.6} λ2={:.6} c1={:.6} c2={:.6}", sol.lambda1, sol.lambda2, sol.c1.unwrap(), sol.c2.unwrap());

    let y = evaluate_solution(&sol, &spec, &ts)?;
    let r = residual(&ts, &y, &spec)?;
    println!("{:>5} {:>14} {:>10}", "t", "y", "|r|");
    for i in 0..ts.len() {
        let res = r.value(i).map(|v| format!("{:.1e}", v.norm())).unwrap_or_default();
        println!("{:>5} {:>14.8} {:>10}", ts.points()[i], y.values()[i].re, res);
    }
    Ok(())
}
