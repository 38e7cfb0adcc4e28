//! As the step shrinks, the uniform-grid solution approaches the classical ODE
//! solution. Here y'' + 2y' + 2y = 0, y(0) = 1, y'(0) = 0, with exact
//! solution e^{-t}(cos t + sin t).

use tsdyn::solver::{evaluate_solution, solve_ivp};
use tsdyn::{Complex64, ProblemSpec, TimeScale};

fn main() -> tsdyn::Result<()> {
    let spec = ProblemSpec::new(1.0, 2.0, vec![0.0], 0.0)?;
    let exact = |t: f64| (-t).exp() * (t.cos() + t.sin());
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    println!("{:>10} {:>12}", "step", "max error");
    for n in [10usize, 100, 1000, 10000] {
        let h = 2.0 / n as f64;
        let ts = TimeScale::uniform(0.0, h, n + 1)?;
        let y = evaluate_solution(&solve_ivp(&spec, &ts, one, zero)?, &spec, &ts)?;
        let err = ts.points().iter().zip(y.values()).map(|(&t, v)| (v.re - exact(t)).abs()).fold(0.0, f64::max);
        println!("{h:>10.4} {err:>12.3e}");
    }

    let ts = TimeScale::real_interval(0.0, 2.0, 11)?;
    let y = evaluate_solution(&solve_ivp(&spec, &ts, one, zero)?, &spec, &ts)?;
    let err = ts.points().iter().zip(y.values()).map(|(&t, v)| (v.re - exact(t)).abs()).fold(0.0, f64::max);
    println!("real interval: {err:.3e}");
    Ok(())
}
