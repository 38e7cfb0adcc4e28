//! Inputs outside the method's hypotheses are reported, never silently solved.

use tsdyn::solver::{check_admissibility, solve_ivp};
use tsdyn::{Complex64, Error, ProblemSpec, TimeScale};

fn main() -> tsdyn::Result<()> {
    let z = TimeScale::uniform(0.0, 1.0, 8)?;
    let cases = [
        ("beta = 0", ProblemSpec::new(0.25, 0.0, vec![1.0], 0.0)?),
        ("repeated root", ProblemSpec::new(1.5, 2.25, vec![1.0], 0.0)?),
        ("non-regressive", ProblemSpec::new(3.0, 5.0, vec![0.0, 0.0, 5.0], 0.0)?),
    ];
    for (label, spec) in &cases {
        let adm = check_admissibility(spec, &z);
        println!("{label}: admissible={} min|1-2αμ+βμ²|={:.3}", adm.passed(), adm.regressivity_min_abs);
        match solve_ivp(spec, &z, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)) {
            Err(Error::Inadmissible(failed)) => {
                for h in failed {
                    println!("  failed: {h}");
                }
            }
            other => println!("  unexpected: {other:?}"),
        }
    }

    // the same non-regressive equation is fine on a finer grid
    let fine = TimeScale::uniform(0.0, 0.5, 8)?;
    println!("α=3 β=5 on step 0.5: admissible={}", check_admissibility(&cases[2].1, &fine).passed());
    Ok(())
}
