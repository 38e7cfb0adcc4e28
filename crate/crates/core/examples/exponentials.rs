//! The time-scale exponential, its regressivity requirement and the ⊕ semigroup.

use tsdyn::special::{circle_plus, exp_lambda, first_nonregressive};
use tsdyn::timescale::delta_derivative;
use tsdyn::{Complex64, Error, TimeScale};

fn main() -> tsdyn::Result<()> {
    let ts = TimeScale::grid(vec![0.0, 0.5, 0.7, 1.5, 2.0, 3.0])?;
    let lambda = Complex64::new(-0.8, 0.6);

    let e = exp_lambda(&ts, lambda, 1usize)?;
    let d = delta_derivative(&e)?;
    println!("e_λ(t, t_1) with λ = {lambda}");
    for i in 0..ts.len() - 1 {
        let v = e.values()[i];
        println!("  t={:<4} e={:.6}  e^Δ - λe = {:.1e}", ts.points()[i], v, (d.values()[i] - lambda * v).norm());
    }

    // e_λ e_ν = e_{λ⊕ν}, with ⊕ depending on μ at each point
    let nu = Complex64::new(0.3, 0.0);
    let en = exp_lambda(&ts, nu, 0usize)?;
    let el = exp_lambda(&ts, lambda, 0usize)?;
    let mut product = Complex64::new(1.0, 0.0);
    let mut worst = 0.0f64;
    for i in 0..ts.len() - 1 {
        product *= 1.0 + circle_plus(lambda, nu, ts.graininess(i)?) * ts.graininess(i)?;
        worst = worst.max((product - el.values()[i + 1] * en.values()[i + 1]).norm());
    }
    println!("semigroup defect: {worst:.1e}");

    // λ = -1 on the integers makes 1 + μλ vanish
    let z = TimeScale::uniform(0.0, 1.0, 5)?;
    let bad = Complex64::new(-1.0, 0.0);
    println!("first non-regressive index for λ = -1: {:?}", first_nonregressive(&z, bad));
    match exp_lambda(&z, bad, 0usize) {
        Err(Error::NotRegressive { index }) => println!("exp_lambda refused: not regressive at index {index}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
