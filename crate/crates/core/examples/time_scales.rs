//! Build each kind of time scale and take delta derivatives and integrals.

use tsdyn::timescale::{delta_derivative, delta_integral, running_integral};
use tsdyn::{Complex64, SampledFunction, TimeScale};

fn main() -> tsdyn::Result<()> {
    let scales = [
        TimeScale::grid(vec![0.0, 0.4, 1.0, 1.1, 2.5])?,
        TimeScale::uniform(0.0, 0.25, 6)?,
        TimeScale::q_scale(1.5, 1.0, 6)?,
        TimeScale::real_interval(0.0, 1.0, 5)?,
    ];

    for ts in &scales {
        println!("{} with {} points", ts.kind().name(), ts.len());
        println!("  t  = {:?}", ts.points());
        println!("  mu = {:?}", ts.graininess_all());

        if ts.is_discrete() {
            // f(t) = t², whose delta derivative is t + σ(t)
            let f = SampledFunction::from_real(ts, |t| t * t);
            let d = delta_derivative(&f)?;
            let shown: Vec<f64> = d.defined_values().iter().map(|z| z.re).collect();
            println!("  (t^2)^Δ = {shown:?}");
            let whole = delta_integral(&d, 0, ts.len() - 1)?;
            let last = ts.points()[ts.len() - 1];
            println!("  ∫ (t^2)^Δ Δt over the scale = {:.12}  (t_N^2 - t_0^2 = {})", whole.re, last * last - ts.points()[0].powi(2));
        }
    }

    let ts = TimeScale::uniform(0.0, 1.0, 6)?;
    let ones = SampledFunction::constant(&ts, Complex64::new(1.0, 0.0));
    let running = running_integral(&ones)?;
    println!("running integral of 1 on 0..5: {:?}", running.values().iter().map(|z| z.re).collect::<Vec<_>>());
    Ok(())
}
