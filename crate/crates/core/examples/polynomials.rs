//! Generalized monomials h_k on an integer grid, a q-scale and the real line.

use tsdyn::special::hk_table;
use tsdyn::TimeScale;

fn show(label: &str, ts: &TimeScale, anchor: f64, k_max: usize) -> tsdyn::Result<()> {
    println!("{label}, anchor {anchor}");
    for (k, h) in hk_table(ts, anchor, k_max)?.iter().enumerate() {
        let row: Vec<String> = h.values().iter().map(|z| format!("{:8.4}", z.re)).collect();
        println!("  h_{k}: {}", row.join(" "));
    }
    Ok(())
}

fn main() -> tsdyn::Result<()> {
    // on the integers h_k(t, 0) is the falling factorial t(t-1)...(t-k+1)/k!
    let z = TimeScale::uniform(-2.0, 1.0, 8)?;
    show("integers", &z, 0.0, 3)?;

    show("q = 2", &TimeScale::q_scale(2.0, 1.0, 6)?, 1.0, 3)?;

    // real interval: (t - a)^k / k!
    show("real interval", &TimeScale::real_interval(0.0, 2.0, 5)?, 0.0, 3)?;
    Ok(())
}
