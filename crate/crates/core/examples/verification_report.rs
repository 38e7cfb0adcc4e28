//! Full verification report for a problem on a q-scale, printed as JSON.

use tsdyn::verify::full_report;
use tsdyn::{Complex64, ProblemSpec, TimeScale};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ts = TimeScale::q_scale(1.2, 1.0, 20)?;
    let spec = ProblemSpec::new(0.3, -0.4, vec![2.0, 0.0, 1.0], 1.0)?;
    let report = full_report(&spec, &ts, Complex64::new(0.5, 0.0), Complex64::new(-1.0, 0.0))?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    println!("passed: {}", report.passed());
    Ok(())
}
