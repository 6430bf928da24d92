//! The cubic relation satisfied by the three primitive theta functions.

use cubic_mirror::notation::{laurent_pretty, series_pretty};
use cubic_mirror::series::DegreeCutoff;
use cubic_mirror::theta::verify_mirror_equation;

fn main() -> cubic_mirror::error::Result<()> {
    let report = verify_mirror_equation(DegreeCutoff::new(4)?)?;
    println!("theta1 theta2 theta3 =");
    for (key, coeff) in &report.found {
        println!("  [{key}] {}", series_pretty(coeff));
    }
    println!("checked at {}", report.endpoint);
    println!("residual: {}", laurent_pretty(&report.residual));
    println!("matches expected coefficients: {}", report.found == report.expected);
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
