//! Theta functions as sums over broken lines, with each line's bends listed.

use cubic_mirror::affine::LatticePoint;
use cubic_mirror::notation::{laurent_pretty, series_pretty};
use cubic_mirror::series::DegreeCutoff;
use cubic_mirror::theta::{generic_point, ThetaEngine};

fn main() -> cubic_mirror::error::Result<()> {
    let engine = ThetaEngine::canonical(DegreeCutoff::new(4)?)?;
    let q: LatticePoint = "v3".parse()?;
    for cone in 0..6 {
        let z = generic_point(cone, 0);
        let theta = engine.theta_at(&q, &z)?;
        println!("cone {cone} at {z}: {}", laurent_pretty(&theta));
    }

    let z = generic_point(0, 0);
    for line in engine.broken_lines(&q, &z)? {
        let bends: Vec<String> =
            line.junctions.iter().filter(|j| j.order > 0).map(|j| format!("{} x{}", j.ray, j.order)).collect();
        println!(
            "  {:?} sheet, ends with ({}) x^{}, bends: [{}], dF: {:?}",
            line.sheet,
            series_pretty(line.final_coefficient()),
            line.final_exponent(),
            bends.join(", "),
            line.f_derivatives()
        );
    }
    Ok(())
}
