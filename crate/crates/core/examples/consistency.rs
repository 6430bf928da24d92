//! Theta functions glue across every wall: interior rays by the wall-crossing
//! automorphism, boundary rays by the kinked change of chart.

use cubic_mirror::affine::LatticePoint;
use cubic_mirror::series::DegreeCutoff;
use cubic_mirror::theta::ThetaEngine;

fn main() -> cubic_mirror::error::Result<()> {
    let engine = ThetaEngine::canonical(DegreeCutoff::new(3)?)?;
    for q in ["v1", "v2", "v3", "2v1", "v1+v2"] {
        let q: LatticePoint = q.parse()?;
        let report = engine.verify_consistency(&q)?;
        println!("theta_{q}: {} checks, passed: {}", report.checks.len(), report.passed);
        if let Some(bad) = &report.first_counterexample {
            println!("  first failure: {bad}");
        }
    }
    Ok(())
}
