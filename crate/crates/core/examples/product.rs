//! Multiplying theta functions: structure constants from pairs of broken lines.

use cubic_mirror::affine::LatticePoint;
use cubic_mirror::notation::series_pretty;
use cubic_mirror::series::DegreeCutoff;
use cubic_mirror::theta::ThetaEngine;

fn main() -> cubic_mirror::error::Result<()> {
    let engine = ThetaEngine::canonical(DegreeCutoff::new(4)?)?;
    for (a, b) in [("v1", "v1"), ("v1", "v2"), ("v1+v2", "v3")] {
        let p1: LatticePoint = a.parse()?;
        let p2: LatticePoint = b.parse()?;
        let table = engine.structure_constants(&p1, &p2)?;
        println!("theta_{p1} theta_{p2}");
        for (r, alpha) in &table.entries {
            println!("  {:>6}  {}", r.to_string(), series_pretty(alpha));
        }
    }
    Ok(())
}
