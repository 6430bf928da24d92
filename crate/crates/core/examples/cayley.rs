//! Specializing the family to the torsion point where it becomes the Cayley cubic.

use cubic_mirror::cayley::{build_specialization, verify_cayley};
use cubic_mirror::series::DegreeCutoff;

fn main() -> cubic_mirror::error::Result<()> {
    let map = build_specialization();
    println!("invariant factors {:?}, free rank {}", map.invariant_factors(), map.free_rank());

    let report = verify_cayley(DegreeCutoff::new(4)?)?;
    println!("rays: {}, all trivial: {}", report.rays.len(), report.all_rays_trivial);
    for (key, coeff) in &report.coefficients {
        println!("  [{key}] {coeff}");
    }
    println!("constant matches: {}", report.constant_matches);
    println!("straight lines suffice: {}", report.straight_lines_suffice);
    println!("residual terms: {}", report.residual_terms);
    Ok(())
}
