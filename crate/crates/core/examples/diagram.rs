//! The truncated scattering diagram: every ray carrying a nontrivial wall function.

use cubic_mirror::notation::laurent_pretty;
use cubic_mirror::scattering::truncated_diagram;
use cubic_mirror::series::DegreeCutoff;

fn main() -> cubic_mirror::error::Result<()> {
    for d in 1..=5 {
        let diagram = truncated_diagram(DegreeCutoff::new(d)?)?;
        let live = diagram.rays().iter().filter(|r| !r.is_trivial()).count();
        println!("degree < {d}: {live} nontrivial rays");
    }
    let diagram = truncated_diagram(DegreeCutoff::new(3)?)?;
    for ray in diagram.rays().iter().filter(|r| !r.is_trivial()) {
        println!("{:>8}  {}", ray.direction().to_string(), laurent_pretty(&ray.to_laurent()));
    }
    Ok(())
}
