//! Brute-force cross-checks that share no code with the main engine.

use cubic_mirror::affine::LatticePoint;
use cubic_mirror::lattice::CurveClass;
use cubic_mirror::oracle::{certify_effective, direct_product_oracle, enumerate_classes, is_stable, ClassQuery};
use cubic_mirror::series::DegreeCutoff;

fn main() -> cubic_mirror::error::Result<()> {
    for (name, q) in [("lines", ClassQuery::lines()), ("triangle cubics", ClassQuery::triangle_cubics())] {
        println!("{name}: {} (stable under widening: {})", enumerate_classes(&q).len(), is_stable(&q));
    }

    let conic = CurveClass::boundary(2)? + CurveClass::boundary(3)?;
    match certify_effective(&conic) {
        Some(lines) => println!("{conic} = sum of {} lines", lines.len()),
        None => println!("{conic} has no line decomposition"),
    }

    let d = DegreeCutoff::new(3)?;
    for (a, b) in [("v1", "v1"), ("v1", "v2"), ("v2", "v3"), ("v1+v2", "v3")] {
        let cmp = direct_product_oracle(&a.parse::<LatticePoint>()?, &b.parse::<LatticePoint>()?, d)?;
        println!("theta_{a} theta_{b}: direct product agrees: {}", cmp.equal);
    }
    Ok(())
}
