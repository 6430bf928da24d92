//! The 27 lines of the cubic surface, sorted by which boundary component they meet.
//!
//! ```text
//! cargo run --example lines
//! ```

use cubic_mirror::lattice::{intersect, lines_all, lines_meeting, twisted_cubics_triangle, CurveClass};
use cubic_mirror::notation::class_label;

fn main() -> cubic_mirror::error::Result<()> {
    let all = lines_all();
    println!("{} lines", all.len());
    for i in 1..=3 {
        let family = lines_meeting(i)?;
        println!("meeting D{i}: {}", family.len());
        for (j, l) in family.iter().enumerate() {
            println!("  L{i}{}  {l}", j + 1);
        }
    }
    let boundary: Vec<CurveClass> = (1..=3).map(CurveClass::boundary).collect::<Result<_, _>>()?;
    let on_boundary = all.iter().filter(|l| boundary.iter().all(|d| intersect(l, d) == 0)).count();
    println!("lines disjoint from the boundary: {on_boundary}");

    let cubics = twisted_cubics_triangle();
    println!("{} cubics meeting each D_i once, e.g. {}", cubics.len(), class_label(cubics.iter().next().unwrap()));
    Ok(())
}
