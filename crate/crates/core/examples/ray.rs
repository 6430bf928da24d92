//! Wall functions on individual rays, obtained by transporting the base ray.
//!
//! ```text
//! cargo run --example ray -- 2 1 5
//! ```

use cubic_mirror::affine::{sl2_word_for, CoverVector};
use cubic_mirror::notation::laurent_pretty;
use cubic_mirror::scattering::canonical_ray;
use cubic_mirror::series::{log_ray_invariants, DegreeCutoff};
use cubic_mirror::notation::class_label;

fn main() -> cubic_mirror::error::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (m, d) = match args.as_slice() {
        [x, y, d] => (CoverVector::new(*x, *y), *d as u32),
        _ => (CoverVector::new(1, 0), 4),
    };
    let d = DegreeCutoff::new(d)?;
    let ray = canonical_ray(&m, d)?;
    println!("word for {m}: {}", sl2_word_for(&m)?);
    println!("f = {}", laurent_pretty(&ray.to_laurent()));

    println!("log invariants:");
    for ((order, class), n) in log_ray_invariants(ray.function())? {
        println!("  contact {order}  {:<16} {n}", class_label(&class));
    }
    Ok(())
}
