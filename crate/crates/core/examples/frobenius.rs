//! Constant term of theta1 theta2 theta3, which differs from the constant of the
//! cubic relation because theta_{2 v_i} is not theta_{v_i}^2.

use cubic_mirror::cli::expected_frobenius;
use cubic_mirror::notation::series_pretty;
use cubic_mirror::series::DegreeCutoff;
use cubic_mirror::theta::frobenius_constant_term;

fn main() -> cubic_mirror::error::Result<()> {
    for d in 3..=4 {
        let d = DegreeCutoff::new(d)?;
        let found = frobenius_constant_term(d)?;
        let expected = expected_frobenius(d);
        println!("degree < {}: {}  (expected: {})", d.get(), series_pretty(&found), found == expected);
    }
    Ok(())
}
