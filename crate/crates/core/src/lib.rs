//! Exact scattering diagram, broken lines and theta functions for the mirror
//! family of a cubic surface with a triangle of lines as boundary.
//!
//! The pieces, bottom up:
//!
//! * [`lattice`]: curve classes, the intersection form, the 27 lines.
//! * [`affine`]: the cover fan, piecewise-linear functions, SL2(Z) words.
//! * [`series`]: truncated coefficient rings and Laurent polynomials on the cover.
//! * [`scattering`]: canonical wall functions and truncated diagrams.
//! * [`theta`]: broken lines, theta functions, structure constants, the mirror equation.
//! * [`cayley`]: specialization to the torsion component.
//! * [`oracle`]: brute-force cross-checks.
//! * [`cli`]: the command-line front end.

pub mod affine;
pub mod cayley;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod notation;
pub mod oracle;
pub mod scattering;
pub mod series;
pub mod theta;

pub use error::{Error, Result};

/// Exact rational numbers used for every coefficient and coordinate.
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Serde helpers for rationals written as `"p/q"` strings.
pub(crate) mod ratser {
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        Rational::from_str(&s).map_err(serde::de::Error::custom)
    }
}
