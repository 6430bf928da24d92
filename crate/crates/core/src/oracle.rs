//! Deliberately naive cross-checks. Nothing here reuses the engine's class
//! enumeration or pairing; agreement with the engine is therefore evidence.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::affine::{CoverPoint, LatticePoint};
use crate::error::Result;
use crate::lattice::CurveClass;
use crate::series::{DegreeCutoff, LaurentElement};
use crate::theta::{generic_point, ThetaEngine};

fn pair(a: &[i64; 7], b: &[i64; 7]) -> i64 {
    a[0] * b[0] - (1..7).map(|i| a[i] * b[i]).sum::<i64>()
}

fn boundary_array(i: usize) -> [i64; 7] {
    let mut a = [1, 0, 0, 0, 0, 0, 0];
    a[2 * i - 1] = 1;
    a[2 * i] = 1;
    a
}

/// Constraints on `(beta^2, beta . D, beta . D_i)` plus a coefficient box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassQuery {
    pub self_intersection: Option<i64>,
    pub degree: Option<i64>,
    pub boundary: [Option<i64>; 3],
    pub ell: (i64, i64),
    pub b: (i64, i64),
}

impl Default for ClassQuery {
    fn default() -> Self {
        ClassQuery { self_intersection: None, degree: None, boundary: [None; 3], ell: (0, 5), b: (-1, 2) }
    }
}

impl ClassQuery {
    pub fn lines() -> Self {
        ClassQuery { self_intersection: Some(-1), degree: Some(1), ..Self::default() }
    }

    pub fn lines_meeting(i: usize) -> Self {
        let mut boundary = [Some(0); 3];
        boundary[i - 1] = Some(1);
        ClassQuery { boundary, ..Self::lines() }
    }

    pub fn triangle_cubics() -> Self {
        ClassQuery { self_intersection: Some(1), degree: Some(3), boundary: [Some(1); 3], ..Self::default() }
    }

    /// Every bound pushed out by one.
    pub fn widened(&self) -> Self {
        ClassQuery { ell: (self.ell.0 - 1, self.ell.1 + 1), b: (self.b.0 - 1, self.b.1 + 1), ..self.clone() }
    }

    fn accepts(&self, a: &[i64; 7]) -> bool {
        let anti = [3, 1, 1, 1, 1, 1, 1];
        self.self_intersection.is_none_or(|s| pair(a, a) == s)
            && self.degree.is_none_or(|g| pair(a, &anti) == g)
            && (1..=3).all(|i| self.boundary[i - 1].is_none_or(|t| pair(a, &boundary_array(i)) == t))
    }
}

/// Exhaustive scan of the coefficient box.
pub fn enumerate_classes(q: &ClassQuery) -> BTreeSet<CurveClass> {
    let mut out = BTreeSet::new();
    let (lo, hi) = q.b;
    for ell in q.ell.0..=q.ell.1 {
        for b11 in lo..=hi {
            for b12 in lo..=hi {
                for b21 in lo..=hi {
                    for b22 in lo..=hi {
                        for b31 in lo..=hi {
                            for b32 in lo..=hi {
                                let a = [ell, b11, b12, b21, b22, b31, b32];
                                if q.accepts(&a) {
                                    out.insert(CurveClass::from_array(a));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Whether widening the box leaves the answer unchanged.
pub fn is_stable(q: &ClassQuery) -> bool {
    enumerate_classes(q) == enumerate_classes(&q.widened())
}

/// A decomposition of `b` into lines, if one exists.
pub fn certify_effective(b: &CurveClass) -> Option<Vec<CurveClass>> {
    let lines: Vec<CurveClass> = enumerate_classes(&ClassQuery::lines()).into_iter().collect();
    let anti = [3, 1, 1, 1, 1, 1, 1];
    let target = b.to_array();
    let n = pair(&target, &anti);
    if n < 0 {
        return None;
    }
    fn go(rest: CurveClass, n: i64, from: usize, lines: &[CurveClass], acc: &mut Vec<CurveClass>) -> bool {
        if n == 0 {
            return rest.is_zero();
        }
        for (i, l) in lines.iter().enumerate().skip(from) {
            acc.push(*l);
            if go(rest - *l, n - 1, i, lines, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(*b, n, 0, &lines, &mut acc).then_some(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductComparison {
    pub p1: LatticePoint,
    pub p2: LatticePoint,
    pub endpoint: CoverPoint,
    pub lhs: LaurentElement,
    pub rhs: LaurentElement,
    pub equal: bool,
}

/// Compare `theta_p1 theta_p2` with `sum_r alpha_r theta_r` at one generic endpoint.
pub fn direct_product_oracle(p1: &LatticePoint, p2: &LatticePoint, d: DegreeCutoff) -> Result<ProductComparison> {
    direct_product_with(&ThetaEngine::canonical(d)?, p1, p2)
}

pub fn direct_product_with(engine: &ThetaEngine, p1: &LatticePoint, p2: &LatticePoint) -> Result<ProductComparison> {
    let table = engine.structure_constants(p1, p2)?;
    let mut points: Vec<LatticePoint> = vec![*p1, *p2];
    points.extend(table.entries.keys().copied());
    let (endpoint, thetas) = engine.first_generic(
        |s| generic_point(s % 6, s),
        |z| points.iter().map(|q| engine.theta_at(q, z)).collect::<Result<Vec<_>>>(),
    )?;
    let lhs = &thetas[0] * &thetas[1];
    let mut rhs = LaurentElement::zero(engine.cutoff());
    for (alpha, theta) in table.entries.values().zip(&thetas[2..]) {
        rhs = &rhs + &theta.scale_series(alpha);
    }
    let equal = lhs == rhs;
    Ok(ProductComparison { p1: *p1, p2: *p2, endpoint, lhs, rhs, equal })
}
