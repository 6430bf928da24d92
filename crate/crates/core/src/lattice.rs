//! Curve classes on the blow-up of the plane at two points on each side of a
//! triangle of lines, with the intersection pairing and the special classes
//! used by the wall functions.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ell * L - sum b[ij] * E_ij`, with `b` ordered `E11, E12, E21, E22, E31, E32`.
///
/// The derived `Ord` is lexicographic on `(ell, b11, .., b32)`, which is the
/// ordering used for every emitted formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    pub ell: i64,
    pub b: [i64; 6],
}

#[inline]
fn slot(i: usize, j: usize) -> usize {
    debug_assert!((1..=3).contains(&i) && (1..=2).contains(&j));
    2 * (i - 1) + (j - 1)
}

impl CurveClass {
    pub const ZERO: CurveClass = CurveClass { ell: 0, b: [0; 6] };

    pub const fn new(ell: i64, b: [i64; 6]) -> Self {
        CurveClass { ell, b }
    }

    pub fn from_array(a: [i64; 7]) -> Self {
        CurveClass { ell: a[0], b: [a[1], a[2], a[3], a[4], a[5], a[6]] }
    }

    pub fn to_array(&self) -> [i64; 7] {
        let b = self.b;
        [self.ell, b[0], b[1], b[2], b[3], b[4], b[5]]
    }

    /// Pullback of the class of a line in the plane.
    pub const fn line() -> Self {
        CurveClass { ell: 1, b: [0; 6] }
    }

    /// Exceptional curve `E_ij`.
    pub fn exceptional(i: usize, j: usize) -> Self {
        let mut b = [0; 6];
        b[slot(i, j)] = -1;
        CurveClass { ell: 0, b }
    }

    /// Boundary component `D_i = L - E_i1 - E_i2`.
    pub fn boundary(i: usize) -> Result<Self> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidBoundaryIndex(i));
        }
        let mut b = [0; 6];
        b[slot(i, 1)] = 1;
        b[slot(i, 2)] = 1;
        Ok(CurveClass { ell: 1, b })
    }

    /// `D_1 + D_2 + D_3`.
    pub const fn anticanonical() -> Self {
        CurveClass { ell: 3, b: [1; 6] }
    }

    pub fn b_ij(&self, i: usize, j: usize) -> i64 {
        self.b[slot(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(self, self)
    }

    pub fn degree(&self) -> i64 {
        degree(self)
    }
}

pub fn intersect(a: &CurveClass, b: &CurveClass) -> i64 {
    a.ell * b.ell - a.b.iter().zip(b.b.iter()).map(|(x, y)| x * y).sum::<i64>()
}

pub fn degree(b: &CurveClass) -> i64 {
    3 * b.ell - b.b.iter().sum::<i64>()
}

impl Add for CurveClass {
    type Output = CurveClass;
    fn add(self, o: CurveClass) -> CurveClass {
        let mut b = self.b;
        for (x, y) in b.iter_mut().zip(o.b) {
            *x += y;
        }
        CurveClass { ell: self.ell + o.ell, b }
    }
}

impl AddAssign for CurveClass {
    fn add_assign(&mut self, o: CurveClass) {
        *self = *self + o;
    }
}

impl Neg for CurveClass {
    type Output = CurveClass;
    fn neg(self) -> CurveClass {
        CurveClass { ell: -self.ell, b: self.b.map(|x| -x) }
    }
}

impl Sub for CurveClass {
    type Output = CurveClass;
    fn sub(self, o: CurveClass) -> CurveClass {
        self + (-o)
    }
}

impl Mul<CurveClass> for i64 {
    type Output = CurveClass;
    fn mul(self, c: CurveClass) -> CurveClass {
        CurveClass { ell: self * c.ell, b: c.b.map(|x| self * x) }
    }
}

impl fmt::Display for CurveClass {
    /// Symbolic form, e.g. `2L-E11-E21-E22-E31-E32`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut push = |coef: i64, name: &str| {
            if coef == 0 {
                return;
            }
            if coef < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if coef.abs() != 1 {
                out.push_str(&coef.abs().to_string());
            }
            out.push_str(name);
        };
        push(self.ell, "L");
        for i in 1..=3 {
            for j in 1..=2 {
                push(-self.b_ij(i, j), &format!("E{i}{j}"));
            }
        }
        f.write_str(&out)
    }
}

impl Serialize for CurveClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[i64; 7]>::deserialize(d).map(CurveClass::from_array)
    }
}

/// A divisor `c1 D1 + c2 D2 + c3 D3` supported on the boundary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryDivisor {
    pub c: [i64; 3],
}

impl BoundaryDivisor {
    pub const fn new(c: [i64; 3]) -> Self {
        BoundaryDivisor { c }
    }

    pub fn to_class(&self) -> CurveClass {
        (1..=3).fold(CurveClass::ZERO, |acc, i| {
            acc + self.c[i - 1] * CurveClass::boundary(i).expect("index in range")
        })
    }
}

impl Add for BoundaryDivisor {
    type Output = BoundaryDivisor;
    fn add(self, o: BoundaryDivisor) -> BoundaryDivisor {
        BoundaryDivisor { c: [self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2]] }
    }
}

/// Brute-force search region shared by the class enumerations below.
const ELL_RANGE: std::ops::RangeInclusive<i64> = 0..=5;
const B_RANGE: std::ops::RangeInclusive<i64> = -1..=2;

fn scan(pred: impl Fn(&CurveClass) -> bool) -> BTreeSet<CurveClass> {
    let mut out = BTreeSet::new();
    let bs: Vec<i64> = B_RANGE.collect();
    for ell in ELL_RANGE {
        let mut idx = [0usize; 6];
        loop {
            let c = CurveClass::new(ell, idx.map(|k| bs[k]));
            if pred(&c) {
                out.insert(c);
            }
            let mut p = 0;
            while p < 6 {
                idx[p] += 1;
                if idx[p] < bs.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == 6 {
                break;
            }
        }
    }
    out
}

/// All 27 classes with self-intersection -1 and degree 1.
pub fn lines_all() -> BTreeSet<CurveClass> {
    scan(|c| c.self_intersection() == -1 && c.degree() == 1)
}

/// The 8 lines meeting `D_i` and disjoint from the other boundary components.
pub fn lines_meeting(i: usize) -> Result<Vec<CurveClass>> {
    let d: Vec<CurveClass> = (1..=3).map(CurveClass::boundary).collect::<Result<_>>()?;
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidBoundaryIndex(i));
    }
    Ok(lines_all()
        .into_iter()
        .filter(|l| (1..=3).all(|k| intersect(l, &d[k - 1]) == i64::from(k == i)))
        .collect())
}

/// Classes with square 1 and degree 3 meeting each boundary component once:
/// pullbacks of a line under blow-downs sending the boundary to a triangle.
pub fn twisted_cubics_triangle() -> BTreeSet<CurveClass> {
    let d: Vec<CurveClass> = (1..=3).map(|i| CurveClass::boundary(i).unwrap()).collect();
    scan(|c| {
        c.self_intersection() == 1 && c.degree() == 3 && d.iter().all(|di| intersect(c, di) == 1)
    })
}

/// Generators acting on the cover plane and, by pullback, on curve classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S,
    T,
    SInv,
    TInv,
}

impl Letter {
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::S => "S",
            Letter::T => "T",
            Letter::SInv => "S^-1",
            Letter::TInv => "T^-1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "S" => Ok(Letter::S),
            "T" => Ok(Letter::T),
            "S^-1" | "S'" | "s" => Ok(Letter::SInv),
            "T^-1" | "T'" | "t" => Ok(Letter::TInv),
            other => Err(Error::Parse(format!("unknown letter {other:?}"))),
        }
    }
}

/// `S*`: `L -> L`, `E_ij -> E_{i+1,j}`.
fn act_s(c: &CurveClass) -> CurveClass {
    let b = c.b;
    CurveClass { ell: c.ell, b: [b[4], b[5], b[0], b[1], b[2], b[3]] }
}

/// `T*`: `L -> 2L-E31-E32`, `E1j -> E1j`, `E2j -> L-E3j`, `E3j -> E2j`.
///
/// This map kills `D_2` and so is not invertible; inverse letters are realised
/// through `S^-1 = S S` and `T^-1 = -S S T S S` on the cover.
fn act_t(c: &CurveClass) -> CurveClass {
    let [b11, b12, b21, b22, b31, b32] = c.b;
    let ell = c.ell;
    CurveClass { ell: 2 * ell - b21 - b22, b: [b11, b12, b31, b32, ell - b21, ell - b22] }
}

fn act_letter(l: Letter, c: &CurveClass) -> CurveClass {
    match l {
        Letter::S => act_s(c),
        Letter::T => act_t(c),
        Letter::SInv => act_s(&act_s(c)),
        Letter::TInv => act_s(&act_s(&act_t(&act_s(&act_s(c))))),
    }
}

/// Action of the word `w1 w2 .. wn` (matrix product order), i.e. `wn` acts first.
pub fn h2_action(word: &[Letter], b: &CurveClass) -> CurveClass {
    word.iter().rev().fold(*b, |acc, &l| act_letter(l, &acc))
}
