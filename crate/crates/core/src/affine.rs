//! The quotient `B = R^2 / ±1` and its six-ray cover fan: cone coordinates,
//! piecewise-linear functions, lifts, and SL2(Z) words for symmetry transport.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Letter;
use crate::{rat, Rational};

/// Integer vector on the cover plane: a ray direction or a monomial exponent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverVector {
    pub x: i64,
    pub y: i64,
}

impl CoverVector {
    pub const ZERO: CoverVector = CoverVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        CoverVector { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y) == 1
    }

    pub fn cross(&self, o: &CoverVector) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(&self, o: &CoverVector) -> i64 {
        self.x * o.x + self.y * o.y
    }

    pub fn sup_norm(&self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn to_point(&self) -> CoverPoint {
        CoverPoint::new(Rational::from_integer(self.x.into()), Rational::from_integer(self.y.into()))
    }

    /// Index `k` of the six-ray fan if this vector spans one of its rays.
    pub fn fan_ray_index(&self) -> Option<usize> {
        COVER_RAYS.iter().position(|r| r == self)
    }

    /// Cover cone `k` (spanned by rays `k`, `k+1`) and integer coordinates
    /// `(a, b)` with `a > 0`, `b >= 0`; `None` for the zero vector.
    pub fn cone_coords(&self) -> Option<(usize, i64, i64)> {
        if self.is_zero() {
            return None;
        }
        (0..6).find_map(|k| {
            let (r0, r1) = (COVER_RAYS[k], COVER_RAYS[(k + 1) % 6]);
            let a = self.cross(&r1);
            let b = r0.cross(self);
            (a > 0 && b >= 0).then_some((k, a, b))
        })
    }
}

impl Add for CoverVector {
    type Output = CoverVector;
    fn add(self, o: CoverVector) -> CoverVector {
        CoverVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for CoverVector {
    type Output = CoverVector;
    fn sub(self, o: CoverVector) -> CoverVector {
        CoverVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for CoverVector {
    type Output = CoverVector;
    fn neg(self) -> CoverVector {
        CoverVector::new(-self.x, -self.y)
    }
}

impl Mul<CoverVector> for i64 {
    type Output = CoverVector;
    fn mul(self, v: CoverVector) -> CoverVector {
        CoverVector::new(self * v.x, self * v.y)
    }
}

impl fmt::Display for CoverVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for CoverVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoverVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(CoverVector::new(x, y))
    }
}

/// The six rays of the cover fan, counterclockwise from `(1,0)`.
/// Ray `k` lies over the boundary component `D_{k mod 3 + 1}`.
pub const COVER_RAYS: [CoverVector; 6] = [
    CoverVector::new(1, 0),
    CoverVector::new(0, 1),
    CoverVector::new(-1, 1),
    CoverVector::new(-1, 0),
    CoverVector::new(0, -1),
    CoverVector::new(1, -1),
];

/// Boundary component index (1..=3) under cover ray `k`.
pub fn boundary_of_ray(k: usize) -> usize {
    k % 3 + 1
}

/// Exact rational point of the cover plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverPoint {
    pub x: Rational,
    pub y: Rational,
}

impl CoverPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        CoverPoint { x, y }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        CoverPoint::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `cross(self, v)` for an integer direction `v`.
    pub fn cross_vec(&self, v: &CoverVector) -> Rational {
        &self.x * Rational::from_integer(v.y.into()) - &self.y * Rational::from_integer(v.x.into())
    }

    pub fn dot_vec(&self, v: &CoverVector) -> Rational {
        &self.x * Rational::from_integer(v.x.into()) + &self.y * Rational::from_integer(v.y.into())
    }

    /// `self + t * v`.
    pub fn advance(&self, t: &Rational, v: &CoverVector) -> CoverPoint {
        CoverPoint::new(
            &self.x + t * Rational::from_integer(v.x.into()),
            &self.y + t * Rational::from_integer(v.y.into()),
        )
    }

    pub fn scale(&self, t: &Rational) -> CoverPoint {
        CoverPoint::new(&self.x * t, &self.y * t)
    }

    /// Cover cone `k` and rational coordinates with `a > 0`, `b >= 0`.
    pub fn cone_coords(&self) -> Option<(usize, Rational, Rational)> {
        if self.is_origin() {
            return None;
        }
        (0..6).find_map(|k| {
            let (r0, r1) = (COVER_RAYS[k], COVER_RAYS[(k + 1) % 6]);
            let a = self.cross_vec(&r1);
            let b = -self.cross_vec(&r0);
            (a.is_positive() && !b.is_negative()).then_some((k, a, b))
        })
    }

    /// Index of the open cover cone containing this point, if it lies on no fan ray.
    pub fn open_cone(&self) -> Option<usize> {
        match self.cone_coords() {
            Some((k, _, b)) if b.is_positive() => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for CoverPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for CoverPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoverPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse = |s: &str| Rational::from_str(s).map_err(serde::de::Error::custom);
        Ok(CoverPoint::new(parse(&x)?, parse(&y)?))
    }
}

/// Point of `B` in cone coordinates `a v_i + b v_{i+1}`, `i` in `1..=3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConePoint {
    cone: u8,
    a: Rational,
    b: Rational,
}

impl ConePoint {
    pub fn new(cone: u8, a: Rational, b: Rational) -> Result<Self> {
        if !(1..=3).contains(&cone) {
            return Err(Error::InvalidBoundaryIndex(cone as usize));
        }
        if a.is_negative() || b.is_negative() {
            return Err(Error::Parse("cone coordinates must be nonnegative".into()));
        }
        Ok(if a.is_zero() && b.is_zero() {
            ConePoint { cone: 1, a, b }
        } else if a.is_zero() {
            ConePoint { cone: cone % 3 + 1, a: b, b: a }
        } else {
            ConePoint { cone, a, b }
        })
    }

    pub fn cone(&self) -> u8 {
        self.cone
    }

    pub fn coords(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn is_origin(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Which of the two preimages on the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sheet {
    First,
    Second,
}

impl Sheet {
    pub fn sign(self) -> i64 {
        match self {
            Sheet::First => 1,
            Sheet::Second => -1,
        }
    }
}

pub fn lift(p: &ConePoint, sheet: Sheet) -> Result<CoverPoint> {
    if p.is_origin() {
        return Err(Error::OriginNotLiftable);
    }
    let i = p.cone as usize - 1;
    let (r0, r1) = (COVER_RAYS[i].to_point(), COVER_RAYS[i + 1].to_point());
    let s = rat(sheet.sign(), 1);
    Ok(CoverPoint::new(
        (&p.a * &r0.x + &p.b * &r1.x) * &s,
        (&p.a * &r0.y + &p.b * &r1.y) * &s,
    ))
}

/// Projection of a cover point to `B`.
pub fn project(p: &CoverPoint) -> ConePoint {
    match p.cone_coords() {
        None => ConePoint::new(1, Rational::zero(), Rational::zero()).unwrap(),
        Some((k, a, b)) => ConePoint::new((k % 3) as u8 + 1, a, b).unwrap(),
    }
}

/// Integral point of `B`, stored as its cover representative in the
/// half-open upper half-plane (`y > 0`, or `y = 0` and `x >= 0`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(CoverVector);

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint(CoverVector::ZERO);

    pub fn from_cover(v: CoverVector) -> Self {
        if v.y > 0 || (v.y == 0 && v.x >= 0) {
            LatticePoint(v)
        } else {
            LatticePoint(-v)
        }
    }

    /// The primitive boundary point `v_i`.
    pub fn v(i: usize) -> Result<Self> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidBoundaryIndex(i));
        }
        Ok(LatticePoint(COVER_RAYS[i - 1]))
    }

    pub fn lift(&self, sheet: Sheet) -> CoverVector {
        sheet.sign() * self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.is_zero()
    }

    /// Cone index (1..=3) and integer coordinates in `B`.
    pub fn cone_coords(&self) -> Option<(usize, i64, i64)> {
        self.0.cone_coords().map(|(k, a, b)| (k % 3 + 1, a, b))
    }

    /// Points of `B` with `-F <= n`, in a deterministic order.
    pub fn up_to_weight(n: i64) -> Vec<LatticePoint> {
        let mut out = vec![LatticePoint::ORIGIN];
        for w in 1..=n {
            for k in 0..3 {
                for a in 1..=w {
                    let b = w - a;
                    out.push(LatticePoint(a * COVER_RAYS[k] + b * COVER_RAYS[k + 1]));
                }
            }
        }
        out
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((i, a, b)) = self.cone_coords() else {
            return f.write_str("0");
        };
        let term = |c: i64, idx: usize| {
            if c == 1 {
                format!("v{idx}")
            } else {
                format!("{c}v{idx}")
            }
        };
        if b == 0 {
            f.write_str(&term(a, i))
        } else {
            write!(f, "{}+{}", term(a, i), term(b, i % 3 + 1))
        }
    }
}

impl FromStr for LatticePoint {
    type Err = Error;

    /// Accepts `0`, `v1`, `2v1`, `v1+v2`, `3v3+2v1`, ...; terms must lie in one cone.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(LatticePoint::ORIGIN);
        }
        let mut coef = [0i64; 3];
        for term in s.split('+') {
            let pos = term.find('v').ok_or_else(|| Error::Parse(format!("bad point {s:?}")))?;
            let (c, idx) = term.split_at(pos);
            let c: i64 = if c.is_empty() {
                1
            } else {
                c.trim_end_matches('*').parse().map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?
            };
            let i: usize = idx[1..].parse().map_err(|_| Error::Parse(format!("bad index in {s:?}")))?;
            if !(1..=3).contains(&i) || c < 0 {
                return Err(Error::Parse(format!("bad term {term:?}")));
            }
            coef[i - 1] += c;
        }
        let support: Vec<usize> = (0..3).filter(|&i| coef[i] != 0).collect();
        let v = match support.as_slice() {
            [] => CoverVector::ZERO,
            [i] => coef[*i] * COVER_RAYS[*i],
            [0, 1] => coef[0] * COVER_RAYS[0] + coef[1] * COVER_RAYS[1],
            [1, 2] => coef[1] * COVER_RAYS[1] + coef[2] * COVER_RAYS[2],
            [0, 2] => coef[2] * COVER_RAYS[2] + coef[0] * COVER_RAYS[3],
            _ => return Err(Error::Parse(format!("{s:?} is not in a single cone"))),
        };
        Ok(LatticePoint::from_cover(v))
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Piecewise-linear function on the cover fan, given by its values on the six rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PLFunction {
    pub values: [i64; 6],
}

impl PLFunction {
    /// `<D_i, .>`: 1 on `±v_i`, 0 on the other rays.
    pub fn boundary(i: usize) -> Result<Self> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidBoundaryIndex(i));
        }
        let mut values = [0; 6];
        values[i - 1] = 1;
        values[i + 2] = 1;
        Ok(PLFunction { values })
    }

    /// `<c1 D1 + c2 D2 + c3 D3, .>`.
    pub fn of_divisor(c: [i64; 3]) -> Self {
        PLFunction { values: std::array::from_fn(|k| c[k % 3]) }
    }

    /// `F = <K_Y, .> = -<D1 + D2 + D3, .>`.
    pub fn canonical() -> Self {
        PLFunction { values: [-1; 6] }
    }

    /// The linear function agreeing with `self` on cover cone `k`, applied to `v`.
    pub fn linear_on_cone(&self, k: usize, v: &CoverVector) -> i64 {
        let (r0, r1) = (COVER_RAYS[k], COVER_RAYS[(k + 1) % 6]);
        v.cross(&r1) * self.values[k] + r0.cross(v) * self.values[(k + 1) % 6]
    }

    pub fn eval(&self, v: &CoverVector) -> i64 {
        match v.cone_coords() {
            None => 0,
            Some((k, a, b)) => a * self.values[k] + b * self.values[(k + 1) % 6],
        }
    }

    pub fn eval_point(&self, p: &CoverPoint) -> Rational {
        match p.cone_coords() {
            None => Rational::zero(),
            Some((k, a, b)) => {
                a * rat(self.values[k], 1) + b * rat(self.values[(k + 1) % 6], 1)
            }
        }
    }
}

pub fn pl_value(f: &PLFunction, p: &CoverPoint) -> Rational {
    f.eval_point(p)
}

/// `-F(m)`: the lowest degree a wall term on the ray through `m` can have.
pub fn min_wall_degree(m: &CoverVector) -> Result<i64> {
    if !m.is_primitive() {
        return Err(Error::NonPrimitive(*m));
    }
    Ok(-PLFunction::canonical().eval(m))
}

pub type Matrix2 = [[i64; 2]; 2];

pub const IDENTITY: Matrix2 = [[1, 0], [0, 1]];

pub fn letter_matrix(l: Letter) -> Matrix2 {
    match l {
        Letter::S => [[0, -1], [1, 1]],
        Letter::T => [[1, 1], [0, 1]],
        Letter::SInv => [[1, 1], [-1, 0]],
        Letter::TInv => [[1, -1], [0, 1]],
    }
}

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

pub fn mat_apply(m: &Matrix2, v: &CoverVector) -> CoverVector {
    CoverVector::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
}

/// Word in the generators together with its evaluated matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SL2Word {
    letters: Vec<Letter>,
    matrix: Matrix2,
}

impl SL2Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        let matrix = letters.iter().fold(IDENTITY, |acc, &l| mat_mul(&acc, &letter_matrix(l)));
        SL2Word { letters, matrix }
    }

    pub fn identity() -> Self {
        SL2Word::new(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    pub fn apply(&self, v: &CoverVector) -> CoverVector {
        mat_apply(&self.matrix, v)
    }

    pub fn concat(&self, other: &SL2Word) -> SL2Word {
        SL2Word::new(self.letters.iter().chain(other.letters.iter()).copied().collect())
    }
}

impl fmt::Display for SL2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<&str> = self.letters.iter().map(|l| l.symbol()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for SL2Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(SL2Word::identity());
        }
        s.split('.').map(Letter::parse).collect::<Result<Vec<_>>>().map(SL2Word::new)
    }
}

impl Serialize for SL2Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = if self.letters.is_empty() { String::new() } else { self.to_string() };
        text.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SL2Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical positive word `W` with `W (1,0) = m`.
///
/// Rotate `m` into the first quadrant with `S` (which has order 6 on the cover),
/// then run the subtractive Euclidean algorithm on the cone coordinates: a step
/// `(a,b) -> (a-b,b)` is the letter `T`, a step `(a,b) -> (a,b-a)` is `T.S`.
pub fn sl2_word_for(m: &CoverVector) -> Result<SL2Word> {
    if !m.is_primitive() {
        return Err(Error::NonPrimitive(*m));
    }
    let (k, mut a, mut b) = m.cone_coords().expect("primitive vectors are nonzero");
    let mut letters = vec![Letter::S; k];
    while (a, b) != (1, 0) {
        if a > b {
            letters.push(Letter::T);
            a -= b;
        } else {
            letters.push(Letter::T);
            letters.push(Letter::S);
            b -= a;
        }
    }
    Ok(SL2Word::new(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_identity() {
        for i in 0..6 {
            assert_eq!(COVER_RAYS[(i + 5) % 6] + COVER_RAYS[(i + 1) % 6], COVER_RAYS[i]);
        }
    }

    #[test]
    fn lifts() {
        let p = |c, a, b| ConePoint::new(c, rat(a, 1), rat(b, 1)).unwrap();
        assert_eq!(lift(&p(1, 1, 0), Sheet::First).unwrap(), CoverPoint::from_ratios((1, 1), (0, 1)));
        assert_eq!(lift(&p(1, 1, 1), Sheet::Second).unwrap(), CoverPoint::from_ratios((-1, 1), (-1, 1)));
        assert_eq!(lift(&p(2, 1, 1), Sheet::First).unwrap(), CoverPoint::from_ratios((-1, 1), (2, 1)));
        assert!(matches!(lift(&p(2, 0, 0), Sheet::First), Err(Error::OriginNotLiftable)));
        assert_eq!(p(1, 0, 2), p(2, 2, 0));
        for s in [Sheet::First, Sheet::Second] {
            let q = p(3, 2, 5);
            assert_eq!(project(&lift(&q, s).unwrap()), q);
        }
    }

    #[test]
    fn pl_examples() {
        let d1 = PLFunction::boundary(1).unwrap();
        assert_eq!(d1.eval(&COVER_RAYS[0]), 1);
        let f = PLFunction::canonical();
        for r in COVER_RAYS {
            assert_eq!(f.eval(&r), -1);
        }
        assert_eq!(f.eval(&CoverVector::new(1, 1)), -2);
        for (m, expected) in [((1, 0), 1), ((1, 1), 2), ((2, 1), 3)] {
            assert_eq!(min_wall_degree(&CoverVector::new(m.0, m.1)).unwrap(), expected);
        }
        assert!(min_wall_degree(&CoverVector::new(2, 2)).is_err());
    }

    #[test]
    fn pl_continuity_on_rays() {
        for i in 1..=3 {
            let f = PLFunction::boundary(i).unwrap();
            for k in 0..6 {
                let r = COVER_RAYS[k];
                assert_eq!(f.linear_on_cone(k, &r), f.linear_on_cone((k + 5) % 6, &r));
            }
        }
    }

    #[test]
    fn words() {
        assert_eq!(sl2_word_for(&CoverVector::new(1, 0)).unwrap().to_string(), "id");
        assert_eq!(sl2_word_for(&CoverVector::new(0, 1)).unwrap().to_string(), "S");
        assert_eq!(sl2_word_for(&CoverVector::new(1, 1)).unwrap().to_string(), "T.S");
        for x in -10..=10 {
            for y in -10..=10 {
                let m = CoverVector::new(x, y);
                if m.is_primitive() {
                    let w = sl2_word_for(&m).unwrap();
                    assert_eq!(w.apply(&CoverVector::new(1, 0)), m);
                    let det = w.matrix()[0][0] * w.matrix()[1][1] - w.matrix()[0][1] * w.matrix()[1][0];
                    assert_eq!(det, 1);
                }
            }
        }
        let w: SL2Word = "T.S".parse().unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "\"T.S\"");
        let six = SL2Word::new(vec![Letter::S; 6]);
        assert_eq!(*six.matrix(), IDENTITY);
        let inv = SL2Word::new(vec![Letter::T, Letter::TInv, Letter::S, Letter::SInv]);
        assert_eq!(*inv.matrix(), IDENTITY);
    }

    #[test]
    fn lattice_points() {
        for s in ["0", "v1", "2v1", "v1+v2", "v2+v3", "v3+v1", "2v3+3v1"] {
            let p: LatticePoint = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        let p: LatticePoint = "v3+v1".parse().unwrap();
        assert_eq!(p.lift(Sheet::First), CoverVector::new(-2, 1));
        assert!("v1+v2+v3".parse::<LatticePoint>().is_err());
        assert_eq!(LatticePoint::up_to_weight(3).len(), 1 + 3 * (1 + 2 + 3));
    }

    #[test]
    fn cover_point_json() {
        let p = CoverPoint::from_ratios((1, 7), (-2, 11));
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"["1/7","-2/11"]"#);
        assert_eq!(serde_json::from_str::<CoverPoint>(&j).unwrap(), p);
    }
}
