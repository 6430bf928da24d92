//! Coefficient rings `Q[P]/I_d` truncated by degree, Laurent polynomials over
//! them on the cover, univariate wall functions, and the wall-crossing rewrite.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::CoverVector;
use crate::error::{Error, Result};
use crate::lattice::CurveClass;
use crate::scattering::Ray;
use crate::{rat, Rational};

/// The ideal `I_d` spanned by classes of degree `>= d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct DegreeCutoff(u32);

impl DegreeCutoff {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidCutoff { got: d, min: 1 });
        }
        Ok(DegreeCutoff(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn admits(self, c: &CurveClass) -> bool {
        c.degree() < i64::from(self.0)
    }
}

impl TryFrom<u32> for DegreeCutoff {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        DegreeCutoff::new(d)
    }
}

impl From<DegreeCutoff> for u32 {
    fn from(d: DegreeCutoff) -> u32 {
        d.0
    }
}

impl fmt::Display for DegreeCutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_cutoffs(a: DegreeCutoff, b: DegreeCutoff) -> Result<()> {
    if a != b {
        return Err(Error::CutoffMismatch { left: a.0, right: b.0 });
    }
    Ok(())
}

/// Element of `Q[P]/I_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    cutoff: DegreeCutoff,
    terms: BTreeMap<CurveClass, Rational>,
}

impl TruncatedSeries {
    pub fn zero(cutoff: DegreeCutoff) -> Self {
        TruncatedSeries { cutoff, terms: BTreeMap::new() }
    }

    pub fn one(cutoff: DegreeCutoff) -> Self {
        Self::monomial(cutoff, CurveClass::ZERO, Rational::one())
    }

    /// `coeff * z^class`, or zero if the class is cut off.
    pub fn monomial(cutoff: DegreeCutoff, class: CurveClass, coeff: Rational) -> Self {
        let mut s = Self::zero(cutoff);
        s.add_term(class, coeff);
        s
    }

    pub fn from_terms(cutoff: DegreeCutoff, terms: impl IntoIterator<Item = (CurveClass, Rational)>) -> Self {
        let mut s = Self::zero(cutoff);
        for (c, r) in terms {
            s.add_term(c, r);
        }
        s
    }

    /// Sum of `z^c` over the given classes.
    pub fn sum_of(cutoff: DegreeCutoff, classes: impl IntoIterator<Item = CurveClass>) -> Self {
        Self::from_terms(cutoff, classes.into_iter().map(|c| (c, Rational::one())))
    }

    pub fn cutoff(&self) -> DegreeCutoff {
        self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<CurveClass, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurveClass, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&CurveClass::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, c: &CurveClass) -> Rational {
        self.terms.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&CurveClass::ZERO)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|r| r.is_integer())
    }

    /// Common degree of all terms, if the series is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|c| c.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, class: CurveClass, coeff: Rational) {
        if coeff.is_zero() || !self.cutoff.admits(&class) {
            return;
        }
        match self.terms.entry(class) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        check_cutoffs(self.cutoff, o.cutoff)?;
        let mut out = self.clone();
        for (c, r) in &o.terms {
            out.add_term(*c, r.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        check_cutoffs(self.cutoff, o.cutoff)?;
        let mut out = Self::zero(self.cutoff);
        for (c1, r1) in &self.terms {
            for (c2, r2) in &o.terms {
                let c = *c1 + *c2;
                if self.cutoff.admits(&c) {
                    out.add_term(c, r1 * r2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.cutoff, self.terms.iter().map(|(c, x)| (*c, x * r)))
    }

    /// Multiply by the monomial `z^class`.
    pub fn shift(&self, class: &CurveClass) -> Self {
        Self::from_terms(self.cutoff, self.terms.iter().map(|(c, x)| (*c + *class, x.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.cutoff), |acc, _| &acc * self)
    }

    /// Apply a class map termwise, landing in `cutoff`.
    pub fn map_classes(&self, cutoff: DegreeCutoff, f: impl Fn(&CurveClass) -> CurveClass) -> Self {
        Self::from_terms(cutoff, self.terms.iter().map(|(c, x)| (f(c), x.clone())))
    }

    /// Re-truncate at another cutoff; raising the cutoff adds no information.
    pub fn with_cutoff(&self, cutoff: DegreeCutoff) -> Self {
        self.map_classes(cutoff, |c| *c)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(o).expect("series cutoffs must agree")
    }
}

impl AddAssign<&TruncatedSeries> for TruncatedSeries {
    fn add_assign(&mut self, o: &TruncatedSeries) {
        assert_eq!(self.cutoff, o.cutoff, "series cutoffs must agree");
        for (c, r) in &o.terms {
            self.add_term(*c, r.clone());
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        self + &(-o)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(o).expect("series cutoffs must agree")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::series_plain(self))
    }
}

#[derive(Serialize, Deserialize)]
struct ClassTerm {
    class: CurveClass,
    #[serde(with = "crate::ratser")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    cutoff: DegreeCutoff,
    terms: Vec<ClassTerm>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(c, r)| ClassTerm { class: *c, coeff: r.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        Ok(TruncatedSeries::from_terms(j.cutoff, j.terms.into_iter().map(|t| (t.class, t.coeff))))
    }
}

/// Laurent polynomial in the cover variables `x^m` over `Q[P]/I_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentElement {
    cutoff: DegreeCutoff,
    terms: BTreeMap<CoverVector, TruncatedSeries>,
}

impl LaurentElement {
    pub fn zero(cutoff: DegreeCutoff) -> Self {
        LaurentElement { cutoff, terms: BTreeMap::new() }
    }

    pub fn one(cutoff: DegreeCutoff) -> Self {
        Self::monomial(cutoff, CoverVector::ZERO)
    }

    /// The bare monomial `x^m`.
    pub fn monomial(cutoff: DegreeCutoff, m: CoverVector) -> Self {
        Self::from_series(m, TruncatedSeries::one(cutoff))
    }

    /// `s * x^m`.
    pub fn from_series(m: CoverVector, s: TruncatedSeries) -> Self {
        let mut e = Self::zero(s.cutoff());
        e.add_series(m, &s);
        e
    }

    pub fn from_terms(
        cutoff: DegreeCutoff,
        terms: impl IntoIterator<Item = (CoverVector, CurveClass, Rational)>,
    ) -> Self {
        let mut e = Self::zero(cutoff);
        for (m, c, r) in terms {
            e.add_series(m, &TruncatedSeries::monomial(cutoff, c, r));
        }
        e
    }

    pub fn cutoff(&self) -> DegreeCutoff {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&CoverVector::ZERO).is_some_and(|s| s.is_one())
    }

    /// Coefficients grouped by exponent.
    pub fn by_exponent(&self) -> &BTreeMap<CoverVector, TruncatedSeries> {
        &self.terms
    }

    /// Flat `(exponent, class, coefficient)` view.
    pub fn iter(&self) -> impl Iterator<Item = (CoverVector, CurveClass, &Rational)> {
        self.terms.iter().flat_map(|(m, s)| s.iter().map(move |(c, r)| (*m, *c, r)))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|s| s.len()).sum()
    }

    pub fn coefficient(&self, m: &CoverVector) -> TruncatedSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.cutoff))
    }

    pub fn add_series(&mut self, m: CoverVector, s: &TruncatedSeries) {
        assert_eq!(self.cutoff, s.cutoff(), "series cutoffs must agree");
        if s.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(|| TruncatedSeries::zero(s.cutoff()));
        *entry += s;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        check_cutoffs(self.cutoff, o.cutoff)?;
        let mut out = self.clone();
        for (m, s) in &o.terms {
            out.add_series(*m, s);
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        check_cutoffs(self.cutoff, o.cutoff)?;
        let mut out = Self::zero(self.cutoff);
        for (m1, s1) in &self.terms {
            for (m2, s2) in &o.terms {
                out.add_series(*m1 + *m2, &(s1 * s2));
            }
        }
        Ok(out)
    }

    pub fn scale_series(&self, s: &TruncatedSeries) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            out.add_series(*m, &(c * s));
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            out.add_series(*m, &c.scale(r));
        }
        out
    }

    pub fn map_exponents(&self, f: impl Fn(&CoverVector) -> CoverVector) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            out.add_series(f(m), c);
        }
        out
    }

    pub fn map_classes(&self, cutoff: DegreeCutoff, f: impl Fn(&CurveClass) -> CurveClass) -> Self {
        let mut out = Self::zero(cutoff);
        for (m, c) in &self.terms {
            out.add_series(*m, &c.map_classes(cutoff, &f));
        }
        out
    }

    /// `a - 1`, checked to be nilpotent modulo `I_d`.
    fn nilpotent_part(&self) -> Result<Self> {
        let mut n = self.clone();
        if !self.coefficient(&CoverVector::ZERO).constant_term().is_one() {
            return Err(Error::NonUnit);
        }
        n.add_series(CoverVector::ZERO, &-&TruncatedSeries::one(self.cutoff));
        if n.iter().any(|(_, c, _)| c.degree() <= 0) {
            return Err(Error::NonUnit);
        }
        Ok(n)
    }

    fn power_sum(&self, n: &Self, coeff: impl Fn(u32) -> Rational) -> Self {
        let mut out = Self::zero(self.cutoff);
        let mut pow = Self::one(self.cutoff);
        for k in 0..self.cutoff.get() {
            out = &out + &pow.scale(&coeff(k));
            pow = &pow * n;
            if pow.is_zero() {
                break;
            }
        }
        out
    }

    /// Inverse of a unit `1 + n` with `n` nilpotent, as a finite geometric series.
    pub fn invert_unit(&self) -> Result<Self> {
        let n = self.nilpotent_part()?;
        Ok(self.power_sum(&n, |k| if k % 2 == 0 { Rational::one() } else { -Rational::one() }))
    }

    /// `log(1 + n)` for nilpotent `n`.
    pub fn log_unit(&self) -> Result<Self> {
        let n = self.nilpotent_part()?;
        Ok(self.power_sum(&n, |k| match k {
            0 => Rational::zero(),
            k => rat(if k % 2 == 1 { 1 } else { -1 }, i64::from(k)),
        }))
    }

    /// `exp(n)` for nilpotent `n`.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let mut shifted = self.clone();
        shifted.add_series(CoverVector::ZERO, &TruncatedSeries::one(self.cutoff));
        let n = shifted.nilpotent_part()?;
        let mut fact = Rational::one();
        let coeffs: Vec<Rational> = (0..self.cutoff.get())
            .map(|k| {
                if k > 0 {
                    fact = &fact * rat(i64::from(k), 1);
                }
                fact.recip()
            })
            .collect();
        Ok(self.power_sum(&n, |k| coeffs[k as usize].clone()))
    }
}

impl Add for &LaurentElement {
    type Output = LaurentElement;
    fn add(self, o: &LaurentElement) -> LaurentElement {
        self.try_add(o).expect("series cutoffs must agree")
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        self.scale(&-Rational::one())
    }
}

impl Sub for &LaurentElement {
    type Output = LaurentElement;
    fn sub(self, o: &LaurentElement) -> LaurentElement {
        self + &(-o)
    }
}

impl Mul for &LaurentElement {
    type Output = LaurentElement;
    fn mul(self, o: &LaurentElement) -> LaurentElement {
        self.try_mul(o).expect("series cutoffs must agree")
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::laurent_plain(self))
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentTerm {
    class: CurveClass,
    exp: CoverVector,
    #[serde(with = "crate::ratser")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    cutoff: DegreeCutoff,
    terms: Vec<LaurentTerm>,
}

impl LaurentElement {
    fn json_terms(&self) -> Vec<LaurentTerm> {
        self.iter().map(|(exp, class, coeff)| LaurentTerm { class, exp, coeff: coeff.clone() }).collect()
    }

    /// The flat `[{class, exp, coeff}]` array.
    pub fn terms_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json_terms()).expect("terms serialize")
    }
}

impl Serialize for LaurentElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson { cutoff: self.cutoff, terms: self.json_terms() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        Ok(LaurentElement::from_terms(j.cutoff, j.terms.into_iter().map(|t| (t.exp, t.class, t.coeff))))
    }
}

/// `1 + sum_k c_k x^{-k m}` for a primitive direction `m`, stored as the
/// coefficient list `[c_0 = 1, c_1, ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WallFunction {
    direction: CoverVector,
    coeffs: Vec<TruncatedSeries>,
}

impl WallFunction {
    pub fn one(direction: CoverVector, cutoff: DegreeCutoff) -> Self {
        WallFunction { direction, coeffs: vec![TruncatedSeries::one(cutoff)] }
    }

    /// Build from coefficients of `t^k`, `t = x^{-m}`; trailing zeros are dropped.
    pub fn from_coeffs(direction: CoverVector, mut coeffs: Vec<TruncatedSeries>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        WallFunction { direction, coeffs }
    }

    pub fn direction(&self) -> CoverVector {
        self.direction
    }

    pub fn cutoff(&self) -> DegreeCutoff {
        self.coeffs[0].cutoff()
    }

    /// Coefficient of `x^{-k m}`.
    pub fn coeff(&self, k: usize) -> TruncatedSeries {
        self.coeffs.get(k).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.cutoff()))
    }

    pub fn coeffs(&self) -> &[TruncatedSeries] {
        &self.coeffs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.direction, o.direction, "wall functions on different rays");
        let cap = self.cutoff().get() as usize;
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(cap);
        let mut out = vec![TruncatedSeries::zero(self.cutoff()); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < len && !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::from_coeffs(self.direction, out)
    }

    fn unit_check(&self) -> Result<()> {
        if !self.coeffs[0].is_one() || self.coeffs[1..].iter().flat_map(|c| c.terms().keys()).any(|c| c.degree() <= 0) {
            return Err(Error::NonUnit);
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<Self> {
        self.unit_check()?;
        let mut u = self.clone();
        u.coeffs[0] = TruncatedSeries::zero(self.cutoff());
        let minus_u = WallFunction::from_coeffs(self.direction, u.coeffs.iter().map(|c| -c).collect());
        let mut out = Self::one(self.direction, self.cutoff());
        let mut pow = Self::one(self.direction, self.cutoff());
        for _ in 1..self.cutoff().get() {
            pow = pow.mul(&minus_u);
            if pow.is_zero_series() {
                break;
            }
            out = out.add(&pow);
        }
        Ok(out)
    }

    fn is_zero_series(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs(self.direction, (0..len).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    /// `f^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.direction, self.cutoff());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Coefficients of `log f` in `t = x^{-m}` (index 0 is zero).
    pub fn log(&self) -> Result<Vec<TruncatedSeries>> {
        self.unit_check()?;
        let d = self.cutoff();
        let mut u = self.clone();
        u.coeffs[0] = TruncatedSeries::zero(d);
        let mut acc = WallFunction { direction: self.direction, coeffs: vec![TruncatedSeries::zero(d)] };
        let mut pow = Self::one(self.direction, d);
        for n in 1..d.get() {
            pow = pow.mul(&u);
            if pow.is_zero_series() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let scaled = WallFunction {
                direction: self.direction,
                coeffs: pow.coeffs.iter().map(|c| c.scale(&rat(sign, i64::from(n)))).collect(),
            };
            acc = acc.add(&scaled);
        }
        Ok(acc.coeffs)
    }

    /// `exp` of a series given by its coefficients in `t` (index 0 must be zero).
    pub fn exp_of(direction: CoverVector, cutoff: DegreeCutoff, log: &[TruncatedSeries]) -> Self {
        let v = WallFunction { direction, coeffs: log.to_vec() };
        let mut out = Self::one(direction, cutoff);
        let mut pow = Self::one(direction, cutoff);
        let mut fact = 1i64;
        for n in 1..cutoff.get() {
            pow = pow.mul(&v);
            if pow.is_zero_series() {
                break;
            }
            fact *= i64::from(n);
            let scaled = WallFunction {
                direction,
                coeffs: pow.coeffs.iter().map(|c| c.scale(&rat(1, fact))).collect(),
            };
            out = out.add(&scaled);
        }
        out
    }

    pub fn to_laurent(&self) -> LaurentElement {
        let mut e = LaurentElement::zero(self.cutoff());
        for (k, c) in self.coeffs.iter().enumerate() {
            e.add_series(-(k as i64) * self.direction, c);
        }
        e
    }

    /// Transport by a class map and a lattice map sending this direction to `direction`.
    pub fn transport(
        &self,
        direction: CoverVector,
        cutoff: DegreeCutoff,
        f: impl Fn(&CurveClass) -> CurveClass,
    ) -> Self {
        Self::from_coeffs(direction, self.coeffs.iter().map(|c| c.map_classes(cutoff, &f)).collect())
    }
}

/// Side of a ray, seen looking along its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Counterclockwise of the ray.
    Left,
    /// Clockwise of the ray.
    Right,
}

impl Side {
    /// Side of `dir` on which the point with `cross(dir, p) = c` lies.
    pub fn of_cross(c: &Rational) -> Option<Side> {
        if c.is_positive() {
            Some(Side::Left)
        } else if c.is_negative() {
            Some(Side::Right)
        } else {
            None
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// Primitive normal to `dir` that is positive on this side.
    pub fn normal(self, dir: &CoverVector) -> CoverVector {
        match self {
            Side::Left => CoverVector::new(-dir.y, dir.x),
            Side::Right => CoverVector::new(dir.y, -dir.x),
        }
    }
}

/// `g^e` for a ray's full crossing factor, split as `z^{e D_j}` and `f^e`.
pub(crate) fn crossing_power(ray: &Ray, e: i64) -> Result<(CurveClass, WallFunction)> {
    let kink = match ray.kink() {
        None => CurveClass::ZERO,
        Some(_) if e < 0 => {
            return Err(Error::NegativeKinkExponent { ray: ray.direction(), exponent: CoverVector::ZERO })
        }
        Some(k) => e * k,
    };
    Ok((kink, ray.function().pow(e)?))
}

/// Rewrite `e` across `ray`, coming from `source`: `x^m -> x^m g^{<n,m>}`.
pub fn cross_ray(e: &LaurentElement, ray: &Ray, source: Side) -> Result<LaurentElement> {
    let d = e.cutoff();
    let dir = ray.direction();
    let n = source.normal(&dir);
    let mut powers: HashMap<i64, (CurveClass, WallFunction)> = HashMap::new();
    let mut out = LaurentElement::zero(d);
    for (m, c) in e.by_exponent() {
        let p = n.dot(m);
        if p == 0 {
            out.add_series(*m, c);
            continue;
        }
        if p < 0 && ray.kink().is_some() {
            return Err(Error::NegativeKinkExponent { ray: dir, exponent: *m });
        }
        let (kink, f) = match powers.entry(p) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(crossing_power(ray, p)?),
        };
        let base = c.shift(kink);
        for (k, ck) in f.coeffs().iter().enumerate() {
            out.add_series(*m - (k as i64) * dir, &(&base * ck));
        }
    }
    Ok(out)
}

/// `N`-values of a wall function: `log f = sum k N_{k,beta} z^beta x^{-k m}`.
pub fn log_ray_invariants(f: &WallFunction) -> Result<BTreeMap<(u32, CurveClass), Rational>> {
    let log = f.log()?;
    let mut out = BTreeMap::new();
    for (k, c) in log.iter().enumerate().skip(1) {
        for (class, r) in c.iter() {
            out.insert((k as u32, *class), r / rat(k as i64, 1));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cut(d: u32) -> DegreeCutoff {
        DegreeCutoff::new(d).unwrap()
    }

    fn e11() -> CurveClass {
        CurveClass::exceptional(1, 1)
    }

    #[test]
    fn difference_of_squares() {
        for (d, expect_square) in [(2, false), (3, true)] {
            let one = TruncatedSeries::one(cut(d));
            let z = TruncatedSeries::monomial(cut(d), e11(), Rational::one());
            let prod = &(&one + &z) * &(&one - &z);
            let mut expected = one.clone();
            if expect_square {
                expected.add_term(2 * e11(), -Rational::one());
            }
            assert_eq!(prod, expected);
        }
        let a = LaurentElement::monomial(cut(2), CoverVector::new(1, 0));
        let b = LaurentElement::monomial(cut(2), CoverVector::new(-1, 0));
        assert!((&a * &b).is_one());
    }

    #[test]
    fn cutoff_mismatch_is_an_error() {
        let a = TruncatedSeries::one(cut(2));
        let b = TruncatedSeries::one(cut(3));
        assert!(matches!(a.try_mul(&b), Err(Error::CutoffMismatch { left: 2, right: 3 })));
    }

    #[test]
    fn geometric_inverses() {
        let d = cut(3);
        let d23 = CurveClass::boundary(2).unwrap() + CurveClass::boundary(3).unwrap();
        let a = LaurentElement::from_terms(
            d,
            [(CoverVector::ZERO, CurveClass::ZERO, rat(1, 1)), (CoverVector::new(-2, 0), d23, rat(-1, 1))],
        );
        let expected = LaurentElement::from_terms(
            d,
            [(CoverVector::ZERO, CurveClass::ZERO, rat(1, 1)), (CoverVector::new(-2, 0), d23, rat(1, 1))],
        );
        assert_eq!(a.invert_unit().unwrap(), expected);
        assert!(LaurentElement::one(d).invert_unit().unwrap().is_one());

        let b = LaurentElement::from_terms(
            d,
            [(CoverVector::ZERO, CurveClass::ZERO, rat(1, 1)), (CoverVector::new(-1, 0), e11(), rat(1, 1))],
        );
        let expected = LaurentElement::from_terms(
            d,
            [
                (CoverVector::ZERO, CurveClass::ZERO, rat(1, 1)),
                (CoverVector::new(-1, 0), e11(), rat(-1, 1)),
                (CoverVector::new(-2, 0), 2 * e11(), rat(1, 1)),
            ],
        );
        assert_eq!(b.invert_unit().unwrap(), expected);
        assert!((&b * &expected).is_one());
        let bad = LaurentElement::monomial(d, CoverVector::new(1, 0));
        assert!(matches!(bad.invert_unit(), Err(Error::NonUnit)));
    }

    #[test]
    fn log_exp_roundtrip() {
        let d = cut(5);
        let b = LaurentElement::from_terms(
            d,
            [
                (CoverVector::ZERO, CurveClass::ZERO, rat(1, 1)),
                (CoverVector::new(-1, 0), e11(), rat(3, 1)),
                (CoverVector::new(-1, -1), CurveClass::anticanonical(), rat(-2, 5)),
            ],
        );
        let l = b.log_unit().unwrap();
        assert_eq!(l.exp_nilpotent().unwrap(), b);
    }

    #[test]
    fn json_roundtrip() {
        let d = cut(4);
        let e = LaurentElement::from_terms(
            d,
            [(CoverVector::new(1, -1), e11(), rat(-3, 4)), (CoverVector::ZERO, CurveClass::ZERO, rat(1, 1))],
        );
        let j = serde_json::to_string(&e).unwrap();
        assert!(j.contains(r#""coeff":"-3/4""#));
        assert_eq!(serde_json::from_str::<LaurentElement>(&j).unwrap(), e);
        let s = e.coefficient(&CoverVector::new(1, -1));
        assert_eq!(serde_json::from_str::<TruncatedSeries>(&serde_json::to_string(&s).unwrap()).unwrap(), s);
    }
}
