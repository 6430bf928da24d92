//! The canonical scattering diagram on the cover: the base wall function on
//! `(1,0)`, every other ray obtained by SL2(Z) transport, truncation by degree,
//! path-ordered products, and an on-disk ray cache.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::affine::{boundary_of_ray, min_wall_degree, sl2_word_for, CoverVector, COVER_RAYS};
use crate::error::{Error, Result};
use crate::lattice::{h2_action, lines_meeting, CurveClass};
use crate::series::{cross_ray, DegreeCutoff, LaurentElement, Side, TruncatedSeries, WallFunction};
use crate::rat;

/// A ray of the diagram: primitive direction `m` and `f = 1 + sum c_k x^{-k m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    function: WallFunction,
}

impl Ray {
    pub fn new(function: WallFunction) -> Self {
        Ray { function }
    }

    pub fn trivial(direction: CoverVector, cutoff: DegreeCutoff) -> Self {
        Ray::new(WallFunction::one(direction, cutoff))
    }

    pub fn direction(&self) -> CoverVector {
        self.function.direction()
    }

    pub fn cutoff(&self) -> DegreeCutoff {
        self.function.cutoff()
    }

    pub fn function(&self) -> &WallFunction {
        &self.function
    }

    pub fn is_trivial(&self) -> bool {
        self.function.is_trivial()
    }

    /// Whether the support is one of the six fan rays.
    pub fn is_boundary(&self) -> bool {
        self.direction().fan_ray_index().is_some()
    }

    /// `D_j` when the support lies over the boundary component `D_j`.
    pub fn kink(&self) -> Option<CurveClass> {
        self.direction()
            .fan_ray_index()
            .map(|k| CurveClass::boundary(boundary_of_ray(k)).expect("index in range"))
    }

    pub fn to_laurent(&self) -> LaurentElement {
        self.function.to_laurent()
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::laurent_pretty(&self.to_laurent()))
    }
}

#[derive(Serialize, Deserialize)]
struct RayJson {
    direction: CoverVector,
    cutoff: DegreeCutoff,
    terms: serde_json::Value,
}

impl Serialize for Ray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RayJson { direction: self.direction(), cutoff: self.cutoff(), terms: self.to_laurent().terms_json() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ray {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = RayJson::deserialize(d)?;
        let laurent: LaurentElement =
            serde_json::from_value(serde_json::json!({ "cutoff": j.cutoff, "terms": j.terms }))
                .map_err(D::Error::custom)?;
        let dir = j.direction;
        let mut coeffs = Vec::new();
        for (m, c) in laurent.by_exponent() {
            let k = if dir.x != 0 { -m.x / dir.x } else { -m.y / dir.y };
            if k < 0 || *m != -k * dir {
                return Err(D::Error::custom(format!("exponent {m} is not on the ray {dir}")));
            }
            let k = k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, TruncatedSeries::zero(j.cutoff));
            }
            coeffs[k] = c.clone();
        }
        if coeffs.is_empty() || !coeffs[0].is_one() {
            return Err(D::Error::custom("wall function must have constant term 1"));
        }
        Ok(Ray::new(WallFunction::from_coeffs(dir, coeffs)))
    }
}

/// `prod_j (1 + z^{L_1j} t) / (1 - z^{D_2 + D_3} t^2)^4` in `t = x^{-(1,0)}`.
pub fn base_wall_function(cutoff: DegreeCutoff) -> WallFunction {
    let dir = COVER_RAYS[0];
    let one = TruncatedSeries::one(cutoff);
    let mut f = WallFunction::one(dir, cutoff);
    for l in lines_meeting(1).expect("valid index") {
        let factor = WallFunction::from_coeffs(dir, vec![one.clone(), TruncatedSeries::monomial(cutoff, l, rat(1, 1))]);
        f = f.mul(&factor);
    }
    let d23 = CurveClass::boundary(2).expect("valid") + CurveClass::boundary(3).expect("valid");
    let mut denom = vec![one];
    for n in 1..cutoff.get() as i64 {
        if !cutoff.admits(&(n * d23)) {
            break;
        }
        denom.push(TruncatedSeries::zero(cutoff));
        denom.push(TruncatedSeries::monomial(cutoff, n * d23, rat(binomial(n + 3, 3), 1)));
    }
    f.mul(&WallFunction::from_coeffs(dir, denom))
}

/// The canonical wall function on the ray through the primitive vector `m`,
/// transported from the base ray along [`sl2_word_for`].
pub fn canonical_ray(m: &CoverVector, d: DegreeCutoff) -> Result<Ray> {
    let slope = min_wall_degree(m)?;
    let top = i64::from(d.get()) - 1;
    if slope > top {
        return Ok(Ray::trivial(*m, d));
    }
    let k_max = (top / slope) as u32;
    let base = base_wall_function(DegreeCutoff::new(k_max + 1)?);
    let word = sl2_word_for(m)?;
    debug_assert_eq!(word.apply(&COVER_RAYS[0]), *m);
    Ok(Ray::new(base.transport(*m, d, |c| h2_action(word.letters(), c))))
}

/// Primitive directions with `-F(m) < d`, counterclockwise from `(1,0)`.
pub fn diagram_directions(d: DegreeCutoff) -> Vec<CoverVector> {
    let mut out = Vec::new();
    let top = i64::from(d.get());
    for k in 0..6 {
        let (r0, r1) = (COVER_RAYS[k], COVER_RAYS[(k + 1) % 6]);
        let mut cone: Vec<(i64, i64)> = Vec::new();
        for a in 1..top {
            for b in 0..top - a {
                if num_integer::gcd(a, b) == 1 {
                    cone.push((a, b));
                }
            }
        }
        cone.sort_by(|p, q| (p.1 * q.0).cmp(&(q.1 * p.0)));
        out.extend(cone.into_iter().map(|(a, b)| a * r0 + b * r1));
    }
    out
}

/// All nontrivial rays modulo `I_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatteringDiagram {
    cutoff: DegreeCutoff,
    rays: Vec<Ray>,
    index: HashMap<CoverVector, usize>,
}

impl ScatteringDiagram {
    pub fn from_rays(cutoff: DegreeCutoff, rays: Vec<Ray>) -> Self {
        let index = rays.iter().enumerate().map(|(i, r)| (r.direction(), i)).collect();
        ScatteringDiagram { cutoff, rays, index }
    }

    /// The diagram with no rays at all.
    pub fn empty(cutoff: DegreeCutoff) -> Self {
        Self::from_rays(cutoff, Vec::new())
    }

    pub fn cutoff(&self) -> DegreeCutoff {
        self.cutoff
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn get(&self, m: &CoverVector) -> Option<&Ray> {
        self.index.get(m).map(|&i| &self.rays[i])
    }

    /// The ray on `m`, or the trivial one.
    pub fn ray_or_trivial(&self, m: &CoverVector) -> Ray {
        self.get(m).cloned().unwrap_or_else(|| Ray::trivial(*m, self.cutoff))
    }
}

pub fn truncated_diagram(d: DegreeCutoff) -> Result<ScatteringDiagram> {
    truncated_diagram_cached(d, &RayCache::in_memory())
}

pub fn truncated_diagram_cached(d: DegreeCutoff, cache: &RayCache) -> Result<ScatteringDiagram> {
    let rays = diagram_directions(d)
        .iter()
        .map(|m| cache.get(m, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScatteringDiagram::from_rays(d, rays.into_iter().filter(|r| !r.is_trivial()).collect()))
}

/// One step of a path: crossing `ray` from its `source` side.
#[derive(Clone, Copy, Debug)]
pub struct Crossing<'a> {
    pub ray: &'a Ray,
    pub source: Side,
}

/// Compose the wall-crossing automorphisms along `path`, in order.
pub fn path_ordered_product(e: &LaurentElement, path: &[Crossing<'_>]) -> Result<LaurentElement> {
    let mut cone = None;
    for c in path {
        let dir = c.ray.direction();
        if c.ray.is_boundary() {
            return Err(Error::BoundaryRayInPath(dir));
        }
        let k = dir.cone_coords().expect("ray directions are nonzero").0;
        if *cone.get_or_insert(k) != k {
            return Err(Error::MixedConesInPath);
        }
    }
    path.iter().try_fold(e.clone(), |acc, c| cross_ray(&acc, c.ray, c.source))
}

/// Rays keyed by `(direction, cutoff)`, optionally persisted as JSON files.
///
/// Readers share the in-memory map; a miss computes the ray and writes it back
/// through a temporary file so concurrent processes never see partial files.
#[derive(Debug, Default)]
pub struct RayCache {
    dir: Option<PathBuf>,
    mem: RwLock<HashMap<(CoverVector, u32), Ray>>,
}

impl RayCache {
    pub fn in_memory() -> Self {
        RayCache::default()
    }

    pub fn on_disk(dir: impl AsRef<Path>) -> Result<Self> {
        std::fs::create_dir_all(dir.as_ref())?;
        Ok(RayCache { dir: Some(dir.as_ref().to_path_buf()), mem: RwLock::default() })
    }

    pub fn directory(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn file_for(&self, m: &CoverVector, d: DegreeCutoff) -> Option<PathBuf> {
        self.dir.as_ref().map(|p| p.join(format!("ray-v1_{}_{}_d{}.json", m.x, m.y, d.get())))
    }

    pub fn get(&self, m: &CoverVector, d: DegreeCutoff) -> Result<Ray> {
        let key = (*m, d.get());
        if let Some(r) = self.mem.read().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let ray = match self.load(m, d) {
            Some(r) => r,
            None => {
                let r = canonical_ray(m, d)?;
                self.store(m, d, &r)?;
                r
            }
        };
        self.mem.write().expect("cache lock").insert(key, ray.clone());
        Ok(ray)
    }

    fn load(&self, m: &CoverVector, d: DegreeCutoff) -> Option<Ray> {
        let text = std::fs::read_to_string(self.file_for(m, d)?).ok()?;
        serde_json::from_str::<Ray>(&text)
            .ok()
            .filter(|r| r.direction() == *m && r.cutoff() == d)
    }

    fn store(&self, m: &CoverVector, d: DegreeCutoff, r: &Ray) -> Result<()> {
        let Some(path) = self.file_for(m, d) else { return Ok(()) };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, serde_json::to_string(r)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::PLFunction;
    use crate::lattice::Letter;

    fn cut(d: u32) -> DegreeCutoff {
        DegreeCutoff::new(d).unwrap()
    }

    fn dd(i: usize) -> CurveClass {
        CurveClass::boundary(i).unwrap()
    }

    #[test]
    fn base_ray_at_three() {
        let d = cut(3);
        let r = canonical_ray(&CoverVector::new(1, 0), d).unwrap();
        let l1 = lines_meeting(1).unwrap();
        assert_eq!(r.function().coeff(1), TruncatedSeries::sum_of(d, l1.iter().copied()));
        let mut c2 = TruncatedSeries::monomial(d, dd(2) + dd(3), rat(4, 1));
        for a in 0..8 {
            for b in a + 1..8 {
                c2.add_term(l1[a] + l1[b], rat(1, 1));
            }
        }
        assert_eq!(r.function().coeff(2), c2);
        assert_eq!(r.function().coeffs().len(), 3);
    }

    #[test]
    fn diagonal_ray_at_three() {
        let d = cut(3);
        let r = canonical_ray(&CoverVector::new(1, 1), d).unwrap();
        let l3 = lines_meeting(3).unwrap();
        let expected = TruncatedSeries::sum_of(d, l3.iter().map(|l| dd(3) + *l));
        assert_eq!(r.function().coeff(1), expected);
        assert_eq!(r.function().coeffs().len(), 2);
        let r2 = canonical_ray(&CoverVector::new(0, 1), cut(2)).unwrap();
        let l2 = lines_meeting(2).unwrap();
        assert_eq!(r2.function().coeff(1), TruncatedSeries::sum_of(cut(2), l2));
    }

    #[test]
    fn ray_counts() {
        for (d, n) in [(1, 0), (2, 6), (3, 12), (4, 24), (5, 36)] {
            let diag = truncated_diagram(cut(d)).unwrap();
            assert_eq!(diag.len(), n, "d = {d}");
            for r in diag.rays() {
                assert!(diag.get(&-r.direction()).is_some());
            }
        }
        let two = truncated_diagram(cut(2)).unwrap();
        assert!(two.rays().iter().all(|r| r.is_boundary()));
    }

    #[test]
    fn rotation_of_base_ray() {
        let d = cut(5);
        let r1 = canonical_ray(&COVER_RAYS[0], d).unwrap();
        let r2 = canonical_ray(&COVER_RAYS[1], d).unwrap();
        let rotated = r1.function().transport(COVER_RAYS[1], d, |c| h2_action(&[Letter::S], c));
        assert_eq!(*r2.function(), rotated);
    }

    #[test]
    fn degree_slope_law() {
        let d = cut(6);
        let f = PLFunction::canonical();
        let ds: Vec<PLFunction> = (1..=3).map(|i| PLFunction::boundary(i).unwrap()).collect();
        for r in truncated_diagram(d).unwrap().rays() {
            for (m, class, _) in r.to_laurent().iter() {
                if m.is_zero() {
                    continue;
                }
                let v = -m;
                assert_eq!(class.degree(), -f.eval(&v));
                for (j, dj) in ds.iter().enumerate() {
                    assert_eq!(crate::lattice::intersect(&class, &dd(j + 1)), dj.eval(&v));
                }
            }
        }
    }

    #[test]
    fn opposite_rays_share_classes() {
        let d = cut(5);
        for m in diagram_directions(d) {
            let a = canonical_ray(&m, d).unwrap();
            let b = canonical_ray(&-m, d).unwrap();
            assert_eq!(a.function().coeffs(), b.function().coeffs());
        }
    }

    #[test]
    fn path_products() {
        let d = cut(3);
        let diag = truncated_diagram(d).unwrap();
        let r = diag.get(&CoverVector::new(1, 1)).unwrap();
        let x2 = LaurentElement::monomial(d, CoverVector::new(0, 1));
        let once = path_ordered_product(&x2, &[Crossing { ray: r, source: Side::Left }]).unwrap();
        assert_eq!(once, &x2 * &r.to_laurent());
        let back = path_ordered_product(
            &x2,
            &[Crossing { ray: r, source: Side::Left }, Crossing { ray: r, source: Side::Right }],
        )
        .unwrap();
        assert_eq!(back, x2);
        assert_eq!(path_ordered_product(&x2, &[]).unwrap(), x2);
        let b = diag.get(&COVER_RAYS[0]).unwrap();
        assert!(matches!(
            path_ordered_product(&x2, &[Crossing { ray: b, source: Side::Left }]),
            Err(Error::BoundaryRayInPath(_))
        ));
    }

    #[test]
    fn disk_cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let d = cut(4);
        let m = CoverVector::new(-1, 2);
        let cold = RayCache::on_disk(dir.path()).unwrap().get(&m, d).unwrap();
        let warm = RayCache::on_disk(dir.path()).unwrap().get(&m, d).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(cold, canonical_ray(&m, d).unwrap());
    }

    #[test]
    fn non_primitive_rejected() {
        assert!(matches!(canonical_ray(&CoverVector::new(2, 2), cut(3)), Err(Error::NonPrimitive(_))));
    }
}
