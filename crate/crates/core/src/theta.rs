//! Broken lines on the cover, theta functions, structure constants, and the
//! verification routines built on them.
//!
//! Broken lines are found backwards: start at the endpoint with a candidate
//! final exponent `m`, walk along `+m` until the next wall, and branch over the
//! terms of the crossing factor there. Two invariants keep the search finite:
//! `deg(c) - F(m)` is constant along a line, so the final coefficient degree is
//! known in advance, and every bend of degree `k` moves the exponent by at most
//! `k` in the sup norm, which bounds how far `m` may stray from the source.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{CoverPoint, CoverVector, LatticePoint, PLFunction, Sheet, COVER_RAYS};
use crate::error::{Error, Result};
use crate::lattice::{lines_meeting, twisted_cubics_triangle, CurveClass};
use crate::scattering::{truncated_diagram_cached, Crossing, Ray, RayCache, ScatteringDiagram};
use crate::series::{cross_ray, crossing_power, DegreeCutoff, LaurentElement, Side, TruncatedSeries};
use crate::{rat, Rational};

/// Generic endpoints in cone coordinates `(a, b)`: distinct primes in the denominators.
const ENDPOINT_SCHEDULE: [((i64, i64), (i64, i64)); 6] = [
    ((1, 7), (1, 11)),
    ((2, 13), (3, 17)),
    ((5, 19), (2, 23)),
    ((7, 29), (4, 31)),
    ((3, 37), (8, 41)),
    ((9, 43), (5, 47)),
];

/// Offsets `eps * (a R_k + b R_{k+1})` placing a basepoint just inside cone `k` near a lattice point.
const NEAR_SCHEDULE: [(i64, (i64, i64), (i64, i64)); 6] = [
    (1009, (3, 1), (2, 1)),
    (2003, (5, 3), (7, 5)),
    (3001, (2, 7), (9, 11)),
    (4001, (11, 13), (3, 17)),
    (5003, (4, 19), (13, 23)),
    (6007, (17, 29), (6, 31)),
];

/// A generic point of the open cover cone `k`, from the fixed schedule.
pub fn generic_point(k: usize, seed: usize) -> CoverPoint {
    let ((an, ad), (bn, bd)) = ENDPOINT_SCHEDULE[seed % ENDPOINT_SCHEDULE.len()];
    let (r0, r1) = (COVER_RAYS[k % 6].to_point(), COVER_RAYS[(k + 1) % 6].to_point());
    let (a, b) = (rat(an, ad), rat(bn, bd));
    CoverPoint::new(&a * &r0.x + &b * &r1.x, &a * &r0.y + &b * &r1.y)
}

/// A generic point just off the lattice point `r` (nonzero) on the cover.
pub fn near_point(r: &CoverVector, seed: usize) -> CoverPoint {
    let (k, _, _) = r.cone_coords().expect("nonzero lattice point");
    let (eps, (an, ad), (bn, bd)) = NEAR_SCHEDULE[seed % NEAR_SCHEDULE.len()];
    let (r0, r1) = (COVER_RAYS[k].to_point(), COVER_RAYS[(k + 1) % 6].to_point());
    let e = rat(1, eps);
    let (a, b) = (rat(an, ad) * &e, rat(bn, bd) * &e);
    let base = r.to_point();
    CoverPoint::new(&base.x + &a * &r0.x + &b * &r1.x, &base.y + &a * &r0.y + &b * &r1.y)
}

/// A straight piece of a broken line carrying `coefficient * x^exponent`,
/// traversed in direction `-exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub exponent: CoverVector,
    pub coefficient: TruncatedSeries,
    /// `None` for the unbounded initial segment.
    pub start: Option<CoverPoint>,
    pub end: CoverPoint,
}

/// What happened where a broken line met a wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Junction {
    pub ray: CoverVector,
    pub point: CoverPoint,
    /// Power of the crossing factor, `<n, m>`.
    pub power: i64,
    /// Bend order: the term `x^{-k * ray}` was taken (0 means straight through).
    pub order: usize,
    pub term: TruncatedSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrokenLine {
    pub source: LatticePoint,
    pub sheet: Sheet,
    pub endpoint: CoverPoint,
    pub segments: Vec<Segment>,
    pub junctions: Vec<Junction>,
}

impl BrokenLine {
    pub fn final_exponent(&self) -> CoverVector {
        self.segments.last().expect("at least one segment").exponent
    }

    pub fn final_coefficient(&self) -> &TruncatedSeries {
        &self.segments.last().expect("at least one segment").coefficient
    }

    pub fn monomial(&self) -> LaurentElement {
        LaurentElement::from_series(self.final_exponent(), self.final_coefficient().clone())
    }

    /// `dF(gamma')` on each segment: `F` is linear on the cone the segment lies in.
    pub fn f_derivatives(&self) -> Vec<i64> {
        let f = PLFunction::canonical();
        self.segments
            .iter()
            .map(|s| {
                let probe = match &s.start {
                    None => s.end.advance(&Rational::one(), &s.exponent),
                    Some(a) => CoverPoint::new((&a.x + &s.end.x) / rat(2, 1), (&a.y + &s.end.y) / rat(2, 1)),
                };
                let k = probe.open_cone().expect("segments avoid fan rays");
                -f.linear_on_cone(k, &s.exponent)
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Step {
    wall: usize,
    point: CoverPoint,
    power: i64,
    order: usize,
    term: TruncatedSeries,
    exponent_after: CoverVector,
}

/// Expanded crossing factors keyed by `(wall, exponent)`.
type PowerCache = HashMap<(usize, i64), Arc<Vec<TruncatedSeries>>>;

/// Broken-line machinery over a fixed truncated diagram.
///
/// The six fan rays are always walls, because crossing them changes chart and
/// contributes the factor `z^{D_j}` even where the wall function is trivial.
#[derive(Debug)]
pub struct ThetaEngine {
    cutoff: DegreeCutoff,
    diagram: ScatteringDiagram,
    walls: Vec<Ray>,
    powers: Mutex<PowerCache>,
    seed: usize,
}

impl ThetaEngine {
    pub fn new(diagram: ScatteringDiagram) -> Self {
        let cutoff = diagram.cutoff();
        let mut walls: Vec<Ray> = diagram.rays().iter().filter(|r| !r.is_boundary()).cloned().collect();
        walls.extend(COVER_RAYS.iter().map(|m| diagram.ray_or_trivial(m)));
        walls.sort_by_key(|r| r.direction());
        ThetaEngine { cutoff, diagram, walls, powers: Mutex::default(), seed: 0 }
    }

    /// Engine over the canonical diagram modulo `I_d`.
    pub fn canonical(d: DegreeCutoff) -> Result<Self> {
        Self::canonical_cached(d, &RayCache::in_memory())
    }

    pub fn canonical_cached(d: DegreeCutoff, cache: &RayCache) -> Result<Self> {
        Ok(Self::new(truncated_diagram_cached(d, cache)?))
    }

    /// Engine with only the fan rays, carrying trivial wall functions.
    pub fn straight(d: DegreeCutoff) -> Self {
        Self::new(ScatteringDiagram::empty(d))
    }

    /// Start the perturbation schedule at `seed`.
    pub fn with_seed(mut self, seed: usize) -> Self {
        self.seed = seed;
        self
    }

    pub fn cutoff(&self) -> DegreeCutoff {
        self.cutoff
    }

    pub fn diagram(&self) -> &ScatteringDiagram {
        &self.diagram
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    /// Coefficients of `x^{-k m}` in `g^e`, kink included.
    fn crossing_terms(&self, wall: usize, e: i64) -> Result<Arc<Vec<TruncatedSeries>>> {
        if let Some(t) = self.powers.lock().expect("power cache").get(&(wall, e)) {
            return Ok(t.clone());
        }
        let (kink, f) = crossing_power(&self.walls[wall], e)?;
        let terms: Arc<Vec<TruncatedSeries>> = Arc::new(f.coeffs().iter().map(|c| c.shift(&kink)).collect());
        self.powers.lock().expect("power cache").insert((wall, e), terms.clone());
        Ok(terms)
    }

    fn check_endpoint(&self, q: &CoverPoint) -> Result<usize> {
        if q.is_origin() {
            return Err(Error::Genericity("endpoint at the origin".into()));
        }
        for w in &self.walls {
            let dir = w.direction();
            if q.cross_vec(&dir).is_zero() && q.dot_vec(&dir).is_positive() {
                return Err(Error::Genericity(format!("endpoint {q} lies on the ray {dir}")));
            }
        }
        Ok(q.open_cone().expect("off the fan rays"))
    }

    fn search(
        &self,
        target: CoverVector,
        p: &CoverPoint,
        m: CoverVector,
        deg: i64,
        coeff: TruncatedSeries,
        steps: &mut Vec<Step>,
        out: &mut dyn FnMut(&[Step], CoverVector, &TruncatedSeries),
    ) -> Result<()> {
        let top = i64::from(self.cutoff.get()) - 1;
        if p.cross_vec(&m).is_zero() && p.dot_vec(&m).is_negative() {
            return Err(Error::Genericity(format!("a broken line through {p} with exponent {m} hits the origin")));
        }
        let mut best: Option<(Rational, usize)> = None;
        let mut tie = false;
        for (i, w) in self.walls.iter().enumerate() {
            let dir = w.direction();
            let cm = m.cross(&dir);
            if cm == 0 {
                continue;
            }
            let s = -p.cross_vec(&dir) / rat(cm, 1);
            if !s.is_positive() || !p.advance(&s, &m).dot_vec(&dir).is_positive() {
                continue;
            }
            match &best {
                Some((b, _)) if s > *b => {}
                Some((b, _)) if s == *b => tie = true,
                _ => {
                    best = Some((s, i));
                    tie = false;
                }
            }
        }
        if tie {
            return Err(Error::Genericity(format!("a broken line through {p} meets two walls at once")));
        }
        let Some((s, i)) = best else {
            if m == target {
                out(steps, m, &coeff);
            }
            return Ok(());
        };
        let point = p.advance(&s, &m);
        let wall = &self.walls[i];
        let dir = wall.direction();
        let power = m.cross(&dir).abs();
        let slope = -PLFunction::canonical().eval(&dir);
        let kink_deg = if wall.is_boundary() { power } else { 0 };
        let terms = self.crossing_terms(i, power)?;
        for (k, term) in terms.iter().enumerate() {
            let new_deg = deg + kink_deg + k as i64 * slope;
            if new_deg > top {
                break;
            }
            if term.is_zero() {
                continue;
            }
            let prev = m + (k as i64) * dir;
            if (prev - target).sup_norm() > top - new_deg {
                continue;
            }
            let next = &coeff * term;
            if next.is_zero() {
                continue;
            }
            steps.push(Step { wall: i, point: point.clone(), power, order: k, term: term.clone(), exponent_after: m });
            self.search(target, &point, prev, new_deg, next, steps, out)?;
            steps.pop();
        }
        Ok(())
    }

    /// Run the backward search for both lifts of `q`, reporting each line found.
    fn enumerate(
        &self,
        q: &LatticePoint,
        endpoint: &CoverPoint,
        mut out: impl FnMut(Sheet, &[Step], CoverVector, &TruncatedSeries),
    ) -> Result<()> {
        let cone = self.check_endpoint(endpoint)?;
        let top = i64::from(self.cutoff.get()) - 1;
        let f = PLFunction::canonical();
        for sheet in [Sheet::First, Sheet::Second] {
            let target = q.lift(sheet);
            let weight = -f.eval(&target);
            for dx in -top..=top {
                for dy in -top..=top {
                    let m = target + CoverVector::new(dx, dy);
                    let deg = weight + f.linear_on_cone(cone, &m);
                    if deg < 0 || deg > top || (m - target).sup_norm() > deg {
                        continue;
                    }
                    let mut steps = Vec::new();
                    let mut record = |steps: &[Step], initial: CoverVector, c: &TruncatedSeries| {
                        debug_assert_eq!(initial, target);
                        assert_eq!(
                            c.homogeneous_degree(),
                            Some(deg),
                            "coefficient degree must equal the conserved quantity"
                        );
                        out(sheet, steps, m, c)
                    };
                    self.search(
                        target,
                        endpoint,
                        m,
                        0,
                        TruncatedSeries::one(self.cutoff),
                        &mut steps,
                        &mut record,
                    )?;
                }
            }
        }
        Ok(())
    }

    /// All broken lines for `q` ending at `endpoint`, over both lifts of `q`.
    pub fn broken_lines(&self, q: &LatticePoint, endpoint: &CoverPoint) -> Result<Vec<BrokenLine>> {
        if q.is_origin() {
            return Ok(Vec::new());
        }
        let mut lines = Vec::new();
        self.enumerate(q, endpoint, |sheet, steps, _, _| {
            lines.push(self.assemble(q, sheet, endpoint, steps));
        })?;
        lines.sort_by(|a, b| {
            (a.sheet, a.final_exponent(), a.junctions.len()).cmp(&(b.sheet, b.final_exponent(), b.junctions.len()))
        });
        Ok(lines)
    }

    fn assemble(&self, q: &LatticePoint, sheet: Sheet, endpoint: &CoverPoint, steps: &[Step]) -> BrokenLine {
        let mut segments = Vec::new();
        let mut junctions = Vec::new();
        let mut exponent = q.lift(sheet);
        let mut coefficient = TruncatedSeries::one(self.cutoff);
        let mut start = None;
        for st in steps.iter().rev() {
            segments.push(Segment {
                exponent,
                coefficient: coefficient.clone(),
                start: start.clone(),
                end: st.point.clone(),
            });
            junctions.push(Junction {
                ray: self.walls[st.wall].direction(),
                point: st.point.clone(),
                power: st.power,
                order: st.order,
                term: st.term.clone(),
            });
            coefficient = &coefficient * &st.term;
            exponent = st.exponent_after;
            start = Some(st.point.clone());
        }
        segments.push(Segment { exponent, coefficient, start, end: endpoint.clone() });
        BrokenLine { source: *q, sheet, endpoint: endpoint.clone(), segments, junctions }
    }

    /// `theta_q` at `endpoint`: the sum of final monomials of all broken lines.
    pub fn theta_at(&self, q: &LatticePoint, endpoint: &CoverPoint) -> Result<LaurentElement> {
        if q.is_origin() {
            return Ok(LaurentElement::one(self.cutoff));
        }
        let mut theta = LaurentElement::zero(self.cutoff);
        self.enumerate(q, endpoint, |_, _, m, c| theta.add_series(m, c))?;
        Ok(theta)
    }

    /// Try endpoints from the schedule until one is generic for every `q` given.
    pub fn first_generic<T>(
        &self,
        candidates: impl Fn(usize) -> CoverPoint,
        mut run: impl FnMut(&CoverPoint) -> Result<T>,
    ) -> Result<(CoverPoint, T)> {
        let n = ENDPOINT_SCHEDULE.len();
        for attempt in 0..n {
            let p = candidates(self.seed + attempt);
            match run(&p) {
                Ok(v) => return Ok((p, v)),
                Err(Error::Genericity(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::GenericityExhausted(n))
    }

    /// Theta functions of several points at one shared generic endpoint of cover cone `k`.
    pub fn thetas_in_cone(&self, qs: &[LatticePoint], k: usize) -> Result<(CoverPoint, Vec<LaurentElement>)> {
        self.first_generic(|s| generic_point(k, s), |p| qs.iter().map(|q| self.theta_at(q, p)).collect())
    }

    /// `alpha_{p1 p2 r}` with the basepoint taken from the schedule entry `seed`.
    fn structure_constant_at(
        &self,
        p1: &LatticePoint,
        p2: &LatticePoint,
        r: &LatticePoint,
    ) -> Result<(CoverPoint, TruncatedSeries)> {
        let target = r.lift(Sheet::First);
        let place = |s: usize| if r.is_origin() { generic_point(0, s) } else { near_point(&target, s) };
        self.first_generic(place, |z| {
            let t1 = self.theta_at(p1, z)?;
            let t2 = self.theta_at(p2, z)?;
            let mut alpha = TruncatedSeries::zero(self.cutoff);
            for (m1, c1) in t1.by_exponent() {
                let c2 = t2.coefficient(&(target - *m1));
                if !c2.is_zero() {
                    alpha += &(c1 * &c2);
                }
            }
            Ok(alpha)
        })
    }

    pub fn structure_constants(&self, p1: &LatticePoint, p2: &LatticePoint) -> Result<StructureConstantTable> {
        let f = PLFunction::canonical();
        let window = -f.eval(&p1.lift(Sheet::First)) - f.eval(&p2.lift(Sheet::First));
        let mut entries = BTreeMap::new();
        let mut basepoints = BTreeMap::new();
        for r in LatticePoint::up_to_weight(window) {
            let (z, alpha) = self.structure_constant_at(p1, p2, &r)?;
            if let Some((_, c)) = alpha.iter().find(|(_, c)| !c.is_integer()) {
                return Err(Error::NonIntegral { point: r.to_string(), coeff: c.to_string() });
            }
            if !alpha.is_zero() {
                entries.insert(r, alpha);
                basepoints.insert(r, z);
            }
        }
        Ok(StructureConstantTable { p1: *p1, p2: *p2, cutoff: self.cutoff, entries, basepoints })
    }

    /// Check the two consistency conditions for `q` around every cone and fan ray.
    pub fn verify_consistency(&self, q: &LatticePoint) -> Result<ConsistencyReport> {
        let mut checks = Vec::new();
        let d = self.cutoff;
        let tiny = CoverPoint::from_ratios((1, 10007), (1, 10009));
        let chambers = self.chamber_points();
        let theta = |p: &CoverPoint| -> Result<LaurentElement> {
            let (_, t) = self.first_generic(
                |s| {
                    let eps = rat(1, 1 + s as i64);
                    CoverPoint::new(&p.x + &tiny.x * &eps, &p.y + &tiny.y * &eps)
                },
                |pt| self.theta_at(q, pt),
            )?;
            Ok(t)
        };
        for (k, cone) in chambers.iter().enumerate() {
            let thetas: Vec<LaurentElement> = cone.iter().map(|(p, _)| theta(p)).collect::<Result<_>>()?;
            let mut path: Vec<Crossing<'_>> = Vec::new();
            for j in 1..cone.len() {
                let ray = cone[j].1.as_ref().expect("inner chamber walls are interior rays");
                let step = [Crossing { ray, source: Side::Right }];
                let moved = crate::scattering::path_ordered_product(&thetas[j - 1], &step)?;
                checks.push(ConsistencyCheck {
                    kind: CheckKind::InteriorRay,
                    description: format!("cone {k}: across {}", ray.direction()),
                    passed: moved == thetas[j],
                });
                path.push(step[0]);
            }
            if cone.len() > 2 {
                let moved = crate::scattering::path_ordered_product(&thetas[0], &path)?;
                checks.push(ConsistencyCheck {
                    kind: CheckKind::InteriorPath,
                    description: format!("cone {k}: across all {} interior rays", path.len()),
                    passed: moved == thetas[cone.len() - 1],
                });
            }
        }
        for k in 0..6 {
            let before = &chambers[(k + 5) % 6];
            let after = &chambers[k];
            let near = theta(&before.last().expect("nonempty").0)?;
            let far = theta(&after[0].0)?;
            let ray = self.diagram.ray_or_trivial(&COVER_RAYS[k]);
            let passed = boundary_glue(&near, &far, &ray, d)?;
            checks.push(ConsistencyCheck {
                kind: CheckKind::BoundaryRay,
                description: format!("across fan ray {}", COVER_RAYS[k]),
                passed,
            });
        }
        let first_counterexample = checks.iter().find(|c| !c.passed).map(|c| c.description.clone());
        Ok(ConsistencyReport { q: *q, cutoff: d, passed: first_counterexample.is_none(), checks, first_counterexample })
    }

    /// For each cover cone, a point in every chamber cut out by the interior rays,
    /// counterclockwise, paired with the interior ray on its clockwise side.
    fn chamber_points(&self) -> Vec<Vec<(CoverPoint, Option<Ray>)>> {
        let scale = rat(3, 2);
        (0..6)
            .map(|k| {
                let mut inner: Vec<&Ray> = self
                    .diagram
                    .rays()
                    .iter()
                    .filter(|r| !r.is_boundary() && r.direction().cone_coords().map(|c| c.0) == Some(k))
                    .collect();
                inner.sort_by(|a, b| 0.cmp(&a.direction().cross(&b.direction())));
                let mut bounds: Vec<CoverVector> = vec![COVER_RAYS[k]];
                bounds.extend(inner.iter().map(|r| r.direction()));
                bounds.push(COVER_RAYS[(k + 1) % 6]);
                (0..bounds.len() - 1)
                    .map(|j| {
                        let mid = (bounds[j] + bounds[j + 1]).to_point().scale(&scale);
                        let wall = if j == 0 { None } else { Some(inner[j - 1].clone()) };
                        (mid, wall)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Whether `near` (clockwise of `ray`) and `far` (counterclockwise) are the two
/// chart images of one element of the ring attached to the fan ray.
///
/// That ring is spanned by monomials pairing nonnegatively with the normal on
/// either side; split each theta function accordingly and cross the parts that
/// pair positively with their own side's normal.
fn boundary_glue(near: &LaurentElement, far: &LaurentElement, ray: &Ray, d: DegreeCutoff) -> Result<bool> {
    let dir = ray.direction();
    let n_near = Side::Right.normal(&dir);
    let n_far = Side::Left.normal(&dir);
    let split = |e: &LaurentElement, n: &CoverVector, strict: bool| {
        let mut keep = LaurentElement::zero(d);
        for (m, c) in e.by_exponent() {
            let p = n.dot(m);
            if p > 0 || (!strict && p == 0) {
                keep.add_series(*m, c);
            }
        }
        keep
    };
    let from_near = split(near, &n_near, false);
    let from_far = split(far, &n_far, true);
    let near_image = &from_near + &cross_ray(&from_far, ray, Side::Left)?;
    let far_image = &cross_ray(&from_near, ray, Side::Right)? + &from_far;
    Ok(near_image == *near && far_image == *far)
}

/// `alpha_{p1 p2 r}` for all `r`, with the basepoint used for each entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantTable {
    pub p1: LatticePoint,
    pub p2: LatticePoint,
    pub cutoff: DegreeCutoff,
    pub entries: BTreeMap<LatticePoint, TruncatedSeries>,
    pub basepoints: BTreeMap<LatticePoint, CoverPoint>,
}

impl StructureConstantTable {
    pub fn get(&self, r: &LatticePoint) -> TruncatedSeries {
        self.entries.get(r).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.cutoff))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    InteriorRay,
    InteriorPath,
    BoundaryRay,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyCheck {
    pub kind: CheckKind,
    pub description: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub q: LatticePoint,
    pub cutoff: DegreeCutoff,
    pub passed: bool,
    pub checks: Vec<ConsistencyCheck>,
    pub first_counterexample: Option<String>,
}

/// Keys of the coefficient dictionary of the cubic equation.
pub fn coefficient_key(kind: &str, i: usize) -> String {
    match kind {
        "square" => format!("theta{i}^2"),
        "linear" => format!("theta{i}"),
        _ => "1".into(),
    }
}

/// Both sides of the cubic relation among `theta_{v1}, theta_{v2}, theta_{v3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorReport {
    pub cutoff: DegreeCutoff,
    pub endpoint: CoverPoint,
    pub lhs: LaurentElement,
    pub rhs: LaurentElement,
    pub residual: LaurentElement,
    /// Coefficients obtained by expanding `theta1 theta2 theta3` in the theta basis.
    pub found: BTreeMap<String, TruncatedSeries>,
    pub expected: BTreeMap<String, TruncatedSeries>,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.residual.is_zero() && self.found == self.expected
    }
}

/// The expected coefficients: `z^{D_i}` on `theta_i^2`, `sum_j z^{D_i + L_ij}` on
/// `theta_i`, and `sum z^{pi^*H} + constant * z^{D1+D2+D3}` on 1.
pub fn cubic_coefficients(d: DegreeCutoff, constant: i64) -> BTreeMap<String, TruncatedSeries> {
    let mut out = BTreeMap::new();
    for i in 1..=3 {
        let di = CurveClass::boundary(i).expect("index in range");
        out.insert(coefficient_key("square", i), TruncatedSeries::monomial(d, di, Rational::one()));
        let lines = lines_meeting(i).expect("index in range");
        out.insert(coefficient_key("linear", i), TruncatedSeries::sum_of(d, lines.into_iter().map(|l| di + l)));
    }
    let mut c = TruncatedSeries::sum_of(d, twisted_cubics_triangle());
    c.add_term(CurveClass::anticanonical(), rat(constant, 1));
    out.insert(coefficient_key("constant", 0), c);
    out.retain(|_, s| !s.is_zero());
    out
}

/// Evaluate `sum_i a_i theta_i^2 + sum_i b_i theta_i + c` at given theta functions.
pub fn evaluate_cubic_rhs(
    coeffs: &BTreeMap<String, TruncatedSeries>,
    thetas: &[LaurentElement],
) -> LaurentElement {
    let d = thetas[0].cutoff();
    let zero = TruncatedSeries::zero(d);
    let mut rhs = LaurentElement::zero(d);
    for i in 1..=3 {
        let t = &thetas[i - 1];
        let a = coeffs.get(&coefficient_key("square", i)).unwrap_or(&zero);
        let b = coeffs.get(&coefficient_key("linear", i)).unwrap_or(&zero);
        rhs = &rhs + &(t * t).scale_series(a);
        rhs = &rhs + &t.scale_series(b);
    }
    if let Some(c) = coeffs.get(&coefficient_key("constant", 0)) {
        rhs.add_series(CoverVector::ZERO, c);
    }
    rhs
}

impl ThetaEngine {
    /// Expand `theta_{v1} theta_{v2} theta_{v3}` in the theta basis, then rewrite
    /// `theta_{2 v_i}` through `theta_{v_i}^2`.
    pub fn cubic_expansion(&self) -> Result<BTreeMap<String, TruncatedSeries>> {
        let d = self.cutoff;
        let v: Vec<LatticePoint> = (1..=3).map(LatticePoint::v).collect::<Result<_>>()?;
        let first = self.structure_constants(&v[0], &v[1])?;
        let mut triple: BTreeMap<LatticePoint, TruncatedSeries> = BTreeMap::new();
        for (r, a) in &first.entries {
            let second = self.structure_constants(r, &v[2])?;
            for (s, b) in &second.entries {
                *triple.entry(*s).or_insert_with(|| TruncatedSeries::zero(d)) += &(a * b);
            }
        }
        let mut out: BTreeMap<String, TruncatedSeries> = BTreeMap::new();
        let mut add = |key: String, s: &TruncatedSeries| {
            *out.entry(key).or_insert_with(|| TruncatedSeries::zero(d)) += s;
        };
        for (s, c) in &triple {
            let doubled = (1..=3).find(|&i| *s == LatticePoint::from_cover(2 * v[i - 1].lift(Sheet::First)));
            if let Some(i) = doubled {
                let square = self.structure_constants(&v[i - 1], &v[i - 1])?;
                let lead = square.get(s);
                if !lead.is_one() {
                    return Err(Error::Genericity(format!("theta_{s} does not lead theta_v{i}^2")));
                }
                add(coefficient_key("square", i), c);
                for (t, g) in &square.entries {
                    if t != s {
                        add(basis_key(t, &v), &-&(c * g));
                    }
                }
            } else {
                add(basis_key(s, &v), c);
            }
        }
        out.retain(|_, s| !s.is_zero());
        Ok(out)
    }

    pub fn verify_mirror_equation(&self) -> Result<MirrorReport> {
        let d = self.cutoff;
        let v: Vec<LatticePoint> = (1..=3).map(LatticePoint::v).collect::<Result<_>>()?;
        let (endpoint, thetas) = self.thetas_in_cone(&v, 0)?;
        let lhs = &(&thetas[0] * &thetas[1]) * &thetas[2];
        let expected = cubic_coefficients(d, 4);
        let rhs = evaluate_cubic_rhs(&expected, &thetas);
        let residual = &lhs - &rhs;
        let found = self.cubic_expansion()?;
        Ok(MirrorReport { cutoff: d, endpoint, lhs, rhs, residual, found, expected })
    }

    /// Coefficient of `theta_0` in `theta_{v1} theta_{v2} theta_{v3}`.
    pub fn frobenius_constant_term(&self) -> Result<TruncatedSeries> {
        let d = self.cutoff;
        let v: Vec<LatticePoint> = (1..=3).map(LatticePoint::v).collect::<Result<_>>()?;
        let first = self.structure_constants(&v[0], &v[1])?;
        let mut total = TruncatedSeries::zero(d);
        for (r, a) in &first.entries {
            let second = self.structure_constants(r, &v[2])?;
            total += &(a * &second.get(&LatticePoint::ORIGIN));
        }
        Ok(total)
    }
}

fn basis_key(s: &LatticePoint, v: &[LatticePoint]) -> String {
    if s.is_origin() {
        return coefficient_key("constant", 0);
    }
    match v.iter().position(|x| x == s) {
        Some(i) => coefficient_key("linear", i + 1),
        None => format!("theta[{s}]"),
    }
}

pub fn broken_lines(q: &LatticePoint, endpoint: &CoverPoint, d: DegreeCutoff) -> Result<Vec<BrokenLine>> {
    ThetaEngine::canonical(d)?.broken_lines(q, endpoint)
}

pub fn theta_at(q: &LatticePoint, endpoint: &CoverPoint, d: DegreeCutoff) -> Result<LaurentElement> {
    ThetaEngine::canonical(d)?.theta_at(q, endpoint)
}

pub fn structure_constants(p1: &LatticePoint, p2: &LatticePoint, d: DegreeCutoff) -> Result<StructureConstantTable> {
    ThetaEngine::canonical(d)?.structure_constants(p1, p2)
}

pub fn verify_consistency(q: &LatticePoint, d: DegreeCutoff) -> Result<ConsistencyReport> {
    ThetaEngine::canonical(d)?.verify_consistency(q)
}

pub fn verify_mirror_equation(d: DegreeCutoff) -> Result<MirrorReport> {
    ThetaEngine::canonical(d)?.verify_mirror_equation()
}

pub fn frobenius_constant_term(d: DegreeCutoff) -> Result<TruncatedSeries> {
    ThetaEngine::canonical(d)?.frobenius_constant_term()
}
