//! Specialization to the torsion component: `z^{F_i} = 1` for the four
//! classes `F_i`, computed through an integer Smith normal form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{CoverVector, LatticePoint};
use crate::error::Result;
use crate::lattice::CurveClass;
use crate::scattering::Ray;
use crate::series::{DegreeCutoff, LaurentElement, TruncatedSeries};
use crate::theta::{cubic_coefficients, evaluate_cubic_rhs, ThetaEngine};
use crate::{rat, Rational};

/// The classes `F1..F4` with `z^{F_i} = 1` on the torsion component.
pub fn torsion_relations() -> [CurveClass; 4] {
    let l = CurveClass::line();
    let e = CurveClass::exceptional;
    [
        l - e(1, 1) - e(2, 1) - e(3, 1),
        l - e(1, 1) - e(2, 2) - e(3, 2),
        l - e(1, 2) - e(2, 1) - e(3, 2),
        l - e(1, 2) - e(2, 2) - e(3, 1),
    ]
}

type Mat = Vec<Vec<i64>>;

/// Smith form `P A Q = diag(d_1, .., d_r)` of a `rows x cols` matrix, returning
/// the diagonal, `Q` and `Q^{-1}`.
fn smith_normal_form(a: &Mat) -> (Vec<i64>, Mat, Mat) {
    let rows = a.len();
    let cols = a[0].len();
    let mut m = a.clone();
    let ident = |n: usize| -> Mat { (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() };
    let mut q = ident(cols);
    let mut qinv = ident(cols);

    // Column op: col_j += k * col_i, mirrored on Q and Q^{-1}.
    fn col_add(m: &mut Mat, q: &mut Mat, qinv: &mut Mat, i: usize, j: usize, k: i64) {
        for row in m.iter_mut() {
            row[j] += k * row[i];
        }
        for row in q.iter_mut() {
            row[j] += k * row[i];
        }
        let ri = qinv[j].clone();
        for (x, y) in qinv[i].iter_mut().zip(ri) {
            *x -= k * y;
        }
    }
    fn col_swap(m: &mut Mat, q: &mut Mat, qinv: &mut Mat, i: usize, j: usize) {
        for row in m.iter_mut().chain(q.iter_mut()) {
            row.swap(i, j);
        }
        qinv.swap(i, j);
    }

    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            col_swap(&mut m, &mut q, &mut qinv, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let k = m[i][t] / m[t][t];
                if k != 0 {
                    let rt = m[t].clone();
                    for (x, y) in m[i].iter_mut().zip(rt) {
                        *x -= k * y;
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let k = m[t][j] / m[t][t];
                if k != 0 {
                    col_add(&mut m, &mut q, &mut qinv, t, j, -k);
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0));
            match bad {
                Some(i) => {
                    let ri = m[i].clone();
                    for (x, y) in m[t].iter_mut().zip(ri) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if m[t][t] == 0 {
            break;
        }
        if m[t][t] < 0 {
            for row in m.iter_mut() {
                row[t] = -row[t];
            }
            for row in q.iter_mut() {
                row[t] = -row[t];
            }
            for x in qinv[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(m[t][t]);
    }
    (diag, q, qinv)
}

/// Image of a class in `Z^7 / <F_i>`: free part and torsion parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientImage {
    pub free: [i64; 3],
    pub torsion: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationMap {
    factors: Vec<i64>,
    q: Mat,
    degree_form: [i64; 3],
}

impl SpecializationMap {
    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        7 - self.factors.len()
    }

    fn coords(&self, c: &CurveClass) -> [i64; 7] {
        let a = c.to_array();
        std::array::from_fn(|i| (0..7).map(|j| a[j] * self.q[j][i]).sum())
    }

    pub fn image(&self, c: &CurveClass) -> QuotientImage {
        let y = self.coords(c);
        let torsion = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, &f)| f > 1)
            .map(|(i, &f)| y[i].rem_euclid(f) as u8)
            .sum();
        QuotientImage { free: [y[4], y[5], y[6]], torsion }
    }

    /// The sign character: `-1` on the torsion generator.
    pub fn sign(&self, c: &CurveClass) -> i64 {
        if self.image(c).torsion.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Degree, which factors through the quotient.
    pub fn degree(&self, free: &[i64; 3]) -> i64 {
        (0..3).map(|i| free[i] * self.degree_form[i]).sum()
    }

    pub fn specialize(&self, s: &TruncatedSeries) -> SignedQuotientSeries {
        let mut out = SignedQuotientSeries::zero(s.cutoff(), self.degree_form);
        for (c, r) in s.iter() {
            out.add_term(self.image(c).free, r * rat(self.sign(c), 1));
        }
        out
    }

    pub fn specialize_laurent(&self, e: &LaurentElement) -> SpecializedLaurent {
        let mut out = SpecializedLaurent::zero(e.cutoff(), self.degree_form);
        for (m, s) in e.by_exponent() {
            out.add(*m, &self.specialize(s));
        }
        out
    }

    pub fn specialize_ray(&self, r: &Ray) -> SpecializedRay {
        SpecializedRay {
            direction: r.direction(),
            coeffs: r.function().coeffs().iter().map(|c| self.specialize(c)).collect(),
        }
    }
}

pub fn build_specialization() -> SpecializationMap {
    let rows: Mat = torsion_relations().iter().map(|f| f.to_array().to_vec()).collect();
    let (factors, q, qinv) = smith_normal_form(&rows);
    let w = [3, -1, -1, -1, -1, -1, -1];
    let deg: Vec<i64> = (0..7).map(|i| (0..7).map(|j| qinv[i][j] * w[j]).sum()).collect();
    debug_assert!(deg[..4].iter().all(|&x| x == 0));
    SpecializationMap { factors, q, degree_form: [deg[4], deg[5], deg[6]] }
}

/// Image of a series under `z^beta -> sign(beta) w^{image(beta)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedQuotientSeries {
    pub cutoff: DegreeCutoff,
    degree_form: [i64; 3],
    #[serde(with = "quotient_terms")]
    pub terms: BTreeMap<[i64; 3], Rational>,
}

mod quotient_terms {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Rational;

    #[derive(Serialize, Deserialize)]
    struct Term {
        class: [i64; 3],
        #[serde(with = "crate::ratser")]
        coeff: Rational,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<[i64; 3], Rational>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(c, r)| Term { class: *c, coeff: r.clone() }).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<[i64; 3], Rational>, D::Error> {
        Ok(Vec::<Term>::deserialize(d)?.into_iter().map(|t| (t.class, t.coeff)).collect())
    }
}

impl SignedQuotientSeries {
    fn zero(cutoff: DegreeCutoff, degree_form: [i64; 3]) -> Self {
        SignedQuotientSeries { cutoff, degree_form, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, c: [i64; 3], r: Rational) {
        let deg: i64 = (0..3).map(|i| c[i] * self.degree_form[i]).sum();
        if r.is_zero() || deg >= i64::from(self.cutoff.get()) {
            return;
        }
        let e = self.terms.entry(c).or_insert_with(Rational::zero);
        *e += r;
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0, 0, 0]).is_some_and(|r| r.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (c, r) in &o.terms {
            out.add_term(*c, r.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.cutoff, self.degree_form);
        for (c1, r1) in &self.terms {
            for (c2, r2) in &o.terms {
                out.add_term([c1[0] + c2[0], c1[1] + c2[1], c1[2] + c2[2]], r1 * r2);
            }
        }
        out
    }
}

impl fmt::Display for SignedQuotientSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, r)| format!("{r} w^({},{},{})", c[0], c[1], c[2])).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Laurent polynomial over the specialized coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedLaurent {
    cutoff: DegreeCutoff,
    degree_form: [i64; 3],
    terms: BTreeMap<CoverVector, SignedQuotientSeries>,
}

impl SpecializedLaurent {
    fn zero(cutoff: DegreeCutoff, degree_form: [i64; 3]) -> Self {
        SpecializedLaurent { cutoff, degree_form, terms: BTreeMap::new() }
    }

    fn add(&mut self, m: CoverVector, s: &SignedQuotientSeries) {
        let entry = self.terms.entry(m).or_insert_with(|| SignedQuotientSeries::zero(self.cutoff, self.degree_form));
        *entry = entry.add(s);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|s| s.terms.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializedRay {
    pub direction: CoverVector,
    pub coeffs: Vec<SignedQuotientSeries>,
}

impl SpecializedRay {
    pub fn is_trivial(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyReport {
    pub cutoff: DegreeCutoff,
    pub invariant_factors: Vec<i64>,
    pub rays: Vec<SpecializedRay>,
    pub all_rays_trivial: bool,
    /// Specialized coefficients of the cubic equation.
    pub coefficients: BTreeMap<String, SignedQuotientSeries>,
    /// `-4 z^{D1+D2+D3}` before specialization.
    pub expected_constant: TruncatedSeries,
    pub constant_matches: bool,
    pub linear_terms_vanish: bool,
    /// Terms left in the specialized equation evaluated on straight-line theta functions.
    pub residual_terms: usize,
    /// Whether full and straight-line theta functions agree after specialization.
    pub straight_lines_suffice: bool,
}

impl CayleyReport {
    pub fn passed(&self) -> bool {
        self.all_rays_trivial
            && self.constant_matches
            && self.linear_terms_vanish
            && self.residual_terms == 0
            && self.straight_lines_suffice
    }
}

pub fn verify_cayley(d: DegreeCutoff) -> Result<CayleyReport> {
    let map = build_specialization();
    let full = ThetaEngine::canonical(d)?;
    let rays: Vec<SpecializedRay> = full.diagram().rays().iter().map(|r| map.specialize_ray(r)).collect();
    let all_rays_trivial = rays.iter().all(|r| r.is_trivial());

    let coeffs = cubic_coefficients(d, 4);
    let coefficients: BTreeMap<String, SignedQuotientSeries> =
        coeffs.iter().map(|(k, s)| (k.clone(), map.specialize(s))).collect();
    let expected_constant = TruncatedSeries::monomial(d, CurveClass::anticanonical(), rat(-4, 1));
    let constant = coefficients.get("1").cloned().unwrap_or_else(|| map.specialize(&TruncatedSeries::zero(d)));
    let constant_matches = constant == map.specialize(&expected_constant);
    let linear_terms_vanish = (1..=3).all(|i| coefficients.get(&format!("theta{i}")).is_none_or(|s| s.is_zero()));

    let v: Vec<LatticePoint> = (1..=3).map(LatticePoint::v).collect::<Result<_>>()?;
    let straight = ThetaEngine::straight(d);
    let (endpoint, thetas) = straight.thetas_in_cone(&v, 0)?;
    let full_thetas: Vec<LaurentElement> = v.iter().map(|q| full.theta_at(q, &endpoint)).collect::<Result<_>>()?;
    let straight_lines_suffice = thetas
        .iter()
        .zip(&full_thetas)
        .all(|(a, b)| map.specialize_laurent(a) == map.specialize_laurent(b));

    let lhs = &(&thetas[0] * &thetas[1]) * &thetas[2];
    let rhs = evaluate_cubic_rhs(&coeffs, &thetas);
    let residual = map.specialize_laurent(&(&lhs - &rhs));

    Ok(CayleyReport {
        cutoff: d,
        invariant_factors: map.invariant_factors().to_vec(),
        rays,
        all_rays_trivial,
        coefficients,
        expected_constant,
        constant_matches,
        linear_terms_vanish,
        residual_terms: residual.num_terms(),
        straight_lines_suffice,
    })
}
