use std::sync::OnceLock;

use cubic_mirror::affine::{sl2_word_for, CoverVector, LatticePoint, PLFunction, SL2Word, Sheet, COVER_RAYS};
use cubic_mirror::cayley::build_specialization;
use cubic_mirror::lattice::{h2_action, intersect, CurveClass, Letter};
use cubic_mirror::scattering::{canonical_ray, truncated_diagram, Ray};
use cubic_mirror::series::{cross_ray, DegreeCutoff, LaurentElement, Side, TruncatedSeries, WallFunction};
use cubic_mirror::theta::{generic_point, ThetaEngine};
use cubic_mirror::{rat, Rational};
use proptest::prelude::*;

fn cut(d: u32) -> DegreeCutoff {
    DegreeCutoff::new(d).unwrap()
}

fn engine3() -> &'static ThetaEngine {
    static E: OnceLock<ThetaEngine> = OnceLock::new();
    E.get_or_init(|| ThetaEngine::canonical(cut(3)).unwrap())
}

fn engine4() -> &'static ThetaEngine {
    static E: OnceLock<ThetaEngine> = OnceLock::new();
    E.get_or_init(|| ThetaEngine::canonical(cut(4)).unwrap())
}

/// Classes of small nonnegative degree, so products stay inside the cutoff.
fn class() -> impl Strategy<Value = CurveClass> {
    (0i64..=2, prop::array::uniform6(-1i64..=1))
        .prop_map(|(ell, b)| CurveClass::new(ell, b))
        .prop_filter("degree in 0..4", |c| (0..4).contains(&c.degree()))
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn series(d: u32) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((class(), coeff()), 0..5).prop_map(move |ts| TruncatedSeries::from_terms(cut(d), ts))
}

fn exponent(bound: i64) -> impl Strategy<Value = CoverVector> {
    (-bound..=bound, -bound..=bound).prop_map(|(x, y)| CoverVector::new(x, y))
}

fn laurent(d: u32) -> impl Strategy<Value = LaurentElement> {
    prop::collection::vec((exponent(3), series(d)), 0..4).prop_map(move |ts| {
        let mut e = LaurentElement::zero(cut(d));
        for (m, s) in ts {
            e.add_series(m, &s);
        }
        e
    })
}

fn primitive() -> impl Strategy<Value = CoverVector> {
    exponent(12).prop_filter("primitive", |m| m.is_primitive())
}

fn small_point() -> impl Strategy<Value = LatticePoint> {
    prop::sample::select(LatticePoint::up_to_weight(2).into_iter().filter(|p| !p.is_origin()).collect::<Vec<_>>())
}

fn interior_rays(d: u32) -> Vec<Ray> {
    truncated_diagram(cut(d)).unwrap().rays().iter().filter(|r| !r.is_boundary()).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &TruncatedSeries::zero(cut(4)), a.clone());
        prop_assert_eq!(&a * &TruncatedSeries::one(cut(4)), a);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(3), b in laurent(3), c in laurent(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn units_invert(s in series(4), m in exponent(2)) {
        let mut u = LaurentElement::one(cut(4));
        let positive: TruncatedSeries = TruncatedSeries::from_terms(
            cut(4),
            s.iter().filter(|(c, _)| c.degree() > 0).map(|(c, r)| (*c, r.clone())),
        );
        u.add_series(m, &positive);
        let inv = u.invert_unit().unwrap();
        prop_assert!((&u * &inv).is_one());
        prop_assert_eq!(u.log_unit().unwrap().exp_nilpotent().unwrap(), u);
    }

    #[test]
    fn crossing_back_is_identity(e in laurent(4), pick in any::<prop::sample::Index>()) {
        let rays = interior_rays(4);
        let ray = &rays[pick.index(rays.len())];
        for side in [Side::Left, Side::Right] {
            let there = cross_ray(&e, ray, side).unwrap();
            prop_assert_eq!(cross_ray(&there, ray, side.opposite()).unwrap(), e.clone());
        }
    }

    #[test]
    fn words_reproduce_directions(m in primitive()) {
        let w = sl2_word_for(&m).unwrap();
        let (k, a, b) = m.cone_coords().unwrap();
        prop_assert!(k < 6 && a > 0 && b >= 0);
        prop_assert_eq!(w.apply(&CoverVector::new(1, 0)), m);
        let text = w.to_string();
        let parsed: SL2Word = text.parse().unwrap();
        prop_assert_eq!(parsed.apply(&CoverVector::new(1, 0)), m);
    }

    #[test]
    fn s_is_an_isometry(a in class(), b in class()) {
        let sa = h2_action(&[Letter::S], &a);
        let sb = h2_action(&[Letter::S], &b);
        prop_assert_eq!(intersect(&sa, &sb), intersect(&a, &b));
        prop_assert_eq!(sa.degree(), a.degree());
        prop_assert_eq!(h2_action(&[Letter::S; 6], &a), a);
    }

    #[test]
    fn transported_rays_obey_degree_slope(m in primitive()) {
        let d = cut(5);
        let f = PLFunction::canonical();
        let ds: Vec<PLFunction> = (1..=3).map(|i| PLFunction::boundary(i).unwrap()).collect();
        let ray = canonical_ray(&m, d).unwrap();
        for (x, class, _) in ray.to_laurent().iter() {
            if x.is_zero() {
                continue;
            }
            let v = -x;
            prop_assert_eq!(class.degree(), -f.eval(&v));
            for (j, dj) in ds.iter().enumerate() {
                prop_assert_eq!(intersect(&class, &CurveClass::boundary(j + 1).unwrap()), dj.eval(&v));
            }
        }
        let opposite = canonical_ray(&-m, d).unwrap();
        prop_assert_eq!(ray.function().coeffs(), opposite.function().coeffs());
    }

    #[test]
    fn specialization_is_a_ring_map(a in series(4), b in series(4)) {
        let map = build_specialization();
        prop_assert_eq!(map.specialize(&(&a * &b)), map.specialize(&a).mul(&map.specialize(&b)));
        prop_assert_eq!(map.specialize(&(&a + &b)), map.specialize(&a).add(&map.specialize(&b)));
    }

    #[test]
    fn json_round_trips(c in class(), s in series(4), e in laurent(3), m in primitive(), q in small_point()) {
        let back: CurveClass = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
        let back: TruncatedSeries = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
        let back: LaurentElement = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
        let back: LatticePoint = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        prop_assert_eq!(back, q);
        let w = sl2_word_for(&m).unwrap();
        let back: SL2Word = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        prop_assert_eq!(back.apply(&CoverVector::new(1, 0)), m);
        let ray = canonical_ray(&m, cut(3)).unwrap();
        let back: Ray = serde_json::from_str(&serde_json::to_string(&ray).unwrap()).unwrap();
        prop_assert_eq!(back, ray);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn broken_lines_are_min_convex(q in small_point(), cone in 0usize..6, seed in 0usize..3) {
        let z = generic_point(cone, seed);
        let lines = match engine4().broken_lines(&q, &z) {
            Ok(l) => l,
            Err(cubic_mirror::error::Error::Genericity(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        for line in lines {
            let df = line.f_derivatives();
            for (i, j) in line.junctions.iter().enumerate() {
                prop_assert!(df[i + 1] <= df[i]);
                if j.order > 0 {
                    prop_assert!(df[i + 1] < df[i]);
                }
            }
            prop_assert!(line.final_coefficient().homogeneous_degree().unwrap() < 4);
            prop_assert_eq!(line.segments[0].exponent, q.lift(line.sheet));
            prop_assert!(line.segments[0].coefficient.is_one());
        }
    }

    #[test]
    fn products_respect_the_pl_bound(p1 in small_point(), p2 in small_point()) {
        let f = PLFunction::canonical();
        let fv = |p: &LatticePoint| f.eval(&p.lift(Sheet::First));
        let table = engine3().structure_constants(&p1, &p2).unwrap();
        for (r, alpha) in &table.entries {
            prop_assert!(!alpha.is_zero());
            prop_assert!(alpha.is_integral());
            prop_assert!(fv(r) >= fv(&p1) + fv(&p2));
        }
        let swapped = engine3().structure_constants(&p2, &p1).unwrap();
        prop_assert_eq!(&table.entries, &swapped.entries);
    }

    #[test]
    fn basepoint_choice_is_irrelevant(p1 in small_point(), p2 in small_point(), seed in 1usize..4) {
        let other = ThetaEngine::canonical(cut(3)).unwrap().with_seed(seed);
        let a = engine3().structure_constants(&p1, &p2).unwrap();
        let b = other.structure_constants(&p1, &p2).unwrap();
        prop_assert_eq!(a.entries, b.entries);
    }
}

/// Crossing the boundary ray over `D_2` from the first quadrant agrees with the
/// chart relation `X1 = z^{D2} X2 f X3^{-1}`.
#[test]
fn boundary_crossing_matches_chart_relation() {
    for d in 1..=4 {
        let d = cut(d);
        let rho = canonical_ray(&COVER_RAYS[1], d).unwrap();
        let d2 = CurveClass::boundary(2).unwrap();
        let x = |m: (i64, i64)| LaurentElement::monomial(d, CoverVector::new(m.0, m.1));
        let kink = LaurentElement::from_series(CoverVector::ZERO, TruncatedSeries::monomial(d, d2, rat(1, 1)));
        let x1_image = &(&(&kink * &x((0, 1))) * &rho.to_laurent()) * &x((1, -1));
        for a in 0..=3 {
            for b in 0..=3 {
                let crossed = cross_ray(&x((a, b)), &rho, Side::Right).unwrap();
                let mut chart = x((0, b));
                for _ in 0..a {
                    chart = &chart * &x1_image;
                }
                assert_eq!(crossed, chart, "X1^{a} X2^{b} at d = {}", d.get());
            }
        }
    }
}

#[test]
fn wall_function_log_exp() {
    for m in [CoverVector::new(1, 0), CoverVector::new(1, 1), CoverVector::new(2, 1)] {
        let f = canonical_ray(&m, cut(5)).unwrap().function().clone();
        let back = WallFunction::exp_of(m, cut(5), &f.log().unwrap());
        assert_eq!(back, f);
    }
}
