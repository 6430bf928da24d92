//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use cubic_mirror::affine::{CoverVector, LatticePoint, PLFunction, Sheet, COVER_RAYS};
use cubic_mirror::cayley::verify_cayley;
use cubic_mirror::lattice::{h2_action, intersect, lines_all, lines_meeting, twisted_cubics_triangle, CurveClass, Letter};
use cubic_mirror::oracle::{direct_product_oracle, enumerate_classes, is_stable, ClassQuery};
use cubic_mirror::rat;
use cubic_mirror::scattering::{canonical_ray, truncated_diagram};
use cubic_mirror::series::{cross_ray, log_ray_invariants, DegreeCutoff, LaurentElement, Side, TruncatedSeries};
use cubic_mirror::theta::{generic_point, ThetaEngine};

type Check = Result<String, String>;

fn cut(d: u32) -> DegreeCutoff {
    DegreeCutoff::new(d).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pt(s: &str) -> LatticePoint {
    s.parse().unwrap()
}

/// Boundary classes from raw coordinates, independent of the library constructor.
fn boundary(i: usize) -> CurveClass {
    let mut a = [1, 0, 0, 0, 0, 0, 0];
    a[2 * i - 1] = 1;
    a[2 * i] = 1;
    CurveClass::from_array(a)
}

fn anticanonical() -> CurveClass {
    boundary(1) + boundary(2) + boundary(3)
}

fn oracle_lines(i: usize) -> Vec<CurveClass> {
    enumerate_classes(&ClassQuery::lines_meeting(i)).into_iter().collect()
}

fn oracle_cubics() -> Vec<CurveClass> {
    enumerate_classes(&ClassQuery::triangle_cubics()).into_iter().collect()
}

fn mono(d: DegreeCutoff, c: CurveClass, k: i64) -> TruncatedSeries {
    TruncatedSeries::monomial(d, c, rat(k, 1))
}

fn shifted_sum(d: DegreeCutoff, base: CurveClass, classes: &[CurveClass]) -> TruncatedSeries {
    TruncatedSeries::sum_of(d, classes.iter().map(|c| base + *c))
}

fn cubic_constant(d: DegreeCutoff, k: i64) -> TruncatedSeries {
    &TruncatedSeries::sum_of(d, oracle_cubics()) + &mono(d, anticanonical(), k)
}

fn mirror_equation() -> Check {
    let d = cut(4);
    let report = ThetaEngine::canonical(d).map_err(|e| e.to_string())?.verify_mirror_equation().map_err(|e| e.to_string())?;
    let mut expected = BTreeMap::new();
    for i in 1..=3 {
        expected.insert(format!("theta{i}^2"), mono(d, boundary(i), 1));
        expected.insert(format!("theta{i}"), shifted_sum(d, boundary(i), &oracle_lines(i)));
    }
    expected.insert("1".to_string(), cubic_constant(d, 4));
    ensure(report.residual.is_zero(), format!("residual has {} terms", report.residual.num_terms()))?;
    ensure(report.found == expected, "coefficient dictionary differs")?;
    ensure(report.lhs == report.rhs, "sides differ")?;
    Ok(format!("residual 0, {} coefficients match at d=4", expected.len()))
}

fn table(engine: &ThetaEngine, a: &str, b: &str) -> Result<BTreeMap<LatticePoint, TruncatedSeries>, String> {
    Ok(engine.structure_constants(&pt(a), &pt(b)).map_err(|e| e.to_string())?.entries)
}

fn product_tables() -> Check {
    let d = cut(4);
    let engine = ThetaEngine::canonical(d).map_err(|e| e.to_string())?;
    for (i, j, k) in [(1, 2, 3), (2, 1, 3), (3, 1, 2)] {
        let v = format!("v{i}");
        let expected = BTreeMap::from([
            (pt(&format!("2v{i}")), TruncatedSeries::one(d)),
            (LatticePoint::ORIGIN, mono(d, boundary(j) + boundary(k), 2)),
        ]);
        ensure(table(&engine, &v, &v)? == expected, format!("theta_{v}^2"))?;
    }
    let expected = BTreeMap::from([
        (pt("v1+v2"), TruncatedSeries::one(d)),
        (pt("v3"), mono(d, boundary(3), 1)),
        (LatticePoint::ORIGIN, shifted_sum(d, boundary(3), &oracle_lines(3))),
    ]);
    ensure(table(&engine, "v1", "v2")? == expected, "theta_v1 theta_v2")?;
    let expected = BTreeMap::from([
        (pt("2v1"), mono(d, boundary(1), 1)),
        (pt("2v2"), mono(d, boundary(2), 1)),
        (pt("v1"), shifted_sum(d, boundary(1), &oracle_lines(1))),
        (pt("v2"), shifted_sum(d, boundary(2), &oracle_lines(2))),
        (LatticePoint::ORIGIN, cubic_constant(d, 8)),
    ]);
    ensure(table(&engine, "v1+v2", "v3")? == expected, "theta_{v1+v2} theta_v3")?;
    Ok("squares, v1 v2 and (v1+v2) v3 match at d=4".into())
}

fn symmetry_transport() -> Check {
    let d = cut(6);
    let diag = CoverVector::new(1, 1);
    let ray = canonical_ray(&diag, d).map_err(|e| e.to_string())?;
    let x = |k: i64| LaurentElement::monomial(d, CoverVector::new(-k, -k));
    let mut numerator = LaurentElement::one(d);
    for l in oracle_lines(3) {
        let term = &LaurentElement::one(d) + &x(1).scale_series(&mono(d, boundary(3) + l, 1));
        numerator = &numerator * &term;
    }
    let base = &LaurentElement::one(d) - &x(2).scale_series(&mono(d, boundary(1) + boundary(2) + 2 * boundary(3), 1));
    let denominator = &(&base * &base) * &(&base * &base);
    let explicit = &numerator * &denominator.invert_unit().map_err(|e| e.to_string())?;
    ensure(ray.to_laurent() == explicit, "(1,1) ray differs from the closed form")?;

    let rho1 = canonical_ray(&COVER_RAYS[0], d).map_err(|e| e.to_string())?.to_laurent();
    let rho2 = canonical_ray(&COVER_RAYS[1], d).map_err(|e| e.to_string())?.to_laurent();
    let rotated = rho1.map_exponents(|m| CoverVector::new(-m.y, m.x + m.y)).map_classes(d, |c| h2_action(&[Letter::S], c));
    ensure(rho2 == rotated, "f_rho2 is not the S-image of f_rho1")?;
    Ok(format!("(1,1) ray equals closed form ({} terms) and rotation holds at d=6", explicit.num_terms()))
}

fn enumerative_invariants() -> Check {
    let d = cut(4);
    let n = log_ray_invariants(canonical_ray(&COVER_RAYS[0], d).map_err(|e| e.to_string())?.function())
        .map_err(|e| e.to_string())?;
    let get = |k: u32, c: CurveClass| n.get(&(k, c)).cloned().unwrap_or_else(|| rat(0, 1));
    let lines = oracle_lines(1);
    for l in &lines {
        ensure(get(1, *l) == rat(1, 1), format!("N(1, {l}) = {}", get(1, *l)))?;
        ensure(get(2, 2 * *l) == rat(-1, 4), format!("N(2, 2({l})) = {}", get(2, 2 * *l)))?;
    }
    let conic = boundary(2) + boundary(3);
    ensure(get(2, conic) == rat(2, 1), format!("N(2, D2+D3) = {}", get(2, conic)))?;
    let contact_one = n.keys().filter(|(k, _)| *k == 1).count();
    ensure(contact_one == 8, format!("{contact_one} contact-one classes"))?;
    Ok("N = 1 on 8 lines, 2 on D2+D3, -1/4 on doubled lines".into())
}

fn consistency() -> Check {
    let engine = ThetaEngine::canonical(cut(3)).map_err(|e| e.to_string())?;
    let mut checks = 0;
    for q in ["v1", "v2", "v3", "2v1", "v1+v2"] {
        let report = engine.verify_consistency(&pt(q)).map_err(|e| e.to_string())?;
        ensure(report.passed, format!("theta_{q}: {:?}", report.first_counterexample))?;
        checks += report.checks.len();
    }
    Ok(format!("5 theta functions, {checks} wall checks at d=3"))
}

fn cayley() -> Check {
    let report = verify_cayley(cut(4)).map_err(|e| e.to_string())?;
    ensure(report.all_rays_trivial, "a ray survives specialization")?;
    ensure(report.constant_matches, "constant differs from -4 z^{D1+D2+D3}")?;
    ensure(report.expected_constant == mono(cut(4), anticanonical(), -4), "wrong reference constant")?;
    ensure(report.linear_terms_vanish, "linear terms survive")?;
    ensure(report.residual_terms == 0, format!("{} residual terms", report.residual_terms))?;
    ensure(report.passed(), "report failed")?;
    Ok(format!("{} rays trivial, residual 0, constant -4 z^(D1+D2+D3) at d=4", report.rays.len()))
}

fn counts() -> Check {
    let lines = enumerate_classes(&ClassQuery::lines());
    ensure(lines.len() == 27 && lines == lines_all(), format!("{} lines", lines.len()))?;
    for i in 1..=3 {
        let family = oracle_lines(i);
        ensure(family.len() == 8, format!("{} lines meet D{i}", family.len()))?;
        ensure(family == lines_meeting(i).unwrap(), format!("line family {i} differs"))?;
    }
    let cubics = oracle_cubics();
    ensure(cubics.len() == 24, format!("{} cubics", cubics.len()))?;
    ensure(cubics.iter().copied().collect::<std::collections::BTreeSet<_>>() == twisted_cubics_triangle(), "cubics differ")?;
    let family = oracle_lines(1);
    let mut pairs = Vec::new();
    for a in 0..8 {
        for b in a + 1..8 {
            if intersect(&family[a], &family[b]) == 1 {
                pairs.push((a, b));
            }
        }
    }
    let mut covered: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    covered.sort_unstable();
    ensure(pairs.len() == 4 && covered == (0..8).collect::<Vec<_>>(), format!("{} meeting pairs", pairs.len()))?;
    for q in [ClassQuery::lines(), ClassQuery::lines_meeting(1), ClassQuery::triangle_cubics()] {
        ensure(is_stable(&q), "enumeration changes under widening")?;
    }
    Ok("27 lines, 8 per D_i, 24 cubics, 4 meeting pairs, all stable".into())
}

fn frobenius() -> Check {
    let d = cut(4);
    let found = ThetaEngine::canonical(d).map_err(|e| e.to_string())?.frobenius_constant_term().map_err(|e| e.to_string())?;
    ensure(found == cubic_constant(d, 10), format!("found {found}"))?;
    Ok("constant term = sum of 24 cubics + 10 z^(D1+D2+D3) at d=4".into())
}

fn property_suites() -> Check {
    let f = PLFunction::canonical();
    let ds: Vec<PLFunction> = (1..=3).map(|i| PLFunction::boundary(i).unwrap()).collect();
    let mut terms = 0;
    for r in truncated_diagram(cut(6)).map_err(|e| e.to_string())?.rays() {
        for (x, class, _) in r.to_laurent().iter() {
            if x.is_zero() {
                continue;
            }
            let v = -x;
            ensure(class.degree() == -f.eval(&v) && class.degree() > 0, format!("degree of {class} on {}", r.direction()))?;
            for (j, dj) in ds.iter().enumerate() {
                ensure(intersect(&class, &boundary(j + 1)) == dj.eval(&v), format!("{class} . D{}", j + 1))?;
            }
            terms += 1;
        }
    }

    let d = cut(4);
    let engine = ThetaEngine::canonical(d).map_err(|e| e.to_string())?;
    let mut lines = 0;
    for q in LatticePoint::up_to_weight(3).into_iter().filter(|q| !q.is_origin()) {
        for cone in 0..6 {
            let (_, found) = engine
                .first_generic(|s| generic_point(cone, s), |z| engine.broken_lines(&q, z))
                .map_err(|e| e.to_string())?;
            for line in found {
                let df = line.f_derivatives();
                for (i, j) in line.junctions.iter().enumerate() {
                    ensure(df[i + 1] <= df[i], format!("F increases along a line for {q}"))?;
                    ensure(j.order == 0 || df[i + 1] < df[i], format!("bend without decrease for {q}"))?;
                }
                lines += 1;
            }
        }
    }

    let fv = |p: &LatticePoint| f.eval(&p.lift(Sheet::First));
    let listed = ["v1", "v2", "v3", "2v1", "v1+v2"];
    for a in listed {
        for b in listed {
            for (r, alpha) in table(&engine, a, b)? {
                ensure(!alpha.is_zero() && fv(&r) >= fv(&pt(a)) + fv(&pt(b)), format!("bound fails for {a} {b} -> {r}"))?;
            }
        }
    }

    let mut crossings = 0;
    for ray in truncated_diagram(d).map_err(|e| e.to_string())?.rays().iter().filter(|r| !r.is_boundary()) {
        for x in -4..=4 {
            for y in -4..=4 {
                let e = LaurentElement::monomial(d, CoverVector::new(x, y));
                for side in [Side::Left, Side::Right] {
                    let there = cross_ray(&e, ray, side).map_err(|e| e.to_string())?;
                    let back = cross_ray(&there, ray, side.opposite()).map_err(|e| e.to_string())?;
                    ensure(back == e, format!("crossing {} is not inverted", ray.direction()))?;
                    crossings += 1;
                }
            }
        }
    }

    for (i, a) in listed.iter().enumerate() {
        for b in &listed[i..] {
            let cmp = direct_product_oracle(&pt(a), &pt(b), cut(3)).map_err(|e| e.to_string())?;
            ensure(cmp.equal, format!("direct product differs for {a} {b}"))?;
        }
    }
    Ok(format!("{terms} wall terms, {lines} broken lines, 25 tables, {crossings} crossings, 15 direct products"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("mirror equation", mirror_equation),
        ("product tables", product_tables),
        ("symmetry transport", symmetry_transport),
        ("enumerative invariants", enumerative_invariants),
        ("consistency", consistency),
        ("Cayley specialization", cayley),
        ("line and cubic counts", counts),
        ("Frobenius constant term", frobenius),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{secs:.1}s]", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.1}s]", n + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
