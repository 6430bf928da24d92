//! Command-line front end. `dispatch` returns the exit code and the text to print,
//! so the binary stays a two-line wrapper and the tests can drive it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::affine::{sl2_word_for, CoverPoint, CoverVector, LatticePoint};
use crate::cayley::verify_cayley;
use crate::error::{Error, Result};
use crate::lattice::{lines_all, lines_meeting, twisted_cubics_triangle, CurveClass};
use crate::notation::{class_label, laurent_pretty, series_pretty};
use crate::oracle::{certify_effective, direct_product_with, enumerate_classes, is_stable, ClassQuery};
use crate::scattering::{truncated_diagram_cached, RayCache};
use crate::series::{DegreeCutoff, TruncatedSeries};
use crate::theta::{generic_point, ThetaEngine};
use crate::{rat, Rational};

/// Environment variable naming the default ray cache directory.
pub const CACHE_ENV: &str = "CUBIC_MIRROR_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cubic-mirror", version, about = "Scattering diagram and theta functions for the cubic surface mirror")]
struct Cli {
    /// Work modulo curve classes of anticanonical degree at least this.
    #[arg(long, global = true, default_value_t = 3)]
    degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached rays.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Print broken lines and intermediate data.
    #[arg(long, global = true)]
    trace: bool,
    /// First entry of the endpoint perturbation schedule.
    #[arg(long, global = true, default_value_t = 0)]
    perturb_seed: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The 27 lines, or those meeting one boundary component.
    Lines {
        #[arg(long)]
        meeting: Option<usize>,
    },
    /// The wall function on one ray.
    Ray {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        dir: Vec<i64>,
    },
    /// Every nontrivial ray of the truncated diagram.
    Diagram,
    /// A theta function at an endpoint.
    Theta {
        #[arg(long)]
        point: LatticePoint,
        /// Endpoint coordinates, rationals like 1/7.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
        at: Option<Vec<Rational>>,
        /// Cover cone used for a default generic endpoint.
        #[arg(long, default_value_t = 0)]
        cone: usize,
    },
    /// Structure constants of a product of two theta functions.
    Product { p1: LatticePoint, p2: LatticePoint },
    /// The cubic relation among the three primitive theta functions.
    Equation,
    /// Constant term of the triple product.
    Frobenius,
    /// Consistency of a theta function across every wall.
    Consistency {
        #[arg(long)]
        point: LatticePoint,
    },
    /// Specialization to the Cayley cubic.
    Cayley,
    /// Naive cross-checks.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Debug, Subcommand)]
enum OracleQuery {
    /// Lines found by exhaustive search.
    Lines,
    /// Cubics of self-intersection 1 meeting each boundary component once.
    Cubics,
    /// Decompose a class, given as `ell b11 b12 b21 b22 b31 b32`, into lines.
    Effective {
        #[arg(num_args = 7, allow_negative_numbers = true, required = true)]
        coords: Vec<i64>,
    },
    /// Compare a product of theta functions with its expansion.
    Product { p1: LatticePoint, p2: LatticePoint },
}

struct Context {
    cutoff: DegreeCutoff,
    format: Format,
    cache: RayCache,
    trace: bool,
    seed: usize,
}

impl Context {
    fn engine(&self) -> Result<ThetaEngine> {
        Ok(ThetaEngine::new(truncated_diagram_cached(self.cutoff, &self.cache)?).with_seed(self.seed))
    }
}

/// Outcome of a subcommand: text, JSON, and whether its verification held.
struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Parse `argv` (program name first) and run. Returns `(exit code, output)`.
pub fn dispatch<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return (e.exit_code(), e.render().to_string()),
    };
    match run(cli) {
        Ok((format, out)) => {
            let code = if out.ok { 0 } else { 1 };
            let body = match format {
                Format::Text => out.text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json")),
            };
            (code, body)
        }
        Err(e) => {
            let code = match e {
                Error::Parse(_)
                | Error::InvalidBoundaryIndex(_)
                | Error::NonPrimitive(_)
                | Error::InvalidCutoff { .. }
                | Error::OriginNotLiftable => 2,
                _ => 1,
            };
            (code, format!("error: {e}\n"))
        }
    }
}

fn run(cli: Cli) -> Result<(Format, Output)> {
    let cache = match &cli.cache {
        Some(dir) => RayCache::on_disk(dir)?,
        None => RayCache::in_memory(),
    };
    let ctx = Context {
        cutoff: DegreeCutoff::new(cli.degree)?,
        format: cli.format,
        cache,
        trace: cli.trace,
        seed: cli.perturb_seed,
    };
    let out = match cli.command {
        Command::Lines { meeting } => lines(meeting)?,
        Command::Ray { dir } => ray(&ctx, CoverVector::new(dir[0], dir[1]))?,
        Command::Diagram => diagram(&ctx)?,
        Command::Theta { point, at, cone } => theta(&ctx, &point, at, cone)?,
        Command::Product { p1, p2 } => product(&ctx, &p1, &p2)?,
        Command::Equation => equation(&ctx)?,
        Command::Frobenius => frobenius(&ctx)?,
        Command::Consistency { point } => consistency(&ctx, &point)?,
        Command::Cayley => cayley(&ctx)?,
        Command::Oracle { query } => oracle(&ctx, query)?,
    };
    Ok((ctx.format, out))
}

fn lines(meeting: Option<usize>) -> Result<Output> {
    let list: Vec<CurveClass> = match meeting {
        Some(i) => lines_meeting(i)?,
        None => lines_all().into_iter().collect(),
    };
    let mut text = String::new();
    for (n, l) in list.iter().enumerate() {
        let meets: Vec<String> = (1..=3)
            .filter(|&i| crate::lattice::intersect(l, &CurveClass::boundary(i).expect("index in range")) == 1)
            .map(|i| format!("D{i}"))
            .collect();
        let label = meeting.map(|i| format!("L{i}{}  ", n + 1)).unwrap_or_default();
        writeln!(text, "{label}{l}  meets {}", meets.join(",")).unwrap();
    }
    writeln!(text, "{} lines", list.len()).unwrap();
    Ok(Output::ok(text, to_json(&list)))
}

fn ray(ctx: &Context, m: CoverVector) -> Result<Output> {
    let r = ctx.cache.get(&m, ctx.cutoff)?;
    let mut text = format!("{}\n", laurent_pretty(&r.to_laurent()));
    if ctx.trace {
        writeln!(text, "word: {}", sl2_word_for(&m)?).unwrap();
        for (k, c) in r.function().coeffs().iter().enumerate().skip(1) {
            if !c.is_zero() {
                writeln!(text, "  t^{k}: {}", series_pretty(c)).unwrap();
            }
        }
    }
    Ok(Output::ok(text, to_json(&r)))
}

fn diagram(ctx: &Context) -> Result<Output> {
    let dg = truncated_diagram_cached(ctx.cutoff, &ctx.cache)?;
    let nontrivial: Vec<_> = dg.rays().iter().filter(|r| !r.is_trivial()).collect();
    let mut text = String::new();
    for r in &nontrivial {
        writeln!(text, "{}: {}", r.direction(), laurent_pretty(&r.to_laurent())).unwrap();
    }
    writeln!(text, "{} nontrivial rays modulo degree {}", nontrivial.len(), ctx.cutoff.get()).unwrap();
    Ok(Output::ok(text, json!({ "cutoff": ctx.cutoff, "rays": to_json(&nontrivial) })))
}

fn theta(ctx: &Context, q: &LatticePoint, at: Option<Vec<Rational>>, cone: usize) -> Result<Output> {
    if cone >= 6 {
        return Err(Error::Parse(format!("cone index {cone} out of range 0..6")));
    }
    let engine = ctx.engine()?;
    let (endpoint, lines) = match at {
        Some(v) => {
            let p = CoverPoint::new(v[0].clone(), v[1].clone());
            let lines = engine.broken_lines(q, &p)?;
            (p, lines)
        }
        None => engine.first_generic(|s| generic_point(cone, s), |p| engine.broken_lines(q, p))?,
    };
    let theta = engine.theta_at(q, &endpoint)?;
    let mut text = format!("theta_{q} at {endpoint}: {}\n", laurent_pretty(&theta));
    if ctx.trace {
        for (n, l) in lines.iter().enumerate() {
            let bends: Vec<String> = l
                .junctions
                .iter()
                .filter(|j| j.order > 0)
                .map(|j| format!("{}^{}", j.ray, j.order))
                .collect();
            writeln!(
                text,
                "  line {n}: {} x^{} bends [{}]",
                series_pretty(l.final_coefficient()),
                l.final_exponent(),
                bends.join(" ")
            )
            .unwrap();
        }
    }
    let json = json!({ "point": q, "endpoint": endpoint, "theta": theta, "broken_lines": to_json(&lines) });
    Ok(Output::ok(text, json))
}

fn product(ctx: &Context, p1: &LatticePoint, p2: &LatticePoint) -> Result<Output> {
    let table = ctx.engine()?.structure_constants(p1, p2)?;
    let mut text = format!("theta_{p1} * theta_{p2} =\n");
    for (r, a) in &table.entries {
        writeln!(text, "  ({}) theta_{r}", series_pretty(a)).unwrap();
        if ctx.trace {
            writeln!(text, "    basepoint {}", table.basepoints[r]).unwrap();
        }
    }
    Ok(Output::ok(text, to_json(&table)))
}

fn equation(ctx: &Context) -> Result<Output> {
    let report = ctx.engine()?.verify_mirror_equation()?;
    let mut text = format!("{} cubic relation modulo degree {}\n", verdict(report.passed()), ctx.cutoff.get());
    for (k, s) in &report.found {
        writeln!(text, "  {k}: {}", series_pretty(s)).unwrap();
    }
    if !report.residual.is_zero() {
        writeln!(text, "residual: {}", laurent_pretty(&report.residual)).unwrap();
    }
    if report.found != report.expected {
        for (k, s) in &report.expected {
            writeln!(text, "  expected {k}: {}", series_pretty(s)).unwrap();
        }
    }
    let ok = report.passed();
    let json = json!({
        "cutoff": report.cutoff,
        "passed": ok,
        "endpoint": report.endpoint,
        "residual": report.residual.terms_json(),
        "coefficients": report.found,
        "expected": report.expected,
    });
    Ok(Output { text, json, ok })
}

/// The constant term predicted for the triple product.
pub fn expected_frobenius(d: DegreeCutoff) -> TruncatedSeries {
    let mut s = TruncatedSeries::sum_of(d, twisted_cubics_triangle());
    s.add_term(CurveClass::anticanonical(), rat(10, 1));
    s
}

fn frobenius(ctx: &Context) -> Result<Output> {
    let found = ctx.engine()?.frobenius_constant_term()?;
    let expected = expected_frobenius(ctx.cutoff);
    let ok = found == expected;
    let text = format!(
        "{} constant term modulo degree {}: {}\n",
        verdict(ok),
        ctx.cutoff.get(),
        series_pretty(&found)
    );
    Ok(Output { text, json: json!({ "cutoff": ctx.cutoff, "found": found, "expected": expected, "passed": ok }), ok })
}

fn consistency(ctx: &Context, q: &LatticePoint) -> Result<Output> {
    let report = ctx.engine()?.verify_consistency(q)?;
    let mut text = format!(
        "{} consistency of theta_{q} modulo degree {}: {} checks\n",
        verdict(report.passed),
        ctx.cutoff.get(),
        report.checks.len()
    );
    for c in report.checks.iter().filter(|c| ctx.trace || !c.passed) {
        writeln!(text, "  {} {}", verdict(c.passed), c.description).unwrap();
    }
    let ok = report.passed;
    Ok(Output { text, json: to_json(&report), ok })
}

fn cayley(ctx: &Context) -> Result<Output> {
    let report = verify_cayley(ctx.cutoff)?;
    let ok = report.passed();
    let mut text = format!("{} Cayley specialization modulo degree {}\n", verdict(ok), ctx.cutoff.get());
    if report.all_rays_trivial && report.constant_matches {
        writeln!(text, "all walls trivial; constant = -4 z^{{D1+D2+D3}}").unwrap();
    }
    writeln!(text, "invariant factors {:?}", report.invariant_factors).unwrap();
    for r in report.rays.iter().filter(|r| ctx.trace || !r.is_trivial()) {
        let terms: Vec<String> = r.coeffs.iter().enumerate().map(|(k, c)| format!("({c}) t^{k}")).collect();
        writeln!(text, "  ray {}: {}", r.direction, terms.join(" + ")).unwrap();
    }
    for (k, s) in &report.coefficients {
        writeln!(text, "  {k}: {s}").unwrap();
    }
    writeln!(text, "residual terms: {}", report.residual_terms).unwrap();
    Ok(Output { text, json: to_json(&report), ok })
}

fn oracle(ctx: &Context, query: OracleQuery) -> Result<Output> {
    match query {
        OracleQuery::Lines | OracleQuery::Cubics => {
            let (q, expected, what) = match query {
                OracleQuery::Lines => (ClassQuery::lines(), lines_all(), "lines"),
                _ => (ClassQuery::triangle_cubics(), twisted_cubics_triangle(), "cubics"),
            };
            let found = enumerate_classes(&q);
            let stable = is_stable(&q);
            let ok = stable && found == expected;
            let mut text = format!("{} {} {what} by exhaustive search, stable: {stable}\n", verdict(ok), found.len());
            if ctx.trace {
                for c in &found {
                    writeln!(text, "  {c}").unwrap();
                }
            }
            Ok(Output { text, json: json!({ "classes": found, "stable": stable, "passed": ok }), ok })
        }
        OracleQuery::Effective { coords } => {
            let a: [i64; 7] = coords.try_into().map_err(|_| Error::Parse("expected 7 integers".into()))?;
            let class = CurveClass::from_array(a);
            let cert = certify_effective(&class);
            let text = match &cert {
                Some(ls) => {
                    let parts: Vec<String> = ls.iter().map(|l| format!("({l})")).collect();
                    format!("{} = {}\n", class_label(&class), if parts.is_empty() { "0".into() } else { parts.join(" + ") })
                }
                None => format!("{class}: no decomposition into lines\n"),
            };
            let ok = cert.is_some();
            Ok(Output { text, json: json!({ "class": class, "lines": cert }), ok })
        }
        OracleQuery::Product { p1, p2 } => {
            let cmp = direct_product_with(&ctx.engine()?, &p1, &p2)?;
            let text = format!(
                "{} theta_{p1} * theta_{p2} at {}: {} terms\n",
                verdict(cmp.equal),
                cmp.endpoint,
                cmp.lhs.num_terms()
            );
            let ok = cmp.equal;
            Ok(Output { text, json: to_json(&cmp), ok })
        }
    }
}
