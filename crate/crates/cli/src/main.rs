use std::io::Read;
use std::process::ExitCode;

use afflat_core::affine::{affine_equiv, affine_invariant};
use afflat_core::angle::{angle_equiv, angle_inv, tri_equiv, tri_inv};
use afflat_core::cone::{desingularize, Cone};
use afflat_core::conic::{classify, ConicClass, RationalEllipse};
use afflat_core::ellipse::{ell_inv_within, ellipse_equiv_within};
use afflat_core::io;
use afflat_core::polyhedra::{poly_equiv, Polyhedron};
use afflat_core::segment::{hj, lambda1, segment_equiv, side_inv};
use afflat_core::{Error, Limits};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const DEFAULT_MAX_DEN: u64 = 64;

#[derive(Parser)]
#[command(name = "afflat", version, about = "Orbit invariants and orbit decisions for GL(n,Z) ⋉ Z^n")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Affine,
    Segment,
    Angle,
    Triangle,
    Ellipse,
    Polyhedron,
    Cone,
}

#[derive(Subcommand)]
enum Verb {
    /// Complete invariant of an object.
    Invariant {
        #[arg(long, value_enum)]
        kind: Kind,
        /// JSON input file, or `-` for stdin.
        input: String,
    },
    /// Decide whether two objects share an orbit and emit a witness map.
    Equiv {
        #[arg(long, value_enum)]
        kind: Kind,
        first: String,
        second: String,
    },
    /// Hirzebruch–Jung chain of a segment.
    Hj { input: String },
    /// Invariant length of a segment.
    Lambda1 { input: String },
    /// Classify a rational conic.
    ClassifyConic { input: String },
    /// Regular subdivision of a rational cone.
    Desingularize { input: String },
    /// Apply a map to an object.
    Apply {
        #[arg(long, value_enum)]
        kind: Kind,
        map: String,
        input: String,
    },
}

/// A result carrying its exit status.
struct Outcome {
    code: u8,
    body: Value,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { code: 0, body }
    }
}

fn failure(e: &Error) -> Outcome {
    let (code, kind) = match e {
        Error::NotInClass(_) => (3, "not-in-class"),
        Error::Internal(_) => (4, "internal"),
        Error::ResourceExceeded(_) => (5, "resource bound exceeded"),
        _ => (2, "malformed input"),
    };
    Outcome {
        code,
        body: json!({ "error": kind, "detail": e.to_string() }),
    }
}

fn read_json(path: &str) -> Result<Value, Error> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    }
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))
}

fn limits() -> Result<Limits, Error> {
    match std::env::var("AFFLAT_MAX_DEN") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&d| d > 0)
            .map(Limits::with_max_den)
            .ok_or_else(|| Error::InvalidInput(format!("AFFLAT_MAX_DEN must be a positive integer, got {v:?}"))),
        Err(_) => Ok(Limits::with_max_den(DEFAULT_MAX_DEN)),
    }
}

fn ellipse(v: &Value) -> Result<RationalEllipse, Error> {
    RationalEllipse::new(io::parse_conic(v)?)
}

fn polyhedron(v: &Value, limits: &Limits) -> Result<Polyhedron, Error> {
    let p = io::parse_polyhedron(v)?;
    for x in p.vertices() {
        limits.check_den(&x.den(), "the polyhedron search")?;
    }
    Ok(p)
}

fn unsupported(verb: &str, kind: Kind) -> Error {
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    Error::InvalidInput(format!("{verb} is not available for kind {name}"))
}

fn invariant(kind: Kind, v: &Value, limits: &Limits) -> Result<Value, Error> {
    Ok(match kind {
        Kind::Affine => io::affine_inv_json(&affine_invariant(&io::parse_affine(v)?)?),
        Kind::Segment => io::side_inv_json(&side_inv(&io::parse_segment(v)?)?),
        Kind::Angle => io::angle_inv_json(&angle_inv(&io::parse_angle(v)?)?),
        Kind::Triangle => io::tri_inv_json(&tri_inv(&io::parse_triangle(v)?)?),
        Kind::Ellipse => {
            let (d, inv) = ell_inv_within(&ellipse(v)?, limits)?;
            io::ell_inv_json(&d, &inv)
        }
        Kind::Polyhedron | Kind::Cone => return Err(unsupported("invariant", kind)),
    })
}

fn equiv(kind: Kind, a: &Value, b: &Value, limits: &Limits) -> Result<Value, Error> {
    let g = match kind {
        Kind::Affine => affine_equiv(&io::parse_affine(a)?, &io::parse_affine(b)?)?,
        Kind::Segment => segment_equiv(&io::parse_segment(a)?, &io::parse_segment(b)?)?,
        Kind::Angle => angle_equiv(&io::parse_angle(a)?, &io::parse_angle(b)?)?,
        Kind::Triangle => tri_equiv(&io::parse_triangle(a)?, &io::parse_triangle(b)?)?,
        Kind::Ellipse => ellipse_equiv_within(&ellipse(a)?, &ellipse(b)?, limits)?,
        Kind::Polyhedron => poly_equiv(&polyhedron(a, limits)?, &polyhedron(b, limits)?)?,
        Kind::Cone => return Err(unsupported("equiv", kind)),
    };
    Ok(io::equiv_json(g.as_ref()))
}

fn apply(kind: Kind, m: &Value, v: &Value) -> Result<Value, Error> {
    let g = io::parse_map(m)?;
    Ok(match kind {
        Kind::Affine => json!({ "points": io::points_json(&g.apply_all(&io::parse_points(v)?)?) }),
        Kind::Segment => io::segment_json(&io::parse_segment(v)?.image(&g)?),
        Kind::Angle => io::angle_json(&io::parse_angle(v)?.image(&g)?),
        Kind::Triangle => io::triangle_json(&io::parse_triangle(v)?.image(&g)?),
        Kind::Ellipse => io::conic_json(&io::parse_conic(v)?.image(&g)?),
        Kind::Polyhedron => io::polyhedron_json(&io::parse_polyhedron(v)?.image(&g)?),
        Kind::Cone => {
            let c = io::parse_cone(v)?;
            let gens = c
                .generators()
                .iter()
                .map(|x| afflat_core::linalg::mat_vec_int(g.matrix(), x))
                .collect();
            io::cone_json(&Cone::new(gens)?)
        }
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let limits = limits()?;
    Ok(match &cli.verb {
        Verb::Invariant { kind, input } => Outcome::ok(invariant(*kind, &read_json(input)?, &limits)?),
        Verb::Equiv { kind, first, second } => {
            Outcome::ok(equiv(*kind, &read_json(first)?, &read_json(second)?, &limits)?)
        }
        Verb::Hj { input } => Outcome::ok(json!({
            "vertices": io::points_json(&hj(&io::parse_segment(&read_json(input)?)?).vertices)
        })),
        Verb::Lambda1 { input } => Outcome::ok(json!({
            "lambda1": io::rat_json(&lambda1(&io::parse_segment(&read_json(input)?)?))
        })),
        Verb::ClassifyConic { input } => {
            let class = classify(&io::parse_conic(&read_json(input)?)?)?;
            Outcome {
                code: if class == ConicClass::EllipseInE { 0 } else { 3 },
                body: json!({ "class": class.as_str() }),
            }
        }
        Verb::Desingularize { input } => Outcome::ok(io::fan_json(&desingularize(&io::parse_cone(&read_json(input)?)?))),
        Verb::Apply { kind, map, input } => Outcome::ok(apply(*kind, &read_json(map)?, &read_json(input)?)?),
    })
}

/// Plain rendering with `⁄` as the fraction slash.
fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if matches!(x, Value::Object(_)) || is_nested_array(x) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                }
            }
        }
        Value::Array(items) if is_nested_array(v) => {
            for x in items {
                if matches!(x, Value::Object(_)) {
                    out.push_str(&format!("{pad}-\n"));
                    text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{}\n", inline(x)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn is_nested_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace('/', "\u{2044}"),
        Value::Array(items) => format!("({})", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).unwrap_or_else(|e| failure(&e));
    let rendered = match cli.format {
        Format::Json => serde_json::to_string(&outcome.body).expect("values serialize") + "\n",
        Format::Text => {
            let mut s = String::new();
            text(&outcome.body, 0, &mut s);
            s
        }
    };
    print!("{rendered}");
    ExitCode::from(outcome.code)
}
