//! JSON request front end: one request in, one JSON document out, exit
//! codes 0 (success), 2 (a check came back negative) and 3 (bad input).

mod expr;
pub mod json;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{CatalogError, REGISTRY};
use crate::exactfield::{parse_rational, FieldError, Rational, TowerElem};
use crate::geom::{random_rational_sphere_point, GeomError, ProjPoint};
use crate::polyrat::{compose, maps_equal, MapEquality, Point, PolyError, RationalMap, Surface};
use crate::regulous::{
    builtin, eval_regulous, k_regulous_check, KRegResult, Limit, RegError, RegFunction, RegValue, DEFAULT_PENCIL,
};
use crate::twist::{
    dehn_twist_map, interpolate_circle, transitivity_solve_with, twist_inverse, winding_number, SolveOptions,
    TwistError, TwistingMap,
};

pub use expr::parse_map_expr;
use json::*;

pub const COMMANDS: &[&str] = &[
    "catalog",
    "apply",
    "compose",
    "invert-twist",
    "verify",
    "solve",
    "interp-circle",
    "dehn",
    "regulous-eval",
];

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid payload: {0}")]
    Schema(String),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("map expression: {0}")]
    Grammar(String),
    #[error("cannot encode {0}")]
    Unencodable(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Regulous(#[from] RegError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl CliError {
    /// Machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Json(_) => "invalid_json",
            CliError::Schema(_) => "invalid_payload",
            CliError::UnknownCommand(_) => "unknown_command",
            CliError::Grammar(_) => "grammar",
            CliError::Unencodable(_) => "unencodable",
            CliError::Io(_) => "io",
            CliError::Catalog(CatalogError::UnknownName(_)) => "unknown_name",
            CliError::Catalog(_) => "catalog",
            CliError::Poly(PolyError::SurfaceMismatch(_)) => "surface_mismatch",
            CliError::Poly(PolyError::UnknownSurface(_)) => "unknown_surface",
            CliError::Poly(PolyError::Parse(_)) => "parse",
            CliError::Poly(PolyError::Indeterminate | PolyError::DenominatorZero) => "indeterminate",
            CliError::Poly(_) => "poly",
            CliError::Twist(TwistError::DuplicateInput(_)) => "duplicate_input",
            CliError::Twist(TwistError::SearchExhausted { .. }) => "search_exhausted",
            CliError::Twist(_) => "twist",
            CliError::Regulous(RegError::UnknownName(_)) => "unknown_name",
            CliError::Regulous(_) => "regulous",
            CliError::Field(_) => "field",
            CliError::Geom(_) => "geom",
        }
    }
}

/// Module knobs forwarded from the command line.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub pencil: Option<usize>,
    pub height_cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub code: i32,
    pub body: Value,
}

impl Response {
    fn ok(body: Value) -> Self {
        Response { code: EXIT_OK, body }
    }

    fn checked(pass: bool, body: Value) -> Self {
        Response {
            code: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
            body,
        }
    }

    fn error(e: &CliError) -> Self {
        Response {
            code: EXIT_INVALID,
            body: json!({ "error": e.code(), "detail": e.to_string() }),
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// Runs `{"command": ..., "payload": ...}`.
pub fn run(request: &Value, opts: &RunOptions) -> Response {
    let Some(command) = request.get("command").and_then(Value::as_str) else {
        return Response::error(&CliError::Schema("request needs a \"command\" string".into()));
    };
    let payload = request.get("payload").cloned().unwrap_or_else(|| json!({}));
    run_command(command, &payload, opts)
}

pub fn run_command(command: &str, payload: &Value, opts: &RunOptions) -> Response {
    let out = match command {
        "catalog" => catalog(payload),
        "apply" => apply(payload),
        "compose" => compose_cmd(payload),
        "invert-twist" => invert_twist(payload),
        "verify" => verify(payload, opts),
        "solve" => solve(payload, opts),
        "interp-circle" => interp_circle(payload),
        "dehn" => dehn(payload),
        "regulous-eval" => regulous_eval(payload, opts),
        other => Err(CliError::UnknownCommand(other.to_string())),
    };
    out.unwrap_or_else(|e| Response::error(&e))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::Schema(format!("payload needs {key:?}")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, CliError> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| CliError::Schema(format!("{key:?} must be an array")))
}

fn map_arg(v: &Value) -> Result<RationalMap, CliError> {
    match v {
        Value::String(s) => parse_map_expr(s),
        Value::Object(_) => map_from_json(v),
        other => Err(CliError::Schema(format!("expected a map expression, got {other}"))),
    }
}

fn catalog(p: &Value) -> Result<Response, CliError> {
    match p.get("name").and_then(Value::as_str) {
        None => Ok(Response::ok(json!({ "names": REGISTRY }))),
        Some(name) => {
            let m = parse_map_expr(name)?;
            Ok(Response::ok(json!({ "name": name, "map": map_to_json(&m)? })))
        }
    }
}

fn apply(p: &Value) -> Result<Response, CliError> {
    let m = map_arg(field(p, "map")?)?;
    let pt = point_from_json(field(p, "point")?, m.source())?;
    let image = m.evaluate(&pt)?;
    Ok(Response::ok(json!({ "point": point_to_json(&image) })))
}

fn compose_cmd(p: &Value) -> Result<Response, CliError> {
    let g = map_arg(field(p, "g")?)?;
    let f = map_arg(field(p, "f")?)?;
    Ok(Response::ok(json!({ "map": map_to_json(&compose(&g, &f)?)? })))
}

fn undoes(t: &TwistingMap, inv: &TwistingMap) -> Result<bool, CliError> {
    let both = compose(&inv.realized(), &t.realized())?;
    Ok(maps_equal(&both, &RationalMap::identity(Surface::Sphere))?.is_equal())
}

fn invert_twist(p: &Value) -> Result<Response, CliError> {
    let t = twist_from_json(p.get("twist").unwrap_or(p))?;
    let inv = twist_inverse(&t);
    let cert = undoes(&t, &inv)?;
    Ok(Response::checked(cert, json!({ "twist": twist_to_json(&inv), "certificate": cert })))
}

fn random_point<R: Rng>(s: Surface, rng: &mut R) -> Point {
    let mut ints = |n: usize| -> Vec<TowerElem> { (0..n).map(|_| TowerElem::from_int(rng.gen_range(-20..=20))).collect() };
    match s {
        Surface::Sphere => Point::sphere(&random_rational_sphere_point(rng, 20)),
        Surface::A2 => Point::Affine(ints(2)),
        Surface::P2 => Point::Proj(ProjPoint::new(ints(3)).unwrap_or_else(|_| ProjPoint::from_ints(&[1, 1, 1]).unwrap())),
        Surface::Quadric => {
            let sp = random_rational_sphere_point(rng, 20);
            let mut c = vec![TowerElem::one()];
            c.extend(sp.coords().iter().cloned());
            Point::Proj(ProjPoint::new(c).expect("w = 1"))
        }
        Surface::P1xP1 => {
            let mut block = || {
                let b = ints(2);
                if b.iter().all(TowerElem::is_zero) {
                    vec![TowerElem::one(), TowerElem::zero()]
                } else {
                    b
                }
            };
            Point::Proj(ProjPoint::with_blocks(vec![block(), block()]).expect("nonzero blocks"))
        }
        Surface::BlowupChart => {
            let b = ints(2);
            let dir = if b.iter().all(TowerElem::is_zero) { vec![TowerElem::one(), TowerElem::zero()] } else { b.clone() };
            Point::Chart {
                base: [b[0].clone(), b[1].clone()],
                dir: ProjPoint::new(dir).expect("nonzero"),
            }
        }
    }
}

fn verify(p: &Value, opts: &RunOptions) -> Result<Response, CliError> {
    let lhs = map_arg(field(p, "lhs")?)?;
    let rhs = map_arg(field(p, "rhs")?)?;
    let eq = maps_equal(&lhs, &rhs)?;
    let mut body = match &eq {
        MapEquality::Equal(_) => {
            let fs = eq.factor_strings();
            let factor = match &fs[..] {
                [one] => json!(one),
                _ => json!(fs),
            };
            json!({ "equal": true, "factor": factor })
        }
        MapEquality::NotEqual(w) => json!({ "equal": false, "witness": w.as_ref().map(point_to_json) }),
    };
    let mut pass = eq.is_equal();
    if let Some(seed) = opts.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut checked, mut agree) = (0, true);
        for _ in 0..16 {
            let pt = random_point(lhs.source(), &mut rng);
            if let (Ok(a), Ok(b)) = (lhs.evaluate(&pt), rhs.evaluate(&pt)) {
                checked += 1;
                agree &= a == b;
            }
        }
        body["samples"] = json!({ "seed": seed.to_string(), "checked": checked, "agree": agree });
        pass &= agree;
    }
    Ok(Response::checked(pass, body))
}

fn sphere_points(p: &Value, key: &str) -> Result<Vec<crate::geom::SpherePoint>, CliError> {
    array(p, key)?.iter().map(sphere_point_from_json).collect()
}

fn solve(p: &Value, opts: &RunOptions) -> Result<Response, CliError> {
    let ps = sphere_points(p, "P")?;
    let qs = sphere_points(p, "Q")?;
    let mut so = SolveOptions::default();
    if let Some(cap) = p.get("height_cap").and_then(Value::as_u64) {
        so.height_cap = cap as u32;
    }
    if let Some(cap) = opts.height_cap {
        so.height_cap = cap;
    }
    let sol = transitivity_solve_with(&ps, &qs, &so)?;
    let realized: Vec<RationalMap> = sol.twists.iter().map(TwistingMap::realized).collect();
    let mut hits = true;
    for (a, b) in ps.iter().zip(&qs) {
        let mut x = a.clone();
        for m in &realized {
            x = m.apply_sphere(&x)?.trimmed();
        }
        hits &= x == *b;
    }
    let mut involutions = true;
    for t in &sol.twists {
        involutions &= undoes(t, &twist_inverse(t))?;
    }
    let stages: Vec<Value> = sol.twists.iter().map(twist_to_json).collect();
    Ok(Response::checked(
        hits && involutions,
        json!({ "stages": stages, "certificates": { "hits": hits, "involutions": involutions } }),
    ))
}

fn interp_circle(p: &Value) -> Result<Response, CliError> {
    let nodes = array(p, "nodes")?
        .iter()
        .map(|n| match n.as_array().map(Vec::as_slice) {
            Some([z, rho]) => Ok((tower_from_json(z)?, circle_point_from_json(rho)?)),
            _ => Err(CliError::Schema(format!("node {n} must be [z, [re, im]]"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let f = interpolate_circle(&nodes)?;
    let hits = nodes.iter().all(|(z, rho)| f.eval(z) == *rho);
    Ok(Response::checked(
        hits,
        json!({ "profile": circle_map_to_json(&f), "hits": hits, "winding": winding_number(&f) }),
    ))
}

fn dehn(p: &Value) -> Result<Response, CliError> {
    let levels = match p.get("levels") {
        None => Vec::new(),
        Some(_) => array(p, "levels")?.iter().map(tower_from_json).collect::<Result<_, _>>()?,
    };
    let eps = rational_from_json(field(p, "eps")?)?;
    let tol = rational_from_json(field(p, "tol")?)?;
    let t = dehn_twist_map(&levels, &eps, &tol)?;
    let winding = winding_number(t.profile());
    let fixed = levels.iter().all(|z| t.profile().eval(z).is_one());
    Ok(Response::checked(
        winding == 1 && fixed,
        json!({ "twist": twist_to_json(&t), "winding": winding, "fixed": fixed }),
    ))
}

/// A builtin name or `{"vars": [...], "num": "...", "den": "..."}`, possibly as JSON text.
pub fn reg_function(v: &Value) -> Result<RegFunction, CliError> {
    match v {
        Value::String(s) if s.trim_start().starts_with('{') => {
            let parsed: Value = serde_json::from_str(s).map_err(|e| CliError::Json(e.to_string()))?;
            reg_function(&parsed)
        }
        Value::String(s) => Ok(builtin(s)?),
        Value::Object(_) => {
            let names: Vec<String> = array(v, "vars")?
                .iter()
                .map(|n| n.as_str().map(str::to_string).ok_or_else(|| CliError::Schema("vars are strings".into())))
                .collect::<Result<_, _>>()?;
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let num = field(v, "num")?.as_str().ok_or_else(|| CliError::Schema("num is a string".into()))?;
            let den = v.get("den").and_then(Value::as_str).unwrap_or("1");
            Ok(RegFunction::parse(&names, num, den)?)
        }
        other => Err(CliError::Schema(format!("expected a function, got {other}"))),
    }
}

fn limit_json(l: &Limit) -> Value {
    match l {
        Limit::Finite(v) => rational_to_json(v),
        Limit::Infinite => json!("inf"),
    }
}

fn dir_json(d: &[Rational]) -> Value {
    Value::Array(d.iter().map(rational_to_json).collect())
}

fn regulous_eval(p: &Value, opts: &RunOptions) -> Result<Response, CliError> {
    let f = reg_function(field(p, "fn")?)?;
    let point: Vec<Rational> = match field(p, "point")? {
        Value::String(s) => parse_point_list(s)?,
        v => v
            .as_array()
            .ok_or_else(|| CliError::Schema("point must be an array".into()))?
            .iter()
            .map(rational_from_json)
            .collect::<Result<_, _>>()?,
    };
    let pencil = opts
        .pencil
        .or_else(|| p.get("pencil").and_then(Value::as_u64).map(|n| n as usize))
        .unwrap_or(DEFAULT_PENCIL);
    let mut body = match eval_regulous(&f, &point, pencil)? {
        RegValue::Value { value, pencil_certified } => json!({
            "result": "value",
            "value": rational_to_json(&value),
            "pencil_certified": pencil_certified,
            "witness": null,
        }),
        RegValue::NotContinuous { dir, limit, other } => json!({
            "result": "not-continuous",
            "value": null,
            "witness": {
                "dir1": dir_json(&dir),
                "limit1": limit_json(&limit),
                "dir2": other.as_ref().map(|(d, _)| dir_json(d)),
                "limit2": other.as_ref().map(|(_, l)| limit_json(l)),
            },
        }),
        RegValue::Undetermined => json!({ "result": "undetermined", "value": null, "witness": null }),
    };
    let mut pass = body["result"] != "not-continuous";
    if let Some(k) = p.get("k").and_then(Value::as_u64) {
        let check = match k_regulous_check(&f, &point, k as u32, pencil)? {
            KRegResult::PassUpTo(k) => json!({ "pass_up_to": k }),
            KRegResult::FailAt(j, d) => {
                pass = false;
                json!({ "fail_at": j, "dir": dir_json(&d) })
            }
            KRegResult::Undetermined => json!({ "undetermined": true }),
        };
        body["k_check"] = check;
    }
    Ok(Response::checked(pass, body))
}

/// `"a,b,c"` with rational entries.
pub fn parse_point_list(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|c| Ok(parse_rational(c.trim())?)).collect()
}

/// Command-line arguments of the `birat` binary.
#[derive(Parser, Debug, Default)]
#[command(name = "birat", version, about = "Exact birational maps of real rational surfaces")]
pub struct CliArgs {
    /// Command name; without it the input is a full {"command", "payload"} request.
    pub command: Option<String>,
    /// Input file, `-` for stdin.
    #[arg(long = "in", default_value = "-")]
    pub input: String,
    /// Output file, `-` for stdout.
    #[arg(long = "out", default_value = "-")]
    pub output: String,
    /// Seed for randomized sample checks in `verify`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of lines in regulous pencils.
    #[arg(long)]
    pub pencil: Option<usize>,
    /// Largest Cayley height searched by `solve`.
    #[arg(long = "height-cap")]
    pub height_cap: Option<u32>,
    /// regulous-eval: builtin name or JSON function.
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// regulous-eval: comma separated rational coordinates.
    #[arg(long)]
    pub point: Option<String>,
    /// regulous-eval: also check k-regularity.
    #[arg(long)]
    pub k: Option<u32>,
}

/// Builds the response for parsed arguments, reading input from `stdin` when needed.
pub fn execute(args: &CliArgs, stdin: impl Read) -> Response {
    let opts = RunOptions {
        seed: args.seed,
        pencil: args.pencil,
        height_cap: args.height_cap,
    };
    if args.command.as_deref() == Some("regulous-eval") && args.function.is_some() {
        let mut payload = json!({ "fn": args.function, "point": args.point.clone().unwrap_or_default() });
        if let Some(k) = args.k {
            payload["k"] = json!(k);
        }
        return run_command("regulous-eval", &payload, &opts);
    }
    let input = match read_input(&args.input, stdin) {
        Ok(text) => text,
        Err(e) => return Response::error(&e),
    };
    let doc: Value = match serde_json::from_str(&input) {
        Ok(v) => v,
        Err(e) => return Response::error(&CliError::Json(e.to_string())),
    };
    match &args.command {
        Some(c) => {
            let mut payload = doc;
            if let (Some(k), Some(obj)) = (args.k, payload.as_object_mut()) {
                obj.insert("k".into(), json!(k));
            }
            run_command(c, &payload, &opts)
        }
        None => run(&doc, &opts),
    }
}

fn read_input(path: &str, mut stdin: impl Read) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(s)
    } else {
        fs::read_to_string(PathBuf::from(path)).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

/// Entry point of the binary; returns the exit code.
pub fn main_with(args: CliArgs) -> i32 {
    let resp = execute(&args, io::stdin().lock());
    let text = resp.render();
    let written = if args.output == "-" {
        io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string())
    } else {
        fs::write(&args.output, text).map_err(|e| format!("{}: {e}", args.output))
    };
    match written {
        Ok(()) => resp.code,
        Err(e) => {
            eprintln!("birat: {e}");
            EXIT_INVALID
        }
    }
}
