//! The `lcy` command line. [`run`] parses arguments and returns the JSON
//! document and exit code; `main` only prints.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use lcy_core::curve::{
    abelianization_cover, classify_trichotomy, enumerate_standard_pairs, identify_orbifold_group,
    orbifold_presentation, pair_degree, CurveDivisor, PairKind,
};
use lcy_core::fibration::{
    adjunction_coefficient, base_pair_coefficient, bundle_nilpotency_witness, bundle_pi1,
    bundle_quotient_pi1, check_compatible, nori_certificate, ramification_pullback,
    AdjunctionPointDatum, Contribution, CoverCoeffDatum, FibrationFiberDatum, CERTIFICATE_TABLE,
};
use lcy_core::fp::{
    abelianization, coset_enumerate, subgroup_report, Presentation, Word, DEFAULT_MAX_COSETS,
};
use lcy_core::nilpotent::{
    h_commutator, h_mul, is_virtually_abelian, min_abelian_normal_index, HeisenbergElement,
};
use lcy_core::suites::{run_suite, SuiteReport, SUITES};
use lcy_core::toric::{complexity, hj_resolve, recognize, BoundarySum, Fan2D, Ray};
use lcy_core::{format_rational, parse_rational, Error, Q};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit code for command-line usage errors (unknown subcommand, bad flag).
pub const USAGE_EXIT: i32 = 1;

/// Largest coset table printed in full.
const TABLE_PRINT_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// `None` when clap printed help or version text.
    pub output: Option<Value>,
    pub text: Option<String>,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult {
            exit_code: 0,
            output: Some(json!({ "schema": SCHEMA_VERSION, "status": "ok", "payload": payload })),
            text: None,
        }
    }

    /// Successful run whose checks failed.
    fn failed(payload: Value) -> Self {
        CommandResult {
            exit_code: 5,
            output: Some(json!({ "schema": SCHEMA_VERSION, "status": "failed", "payload": payload })),
            text: None,
        }
    }

    fn error(code: i32, category: &str, message: String) -> Self {
        CommandResult {
            exit_code: code,
            output: Some(json!({
                "schema": SCHEMA_VERSION,
                "status": "error",
                "error": { "code": code, "category": category, "message": message },
            })),
            text: None,
        }
    }

    /// What goes to standard output.
    pub fn render(&self) -> String {
        match (&self.output, &self.text) {
            (Some(v), _) => serde_json::to_string_pretty(v).expect("JSON values serialize"),
            (None, Some(t)) => t.clone(),
            (None, None) => String::new(),
        }
    }
}

impl From<Error> for CommandResult {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::Parse(m) | Error::Precondition(m) | Error::Budget(m) | Error::Verification(m) => m.clone(),
        };
        CommandResult::error(e.exit_code(), e.category(), message)
    }
}

#[derive(Parser, Debug)]
#[command(name = "lcy", version, about = "Exact computations for orbifold fundamental groups of log Calabi-Yau pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a pair on a curve and identify its orbifold fundamental group.
    Classify {
        /// `{"genus": 0, "points": ["1/2", "2/3", ...]}` or points as `{"label", "coeff"}`.
        divisor: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Classify every genus-0 standard pair of degree at most 0.
    Enumerate {
        #[arg(long, default_value_t = 30)]
        max_den: u64,
    },
    /// Todd-Coxeter coset enumeration.
    Coset(GroupArgs),
    /// Abelianization of a group, or of a subgroup given by generators.
    Abelianize(GroupArgs),
    /// Arithmetic in H_k.
    Heis {
        #[command(subcommand)]
        op: HeisOp,
    },
    /// Complete fans in the plane.
    Fan {
        #[command(subcommand)]
        op: FanOp,
    },
    /// Boundary coefficient at a point under adjunction.
    Adj {
        #[arg(long)]
        m_p: u64,
        /// `b:multiplicity`, repeatable.
        #[arg(long = "contrib", value_name = "B:MULT")]
        contributions: Vec<String>,
    },
    /// Base-pair coefficient of a fiber of multiplicity m.
    Basepair {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: String,
    },
    /// Compatibility of coefficients under a cover ramified to order m.
    Compat {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        b: String,
        #[arg(long)]
        a: String,
    },
    /// Coefficient upstairs of a cover ramified to order m.
    Pullback {
        #[arg(long)]
        b: String,
        #[arg(long)]
        m: u64,
    },
    /// Structure certificate for a fibration; `--table` prints every row.
    Cert {
        #[arg(long, required_unless_present = "table")]
        fiber: Option<String>,
        #[arg(long, required_unless_present = "table")]
        base: Option<String>,
        #[arg(long)]
        table: bool,
    },
    /// Fundamental group of the bundle example, optionally with c^m killed.
    Bundle {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// `<a,b | a^2, b^3, (ab)^5>` or `{"generators": [...], "relators": [...]}`.
    presentation: String,
    /// Subgroup generator word; repeatable.
    #[arg(long = "subgroup", value_name = "WORD")]
    subgroup: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
}

#[derive(Subcommand, Debug)]
enum HeisOp {
    /// u v in normal form.
    Mul(HeisPair),
    /// u v u^-1 v^-1 in normal form.
    Comm(HeisPair),
    /// Least index of an abelian subgroup of G_{m,k} containing the center.
    Minindex {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Defaults to 4m.
        #[arg(long)]
        det_bound: Option<u64>,
    },
    /// Whether H_k is virtually abelian, with a witness when it is not.
    Vabelian {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
}

#[derive(Args, Debug)]
struct HeisPair {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    /// `x,y,z`
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

#[derive(Subcommand, Debug)]
enum FanOp {
    /// Cone table: indices, cyclic types and labels.
    Index { fan: String },
    /// Star subdivision by a ray.
    Subdivide {
        fan: String,
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
    },
    /// Minimal resolution.
    Resolve { fan: String },
    /// Self-intersections of the invariant curves.
    Selfint {
        fan: String,
        /// Only this ray.
        #[arg(long, allow_hyphen_values = true)]
        ray: Option<String>,
    },
    /// Name the surface.
    Recognize { fan: String },
    /// rho + 2 - |Delta|.
    Complexity {
        #[arg(long)]
        picard_rank: usize,
        #[arg(long)]
        coeff_sum: String,
    },
}

pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    CommandResult { exit_code: 0, output: None, text: Some(e.render().to_string()) }
                }
                _ => CommandResult::error(USAGE_EXIT, "usage", e.render().to_string().trim_end().to_string()),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => e.into(),
    }
}

type Res = lcy_core::Result<CommandResult>;

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn parse_json(text: &str, what: &str) -> lcy_core::Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed {what} JSON: {e}")))
}

fn parse_presentation(text: &str) -> lcy_core::Result<Presentation> {
    if text.trim_start().starts_with('{') {
        Presentation::from_json(&parse_json(text, "presentation")?)
    } else {
        Presentation::parse(text)
    }
}

fn parse_u64(s: &str, what: &str) -> lcy_core::Result<u64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn parse_ray(s: &str) -> lcy_core::Result<Ray> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b] => {
            let p = |t: &str| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad ray coordinate {t:?}")));
            Ok((p(a)?, p(b)?))
        }
        _ => Err(Error::Parse(format!("expected a ray a,b but got {s:?}"))),
    }
}

fn parse_fan(s: &str) -> lcy_core::Result<Fan2D> {
    Fan2D::from_json(&parse_json(s, "fan")?)
}

fn q_str(x: &Q) -> Value {
    Value::String(format_rational(x))
}

fn dispatch(cmd: Command) -> Res {
    match cmd {
        Command::Classify { divisor, max_cosets } => classify(&divisor, max_cosets),
        Command::Enumerate { max_den } => enumerate(max_den),
        Command::Coset(g) => coset(g),
        Command::Abelianize(g) => abelianize(g),
        Command::Heis { op } => heis(op),
        Command::Fan { op } => fan(op),
        Command::Adj { m_p, contributions } => {
            let contributions = contributions
                .iter()
                .map(|c| {
                    let (b, m) = c
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("expected B:MULT but got {c:?}")))?;
                    Ok(Contribution { b: parse_rational(b)?, multiplicity: parse_u64(m, "multiplicity")? })
                })
                .collect::<lcy_core::Result<Vec<_>>>()?;
            let d = AdjunctionPointDatum { m_p, contributions };
            let c = adjunction_coefficient(&d)?;
            Ok(CommandResult::ok(json!({ "datum": to_json(&d), "coefficient": q_str(&c) })))
        }
        Command::Basepair { m, a } => {
            let f = FibrationFiberDatum { m, a: parse_rational(&a)? };
            let d = base_pair_coefficient(&f)?;
            Ok(CommandResult::ok(json!({ "datum": to_json(&f), "delta": q_str(&d) })))
        }
        Command::Compat { m, b, a } => {
            let c = CoverCoeffDatum { m, b: parse_rational(&b)?, a: parse_rational(&a)? };
            let ok = check_compatible(&c)?;
            Ok(CommandResult::ok(json!({ "datum": to_json(&c), "compatible": ok })))
        }
        Command::Pullback { b, m } => {
            let b = parse_rational(&b)?;
            let a = ramification_pullback(&b, m)?;
            Ok(CommandResult::ok(json!({ "b": q_str(&b), "m": m, "a": q_str(&a) })))
        }
        Command::Cert { fiber, base, table } => {
            if table {
                return Ok(CommandResult::ok(json!({ "rows": to_json(&CERTIFICATE_TABLE) })));
            }
            let fiber: PairKind = fiber.unwrap_or_default().parse()?;
            let base: PairKind = base.unwrap_or_default().parse()?;
            Ok(CommandResult::ok(to_json(&nori_certificate(fiber, base))))
        }
        Command::Bundle { k, m } => {
            let p = match m {
                Some(m) => bundle_quotient_pi1(k, m)?,
                None => bundle_pi1(k),
            };
            let ab = abelianization(&p);
            Ok(CommandResult::ok(json!({
                "k": k,
                "m": m,
                "presentation": p.to_text(),
                "abelianization": ab.to_string(),
                "abelian_invariants": to_json(&ab),
                "nilpotency": to_json(&bundle_nilpotency_witness(k)?),
            })))
        }
        Command::Verify { suite } => verify(&suite),
    }
}

fn classify(divisor: &str, max_cosets: usize) -> Res {
    let d = CurveDivisor::from_json(&parse_json(divisor, "divisor")?)?;
    let class = classify_trichotomy(&d)?;
    let pres = orbifold_presentation(&d)?;
    let cover = abelianization_cover(&d)?;
    let group = identify_orbifold_group(&d, max_cosets)?;
    Ok(CommandResult::ok(json!({
        "divisor": to_json(&d),
        "degree": q_str(&pair_degree(&d)),
        "kind": to_json(&class.kind()),
        "class": to_json(&class),
        "presentation": { "text": pres.presentation.to_text(), "point_loops": to_json(&pres.point_loops) },
        "abelianization_cover": to_json(&cover),
        "group": to_json(&group),
    })))
}

fn enumerate(max_den: u64) -> Res {
    if max_den < 2 {
        return Err(Error::Precondition("max-den must be at least 2".into()));
    }
    let mut counts = std::collections::BTreeMap::<String, usize>::new();
    let mut pairs = Vec::new();
    for d in enumerate_standard_pairs(max_den) {
        let class = classify_trichotomy(&d)?;
        let kind = to_json(&class.kind()).as_str().unwrap_or_default().to_string();
        *counts.entry(kind.clone()).or_default() += 1;
        let coeffs: Vec<Value> = d.coeffs().iter().map(q_str).collect();
        pairs.push(json!({ "coeffs": coeffs, "kind": kind, "class": to_json(&class) }));
    }
    Ok(CommandResult::ok(json!({ "max_den": max_den, "count": pairs.len(), "counts": counts, "pairs": pairs })))
}

fn subgroup_words(p: &Presentation, words: &[String]) -> lcy_core::Result<Vec<Word>> {
    words.iter().map(|w| p.parse_word(w)).collect()
}

fn coset(g: GroupArgs) -> Res {
    let p = parse_presentation(&g.presentation)?;
    let gens = subgroup_words(&p, &g.subgroup)?;
    let table = coset_enumerate(&p, &gens, g.max_cosets)?;
    let Some(index) = table.index() else {
        return Err(Error::Budget(format!("coset enumeration exceeded {} cosets", g.max_cosets)));
    };
    let mut payload = json!({
        "presentation": p.to_text(),
        "subgroup": g.subgroup,
        "index": index,
        "status": to_json(&table.status),
    });
    if index <= TABLE_PRINT_LIMIT {
        payload["table"] = to_json(&table.rows);
    }
    Ok(CommandResult::ok(payload))
}

fn abelianize(g: GroupArgs) -> Res {
    let p = parse_presentation(&g.presentation)?;
    if g.subgroup.is_empty() {
        let ab = abelianization(&p);
        return Ok(CommandResult::ok(json!({
            "presentation": p.to_text(),
            "abelianization": ab.to_string(),
            "invariants": to_json(&ab),
        })));
    }
    let gens = subgroup_words(&p, &g.subgroup)?;
    let r = subgroup_report(&p, &gens, g.max_cosets)?;
    Ok(CommandResult::ok(json!({
        "presentation": p.to_text(),
        "subgroup": g.subgroup,
        "index": r.index,
        "abelianization": r.abelianization.to_string(),
        "invariants": to_json(&r.abelianization),
    })))
}

fn heis(op: HeisOp) -> Res {
    match op {
        HeisOp::Mul(p) => {
            let (u, v) = (HeisenbergElement::parse(p.k, &p.u)?, HeisenbergElement::parse(p.k, &p.v)?);
            let r = h_mul(&u, &v)?;
            Ok(CommandResult::ok(json!({ "k": p.k, "u": u.triple(), "v": v.triple(), "product": r.triple() })))
        }
        HeisOp::Comm(p) => {
            let (u, v) = (HeisenbergElement::parse(p.k, &p.u)?, HeisenbergElement::parse(p.k, &p.v)?);
            let r = h_commutator(&u, &v)?;
            Ok(CommandResult::ok(json!({ "k": p.k, "u": u.triple(), "v": v.triple(), "commutator": r.triple() })))
        }
        HeisOp::Minindex { m, k, det_bound } => {
            let bound = det_bound.unwrap_or(m.saturating_mul(4));
            let r = min_abelian_normal_index(m, k, bound)?;
            let mut v = to_json(&r);
            v["det_bound"] = json!(bound);
            v["method"] = json!("exhaustive sublattice search");
            Ok(CommandResult::ok(v))
        }
        HeisOp::Vabelian { k } => Ok(CommandResult::ok(to_json(&is_virtually_abelian(k)))),
    }
}

fn fan(op: FanOp) -> Res {
    match op {
        FanOp::Index { fan } => {
            let f = parse_fan(&fan)?;
            Ok(CommandResult::ok(json!({
                "rays": to_json(&f.rays()),
                "picard_rank": f.picard_rank(),
                "cones": to_json(&f.cones()),
            })))
        }
        FanOp::Subdivide { fan, ray } => {
            let f = parse_fan(&fan)?;
            let g = f.star_subdivide(parse_ray(&ray)?)?;
            Ok(CommandResult::ok(json!({
                "rays": to_json(&g.rays()),
                "picard_rank": g.picard_rank(),
                "cones": to_json(&g.cones()),
            })))
        }
        FanOp::Resolve { fan } => {
            let f = parse_fan(&fan)?;
            let mut exceptional = Vec::new();
            for i in 0..f.len() {
                let (v, w) = f.cone(i);
                for (r, s) in hj_resolve(v, w)? {
                    exceptional.push(json!({ "cone": [v, w], "ray": r, "self_intersection": s }));
                }
            }
            let r = f.resolve();
            Ok(CommandResult::ok(json!({
                "exceptional": exceptional,
                "resolved_rays": to_json(&r.rays()),
                "smooth": r.is_smooth(),
            })))
        }
        FanOp::Selfint { fan, ray } => {
            let f = parse_fan(&fan)?;
            let positions: Vec<usize> = match ray {
                Some(r) => {
                    let r = parse_ray(&r)?;
                    vec![f.position(r).ok_or_else(|| Error::Precondition(format!("ray {r:?} is not in the fan")))?]
                }
                None => (0..f.len()).collect(),
            };
            let rows = positions
                .into_iter()
                .map(|i| Ok(json!({ "ray": f.rays()[i], "self_intersection": q_str(&f.self_intersection(i)?) })))
                .collect::<lcy_core::Result<Vec<_>>>()?;
            Ok(CommandResult::ok(json!({ "curves": rows })))
        }
        FanOp::Recognize { fan } => {
            let f = parse_fan(&fan)?;
            Ok(CommandResult::ok(json!({ "rays": to_json(&f.rays()), "surface": to_json(&recognize(&f)) })))
        }
        FanOp::Complexity { picard_rank, coeff_sum } => {
            let b = BoundarySum { picard_rank, coeff_sum: parse_rational(&coeff_sum)? };
            let c = complexity(&b);
            Ok(CommandResult::ok(json!({ "boundary": to_json(&b), "complexity": q_str(&c.complexity), "toric": c.toric })))
        }
    }
}

fn verify(suite: &str) -> Res {
    let reports: Vec<SuiteReport> = if suite == "all" {
        SUITES.iter().map(|s| run_suite(s)).collect::<lcy_core::Result<_>>()?
    } else {
        vec![run_suite(suite)?]
    };
    let passed = reports.iter().all(|r| r.passed);
    let summary: Vec<Value> = reports.iter().map(|r| json!({ "suite": r.suite, "passed": r.passed })).collect();
    let payload = json!({ "passed": passed, "summary": summary, "suites": to_json(&reports) });
    Ok(if passed { CommandResult::ok(payload) } else { CommandResult::failed(payload) })
}
