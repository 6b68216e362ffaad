//! Command-line front end: parses JSON object descriptions, dispatches to the
//! `gradex` kernel and prints sorted-key JSON reports.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gradex::abgroups::{FGAbelianGroup, GroupHom};
use gradex::exactla::{format_scalar, Field, Scalar};
use gradex::gcore::{intersect_all, spec_enumerate, GradedAlgebra, GradedIdeal};
use gradex::gfunct::{
    adjunction_check, coarsen_algebra, coarsen_module, coarsening_report, corestrict, extend,
    monoid_corestriction, restrict,
};
use gradex::ghom::{
    betti_text, coarsen_dimension_compare, dimension, injective_dimension_direct, lambek_check,
    projectivity, resolution, schanuel_glue, DimensionKind, Truncation, DEFAULT_CUTOFF, MAX_CUTOFF,
};
use gradex::gmod::{
    freeness, graded_radical, graded_socle, is_monogeneous, principal_suite, small_submodule,
    submodule, GradedModule, SmallMode,
};
use gradex::io::{self, hilbert_json, Document};
use gradex::{oracles, Decision, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gradex",
    version,
    about = "Rings and modules graded by finitely generated abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Scalar field overriding the documents: `Q` or `Fp:<p>`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for randomized searches (default: $GRADEX_SEED, then a fixed value).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Resolution length bound.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Also run the brute-force oracle and report the comparison.
    #[arg(long, global = true)]
    oracle: bool,
    /// Machine-readable output (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    text: bool,
}

/// Every `INPUT` is a JSON file path, `-` for standard input, or inline JSON.
#[derive(Subcommand, Debug)]
enum Command {
    /// Simple / entire / reduced flags of a ring or monoid algebra.
    Classify { input: String },
    /// Coarsen a ring or module along an epimorphism `psi`.
    Coarsen {
        input: String,
        #[arg(long)]
        psi: String,
    },
    /// Restriction along a monomorphism `phi` into the grading group.
    Restrict {
        input: String,
        #[arg(long)]
        phi: String,
    },
    /// Corestriction along a monomorphism `phi` into the grading group.
    Corestrict {
        input: String,
        #[arg(long)]
        phi: String,
    },
    /// Triangle identities and Hom-set bijections of the adjoint triple.
    AdjointCheck {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        phi: String,
    },
    /// Structure report of a module or of a submodule of a free K[X]-module.
    Module {
        input: String,
        #[arg(long)]
        psi: Option<String>,
    },
    /// Minimal free resolution and Betti table.
    Resolve { input: String },
    /// Projective dimension.
    Pd { input: String },
    /// Injective dimension.
    Id { input: String },
    /// Flat dimension.
    Fd { input: String },
    /// Explicit isomorphism between kernels of two truncated resolutions.
    Schanuel {
        input: String,
        /// Truncation length.
        #[arg(long, default_value_t = 1)]
        length: usize,
    },
    /// Dimensions and Betti tables before and after coarsening.
    CoarsenCompare {
        input: String,
        #[arg(long)]
        psi: String,
    },
    /// Graded prime spectrum of a small ring over a finite field.
    Spec { input: String },
    /// Compare main-path answers against the brute-force oracles.
    OracleDiff { input: String },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    SizeGuard(String),
}

impl From<gradex::Error> for Failure {
    fn from(e: gradex::Error) -> Self {
        if e.is_size_guard() {
            Failure::SizeGuard(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<io::Invalid> for Failure {
    fn from(e: io::Invalid) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Ctx {
    field: Option<Field>,
    seed: u64,
    cutoff: usize,
    oracle: bool,
}

/// A report and its optional plain-text rendering.
struct Report {
    json: Value,
    text: Option<String>,
}

impl From<Value> for Report {
    fn from(json: Value) -> Self {
        Report { json, text: None }
    }
}

/// Runs the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_INVALID,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let body = match (&report.text, cli.opts.text) {
                (Some(t), true) => t.clone(),
                (None, true) => text_render(&report.json),
                _ => serde_json::to_string(&report.json).expect("report serializes"),
            };
            let _ = writeln!(out, "{}", body.trim_end());
            EXIT_OK
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::SizeGuard(msg)) => {
            let _ = writeln!(err, "refused: {msg}");
            EXIT_SIZE_GUARD
        }
    }
}

fn execute(cli: &Cli) -> Outcome<Report> {
    let field = match &cli.opts.field {
        Some(s) => Some(s.parse::<Field>()?),
        None => None,
    };
    let seed = match cli.opts.seed {
        Some(s) => s,
        None => match std::env::var("GRADEX_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Invalid(format!("GRADEX_SEED is not an integer: {v}")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    let cutoff = cli.opts.cutoff.unwrap_or(DEFAULT_CUTOFF);
    if cutoff > MAX_CUTOFF {
        return Err(Failure::SizeGuard(format!(
            "cutoff {cutoff} exceeds {MAX_CUTOFF}"
        )));
    }
    let cx = Ctx {
        field,
        seed,
        cutoff,
        oracle: cli.opts.oracle,
    };
    match &cli.command {
        Command::Classify { input } => classify(&cx, input),
        Command::Coarsen { input, psi } => coarsen(&cx, input, psi),
        Command::Restrict { input, phi } => {
            let r = cx.ring(input)?;
            let phi = cx.hom(phi)?;
            Ok(io::ring_to_json(&restrict(&r, &phi)?.ring).into())
        }
        Command::Corestrict { input, phi } => corestrict_cmd(&cx, input, phi),
        Command::AdjointCheck { inputs, phi } => adjoint(&cx, inputs, phi),
        Command::Module { input, psi } => module_cmd(&cx, input, psi.as_deref()),
        Command::Resolve { input } => resolve(&cx, input),
        Command::Pd { input } => dim_cmd(&cx, input, DimensionKind::Projective),
        Command::Id { input } => dim_cmd(&cx, input, DimensionKind::Injective),
        Command::Fd { input } => dim_cmd(&cx, input, DimensionKind::Flat),
        Command::Schanuel { input, length } => schanuel(&cx, input, *length),
        Command::CoarsenCompare { input, psi } => {
            let m = cx.module(input)?;
            let psi = cx.hom(psi)?;
            let cmp = coarsen_dimension_compare(&m, &psi, cx.cutoff)?;
            let mut v = to_value(&cmp);
            v["cutoff"] = json!(cx.cutoff);
            Ok(v.into())
        }
        Command::Spec { input } => spec_cmd(&cx, input),
        Command::OracleDiff { input } => oracle_diff(&cx, input),
    }
}

impl Ctx {
    fn document(&self, input: &str) -> Outcome<Document> {
        let v = load_json(input)?;
        Ok(io::parse_document(&v, self.field)?)
    }

    fn ring(&self, input: &str) -> Outcome<GradedAlgebra> {
        match self.document(input)? {
            Document::Ring(r) => Ok(r),
            d => Err(wrong_kind(d, "ring")),
        }
    }

    fn module(&self, input: &str) -> Outcome<GradedModule> {
        match self.document(input)? {
            Document::Module(m) => Ok(m),
            Document::Ring(r) => Ok(gradex::gmod::regular_module(&Arc::new(r))),
            d => Err(wrong_kind(d, "module")),
        }
    }

    fn hom(&self, input: &str) -> Outcome<GroupHom> {
        let v = load_json(input)?;
        Ok(io::parse_hom(&v)?)
    }
}

fn wrong_kind(d: Document, want: &str) -> Failure {
    Failure::Invalid(format!(
        "expected a {want} document, found {}",
        to_value(&d.kind())
    ))
}

fn load_json(input: &str) -> Outcome<Value> {
    let trimmed = input.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        input.to_string()
    } else if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Invalid(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(Path::new(input))
            .map_err(|e| Failure::Invalid(format!("reading {input}: {e}")))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("malformed JSON in {}: {e}", short(input))))
}

fn short(input: &str) -> String {
    if input.len() > 40 {
        format!("{}…", &input[..40])
    } else {
        input.to_string()
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn decision(d: Decision) -> Value {
    match d.as_bool() {
        Some(b) => json!(b),
        None => json!("undecided"),
    }
}

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| json!(format_scalar(x))).collect())
}

fn rows(v: &[Vec<Scalar>]) -> Value {
    Value::Array(v.iter().map(|r| scalars(r)).collect())
}

fn residue_rows(v: &[Vec<u64>]) -> Value {
    Value::Array(
        v.iter()
            .map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect()))
            .collect(),
    )
}

fn classify(cx: &Ctx, input: &str) -> Outcome<Report> {
    let (class, ring) = match cx.document(input)? {
        Document::Ring(r) => (r.classify_ring(), Some(r)),
        Document::Monoid(m) => (m.classify_ring(), None),
        d => return Err(wrong_kind(d, "ring")),
    };
    let mut v = json!({
        "simple": decision(class.simple),
        "entire": decision(class.entire),
        "reduced": decision(class.reduced),
    });
    if cx.oracle {
        v["oracle"] = match ring {
            Some(r) if r.field().is_finite() => {
                let o = oracles::exhaustive_ring_class(&r)?;
                let agrees = class.simple.as_bool().is_none_or(|b| b == o.simple)
                    && class.entire.as_bool().is_none_or(|b| b == o.entire)
                    && class.reduced.as_bool().is_none_or(|b| b == o.reduced);
                json!({"simple": o.simple, "entire": o.entire, "reduced": o.reduced, "agrees": agrees})
            }
            _ => json!({"available": false}),
        };
    }
    Ok(v.into())
}

fn coarsen(cx: &Ctx, input: &str, psi: &str) -> Outcome<Report> {
    let psi = cx.hom(psi)?;
    match cx.document(input)? {
        Document::Ring(r) => {
            let coarse = coarsen_algebra(&r, &psi)?;
            let report = coarsening_report(&r, &psi)?;
            Ok(json!({"ring": io::ring_to_json(&coarse), "report": to_value(&report)}).into())
        }
        Document::Module(m) => {
            Ok(json!({"module": io::module_to_json(&coarsen_module(&m, &psi)?)}).into())
        }
        d => Err(wrong_kind(d, "ring or module")),
    }
}

fn corestrict_cmd(cx: &Ctx, input: &str, phi: &str) -> Outcome<Report> {
    let phi = cx.hom(phi)?;
    match cx.document(input)? {
        Document::Ring(r) => {
            let c = corestrict(&r, &phi)?;
            if c.is_zero_ring() {
                Ok(json!({"corestriction": "zero ring"}).into())
            } else {
                Ok(json!({"corestriction": io::ring_to_json(&c.ring)}).into())
            }
        }
        Document::Monoid(a) => {
            let c = monoid_corestriction(&a, &phi)?;
            if c.zero_by_unit {
                Ok(json!({"corestriction": "zero ring"}).into())
            } else {
                Ok(json!({"corestriction": "undetermined", "report": to_value(&c)}).into())
            }
        }
        d => Err(wrong_kind(d, "ring")),
    }
}

fn adjoint(cx: &Ctx, inputs: &[String], phi: &str) -> Outcome<Report> {
    let phi = cx.hom(phi)?;
    let mut f_samples = Vec::new();
    let mut g_samples = Vec::new();
    for input in inputs {
        let r = cx.ring(input)?;
        if r.group() == phi.target() {
            g_samples.push(r);
        } else if r.group() == phi.source() {
            f_samples.push(r);
        } else {
            return Err(Failure::Invalid(format!(
                "{} is graded by {}, neither the source nor the target of phi",
                short(input),
                r.group()
            )));
        }
    }
    if f_samples.is_empty() {
        for r in &g_samples {
            f_samples.push(restrict(r, &phi)?.ring);
        }
    }
    if g_samples.is_empty() {
        for s in &f_samples {
            g_samples.push(extend(s, &phi)?);
        }
    }
    Ok(to_value(&adjunction_check(&phi, &f_samples, &g_samples)?).into())
}

fn module_cmd(cx: &Ctx, input: &str, psi: Option<&str>) -> Outcome<Report> {
    let m = match cx.document(input)? {
        Document::Principal(p) => {
            let psi = match psi {
                Some(s) => cx.hom(s)?,
                None => GroupHom::zero(&p.group, &FGAbelianGroup::trivial()),
            };
            if !psi.is_epi() {
                return Err(Failure::Invalid("psi must be an epimorphism".into()));
            }
            return Ok(to_value(&principal_suite(&p, &psi)?).into());
        }
        Document::Module(m) => m,
        Document::Ring(r) => gradex::gmod::regular_module(&Arc::new(r)),
        d => return Err(wrong_kind(d, "module")),
    };
    let free = freeness(&m, cx.seed)?;
    let (proj, _) = projectivity(&m)?;
    let lambek = lambek_check(&m)?;
    let rad = graded_radical(&m);
    let soc = graded_socle(&m);
    let mut v = json!({
        "dim": m.dim(),
        "hilbert": hilbert_json(&m.hilbert()),
        "free": decision(free.free),
        "rank": free.rank,
        "generator_degrees": free.generator_degrees,
        "monogeneous": decision(is_monogeneous(&m, cx.seed)?),
        "projective": proj.projective,
        "flat": lambek.flat,
        "injective": gradex::ghom::is_injective(&m)?,
        "lambek_agrees": lambek.agrees,
        "radical_dim": rad.dim(),
        "socle_dim": soc.dim(),
        "seed": cx.seed,
    });
    if cx.oracle {
        v["oracle"] = if m.field().is_finite() {
            let basis = oracles::exhaustive_free_basis(&m)?;
            let agrees = free.free.as_bool().is_none_or(|b| b == basis.is_some());
            json!({"free": basis.is_some(), "agrees": agrees})
        } else {
            json!({"available": false})
        };
    }
    Ok(v.into())
}

fn resolve(cx: &Ctx, input: &str) -> Outcome<Report> {
    let m = cx.module(input)?;
    let res = resolution(&m, cx.cutoff, true)?;
    let table = res.betti();
    Ok(Report {
        json: json!({
            "betti": io::betti_json(&table),
            "cutoff": cx.cutoff,
            "terminated": res.terminated,
            "length": res.length(),
        }),
        text: Some(betti_text(&table)),
    })
}

fn dim_cmd(cx: &Ctx, input: &str, kind: DimensionKind) -> Outcome<Report> {
    let m = cx.module(input)?;
    let report = dimension(&m, kind, cx.cutoff)?;
    let mut v = to_value(&report);
    if cx.oracle && kind == DimensionKind::Injective {
        let direct = injective_dimension_direct(&m, cx.cutoff)?;
        v["oracle"] = json!({"direct": to_value(&direct), "agrees": direct == report.value});
    }
    Ok(Report {
        text: Some(format!(
            "{}: {}",
            to_value(&kind).as_str().unwrap_or(""),
            report.value
        )),
        json: v,
    })
}

fn schanuel(cx: &Ctx, input: &str, length: usize) -> Outcome<Report> {
    if length == 0 {
        return Err(Failure::Invalid(
            "truncation length must be positive".into(),
        ));
    }
    let m = cx.module(input)?;
    let minimal = resolution(&m, length, true)?;
    let padded = resolution(&m, length, false)?;
    if minimal.steps.len() < length || padded.steps.len() < length {
        return Err(Failure::Invalid(format!(
            "module has projective dimension below {}",
            length
        )));
    }
    let t1 = Truncation::from_resolution(&minimal, length)?;
    let t2 = Truncation::from_resolution(&padded, length)?;
    let out = schanuel_glue(&t1, &t2)?;
    let mut v = to_value(&out);
    v["length"] = json!(length);
    v["dimension"] = json!(out.iso.source().dim());
    Ok(v.into())
}

fn ideal_rows(i: &GradedIdeal) -> Value {
    rows(i.basis())
}

fn spec_cmd(cx: &Ctx, input: &str) -> Outcome<Report> {
    let r = cx.ring(input)?;
    let primes = spec_enumerate(&r)?;
    let nil = GradedIdeal::nilradical(&r);
    let meet = intersect_all(&r, &primes);
    let mut v = json!({
        "primes": primes.iter().map(ideal_rows).collect::<Vec<_>>(),
        "nilradical": ideal_rows(&nil),
        "nilradical_is_intersection": meet == nil,
    });
    if cx.oracle {
        let op = oracles::graded_primes(&r)?;
        let p = r.field().characteristic();
        let mut main: Vec<Vec<Vec<u64>>> = primes
            .iter()
            .map(|i| {
                oracles::canonical_span(
                    oracles::residues(i.basis(), r.field()).expect("finite field"),
                    p,
                )
            })
            .collect();
        main.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v["oracle"] = json!({"primes": op.len(), "agrees": main == op});
    }
    Ok(v.into())
}

fn check(name: &str, main: Value, oracle: Value) -> Value {
    let agree = main == oracle;
    json!({"name": name, "main": main, "oracle": oracle, "agree": agree})
}

fn oracle_diff(cx: &Ctx, input: &str) -> Outcome<Report> {
    let mut checks = Vec::new();
    match cx.document(input)? {
        Document::Ring(r) => {
            if !r.field().is_finite() {
                return Err(Failure::Invalid("oracles need a finite field".into()));
            }
            let class = r.classify_ring();
            let o = oracles::exhaustive_ring_class(&r)?;
            checks.push(check("simple", decision(class.simple), json!(o.simple)));
            checks.push(check("entire", decision(class.entire), json!(o.entire)));
            checks.push(check("reduced", decision(class.reduced), json!(o.reduced)));
            let p = r.field().characteristic();
            let nil = oracles::canonical_span(
                oracles::residues(GradedIdeal::nilradical(&r).basis(), r.field())?,
                p,
            );
            checks.push(check(
                "nilradical",
                residue_rows(&nil),
                residue_rows(&oracles::graded_nilradical(&r)?),
            ));
            if let Ok(primes) = spec_enumerate(&r) {
                let mut main: Vec<Vec<Vec<u64>>> = primes
                    .iter()
                    .map(|i| {
                        oracles::canonical_span(
                            oracles::residues(i.basis(), r.field()).expect("finite"),
                            p,
                        )
                    })
                    .collect();
                main.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                checks.push(check(
                    "primes",
                    json!(main.len()),
                    json!(oracles::graded_primes(&r)?.len()),
                ));
            }
        }
        Document::Module(m) => {
            if !m.field().is_finite() {
                return Err(Failure::Invalid("oracles need a finite field".into()));
            }
            let free = freeness(&m, cx.seed)?;
            checks.push(check(
                "free",
                decision(free.free),
                json!(oracles::exhaustive_free_basis(&m)?.is_some()),
            ));
            for (name, space, mode) in [
                (
                    "radical_superfluous",
                    graded_radical(&m),
                    SmallMode::Superfluous,
                ),
                ("socle_essential", graded_socle(&m), SmallMode::Essential),
            ] {
                let inc = submodule(&m, &space)?;
                let rep = small_submodule(&inc, mode)?;
                let o = match mode {
                    SmallMode::Superfluous => oracles::superfluous_oracle(&m, space.basis())?,
                    SmallMode::Essential => oracles::essential_oracle(&m, space.basis())?,
                };
                checks.push(check(name, json!(rep.holds), json!(o.holds)));
            }
        }
        d => return Err(wrong_kind(d, "ring or module")),
    }
    let agree = checks.iter().all(|c| c["agree"] == json!(true));
    Ok(json!({"checks": checks, "agree": agree}).into())
}

/// `key: value` lines for the top level of a report.
fn text_render(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}
