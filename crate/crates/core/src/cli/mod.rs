//! The `quivlat` command line: `quivlat <verb> [flags]`.
//!
//! Exit codes: 0 on success, 1 on domain errors (reported with their error
//! tag), 2 on malformed arguments or unreadable input files.

pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

pub use verify::{run_suite, Suite, VerifyReport};

use crate::error::Error;
use crate::homology::{check_base_change, hom_ext, is_exceptional, is_rigid};
use crate::mutation::{
    braid_trace, is_exceptional_pair, left_mutate, parse_letter, right_mutate, standard_sequence,
};
use crate::quiver::{DimVector, Quiver, Rep};
use crate::ring::{cokernel, RingHom, RingSpec};
use crate::structure::{
    decompose_rigid_with, exceptional_lattice, is_real_schur_root, lift_rigid, SchurTest,
    DEFAULT_BOUND,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Ext,
    Hom,
    Rigid,
    Exceptional,
    Mutate,
    Braid,
    Schur,
    Construct,
    Decompose,
    Lift,
    Basechange,
    Verify,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Ext => "ext",
            Verb::Hom => "hom",
            Verb::Rigid => "rigid",
            Verb::Exceptional => "exceptional",
            Verb::Mutate => "mutate",
            Verb::Braid => "braid",
            Verb::Schur => "schur",
            Verb::Construct => "construct",
            Verb::Decompose => "decompose",
            Verb::Lift => "lift",
            Verb::Basechange => "basechange",
            Verb::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Parser, Debug)]
#[command(
    name = "quivlat",
    version,
    about = "Hom, Ext, mutations and rigid lattices for quiver representations"
)]
pub struct Args {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Suite for `verify`: euler, basechange, braid, theoremA, theoremB, theoremC.
    pub suite: Option<String>,
    /// Quiver JSON file; supplies the quiver for reps that omit it.
    #[arg(long)]
    pub quiver: Option<PathBuf>,
    #[arg(long)]
    pub rep: Option<PathBuf>,
    #[arg(long = "rep-x")]
    pub rep_x: Option<PathBuf>,
    #[arg(long = "rep-y")]
    pub rep_y: Option<PathBuf>,
    /// Ring spec: Z, Q, F:p, Zmod:m, Feps:p:n. Overrides the ring of input
    /// reps; for construct and braid the ring to work over; for lift the ring
    /// to lift to; for basechange the target ring.
    #[arg(long)]
    pub ring: Option<String>,
    /// Inline dimension vector, e.g. 1,2.
    #[arg(long)]
    pub dims: Option<String>,
    /// Cap on the total dimension of items explored by orbit searches.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Auxiliary prime for decompose.
    #[arg(long, default_value_t = 2)]
    pub prime: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of cases for verify.
    #[arg(long)]
    pub size: Option<usize>,
    /// Mutation side for mutate.
    #[arg(long, value_enum, default_value_t = Direction::Left)]
    pub direction: Direction,
    /// Braid word for braid, e.g. s1,s2-1.
    #[arg(long)]
    pub word: Option<String>,
}

enum Failure {
    Usage(String),
    FileNotFound(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) | Failure::FileNotFound(_) => 2,
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "ParseError",
            Failure::FileNotFound(_) => "FileNotFound",
            Failure::Domain(e) => e.name(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::FileNotFound(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs one command. `argv[0]` is the program name. Returns the exit code
/// and the text to print on standard output.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let format = args.format;
    let verb = args.verb.name();
    match dispatch(&args) {
        Ok(result) => {
            let out = match format {
                Format::Json => {
                    let record = json!({"schema": SCHEMA_VERSION, "verb": verb, "result": result});
                    serde_json::to_string_pretty(&record).expect("JSON values serialize")
                }
                Format::Text => render_text(&result),
            };
            (0, out)
        }
        Err(f) => {
            let out = match format {
                Format::Json => {
                    let record = json!({
                        "schema": SCHEMA_VERSION,
                        "verb": verb,
                        "error": f.tag(),
                        "message": f.message(),
                    });
                    serde_json::to_string_pretty(&record).expect("JSON values serialize")
                }
                Format::Text => format!("error: {}: {}", f.tag(), f.message()),
            };
            (f.exit_code(), out)
        }
    }
}

fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn bound(args: &Args) -> CliResult<usize> {
    if let Some(b) = args.bound {
        return Ok(b);
    }
    match std::env::var("QUIVLAT_BOUND") {
        Ok(s) => s.trim().parse().map_err(|_| {
            Failure::Usage(format!("QUIVLAT_BOUND is not a nonnegative integer: {s:?}"))
        }),
        Err(_) => Ok(DEFAULT_BOUND),
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Failure::FileNotFound(path.display().to_string()),
        _ => Failure::Usage(format!("{}: {e}", path.display())),
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn ring_flag(args: &Args) -> CliResult<Option<RingSpec>> {
    args.ring
        .as_deref()
        .map(|s| s.parse::<RingSpec>().map_err(Failure::from))
        .transpose()
}

fn quiver_flag(args: &Args) -> CliResult<Option<Quiver>> {
    args.quiver
        .as_deref()
        .map(|p| Ok(Quiver::from_json(&read_json(p)?)?))
        .transpose()
}

fn require<'a, T>(v: &'a Option<T>, flag: &str, verb: &str) -> CliResult<&'a T> {
    v.as_ref()
        .ok_or_else(|| Failure::Usage(format!("{verb} needs --{flag}")))
}

fn load_rep(path: &Path, ring: Option<RingSpec>, quiver: Option<&Quiver>) -> CliResult<Rep> {
    let mut v = read_json(path)?;
    match (v.get("quiver").is_some(), quiver) {
        (false, Some(q)) => v["quiver"] = q.to_json(),
        (true, Some(q)) if Quiver::from_json(&v["quiver"])? != *q => {
            return Err(Failure::Domain(Error::IncompatibleBase(format!(
                "{} is on a different quiver than --quiver",
                path.display()
            ))));
        }
        _ => {}
    }
    Ok(Rep::from_json(&v, ring)?)
}

/// `(X, Y)` from `--rep-x`/`--rep-y`, either defaulting to `--rep`.
fn load_pair(args: &Args, verb: &str) -> CliResult<(Rep, Rep)> {
    let ring = ring_flag(args)?;
    let q = quiver_flag(args)?;
    let px = args.rep_x.as_ref().or(args.rep.as_ref());
    let py = args.rep_y.as_ref().or(args.rep.as_ref());
    match (px, py) {
        (Some(px), Some(py)) => Ok((
            load_rep(px, ring, q.as_ref())?,
            load_rep(py, ring, q.as_ref())?,
        )),
        _ => Err(Failure::Usage(format!(
            "{verb} needs --rep-x and --rep-y (or --rep)"
        ))),
    }
}

fn load_single(args: &Args, verb: &str, ring: Option<RingSpec>) -> CliResult<Rep> {
    let q = quiver_flag(args)?;
    let p = require(&args.rep, "rep", verb)?;
    load_rep(p, ring, q.as_ref())
}

fn dims_arg(args: &Args, verb: &str) -> CliResult<(Quiver, DimVector)> {
    let q = quiver_flag(args)?.ok_or_else(|| Failure::Usage(format!("{verb} needs --quiver")))?;
    let d = DimVector::parse_csv(require(&args.dims, "dims", verb)?)?;
    if d.len() != q.vertex_count() {
        return Err(Failure::Usage(format!(
            "--dims has {} entries for {} vertices",
            d.len(),
            q.vertex_count()
        )));
    }
    Ok((q, d))
}

fn dispatch(args: &Args) -> CliResult<Value> {
    let verb = args.verb.name();
    if args.suite.is_some() && args.verb != Verb::Verify {
        return Err(Failure::Usage(format!(
            "unexpected positional argument for {verb}"
        )));
    }
    match args.verb {
        Verb::Ext | Verb::Hom => {
            let (x, y) = load_pair(args, verb)?;
            let he = hom_ext(&x, &y)?;
            let rigid = is_rigid(&x.direct_sum(&y)?);
            let exceptional = if x == y {
                is_exceptional(&x)
            } else {
                is_exceptional_pair(&x, &y)
            };
            let mut r = he.report(rigid, exceptional);
            if args.verb == Verb::Hom {
                r["homGenerators"] = he
                    .hom_generators
                    .iter()
                    .map(|g| g.maps().iter().map(|m| m.to_json()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into();
            } else {
                r["extCocycles"] = he
                    .ext_cocycles
                    .iter()
                    .map(|c| c.iter().map(|m| m.to_json()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into();
            }
            Ok(r)
        }
        Verb::Rigid => {
            let x = load_single(args, verb, ring_flag(args)?)?;
            Ok(json!({"dims": x.dims().to_vec(), "rigid": is_rigid(&x)}))
        }
        Verb::Exceptional => {
            let x = load_single(args, verb, ring_flag(args)?)?;
            Ok(json!({"dims": x.dims().to_vec(), "exceptional": is_exceptional(&x)}))
        }
        Verb::Mutate => {
            let (x, y) = load_pair(args, verb)?;
            let m = match args.direction {
                Direction::Left => left_mutate(&x, &y)?,
                Direction::Right => right_mutate(&x, &y)?,
            };
            Ok(json!({
                "direction": if args.direction == Direction::Left { "left" } else { "right" },
                "case": m.case.name(),
                "dims": m.result.dims().to_vec(),
                "rep": m.result.to_json(),
            }))
        }
        Verb::Braid => {
            let q =
                quiver_flag(args)?.ok_or_else(|| Failure::Usage("braid needs --quiver".into()))?;
            let ring = ring_flag(args)?.unwrap_or(RingSpec::Integers);
            let word = match args.word.as_deref().map(str::trim) {
                None | Some("") => Vec::new(),
                Some(w) => w
                    .split(',')
                    .map(parse_letter)
                    .collect::<crate::error::Result<Vec<_>>>()?,
            };
            let start = standard_sequence(&q, ring)?;
            let (end, trace) = braid_trace(&start, &word)?;
            Ok(json!({
                "start": start.dims().iter().map(|d| d.to_vec()).collect::<Vec<_>>(),
                "trace": trace,
                "final": end.items().iter().map(Rep::to_json).collect::<Vec<_>>(),
            }))
        }
        Verb::Schur => {
            let (q, d) = dims_arg(args, verb)?;
            match is_real_schur_root(&q, &d, bound(args)?)? {
                SchurTest::Root => {
                    Ok(json!({"dims": d.to_vec(), "verdict": "Root", "realSchurRoot": true}))
                }
                SchurTest::BoundedFalse => Err(Failure::Domain(Error::BoundExceeded)),
                SchurTest::PrefilterFalse | SchurTest::OrbitExhausted => {
                    Err(Failure::Domain(Error::NotSchurRoot))
                }
            }
        }
        Verb::Construct => {
            let (q, d) = dims_arg(args, verb)?;
            let ring = ring_flag(args)?.unwrap_or(RingSpec::Integers);
            let x = exceptional_lattice(&q, &d, ring, bound(args)?)?;
            Ok(
                json!({"dims": d.to_vec(), "ring": ring.to_string(), "exceptional": true, "rep": x.to_json()}),
            )
        }
        Verb::Decompose => {
            let x = load_single(args, verb, ring_flag(args)?)?;
            let d = decompose_rigid_with(&x, args.prime, bound(args)?)?;
            Ok(d.report())
        }
        Verb::Lift => {
            let target = ring_flag(args)?
                .ok_or_else(|| Failure::Usage("lift needs --ring (the ring to lift to)".into()))?;
            let x = load_single(args, verb, None)?;
            let h = RingHom::new(target, x.ring())?;
            let l = lift_rigid(&x, &h)?;
            Ok(json!({"ring": target.to_string(), "rigid": true, "rep": l.to_json()}))
        }
        Verb::Basechange => {
            let target = ring_flag(args)?.ok_or_else(|| {
                Failure::Usage("basechange needs --ring (the target ring)".into())
            })?;
            let q = quiver_flag(args)?;
            if let (Some(px), Some(py)) = (&args.rep_x, &args.rep_y) {
                let (x, y) = (
                    load_rep(px, None, q.as_ref())?,
                    load_rep(py, None, q.as_ref())?,
                );
                let h = RingHom::new(x.ring(), target)?;
                let holds = check_base_change(&x, &y, &h)?;
                let before = cokernel(&crate::homology::differential(&x, &y)?).module;
                let after = cokernel(&crate::homology::differential(
                    &x.base_change(&h)?,
                    &y.base_change(&h)?,
                )?)
                .module;
                Ok(json!({
                    "holds": holds,
                    "extSource": before.invariant_strings(),
                    "extSourceChanged": before.base_change(&h)?.invariant_strings(),
                    "extTarget": after.invariant_strings(),
                }))
            } else {
                let x = load_single(args, verb, None)?;
                let y = x.base_change(&RingHom::new(x.ring(), target)?)?;
                Ok(json!({"rep": y.to_json()}))
            }
        }
        Verb::Verify => {
            let name = args
                .suite
                .as_deref()
                .ok_or_else(|| Failure::Usage("verify needs a suite name".into()))?;
            let suite: Suite = name.parse().map_err(Failure::Usage)?;
            let report = run_suite(suite, args.seed, args.size.unwrap_or(suite.default_size()));
            Ok(report.to_json())
        }
    }
}
