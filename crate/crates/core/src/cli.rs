//! Command-line front end. [`run`] does the work and returns the bytes and
//! exit code, so the binary is a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: 0 when everything checked holds, 1 when a mathematical
//! violation or a violated hypothesis is found, 2 for input or usage errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::brace::{construct, verify_brace_axioms, Brace, BraceKind};
use crate::error::Error;
use crate::flows::{group_of_flows, roundtrip_scalar};
use crate::group::{bound_formulas, FiniteGroupTable};
use crate::json::{
    brace_to_value, canonical_string, content_hash, group_to_value, parse_structure, prelie_to_value,
    provenance, Structure,
};
use crate::prelie::{scale_product, PreLieRing};
use crate::suites::run_suite;
use crate::transform::{strong_dot, BraceTransforms, StrongDotVariant};

#[derive(Debug, Parser)]
#[command(name = "braceforge", version, about = "Exact computations with finite braces, pre-Lie rings and p-groups")]
pub struct Cli {
    /// Worker threads for the exhaustive sweeps; results do not depend on it.
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
    /// Add wall-clock timing to reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a brace, pre-Lie ring or group and write its JSON.
    Construct(ConstructArgs),
    /// Run a named verification suite on a JSON input.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        input: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Turn a brace into a pre-Lie ring.
    Transform {
        #[arg(long, value_enum)]
        which: Which,
        /// Formula for `strong-dot`.
        #[arg(long, value_enum, default_value = "standard")]
        variant: Variant,
        /// Multiply the product by -(1+p+...+p^n), ready for `flows`.
        #[arg(long)]
        scaled: bool,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group of flows of a pre-Lie ring, as a brace.
    Flows {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare the result with this brace and print a round-trip report.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Series, predicates and bounds of a group (or of a brace's adjoint group).
    AnalyzeGroup {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate the derived-length and generator bounds for given p, k, m.
    Bounds {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Trivial,
    RadicalCyclic,
    RadicalTriangular,
    RadicalTwisted,
    DirectSum,
    PrelieZero,
    PrelieRadical,
    CyclicGroup,
    ElementaryGroup,
    Heisenberg,
    Metacyclic,
    AdjointGroup,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub exponents: Vec<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub r: Option<u64>,
    /// Brace JSON files for `direct-sum`.
    #[arg(long)]
    pub left: Option<PathBuf>,
    #[arg(long)]
    pub right: Option<PathBuf>,
    /// Brace JSON for `adjoint-group`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    DotPa,
    Bullet,
    StrongDot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Standard,
    FullRange,
    TimesP,
}

impl From<Variant> for StrongDotVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Standard => StrongDotVariant::STANDARD,
            Variant::FullRange => StrongDotVariant::FULL_RANGE,
            Variant::TimesP => StrongDotVariant::TIMES_P,
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

/// Input problems exit 2, everything mathematical exits 1.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Structural(_) | Error::Contract(_) | Error::TableCap { .. } => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Runs one command, inside a dedicated thread pool when `--parallel` is set.
pub fn run(cli: Cli) -> Outcome {
    let go = || match execute(&cli) {
        Ok(o) => o,
        Err(f) => Outcome {
            code: f.code,
            stdout: Vec::new(),
            stderr: format!("error: {}\n", f.message),
        },
    };
    match cli.parallel {
        Some(0) => Outcome {
            code: 2,
            stdout: Vec::new(),
            stderr: "error: --parallel must be at least 1\n".into(),
        },
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Outcome {
                code: 2,
                stdout: Vec::new(),
                stderr: format!("error: {e}\n"),
            },
        },
        None => go(),
    }
}

/// Parses `args` (without the program name) and runs them; usage errors
/// exit 2 like the binary.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("braceforge")).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(cli),
        Err(e) => Outcome {
            code: if e.use_stderr() { 2 } else { 0 },
            stdout: if e.use_stderr() { Vec::new() } else { e.to_string().into_bytes() },
            stderr: if e.use_stderr() { e.to_string() } else { String::new() },
        },
    }
}

fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify { suite, input, report } => cmd_verify(suite, input, report.as_deref(), cli.timing),
        Command::Transform {
            which,
            variant,
            scaled,
            input,
            out,
        } => cmd_transform(*which, *variant, *scaled, input, out.as_deref()),
        Command::Flows { input, out, compare } => cmd_flows(input, out.as_deref(), compare.as_deref()),
        Command::AnalyzeGroup { input, report } => cmd_analyze(input, report.as_deref(), cli.timing),
        Command::Bounds { p, k, m } => cmd_bounds(*p, *k, *m),
    }
}

fn read_structure(path: &Path) -> Result<Structure, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_structure(&text)?)
}

fn read_brace(path: &Path) -> Result<Brace, Failure> {
    match read_structure(path)? {
        Structure::Brace(b) => Ok(b),
        other => Err(Failure::usage(format!("{} holds a {}, expected a brace", path.display(), other.kind()))),
    }
}

/// Reads a brace and insists that it satisfies the axioms.
fn read_verified_brace(path: &Path) -> Result<Brace, Failure> {
    let b = read_brace(path)?;
    verify_brace_axioms(&b).into_result()?;
    Ok(b)
}

/// Writes canonical JSON to `out`, or returns it as stdout.
fn emit(v: &Value, out: Option<&Path>, code: i32) -> CmdResult {
    let text = canonical_string(v);
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                code,
                ..Outcome::default()
            })
        }
        None => Ok(Outcome {
            code,
            stdout: text.into_bytes(),
            stderr: String::new(),
        }),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: Kind) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("--{flag} is required for {kind:?}")))
}

fn cmd_construct(a: &ConstructArgs) -> CmdResult {
    let p = || need(a.p, "p", a.kind);
    // every construction error is an invalid parameter
    let invalid = |e: Error| Failure::usage(e.to_string());
    let brace = |kind: BraceKind| construct(&kind).map(|b| brace_to_value(&b)).map_err(invalid);
    let v = match a.kind {
        Kind::Trivial => brace(BraceKind::Trivial {
            p: p()?,
            exponents: a.exponents.clone(),
        })?,
        Kind::RadicalCyclic => brace(BraceKind::RadicalCyclic {
            p: p()?,
            n: need(a.n, "n", a.kind)?,
        })?,
        Kind::RadicalTriangular => brace(BraceKind::RadicalTriangular {
            p: p()?,
            d: need(a.d, "d", a.kind)?,
        })?,
        Kind::RadicalTwisted => brace(BraceKind::RadicalTwisted { p: p()? })?,
        Kind::DirectSum => {
            let l = read_verified_brace(a.left.as_deref().ok_or_else(|| Failure::usage("--left is required"))?)?;
            let r = read_verified_brace(a.right.as_deref().ok_or_else(|| Failure::usage("--right is required"))?)?;
            brace_to_value(&crate::brace::direct_sum(&l, &r).map_err(invalid)?)
        }
        Kind::PrelieZero => {
            let g = crate::abelian::AbelianPGroup::new(p()?, sorted(&a.exponents)).map_err(invalid)?;
            prelie_to_value(&PreLieRing::zero(g), None)
        }
        Kind::PrelieRadical => {
            prelie_to_value(&PreLieRing::radical_cyclic(p()?, need(a.n, "n", a.kind)?).map_err(invalid)?, None)
        }
        Kind::CyclicGroup => group_to_value(&FiniteGroupTable::cyclic(p()?, need(a.n, "n", a.kind)?).map_err(invalid)?),
        Kind::ElementaryGroup => {
            group_to_value(&FiniteGroupTable::elementary(p()?, need(a.d, "d", a.kind)?).map_err(invalid)?)
        }
        Kind::Heisenberg => group_to_value(&FiniteGroupTable::heisenberg(p()?).map_err(invalid)?),
        Kind::Metacyclic => group_to_value(
            &FiniteGroupTable::metacyclic(
                p()?,
                need(a.m, "m", a.kind)?,
                need(a.k, "k", a.kind)?,
                need(a.r, "r", a.kind)?,
            )
            .map_err(invalid)?,
        ),
        Kind::AdjointGroup => {
            let b = read_verified_brace(a.input.as_deref().ok_or_else(|| Failure::usage("--input is required"))?)?;
            group_to_value(&FiniteGroupTable::adjoint_group(&b)?)
        }
    };
    emit(&v, a.out.as_deref(), 0)
}

fn sorted(e: &[u32]) -> Vec<u32> {
    let mut e = e.to_vec();
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

fn cmd_verify(suite: &str, input: &Path, report: Option<&Path>, timing: bool) -> CmdResult {
    let s = read_structure(input)?;
    let start = Instant::now();
    let mut r = run_suite(suite, &s)?;
    if timing {
        r.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    emit(&r.to_value(), report, if r.pass { 0 } else { 1 })
}

fn cmd_transform(which: Which, variant: Variant, scaled: bool, input: &Path, out: Option<&Path>) -> CmdResult {
    let b = read_verified_brace(input)?;
    let t = BraceTransforms::new(&b)?;
    let n = b.log_order();
    let (ring, name, top) = match which {
        Which::DotPa => (t.dot_pa_ring()?, "dot-pa".to_string(), n),
        Which::Bullet => (t.bullet_ring()?, "bullet".to_string(), n),
        Which::StrongDot => {
            let v: StrongDotVariant = variant.into();
            let top = if variant == Variant::FullRange { b.prime() as u32 } else { n };
            (strong_dot(&t, v)?, format!("strong-dot/{}", v.name()), top)
        }
    };
    let (ring, name) = if scaled {
        (scale_product(&ring, roundtrip_scalar(&b, top))?, format!("{name}/scaled"))
    } else {
        (ring, name)
    };
    emit(&prelie_to_value(&ring, Some(provenance(&b, &name, t.xi()))), out, 0)
}

fn cmd_flows(input: &Path, out: Option<&Path>, compare: Option<&Path>) -> CmdResult {
    let ring = match read_structure(input)? {
        Structure::PreLie(r) => r,
        other => return Err(Failure::usage(format!("expected a pre-Lie ring, got a {}", other.kind()))),
    };
    crate::prelie::verify_prelie_axioms(&ring).into_result()?;
    let b = group_of_flows(&ring)?;
    let mut v = brace_to_value(&b);
    v["provenance"] = json!({
        "source_prelie": content_hash(&prelie_to_value(&ring, None)),
        "construction": "group-of-flows",
    });
    let Some(path) = compare else {
        return emit(&v, out, 0);
    };
    let want = read_brace(path)?;
    let mismatch = if want.group() != b.group() {
        Some(Vec::new())
    } else {
        let n = b.order();
        b.star_table()
            .iter()
            .zip(want.star_table())
            .position(|(x, y)| x != y)
            .map(|k| vec![(k / n) as u32, (k % n) as u32])
    };
    let pass = mismatch.is_none();
    if let Some(path) = out {
        emit(&v, Some(path), 0)?;
    }
    let report = json!({ "pass": pass, "variant": "flows", "first_mismatch": mismatch });
    let text = canonical_string(&report);
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        stdout: text.into_bytes(),
        stderr: String::new(),
    })
}

fn group_summary(g: &FiniteGroupTable) -> Value {
    let sizes = |v: Vec<crate::subgroup::Subgroup>| v.iter().map(|h| h.len()).collect::<Vec<_>>();
    json!({
        "order": g.order(),
        "prime": g.prime(),
        "log_order": g.log_order(),
        "log_exponent": g.log_exponent(),
        "abelian": g.is_abelian(),
        "class": g.class(),
        "derived_length": g.derived_length(),
        "powerful": g.is_powerful(),
        "uniform": g.is_uniform(),
        "generator_rank": g.generator_rank(),
        "lower_central_series": sizes(g.lower_central_series()),
        "derived_series": sizes(g.derived_series()),
        "power_subgroup": g.power_subgroup(g.prime()).len(),
        "coclass": g.coclass(),
    })
}

fn cmd_analyze(input: &Path, report: Option<&Path>, timing: bool) -> CmdResult {
    let (g, source) = match read_structure(input)? {
        Structure::Group(g) => (g, "group"),
        Structure::Brace(b) => {
            verify_brace_axioms(&b).into_result()?;
            (FiniteGroupTable::adjoint_group(&b)?, "adjoint group")
        }
        Structure::PreLie(_) => return Err(Failure::usage("analyze-group needs a group or a brace")),
    };
    let start = Instant::now();
    let structure = Structure::Group(g);
    let mut r = run_suite("all", &structure)?;
    if timing {
        r.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let Structure::Group(g) = &structure else { unreachable!() };
    let v = json!({
        "source": source,
        "summary": group_summary(g),
        "report": r.to_value(),
    });
    emit(&v, report, if r.pass { 0 } else { 1 })
}

fn cmd_bounds(p: u64, k: u32, m: u32) -> CmdResult {
    let b = bound_formulas(p, k, m).map_err(|e| Failure::usage(e.to_string()))?;
    let mut v = serde_json::to_value(&b).expect("bounds serialize");
    v["h_upper_value"] = match b.h_upper.as_ref().and_then(|h| h.value()) {
        Some(q) => Value::String(q.to_string()),
        None => Value::Null,
    };
    emit(&v, None, 0)
}
