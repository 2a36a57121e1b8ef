//! Command-line front end. Reports go to stdout as JSON lines, one per
//! check; a short human summary goes to stderr.
//!
//! Exit codes: 0 when a verdict was computed (whatever it is), 2 for input
//! errors, 3 when a size guard refused the computation.

use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::examples::{self, ExampleBundle, ExampleObject};
use crate::field::{Backend, Field, Rational};
use crate::frames::{self, Frame};
use crate::io::{matrix_json, one_based, parse_vector, vector_json, ArrangementFile, FrameFile};
use crate::poly::{self, BivariatePoly, Interval};
use crate::reconstruct;
use crate::report::{Certainty, Report};
use crate::subspaces::{self, Arrangement, ROUNDING_MAX_DEN};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "PHASELAB_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "phaselab",
    version,
    about = "Exact checks for phase retrieval by vectors and subspaces"
)]
pub struct Cli {
    /// Arithmetic backend; defaults to the input file's `scalars` field.
    #[arg(long, global = true, value_parser = parse_backend)]
    backend: Option<Backend>,
    /// Include wall time in JSON reports (makes reruns differ).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_backend(s: &str) -> std::result::Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run checks on a frame or an arrangement file.
    #[command(subcommand)]
    Check(CheckTarget),
    /// Orthogonal complements: a frame becomes its hyperplanes, an arrangement its perps.
    Perp {
        /// Input file, or `-` for stdin.
        file: Option<String>,
    },
    /// Print a built-in example as a frame or arrangement file.
    #[command(subcommand)]
    Gen(GenTarget),
    /// Count real roots of `f(1, t)` for a bivariate polynomial file.
    Sturm(SturmArgs),
    /// Reconstruct a signal from its measurement magnitudes by sign enumeration.
    Reconstruct(ReconstructArgs),
    /// Randomized search for rank-two symmetric matrices annihilated by the projections.
    Zprobe(ZprobeArgs),
}

#[derive(Subcommand, Debug)]
enum CheckTarget {
    Frame(FrameCheck),
    Arrangement(ArrangementCheck),
}

#[derive(Args, Debug)]
struct FrameCheck {
    file: Option<String>,
    #[arg(long)]
    full_spark: bool,
    /// Complement property.
    #[arg(long)]
    cp: bool,
    /// Phase retrieval.
    #[arg(long)]
    pr: bool,
    #[arg(long)]
    tight: bool,
    #[arg(long)]
    scalable: bool,
}

#[derive(Args, Debug)]
struct ArrangementCheck {
    file: Option<String>,
    /// Rank of `{P_i x}` at the given vector.
    #[arg(long, num_args = 1.., allow_hyphen_values = true, value_name = "VEC")]
    edidin_witness: Option<Vec<String>>,
    /// Numerical search for a vector with deficient `{P_i x}`.
    #[arg(long)]
    edidin_search: bool,
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Checks `Σ a_i² P_i = A·I` for the weights given with `--weights`.
    #[arg(long, requires = "weights")]
    weighted_tight: bool,
    #[arg(long, num_args = 1.., allow_hyphen_values = true)]
    weights: Option<Vec<String>>,
    #[arg(long)]
    fusion_scalable: bool,
    /// Counting criteria for hyperplanes (`n ≤ 2d − 3`, `n = 2d − 2`).
    #[arg(long)]
    min_count: bool,
}

#[derive(Subcommand, Debug)]
enum GenTarget {
    R3Quintet,
    RdFamily {
        #[arg(long)]
        d: usize,
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        xs: Option<Vec<String>>,
    },
    R3Hyperplanes,
    R4Six,
}

#[derive(Args, Debug)]
struct SturmArgs {
    /// Polynomial file with `e34 e44 coefficient` lines, or `-` for stdin.
    #[arg(conflicts_with = "f0")]
    file: Option<String>,
    /// Use the built-in degree-10 eliminant.
    #[arg(long)]
    f0: bool,
    #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["A", "B"])]
    interval: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    file: Option<String>,
    #[arg(long, num_args = 1.., allow_hyphen_values = true, required = true)]
    signal: Vec<String>,
}

#[derive(Args, Debug)]
struct ZprobeArgs {
    file: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    timing: bool,
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("i/o error: {e}"))
}

impl Ctx<'_> {
    fn read_input(&mut self, file: Option<&str>) -> Result<String> {
        match file {
            None | Some("-") => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(io_error)?;
                Ok(s)
            }
            Some(path) => {
                std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
            }
        }
    }

    fn emit(&mut self, report: Report, summary: &str, started: Instant) -> Result<()> {
        let ms = started.elapsed().as_secs_f64() * 1e3;
        let report = if self.timing { report.with_timing(ms) } else { report };
        writeln!(self.out, "{}", report.to_json_line()).map_err(io_error)?;
        writeln!(
            self.err,
            "{}: {summary} [{}] ({ms:.1} ms)",
            report.check,
            report.certainty.as_str()
        )
        .map_err(io_error)
    }

    fn note(&mut self, text: &str) -> Result<()> {
        writeln!(self.err, "{text}").map_err(io_error)
    }
}

/// Parses arguments and runs one command, returning the process exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    2
                }
            };
        }
    };
    let mut ctx = Ctx {
        stdin,
        out: stdout,
        err: stderr,
        timing: cli.timing,
    };
    match configure_threads().and_then(|_| dispatch(&cli, &mut ctx)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with in-memory input and output; `args` excludes the program name.
pub fn run_captured(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let full = std::iter::once("phaselab").chain(args.iter().copied());
    let code = run(full, &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Guard(_) => 3,
        _ => 2,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidInput(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    // Fails only if the pool already exists, e.g. on a second in-process run.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<()> {
    match &cli.command {
        Command::Check(CheckTarget::Frame(args)) => {
            let file = FrameFile::parse(&ctx.read_input(args.file.as_deref())?)?;
            match cli.backend.unwrap_or(file.backend()) {
                Backend::Exact => check_frame::<Rational>(&file.build()?, args, ctx),
                Backend::Float => check_frame::<f64>(&file.build()?, args, ctx),
            }
        }
        Command::Check(CheckTarget::Arrangement(args)) => {
            let file = ArrangementFile::parse(&ctx.read_input(args.file.as_deref())?)?;
            match cli.backend.unwrap_or(file.backend()) {
                Backend::Exact => check_arrangement::<Rational>(&file.build()?, args, ctx),
                Backend::Float => check_arrangement::<f64>(&file.build()?, args, ctx),
            }
        }
        Command::Perp { file } => {
            let text = ctx.read_input(file.as_deref())?;
            perp(&text, cli.backend, ctx)
        }
        Command::Gen(target) => gen(target, cli.backend, ctx),
        Command::Sturm(args) => sturm(args, ctx),
        Command::Reconstruct(args) => {
            let file = FrameFile::parse(&ctx.read_input(args.file.as_deref())?)?;
            match cli.backend.unwrap_or(file.backend()) {
                Backend::Exact => reconstruct_cmd::<Rational>(&file.build()?, &args.signal, ctx),
                Backend::Float => reconstruct_cmd::<f64>(&file.build()?, &args.signal, ctx),
            }
        }
        Command::Zprobe(args) => {
            let file = ArrangementFile::parse(&ctx.read_input(args.file.as_deref())?)?;
            match cli.backend.unwrap_or(file.backend()) {
                Backend::Exact => zprobe::<Rational>(&file.build()?, args, ctx),
                Backend::Float => zprobe::<f64>(&file.build()?, args, ctx),
            }
        }
    }
}

fn proof_or_evidence<T: Field>() -> Certainty {
    Certainty::for_backend(T::BACKEND, true)
}

fn report<T: Field>(check: &str, verdict: impl Into<Value>, certainty: Certainty) -> Report {
    let r = Report::new(check, verdict, certainty, T::BACKEND);
    if T::BACKEND == Backend::Float {
        r.tolerance("tol", T::default_tol())
    } else {
        r
    }
}

fn opt_indices(v: &Option<Vec<usize>>) -> Value {
    v.as_deref().map(one_based).unwrap_or(Value::Null)
}

fn render_all<T: Field>(values: &[T]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(v.render())).collect())
}

fn check_frame<T: Field>(frame: &Frame<T>, args: &FrameCheck, ctx: &mut Ctx) -> Result<()> {
    let all = !(args.full_spark || args.cp || args.pr || args.tight || args.scalable);
    let n = frame.len();
    if all || args.full_spark {
        let t = Instant::now();
        let r = frames::full_spark(frame)?;
        let rep = report::<T>("full_spark", r.full_spark, proof_or_evidence::<T>())
            .with("dependent", opt_indices(&r.dependent));
        ctx.emit(rep, &r.full_spark.to_string(), t)?;
    }
    for (enabled, name) in [(args.cp, "complement_property"), (args.pr, "phase_retrieval")] {
        if !(all || enabled) {
            continue;
        }
        let t = Instant::now();
        let r = if name == "phase_retrieval" {
            frames::does_phase_retrieval(frame)?
        } else {
            frames::complement_property(frame)?
        };
        let rep = report::<T>(name, r.holds, proof_or_evidence::<T>())
            .with("witness", opt_indices(&r.witness))
            .with("witness_complement", opt_indices(&r.witness_complement(n)))
            .with("short_circuit", r.short_circuit)
            .with("subsets_checked", r.subsets_checked);
        ctx.emit(rep, &r.holds.to_string(), t)?;
    }
    if all || args.tight {
        let t = Instant::now();
        let a = frames::is_tight(frame);
        let rep = report::<T>("tight", a.is_some(), proof_or_evidence::<T>()).with(
            "multiple",
            a.as_ref().map(|v| Value::String(v.render())).unwrap_or(Value::Null),
        );
        ctx.emit(rep, &a.is_some().to_string(), t)?;
    }
    if all || args.scalable {
        let t = Instant::now();
        let cert = frames::scalability(frame)?;
        let mut rep = report::<T>("scalable", cert.is_some(), proof_or_evidence::<T>());
        rep = match &cert {
            Some(c) => rep
                .with("weights", render_all(&c.weights))
                .with("multiple", c.multiple.render())
                .with("verified", c.verify(frame)),
            None => rep.with("weights", Value::Null).with("lp", "infeasible"),
        };
        ctx.emit(rep, &cert.is_some().to_string(), t)?;
    }
    Ok(())
}

fn check_arrangement<T: Field>(arr: &Arrangement<T>, args: &ArrangementCheck, ctx: &mut Ctx) -> Result<()> {
    let any = args.edidin_witness.is_some()
        || args.edidin_search
        || args.weighted_tight
        || args.fusion_scalable
        || args.min_count;
    if !any {
        return Err(Error::InvalidInput(
            "choose a check: --edidin-witness, --edidin-search, --weighted-tight, --fusion-scalable or --min-count"
                .into(),
        ));
    }
    if let Some(words) = &args.edidin_witness {
        let t = Instant::now();
        let x = parse_vector::<T>(words)?;
        let w = subspaces::edidin_verify_witness(arr, &x)?;
        let rep = report::<T>("edidin_witness", w.deficient(), proof_or_evidence::<T>())
            .with("x", vector_json(&w.x))
            .with("rank", w.rank)
            .with("dim", arr.dim());
        let summary = format!(
            "rank {} of {} ({})",
            w.rank,
            arr.dim(),
            if w.deficient() { "deficient" } else { "spans" }
        );
        ctx.emit(rep, &summary, t)?;
    }
    if args.edidin_search {
        let t = Instant::now();
        let r = subspaces::edidin_numeric_falsify(arr, args.restarts, args.seed);
        let found = r.witness.is_some();
        let certainty = if found {
            proof_or_evidence::<T>()
        } else {
            Certainty::Evidence
        };
        let verdict = if found { "witness" } else { "no witness" };
        let mut rep = report::<T>("edidin_search", verdict, certainty)
            .seed(r.seed)
            .tolerance("tau", r.tau)
            .with("restarts", r.restarts)
            .with("min_sigma", r.min_sigma)
            .with("best_restart", r.best_restart)
            .with("best_x", json!(r.best_x.entries()))
            .with("max_denominator", ROUNDING_MAX_DEN);
        rep = match &r.witness {
            Some(w) => rep.with("witness", json!({ "x": vector_json(&w.x), "rank": w.rank })),
            None => rep.with("witness", Value::Null),
        };
        ctx.emit(rep, &format!("{verdict}, min sigma {:e}", r.min_sigma), t)?;
    }
    if args.weighted_tight {
        let t = Instant::now();
        let words = args.weights.as_deref().unwrap_or_default();
        let a = parse_vector::<T>(words)?;
        let r = subspaces::weighted_tight_check(arr, a.entries())?;
        let mut rep =
            report::<T>("weighted_tight", r.is_some(), proof_or_evidence::<T>()).with("weights", vector_json(&a));
        if let Some(w) = &r {
            rep = rep
                .with("multiple", w.multiple.render())
                .with("complement_multiple", w.complement_multiple.render())
                .with("complement_verified", w.complement_verified);
        }
        ctx.emit(rep, &r.is_some().to_string(), t)?;
    }
    if args.fusion_scalable {
        let t = Instant::now();
        let cert = subspaces::fusion_scalability(arr)?;
        let mut rep = report::<T>("fusion_scalable", cert.is_some(), proof_or_evidence::<T>());
        rep = match &cert {
            Some(c) => rep
                .with("weights", render_all(&c.weights))
                .with("verified", c.verify(arr)),
            None => rep.with("weights", Value::Null).with("lp", "infeasible"),
        };
        ctx.emit(rep, &cert.is_some().to_string(), t)?;
    }
    if args.min_count {
        let t = Instant::now();
        let (n, d) = (arr.len(), arr.dim());
        let witness = if n + 3 <= 2 * d {
            Some(subspaces::edidin_small_n_witness(arr)?)
        } else if n + 2 == 2 * d {
            subspaces::minimal_fullspark_necessity(arr)?
        } else {
            None
        };
        let verdict = match (&witness, n + 2 <= 2 * d) {
            (Some(w), _) if w.deficient() => "fails phase retrieval",
            (_, true) => "inconclusive",
            (_, false) => "not applicable",
        };
        let mut rep = report::<T>("min_count", verdict, proof_or_evidence::<T>())
            .with("n", n)
            .with("dim", d);
        if let Some(w) = &witness {
            rep = rep.with("witness", json!({ "x": vector_json(&w.x), "rank": w.rank }));
        }
        ctx.emit(rep, verdict, t)?;
    }
    Ok(())
}

fn perp(text: &str, backend: Option<Backend>, ctx: &mut Ctx) -> Result<()> {
    let is_frame = serde_json::from_str::<Value>(text)
        .ok()
        .is_some_and(|v| v.get("vectors").is_some());
    let (json, count) = if is_frame {
        let file = FrameFile::parse(text)?;
        match backend.unwrap_or(file.backend()) {
            Backend::Exact => perp_frame::<Rational>(&file)?,
            Backend::Float => perp_frame::<f64>(&file)?,
        }
    } else {
        let file = ArrangementFile::parse(text)?;
        match backend.unwrap_or(file.backend()) {
            Backend::Exact => perp_arrangement::<Rational>(&file)?,
            Backend::Float => perp_arrangement::<f64>(&file)?,
        }
    };
    writeln!(ctx.out, "{json}").map_err(io_error)?;
    ctx.note(&format!("perp: {count} orthogonal complements"))
}

fn perp_frame<T: Field>(file: &FrameFile) -> Result<(String, usize)> {
    let frame: Frame<T> = file.build()?;
    let arr = subspaces::arrangement_from_perps(&frame)?;
    Ok((
        ArrangementFile::from_arrangement(&arr, file.name.as_deref()).to_json(),
        arr.len(),
    ))
}

fn perp_arrangement<T: Field>(file: &ArrangementFile) -> Result<(String, usize)> {
    let arr: Arrangement<T> = file.build()?;
    Ok((
        ArrangementFile::from_arrangement(&arr.perps(), file.name.as_deref()).to_json(),
        arr.len(),
    ))
}

/// Serializes a generated example in the matching file format.
pub fn bundle_json(bundle: &ExampleBundle) -> String {
    let name = Some(bundle.name.as_str());
    match &bundle.object {
        ExampleObject::Frame(f) => FrameFile::from_frame(f, name).to_json(),
        ExampleObject::FloatFrame(f) => FrameFile::from_frame(f, name).to_json(),
        ExampleObject::Arrangement(a) => ArrangementFile::from_arrangement(a, name).to_json(),
    }
}

fn gen(target: &GenTarget, backend: Option<Backend>, ctx: &mut Ctx) -> Result<()> {
    let mut bundle = match target {
        GenTarget::R3Quintet => examples::gen_r3_quintet(),
        GenTarget::RdFamily { d, xs } => {
            let xs = xs
                .as_deref()
                .map(|words| parse_vector::<Rational>(words).map(|v| v.into_entries()))
                .transpose()?;
            examples::gen_rd_family(*d, xs.as_deref())?
        }
        GenTarget::R3Hyperplanes => examples::gen_r3_hyperplane_quintet(),
        GenTarget::R4Six => examples::gen_r4_six_hyperplanes(),
    };
    if let Some(xs) = &bundle.xs {
        let list: Vec<String> = xs.iter().map(Field::render).collect();
        bundle.name = format!("{} xs={}", bundle.name, list.join(","));
    }
    let json = match (backend, &bundle.object) {
        (Some(Backend::Exact), ExampleObject::FloatFrame(_)) => {
            return Err(Error::InvalidInput(format!(
                "{} has irrational entries and exists only in the float backend",
                bundle.name
            )))
        }
        (Some(Backend::Float), ExampleObject::Frame(f)) => {
            FrameFile::from_frame(&f.to_f64(), Some(&bundle.name)).to_json()
        }
        (Some(Backend::Float), ExampleObject::Arrangement(a)) => {
            ArrangementFile::from_arrangement(&a.to_f64(), Some(&bundle.name)).to_json()
        }
        _ => bundle_json(&bundle),
    };
    writeln!(ctx.out, "{json}").map_err(io_error)?;
    let expected: Vec<String> = bundle.expectations.iter().map(|e| e.property.to_string()).collect();
    ctx.note(&format!(
        "gen: {} ({})\nexpected: {}",
        bundle.name,
        bundle.backend(),
        expected.join(", ")
    ))
}

fn sturm(args: &SturmArgs, ctx: &mut Ctx) -> Result<()> {
    let t = Instant::now();
    let embedded = poly::f0_dataset();
    let (source, f) = if args.f0 {
        ("f0".to_string(), embedded.clone())
    } else {
        let text = ctx.read_input(args.file.as_deref())?;
        let label = args.file.clone().unwrap_or_else(|| "-".into());
        (label, BivariatePoly::parse_text(&text)?)
    };
    let p = f.specialize_x34_one();
    if p.is_zero() {
        return Err(Error::InvalidInput("f(1, t) is the zero polynomial".into()));
    }
    let interval = match &args.interval {
        Some(ends) => {
            let a = Rational::parse_scalar(&ends[0])?;
            let b = Rational::parse_scalar(&ends[1])?;
            Interval::Closed(a, b)
        }
        None => Interval::Real,
    };
    let count = poly::count_real_roots(&p, &interval)?;
    let chain = poly::sturm_chain(&p.squarefree_part())?;
    let total_degree = f.terms().iter().map(|(a, b, _)| a + b).max().unwrap_or(0);
    let mut rep = Report::new("sturm", count, Certainty::Proof, Backend::Exact)
        .with("source", source)
        .with("degree", p.degree().unwrap_or(0))
        .with("chain_length", chain.len())
        .with(
            "interval",
            match &interval {
                Interval::Real => json!("real line"),
                Interval::Closed(a, b) => json!([a.render(), b.render()]),
            },
        )
        .with("homogeneous", f.is_homogeneous(total_degree))
        .with("total_degree", total_degree)
        .with("matches_embedded_f0", f == embedded);
    if interval == Interval::Real && f.is_homogeneous(total_degree) {
        // f(t, 1) = t^deg f(1, 1/t) away from t = 0
        let q = f.specialize_x44_one();
        if !q.is_zero() {
            rep = rep.with("roots_of_f_t_1", poly::count_real_roots(&q, &Interval::Real)?);
        }
    }
    ctx.emit(rep, &format!("real roots: {count}"), t)
}

fn reconstruct_cmd<T: Field>(frame: &Frame<T>, signal: &[String], ctx: &mut Ctx) -> Result<()> {
    let t = Instant::now();
    let x = parse_vector::<T>(signal)?;
    let b = reconstruct::measure(frame, &x)?;
    let classes = reconstruct::reconstruct_brute(frame, &b)?;
    let unique = classes.len() == 1;
    let rep = report::<T>("reconstruct", unique, proof_or_evidence::<T>())
        .with("signal", vector_json(&x))
        .with("magnitudes", render_all(&b.magnitudes))
        .with("classes", Value::Array(classes.iter().map(vector_json).collect()));
    ctx.emit(rep, &format!("{} solution class(es)", classes.len()), t)
}

fn zprobe<T: Field>(arr: &Arrangement<T>, args: &ZprobeArgs, ctx: &mut Ctx) -> Result<()> {
    let t = Instant::now();
    let r = subspaces::z_random_probe(arr, args.trials, args.seed);
    let found = r.example.is_some();
    let verdict = if found { "member" } else { "no member" };
    let certainty = if found {
        proof_or_evidence::<T>()
    } else {
        Certainty::Evidence
    };
    let rep = report::<T>("zprobe", verdict, certainty)
        .seed(r.seed)
        .tolerance("near_tol", r.near_tol)
        .with("trials", r.trials)
        .with("min_residual", r.min_residual)
        .with("near_members", r.near_members)
        .with("exact_members", r.exact_members)
        .with(
            "example",
            r.example.as_ref().map(|z| matrix_json(&z.q)).unwrap_or(Value::Null),
        );
    ctx.emit(rep, &format!("{verdict}, min residual {:e}", r.min_residual), t)
}
