//! Command-line front end. Results go to stdout (or `--out`) as JSON;
//! failures go to stderr as `{"kind", "message", ...}`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 domain error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::acceptance::{self, DEFAULT_SEED};
use crate::classify::{classify, verify_classification};
use crate::error::Error;
use crate::geom::{self, concyclic4};
use crate::implicit::implicitize_quotient;
use crate::mesh::{self, MeshFormat};
use crate::pythagorean::{gen_tuple, verify_tuple, PythSeed, PythTuple, TupleCheck};
use crate::qpoly::{separable_test, QPoly2, Var};
use crate::random;
use crate::rat::{parse_rat, rat_to_string, Rat};
use crate::splitting::split_h11;
use crate::surface::{
    self, builtin_surface, contains_check, eval_surface, iso_line_samples, sample_grid,
    verification_grid, SurfaceSpec, BUILTIN_SURFACES,
};

pub const BUILTIN_POLYNOMIALS: [&str; 1] = ["beauregard"];

#[derive(Parser, Debug)]
#[command(
    name = "twocircles",
    version,
    about = "Exact tools for surfaces with two circles through each point"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor a bidegree-(1,1) quaternionic polynomial into u- and v-parts.
    Split(IoArgs),
    /// Implicit quartic of a quotient surface.
    Implicitize(SurfaceArgs),
    /// Classify a surface lying in Im H or S^3.
    Classify(SurfaceArgs),
    /// Evaluate a surface at one parameter pair.
    Eval {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        u: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        v: Rat,
    },
    /// Sample a surface on a grid and export it.
    Sample {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(2..))]
        grid: u32,
        #[arg(long, default_value = "-2:2", value_parser = parse_range, allow_hyphen_values = true)]
        u_range: (Rat, Rat),
        #[arg(long, default_value = "-2:2", value_parser = parse_range, allow_hyphen_values = true)]
        v_range: (Rat, Rat),
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Decimal digits for OBJ coordinates.
        #[arg(long, default_value_t = 12)]
        precision: usize,
    },
    /// Generate certified Pythagorean 6-tuples.
    GenPyth {
        /// Seed JSON `{"A", "B", "C", "D"}`; random seeds are drawn otherwise.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Check a Pythagorean 6-tuple exactly.
    VerifyPyth(IoArgs),
    /// List, print or check the built-in examples.
    Examples {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        check: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct IoArgs {
    /// Input JSON file, `-` or absent for stdin.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Surface spec JSON file, `-` for stdin.
    #[arg(long = "in", conflicts_with = "name")]
    input: Option<PathBuf>,
    /// Built-in surface name.
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Obj,
    Csv,
    Json,
}

impl From<Format> for MeshFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Obj => MeshFormat::Obj,
            Format::Csv => MeshFormat::Csv,
            Format::Json => MeshFormat::Json,
        }
    }
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(Rat, Rat), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let (lo, hi) = (parse_rat_arg(lo)?, parse_rat_arg(hi)?);
    if lo >= hi {
        return Err("range must satisfy lo < hi".into());
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Domain(Error),
    Report(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, out: Option<&Path>, text: &str) -> CliResult {
        match out {
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
        }
    }

    fn emit_json<T: Serialize>(&mut self, out: Option<&Path>, value: &T) -> CliResult {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| Failure::Domain(Error::InternalInconsistency(e.to_string())))?;
        text.push('\n');
        self.emit(out, &text)
    }
}

fn read_input(path: Option<&Path>) -> std::result::Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("invalid {what} JSON: {e}")))
}

fn load_surface(args: &SurfaceArgs) -> std::result::Result<SurfaceSpec, Failure> {
    let spec = match &args.name {
        Some(name) => builtin_surface(name).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown surface {name:?}; choose one of {}",
                BUILTIN_SURFACES.join(", ")
            ))
        })?,
        None => parse_json(&read_input(args.input.as_deref())?, "surface spec")?,
    };
    spec.validate()?;
    Ok(spec)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                0
            } else {
                let _ = write!(stderr, "{e}");
                1
            };
        }
    };
    let mut io = Io { stdout, stderr };
    match dispatch(cli.command, &mut io) {
        Ok(()) => 0,
        Err(f) => {
            let (code, body) = match f {
                Failure::Usage(message) => (1, json!({"kind": "Usage", "message": message})),
                Failure::Domain(e) => (2, json!({"kind": e.kind(), "message": e.to_string()})),
                Failure::Report(v) => (2, v),
            };
            let _ = writeln!(io.stderr, "{body}");
            code
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> CliResult {
    match cmd {
        Command::Split(a) => {
            let q: QPoly2 = parse_json(&read_input(a.input.as_deref())?, "polynomial")?;
            io.emit_json(a.out.as_deref(), &split_h11(&q)?)
        }
        Command::Implicitize(a) => {
            let spec = load_surface(&a)?;
            let (n, d) = quotient_parts(&spec)?;
            io.emit_json(a.out.as_deref(), &implicitize_quotient(&n, &d)?)
        }
        Command::Classify(a) => {
            let spec = load_surface(&a)?;
            let cls = classify(&spec)?;
            verify_classification(&spec, &cls, 5)?;
            io.emit_json(a.out.as_deref(), &cls)
        }
        Command::Eval { surface, u, v } => {
            let spec = load_surface(&surface)?;
            let p = eval_surface(&spec, &u, &v)?;
            io.emit_json(
                surface.out.as_deref(),
                &json!({"u": rat_to_string(&u), "v": rat_to_string(&v), "point": p}),
            )
        }
        Command::Sample {
            surface,
            grid,
            u_range,
            v_range,
            format,
            precision,
        } => {
            let spec = load_surface(&surface)?;
            let g = sample_grid(
                &spec,
                (&u_range.0, &u_range.1),
                (&v_range.0, &v_range.1),
                grid as usize,
            )?;
            let text = mesh::render(&g, format.into(), precision)?;
            io.emit(surface.out.as_deref(), &text)?;
            if let Some(path) = &surface.out {
                let mut sidecar = path.clone().into_os_string();
                sidecar.push(".poles.json");
                io.emit_json(Some(Path::new(&sidecar)), &g.poles)?;
            }
            Ok(())
        }
        Command::GenPyth {
            input,
            out,
            seed,
            count,
        } => gen_pyth(io, input.as_deref(), out.as_deref(), seed, count),
        Command::VerifyPyth(a) => {
            let text = read_input(a.input.as_deref())?;
            let tuple = parse_tuple(&text)?;
            match verify_tuple(&tuple) {
                TupleCheck::Valid => io.emit_json(a.out.as_deref(), &json!({"status": "Valid"})),
                TupleCheck::Invalid {
                    defect,
                    bidegrees_ok,
                } => Err(Failure::Report(json!({
                    "kind": "InvalidTuple",
                    "message": "X1^2 + ... + X5^2 - X6^2 is not zero or a bidegree exceeds (2,2)",
                    "defect": defect,
                    "bidegrees_ok": bidegrees_ok,
                }))),
            }
        }
        Command::Examples { name, check } => examples(io, name.as_deref(), check),
        Command::Selftest { seed } => {
            let reports = acceptance::run_all(seed);
            for r in &reports {
                let _ = writeln!(io.stdout, "{r}");
            }
            let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Report(json!({
                    "kind": "SelftestFailed",
                    "message": format!("criteria {failed:?} failed"),
                })))
            }
        }
    }
}

/// `(N, D)` with the surface equal to `N·D^-1`.
fn quotient_parts(spec: &SurfaceSpec) -> std::result::Result<(QPoly2, QPoly2), Failure> {
    match spec {
        SurfaceSpec::Quotient { a, b } => Ok((a.clone(), b.clone())),
        SurfaceSpec::Abc { a, b, c } if a.is_constant() => {
            Ok((b.left_mul(&a.coef(0, 0).inv()?), c.clone()))
        }
        other => Err(Failure::Domain(Error::UnsupportedShape(format!(
            "implicitization needs a quotient spec, got {}",
            other.kind_name()
        )))),
    }
}

fn parse_tuple(text: &str) -> std::result::Result<PythTuple, Failure> {
    if let Ok(t) = serde_json::from_str::<PythTuple>(text) {
        return Ok(t);
    }
    let v: Value = parse_json(text, "tuple")?;
    match v.get("tuple") {
        Some(t) => serde_json::from_value(t.clone())
            .map_err(|e| Failure::Usage(format!("invalid tuple JSON: {e}"))),
        None => Err(Failure::Usage(
            "expected six polynomials or an object with \"tuple\"".into(),
        )),
    }
}

fn gen_pyth(
    io: &mut Io,
    input: Option<&Path>,
    out: Option<&Path>,
    seed: u64,
    count: usize,
) -> CliResult {
    let mut lines = String::new();
    let mut push = |index: usize, s: &PythSeed| -> CliResult {
        let tuple = gen_tuple(s)?;
        let line = json!({
            "label": "certified instance",
            "rng_seed": seed,
            "index": index,
            "seed": s,
            "tuple": tuple,
        });
        lines.push_str(&line.to_string());
        lines.push('\n');
        Ok(())
    };
    if let Some(path) = input {
        let s: PythSeed = parse_json(&read_input(Some(path))?, "seed")?;
        push(0, &s)?;
    } else {
        let mut rng = random::seeded(seed);
        for index in 0..count {
            push(index, &random::pyth_seed(&mut rng, 2))?;
        }
    }
    io.emit(out, &lines)
}

fn examples(io: &mut Io, name: Option<&str>, check: bool) -> CliResult {
    let Some(name) = name else {
        let names: Vec<&str> = BUILTIN_SURFACES
            .iter()
            .chain(&BUILTIN_POLYNOMIALS)
            .copied()
            .collect();
        return io.emit_json(None, &names);
    };
    if name == "beauregard" {
        let q = surface::beauregard();
        let norm = q.norm_sq()?;
        let mut out = json!({"name": name, "polynomial": q});
        if check {
            let (p, r) = separable_test(&norm).ok_or(Error::NotSeparable)?;
            out["norm_sq"] = json!(norm);
            out["factors"] = json!([p, r]);
        }
        return io.emit_json(None, &out);
    }
    let spec =
        builtin_surface(name).ok_or_else(|| Failure::Usage(format!("unknown example {name:?}")))?;
    if !check {
        return io.emit_json(None, &spec);
    }
    let ambient = contains_check(&verification_grid(&spec, 7)?);
    let mut out = json!({"name": name, "ambient": ambient, "spec": spec});
    match &spec {
        SurfaceSpec::Abc { .. } | SurfaceSpec::Quotient { .. } => {
            let cls = classify(&spec)?;
            let checked = verify_classification(&spec, &cls, 5)?;
            out["certificate"] = json!(cls);
            out["verified_points"] = json!(checked);
        }
        _ => {
            let mut circles = 0;
            for var in [Var::U, Var::V] {
                let mut found = 0;
                for value in geom::ladder().take(30) {
                    let pts = iso_line_samples(&spec, var, &value, 4);
                    if pts.len() < 4 {
                        continue;
                    }
                    if !concyclic4([&pts[0].1, &pts[1].1, &pts[2].1, &pts[3].1])? {
                        return Err(Failure::Domain(Error::VerificationFailed(format!(
                            "iso-line {var:?} = {value} is not a circle"
                        ))));
                    }
                    found += 1;
                    if found == 5 {
                        break;
                    }
                }
                circles += found;
            }
            out["circular_iso_lines"] = json!(circles);
        }
    }
    io.emit_json(None, &out)
}
