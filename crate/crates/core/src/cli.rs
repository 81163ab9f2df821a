//! Command-line front end. [`run`] takes the argument list and an output sink
//! and returns the process exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::characters::{nessonov_char, parse_reals, thoma_char, young_spherical, GramSpec, SMatrix, ThomaParams};
use crate::coset::Coset;
use crate::error::{Error, Result};
use crate::oracle::{coset_product_rep, distinct_codes_finite, enumerate_double_cosets_finite, Encoder, GroupElement, PairSpec};
use crate::perm::{ColoredPerm, CosetLevel};
use crate::surfaces::{spherical_assignment_sum, surface_from_tuple};
use crate::tensor::CoeffTensor;
use crate::verify::{self, Suite, VerifyOptions};

pub const DEFAULT_SEED: u64 = 20240601;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "traincat", version, about = "Build, glue and evaluate double cosets of infinite symmetric groups")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode, glue, canonicalize or count cosets.
    #[command(subcommand)]
    Coset(CosetCmd),
    /// Evaluate a character or spherical function.
    #[command(subcommand)]
    Char(CharCmd),
    /// Run a property suite.
    Verify(VerifyArgs),
    /// Write a coset as JSON or DOT.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone)]
struct Job {
    /// Pair: bi, tri, diag:N, wreath:L or young:M.
    #[arg(long, default_value = "bi")]
    pair: PairSpec,
    /// Levels `a,b` (or `a,b,c` for `mul`).
    #[arg(long, default_value = "0,0", value_delimiter = ',')]
    levels: Vec<usize>,
    /// Encoder; defaults to the natural one for the pair.
    #[arg(long)]
    encoder: Option<Encoder>,
    /// Pads the truncation with fixed points up to `n`.
    #[arg(long)]
    n: Option<usize>,
}

impl Job {
    fn encoder(&self) -> Encoder {
        self.encoder.unwrap_or_else(|| self.pair.default_encoder())
    }

    fn level(&self, i: usize) -> Result<usize> {
        self.levels.get(i).copied().ok_or_else(|| Error::Parse(format!("--levels needs at least {} entries", i + 1)))
    }
}

#[derive(Args, Debug, Clone)]
struct Element {
    /// Group element, e.g. "r:(1 2); y:(); b:()".
    #[arg(long)]
    g: Option<String>,
    /// Draws a random element of support at most this size instead.
    #[arg(long)]
    random: Option<usize>,
    /// Reads a coset from a JSON file written by `build` or `export json`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CosetCmd {
    /// Print the encoded coset as JSON.
    Build {
        #[command(flatten)]
        job: Job,
        #[command(flatten)]
        elem: Element,
    },
    /// Glue `K p K ∘ K q K` and print the result as JSON.
    Mul {
        #[command(flatten)]
        job: Job,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// Left factor as a JSON file.
        #[arg(long)]
        left: Option<PathBuf>,
        /// Right factor as a JSON file.
        #[arg(long)]
        right: Option<PathBuf>,
        /// Also print the group-side representative and its code.
        #[arg(long)]
        check: bool,
    },
    /// Print the canonical code in hex.
    Canon {
        #[command(flatten)]
        job: Job,
        #[command(flatten)]
        elem: Element,
    },
    /// Count double cosets of the truncated groups.
    Count {
        #[command(flatten)]
        job: Job,
        /// Also count distinct codes under the chosen encoder.
        #[arg(long)]
        codes: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CharCmd {
    /// Thoma character of a permutation.
    Thoma {
        #[arg(long, default_value = "")]
        alpha: String,
        #[arg(long, default_value = "")]
        beta: String,
        #[arg(long)]
        g: String,
    },
    /// Young-pair character from a Gram matrix and an s-matrix.
    Nessonov {
        /// `ones(m)` or a JSON matrix of reals or `[re, im]` pairs.
        #[arg(long = "A")]
        a: String,
        /// Off-diagonal flow counts, "." on the diagonal.
        #[arg(long = "S")]
        s: Option<String>,
        /// Colored permutation; its s-matrix is used.
        #[arg(long)]
        g: Option<String>,
    },
    /// Young spherical function of a colored permutation.
    Young {
        /// JSON list of unit vectors, one per color.
        #[arg(long)]
        xi: String,
        #[arg(long)]
        g: String,
    },
    /// Assignment sum over the surface of a trisymmetric element.
    Assign {
        /// JSON list of coefficients, row-major.
        #[arg(long)]
        xi: String,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long)]
        g: String,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    max_support: Option<usize>,
    #[arg(long)]
    max_level: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args, Debug)]
struct ExportArgs {
    format: Format,
    #[command(flatten)]
    job: Job,
    #[command(flatten)]
    elem: Element,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } => EXIT_BOUND,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INPUT,
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match cli.command {
        Command::Coset(cmd) => coset(cmd, &mut rng, out),
        Command::Char(cmd) => {
            let v = character(cmd)?;
            writeln!(out, "{}", format_complex(v))?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            let d = VerifyOptions { seed: cli.seed, ..VerifyOptions::default() };
            let opts = VerifyOptions {
                seed: cli.seed,
                cases: a.cases.unwrap_or(d.cases),
                max_support: a.max_support.unwrap_or(d.max_support),
                max_level: a.max_level.unwrap_or(d.max_level),
            };
            let report = verify::run(suite, &opts)?;
            writeln!(out, "{report}")?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Export(a) => {
            let c = load(&a.job, &a.elem, &mut rng)?;
            let text = match a.format {
                Format::Json => pretty(&c.to_json())?,
                Format::Dot => c.to_dot(),
            };
            match a.out {
                Some(path) => write_file(&path, &text)?,
                None => write!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn coset(cmd: CosetCmd, rng: &mut ChaCha8Rng, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        CosetCmd::Build { job, elem } => {
            let c = load(&job, &elem, rng)?;
            writeln!(out, "{}", pretty(&c.to_json())?)?;
        }
        CosetCmd::Canon { job, elem } => {
            let c = load(&job, &elem, rng)?;
            writeln!(out, "{}", c.canon())?;
        }
        CosetCmd::Mul { job, p, q, left, right, check } => {
            let enc = job.encoder();
            let (a, b, c) = (job.level(0)?, job.level(1)?, job.level(2)?);
            let factor = |text: &Option<String>, file: &Option<PathBuf>, x: usize, y: usize| -> Result<Coset> {
                match (text, file) {
                    (Some(t), None) => Coset::build(enc, &job.pair, &GroupElement::parse(&job.pair, t)?, x, y, job.n),
                    (None, Some(f)) => read_coset(f),
                    _ => Err(Error::Parse("give each factor either as an element or as a file".into())),
                }
            };
            let lhs = factor(&p, &left, a, b)?;
            let rhs = factor(&q, &right, b, c)?;
            let glued = lhs.mul(&rhs)?;
            writeln!(out, "{}", pretty(&glued.to_json())?)?;
            if check {
                let (p, q) = match (p, q) {
                    (Some(p), Some(q)) => (GroupElement::parse(&job.pair, &p)?, GroupElement::parse(&job.pair, &q)?),
                    _ => return Err(Error::Parse("--check needs --p and --q".into())),
                };
                let l = |x| level_for(&job.pair, x);
                let (r, j) = coset_product_rep(&job.pair, &p, &q, &l(a), &l(b), &l(c))?;
                let direct = Coset::build(enc, &job.pair, &r, a, c, None)?;
                writeln!(out, "j = {j}")?;
                writeln!(out, "representative: {r}")?;
                writeln!(out, "glued code:  {}", glued.canon())?;
                writeln!(out, "direct code: {}", direct.canon())?;
                if direct.canon() != glued.canon() {
                    return Ok(EXIT_VERIFY);
                }
            }
        }
        CosetCmd::Count { job, codes } => {
            let n = job.n.ok_or_else(|| Error::Parse("count needs --n".into()))?;
            let (a, b) = (level_for(&job.pair, job.level(0)?), level_for(&job.pair, job.level(1)?));
            let cosets = enumerate_double_cosets_finite(&job.pair, n, &a, &b)?;
            writeln!(out, "{}", cosets.count())?;
            if codes {
                let d = distinct_codes_finite(&job.pair, n, &a, &b, job.encoder())?;
                writeln!(out, "distinct codes ({}): {d}", job.encoder())?;
                if d != cosets.count() {
                    return Ok(EXIT_VERIFY);
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn level_for(spec: &PairSpec, a: usize) -> CosetLevel {
    match spec.kind {
        crate::oracle::PairKind::Young { colors } => CosetLevel::uniform(colors, a),
        _ => CosetLevel::single(a),
    }
}

fn load(job: &Job, elem: &Element, rng: &mut ChaCha8Rng) -> Result<Coset> {
    if let Some(path) = &elem.input {
        return read_coset(path);
    }
    let g = match (&elem.g, elem.random) {
        (Some(text), None) => GroupElement::parse(&job.pair, text)?,
        (None, Some(k)) => GroupElement::random(&job.pair, rng, k),
        _ => return Err(Error::Parse("give exactly one of --g, --random or --input".into())),
    };
    Coset::build(job.encoder(), &job.pair, &g, job.level(0)?, job.level(1)?, job.n)
}

fn read_coset(path: &Path) -> Result<Coset> {
    let text = fs::read_to_string(path)?;
    Coset::from_json(&serde_json::from_str(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn character(cmd: CharCmd) -> Result<Complex64> {
    match cmd {
        CharCmd::Thoma { alpha, beta, g } => {
            let params = ThomaParams::new(parse_reals(&alpha)?, parse_reals(&beta)?)?;
            Ok(Complex64::new(thoma_char(&params, &ColoredPerm::parse(&g, 1)?)?, 0.0))
        }
        CharCmd::Nessonov { a, s, g } => {
            let gram = parse_gram(&a)?;
            let s = match (s, g) {
                (Some(s), None) => SMatrix::parse(&s)?,
                (None, Some(g)) => crate::characters::s_matrix(&ColoredPerm::parse(&g, gram.size())?),
                _ => return Err(Error::Parse("give exactly one of --S or --g".into())),
            };
            nessonov_char(&gram, &s)
        }
        CharCmd::Young { xi, g } => {
            let v: Value = serde_json::from_str(&xi)?;
            let xis = v
                .as_array()
                .ok_or_else(|| Error::Parse("--xi must be a list of vectors".into()))?
                .iter()
                .map(complex_list)
                .collect::<Result<Vec<_>>>()?;
            young_spherical(&xis, &ColoredPerm::parse(&g, xis.len())?)
        }
        CharCmd::Assign { xi, dims, g } => {
            let spec = PairSpec::trisymmetric();
            let coeffs = CoeffTensor::new(dims, complex_list(&serde_json::from_str(&xi)?)?)?;
            let g = GroupElement::parse(&spec, &g)?;
            spherical_assignment_sum(&surface_from_tuple(&g.parts, 0, 0, None)?, &coeffs)
        }
    }
}

fn complex_of(v: &Value) -> Result<Complex64> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    match v.as_array().map(|a| a.as_slice()) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(Error::Parse(format!("bad complex number {v}"))),
        },
        _ => Err(Error::Parse(format!("bad complex number {v}"))),
    }
}

fn complex_list(v: &Value) -> Result<Vec<Complex64>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("expected a list, got {v}")))?.iter().map(complex_of).collect()
}

fn parse_gram(text: &str) -> Result<GramSpec> {
    let t = text.trim();
    if let Some(m) = t.strip_prefix("ones(").and_then(|r| r.strip_suffix(')')) {
        let m: usize = m.trim().parse().map_err(|_| Error::Parse(format!("bad size in {t:?}")))?;
        return Ok(GramSpec::ones(m));
    }
    let v: Value = serde_json::from_str(t)?;
    let rows = v.as_array().ok_or_else(|| Error::Parse("--A must be a square matrix".into()))?;
    let rows = rows.iter().map(complex_list).collect::<Result<Vec<_>>>()?;
    let m = rows.len();
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse("--A must be a square matrix".into()));
    }
    GramSpec::new(DMatrix::from_fn(m, m, |i, j| rows[i][j]), 1e-9)
}

/// Twelve significant digits; integers keep a trailing `.0`.
pub fn format_real(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    let r = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{r:?}")
}

pub fn format_complex(z: Complex64) -> String {
    if z.im.abs() < 1e-12 * z.re.abs().max(1.0) {
        format_real(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", format_real(z.re), format_real(z.im.abs()))
    }
}
