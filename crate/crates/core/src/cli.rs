//! Command-line front end. Every run prints one JSON document
//! `{config, result, diagnostics}` (or plain text with `--format text`).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DVector;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bracket::{self, colored_bracket_cabled, jones_polynomial, normalized_invariant};
use crate::braid::{BraidWord, Closure};
use crate::error::{Error, Result};
use crate::fib::fib_braid_rep;
use crate::qsim::{self, hadamard_test, hadamard_trace, Part, ThreeStrandRep};
use crate::recoupling::RecouplingContext;
use crate::rep::{BraidRep, CMatrix};
use crate::scalars::{loop_value, unit, LaurentPoly, RationalFn};
use crate::su2::{self, fibonacci_b3_quaternions, Su2Matrix};
use crate::tl::{evaluate_with_cap, JonesWenzl, Network};

#[derive(Parser, Debug)]
#[command(name = "knotcore", version, about = "Knot invariants, recoupling theory and unitary braid representations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest braid length accepted by the state sum.
    #[arg(long, default_value_t = bracket::STATE_SUM_CAP, global = true)]
    pub max_crossings: usize,
    /// Largest strand count after cabling.
    #[arg(long, default_value_t = 12, global = true)]
    pub max_strands: usize,
    /// Largest representation dimension.
    #[arg(long, default_value_t = 4096, global = true)]
    pub max_dim: usize,
    /// Largest projector label (so also `r − 2` and colors).
    #[arg(long, default_value_t = 8, global = true)]
    pub max_label: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureArg {
    Trace,
    Plat,
}

impl From<ClosureArg> for Closure {
    fn from(c: ClosureArg) -> Self {
        match c {
            ClosureArg::Trace => Closure::Trace,
            ClosureArg::Plat => Closure::Plat,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketMethod {
    Tl,
    StateSum,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoredMethod {
    Cabling,
    Rep,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartArg {
    Re,
    Im,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Theta,
    Tet,
    Matrix,
    All,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WordArgs {
    /// Braid word: whitespace-separated nonzero integers, optional `n=<strands>` header.
    pub word: Option<String>,
    /// The braid word as a flag.
    #[arg(long = "word", value_name = "WORD", allow_hyphen_values = true, conflicts_with = "word")]
    pub word_flag: Option<String>,
    /// Read the braid word from a file instead.
    #[arg(long, conflicts_with_all = ["word", "word_flag"])]
    pub file: Option<PathBuf>,
    /// Strand count (default: header, else largest index + 1).
    #[arg(long)]
    pub strands: Option<u32>,
}

impl WordArgs {
    fn braid(&self) -> Result<BraidWord> {
        let text = match (self.word.as_ref().or(self.word_flag.as_ref()), &self.file) {
            (Some(w), _) => w.clone(),
            (None, Some(p)) => std::fs::read_to_string(p)
                .map_err(|e| Error::Parse { position: 0, message: format!("cannot read {}: {e}", p.display()) })?,
            (None, None) => return Err(Error::Parse { position: 0, message: "no braid word given".into() }),
        };
        BraidWord::parse(&text, self.strands)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kauffman bracket of a braid closure, and f = (−A³)^{−w}⟨K⟩ for trace closures.
    Bracket {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_enum, default_value_t = ClosureArg::Trace)]
        closure: ClosureArg,
        #[arg(long, value_enum, default_value_t = BracketMethod::StateSum)]
        method: BracketMethod,
    },
    /// Jones polynomial of the trace closure.
    Jones {
        #[command(flatten)]
        word: WordArgs,
    },
    /// Unnormalized colored bracket; exact unless a level or angle is given.
    Colored {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 2)]
        color: u32,
        #[arg(long, value_enum, default_value_t = ClosureArg::Plat)]
        closure: ClosureArg,
        /// Evaluate at A = e^{iπ/2r}.
        #[arg(long, conflicts_with = "angle")]
        level: Option<u32>,
        /// Evaluate at A = e^{iθ}.
        #[arg(long, allow_hyphen_values = true)]
        angle: Option<f64>,
        /// `rep` uses the plat formula and needs `--level`.
        #[arg(long, value_enum, default_value_t = ColoredMethod::Cabling)]
        method: ColoredMethod,
    },
    /// Unnormalized WRT sum over colors 0..=r−2 of a plat closure.
    Wrt {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        level: u32,
    },
    /// Fibonacci representation matrices.
    FibRep {
        #[arg(long)]
        n: usize,
        /// Image of this word instead of the generators.
        #[arg(long)]
        word: Option<String>,
    },
    /// Quaternionic Fibonacci pair: braid relation, model traces, density probe.
    Su2Check {
        #[arg(long, value_delimiter = ',', default_value = "4,6,8,10")]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random words compared against the model traces.
        #[arg(long, default_value_t = 20)]
        words: usize,
    },
    /// Θ, Tet and recoupling tables at level r, or one network preset.
    RecouplingTable {
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value_t = TableKind::All)]
        kind: TableKind,
        /// `theta a b c` or `tet a b c d e f`.
        #[arg(long)]
        network: Option<String>,
    },
    /// Simulated Hadamard test on a braid image.
    Hadamard {
        #[command(flatten)]
        word: WordArgs,
        /// Three-strand representation at A = e^{iθ}.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "level")]
        theta: Option<f64>,
        /// Recoupling representation at level r (with `--color`).
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value_t = 2)]
        color: u32,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = PartArg::Re)]
        part: PartArg,
        /// Basis vector whose diagonal element is estimated.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Estimate the full trace (both parts) instead.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        allow_non_unitary: bool,
    },
}

/// Result of one command: JSON payload, text lines and diagnostics.
pub struct Outcome {
    pub config: Map<String, Value>,
    pub result: Value,
    pub text: Vec<String>,
    pub diagnostics: Map<String, Value>,
}

pub fn poly_json(p: &LaurentPoly) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        m.insert(e.to_string(), bigint_json(c));
    }
    Value::Object(m)
}

fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect()))
            .collect(),
    )
}

fn fmt_c(z: Complex64) -> String {
    // drop negative zeros
    let z = z + Complex64::new(0.0, 0.0);
    format!("{:.12} {} {:.12}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn word_config(cfg: &mut Map<String, Value>, b: &BraidWord) {
    cfg.insert("word".into(), json!(b.to_string()));
}

fn check_label(global: &Global, label: u32, what: &str) -> Result<()> {
    if label > global.max_label {
        return Err(Error::ResourceCap(format!("{what} {label} exceeds --max-label {}", global.max_label)));
    }
    Ok(())
}

fn context(global: &Global, r: u32) -> Result<RecouplingContext> {
    check_label(global, r.saturating_sub(2), "r − 2 =")?;
    RecouplingContext::new(r)
}

fn check_dim(global: &Global, dim: usize) -> Result<()> {
    if dim > global.max_dim {
        return Err(Error::ResourceCap(format!("representation dimension {dim} exceeds --max-dim {}", global.max_dim)));
    }
    Ok(())
}

fn build_rep(global: &Global, ctx: &RecouplingContext, n: usize, color: u32) -> Result<BraidRep> {
    let dim = crate::rep::fusion_states(ctx, n, color)?.len();
    check_dim(global, dim)?;
    BraidRep::build(ctx, n, color)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let mut config = Map::new();
    let mut diagnostics = Map::new();
    let mut text = Vec::new();
    let result = match &cli.command {
        Command::Bracket { word, closure, method } => {
            let b = word.braid()?;
            config.insert("command".into(), json!("bracket"));
            word_config(&mut config, &b);
            config.insert("closure".into(), json!(closure));
            config.insert("method".into(), json!(method));
            let c: Closure = (*closure).into();
            let poly = match method {
                BracketMethod::StateSum => {
                    let t = bracket::bracket_state_sum_capped(&b, c, g.max_crossings)?;
                    diagnostics.insert("states_visited".into(), json!(t.states_visited));
                    t.result
                }
                BracketMethod::Tl => bracket::bracket_tl_closure(&b, c)?,
            };
            let mut r = Map::new();
            r.insert("bracket".into(), poly_json(&poly));
            text.push(format!("bracket: {poly}"));
            if c == Closure::Trace {
                let w = b.exponent_sum();
                let sign = if w % 2 == 0 { 1 } else { -1 };
                let f = poly.shift(-3 * w) * LaurentPoly::monomial(sign, 0);
                r.insert("f".into(), poly_json(&f));
                r.insert("writhe".into(), json!(w));
                text.push(format!("f: {f}"));
                text.push(format!("writhe: {w}"));
            }
            Value::Object(r)
        }
        Command::Jones { word } => {
            let b = word.braid()?;
            config.insert("command".into(), json!("jones"));
            word_config(&mut config, &b);
            let v = jones_polynomial(&b)?;
            let f = normalized_invariant(&b)?;
            text.push(format!("V(t) = {v}"));
            text.push(format!("f = {f}"));
            json!({
                "jones": v.to_string(),
                "quarter_exponents": poly_json(&v.0),
                "f": poly_json(&f),
            })
        }
        Command::Colored { word, color, closure, level, angle, method } => {
            let b = word.braid()?;
            config.insert("command".into(), json!("colored"));
            word_config(&mut config, &b);
            config.insert("color".into(), json!(color));
            config.insert("closure".into(), json!(closure));
            config.insert("level".into(), json!(level));
            config.insert("angle".into(), json!(angle));
            config.insert("method".into(), json!(method));
            check_label(g, *color, "color")?;
            let c: Closure = (*closure).into();
            match (method, level, angle) {
                (ColoredMethod::Rep, Some(r), _) => {
                    if c != Closure::Plat {
                        return Err(Error::Domain("the representation method needs --closure plat".into()));
                    }
                    let ctx = context(g, *r)?;
                    let rep = build_rep(g, &ctx, b.strands() as usize, *color)?;
                    let amp = qsim::vacuum_amplitude(&rep, &b)?;
                    let v = amp * ctx.delta_n(*color).powi(b.strands() as i32 / 2);
                    diagnostics.insert("vacuum_amplitude".into(), complex_json(amp));
                    diagnostics.insert("dimension".into(), json!(rep.dim()));
                    text.push(format!("value: {}", fmt_c(v)));
                    json!({ "value": complex_json(v), "a": complex_json(ctx.a()) })
                }
                (ColoredMethod::Rep, None, _) => {
                    return Err(Error::Domain("the representation method needs --level".into()));
                }
                (ColoredMethod::Cabling, None, None) => {
                    let v = bracket::colored_bracket_cabled(
                        &b,
                        *color,
                        c,
                        &RationalFn::from_poly(LaurentPoly::a()),
                        &RationalFn::from_poly(LaurentPoly::a_pow(-1)),
                        g.max_strands.min(8),
                    )?;
                    text.push(format!("value: {v}"));
                    json!({
                        "value": v.to_string(),
                        "numerator": poly_json(v.numerator()),
                        "denominator": poly_json(v.denominator()),
                    })
                }
                (ColoredMethod::Cabling, _, _) => {
                    let a = match (level, angle) {
                        (Some(r), _) => {
                            check_label(g, r.saturating_sub(2), "r − 2 =")?;
                            unit(std::f64::consts::PI / (2.0 * *r as f64))
                        }
                        (None, Some(t)) => unit(*t),
                        _ => unreachable!(),
                    };
                    let v = colored_bracket_cabled(&b, *color, c, &a, &a.inv(), g.max_strands)?;
                    text.push(format!("value: {}", fmt_c(v)));
                    json!({ "value": complex_json(v), "a": complex_json(a) })
                }
            }
        }
        Command::Wrt { word, level } => {
            let b = word.braid()?;
            config.insert("command".into(), json!("wrt"));
            word_config(&mut config, &b);
            config.insert("level".into(), json!(level));
            let ctx = context(g, *level)?;
            let mut terms = Vec::new();
            let mut sum = Complex64::new(0.0, 0.0);
            for a in 0..=ctx.max_label() {
                let rep = build_rep(g, &ctx, b.strands() as usize, a)?;
                let v = qsim::vacuum_amplitude(&rep, &b)? * ctx.delta_n(a).powi(b.strands() as i32 / 2);
                sum += v * ctx.delta_n(a);
                terms.push(json!({ "color": a, "delta": ctx.delta_n(a), "bracket": complex_json(v) }));
                text.push(format!("<L>_{a} = {}", fmt_c(v)));
            }
            text.push(format!("WRT = {}", fmt_c(sum)));
            json!({ "wrt": complex_json(sum), "terms": terms })
        }
        Command::FibRep { n, word } => {
            config.insert("command".into(), json!("fib-rep"));
            config.insert("n".into(), json!(n));
            if *n >= 3 {
                check_dim(g, crate::fib::fibonacci_number(n - 2))?;
            }
            let rep = fib_braid_rep(*n)?;
            let states: Vec<Vec<u32>> = rep.states().to_vec();
            let mut r = Map::new();
            r.insert("dimension".into(), json!(rep.dim()));
            r.insert("basis".into(), json!(states));
            text.push(format!("dimension: {}", rep.dim()));
            match word {
                Some(w) => {
                    let b = BraidWord::parse(w, Some(*n as u32))?;
                    word_config(&mut config, &b);
                    let m = rep.image(&b)?;
                    let res = crate::rep::unitarity_residual(&m);
                    r.insert("image".into(), matrix_json(&m));
                    r.insert("unitarity_residual".into(), json!(res));
                    r.insert("trace".into(), complex_json(m.trace()));
                    text.push(format!("trace: {}", fmt_c(m.trace())));
                    text.push(format!("unitarity residual: {res:.3e}"));
                }
                None => {
                    r.insert("generators".into(), Value::Array(rep.generators().iter().map(matrix_json).collect()));
                    r.insert("unitarity_residual".into(), json!(rep.unitarity_residual()));
                    r.insert("braid_relation_residual".into(), json!(rep.braid_relation_residual()));
                    text.push(format!("unitarity residual: {:.3e}", rep.unitarity_residual()));
                    text.push(format!("braid relation residual: {:.3e}", rep.braid_relation_residual()));
                }
            }
            Value::Object(r)
        }
        Command::Su2Check { lengths, samples, seed, words } => {
            config.insert("command".into(), json!("su2-check"));
            config.insert("lengths".into(), json!(lengths));
            config.insert("samples".into(), json!(samples));
            config.insert("seed".into(), json!(seed));
            config.insert("words".into(), json!(words));
            if let Some(&l) = lengths.iter().max() {
                if l > 14 {
                    return Err(Error::ResourceCap(format!("word length {l} exceeds 14")));
                }
            }
            let pair = fibonacci_b3_quaternions();
            let (s1, s2) = crate::fib::fib_b3_generators();
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut worst: f64 = 0.0;
            for _ in 0..*words {
                let len = rng.random_range(1..=12);
                let w: Vec<i32> = (0..len).map(|_| [1, 2, -1, -2][rng.random_range(0..4)]).collect();
                let b = BraidWord::from_signed(3, &w)?;
                let mut m = CMatrix::identity(2, 2);
                for &x in &w {
                    let s = if x.abs() == 1 { &s1 } else { &s2 };
                    m = if x > 0 { m * s } else { m * s.adjoint() };
                }
                let q = Su2Matrix::from_quaternion(pair.image(&b)?);
                let phase = su2::fibonacci_phase().powi(b.exponent_sum() as i32);
                worst = worst.max((m.trace() - phase * q.trace()).norm());
            }
            let report = su2::density_probe(&pair, lengths, *samples, *seed);
            text.push(format!("braid residual: {:.3e}", pair.braid_residual()));
            text.push(format!("model trace mismatch: {worst:.3e}"));
            for (l, count, radius) in &report.curve {
                text.push(format!("L = {l}: {count} words, covering radius {radius:.6}"));
            }
            json!({
                "g": pair.g,
                "h": pair.h,
                "braid_residual": pair.braid_residual(),
                "model_trace_mismatch": worst,
                "density": report.curve.iter().map(|(l, c, r)| json!({"length": l, "words": c, "covering_radius": r})).collect::<Vec<_>>(),
            })
        }
        Command::RecouplingTable { level, kind, network } => {
            config.insert("command".into(), json!("recoupling-table"));
            config.insert("level".into(), json!(level));
            config.insert("kind".into(), json!(kind));
            config.insert("network".into(), json!(network));
            let ctx = context(g, *level)?;
            match network {
                Some(spec) => {
                    let net = parse_network(spec)?;
                    for &l in net.labels() {
                        check_label(g, l, "label")?;
                    }
                    let mut jw = JonesWenzl::new(loop_value(ctx.a()));
                    let top = net.labels().iter().copied().max().unwrap_or(0);
                    jw.projector(top as usize)?;
                    let v = evaluate_with_cap(&net, &jw, 1 << 22)?;
                    text.push(format!("{spec} = {}", fmt_c(v)));
                    json!({ "network": spec, "value": complex_json(v) })
                }
                None => recoupling_tables(&ctx, *kind, &mut text)?,
            }
        }
        Command::Hadamard { word, theta, level, color, shots, seed, part, index, trace, allow_non_unitary } => {
            let b = word.braid()?;
            config.insert("command".into(), json!("hadamard"));
            word_config(&mut config, &b);
            config.insert("theta".into(), json!(theta));
            config.insert("level".into(), json!(level));
            config.insert("color".into(), json!(color));
            config.insert("shots".into(), json!(shots));
            config.insert("seed".into(), json!(seed));
            config.insert("part".into(), json!(part));
            config.insert("index".into(), json!(index));
            config.insert("trace".into(), json!(trace));
            let u = match (theta, level) {
                (_, Some(r)) => {
                    let ctx = context(g, *r)?;
                    check_label(g, *color, "color")?;
                    build_rep(g, &ctx, b.strands() as usize, *color)?.image(&b)?
                }
                (Some(t), None) => ThreeStrandRep::at_angle(*t, *allow_non_unitary)?.image(&b)?,
                (None, None) => return Err(Error::Domain("give --theta or --level".into())),
            };
            if *trace {
                let t = hadamard_trace(&u, *shots, *seed)?;
                text.push(format!("trace estimate: {:.6} + {:.6}i (exact {:.6} + {:.6}i)", t.estimate.0, t.estimate.1, t.exact.0, t.exact.1));
                json!({
                    "estimate": [t.estimate.0, t.estimate.1],
                    "stderr": [t.stderr.0, t.stderr.1],
                    "exact": [t.exact.0, t.exact.1],
                })
            } else {
                if *index >= u.nrows() {
                    return Err(Error::DimensionMismatch { expected: u.nrows(), got: *index });
                }
                let psi = DVector::from_fn(u.nrows(), |i, _| Complex64::new(if i == *index { 1.0 } else { 0.0 }, 0.0));
                let p = if *part == PartArg::Re { Part::Real } else { Part::Imaginary };
                let e = hadamard_test(&u, &psi, *shots, p, *seed)?;
                if !e.warnings.is_empty() {
                    diagnostics.insert("warnings".into(), json!(e.warnings));
                }
                text.push(format!("estimate: {:.6} ± {:.6} (exact {:.6})", e.estimate, e.stderr, e.exact));
                json!({
                    "estimate": e.estimate,
                    "stderr": e.stderr,
                    "exact": e.exact,
                    "zero_count": e.zero_count,
                })
            }
        }
    };
    config.insert("limits".into(), serde_json::to_value(g).expect("serializable"));
    Ok(Outcome { config, result, text, diagnostics })
}

fn recoupling_tables(ctx: &RecouplingContext, kind: TableKind, text: &mut Vec<String>) -> Result<Value> {
    let top = ctx.max_label();
    let mut out = Map::new();
    let key = |l: &[u32]| l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if matches!(kind, TableKind::Theta | TableKind::All) {
        let mut m = Map::new();
        for a in 0..=top {
            for b in a..=top {
                for c in b..=top {
                    if ctx.admissible(a, b, c) {
                        m.insert(key(&[a, b, c]), json!(ctx.theta(a, b, c)?));
                    }
                }
            }
        }
        text.push(format!("{} theta values", m.len()));
        out.insert("theta".into(), Value::Object(m));
    }
    let labels = ctx.all_matrix_labels();
    if matches!(kind, TableKind::Tet | TableKind::All) {
        let mut m = Map::new();
        for l in &labels {
            let [a, b, c, d] = *l;
            for i in ctx.channel(a, b, c, d) {
                for j in ctx.channel(a, c, b, d) {
                    m.insert(key(&[a, b, c, d, i, j]), json!(ctx.tet_abcd(a, b, c, d, i, j)?));
                }
            }
        }
        text.push(format!("{} tetrahedron values", m.len()));
        out.insert("tet".into(), Value::Object(m));
    }
    if matches!(kind, TableKind::Matrix | TableKind::All) {
        let mut m = Map::new();
        let mut worst: f64 = 0.0;
        for l in &labels {
            let mat = ctx.recoupling_matrix(l[0], l[1], l[2], l[3])?;
            worst = worst.max(mat.orthogonality_residual());
            m.insert(key(l), json!({ "rows": mat.rows, "cols": mat.cols, "entries": mat.entries }));
        }
        text.push(format!("{} recoupling matrices, orthogonality residual {worst:.3e}", m.len()));
        out.insert("matrix".into(), Value::Object(m));
        out.insert("orthogonality_residual".into(), json!(worst));
    }
    Ok(Value::Object(out))
}

/// `theta a b c` or `tet a b c d e f` (edge order `01 02 03 12 13 23`).
pub fn parse_network(spec: &str) -> Result<Network> {
    let toks: Vec<&str> = spec.split_whitespace().collect();
    let nums = |k: usize| -> Result<Vec<u32>> {
        if toks.len() != k + 1 {
            return Err(Error::Parse { position: toks.len().min(k + 1), message: format!("`{}` takes {k} labels", toks[0]) });
        }
        toks[1..]
            .iter()
            .enumerate()
            .map(|(i, t)| t.parse().map_err(|_| Error::Parse { position: i + 1, message: format!("`{t}` is not a label") }))
            .collect()
    };
    match toks.first().copied() {
        Some("theta") => {
            let l = nums(3)?;
            Network::theta(l[0], l[1], l[2])
        }
        Some("tet") => {
            let l = nums(6)?;
            Network::tetrahedron([l[0], l[1], l[2], l[3], l[4], l[5]])
        }
        Some("loop") => {
            let l = nums(1)?;
            Ok(Network::free_loop(l[0]))
        }
        _ => Err(Error::Parse { position: 0, message: "network preset must start with theta, tet or loop".into() }),
    }
}

/// Renders an outcome (or failure) and returns the process exit code.
pub fn render(format: Format, outcome: std::result::Result<Outcome, (Map<String, Value>, Error)>) -> (String, i32) {
    match outcome {
        Ok(o) => {
            let s = match format {
                Format::Json => {
                    let doc = json!({ "config": o.config, "result": o.result, "diagnostics": o.diagnostics });
                    serde_json::to_string_pretty(&doc).expect("serializable")
                }
                Format::Text => {
                    let mut lines = o.text;
                    for (k, v) in &o.diagnostics {
                        lines.push(format!("# {k}: {v}"));
                    }
                    lines.join("\n")
                }
            };
            (s, 0)
        }
        Err((config, e)) => {
            let mut diag = Map::new();
            diag.insert("error".into(), json!(e.to_string()));
            diag.insert("kind".into(), json!(error_kind(&e)));
            if let Error::Parse { position, .. } = &e {
                diag.insert("position".into(), json!(position));
            }
            let s = match format {
                Format::Json => serde_json::to_string_pretty(&json!({ "config": config, "result": null, "diagnostics": diag }))
                    .expect("serializable"),
                Format::Text => format!("error: {e}"),
            };
            (s, e.exit_code())
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::ResourceCap(_) => "resource",
        Error::NonUnitary(_) => "regime",
        _ => "domain",
    }
}

/// Parses arguments, runs, prints; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let format = cli.global.format;
    let outcome = run(&cli).map_err(|e| (Map::from_iter([("command".to_string(), json!(command_name(&cli.command)))]), e));
    let (s, code) = render(format, outcome);
    match (code, format) {
        (0, _) => println!("{s}"),
        (_, Format::Json) => {
            println!("{s}");
            eprintln!("knotcore: error (exit {code})");
        }
        (_, Format::Text) => eprintln!("{s}"),
    }
    code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bracket { .. } => "bracket",
        Command::Jones { .. } => "jones",
        Command::Colored { .. } => "colored",
        Command::Wrt { .. } => "wrt",
        Command::FibRep { .. } => "fib-rep",
        Command::Su2Check { .. } => "su2-check",
        Command::RecouplingTable { .. } => "recoupling-table",
        Command::Hadamard { .. } => "hadamard",
    }
}
