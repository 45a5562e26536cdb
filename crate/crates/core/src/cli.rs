//! The `polyrat` command-line front end.
//!
//! [`run`] takes the argument list and standard input and returns the
//! exit code together with everything written to standard output and
//! standard error, so the binary is a thin wrapper and tests can drive
//! the commands directly.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cra::{compile_expr_to_ccra, Cra};
use crate::error::{Error, Result};
use crate::formats;
use crate::lrs::{classify_series, series_to_expr, Lrs};
use crate::ratmath::{
    binomial_multiple_extend, format_rational, partial_fractions, BinomialFactor, Rational,
    RationalFunction,
};
use crate::seqexpr::{self, SeqExpr};
use crate::wa::{compile_expr_to_wa, Ambiguity, WeightedAutomaton, DEFAULT_CHAIN_CAP};
use crate::DEFAULT_CHECK_TERMS;

/// Representation tags accepted by `--from` and `--to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Expr,
    Wa,
    Ccra,
    Lrs,
    Series,
}

impl Kind {
    const ALL: [Kind; 5] = [Kind::Expr, Kind::Wa, Kind::Ccra, Kind::Lrs, Kind::Series];

    fn name(self) -> &'static str {
        match self {
            Kind::Expr => "expr",
            Kind::Wa => "wa",
            Kind::Ccra => "ccra",
            Kind::Lrs => "lrs",
            Kind::Series => "series",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "polyrat", version, about = "Convert, classify and compare poly-rational sequences")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct InputArgs {
    /// Input representation; guessed from the input when omitted.
    #[arg(long, value_enum)]
    from: Option<Kind>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the first terms of a sequence.
    Eval {
        #[command(flatten)]
        input: InputArgs,
        /// Number of terms.
        #[arg(short = 'n', long = "terms", default_value_t = 10)]
        terms: usize,
        /// File path, `-` for standard input, or inline text.
        source: String,
    },
    /// Convert between representations, then compare terms.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        to: Kind,
        #[arg(long, default_value_t = DEFAULT_CHECK_TERMS)]
        check_terms: usize,
        #[arg(long)]
        max_ell: Option<usize>,
        source: String,
    },
    /// Classify one or more inputs.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max_ell: Option<usize>,
        #[arg(required = true)]
        sources: Vec<String>,
    },
    /// Decide whether two inputs denote the same sequence.
    Equiv {
        #[command(flatten)]
        input: InputArgs,
        /// Representation of the second input; defaults to `--from`.
        #[arg(long, value_enum)]
        from_b: Option<Kind>,
        #[arg(long)]
        max_ell: Option<usize>,
        a: String,
        b: String,
    },
    /// Split an automaton into chained loops.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        source: String,
    },
    /// Partial fractions over binomial-power denominators.
    Pfrac {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max_ell: Option<usize>,
        source: String,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A sequence in one of the five forms.
#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    Expr(SeqExpr),
    Wa(WeightedAutomaton),
    Ccra(Cra),
    Lrs(Lrs),
    Series(RationalFunction),
}

impl Representation {
    pub fn kind(&self) -> Kind {
        match self {
            Representation::Expr(_) => Kind::Expr,
            Representation::Wa(_) => Kind::Wa,
            Representation::Ccra(_) => Kind::Ccra,
            Representation::Lrs(_) => Kind::Lrs,
            Representation::Series(_) => Kind::Series,
        }
    }

    pub fn parse(kind: Kind, text: &str) -> Result<Self> {
        Ok(match kind {
            Kind::Expr => Representation::Expr(seqexpr::parse(text.trim())?),
            Kind::Wa => Representation::Wa(formats::wa_from_json(text)?),
            Kind::Ccra => Representation::Ccra(formats::cra_from_json(text)?),
            Kind::Lrs => Representation::Lrs(formats::lrs_from_json(text)?),
            Kind::Series => Representation::Series(formats::series_from_str(text)?),
        })
    }

    /// Guesses the representation from the JSON keys, else an expression.
    pub fn guess_kind(text: &str) -> Kind {
        let Ok(serde_json::Value::Object(map)) = serde_json::from_str(text) else {
            return Kind::Expr;
        };
        if map.contains_key("registers") {
            Kind::Ccra
        } else if map.contains_key("coeffs") {
            Kind::Lrs
        } else if map.contains_key("num") {
            Kind::Series
        } else {
            Kind::Wa
        }
    }

    pub fn terms(&self, n: usize) -> Result<Vec<Rational>> {
        match self {
            Representation::Expr(e) => e.eval(n),
            Representation::Wa(a) => Ok(a.terms(n)),
            Representation::Ccra(c) => c.terms(n),
            Representation::Lrs(l) => Ok(l.terms(n)),
            Representation::Series(f) => Ok(f.expand(n)),
        }
    }

    /// Exact generating function, for the forms that reach it without
    /// going through an expression.
    fn direct_series(&self) -> Option<RationalFunction> {
        match self {
            Representation::Wa(a) => Some(a.series()),
            Representation::Lrs(l) => Some(l.to_series()),
            Representation::Series(f) => Some(f.clone()),
            _ => None,
        }
    }

    /// Exact generating function of any form.
    pub fn series(&self, max_ell: Option<usize>) -> Result<RationalFunction> {
        match self.direct_series() {
            Some(f) => Ok(f),
            None => match self.convert(Kind::Series, max_ell)? {
                Representation::Series(f) => Ok(f),
                _ => unreachable!("conversion yields the requested kind"),
            },
        }
    }

    fn step(&self, to: Kind, max_ell: Option<usize>) -> Result<Representation> {
        Ok(match (self, to) {
            (Representation::Expr(e), Kind::Wa) => Representation::Wa(compile_expr_to_wa(e)?),
            (Representation::Expr(e), Kind::Ccra) => {
                Representation::Ccra(compile_expr_to_ccra(e)?)
            }
            (Representation::Wa(a), Kind::Series) => Representation::Series(a.series()),
            (Representation::Ccra(c), Kind::Expr) => Representation::Expr(c.to_expr()?),
            (Representation::Lrs(l), Kind::Series) => Representation::Series(l.to_series()),
            (Representation::Lrs(l), Kind::Expr) => Representation::Expr(l.to_expr(max_ell)?),
            (Representation::Series(f), Kind::Lrs) => Representation::Lrs(Lrs::from_series(f)),
            (Representation::Series(f), Kind::Expr) => {
                Representation::Expr(series_to_expr(f, max_ell)?)
            }
            (r, k) => unreachable!("no direct edge {} -> {}", r.kind().name(), k.name()),
        })
    }

    /// Converts along the shortest route through the conversion graph.
    pub fn convert(&self, to: Kind, max_ell: Option<usize>) -> Result<Representation> {
        let mut cur = self.clone();
        for k in route(self.kind(), to).into_iter().skip(1) {
            cur = cur.step(k, max_ell)?;
        }
        Ok(cur)
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Representation::Expr(e), Format::Text) => e.to_string(),
            (Representation::Expr(e), Format::Json) => json!({ "expr": e.to_string() }).to_string(),
            (Representation::Series(f), Format::Text) => f.to_string(),
            (Representation::Series(f), Format::Json) => formats::series_to_json(f),
            (Representation::Wa(a), _) => formats::wa_to_json(a),
            (Representation::Ccra(c), _) => formats::cra_to_json(c),
            (Representation::Lrs(l), _) => formats::lrs_to_json(l),
        }
    }
}

fn edges(k: Kind) -> &'static [Kind] {
    match k {
        Kind::Expr => &[Kind::Wa, Kind::Ccra],
        Kind::Wa => &[Kind::Series],
        Kind::Series => &[Kind::Lrs, Kind::Expr],
        Kind::Lrs => &[Kind::Series, Kind::Expr],
        Kind::Ccra => &[Kind::Expr],
    }
}

/// Shortest chain of kinds `from, ..., to` (breadth-first, fixed edge order).
pub fn route(from: Kind, to: Kind) -> Vec<Kind> {
    let idx = |k: Kind| Kind::ALL.iter().position(|&x| x == k).expect("listed");
    let mut prev: [Option<Kind>; 5] = [None; 5];
    let mut seen = [false; 5];
    seen[idx(from)] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(k) = queue.pop_front() {
        if k == to {
            break;
        }
        for &n in edges(k) {
            if !seen[idx(n)] {
                seen[idx(n)] = true;
                prev[idx(n)] = Some(k);
                queue.push_back(n);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[idx(cur)].expect("conversion graph is strongly connected");
        path.push(cur);
    }
    path.reverse();
    path
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Invalid(_) | Error::Arity(_) => 1,
        Error::CrossCheck(_) | Error::Stabilization(_) => 4,
        _ => 2,
    }
}

fn read_source(source: &str, stdin: &mut dyn Read) -> Result<String> {
    if source == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Error::invalid(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    let path = std::path::Path::new(source);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {source}: {e}")));
    }
    Ok(source.to_string())
}

fn load(kind: Option<Kind>, text: &str) -> Result<Representation> {
    let kind = kind.unwrap_or_else(|| Representation::guess_kind(text));
    Representation::parse(kind, text)
}

fn join_rationals(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn factor_text(f: &BinomialFactor) -> String {
    format!("({}, {}, {})", f.lambda, f.ell, f.k)
}

fn factor_json(f: &BinomialFactor) -> serde_json::Value {
    json!({ "lambda": format_rational(&f.lambda), "ell": f.ell, "k": f.k })
}

fn series_json(f: &RationalFunction) -> serde_json::Value {
    serde_json::from_str(&formats::series_to_json(f)).expect("valid JSON")
}

/// Runs one invocation.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli, stdin) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<(i32, String)> {
    let fmt = cli.format;
    match &cli.command {
        Command::Eval { input, terms, source } => {
            let rep = load(input.from, &read_source(source, stdin)?)?;
            let t = rep.terms(*terms)?;
            Ok((0, match fmt {
                Format::Text => format!("{}\n", join_rationals(&t)),
                Format::Json => format!("{}\n", formats::rationals_to_json(&t)),
            }))
        }
        Command::Convert {
            input,
            to,
            check_terms,
            max_ell,
            source,
        } => {
            let rep = load(input.from, &read_source(source, stdin)?)?;
            let out = rep.convert(*to, *max_ell)?;
            check_agreement(&rep, &out, *check_terms)?;
            Ok((0, format!("{}\n", out.render(fmt))))
        }
        Command::Classify {
            input,
            max_ell,
            sources,
        } => {
            let texts = sources
                .iter()
                .map(|s| read_source(s, stdin))
                .collect::<Result<Vec<_>>>()?;
            let results: Vec<Result<(i32, String)>> = std::thread::scope(|scope| {
                let handles: Vec<_> = texts
                    .iter()
                    .map(|t| scope.spawn(move || classify(input.from, t, *max_ell, fmt)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("classification thread panicked"))
                    .collect()
            });
            if sources.len() == 1 {
                let (code, s) = results.into_iter().next().expect("one input")?;
                return Ok((code, s));
            }
            let mut out = String::new();
            let mut code = 0;
            for (src, r) in sources.iter().zip(results) {
                let (c, s) = r.unwrap_or_else(|e| (exit_code(&e), format!("error: {e}\n")));
                code = code.max(c);
                match fmt {
                    Format::Text => write!(out, "{src}: {s}").expect("string write"),
                    Format::Json => out.push_str(&s),
                }
            }
            Ok((code, out))
        }
        Command::Equiv {
            input,
            from_b,
            max_ell,
            a,
            b,
        } => {
            let ra = load(input.from, &read_source(a, stdin)?)?;
            let rb = load(from_b.or(input.from), &read_source(b, stdin)?)?;
            let same = match (&ra, &rb) {
                (Representation::Wa(x), Representation::Wa(y)) => {
                    let same = x.equiv(y);
                    if same != (x.series() == y.series()) {
                        return Err(Error::CrossCheck(
                            "term comparison and series comparison disagree".into(),
                        ));
                    }
                    same
                }
                _ => ra.series(*max_ell)? == rb.series(*max_ell)?,
            };
            Ok((0, match fmt {
                Format::Text => format!("{same}\n"),
                Format::Json => format!("{}\n", json!({ "equivalent": same })),
            }))
        }
        Command::Decompose { input, source } => {
            let rep = load(input.from.or(Some(Kind::Wa)), &read_source(source, stdin)?)?;
            let a = match rep {
                Representation::Wa(a) => a,
                Representation::Expr(e) => compile_expr_to_wa(&e)?,
                other => {
                    return Err(Error::ClassMismatch {
                        expected: "an automaton or expression".into(),
                        found: other.kind().name().into(),
                    })
                }
            };
            let chains = a.decompose_chained_loops(DEFAULT_CHAIN_CAP)?;
            let loop_text = |l: &Option<(Rational, usize)>| match l {
                Some((lambda, ell)) => format!("({lambda}, {ell})"),
                None => "-".into(),
            };
            let out = match fmt {
                Format::Text => chains
                    .iter()
                    .map(|c| {
                        let ws: Vec<String> = c.path_weights.iter().map(format_rational).collect();
                        let ls: Vec<String> = c.loops.iter().map(loop_text).collect();
                        format!(
                            "path {:?} weights [{}] loops [{}] initial {}; series {}\n",
                            c.path_states,
                            ws.join(", "),
                            ls.join(", "),
                            c.initial_weight,
                            c.series()
                        )
                    })
                    .collect(),
                Format::Json => {
                    let v: Vec<_> = chains
                        .iter()
                        .map(|c| {
                            json!({
                                "path_states": c.path_states,
                                "path_weights": c.path_weights.iter().map(format_rational).collect::<Vec<_>>(),
                                "loops": c.loops.iter().map(|l| l.as_ref().map(|(lambda, ell)| json!({"lambda": format_rational(lambda), "ell": ell}))).collect::<Vec<_>>(),
                                "initial_weight": format_rational(&c.initial_weight),
                                "series": series_json(&c.series()),
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
            };
            Ok((0, out))
        }
        Command::Pfrac {
            input,
            max_ell,
            source,
        } => {
            let rep = load(input.from.or(Some(Kind::Series)), &read_source(source, stdin)?)?;
            let f = rep.series(*max_ell)?;
            let ext = binomial_multiple_extend(&f, *max_ell)?;
            let pf = partial_fractions(&ext.function, &ext.certificate)?;
            if pf.recombine() != f.reduced() {
                return Err(Error::CrossCheck("partial fractions do not recombine".into()));
            }
            let out = match fmt {
                Format::Text => {
                    let mut s = String::new();
                    if !pf.polynomial.is_zero() {
                        writeln!(s, "{}", pf.polynomial).expect("string write");
                    }
                    for t in &pf.terms {
                        writeln!(s, "{t}").expect("string write");
                    }
                    s
                }
                Format::Json => {
                    let coeffs = |p: &crate::ratmath::Polynomial| {
                        p.coeffs().iter().map(format_rational).collect::<Vec<_>>()
                    };
                    let v = json!({
                        "polynomial": coeffs(&pf.polynomial),
                        "terms": pf.terms.iter().map(|t| json!({
                            "numerator": coeffs(&t.numerator),
                            "lambda": format_rational(&t.lambda),
                            "ell": t.ell,
                            "k": t.k,
                        })).collect::<Vec<_>>(),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
            };
            Ok((0, out))
        }
    }
}

/// Compares `n` terms of source and target, and the exact generating
/// functions when both have one directly.
fn check_agreement(a: &Representation, b: &Representation, n: usize) -> Result<()> {
    let (ta, tb) = (a.terms(n)?, b.terms(n)?);
    if let Some(i) = (0..n).find(|&i| ta[i] != tb[i]) {
        return Err(Error::CrossCheck(format!(
            "{} and {} differ at term {i}: {} vs {}",
            a.kind().name(),
            b.kind().name(),
            ta[i],
            tb[i]
        )));
    }
    if let (Some(fa), Some(fb)) = (a.direct_series(), b.direct_series()) {
        if fa.reduced() != fb.reduced() {
            return Err(Error::CrossCheck(format!(
                "generating functions differ: {fa} vs {fb}"
            )));
        }
    }
    Ok(())
}

fn classify(kind: Option<Kind>, text: &str, max_ell: Option<usize>, fmt: Format) -> Result<(i32, String)> {
    let rep = load(kind, text)?;
    match &rep {
        Representation::Wa(a) => {
            let report = a.classify_ambiguity();
            let series = a.series();
            let degree = report.class.degree();
            let text = match &report.class {
                Ambiguity::PolynomiallyAmbiguous(d) => {
                    format!("polynomially ambiguous, degree {d}; series {series}")
                }
                Ambiguity::ExponentiallyAmbiguous => {
                    format!("exponentially ambiguous; series {series}")
                }
                c => format!("{c}; polynomially ambiguous, degree 0; series {series}"),
            };
            Ok((0, match fmt {
                Format::Text => format!("{text}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "class": report.class.label(),
                        "degree": degree,
                        "series": series_json(&series),
                    })
                ),
            }))
        }
        Representation::Ccra(c) => {
            let copy = c.check_copyless();
            let linear = c.check_linear();
            let nf = c.check_normal_form();
            let names = c.registers();
            match fmt {
                Format::Text => {
                    let copy_text = match copy.witness {
                        None => "copyless".to_string(),
                        Some((q, x)) => {
                            format!("not copyless (register {} read twice at state {q})", names[x])
                        }
                    };
                    let nf_text = match &nf {
                        Ok(order) => format!(
                            "normal form order {}",
                            order.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(" < ")
                        ),
                        Err(cycle) => format!(
                            "no normal form (cycle {})",
                            cycle.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(" -> ")
                        ),
                    };
                    let lin = if linear { "linear" } else { "not linear" };
                    Ok((0, format!("{copy_text}; {lin}; {nf_text}\n")))
                }
                Format::Json => {
                    let reg = |v: &[usize]| v.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
                    Ok((0, format!(
                        "{}\n",
                        json!({
                            "copyless": copy.copyless,
                            "witness": copy.witness.map(|(q, x)| json!({"state": q, "register": names[x]})),
                            "linear": linear,
                            "normal_form": nf.as_ref().ok().map(|o| reg(o)),
                            "cycle": nf.as_ref().err().map(|c| reg(c)),
                        })
                    )))
                }
            }
        }
        Representation::Expr(e) => {
            let frags: Vec<String> = e.fragments().iter().map(|f| f.to_string()).collect();
            Ok((0, match fmt {
                Format::Text => format!("fragments: {}\n", frags.join(", ")),
                Format::Json => format!("{}\n", json!({ "fragments": frags })),
            }))
        }
        Representation::Lrs(_) | Representation::Series(_) => {
            let f = rep.series(max_ell)?;
            let v = classify_series(&f, max_ell);
            let code = if v.is_polyrat { 0 } else { 3 };
            let out = match fmt {
                Format::Text => {
                    if let Some(cert) = &v.certificate {
                        let fs: Vec<String> = cert.factors.iter().map(factor_text).collect();
                        format!("poly-rational; series {}; binomial factors [{}]\n", f.reduced(), fs.join(", "))
                    } else {
                        format!(
                            "not poly-rational up to exponent bound {}; series {}; witness {}\n",
                            v.max_ell,
                            f.reduced(),
                            v.witness.as_ref().expect("negative verdict carries a witness")
                        )
                    }
                }
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "polyrat": v.is_polyrat,
                        "max_ell": v.max_ell,
                        "series": series_json(&f.reduced()),
                        "factors": v.certificate.as_ref().map(|c| c.factors.iter().map(factor_json).collect::<Vec<_>>()),
                        "witness": v.witness.as_ref().map(|w| w.coeffs().iter().map(format_rational).collect::<Vec<_>>()),
                    })
                ),
            };
            Ok((code, out))
        }
    }
}
