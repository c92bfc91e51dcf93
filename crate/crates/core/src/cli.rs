//! `isomf` command-line front end. Every command prints one JSON document
//! by default; exit codes are 0 (pass), 1 (a check failed) and 2 (usage).

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, catalog_mf, Prime};
use crate::companion::{glp_trace, gfp_values, schur_general, CoreParams, HookTable};
use crate::error::Error;
use crate::identities::{self as ids, CheckReport};
use crate::isobaric::{gfp_poly, glp_poly, series_from_genfun, wip_poly, Tail, WeightVector};
use crate::localmf::{
    classify_type, convolve, degree, global_eval, inverse, recover_params, LocalMF, Structure, DEFAULT_HORIZON,
};
use crate::norm::{check_norm_degree, check_norm_mult, check_norm_inverse_params, km_norm};
use crate::periodicity::{
    check_period_field_order, column_periods_mod, detect_integral_period, period_mod, sweep_period_field_order, DEFAULT_BOUND,
};
use crate::ring::{parse_list, unify, Scalar};
use crate::roots::{check_root_roundtrip, conv_power};

pub const HORIZON_ENV: &str = "ISOMF_HORIZON";

#[derive(Parser, Debug)]
#[command(name = "isomf", version, about = "Exact computations with multiplicative functions at a prime")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Number of terms past F_0 to compute.
    #[arg(long, global = true, env = HORIZON_ENV, default_value_t = DEFAULT_HORIZON)]
    pub horizon: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// A comma-separated scalar list, brought to a common ring.
#[derive(Clone, Debug)]
pub struct List(pub Vec<Scalar>);

fn list_arg(s: &str) -> Result<List, String> {
    let xs = parse_list(s).map_err(|e| e.to_string())?;
    unify(&xs).map(List).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Core parameters t1,…,tk.
    #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
    pub t: Option<List>,
    /// Treat --t as the start of an infinite parameter list.
    #[arg(long)]
    pub truncated: bool,
    /// Values F_0,F_1,… (F_0 must be 1).
    #[arg(long, allow_hyphen_values = true, value_parser = list_arg, conflicts_with = "t")]
    pub values: Option<List>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generalized Fibonacci polynomial F_{k,n}, or its values at --t.
    Gfp(PolyArgs),
    /// Generalized Lucas polynomial G_{k,n}, or its values at --t.
    Glp(PolyArgs),
    /// Weighted isobaric polynomial for the weights in --weights.
    Wip {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// How weights continue: none, const:C or step:D.
        #[arg(long, default_value = "none")]
        tail: String,
    },
    /// Schur hooks S_(n,1^j) for n in [lo, hi], read off the companion orbit.
    Hooks {
        #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
        t: List,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 8)]
        hi: i64,
    },
    /// Schur polynomial of a partition by Jacobi–Trudi.
    Schur {
        #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
        t: List,
        #[arg(long)]
        lambda: String,
    },
    /// Recursion parameters of a value sequence.
    Recover {
        #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
        values: List,
    },
    /// Dirichlet convolution of two local functions.
    Convolve {
        #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
        a: Option<List>,
        #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
        b: Option<List>,
        #[arg(long = "a-t", allow_hyphen_values = true, value_parser = list_arg)]
        a_t: Option<List>,
        #[arg(long = "b-t", allow_hyphen_values = true, value_parser = list_arg)]
        b_t: Option<List>,
    },
    /// Convolution inverse.
    Invert(Source),
    /// Type 1–4 and degree.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        structure: Option<StructureArg>,
    },
    /// Core and values of a classical function.
    Catalog {
        name: String,
        #[arg(long)]
        k: Option<u32>,
        /// A prime, or "symbolic".
        #[arg(long, default_value = "symbolic")]
        p: String,
    },
    /// Value at n assembled from prime powers.
    Global {
        name: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u64>,
        /// List values for 1..=N instead.
        #[arg(long)]
        upto: Option<u64>,
    },
    /// Run a named identity check on given inputs, or over its sweep.
    Identity(IdentityArgs),
    /// Kesava Menon norm.
    Norm {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        m: Option<usize>,
        /// multiplicative, degree or inverse-params.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
        t2: Option<List>,
        /// Run the full norm suite.
        #[arg(long)]
        suite: bool,
    },
    /// Rational convolution power.
    Root {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Check that the m-th root convolved m times gives the input back.
        #[arg(long)]
        roundtrip: Option<u32>,
        #[arg(long)]
        suite: bool,
    },
    /// Period of F mod m, or over the integers without --mod.
    Period {
        #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
        t: Option<List>,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Check divisibility of p^k - 1 for cores irreducible mod p.
        #[arg(long)]
        check: bool,
        /// Also report the period of every orbit column.
        #[arg(long)]
        columns: bool,
        #[arg(long)]
        suite: bool,
    },
    /// Time the main kernels.
    Bench {
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of variables; defaults to n.
    #[arg(long)]
    pub k: Option<usize>,
    /// Print the polynomial even if --t is given.
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
    pub t: Option<List>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    FiniteParams,
    FiniteValues,
    BothInfinite,
}

#[derive(Args, Debug, Clone)]
pub struct IdentityArgs {
    /// One of the names listed by `isomf identity list`.
    pub name: String,
    #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
    pub t: Option<List>,
    #[arg(long, allow_hyphen_values = true, value_parser = list_arg)]
    pub t2: Option<List>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub shift: Option<usize>,
    #[arg(long)]
    pub column: Option<usize>,
    #[arg(long)]
    pub sweep: bool,
}

pub const IDENTITIES: [&str; 20] = [
    "busche-ramanujan",
    "hook-expansion",
    "hook-expansion-full-row",
    "hooks-jacobi-trudi",
    "params-from-values",
    "binomial",
    "mccarthy",
    "valence-one-one",
    "product-parameters",
    "inverse-duality",
    "core-product",
    "degree-one-times-negative",
    "negative-hook-magnitude",
    "wip-consistency",
    "gfp-table",
    "recoveries",
    "tau-sigma-product",
    "global-smoke",
    "duality-sweep",
    "list",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Fail {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type Out = std::result::Result<Output, Fail>;

/// A command's result in every supported shape.
struct Output {
    json: Value,
    seq: Option<Vec<(i64, String)>>,
    plain: Option<String>,
    pass: bool,
}

impl Output {
    fn new(json: Value) -> Self {
        Output {
            json,
            seq: None,
            plain: None,
            pass: true,
        }
    }

    fn seq(mut self, start: i64, xs: &[Scalar]) -> Self {
        self.seq = Some(xs.iter().enumerate().map(|(i, x)| (start + i as i64, x.to_string())).collect());
        self
    }

    fn plain(mut self, text: String) -> Self {
        self.plain = Some(text);
        self
    }

    fn report(rep: &CheckReport) -> Self {
        let mut o = Output::new(to_value(rep));
        o.pass = rep.pass;
        o
    }

    fn render(&self, format: Format) -> std::result::Result<String, Fail> {
        match format {
            Format::Json => Ok(serde_json::to_string(&self.json).expect("values serialize")),
            Format::Csv => {
                let seq = self
                    .seq
                    .as_ref()
                    .ok_or_else(|| Fail::Usage("csv output needs a sequence-valued command".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["n", "value"]).expect("in-memory write");
                for (n, v) in seq {
                    w.write_record([n.to_string(), v.clone()]).expect("in-memory write");
                }
                let bytes = w.into_inner().expect("in-memory write");
                let text = String::from_utf8(bytes).expect("utf-8");
                Ok(text.trim_end().to_string())
            }
            Format::Plain => Ok(match (&self.plain, &self.seq) {
                (Some(p), _) => p.clone(),
                (None, Some(seq)) => seq.iter().map(|(n, v)| format!("{n} {v}")).collect::<Vec<_>>().join("\n"),
                (None, None) => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            }),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                CommandResult { code, stdout: text, stderr: String::new() }
            } else {
                CommandResult { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = dispatch(&cli).and_then(|o| o.render(cli.format).map(|s| (s, o.pass)));
    match result {
        Ok((stdout, pass)) => CommandResult {
            code: if pass { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(Fail::Usage(msg)) => CommandResult {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}"),
        },
        Err(Fail::Lib(e)) => CommandResult {
            code: if matches!(e, Error::Invariant(_)) { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}"),
        },
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let r = run_command(std::env::args_os());
    if !r.stdout.is_empty() {
        println!("{}", r.stdout.trim_end());
    }
    if !r.stderr.is_empty() {
        eprintln!("{}", r.stderr.trim_end());
    }
    r.code
}

fn need<T>(x: Option<T>, flag: &str) -> std::result::Result<T, Fail> {
    x.ok_or_else(|| Fail::Usage(format!("missing --{flag}")))
}

fn core_of(t: &List, truncated: bool) -> std::result::Result<CoreParams, Fail> {
    Ok(if truncated {
        CoreParams::truncated(t.0.clone())?
    } else {
        CoreParams::finite(t.0.clone())?
    })
}

fn source_mf(src: &Source, horizon: usize) -> std::result::Result<LocalMF, Fail> {
    match (&src.t, &src.values) {
        (Some(t), _) => Ok(LocalMF::from_params(&core_of(t, src.truncated)?, horizon)?),
        (None, Some(v)) => Ok(LocalMF::from_values(v.0.clone())?),
        (None, None) => Err(Fail::Usage("give --t or --values".into())),
    }
}

fn mf_output(f: &LocalMF) -> Output {
    Output::new(to_value(f)).seq(0, f.values())
}

fn dispatch(cli: &Cli) -> Out {
    let horizon = cli.horizon;
    match &cli.command {
        Command::Gfp(a) => poly_command(a, "gfp", horizon),
        Command::Glp(a) => poly_command(a, "glp", horizon),
        Command::Wip { poly, weights, tail } => {
            let omega = weight_vector(weights, tail)?;
            let k = poly.k.unwrap_or(poly.n.max(1));
            match (&poly.t, poly.symbolic) {
                (Some(t), false) => {
                    let vals = series_from_genfun(&omega, &CoreParams::finite(t.0.clone())?, poly.n)?;
                    Ok(Output::new(json!({ "values": strings(&vals) })).seq(0, &vals))
                }
                _ => {
                    let p = wip_poly(&omega, k, poly.n)?;
                    Ok(Output::new(json!({ "poly": p.to_string() })).plain(p.to_string()))
                }
            }
        }
        Command::Hooks { t, lo, hi } => {
            if *lo > 0 || *hi < 0 {
                return Err(Fail::Usage("the range must contain 0".into()));
            }
            let core = CoreParams::finite(t.0.clone())?;
            let table = HookTable::new(&core, *lo, *hi)?;
            let rows: Vec<Value> = (*lo..=*hi)
                .map(|n| {
                    let hooks: Vec<String> = (0..core.k()).map(|j| table.get(n, j).to_string()).collect();
                    json!({ "n": n, "hooks": hooks })
                })
                .collect();
            let first: Vec<Scalar> = (*lo..=*hi).map(|n| table.get(n, 0)).collect();
            Ok(Output::new(json!({ "rows": rows })).seq(*lo, &first))
        }
        Command::Schur { t, lambda } => {
            let parts = parse_usizes(lambda)?;
            let v = schur_general(&CoreParams::finite(t.0.clone())?, &parts)?;
            Ok(Output::new(json!({ "value": v.to_string() })).plain(v.to_string()))
        }
        Command::Recover { values } => {
            let f = LocalMF::from_values(values.0.clone())?;
            let params = recover_params(values.0.as_slice())?;
            Ok(Output::new(json!({ "params": strings(params.params()), "degree": to_value(&degree(&f)) }))
                .seq(1, params.params()))
        }
        Command::Convolve { a, b, a_t, b_t } => {
            let pick = |v: &Option<List>, t: &Option<List>, name: &str| -> std::result::Result<LocalMF, Fail> {
                source_mf(
                    &Source {
                        t: t.clone(),
                        truncated: false,
                        values: v.clone(),
                    },
                    horizon,
                )
                .map_err(|e| match e {
                    Fail::Usage(_) => Fail::Usage(format!("give --{name} or --{name}-t")),
                    other => other,
                })
            };
            let f = pick(a, a_t, "a")?;
            let g = pick(b, b_t, "b")?;
            let ring = f
                .ring()
                .join(g.ring())
                .ok_or(Error::DomainMismatch(f.ring(), g.ring()))?;
            Ok(mf_output(&convolve(&f.promote(ring)?, &g.promote(ring)?)?))
        }
        Command::Invert(src) => Ok(mf_output(&inverse(&source_mf(src, horizon)?)?)),
        Command::Classify { source, structure } => {
            let mut f = source_mf(source, horizon)?;
            if let Some(s) = structure {
                f = f.with_structure(match s {
                    StructureArg::FiniteParams => Structure::FiniteParams,
                    StructureArg::FiniteValues => Structure::FiniteValues,
                    StructureArg::BothInfinite => Structure::BothInfinite,
                });
            }
            Ok(Output::new(json!({
                "type": classify_type(&f),
                "degree": to_value(&degree(&f)),
                "structure": to_value(&f.structure()),
                "horizon": f.horizon(),
            })))
        }
        Command::Catalog { name, k, p } => {
            let prime = parse_prime(p)?;
            let f = catalog_mf(name, *k, prime, horizon)?;
            let core = catalog::catalog(name, *k, prime, horizon)?;
            Ok(Output::new(json!({
                "name": name,
                "params": strings(core.params()),
                "truncated": !core.is_finite(),
                "values": strings(f.values()),
            }))
            .seq(0, f.values()))
        }
        Command::Global { name, k, n, upto } => {
            let fam = catalog::family(name, *k)?;
            match (n, upto) {
                (Some(n), None) => {
                    let v = global_eval(&fam, *n)?;
                    Ok(Output::new(json!({ "name": name, "n": n, "value": v.to_string() })).plain(v.to_string()))
                }
                (None, Some(m)) => {
                    let vals = (1..=*m).map(|i| global_eval(&fam, i)).collect::<crate::Result<Vec<_>>>()?;
                    Ok(Output::new(json!({ "name": name, "values": strings(&vals) })).seq(1, &vals))
                }
                _ => Err(Fail::Usage("give exactly one of --n and --upto".into())),
            }
        }
        Command::Identity(a) => identity(a, horizon),
        Command::Norm {
            source,
            m,
            check,
            t2,
            suite,
        } => {
            if *suite {
                return Ok(Output::report(&norm_suite()?));
            }
            let f = source_mf(source, horizon)?;
            let m = m.unwrap_or(f.horizon() / 2);
            match check.as_deref() {
                None => {
                    let r = km_norm(&f, m)?;
                    Ok(Output::new(json!({ "values": strings(&r.values), "params": strings(&r.params) }))
                        .seq(0, &r.values))
                }
                Some("multiplicative") => {
                    let g = LocalMF::from_params(&core_of(need(t2.as_ref(), "t2")?, false)?, horizon)?;
                    Ok(Output::report(&check_norm_mult(&f, &g, m)?))
                }
                Some("degree") => Ok(Output::report(&check_norm_degree(&f)?)),
                Some("inverse-params") => Ok(Output::report(&check_norm_inverse_params(&f, m)?)),
                Some(other) => Err(Fail::Usage(format!("unknown norm check {other}"))),
            }
        }
        Command::Root {
            source,
            q,
            roundtrip,
            suite,
        } => {
            if *suite {
                return Ok(Output::report(&root_suite()?));
            }
            let f = source_mf(source, horizon)?;
            match (q, roundtrip) {
                (Some(q), None) => {
                    let q = parse_rational(q)?;
                    let h = conv_power(&f, &q, f.horizon())?;
                    Ok(Output::new(json!({ "q": q.to_string(), "values": strings(&h.values) })).seq(0, &h.values))
                }
                (None, Some(m)) => Ok(Output::report(&check_root_roundtrip(&f, *m, f.horizon())?)),
                _ => Err(Fail::Usage("give exactly one of --q and --roundtrip".into())),
            }
        }
        Command::Period {
            t,
            modulus,
            bound,
            check,
            columns,
            suite,
        } => {
            if *suite {
                return Ok(Output::report(&period_suite()?));
            }
            let core = CoreParams::finite(need(t.as_ref(), "t")?.0.clone())?;
            match (modulus, check) {
                (Some(p), true) => Ok(Output::report(&check_period_field_order(&core, *p)?)),
                (Some(m), false) if *columns => {
                    let (f, cols) = column_periods_mod(&core, *m, *bound)?;
                    let cp: Vec<usize> = cols.iter().map(|c| c.period).collect();
                    Ok(Output::new(json!({ "preperiod": f.preperiod, "period": f.period, "column_periods": cp })))
                }
                (Some(m), false) => {
                    let r = period_mod(&core, *m, *bound)?;
                    Ok(Output::new(json!({ "preperiod": r.preperiod, "period": r.period })))
                }
                (None, true) => Err(Fail::Usage("--check needs --mod".into())),
                (None, false) => match detect_integral_period(&core, *bound)? {
                    Some(r) => Ok(Output::new(json!({ "preperiod": r.preperiod, "period": r.period }))),
                    None => Ok(Output::new(json!({ "periodic": false, "bound": bound }))),
                },
            }
        }
        Command::Bench { n } => bench(*n),
    }
}

fn poly_command(a: &PolyArgs, which: &str, _horizon: usize) -> Out {
    let k = a.k.unwrap_or(a.n.max(1));
    if k == 0 {
        return Err(Fail::Usage("--k must be positive".into()));
    }
    match (&a.t, a.symbolic) {
        (Some(t), false) => {
            let core = CoreParams::finite(t.0.clone())?;
            let vals = if which == "gfp" {
                gfp_values(&core, a.n)?
            } else {
                (0..=a.n as i64).map(|n| glp_trace(&core, n)).collect::<crate::Result<Vec<_>>>()?
            };
            Ok(Output::new(json!({ "values": strings(&vals) })).seq(0, &vals))
        }
        _ => {
            let p = if which == "gfp" {
                gfp_poly(k, a.n)
            } else {
                if a.n == 0 {
                    return Err(Fail::Usage("G is defined for n >= 1".into()));
                }
                glp_poly(k, a.n)
            };
            Ok(Output::new(json!({ "poly": p.to_string() })).plain(p.to_string()))
        }
    }
}

fn parse_usizes(s: &str) -> std::result::Result<Vec<usize>, Fail> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| Fail::Usage(format!("bad entry {x:?}: {e}"))))
        .collect()
}

fn parse_prime(p: &str) -> std::result::Result<Prime, Fail> {
    if p == "symbolic" {
        return Ok(Prime::Symbolic);
    }
    let v: u64 = p.parse().map_err(|_| Fail::Usage(format!("--p must be a prime or \"symbolic\", got {p}")))?;
    if !crate::localmf::is_prime(v) {
        return Err(Fail::Usage(format!("{v} is not prime")));
    }
    Ok(Prime::Numeric(v))
}

fn parse_rational(q: &str) -> std::result::Result<BigRational, Fail> {
    match q.parse::<Scalar>()? {
        Scalar::Int(n) => Ok(BigRational::from_integer(n)),
        Scalar::Rat(r) => Ok(r),
        other => Err(Fail::Usage(format!("--q must be rational, got {other}"))),
    }
}

fn weight_vector(weights: &str, tail: &str) -> std::result::Result<WeightVector, Fail> {
    let head: Vec<BigInt> = weights
        .split(',')
        .map(|w| w.trim().parse::<BigInt>().map_err(|e| Fail::Usage(format!("bad weight {w:?}: {e}"))))
        .collect::<std::result::Result<_, _>>()?;
    let num = |s: &str| s.parse::<BigInt>().map_err(|e| Fail::Usage(format!("bad tail {tail:?}: {e}")));
    let tail = match tail.split_once(':') {
        None if tail == "none" => Tail::None,
        Some(("const", c)) => Tail::Constant(num(c)?),
        Some(("step", d)) => Tail::Arithmetic(num(d)?),
        _ => return Err(Fail::Usage(format!("--tail must be none, const:C or step:D, got {tail}"))),
    };
    Ok(WeightVector::new(head, tail)?)
}

fn pair(t: &Option<List>) -> std::result::Result<(Scalar, Scalar), Fail> {
    let t = need(t.as_ref(), "t")?;
    match t.0.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(Fail::Usage("--t needs exactly two entries".into())),
    }
}

fn identity(a: &IdentityArgs, horizon: usize) -> Out {
    let core = |t: &Option<List>, flag: &str| -> std::result::Result<CoreParams, Fail> {
        Ok(CoreParams::finite(need(t.as_ref(), flag)?.0.clone())?)
    };
    let rs = || -> std::result::Result<(usize, usize), Fail> { Ok((need(a.r, "r")?, need(a.s, "s")?)) };
    let rep = match a.name.as_str() {
        "list" => return Ok(Output::new(json!({ "identities": IDENTITIES })).plain(IDENTITIES.join("\n"))),
        "busche-ramanujan" if a.sweep => ids::sweep_busche_ramanujan(-3, 3, 12)?,
        "busche-ramanujan" => {
            let (t1, t2) = pair(&a.t)?;
            let (r, s) = rs()?;
            let mut rep = ids::check_br_product(&t1, &t2, r, s)?;
            rep.absorb(ids::check_br_inverse(&t1, &t2, r, s)?);
            rep
        }
        "hook-expansion" | "hook-expansion-full-row" | "hooks-jacobi-trudi" if a.sweep => {
            let [mut literal, mut full, hooks] = ids::sweep_hook_expansion(4, -2, 2, 8)?;
            match a.name.as_str() {
                "hook-expansion" => {
                    literal.absorb(hooks);
                    literal
                }
                "hook-expansion-full-row" => {
                    full.absorb(hooks);
                    full
                }
                _ => hooks,
            }
        }
        "hook-expansion" => {
            let (r, s) = rs()?;
            ids::check_hook_expansion(&core(&a.t, "t")?, r, s)?
        }
        "hook-expansion-full-row" => {
            let (r, s) = rs()?;
            ids::check_hook_expansion_full_row(&core(&a.t, "t")?, r, s)?
        }
        "hooks-jacobi-trudi" => ids::check_hooks_jt(&core(&a.t, "t")?, a.n.unwrap_or(horizon))?,
        "params-from-values" if a.sweep => {
            let mut rep = CheckReport::new("params-from-values", "n <= 6");
            for n in 1..=6 {
                rep.absorb(ids::params_from_f(n)?);
            }
            rep
        }
        "params-from-values" => ids::params_from_f(need(a.n, "n")?)?,
        "binomial" if a.sweep => {
            let mut rep = CheckReport::new("degree-two-binomial", "t1,t2 in [-3,3], n <= 10");
            for x in -3..=3 {
                for y in -3..=3 {
                    for n in 0..=10 {
                        rep.absorb(ids::check_binomial(&Scalar::int(x), &Scalar::int(y), n)?);
                    }
                }
            }
            rep
        }
        "binomial" => {
            let (t1, t2) = pair(&a.t)?;
            ids::check_binomial(&t1, &t2, need(a.n, "n")?)?
        }
        "mccarthy" => {
            let f = LocalMF::from_params(&core(&a.t, "t")?, horizon)?;
            let (rec, b) = ids::check_mccarthy(&f)?;
            let mut o = Output::new(json!({ "recursion": to_value(&rec), "b_degree_one": to_value(&b) }));
            o.pass = rec.pass;
            return Ok(o);
        }
        "valence-one-one" => {
            let (tp, tpp) = pair(&a.t)?;
            ids::check_totient_formulas(&tp, &tpp, horizon)?
        }
        "product-parameters" => {
            let f = LocalMF::from_params(&core(&a.t, "t")?, horizon)?;
            let g = LocalMF::from_params(&core(&a.t2, "t2")?, horizon)?;
            ids::check_product_params(&f, &g)?
        }
        "inverse-duality" => ids::check_duality(&LocalMF::from_params(&core(&a.t, "t")?, horizon)?)?,
        "duality-sweep" => ids::sweep_duality(3, -4, 4, 12)?,
        "core-product" => ids::check_core_product(&core(&a.t, "t")?, &core(&a.t2, "t2")?)?,
        "degree-one-times-negative" => {
            let t = need(a.t.as_ref(), "t")?;
            let [tp] = t.0.as_slice() else {
                return Err(Fail::Usage("--t must hold the single degree-1 parameter".into()));
            };
            ids::check_degree_one_product(tp, &core(&a.t2, "t2")?, horizon)?
        }
        "negative-hook-magnitude" if a.sweep => ids::sweep_negative_hooks(&[2, 3], 3, -2, 2)?,
        "negative-hook-magnitude" => {
            let r = crate::companion::check_negative_hook_magnitude(
                &core(&a.t, "t")?,
                need(a.shift, "shift")?,
                need(a.column, "column")?,
            )?;
            let mut o = Output::new(to_value(&r));
            o.pass = r.magnitude_match;
            return Ok(o);
        }
        "wip-consistency" => ids::check_wip_consistency(4, 10, -2, 2)?,
        "gfp-table" => gfp_table(),
        "recoveries" => recoveries()?,
        "tau-sigma-product" => tau_sigma_product()?,
        "global-smoke" => global_smoke()?,
        other => return Err(Fail::Usage(format!("unknown identity {other}; try `identity list`"))),
    };
    Ok(Output::report(&rep))
}

/// The first five generalized Fibonacci polynomials in canonical text.
pub const GFP_TABLE: [&str; 5] = [
    "t1",
    "t1^2 + t2",
    "t1^3 + 2*t1*t2 + t3",
    "t1^4 + 3*t1^2*t2 + t2^2 + 2*t1*t3 + t4",
    "t1^5 + 4*t1^3*t2 + 3*t1*t2^2 + 3*t1^2*t3 + 2*t2*t3 + 2*t1*t4 + t5",
];

fn gfp_table() -> CheckReport {
    let mut rep = CheckReport::new("gfp-table", "n = 1..5, k = n");
    for (i, want) in GFP_TABLE.iter().enumerate() {
        let n = i + 1;
        rep.record(|| format!("n={n}"), &gfp_poly(n, n).to_string(), &want.to_string());
    }
    rep
}

fn recoveries() -> crate::Result<CheckReport> {
    let mut rep = CheckReport::new("recoveries", "tau, symbolic sigma, phi and mu to horizon 12");
    let p = |s: &str| s.parse::<Scalar>();
    let tau = recover_params(catalog_mf("tau", None, Prime::Symbolic, 12)?.values())?;
    let mut want = vec![p("2*p^0")?, p("-1*p^0")?];
    want.resize(12, p("0*p^0")?);
    rep.record(|| "tau".into(), &tau.to_string(), &CoreParams::truncated(want)?.to_string());
    let sigma = recover_params(catalog_mf("sigma_k", None, Prime::Symbolic, 12)?.values())?;
    let mut want = vec![p("p+1")?, p("-p")?];
    want.resize(12, p("0*p^0")?);
    rep.record(|| "sigma".into(), &sigma.to_string(), &CoreParams::truncated(want)?.to_string());
    let phi = recover_params(catalog_mf("phi", None, Prime::Symbolic, 12)?.values())?;
    let want = vec![p("p-1")?; 12];
    rep.record(|| "phi".into(), &phi.to_string(), &CoreParams::truncated(want)?.to_string());
    let mu = recover_params(catalog_mf("mu", None, Prime::Symbolic, 12)?.values())?;
    let want = vec![p("-1*p^0")?; 12];
    rep.record(|| "mu".into(), &mu.to_string(), &CoreParams::truncated(want)?.to_string());
    Ok(rep)
}

fn tau_sigma_product() -> crate::Result<CheckReport> {
    let mut rep = CheckReport::new("tau-sigma-product", "symbolic and at p = 2");
    for prime in [Prime::Symbolic, Prime::Numeric(2)] {
        let tau = catalog::catalog("tau", None, prime, 0)?;
        let sigma = catalog::catalog("sigma_k", None, prime, 0)?;
        rep.absorb(ids::check_core_product(&tau, &sigma)?);
        let h = convolve(&LocalMF::from_params(&tau, 12)?, &LocalMF::from_params(&sigma, 12)?)?;
        let got = h.core()?;
        let want = match prime {
            Prime::Symbolic => ["p+3", "-3*p-3", "3*p+1", "-p"],
            Prime::Numeric(_) => ["5", "-9", "7", "-2"],
        };
        let want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
        rep.record(|| format!("{prime:?} params"), &strings(got.params()).join(","), &want.join(","));
        rep.record(|| format!("{prime:?} degree"), &got.k(), &4);
    }
    Ok(rep)
}

fn global_smoke() -> crate::Result<CheckReport> {
    let mut rep = CheckReport::new("global-smoke", "sigma(12), tau(36), phi(100)");
    for (name, n, want) in [("sigma_k", 12u64, 28i64), ("tau", 36, 9), ("phi", 100, 40)] {
        let v = global_eval(&catalog::family(name, None)?, n)?;
        rep.record(|| format!("{name}({n})"), &v, &Scalar::int(want));
    }
    Ok(rep)
}

fn small_cores(k_max: usize, lo: i64, hi: i64, horizon: usize) -> crate::Result<Vec<LocalMF>> {
    ids::integer_cores(k_max, lo, hi)
        .iter()
        .map(|t| LocalMF::from_params(t, horizon))
        .collect()
}

/// Fibonacci and tau norms, multiplicativity on the degree ≤ 2 grid and
/// degree preservation.
pub fn norm_suite() -> crate::Result<CheckReport> {
    let mut rep = CheckReport::new("norm-suite", "fibonacci, tau, degree <= 2 grid in [-2,2], k <= 4");
    let int_core = |v: &[i64]| CoreParams::finite(v.iter().map(|&x| Scalar::int(x)).collect());
    let fib = LocalMF::from_params(&int_core(&[1, 1])?, 17)?;
    let n = km_norm(&fib, 8)?;
    for k in 1..=8 {
        rep.record(|| format!("fibonacci N_{k}"), &n.values[k], fib.value(2 * k + 1));
    }
    rep.record(|| "fibonacci norm params".into(), &strings(&n.params[..3]).join(","), &"3,-1,0".to_string());
    let tau = LocalMF::from_params(&int_core(&[2, -1])?, 16)?;
    let nt = km_norm(&tau, 8)?;
    rep.record(|| "tau norm".into(), &strings(&nt.values).join(","), &strings(&tau.values()[..9]).join(","));
    let grid = small_cores(2, -2, 2, 8)?;
    for f in &grid {
        for g in &grid {
            rep.absorb(check_norm_mult(f, g, 4)?);
        }
    }
    for f in small_cores(4, -1, 1, 12)? {
        rep.absorb(check_norm_degree(&f)?);
    }
    Ok(rep)
}

/// Identity power, square root of zeta, m-th root roundtrips and the
/// inverse as the power -1.
pub fn root_suite() -> crate::Result<CheckReport> {
    let mut rep = CheckReport::new("root-suite", "catalog functions, horizon 12");
    let one = BigRational::from_integer(1.into());
    for name in catalog::NAMES {
        for prime in [Prime::Numeric(2), Prime::Numeric(3), Prime::Symbolic] {
            let f = catalog_mf(name, None, prime, 12)?;
            let h = conv_power(&f, &one, 12)?;
            let want = f.promote(f.ring().field())?;
            rep.record(|| format!("{name} {prime:?} q=1"), &strings(&h.values).join(","), &strings(want.values()).join(","));
            let inv = conv_power(&f, &-one.clone(), 12)?;
            let direct = inverse(&f)?.promote(f.ring().field())?;
            rep.record(|| format!("{name} {prime:?} q=-1"), &strings(&inv.values).join(","), &strings(direct.values()).join(","));
        }
    }
    let zeta = catalog_mf("zeta", None, Prime::Numeric(2), 12)?;
    let half = conv_power(&zeta, &BigRational::new(1.into(), 2.into()), 8)?;
    for n in 0..=8u64 {
        let c = crate::partitions::binomial(2 * n, n);
        let want = Scalar::Rat(BigRational::new(c, BigInt::from(4).pow(n as u32)));
        rep.record(|| format!("zeta^(1/2) n={n}"), &half.values[n as usize], &want);
    }
    let fib = LocalMF::from_params(&CoreParams::finite(vec![Scalar::int(1), Scalar::int(1)])?, 12)?;
    let targets = [
        catalog_mf("tau", None, Prime::Numeric(2), 12)?,
        catalog_mf("sigma_k", None, Prime::Numeric(2), 12)?,
        fib,
    ];
    for f in &targets {
        for m in [2, 3, 5] {
            rep.absorb(check_root_roundtrip(f, m, 12)?);
        }
    }
    Ok(rep)
}

/// Fibonacci periods mod 2, 3, 5, 7 and the irreducible-core sweep.
pub fn period_suite() -> crate::Result<CheckReport> {
    let mut rep = CheckReport::new("period-suite", "fibonacci mod 2,3,5,7; k <= 3, p <= 13, t in [-2,2]");
    let fib = CoreParams::finite(vec![Scalar::int(1), Scalar::int(1)])?;
    for (p, want) in [(2u64, 3usize), (3, 8), (5, 20), (7, 16)] {
        let r = period_mod(&fib, p, DEFAULT_BOUND)?;
        rep.record(|| format!("fibonacci mod {p}"), &r.period, &want);
        let irreducible = crate::periodicity::core_irreducible_mod(&fib, p)?;
        rep.record(|| format!("fibonacci irreducible mod {p}"), &irreducible, &(p != 5));
        if irreducible {
            rep.record(|| format!("fibonacci mod {p} divides p^2-1"), &((p * p - 1) % want as u64), &0);
        }
    }
    rep.absorb(sweep_period_field_order(3, -2, 2, &[2, 3, 5, 7, 11, 13])?);
    Ok(rep)
}

fn bench(n: usize) -> Out {
    let mut timings = serde_json::Map::new();
    let mut time = |label: &str, f: &mut dyn FnMut() -> crate::Result<()>| -> crate::Result<()> {
        let start = Instant::now();
        f()?;
        timings.insert(label.into(), json!(start.elapsed().as_secs_f64() * 1000.0));
        Ok(())
    };
    time("gfp_poly_ms", &mut || {
        gfp_poly(n, n);
        Ok(())
    })?;
    let fib = CoreParams::finite(vec![Scalar::int(1), Scalar::int(1)])?;
    time("hook_table_ms", &mut || HookTable::new(&fib, -(n as i64) * 10, n as i64 * 10).map(|_| ()))?;
    time("convolve_ms", &mut || {
        let f = LocalMF::from_params(&fib, n * 10)?;
        convolve(&f, &f).map(|_| ())
    })?;
    time("norm_ms", &mut || {
        let f = LocalMF::from_params(&fib, n * 10)?;
        km_norm(&f, n * 5).map(|_| ())
    })?;
    Ok(Output::new(json!({ "n": n, "timings": Value::Object(timings) })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        run_command(std::iter::once("isomf").chain(args.iter().copied()))
    }

    #[test]
    fn documented_outputs() {
        let r = run(&["recover", "--values", "1,2,3,4,5"]);
        assert_eq!(r.stdout, r#"{"params":["2","-1","0","0"],"degree":2}"#);
        assert_eq!(r.code, 0);
        let r = run(&["period", "--t", "1,1", "--mod", "2"]);
        assert_eq!(r.stdout, r#"{"preperiod":0,"period":3}"#);
        let r = run(&["gfp", "--n", "3", "--symbolic"]);
        assert_eq!(r.stdout, r#"{"poly":"t1^3 + 2*t1*t2 + t3"}"#);
        let r = run(&["gfp", "--k", "2", "--n", "3", "--symbolic"]);
        assert_eq!(r.stdout, r#"{"poly":"t1^3 + 2*t1*t2"}"#);
    }

    #[test]
    fn formats() {
        let r = run(&["gfp", "--n", "4", "--t", "1,1", "--format", "csv"]);
        assert_eq!(r.stdout, "n,value\n0,1\n1,1\n2,2\n3,3\n4,5");
        let r = run(&["gfp", "--n", "2", "--format", "plain"]);
        assert_eq!(r.stdout, "t1^2 + t2");
        let r = run(&["schur", "--t", "1,1", "--lambda", "2,1", "--format", "csv"]);
        assert_eq!(r.code, 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["frobnicate"]).code, 2);
        assert_eq!(run(&["recover", "--values", "2,1"]).code, 2);
        assert_eq!(run(&["identity", "hook-expansion", "--t", "-2,-2,-2", "--r", "2", "--s", "2"]).code, 1);
        assert_eq!(run(&["identity", "hook-expansion", "--t", "1,1", "--r", "2", "--s", "3"]).code, 0);
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn symbolic_inputs() {
        let r = run(&["catalog", "sigma_k", "--horizon", "3"]);
        assert!(r.stdout.starts_with(r#"{"name":"sigma_k","params":["p+1","-p"]"#), "{}", r.stdout);
        let r = run(&["convolve", "--a-t", "p+1,-p", "--b-t", "2,-1", "--horizon", "4"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.contains(r#""params":["p+3","-3*p-3","3*p+1","-p"]"#), "{}", r.stdout);
        let r = run(&["global", "phi", "--n", "100"]);
        assert_eq!(r.stdout, r#"{"name":"phi","n":100,"value":"40"}"#);
    }

    #[test]
    fn named_suites() {
        for name in ["gfp-table", "recoveries", "tau-sigma-product", "global-smoke", "params-from-values"] {
            let r = run(&["identity", name, "--sweep"]);
            assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        }
        let r = run(&["identity", "mccarthy", "--t", "2,-1"]);
        assert_eq!(r.code, 0);
        assert!(r.stdout.contains(r#""b_degree_one":{"identity":"mccarthy-b-degree-one","sweep":"u_2..u_8","pass":false"#));
    }

    #[test]
    fn deterministic() {
        let a = run(&["invert", "--t", "3,-1,2"]);
        let b = run(&["invert", "--t", "3,-1,2"]);
        assert_eq!(a, b);
    }
}
