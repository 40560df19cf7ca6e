use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use padic_euler::arith;
use padic_euler::characters::{enumerate_characters, DirichletCharacter};
use padic_euler::lfunction::{
    corollary2_discrepancy, l_derivative_at_0, l_padic, DerivativeMethod, PadicLQuery, SValue,
};
use padic_euler::lvalues::{
    generalized_euler_number, gf_oracle_generalized, l_value_neg, LNegQuery,
};
use padic_euler::padic::{PadicContext, PadicNum};
use padic_euler::rational::{display, RationalJson};
use padic_euler::verify::{run_suite, Suite, VerifyParams};
use padic_euler::{euler_number_multi, Error};

#[derive(Parser, Debug)]
#[command(name = "padic-euler", version, about = "Multiple Euler numbers and p-adic l-functions")]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for tuple summation; output does not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Corollary2,
    Direct,
    Fd,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiple Euler number E_n^(r).
    Euler {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Dirichlet characters mod f in canonical order.
    Chars {
        #[arg(long)]
        f: u64,
        #[arg(long)]
        primitive_only: bool,
    },
    /// l_r(-n, chi) as an element of Q(zeta_m).
    Lneg {
        #[command(flatten)]
        chi: CharArgs,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: usize,
        #[arg(long = "F-mult", default_value_t = 1)]
        f_mult: u64,
    },
    /// Generating-function oracle against the finite sums, n = 0..=nmax.
    Gfcheck {
        #[command(flatten)]
        chi: CharArgs,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        nmax: usize,
    },
    /// p-adic l-function value l_{p,r}(s, chi).
    Plval {
        #[command(flatten)]
        padic: PadicArgs,
        /// Integer, rational a/b with p not dividing b, or digits:<base-p digits, least significant first>.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Derivative of the p-adic l-function at s = 0.
    Pderiv {
        #[command(flatten)]
        padic: PadicArgs,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[arg(long = "fd-k", default_value_t = 4)]
        fd_k: u32,
    },
    /// Run the invariant suites; exit status 0 iff every check passes.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        f: u64,
        #[arg(long, default_value_t = 15)]
        prec: u32,
    },
}

#[derive(Args, Debug)]
struct CharArgs {
    #[arg(long)]
    f: u64,
    #[arg(long, default_value_t = 0)]
    chi: u64,
}

#[derive(Args, Debug)]
struct PadicArgs {
    #[arg(long)]
    p: u64,
    #[command(flatten)]
    chi: CharArgs,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, default_value_t = 10)]
    prec: u32,
    #[arg(long = "F-mult", default_value_t = 1)]
    f_mult: u64,
}

enum Failure {
    Usage(String),
    Suite,
    Embedding(String),
}

impl Failure {
    fn from_error(e: Error, params: &str) -> Failure {
        match e {
            Error::UnsupportedEmbedding { .. } | Error::Precision { .. } => {
                Failure::Embedding(format!("{e} ({params})"))
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_modulus(f: u64) -> Outcome {
    if f == 0 || f.is_multiple_of(2) {
        return Err(usage(format!("f = {f} must be odd and positive")));
    }
    Ok(())
}

fn check_f_mult(k: u64) -> Outcome {
    if k == 0 || k.is_multiple_of(2) {
        return Err(usage(format!("--F-mult {k} must be odd and positive")));
    }
    Ok(())
}

fn character(args: &CharArgs) -> std::result::Result<DirichletCharacter, Failure> {
    check_modulus(args.f)?;
    let phi = arith::euler_phi(args.f);
    if args.chi >= phi {
        return Err(usage(format!("--chi {} must be below phi({}) = {phi}", args.chi, args.f)));
    }
    DirichletCharacter::from_index(args.f, args.chi).map_err(|e| usage(e.to_string()))
}

fn check_r(r: u32) -> Outcome {
    if r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    Ok(())
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))
}

/// Appends the integer reading when it is short compared with `p^N`.
fn padic_table(x: &PadicNum) -> String {
    let bound = num_traits::pow(num_bigint::BigInt::from(x.prime()), x.precision().max(0) as usize);
    match x.small_integer() {
        Some(v) if num_bigint::BigInt::from(v) * v < bound => format!("{x}  (= {v})"),
        _ => x.to_string(),
    }
}

fn padic_query(a: &PadicArgs) -> std::result::Result<(PadicLQuery, String), Failure> {
    if a.p < 3 || !arith::is_prime(a.p) {
        return Err(usage(format!("--p {} must be an odd prime", a.p)));
    }
    check_f_mult(a.f_mult)?;
    check_r(a.r)?;
    if a.prec == 0 {
        return Err(usage("--prec must be positive"));
    }
    let chi = character(&a.chi)?;
    let params = format!(
        "p={} f={} chi={} order={} r={} prec={}",
        a.p,
        a.chi.f,
        a.chi.chi,
        chi.order(),
        a.r,
        a.prec
    );
    let ctx = PadicContext::with_guard(a.p, a.prec, PadicContext::guard_from_env())
        .map_err(|e| usage(e.to_string()))?;
    let big_f = a.f_mult * a.p * a.chi.f;
    let q = PadicLQuery::new(a.r, chi, big_f, ctx).map_err(|e| Failure::from_error(e, &params))?;
    Ok((q, params))
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let io_err = |e: io::Error| usage(format!("write failed: {e}"));
    match cli.command {
        Command::Euler { n, r } => {
            check_r(r)?;
            let value = euler_number_multi(n, r).map_err(|e| usage(e.to_string()))?;
            match cli.format {
                Format::Json => emit(out, &RationalJson::from(&value)),
                Format::Table => writeln!(out, "E_{n}^({r}) = {}", display(&value)),
            }
            .map_err(io_err)?;
        }
        Command::Chars { f, primitive_only } => {
            check_modulus(f)?;
            let chars = enumerate_characters(f, primitive_only).map_err(|e| usage(e.to_string()))?;
            match cli.format {
                Format::Json => {
                    for chi in &chars {
                        emit(out, &chi.to_json()).map_err(io_err)?;
                    }
                }
                Format::Table => {
                    writeln!(out, "{:>5}  {:>5}  {:>9}  {:>9}  exponents", "index", "order", "conductor", "primitive")
                        .map_err(io_err)?;
                    for chi in &chars {
                        writeln!(
                            out,
                            "{:>5}  {:>5}  {:>9}  {:>9}  {:?}",
                            chi.index(),
                            chi.order(),
                            chi.conductor(),
                            chi.is_primitive(),
                            chi.exponents()
                        )
                        .map_err(io_err)?;
                    }
                }
            }
        }
        Command::Lneg { chi, r, n, f_mult } => {
            check_r(r)?;
            check_f_mult(f_mult)?;
            let c = character(&chi)?;
            let q = LNegQuery::new(n, r, c, f_mult * chi.f).map_err(|e| usage(e.to_string()))?;
            let value = l_value_neg(&q).map_err(|e| usage(e.to_string()))?;
            match cli.format {
                Format::Json => emit(out, &value.to_json()),
                Format::Table => writeln!(out, "l_{r}(-{n}, chi) = {value}"),
            }
            .map_err(io_err)?;
        }
        Command::Gfcheck { chi, r, nmax } => {
            check_r(r)?;
            let c = character(&chi)?;
            let oracle = gf_oracle_generalized(nmax, r, &c).map_err(|e| usage(e.to_string()))?;
            let mut all_ok = true;
            #[derive(Serialize)]
            struct Row {
                n: usize,
                oracle: padic_euler::cyclotomic::CycElemJson,
                finite_sum: padic_euler::cyclotomic::CycElemJson,
                lvalue: padic_euler::cyclotomic::CycElemJson,
                agree: bool,
            }
            if cli.format == Format::Table {
                writeln!(out, "{:>3}  {:>5}  value", "n", "agree").map_err(io_err)?;
            }
            for (n, want) in oracle.iter().enumerate() {
                let finite = generalized_euler_number(n, r, &c, chi.f).map_err(|e| usage(e.to_string()))?;
                let q = LNegQuery::new(n, r, c.clone(), chi.f).map_err(|e| usage(e.to_string()))?;
                let lv = l_value_neg(&q).map_err(|e| usage(e.to_string()))?;
                let agree = &finite == want && &lv == want;
                all_ok &= agree;
                match cli.format {
                    Format::Json => emit(
                        out,
                        &Row {
                            n,
                            oracle: want.to_json(),
                            finite_sum: finite.to_json(),
                            lvalue: lv.to_json(),
                            agree,
                        },
                    ),
                    Format::Table => writeln!(out, "{n:>3}  {agree:>5}  {want}"),
                }
                .map_err(io_err)?;
            }
            if !all_ok {
                return Err(Failure::Suite);
            }
        }
        Command::Plval { padic, s } => {
            let (q, params) = padic_query(&padic)?;
            let s_val = SValue::parse(&s, q.context()).map_err(|e| usage(format!("--s: {e}")))?;
            let params = format!("{params} s={s}");
            let value = l_padic(&s_val, &q).map_err(|e| Failure::from_error(e, &params))?;
            match cli.format {
                Format::Json => emit(out, &value.to_json()),
                Format::Table => writeln!(out, "l_p({s}) = {}", padic_table(&value)),
            }
            .map_err(io_err)?;
        }
        Command::Pderiv { padic, method, fd_k } => {
            let (q, params) = padic_query(&padic)?;
            let chosen = match method {
                Method::Corollary2 => DerivativeMethod::Corollary2,
                Method::Direct => DerivativeMethod::Direct,
                Method::Fd => DerivativeMethod::FiniteDifference(fd_k),
            };
            let fail = |e| Failure::from_error(e, &params);
            let value = l_derivative_at_0(&q, chosen).map_err(fail)?;
            match cli.format {
                Format::Json => emit(out, &value.to_json()).map_err(io_err)?,
                Format::Table => {
                    writeln!(out, "l_p'(0) = {}", padic_table(&value)).map_err(io_err)?;
                    let c2 = l_derivative_at_0(&q, DerivativeMethod::Corollary2).map_err(fail)?;
                    let direct = l_derivative_at_0(&q, DerivativeMethod::Direct).map_err(fail)?;
                    let fd = l_derivative_at_0(&q, DerivativeMethod::FiniteDifference(fd_k));
                    let gap = corollary2_discrepancy(&q).map_err(fail)?;
                    writeln!(out, "{:<12}  value", "method").map_err(io_err)?;
                    writeln!(out, "{:<12}  {}", "corollary2", padic_table(&c2)).map_err(io_err)?;
                    writeln!(out, "{:<12}  {}", "direct", padic_table(&direct)).map_err(io_err)?;
                    match fd {
                        Ok(v) => {
                            let agree = v.agreement(&direct).map_err(fail)?;
                            writeln!(out, "{:<12}  {}  (agrees with direct to {agree} digits)", format!("fd k={fd_k}"), padic_table(&v))
                        }
                        Err(e) => writeln!(out, "{:<12}  unavailable: {e}", format!("fd k={fd_k}")),
                    }
                    .map_err(io_err)?;
                    writeln!(out, "{:<12}  {}", "c2 - direct", padic_table(&gap)).map_err(io_err)?;
                }
            }
        }
        Command::Verify { suite, p, f, prec } => {
            let suite: Suite = suite.parse().map_err(|e: Error| usage(e.to_string()))?;
            let params = VerifyParams { p, f, precision: prec, guard: PadicContext::guard_from_env() };
            let results = run_suite(suite, &params).map_err(|e| Failure::from_error(e, &format!("p={p} f={f} prec={prec}")))?;
            for c in &results {
                match cli.format {
                    Format::Json => emit(out, c),
                    Format::Table => writeln!(
                        out,
                        "{:<4}  {:<10}  {}  {}",
                        if c.passed { "ok" } else { "FAIL" },
                        c.suite,
                        c.check,
                        c.detail
                    ),
                }
                .map_err(io_err)?;
            }
            let failed = results.iter().filter(|c| !c.passed).count();
            if cli.format == Format::Table {
                writeln!(out, "{} checks, {failed} failed", results.len()).map_err(io_err)?;
            }
            if failed > 0 {
                return Err(Failure::Suite);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Embedding(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
