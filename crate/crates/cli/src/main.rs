use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use trisum::arith::factor::{factor, Factorization};
use trisum::arith::RatFun;
use trisum::bench::{generate, run_variant, BenchParams, Variant};
use trisum::bireduce::bivariate_abramov;
use trisum::certificate::{Cert, CertMode};
use trisum::expr::{parse_expression, parse_factored_den};
use trisum::telescope::{telescope, verify_telescoper, CtOptions, OreOp, Status, TelescopeResult};
use trisum::Error;

const EXIT_NO_TELESCOPER: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "trisum", version, about = "Creative telescoping for rational functions in x, y, z")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal telescoper in S_x with certificate.
    Telescope {
        expr: String,
        /// Denominator written as a product of factors.
        #[arg(long)]
        factored_den: Option<String>,
        #[arg(long, default_value = "normalized")]
        certificate: String,
        #[arg(long)]
        no_enhancements: bool,
        /// Combine class-wise telescopers by a least common left multiple.
        #[arg(long)]
        lclm: bool,
        /// Print the telescoper with leading coefficient 1.
        #[arg(long)]
        monic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decides (σ_y, σ_z)-summability.
    Summable {
        expr: String,
        #[arg(long)]
        factored_den: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Bivariate reduction to a remainder form.
    Reduce {
        expr: String,
        #[arg(long)]
        factored_den: Option<String>,
        #[arg(long, default_value = "normalized")]
        certificate: String,
        #[arg(long)]
        json: bool,
    },
    /// Checks that an operator is a telescoper.
    Verify {
        /// Telescope JSON output, a JSON list of coefficients, or one
        /// coefficient per line, lowest power of S_x first.
        #[arg(long)]
        operator: PathBuf,
        expr: String,
        #[arg(long)]
        factored_den: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Runs a variant on random instances of the benchmark family.
    Bench {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        xi: i64,
        #[arg(long)]
        zeta: i64,
        #[arg(long, default_value = "rct3")]
        variant: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Timed repetitions of the same instance.
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Parse { .. } | Error::InvalidFactorization(_) | Error::UncertifiedFactor(_) | Error::InvalidArgument(_) => EXIT_INPUT,
            Error::Precondition(_) | Error::MaxOrderExceeded(_) | Error::DivisionByZero => EXIT_INTERNAL,
        };
        Fail(code, e.to_string())
    }
}

fn input(expr: &str, factored: Option<&str>) -> Result<(RatFun, Factorization), Fail> {
    let f = parse_expression(expr)?;
    let den = match factored {
        Some(text) => parse_factored_den(text, f.den())?,
        None => factor(f.den()),
    };
    Ok((f, den))
}

fn mode(s: &str) -> Result<CertMode, Fail> {
    Ok(s.parse::<CertMode>()?)
}

fn cert_json(c: Option<&Cert>) -> Value {
    match c {
        Some(c) if c.mode.tracks() => json!({ "g": c.g.to_string(), "h": c.h.to_string() }),
        _ => Value::Null,
    }
}

fn op_strings(op: &OreOp, monic: bool) -> Vec<String> {
    if op.is_zero() {
        Vec::new()
    } else if monic {
        op.monic().coeffs.iter().map(ToString::to_string).collect()
    } else {
        op.coeff_strings()
    }
}

fn print_telescope(res: &TelescopeResult, monic: bool, as_json: bool, elapsed_ms: f64) {
    let coeffs = op_strings(&res.op, monic);
    if as_json {
        let v = json!({
            "status": res.status.as_str(),
            "order": res.order,
            "telescoper": { "coeffs": coeffs },
            "certificate": cert_json(res.cert.as_ref()),
            "stats": { "iterations": res.iterations, "elapsed_ms": elapsed_ms },
        });
        println!("{v}");
        return;
    }
    println!("status: {}", res.status.as_str());
    if res.status == Status::NoTelescoper {
        if let Some(rep) = &res.existence {
            for g in &rep.groups {
                match g.period {
                    None => println!("  {}: no x-period", g.d),
                    Some(p) => println!("  {}: x-period {:?}, b conditions {:?}", g.d, p, g.b_ok),
                }
            }
        }
        return;
    }
    println!("order: {}", res.order);
    for (i, c) in coeffs.iter().enumerate() {
        println!("  S^{i}: {c}");
    }
    if let Some(c) = res.cert.as_ref().filter(|c| c.mode.tracks()) {
        println!("g = {}", c.g);
        println!("h = {}", c.h);
    }
    println!("iterations: {}, {:.1} ms", res.iterations, elapsed_ms);
}

fn read_operator(path: &PathBuf) -> Result<OreOp, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    let strings: Vec<String> = match serde_json::from_str::<Value>(&text) {
        Ok(v) => {
            let list = v.pointer("/telescoper/coeffs").or_else(|| v.get("coeffs")).unwrap_or(&v);
            list.as_array()
                .ok_or_else(|| Fail(EXIT_INPUT, "operator JSON must hold a coefficient list".into()))?
                .iter()
                .map(|c| c.as_str().map(str::to_string).ok_or_else(|| Fail(EXIT_INPUT, "coefficients must be strings".into())))
                .collect::<Result<_, _>>()?
        }
        Err(_) => text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(str::to_string).collect(),
    };
    let mut coeffs = Vec::with_capacity(strings.len());
    for s in &strings {
        let c = parse_expression(s)?;
        if c.has_var(trisum::arith::Var::Y) || c.has_var(trisum::arith::Var::Z) {
            return Err(Fail(EXIT_INPUT, format!("coefficient {s} must depend on x only")));
        }
        coeffs.push(c);
    }
    let op = OreOp::new(coeffs);
    if op.is_zero() {
        return Err(Fail(EXIT_INPUT, "the operator is zero".into()));
    }
    Ok(op)
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Telescope { expr, factored_den, certificate, no_enhancements, lclm, monic, json } => {
            let (f, den) = input(&expr, factored_den.as_deref())?;
            let opts = CtOptions { mode: mode(&certificate)?, enhancements: !no_enhancements, max_order: None }.with_env();
            let start = Instant::now();
            let res = telescope(&f, &den, &opts, lclm)?;
            print_telescope(&res, monic, json, start.elapsed().as_secs_f64() * 1e3);
            Ok(if res.status == Status::NoTelescoper { EXIT_NO_TELESCOPER } else { 0 })
        }
        Cmd::Summable { expr, factored_den, json } => {
            let (f, den) = input(&expr, factored_den.as_deref())?;
            let mut res = bivariate_abramov(&f, &den, CertMode::Normalized)?;
            let summable = res.r.is_zero();
            res.cert.finish();
            if json {
                let cert = if summable { cert_json(Some(&res.cert)) } else { Value::Null };
                println!("{}", json!({ "summable": summable, "certificate": cert, "remainder": res.r.to_string() }));
            } else {
                println!("summable: {summable}");
                if summable {
                    println!("g = {}", res.cert.g);
                    println!("h = {}", res.cert.h);
                } else {
                    println!("remainder: {}", res.r);
                }
            }
            Ok(if summable { 0 } else { EXIT_NO_TELESCOPER })
        }
        Cmd::Reduce { expr, factored_den, certificate, json } => {
            let (f, den) = input(&expr, factored_den.as_deref())?;
            let mut res = bivariate_abramov(&f, &den, mode(&certificate)?)?;
            res.cert.finish();
            if json {
                let groups: Vec<Value> = res
                    .r
                    .groups
                    .iter()
                    .map(|g| {
                        json!({
                            "d": g.d.to_string(),
                            "integer_linear": g.lin.as_ref().map(|l| json!({ "alpha": l.alpha, "beta": l.beta })),
                            "terms": g.terms.iter().map(|t| json!({ "j": t.j, "a": t.a().to_string(), "b": t.b().to_string() })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!("{}", json!({ "remainder": res.r.to_string(), "groups": groups, "certificate": cert_json(Some(&res.cert)) }));
            } else {
                println!("remainder: {}", res.r);
                if res.cert.mode.tracks() {
                    println!("g = {}", res.cert.g);
                    println!("h = {}", res.cert.h);
                }
            }
            Ok(0)
        }
        Cmd::Verify { operator, expr, factored_den, json } => {
            let op = read_operator(&operator)?;
            let (f, den) = input(&expr, factored_den.as_deref())?;
            let ok = verify_telescoper(&op, &f, &den, None)?;
            if json {
                println!("{}", json!({ "telescoper": ok, "order": op.order() }));
            } else {
                println!("telescoper: {ok}");
            }
            Ok(if ok { 0 } else { EXIT_NO_TELESCOPER })
        }
        Cmd::Bench { m, n, xi, zeta, variant, seed, reps, json } => {
            let variant: Variant = variant.parse()?;
            let params = BenchParams { m, n, xi, zeta, seed };
            let inst = generate(&params)?;
            let max_order = CtOptions::default().with_env().max_order;
            let mut times = Vec::with_capacity(reps.max(1));
            let mut last = None;
            for _ in 0..reps.max(1) {
                let r = run_variant(&inst, variant, max_order)?;
                times.push(r.elapsed.as_secs_f64() * 1e3);
                last = Some(r.result);
            }
            let res = last.expect("at least one run");
            let mut sorted = times.clone();
            sorted.sort_by(f64::total_cmp);
            let median = sorted[sorted.len() / 2];
            if json {
                println!(
                    "{}",
                    json!({
                        "params": { "m": m, "n": n, "xi": xi, "zeta": zeta, "seed": seed },
                        "variant": variant.to_string(),
                        "status": res.status.as_str(),
                        "order": res.order,
                        "elapsed_ms": times,
                        "median_ms": median,
                        "rejected_draws": inst.rejected,
                    })
                );
            } else {
                println!("({m}, {n}, {xi}, {zeta}) seed {seed} {variant}: status {} order {} median {:.1} ms", res.status.as_str(), res.order, median);
            }
            Ok(if res.status == Status::NoTelescoper { EXIT_NO_TELESCOPER } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(Fail(code, msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
