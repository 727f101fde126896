//! `varregion` command-line front end. Every command prints one JSON document
//! on stdout; diagnostics go to stderr. Exit codes: 0 success, 1 invalid input,
//! 2 numerical failure, 3 verification failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use varregion::dieudonne::ParameterChain;
use varregion::{
    classify, dieudonne_disk, disk_nth, extremal_h_series, extremal_series, gamma_from_w,
    hyperbolic_derivatives, run_roundtrips, w_from_gamma, BlaschkeProduct, DieudonneData, Error,
    ExtremalSpec, HyperbolicData, Tail, TrialConfig,
};

const SEED_ENV: &str = "VARREGION_SEED";

#[derive(Parser)]
#[command(
    name = "varregion",
    version,
    about = "Variability disks of n-th derivatives of self-maps of the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Disk of f^(n)(z0) given f(z0) = γ0 and H^k f(z0) = γk, k < n.
    Disk {
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        /// γ0, …, γ_{n−1}
        #[arg(long, allow_hyphen_values = true)]
        gammas: String,
        #[arg(long)]
        n: usize,
    },
    /// Disk of h^(n)(z0) for self-maps with h(0) = 0, h(z0) = w0.
    Dieudonne {
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        #[arg(long, allow_hyphen_values = true)]
        w0: String,
        /// γ1, …, γ_{n−1}
        #[arg(long, allow_hyphen_values = true, conflicts_with = "ws")]
        gammas: Option<String>,
        /// h'(z0), …, h^(n−1)(z0)
        #[arg(long, allow_hyphen_values = true)]
        ws: Option<String>,
        #[arg(long)]
        n: usize,
    },
    /// Taylor series at z0 of an extremal function.
    Extremal {
        #[arg(long, value_enum, default_value_t = Kind::F)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        /// required for --kind h
        #[arg(long, allow_hyphen_values = true)]
        w0: Option<String>,
        /// γ0, …, γ_{n−1} for f; γ1, …, γ_{n−1} for h
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        gammas: String,
        /// constant tail ε
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["tail_theta", "tail_zeros"])]
        eps: Option<String>,
        /// rotation of a Blaschke tail
        #[arg(long, allow_hyphen_values = true)]
        tail_theta: Option<f64>,
        /// zeros of a Blaschke tail
        #[arg(long, allow_hyphen_values = true)]
        tail_zeros: Option<String>,
        /// truncation order, default n + 2
        #[arg(long)]
        order: Option<usize>,
    },
    /// Value and hyperbolic derivatives of a finite Blaschke product at z0.
    Hyperbolic {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        zeros: String,
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        #[arg(long)]
        n: usize,
    },
    /// Seeded brute-force verification of every closed form.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    F,
    H,
}

/// A failed command: exit code plus the JSON error object.
#[derive(Debug)]
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_numerical() { 2 } else { 1 },
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

fn invalid(kind: &str, message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        kind: kind.to_string(),
        message: message.into(),
    }
}

type Outcome = Result<(Value, u8), Failure>;

/// Parses `a+bi`, `a-bi`, `bi`, `a`, or `[re,im]`.
fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || invalid("parse", format!("cannot parse complex number {text:?}"));
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(bad)
    };
    let signed_unit = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(t),
    };
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(bad());
        }
        return Ok(Complex64::new(num(parts[0])?, num(parts[1])?));
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex64::new(num(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, signed_unit(&body[k..])?)),
        None => Ok(Complex64::new(0.0, signed_unit(body)?)),
    }
}

/// Comma-separated complex numbers; commas inside `[…]` do not split.
fn parse_list(text: &str) -> Result<Vec<Complex64>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (k, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&text[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    items.push(&text[start..]);
    items.into_iter().map(parse_complex).collect()
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize")
}

fn expect_len(what: &str, list: &[Complex64], len: usize) -> Result<(), Failure> {
    if list.len() == len {
        Ok(())
    } else {
        Err(invalid(
            "precondition",
            format!("{what} needs {len} entries, got {}", list.len()),
        ))
    }
}

fn disk(z0: &str, gammas: &str, n: usize) -> Outcome {
    if n == 0 {
        return Err(invalid("precondition", "n must be at least 1"));
    }
    let gammas = parse_list(gammas)?;
    expect_len("--gammas (γ0, …, γ_{n−1})", &gammas, n)?;
    let data = HyperbolicData::new(parse_complex(z0)?, gammas)?;
    let branch = classify(&data)?;
    let d = disk_nth(&data)?;
    Ok((
        json!({ "center": d.center, "radius": d.radius, "branch": branch.to_string() }),
        0,
    ))
}

fn dieudonne(z0: &str, w0: &str, gammas: Option<&str>, ws: Option<&str>, n: usize) -> Outcome {
    if n == 0 {
        return Err(invalid("precondition", "n must be at least 1"));
    }
    let (z0, w0) = (parse_complex(z0)?, parse_complex(w0)?);
    let (data, gamma_chain, w_chain): (DieudonneData, ParameterChain, ParameterChain) =
        match (gammas, ws) {
            (_, Some(ws)) => {
                let ws = parse_list(ws)?;
                expect_len("--ws (h'(z0), …, h^(n−1)(z0))", &ws, n - 1)?;
                let chain = gamma_from_w(z0, w0, &ws)?;
                let data = DieudonneData::new(z0, w0, chain.values.clone())?;
                let w_chain = ParameterChain {
                    values: ws,
                    degenerate_at: chain.degenerate_at,
                };
                (data, chain, w_chain)
            }
            (gammas, None) => {
                let gammas = parse_list(gammas.unwrap_or(""))?;
                expect_len("--gammas (γ1, …, γ_{n−1})", &gammas, n - 1)?;
                let data = DieudonneData::new(z0, w0, gammas.clone())?;
                let w_chain = w_from_gamma(&data)?;
                let chain = ParameterChain {
                    values: gammas,
                    degenerate_at: w_chain.degenerate_at,
                };
                (data, chain, w_chain)
            }
        };
    let branch = classify(&data.hyperbolic()?)?;
    let d = dieudonne_disk(&data)?;
    Ok((
        json!({
            "center": d.center,
            "radius": d.radius,
            "branch": branch.to_string(),
            "gammas": gamma_chain.values,
            "ws": w_chain.values,
            "degenerate_at": gamma_chain.degenerate_at,
        }),
        0,
    ))
}

struct ExtremalArgs<'a> {
    kind: Kind,
    z0: &'a str,
    w0: Option<&'a str>,
    gammas: &'a str,
    eps: Option<&'a str>,
    tail_theta: Option<f64>,
    tail_zeros: Option<&'a str>,
    order: Option<usize>,
}

fn extremal(args: ExtremalArgs) -> Outcome {
    let z0 = parse_complex(args.z0)?;
    let gammas = parse_list(args.gammas)?;
    let tail = match (args.eps, args.tail_theta, args.tail_zeros) {
        (Some(eps), _, _) => Tail::constant(parse_complex(eps)?)?,
        (None, None, None) => return Err(invalid("precondition", "give --eps or a Blaschke tail")),
        (None, theta, zeros) => Tail::Blaschke(BlaschkeProduct::new(
            theta.unwrap_or(0.0),
            parse_list(zeros.unwrap_or(""))?,
        )?),
    };
    let series = match args.kind {
        Kind::F => {
            if gammas.is_empty() {
                return Err(invalid("precondition", "--gammas needs at least γ0"));
            }
            let order = args.order.unwrap_or(gammas.len() + 2);
            extremal_series(
                &ExtremalSpec::new(HyperbolicData::new(z0, gammas)?, tail),
                order,
            )?
        }
        Kind::H => {
            let w0 = args
                .w0
                .ok_or_else(|| invalid("precondition", "--kind h needs --w0"))?;
            let data = DieudonneData::new(z0, parse_complex(w0)?, gammas)?;
            extremal_h_series(&data, &tail, args.order.unwrap_or(data.n() + 2))?
        }
    };
    Ok((to_json(&series), 0))
}

fn hyperbolic(theta: f64, zeros: &str, z0: &str, n: usize) -> Outcome {
    if n == 0 {
        return Err(invalid("precondition", "n must be at least 1"));
    }
    let b = BlaschkeProduct::new(theta, parse_list(zeros)?)?;
    let z0 = parse_complex(z0)?;
    let series = Tail::Blaschke(b).series(z0, n + 2)?;
    let params = hyperbolic_derivatives(&series, n)?;
    Ok((
        json!({ "value": series.value(), "gammas": params.gammas, "degenerate_at": params.degenerate_at }),
        0,
    ))
}

fn verify(seed: u64, trials: usize, n_max: usize) -> Outcome {
    let seed = match std::env::var(SEED_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| invalid("parse", format!("{SEED_ENV}={text:?} is not a u64")))?,
        Err(_) => seed,
    };
    let config = TrialConfig {
        seed,
        trials,
        n_max,
        ..TrialConfig::default()
    };
    let report = run_roundtrips(&config)?;
    for (name, suite) in &report.suites {
        if !suite.pass {
            eprintln!("suite {name} failed: worst error {}", suite.worst_error);
        }
    }
    let code = if report.pass { 0 } else { 3 };
    Ok((to_json(&report), code))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Disk { z0, gammas, n } => disk(&z0, &gammas, n),
        Command::Dieudonne {
            z0,
            w0,
            gammas,
            ws,
            n,
        } => dieudonne(&z0, &w0, gammas.as_deref(), ws.as_deref(), n),
        Command::Extremal {
            kind,
            z0,
            w0,
            gammas,
            eps,
            tail_theta,
            tail_zeros,
            order,
        } => extremal(ExtremalArgs {
            kind,
            z0: &z0,
            w0: w0.as_deref(),
            gammas: &gammas,
            eps: eps.as_deref(),
            tail_theta,
            tail_zeros: tail_zeros.as_deref(),
            order,
        }),
        Command::Hyperbolic {
            theta,
            zeros,
            z0,
            n,
        } => hyperbolic(theta, &zeros, &z0, n),
        Command::Verify {
            seed,
            trials,
            n_max,
        } => verify(seed, trials, n_max),
    }
}

fn main() -> ExitCode {
    let outcome = match Cli::try_parse() {
        Ok(cli) => dispatch(cli.command),
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => Err(invalid("usage", e.to_string().trim_end())),
    };
    match outcome {
        Ok((value, code)) => {
            println!("{value}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            println!(
                "{}",
                json!({ "error": { "kind": f.kind, "message": f.message } })
            );
            ExitCode::from(f.code)
        }
    }
}
