use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use fatpoints_cli::grid::{compute_grid, to_csv, to_svg, GridConfig};
use fatpoints_core::certify::{
    aprop_lower_bound, best_certified_t, certify_alpha_exceeds, mainthm_parameters,
    FailedCondition, TheoremStatus,
};
use fatpoints_core::conjecture::{conjectured_alpha, conjectured_hilbert, conjectured_resolution};
use fatpoints_core::oracle::{
    alpha_oracle, hilbert_oracle, verify_conjecture, OracleProblem, DEFAULT_PRIME,
};
use fatpoints_core::tuple::{genus, ReductionCurve};
use fatpoints_core::{choose2, Error};

#[derive(Debug, Parser)]
#[command(
    name = "fatpoints",
    version,
    about = "Initial degrees, Hilbert functions and resolutions of uniform fat points in P^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Best certified degree, closed-form lower bound and theorem coverage.
    Certify {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        /// Curve degree; defaults to s - 1 when n = s^2.
        #[arg(long)]
        d: Option<i64>,
        /// Points on the curve; defaults to s(s - 1) when n = s^2.
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Conjectured Hilbert function and Betti numbers.
    Conjecture {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        t: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert function (or initial degree) at random points over F_p.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, env = "FATPOINTS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Compare the oracle with the conjectured values; exit 1 on mismatch.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, env = "FATPOINTS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Dump the reduction sequence and both certification conditions.
    Trace {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        json: bool,
    },
    /// Coverage grid over n = s^2 and m as CSV (and SVG).
    Grid {
        /// Range of s, either `A..B` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range, default_value = "4..5")]
        s: (i64, i64),
        #[arg(long, default_value_t = 9)]
        m_max: i64,
        #[arg(long, env = "FATPOINTS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long)]
        with_oracle: bool,
        /// CSV output path; the SVG goes next to it unless --svg is given.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
        None => parse(s).map(|v| (v, v)),
    }
}

/// Usage and parameter errors; mapped to exit code 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl From<Error> for UsageError {
    fn from(err: Error) -> Self {
        UsageError(err.into())
    }
}

impl From<anyhow::Error> for UsageError {
    fn from(err: anyhow::Error) -> Self {
        UsageError(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(UsageError(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, UsageError> {
    match command {
        Command::Certify { n, m, d, r, json } => certify(n, m, d, r, json),
        Command::Conjecture { n, m, t, json } => conjecture(n, m, t, json),
        Command::Oracle {
            n,
            m,
            t,
            prime,
            seed,
            json,
        } => oracle(n, m, t, prime, seed, json),
        Command::Verify {
            n,
            m,
            prime,
            seed,
            json,
        } => verify(n, m, prime, seed, json),
        Command::Trace { n, m, t, d, r, json } => trace(n, m, t, d, r, json),
        Command::Grid {
            s,
            m_max,
            seed,
            prime,
            with_oracle,
            out,
            svg,
        } => grid(
            GridConfig {
                s_min: s.0,
                s_max: s.1,
                m_max,
                seed,
                prime,
                with_oracle,
            },
            out,
            svg,
        ),
    }
}

fn theorem_line(st: &TheoremStatus) -> String {
    match (st.applicable, st.s, st.x, st.k, st.predicted_alpha) {
        (true, Some(s), Some(x), Some(k), Some(alpha)) => {
            format!("theorem: applicable s={s} x={x} k={k} alpha={alpha}")
        }
        _ => "theorem: not applicable".to_string(),
    }
}

fn certify(n: i64, m: i64, d: Option<i64>, r: Option<i64>, json: bool) -> Result<ExitCode, UsageError> {
    let theorem = mainthm_parameters(n, m);
    let (d, r) = match (d, r) {
        (Some(d), Some(r)) => (d, r),
        _ => {
            let s = n.max(0).isqrt();
            if s * s != n || s < 2 {
                return Err(anyhow!(
                    "theorem not applicable (n = {n} is not a square); requires explicit --d/--r"
                )
                .into());
            }
            (d.unwrap_or(s - 1), r.unwrap_or(s * (s - 1)))
        }
    };
    let best = best_certified_t(n, m, d, r)?;
    let aprop = aprop_lower_bound(n, m, r, d);
    let validated = aprop.is_ok();

    if json {
        let line = json!({
            "command": "certify",
            "n": n, "m": m, "d": d, "r": r,
            "best_t": best,
            "alpha_lower_bound": best.map(|t| t + 1),
            "aprop": aprop.as_ref().ok(),
            "aprop_error": aprop.as_ref().err().map(ToString::to_string),
            "validated_regime": validated,
            "theorem": theorem,
        });
        println!("{line}");
        return Ok(ExitCode::SUCCESS);
    }

    println!("n={n} m={m} d={d} r={r}");
    match best {
        Some(t) => println!("best_t={t} (alpha >= {})", t + 1),
        None => println!("best_t=none"),
    }
    match &aprop {
        Ok(v) => println!("aprop={v}"),
        Err(e) => println!("aprop=n/a ({e})"),
    }
    if !validated {
        println!("regime: unvalidated parameter regime");
    }
    println!("{}", theorem_line(&theorem));
    Ok(ExitCode::SUCCESS)
}

fn conjecture(n: i64, m: i64, t: Option<i64>, json: bool) -> Result<ExitCode, UsageError> {
    let alpha = conjectured_alpha(n, m)?;
    let betti = conjectured_resolution(n, m)?;
    let degrees: Vec<i64> = match t {
        Some(t) => vec![t],
        None => (alpha - 1..=alpha + 1).collect(),
    };
    let values = degrees
        .iter()
        .map(|&t| Ok((t, conjectured_hilbert(n, m, t)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    if json {
        let line = json!({
            "command": "conjecture",
            "n": n, "m": m, "alpha": alpha,
            "hilbert": values.iter().map(|(t, h)| json!({"t": t, "h": h})).collect::<Vec<_>>(),
            "betti": betti,
        });
        println!("{line}");
    } else {
        println!("n={n} m={m} alpha={alpha}");
        for (t, h) in &values {
            println!("h({t})={h}");
        }
        println!(
            "betti: a={} b={} c={} d={}",
            betti.gens_alpha, betti.gens_alpha1, betti.syz_alpha1, betti.syz_alpha2
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(n: usize, m: u32, t: Option<u32>, prime: u64, seed: u64, json: bool) -> Result<ExitCode, UsageError> {
    match t {
        Some(t) => {
            let h = hilbert_oracle(&OracleProblem {
                n,
                m,
                t,
                prime,
                seed,
            })?;
            let count_bound = (choose2(i64::from(t) + 2) - n as i64 * choose2(i64::from(m) + 1)).max(0);
            if json {
                println!(
                    "{}",
                    json!({"command": "oracle", "n": n, "m": m, "t": t, "prime": prime,
                           "seed": seed, "h": h, "condition_count_bound": count_bound})
                );
            } else {
                println!("n={n} m={m} t={t} p={prime} seed={seed}");
                println!("h={h} (condition count gives >= {count_bound})");
            }
        }
        None => {
            let alpha = alpha_oracle(n, m, prime, seed)?;
            if json {
                println!(
                    "{}",
                    json!({"command": "oracle", "n": n, "m": m, "prime": prime,
                           "seed": seed, "alpha": alpha})
                );
            } else {
                println!("n={n} m={m} p={prime} seed={seed}");
                println!("alpha={alpha}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(n: usize, m: u32, prime: u64, seed: u64, json: bool) -> Result<ExitCode, UsageError> {
    if n < 10 {
        return Err(Error::BelowConjectureRange(n as i64).into());
    }
    let s = n.isqrt();
    let even_square = s * s == n && s.is_multiple_of(2);
    let v = verify_conjecture(n, m, prime, seed, even_square)?;
    if json {
        let mut value = serde_json::to_value(&v).context("serializing verification")?;
        value["command"] = json!("verify");
        println!("{value}");
    } else {
        let h: Vec<String> = v.hilbert.iter().map(|c| c.oracle.to_string()).collect();
        let mut line = format!(
            "{}; alpha={}, h=({})",
            if v.matched { "match" } else { "mismatch" },
            v.alpha_oracle,
            h.join(",")
        );
        if !v.generators.is_empty() {
            let g: Vec<String> = v.generators.iter().map(|c| c.oracle.to_string()).collect();
            line.push_str(&format!(", gens=({})", g.join(",")));
        }
        println!("{line}");
        let h: Vec<String> = v.hilbert.iter().map(|c| c.conjectured.to_string()).collect();
        let mut expected = format!("expected: alpha={}, h=({})", v.alpha_conjectured, h.join(","));
        if !v.generators.is_empty() {
            let g: Vec<String> = v.generators.iter().map(|c| c.expected.to_string()).collect();
            expected.push_str(&format!(", gens=({})", g.join(",")));
        }
        println!("{expected}");
        println!("p={} seed={} samples={}", v.prime, v.seed, v.attempts);
    }
    Ok(if v.matched {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn trace(n: i64, m: i64, t: i64, d: i64, r: i64, json: bool) -> Result<ExitCode, UsageError> {
    let out = certify_alpha_exceeds(n, m, t, d, r)?;
    if json {
        let mut value = serde_json::to_value(&out).context("serializing trace")?;
        value["command"] = json!("trace");
        println!("{value}");
        return Ok(ExitCode::SUCCESS);
    }
    let curve = ReductionCurve::new(n as usize, d, r as usize)?;
    let g = genus(d)?;
    println!("C = {}, g = {g}", curve.to_tuple());
    for (i, (step, dot)) in out.trace.steps.iter().zip(&out.trace.intersections).enumerate() {
        println!("i={i:<3} D={step}  D.C={dot}");
    }
    let omega_prime = out
        .trace
        .omega_prime
        .reached()
        .map_or_else(|| "not reached by omega".to_string(), |i| i.to_string());
    println!("omega={} omega'={omega_prime} mu={}", out.omega, out.mu);
    match out.failing_condition {
        Some(FailedCondition::IntersectionTooLarge { step, intersection }) => {
            println!(
                "condition (1): fails at i={step}: D_{step}.C = {intersection} > g-1 = {}",
                g - 1
            );
        }
        _ if out.omega >= 2 => {
            println!("condition (1): D_i.C <= g-1 = {} for 0 <= i < {}", g - 1, out.omega - 1);
        }
        _ => println!("condition (1): no steps to check"),
    }
    let (lhs, rhs) = out.final_step;
    if out.failing_condition.is_none() || matches!(out.failing_condition, Some(FailedCondition::FinalStepTooLarge { .. })) {
        let verdict = if lhs <= rhs { "holds" } else { "fails" };
        println!("condition (2): {lhs} <= {rhs} {verdict}");
    }
    if !out.validated_regime {
        println!("regime: unvalidated parameter regime");
    }
    if out.certified {
        println!("certified: alpha({n},{m}) > {t}");
    } else {
        println!("not certified");
    }
    Ok(ExitCode::SUCCESS)
}

fn grid(config: GridConfig, out: Option<PathBuf>, svg: Option<PathBuf>) -> Result<ExitCode, UsageError> {
    let cells = compute_grid(&config).map_err(|e| anyhow!("{e}"))?;
    let csv = to_csv(&cells);
    let Some(out) = out else {
        print!("{csv}");
        if let Some(svg) = svg {
            write_file(&svg, &to_svg(&cells, &config))?;
        }
        return Ok(ExitCode::SUCCESS);
    };
    write_file(&out, &csv)?;
    let svg = svg.unwrap_or_else(|| out.with_extension("svg"));
    write_file(&svg, &to_svg(&cells, &config))?;
    println!(
        "wrote {} cells to {} and {}",
        cells.len(),
        out.display(),
        svg.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    if path.as_os_str().is_empty() {
        bail!("empty output path");
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
