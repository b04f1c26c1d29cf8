//! Command-line front end: evaluate Laguerre functions, run verification
//! suites, and emit exact coefficient tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data
//! error (e.g. a non-Hermitian input matrix).

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::process::ExitCode;

use hermlag::combinatorics::{enumerate_partitions, gen_binomial_row, pochhammer_cone, Partition};
use hermlag::error::HermlagError;
use hermlag::laguerre::{extract_raising, LagCtx};
use hermlag::polyalgebra::{HermCoords, HermMatrix, MultiPoly};
use hermlag::rational::{parse_rat, rat_to_string, GaussRat, Rat};
use hermlag::report::{fmt_f64, render_reports};
use hermlag::suites::{run_suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "hermlag", about = "Laguerre functions on Hermitian matrix cones: \
evaluation, exact recursion verification, coefficient tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Matrix rank n
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Parameter nu as "p/q" or an integer
    #[arg(long, default_value = "6")]
    nu: String,
    /// Largest partition weight on the grid
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    /// Output format: json, csv, or pretty
    #[arg(long, default_value = "json")]
    format: String,
    /// Quadrature order per coordinate
    #[arg(long, default_value_t = 24)]
    quad_order: usize,
    /// Seed for randomized property checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ell^nu_m at a Hermitian matrix read from a JSON file
    Eval {
        /// Partition m as comma-separated parts, e.g. "2,1"
        #[arg(long)]
        m: String,
        /// Path to {"n": int, "entries": [[re, im], ...]} (row-major)
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a verification suite: eigen, lower, raise, z, homo, rank1,
    /// ortho, gamma, intertwine, fidelity, or all
    Verify {
        suite: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit an exact coefficient table: binom, pochhammer, cmj, or lowering
    Table {
        kind: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn emit(text: &str, out: &Option<String>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("write {path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_partition(s: &str, n: usize) -> Result<Partition, String> {
    let parts: Result<Vec<u32>, _> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect();
    let parts = parts.map_err(|e| format!("bad partition '{s}': {e}"))?;
    Partition::new(&parts, n).map_err(|e| e.to_string())
}

fn parse_nu(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// Exact polynomial evaluation at rational coordinates.
fn eval_poly_exact(p: &MultiPoly, coords: &[Rat]) -> GaussRat {
    let mut total = GaussRat::zero();
    for (expo, c) in p.terms() {
        let mut term = c.clone();
        for (e, x) in expo.iter().zip(coords) {
            for _ in 0..*e {
                term = &term * &GaussRat::from_rat(x.clone());
            }
        }
        total += &term;
    }
    total
}

fn read_matrix(path: &str) -> Result<HermMatrix, (u8, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| (2u8, format!("read {path}: {e}")))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| (2, format!("parse {path}: {e}")))?;
    let n = v
        .get("n")
        .and_then(|x| x.as_u64())
        .ok_or((2, "matrix file: missing integer field 'n'".to_string()))? as usize;
    let entries = v
        .get("entries")
        .and_then(|x| x.as_array())
        .ok_or((2, "matrix file: missing array field 'entries'".to_string()))?;
    if entries.len() != n * n {
        return Err((2, format!("matrix file: expected {} entries", n * n)));
    }
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (idx, e) in entries.iter().enumerate() {
        let pair = e
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or((2, format!("entry {idx}: expected [re, im]")))?;
        let re = pair[0].as_f64().ok_or((2, format!("entry {idx}: bad re")))?;
        let im = pair[1].as_f64().ok_or((2, format!("entry {idx}: bad im")))?;
        m[(idx / n, idx % n)] = Complex64::new(re, im);
    }
    HermMatrix::new(m).map_err(|e| (3, e.to_string()))
}

fn cmd_eval(m_str: &str, matrix_path: &str, common: &CommonOpts) -> Result<String, (u8, String)> {
    let nu = parse_nu(&common.nu).map_err(|e| (2u8, e))?;
    let s = read_matrix(matrix_path)?;
    let n = s.n();
    let m = parse_partition(m_str, n).map_err(|e| (2, e))?;
    let mut ctx = LagCtx::new(n, nu.clone());
    let lf = ctx.laguerre(&m).map_err(|e| (2, e.to_string()))?;

    // exact body value: f64 entries are exact rationals
    let hc = HermCoords::new(n);
    let coords_f = hc.coords_of(&s);
    let coords: Vec<Rat> = coords_f
        .iter()
        .map(|&x| BigRational::from_float(x).unwrap_or_else(Rat::zero))
        .collect();
    let body = eval_poly_exact(&lf.body.p, &coords);
    let trace: Rat = coords[..n].iter().cloned().sum();
    let value = body.to_complex() * (-hermlag::rational::rat_to_f64(&trace)).exp();

    let doc = serde_json::json!({
        "m": m.stripped(),
        "nu": rat_to_string(&nu),
        "n": n,
        "body": body.to_string(),
        "trace": rat_to_string(&trace),
        "value_re": fmt_f64(value.re),
        "value_im": fmt_f64(value.im),
    });
    Ok(match common.format.as_str() {
        "pretty" => format!(
            "ell_{:?}(s) = ({}) * exp(-({})) = {} + {} i\n",
            m.stripped(),
            body,
            rat_to_string(&trace),
            fmt_f64(value.re),
            fmt_f64(value.im)
        ),
        "csv" => format!(
            "m,nu,n,body,trace,value_re,value_im\n\"{:?}\",{},{},{},{},{},{}\n",
            m.stripped(),
            rat_to_string(&nu),
            n,
            body,
            rat_to_string(&trace),
            fmt_f64(value.re),
            fmt_f64(value.im)
        ),
        _ => format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
    })
}

fn cmd_verify(suite: &str, common: &CommonOpts) -> Result<(String, bool), (u8, String)> {
    let nu = parse_nu(&common.nu).map_err(|e| (2u8, e))?;
    let mut cfg = SuiteConfig::new(common.n, nu);
    cfg.max_weight = common.max_weight;
    cfg.quad_order = common.quad_order;
    cfg.seed = common.seed;
    let reports = run_suite(suite, &cfg).map_err(|e| match e {
        HermlagError::Parse(msg) => (2u8, msg),
        other => (3u8, other.to_string()),
    })?;
    let header = serde_json::json!({
        "command": "verify",
        "suite": suite,
        "n": common.n,
        "nu": common.nu,
        "max_weight": common.max_weight,
        "quad_order": common.quad_order,
        "seed": common.seed,
    });
    let all_pass = reports.iter().all(|r| r.pass);
    Ok((render_reports(&reports, &header, &common.format), all_pass))
}

fn part_str(m: &Partition) -> String {
    m.stripped()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_table(kind: &str, common: &CommonOpts) -> Result<String, (u8, String)> {
    let nu = parse_nu(&common.nu).map_err(|e| (2u8, e))?;
    let n = common.n;
    let mut rows: Vec<(String, String, String)> = Vec::new();
    let (col1, col2) = match kind {
        "binom" => {
            for m in enumerate_partitions(n, common.max_weight) {
                let row = gen_binomial_row(&m, n).map_err(|e| (3u8, e.to_string()))?;
                for (k, c) in row {
                    rows.push((part_str(&m), part_str(&k), rat_to_string(&c)));
                }
            }
            ("m", "k")
        }
        "pochhammer" => {
            for m in enumerate_partitions(n, common.max_weight) {
                rows.push((
                    part_str(&m),
                    String::new(),
                    rat_to_string(&pochhammer_cone(&nu, &m)),
                ));
            }
            ("m", "")
        }
        "cmj" | "lowering" => {
            let mut ctx = LagCtx::new(n, nu.clone());
            for m in enumerate_partitions(n, common.max_weight) {
                let rep = if kind == "cmj" {
                    extract_raising(&mut ctx, &m)
                } else {
                    hermlag::laguerre::verify_lowering(&mut ctx, &m)
                };
                let rep = match rep {
                    Ok(r) => r,
                    Err(HermlagError::Domain(_)) => continue,
                    Err(e) => return Err((3, e.to_string())),
                };
                for (k, c) in rep.coefficients {
                    // j = the (1-based) row where k differs from m
                    let j = m
                        .parts()
                        .iter()
                        .zip(k.parts())
                        .position(|(a, b)| a != b)
                        .map(|i| i + 1)
                        .unwrap_or(0);
                    rows.push((part_str(&m), j.to_string(), rat_to_string(&c)));
                }
            }
            ("m", "j")
        }
        other => return Err((2, format!("unknown table kind: {other}"))),
    };

    Ok(match common.format.as_str() {
        "csv" | "pretty" => {
            let mut out = format!("{col1},{col2},coefficient\n");
            for (a, b, c) in &rows {
                out.push_str(&format!("\"{a}\",\"{b}\",{c}\n"));
            }
            out
        }
        _ => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(a, b, c)| {
                    serde_json::json!({ col1: a, col2: b, "coefficient": c })
                })
                .collect();
            let doc = serde_json::json!({
                "table": kind,
                "n": n,
                "nu": common.nu,
                "rows": items,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out_path) = match &cli.command {
        Command::Eval { m, matrix, common } => (
            cmd_eval(m, matrix, common).map(|t| (t, true)),
            common.out.clone(),
        ),
        Command::Verify { suite, common } => (cmd_verify(suite, common), common.out.clone()),
        Command::Table { kind, common } => (
            cmd_table(kind, common).map(|t| (t, true)),
            common.out.clone(),
        ),
    };
    match result {
        Ok((text, all_pass)) => {
            if let Err(e) = emit(&text, &out_path) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
