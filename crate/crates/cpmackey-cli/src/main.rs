//! `cpmackey`: tables and verification reports as JSON on stdout.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails or a
//! computation errors, 2 on a usage error (bad flags or inputs outside a hypothesis).

use clap::{Parser, Subcommand};
use cpmackey::eicat::bo2_degree;
use cpmackey::free::{check_freeness, CellComplex};
use cpmackey::homalg::bo2_page;
use cpmackey::point::{grid_label, point_functor, type_at_dims, PointType};
use cpmackey::projspace::{mono_name, CPRing, Images, Mono};
use cpmackey::rog::{rog_len, ROGElement};
use cpmackey::verify::{self, degree_at_dims, expected_bo2_entry, run_suite, Suite, SuiteParams};
use cpmackey::{Error, GroundRing};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cpmackey", version, about = "Equivariant algebra for cyclic groups of prime order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Additive grid of H^alpha(S^0) over |m|, |n| <= range (m fixed, n total dimension).
    PointTable {
        #[arg(long)]
        p: i64,
        #[arg(long, default_value = "Z")]
        ring: GroundRing,
        #[arg(long)]
        range: i64,
        /// Print the ASCII grid instead of JSON.
        #[arg(long)]
        ascii: bool,
    },
    /// Check the freeness hypotheses on a cell complex read from a JSON file.
    Freeness {
        #[arg(long)]
        cells: std::path::PathBuf,
    },
    /// Cohomology of CP(U_C) over F_q.
    Cpv {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[command(subcommand)]
        table: CpvTable,
    },
    /// Cohomology of B_{C_p}O(2): generator list and fixed-point comparison.
    Bo2 {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// Largest |dims| of the degrees compared.
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
        /// A single degree `V+t` as comma-separated integers: the coefficients of V
        /// (trivial summand first, then lambda_1, ...) followed by t.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
    /// E_2 chart Ext^s_{Z[Z/2]}(Z, k[x]^t) with the sign action on x.
    ExtTable {
        #[arg(long, default_value = "Z")]
        ring: GroundRing,
        #[arg(long, default_value_t = 10)]
        smax: usize,
        #[arg(long, default_value_t = 10)]
        tmax: usize,
        #[arg(long)]
        ascii: bool,
    },
    /// Ring structure and collapse report for H^*(BO(2)).
    Bo2Nonequivariant {
        #[arg(long, default_value = "Z")]
        ring: GroundRing,
    },
    /// Run a named verification suite.
    Verify {
        /// One of mackey-table, point-ring, freeness, cpv, bo2, ext.
        suite: Suite,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long)]
        ring: Option<GroundRing>,
        #[arg(long)]
        max_degree: Option<i64>,
    },
}

#[derive(Subcommand)]
enum CpvTable {
    /// Products D_j C^n * D_k C^m with n + m <= max-degree, each checked against the image oracle.
    Products {
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
}

/// Command output: the report and whether every check passed.
struct Outcome {
    report: Value,
    pass: bool,
    text: Option<String>,
}

#[derive(Serialize)]
struct Report<'a> {
    command: Vec<String>,
    inputs: Value,
    results: &'a Value,
    notes: Vec<&'static str>,
    pass: bool,
}

fn usage(e: &Error) -> bool {
    matches!(e, Error::InvalidArgument(_) | Error::InvalidRing(_) | Error::Hypothesis(_) | Error::Unsupported(_))
}

fn point_table(p: i64, ring: GroundRing, range: i64, ascii: bool) -> cpmackey::Result<Outcome> {
    if !cpmackey::ring::is_prime(p) || range < 0 {
        return Err(Error::InvalidArgument("point-table needs a prime p and range >= 0".into()));
    }
    let grid = verify::point_grid(p, range);
    let mut mismatches = verify::point_grid_consistent(p, range);
    for m in -range..=range {
        for n in -range..=range {
            if type_at_dims(p, m, n) == PointType::NotARepresentation {
                continue;
            }
            let a = degree_at_dims(p, m, n)?;
            if !point_functor(ring, &a)?.is_valid() {
                mismatches.push(format!("({m},{n}): assembled functor fails validation"));
            }
        }
    }
    let width = grid.iter().flat_map(|(_, r)| r.iter().map(|l| l.len())).max().unwrap_or(1).max(3) + 1;
    let mut text = String::new();
    for (n, row) in &grid {
        text += &format!("{n:>4} |");
        for l in row {
            text += &format!("{l:>width$}");
        }
        text += "\n";
    }
    text += &format!("     +{}\n      ", "-".repeat(width * grid.len()));
    for m in -range..=range {
        text += &format!("{m:>width$}");
    }
    text += "\n";
    let report = json!({
        "columns": (-range..=range).collect::<Vec<_>>(),
        "rows": grid.iter().map(|(n, labels)| json!({"n": n, "labels": labels})).collect::<Vec<_>>(),
        "origin": grid_label(p, 0, 0),
        "mismatches": mismatches,
    });
    let pass = mismatches_empty(&report);
    Ok(Outcome { report, pass, text: ascii.then_some(text) })
}

fn mismatches_empty(v: &Value) -> bool {
    v["mismatches"].as_array().is_some_and(|a| a.is_empty())
}

fn freeness(path: &std::path::Path) -> cpmackey::Result<Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let cx: CellComplex =
        serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("bad cell complex JSON: {e}")))?;
    let res = check_freeness(&cx);
    let report = json!({
        "cells": cx.cells.len(),
        "free": res.is_ok(),
        "violation": res.as_ref().err().map(|v| json!({"bullet": v.bullet.to_string(), "detail": v.detail})),
    });
    Ok(Outcome { report, pass: res.is_ok(), text: None })
}

fn cpv_products(p: i64, q: i64, nmax: u32) -> cpmackey::Result<Outcome> {
    let ring = GroundRing::prime_field(q)?;
    let cp = CPRing::new(ring, p)?;
    let monos: Vec<Mono> = (0..=nmax).flat_map(|n| (0..p as u32).map(move |j| (j, n))).collect();
    let mut rows = Vec::new();
    let mut pass = true;
    for (i, &a) in monos.iter().enumerate() {
        for &b in &monos[i..] {
            if a.1 + b.1 > nmax {
                continue;
            }
            let (xy, info) = cp.solve_monomials(a, b)?;
            let oracle = Images::of(&xy)? == Images::of(&cp.monomial(a)?)?.multiply(&Images::of(&cp.monomial(b)?)?)?;
            let unique = info.rank == info.unknowns;
            pass &= oracle && unique;
            rows.push(json!({
                "lhs": format!("{} * {}", mono_name(a), mono_name(b)),
                "product": xy.to_string(),
                "unknowns": info.unknowns,
                "uniquely_solvable": unique,
                "images_agree": oracle,
            }));
        }
    }
    Ok(Outcome { report: json!({ "products": rows }), pass, text: None })
}

fn parse_degree(p: i64, s: &str) -> cpmackey::Result<ROGElement> {
    let nums: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad degree '{s}'"))))
        .collect::<cpmackey::Result<_>>()?;
    let (t, v) = nums.split_last().ok_or_else(|| Error::InvalidArgument("empty degree".into()))?;
    if v.len() != rog_len(p) {
        return Err(Error::InvalidArgument(format!("V needs {} coefficients for p = {p}", rog_len(p))));
    }
    let v = ROGElement::new(p, v.to_vec())?;
    if !v.is_honest() {
        return Err(Error::InvalidArgument(format!("V = {v} is not an actual representation")));
    }
    Ok(&v + &ROGElement::trivial(p, *t))
}

fn bo2(p: i64, q: i64, max_degree: i64, degree: Option<&str>) -> cpmackey::Result<Outcome> {
    if p == q {
        return Err(Error::Hypothesis("q must differ from p".into()));
    }
    match degree {
        Some(d) => {
            let alpha = parse_degree(p, d)?;
            let (rep, _) = bo2_degree(p, q, &alpha)?;
            let pass = rep.agrees;
            Ok(Outcome { report: serde_json::to_value(rep).expect("serializable"), pass, text: None })
        }
        None => {
            let rep = verify::bo2(p, q, max_degree)?;
            let detail = cpmackey::eicat::bo2_check(p, q, max_degree)?;
            let report = json!({
                "generators": cpmackey::projspace::bo2_generator_monomials(p).into_iter().map(mono_name).collect::<Vec<_>>(),
                "claims": rep.claims,
                "degrees": detail.degrees,
            });
            Ok(Outcome { report, pass: rep.pass, text: None })
        }
    }
}

fn ext_table(ring: GroundRing, smax: usize, tmax: usize, ascii: bool) -> cpmackey::Result<Outcome> {
    let (page, _) = bo2_page(ring, smax, tmax)?;
    let chart: Option<fn(usize, usize) -> Vec<i64>> = match ring {
        GroundRing::Integers => Some(expected_bo2_entry),
        GroundRing::PrimeField(q) if q != 2 => Some(|s, t| if s == 0 && t % 4 == 0 { vec![0] } else { vec![] }),
        _ => None,
    };
    let field = ring.is_field();
    let mut entries = Vec::new();
    let mut mismatches = Vec::new();
    for s in 0..=smax {
        for t in 0..=tmax {
            let m = page.get(s, t);
            let mut inv = m.invariants();
            if field {
                inv = inv.into_iter().map(|_| 0).collect();
            }
            if let Some(f) = chart {
                if inv != f(s, t) {
                    mismatches.push(format!("({s},{t})"));
                }
            }
            if !m.is_zero_module() {
                entries.push(json!({"s": s, "t": t, "module": m.describe()}));
            }
        }
    }
    let report = json!({
        "entries": entries,
        "compared_with_chart": chart.is_some(),
        "mismatches": mismatches,
    });
    let pass = mismatches_empty(&report);
    Ok(Outcome { report, pass, text: ascii.then(|| page.grid()) })
}

fn suite_outcome(rep: verify::SuiteReport) -> Outcome {
    let pass = rep.pass;
    Outcome { report: serde_json::to_value(rep).expect("serializable"), pass, text: None }
}

fn run(cmd: &Command) -> (Value, cpmackey::Result<Outcome>, Vec<&'static str>) {
    match cmd {
        Command::PointTable { p, ring, range, ascii } => (
            json!({"p": p, "ring": ring.to_string(), "range": range}),
            point_table(*p, *ring, *range, *ascii),
            vec!["additive structure of the cohomology of a point; columns m = |alpha^{C_p}|, rows n = |alpha|; '.' is zero, blank is not a representation"],
        ),
        Command::Freeness { cells } => (
            json!({"cells": cells.display().to_string()}),
            freeness(cells),
            vec!["freeness criterion for even cell complexes"],
        ),
        Command::Cpv { p, q, table: CpvTable::Products { max_degree } } => (
            json!({"p": p, "q": q, "max_degree": max_degree}),
            cpv_products(*p, *q, *max_degree),
            vec!["cohomology of CP(U_C) is free on D_j C^n; products solved through rho^* and ihat_N^*"],
        ),
        Command::Bo2 { p, q, max_degree, degree } => (
            json!({"p": p, "q": q, "max_degree": max_degree, "degree": degree}),
            bo2(*p, *q, *max_degree, degree.as_deref()),
            vec!["cohomology of B_{C_p}O(2) with F_q coefficients as the fixed subring of CP(U_C)"],
        ),
        Command::ExtTable { ring, smax, tmax, ascii } => (
            json!({"ring": ring.to_string(), "smax": smax, "tmax": tmax}),
            ext_table(*ring, *smax, *tmax, *ascii),
            vec!["E_2 of the Eilenberg spectral sequence for BSO(2) -> BO(2) -> BZ/2"],
        ),
        Command::Bo2Nonequivariant { ring } => (
            json!({"ring": ring.to_string()}),
            verify::ext(*ring).map(suite_outcome),
            vec!["cohomology of BO(2) from the Eilenberg spectral sequence"],
        ),
        Command::Verify { suite, p, q, ring, max_degree } => {
            let params = SuiteParams { p: *p, q: *q, ring: *ring, max_dim: *max_degree };
            (
                json!({"suite": suite.name(), "p": p, "q": q, "ring": ring.map(|r| r.to_string()), "max_degree": max_degree}),
                run_suite(*suite, &params).map(suite_outcome),
                vec!["each claim carries the tag of the result it instantiates"],
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (inputs, outcome, notes) = run(&cli.command);
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if usage(&e) { 2 } else { 1 });
        }
    };
    let text = if let Some(text) = outcome.text {
        text
    } else {
        let report = Report {
            command: std::env::args().skip(1).collect(),
            inputs,
            results: &outcome.report,
            notes,
            pass: outcome.pass,
        };
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    };
    // A closed pipe (e.g. `| head`) is not a failure of the computation.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
