//! Command line for exact ball enumeration, conjugacy growth series,
//! witness families, diagram computations, and growth model fitting.

mod dexpr;

use cgf_core::diagram::{
    diagram_conj_key, wreath_zz_witness, PClassBudget,
    Presentation,
};
use cgf_core::engine::{
    growth_series, word_length, EngineConfig, Group, GrowthSeries, Method,
};
use cgf_core::groups::britton::hnn_witness_classes;
use cgf_core::groups::permshift::lamp_witness;
use cgf_core::groups::GroupSpec;
use cgf_core::word::compositions;
use cgf_core::{Bs1n, BsMn, FreeGroup, Heisenberg, PermShift, ARTIFACT_VERSION};
use clap::{Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cgf",
    version,
    about = "Exact growth and conjugacy growth computations for finitely generated groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: CGF_THREADS env var, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on deduplicated elements per enumeration
    #[arg(long, global = true, default_value_t = 5_000_000)]
    cap: usize,
    /// Output file (default: stdout)
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Ball sizes |B(n)| as CSV rows n,value,kind
    Ball {
        /// Group selector: heisenberg | bs1n:<n> | bsmn:<m>:<n> | lamp-sinf | free:<rank>
        group: String,
        #[arg(long)]
        radius: u32,
    },
    /// Conjugacy growth series as CSV rows n,count,kind
    Cgf {
        group: String,
        #[arg(long)]
        radius: u32,
        /// invariant (exact, needs a complete invariant) or oracle (upper bound)
        #[arg(long, default_value = "invariant")]
        method: String,
        /// Conjugator radius for the oracle method
        #[arg(long, default_value_t = 4)]
        conj_radius: u32,
    },
    /// Witness family certificates (JSON)
    Witness {
        /// Family: wr-zz | lamp-sinf | bsmn:<m>:<n>
        family: String,
        /// Part sum for wr-zz (diagrams for all compositions of n)
        #[arg(long)]
        n: Option<u64>,
        /// Part-sum cap for lamp-sinf (even compositions)
        #[arg(long)]
        part_sum: Option<u64>,
        /// Letter-length cap for the bsmn cyclic-word family
        #[arg(long)]
        max_len: Option<u32>,
    },
    /// Evaluate a diagram expression over a presentation
    Diagram {
        /// Presentation: thompson-f | wreath-zz | path to a `u -> v` file
        #[arg(long)]
        presentation: String,
        /// Expression over cell(i), eps(word), inv(...), `*`, `+`
        #[arg(long)]
        expr: String,
    },
    /// Fit growth models to a CSV series (rows n,value[,kind])
    Fit {
        #[arg(long)]
        input: PathBuf,
        /// First tail index used for fitting (default: N/2)
        #[arg(long)]
        tail_start: Option<usize>,
        /// Also check g(n) <= C n^s over the window
        #[arg(long)]
        bound_exponent: Option<f64>,
        /// Window lo:hi for the bound check (default: tail)
        #[arg(long)]
        window: Option<String>,
    },
    /// Run the oracle-vs-invariant validation suite
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("CGF_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = EngineConfig {
        element_cap: cli.cap,
    };
    let result = pool.install(|| run(&cli.command, &cfg));
    match result {
        Ok(text) => {
            let out = if text.ends_with('\n') {
                text
            } else {
                format!("{text}\n")
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, out) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{out}"),
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::SelftestFailed(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
    SelftestFailed(String),
}

fn run(cmd: &Command, cfg: &EngineConfig) -> Result<String, CliError> {
    match cmd {
        Command::Ball { group, radius } => {
            let spec: GroupSpec = group.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let meta = format!("group={group} radius={radius} method=ball cap={}", cfg.element_cap);
            let series = dispatch_series(spec, *radius, Method::Ball, cfg)?;
            Ok(series_csv(&series, &meta))
        }
        Command::Cgf {
            group,
            radius,
            method,
            conj_radius,
        } => {
            let spec: GroupSpec = group.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let m = match method.as_str() {
                "invariant" => Method::Invariant,
                "oracle" => Method::Oracle {
                    conj_radius: *conj_radius,
                },
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown method {other:?}: use invariant or oracle"
                    )))
                }
            };
            let meta = format!(
                "group={group} radius={radius} method={method} conj_radius={} cap={}",
                conj_radius, cfg.element_cap
            );
            let series = dispatch_series(spec, *radius, m, cfg)?;
            Ok(series_csv(&series, &meta))
        }
        Command::Witness {
            family,
            n,
            part_sum,
            max_len,
        } => witness(family, *n, *part_sum, *max_len, cfg),
        Command::Diagram { presentation, expr } => diagram(presentation, expr),
        Command::Fit {
            input,
            tail_start,
            bound_exponent,
            window,
        } => fit(input, *tail_start, *bound_exponent, window.as_deref()),
        Command::Selftest { seed } => {
            let results = cgf_core::selftest::run_selftest(*seed, cfg);
            let mut report = String::new();
            let mut failed = 0;
            for r in &results {
                report.push_str(&format!(
                    "{} {}: {}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                ));
                if !r.passed {
                    failed += 1;
                }
            }
            report.push_str(&format!(
                "{} checks, {} failed (seed {seed})\n",
                results.len(),
                failed
            ));
            if failed > 0 {
                Err(CliError::SelftestFailed(report))
            } else {
                Ok(report)
            }
        }
    }
}

fn dispatch_series(
    spec: GroupSpec,
    radius: u32,
    method: Method,
    cfg: &EngineConfig,
) -> Result<GrowthSeries, CliError> {
    let run = |r: Result<GrowthSeries, cgf_core::EngineError>| {
        r.map_err(|e| CliError::Failed(e.to_string()))
    };
    match spec {
        GroupSpec::Heisenberg => run(growth_series(&Heisenberg::new(), radius, method, cfg)),
        GroupSpec::Bs1n(n) => run(growth_series(&Bs1n::new(n), radius, method, cfg)),
        GroupSpec::BsMn(m, n) => run(growth_series(&BsMn::new(m, n), radius, method, cfg)),
        GroupSpec::LampSinf => run(growth_series(&PermShift::new(), radius, method, cfg)),
        GroupSpec::Free(r) => run(growth_series(&FreeGroup::new(r), radius, method, cfg)),
    }
}

fn series_csv(series: &GrowthSeries, meta: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("# cgf v{ARTIFACT_VERSION}\n"));
    out.push_str(&format!("# {meta}\n"));
    if let Some(r) = series.truncated_after {
        out.push_str(&format!("# truncated=true last_completed_radius={r}\n"));
    }
    out.push_str("n,value,kind\n");
    let kind = series.kind.label();
    if series.values.len() == 1 {
        out.push_str(&format!("0,{},{kind}\n", series.values[0]));
    } else {
        for (n, v) in series.values.iter().enumerate().skip(1) {
            out.push_str(&format!("{n},{v},{kind}\n"));
        }
    }
    out
}

fn witness(
    family: &str,
    n: Option<u64>,
    part_sum: Option<u64>,
    max_len: Option<u32>,
    cfg: &EngineConfig,
) -> Result<String, CliError> {
    match family {
        "wr-zz" => {
            let n = n.ok_or_else(|| CliError::Usage("wr-zz needs --n".into()))?;
            if n == 0 || n > 20 {
                return Err(CliError::Usage("wr-zz: --n must be in 1..=20".into()));
            }
            let pres = Presentation::wreath_zz();
            let budget = PClassBudget::default();
            let mut certificates = Vec::new();
            let mut keys = std::collections::HashSet::new();
            let mut max_cells = 0usize;
            for parts in compositions(n).map_err(|e| CliError::Usage(e.to_string()))? {
                let w = wreath_zz_witness(&pres, &parts)
                    .map_err(|e| CliError::Failed(e.to_string()))?;
                let key = diagram_conj_key(&w, &budget)
                    .map_err(|e| CliError::Failed(e.to_string()))?;
                max_cells = max_cells.max(w.cells());
                let key_str = key.display_with(pres.alphabet());
                keys.insert(key);
                certificates.push(json!({
                    "parts": parts,
                    "cells": w.cells(),
                    "key": key_str,
                }));
            }
            let report = json!({
                "artifact": format!("cgf v{ARTIFACT_VERSION}"),
                "config": { "family": "wr-zz", "n": n, "cap": cfg.element_cap },
                "count": certificates.len(),
                "expected": 1u64 << (n - 1),
                "distinct_keys": keys.len(),
                "pairwise_distinct": keys.len() == certificates.len(),
                "max_cells": max_cells,
                "cell_bound_3n": 3 * n,
                "certificates": certificates,
            });
            Ok(serde_json::to_string_pretty(&report).unwrap())
        }
        "lamp-sinf" => {
            let cap = part_sum.ok_or_else(|| CliError::Usage("lamp-sinf needs --part-sum".into()))?;
            if cap == 0 || cap % 2 != 0 || cap > 24 {
                return Err(CliError::Usage(
                    "lamp-sinf: --part-sum must be even, in 2..=24".into(),
                ));
            }
            let g = PermShift::new();
            let mut certificates = Vec::new();
            let mut elements = std::collections::HashSet::new();
            for half in 1..=cap / 2 {
                for parts in compositions(half).map_err(|e| CliError::Usage(e.to_string()))? {
                    let doubled: Vec<u64> = parts.iter().map(|&p| 2 * p as u64).collect();
                    let w = lamp_witness(&g, &doubled)
                        .map_err(|e| CliError::Failed(e.to_string()))?;
                    let exact = word_length(&g, &w.element, w.word_letters as u32, cfg)
                        .map_err(|e| CliError::Failed(e.to_string()))?;
                    elements.insert(w.element.clone());
                    certificates.push(json!({
                        "parts": doubled,
                        "element": g.display(&w.element),
                        "word_letters": w.word_letters,
                        "classical_bound": w.classical_bound,
                        "exact_length": exact,
                        "in_window": g.in_support_window(&w.element),
                    }));
                }
            }
            let report = json!({
                "artifact": format!("cgf v{ARTIFACT_VERSION}"),
                "config": { "family": "lamp-sinf", "part_sum": cap, "cap": cfg.element_cap },
                "count": certificates.len(),
                "pairwise_distinct": elements.len() == certificates.len(),
                "certificates": certificates,
            });
            Ok(serde_json::to_string_pretty(&report).unwrap())
        }
        other if other.starts_with("bsmn:") => {
            let spec: GroupSpec = other.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let GroupSpec::BsMn(m, nn) = spec else {
                return Err(CliError::Usage("expected bsmn:<m>:<n>".into()));
            };
            let max_len =
                max_len.ok_or_else(|| CliError::Usage("bsmn family needs --max-len".into()))?;
            if max_len == 0 || max_len > 24 {
                return Err(CliError::Usage("bsmn: --max-len must be in 1..=24".into()));
            }
            let witnesses =
                hnn_witness_classes(m, nn, max_len).map_err(|e| CliError::Failed(e.to_string()))?;
            let counts = witnesses.cumulative_counts();
            let classes: Vec<String> = witnesses
                .all_classes()
                .map(|c| witnesses.alphabet.format_word(c.representative()))
                .collect();
            let report = json!({
                "artifact": format!("cgf v{ARTIFACT_VERSION}"),
                "config": { "family": other, "max_len": max_len, "cap": cfg.element_cap },
                "cumulative_counts": counts,
                "classes": classes,
            });
            Ok(serde_json::to_string_pretty(&report).unwrap())
        }
        other => Err(CliError::Usage(format!(
            "unknown witness family {other:?}: use wr-zz, lamp-sinf, or bsmn:<m>:<n>"
        ))),
    }
}

fn diagram(presentation: &str, expr: &str) -> Result<String, CliError> {
    let pres = match presentation {
        "thompson-f" => Presentation::thompson_f(),
        "wreath-zz" => Presentation::wreath_zz(),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            std::sync::Arc::new(
                Presentation::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?,
            )
        }
    };
    let d = dexpr::eval(&pres, expr).map_err(CliError::Usage)?;
    let reduced = d.reduce();
    let key = if reduced.is_spherical() {
        let k = diagram_conj_key(&reduced, &PClassBudget::default())
            .map_err(|e| CliError::Failed(e.to_string()))?;
        Some(k.display_with(pres.alphabet()))
    } else {
        None
    };
    let report = json!({
        "artifact": format!("cgf v{ARTIFACT_VERSION}"),
        "config": { "presentation": presentation, "expr": expr },
        "diagram": d.to_json(),
        "reduced": reduced.to_json(),
        "was_reduced": d == reduced,
        "spherical": reduced.is_spherical(),
        "conjugacy_key": key,
    });
    Ok(serde_json::to_string_pretty(&report).unwrap())
}

fn fit(
    input: &PathBuf,
    tail_start: Option<usize>,
    bound_exponent: Option<f64>,
    window: Option<&str>,
) -> Result<String, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
    let mut rows: Vec<(usize, u64)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('n') {
            continue;
        }
        let mut parts = line.split(',');
        let n: usize = parts
            .next()
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| CliError::Usage(format!("bad CSV row {line:?}")))?;
        let v: u64 = parts
            .next()
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| CliError::Usage(format!("bad CSV row {line:?}")))?;
        rows.push((n, v));
    }
    let max_n = rows
        .iter()
        .map(|&(n, _)| n)
        .max()
        .ok_or_else(|| CliError::Usage("no data rows in CSV".into()))?;
    let mut values = vec![0u64; max_n + 1];
    for (n, v) in rows {
        values[n] = v;
    }
    let tail = tail_start.unwrap_or((max_n / 2).max(2));
    let models = cgf_core::fit::fit_growth::<f64>(&values, tail)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let bound = match bound_exponent {
        Some(s) => {
            let (lo, hi) = match window {
                Some(w) => {
                    let (a, b) = w
                        .split_once(':')
                        .ok_or_else(|| CliError::Usage("window must be lo:hi".into()))?;
                    (
                        a.parse()
                            .map_err(|_| CliError::Usage("bad window lo".into()))?,
                        b.parse()
                            .map_err(|_| CliError::Usage("bad window hi".into()))?,
                    )
                }
                None => (tail, max_n),
            };
            Some(
                cgf_core::fit::bound_check::<f64>(&values, s, lo, hi)
                    .map_err(|e| CliError::Failed(e.to_string()))?,
            )
        }
        None => None,
    };
    let report = json!({
        "artifact": format!("cgf v{ARTIFACT_VERSION}"),
        "config": {
            "input": input.display().to_string(),
            "tail_start": tail,
            "bound_exponent": bound_exponent,
            "window": window,
        },
        "models": models,
        "bound": bound,
    });
    Ok(serde_json::to_string_pretty(&report).unwrap())
}
