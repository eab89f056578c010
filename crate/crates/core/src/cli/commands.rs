use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use serde_json::json;

use super::{BackendArg, DegreeArgs, Format, KindArg, Outcome, RunConfig, HARD_MAX_BOOLEAN_VARS};
use crate::condition::{analyze as analyze_system, certify_combined, certify_with, gram_symmetrized, AnalyzeOptions, BoundReport, GammaRule};
use crate::error::{Error, Result};
use crate::macaulay::{
    build_boolean_macaulay_with_cap, build_macaulay_with_cap, entry_col_oracle, entry_row_oracle, entry_value_oracle,
    plain_column_count, write_matrix, DegreeKind, Flavor, MacaulayDescriptor, RowLabel,
};
use crate::polysys::{load_system, write_system, Field, Monomial, PolySystem, DEFAULT_BRUTE_FORCE_CAP};
use crate::rational::to_f64;
use crate::reduce::{lift_f2_to_c, normalize_constants, vv_augment, LiftResult, Normalized};
use crate::rng::derive_seed;
use crate::sampler::{
    full_pipeline_with, subset_count, ExtractOptions, Extractor, PipelineOptions, StateBackend,
};

/// Largest `n` accepted by `lowerbound`.
pub const LOWERBOUND_MAX_N: usize = 400;

fn lifted(sys: &PolySystem) -> Result<(PolySystem, Option<LiftResult>)> {
    match sys.field() {
        Field::F2 => {
            let l = lift_f2_to_c(sys)?;
            Ok((l.system.clone(), Some(l)))
        }
        Field::C => Ok((sys.clone(), None)),
    }
}

fn check_columns(what: &'static str, cols: u128, cap: u128) -> Result<()> {
    if cols > cap {
        return Err(Error::CapacityExceeded {
            what,
            requested: cols,
            cap,
        });
    }
    Ok(())
}

fn check_boolean(n: usize, d: u32, cap: u128) -> Result<()> {
    if n > HARD_MAX_BOOLEAN_VARS {
        return Err(Error::CapacityExceeded {
            what: "Boolean Macaulay variables",
            requested: n as u128,
            cap: HARD_MAX_BOOLEAN_VARS as u128,
        });
    }
    let cols = subset_count(n, d as usize).to_u128().unwrap_or(u128::MAX);
    check_columns("Boolean Macaulay columns", cols, cap)
}

const COMMENT: &str = "#";

pub fn reduce(config: &RunConfig, input: &Path, hash_k: Option<usize>) -> Result<Outcome> {
    let sidecar: PathBuf = match &config.common.output {
        Some(out) => {
            let mut s = out.clone().into_os_string();
            s.push(".provenance.json");
            s.into()
        }
        None => {
            return Err(Error::InvalidArgument(
                "reduce needs --output (the provenance sidecar is written next to it)".into(),
            ))
        }
    };
    let sys = load_system(input)?;
    let original_vars = sys.num_vars();
    let (mut c_sys, lift) = lifted(&sys)?;
    let slack: Vec<_> = lift
        .iter()
        .flat_map(|l| l.var_map.slack.iter())
        .map(|s| json!({"poly": s.poly, "bit": s.bit, "var": s.var}))
        .collect();
    let mut hash = serde_json::Value::Null;
    if let Some(k) = hash_k {
        let seed = derive_seed(config.common.seed, 0);
        let att = vv_augment(&c_sys, original_vars, k, seed)?;
        let rows: Vec<_> = att
            .affine_rows
            .iter()
            .map(|r| {
                let vars: Vec<usize> = (0..64).filter(|i| (r.vars >> i) & 1 == 1).collect();
                json!({"vars": vars, "constant": r.constant})
            })
            .collect();
        hash = json!({"k": k, "seed": seed, "rows": rows, "slack_vars": att.combined.num_vars() - c_sys.num_vars()});
        c_sys = att.combined;
    }
    let (out, pivot) = match normalize_constants(&c_sys)? {
        Normalized::System { system, pivot } => (system, Some(pivot)),
        Normalized::ZeroSolution => (c_sys, None),
    };
    let provenance = json!({
        "tool": "boolmac",
        "version": super::VERSION,
        "config": config,
        "seed": config.common.seed,
        "input_field": sys.field().to_string(),
        "original_vars": original_vars,
        "num_vars": out.num_vars(),
        "num_eqs": out.len(),
        "slack": slack,
        "hash": hash,
        "pivot": pivot,
        "zero_solution": pivot.is_none(),
    });
    let text = serde_json::to_string_pretty(&provenance).expect("serializable") + "\n";
    std::fs::write(&sidecar, text).map_err(|source| Error::Io { path: sidecar, source })?;
    Ok(Outcome::ok(write_system(&out)))
}

pub fn build(config: &RunConfig, input: &Path, degree: &DegreeArgs) -> Result<Outcome> {
    let (c_sys, _) = lifted(&load_system(input)?)?;
    let n = c_sys.num_vars();
    let (flavor, kind) = degree.resolve(n)?;
    let cap = config.build_cap()?;
    let ms = match flavor {
        Flavor::Plain => build_macaulay_with_cap(&c_sys.with_field_equations()?, kind, cap)?,
        Flavor::Boolean => {
            check_boolean(n, kind.d(), cap)?;
            build_boolean_macaulay_with_cap(&c_sys, kind.d(), HARD_MAX_BOOLEAN_VARS)?
        }
    };
    let mut buf = Vec::new();
    write_matrix(&ms, &mut buf).expect("write to memory");
    let text = String::from_utf8(buf).expect("ascii");
    let (magic, rest) = text.split_once('\n').expect("header line");
    Ok(Outcome::ok(format!("{magic}\n{}{rest}", config.header("%"))))
}

fn parse_exps(s: &str, n: usize) -> Result<Monomial> {
    let e: Vec<u32> = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::parse("label", format!("bad exponent {x:?}"))))
            .collect::<Result<_>>()?
    };
    if e.len() != n {
        return Err(Error::parse("label", format!("expected {n} exponents, found {}", e.len())));
    }
    Ok(Monomial::new(e))
}

fn parse_row(s: &str, n: usize) -> Result<RowLabel> {
    let (p, e) = s
        .split_once(':')
        .ok_or_else(|| Error::parse("row", format!("expected POLY:EXPONENTS, got {s:?}")))?;
    Ok(RowLabel {
        poly_index: p.trim().parse().map_err(|_| Error::parse("row", format!("bad index {p:?}")))?,
        multiplier: parse_exps(e, n)?,
    })
}

fn exps(m: &Monomial) -> String {
    m.exps().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn oracle(
    config: &RunConfig,
    input: &Path,
    degree: &DegreeArgs,
    row: Option<&str>,
    col: Option<&str>,
    k: Option<usize>,
) -> Result<Outcome> {
    let (c_sys, _) = lifted(&load_system(input)?)?;
    let n = c_sys.num_vars();
    let (flavor, kind) = degree.resolve(n)?;
    let desc = match flavor {
        Flavor::Plain => MacaulayDescriptor::plain(c_sys.with_field_equations()?, kind),
        Flavor::Boolean => MacaulayDescriptor::boolean(&c_sys, kind.d()),
    };
    let mut out = config.header(COMMENT);
    let csv = config.common.format == Format::Csv;
    match (row, col, k) {
        (Some(r), None, Some(k)) => {
            let c = entry_col_oracle(&desc, &parse_row(r, n)?, k)?;
            if csv {
                out.push_str(&format!("query,row,k,col\ncol,\"{r}\",{k},\"{}\"\n", exps(&c)));
            } else {
                out.push_str(&format!("col {} {c}\n", exps(&c)));
            }
        }
        (Some(r), Some(c), None) => {
            let v = entry_value_oracle(&desc, &parse_row(r, n)?, &parse_exps(c, n)?)?;
            if csv {
                out.push_str(&format!("query,row,col,value\nvalue,\"{r}\",\"{c}\",{v}\n"));
            } else {
                out.push_str(&format!("value {v}\n"));
            }
        }
        (None, Some(c), Some(k)) => {
            let label = entry_row_oracle(&desc, &parse_exps(c, n)?, k)?;
            let text = format!("{}:{}", label.poly_index, exps(&label.multiplier));
            if csv {
                out.push_str(&format!("query,col,k,row\nrow,\"{c}\",{k},\"{text}\"\n"));
            } else {
                out.push_str(&format!("row {text} {label}\n"));
            }
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give --row with --k, --row with --col, or --col with --k".into(),
            ))
        }
    }
    Ok(Outcome::ok(out))
}

fn bounds_hold(r: &BoundReport) -> bool {
    r.analytic_lower_bounds
        .iter()
        .filter(|b| b.applies)
        .all(|b| r.conditioning.kappa_b >= b.value * (1.0 - 1e-9))
}

pub fn analyze(config: &RunConfig, input: &Path, degree: &DegreeArgs) -> Result<Outcome> {
    let (c_sys, _) = lifted(&load_system(input)?)?;
    let n = c_sys.num_vars();
    let (flavor, kind) = degree.resolve(n)?;
    let cap = config.svd_cap()?;
    match flavor {
        Flavor::Plain => check_columns("plain Macaulay columns", plain_column_count(n, kind), cap)?,
        Flavor::Boolean => check_boolean(n, kind.d(), cap)?,
    }
    let report = analyze_system(
        &c_sys,
        AnalyzeOptions {
            flavor,
            kind: Some(kind),
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
        },
    )?;
    let mut out = config.header(COMMENT);
    match config.common.format {
        Format::Text => out.push_str(&report.to_text()),
        Format::Csv => {
            out.push_str(BoundReport::CSV_HEADER);
            out.push('\n');
            for line in report.csv_rows() {
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    Ok(Outcome {
        body: out,
        verified: bounds_hold(&report),
    })
}

pub fn lowerbound(
    config: &RunConfig,
    n: usize,
    kind: KindArg,
    d: Option<u32>,
    rule: &str,
    combined: bool,
) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > LOWERBOUND_MAX_N {
        return Err(Error::CapacityExceeded {
            what: "lowerbound n",
            requested: n as u128,
            cap: LOWERBOUND_MAX_N as u128,
        });
    }
    let d = d.unwrap_or(3 * n as u32);
    let kind = match kind {
        KindArg::Max => DegreeKind::Max(d),
        KindArg::Total => DegreeKind::Total(d),
    };
    let rule = GammaRule::parse(rule)?;
    let g = gram_symmetrized(n, kind)?;
    let verdicts = certify_with(&g, |h| rule.gamma(h));
    let mut verified = verdicts.iter().all(|v| v.certified);
    let mut out = config.header(COMMENT);
    let min_pivot = |p: &[crate::rational::Q]| p.iter().map(to_f64).fold(f64::INFINITY, f64::min);
    match config.common.format {
        Format::Text => {
            let _ = writeln!(out, "Gram minors G^(h) - gamma(h) 11^T, n = {n}, {kind}");
            let _ = writeln!(out, "{:>4} {:>24} {:>10} {:>14}", "h", "gamma", "certified", "min pivot");
            for v in &verdicts {
                let _ = writeln!(
                    out,
                    "{:>4} {:>24.6e} {:>10} {:>14.6e}",
                    v.h,
                    to_f64(&v.gamma),
                    v.certified,
                    min_pivot(&v.pivots)
                );
            }
        }
        Format::Csv => {
            out.push_str("n,kind,d,h,gamma,certified,min_pivot\n");
            for v in &verdicts {
                let _ = writeln!(
                    out,
                    "{n},{},{d},{},{:e},{},{:e}",
                    kind.name(),
                    v.h,
                    to_f64(&v.gamma),
                    v.certified,
                    min_pivot(&v.pivots)
                );
            }
        }
    }
    if combined {
        if kind != DegreeKind::Max(3 * n as u32) {
            return Err(Error::InvalidArgument("--combined needs max degree 3n".into()));
        }
        let ok = certify_combined(n)?;
        verified &= ok;
        let _ = writeln!(out, "{} combined 2G - [min(i,j)^min(i,j)] positive definite: {ok}", COMMENT);
    }
    Ok(Outcome { body: out, verified })
}

fn mask_bits(n: usize, m: u64) -> String {
    (0..n).map(|i| if (m >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn extract(
    config: &RunConfig,
    input: &Path,
    d: Option<u32>,
    noise: f64,
    backend: BackendArg,
    trials: usize,
) -> Result<Outcome> {
    let sys = load_system(input)?;
    let eps = config.common.eps;
    let seed = config.common.seed;
    let mut out = config.header(COMMENT);
    let csv = config.common.format == Format::Csv;
    if sys.field() == Field::F2 {
        if noise != 0.0 {
            return Err(Error::InvalidArgument("noise applies to C inputs only".into()));
        }
        let opts = PipelineOptions {
            d,
            lsq_max_vars: match backend {
                BackendArg::Auto => PipelineOptions::default().lsq_max_vars,
                BackendArg::LeastSquares => HARD_MAX_BOOLEAN_VARS,
                BackendArg::SolutionSet => 0,
            },
            ..Default::default()
        };
        let res = full_pipeline_with(&sys, eps, seed, &opts)?;
        if csv {
            out.push_str("attempt,k,trial,seed,num_vars,solutions,rounds,status\n");
        }
        for (i, a) in res.log.iter().enumerate() {
            let status = serde_json::to_value(a.status).expect("serializable");
            let status = status.as_str().unwrap_or_default();
            if csv {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{status}",
                    i + 1,
                    a.k,
                    a.trial,
                    a.seed,
                    a.num_vars,
                    a.solutions,
                    a.rounds
                );
            } else {
                let _ = writeln!(
                    out,
                    "attempt {} k {} trial {} vars {} solutions {} rounds {} {status}",
                    i + 1,
                    a.k,
                    a.trial,
                    a.num_vars,
                    a.solutions,
                    a.rounds
                );
            }
        }
        let prefix = if csv { "# " } else { "" };
        let _ = writeln!(
            out,
            "{prefix}attempts {} of {} total rounds {}",
            res.attempts,
            res.schedule_len,
            res.total_rounds
        );
        let _ = match &res.solution {
            Some(a) => writeln!(out, "{prefix}assignment {a} verified true"),
            None => writeln!(out, "{prefix}no verified assignment"),
        };
        return Ok(Outcome {
            body: out,
            verified: res.solution.is_some(),
        });
    }

    let full = sys.with_field_equations()?;
    let n = full.num_vars();
    let backend = match backend {
        BackendArg::Auto => None,
        BackendArg::LeastSquares => Some(StateBackend::LeastSquares),
        BackendArg::SolutionSet => Some(StateBackend::SolutionSet),
    };
    let opts = |d: Option<u32>| ExtractOptions {
        d,
        noise,
        backend,
        ..Default::default()
    };
    if csv {
        out.push_str("d,required_rounds,support,mean_rounds_to_cover,max_rounds_to_cover,success_rate\n");
        for dd in 1..=n as u32 {
            let e = match Extractor::new(&full, eps, &opts(Some(dd))) {
                Ok(e) => e,
                Err(Error::NonUnique { rank, cols }) => {
                    let _ = writeln!(out, "{dd},,,,,{} rank deficient {rank}/{cols}", COMMENT);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let r = e.rounds();
            let long = e.clone().with_rounds(r.max(1) * 20);
            let mut successes = 0usize;
            let mut cover = Vec::with_capacity(trials);
            for t in 0..trials {
                let s = derive_seed(seed, ((dd as u64) << 32) | t as u64);
                if e.run(s)?.0.success {
                    successes += 1;
                }
                let (trace, _) = long.run(s)?;
                let hit = trace.rounds.iter().position(|x| x.recovered == trace.target);
                cover.push(hit.map_or(trace.r, |i| i + 1));
            }
            let mean = cover.iter().sum::<usize>() as f64 / trials.max(1) as f64;
            let _ = writeln!(
                out,
                "{dd},{r},{},{mean:.3},{},{:.4}",
                e.target().count_ones(),
                cover.iter().max().copied().unwrap_or(0),
                successes as f64 / trials.max(1) as f64
            );
        }
        return Ok(Outcome::ok(out));
    }
    let e = Extractor::new(&full, eps, &opts(d))?;
    let (trace, a) = e.run(seed)?;
    let ok = full.is_solution(&a)?;
    let backend_name = match e.backend() {
        Some(StateBackend::LeastSquares) => "least-squares",
        Some(StateBackend::SolutionSet) => "solution-set",
        None => "zero",
    };
    let _ = writeln!(out, "backend {backend_name} vars {n} d {} eps {eps} noise {noise}", trace.d);
    let _ = writeln!(out, "{trace}");
    let _ = writeln!(out, "assignment {} {a} verified {ok}", mask_bits(n, a.mask()));
    Ok(Outcome { body: out, verified: ok })
}
