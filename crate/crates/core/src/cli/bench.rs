//! Lower bounds against search costs across `(n, h)`, with measured
//! `kappa_b` on planted unique-solution systems.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rayon::prelude::*;

use super::{Format, Outcome, RunConfig};
use crate::condition::{condition_numbers, gram_minor_bound, gram_symmetrized};
use crate::error::{Error, Result};
use crate::macaulay::{build_boolean_macaulay, DegreeKind};
use crate::polysys::random::planted_unique_c;
use crate::rational::{binomial, to_f64};
use crate::reduce::{normalize_constants, Normalized};
use crate::rng::{self, derive_seed};

struct Point {
    n: usize,
    h: usize,
    boolean_hull: f64,
    gram_boolean: f64,
    theorem_max: f64,
    gram_max: f64,
    kappa_b_min: f64,
    binom: f64,
    cumulative: f64,
    grover: f64,
    holds: bool,
}

fn gram_bound(n: usize, kind: DegreeKind, h: usize) -> f64 {
    gram_symmetrized(n, kind)
        .and_then(|g| gram_minor_bound(&g, h))
        .map(|v| to_f64(&v).max(0.0).sqrt())
        .unwrap_or(f64::NAN)
}

fn measured_kappa_b(n: usize, h: usize, planted: usize, seed: u64) -> Result<f64> {
    let mut best = f64::INFINITY;
    for i in 0..planted {
        let s = derive_seed(seed, i as u64);
        let mut r = rng::rng(s);
        let a = sample(&mut r, n, h).iter().fold(0u64, |acc, b| acc | 1 << b);
        let sys = planted_unique_c(n, a, 3, s)?;
        let Normalized::System { system, .. } = normalize_constants(&sys)? else {
            return Err(Error::InvalidArgument("planted point is nonzero".into()));
        };
        let ms = build_boolean_macaulay(&system, n as u32)?;
        best = best.min(condition_numbers(&ms)?.kappa_b);
    }
    Ok(best)
}

pub fn bench(config: &RunConfig, n_max: usize, h: Option<usize>, planted: usize) -> Result<Outcome> {
    let cap = config.svd_cap()?;
    if n_max == 0 || n_max > 20 || (1u128 << n_max) - 1 > cap {
        return Err(Error::CapacityExceeded {
            what: "bench Boolean Macaulay columns",
            requested: (1u128 << n_max.min(127)) - 1,
            cap,
        });
    }
    let points: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=n).map(move |hh| (n, hh)))
        .filter(|(_, hh)| h.map_or(true, |x| x == *hh))
        .collect();
    let seed = config.common.seed;
    let rows: Vec<Point> = points
        .par_iter()
        .map(|&(n, h)| {
            let boolean_hull = 0.5 * (((1u64 << h) - 1) as f64).sqrt();
            let kappa_b_min = if planted == 0 {
                f64::NAN
            } else {
                measured_kappa_b(n, h, planted, derive_seed(seed, ((n as u64) << 32) | h as u64))?
            };
            let c = binomial(n as u64, h as u64).to_f64().unwrap_or(f64::INFINITY);
            let cumulative: f64 = (0..=h).map(|j| binomial(n as u64, j as u64).to_f64().unwrap_or(f64::INFINITY)).sum();
            Ok(Point {
                n,
                h,
                boolean_hull,
                gram_boolean: gram_bound(n, DegreeKind::Max(1), h),
                theorem_max: (((3 * n + 1) as f64).powi(h as i32) - 1.0).sqrt(),
                gram_max: gram_bound(n, DegreeKind::Max(3 * n as u32), h),
                kappa_b_min,
                binom: c,
                cumulative,
                grover: c.sqrt(),
                holds: planted == 0 || kappa_b_min >= boolean_hull * (1.0 - 1e-6),
            })
        })
        .collect::<Result<_>>()?;

    let mut out = config.header("#");
    match config.common.format {
        Format::Text => {
            let _ = writeln!(
                out,
                "{:>3} {:>3} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>6}",
                "n", "h", "bool_hull", "gram_bool", "thm_max_3n", "gram_max_3n", "kappa_b_min", "C(n,h)", "sum_C(n,j)", "grover", "holds"
            );
            for p in &rows {
                let _ = writeln!(
                    out,
                    "{:>3} {:>3} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>6}",
                    p.n, p.h, p.boolean_hull, p.gram_boolean, p.theorem_max, p.gram_max, p.kappa_b_min, p.binom, p.cumulative, p.grover, p.holds
                );
            }
        }
        Format::Csv => {
            out.push_str("n,h,boolean_hull,gram_boolean,theorem_max_3n,gram_max_3n,kappa_b_min,binom,cumulative,grover,holds\n");
            for p in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}",
                    p.n, p.h, p.boolean_hull, p.gram_boolean, p.theorem_max, p.gram_max, p.kappa_b_min, p.binom, p.cumulative, p.grover, p.holds
                );
            }
        }
    }
    Ok(Outcome {
        body: out,
        verified: rows.iter().all(|p| p.holds),
    })
}
