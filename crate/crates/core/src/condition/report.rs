//! Bound reports for a concrete polynomial system.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::gram::{gram_minor_bound, gram_symmetrized};
use super::kappa::{condition_numbers, SystemConditioning};
use super::norms::norm_sq_closed_form;
use super::search::{search_costs, SearchCosts};
use crate::error::{Error, Result};
use crate::macaulay::{build_boolean_macaulay, build_macaulay, DegreeKind, Flavor};
use crate::polysys::{Field, PolySystem};
use crate::reduce::{lift_f2_to_c, normalize_constants, Normalized};
use crate::rational::to_f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyticBound {
    pub name: &'static str,
    pub value: f64,
    /// Whether the bound's premise is met by this instance.
    pub applies: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    /// Minimum Hamming weight over the solutions.
    pub h: usize,
    /// Number of Boolean solutions.
    pub t: usize,
    pub d: u32,
    pub kind: DegreeKind,
    pub flavor: Flavor,
    pub rows: usize,
    pub cols: usize,
    pub conditioning: SystemConditioning,
    pub analytic_lower_bounds: Vec<AnalyticBound>,
    pub search: SearchCosts,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub flavor: Flavor,
    /// Degree; defaults to `n` (Boolean) or `3n` (plain, max degree).
    pub kind: Option<DegreeKind>,
    pub brute_force_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            flavor: Flavor::Boolean,
            kind: None,
            brute_force_cap: crate::polysys::DEFAULT_BRUTE_FORCE_CAP,
        }
    }
}

/// Lifts (F2 input), normalizes, builds the requested Macaulay system, and
/// compares its SVD-computed condition numbers with the analytic bounds.
pub fn analyze(sys: &PolySystem, opts: AnalyzeOptions) -> Result<BoundReport> {
    let c_sys = match sys.field() {
        Field::F2 => lift_f2_to_c(sys)?.system,
        Field::C => sys.clone(),
    };
    let norm = match normalize_constants(&c_sys)? {
        Normalized::System { system, .. } => system,
        Normalized::ZeroSolution => {
            return Err(Error::InvalidArgument(
                "no constant terms: the all-zero point is a solution and b = 0".into(),
            ))
        }
    };
    let n = norm.num_vars();
    let full = norm.with_field_equations()?;
    let sols = full.brute_force_solutions_capped(opts.brute_force_cap)?;
    let t = sols.len();
    let h = sols.iter().map(|a| a.weight()).min().unwrap_or(0);
    let ms = match opts.flavor {
        Flavor::Boolean => {
            let d = opts.kind.map_or(n as u32, |k| k.d());
            build_boolean_macaulay(&norm, d)?
        }
        Flavor::Plain => build_macaulay(&full, opts.kind.unwrap_or(DegreeKind::Max(3 * n as u32)))?,
    };
    let conditioning = condition_numbers(&ms)?;
    let kind = ms.kind;
    let d = kind.d();
    let tf = t.max(1) as f64;
    let mut bounds = Vec::new();
    match ms.flavor {
        Flavor::Boolean => {
            bounds.push(AnalyticBound {
                name: "boolean_hull",
                value: 0.5 * (((1u64 << h) - 1) as f64 / tf).sqrt(),
                applies: t >= 1 && d as usize == n,
            });
            if h >= 1 {
                let g = gram_symmetrized(n, DegreeKind::Max(1))?;
                bounds.push(AnalyticBound {
                    name: "gram_minor",
                    value: to_f64(&gram_minor_bound(&g, h)?).sqrt(),
                    applies: t >= 1 && d as usize == n && conditioning.sigma_max >= 1.0,
                });
            }
        }
        Flavor::Plain => {
            let v = norm_sq_closed_form(kind, h).to_f64().unwrap_or(f64::INFINITY);
            bounds.push(AnalyticBound {
                name: match kind {
                    DegreeKind::Max(_) => "theorem_max",
                    DegreeKind::Total(_) => "theorem_total",
                },
                value: (v / tf).sqrt(),
                applies: t == 1 || (t >= 1 && matches!(kind, DegreeKind::Max(dd) if dd as usize >= 3 * n)),
            });
            if h >= 1 && d as usize >= n {
                let g = gram_symmetrized(n, kind)?;
                let gb = gram_minor_bound(&g, h)?;
                bounds.push(AnalyticBound {
                    name: "gram_minor",
                    value: if gb.is_zero() { 0.0 } else { to_f64(&gb).sqrt() },
                    applies: t >= 1 && conditioning.sigma_max >= 1.0 && matches!(kind, DegreeKind::Max(dd) if dd as usize >= 3 * n),
                });
            }
        }
    }
    Ok(BoundReport {
        n,
        h,
        t,
        d,
        kind,
        flavor: ms.flavor,
        rows: ms.matrix.num_rows(),
        cols: ms.matrix.num_cols(),
        conditioning,
        analytic_lower_bounds: bounds,
        search: search_costs(n, h, Some(d))?,
    })
}

impl BoundReport {
    pub fn to_text(&self) -> String {
        let c = &self.conditioning;
        let mut s = String::new();
        s.push_str(&format!(
            "system: n = {}, solutions t = {}, min weight h = {}\n",
            self.n, self.t, self.h
        ));
        s.push_str(&format!(
            "matrix: {} Macaulay, {}, {} x {}, numerical rank {}\n",
            self.flavor, self.kind, self.rows, self.cols, c.rank
        ));
        s.push_str(&format!(
            "kappa = {:.6e}\nkappa_b = {:.6e}\n||M|| = {:.6e}\n||M^+ b|| = {:.6e}\n||b|| = {:.6e}\n",
            c.kappa, c.kappa_b, c.sigma_max, c.pinv_b_norm, c.b_norm
        ));
        for b in &self.analytic_lower_bounds {
            let verdict = if !b.applies {
                "premise not met"
            } else if c.kappa_b >= b.value * (1.0 - 1e-9) {
                "holds"
            } else {
                "VIOLATED"
            };
            s.push_str(&format!("lower bound {}: {:.6e} ({verdict})\n", b.name, b.value));
        }
        let sc = &self.search;
        s.push_str(&format!(
            "search: C(n,h) = {}, sum_(j<=h) C(n,j) = {}, grover sqrt C(n,h) = {:.3}\n",
            sc.binom, sc.cumulative, sc.grover
        ));
        s
    }

    pub const CSV_HEADER: &'static str =
        "n,t,h,flavor,kind,d,rows,cols,rank,kappa,kappa_b,sigma_max,pinv_b_norm,bound,bound_value,bound_applies,binom,cumulative,grover";

    /// One CSV line per analytic bound.
    pub fn csv_rows(&self) -> Vec<String> {
        let c = &self.conditioning;
        self.analytic_lower_bounds
            .iter()
            .map(|b| {
                format!(
                    "{},{},{},{},{},{},{},{},{},{:e},{:e},{:e},{:e},{},{:e},{},{},{},{:e}",
                    self.n,
                    self.t,
                    self.h,
                    self.flavor,
                    self.kind.name(),
                    self.d,
                    self.rows,
                    self.cols,
                    c.rank,
                    c.kappa,
                    c.kappa_b,
                    c.sigma_max,
                    c.pinv_b_norm,
                    b.name,
                    b.value,
                    b.applies,
                    self.search.binom,
                    self.search.cumulative,
                    self.search.grover
                )
            })
            .collect()
    }
}
