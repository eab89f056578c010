//! End-to-end extraction: lift, isolate with random affine hashes, sample,
//! verify over F2.

use serde::Serialize;

use super::extract::{ExtractOptions, Extractor, StateBackend};
use crate::error::{Error, Result};
use crate::polysys::{Assignment, Field, PolySystem, DEFAULT_BRUTE_FORCE_CAP};
use crate::reduce::{isolation_schedule, lift_f2_to_c, vv_augment, IsolationAttempt, LiftResult};
use crate::rng::derive_seed;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOptions {
    /// Boolean Macaulay degree per attempt; defaults to the attempt's
    /// variable count.
    pub d: Option<u32>,
    /// Attempts with at most this many variables materialize the Boolean
    /// Macaulay system; larger ones use the solution-set state.
    pub lsq_max_vars: usize,
    /// Cap on brute-force enumeration of the input's solutions.
    pub brute_force_cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            d: None,
            lsq_max_vars: 8,
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttemptStatus {
    Inconsistent,
    NonUnique,
    Rejected,
    Verified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttemptLog {
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    pub num_vars: usize,
    /// Solutions of the hashed system.
    pub solutions: usize,
    pub rounds: usize,
    pub status: AttemptStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub solution: Option<Assignment>,
    pub attempts: usize,
    pub total_rounds: usize,
    pub schedule_len: usize,
    pub log: Vec<AttemptLog>,
}

/// 0/1 solutions of the hashed system, from the lifted base solutions.
fn hashed_solutions(base_solutions: &[Assignment], lift: &LiftResult, att: &IsolationAttempt) -> Result<Vec<u64>> {
    let n = lift.var_map.original_vars;
    let base = lift.num_vars;
    let mut out = Vec::new();
    for a in base_solutions {
        let x = a.mask() & ((1u64 << n) - 1);
        if !att.affine_rows.iter().all(|r| r.satisfied_by(x)) {
            continue;
        }
        let hashed = att.lifted.lift_assignment(&Assignment::from_mask(n, x))?.mask();
        out.push(a.mask() | (hashed >> n) << base);
    }
    Ok(out)
}

/// Runs the isolation schedule on an F2 system and returns the first
/// sampled assignment that verifies mod 2.
pub fn full_pipeline(sys_f2: &PolySystem, eps: f64, seed: u64) -> Result<PipelineOutcome> {
    full_pipeline_with(sys_f2, eps, seed, &PipelineOptions::default())
}

pub fn full_pipeline_with(sys_f2: &PolySystem, eps: f64, seed: u64, opts: &PipelineOptions) -> Result<PipelineOutcome> {
    if sys_f2.field() != Field::F2 {
        return Err(Error::FieldMismatch {
            expected: Field::F2,
            found: sys_f2.field(),
        });
    }
    let n = sys_f2.num_vars();
    let schedule = isolation_schedule(n, eps)?;
    let schedule_len = schedule.iter().map(|(_, t)| t).sum();
    if n == 0 {
        let empty = Assignment::zeros(0);
        let ok = sys_f2.is_solution(&empty)?;
        return Ok(PipelineOutcome {
            solution: ok.then_some(empty),
            attempts: 0,
            total_rounds: 0,
            schedule_len,
            log: Vec::new(),
        });
    }
    let lift = lift_f2_to_c(sys_f2)?;
    let base_solutions: Vec<Assignment> = sys_f2
        .brute_force_solutions_capped(opts.brute_force_cap)?
        .iter()
        .map(|s| lift.lift_assignment(s))
        .collect::<Result<_>>()?;

    let mut log = Vec::new();
    let mut total_rounds = 0;
    let mut index = 0u64;
    for (k, trials) in schedule {
        for trial in 0..trials {
            let attempt_seed = derive_seed(seed, index);
            index += 1;
            let att = vv_augment(&lift.system, n, k, attempt_seed)?;
            let num_vars = att.combined.num_vars();
            let solutions = hashed_solutions(&base_solutions, &lift, &att)?;
            let mut entry = AttemptLog {
                k,
                trial,
                seed: attempt_seed,
                num_vars,
                solutions: solutions.len(),
                rounds: 0,
                status: AttemptStatus::Inconsistent,
            };
            let extractor = if num_vars <= opts.lsq_max_vars {
                let eo = ExtractOptions {
                    d: opts.d,
                    backend: Some(StateBackend::LeastSquares),
                    ..Default::default()
                };
                Extractor::new(&att.combined, eps, &eo)
            } else {
                Extractor::from_solution_set(num_vars, &solutions, opts.d, eps)
            };
            let extractor = match extractor {
                Ok(e) => e,
                Err(Error::Inconsistent) => {
                    log.push(entry);
                    continue;
                }
                Err(Error::NonUnique { .. }) => {
                    entry.status = AttemptStatus::NonUnique;
                    log.push(entry);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let (trace, full) = extractor.run(derive_seed(attempt_seed, u64::MAX))?;
            total_rounds += trace.r;
            entry.rounds = trace.r;
            let candidate = full.truncated(n);
            if sys_f2.is_solution(&candidate)? {
                entry.status = AttemptStatus::Verified;
                log.push(entry);
                return Ok(PipelineOutcome {
                    solution: Some(candidate),
                    attempts: log.len(),
                    total_rounds,
                    schedule_len,
                    log,
                });
            }
            entry.status = AttemptStatus::Rejected;
            log.push(entry);
        }
    }
    Ok(PipelineOutcome {
        solution: None,
        attempts: log.len(),
        total_rounds,
        schedule_len,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{Monomial, Polynomial};
    use crate::rational::q;

    fn f2(n: usize, terms: &[&[u32]]) -> Polynomial {
        Polynomial::new(n, Field::F2, terms.iter().map(|e| (Monomial::new(e.to_vec()), q(1)))).unwrap()
    }

    #[test]
    fn solves_small_system() {
        // x1 x2 + x3 = 0, x1 + 1 = 0
        let sys = PolySystem::new(3, Field::F2, vec![f2(3, &[&[1, 1, 0], &[0, 0, 1]]), f2(3, &[&[1, 0, 0], &[0, 0, 0]])]).unwrap();
        let out = full_pipeline(&sys, 0.1, 5).unwrap();
        let a = out.solution.clone().expect("satisfiable");
        assert!(sys.is_solution(&a).unwrap());
        assert_eq!(out, full_pipeline(&sys, 0.1, 5).unwrap());
    }

    #[test]
    fn unsatisfiable_fails() {
        let sys = PolySystem::new(2, Field::F2, vec![f2(2, &[&[1, 0]]), f2(2, &[&[1, 0], &[0, 0]])]).unwrap();
        let out = full_pipeline(&sys, 0.1, 1).unwrap();
        assert!(out.solution.is_none());
        assert_eq!(out.attempts, out.schedule_len);
    }

    #[test]
    fn explicit_backend_on_tiny_systems() {
        let sys = PolySystem::new(2, Field::F2, vec![f2(2, &[&[1, 1], &[0, 0]])]).unwrap();
        let opts = PipelineOptions {
            lsq_max_vars: 12,
            ..Default::default()
        };
        let out = full_pipeline_with(&sys, 0.1, 2, &opts).unwrap();
        assert_eq!(out.solution.unwrap().mask(), 0b11);
    }
}
