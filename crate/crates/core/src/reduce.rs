//! Reductions between problem forms: the F2 to C lift with binary slack
//! variables, affine-hash isolation, and constant-term normalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::polysys::{Assignment, Field, Monomial, PolySystem, Polynomial};
use crate::rational::Q;
use crate::rng;

/// Slack variable `y_{ib}` carrying bit `b` (weight `2^b`) of the even value
/// of polynomial `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlackVar {
    pub poly: usize,
    pub bit: u32,
    pub var: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    pub original_vars: usize,
    pub slack: Vec<SlackVar>,
}

/// Output of [`lift_f2_to_c`].
#[derive(Clone, Debug)]
pub struct LiftResult {
    /// C system: one lifted equation per input polynomial, then the field
    /// equations of every original and slack variable.
    pub system: PolySystem,
    pub var_map: VarMap,
    pub num_vars: usize,
    pub num_eqs: usize,
    source: PolySystem,
}

/// `floor(log2 t)` for `t >= 1`.
pub fn slack_bits(t: usize) -> u32 {
    debug_assert!(t >= 1);
    usize::BITS - 1 - t.leading_zeros()
}

/// Lifts an F2 quadratic system to a C system with field equations whose
/// 0/1 solutions are in bijection with the F2 solutions.
///
/// Polynomial `f_i` with `T` terms becomes `f_i - sum_{b=1}^{B} 2^b y_{ib}`
/// with `B = floor(log2 T)`: over 0/1 points `f_i` evaluates to an integer in
/// `[0, T]` and it vanishes mod 2 iff that integer is one of the even values
/// the slack bits can encode.
pub fn lift_f2_to_c(sys: &PolySystem) -> Result<LiftResult> {
    if sys.field() != Field::F2 {
        return Err(Error::FieldMismatch {
            expected: Field::F2,
            found: sys.field(),
        });
    }
    for (index, p) in sys.polys().iter().enumerate() {
        if p.is_zero() {
            return Err(Error::EmptyPolynomial { index });
        }
        if p.total_degree() > 2 {
            return Err(Error::NotQuadratic {
                index,
                degree: p.total_degree(),
            });
        }
    }
    let n = sys.num_vars();
    let mut slack = Vec::new();
    for (i, p) in sys.polys().iter().enumerate() {
        for bit in 1..=slack_bits(p.sparsity()) {
            slack.push(SlackVar {
                poly: i,
                bit,
                var: n + slack.len(),
            });
        }
    }
    let total = n + slack.len();
    let mut polys = Vec::with_capacity(sys.len() + total);
    for (i, p) in sys.polys().iter().enumerate() {
        let mut lifted = p.to_complex().extended(total);
        for s in slack.iter().filter(|s| s.poly == i) {
            let weight = Q::from_integer(BigInt::one() << s.bit);
            let y = Polynomial::new(total, Field::C, [(Monomial::var(total, s.var), Q::one())])?;
            lifted = lifted.add_scaled(&-weight, &y);
        }
        polys.push(lifted);
    }
    polys.extend((0..total).map(|v| Polynomial::field_equation(total, v)));
    let num_eqs = polys.len();
    Ok(LiftResult {
        system: PolySystem::new(total, Field::C, polys)?,
        var_map: VarMap {
            original_vars: n,
            slack,
        },
        num_vars: total,
        num_eqs,
        source: sys.clone(),
    })
}

impl LiftResult {
    /// The C solution corresponding to an F2 solution `s`: slack bits are the
    /// binary digits of the integer values `f_i(s)`.
    pub fn lift_assignment(&self, s: &Assignment) -> Result<Assignment> {
        let n = self.var_map.original_vars;
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
        let mut mask = s.mask();
        for (i, p) in self.source.polys().iter().enumerate() {
            let z = p.eval(s)?.to_integer();
            if z.is_odd() || z.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "{s} does not solve polynomial {i} over F2"
                )));
            }
            let z = z.to_u64().expect("bounded by sparsity");
            for sv in self.var_map.slack.iter().filter(|sv| sv.poly == i) {
                if (z >> sv.bit) & 1 == 1 {
                    mask |= 1 << sv.var;
                }
            }
        }
        Ok(Assignment::from_mask(self.num_vars, mask))
    }

    /// Restriction of a C solution to the original variables.
    pub fn project(&self, full: &Assignment) -> Assignment {
        full.truncated(self.var_map.original_vars)
    }

    pub fn source(&self) -> &PolySystem {
        &self.source
    }
}

/// One random affine F2 equation `sum_{i in vars} x_i + constant = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineRow {
    pub vars: u64,
    pub constant: bool,
}

impl AffineRow {
    pub fn to_polynomial(&self, num_vars: usize) -> Polynomial {
        let mut terms: Vec<(Monomial, Q)> = (0..num_vars)
            .filter(|i| (self.vars >> i) & 1 == 1)
            .map(|i| (Monomial::var(num_vars, i), Q::one()))
            .collect();
        if self.constant {
            terms.push((Monomial::one(num_vars), Q::one()));
        }
        Polynomial::new(num_vars, Field::F2, terms).expect("well-formed row")
    }

    pub fn satisfied_by(&self, point: u64) -> bool {
        ((self.vars & point).count_ones() % 2 == 1) == self.constant
    }
}

#[derive(Clone, Debug)]
pub struct IsolationAttempt {
    pub k: usize,
    pub seed: u64,
    pub affine_rows: Vec<AffineRow>,
    pub lifted: LiftResult,
    /// Input system, the lifted rows, and the field equations of the new
    /// slack variables.
    pub combined: PolySystem,
}

/// Appends `k + 2` uniformly random affine F2 equations over the first
/// `x_vars` variables (lifted to C) to `sys`.
///
/// Each variable is included with probability 1/2 and the constant is an
/// independent fair bit; rows without variables are resampled.
pub fn vv_augment(sys: &PolySystem, x_vars: usize, k: usize, seed: u64) -> Result<IsolationAttempt> {
    if sys.field() != Field::C {
        return Err(Error::FieldMismatch {
            expected: Field::C,
            found: sys.field(),
        });
    }
    if x_vars == 0 || x_vars > sys.num_vars() {
        return Err(Error::InvalidArgument(format!(
            "hash variables {x_vars} must be in 1..={}",
            sys.num_vars()
        )));
    }
    if k > x_vars {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds {x_vars}")));
    }
    let mut rng = rng::rng(seed);
    let full = if x_vars == 64 { u64::MAX } else { (1u64 << x_vars) - 1 };
    let affine_rows: Vec<AffineRow> = (0..k + 2)
        .map(|_| loop {
            let vars = rng.gen::<u64>() & full;
            let constant = rng.gen::<bool>();
            if vars != 0 {
                break AffineRow { vars, constant };
            }
        })
        .collect();
    let rows_sys = PolySystem::new(
        x_vars,
        Field::F2,
        affine_rows.iter().map(|r| r.to_polynomial(x_vars)).collect(),
    )?;
    let lifted = lift_f2_to_c(&rows_sys)?;
    let base = sys.num_vars();
    let new_slacks = lifted.var_map.slack.len();
    let total = base + new_slacks;
    let map: Vec<usize> = (0..lifted.num_vars)
        .map(|v| if v < x_vars { v } else { base + (v - x_vars) })
        .collect();
    let mut polys: Vec<Polynomial> = sys.polys().iter().map(|p| p.extended(total)).collect();
    polys.extend(
        lifted.system.polys()[..rows_sys.len()]
            .iter()
            .map(|p| p.remapped(&map, total)),
    );
    polys.extend((base..total).map(|v| Polynomial::field_equation(total, v)));
    Ok(IsolationAttempt {
        k,
        seed,
        affine_rows,
        lifted,
        combined: PolySystem::new(total, Field::C, polys)?,
    })
}

/// Trials per guess of `floor(log2 S)` in the isolation loop:
/// `ceil(8 ln((n + 1) / eps))`. With per-trial isolation probability at least
/// 1/8 the correct guess fails all its trials with probability at most
/// `eps / (n + 1)`.
pub fn trials_per_guess(n: usize, eps: f64) -> usize {
    (8.0 * ((n as f64 + 1.0) / eps).ln()).ceil().max(1.0) as usize
}

/// The isolation loop schedule: `(k, trials)` for every `k` in `0..=n`.
/// Total length is `(n + 1) * trials_per_guess(n, eps)`, at most
/// `(n + 1) * (8 ln((n + 1) / eps) + 1)`.
pub fn isolation_schedule(n: usize, eps: f64) -> Result<Vec<(usize, usize)>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps = {eps} not in (0, 1)")));
    }
    let t = trials_per_guess(n, eps);
    Ok((0..=n).map(|k| (k, t)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    /// Pivot moved to index 0 with constant term -1; no other polynomial has
    /// a constant term. `pivot` is the pivot's index in the input.
    System { system: PolySystem, pivot: usize },
    /// No polynomial has a constant term, so the all-zero point is a root.
    ZeroSolution,
}

/// Rewrites `sys` so exactly one polynomial carries a constant term, equal to
/// -1, using rational row operations (the root set is unchanged).
///
/// The pivot is the constant-bearing polynomial with the fewest terms, ties
/// broken by lowest index.
pub fn normalize_constants(sys: &PolySystem) -> Result<Normalized> {
    if sys.field() != Field::C {
        return Err(Error::FieldMismatch {
            expected: Field::C,
            found: sys.field(),
        });
    }
    let pivot = sys
        .polys()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.constant_term().is_zero())
        .min_by_key(|(i, p)| (p.sparsity(), *i))
        .map(|(i, _)| i);
    let Some(pivot) = pivot else {
        return Ok(Normalized::ZeroSolution);
    };
    let f1 = &sys.polys()[pivot];
    let c1 = f1.constant_term();
    let f1n = f1.scaled(&(-Q::one() / c1));
    let mut polys = vec![f1n.clone()];
    for (i, p) in sys.polys().iter().enumerate() {
        if i == pivot {
            continue;
        }
        let c = p.constant_term();
        polys.push(if c.is_zero() { p.clone() } else { p.add_scaled(&c, &f1n) });
    }
    Ok(Normalized::System {
        system: PolySystem::new(sys.num_vars(), Field::C, polys)?,
        pivot,
    })
}
