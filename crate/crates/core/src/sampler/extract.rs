//! Classical stand-in for the measurement step: the solution state of the
//! Boolean Macaulay system is computed (or, past the explicit cap, derived
//! from the exact solution set) and sampled round by round.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng as _;
use rand_distr::StandardNormal;

use super::coupon::{required_rounds, subset_count};
use crate::error::{Error, Result};
use crate::linalg::exact::Solution;
use crate::linalg::modp::solve_fast;
use crate::macaulay::build_boolean_macaulay;
use crate::polysys::{Assignment, Field, Monomial, PolySystem, DEFAULT_BRUTE_FORCE_CAP};
use crate::rational::{to_f64, Q};
use crate::reduce::{normalize_constants, Normalized};
use crate::rng;

/// Exact measurement distribution of a state over multilinear monomials:
/// `p(R) = y_R^2 / |y|^2`. Zero-amplitude subsets are omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementDistribution {
    pub n: usize,
    /// Subsets `R` as variable bitmasks.
    pub support: Vec<u64>,
    pub probabilities: Vec<Q>,
}

impl MeasurementDistribution {
    /// Union of the support.
    pub fn covered(&self) -> u64 {
        self.support.iter().fold(0, |acc, m| acc | m)
    }

    pub fn probability_of(&self, mask: u64) -> Q {
        self.support
            .iter()
            .position(|m| *m == mask)
            .map(|i| self.probabilities[i].clone())
            .unwrap_or_else(Q::zero)
    }
}

pub fn measurement_distribution(cols: &[Monomial], y: &[Q]) -> Result<MeasurementDistribution> {
    if cols.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: cols.len(),
            found: y.len(),
        });
    }
    let n = cols.first().map(|m| m.num_vars()).unwrap_or(0);
    let norm: Q = y.iter().map(|v| v * v).sum();
    if norm.is_zero() {
        return Err(Error::InvalidArgument("zero state vector".into()));
    }
    let mut support = Vec::new();
    let mut probabilities = Vec::new();
    for (m, v) in cols.iter().zip(y) {
        if v.is_zero() {
            continue;
        }
        let mask = m
            .bitmask()
            .filter(|&b| b != 0)
            .ok_or_else(|| Error::InvalidArgument(format!("column {m} is not a nonconstant multilinear monomial")))?;
        support.push(mask);
        probabilities.push(v * v / &norm);
    }
    Ok(MeasurementDistribution {
        n,
        support,
        probabilities,
    })
}

/// One measurement round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub sampled: u64,
    /// Union of all samples so far.
    pub recovered: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionTrace {
    pub n: usize,
    pub d: u32,
    pub rounds: Vec<Round>,
    pub r: usize,
    pub eps: f64,
    /// Support of the noise-free state (the solution's 1-coordinates).
    pub target: u64,
    pub success: bool,
}

fn mask_str(n: usize, m: u64) -> String {
    let vars: Vec<String> = (0..n).filter(|i| (m >> i) & 1 == 1).map(|i| format!("x{}", i + 1)).collect();
    format!("{{{}}}", vars.join(","))
}

impl fmt::Display for ExtractionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, round) in self.rounds.iter().enumerate() {
            writeln!(
                f,
                "round {} sampled {} recovered {}",
                i + 1,
                mask_str(self.n, round.sampled),
                mask_str(self.n, round.recovered)
            )?;
        }
        write!(f, "rounds {} success {}", self.r, self.success)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateBackend {
    /// Exact least squares on the materialized Boolean Macaulay system.
    LeastSquares,
    /// Uniform over the nonempty subsets of the unique solution's support
    /// with size at most `d`: the minimum-norm solution of a full column
    /// rank Boolean Macaulay system, without materializing it.
    SolutionSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractOptions {
    /// Boolean Macaulay degree; defaults to the number of variables.
    pub d: Option<u32>,
    /// l2 perturbation of the normalized state before sampling.
    pub noise: f64,
    /// Forced backend; by default `LeastSquares` up to `lsq_max_vars`.
    pub backend: Option<StateBackend>,
    pub lsq_max_vars: usize,
    pub brute_force_cap: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            d: None,
            noise: 0.0,
            backend: None,
            lsq_max_vars: 8,
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
        }
    }
}

#[derive(Clone, Debug)]
enum State {
    /// The all-zero point; nothing to sample.
    Zero,
    Explicit {
        cols: Vec<u64>,
        amplitudes: Vec<f64>,
        dist: MeasurementDistribution,
    },
    Uniform {
        support: u64,
    },
}

/// A prepared solution state ready to be sampled.
#[derive(Clone, Debug)]
pub struct Extractor {
    n: usize,
    d: u32,
    eps: f64,
    noise: f64,
    r: usize,
    state: State,
    backend: Option<StateBackend>,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps = {eps} not in (0, 1)")));
    }
    Ok(())
}

fn resolve_d(n: usize, d: Option<u32>) -> Result<u32> {
    let d = d.unwrap_or(n as u32);
    if n > 0 && (d == 0 || d as usize > n) {
        return Err(Error::InvalidArgument(format!("degree {d} not in 1..={n}")));
    }
    Ok(d)
}

fn rounds_for(n: usize, d: u32, eps: f64) -> Result<usize> {
    // |S| is unknown before sampling; n bounds it and the bound is monotone
    // in |S| for fixed d.
    if n == 0 {
        return Ok(0);
    }
    required_rounds(n, d as usize, eps)
}

impl Extractor {
    /// Prepares the solution state of a C system with field equations.
    pub fn new(sys: &PolySystem, eps: f64, opts: &ExtractOptions) -> Result<Extractor> {
        if sys.field() != Field::C {
            return Err(Error::FieldMismatch {
                expected: Field::C,
                found: sys.field(),
            });
        }
        check_eps(eps)?;
        let n = sys.num_vars();
        let d = resolve_d(n, opts.d)?;
        let r = rounds_for(n, d, eps)?;
        let normalized = match normalize_constants(sys)? {
            Normalized::ZeroSolution => {
                return Ok(Extractor {
                    n,
                    d,
                    eps,
                    noise: opts.noise,
                    r: 0,
                    state: State::Zero,
                    backend: None,
                })
            }
            Normalized::System { system, .. } => system,
        };
        let backend = opts.backend.unwrap_or(if n <= opts.lsq_max_vars {
            StateBackend::LeastSquares
        } else {
            StateBackend::SolutionSet
        });
        match backend {
            StateBackend::LeastSquares => {
                let ms = build_boolean_macaulay(&normalized, d)?;
                let cols = ms.matrix.num_cols();
                let y = match solve_fast(&ms.matrix.rows, &ms.b_dense(), cols) {
                    Solution::Unique(y) => y,
                    Solution::Inconsistent => return Err(Error::Inconsistent),
                    Solution::Affine { nullspace, .. } => {
                        return Err(Error::NonUnique {
                            rank: cols - nullspace.len(),
                            cols,
                        })
                    }
                };
                Self::from_vector(&ms.matrix.col_labels, &y, d, eps, opts.noise).map(|mut e| {
                    e.r = r;
                    e
                })
            }
            StateBackend::SolutionSet => {
                if opts.noise != 0.0 {
                    return Err(Error::InvalidArgument(
                        "noise requires the least-squares backend".into(),
                    ));
                }
                let solutions: Vec<u64> = sys
                    .brute_force_solutions_capped(opts.brute_force_cap)?
                    .iter()
                    .map(Assignment::mask)
                    .collect();
                Self::from_solution_set(n, &solutions, Some(d), eps)
            }
        }
    }

    /// State from an explicit vector over multilinear columns.
    pub fn from_vector(cols: &[Monomial], y: &[Q], d: u32, eps: f64, noise: f64) -> Result<Extractor> {
        check_eps(eps)?;
        if !(noise >= 0.0 && noise.is_finite()) {
            return Err(Error::InvalidArgument(format!("noise = {noise}")));
        }
        let dist = measurement_distribution(cols, y)?;
        let n = dist.n;
        let norm = y.iter().map(|v| to_f64(v).powi(2)).sum::<f64>().sqrt();
        let amplitudes = y.iter().map(|v| to_f64(v) / norm).collect();
        let masks = cols.iter().map(|m| m.bitmask().unwrap_or(0)).collect();
        Ok(Extractor {
            n,
            d,
            eps,
            noise,
            r: rounds_for(n, d, eps)?,
            state: State::Explicit {
                cols: masks,
                amplitudes,
                dist,
            },
            backend: Some(StateBackend::LeastSquares),
        })
    }

    /// State of the Boolean Macaulay system at degree `d` whose 0/1 solution
    /// set is `solutions` (masks over `n` variables).
    pub fn from_solution_set(n: usize, solutions: &[u64], d: Option<u32>, eps: f64) -> Result<Extractor> {
        check_eps(eps)?;
        let d = resolve_d(n, d)?;
        match solutions {
            [] => Err(Error::Inconsistent),
            [a] => Ok(Extractor {
                n,
                d,
                eps,
                noise: 0.0,
                r: if *a == 0 { 0 } else { rounds_for(n, d, eps)? },
                state: if *a == 0 { State::Zero } else { State::Uniform { support: *a } },
                backend: Some(StateBackend::SolutionSet),
            }),
            many => {
                let cols = subset_count(n, d as usize).to_usize().unwrap_or(usize::MAX);
                Err(Error::NonUnique {
                    rank: cols.saturating_sub(many.len() - 1),
                    cols,
                })
            }
        }
    }

    pub fn rounds(&self) -> usize {
        self.r
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn backend(&self) -> Option<StateBackend> {
        self.backend
    }

    /// The exact noise-free measurement distribution, when it was
    /// materialized.
    pub fn distribution(&self) -> Option<&MeasurementDistribution> {
        match &self.state {
            State::Explicit { dist, .. } => Some(dist),
            _ => None,
        }
    }

    pub fn target(&self) -> u64 {
        match &self.state {
            State::Zero => 0,
            State::Explicit { dist, .. } => dist.covered(),
            State::Uniform { support } => *support,
        }
    }

    /// Overrides the number of rounds.
    pub fn with_rounds(mut self, r: usize) -> Self {
        if !matches!(self.state, State::Zero) {
            self.r = r;
        }
        self
    }

    /// One measurement outcome.
    fn sample(&self, rng: &mut rng::Rng, weights: Option<&WeightedIndex<f64>>, cols: &[u64]) -> u64 {
        match &self.state {
            State::Zero => 0,
            State::Explicit { .. } => cols[weights.expect("explicit state has weights").sample(rng)],
            State::Uniform { support } => sample_subset(rng, *support, self.d),
        }
    }

    fn weights(&self, rng: &mut rng::Rng) -> Result<Option<(WeightedIndex<f64>, Vec<u64>)>> {
        let State::Explicit { cols, amplitudes, .. } = &self.state else {
            return Ok(None);
        };
        let mut amp = amplitudes.clone();
        if self.noise > 0.0 {
            let g: Vec<f64> = (0..amp.len()).map(|_| rng.sample(StandardNormal)).collect();
            let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if gn > 0.0 {
                for (a, gi) in amp.iter_mut().zip(&g) {
                    *a += self.noise * gi / gn;
                }
            }
        }
        let w: Vec<f64> = amp.iter().map(|a| a * a).collect();
        let index = WeightedIndex::new(&w).map_err(|e| Error::InvalidArgument(format!("state: {e}")))?;
        Ok(Some((index, cols.clone())))
    }

    /// Samples `r` rounds, unions the sampled subsets and sets those
    /// variables to 1. Deterministic per seed.
    pub fn run(&self, seed: u64) -> Result<(ExtractionTrace, Assignment)> {
        let mut rng = rng::rng(seed);
        let weights = self.weights(&mut rng)?;
        let (index, cols) = match &weights {
            Some((w, c)) => (Some(w), c.as_slice()),
            None => (None, &[][..]),
        };
        let mut recovered = 0u64;
        let mut rounds = Vec::with_capacity(self.r);
        for _ in 0..self.r {
            let sampled = self.sample(&mut rng, index, cols);
            recovered |= sampled;
            rounds.push(Round { sampled, recovered });
        }
        let target = self.target();
        Ok((
            ExtractionTrace {
                n: self.n,
                d: self.d,
                rounds,
                r: self.r,
                eps: self.eps,
                target,
                success: recovered == target,
            },
            Assignment::from_mask(self.n, recovered),
        ))
    }
}

/// Uniform nonempty subset of `support` with at most `d` elements.
pub fn sample_subset(rng: &mut rng::Rng, support: u64, d: u32) -> u64 {
    let bits: Vec<u32> = (0..64).filter(|i| (support >> i) & 1 == 1).collect();
    let s = bits.len();
    if s == 0 {
        return 0;
    }
    if d as usize >= s {
        loop {
            let pick: u64 = rng.gen::<u64>() & if s == 64 { u64::MAX } else { (1 << s) - 1 };
            if pick != 0 {
                return spread(pick, &bits);
            }
        }
    }
    let sizes: Vec<f64> = (1..=d as u64)
        .map(|i| to_f64(&Q::from_integer(crate::rational::binomial(s as u64, i).into())))
        .collect();
    let size = WeightedIndex::new(&sizes).expect("positive weights").sample(rng) + 1;
    rand::seq::index::sample(rng, s, size)
        .iter()
        .fold(0, |acc, i| acc | 1u64 << bits[i])
}

fn spread(pick: u64, bits: &[u32]) -> u64 {
    bits.iter()
        .enumerate()
        .filter(|(i, _)| (pick >> i) & 1 == 1)
        .fold(0, |acc, (_, b)| acc | 1u64 << b)
}

/// Prepares the state of `sys` with default options and runs one
/// extraction.
pub fn run_extraction(sys: &PolySystem, eps: f64, seed: u64) -> Result<(ExtractionTrace, Assignment)> {
    Extractor::new(sys, eps, &ExtractOptions::default())?.run(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::Polynomial;
    use crate::rational::{q, q_frac};

    fn c_poly(n: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::new(n, Field::C, terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), q(*c)))).unwrap()
    }

    /// x1 = 1, x2 = 0, x3 = 1 as linear equations plus field equations.
    fn planted_101() -> PolySystem {
        let polys = vec![
            c_poly(3, &[(1, &[1, 0, 0]), (-1, &[0, 0, 0])]),
            c_poly(3, &[(1, &[0, 1, 0])]),
            c_poly(3, &[(1, &[0, 0, 1]), (-1, &[0, 0, 0])]),
        ];
        PolySystem::new(3, Field::C, polys).unwrap().with_field_equations().unwrap()
    }

    #[test]
    fn distribution_uniform_pair() {
        let cols: Vec<Monomial> = [1u64, 2, 3].iter().map(|m| Monomial::from_mask(2, *m)).collect();
        let d = measurement_distribution(&cols, &[q(1), q(1), q(1)]).unwrap();
        assert_eq!(d.probabilities, vec![q_frac(1, 3); 3]);
        let point = measurement_distribution(&cols, &[q(0), q(-2), q(0)]).unwrap();
        assert_eq!(point.support, vec![2]);
        assert_eq!(point.probabilities, vec![q(1)]);
        assert!(measurement_distribution(&cols, &vec![q(0); 3]).is_err());
    }

    #[test]
    fn extraction_recovers_planted() {
        let sys = planted_101();
        let expected = sys.brute_force_solutions().unwrap();
        assert_eq!(expected.len(), 1);
        for seed in 0..20 {
            let (trace, a) = run_extraction(&sys, 0.1, seed).unwrap();
            assert_eq!(trace.target, 0b101);
            if trace.success {
                assert_eq!(a, expected[0]);
            }
            assert!(trace.rounds.windows(2).all(|w| w[0].recovered & !w[1].recovered == 0));
        }
    }

    #[test]
    fn backends_agree_on_state() {
        let sys = planted_101();
        let lsq = Extractor::new(
            &sys,
            0.1,
            &ExtractOptions {
                backend: Some(StateBackend::LeastSquares),
                ..Default::default()
            },
        )
        .unwrap();
        let set = Extractor::new(
            &sys,
            0.1,
            &ExtractOptions {
                backend: Some(StateBackend::SolutionSet),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(lsq.target(), set.target());
        assert_eq!(lsq.rounds(), set.rounds());
        let dist = lsq.distribution().unwrap();
        assert_eq!(dist.support.len(), 3);
        assert!(dist.probabilities.iter().all(|p| *p == q_frac(1, 3)));
    }

    #[test]
    fn weight_one_solution_single_round() {
        let polys = vec![
            c_poly(2, &[(1, &[1, 0]), (-1, &[0, 0])]),
            c_poly(2, &[(1, &[0, 1])]),
        ];
        let sys = PolySystem::new(2, Field::C, polys).unwrap().with_field_equations().unwrap();
        let (trace, a) = run_extraction(&sys, 0.1, 3).unwrap();
        assert!(trace.rounds.iter().all(|r| r.sampled == 1));
        assert!(trace.success);
        assert_eq!(a.mask(), 1);
    }

    #[test]
    fn non_unique_is_signalled() {
        let polys = vec![c_poly(2, &[(1, &[1, 0]), (1, &[0, 1]), (-1, &[0, 0])])];
        let sys = PolySystem::new(2, Field::C, polys).unwrap().with_field_equations().unwrap();
        let err = run_extraction(&sys, 0.1, 0).unwrap_err();
        assert!(matches!(err, Error::NonUnique { .. }), "{err}");
        let err = Extractor::new(
            &sys,
            0.1,
            &ExtractOptions {
                backend: Some(StateBackend::SolutionSet),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonUnique { .. }), "{err}");
    }

    #[test]
    fn deterministic_and_noise() {
        let sys = planted_101();
        let opts = ExtractOptions {
            noise: 0.3,
            ..Default::default()
        };
        let e = Extractor::new(&sys, 0.1, &opts).unwrap();
        assert_eq!(e.run(9).unwrap(), e.run(9).unwrap());
    }

    #[test]
    fn subset_sampler_respects_cap() {
        let mut r = rng::rng(1);
        for _ in 0..500 {
            let s = sample_subset(&mut r, 0b1011_0110, 2);
            assert!(s != 0 && s & !0b1011_0110 == 0 && s.count_ones() <= 2);
        }
    }
}
