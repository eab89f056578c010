mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng as _;

use boolmac::condition::{
    combination, condition_numbers, gram_minor_bound, gram_symmetrized, shortest_affine_norm,
};
use boolmac::linalg::{kappa, kappa_b, ldl_certify, Dense};
use boolmac::macaulay::{
    build_boolean_macaulay, build_macaulay, multilinearize, row_polynomial, DegreeKind, Flavor,
};
use boolmac::polysys::random::{random_c_poly_through, random_f2_system};
use boolmac::polysys::{parse_system, write_system, Assignment, Field, Monomial, PolySystem, Polynomial};
use boolmac::reduce::{lift_f2_to_c, normalize_constants, vv_augment, Normalized};
use boolmac::rng::rng;
use boolmac::sampler::{full_pipeline, measurement_distribution, see_probability};

use common::{all_solutions, choose, dot, eval_at, qi, Q};

fn c_system(n: usize, m: usize, seed: u64) -> PolySystem {
    let mut r = rng(seed);
    let a = r.gen::<u64>() & ((1 << n) - 1);
    let polys: Vec<Polynomial> = (0..m)
        .map(|_| {
            let terms = r.gen_range(1..=4);
            random_c_poly_through(n, terms, a, &mut r).unwrap()
        })
        .collect();
    PolySystem::new(n, Field::C, polys).unwrap()
}

fn random_monomial(n: usize, max_exp: u32, r: &mut boolmac::rng::Rng) -> Monomial {
    Monomial::new((0..n).map(|_| r.gen_range(0..=max_exp)).collect())
}

fn total_terms(sys: &PolySystem) -> usize {
    sys.polys().iter().map(Polynomial::sparsity).sum()
}

#[test]
fn field_equations_vanish_on_the_cube() {
    for n in 1..=10usize {
        for i in 0..n {
            let f = Polynomial::field_equation(n, i);
            for mask in 0..1u64 << n {
                assert!(eval_at(&f, mask).is_zero());
                assert!(f.eval(&Assignment::from_mask(n, mask)).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn gram_matrix_is_positive_definite_from_degree_n() {
    for n in 1..=10usize {
        for d in n as u32..=3 * n as u32 {
            for kind in [DegreeKind::Max(d), DegreeKind::Total(d)] {
                let g = gram_symmetrized(n, kind).unwrap();
                assert!(ldl_certify(&g.entries).positive_definite, "n = {n}, {kind:?}");
            }
        }
    }
}

/// Average of `y^(a)` over weight-`h` assignments, by enumerating the
/// monomials of the column set.
fn symmetrized_vector(n: usize, kind: DegreeKind, h: usize) -> Vec<Q> {
    common::box_exponents(n, kind.d())
        .into_iter()
        .filter(|e| e.iter().any(|x| *x > 0))
        .filter(|e| match kind {
            DegreeKind::Max(_) => true,
            DegreeKind::Total(d) => e.iter().sum::<u32>() <= d,
        })
        .map(|e| {
            let supp = e.iter().enumerate().filter(|(_, x)| **x > 0).fold(0u64, |acc, (i, _)| acc | 1 << i);
            let hits = (0..1u64 << n).filter(|a| a.count_ones() as usize == h && supp & !a == 0).count();
            Q::new((hits as i64).into(), choose(n as u64, h as u64).into())
        })
        .collect()
}

#[test]
fn minor_bound_at_one_matches_affine_hull_of_symmetrized_vectors() {
    for n in 1..=4usize {
        for kind in [DegreeKind::Max(3 * n as u32), DegreeKind::Total(n as u32 + 1)] {
            let vs: Vec<Vec<Q>> = (1..=n).map(|h| symmetrized_vector(n, kind, h)).collect();
            let hull = shortest_affine_norm(&vs).unwrap();
            let g = gram_symmetrized(n, kind).unwrap();
            assert_eq!(gram_minor_bound(&g, 1).unwrap(), hull.gamma_star, "n = {n}, {kind:?}");
        }
    }
}

#[test]
fn minor_bound_nondecreasing_in_h() {
    // Observed on every swept size; not a proven statement.
    for n in 1..=12usize {
        let g = gram_symmetrized(n, DegreeKind::Max(3 * n as u32)).unwrap();
        let bounds: Vec<Q> = (1..=n).map(|h| gram_minor_bound(&g, h).unwrap()).collect();
        assert!(bounds.windows(2).all(|w| w[0] <= w[1]), "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn combinations_keep_solutions(n in 1usize..=6, m in 1usize..=4, seed in any::<u64>()) {
        let sys = c_system(n, m, seed);
        let mut r = rng(seed ^ 0x5eed);
        let mut combos = Vec::new();
        for _ in 0..3 {
            let f = &sys.polys()[r.gen_range(0..m)];
            let g = &sys.polys()[r.gen_range(0..m)];
            let p = f.mul_monomial(&random_monomial(n, 2, &mut r)).scaled(&qi(r.gen_range(-3..=3)));
            let q = g.mul_monomial(&random_monomial(n, 2, &mut r));
            combos.push(p.add_scaled(&qi(r.gen_range(-3..=3)), &q));
        }
        let comb = PolySystem::new(n, Field::C, combos).unwrap();
        let comb_solutions = all_solutions(&comb);
        for a in sys.brute_force_solutions().unwrap() {
            prop_assert!(comb_solutions.contains(&a.mask()));
        }
    }

    #[test]
    fn system_files_round_trip(n in 1usize..=6, m in 0usize..=4, seed in any::<u64>(), f2 in any::<bool>()) {
        let sys = if f2 {
            random_f2_system(n, m, 3, None, seed).unwrap()
        } else {
            c_system(n, m.max(1), seed)
        };
        let back = parse_system(&write_system(&sys)).unwrap();
        prop_assert_eq!(back, sys);
    }

    #[test]
    fn lift_is_a_bijection_with_binary_slack(n in 1usize..=5, m in 1usize..=3, terms in 1usize..=5, seed in any::<u64>()) {
        let sys = random_f2_system(n, m, terms, None, seed).unwrap();
        let lift = lift_f2_to_c(&sys).unwrap();
        prop_assume!(lift.num_vars <= 14);
        let f2_solutions = all_solutions(&sys);
        let c_solutions = all_solutions(&lift.system);
        prop_assert_eq!(f2_solutions.len(), c_solutions.len());
        let x_mask = (1u64 << n) - 1;
        let mut projected: Vec<u64> = c_solutions.iter().map(|s| s & x_mask).collect();
        projected.sort();
        prop_assert_eq!(&projected, &f2_solutions);
        for s in &c_solutions {
            for (i, p) in sys.polys().iter().enumerate() {
                let z = eval_at(p, s & x_mask);
                let encoded: i64 = lift
                    .var_map
                    .slack
                    .iter()
                    .filter(|v| v.poly == i && (s >> v.var) & 1 == 1)
                    .map(|v| 1i64 << v.bit)
                    .sum();
                prop_assert_eq!(z, qi(encoded));
            }
        }
    }

    #[test]
    fn normalization_preserves_solutions(n in 1usize..=8, m in 1usize..=5, seed in any::<u64>()) {
        let sys = c_system(n, m, seed);
        match normalize_constants(&sys).unwrap() {
            Normalized::ZeroSolution => {
                prop_assert!(sys.polys().iter().all(|p| p.constant_term().is_zero()));
                prop_assert!(all_solutions(&sys).contains(&0));
            }
            Normalized::System { system, .. } => {
                prop_assert_eq!(all_solutions(&system), all_solutions(&sys));
                let constants: Vec<Q> = system
                    .polys()
                    .iter()
                    .map(Polynomial::constant_term)
                    .filter(|c| !c.is_zero())
                    .collect();
                prop_assert_eq!(constants, vec![qi(-1)]);
                prop_assert!(total_terms(&system) <= 2 * total_terms(&sys));
            }
        }
    }

    #[test]
    fn isolation_keeps_exactly_the_hashed_solutions(n in 1usize..=4, m in 1usize..=2, seed in any::<u64>(), k in 0usize..=2) {
        let sys = random_f2_system(n, m, 3, None, seed).unwrap();
        let lift = lift_f2_to_c(&sys).unwrap();
        let att = vv_augment(&lift.system, n, k.min(n), seed).unwrap();
        prop_assume!(att.combined.num_vars() <= 16);
        let hashed: Vec<u64> = all_solutions(&sys)
            .into_iter()
            .filter(|x| att.affine_rows.iter().all(|r| r.satisfied_by(*x)))
            .collect();
        let combined = all_solutions(&att.combined);
        let x_mask = (1u64 << n) - 1;
        let mut projected: Vec<u64> = combined.iter().map(|s| s & x_mask).collect();
        projected.sort();
        prop_assert_eq!(projected, hashed);
    }

    #[test]
    fn rows_evaluate_their_polynomials(n in 1usize..=4, m in 1usize..=3, seed in any::<u64>(), boolean in any::<bool>()) {
        let sys = c_system(n, m, seed);
        let (ms, base, flavor) = if boolean {
            (build_boolean_macaulay(&sys, n as u32).unwrap(), sys.clone(), Flavor::Boolean)
        } else {
            let full = sys.with_field_equations().unwrap();
            (build_macaulay(&full, DegreeKind::Max(n as u32 + 1)).unwrap(), full, Flavor::Plain)
        };
        let b = ms.b_dense();
        for mask in 0..1u64 << n {
            let y = ms.matrix.monomial_vector(&Assignment::from_mask(n, mask));
            let my = ms.matrix.mat_vec(&y);
            for (r, label) in ms.matrix.row_labels.iter().enumerate() {
                let f = &base.polys()[label.poly_index];
                let product = f.mul_monomial(&label.multiplier);
                prop_assert_eq!(&my[r] - &b[r], eval_at(&product, mask));
                prop_assert_eq!(row_polynomial(&base, flavor, label).unwrap().eval(&Assignment::from_mask(n, mask)).unwrap(), eval_at(&product, mask));
            }
        }
    }

    #[test]
    fn multilinearization_laws(n in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut poly = || {
            let terms: Vec<(Monomial, Q)> = (0..r.gen_range(1..=5))
                .map(|_| (random_monomial(n, 3, &mut r), qi(r.gen_range(-4..=4))))
                .collect();
            Polynomial::new(n, Field::C, terms).unwrap()
        };
        let (p, q) = (poly(), poly());
        let c = qi(rng(seed ^ 1).gen_range(-3..=3));
        let psi_p = multilinearize(&p);
        prop_assert!(psi_p.is_multilinear());
        prop_assert_eq!(multilinearize(&psi_p), psi_p.clone());
        prop_assert_eq!(multilinearize(&p.add_scaled(&c, &q)), psi_p.add_scaled(&c, &multilinearize(&q)));
        for mask in 0..1u64 << n {
            prop_assert_eq!(eval_at(&psi_p, mask), eval_at(&p, mask));
        }
    }

    #[test]
    fn kappa_b_never_exceeds_kappa(rows in 1usize..=12, cols in 1usize..=8, seed in any::<u64>()) {
        let mut r = rng(seed);
        let data: Vec<Vec<f64>> = (0..rows)
            .map(|_| (0..cols).map(|_| if r.gen_bool(0.3) { 0.0 } else { r.gen_range(-3.0..3.0) }).collect())
            .collect();
        let a = Dense::from_rows(&data);
        prop_assume!(!a.is_zero());
        let b: Vec<f64> = (0..rows).map(|_| r.gen_range(-1.0..1.0)).collect();
        prop_assume!(b.iter().any(|v| *v != 0.0));
        let k = kappa(&a).unwrap().kappa;
        let (kb, _) = kappa_b(&a, &b).unwrap();
        prop_assert!(kb <= k * (1.0 + 1e-9), "kappa_b {} > kappa {}", kb, k);
    }

    #[test]
    fn normalized_boolean_systems_have_norm_at_least_half(n in 1usize..=5, m in 1usize..=4, seed in any::<u64>()) {
        let sys = c_system(n, m, seed);
        let Normalized::System { system, .. } = normalize_constants(&sys).unwrap() else {
            return Ok(());
        };
        let ms = build_boolean_macaulay(&system, n as u32).unwrap();
        prop_assume!(!ms.matrix.to_dense().is_zero());
        let c = condition_numbers(&ms).unwrap();
        prop_assert!((c.b_norm - (ms.b.len() as f64).sqrt()).abs() < 1e-12);
        prop_assert!(c.sigma_max >= 0.5);
        if c.sigma_max >= 1.0 {
            prop_assert!(c.kappa_b >= c.pinv_b_norm * (1.0 - 1e-9) / c.b_norm);
        }
    }

    #[test]
    fn convex_combinations_are_not_short(dim in 1usize..=8, t in 1usize..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let vs: Vec<Vec<Q>> = (0..t)
            .map(|_| {
                let mut v: Vec<Q> = (0..dim).map(|_| if r.gen_bool(0.5) { Q::one() } else { Q::zero() }).collect();
                v[r.gen_range(0..dim)] = Q::one();
                v
            })
            .collect();
        let raw: Vec<i64> = (0..t).map(|_| r.gen_range(0..=5)).collect();
        prop_assume!(raw.iter().any(|x| *x > 0));
        let total: i64 = raw.iter().sum();
        let w: Vec<Q> = raw.iter().map(|x| Q::new((*x).into(), total.into())).collect();
        let y = combination(&vs, &w);
        let min_weight = vs.iter().map(|v| dot(v, v)).min().unwrap();
        prop_assert!(dot(&y, &y) * qi(t as i64) >= min_weight);
    }

    #[test]
    fn shortest_point_is_orthogonal_to_differences(dim in 1usize..=6, t in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let vs: Vec<Vec<Q>> = (0..t).map(|_| (0..dim).map(|_| qi(r.gen_range(-3..=3))).collect()).collect();
        let s = shortest_affine_norm(&vs).unwrap();
        if let Some(w) = &s.weights {
            prop_assert_eq!(w.iter().sum::<Q>(), Q::one());
            let p = combination(&vs, w);
            prop_assert_eq!(dot(&p, &p), s.gamma_star.clone());
            for v in &vs[1..] {
                let diff: Vec<Q> = v.iter().zip(&vs[0]).map(|(x, y)| x - y).collect();
                prop_assert!(dot(&p, &diff).is_zero());
            }
        } else {
            prop_assert!(s.gamma_star.is_zero());
        }
    }

    #[test]
    fn unique_state_is_uniform_over_small_subsets(n in 1usize..=7, d in 1u32..=7, a in 1u64..128) {
        let a = a & ((1 << n) - 1);
        prop_assume!(a != 0);
        let d = d.min(n as u32);
        let cols: Vec<Monomial> = (1..1u64 << n)
            .filter(|c| c.count_ones() <= d)
            .map(|c| Monomial::from_mask(n, c))
            .collect();
        let y: Vec<Q> = cols
            .iter()
            .map(|c| if c.support_mask() & !a == 0 { Q::one() } else { Q::zero() })
            .collect();
        let dist = measurement_distribution(&cols, &y).unwrap();
        let s = a.count_ones() as u64;
        let size: num_bigint::BigUint = (1..=s.min(d as u64)).map(|i| choose(s, i)).sum();
        prop_assert_eq!(num_bigint::BigUint::from(dist.support.len()), size.clone());
        let p = Q::new(1.into(), size.into());
        prop_assert!(dist.probabilities.iter().all(|x| *x == p));
        prop_assert_eq!(dist.covered(), a);
    }

    #[test]
    fn see_probability_lower_bounds(s in 1usize..=64, d in 1usize..=64) {
        prop_assume!(d <= s);
        let p = see_probability(s, d).unwrap();
        let (sq, dq) = (qi(s as i64), qi(d as i64));
        if 3 * d <= s {
            let chain = &dq / &sq * (&sq - qi(2) * &dq + qi(1)) / (&sq - &dq + qi(1));
            prop_assert!(p >= chain);
            prop_assert!(chain >= &dq / (qi(2) * &sq));
        }
        if 3 * d >= s {
            prop_assert!(p >= Q::new(1.into(), 6.into()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_answers_are_solutions(n in 2usize..=5, a in any::<u64>(), seed in any::<u64>()) {
        let a = a & ((1 << n) - 1);
        let sys = random_f2_system(n, n, 3, Some(a), seed).unwrap();
        let out = full_pipeline(&sys, 0.1, seed).unwrap();
        if let Some(x) = out.solution {
            prop_assert!(common::satisfies(&sys, x.mask()));
        }
    }
}
