//! Seeded random quadratic systems, optionally with a planted solution.

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::{Assignment, Field, Monomial, PolySystem, Polynomial};
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::rng;

/// Nonconstant multilinear monomials of degree at most 2, as masks.
fn quadratic_masks(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push((1 << i) | (1 << j));
        }
    }
    out
}

fn poly_from_masks(n: usize, field: Field, terms: &[(u64, Q)]) -> Result<Polynomial> {
    Polynomial::new(n, field, terms.iter().map(|(m, c)| (Monomial::from_mask(n, *m), c.clone())))
}

/// Random F2 quadratic polynomial with `terms` nonconstant terms (clamped to
/// the available monomials) plus a fair constant bit.
pub fn random_f2_poly(n: usize, terms: usize, r: &mut rng::Rng) -> Result<Polynomial> {
    let mut masks = quadratic_masks(n);
    masks.shuffle(r);
    masks.truncate(terms.max(1));
    let mut t: Vec<(u64, Q)> = masks.into_iter().map(|m| (m, q(1))).collect();
    if r.gen::<bool>() {
        t.push((0, q(1)));
    }
    poly_from_masks(n, Field::F2, &t)
}

/// `m` random F2 quadratics; with `planted = Some(a)` each constant is set
/// so that `a` is a root.
pub fn random_f2_system(n: usize, m: usize, terms: usize, planted: Option<u64>, seed: u64) -> Result<PolySystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let mut r = rng::rng(seed);
    let polys = (0..m)
        .map(|_| {
            let p = random_f2_poly(n, terms, &mut r)?;
            let Some(a) = planted else { return Ok(p) };
            if p.eval_mod2(&Assignment::from_mask(n, a))? == 0 {
                return Ok(p);
            }
            let one = Polynomial::new(n, Field::F2, [(Monomial::one(n), q(1))])?;
            Ok(p.add_scaled(&q(1), &one))
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(n, Field::F2, polys)
}

/// Random C quadratic with small integer coefficients vanishing at `a`
/// (the constant term absorbs the value at `a`).
pub fn random_c_poly_through(n: usize, terms: usize, a: u64, r: &mut rng::Rng) -> Result<Polynomial> {
    let mut masks = quadratic_masks(n);
    masks.shuffle(r);
    masks.truncate(terms.max(1));
    let mut t: Vec<(u64, Q)> = masks
        .into_iter()
        .map(|m| {
            let c = loop {
                let c = r.gen_range(-3i64..=3);
                if c != 0 {
                    break c;
                }
            };
            (m, q(c))
        })
        .collect();
    let value: Q = t.iter().filter(|(m, _)| m & a == *m).map(|(_, c)| c.clone()).sum();
    t.push((0, -value));
    poly_from_masks(n, Field::C, &t)
}

/// C system (without field equations) whose only 0/1 root is `a`, built by
/// adding random quadratics through `a` until brute force confirms
/// uniqueness. `a` must be nonzero.
pub fn planted_unique_c(n: usize, a: u64, terms: usize, seed: u64) -> Result<PolySystem> {
    if a == 0 || n == 0 || n > 20 || a >> n != 0 {
        return Err(Error::InvalidArgument(format!("planted point {a:#b} invalid for n = {n}")));
    }
    let mut r = rng::rng(seed);
    let mut polys = Vec::new();
    for _ in 0..4 * n + 8 {
        polys.push(random_c_poly_through(n, terms, a, &mut r)?);
        let sys = PolySystem::new(n, Field::C, polys.clone())?;
        if sys.count_solutions(20)? == 1 {
            return Ok(sys);
        }
    }
    Err(Error::InvalidArgument(format!("could not isolate {a:#b} with {terms}-term quadratics")))
}
