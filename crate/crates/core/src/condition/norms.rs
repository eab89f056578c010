//! Monomial solution vectors `y^(a)` and their norms.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::macaulay::DegreeKind;
use crate::polysys::{monomials_max_degree, monomials_total_degree, Assignment, Monomial};
use crate::rational::binomial;

/// `y^(a)` over the nonconstant monomials admitted by `kind`; coordinate `e`
/// is `prod a_i^{e_i}`. Stored implicitly: the nonzero coordinates are the
/// admitted monomials supported inside `supp(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSolutionVector {
    pub a: Assignment,
    pub kind: DegreeKind,
}

pub fn monomial_solution_vector(a: &Assignment, kind: DegreeKind) -> MonomialSolutionVector {
    MonomialSolutionVector { a: a.clone(), kind }
}

impl MonomialSolutionVector {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn weight(&self) -> usize {
        self.a.weight()
    }

    /// Coordinate at monomial `m` (0 for the constant monomial and for
    /// monomials outside the column set).
    pub fn coord(&self, m: &Monomial) -> u8 {
        let admitted = m.num_vars() == self.n() && !m.is_one() && self.kind.admits(m);
        (admitted && m.eval_boolean(self.a.mask())) as u8
    }

    /// Number of nonzero coordinates, counted by dynamic programming over the
    /// support variables (number of exponent vectors on `h` variables within
    /// the degree bound, minus the zero vector).
    pub fn nonzero_count(&self) -> BigUint {
        let h = self.weight();
        let d = self.kind.d() as usize;
        let count = match self.kind {
            DegreeKind::Max(_) => {
                // ways[s]: vectors over the processed variables with sum s.
                let mut ways = vec![BigUint::one()];
                for _ in 0..h {
                    let mut next = vec![BigUint::zero(); ways.len() + d];
                    for (s, w) in ways.iter().enumerate() {
                        for e in 0..=d {
                            next[s + e] += w;
                        }
                    }
                    ways = next;
                }
                ways.into_iter().sum::<BigUint>()
            }
            DegreeKind::Total(_) => {
                let mut ways = vec![BigUint::zero(); d + 1];
                ways[0] = BigUint::one();
                for _ in 0..h {
                    // prefix sums: next[s] = sum_{e <= s} ways[s - e]
                    let mut acc = BigUint::zero();
                    for w in ways.iter_mut() {
                        acc += &*w;
                        *w = acc.clone();
                    }
                }
                ways.into_iter().sum::<BigUint>()
            }
        };
        count - BigUint::one()
    }

    /// `||y||^2`, equal to the nonzero count for a 0/1 vector.
    pub fn norm_sq(&self) -> BigUint {
        self.nonzero_count()
    }

    /// Explicit nonzero coordinates, in canonical order.
    pub fn support(&self, cap: usize) -> Result<Vec<Monomial>> {
        let count = self.nonzero_count();
        if count > BigUint::from(cap) {
            return Err(Error::CapacityExceeded {
                what: "monomial vector support",
                requested: u128::try_from(count).unwrap_or(u128::MAX),
                cap: cap as u128,
            });
        }
        let idx: Vec<usize> = (0..self.n()).filter(|&i| self.a.get(i)).collect();
        let h = idx.len();
        let local = match self.kind {
            DegreeKind::Max(d) => monomials_max_degree(h, d),
            DegreeKind::Total(d) => monomials_total_degree(h, d),
        };
        let mut out: Vec<Monomial> = local
            .into_iter()
            .filter(|m| !m.is_one())
            .map(|m| {
                let mut e = vec![0; self.n()];
                for (k, &i) in idx.iter().enumerate() {
                    e[i] = m.exps()[k];
                }
                Monomial::new(e)
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

/// `(d+1)^h - 1` (max degree) or `C(d+h, h) - 1` (total degree).
pub fn norm_sq_closed_form(kind: DegreeKind, h: usize) -> BigUint {
    let d = kind.d() as u64;
    let v = match kind {
        DegreeKind::Max(_) => BigUint::from(d + 1).pow(h as u32),
        DegreeKind::Total(_) => binomial(d + h as u64, h as u64),
    };
    v - BigUint::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let y = monomial_solution_vector(&Assignment::from_bits(&[1, 1]), DegreeKind::Max(3));
        assert_eq!(y.norm_sq(), BigUint::from(15u32));
        assert_eq!(y.support(100).unwrap().len(), 15);
        let z = monomial_solution_vector(&Assignment::zeros(4), DegreeKind::Max(3));
        assert_eq!(z.norm_sq(), BigUint::zero());
        assert!(z.support(10).unwrap().is_empty());
        let t = monomial_solution_vector(&Assignment::from_bits(&[1, 0, 1]), DegreeKind::Total(3));
        assert_eq!(t.norm_sq(), BigUint::from(9u32));
        assert_eq!(t.coord(&Monomial::new(vec![2, 0, 1])), 1);
        assert_eq!(t.coord(&Monomial::new(vec![1, 1, 0])), 0);
        assert_eq!(t.coord(&Monomial::new(vec![2, 0, 2])), 0);
    }

    #[test]
    fn closed_forms_agree_with_count() {
        for n in 0..6usize {
            for mask in 0..1u64 << n {
                let a = Assignment::from_mask(n, mask);
                for d in 1..7 {
                    for kind in [DegreeKind::Max(d), DegreeKind::Total(d)] {
                        let y = monomial_solution_vector(&a, kind);
                        assert_eq!(y.norm_sq(), norm_sq_closed_form(kind, a.weight()));
                    }
                }
            }
        }
    }
}
