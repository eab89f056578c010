use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::rational::common_denominator;

/// Largest variable count any system may have (assignments are bitmasks).
pub const MAX_VARS: usize = 64;

/// Default variable cap for exhaustive enumeration.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    F2,
    C,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::F2 => write!(f, "F2"),
            Field::C => write!(f, "C"),
        }
    }
}

/// A 0/1 assignment to `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn from_mask(num_vars: usize, mask: u64) -> Self {
        Assignment {
            bits: (0..num_vars).map(|i| (mask >> i) & 1 == 1).collect(),
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Assignment {
            bits: bits.iter().map(|&b| b != 0).collect(),
        }
    }

    pub fn zeros(num_vars: usize) -> Self {
        Assignment {
            bits: vec![false; num_vars],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn mask(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |m, (i, _)| m | (1u64 << i))
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// First `n` coordinates.
    pub fn truncated(&self, n: usize) -> Assignment {
        Assignment {
            bits: self.bits[..n].to_vec(),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ")")
    }
}

/// An ordered list of polynomials sharing a variable count and field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    num_vars: usize,
    field: Field,
    polys: Vec<Polynomial>,
    includes_field_equations: bool,
}

impl PolySystem {
    pub fn new(num_vars: usize, field: Field, polys: Vec<Polynomial>) -> Result<Self> {
        if num_vars > MAX_VARS {
            return Err(Error::CapacityExceeded {
                what: "variable count",
                requested: num_vars as u128,
                cap: MAX_VARS as u128,
            });
        }
        for p in &polys {
            if p.num_vars() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: p.num_vars(),
                });
            }
            if p.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    found: p.field(),
                });
            }
        }
        let includes_field_equations = field == Field::C && {
            let mut seen = vec![false; num_vars];
            for i in polys.iter().filter_map(Polynomial::as_field_equation) {
                seen[i] = true;
            }
            seen.into_iter().all(|s| s)
        };
        Ok(PolySystem {
            num_vars,
            field,
            polys,
            includes_field_equations,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True iff `x_i^2 - x_i` is present for every variable.
    pub fn includes_field_equations(&self) -> bool {
        self.includes_field_equations
    }

    /// Maximum sparsity over the polynomials.
    pub fn sparsity(&self) -> usize {
        self.polys.iter().map(Polynomial::sparsity).max().unwrap_or(0)
    }

    /// Appends the missing field equations (C systems only).
    pub fn with_field_equations(&self) -> Result<PolySystem> {
        if self.field != Field::C {
            return Err(Error::FieldMismatch {
                expected: Field::C,
                found: self.field,
            });
        }
        let mut present = vec![false; self.num_vars];
        for i in self.polys.iter().filter_map(Polynomial::as_field_equation) {
            present[i] = true;
        }
        let mut polys = self.polys.clone();
        polys.extend(
            (0..self.num_vars)
                .filter(|&i| !present[i])
                .map(|i| Polynomial::field_equation(self.num_vars, i)),
        );
        PolySystem::new(self.num_vars, self.field, polys)
    }

    /// The system with every field equation removed (the `F1` part).
    pub fn without_field_equations(&self) -> PolySystem {
        let polys = self
            .polys
            .iter()
            .filter(|p| p.as_field_equation().is_none())
            .cloned()
            .collect();
        PolySystem::new(self.num_vars, self.field, polys).expect("subset of a valid system")
    }

    pub fn is_solution(&self, a: &Assignment) -> Result<bool> {
        for p in &self.polys {
            if !p.vanishes_at(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All 0/1 roots in ascending bitmask order, using the default cap.
    pub fn brute_force_solutions(&self) -> Result<Vec<Assignment>> {
        self.brute_force_solutions_capped(DEFAULT_BRUTE_FORCE_CAP)
    }

    /// All 0/1 roots in ascending bitmask order.
    pub fn brute_force_solutions_capped(&self, cap: usize) -> Result<Vec<Assignment>> {
        if self.num_vars > cap {
            return Err(Error::CapacityExceeded {
                what: "brute-force variable count",
                requested: self.num_vars as u128,
                cap: cap as u128,
            });
        }
        let compiled: Vec<CompiledPoly> = self
            .polys
            .iter()
            .filter(|p| p.as_field_equation().is_none())
            .map(|p| CompiledPoly::new(p))
            .collect();
        let n = self.num_vars;
        Ok((0..(1u64 << n))
            .filter(|&point| compiled.iter().all(|p| p.vanishes(point)))
            .map(|point| Assignment::from_mask(n, point))
            .collect())
    }

    /// Number of 0/1 roots.
    pub fn count_solutions(&self, cap: usize) -> Result<usize> {
        Ok(self.brute_force_solutions_capped(cap)?.len())
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system over {} in {} variables", self.field, self.num_vars)?;
        for (i, p) in self.polys.iter().enumerate() {
            writeln!(f, "  f{} = {}", i + 1, p)?;
        }
        Ok(())
    }
}

/// A polynomial prepared for fast evaluation at 0/1 points: terms as
/// (support mask, integer coefficient) after clearing denominators.
struct CompiledPoly {
    terms: Coeffs,
    mod2: bool,
}

enum Coeffs {
    Small(Vec<(u64, i64)>),
    Big(Vec<(u64, BigInt)>),
}

impl CompiledPoly {
    fn new(p: &Polynomial) -> Self {
        let den = common_denominator(p.terms().map(|(_, c)| c));
        let big: Vec<(u64, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.support_mask(), c.numer() * (&den / c.denom())))
            .collect();
        let small: Option<Vec<(u64, i64)>> = big
            .iter()
            .map(|(m, c)| c.to_i64().map(|c| (*m, c)))
            .collect();
        let terms = match small {
            Some(s) => Coeffs::Small(s),
            None => Coeffs::Big(big),
        };
        CompiledPoly {
            terms,
            mod2: p.field() == Field::F2,
        }
    }

    fn vanishes(&self, point: u64) -> bool {
        match &self.terms {
            Coeffs::Small(t) => {
                let v: i128 = t
                    .iter()
                    .filter(|(m, _)| m & point == *m)
                    .map(|(_, c)| *c as i128)
                    .sum();
                if self.mod2 {
                    v.rem_euclid(2) == 0
                } else {
                    v == 0
                }
            }
            Coeffs::Big(t) => {
                let v: BigInt = t
                    .iter()
                    .filter(|(m, _)| m & point == *m)
                    .map(|(_, c)| c.clone())
                    .sum();
                if self.mod2 {
                    v.is_even()
                } else {
                    v.is_zero()
                }
            }
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::Monomial;
    use crate::rational::q;

    fn poly(n: usize, field: Field, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::new(
            n,
            field,
            terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), q(*c))),
        )
        .unwrap()
    }

    #[test]
    fn single_linear_equation_with_field_equations() {
        let sys = PolySystem::new(1, Field::C, vec![poly(1, Field::C, &[(1, &[1]), (-1, &[0])])])
            .unwrap()
            .with_field_equations()
            .unwrap();
        assert!(sys.includes_field_equations());
        assert_eq!(sys.brute_force_solutions().unwrap(), vec![Assignment::from_bits(&[1])]);
    }

    #[test]
    fn xor_over_f2() {
        let sys = PolySystem::new(2, Field::F2, vec![poly(2, Field::F2, &[(1, &[1, 0]), (1, &[0, 1])])])
            .unwrap();
        assert_eq!(
            sys.brute_force_solutions().unwrap(),
            vec![Assignment::from_bits(&[0, 0]), Assignment::from_bits(&[1, 1])]
        );
    }

    #[test]
    fn inconsistent_system_has_no_solutions() {
        let sys = PolySystem::new(
            1,
            Field::C,
            vec![
                poly(1, Field::C, &[(1, &[1])]),
                poly(1, Field::C, &[(1, &[1]), (-1, &[0])]),
            ],
        )
        .unwrap();
        assert!(sys.brute_force_solutions().unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let sys = PolySystem::new(21, Field::C, vec![]).unwrap();
        assert!(matches!(
            sys.brute_force_solutions(),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn mixed_fields_rejected() {
        let r = PolySystem::new(1, Field::C, vec![poly(1, Field::F2, &[(1, &[1])])]);
        assert!(matches!(r, Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn brute_force_agrees_with_exact_evaluation() {
        let sys = PolySystem::new(
            3,
            Field::C,
            vec![
                poly(3, Field::C, &[(3, &[1, 1, 0]), (-2, &[0, 0, 1]), (-1, &[1, 0, 0])]),
                poly(3, Field::C, &[(1, &[2, 0, 0]), (-1, &[0, 1, 0])]),
            ],
        )
        .unwrap();
        let fast = sys.brute_force_solutions().unwrap();
        let slow: Vec<_> = (0..8u64)
            .map(|m| Assignment::from_mask(3, m))
            .filter(|a| sys.is_solution(a).unwrap())
            .collect();
        assert_eq!(fast, slow);
    }
}
