use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Assignment, Field, Monomial};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Sparse polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored. F2-tagged polynomials hold only
/// multilinear monomials with coefficient 1 (mod-2 reduced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    field: Field,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    /// Builds a canonical polynomial; duplicate monomials are summed and zero
    /// results dropped. Under F2 coefficients must be integers and monomials
    /// multilinear.
    pub fn new(
        num_vars: usize,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Q)>,
    ) -> Result<Self> {
        if num_vars > super::MAX_VARS {
            return Err(Error::CapacityExceeded {
                what: "polynomial variables",
                requested: num_vars as u128,
                cap: super::MAX_VARS as u128,
            });
        }
        let mut map: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: m.num_vars(),
                });
            }
            if field == Field::F2 {
                if !c.is_integer() {
                    return Err(Error::InvalidArgument(format!(
                        "F2 coefficient {c} is not an integer"
                    )));
                }
                if !m.is_multilinear() {
                    return Err(Error::InvalidArgument(format!(
                        "F2 monomial {m} is not multilinear"
                    )));
                }
            }
            *map.entry(m).or_insert_with(Q::zero) += c;
        }
        if field == Field::F2 {
            for c in map.values_mut() {
                *c = Q::from_integer(c.to_integer().mod_floor(&BigInt::from(2)));
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            num_vars,
            field,
            terms: map,
        })
    }

    pub fn zero(num_vars: usize, field: Field) -> Self {
        Polynomial {
            num_vars,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// `x_i^2 - x_i` over C.
    pub fn field_equation(num_vars: usize, i: usize) -> Self {
        let mut sq = Monomial::one(num_vars).exps().to_vec();
        sq[i] = 2;
        let terms = [
            (Monomial::new(sq), Q::one()),
            (Monomial::var(num_vars, i), -Q::one()),
        ];
        Polynomial {
            num_vars,
            field: Field::C,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn sparsity(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.num_vars))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::max_degree).max().unwrap_or(0)
    }

    /// Largest exponent of each variable over all terms.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.num_vars];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(m.exps()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(Monomial::is_multilinear)
    }

    /// True iff this is exactly `x_i^2 - x_i` for some `i`.
    pub fn as_field_equation(&self) -> Option<usize> {
        if self.terms.len() != 2 {
            return None;
        }
        (0..self.num_vars).find(|&i| *self == Polynomial::field_equation(self.num_vars, i))
    }

    /// Exact value over the rationals.
    pub fn eval(&self, a: &Assignment) -> Result<Q> {
        self.check_len(a)?;
        let point = a.mask();
        Ok(self
            .terms
            .iter()
            .filter(|(m, _)| m.eval_boolean(point))
            .fold(Q::zero(), |acc, (_, c)| acc + c))
    }

    /// Value reduced mod 2; requires integer coefficients.
    pub fn eval_mod2(&self, a: &Assignment) -> Result<u8> {
        let v = self.eval(a)?;
        if !v.is_integer() {
            return Err(Error::InvalidArgument(format!(
                "value {v} is not an integer, no residue mod 2"
            )));
        }
        Ok(v.to_integer().mod_floor(&BigInt::from(2)) == BigInt::one())
            .map(u8::from)
    }

    /// True iff `a` is a root under this polynomial's field.
    pub fn vanishes_at(&self, a: &Assignment) -> Result<bool> {
        match self.field {
            Field::C => Ok(self.eval(a)?.is_zero()),
            Field::F2 => Ok(self.eval_mod2(a)? == 0),
        }
    }

    fn check_len(&self, a: &Assignment) -> Result<()> {
        if a.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: a.len(),
            });
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars, self.field);
        }
        Polynomial {
            num_vars: self.num_vars,
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
        .reduced()
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut terms = self.terms.clone();
        for (m, v) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Q::zero) += v * c;
        }
        terms.retain(|_, v| !v.is_zero());
        Polynomial {
            num_vars: self.num_vars,
            field: self.field,
            terms,
        }
        .reduced()
    }

    /// `m * self`.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            field: self.field,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Same coefficients read over C.
    pub fn to_complex(&self) -> Polynomial {
        Polynomial {
            field: Field::C,
            ..self.clone()
        }
    }

    /// Embeds into `num_vars >= self.num_vars` variables.
    pub fn extended(&self, num_vars: usize) -> Polynomial {
        assert!(num_vars >= self.num_vars);
        Polynomial {
            num_vars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(num_vars), c.clone()))
                .collect(),
        }
    }

    /// Renames variable `i` to `map[i]` in a space of `num_vars` variables.
    pub fn remapped(&self, map: &[usize], num_vars: usize) -> Polynomial {
        assert_eq!(map.len(), self.num_vars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; num_vars];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::new(exps), c.clone())
        });
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            *out.entry(m).or_insert_with(Q::zero) += c;
        }
        out.retain(|_, c: &mut Q| !c.is_zero());
        Polynomial {
            num_vars,
            field: self.field,
            terms: out,
        }
    }

    fn reduced(mut self) -> Polynomial {
        if self.field == Field::F2 {
            let two = BigInt::from(2);
            for c in self.terms.values_mut() {
                *c = Q::from_integer(c.to_integer().mod_floor(&two));
            }
            self.terms.retain(|_, c| !c.is_zero());
        }
        self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
