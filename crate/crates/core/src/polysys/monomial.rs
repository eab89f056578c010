use std::cmp::Ordering;
use std::fmt;

/// A monomial `x_1^{e_1} ... x_n^{e_n}` stored as its exponent vector.
///
/// The order is ascending total degree, ties broken by the exponent vector
/// read as an integer in base `d + 1` with `x_1` as the least significant
/// digit. For exponents bounded by `d` that comparison does not depend on
/// `d`, so it is a single order shared by every Macaulay flavor. Restricted to
/// multilinear monomials it orders by (degree, bitmask).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars],
        }
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Multilinear monomial with `x_i` present iff bit `i` of `mask` is set.
    pub fn from_mask(num_vars: usize, mask: u64) -> Self {
        Monomial {
            exps: (0..num_vars).map(|i| ((mask >> i) & 1) as u32).collect(),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn max_degree(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Canonical bitmask, defined only for multilinear monomials.
    pub fn bitmask(&self) -> Option<u64> {
        if self.is_multilinear() {
            Some(self.support_mask())
        } else {
            None
        }
    }

    /// Bit `i` set iff `x_i` has a nonzero exponent. Valid for any monomial.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// The multilinear image: every exponent clamped to at most one.
    pub fn multilinearize(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Value at a 0/1 point given as a bitmask.
    pub fn eval_boolean(&self, point: u64) -> bool {
        let s = self.support_mask();
        s & point == s
    }

    /// Same monomial over a larger variable set, new variables with exponent 0.
    pub fn extended(&self, num_vars: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(num_vars, 0);
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials in `num_vars` variables with every exponent at most `max_exp`,
/// in canonical order.
pub fn monomials_max_degree(num_vars: usize, max_exp: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; num_vars];
    loop {
        out.push(Monomial::new(exps.clone()));
        let mut i = 0;
        loop {
            if i == num_vars {
                out.sort();
                return out;
            }
            if exps[i] < max_exp {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// All monomials in `num_vars` variables of total degree at most `d`, in
/// canonical order.
pub fn monomials_total_degree(num_vars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == exps.len() {
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    let mut exps = vec![0; num_vars];
    rec(0, d, &mut exps, &mut out);
    out.sort();
    out
}
