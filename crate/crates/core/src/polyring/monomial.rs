//! Exponent vectors.

use crate::error::{Error, Result};

/// Largest exponent the tool accepts in any single variable.
pub const MAX_EXPONENT: u64 = 1 << 20;

/// A monomial in a fixed ambient variable set, stored as its exponent vector.
///
/// The derived `Ord` (lexicographic on the exponent vector) is only a storage
/// order used for canonical map keys; term-order comparisons go through
/// [`TermOrder`](crate::polyring::TermOrder).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    /// The single variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u64 {
        self.exps[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Raises to the `k`-th power (scales every exponent).
    pub fn pow(&self, k: u64) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Exact quotient `other / self`; `None` when not divisible.
    pub fn try_div(other: &Monomial, divisor: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(other.arity(), divisor.arity());
        let mut exps = Vec::with_capacity(other.arity());
        for (a, b) in other.exps.iter().zip(&divisor.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// True when the monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn check_arity(&self, other: &Monomial) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(())
    }

    /// Guards a single exponent against the supported maximum.
    pub fn check_exponent(value: u64) -> Result<u64> {
        if value > MAX_EXPONENT {
            Err(Error::ExponentOverflow {
                value,
                max: MAX_EXPONENT,
            })
        } else {
            Ok(value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotients() {
        let m = Monomial::new(vec![2, 1, 0]);
        let n = Monomial::new(vec![3, 1, 2]);
        assert!(m.divides(&n));
        assert!(!n.divides(&m));
        assert_eq!(
            Monomial::try_div(&n, &m).unwrap(),
            Monomial::new(vec![1, 0, 2])
        );
        assert_eq!(Monomial::try_div(&m, &n), None);
    }

    #[test]
    fn lcm_and_coprime() {
        let m = Monomial::new(vec![2, 0]);
        let n = Monomial::new(vec![0, 3]);
        assert!(m.coprime(&n));
        assert_eq!(m.lcm(&n), Monomial::new(vec![2, 3]));
    }
}
