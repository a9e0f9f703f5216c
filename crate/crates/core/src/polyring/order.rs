//! Term orders on monomials.

use std::cmp::Ordering;

use super::monomial::Monomial;
use crate::error::Result;

/// A multiplicative total order on monomials with 1 minimal.
///
/// `Elimination { split }` compares the block of variables with index
/// `< split` first (by grevlex), breaking ties on the remaining block; a
/// Groebner basis under it eliminates the leading block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermOrder {
    Lex,
    Grevlex,
    Elimination { split: usize },
}

impl TermOrder {
    /// Total-order comparison; errors on arity mismatch.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        a.check_arity(b)?;
        Ok(self.cmp_unchecked(a, b))
    }

    /// Comparison for internal callers that already guarantee equal arity.
    pub fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => cmp_lex(a.exponents(), b.exponents()),
            TermOrder::Grevlex => cmp_grevlex(a.exponents(), b.exponents()),
            TermOrder::Elimination { split } => {
                let s = (*split).min(a.arity());
                cmp_grevlex(&a.exponents()[..s], &b.exponents()[..s])
                    .then_with(|| cmp_grevlex(&a.exponents()[s..], &b.exponents()[s..]))
            }
        }
    }
}

fn cmp_lex(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &[u64], b: &[u64]) -> Ordering {
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: the smaller exponent in the last differing variable wins.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}
