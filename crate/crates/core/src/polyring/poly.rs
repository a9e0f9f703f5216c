//! Sparse multivariate polynomials over F_p.
//!
//! Terms live in a `BTreeMap` keyed by the monomial's exponent vector, so a
//! polynomial has exactly one representation and iteration order is fixed.
//! Zero coefficients are never stored; the zero polynomial has no terms.

use std::collections::BTreeMap;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::TermOrder;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        let mut p = Self::zero(field, nvars);
        let c = field.reduce(c);
        if c != 0 {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn variable(field: PrimeField, nvars: usize, i: usize) -> Self {
        Self::from_term(field, Monomial::var(nvars, i), 1)
    }

    pub fn from_term(field: PrimeField, monomial: Monomial, coeff: u64) -> Self {
        let nvars = monomial.arity();
        let mut p = Self::zero(field, nvars);
        let c = field.reduce(coeff);
        if c != 0 {
            p.terms.insert(monomial, c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (ascending exponent vector).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert_eq!(
            self.field, other.field,
            "polynomials over different prime fields"
        );
        assert_eq!(self.nvars, other.nvars, "polynomials with different arity");
    }

    fn add_term_in_place(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term_in_place(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term_in_place(m.clone(), self.field.neg(c));
        }
        out
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Polynomial {
        let c = self.field.reduce(c);
        let mut out = Self::zero(self.field, self.nvars);
        if c == 0 {
            return out;
        }
        for (mm, cc) in self.terms() {
            out.terms.insert(mm.mul(m), self.field.mul(cc, c));
        }
        out
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut out = Self::zero(self.field, self.nvars);
        for (m, c) in self.terms() {
            for (mm, cc) in other.terms() {
                out.add_term_in_place(m.mul(mm), self.field.mul(c, cc));
            }
        }
        out
    }

    /// `self^n` by repeated squaring, with the term-wise shortcut when `n` is
    /// a power of the characteristic (both routes agree over F_p).
    pub fn pow(&self, n: u64) -> Polynomial {
        if n == 0 {
            return Self::one(self.field, self.nvars);
        }
        if self.is_power_of_char(n) {
            return self.frobenius_power(n);
        }
        let mut acc = Self::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn is_power_of_char(&self, n: u64) -> bool {
        let p = self.field.modulus();
        let mut q = 1u64;
        loop {
            if q == n {
                return true;
            }
            match q.checked_mul(p) {
                Some(next) if next <= n => q = next,
                _ => return false,
            }
        }
    }

    /// Term-wise `q`-th power; valid only when `q` is a power of `p`.
    fn frobenius_power(&self, q: u64) -> Polynomial {
        // Coefficients are fixed by Frobenius since c^p = c in F_p.
        let mut out = Self::zero(self.field, self.nvars);
        for (m, c) in self.terms() {
            out.terms.insert(m.pow(q), c);
        }
        out
    }

    /// Leading term under `order`, or `None` for the zero polynomial.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, u64)> {
        self.terms()
            .max_by(|(a, _), (b, _)| order.cmp_unchecked(a, b))
    }

    /// Renders terms in descending grevlex order with explicit `^` and `*`.
    ///
    /// Coefficients are the canonical representatives in `[1, p)`, so output
    /// uses only `+`. `parse_polynomial` inverts this exactly.
    pub fn render(&self, var_names: &[String]) -> String {
        assert_eq!(var_names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| TermOrder::Grevlex.cmp_unchecked(b, a));
        let mut parts = Vec::with_capacity(keys.len());
        for m in keys {
            let c = self.terms[m];
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_names[i].clone()),
                    _ => factors.push(format!("{}^{}", var_names[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}
