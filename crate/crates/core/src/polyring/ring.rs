//! Ring presentations R = F_p[x_1..x_n]/P.
//!
//! All ideal arithmetic happens on preimages in the ambient polynomial ring,
//! so a presentation is just the prime, the ordered variable list and the
//! relation generators, plus caches filled lazily by the Groebner and
//! dimension kernels.

use std::sync::{Arc, OnceLock};

use super::field::PrimeField;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;

/// Resource caps threaded through every Groebner computation on this ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceCaps {
    /// Maximum number of basis elements before the run is aborted.
    pub max_basis: usize,
    /// Maximum total degree of any intermediate polynomial.
    pub max_degree: u64,
}

impl Default for ResourceCaps {
    fn default() -> Self {
        ResourceCaps {
            max_basis: 20_000,
            max_degree: 1 << 20,
        }
    }
}

/// A presentation of the local ring R = (F_p[vars]/P) localized at the
/// ideal generated by all variables.
#[derive(Debug)]
pub struct RingPresentation {
    field: PrimeField,
    vars: Vec<String>,
    relations: Vec<Polynomial>,
    caps: ResourceCaps,
    pub(crate) relation_gb: OnceLock<Arc<GroebnerBasis>>,
    pub(crate) dimension: OnceLock<usize>,
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.relations == other.relations
    }
}

impl Eq for RingPresentation {}

impl RingPresentation {
    /// The polynomial ring F_p[vars] with no relations.
    pub fn polynomial_ring(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(Error::Validation("variable list is empty".into()));
        }
        let mut names = Vec::with_capacity(vars.len());
        for v in vars {
            if !is_identifier(v) {
                return Err(Error::Validation(format!("invalid variable name '{v}'")));
            }
            if names.contains(&v.to_string()) {
                return Err(Error::Validation(format!("duplicate variable '{v}'")));
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(RingPresentation {
            field,
            vars: names,
            relations: Vec::new(),
            caps: ResourceCaps::default(),
            relation_gb: OnceLock::new(),
            dimension: OnceLock::new(),
        }))
    }

    /// Imposes relation generators, producing the quotient presentation.
    pub fn with_relations(self: &Arc<Self>, relations: Vec<Polynomial>) -> Result<Arc<Self>> {
        for r in &relations {
            if r.field() != self.field || r.nvars() != self.vars.len() {
                return Err(Error::RingMismatch);
            }
        }
        let relations: Vec<Polynomial> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Arc::new(RingPresentation {
            field: self.field,
            vars: self.vars.clone(),
            relations,
            caps: self.caps,
            relation_gb: OnceLock::new(),
            dimension: OnceLock::new(),
        }))
    }

    /// Replaces the resource caps (caches are dropped).
    pub fn with_caps(self: &Arc<Self>, caps: ResourceCaps) -> Arc<Self> {
        Arc::new(RingPresentation {
            field: self.field,
            vars: self.vars.clone(),
            relations: self.relations.clone(),
            caps,
            relation_gb: OnceLock::new(),
            dimension: OnceLock::new(),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.modulus()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn caps(&self) -> ResourceCaps {
        self.caps
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field, self.nvars())
    }

    pub fn variable(&self, i: usize) -> Polynomial {
        Polynomial::variable(self.field, self.nvars(), i)
    }

    /// All variables as polynomials, in declaration order.
    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.variable(i)).collect()
    }

    pub fn render(&self, poly: &Polynomial) -> String {
        poly.render(&self.vars)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(RingPresentation::polynomial_ring(6, &["x"]).is_err());
        assert!(RingPresentation::polynomial_ring(3, &[]).is_err());
        assert!(RingPresentation::polynomial_ring(3, &["x", "x"]).is_err());
        assert!(RingPresentation::polynomial_ring(3, &["2x"]).is_err());
        let r = RingPresentation::polynomial_ring(3, &["x", "y"]).unwrap();
        assert_eq!(r.nvars(), 2);
        assert_eq!(r.var_index("y"), Some(1));
        assert_eq!(r.var_index("z"), None);
    }
}
