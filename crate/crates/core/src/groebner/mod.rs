//! Buchberger's algorithm and multivariate division over F_p.
//!
//! The engine works on plain generator lists in the ambient polynomial ring;
//! quotient-ring semantics enter only through [`IdealHandle`], which appends
//! the ring relations to every generator set it hands down.

mod ideal;

pub use ideal::{is_zero_in_ring, IdealHandle};

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, PrimeField, ResourceCaps, TermOrder};

/// A reduced Groebner basis: monic elements, no term of any element divisible
/// by the leading term of another, sorted by ascending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: TermOrder,
    field: PrimeField,
    nvars: usize,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn contains_one(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].total_degree() == 0
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| {
                g.leading_term(self.order)
                    .expect("basis elements nonzero")
                    .0
                    .clone()
            })
            .collect()
    }

    /// Checks the defining properties (used by tests; quadratic in the basis).
    pub fn is_reduced_groebner_basis(&self) -> bool {
        let caps = UNBOUNDED;
        for (i, g) in self.elements.iter().enumerate() {
            if g.is_zero() {
                return false;
            }
            let (_, lc) = g.leading_term(self.order).unwrap();
            if lc != 1 {
                return false;
            }
            for (j, h) in self.elements.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (other_lm, _) = h.leading_term(self.order).unwrap();
                for (m, _) in g.terms() {
                    if other_lm.divides(m) {
                        return false;
                    }
                }
            }
        }
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j], self.order);
                match reduce_full(&s, &self.elements, self.order, caps) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Division terminates by the well-ordering, so the remainder needs no caps.
const UNBOUNDED: ResourceCaps = ResourceCaps {
    max_basis: usize::MAX,
    max_degree: u64::MAX,
};

/// Remainder of full multivariate division of `f` by the basis.
///
/// No term of the result is divisible by any leading term of `gb`, and
/// `f - result` lies in the ideal spanned by `gb`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    assert_eq!(f.field(), gb.field, "normal_form: field mismatch");
    assert_eq!(f.nvars(), gb.nvars, "normal_form: arity mismatch");
    reduce_full(f, &gb.elements, gb.order, UNBOUNDED)
        .expect("unbounded reduction cannot hit a resource cap")
}

/// Computes the reduced Groebner basis of the ideal spanned by `gens`.
///
/// Deterministic: pairs are processed in normal-selection order (minimal lcm
/// degree first) and the reduced basis is unique for the ideal and order.
pub fn reduced_groebner_basis(
    gens: &[Polynomial],
    order: TermOrder,
    field: PrimeField,
    nvars: usize,
    caps: ResourceCaps,
) -> Result<GroebnerBasis> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        assert_eq!(g.field(), field, "generator field mismatch");
        assert_eq!(g.nvars(), nvars, "generator arity mismatch");
        if g.total_degree() > caps.max_degree {
            return Err(Error::ResourceLimit(format!(
                "generator degree {} exceeds cap {}",
                g.total_degree(),
                caps.max_degree
            )));
        }
        if !g.is_zero() {
            basis.push(make_monic(g, order));
        }
    }

    // Pair queue keyed by (lcm degree, lcm, i, j): BTreeSet pops the normal
    // selection deterministically.
    let mut pending: BTreeSet<(u64, Vec<u64>, usize, usize)> = BTreeSet::new();
    let mut pending_pairs: HashSet<(usize, usize)> = HashSet::new();
    let add_pair = |pending: &mut BTreeSet<(u64, Vec<u64>, usize, usize)>,
                    pending_pairs: &mut HashSet<(usize, usize)>,
                    basis: &[Polynomial],
                    i: usize,
                    j: usize| {
        let lm_i = basis[i].leading_term(order).unwrap().0;
        let lm_j = basis[j].leading_term(order).unwrap().0;
        let lcm = lm_i.lcm(lm_j);
        pending.insert((lcm.total_degree(), lcm.exponents().to_vec(), i, j));
        pending_pairs.insert((i, j));
    };

    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            add_pair(&mut pending, &mut pending_pairs, &basis, i, j);
        }
    }

    while let Some(entry) = pending.iter().next().cloned() {
        pending.remove(&entry);
        let (_, lcm_exps, i, j) = entry;
        pending_pairs.remove(&(i, j));
        let lcm = Monomial::new(lcm_exps);

        let lm_i = basis[i].leading_term(order).unwrap().0;
        let lm_j = basis[j].leading_term(order).unwrap().0;

        // Buchberger's first criterion: coprime leading monomials.
        if lm_i.coprime(lm_j) {
            continue;
        }
        // Buchberger's second (chain) criterion.
        let mut skip = false;
        for (k, h) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let lm_k = h.leading_term(order).unwrap().0;
            if lm_k.divides(&lcm)
                && !pending_pairs.contains(&pair_key(i, k))
                && !pending_pairs.contains(&pair_key(j, k))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_full(&s, &basis, order, caps)?;
        if r.is_zero() {
            continue;
        }
        if r.total_degree() > caps.max_degree {
            return Err(Error::ResourceLimit(format!(
                "basis element degree {} exceeds cap {}",
                r.total_degree(),
                caps.max_degree
            )));
        }
        if basis.len() + 1 > caps.max_basis {
            return Err(Error::ResourceLimit(format!(
                "basis size exceeds cap {}",
                caps.max_basis
            )));
        }
        basis.push(make_monic(&r, order));
        let m = basis.len() - 1;
        for k in 0..m {
            add_pair(&mut pending, &mut pending_pairs, &basis, k, m);
        }
    }

    Ok(inter_reduce(basis, order, field, nvars))
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn make_monic(f: &Polynomial, order: TermOrder) -> Polynomial {
    let (_, lc) = f.leading_term(order).expect("monic of zero polynomial");
    if lc == 1 {
        return f.clone();
    }
    let inv = f.field().inv(lc).expect("nonzero leading coefficient");
    f.scale(inv)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Polynomial {
    let (lm_f, lc_f) = f.leading_term(order).unwrap();
    let (lm_g, lc_g) = g.leading_term(order).unwrap();
    let lcm = lm_f.lcm(lm_g);
    let field = f.field();
    let mf = Monomial::try_div(&lcm, lm_f).unwrap();
    let mg = Monomial::try_div(&lcm, lm_g).unwrap();
    let cf = field.inv(lc_f).unwrap();
    let cg = field.inv(lc_g).unwrap();
    f.mul_term(&mf, cf).sub(&g.mul_term(&mg, cg))
}

/// Full reduction: every term of the result escapes every leading term.
fn reduce_full(
    f: &Polynomial,
    basis: &[Polynomial],
    order: TermOrder,
    caps: ResourceCaps,
) -> Result<Polynomial> {
    let field = f.field();
    let mut remainder = Polynomial::zero(field, f.nvars());
    let mut work = f.clone();
    'outer: while let Some((lm, lc)) = work.leading_term(order) {
        let lm = lm.clone();
        for g in basis {
            let (g_lm, g_lc) = match g.leading_term(order) {
                Some(t) => t,
                None => continue,
            };
            if let Some(q) = Monomial::try_div(&lm, g_lm) {
                if q.total_degree() + g.total_degree() > caps.max_degree {
                    return Err(Error::ResourceLimit(format!(
                        "reduction degree exceeds cap {}",
                        caps.max_degree
                    )));
                }
                let factor = field.mul(lc, field.inv(g_lc).unwrap());
                work = work.sub(&g.mul_term(&q, factor));
                continue 'outer;
            }
        }
        // Irreducible leading term: shift it to the remainder.
        remainder = remainder.add(&Polynomial::from_term(field, lm.clone(), lc));
        work = work.sub(&Polynomial::from_term(field, lm, lc));
    }
    Ok(remainder)
}

/// Minimalizes and tail-reduces a Groebner basis into the reduced basis.
fn inter_reduce(
    basis: Vec<Polynomial>,
    order: TermOrder,
    field: PrimeField,
    nvars: usize,
) -> GroebnerBasis {
    // Minimal generating set of the leading-term ideal: keep an element only
    // if no other kept element's leading monomial divides its own.
    let mut sorted = basis;
    sorted.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0;
        let lb = b.leading_term(order).unwrap().0;
        order.cmp_unchecked(la, lb)
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in sorted {
        let lm = g.leading_term(order).unwrap().0.clone();
        if !minimal
            .iter()
            .any(|h| h.leading_term(order).unwrap().0.divides(&lm))
        {
            minimal.push(g);
        }
    }
    // Tail-reduce each element against the others; leading terms are stable.
    let snapshot = minimal.clone();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in snapshot.iter().enumerate() {
        let others: Vec<Polynomial> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = reduce_full(g, &others, order, UNBOUNDED)
            .expect("unbounded reduction cannot hit a resource cap");
        if !r.is_zero() {
            reduced.push(make_monic(&r, order));
        }
    }
    reduced.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0;
        let lb = b.leading_term(order).unwrap().0;
        order.cmp_unchecked(la, lb)
    });
    GroebnerBasis {
        order,
        field,
        nvars,
        elements: reduced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, RingPresentation};
    use std::sync::Arc;

    fn ring(p: u64, vars: &[&str]) -> Arc<RingPresentation> {
        RingPresentation::polynomial_ring(p, vars).unwrap()
    }

    fn gb_of(r: &RingPresentation, gens: &[&str], order: TermOrder) -> GroebnerBasis {
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(s, r).unwrap())
            .collect();
        reduced_groebner_basis(&polys, order, r.field(), r.nvars(), r.caps()).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(3, &["x", "y"]);
        let gb = gb_of(&r, &["x^2", "y^2"], TermOrder::Grevlex);
        assert_eq!(gb.elements().len(), 2);
        assert!(gb.is_reduced_groebner_basis());
        let rendered: Vec<String> = gb.elements().iter().map(|g| r.render(g)).collect();
        assert_eq!(rendered, vec!["y^2", "x^2"]);
    }

    #[test]
    fn lex_example_with_s_polynomial() {
        // Hand reduction: S(xy - z^2, x) = y*x - (xy - z^2) = z^2, so the
        // reduced basis under lex x > y > z is {x, z^2}.
        let r = ring(5, &["x", "y", "z"]);
        let gb = gb_of(&r, &["x*y - z^2", "x"], TermOrder::Lex);
        let rendered: Vec<String> = gb.elements().iter().map(|g| r.render(g)).collect();
        assert_eq!(rendered, vec!["z^2", "x"]);
        assert!(gb.is_reduced_groebner_basis());
    }

    #[test]
    fn zero_ideal() {
        let r = ring(2, &["x"]);
        let gb = reduced_groebner_basis(&[], TermOrder::Grevlex, r.field(), 1, r.caps()).unwrap();
        assert!(gb.is_empty());
        let zero = r.zero();
        let gb2 =
            reduced_groebner_basis(&[zero], TermOrder::Grevlex, r.field(), 1, r.caps()).unwrap();
        assert!(gb2.is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(7, &["x", "y"]);
        let gb = gb_of(&r, &["x^2", "y^2"], TermOrder::Grevlex);
        let f = parse_polynomial("x^2*y", &r).unwrap();
        assert!(normal_form(&f, &gb).is_zero());
        let g = parse_polynomial("x*y + y", &r).unwrap();
        assert_eq!(normal_form(&g, &gb), g);
    }

    #[test]
    fn membership_in_twisted_quadric() {
        let r = ring(3, &["x", "y", "z"]);
        let gb = gb_of(&r, &["x*y - z^2"], TermOrder::Grevlex);
        let f = parse_polynomial("z^2 - x*y", &r).unwrap();
        assert!(normal_form(&f, &gb).is_zero());
        let g = parse_polynomial("z^2", &r).unwrap();
        assert!(!normal_form(&g, &gb).is_zero());
    }

    #[test]
    fn determinism_byte_identical() {
        let r = ring(5, &["x", "y", "z"]);
        let gens = ["x^2*y - z", "y^3 - x", "x*z - y^2"];
        let a = gb_of(&r, &gens, TermOrder::Grevlex);
        let b = gb_of(&r, &gens, TermOrder::Grevlex);
        assert_eq!(a.elements(), b.elements());
        let ra: Vec<String> = a.elements().iter().map(|g| r.render(g)).collect();
        let rb: Vec<String> = b.elements().iter().map(|g| r.render(g)).collect();
        assert_eq!(ra, rb);
    }

    #[test]
    fn cyclic3_is_groebner() {
        let r = ring(7, &["a", "b", "c"]);
        let gb = gb_of(
            &r,
            &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"],
            TermOrder::Grevlex,
        );
        assert!(gb.is_reduced_groebner_basis());
    }

    #[test]
    fn degree_cap_triggers() {
        let r = ring(2, &["x", "y"]).with_caps(crate::polyring::ResourceCaps {
            max_basis: 20_000,
            max_degree: 3,
        });
        let gens = vec![
            parse_polynomial("x^5", &r).unwrap(),
            parse_polynomial("x*y - y^2", &r).unwrap(),
        ];
        let err = reduced_groebner_basis(&gens, TermOrder::Grevlex, r.field(), 2, r.caps());
        assert!(matches!(err, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn basis_cap_triggers() {
        let r = ring(3, &["x", "y", "z"]).with_caps(crate::polyring::ResourceCaps {
            max_basis: 3,
            max_degree: 1 << 20,
        });
        let gens = vec![
            parse_polynomial("x*y - z^2", &r).unwrap(),
            parse_polynomial("x^3", &r).unwrap(),
            parse_polynomial("y^3", &r).unwrap(),
        ];
        let err = reduced_groebner_basis(&gens, TermOrder::Grevlex, r.field(), 3, r.caps());
        assert!(matches!(err, Err(Error::ResourceLimit(_))));
    }
}
