//! Ideals of R = F_p[x]/P, represented by preimage generators in the ambient
//! ring. Every Groebner computation on a handle sees the generators together
//! with the relations P, so membership, colons and lengths all happen in R.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use super::{normal_form, reduced_groebner_basis, GroebnerBasis};
use crate::error::{Error, Result};
use crate::polyring::{parse_polynomial, Monomial, Polynomial, RingPresentation, TermOrder};

/// A finitely generated ideal of R with per-order Groebner basis caching.
#[derive(Debug)]
pub struct IdealHandle {
    ring: Arc<RingPresentation>,
    generators: Vec<Polynomial>,
    cache: Arc<Mutex<BTreeMap<TermOrder, Arc<GroebnerBasis>>>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        IdealHandle {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            cache: self.cache.clone(),
        }
    }
}

/// Reduced Groebner basis of the relation ideal P, cached on the ring.
pub(crate) fn relation_basis(ring: &Arc<RingPresentation>) -> Result<Arc<GroebnerBasis>> {
    if let Some(gb) = ring.relation_gb.get() {
        return Ok(gb.clone());
    }
    let gb = Arc::new(reduced_groebner_basis(
        ring.relations(),
        TermOrder::Grevlex,
        ring.field(),
        ring.nvars(),
        ring.caps(),
    )?);
    let _ = ring.relation_gb.set(gb);
    Ok(ring.relation_gb.get().expect("just published").clone())
}

/// True when `f` is zero in R, i.e. lies in the relation ideal.
pub fn is_zero_in_ring(ring: &Arc<RingPresentation>, f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if ring.relations().is_empty() {
        return Ok(false);
    }
    let gb = relation_basis(ring)?;
    Ok(normal_form(f, &gb).is_zero())
}

impl IdealHandle {
    pub fn new(ring: Arc<RingPresentation>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.field() != ring.field() || g.nvars() != ring.nvars() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(IdealHandle {
            ring,
            generators,
            cache: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    /// Parses comma-free generator expressions into a handle.
    pub fn from_exprs(ring: &Arc<RingPresentation>, exprs: &[&str]) -> Result<Self> {
        let gens = exprs
            .iter()
            .map(|s| parse_polynomial(s, ring))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(ring.clone(), gens)
    }

    pub fn zero(ring: &Arc<RingPresentation>) -> Self {
        IdealHandle::new(ring.clone(), Vec::new()).expect("empty generator list")
    }

    pub fn principal(ring: &Arc<RingPresentation>, f: Polynomial) -> Result<Self> {
        IdealHandle::new(ring.clone(), vec![f])
    }

    /// The ideal generated by all variables (the maximal ideal m).
    pub fn maximal(ring: &Arc<RingPresentation>) -> Self {
        IdealHandle::new(ring.clone(), ring.variables()).expect("variables live in the ring")
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    fn check_same_ring(&self, other: &IdealHandle) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Reduced Groebner basis of (generators + P) under `order`.
    ///
    /// Computed outside the cache lock and published atomically; concurrent
    /// duplicate computation is accepted.
    pub fn groebner_basis(&self, order: TermOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().expect("cache poisoned").get(&order) {
            return Ok(gb.clone());
        }
        let mut gens = self.generators.clone();
        gens.extend_from_slice(self.ring.relations());
        let gb = Arc::new(reduced_groebner_basis(
            &gens,
            order,
            self.ring.field(),
            self.ring.nvars(),
            self.ring.caps(),
        )?);
        let mut cache = self.cache.lock().expect("cache poisoned");
        Ok(cache.entry(order).or_insert(gb).clone())
    }

    /// Membership test in R: zero normal form against the cached basis.
    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        if f.field() != self.ring.field() || f.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let gb = self.groebner_basis(TermOrder::Grevlex)?;
        Ok(normal_form(f, &gb).is_zero())
    }

    /// Representation-independent equality via reduced bases.
    pub fn is_equal(&self, other: &IdealHandle) -> Result<bool> {
        self.check_same_ring(other)?;
        let a = self.groebner_basis(TermOrder::Grevlex)?;
        let b = other.groebner_basis(TermOrder::Grevlex)?;
        Ok(a.elements() == b.elements())
    }

    /// True when this ideal contains `other`.
    pub fn contains(&self, other: &IdealHandle) -> Result<bool> {
        self.check_same_ring(other)?;
        for g in other.generators() {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        let mut gens = self.generators.clone();
        gens.extend_from_slice(other.generators());
        IdealHandle::new(self.ring.clone(), gens)
    }

    /// Product ideal, generated by pairwise products of generators.
    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in other.generators() {
                let ab = a.mul(b);
                if !ab.is_zero() {
                    gens.push(ab);
                }
            }
        }
        IdealHandle::new(self.ring.clone(), gens)
    }

    /// n-th power of the ideal (n = 0 gives the unit ideal).
    pub fn power(&self, n: u64) -> Result<IdealHandle> {
        let mut acc = IdealHandle::new(self.ring.clone(), vec![self.ring.one()])?;
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// I ∩ J by the auxiliary-variable elimination method.
    pub fn intersection(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        let gens = intersect_spans(
            &self.ring,
            &self.preimage_generators(),
            &other.preimage_generators(),
        )?;
        IdealHandle::new(self.ring.clone(), gens)
    }

    fn preimage_generators(&self) -> Vec<Polynomial> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(self.ring.relations());
        gens
    }

    /// (I : f) = {g in R : g f in I}.
    ///
    /// Computed as the intersection of the preimage with f·S, followed by
    /// exact division of every generator by f; each recovered cofactor is
    /// checked to multiply back into I + P.
    pub fn colon_element(&self, f: &Polynomial) -> Result<IdealHandle> {
        if f.field() != self.ring.field() || f.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        if is_zero_in_ring(&self.ring, f)? {
            return Err(Error::Validation("colon divisor is zero in R".into()));
        }
        let inter = intersect_spans(
            &self.ring,
            &self.preimage_generators(),
            std::slice::from_ref(f),
        )?;
        let my_gb = self.groebner_basis(TermOrder::Grevlex)?;
        let mut quotients = Vec::with_capacity(inter.len());
        for h in &inter {
            let q = divide_exact(h, f).unwrap_or_else(|| {
                panic!("colon: intersection generator not divisible by the divisor")
            });
            assert!(
                normal_form(&q.mul(f), &my_gb).is_zero(),
                "colon: recovered cofactor fails the membership check"
            );
            if !q.is_zero() {
                quotients.push(q);
            }
        }
        IdealHandle::new(self.ring.clone(), quotients)
    }

    /// (I : J) as the intersection of (I : g) over the generators g of J.
    pub fn colon_ideal(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same_ring(other)?;
        let mut nonzero = Vec::new();
        for g in other.generators() {
            if !is_zero_in_ring(&self.ring, g)? {
                nonzero.push(g.clone());
            }
        }
        if nonzero.is_empty() {
            return Err(Error::Validation("colon by the zero ideal".into()));
        }
        let mut acc = self.colon_element(&nonzero[0])?;
        for g in &nonzero[1..] {
            acc = acc.intersection(&self.colon_element(g)?)?;
        }
        Ok(acc)
    }

    /// (I : f^∞) with the smallest n such that (I : f^n) = (I : f^{n+1}).
    pub fn saturation(&self, f: &Polynomial) -> Result<(IdealHandle, u64)> {
        const MAX_STEPS: u64 = 4096;
        let mut current = self.clone();
        let mut n = 0u64;
        loop {
            let next = current.colon_element(f)?;
            if next.is_equal(&current)? {
                return Ok((current, n));
            }
            current = next;
            n += 1;
            if n > MAX_STEPS {
                return Err(Error::ResourceLimit(format!(
                    "saturation did not stabilize within {MAX_STEPS} colon steps"
                )));
            }
        }
    }
}

/// Intersection of two ideal spans in the ambient ring S, via a fresh
/// auxiliary variable w and the elimination order: (w·A + (1-w)·B) ∩ S.
fn intersect_spans(
    ring: &Arc<RingPresentation>,
    a: &[Polynomial],
    b: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let ext = extension_ring(ring)?;
    let w = ext.variable(0);
    let one_minus_w = ext.one().sub(&w);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for g in a {
        gens.push(w.mul(&extend(g)));
    }
    for g in b {
        gens.push(one_minus_w.mul(&extend(g)));
    }
    let gb = reduced_groebner_basis(
        &gens,
        TermOrder::Elimination { split: 1 },
        ext.field(),
        ext.nvars(),
        ring.caps(),
    )?;
    let mut out = Vec::new();
    for g in gb.elements() {
        if let Some(r) = restrict(g, ring) {
            out.push(r);
        }
    }
    Ok(out)
}

fn extension_ring(ring: &Arc<RingPresentation>) -> Result<Arc<RingPresentation>> {
    let mut aux = "_w".to_string();
    while ring.var_names().contains(&aux) {
        aux.push('_');
    }
    let mut names: Vec<&str> = vec![&aux];
    let owned: Vec<String> = ring.var_names().to_vec();
    names.extend(owned.iter().map(|s| s.as_str()));
    Ok(RingPresentation::polynomial_ring(ring.characteristic(), &names)?.with_caps(ring.caps()))
}

fn extend(f: &Polynomial) -> Polynomial {
    let field = f.field();
    let mut out = Polynomial::zero(field, f.nvars() + 1);
    for (m, c) in f.terms() {
        let mut exps = vec![0u64];
        exps.extend_from_slice(m.exponents());
        out = out.add(&Polynomial::from_term(field, Monomial::new(exps), c));
    }
    out
}

/// Drops the auxiliary variable; `None` when the polynomial involves it.
fn restrict(f: &Polynomial, ring: &Arc<RingPresentation>) -> Option<Polynomial> {
    let mut out = Polynomial::zero(ring.field(), ring.nvars());
    for (m, c) in f.terms() {
        if m.exponent(0) != 0 {
            return None;
        }
        let exps = m.exponents()[1..].to_vec();
        out = out.add(&Polynomial::from_term(ring.field(), Monomial::new(exps), c));
    }
    Some(out)
}

/// Quotient of `h` by `f` when the division leaves no remainder.
fn divide_exact(h: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    let order = TermOrder::Grevlex;
    let field = h.field();
    let (f_lm, f_lc) = f.leading_term(order)?;
    let f_lc_inv = field.inv(f_lc).ok()?;
    let mut quotient = Polynomial::zero(field, h.nvars());
    let mut work = h.clone();
    while let Some((lm, lc)) = work.leading_term(order) {
        let q_m = Monomial::try_div(lm, f_lm)?;
        let q_c = field.mul(lc, f_lc_inv);
        let piece = Polynomial::from_term(field, q_m, q_c);
        work = work.sub(&piece.mul(f));
        quotient = quotient.add(&piece);
    }
    Some(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Arc<RingPresentation> {
        RingPresentation::polynomial_ring(p, vars).unwrap()
    }

    fn a1(p: u64) -> Arc<RingPresentation> {
        let ambient = ring(p, &["x", "y", "z"]);
        let rel = parse_polynomial("x*y - z^2", &ambient).unwrap();
        ambient.with_relations(vec![rel]).unwrap()
    }

    fn ideal(r: &Arc<RingPresentation>, gens: &[&str]) -> IdealHandle {
        IdealHandle::from_exprs(r, gens).unwrap()
    }

    #[test]
    fn sum_and_equality() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x"]);
        let j = ideal(&r, &["y"]);
        let s = i.sum(&j).unwrap();
        assert!(s.is_equal(&ideal(&r, &["x", "y"])).unwrap());
        // (x, y) = (y, x + y).
        assert!(ideal(&r, &["x", "y"])
            .is_equal(&ideal(&r, &["y", "x + y"]))
            .unwrap());
    }

    #[test]
    fn membership_over_f2() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x + y"]);
        let f = parse_polynomial("x^2 + y^2", &r).unwrap();
        assert!(i.member(&f).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = ring(2, &["x", "y"]);
        let xy = ideal(&r, &["x"]).intersection(&ideal(&r, &["y"])).unwrap();
        assert!(xy.is_equal(&ideal(&r, &["x*y"])).unwrap());

        // (x^2, y) ∩ (x) = (x^2, x y), checked by double inclusion.
        let lhs = ideal(&r, &["x^2", "y"])
            .intersection(&ideal(&r, &["x"]))
            .unwrap();
        let rhs = ideal(&r, &["x^2", "x*y"]);
        assert!(lhs.is_equal(&rhs).unwrap());

        // Idempotence.
        let i = ideal(&r, &["x^2", "y"]);
        assert!(i.intersection(&i).unwrap().is_equal(&i).unwrap());
    }

    #[test]
    fn colon_monomial_cases() {
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, &["x^2", "y^2"]);
        let f = parse_polynomial("x*y", &r).unwrap();
        assert!(i
            .colon_element(&f)
            .unwrap()
            .is_equal(&ideal(&r, &["x", "y"]))
            .unwrap());

        let i = ideal(&r, &["x^3", "y^3"]);
        let f = parse_polynomial("x*y^2", &r).unwrap();
        assert!(i
            .colon_element(&f)
            .unwrap()
            .is_equal(&ideal(&r, &["x^2", "y"]))
            .unwrap());
    }

    #[test]
    fn colon_in_quadric_quotient() {
        // In R = F_3[x,y,z]/(xy - z^2): ((x, y) : z) = (x, y, z), because
        // z * z = xy lies in (x, y) while z itself does not.
        let r = a1(3);
        let i = ideal(&r, &["x", "y"]);
        let z = parse_polynomial("z", &r).unwrap();
        assert!(!i.member(&z).unwrap());
        assert!(i.member(&z.mul(&z)).unwrap());
        let c = i.colon_element(&z).unwrap();
        assert!(c.is_equal(&ideal(&r, &["x", "y", "z"])).unwrap());
    }

    #[test]
    fn colon_ideal_cases() {
        let r = ring(2, &["x", "y"]);
        // (I : R) = I.
        let i = ideal(&r, &["x^2*y^2"]);
        let whole = ideal(&r, &["1"]);
        assert!(i.colon_ideal(&whole).unwrap().is_equal(&i).unwrap());

        // ((x^2 y^2) : (x, y)) = (x y^2) ∩ (x^2 y) = (x^2 y^2): the maximal
        // ideal is not associated to a principal monomial ideal. Membership
        // oracle: x^2 y * x = x^3 y is not a multiple of x^2 y^2.
        let m = ideal(&r, &["x", "y"]);
        let c = i.colon_ideal(&m).unwrap();
        assert!(c.is_equal(&i).unwrap());
        let probe = parse_polynomial("x^2*y", &r).unwrap();
        assert!(!c.member(&probe).unwrap());

        // ((x) : (x)) = (1).
        let x = ideal(&r, &["x"]);
        assert!(x.colon_ideal(&x).unwrap().is_equal(&whole).unwrap());
    }

    #[test]
    fn colon_rejects_zero_divisor_argument() {
        let r = a1(3);
        let i = ideal(&r, &["x"]);
        let zero_in_r = parse_polynomial("x*y - z^2", &r).unwrap();
        assert!(i.colon_element(&zero_in_r).is_err());
        let j = IdealHandle::new(r.clone(), vec![zero_in_r]).unwrap();
        assert!(i.colon_ideal(&j).is_err());
    }

    #[test]
    fn saturation_cases() {
        let r = ring(3, &["x", "y"]);
        let y = parse_polynomial("y", &r).unwrap();

        let (s, n) = ideal(&r, &["x^2*y"]).saturation(&y).unwrap();
        assert!(s.is_equal(&ideal(&r, &["x^2"])).unwrap());
        assert_eq!(n, 1);

        let x = parse_polynomial("x", &r).unwrap();
        let (s, n) = ideal(&r, &["x"]).saturation(&x).unwrap();
        assert!(s.is_equal(&ideal(&r, &["1"])).unwrap());
        assert_eq!(n, 1);

        // Hand-iterated monomial colon chain stabilizes after four steps:
        // (x^3 y, x y^3), (x^3, x y^2), (x^3, x y), (x^3, x) = (x).
        let (s, n) = ideal(&r, &["x^3*y^2", "x*y^4"]).saturation(&y).unwrap();
        assert!(s.is_equal(&ideal(&r, &["x"])).unwrap());
        assert_eq!(n, 4);

        // Already saturated: n = 0.
        let (s, n) = ideal(&r, &["x"]).saturation(&y).unwrap();
        assert!(s.is_equal(&ideal(&r, &["x"])).unwrap());
        assert_eq!(n, 0);
    }

    #[test]
    fn ring_mismatch_detected() {
        let r1 = ring(2, &["x", "y"]);
        let r2 = ring(3, &["x", "y"]);
        let i = ideal(&r1, &["x"]);
        let j = ideal(&r2, &["x"]);
        assert_eq!(i.sum(&j).unwrap_err(), Error::RingMismatch);
        assert_eq!(i.is_equal(&j).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn zero_in_ring_detection() {
        let r = a1(3);
        let f = parse_polynomial("z^2 - x*y", &r).unwrap();
        assert!(is_zero_in_ring(&r, &f).unwrap());
        let g = parse_polynomial("z^2", &r).unwrap();
        assert!(!is_zero_in_ring(&r, &g).unwrap());
    }
}
