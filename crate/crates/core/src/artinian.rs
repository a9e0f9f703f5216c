//! Colengths, Krull dimension, socles and irreducibility.
//!
//! Lengths are F_p-dimensions counted through standard monomials of a
//! Groebner basis; `length_dense_oracle` recomputes them by row reduction on
//! truncated multiplication tables, independent of any Groebner data. The
//! paper's local lengths agree with these affine counts because every
//! length-bearing ideal here is primary to the ideal of all variables.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{normal_form, IdealHandle};
use crate::polyring::{Monomial, Polynomial, RingPresentation, TermOrder};

/// Colength of an ideal: finite count or a non-Artinian flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

/// The monomials outside the leading-term ideal, with the order used.
#[derive(Debug, Clone)]
pub struct StandardMonomialBasis {
    pub order: TermOrder,
    pub monomials: Vec<Monomial>,
}

/// Krull dimension of S/(I + P), combinatorially from the leading-term ideal:
/// the largest variable subset containing no generator's support.
pub fn krull_dimension(ideal: &IdealHandle) -> Result<usize> {
    let gb = ideal.groebner_basis(TermOrder::Grevlex)?;
    let nvars = ideal.ring().nvars();
    if gb.contains_one() {
        // Convention: the empty ring gets dimension 0 here; callers that
        // care (length, socle) see colength 0 separately.
        return Ok(0);
    }
    if nvars > 20 {
        return Err(Error::ResourceLimit(format!(
            "dimension by subset enumeration supports at most 20 variables, got {nvars}"
        )));
    }
    let supports: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            let mut mask = 0u32;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect();
    let mut best = 0usize;
    for subset in 0u32..(1 << nvars) {
        if supports.iter().any(|&s| s & !subset == 0) {
            continue;
        }
        best = best.max(subset.count_ones() as usize);
    }
    Ok(best)
}

/// Dimension of the ring itself (the zero ideal), cached on the presentation.
pub fn ring_dimension(ring: &Arc<RingPresentation>) -> Result<usize> {
    if let Some(&d) = ring.dimension.get() {
        return Ok(d);
    }
    let d = krull_dimension(&IdealHandle::zero(ring))?;
    let _ = ring.dimension.set(d);
    Ok(d)
}

/// Per-variable staircase bounds: the minimal pure-power exponents in the
/// leading-term ideal. `None` when some variable has no pure power (the
/// quotient is not Artinian).
fn staircase_bounds(leads: &[Monomial], nvars: usize) -> Option<Vec<u64>> {
    let mut bounds = vec![u64::MAX; nvars];
    for m in leads {
        let support: Vec<usize> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        match support.len() {
            0 => bounds.iter_mut().for_each(|b| *b = 0),
            1 => {
                let i = support[0];
                bounds[i] = bounds[i].min(m.exponent(i));
            }
            _ => {}
        }
    }
    if bounds.contains(&u64::MAX) {
        None
    } else {
        Some(bounds)
    }
}

/// Counts the monomials in the staircase box not divisible by any lead.
///
/// Recursion over variables keeps only the generators whose prefix already
/// divides the chosen exponents; an empty active set frees the whole subbox
/// and the last level closes in O(active).
fn staircase_count(leads: &[Monomial], bounds: &[u64]) -> u64 {
    fn rec(level: usize, bounds: &[u64], active: &[&Monomial]) -> u64 {
        if active.is_empty() {
            return bounds[level..].iter().product();
        }
        if level == bounds.len() - 1 {
            let cutoff = active
                .iter()
                .map(|g| g.exponent(level))
                .min()
                .expect("active is nonempty");
            return cutoff.min(bounds[level]);
        }
        let mut total = 0u64;
        for e in 0..bounds[level] {
            let next: Vec<&Monomial> = active
                .iter()
                .copied()
                .filter(|g| g.exponent(level) <= e)
                .collect();
            total += rec(level + 1, bounds, &next);
        }
        total
    }
    if bounds.is_empty() {
        return if leads.is_empty() { 1 } else { 0 };
    }
    let refs: Vec<&Monomial> = leads.iter().collect();
    rec(0, bounds, &refs)
}

/// λ(R/I) by counting standard monomials; `Infinite` when not Artinian.
pub fn length(ideal: &IdealHandle) -> Result<Length> {
    let gb = ideal.groebner_basis(TermOrder::Grevlex)?;
    let leads = gb.leading_monomials();
    match staircase_bounds(&leads, ideal.ring().nvars()) {
        None => Ok(Length::Infinite),
        Some(bounds) => Ok(Length::Finite(staircase_count(&leads, &bounds))),
    }
}

/// λ(R/I) when finite, `NotArtinian` otherwise.
pub fn finite_length(ideal: &IdealHandle) -> Result<u64> {
    match length(ideal)? {
        Length::Finite(n) => Ok(n),
        Length::Infinite => Err(Error::NotArtinian),
    }
}

/// Materializes the standard monomial basis under `order`.
///
/// Returns `None` when the quotient is not Artinian. Monomials are sorted
/// ascending under `order` so downstream linear algebra is deterministic.
pub fn standard_monomial_basis(
    ideal: &IdealHandle,
    order: TermOrder,
) -> Result<Option<StandardMonomialBasis>> {
    let gb = ideal.groebner_basis(order)?;
    let leads = gb.leading_monomials();
    let nvars = ideal.ring().nvars();
    let bounds = match staircase_bounds(&leads, nvars) {
        None => return Ok(None),
        Some(b) => b,
    };
    let mut monomials = Vec::new();
    let mut exps = vec![0u64; nvars];
    enumerate_box(&mut exps, 0, &bounds, &leads, &mut monomials);
    monomials.sort_by(|a, b| order.cmp_unchecked(a, b));
    Ok(Some(StandardMonomialBasis { order, monomials }))
}

fn enumerate_box(
    exps: &mut Vec<u64>,
    level: usize,
    bounds: &[u64],
    leads: &[Monomial],
    out: &mut Vec<Monomial>,
) {
    if level == bounds.len() {
        let m = Monomial::new(exps.clone());
        if !leads.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[level] {
        exps[level] = e;
        enumerate_box(exps, level + 1, bounds, leads, out);
    }
    exps[level] = 0;
}

/// Independent colength oracle by dense linear algebra.
///
/// Spans all monomials of total degree `< cap` and quotients by the row
/// space of every (monomial x generator) product of total degree `< cap`,
/// using the handle's raw generators plus the ring relations — never a
/// Groebner basis. Errors with `CapTooSmall` when the top available degree
/// is not entirely pivoted, since then the count cannot be certified.
pub fn length_dense_oracle(ideal: &IdealHandle, cap: u64) -> Result<u64> {
    let ring = ideal.ring();
    let nvars = ring.nvars();
    let field = ring.field();

    let mut monomials: Vec<Monomial> = Vec::new();
    let mut exps = vec![0u64; nvars];
    enumerate_degree_below(&mut exps, 0, cap, &mut monomials);
    // Columns descend in grevlex so pivots sit on leading terms.
    monomials.sort_by(|a, b| TermOrder::Grevlex.cmp_unchecked(b, a));
    let index: BTreeMap<Monomial, usize> = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
    gens.extend_from_slice(ring.relations());

    // A generator that cannot multiply into the window contributes nothing;
    // the count would silently ignore it.
    if gens.iter().any(|g| !g.is_zero() && g.total_degree() >= cap) {
        return Err(Error::CapTooSmall { cap });
    }

    // Sparse row echelon keyed by pivot column.
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    let insert_row = |row: Vec<(usize, u64)>, pivots: &mut BTreeMap<usize, Vec<(usize, u64)>>| {
        let mut row = row;
        loop {
            row.retain(|&(_, c)| c != 0);
            if row.is_empty() {
                return;
            }
            row.sort_by_key(|&(col, _)| col);
            let (lead_col, lead_c) = row[0];
            match pivots.get(&lead_col) {
                None => {
                    let inv = field.inv(lead_c).expect("nonzero pivot");
                    let normalized: Vec<(usize, u64)> = row
                        .iter()
                        .map(|&(col, c)| (col, field.mul(c, inv)))
                        .collect();
                    pivots.insert(lead_col, normalized);
                    return;
                }
                Some(pivot) => {
                    let mut combined: BTreeMap<usize, u64> = row.iter().cloned().collect();
                    for &(col, c) in pivot {
                        let delta = field.mul(lead_c, c);
                        let entry = combined.entry(col).or_insert(0);
                        *entry = field.sub(*entry, delta);
                    }
                    row = combined.into_iter().collect();
                }
            }
        }
    };

    for g in &gens {
        if g.is_zero() {
            continue;
        }
        let gdeg = g.total_degree();
        if gdeg >= cap {
            continue;
        }
        let mut mults: Vec<Monomial> = Vec::new();
        let mut e = vec![0u64; nvars];
        enumerate_degree_below(&mut e, 0, cap - gdeg, &mut mults);
        for m in &mults {
            let prod = g.mul_term(m, 1);
            let row: Vec<(usize, u64)> = prod.terms().map(|(mm, c)| (index[mm], c)).collect();
            insert_row(row, &mut pivots);
        }
    }

    let standard: Vec<&Monomial> = monomials
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivots.contains_key(i))
        .map(|(_, m)| m)
        .collect();

    // Certification: every variable needs a pure-power pivot, otherwise the
    // staircase is not visibly capped inside the window.
    for var in 0..nvars {
        let capped = pivots.keys().any(|&col| {
            monomials[col]
                .exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| i == var || e == 0)
        });
        if !capped {
            return Err(Error::CapTooSmall { cap });
        }
    }
    Ok(standard.len() as u64)
}

fn enumerate_degree_below(exps: &mut Vec<u64>, level: usize, cap: u64, out: &mut Vec<Monomial>) {
    if cap == 0 {
        return;
    }
    if level == exps.len() {
        out.push(Monomial::new(exps.clone()));
        return;
    }
    let used: u64 = exps[..level].iter().sum();
    for e in 0..cap.saturating_sub(used) {
        exps[level] = e;
        enumerate_degree_below(exps, level + 1, cap, out);
    }
    exps[level] = 0;
}

/// F_p-basis of the socle (I : m)/I, each representative in normal form.
///
/// Built from the multiplication-by-variable matrices on the standard
/// monomial basis; the socle is the joint kernel.
pub fn socle(ideal: &IdealHandle) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let field = ring.field();
    let order = TermOrder::Grevlex;
    let basis = standard_monomial_basis(ideal, order)?.ok_or(Error::NotArtinian)?;
    let dim = basis.monomials.len();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let gb = ideal.groebner_basis(order)?;
    let index: BTreeMap<&Monomial, usize> = basis
        .monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    // Rows of the stacked multiplication matrices, one block per variable.
    let nvars = ring.nvars();
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; dim]; nvars * dim];
    for (j, m) in basis.monomials.iter().enumerate() {
        for i in 0..nvars {
            let shifted = m.mul(&Monomial::var(nvars, i));
            let image = match index.get(&shifted) {
                Some(&k) => {
                    let mut col = vec![0u64; dim];
                    col[k] = 1;
                    col
                }
                None => {
                    let nf = normal_form(&Polynomial::from_term(field, shifted, 1), &gb);
                    let mut col = vec![0u64; dim];
                    for (mm, c) in nf.terms() {
                        col[index[mm]] = c;
                    }
                    col
                }
            };
            for (k, &c) in image.iter().enumerate() {
                rows[i * dim + k][j] = c;
            }
        }
    }

    let kernel = null_space(&rows, dim, field);
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut poly = Polynomial::zero(field, nvars);
            for (j, &c) in v.iter().enumerate() {
                if c != 0 {
                    poly = poly.add(&Polynomial::from_term(field, basis.monomials[j].clone(), c));
                }
            }
            poly
        })
        .collect())
}

/// Reduced-row-echelon null space; basis vectors indexed by free columns.
fn null_space(
    rows: &[Vec<u64>],
    ncols: usize,
    field: crate::polyring::PrimeField,
) -> Vec<Vec<u64>> {
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .filter(|r| r.iter().any(|&c| c != 0))
        .cloned()
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot_row = (rank..mat.len()).find(|&r| mat[r][col] != 0);
        let Some(pr) = pivot_row else { continue };
        mat.swap(rank, pr);
        let inv = field.inv(mat[rank][col]).expect("nonzero pivot");
        for c in mat[rank].iter_mut() {
            *c = field.mul(*c, inv);
        }
        for r in 0..mat.len() {
            if r != rank && mat[r][col] != 0 {
                let factor = mat[r][col];
                let pivot = mat[rank].clone();
                for c in 0..ncols {
                    let delta = field.mul(factor, pivot[c]);
                    mat[r][c] = field.sub(mat[r][c], delta);
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for col in 0..ncols {
            if let Some(pr) = pivot_of_col[col] {
                v[col] = field.neg(mat[pr][free]);
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Irreducibility: a finite-colength ideal is irreducible iff its socle is a
/// line.
pub fn is_irreducible(ideal: &IdealHandle) -> Result<bool> {
    Ok(socle(ideal)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

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
    fn dimensions() {
        let r = a1(3);
        assert_eq!(ring_dimension(&r).unwrap(), 2);
        assert_eq!(krull_dimension(&ideal(&r, &["x", "y", "z"])).unwrap(), 0);
        let r2 = ring(2, &["x", "y"]);
        assert_eq!(ring_dimension(&r2).unwrap(), 2);
        assert_eq!(ring_dimension(&r2).unwrap(), 2);
    }

    #[test]
    fn staircase_lengths() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(
            length(&ideal(&r, &["x^2", "y^2"])).unwrap(),
            Length::Finite(4)
        );
        assert_eq!(
            length(&ideal(&r, &["x^3", "y^2"])).unwrap(),
            Length::Finite(6)
        );
        assert_eq!(length(&ideal(&r, &["x"])).unwrap(), Length::Infinite);
        assert_eq!(length(&ideal(&r, &["1"])).unwrap(), Length::Finite(0));
        let a = a1(3);
        assert_eq!(length(&ideal(&a, &["x", "y"])).unwrap(), Length::Finite(2));
    }

    #[test]
    fn dense_oracle_matches() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(
            length_dense_oracle(&ideal(&r, &["x^2", "y^2"]), 3).unwrap(),
            4
        );
        assert_eq!(length_dense_oracle(&ideal(&r, &["1"]), 2).unwrap(), 0);
        let a = a1(3);
        assert_eq!(length_dense_oracle(&ideal(&a, &["x", "y"]), 3).unwrap(), 2);
    }

    #[test]
    fn dense_oracle_cap_too_small() {
        let r = ring(2, &["x", "y"]);
        // Degree-3 staircase corner is invisible below cap 3.
        let i = ideal(&r, &["x^2", "y^2"]);
        assert!(matches!(
            length_dense_oracle(&i, 2),
            Err(Error::CapTooSmall { .. })
        ));
    }

    #[test]
    fn socle_cases() {
        let r = ring(5, &["x", "y"]);
        let s = socle(&ideal(&r, &["x^2", "y^3"])).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(r.render(&s[0]), "x*y^2");

        let s = socle(&ideal(&r, &["x", "y"])).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(r.render(&s[0]), "1");

        let a = a1(3);
        let s = socle(&ideal(&a, &["x", "y"])).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(a.render(&s[0]), "z");
    }

    #[test]
    fn irreducibility() {
        let r = ring(2, &["x", "y"]);
        assert!(is_irreducible(&ideal(&r, &["x^2", "y^2"])).unwrap());
        assert!(!is_irreducible(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap());
        assert!(matches!(
            is_irreducible(&ideal(&r, &["x"])),
            Err(Error::NotArtinian)
        ));
    }

    #[test]
    fn socle_members_annihilate_m() {
        let a = a1(3);
        let i = ideal(&a, &["x^2", "y^2"]);
        let m = IdealHandle::maximal(&a);
        for u in socle(&i).unwrap() {
            assert!(!i.member(&u).unwrap());
            for v in m.generators() {
                assert!(i.member(&u.mul(v)).unwrap());
            }
        }
    }

    #[test]
    fn length_is_order_independent() {
        let a = a1(3);
        let i = ideal(&a, &["x^2", "y^3", "z^4"]);
        let lex = standard_monomial_basis(&i, TermOrder::Lex)
            .unwrap()
            .unwrap();
        let grevlex = standard_monomial_basis(&i, TermOrder::Grevlex)
            .unwrap()
            .unwrap();
        assert_eq!(lex.monomials.len(), grevlex.monomials.len());
        assert_eq!(
            length(&i).unwrap(),
            Length::Finite(grevlex.monomials.len() as u64)
        );
    }
}
