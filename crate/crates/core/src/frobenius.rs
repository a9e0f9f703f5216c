//! Frobenius bracket powers and the quantitative estimates built on them:
//! splitting numbers via the colon-length formula, Hilbert-Kunz sequences,
//! and F-signature estimation.
//!
//! Normalized row values are exact rationals; extrapolation fits
//! `value = L + c/q` by least squares in exact arithmetic, so reports are
//! reproducible bit for bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::artinian::{finite_length, ring_dimension, socle};
use crate::conditions::IdealTower;
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::polyring::{Monomial, Polynomial};

/// Checks that `q` is a power of the characteristic and returns the exponent.
pub fn power_of_char(p: u64, q: u64) -> Result<u32> {
    let mut acc = 1u64;
    let mut e = 0u32;
    loop {
        if acc == q {
            return Ok(e);
        }
        match acc.checked_mul(p) {
            Some(next) if next <= q => {
                acc = next;
                e += 1;
            }
            _ => return Err(Error::NotPowerOfCharacteristic { q, p }),
        }
    }
}

/// I^[q]: the ideal generated by the q-th powers of the generators.
///
/// Well defined independently of the generating set because Frobenius is a
/// ring homomorphism; tests assert that independence rather than assume it.
pub fn bracket_power(ideal: &IdealHandle, q: u64) -> Result<IdealHandle> {
    let ring = ideal.ring();
    power_of_char(ring.characteristic(), q)?;
    let mut gens = Vec::with_capacity(ideal.generators().len());
    for g in ideal.generators() {
        for (m, _) in g.terms() {
            for &e in m.exponents() {
                Monomial::check_exponent(e.saturating_mul(q))?;
            }
        }
        gens.push(g.pow(q));
    }
    IdealHandle::new(ring.clone(), gens)
}

/// Validates that `u` represents the one-dimensional socle of R/I.
fn validate_socle_pair(ideal: &IdealHandle, u: &Polynomial) -> Result<()> {
    if ideal.member(u)? {
        return Err(Error::Validation(
            "socle representative lies in the ideal".into(),
        ));
    }
    let socle_dim = socle(ideal)?.len();
    if socle_dim != 1 {
        return Err(Error::Validation(format!(
            "ideal is not irreducible: socle dimension {socle_dim}"
        )));
    }
    for v in ideal.ring().variables() {
        if !ideal.member(&u.mul(&v))? {
            return Err(Error::Validation(
                "socle representative is not annihilated by the maximal ideal".into(),
            ));
        }
    }
    Ok(())
}

/// λ(R/(I^[q] : u^q)) without revalidating the socle pair.
pub(crate) fn splitting_length_unchecked(
    ideal: &IdealHandle,
    u: &Polynomial,
    q: u64,
) -> Result<u64> {
    let colon = bracket_colon(ideal, u, q)?;
    finite_length(&colon)
}

/// The colon ideal (I^[q] : u^q).
pub(crate) fn bracket_colon(ideal: &IdealHandle, u: &Polynomial, q: u64) -> Result<IdealHandle> {
    let bracket = bracket_power(ideal, q)?;
    bracket.colon_element(&u.pow(q))
}

/// Splitting number contribution at level q: λ(R/(I^[q] : u^q)).
///
/// Equals a_q once t is in the stable range of the tower; this operation
/// itself only contracts to the colon length.
pub fn splitting_number(ideal: &IdealHandle, u: &Polynomial, q: u64) -> Result<u64> {
    finite_length(ideal)?;
    validate_socle_pair(ideal, u)?;
    splitting_length_unchecked(ideal, u, q)
}

/// Exact-rational extrapolation of a normalized length sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    pub limit: BigRational,
    pub max_residual: BigRational,
    pub method: &'static str,
}

impl Extrapolation {
    pub fn limit_f64(&self) -> f64 {
        rational_to_f64(&self.limit)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Fits `value = L + c/q` on the last `min(3, n)` rows by least squares and
/// returns L; all-equal rows short-circuit to that constant.
pub fn extrapolate_limit(points: &[(u64, BigRational)]) -> Result<Extrapolation> {
    if points.len() < 2 {
        return Err(Error::Validation(
            "extrapolation needs at least 2 rows".into(),
        ));
    }
    if points.iter().all(|(_, v)| *v == points[0].1) {
        return Ok(Extrapolation {
            limit: points[0].1.clone(),
            max_residual: BigRational::zero(),
            method: "constant",
        });
    }
    let tail = &points[points.len() - points.len().min(3)..];
    let n = big(tail.len() as u64);
    let mut sx = BigRational::zero();
    let mut sy = BigRational::zero();
    let mut sxx = BigRational::zero();
    let mut sxy = BigRational::zero();
    for (q, y) in tail {
        let x = BigRational::new(BigInt::from(1), BigInt::from(*q));
        sx += x.clone();
        sy += y.clone();
        sxx += x.clone() * x.clone();
        sxy += x * y.clone();
    }
    let det = n.clone() * sxx.clone() - sx.clone() * sx.clone();
    if det.is_zero() {
        return Err(Error::Validation(
            "extrapolation rows have repeated q values".into(),
        ));
    }
    let limit = (sy.clone() * sxx - sx.clone() * sxy.clone()) / det.clone();
    let slope = (n * sxy - sx * sy) / det;
    let mut max_residual = BigRational::zero();
    for (q, y) in tail {
        let x = BigRational::new(BigInt::from(1), BigInt::from(*q));
        let r = (y - (limit.clone() + slope.clone() * x)).abs();
        if r > max_residual {
            max_residual = r;
        }
    }
    Ok(Extrapolation {
        limit,
        max_residual,
        method: "least-squares-1/q",
    })
}

/// One Hilbert-Kunz row: e, q = p^e, the colength and its normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct HkRow {
    pub e: u32,
    pub q: u64,
    pub colength: u64,
    pub normalized: BigRational,
}

/// A Hilbert-Kunz sequence with its extrapolated limit.
#[derive(Debug, Clone, PartialEq)]
pub struct HkEstimate {
    pub label: String,
    pub dimension: usize,
    pub rows: Vec<HkRow>,
    pub extrapolation: Option<Extrapolation>,
    /// Set when a resource cap cut the sequence short.
    pub truncated: bool,
}

fn q_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::ExponentOverflow {
        value: u64::MAX,
        max: crate::polyring::MAX_EXPONENT,
    })
}

fn normalized(colength: u64, q: u64, d: usize) -> Result<BigRational> {
    let mut denom = BigInt::from(1);
    for _ in 0..d {
        denom *= BigInt::from(q);
    }
    Ok(BigRational::new(BigInt::from(colength), denom))
}

/// Rows (e, q, λ(R/I^[q]), λ/q^d) for e = 1..e_max.
///
/// A resource-limit in some row truncates the sequence and flags the result
/// instead of failing.
pub fn hk_sequence(ideal: &IdealHandle, e_max: u32, label: &str) -> Result<HkEstimate> {
    if e_max < 1 {
        return Err(Error::Validation("e_max must be at least 1".into()));
    }
    match finite_length(ideal) {
        Ok(_) => {}
        Err(Error::NotArtinian) => return Err(Error::NotArtinian),
        Err(e) => return Err(e),
    }
    let ring = ideal.ring();
    let p = ring.characteristic();
    let d = ring_dimension(ring)?;
    let mut rows = Vec::new();
    let mut truncated = false;
    for e in 1..=e_max {
        let q = q_power(p, e)?;
        let colength = match bracket_power(ideal, q).and_then(|b| finite_length(&b)) {
            Ok(n) => n,
            Err(Error::ResourceLimit(_)) | Err(Error::ExponentOverflow { .. }) => {
                truncated = true;
                break;
            }
            Err(err) => return Err(err),
        };
        rows.push(HkRow {
            e,
            q,
            colength,
            normalized: normalized(colength, q, d)?,
        });
    }
    let points: Vec<(u64, BigRational)> =
        rows.iter().map(|r| (r.q, r.normalized.clone())).collect();
    let extrapolation = if points.len() >= 2 {
        Some(extrapolate_limit(&points)?)
    } else {
        None
    };
    Ok(HkEstimate {
        label: label.to_string(),
        dimension: d,
        rows,
        extrapolation,
        truncated,
    })
}

/// One splitting row: the colon length at the stabilized tower level.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureRow {
    pub e: u32,
    pub q: u64,
    pub splitting_length: u64,
    pub normalized: BigRational,
    /// Tower level at which the colon chain stabilized; `None` when the row
    /// came from a fixed ideal rather than a tower.
    pub stabilized_t: Option<u64>,
    /// False when the chain hit t_max without two equal consecutive colons.
    pub stable: bool,
}

/// An F-signature estimate: per-q rows plus the extrapolated limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureEstimate {
    pub label: String,
    pub dimension: usize,
    pub rows: Vec<SignatureRow>,
    pub extrapolation: Option<Extrapolation>,
}

/// Splitting rows from a validated tower.
///
/// For each e the colon chain (I_t^[q] : u_t^q) is walked in t until two
/// consecutive ideals agree; the stabilized colength is the row value. Rows
/// that fail to stabilize by t_max are kept and flagged NOT_STABLE.
pub fn signature_sequence(tower: &IdealTower, e_max: u32, t_max: u64) -> Result<SignatureEstimate> {
    if e_max < 1 {
        return Err(Error::Validation("e_max must be at least 1".into()));
    }
    if t_max < 1 {
        return Err(Error::Validation("t_max must be at least 1".into()));
    }
    let ring = tower.ring();
    let p = ring.characteristic();
    let d = ring_dimension(ring)?;
    let mut rows = Vec::new();
    for e in 1..=e_max {
        let q = q_power(p, e)?;
        let mut previous: Option<(u64, IdealHandle)> = None;
        let mut stabilized: Option<(u64, IdealHandle)> = None;
        for t in 1..=t_max {
            let colon = tower.bracket_colon_at(t, q)?;
            if let Some((_, ref prev)) = previous {
                if prev.is_equal(&colon)? {
                    stabilized = Some((t - 1, colon.clone()));
                    break;
                }
            }
            previous = Some((t, colon));
        }
        let (stable, t_row, colon) = match (stabilized, previous) {
            (Some((t, colon)), _) => (true, t, colon),
            (None, Some((t, colon))) => (false, t, colon),
            (None, None) => unreachable!("t_max >= 1 guarantees one iteration"),
        };
        let splitting_length = finite_length(&colon)?;
        rows.push(SignatureRow {
            e,
            q,
            splitting_length,
            normalized: normalized(splitting_length, q, d)?,
            stabilized_t: Some(t_row),
            stable,
        });
    }
    let points: Vec<(u64, BigRational)> = rows
        .iter()
        .filter(|r| r.stable)
        .map(|r| (r.q, r.normalized.clone()))
        .collect();
    let extrapolation = if points.len() >= 2 {
        Some(extrapolate_limit(&points)?)
    } else {
        None
    };
    Ok(SignatureEstimate {
        label: tower.label().to_string(),
        dimension: d,
        rows,
        extrapolation,
    })
}

/// Signature rows as Hilbert-Kunz differences:
/// λ(R/I^[q]) − λ(R/(I + uR)^[q]) per e, with extrapolated difference.
///
/// Row-for-row these equal the splitting-number values for the same (I, u);
/// the equality is asserted by callers and the test suite, not assumed here.
pub fn signature_via_hk_difference(
    ideal: &IdealHandle,
    u: &Polynomial,
    e_max: u32,
    label: &str,
) -> Result<SignatureEstimate> {
    finite_length(ideal)?;
    validate_socle_pair(ideal, u)?;
    let ring = ideal.ring();
    let p = ring.characteristic();
    let d = ring_dimension(ring)?;
    let enlarged = ideal.sum(&IdealHandle::principal(ring, u.clone())?)?;
    let mut rows = Vec::new();
    for e in 1..=e_max {
        let q = q_power(p, e)?;
        let big_len = finite_length(&bracket_power(ideal, q)?)?;
        let small_len = finite_length(&bracket_power(&enlarged, q)?)?;
        let diff = big_len
            .checked_sub(small_len)
            .expect("I^[q] contains (I + uR)^[q]");
        rows.push(SignatureRow {
            e,
            q,
            splitting_length: diff,
            normalized: normalized(diff, q, d)?,
            stabilized_t: None,
            stable: true,
        });
    }
    let points: Vec<(u64, BigRational)> =
        rows.iter().map(|r| (r.q, r.normalized.clone())).collect();
    let extrapolation = if points.len() >= 2 {
        Some(extrapolate_limit(&points)?)
    } else {
        None
    };
    Ok(SignatureEstimate {
        label: label.to_string(),
        dimension: d,
        rows,
        extrapolation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, RingPresentation};
    use std::sync::Arc;

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
    fn bracket_power_basics() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x", "y"]);
        let b = bracket_power(&i, 4).unwrap();
        assert!(b.is_equal(&ideal(&r, &["x^4", "y^4"])).unwrap());

        let j = ideal(&r, &["x + y", "x*y"]);
        let bj = bracket_power(&j, 2).unwrap();
        assert!(bj.is_equal(&ideal(&r, &["x^2 + y^2", "x^2*y^2"])).unwrap());

        assert!(matches!(
            bracket_power(&i, 3),
            Err(Error::NotPowerOfCharacteristic { q: 3, p: 2 })
        ));
    }

    #[test]
    fn bracket_power_is_generating_set_independent() {
        let r = ring(3, &["x", "y"]);
        let a = ideal(&r, &["x", "y"]);
        let b = ideal(&r, &["x", "x + y"]);
        assert!(a.is_equal(&b).unwrap());
        let ba = bracket_power(&a, 3).unwrap();
        let bb = bracket_power(&b, 3).unwrap();
        assert!(ba.is_equal(&bb).unwrap());
    }

    #[test]
    fn bracket_power_survives_random_regeneration() {
        // 20 random re-presentations of the same ideal: elementary row
        // operations on the generators keep the ideal, hence the bracket.
        use rand::{Rng, SeedableRng};
        let r = ring(3, &["x", "y"]);
        let base = ideal(&r, &["x^2 + y", "x*y"]);
        let reference = bracket_power(&base, 9).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xB4AC);
        for _ in 0..20 {
            let mut gens: Vec<Polynomial> = base.generators().to_vec();
            let i = rng.gen_range(0..gens.len());
            let j = rng.gen_range(0..gens.len());
            if i != j {
                let exps: Vec<u64> = (0..2).map(|_| rng.gen_range(0..2)).collect();
                let factor =
                    Polynomial::from_term(r.field(), Monomial::new(exps), rng.gen_range(1..3));
                gens[i] = gens[i].add(&gens[j].mul(&factor));
            }
            let scale = rng.gen_range(1..3);
            let k = rng.gen_range(0..gens.len());
            gens[k] = gens[k].scale(scale);
            let regenerated = IdealHandle::new(r.clone(), gens).unwrap();
            assert!(regenerated.is_equal(&base).unwrap());
            let bracket = bracket_power(&regenerated, 9).unwrap();
            assert!(bracket.is_equal(&reference).unwrap());
        }
    }

    #[test]
    fn bracket_power_guards_exponent_overflow() {
        let r = ring(2, &["x", "y"]);
        let big = Polynomial::from_term(r.field(), Monomial::new(vec![1 << 15, 0]), 1);
        let i = IdealHandle::new(r.clone(), vec![big]).unwrap();
        assert!(matches!(
            bracket_power(&i, 1 << 6),
            Err(Error::ExponentOverflow { .. })
        ));
        // q = 1 (e = 0) is the identity.
        let j = ideal(&r, &["x", "y"]);
        assert!(bracket_power(&j, 1).unwrap().is_equal(&j).unwrap());
    }

    #[test]
    fn hk_sequence_truncates_on_resource_caps() {
        let r = ring(2, &["x", "y"]).with_caps(crate::polyring::ResourceCaps {
            max_basis: 20_000,
            max_degree: 8,
        });
        let est = hk_sequence(&ideal(&r, &["x", "y"]), 5, "m").unwrap();
        assert!(est.truncated);
        assert!(est.rows.len() < 5);
        for row in &est.rows {
            assert_eq!(row.normalized, big(1));
        }
    }

    #[test]
    fn signature_rows_flag_not_stable_windows() {
        // t_max = 1 gives no chance to observe two equal consecutive colons.
        let r = ring(2, &["x", "y"]);
        let tower = crate::conditions::build_parameter_tower(
            &r,
            vec![r.variable(0), r.variable(1)],
            r.one(),
            "regular",
        )
        .unwrap();
        let est = signature_sequence(&tower, 2, 1).unwrap();
        for row in &est.rows {
            assert!(!row.stable);
            assert_eq!(row.stabilized_t, Some(1));
        }
        assert!(est.extrapolation.is_none());
    }

    #[test]
    fn bracket_sum_additivity() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x^2"]);
        let j = ideal(&r, &["y", "x*y"]);
        let lhs = bracket_power(&i.sum(&j).unwrap(), 4).unwrap();
        let rhs = bracket_power(&i, 4)
            .unwrap()
            .sum(&bracket_power(&j, 4).unwrap())
            .unwrap();
        assert!(lhs.is_equal(&rhs).unwrap());
    }

    #[test]
    fn splitting_number_regular_ring() {
        // R = F_2[x,y]: R^{1/q} is free of rank q^2, so the colon length is
        // exactly q^2 at the parameter ideal with socle representative 1.
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x", "y"]);
        let one = parse_polynomial("1", &r).unwrap();
        assert_eq!(splitting_number(&i, &one, 4).unwrap(), 16);
    }

    #[test]
    fn splitting_number_monomial_colon() {
        // F_3[x,y]: ((x^6, y^6) : (xy)^3) = (x^3, y^3) of colength 9.
        let r = ring(3, &["x", "y"]);
        let i = ideal(&r, &["x^2", "y^2"]);
        let u = parse_polynomial("x*y", &r).unwrap();
        assert_eq!(splitting_number(&i, &u, 3).unwrap(), 9);
    }

    #[test]
    fn splitting_number_validates() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x", "y"]);
        let x = parse_polynomial("x", &r).unwrap();
        assert!(splitting_number(&i, &x, 2).is_err());
        let not_irreducible = ideal(&r, &["x^2", "x*y", "y^2"]);
        let u = parse_polynomial("x", &r).unwrap();
        assert!(splitting_number(&not_irreducible, &u, 2).is_err());
    }

    #[test]
    fn hk_regular_is_exactly_one() {
        let r = ring(2, &["x", "y"]);
        let est = hk_sequence(&ideal(&r, &["x", "y"]), 3, "m").unwrap();
        for row in &est.rows {
            assert_eq!(row.normalized, big(1));
        }
        let ex = est.extrapolation.unwrap();
        assert_eq!(ex.limit, big(1));
        assert_eq!(ex.method, "constant");
        assert!(ex.max_residual.is_zero());
    }

    #[test]
    fn hk_scaled_parameter() {
        let r = ring(2, &["x", "y"]);
        let est = hk_sequence(&ideal(&r, &["x^2", "y"]), 3, "i").unwrap();
        for row in &est.rows {
            assert_eq!(row.normalized, big(2));
        }
    }

    #[test]
    fn hk_rejects_non_primary() {
        let r = ring(2, &["x", "y"]);
        assert!(matches!(
            hk_sequence(&ideal(&r, &["x"]), 2, "bad"),
            Err(Error::NotArtinian)
        ));
    }

    #[test]
    fn extrapolation_recovers_exact_model() {
        // Rows 3/2 + 1/q at q = 3, 9, 27 extrapolate to exactly 3/2.
        let points: Vec<(u64, BigRational)> = [3u64, 9, 27]
            .iter()
            .map(|&q| {
                (
                    q,
                    BigRational::new(BigInt::from(3), BigInt::from(2))
                        + BigRational::new(BigInt::from(1), BigInt::from(q)),
                )
            })
            .collect();
        let ex = extrapolate_limit(&points).unwrap();
        assert_eq!(ex.limit, BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert!(ex.max_residual.is_zero());
        assert_eq!(ex.method, "least-squares-1/q");
    }

    #[test]
    fn extrapolation_needs_two_rows() {
        let points = vec![(3u64, big(1))];
        assert!(extrapolate_limit(&points).is_err());
    }

    #[test]
    fn hk_difference_identity_on_a1() {
        // Prop-style check: the difference rows equal the direct colon
        // lengths for I = (x, y), u = z in the quadric quotient.
        let r = a1(3);
        let i = ideal(&r, &["x", "y"]);
        let u = parse_polynomial("z", &r).unwrap();
        let diff = signature_via_hk_difference(&i, &u, 2, "a1").unwrap();
        for row in &diff.rows {
            let direct = splitting_number(&i, &u, row.q).unwrap();
            assert_eq!(row.splitting_length, direct);
        }
    }

    #[test]
    fn hk_difference_regular() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x", "y"]);
        let one = parse_polynomial("1", &r).unwrap();
        let est = signature_via_hk_difference(&i, &one, 3, "regular").unwrap();
        for row in &est.rows {
            assert_eq!(row.normalized, big(1));
        }
        assert_eq!(est.extrapolation.unwrap().limit, big(1));
    }
}
