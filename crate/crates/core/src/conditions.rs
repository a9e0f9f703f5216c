//! Ideal towers and the finite-level stabilization lab.
//!
//! A tower is a closed-form family {I_t, u_t} of irreducible ideals primary
//! to the variable ideal, with socle representatives tied together by
//! u_t = (x_1...x_d)^{t-1} u_1. The checks here walk the colon chains
//! (I_t^[q] : u_t^q) in t, report plateaus, and verify the colon-saturation
//! identity behind the Q-Gorenstein construction. All verdicts are finite:
//! a plateau up to t_max is evidence, never a proof for all t.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use crate::artinian::{finite_length, ring_dimension, socle};
use crate::error::{Error, Result};
use crate::frobenius::bracket_colon;
use crate::groebner::{is_zero_in_ring, IdealHandle};
use crate::polyring::{Polynomial, RingPresentation, TermOrder};

/// How the generators of I_t depend on the index t.
#[derive(Debug, Clone)]
enum TowerKind {
    /// I_t = (x_1^t, ..., x_d^t).
    Parameter { params: Vec<Polynomial> },
    /// I_t = (x_1^{t-1} J, x_2^t, ..., x_d^t).
    QGorenstein {
        x1: Polynomial,
        j_gens: Vec<Polynomial>,
        others: Vec<Polynomial>,
    },
}

/// A parameterized family {I_t, u_t} of irreducible m-primary ideals.
pub struct IdealTower {
    ring: Arc<RingPresentation>,
    label: String,
    kind: TowerKind,
    sop: Vec<Polynomial>,
    u1: Polynomial,
    ideal_cache: Mutex<BTreeMap<u64, IdealHandle>>,
    colon_cache: Mutex<BTreeMap<(u64, u64), IdealHandle>>,
}

impl std::fmt::Debug for IdealTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdealTower")
            .field("label", &self.label)
            .field("kind", &self.kind)
            .finish()
    }
}

impl IdealTower {
    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The system of parameters x_1..x_d backing the socle templates.
    pub fn parameters(&self) -> &[Polynomial] {
        &self.sop
    }

    pub fn socle_seed(&self) -> &Polynomial {
        &self.u1
    }

    fn instantiate(&self, t: u64) -> Result<IdealHandle> {
        assert!(t >= 1, "tower levels start at t = 1");
        let gens = match &self.kind {
            TowerKind::Parameter { params } => params.iter().map(|x| x.pow(t)).collect::<Vec<_>>(),
            TowerKind::QGorenstein { x1, j_gens, others } => {
                let scale = x1.pow(t - 1);
                let mut gens: Vec<Polynomial> = j_gens.iter().map(|g| scale.mul(g)).collect();
                gens.extend(others.iter().map(|x| x.pow(t)));
                gens
            }
        };
        IdealHandle::new(self.ring.clone(), gens)
    }

    /// I_t, cached per level.
    pub fn ideal_at(&self, t: u64) -> Result<IdealHandle> {
        if let Some(i) = self.ideal_cache.lock().expect("cache poisoned").get(&t) {
            return Ok(i.clone());
        }
        let handle = self.instantiate(t)?;
        let mut cache = self.ideal_cache.lock().expect("cache poisoned");
        Ok(cache.entry(t).or_insert(handle).clone())
    }

    /// u_t = (x_1...x_d)^{t-1} u_1.
    pub fn socle_rep_at(&self, t: u64) -> Polynomial {
        assert!(t >= 1, "tower levels start at t = 1");
        let mut factor = self.ring.one();
        for x in &self.sop {
            factor = factor.mul(x);
        }
        factor.pow(t - 1).mul(&self.u1)
    }

    /// (I_t^[q] : u_t^q), cached per (t, q).
    pub fn bracket_colon_at(&self, t: u64, q: u64) -> Result<IdealHandle> {
        let key = (t, q);
        if let Some(c) = self.colon_cache.lock().expect("cache poisoned").get(&key) {
            return Ok(c.clone());
        }
        let ideal = self.ideal_at(t)?;
        let u = self.socle_rep_at(t);
        let colon = bracket_colon(&ideal, &u, q)?;
        let mut cache = self.colon_cache.lock().expect("cache poisoned");
        Ok(cache.entry(key).or_insert(colon).clone())
    }

    /// Instantiates levels 1..=t_hi and checks every tower invariant there.
    fn validate_levels(&self, t_hi: u64) -> Result<()> {
        let mut previous: Option<IdealHandle> = None;
        for t in 1..=t_hi {
            let ideal = self.ideal_at(t)?;
            match finite_length(&ideal) {
                Ok(_) => {}
                Err(Error::NotArtinian) => {
                    return Err(Error::Validation(format!(
                        "tower '{}': I_{t} is not m-primary",
                        self.label
                    )))
                }
                Err(other) => return Err(other),
            }
            let socle_basis = socle(&ideal)?;
            if socle_basis.len() != 1 {
                return Err(Error::Validation(format!(
                    "tower '{}': I_{t} is not irreducible (socle dimension {})",
                    self.label,
                    socle_basis.len()
                )));
            }
            let u = self.socle_rep_at(t);
            if ideal.member(&u)? {
                return Err(Error::Validation(format!(
                    "tower '{}': u_{t} lies in I_{t}",
                    self.label
                )));
            }
            for v in self.ring.variables() {
                if !ideal.member(&u.mul(&v))? {
                    return Err(Error::Validation(format!(
                        "tower '{}': m * u_{t} is not contained in I_{t}",
                        self.label
                    )));
                }
            }
            if let Some(prev) = previous {
                if !prev.contains(&ideal)? {
                    return Err(Error::Validation(format!(
                        "tower '{}': I_{t} is not contained in I_{}",
                        self.label,
                        t - 1
                    )));
                }
            }
            previous = Some(ideal);
        }
        Ok(())
    }
}

/// Builds and validates the parameter tower I_t = (x_1^t, ..., x_d^t) with
/// u_t = (x_1...x_d)^{t-1} u_1. Validation instantiates t = 1, 2, 3.
pub fn build_parameter_tower(
    ring: &Arc<RingPresentation>,
    params: Vec<Polynomial>,
    u1: Polynomial,
    label: &str,
) -> Result<IdealTower> {
    if params.is_empty() {
        return Err(Error::Validation(format!(
            "tower '{label}': no parameters given"
        )));
    }
    for x in &params {
        if is_zero_in_ring(ring, x)? {
            return Err(Error::Validation(format!(
                "tower '{label}': a parameter is zero in R"
            )));
        }
    }
    let tower = IdealTower {
        ring: ring.clone(),
        label: label.to_string(),
        kind: TowerKind::Parameter {
            params: params.clone(),
        },
        sop: params,
        u1,
        ideal_cache: Mutex::new(BTreeMap::new()),
        colon_cache: Mutex::new(BTreeMap::new()),
    };
    tower.validate_levels(3)?;
    Ok(tower)
}

/// The data backing the Q-Gorenstein tower: a canonical-type ideal J
/// (height-1 and unmixed by user assertion), the index h with J^{(h)}
/// locally principal off the closed point, the witness elements of the
/// containments x_2 J ⊆ aR and x_i J^{(h)} ⊆ a_i R, the parameter x_1 ∈ J,
/// and a saturating element for symbolic powers.
#[derive(Debug, Clone)]
pub struct QGorensteinData {
    pub ring: Arc<RingPresentation>,
    pub j_gens: Vec<Polynomial>,
    pub h: u64,
    pub a: Polynomial,
    pub x2: Polynomial,
    /// Pairs (x_i, a_i) for 3 <= i <= d, in order.
    pub higher: Vec<(Polynomial, Polynomial)>,
    pub x1: Polynomial,
    pub saturating: Polynomial,
}

/// Correctness caveat attached to every symbolic-power result.
pub const SYMBOLIC_POWER_WARNING: &str =
    "symbolic power computed as (J^n : c^inf); correctness depends on the \
     user-asserted saturating element c";

/// J^{(n)} as (J^n : c^∞), with the stabilizing exponent of the saturation.
pub fn symbolic_power(j: &IdealHandle, n: u64, c: &Polynomial) -> Result<(IdealHandle, u64)> {
    if is_zero_in_ring(j.ring(), c)? {
        return Err(Error::Validation("saturating element is zero in R".into()));
    }
    let power = j.power(n)?;
    power.saturation(c)
}

impl QGorensteinData {
    pub fn dimension(&self) -> usize {
        2 + self.higher.len()
    }

    /// System of parameters x_1, x_2, ..., x_d.
    pub fn sop(&self) -> Vec<Polynomial> {
        let mut sop = vec![self.x1.clone(), self.x2.clone()];
        sop.extend(self.higher.iter().map(|(x, _)| x.clone()));
        sop
    }

    pub fn x_element(&self, i: usize) -> Option<&Polynomial> {
        match i {
            1 => Some(&self.x1),
            2 => Some(&self.x2),
            _ => self.higher.get(i - 3).map(|(x, _)| x),
        }
    }

    pub fn j_handle(&self) -> Result<IdealHandle> {
        IdealHandle::new(self.ring.clone(), self.j_gens.clone())
    }

    /// Checks every containment the data promises, naming the first failure.
    pub fn validate(&self) -> Result<()> {
        let d = ring_dimension(&self.ring)?;
        if d < 2 {
            return Err(Error::Validation(format!(
                "Q-Gorenstein data needs ring dimension >= 2, got {d}"
            )));
        }
        if self.dimension() != d {
            return Err(Error::Validation(format!(
                "Q-Gorenstein data lists {} parameters but the ring has dimension {d}",
                self.dimension()
            )));
        }
        if self.h < 1 {
            return Err(Error::Validation("h must be at least 1".into()));
        }
        let j = self.j_handle()?;
        if !j.member(&self.a)? {
            return Err(Error::Validation("a does not lie in J".into()));
        }
        if !j.member(&self.x1)? {
            return Err(Error::Validation("x_1 does not lie in J".into()));
        }
        // x_2 J ⊆ aR.
        let a_ideal = IdealHandle::principal(&self.ring, self.a.clone())?;
        for g in &self.j_gens {
            if !a_ideal.member(&self.x2.mul(g))? {
                return Err(Error::Validation("containment x_2 J ⊆ aR fails".into()));
            }
        }
        // x_i J^{(h)} ⊆ a_i R for 3 <= i <= d.
        if !self.higher.is_empty() {
            let (jh, _) = symbolic_power(&j, self.h, &self.saturating)?;
            for (idx, (xi, ai)) in self.higher.iter().enumerate() {
                let i = idx + 3;
                if !jh.member(ai)? {
                    return Err(Error::Validation(format!(
                        "a_{i} does not lie in J^({})",
                        self.h
                    )));
                }
                let ai_ideal = IdealHandle::principal(&self.ring, ai.clone())?;
                for g in jh.generators() {
                    if !ai_ideal.member(&xi.mul(g))? {
                        return Err(Error::Validation(format!(
                            "containment x_{i} J^({}) ⊆ a_{i} R fails",
                            self.h
                        )));
                    }
                }
            }
        }
        // x_1, ..., x_d generate an m-primary ideal.
        let sop_ideal = IdealHandle::new(self.ring.clone(), self.sop())?;
        match finite_length(&sop_ideal) {
            Ok(_) => {}
            Err(Error::NotArtinian) => {
                return Err(Error::Validation(
                    "x_1, ..., x_d do not generate an m-primary ideal".into(),
                ))
            }
            Err(other) => return Err(other),
        }
        Ok(())
    }
}

/// Builds the tower I_t = (x_1^{t-1} J, x_2^t, ..., x_d^t) from validated
/// Q-Gorenstein data; u_1 is computed as the socle of I_1 and irreducibility
/// is verified at t = 1, 2, 3.
pub fn build_qgorenstein_tower(data: &QGorensteinData, label: &str) -> Result<IdealTower> {
    data.validate()?;
    let mut others = vec![data.x2.clone()];
    others.extend(data.higher.iter().map(|(x, _)| x.clone()));

    let i1_gens: Vec<Polynomial> = data
        .j_gens
        .iter()
        .cloned()
        .chain(others.iter().cloned())
        .collect();
    let i1 = IdealHandle::new(data.ring.clone(), i1_gens)?;
    let socle_basis = socle(&i1)?;
    if socle_basis.len() != 1 {
        return Err(Error::Validation(format!(
            "tower '{label}': I_1 = (J, x_2, ..., x_d) has socle dimension {}",
            socle_basis.len()
        )));
    }
    let u1 = socle_basis.into_iter().next().expect("one socle element");

    let tower = IdealTower {
        ring: data.ring.clone(),
        label: label.to_string(),
        kind: TowerKind::QGorenstein {
            x1: data.x1.clone(),
            j_gens: data.j_gens.clone(),
            others,
        },
        sop: data.sop(),
        u1,
        ideal_cache: Mutex::new(BTreeMap::new()),
        colon_cache: Mutex::new(BTreeMap::new()),
    };
    tower.validate_levels(3)?;
    Ok(tower)
}

/// One colon ideal in a chain: its level and a reduced-basis fingerprint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColonLevel {
    pub t: u64,
    pub fingerprint: String,
}

/// Per-q outcome of the Condition (A) scan.
#[derive(Debug, Clone)]
pub struct StabilizationRow {
    pub e: u32,
    pub q: u64,
    pub levels: Vec<ColonLevel>,
    /// Minimal t with (I_t^[q] : u_t^q) constant through t_max; `None` means
    /// NOT_STABLE within the window.
    pub stable_t: Option<u64>,
    /// Colength of the plateau ideal when stable.
    pub kernel_length: Option<u64>,
    /// Whether (I_t^[q] : u_t^q) ⊆ (I_{t+1}^[q] : u_{t+1}^q) held at every step.
    pub chain_ascending: bool,
}

/// Finite-level Condition (A) verdict over e <= e_max, t <= t_max.
#[derive(Debug, Clone)]
pub struct StabilizationReport {
    pub label: String,
    pub e_max: u32,
    pub t_max: u64,
    pub rows: Vec<StabilizationRow>,
    /// Minimal t_0 valid for every tested e; `None` when some row is
    /// NOT_STABLE.
    pub uniform_t0: Option<u64>,
    pub chain_ascending: bool,
}

fn fingerprint(ideal: &IdealHandle) -> Result<String> {
    let gb = ideal.groebner_basis(TermOrder::Grevlex)?;
    let mut hasher = Sha256::new();
    hasher.update(ideal.ring().characteristic().to_le_bytes());
    for g in gb.elements() {
        for (m, c) in g.terms() {
            for &e in m.exponents() {
                hasher.update(e.to_le_bytes());
            }
            hasher.update(c.to_le_bytes());
            hasher.update([0xfe]);
        }
        hasher.update([0xff]);
    }
    let digest = hasher.finalize();
    Ok(digest[..8].iter().map(|b| format!("{b:02x}")).collect())
}

/// Scans the colon chain for each q = p^e and reports stabilization levels.
///
/// Plateaus are detected by fingerprint runs and confirmed with a full
/// ideal-equality check at the plateau boundary.
pub fn condition_a_check(
    tower: &IdealTower,
    e_max: u32,
    t_max: u64,
) -> Result<StabilizationReport> {
    if e_max < 1 || t_max < 1 {
        return Err(Error::Validation(
            "e_max and t_max must be at least 1".into(),
        ));
    }
    let p = tower.ring().characteristic();
    let mut rows = Vec::new();
    for e in 1..=e_max {
        let q = p
            .checked_pow(e)
            .ok_or(Error::ResourceLimit("q = p^e overflows u64".into()))?;
        let mut colons = Vec::with_capacity(t_max as usize);
        let mut levels = Vec::with_capacity(t_max as usize);
        let mut ascending = true;
        for t in 1..=t_max {
            let colon = tower.bracket_colon_at(t, q)?;
            if let Some(prev) = colons.last() {
                let prev: &IdealHandle = prev;
                if !colon.contains(prev)? {
                    ascending = false;
                }
            }
            levels.push(ColonLevel {
                t,
                fingerprint: fingerprint(&colon)?,
            });
            colons.push(colon);
        }
        let last_fp = &levels.last().expect("t_max >= 1").fingerprint;
        let mut stable_t = None;
        for t in 1..=t_max {
            let idx = (t - 1) as usize;
            if levels[idx..].iter().all(|l| l.fingerprint == *last_fp) {
                // Fingerprints match from t on; confirm at the boundary.
                if colons[idx].is_equal(colons.last().expect("nonempty"))? {
                    stable_t = Some(t);
                }
                break;
            }
        }
        // A plateau touching only t_max itself is no evidence.
        if stable_t == Some(t_max) {
            stable_t = None;
        }
        let kernel_length = match stable_t {
            Some(t) => Some(finite_length(&colons[(t - 1) as usize])?),
            None => None,
        };
        rows.push(StabilizationRow {
            e,
            q,
            levels,
            stable_t,
            kernel_length,
            chain_ascending: ascending,
        });
    }
    let chain_ascending = rows.iter().all(|r| r.chain_ascending);
    let uniform_t0 = rows
        .iter()
        .map(|r| r.stable_t)
        .collect::<Option<Vec<u64>>>()
        .map(|ts| ts.into_iter().max().expect("e_max >= 1"));
    Ok(StabilizationReport {
        label: tower.label().to_string(),
        e_max,
        t_max,
        rows,
        uniform_t0,
        chain_ascending,
    })
}

/// The kernel length at one Frobenius level, through the chain union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionBLevel {
    pub e: u32,
    pub q: u64,
    /// λ(R/∪_t (I_t^[q] : u_t^q)), the stabilized chain value.
    pub kernel_length: u64,
    /// First t with (I_t^[q] : u_t^q) = (I_{t+1}^[q] : u_{t+1}^q).
    pub stabilized_t: u64,
}

/// Computes the chain union ∪_t (I_t^[q] : u_t^q) as the first repeated
/// ideal of the ascending chain and returns its colength.
pub fn condition_b_level(tower: &IdealTower, e: u32, t_max: u64) -> Result<ConditionBLevel> {
    if e < 1 || t_max < 1 {
        return Err(Error::Validation("e and t_max must be at least 1".into()));
    }
    let p = tower.ring().characteristic();
    let q = p
        .checked_pow(e)
        .ok_or(Error::ResourceLimit("q = p^e overflows u64".into()))?;
    let mut previous: Option<IdealHandle> = None;
    for t in 1..=t_max {
        let colon = tower.bracket_colon_at(t, q)?;
        if let Some(prev) = previous {
            if prev.is_equal(&colon)? {
                return Ok(ConditionBLevel {
                    e,
                    q,
                    kernel_length: finite_length(&colon)?,
                    stabilized_t: t - 1,
                });
            }
        }
        previous = Some(colon);
    }
    Err(Error::NotStable { t_max })
}

/// Per-e outcome of the finite A/B comparison.
#[derive(Debug, Clone)]
pub struct EquivalenceRow {
    pub e: u32,
    pub q: u64,
    pub a_stable_t: Option<u64>,
    pub b_stabilized_t: u64,
    pub b_within_a: bool,
    pub ideals_match: bool,
}

/// Finite-level equivalence report between Conditions (A) and (B).
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub label: String,
    pub rows: Vec<EquivalenceRow>,
    pub holds: bool,
}

/// For each e: the chain-union level from Condition (B) must sit at or below
/// the Condition (A) plateau, and the two stabilized ideals must agree.
pub fn condition_equivalence_check(
    tower: &IdealTower,
    e_max: u32,
    t_max: u64,
) -> Result<EquivalenceReport> {
    let a_report = condition_a_check(tower, e_max, t_max)?;
    let mut rows = Vec::new();
    let mut holds = true;
    for a_row in &a_report.rows {
        let b = condition_b_level(tower, a_row.e, t_max)?;
        let b_within_a = match a_row.stable_t {
            Some(t0) => b.stabilized_t <= t0,
            None => false,
        };
        let ideals_match = match a_row.stable_t {
            Some(t0) => {
                let a_ideal = tower.bracket_colon_at(t0, a_row.q)?;
                let b_ideal = tower.bracket_colon_at(b.stabilized_t, b.q)?;
                a_ideal.is_equal(&b_ideal)?
            }
            None => false,
        };
        holds &= b_within_a && ideals_match;
        rows.push(EquivalenceRow {
            e: a_row.e,
            q: a_row.q,
            a_stable_t: a_row.stable_t,
            b_stabilized_t: b.stabilized_t,
            b_within_a,
            ideals_match,
        });
    }
    Ok(EquivalenceReport {
        label: tower.label().to_string(),
        rows,
        holds,
    })
}

/// Outcome of one colon-saturation identity check.
#[derive(Debug, Clone)]
pub struct Eq1Report {
    pub n: u64,
    pub big_n: u64,
    pub i: usize,
    pub holds: bool,
    /// An element of the saturation missing from the n-th colon, when the
    /// identity fails.
    pub witness: Option<Polynomial>,
    pub saturation_steps: u64,
    pub warning: &'static str,
}

/// Checks (J^{(nh)}, x_2^N, ..., x̂_i^N, ..., x_d^N) : x_i^∞ =
/// (J^{(nh)}, x_2^N, ..., x̂_i^N, ..., x_d^N) : x_i^n.
pub fn verify_colon_saturation_identity(
    data: &QGorensteinData,
    n: u64,
    big_n: u64,
    i: usize,
) -> Result<Eq1Report> {
    let d = data.dimension();
    if i < 2 || i > d {
        return Err(Error::Validation(format!(
            "variable index i = {i} out of range 2..={d}"
        )));
    }
    if n < 1 || big_n < 1 {
        return Err(Error::Validation("n and N must be at least 1".into()));
    }
    let j = data.j_handle()?;
    let nh = n.checked_mul(data.h).ok_or(Error::ExponentOverflow {
        value: u64::MAX,
        max: crate::polyring::MAX_EXPONENT,
    })?;
    let (jnh, _) = symbolic_power(&j, nh, &data.saturating)?;
    let mut base_gens: Vec<Polynomial> = jnh.generators().to_vec();
    for idx in 2..=d {
        if idx == i {
            continue;
        }
        let x = data.x_element(idx).expect("index within dimension").clone();
        base_gens.push(x.pow(big_n));
    }
    let base = IdealHandle::new(data.ring.clone(), base_gens)?;
    let xi = data.x_element(i).expect("index within dimension").clone();
    let (lhs, steps) = base.saturation(&xi)?;
    let rhs = base.colon_element(&xi.pow(n))?;
    let holds = lhs.is_equal(&rhs)?;
    let witness = if holds {
        None
    } else {
        let mut found = None;
        for g in lhs.generators() {
            if !rhs.member(g)? {
                found = Some(g.clone());
                break;
            }
        }
        found
    };
    Ok(Eq1Report {
        n,
        big_n,
        i,
        holds,
        witness,
        saturation_steps: steps,
        warning: SYMBOLIC_POWER_WARNING,
    })
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

    fn poly(r: &Arc<RingPresentation>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn regular_tower(p: u64) -> IdealTower {
        let r = ring(p, &["x", "y"]);
        build_parameter_tower(
            &r,
            vec![poly(&r, "x"), poly(&r, "y")],
            poly(&r, "1"),
            "regular",
        )
        .unwrap()
    }

    #[test]
    fn parameter_tower_regular() {
        let tower = regular_tower(2);
        let i2 = tower.ideal_at(2).unwrap();
        let r = tower.ring().clone();
        assert!(i2
            .is_equal(&IdealHandle::from_exprs(&r, &["x^2", "y^2"]).unwrap())
            .unwrap());
        assert_eq!(r.render(&tower.socle_rep_at(2)), "x*y");
    }

    #[test]
    fn parameter_tower_a1() {
        let r = a1(3);
        let tower =
            build_parameter_tower(&r, vec![poly(&r, "x"), poly(&r, "y")], poly(&r, "z"), "a1")
                .unwrap();
        assert_eq!(tower.parameters().len(), 2);
    }

    #[test]
    fn parameter_tower_rejects_fat_socle() {
        // F_2[x,y,z]/(xy, xz, yz) with parameters x, y + z has socle
        // dimension 2 at t = 1.
        let ambient = ring(2, &["x", "y", "z"]);
        let rels = vec![
            poly(&ambient, "x*y"),
            poly(&ambient, "x*z"),
            poly(&ambient, "y*z"),
        ];
        let r = ambient.with_relations(rels).unwrap();
        let err = build_parameter_tower(
            &r,
            vec![poly(&r, "x"), poly(&r, "y + z")],
            poly(&r, "y"),
            "star",
        );
        match err {
            Err(Error::Validation(msg)) => assert!(msg.contains("irreducible"), "{msg}"),
            other => panic!("expected socle rejection, got {other:?}"),
        }
    }

    #[test]
    fn symbolic_power_principal_and_prime() {
        let r = ring(2, &["x", "y", "z"]);
        let j = IdealHandle::from_exprs(&r, &["x"]).unwrap();
        let c = poly(&r, "z");
        let (j2, _) = symbolic_power(&j, 3, &c).unwrap();
        assert!(j2
            .is_equal(&IdealHandle::from_exprs(&r, &["x^3"]).unwrap())
            .unwrap());

        // (x, y) is prime; saturation by z changes nothing.
        let j = IdealHandle::from_exprs(&r, &["x", "y"]).unwrap();
        let (j2, steps) = symbolic_power(&j, 2, &c).unwrap();
        assert!(j2.is_equal(&j.power(2).unwrap()).unwrap());
        assert_eq!(steps, 0);
    }

    #[test]
    fn condition_a_regular_tower() {
        let tower = regular_tower(2);
        let report = condition_a_check(&tower, 2, 4).unwrap();
        assert!(report.chain_ascending);
        assert_eq!(report.uniform_t0, Some(1));
        for row in &report.rows {
            assert_eq!(row.stable_t, Some(1));
            assert_eq!(row.kernel_length, Some(row.q * row.q));
        }
    }

    #[test]
    fn condition_b_matches_condition_a() {
        let tower = regular_tower(2);
        let b = condition_b_level(&tower, 2, 4).unwrap();
        assert_eq!(b.q, 4);
        assert_eq!(b.kernel_length, 16);
        assert_eq!(b.stabilized_t, 1);
        let eq = condition_equivalence_check(&tower, 2, 4).unwrap();
        assert!(eq.holds);
    }

    #[test]
    fn condition_b_not_stable_flag() {
        let tower = regular_tower(2);
        assert_eq!(
            condition_b_level(&tower, 1, 1),
            Err(Error::NotStable { t_max: 1 })
        );
    }

    #[test]
    fn qgorenstein_data_a1_validates_but_tower_is_rejected() {
        // J = (x, z) passes every checkable containment: h = 2 gives the
        // principal J^{(2)} = (x), a = z works, (x, y) is an s.o.p. But J is
        // not a canonical ideal (the quadric quotient is Gorenstein, so a
        // canonical ideal is principal), and indeed I_2 = (x^2, xz, y^2) has
        // socle spanned by z^2 and yz. The tower build must reject it.
        let r = a1(3);
        let data = QGorensteinData {
            ring: r.clone(),
            j_gens: vec![poly(&r, "x"), poly(&r, "z")],
            h: 2,
            a: poly(&r, "z"),
            x2: poly(&r, "y"),
            higher: vec![],
            x1: poly(&r, "x"),
            saturating: poly(&r, "y"),
        };
        data.validate().unwrap();
        let i2 = IdealHandle::from_exprs(&r, &["x^2", "x*z", "y^2"]).unwrap();
        assert_eq!(socle(&i2).unwrap().len(), 2);
        match build_qgorenstein_tower(&data, "a1-qgor") {
            Err(Error::Validation(msg)) => {
                assert!(msg.contains("irreducible"), "unexpected message: {msg}")
            }
            other => panic!("expected irreducibility rejection, got {other:?}"),
        }
    }

    fn twisted_cubic(p: u64) -> Arc<RingPresentation> {
        let ambient = ring(p, &["a", "b", "c", "d"]);
        let rels = vec![
            poly(&ambient, "a*c - b^2"),
            poly(&ambient, "b*d - c^2"),
            poly(&ambient, "a*d - b*c"),
        ];
        ambient.with_relations(rels).unwrap()
    }

    #[test]
    fn qgorenstein_tower_on_twisted_cubic_cone() {
        // The cone over the twisted cubic: J = (c, d) is a canonical ideal,
        // J^{(3)} = (d^2) is principal, a = c, x_2 = a, x_1 = d.
        let r = twisted_cubic(2);
        let data = QGorensteinData {
            ring: r.clone(),
            j_gens: vec![poly(&r, "c"), poly(&r, "d")],
            h: 3,
            a: poly(&r, "c"),
            x2: poly(&r, "a"),
            higher: vec![],
            x1: poly(&r, "d"),
            saturating: poly(&r, "a"),
        };
        data.validate().unwrap();
        let tower = build_qgorenstein_tower(&data, "qgor-demo").unwrap();
        // socle of I_1 = (c, d, a) is spanned by b.
        assert_eq!(r.render(tower.socle_seed()), "b");
        // u_2 = (d a) b lands on the socle of I_2 = (cd, d^2, a^2).
        let i2 = tower.ideal_at(2).unwrap();
        let u2 = tower.socle_rep_at(2);
        assert!(!i2.member(&u2).unwrap());
        for v in r.variables() {
            assert!(i2.member(&u2.mul(&v)).unwrap());
        }
    }

    #[test]
    fn twisted_cubic_symbolic_square_exceeds_square() {
        // For the height-one prime (b, c, d) of the twisted cubic cone, the
        // symbolic square (c, d) strictly contains the ordinary square.
        let r = twisted_cubic(2);
        let j = IdealHandle::from_exprs(&r, &["b", "c", "d"]).unwrap();
        let (j2, _) = symbolic_power(&j, 2, &poly(&r, "a")).unwrap();
        let square = j.power(2).unwrap();
        assert!(j2.contains(&square).unwrap());
        assert!(!square.contains(&j2).unwrap());
        assert!(j2
            .is_equal(&IdealHandle::from_exprs(&r, &["c", "d"]).unwrap())
            .unwrap());
        // c witnesses the strict containment.
        assert!(j2.member(&poly(&r, "c")).unwrap());
        assert!(!square.member(&poly(&r, "c")).unwrap());
    }

    #[test]
    fn qgorenstein_rejects_bad_containment() {
        // With a = x the containment x_2 J ⊆ aR fails (y z is not in xR).
        let r = a1(3);
        let data = QGorensteinData {
            ring: r.clone(),
            j_gens: vec![poly(&r, "x"), poly(&r, "z")],
            h: 2,
            a: poly(&r, "x"),
            x2: poly(&r, "y"),
            higher: vec![],
            x1: poly(&r, "x"),
            saturating: poly(&r, "y"),
        };
        match data.validate() {
            Err(Error::Validation(msg)) => {
                assert!(msg.contains("x_2 J"), "unexpected message: {msg}")
            }
            other => panic!("expected containment failure, got {other:?}"),
        }
    }

    #[test]
    fn gorenstein_degenerate_case_reduces_to_parameter_tower() {
        // J = (x) in F_2[x,y]: I_t = (x^{t-1} x, y^t) = (x^t, y^t).
        let r = ring(2, &["x", "y"]);
        let data = QGorensteinData {
            ring: r.clone(),
            j_gens: vec![poly(&r, "x")],
            h: 1,
            a: poly(&r, "x"),
            x2: poly(&r, "y"),
            higher: vec![],
            x1: poly(&r, "x"),
            saturating: poly(&r, "y"),
        };
        let tower = build_qgorenstein_tower(&data, "gor").unwrap();
        for t in 1..=3 {
            let expect =
                IdealHandle::from_exprs(&r, &[&format!("x^{t}"), &format!("y^{t}")]).unwrap();
            assert!(tower.ideal_at(t).unwrap().is_equal(&expect).unwrap());
        }
    }

    #[test]
    fn eq1_holds_for_principal_j() {
        let r = ring(2, &["x", "y"]);
        let data = QGorensteinData {
            ring: r.clone(),
            j_gens: vec![poly(&r, "x")],
            h: 1,
            a: poly(&r, "x"),
            x2: poly(&r, "y"),
            higher: vec![],
            x1: poly(&r, "x"),
            saturating: poly(&r, "y"),
        };
        for n in 1..=2 {
            for big_n in 2..=3 {
                let report = verify_colon_saturation_identity(&data, n, big_n, 2).unwrap();
                assert!(report.holds);
                assert!(report.witness.is_none());
            }
        }
    }

    #[test]
    fn eq1_detects_corrupted_data() {
        // J = (x y^2) is not a canonical-type ideal; the y-saturation of
        // J^{(n)} = (x^n y^{2n}) strictly exceeds the n-th colon, so the
        // identity fails and a witness is produced.
        let r = ring(2, &["x", "y"]);
        let data = QGorensteinData {
            ring: r.clone(),
            j_gens: vec![poly(&r, "x*y^2")],
            h: 1,
            a: poly(&r, "x*y^2"),
            x2: poly(&r, "y"),
            higher: vec![],
            x1: poly(&r, "x*y^2"),
            saturating: poly(&r, "x + y"),
        };
        let report = verify_colon_saturation_identity(&data, 1, 2, 2).unwrap();
        assert!(!report.holds);
        let witness = report.witness.expect("witness for failed identity");
        // The witness saturates but does not pass the single colon.
        let base = IdealHandle::from_exprs(&r, &["x*y^2"]).unwrap();
        let y = poly(&r, "y");
        assert!(base.saturation(&y).unwrap().0.member(&witness).unwrap());
        assert!(!base.colon_element(&y).unwrap().member(&witness).unwrap());
    }
}
