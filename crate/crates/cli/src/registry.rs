//! Built-in example rings with their default towers.
//!
//! Fixed entries cover regular rings, the A_n quadric/cusp quotients, the
//! non-reduced-direction nodal line and the twisted-cubic cone (the
//! Q-Gorenstein non-Gorenstein showcase). Names `a<k>` with k up to 9 are
//! resolved dynamically as x y = z^{k+1}.

use std::sync::Arc;

use fsig_core::conditions::{
    build_parameter_tower, build_qgorenstein_tower, IdealTower, QGorensteinData,
};
use fsig_core::polyring::{parse_polynomial, Polynomial, RingPresentation};
use fsig_core::{Error, Result};

#[derive(Debug, Clone)]
pub struct QgorSpec {
    pub j: Vec<String>,
    pub h: u64,
    pub a: String,
    pub x2: String,
    pub x1: String,
    /// Pairs (x_i, a_i) for 3 <= i <= d.
    pub higher: Vec<(String, String)>,
    pub saturating: String,
    /// Whether I_t = (x_1^{t-1}J, x_2^t, ...) is the example's default tower.
    pub tower: bool,
}

#[derive(Debug, Clone)]
pub struct Example {
    pub name: String,
    pub description: String,
    pub default_p: u64,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub tower_params: Vec<String>,
    pub tower_u1: String,
    pub expected_dimension: usize,
    pub strongly_f_regular: bool,
    pub qgor: Option<QgorSpec>,
}

impl Example {
    pub fn ring(&self, p_override: Option<u64>) -> Result<Arc<RingPresentation>> {
        let p = p_override.unwrap_or(self.default_p);
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let ambient = RingPresentation::polynomial_ring(p, &names)?;
        let rels = self
            .relations
            .iter()
            .map(|s| parse_polynomial(s, &ambient))
            .collect::<Result<Vec<_>>>()?;
        ambient.with_relations(rels)
    }

    fn poly(&self, ring: &Arc<RingPresentation>, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, ring)
    }

    /// The example's default validated tower.
    pub fn tower(&self, ring: &Arc<RingPresentation>) -> Result<IdealTower> {
        if let Some(q) = &self.qgor {
            if q.tower {
                return build_qgorenstein_tower(&self.qgor_data(ring)?, &self.name);
            }
        }
        let params = self
            .tower_params
            .iter()
            .map(|s| self.poly(ring, s))
            .collect::<Result<Vec<_>>>()?;
        let u1 = self.poly(ring, &self.tower_u1)?;
        build_parameter_tower(ring, params, u1, &self.name)
    }

    pub fn qgor_data(&self, ring: &Arc<RingPresentation>) -> Result<QGorensteinData> {
        let qgor = self.qgor.as_ref().ok_or_else(|| {
            Error::Validation(format!(
                "example '{}' carries no Q-Gorenstein data",
                self.name
            ))
        })?;
        Ok(QGorensteinData {
            ring: ring.clone(),
            j_gens: qgor
                .j
                .iter()
                .map(|s| self.poly(ring, s))
                .collect::<Result<Vec<_>>>()?,
            h: qgor.h,
            a: self.poly(ring, &qgor.a)?,
            x2: self.poly(ring, &qgor.x2)?,
            higher: qgor
                .higher
                .iter()
                .map(|(x, a)| Ok((self.poly(ring, x)?, self.poly(ring, a)?)))
                .collect::<Result<Vec<_>>>()?,
            x1: self.poly(ring, &qgor.x1)?,
            saturating: self.poly(ring, &qgor.saturating)?,
        })
    }
}

fn s(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// The fixed registry, in report order.
pub fn registry() -> Vec<Example> {
    vec![
        Example {
            name: "regular-2".into(),
            description: "polynomial ring in two variables".into(),
            default_p: 2,
            vars: s(&["x", "y"]),
            relations: vec![],
            tower_params: s(&["x", "y"]),
            tower_u1: "1".into(),
            expected_dimension: 2,
            strongly_f_regular: true,
            qgor: None,
        },
        Example {
            name: "regular-3".into(),
            description: "polynomial ring in three variables".into(),
            default_p: 3,
            vars: s(&["x", "y", "z"]),
            relations: vec![],
            tower_params: s(&["x", "y", "z"]),
            tower_u1: "1".into(),
            expected_dimension: 3,
            strongly_f_regular: true,
            qgor: None,
        },
        Example {
            name: "a1".into(),
            description: "quadric cone x y = z^2".into(),
            default_p: 3,
            vars: s(&["x", "y", "z"]),
            relations: vec!["x*y - z^2".into()],
            tower_params: s(&["x", "y"]),
            tower_u1: "z".into(),
            expected_dimension: 2,
            strongly_f_regular: true,
            // Passes every checkable containment (h = 2, J^{(2)} = (x)), but
            // J is not a canonical ideal, so it does not back a tower; kept
            // for the colon-saturation identity checks.
            qgor: Some(QgorSpec {
                j: s(&["x", "z"]),
                h: 2,
                a: "z".into(),
                x2: "y".into(),
                x1: "x".into(),
                higher: vec![],
                saturating: "y".into(),
                tower: false,
            }),
        },
        Example {
            name: "a2".into(),
            description: "cusp-type quotient x y = z^3".into(),
            default_p: 5,
            vars: s(&["x", "y", "z"]),
            relations: vec!["x*y - z^3".into()],
            tower_params: s(&["x", "y"]),
            tower_u1: "z^2".into(),
            expected_dimension: 2,
            strongly_f_regular: true,
            qgor: None,
        },
        Example {
            name: "nodal-line".into(),
            description: "two crossing lines x y = 0 (not strongly F-regular)".into(),
            default_p: 2,
            vars: s(&["x", "y"]),
            relations: vec!["x*y".into()],
            tower_params: s(&["x + y"]),
            tower_u1: "x".into(),
            expected_dimension: 1,
            strongly_f_regular: false,
            qgor: None,
        },
        Example {
            name: "veronese-2".into(),
            description: "second Veronese presentation a c = b^2".into(),
            default_p: 3,
            vars: s(&["a", "b", "c"]),
            relations: vec!["a*c - b^2".into()],
            tower_params: s(&["a", "c"]),
            tower_u1: "b".into(),
            expected_dimension: 2,
            strongly_f_regular: true,
            qgor: None,
        },
        Example {
            name: "qgor-demo".into(),
            description: "cone over the twisted cubic (Q-Gorenstein, non-Gorenstein)".into(),
            default_p: 2,
            vars: s(&["a", "b", "c", "d"]),
            relations: vec!["a*c - b^2".into(), "b*d - c^2".into(), "a*d - b*c".into()],
            tower_params: vec![],
            tower_u1: String::new(),
            expected_dimension: 2,
            strongly_f_regular: true,
            qgor: Some(QgorSpec {
                j: s(&["c", "d"]),
                h: 3,
                a: "c".into(),
                x2: "a".into(),
                x1: "d".into(),
                higher: vec![],
                saturating: "a".into(),
                tower: true,
            }),
        },
    ]
}

/// Looks up a fixed entry, or resolves `a<k>` (k = 1..9) dynamically.
pub fn find(name: &str) -> Result<Example> {
    if let Some(example) = registry().into_iter().find(|e| e.name == name) {
        return Ok(example);
    }
    if let Some(k) = name
        .strip_prefix('a')
        .and_then(|rest| rest.parse::<u64>().ok())
    {
        if (1..=9).contains(&k) {
            let exponent = k + 1;
            let default_p = [2u64, 3, 5, 7]
                .into_iter()
                .find(|p| exponent % p != 0)
                .expect("some small prime misses k+1");
            return Ok(Example {
                name: format!("a{k}"),
                description: format!("quotient singularity x y = z^{exponent}"),
                default_p,
                vars: s(&["x", "y", "z"]),
                relations: vec![format!("x*y - z^{exponent}")],
                tower_params: s(&["x", "y"]),
                tower_u1: format!("z^{k}"),
                expected_dimension: 2,
                strongly_f_regular: true,
                qgor: None,
            });
        }
    }
    Err(Error::Validation(format!(
        "unknown example '{name}'; known: {}, or a<k> for k = 1..9",
        registry()
            .iter()
            .map(|e| e.name.clone())
            .collect::<Vec<_>>()
            .join(", ")
    )))
}
