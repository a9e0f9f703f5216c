//! Ring-definition files: UTF-8 key-value text.
//!
//! ```text
//! p = 3
//! vars = x, y, z
//! relation = x*y - z^2
//! label = a1
//! expected_dimension = 2
//! ```
//!
//! `relation` may repeat; blank lines and `#` comments are ignored.

use std::sync::Arc;

use fsig_core::polyring::{parse_polynomial, RingPresentation};
use fsig_core::{Error, Result};

#[derive(Debug, Clone)]
pub struct RingDefinitionFile {
    pub p: u64,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub label: Option<String>,
    pub expected_dimension: Option<usize>,
}

impl RingDefinitionFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p: Option<u64> = None;
        let mut vars: Vec<String> = Vec::new();
        let mut relations: Vec<String> = Vec::new();
        let mut label = None;
        let mut expected_dimension = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    col: 1,
                    msg: "expected 'key = value'".into(),
                });
            };
            let key = key.trim();
            let value = value.trim();
            let col = raw.find('=').map(|i| i + 2).unwrap_or(1);
            match key {
                "p" => {
                    p = Some(value.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        col,
                        msg: format!("invalid prime '{value}'"),
                    })?)
                }
                "vars" => {
                    vars = value
                        .split(',')
                        .map(|v| v.trim().to_string())
                        .filter(|v| !v.is_empty())
                        .collect();
                }
                "relation" => relations.push(value.to_string()),
                "label" => label = Some(value.to_string()),
                "expected_dimension" => {
                    expected_dimension = Some(value.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        col,
                        msg: format!("invalid dimension '{value}'"),
                    })?)
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        msg: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        let p = p.ok_or(Error::Parse {
            line: 1,
            col: 1,
            msg: "missing 'p = <prime>'".into(),
        })?;
        if vars.is_empty() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "missing 'vars = ...'".into(),
            });
        }
        Ok(RingDefinitionFile {
            p,
            vars,
            relations,
            label,
            expected_dimension,
        })
    }

    /// Builds the presentation; checks the declared dimension when present.
    pub fn into_ring(&self) -> Result<Arc<RingPresentation>> {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let ambient = RingPresentation::polynomial_ring(self.p, &names)?;
        let rels = self
            .relations
            .iter()
            .map(|s| parse_polynomial(s, &ambient))
            .collect::<Result<Vec<_>>>()?;
        let ring = ambient.with_relations(rels)?;
        if let Some(expected) = self.expected_dimension {
            let d = fsig_core::artinian::ring_dimension(&ring)?;
            if d != expected {
                return Err(Error::Validation(format!(
                    "declared expected_dimension {expected} but computed dimension {d}"
                )));
            }
        }
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_quotient_ring() {
        let text = "# the quadric cone\np = 3\nvars = x, y, z\nrelation = x*y - z^2\nlabel = a1\nexpected_dimension = 2\n";
        let def = RingDefinitionFile::parse(text).unwrap();
        assert_eq!(def.p, 3);
        assert_eq!(def.vars, vec!["x", "y", "z"]);
        assert_eq!(def.label.as_deref(), Some("a1"));
        let ring = def.into_ring().unwrap();
        assert_eq!(ring.characteristic(), 3);
        assert_eq!(ring.relations().len(), 1);
    }

    #[test]
    fn rejects_non_prime_modulus() {
        let def = RingDefinitionFile::parse("p = 6\nvars = x\n").unwrap();
        assert!(matches!(def.into_ring(), Err(Error::NotPrime(6))));
    }

    #[test]
    fn rejects_wrong_declared_dimension() {
        let text = "p = 2\nvars = x, y\nexpected_dimension = 3\n";
        let def = RingDefinitionFile::parse(text).unwrap();
        assert!(matches!(def.into_ring(), Err(Error::Validation(_))));
    }

    #[test]
    fn reports_positions() {
        match RingDefinitionFile::parse("p = 2\nvars = x\nbogus line\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
