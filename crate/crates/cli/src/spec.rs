//! JSON spec files for sequences, weights and families.

use std::path::Path;

use lorentz::{EnvelopeKind, Envelope64, Family64, Sequence64, SequenceKind, WeightKind, Weights64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SequenceDoc {
    Finite {
        entries: Vec<f64>,
    },
    Power {
        c: f64,
        s: f64,
    },
    Geometric {
        c: f64,
        r: f64,
    },
    Tabled {
        entries: Vec<f64>,
        envelope: EnvelopeDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exact_prefix: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvelopeDoc {
    Power { c: f64, s: f64 },
    Geometric { c: f64, r: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightDoc {
    Power { beta: f64 },
    Prefix { values: Vec<f64>, tail_beta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyDoc {
    Explicit {
        members: Vec<SequenceDoc>,
    },
    Shift {
        base: SequenceDoc,
    },
    ScaledBasis {
        coeffs: SequenceDoc,
    },
    Dominated {
        envelope: SequenceDoc,
        #[serde(default)]
        samples: Vec<SequenceDoc>,
    },
}

fn invalid(path: &str, e: lorentz::Error) -> CliError {
    let field = match &e {
        lorentz::Error::InvalidWeight { field, .. }
        | lorentz::Error::InvalidSequence { field, .. }
        | lorentz::Error::InvalidEnvelope { field, .. }
        | lorentz::Error::InvalidFamily { field, .. } => Some(*field),
        _ => None,
    };
    CliError::Spec {
        field: match field {
            Some(f) if path.is_empty() => f.to_string(),
            Some(f) => format!("{path}.{f}"),
            None => path.to_string(),
        },
        reason: e.to_string(),
    }
}

impl EnvelopeDoc {
    pub fn build(&self, path: &str) -> Result<Envelope64, CliError> {
        match *self {
            Self::Power { c, s } => Envelope64::power_tail(c, s),
            Self::Geometric { c, r } => Envelope64::geometric_tail(c, r),
        }
        .map_err(|e| invalid(path, e))
    }

    pub fn from_core(env: &Envelope64) -> Self {
        match *env.kind() {
            EnvelopeKind::PowerTail { c, s } => Self::Power { c, s },
            EnvelopeKind::GeometricTail { c, r } => Self::Geometric { c, r },
        }
    }
}

impl SequenceDoc {
    pub fn build(&self, path: &str) -> Result<Sequence64, CliError> {
        match self {
            Self::Finite { entries } => Sequence64::finite(entries.clone()),
            Self::Power { c, s } => Sequence64::power(*c, *s),
            Self::Geometric { c, r } => Sequence64::geometric(*c, *r),
            Self::Tabled {
                entries,
                envelope,
                exact_prefix,
            } => {
                let env = envelope.build(&join(path, "envelope"))?;
                Sequence64::tabled_with_prefix(entries.clone(), env, exact_prefix.unwrap_or(entries.len()))
            }
        }
        .map_err(|e| invalid(path, e))
    }

    pub fn from_core(a: &Sequence64) -> Self {
        match a.kind() {
            SequenceKind::Finite { entries } => Self::Finite {
                entries: entries.clone(),
            },
            SequenceKind::Power { c, s } => Self::Power { c: *c, s: *s },
            SequenceKind::Geometric { c, r } => Self::Geometric { c: *c, r: *r },
            SequenceKind::Tabled {
                entries,
                envelope,
                exact_prefix,
            } => Self::Tabled {
                entries: entries.clone(),
                envelope: EnvelopeDoc::from_core(envelope),
                exact_prefix: (*exact_prefix != entries.len()).then_some(*exact_prefix),
            },
        }
    }
}

impl WeightDoc {
    pub fn build(&self, path: &str) -> Result<Weights64, CliError> {
        match self {
            Self::Power { beta } => Weights64::power_decay(*beta),
            Self::Prefix { values, tail_beta } => Weights64::explicit_prefix(values.clone(), *tail_beta),
        }
        .map_err(|e| invalid(path, e))
    }

    pub fn from_core(w: &Weights64) -> Self {
        match w.kind() {
            WeightKind::PowerDecay { beta } => Self::Power { beta: *beta },
            WeightKind::ExplicitPrefix { values, tail_beta } => Self::Prefix {
                values: values.clone(),
                tail_beta: *tail_beta,
            },
        }
    }
}

impl FamilyDoc {
    pub fn build(&self, path: &str) -> Result<Family64, CliError> {
        let list = |docs: &[SequenceDoc], field: &str| -> Result<Vec<Sequence64>, CliError> {
            docs.iter()
                .enumerate()
                .map(|(k, d)| d.build(&format!("{}[{k}]", join(path, field))))
                .collect()
        };
        match self {
            Self::Explicit { members } => Family64::explicit(list(members, "members")?),
            Self::Shift { base } => Family64::shift(base.build(&join(path, "base"))?),
            Self::ScaledBasis { coeffs } => Family64::scaled_basis(coeffs.build(&join(path, "coeffs"))?),
            Self::Dominated { envelope, samples } => {
                Family64::dominated(envelope.build(&join(path, "envelope"))?, list(samples, "samples")?)
            }
        }
        .map_err(|e| invalid(path, e))
    }

    pub fn from_core(f: &Family64) -> Self {
        let list = |v: &[Sequence64]| v.iter().map(SequenceDoc::from_core).collect();
        match f {
            Family64::Explicit { members } => Self::Explicit { members: list(members) },
            Family64::Shift { base } => Self::Shift {
                base: SequenceDoc::from_core(base),
            },
            Family64::ScaledBasis { coeffs } => Self::ScaledBasis {
                coeffs: SequenceDoc::from_core(coeffs),
            },
            Family64::Dominated { envelope, samples } => Self::Dominated {
                envelope: SequenceDoc::from_core(envelope),
                samples: list(samples),
            },
        }
    }
}

fn join(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

/// Reads a spec from a file, or inline when the argument itself is a JSON object.
pub fn load<D: Document>(source: &str) -> Result<D, CliError> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(Path::new(source)).map_err(|e| CliError::Io {
            path: source.to_string(),
            reason: e.to_string(),
        })?
    };
    parse(&text).map_err(|reason| CliError::Parse {
        origin: source.to_string(),
        reason,
    })
}

/// The four document shapes, for locating the field behind a parse error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Sequence,
    Envelope,
    Weight,
    Family,
}

pub trait Document: DeserializeOwned {
    const NODE: Node;
}

impl Document for SequenceDoc {
    const NODE: Node = Node::Sequence;
}
impl Document for EnvelopeDoc {
    const NODE: Node = Node::Envelope;
}
impl Document for WeightDoc {
    const NODE: Node = Node::Weight;
}
impl Document for FamilyDoc {
    const NODE: Node = Node::Family;
}

impl Node {
    fn check(self, v: &Value) -> Result<(), String> {
        let fail = |e: serde_json::Error| e.to_string();
        match self {
            Self::Sequence => SequenceDoc::deserialize(v).map(drop).map_err(fail),
            Self::Envelope => EnvelopeDoc::deserialize(v).map(drop).map_err(fail),
            Self::Weight => WeightDoc::deserialize(v).map(drop).map_err(fail),
            Self::Family => FamilyDoc::deserialize(v).map(drop).map_err(fail),
        }
    }

    fn child(self, field: &str) -> Option<Self> {
        match (self, field) {
            (Self::Sequence, "envelope") => Some(Self::Envelope),
            (Self::Family, "members" | "samples" | "base" | "coeffs" | "envelope") => Some(Self::Sequence),
            _ => None,
        }
    }

    /// Path of the innermost field that fails, with its error.
    fn locate(self, v: &Value, path: &str) -> Option<(String, String)> {
        let err = self.check(v).err()?;
        let Value::Object(fields) = v else {
            return Some((path.to_string(), err));
        };
        for (k, child) in fields {
            let Some(node) = self.child(k) else { continue };
            let here = join(path, k);
            let found = match child {
                Value::Array(items) => items
                    .iter()
                    .enumerate()
                    .find_map(|(i, item)| node.locate(item, &format!("{here}[{i}]"))),
                other => node.locate(other, &here),
            };
            if found.is_some() {
                return found;
            }
        }
        if let Some(missing) = err.strip_prefix("missing field `").and_then(|r| r.split('`').next()) {
            return Some((join(path, missing), err.clone()));
        }
        for k in fields.keys().filter(|k| *k != "kind") {
            let mut without = fields.clone();
            without.remove(k);
            match self.check(&Value::Object(without)) {
                Ok(()) => return Some((join(path, k), err)),
                Err(e) if e.contains(&format!("missing field `{k}`")) => return Some((join(path, k), err)),
                Err(_) => {}
            }
        }
        Some((path.to_string(), err))
    }
}

/// Parse errors name the path of the offending field when one can be singled out.
pub fn parse<D: Document>(text: &str) -> Result<D, String> {
    serde_json::from_str(text).map_err(|e| {
        let located = serde_json::from_str::<Value>(text)
            .ok()
            .and_then(|v| D::NODE.locate(&v, ""))
            .filter(|(path, _)| !path.is_empty());
        match located {
            Some((path, _)) => format!("at `{path}`: {e}"),
            None => e.to_string(),
        }
    })
}

pub fn to_pretty<S: Serialize>(doc: &S) -> String {
    serde_json::to_string_pretty(doc).expect("spec documents serialize")
}

/// `harmonic`, `invsqrt` or `power:<beta>`.
pub fn weight_shorthand(name: &str) -> Result<Weights64, CliError> {
    let bad = |reason: String| CliError::Spec {
        field: "w".into(),
        reason,
    };
    match name {
        "harmonic" => Ok(Weights64::harmonic()),
        "invsqrt" => Ok(Weights64::inv_sqrt()),
        other => match other.strip_prefix("power:") {
            Some(beta) => {
                let beta: f64 = beta.parse().map_err(|_| bad(format!("cannot read `{beta}` as a number")))?;
                Weights64::power_decay(beta).map_err(|e| bad(e.to_string()))
            }
            None => Err(bad(format!(
                "unknown weight `{other}`; expected harmonic, invsqrt or power:<beta>"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_field_is_named() {
        let err = parse::<SequenceDoc>(r#"{"kind": "power", "c": 1, "s": 1, "t": 2}"#).unwrap_err();
        assert!(err.contains("`t`"), "{err}");
        let err = parse::<SequenceDoc>(r#"{"kind": "finite"}"#).unwrap_err();
        assert!(err.contains("`entries`"), "{err}");
    }

    #[test]
    fn nested_parse_errors_are_located() {
        let err = parse::<FamilyDoc>(
            r#"{"kind": "explicit", "members": [{"kind": "finite", "entries": [1]},
                {"kind": "power", "c": 1, "s": "2"}]}"#,
        )
        .unwrap_err();
        assert!(err.starts_with("at `members[1].s`"), "{err}");
        let err = parse::<SequenceDoc>(r#"{"kind": "tabled", "entries": [1], "envelope": {"kind": "power", "c": 1}}"#)
            .unwrap_err();
        assert!(err.starts_with("at `envelope.s`"), "{err}");
    }

    #[test]
    fn validation_errors_carry_paths() {
        let doc: FamilyDoc = parse(
            r#"{"kind": "explicit", "members": [{"kind": "finite", "entries": [1]},
                {"kind": "geometric", "c": 1, "r": 2}]}"#,
        )
        .unwrap();
        match doc.build("") {
            Err(CliError::Spec { field, .. }) => assert_eq!(field, "members[1].r"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shorthands() {
        assert_eq!(weight_shorthand("harmonic").unwrap(), Weights64::harmonic());
        assert_eq!(weight_shorthand("power:0.5").unwrap(), Weights64::inv_sqrt());
        assert!(weight_shorthand("power:2").is_err());
        assert!(weight_shorthand("flat").is_err());
    }
}
