//! Canonical JSON form of characters.

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanType, RootSystem, Weight};
use crate::charring::{Anchor, GradedCharacter, Truncation};
use crate::coeff::Int;
use crate::error::{precondition, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    #[serde(rename = "type")]
    pub kind: CartanType,
    pub rank: usize,
    pub level: i64,
    pub truncation: Truncation,
    pub anchor: Anchor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub weight: Weight,
    pub q: i64,
    pub coeff: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDoc {
    pub schema_version: u32,
    pub header: Header,
    pub terms: Vec<Term>,
}

impl CharacterDoc {
    pub fn new(rs: &RootSystem, f: &GradedCharacter) -> CharacterDoc {
        CharacterDoc {
            schema_version: SCHEMA_VERSION,
            header: Header {
                kind: rs.kind,
                rank: rs.rank,
                level: f.level(),
                truncation: f.truncation(),
                anchor: f.anchor(),
            },
            terms: f.sorted_terms().into_iter().map(|(weight, q, coeff)| Term { weight, q, coeff }).collect(),
        }
    }

    pub fn to_character(&self) -> Result<GradedCharacter> {
        if self.schema_version != SCHEMA_VERSION {
            return precondition(format!("schema version {} is not {SCHEMA_VERSION}", self.schema_version));
        }
        if self.terms.iter().any(|t| t.weight.rank() != self.header.rank) {
            return precondition("term weight length differs from rank");
        }
        Ok(GradedCharacter::from_terms(
            self.header.rank,
            self.header.level,
            self.header.truncation,
            self.header.anchor,
            self.terms.iter().map(|t| (t.weight, t.q, t.coeff.clone())),
        ))
    }

    /// Terms at `q^0`, in canonical order.
    pub fn bottom_slice(&self) -> Vec<&Term> {
        self.terms.iter().filter(|t| t.q == 0).collect()
    }
}

pub fn to_json(rs: &RootSystem, f: &GradedCharacter) -> String {
    serde_json::to_string(&CharacterDoc::new(rs, f)).expect("serializable")
}

pub fn from_json(s: &str) -> Result<GradedCharacter> {
    let doc: CharacterDoc =
        serde_json::from_str(s).map_err(|e| crate::error::Error::Precondition(format!("bad character JSON: {e}")))?;
    doc.to_character()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demazure::weyl_gch;

    #[test]
    fn round_trip_is_byte_stable() {
        let rs = RootSystem::parse("A", 2).unwrap();
        let f = weyl_gch(&rs, &Weight::new(&[1, 1]), 1).unwrap();
        let s = to_json(&rs, &f);
        let g = from_json(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(to_json(&rs, &g), s);
        assert!(s.starts_with("{\"schema_version\":1"));
    }
}
