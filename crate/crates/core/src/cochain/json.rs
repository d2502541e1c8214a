use serde::{Deserialize, Serialize};

use super::{Bits, Cochain};
use crate::error::{Error, Result};

/// Writers switch from explicit member lists to packed bits above this size.
pub const SETS_LIMIT: usize = 10_000;

/// Serialized form of a cochain.
///
/// Members are given either as `sets` (label lists in colex order) or as
/// `bits_hex`, little-endian bytes over colex ranks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainJson {
    pub n: usize,
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bits_hex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl CochainJson {
    pub fn from_cochain(e: &Cochain) -> Self {
        let (sets, bits_hex) = if e.len() <= SETS_LIMIT {
            (Some(e.sets()), None)
        } else {
            (None, Some(hex::encode(e.bits().to_le_bytes())))
        };
        Self { n: e.n(), arity: e.arity(), sets, bits_hex, provenance: None }
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn to_cochain(&self) -> Result<Cochain> {
        match (&self.sets, &self.bits_hex) {
            (Some(sets), None) => {
                for s in sets {
                    if s.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::UnsortedSubset(s.clone()));
                    }
                }
                Cochain::from_sets(self.n, self.arity, sets)
            }
            (None, Some(hex)) => {
                let empty = Cochain::empty(self.n, self.arity)?;
                let bytes = hex::decode(hex).map_err(|e| Error::Parse(format!("bits_hex: {e}")))?;
                let bits = Bits::from_le_bytes(&bytes, empty.capacity())
                    .ok_or_else(|| Error::Parse("bits_hex has the wrong length or stray high bits".into()))?;
                Cochain::from_bits(self.n, self.arity, bits)
            }
            (Some(_), Some(_)) => Err(Error::Parse("give either sets or bits_hex, not both".into())),
            (None, None) => Err(Error::Parse("missing sets or bits_hex".into())),
        }
    }
}

impl Cochain {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CochainJson::from_cochain(self)).expect("cochain json")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&CochainJson::from_cochain(self)).expect("cochain json")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: CochainJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_cochain()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: CochainJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_cochain()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_form() {
        let e = Cochain::from_sets(5, 2, [[2, 4], [2, 5]]).unwrap();
        let s = e.to_json_string();
        assert_eq!(s, r#"{"n":5,"arity":2,"sets":[[2,4],[2,5]]}"#);
        assert_eq!(Cochain::from_json_str(&s).unwrap(), e);
    }

    #[test]
    fn bits_form() {
        let e = Cochain::from_sets(5, 2, [[1, 2], [4, 5]]).unwrap();
        let j = r#"{"n":5,"arity":2,"bits_hex":"0102"}"#;
        assert_eq!(Cochain::from_json_str(j).unwrap(), e);
        let bad = r#"{"n":5,"arity":2,"bits_hex":"0106"}"#;
        assert!(Cochain::from_json_str(bad).is_err());
    }

    #[test]
    fn large_cochains_use_bits() {
        let e = Cochain::full(41, 3).unwrap();
        let j = CochainJson::from_cochain(&e);
        assert!(j.sets.is_none());
        assert_eq!(j.to_cochain().unwrap(), e);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Cochain::from_json_str(r#"{"n":5,"arity":2,"sets":[[4,2]]}"#).is_err());
        assert!(Cochain::from_json_str(r#"{"n":5,"arity":2,"sets":[[2,9]]}"#).is_err());
        assert!(Cochain::from_json_str(r#"{"n":5,"arity":2}"#).is_err());
        assert!(Cochain::from_json_str(r#"{"n":5,"arity":2,"sets":[[1,2,3]]}"#).is_err());
    }
}
