use serde::{Deserialize, Serialize};

/// Tri-state answer of an isomorphism decision. `Unknown` is a legitimate
/// outcome; a wrong definite answer is a bug.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict<W> {
    Isomorphic { witness: W },
    NotIsomorphic { certificate: String },
    Unknown { reason: String },
}

impl<W> IsoVerdict<W> {
    pub fn not_isomorphic(certificate: impl Into<String>) -> Self {
        IsoVerdict::NotIsomorphic {
            certificate: certificate.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        IsoVerdict::Unknown {
            reason: reason.into(),
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }

    pub fn is_not_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, IsoVerdict::Unknown { .. })
    }

    /// `"isomorphic"`, `"not_isomorphic"` or `"unknown"`.
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Isomorphic { .. } => "isomorphic",
            IsoVerdict::NotIsomorphic { .. } => "not_isomorphic",
            IsoVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            IsoVerdict::Isomorphic { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> IsoVerdict<V> {
        match self {
            IsoVerdict::Isomorphic { witness } => IsoVerdict::Isomorphic {
                witness: f(witness),
            },
            IsoVerdict::NotIsomorphic { certificate } => IsoVerdict::NotIsomorphic { certificate },
            IsoVerdict::Unknown { reason } => IsoVerdict::Unknown { reason },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let v: IsoVerdict<u8> = IsoVerdict::not_isomorphic("K0(A) differs");
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"verdict":"not_isomorphic","certificate":"K0(A) differs"}"#
        );
        let back: IsoVerdict<u8> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let v = IsoVerdict::Isomorphic { witness: 3u8 };
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"verdict":"isomorphic","witness":3}"#
        );
    }
}
