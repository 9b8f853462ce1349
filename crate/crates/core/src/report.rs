//! Structured verification results and their JSON form.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::ratpoly::Rational;
use crate::Error;

/// Stable short names used on the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    Eq11,
    Eq12,
    Eq13,
    Eq14,
    Eq15,
    Eq16,
    Eq17,
    Eq18,
    Lemma21,
    Eq22,
    CosSum,
    SineRatio,
    Cor11Expanded,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::Eq11,
        IdentityId::Eq12,
        IdentityId::Eq13,
        IdentityId::Eq14,
        IdentityId::Eq15,
        IdentityId::Eq16,
        IdentityId::Eq17,
        IdentityId::Eq18,
        IdentityId::Lemma21,
        IdentityId::Eq22,
        IdentityId::CosSum,
        IdentityId::SineRatio,
        IdentityId::Cor11Expanded,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Eq11 => "eq11",
            IdentityId::Eq12 => "eq12",
            IdentityId::Eq13 => "eq13",
            IdentityId::Eq14 => "eq14",
            IdentityId::Eq15 => "eq15",
            IdentityId::Eq16 => "eq16",
            IdentityId::Eq17 => "eq17",
            IdentityId::Eq18 => "eq18",
            IdentityId::Lemma21 => "lemma21",
            IdentityId::Eq22 => "eq22",
            IdentityId::CosSum => "cos_sum",
            IdentityId::SineRatio => "sine_ratio",
            IdentityId::Cor11Expanded => "cor11_expanded",
        }
    }

    pub fn supports(self, mode: Mode) -> bool {
        use IdentityId::*;
        match mode {
            Mode::Exact => !matches!(self, Eq15 | Eq22),
            Mode::Numeric => matches!(self, Eq14 | Eq15 | Eq22 | CosSum | SineRatio),
        }
    }

    pub fn default_mode(self) -> Mode {
        if self.supports(Mode::Exact) {
            Mode::Exact
        } else {
            Mode::Numeric
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// Parameter value: integers stay numeric in JSON, rationals and decimals
/// are strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<&Rational> for ParamValue {
    fn from(r: &Rational) -> Self {
        ParamValue::Text(r.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(s: String) -> Self {
        ParamValue::Text(s)
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: IndexMap<String, ParamValue>,
    pub mode: Mode,
    pub expected: Rational,
    pub computed_real: String,
    pub computed_imag: Option<String>,
    pub residual: Option<String>,
    pub status: Status,
    pub micros: u64,
    /// Human-readable explanation for inapplicable or failed reports.
    #[serde(skip)]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn param(&self, name: &str) -> Option<&ParamValue> {
        self.params.get(name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One-line summary, `key=value` pairs after the identity name.
    pub fn to_human(&self) -> String {
        let mut out = format!("{} [{}]", self.identity, self.mode);
        for (k, v) in &self.params {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push_str(&format!(" expected={} real={}", self.expected, self.computed_real));
        if let Some(im) = &self.computed_imag {
            out.push_str(&format!(" imag={im}"));
        }
        if let Some(r) = &self.residual {
            out.push_str(&format!(" residual={r}"));
        }
        out.push_str(&format!(" => {} ({} us)", self.status, self.micros));
        if let Some(note) = &self.note {
            out.push_str(&format!(" -- {note}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> IdentityReport {
        let mut params = IndexMap::new();
        params.insert("n".to_string(), ParamValue::Int(3));
        params.insert("order".to_string(), ParamValue::Int(8));
        params.insert("tolerance".to_string(), ParamValue::Text("1.5e-50".into()));
        IdentityReport {
            identity: IdentityId::Eq14,
            params,
            mode: Mode::Exact,
            expected: "-1".parse().unwrap(),
            computed_real: "-1".into(),
            computed_imag: Some("1/2".into()),
            residual: None,
            status: Status::Pass,
            micros: 42,
            note: None,
        }
    }

    #[test]
    fn json_key_order_is_stable() {
        let json = sample().to_json();
        assert_eq!(
            json,
            r#"{"identity":"eq14","params":{"n":3,"order":8,"tolerance":"1.5e-50"},"mode":"exact","expected":"-1","computed_real":"-1","computed_imag":"1/2","residual":null,"status":"pass","micros":42}"#
        );
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let json = sample().to_json();
        let back = IdentityReport::from_json(&json).unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!("eq99".parse::<IdentityId>().is_err());
    }

    #[test]
    fn mode_support() {
        assert!(IdentityId::Eq14.supports(Mode::Exact) && IdentityId::Eq14.supports(Mode::Numeric));
        assert!(!IdentityId::Eq15.supports(Mode::Exact));
        assert!(!IdentityId::Lemma21.supports(Mode::Numeric));
        assert_eq!(IdentityId::Eq22.default_mode(), Mode::Numeric);
    }
}
