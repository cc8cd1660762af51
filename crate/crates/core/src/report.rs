use std::fmt;
use std::time::Duration;

use serde::Serialize;

/// Outcome of one identity check. Both sides are kept as display strings so
/// reports of different coefficient rings can be collected together.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    /// `(name, value)` pairs describing the instance.
    pub params: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    /// Total degree in the inverse variables below which the sides were
    /// compared; absent for exact comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compared_order: Option<u32>,
    /// First coefficient on which the sides differ, when they do.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<String>,
    /// Set when the check could not be carried out.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>) -> Self {
        VerificationReport {
            identity: identity.into(),
            params: vec![],
            lhs: String::new(),
            rhs: String::new(),
            equal: false,
            compared_order: None,
            first_difference: None,
            error: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn param(mut self, name: &str, value: impl fmt::Display) -> Self {
        self.params.push((name.to_string(), value.to_string()));
        self
    }

    pub fn sides(mut self, lhs: impl fmt::Display, rhs: impl fmt::Display, equal: bool) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self.equal = equal;
        self
    }

    pub fn failed(mut self, err: impl fmt::Display) -> Self {
        self.error = Some(err.to_string());
        self.equal = false;
        self
    }

    pub fn passed(&self) -> bool {
        self.equal && self.error.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{} [{}]: ", self.identity, params.join(" "))?;
        if let Some(e) = &self.error {
            return write!(f, "error: {e}");
        }
        write!(f, "{}", if self.equal { "equal" } else { "MISMATCH" })?;
        if let Some(t) = self.compared_order {
            write!(f, " below order {t}")?;
        }
        if !self.equal {
            write!(f, "\n  lhs = {}\n  rhs = {}", self.lhs, self.rhs)?;
            if let Some(d) = &self.first_difference {
                write!(f, "\n  first difference: {d}")?;
            }
        }
        Ok(())
    }
}
