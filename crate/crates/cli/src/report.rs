use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn compare(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        Check { name: name.into(), expected, actual, pass }
    }

    /// Pass/fail check; `detail` explains a failure.
    pub fn flag(name: impl Into<String>, pass: bool, detail: impl ToString) -> Self {
        let actual = if pass { "pass".to_string() } else { format!("fail: {}", detail.to_string()) };
        Check { name: name.into(), expected: "pass".into(), actual, pass }
    }
}

/// Machine-readable output shared by every command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub checks: Vec<Check>,
    pub result: Value,
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub watermark: Option<&'static str>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// A finished command: the report plus its text and CSV renderings.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub csv: Option<String>,
}

pub fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Integers stay JSON numbers while they fit an `i64`.
pub fn big_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(v.to_string()),
    }
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "yes"
    } else {
        "no"
    }
}
