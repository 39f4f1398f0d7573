use serde::Serialize;

use crate::exact::RatFunc;
use crate::weave::Variant;

/// One computed trace, optionally compared with an expected value.
#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub expression: String,
    pub variant: Variant,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: usize,
    #[serde(serialize_with = "as_text")]
    pub value: RatFunc,
    #[serde(serialize_with = "opt_as_text")]
    pub expected: Option<RatFunc>,
    #[serde(rename = "match")]
    pub matched: bool,
}

fn as_text<S: serde::Serializer>(v: &RatFunc, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_as_text<S: serde::Serializer>(v: &Option<RatFunc>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

impl TraceReport {
    pub fn new(expression: String, variant: Variant, big_n: usize, n: usize, value: RatFunc, expected: Option<RatFunc>) -> Self {
        let matched = expected.as_ref().is_none_or(|e| *e == value);
        Self { expression, variant, big_n, n, value, expected, matched }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// CSV with header `expression,value,expected,match`.
pub fn reports_to_csv(reports: &[TraceReport]) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    let mut out = String::from("expression,value,expected,match\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{}\n",
            quote(&r.expression),
            quote(&r.value.to_string()),
            quote(&r.expected.as_ref().map(|e| e.to_string()).unwrap_or_default()),
            r.matched
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;

    #[test]
    fn csv_and_json() {
        let v = parse_scalar("[2]/[3]").unwrap();
        let r = TraceReport::new("u1".into(), Variant::Plus, 3, 2, v.clone(), Some(v));
        assert!(r.matched);
        let csv = reports_to_csv(std::slice::from_ref(&r));
        assert!(csv.lines().nth(1).unwrap().starts_with("\"u1\","));
        assert_eq!(r.to_json()["match"], serde_json::json!(true));
        assert_eq!(r.to_json()["N"], serde_json::json!(3));
    }
}
