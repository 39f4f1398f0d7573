use serde::{Deserialize, Serialize};

/// Outcome of one checked claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub anchor: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Claim {
    pub fn pass(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self { id: id.into(), anchor: anchor.into(), passed: true, witness: None, detail: None }
    }

    pub fn fail(id: impl Into<String>, anchor: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { id: id.into(), anchor: anchor.into(), passed: false, witness: Some(witness.into()), detail: None }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(id: impl Into<String>, anchor: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(id, anchor),
            Some(w) => Self::fail(id, anchor, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// The claims checked by one suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub claims: Vec<Claim>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, parameters: serde_json::Value) -> Self {
        Self { suite: suite.into(), parameters, seed: None, claims: Vec::new() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, c: Claim) {
        self.claims.push(c);
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Symbolic,
    EvaluatedRational,
    Modular,
}

impl std::str::FromStr for Strategy {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "symbolic" => Ok(Strategy::Symbolic),
            "evaluated" | "evaluated-rational" => Ok(Strategy::EvaluatedRational),
            "modular" => Ok(Strategy::Modular),
            _ => Err(crate::error::invalid(format!("unknown strategy '{s}'"))),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Symbolic => "symbolic",
            Strategy::EvaluatedRational => "evaluated-rational",
            Strategy::Modular => "modular",
        })
    }
}

/// Evidence for the linear independence of a family of matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub family_size: usize,
    pub strategy: Strategy,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub rank: usize,
    pub certified: bool,
}

impl RankCertificate {
    pub fn new(family_size: usize, strategy: Strategy, points: Vec<String>, modulus: Option<u64>, seed: Option<u64>, rank: usize) -> Self {
        Self { family_size, strategy, points, modulus, seed, rank, certified: rank == family_size }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_iff_fail() {
        let mut r = SuiteReport::new("x", serde_json::json!({}));
        r.push(Claim::from_witness("a", "anchor", None));
        assert!(r.passed());
        r.push(Claim::from_witness("b", "anchor", Some("entry (0, 0)".into())));
        assert!(!r.passed());
        for c in &r.claims {
            assert_eq!(c.passed, c.witness.is_none());
        }
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn certificate_flag() {
        let c = RankCertificate::new(10, Strategy::Symbolic, vec![], None, None, 9);
        assert!(!c.certified);
        assert_eq!(c.to_json()["strategy"], serde_json::json!("symbolic"));
    }
}
