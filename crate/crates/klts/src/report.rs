use serde::Serialize;

/// Outcome of one verified property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    /// Phrase locating the verified relation in the formulation.
    pub anchor: String,
    pub samples: usize,
    /// `None` when a sample could not be evaluated.
    pub max_error: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub tool: &'static str,
    pub version: &'static str,
    pub os: &'static str,
    pub arch: &'static str,
    pub rng: &'static str,
}

impl Environment {
    pub fn current() -> Self {
        Environment {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
            rng: "ChaCha8 (rand_chacha 0.3), seed_from_u64(seed), stream = property group id",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: String,
    pub seed: u64,
    pub environment: Environment,
    pub records: Vec<Record>,
    pub passed: usize,
    pub failed: usize,
    pub overall: &'static str,
}

impl VerificationReport {
    pub fn new(config: String, seed: u64, records: Vec<Record>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let failed = records.len() - passed;
        VerificationReport {
            config,
            seed,
            environment: Environment::current(),
            records,
            passed,
            failed,
            overall: if failed == 0 { "pass" } else { "fail" },
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(pass: bool) -> Record {
        Record {
            name: "x".into(),
            anchor: "a".into(),
            samples: 1,
            max_error: Some(0.0),
            tolerance: 1.0,
            pass,
            error: None,
            runtime_ms: None,
        }
    }

    #[test]
    fn overall_requires_every_record() {
        assert!(VerificationReport::new("c".into(), 1, vec![rec(true), rec(true)]).all_pass());
        let r = VerificationReport::new("c".into(), 1, vec![rec(true), rec(false)]);
        assert_eq!((r.passed, r.failed, r.overall), (1, 1, "fail"));
    }

    #[test]
    fn runtime_is_omitted_unless_present() {
        let json = serde_json::to_string(&rec(true)).unwrap();
        assert!(!json.contains("runtime_ms"));
        assert!(!json.contains("\"error\""));
    }
}
