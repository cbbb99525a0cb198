use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckResult {
    Pass,
    Fail,
    Skipped,
}

impl CheckResult {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckResult::Pass => "pass",
            CheckResult::Fail => "fail",
            CheckResult::Skipped => "skipped",
        }
    }
}

/// Outcome of one identity family over its whole scope.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub scope: Value,
    pub result: CheckResult,
    /// Present on failure: the first failing instance in scope order.
    pub witness: Option<Value>,
    pub measured: Option<Value>,
    pub reason: Option<String>,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, scope: Value, result: CheckResult) -> Self {
        IdentityCheck {
            name: name.into(),
            scope,
            result,
            witness: None,
            measured: None,
            reason: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_measured(mut self, measured: Value) -> Self {
        self.measured = Some(measured);
        self
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.result == CheckResult::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("scope".into(), self.scope.clone());
        m.insert("result".into(), json!(self.result.as_str()));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        if let Some(x) = &self.measured {
            m.insert("measured".into(), x.clone());
        }
        if let Some(r) = &self.reason {
            m.insert("reason".into(), json!(r));
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub config: Value,
    pub checks: Vec<IdentityCheck>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl VerificationReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.result {
                CheckResult::Pass => s.pass += 1,
                CheckResult::Fail => s.fail += 1,
                CheckResult::Skipped => s.skipped += 1,
            }
        }
        s
    }

    /// No check failed.
    pub fn ok(&self) -> bool {
        self.summary().fail == 0
    }

    /// Checks whose name starts with `prefix`.
    pub fn checks_named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a IdentityCheck> + 'a {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }

    pub fn to_json(&self) -> Value {
        let s = self.summary();
        json!({
            "config": self.config,
            "checks": self.checks.iter().map(IdentityCheck::to_json).collect::<Vec<_>>(),
            "summary": {"pass": s.pass, "fail": s.fail, "skipped": s.skipped},
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        out.push('\n');
        out
    }
}
