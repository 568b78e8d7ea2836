use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub pass: bool,
    pub evidence: String,
}

impl SubCheck {
    pub fn new(name: impl Into<String>, pass: bool, evidence: impl Into<String>) -> Self {
        SubCheck { name: name.into(), pass, evidence: evidence.into() }
    }
}

/// Named sub-checks plus free-form notes; `pass` holds iff every sub-check
/// passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub schema: &'static str,
    pub witness: String,
    pub checks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
}

impl WitnessReport {
    pub fn new(witness: &str, checks: Vec<SubCheck>, notes: Vec<String>) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        WitnessReport { schema: "1", witness: witness.into(), checks, notes, pass }
    }

    pub fn check(&self, name: &str) -> Option<&SubCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("witness {}\n", self.witness);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.evidence));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}
