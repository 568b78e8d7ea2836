//! Derivation scripts: the JSON format, single steps and full replay.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use zx_core::{check_isomorphism, Diagram, DiagramJson};
use zx_interp::{compare_diagrams, invariant_r, Backend, Comparison, InterpError};
use zx_rules::{check_sides, check_soundness, instantiate, lookup, Bindings, Origin, RuleSet, Variant};

use crate::embedding::{rewrite, validate_embedding, Embedding};
use crate::twins::{local_instance, merge_twins};
use crate::DeriveError;

/// Pseudo-rule name for a twin merge.
pub const TWINS: &str = "TWINS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Ltr,
    Rtl,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default)]
    pub dir: Direction,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub bindings: serde_json::Value,
    #[serde(rename = "match", default)]
    pub embedding: Embedding,
    /// Host ids for the inserted nodes; unnamed ones get fresh ids.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub names: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Step {
    pub fn new(rule: &str) -> Self {
        Step {
            rule: rule.into(),
            variant: Variant::default(),
            dir: Direction::Ltr,
            bindings: serde_json::Value::Null,
            embedding: Embedding::default(),
            names: BTreeMap::new(),
            note: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ScriptJson {
    ruleset: String,
    initial: DiagramJson,
    steps: Vec<Step>,
    #[serde(rename = "final")]
    claimed: DiagramJson,
    final_iso: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct Script {
    pub ruleset: RuleSet,
    pub initial: Diagram,
    pub steps: Vec<Step>,
    pub claimed: Diagram,
    pub final_iso: BTreeMap<String, String>,
}

impl Script {
    pub fn from_json(text: &str) -> Result<Script, DeriveError> {
        let raw: ScriptJson = serde_json::from_str(text).map_err(|e| DeriveError::Format(e.to_string()))?;
        let diagram = |j: &DiagramJson, what: &str| -> Result<Diagram, DeriveError> {
            let d = Diagram::try_from(j).map_err(|e| DeriveError::Format(format!("{what}: {e}")))?;
            zx_core::validate_diagram(&d).map_err(|v| DeriveError::Format(format!("{what}: {v}")))?;
            Ok(d)
        };
        Ok(Script {
            ruleset: raw.ruleset.parse().map_err(|e: zx_rules::RuleError| DeriveError::Format(e.to_string()))?,
            initial: diagram(&raw.initial, "initial")?,
            steps: raw.steps,
            claimed: diagram(&raw.claimed, "final")?,
            final_iso: raw.final_iso,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = ScriptJson {
            ruleset: self.ruleset.name().into(),
            initial: DiagramJson::from(&self.initial),
            steps: self.steps.clone(),
            claimed: DiagramJson::from(&self.claimed),
            final_iso: self.final_iso.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }
}

/// Result of one rewrite: the new host and the ids given to inserted nodes.
#[derive(Clone, Debug)]
pub struct Applied {
    pub diagram: Diagram,
    pub placed: BTreeMap<String, String>,
}

/// Perform one step on `host`. Derived-imported rules and twin merges are
/// checked semantically on the instance before use.
pub fn apply_step(host: &Diagram, ruleset: RuleSet, step: &Step, tol: f64) -> Result<Applied, DeriveError> {
    if step.rule == TWINS {
        return apply_twins(host, step, tol);
    }
    let schema = lookup(&step.rule).ok_or_else(|| DeriveError::UnknownRule(step.rule.clone()))?;
    if !ruleset.usable(schema.name) {
        return Err(DeriveError::NotInRuleset { rule: step.rule.clone(), ruleset: ruleset.name() });
    }
    let bindings = Bindings::from_json(schema, &step.bindings)?;
    let inst = instantiate(schema, &bindings, step.variant)?;
    if schema.origin == Origin::DerivedImported {
        let verdict = check_soundness(&inst, tol)?;
        if let Some(w) = verdict.witness() {
            return Err(DeriveError::Unsound { rule: step.rule.clone(), witness: w });
        }
    }
    let (from, to) = inst.sides(step.dir == Direction::Ltr);
    validate_embedding(host, from, &step.embedding, tol)?;
    let (diagram, placed) = rewrite(host, from, to, &step.embedding, &step.names).map_err(DeriveError::Names)?;
    Ok(Applied { diagram, placed })
}

fn apply_twins(host: &Diagram, step: &Step, tol: f64) -> Result<Applied, DeriveError> {
    let n = step
        .bindings
        .get("branches")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| DeriveError::Twins("a TWINS step needs a \"branches\" count".into()))? as usize;
    let twins: Vec<String> = step.embedding.nodes.values().cloned().collect();
    let name = step.names.get("merged").map(String::as_str);
    let (diagram, id) = merge_twins(host, &twins, n, name, tol).map_err(DeriveError::Twins)?;
    let (before, after) = local_instance(host, &twins, &diagram, &id);
    let verdict = check_sides(&before, &after, tol)?;
    if let Some(w) = verdict.witness() {
        return Err(DeriveError::Unsound { rule: TWINS.into(), witness: w });
    }
    Ok(Applied { diagram, placed: [("merged".to_string(), id)].into_iter().collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub step: usize,
    pub rule: String,
    pub before: u8,
    pub after: u8,
}

impl LedgerEntry {
    pub fn changed(&self) -> bool {
        self.before != self.after
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    /// `step` is `None` when the final isomorphism check fails.
    Rejected {
        step: Option<usize>,
        reason: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationReport {
    pub schema: &'static str,
    pub ruleset: &'static str,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub initial_invariant: u8,
    pub ledger: Vec<LedgerEntry>,
    pub paranoid: bool,
    pub semantic_checks: usize,
    pub semantic_skipped: usize,
}

impl DerivationReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    /// `(step, rule)` for every step that changed the invariant bit.
    pub fn flagged(&self) -> Vec<(usize, String)> {
        self.ledger.iter().filter(|e| e.changed()).map(|e| (e.step, e.rule.clone())).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ruleset {} | invariant_r initially {}\n", self.ruleset, self.initial_invariant));
        for e in &self.ledger {
            let flag = if e.changed() { "  <- invariant changed" } else { "" };
            out.push_str(&format!("step {:>3} {:<12} invariant_r {} -> {}{flag}\n", e.step, e.rule, e.before, e.after));
        }
        if self.paranoid {
            out.push_str(&format!(
                "paranoid: {} semantic checks, {} skipped over the resource limit\n",
                self.semantic_checks, self.semantic_skipped
            ));
        }
        match &self.verdict {
            Verdict::Accepted => out.push_str("ACCEPTED\n"),
            Verdict::Rejected { step: Some(k), reason } => out.push_str(&format!("REJECTED at step {k}: {reason}\n")),
            Verdict::Rejected { step: None, reason } => out.push_str(&format!("REJECTED at final: {reason}\n")),
        }
        out
    }
}

pub const DEFAULT_TOL: f64 = 1e-9;

/// Replay every step, keeping the invariant ledger; paranoid mode compares
/// interpretations before and after each step.
pub fn check_derivation(script: &Script, paranoid: bool) -> DerivationReport {
    check_derivation_with_tol(script, paranoid, DEFAULT_TOL)
}

pub fn check_derivation_with_tol(script: &Script, paranoid: bool, tol: f64) -> DerivationReport {
    let mut report = DerivationReport {
        schema: "1",
        ruleset: script.ruleset.name(),
        verdict: Verdict::Accepted,
        initial_invariant: invariant_r(&script.initial),
        ledger: Vec::new(),
        paranoid,
        semantic_checks: 0,
        semantic_skipped: 0,
    };
    let mut current = script.initial.clone();
    for (k, step) in script.steps.iter().enumerate() {
        let next = match apply_step(&current, script.ruleset, step, tol) {
            Ok(a) => a.diagram,
            Err(e) => {
                report.verdict = Verdict::Rejected { step: Some(k), reason: e.to_string() };
                return report;
            }
        };
        if paranoid {
            match same_meaning(&current, &next, tol) {
                Ok(None) => report.semantic_checks += 1,
                Ok(Some(diff)) => {
                    report.verdict =
                        Verdict::Rejected { step: Some(k), reason: format!("interpretation changed: {diff}") };
                    return report;
                }
                Err(InterpError::Resource { .. }) => report.semantic_skipped += 1,
                Err(e) => {
                    report.verdict = Verdict::Rejected { step: Some(k), reason: e.to_string() };
                    return report;
                }
            }
        }
        report.ledger.push(LedgerEntry {
            step: k,
            rule: step.rule.clone(),
            before: invariant_r(&current),
            after: invariant_r(&next),
        });
        current = next;
    }
    if let Err(reason) = check_isomorphism(&current, &script.claimed, &script.final_iso, tol) {
        report.verdict = Verdict::Rejected { step: None, reason: format!("final diagram: {reason}") };
    }
    report
}

fn same_meaning(a: &Diagram, b: &Diagram, tol: f64) -> Result<Option<String>, InterpError> {
    let exact = [a, b].iter().all(|d| d.nodes().values().all(|k| k.phase().map_or(true, |p| p.is_exact())));
    let backend = if exact { Backend::Exact } else { Backend::Float };
    Ok(match compare_diagrams(a, b, backend, tol)? {
        Comparison::Equal => None,
        Comparison::Unequal { row, col, left, right } => Some(format!("entry ({row},{col}) {left} vs {right}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zx_core::{make_generator, tensor_product, Generator, NodeKind, RealAngle};

    fn e_left() -> Diagram {
        let mut d = Diagram::new();
        d.add_node("n4", NodeKind::Z(RealAngle::frac(1, 4))).unwrap();
        d.add_node("n5", NodeKind::X(RealAngle::frac(-1, 4))).unwrap();
        d.add_edge("n4", "n5");
        d
    }

    fn e_step() -> Step {
        let mut s = Step::new("E");
        s.embedding.nodes = [("z", "n4"), ("x", "n5")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        s
    }

    #[test]
    fn scalar_removal_leaves_the_wire() {
        let host = tensor_product(&e_left(), &make_generator(Generator::Identity));
        let out = apply_step(&host, RuleSet::ZxE, &e_step(), 0.0).unwrap().diagram;
        assert!(out.nodes().is_empty());
        assert_eq!(out.edges().len(), 1);
        assert!(matches!(apply_step(&host, RuleSet::Zx, &e_step(), 0.0), Err(DeriveError::NotInRuleset { .. })));
    }

    #[test]
    fn reverse_identity_inserts_a_spider() {
        let host = make_generator(Generator::Identity);
        let mut s = Step::new("S2");
        s.dir = Direction::Rtl;
        s.embedding.boundary.insert("i0".into(), ["o0".into(), "i0".into()]);
        s.embedding.boundary.insert("o0".into(), ["i0".into(), "o0".into()]);
        s.names.insert("z".into(), "new".into());
        let out = apply_step(&host, RuleSet::Zx, &s, 0.0).unwrap().diagram;
        assert_eq!(out.node("new"), Some(&NodeKind::Z(RealAngle::zero())));
        assert_eq!(out.multiplicity("i0", "new") + out.multiplicity("new", "o0"), 2);
    }

    #[test]
    fn zero_scalar_cuts_a_wire() {
        let mut host = make_generator(Generator::Identity);
        host.add_node("p", NodeKind::Z(RealAngle::pi())).unwrap();
        let mut s = Step::new("ZO");
        s.embedding.nodes.insert("zp".into(), "p".into());
        s.embedding.boundary.insert("i0".into(), ["o0".into(), "i0".into()]);
        s.embedding.boundary.insert("o0".into(), ["i0".into(), "o0".into()]);
        let out = apply_step(&host, RuleSet::Zx, &s, 0.0).unwrap().diagram;
        assert_eq!(out.multiplicity("i0", "ze"), 1);
        assert_eq!(out.multiplicity("xs", "o0"), 1);
        assert_eq!(out.node("ze"), Some(&NodeKind::Z(RealAngle::zero())));
        assert_eq!(out.node("xs"), Some(&NodeKind::X(RealAngle::zero())));
        assert_eq!(invariant_r(&host), 0);
        assert_eq!(invariant_r(&out), 1);
    }

    #[test]
    fn script_round_trip_and_final_check() {
        let initial = e_left();
        let script = Script {
            ruleset: RuleSet::ZxE,
            initial,
            steps: vec![e_step()],
            claimed: Diagram::new(),
            final_iso: BTreeMap::new(),
        };
        let back = Script::from_json(&script.to_json()).unwrap();
        let report = check_derivation(&back, true);
        assert!(report.accepted(), "{}", report.render());
        assert_eq!(report.flagged(), vec![(0, "E".to_string())]);
        let mut bad = back.clone();
        bad.claimed = make_generator(Generator::Identity);
        assert!(matches!(check_derivation(&bad, false).verdict, Verdict::Rejected { step: None, .. }));
    }
}
