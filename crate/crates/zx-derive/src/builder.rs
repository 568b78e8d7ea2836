//! Programmatic construction of derivation scripts.

use std::collections::BTreeMap;

use zx_core::{phase_to_json, Diagram, RealAngle};
use zx_rules::{instantiate, lookup, Bindings, RuleSet};

use crate::embedding::infer_boundary;
use crate::script::{apply_step, Direction, Script, Step, DEFAULT_TOL, TWINS};
use crate::DeriveError;

impl Step {
    pub fn rtl(mut self) -> Self {
        self.dir = Direction::Rtl;
        self
    }

    pub fn swap(mut self) -> Self {
        self.variant.swap = true;
        self
    }

    pub fn flip(mut self) -> Self {
        self.variant.flip = true;
        self
    }

    fn bind(mut self, name: &str, value: serde_json::Value) -> Self {
        if !self.bindings.is_object() {
            self.bindings = serde_json::Value::Object(Default::default());
        }
        self.bindings.as_object_mut().expect("object").insert(name.into(), value);
        self
    }

    pub fn angle(self, name: &str, a: RealAngle) -> Self {
        self.bind(name, serde_json::to_value(phase_to_json(&a)).expect("serializable"))
    }

    pub fn count(self, name: &str, n: usize) -> Self {
        self.bind(name, n.into())
    }

    pub fn node(mut self, rule_id: &str, host_id: &str) -> Self {
        self.embedding.nodes.insert(rule_id.into(), host_id.into());
        self
    }

    pub fn port(mut self, port: &str, inner: &str, outer: &str) -> Self {
        self.embedding.boundary.insert(port.into(), [inner.into(), outer.into()]);
        self
    }

    pub fn name(mut self, rule_id: &str, host_id: &str) -> Self {
        self.names.insert(rule_id.into(), host_id.into());
        self
    }

    pub fn note(mut self, text: &str) -> Self {
        self.note = Some(text.into());
        self
    }
}

/// Records steps while applying them, filling in boundary half-edges that
/// can be read off the host.
pub struct ScriptBuilder {
    ruleset: RuleSet,
    initial: Diagram,
    current: Diagram,
    steps: Vec<Step>,
}

impl ScriptBuilder {
    pub fn new(ruleset: RuleSet, initial: Diagram) -> Self {
        ScriptBuilder { ruleset, current: initial.clone(), initial, steps: Vec::new() }
    }

    pub fn current(&self) -> &Diagram {
        &self.current
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Apply `step`; on success it is recorded with its completed boundary
    /// and the ids given to inserted nodes are returned.
    pub fn apply(&mut self, mut step: Step) -> Result<BTreeMap<String, String>, DeriveError> {
        if step.rule != TWINS {
            let schema = lookup(&step.rule).ok_or_else(|| DeriveError::UnknownRule(step.rule.clone()))?;
            let inst = instantiate(schema, &Bindings::from_json(schema, &step.bindings)?, step.variant)?;
            let (from, _) = inst.sides(step.dir == Direction::Ltr);
            infer_boundary(&self.current, from, &mut step.embedding)?;
        }
        let applied = apply_step(&self.current, self.ruleset, &step, DEFAULT_TOL)?;
        self.current = applied.diagram;
        self.steps.push(step);
        Ok(applied.placed)
    }

    /// Close the script against `claimed` through `iso` (result id -> claimed id).
    pub fn finish(self, claimed: Diagram, iso: BTreeMap<String, String>) -> Script {
        Script { ruleset: self.ruleset, initial: self.initial, steps: self.steps, claimed, final_iso: iso }
    }

    /// Close the script against its own result.
    pub fn finish_as_is(self) -> Script {
        let iso = self.current.nodes().keys().map(|k| (k.clone(), k.clone())).collect();
        let claimed = self.current.clone();
        self.finish(claimed, iso)
    }
}
