//! Rewrite rules of the ZX-calculus: the catalogue, schema instantiation
//! with colour/flip variants, and the soundness and invariant harnesses.

mod catalogue;
mod suite;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use zx_core::{transform_variant, Diagram, PiRational, RealAngle};
use zx_interp::{compare_diagrams, Backend, Comparison, InterpError, Scalar};

pub use catalogue::{catalogue, lookup};
pub use suite::{
    grid_bindings, invariant_preservation_check, pi_grid, preserving_map, soundness_suite, sweep_schema,
    InvariantEntry, SuiteConfig, SuiteEntry, SuiteReport,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RuleError {
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("unknown rule set {0:?} (expected ZX, ZX_E or ZX_cyclo)")]
    UnknownRuleSet(String),
    #[error("rule {rule}: missing binding {param}")]
    MissingBinding { rule: String, param: String },
    #[error("rule {rule}: binding {param} is not a parameter")]
    UnexpectedBinding { rule: String, param: String },
    #[error("rule {rule}: binding {param}={value} is below the floor {min}")]
    BelowFloor { rule: String, param: String, value: usize, min: usize },
    #[error("rule {rule}: binding {param}: {reason}")]
    BadBinding { rule: String, param: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Part of the base axiomatisation.
    Axiom,
    /// The scalar rule added on top of the base axioms.
    AddedAxiom,
    /// An infinite family indexed by a count.
    Schema,
    /// Proven elsewhere; re-verified semantically at every use.
    DerivedImported,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Axiom => "axiom",
            Origin::AddedAxiom => "added-axiom",
            Origin::Schema => "schema",
            Origin::DerivedImported => "derived-imported",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Angle,
    Count { min: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: &'static str,
    pub kind: ParamKind,
}

pub type Builder = fn(&Bindings) -> (Diagram, Diagram);

pub struct RuleSchema {
    pub name: &'static str,
    pub summary: &'static str,
    pub origin: Origin,
    pub params: Vec<Param>,
    pub builder: Builder,
}

impl RuleSchema {
    pub fn new(
        name: &'static str,
        summary: &'static str,
        origin: Origin,
        params: Vec<Param>,
        builder: Builder,
    ) -> Self {
        RuleSchema { name, summary, origin, params, builder }
    }

    pub fn angle_params(&self) -> impl Iterator<Item = &Param> {
        self.params.iter().filter(|p| p.kind == ParamKind::Angle)
    }

    pub fn count_params(&self) -> impl Iterator<Item = &Param> {
        self.params.iter().filter(|p| p.kind != ParamKind::Angle)
    }
}

impl fmt::Debug for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleSchema").field("name", &self.name).field("origin", &self.origin).finish()
    }
}

/// Angle and count values bound to a schema's parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings {
    pub angles: BTreeMap<String, RealAngle>,
    pub counts: BTreeMap<String, usize>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_angle(mut self, name: &str, a: RealAngle) -> Self {
        self.angles.insert(name.to_string(), a);
        self
    }

    pub fn with_count(mut self, name: &str, n: usize) -> Self {
        self.counts.insert(name.to_string(), n);
        self
    }

    /// Panics when unbound; builders only run after [`instantiate`] checked.
    pub fn angle(&self, name: &str) -> RealAngle {
        self.angles[name]
    }

    pub fn count(&self, name: &str) -> usize {
        self.counts[name]
    }

    /// Parse `key=value` pairs against a schema: angles as `a/b` (times pi)
    /// or `float:<radians>`, counts as integers.
    pub fn parse(schema: &RuleSchema, pairs: &[(String, String)]) -> Result<Self, RuleError> {
        let mut out = Bindings::new();
        for (k, v) in pairs {
            let bad = |reason: String| RuleError::BadBinding { rule: schema.name.into(), param: k.clone(), reason };
            let param = schema
                .params
                .iter()
                .find(|p| p.name == k)
                .ok_or_else(|| RuleError::UnexpectedBinding { rule: schema.name.into(), param: k.clone() })?;
            match param.kind {
                ParamKind::Angle => {
                    let a = match v.strip_prefix("float:") {
                        Some(r) => {
                            let r: f64 = r.parse().map_err(|_| bad(format!("bad float {r:?}")))?;
                            RealAngle::float(r).map_err(|e| bad(e.to_string()))?
                        }
                        None => RealAngle::Exact(v.parse::<PiRational>().map_err(|e| bad(e.to_string()))?),
                    };
                    out.angles.insert(k.clone(), a);
                }
                ParamKind::Count { .. } => {
                    let n: usize = v.parse().map_err(|_| bad(format!("expected a count, got {v:?}")))?;
                    out.counts.insert(k.clone(), n);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (k, a) in &self.angles {
            map.insert(k.clone(), serde_json::to_value(zx_core::phase_to_json(a)).expect("serializable"));
        }
        for (k, n) in &self.counts {
            map.insert(k.clone(), (*n).into());
        }
        serde_json::Value::Object(map)
    }

    /// Inverse of [`to_json`](Self::to_json), guided by the schema's parameter kinds.
    pub fn from_json(schema: &RuleSchema, value: &serde_json::Value) -> Result<Self, RuleError> {
        let mut out = Bindings::new();
        let empty = serde_json::Map::new();
        let map = match value {
            serde_json::Value::Object(m) => m,
            serde_json::Value::Null => &empty,
            _ => {
                return Err(RuleError::BadBinding {
                    rule: schema.name.into(),
                    param: "*".into(),
                    reason: "bindings must be an object".into(),
                })
            }
        };
        for (k, v) in map {
            let bad = |reason: String| RuleError::BadBinding { rule: schema.name.into(), param: k.clone(), reason };
            let param = schema
                .params
                .iter()
                .find(|p| p.name == k)
                .ok_or_else(|| RuleError::UnexpectedBinding { rule: schema.name.into(), param: k.clone() })?;
            match param.kind {
                ParamKind::Angle => {
                    let pj: zx_core::PhaseJson = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
                    out.angles.insert(k.clone(), zx_core::phase_from_json(&pj).map_err(|e| bad(e.to_string()))?);
                }
                ParamKind::Count { .. } => {
                    let n = v.as_u64().ok_or_else(|| bad(format!("expected a count, got {v}")))?;
                    out.counts.insert(k.clone(), n as usize);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .angles
            .iter()
            .map(|(k, a)| format!("{k}={a}"))
            .chain(self.counts.iter().map(|(k, n)| format!("{k}={n}")))
            .collect();
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variant {
    #[serde(default)]
    pub swap: bool,
    #[serde(default)]
    pub flip: bool,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant { swap: false, flip: false },
        Variant { swap: true, flip: false },
        Variant { swap: false, flip: true },
        Variant { swap: true, flip: true },
    ];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.swap, self.flip) {
            (false, false) => "plain",
            (true, false) => "swap",
            (false, true) => "flip",
            (true, true) => "swap+flip",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "plain" | "none" => Variant { swap: false, flip: false },
            "swap" => Variant { swap: true, flip: false },
            "flip" => Variant { swap: false, flip: true },
            "swap+flip" | "flip+swap" | "both" => Variant { swap: true, flip: true },
            other => return Err(format!("unknown variant {other:?} (plain, swap, flip, swap+flip)")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RuleInstance {
    pub rule: &'static str,
    pub bindings: Bindings,
    pub variant: Variant,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

impl RuleInstance {
    /// `(from, to)` for a rewrite in the given direction.
    pub fn sides(&self, left_to_right: bool) -> (&Diagram, &Diagram) {
        if left_to_right {
            (&self.lhs, &self.rhs)
        } else {
            (&self.rhs, &self.lhs)
        }
    }
}

pub fn instantiate(
    schema: &'static RuleSchema,
    bindings: &Bindings,
    variant: Variant,
) -> Result<RuleInstance, RuleError> {
    for name in bindings.angles.keys().chain(bindings.counts.keys()) {
        if !schema.params.iter().any(|p| p.name == name) {
            return Err(RuleError::UnexpectedBinding { rule: schema.name.into(), param: name.clone() });
        }
    }
    for p in &schema.params {
        let missing = || RuleError::MissingBinding { rule: schema.name.into(), param: p.name.into() };
        match p.kind {
            ParamKind::Angle => {
                bindings.angles.get(p.name).ok_or_else(missing)?;
            }
            ParamKind::Count { min } => {
                let value = *bindings.counts.get(p.name).ok_or_else(missing)?;
                if value < min {
                    return Err(RuleError::BelowFloor { rule: schema.name.into(), param: p.name.into(), value, min });
                }
            }
        }
    }
    let (lhs, rhs) = (schema.builder)(bindings);
    Ok(RuleInstance {
        rule: schema.name,
        bindings: bindings.clone(),
        variant,
        lhs: transform_variant(&lhs, variant.swap, variant.flip),
        rhs: transform_variant(&rhs, variant.swap, variant.flip),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleSet {
    Zx,
    ZxE,
    ZxCyclo,
}

impl RuleSet {
    pub fn name(&self) -> &'static str {
        match self {
            RuleSet::Zx => "ZX",
            RuleSet::ZxE => "ZX_E",
            RuleSet::ZxCyclo => "ZX_cyclo",
        }
    }

    pub fn members(&self) -> &'static [&'static str] {
        match self {
            RuleSet::Zx => &["S1", "S2", "S3", "IV", "B1", "B2", "K1", "K2", "EU", "H", "ZO", "SUP"],
            RuleSet::ZxE => &["E", "S1", "S2", "S3", "B1", "B2", "K1", "K2", "EU", "H", "SUP"],
            RuleSet::ZxCyclo => &["S1", "S2", "S3", "E", "B1", "B2", "K2", "H", "EU", "SUP_n"],
        }
    }

    pub fn contains(&self, rule: &str) -> bool {
        self.members().contains(&rule)
    }

    /// Members of the set plus the derived-imported rules usable in scripts.
    pub fn usable(&self, rule: &str) -> bool {
        self.contains(rule) || lookup(rule).is_some_and(|s| s.origin == Origin::DerivedImported)
    }
}

impl std::str::FromStr for RuleSet {
    type Err = RuleError;
    fn from_str(s: &str) -> Result<Self, RuleError> {
        match s {
            "ZX" => Ok(RuleSet::Zx),
            "ZX_E" => Ok(RuleSet::ZxE),
            "ZX_cyclo" => Ok(RuleSet::ZxCyclo),
            other => Err(RuleError::UnknownRuleSet(other.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Sound,
    Unsound { row: u64, col: u64, lhs: Scalar, rhs: Scalar },
}

impl Verdict {
    pub fn is_sound(&self) -> bool {
        matches!(self, Verdict::Sound)
    }

    pub fn witness(&self) -> Option<String> {
        match self {
            Verdict::Sound => None,
            Verdict::Unsound { row, col, lhs, rhs } => Some(format!("entry ({row},{col}): lhs {lhs} vs rhs {rhs}")),
        }
    }
}

/// Exact when both sides have exact phases, float within `tol` otherwise.
pub fn check_soundness(inst: &RuleInstance, tol: f64) -> Result<Verdict, InterpError> {
    check_sides(&inst.lhs, &inst.rhs, tol)
}

pub fn check_sides(lhs: &Diagram, rhs: &Diagram, tol: f64) -> Result<Verdict, InterpError> {
    let exact = [lhs, rhs].iter().all(|d| d.nodes().values().all(|k| k.phase().map_or(true, |p| p.is_exact())));
    let backend = if exact { Backend::Exact } else { Backend::Float };
    Ok(match compare_diagrams(lhs, rhs, backend, tol)? {
        Comparison::Equal => Verdict::Sound,
        Comparison::Unequal { row, col, left, right } => Verdict::Unsound { row, col, lhs: left, rhs: right },
    })
}
