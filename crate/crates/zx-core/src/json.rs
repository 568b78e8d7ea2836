//! The UTF-8 JSON diagram format.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, NodeKind};
use crate::phase::{PiRational, RealAngle};
use crate::CoreError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PhaseJson {
    Exact(String),
    Float { float: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NodeJson {
    pub id: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
pub struct DiagramJson {
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub outputs: Vec<String>,
    #[serde(default)]
    pub nodes: Vec<NodeJson>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

pub fn phase_to_json(p: &RealAngle) -> PhaseJson {
    match p {
        RealAngle::Exact(q) => PhaseJson::Exact(format!("{}/{}", q.num(), q.den())),
        RealAngle::Float(r) => PhaseJson::Float { float: *r },
    }
}

pub fn phase_from_json(p: &PhaseJson) -> Result<RealAngle, CoreError> {
    match p {
        PhaseJson::Exact(s) => Ok(RealAngle::Exact(s.parse::<PiRational>()?)),
        PhaseJson::Float { float } => RealAngle::float(*float),
    }
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            inputs: d.inputs().to_vec(),
            outputs: d.outputs().to_vec(),
            nodes: d
                .nodes()
                .iter()
                .map(|(id, kind)| NodeJson {
                    id: id.clone(),
                    kind: match kind {
                        NodeKind::Z(_) => "Z",
                        NodeKind::X(_) => "X",
                        NodeKind::H => "H",
                    }
                    .into(),
                    phase: kind.phase().map(|p| phase_to_json(&p)),
                })
                .collect(),
            edges: d.edges().to_vec(),
        }
    }
}

impl TryFrom<&DiagramJson> for Diagram {
    type Error = CoreError;

    fn try_from(j: &DiagramJson) -> Result<Self, CoreError> {
        let mut d = Diagram::new();
        for n in &j.nodes {
            let phase = n.phase.as_ref().map(phase_from_json).transpose()?.unwrap_or_else(RealAngle::zero);
            let kind = match n.kind.as_str() {
                "Z" => NodeKind::Z(phase),
                "X" => NodeKind::X(phase),
                "H" => {
                    if n.phase.is_some() {
                        return Err(CoreError::Format(format!("node {}: HBox carries no phase", n.id)));
                    }
                    NodeKind::H
                }
                other => return Err(CoreError::Format(format!("node {}: unknown kind {other:?}", n.id))),
            };
            d.add_node(n.id.clone(), kind)?;
        }
        for p in &j.inputs {
            d.add_input(p.clone())?;
        }
        for p in &j.outputs {
            d.add_output(p.clone())?;
        }
        for [a, b] in &j.edges {
            d.add_edge(a.clone(), b.clone());
        }
        Ok(d)
    }
}

/// Parse and validate a diagram from JSON text.
pub fn diagram_from_json(text: &str) -> Result<Diagram, CoreError> {
    let j: DiagramJson = serde_json::from_str(text).map_err(|e| CoreError::Format(e.to_string()))?;
    let d = Diagram::try_from(&j)?;
    crate::validate_diagram(&d).map_err(CoreError::Invalid)?;
    Ok(d)
}

pub fn diagram_to_json(d: &Diagram) -> String {
    serde_json::to_string_pretty(&DiagramJson::from(d)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example_format() {
        let text = r#"{"inputs":["i0"],"outputs":["o0"],
            "nodes":[{"id":"n1","kind":"Z","phase":"1/4"},
                     {"id":"n2","kind":"X","phase":{"float":0.9553166}},
                     {"id":"n3","kind":"H"}],
            "edges":[["i0","n1"],["n1","n2"],["n1","n2"],["n2","n2"],["n2","n3"],["n3","o0"]]}"#;
        let d = diagram_from_json(text).unwrap();
        assert_eq!(d.multiplicity("n1", "n2"), 2);
        assert_eq!(d.degree("n2"), 5);
        let back = diagram_from_json(&diagram_to_json(&d)).unwrap();
        assert_eq!(back.edge_multiset(), d.edge_multiset());
        assert_eq!(back.nodes(), d.nodes());
    }

    #[test]
    fn reports_position() {
        let err = diagram_from_json("{\"inputs\": [1]}").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn rejects_bad_kind_and_phase() {
        assert!(diagram_from_json(r#"{"nodes":[{"id":"a","kind":"Y"}]}"#).is_err());
        assert!(diagram_from_json(r#"{"nodes":[{"id":"a","kind":"Z","phase":"x"}]}"#).is_err());
        assert!(diagram_from_json(r#"{"nodes":[{"id":"a","kind":"H","phase":"1"}]}"#).is_err());
    }
}
