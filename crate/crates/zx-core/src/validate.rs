use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::{Diagram, NodeKind};
use crate::phase::RealAngle;

/// The first structural problem found in a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DanglingPort { port: String, degree: usize },
    HBoxDegree { node: String, degree: usize },
    HBoxSelfLoop { node: String },
    OrphanEndpoint { endpoint: String },
    DuplicatePort { port: String },
    NonFinitePhase { node: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingPort { port, degree } => {
                write!(f, "dangling port: {port} touches {degree} edge-ends, expected 1")
            }
            Violation::HBoxDegree { node, degree } => write!(f, "HBox degree: {node} has degree {degree}, expected 2"),
            Violation::HBoxSelfLoop { node } => write!(f, "HBox self-loop on {node}"),
            Violation::OrphanEndpoint { endpoint } => {
                write!(f, "orphan endpoint: {endpoint} is neither a node nor a port")
            }
            Violation::DuplicatePort { port } => write!(f, "duplicate port: {port} listed twice or shadows a node"),
            Violation::NonFinitePhase { node } => write!(f, "non-finite phase on {node}"),
        }
    }
}

impl std::error::Error for Violation {}

pub fn validate_diagram(d: &Diagram) -> Result<(), Violation> {
    let mut seen = BTreeSet::new();
    for p in d.inputs().iter().chain(d.outputs()) {
        if !seen.insert(p.as_str()) || d.is_node(p) {
            return Err(Violation::DuplicatePort { port: p.clone() });
        }
    }
    for [a, b] in d.edges() {
        for e in [a, b] {
            if !d.contains_id(e) {
                return Err(Violation::OrphanEndpoint { endpoint: e.clone() });
            }
        }
    }
    for p in d.inputs().iter().chain(d.outputs()) {
        let degree = d.degree(p);
        if degree != 1 {
            return Err(Violation::DanglingPort { port: p.clone(), degree });
        }
    }
    for (id, kind) in d.nodes() {
        match kind {
            NodeKind::H => {
                if d.multiplicity(id, id) > 0 {
                    return Err(Violation::HBoxSelfLoop { node: id.clone() });
                }
                let degree = d.degree(id);
                if degree != 2 {
                    return Err(Violation::HBoxDegree { node: id.clone(), degree });
                }
            }
            NodeKind::Z(RealAngle::Float(r)) | NodeKind::X(RealAngle::Float(r)) if !r.is_finite() => {
                return Err(Violation::NonFinitePhase { node: id.clone() });
            }
            _ => {}
        }
    }
    Ok(())
}
