//! Diagram representation for the ZX-calculus.
//!
//! A diagram is an open multigraph: wires carry no shape, so bending,
//! yanking and swapping wires never needs a rewrite step.

mod diagram;
mod json;
mod ops;
mod phase;
mod random;
mod validate;

pub use diagram::{check_isomorphism, Color, Diagram, NodeKind};
pub use json::{diagram_from_json, diagram_to_json, phase_from_json, phase_to_json, DiagramJson, NodeJson, PhaseJson};
pub use ops::{
    make_generator, make_spider, scale_angles, sequential_compose, tensor_product, transform_variant, Generator,
};
pub use phase::{PiRational, RealAngle};
pub use random::{random_diagram, RandomShape};
pub use validate::{validate_diagram, Violation};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("bad phase: {0}")]
    Phase(String),
    #[error("id {0} is already used")]
    DuplicateId(String),
    #[error("composition arity mismatch: {outputs} outputs feed {inputs} inputs")]
    Arity { outputs: usize, inputs: usize },
    #[error("format error: {0}")]
    Format(String),
    #[error("invalid diagram: {0}")]
    Invalid(Violation),
}
