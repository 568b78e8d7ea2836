//! Constructors and structural operations on diagrams.

use std::collections::BTreeSet;

use crate::diagram::{Color, Diagram, NodeKind};
use crate::phase::RealAngle;
use crate::CoreError;

/// A single spider with `n_in` inputs `i0..` and `n_out` outputs `o0..`.
pub fn make_spider(color: Color, phase: RealAngle, n_in: usize, n_out: usize) -> Diagram {
    let mut d = Diagram::new();
    d.add_node("s", NodeKind::spider(color, phase)).expect("fresh");
    for k in 0..n_in {
        let p = format!("i{k}");
        d.add_input(p.clone()).expect("fresh");
        d.add_edge(p, "s");
    }
    for k in 0..n_out {
        let p = format!("o{k}");
        d.add_output(p.clone()).expect("fresh");
        d.add_edge("s", p);
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Identity,
    Swap,
    Cup,
    Cap,
    HBox,
    Empty,
}

impl std::str::FromStr for Generator {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self, CoreError> {
        Ok(match s {
            "identity" => Generator::Identity,
            "swap" => Generator::Swap,
            "cup" => Generator::Cup,
            "cap" => Generator::Cap,
            "hbox" => Generator::HBox,
            "empty" => Generator::Empty,
            other => return Err(CoreError::Format(format!("unknown generator {other:?}"))),
        })
    }
}

/// The wiring generators. `Cup` is the 2->0 map and `Cap` the 0->2 map.
pub fn make_generator(g: Generator) -> Diagram {
    let mut d = Diagram::new();
    let ports = |d: &mut Diagram, ins: &[&str], outs: &[&str]| {
        for p in ins {
            d.add_input(*p).expect("fresh");
        }
        for p in outs {
            d.add_output(*p).expect("fresh");
        }
    };
    match g {
        Generator::Identity => {
            ports(&mut d, &["i0"], &["o0"]);
            d.add_edge("i0", "o0");
        }
        Generator::Swap => {
            ports(&mut d, &["i0", "i1"], &["o0", "o1"]);
            d.add_edge("i0", "o1");
            d.add_edge("i1", "o0");
        }
        Generator::Cup => {
            ports(&mut d, &["i0", "i1"], &[]);
            d.add_edge("i0", "i1");
        }
        Generator::Cap => {
            ports(&mut d, &[], &["o0", "o1"]);
            d.add_edge("o0", "o1");
        }
        Generator::HBox => {
            ports(&mut d, &["i0"], &["o0"]);
            d.add_node("h", NodeKind::H).expect("fresh");
            d.add_edge("i0", "h");
            d.add_edge("h", "o0");
        }
        Generator::Empty => {}
    }
    d
}

/// Side-by-side placement; colliding ids of `d2` get a numeric suffix.
pub fn tensor_product(d1: &Diagram, d2: &Diagram) -> Diagram {
    let d2 = d2.freshened_against(&d1.all_ids());
    let mut out = d1.clone();
    for (id, kind) in d2.nodes() {
        out.add_node(id.clone(), *kind).expect("freshened");
    }
    for [a, b] in d2.edges() {
        out.add_edge(a.clone(), b.clone());
    }
    let inputs = d1.inputs().iter().chain(d2.inputs()).cloned().collect();
    let outputs = d1.outputs().iter().chain(d2.outputs()).cloned().collect();
    out.set_boundary(inputs, outputs);
    out
}

/// `later` after `earlier`: output `k` of `earlier` is plugged into input `k`
/// of `later` and the two ports disappear into one wire.
pub fn sequential_compose(later: &Diagram, earlier: &Diagram) -> Result<Diagram, CoreError> {
    if earlier.num_outputs() != later.num_inputs() {
        return Err(CoreError::Arity { outputs: earlier.num_outputs(), inputs: later.num_inputs() });
    }
    let later = later.freshened_against(&earlier.all_ids());
    let mut out = earlier.clone();
    for (id, kind) in later.nodes() {
        out.add_node(id.clone(), *kind).expect("freshened");
    }
    for [a, b] in later.edges() {
        out.add_edge(a.clone(), b.clone());
    }
    let mut junctions = BTreeSet::new();
    for (o, i) in earlier.outputs().iter().zip(later.inputs()) {
        out.add_edge(o.clone(), i.clone());
        junctions.insert(o.clone());
        junctions.insert(i.clone());
    }
    out.set_boundary(earlier.inputs().to_vec(), later.outputs().to_vec());
    out.splice(&junctions);
    Ok(out)
}

/// Colour swap exchanges Z and X keeping phases; the flip reads the diagram
/// upside down, exchanging the input and output sequences.
pub fn transform_variant(d: &Diagram, color_swap: bool, vertical_flip: bool) -> Diagram {
    let mut out = d.clone();
    if color_swap {
        for kind in out.nodes_mut().values_mut() {
            *kind = kind.color_swapped();
        }
    }
    if vertical_flip {
        let (i, o) = (d.inputs().to_vec(), d.outputs().to_vec());
        out.set_boundary(o, i);
    }
    out
}

/// Multiply every spider phase by `factor`, reducing mod 2pi.
pub fn scale_angles(d: &Diagram, factor: u64) -> Diagram {
    let mut out = d.clone();
    for kind in out.nodes_mut().values_mut() {
        if let Some(p) = kind.phase() {
            *kind = kind.with_phase(p.mul_int(factor as i64));
        }
    }
    out
}
