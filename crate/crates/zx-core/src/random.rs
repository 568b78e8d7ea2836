//! Random diagram generation for property tests and suites.

use rand::Rng;

use crate::diagram::{Diagram, NodeKind};
use crate::phase::RealAngle;

#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    /// Upper bound on node count, H boxes included.
    pub max_nodes: usize,
    pub inputs: usize,
    pub outputs: usize,
    /// Phases are drawn from the grid `k * pi / phase_den`.
    pub phase_den: u64,
    /// Extra spider-spider edges beyond a spanning attachment.
    pub max_extra_edges: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape { max_nodes: 6, inputs: 1, outputs: 1, phase_den: 4, max_extra_edges: 4 }
    }
}

/// A valid diagram; parallel edges, self-loops, bare wires and H boxes all occur.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, shape: &RandomShape) -> Diagram {
    let mut d = Diagram::new();
    let total = rng.gen_range(1..=shape.max_nodes.max(1));
    let spiders = rng.gen_range(1..=total);
    let mut hboxes = total - spiders;
    let ids: Vec<String> = (0..spiders).map(|k| format!("n{k}")).collect();
    for id in &ids {
        let phase = RealAngle::frac(rng.gen_range(0..2 * shape.phase_den as i64), shape.phase_den);
        let kind = if rng.gen_bool(0.5) { NodeKind::Z(phase) } else { NodeKind::X(phase) };
        d.add_node(id.clone(), kind).expect("fresh");
    }
    let mut spider_edges = Vec::new();
    for k in 1..spiders {
        if rng.gen_bool(0.8) {
            spider_edges.push([ids[rng.gen_range(0..k)].clone(), ids[k].clone()]);
        }
    }
    for _ in 0..rng.gen_range(0..=shape.max_extra_edges) {
        spider_edges.push([ids[rng.gen_range(0..spiders)].clone(), ids[rng.gen_range(0..spiders)].clone()]);
    }
    let mut h = 0;
    for [a, b] in spider_edges {
        if hboxes > 0 && rng.gen_bool(0.5) {
            let hid = format!("h{h}");
            h += 1;
            hboxes -= 1;
            d.add_node(hid.clone(), NodeKind::H).expect("fresh");
            d.add_edge(a, hid.clone());
            d.add_edge(hid, b);
        } else {
            d.add_edge(a, b);
        }
    }
    let ports: Vec<String> =
        (0..shape.inputs).map(|k| format!("i{k}")).chain((0..shape.outputs).map(|k| format!("o{k}"))).collect();
    for p in &ports[..shape.inputs] {
        d.add_input(p.clone()).expect("fresh");
    }
    for p in &ports[shape.inputs..] {
        d.add_output(p.clone()).expect("fresh");
    }
    let mut open: Vec<&String> = ports.iter().collect();
    while let Some(p) = open.pop() {
        if !open.is_empty() && rng.gen_bool(0.1) {
            let q = open.remove(rng.gen_range(0..open.len()));
            d.add_edge(p.clone(), q.clone());
            continue;
        }
        let target = ids[rng.gen_range(0..spiders)].clone();
        if hboxes > 0 && rng.gen_bool(0.3) {
            let hid = format!("h{h}");
            h += 1;
            hboxes -= 1;
            d.add_node(hid.clone(), NodeKind::H).expect("fresh");
            d.add_edge(p.clone(), hid.clone());
            d.add_edge(hid, target);
        } else {
            d.add_edge(p.clone(), target);
        }
    }
    d
}
