use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::phase::RealAngle;
use crate::CoreError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Z,
    X,
}

impl Color {
    pub fn swapped(self) -> Self {
        match self {
            Color::Z => Color::X,
            Color::X => Color::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NodeKind {
    Z(RealAngle),
    X(RealAngle),
    H,
}

impl NodeKind {
    pub fn spider(color: Color, phase: RealAngle) -> Self {
        match color {
            Color::Z => NodeKind::Z(phase),
            Color::X => NodeKind::X(phase),
        }
    }

    pub fn color(&self) -> Option<Color> {
        match self {
            NodeKind::Z(_) => Some(Color::Z),
            NodeKind::X(_) => Some(Color::X),
            NodeKind::H => None,
        }
    }

    pub fn phase(&self) -> Option<RealAngle> {
        match self {
            NodeKind::Z(p) | NodeKind::X(p) => Some(*p),
            NodeKind::H => None,
        }
    }

    pub fn with_phase(&self, phase: RealAngle) -> Self {
        match self {
            NodeKind::Z(_) => NodeKind::Z(phase),
            NodeKind::X(_) => NodeKind::X(phase),
            NodeKind::H => NodeKind::H,
        }
    }

    pub fn color_swapped(&self) -> Self {
        match self {
            NodeKind::Z(p) => NodeKind::X(*p),
            NodeKind::X(p) => NodeKind::Z(*p),
            NodeKind::H => NodeKind::H,
        }
    }

    /// Same colour and matching phase (exact, or within `tol` when a float is involved).
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (NodeKind::H, NodeKind::H) => true,
            (NodeKind::Z(a), NodeKind::Z(b)) | (NodeKind::X(a), NodeKind::X(b)) => a.matches(b, tol),
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            NodeKind::Z(p) => format!("Z({p})"),
            NodeKind::X(p) => format!("X({p})"),
            NodeKind::H => "H".into(),
        }
    }
}

/// An open multigraph of spiders and H boxes.
///
/// Boundary ports are named endpoints listed in `inputs`/`outputs`; every
/// port touches exactly one edge. Node ids and port ids share one namespace.
/// Edges are an unordered multiset; parallel edges and spider self-loops are
/// allowed. Wire shape carries no information.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    nodes: BTreeMap<String, NodeKind>,
    edges: Vec<[String; 2]>,
    inputs: Vec<String>,
    outputs: Vec<String>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nodes(&self) -> &BTreeMap<String, NodeKind> {
        &self.nodes
    }

    pub fn edges(&self) -> &[[String; 2]] {
        &self.edges
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn node(&self, id: &str) -> Option<&NodeKind> {
        self.nodes.get(id)
    }

    pub fn is_node(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn is_port(&self, id: &str) -> bool {
        self.inputs.iter().chain(&self.outputs).any(|p| p == id)
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.is_node(id) || self.is_port(id)
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn add_node(&mut self, id: impl Into<String>, kind: NodeKind) -> Result<(), CoreError> {
        let id = id.into();
        if self.contains_id(&id) {
            return Err(CoreError::DuplicateId(id));
        }
        self.nodes.insert(id, kind);
        Ok(())
    }

    pub fn set_kind(&mut self, id: &str, kind: NodeKind) {
        if let Some(k) = self.nodes.get_mut(id) {
            *k = kind;
        }
    }

    pub fn add_input(&mut self, id: impl Into<String>) -> Result<(), CoreError> {
        let id = id.into();
        if self.contains_id(&id) {
            return Err(CoreError::DuplicateId(id));
        }
        self.inputs.push(id);
        Ok(())
    }

    pub fn add_output(&mut self, id: impl Into<String>) -> Result<(), CoreError> {
        let id = id.into();
        if self.contains_id(&id) {
            return Err(CoreError::DuplicateId(id));
        }
        self.outputs.push(id);
        Ok(())
    }

    /// Adds an edge without checking endpoints; see [`crate::validate_diagram`].
    pub fn add_edge(&mut self, a: impl Into<String>, b: impl Into<String>) {
        self.edges.push([a.into(), b.into()]);
    }

    /// Removes one edge between `a` and `b` (either orientation).
    pub fn remove_edge(&mut self, a: &str, b: &str) -> bool {
        if let Some(pos) = self.edges.iter().position(|[x, y]| (x == a && y == b) || (x == b && y == a)) {
            self.edges.remove(pos);
            true
        } else {
            false
        }
    }

    /// Removes a node; incident edges are left for the caller to handle.
    pub fn remove_node(&mut self, id: &str) -> Option<NodeKind> {
        self.nodes.remove(id)
    }

    /// Number of edge-ends at `id` (a self-loop counts twice).
    pub fn degree(&self, id: &str) -> usize {
        self.edges.iter().map(|[a, b]| (a == id) as usize + (b == id) as usize).sum()
    }

    /// Number of edges joining `a` and `b`.
    pub fn multiplicity(&self, a: &str, b: &str) -> usize {
        self.edges.iter().filter(|[x, y]| (x == a && y == b) || (x == b && y == a)).count()
    }

    /// The far end of every edge-end at `id`; a self-loop contributes `id` twice.
    pub fn neighbors(&self, id: &str) -> Vec<String> {
        let mut out = Vec::new();
        for [a, b] in &self.edges {
            if a == id {
                out.push(b.clone());
            }
            if b == id {
                out.push(a.clone());
            }
        }
        out
    }

    /// Edge multiset as sorted normalized pairs.
    pub fn edge_multiset(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|[a, b]| if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) })
            .collect();
        v.sort();
        v
    }

    pub fn all_ids(&self) -> BTreeSet<String> {
        self.nodes.keys().chain(&self.inputs).chain(&self.outputs).cloned().collect()
    }

    /// An id not yet used, derived from `base`.
    pub fn fresh_id(&self, base: &str) -> String {
        if !self.contains_id(base) {
            return base.to_string();
        }
        (1..).map(|k| format!("{base}_{k}")).find(|c| !self.contains_id(c)).expect("unbounded")
    }

    /// Rename ids (nodes and ports) by `map`; unmapped ids keep their names.
    pub fn renamed(&self, map: &HashMap<String, String>) -> Diagram {
        let r = |s: &String| map.get(s).cloned().unwrap_or_else(|| s.clone());
        Diagram {
            nodes: self.nodes.iter().map(|(k, v)| (r(k), *v)).collect(),
            edges: self.edges.iter().map(|[a, b]| [r(a), r(b)]).collect(),
            inputs: self.inputs.iter().map(r).collect(),
            outputs: self.outputs.iter().map(r).collect(),
        }
    }

    /// Rename every id of `self` that collides with `taken` by appending a
    /// numeric suffix; returns the renamed copy.
    pub fn freshened_against(&self, taken: &BTreeSet<String>) -> Diagram {
        let mut used: BTreeSet<String> = taken.clone();
        used.extend(self.all_ids());
        let mut map = HashMap::new();
        for id in self.all_ids() {
            if taken.contains(&id) {
                let fresh = (1..).map(|k| format!("{id}_{k}")).find(|c| !used.contains(c)).expect("unbounded");
                used.insert(fresh.clone());
                map.insert(id, fresh);
            }
        }
        self.renamed(&map)
    }

    pub fn set_boundary(&mut self, inputs: Vec<String>, outputs: Vec<String>) {
        self.inputs = inputs;
        self.outputs = outputs;
    }

    pub fn replace_edges(&mut self, edges: Vec<[String; 2]>) {
        self.edges = edges;
    }

    /// Eliminate pass-through points. Every id in `junctions` must have exactly
    /// two edge-ends and be neither a node nor a port; its two edges are fused
    /// into one. A cycle made only of junctions becomes a free circle, stored
    /// as a phase-free Z spider with a self-loop (same value, trace of the identity).
    pub fn splice(&mut self, junctions: &BTreeSet<String>) {
        for j in junctions {
            let ends: Vec<usize> =
                self.edges.iter().enumerate().filter(|(_, [a, b])| a == j || b == j).map(|(i, _)| i).collect();
            match ends.as_slice() {
                [single] => {
                    // a self-loop on the junction: a closed circle
                    debug_assert!(self.edges[*single][0] == self.edges[*single][1]);
                    self.edges.remove(*single);
                    self.add_free_circle();
                }
                [e1, e2] => {
                    let other = |e: &[String; 2]| if &e[0] == j { e[1].clone() } else { e[0].clone() };
                    let a = other(&self.edges[*e1]);
                    let b = other(&self.edges[*e2]);
                    let (hi, lo) = (*e1.max(e2), *e1.min(e2));
                    self.edges.remove(hi);
                    self.edges.remove(lo);
                    self.edges.push([a, b]);
                }
                _ => panic!("junction {j} does not have exactly two edge-ends"),
            }
        }
    }

    pub fn add_free_circle(&mut self) -> String {
        let id = self.fresh_id("loop");
        self.nodes.insert(id.clone(), NodeKind::Z(RealAngle::zero()));
        self.edges.push([id.clone(), id.clone()]);
        id
    }

    pub(crate) fn nodes_mut(&mut self) -> &mut BTreeMap<String, NodeKind> {
        &mut self.nodes
    }
}

/// Compare `a` against `b` through a node bijection; boundaries correspond
/// positionally. Returns the first discrepancy found.
pub fn check_isomorphism(
    a: &Diagram,
    b: &Diagram,
    node_map: &BTreeMap<String, String>,
    tol: f64,
) -> Result<(), String> {
    if a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs() {
        return Err(format!(
            "boundary arity differs: {}->{} vs {}->{}",
            a.num_inputs(),
            a.num_outputs(),
            b.num_inputs(),
            b.num_outputs()
        ));
    }
    if node_map.len() != a.nodes().len() {
        return Err(format!("isomorphism covers {} of {} nodes", node_map.len(), a.nodes().len()));
    }
    let mut image = BTreeSet::new();
    for (src, dst) in node_map {
        let ka = a.node(src).ok_or_else(|| format!("isomorphism names unknown node {src}"))?;
        let kb = b.node(dst).ok_or_else(|| format!("isomorphism target {dst} is not a node of the claimed diagram"))?;
        if !ka.matches(kb, tol) {
            return Err(format!("node {src} is {} but {dst} is {}", ka.label(), kb.label()));
        }
        if !image.insert(dst.clone()) {
            return Err(format!("isomorphism is not injective at {dst}"));
        }
    }
    if image.len() != b.nodes().len() {
        return Err("isomorphism is not surjective".into());
    }
    let mut map: HashMap<String, String> = node_map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    for (pa, pb) in a.inputs().iter().zip(b.inputs()).chain(a.outputs().iter().zip(b.outputs())) {
        map.insert(pa.clone(), pb.clone());
    }
    let mapped = a.renamed(&map).edge_multiset();
    let target = b.edge_multiset();
    if mapped != target {
        let missing: Vec<_> = mapped.iter().filter(|e| !target.contains(e)).take(1).collect();
        let extra: Vec<_> = target.iter().filter(|e| !mapped.contains(e)).take(1).collect();
        return Err(format!("edge sets differ (mapped-only {missing:?}, claimed-only {extra:?})"));
    }
    Ok(())
}
