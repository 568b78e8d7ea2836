//! Script-supplied matches of a rule side inside a host diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use zx_core::Diagram;

/// Where a rule side sits in the host. `nodes` maps rule node ids to host
/// node ids. `boundary` maps each rule port to a host half-edge
/// `[inner, outer]`: the wire leaving the match, named by its inside end and
/// its outside end. For a port wired straight to another port `q`, the
/// inner end is `q`'s outer end.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    #[serde(default)]
    pub nodes: BTreeMap<String, String>,
    #[serde(default)]
    pub boundary: BTreeMap<String, [String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    UnmappedNode { node: String },
    UnknownRuleNode { node: String },
    UnknownHostNode { node: String, target: String },
    NonInjective { target: String },
    KindMismatch { node: String, expected: String, found: String },
    PhaseMismatch { node: String, expected: String, found: String },
    MultiplicityMismatch { pair: (String, String), expected: usize, found: usize },
    DegreeLeak { node: String, target: String, expected: usize, found: usize },
    Boundary { port: String, reason: String },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::UnmappedNode { node } => write!(f, "unmapped node: rule node {node} has no image"),
            Rejection::UnknownRuleNode { node } => write!(f, "unknown rule node {node} in the match"),
            Rejection::UnknownHostNode { node, target } => {
                write!(f, "unknown host node: {node} maps to {target}, which is not a node of the host")
            }
            Rejection::NonInjective { target } => write!(f, "non-injective: two rule nodes map to {target}"),
            Rejection::KindMismatch { node, expected, found } => {
                write!(f, "kind mismatch at {node}: rule wants {expected}, host has {found}")
            }
            Rejection::PhaseMismatch { node, expected, found } => {
                write!(f, "phase mismatch at {node}: rule wants {expected}, host has {found}")
            }
            Rejection::MultiplicityMismatch { pair, expected, found } => write!(
                f,
                "multiplicity mismatch between {} and {}: rule has {expected} wires, host has {found}",
                pair.0, pair.1
            ),
            Rejection::DegreeLeak { node, target, expected, found } => write!(
                f,
                "degree leak at {target} (image of {node}): {found} wire ends in the host, {expected} in the rule"
            ),
            Rejection::Boundary { port, reason } => write!(f, "boundary mismatch at port {port}: {reason}"),
        }
    }
}

impl std::error::Error for Rejection {}

/// The rule-side neighbour of a port (validated diagrams give exactly one).
fn port_partner(side: &Diagram, port: &str) -> String {
    side.neighbors(port).into_iter().next().expect("ports have degree 1")
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Checks every condition for `side` to sit at `emb` inside `host`, in a
/// fixed order; the first failure is returned.
pub fn validate_embedding(host: &Diagram, side: &Diagram, emb: &Embedding, tol: f64) -> Result<(), Rejection> {
    for node in side.nodes().keys() {
        if !emb.nodes.contains_key(node) {
            return Err(Rejection::UnmappedNode { node: node.clone() });
        }
    }
    let mut image = BTreeSet::new();
    for (node, target) in &emb.nodes {
        let Some(want) = side.node(node) else {
            return Err(Rejection::UnknownRuleNode { node: node.clone() });
        };
        let Some(have) = host.node(target) else {
            return Err(Rejection::UnknownHostNode { node: node.clone(), target: target.clone() });
        };
        if !image.insert(target.clone()) {
            return Err(Rejection::NonInjective { target: target.clone() });
        }
        if want.color() != have.color() {
            return Err(Rejection::KindMismatch { node: node.clone(), expected: want.label(), found: have.label() });
        }
        if !want.matches(have, tol) {
            return Err(Rejection::PhaseMismatch { node: node.clone(), expected: want.label(), found: have.label() });
        }
    }
    let rule_nodes: Vec<&String> = side.nodes().keys().collect();
    for (k, u) in rule_nodes.iter().enumerate() {
        for v in &rule_nodes[k..] {
            let expected = side.multiplicity(u, v);
            let found = host.multiplicity(&emb.nodes[*u], &emb.nodes[*v]);
            if expected != found {
                return Err(Rejection::MultiplicityMismatch {
                    pair: (emb.nodes[*u].clone(), emb.nodes[*v].clone()),
                    expected,
                    found,
                });
            }
        }
    }

    let ports: Vec<&String> = side.inputs().iter().chain(side.outputs()).collect();
    for key in emb.boundary.keys() {
        if !ports.contains(&key) {
            return Err(Rejection::Boundary { port: key.clone(), reason: "not a port of the rule side".into() });
        }
    }
    let mut demand: BTreeMap<(String, String), usize> = BTreeMap::new();
    for port in &ports {
        let bad = |reason: String| Rejection::Boundary { port: (*port).clone(), reason };
        let [inner, outer] = emb.boundary.get(*port).ok_or_else(|| bad("no host half-edge given".into()))?;
        if !host.contains_id(outer) {
            return Err(bad(format!("outer end {outer} is not in the host")));
        }
        if image.contains(outer) {
            return Err(bad(format!("outer end {outer} lies inside the match")));
        }
        let partner = port_partner(side, port);
        if side.is_node(&partner) {
            let want = &emb.nodes[&partner];
            if inner != want {
                return Err(bad(format!("inner end is {inner}, expected {want} (image of {partner})")));
            }
            *demand.entry(ordered(inner, outer)).or_default() += 1;
        } else {
            let want = &emb.boundary.get(&partner).ok_or_else(|| bad(format!("partner port {partner} unmapped")))?[1];
            if inner != want {
                return Err(bad(format!("wired to port {partner}, so the inner end must be {want}, not {inner}")));
            }
            // count each port-to-port wire once
            if port.as_str() < partner.as_str() {
                *demand.entry(ordered(inner, outer)).or_default() += 1;
            }
        }
    }
    for ((a, b), need) in &demand {
        let have = host.multiplicity(a, b);
        if have < *need {
            let port = ports
                .iter()
                .find(|p| {
                    let [i, o] = &emb.boundary[**p];
                    ordered(i, o) == (a.clone(), b.clone())
                })
                .expect("demand comes from a port");
            return Err(Rejection::Boundary {
                port: (*port).clone(),
                reason: format!("needs {need} host wires between {a} and {b}, found {have}"),
            });
        }
    }

    for (node, target) in &emb.nodes {
        let (expected, found) = (side.degree(node), host.degree(target));
        if expected != found {
            return Err(Rejection::DegreeLeak { node: node.clone(), target: target.clone(), expected, found });
        }
    }
    Ok(())
}

/// Fill in the half-edges of every port hanging off a matched node, taking
/// the host's remaining outside wires in edge order. Ports wired straight to
/// other ports cannot be inferred and must be given.
pub fn infer_boundary(host: &Diagram, side: &Diagram, emb: &mut Embedding) -> Result<(), Rejection> {
    let image: BTreeSet<&String> = emb.nodes.values().collect();
    let mut taken: BTreeMap<(String, String), usize> = BTreeMap::new();
    for [inner, outer] in emb.boundary.values() {
        *taken.entry((inner.clone(), outer.clone())).or_default() += 1;
    }
    for port in side.inputs().iter().chain(side.outputs()) {
        if emb.boundary.contains_key(port) {
            continue;
        }
        let partner = port_partner(side, port);
        if !side.is_node(&partner) {
            return Err(Rejection::Boundary {
                port: port.clone(),
                reason: format!("wired straight to {partner}; give the half-edge explicitly"),
            });
        }
        let inner = emb.nodes.get(&partner).ok_or(Rejection::UnmappedNode { node: partner.clone() })?.clone();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let mut chosen = None;
        for outer in host.neighbors(&inner) {
            if image.contains(&outer) {
                continue;
            }
            let count = seen.entry(outer.clone()).or_default();
            *count += 1;
            if *count > taken.get(&(inner.clone(), outer.clone())).copied().unwrap_or(0) {
                chosen = Some(outer);
                break;
            }
        }
        let outer = chosen.ok_or_else(|| Rejection::Boundary {
            port: port.clone(),
            reason: format!("no free wire leaves {inner}"),
        })?;
        *taken.entry((inner.clone(), outer.clone())).or_default() += 1;
        emb.boundary.insert(port.clone(), [inner, outer]);
    }
    Ok(())
}

/// Replace the matched copy of `from` by a fresh copy of `to`. `names`
/// optionally fixes the host ids of `to`'s nodes; the rest are derived from
/// the rule ids. Assumes `emb` passed [`validate_embedding`].
pub fn rewrite(
    host: &Diagram,
    from: &Diagram,
    to: &Diagram,
    emb: &Embedding,
    names: &BTreeMap<String, String>,
) -> Result<(Diagram, BTreeMap<String, String>), String> {
    let image: BTreeSet<&String> = emb.nodes.values().collect();
    let mut out = host.clone();
    out.replace_edges(host.edges().iter().filter(|[a, b]| !image.contains(a) && !image.contains(b)).cloned().collect());
    for port in from.inputs().iter().chain(from.outputs()) {
        let partner = port_partner(from, port);
        if from.is_port(&partner) && port < &partner {
            let [inner, outer] = &emb.boundary[port];
            assert!(out.remove_edge(inner, outer), "validated port-to-port wire");
        }
    }
    for target in &image {
        out.remove_node(target);
    }

    let mut placed = BTreeMap::new();
    for (rule_id, host_id) in names {
        if !to.is_node(rule_id) {
            return Err(format!("name given for {rule_id}, which is not a node of the inserted side"));
        }
        if out.contains_id(host_id) || placed.values().any(|v| v == host_id) {
            return Err(format!("requested id {host_id} is already in use"));
        }
        placed.insert(rule_id.clone(), host_id.clone());
        out.add_node(host_id.clone(), *to.node(rule_id).expect("checked")).expect("fresh");
    }
    for (rule_id, kind) in to.nodes() {
        if placed.contains_key(rule_id) {
            continue;
        }
        let id = out.fresh_id(rule_id);
        out.add_node(id.clone(), *kind).expect("fresh");
        placed.insert(rule_id.clone(), id);
    }
    let end = |id: &String| -> String {
        match placed.get(id) {
            Some(h) => h.clone(),
            None => emb.boundary[id][1].clone(),
        }
    };
    for [a, b] in to.edges() {
        out.add_edge(end(a), end(b));
    }
    Ok((out, placed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zx_core::{NodeKind, RealAngle};

    fn host_chain() -> Diagram {
        // i0 - a(Z 1/4) = b(Z 1/4) - o0, with an extra Z leaf c on b
        let mut d = Diagram::new();
        d.add_input("i0").unwrap();
        d.add_output("o0").unwrap();
        d.add_node("a", NodeKind::Z(RealAngle::frac(1, 4))).unwrap();
        d.add_node("b", NodeKind::Z(RealAngle::frac(1, 4))).unwrap();
        d.add_node("c", NodeKind::X(RealAngle::zero())).unwrap();
        d.add_edge("i0", "a");
        d.add_edge("a", "b");
        d.add_edge("b", "o0");
        d.add_edge("b", "c");
        d
    }

    fn fusion_side(outs_b: usize) -> Diagram {
        let mut d = Diagram::new();
        d.add_input("i0").unwrap();
        for k in 0..outs_b {
            d.add_output(format!("o{k}")).unwrap();
        }
        d.add_node("za", NodeKind::Z(RealAngle::frac(1, 4))).unwrap();
        d.add_node("zb", NodeKind::Z(RealAngle::frac(1, 4))).unwrap();
        d.add_edge("i0", "za");
        d.add_edge("za", "zb");
        for k in 0..outs_b {
            d.add_edge("zb", format!("o{k}"));
        }
        d
    }

    fn emb(pairs: &[(&str, &str)]) -> Embedding {
        Embedding {
            nodes: pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            boundary: BTreeMap::new(),
        }
    }

    #[test]
    fn adjacent_spiders_match() {
        let host = host_chain();
        let side = fusion_side(2);
        let mut e = emb(&[("za", "a"), ("zb", "b")]);
        infer_boundary(&host, &side, &mut e).unwrap();
        validate_embedding(&host, &side, &e, 0.0).unwrap();
    }

    #[test]
    fn extra_host_wire_is_a_leak() {
        let host = host_chain();
        let side = fusion_side(1);
        let mut e = emb(&[("za", "a"), ("zb", "b")]);
        infer_boundary(&host, &side, &mut e).unwrap();
        let err = validate_embedding(&host, &side, &e, 0.0).unwrap_err();
        assert!(err.to_string().starts_with("degree leak"), "{err}");
    }

    #[test]
    fn colour_and_injectivity() {
        let host = host_chain();
        let side = fusion_side(2);
        let err = validate_embedding(&host, &side, &emb(&[("za", "a"), ("zb", "c")]), 0.0).unwrap_err();
        assert!(err.to_string().starts_with("kind mismatch"), "{err}");
        let err = validate_embedding(&host, &side, &emb(&[("za", "a"), ("zb", "a")]), 0.0).unwrap_err();
        assert!(err.to_string().starts_with("non-injective"), "{err}");
        let mut wrong = side.clone();
        wrong.set_kind("zb", NodeKind::Z(RealAngle::frac(1, 2)));
        let err = validate_embedding(&host, &wrong, &emb(&[("za", "a"), ("zb", "b")]), 0.0).unwrap_err();
        assert!(err.to_string().starts_with("phase mismatch"), "{err}");
    }

    #[test]
    fn parallel_wires_must_agree() {
        let mut host = host_chain();
        host.add_edge("a", "b");
        let side = fusion_side(2);
        let err = validate_embedding(&host, &side, &emb(&[("za", "a"), ("zb", "b")]), 0.0).unwrap_err();
        assert!(err.to_string().starts_with("multiplicity mismatch"), "{err}");
    }

    #[test]
    fn rewrite_reconnects_the_boundary() {
        let host = host_chain();
        let from = fusion_side(2);
        let mut to = Diagram::new();
        to.add_input("i0").unwrap();
        to.add_output("o0").unwrap();
        to.add_output("o1").unwrap();
        to.add_node("z", NodeKind::Z(RealAngle::frac(1, 2))).unwrap();
        for p in ["i0", "o0", "o1"] {
            to.add_edge(p, "z");
        }
        let mut e = emb(&[("za", "a"), ("zb", "b")]);
        infer_boundary(&host, &from, &mut e).unwrap();
        let (out, placed) = rewrite(&host, &from, &to, &e, &BTreeMap::new()).unwrap();
        assert_eq!(placed["z"], "z");
        assert_eq!(out.nodes().len(), 2);
        assert_eq!(out.degree("z"), 3);
        assert_eq!(out.multiplicity("z", "c"), 1);
        zx_core::validate_diagram(&out).unwrap();
    }
}
