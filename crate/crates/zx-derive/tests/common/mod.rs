//! Generators shared by the integration tests and the acceptance target.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use zx_core::{Diagram, NodeKind, RealAngle};
use zx_derive::{Direction, Script, Step, TWINS};
use zx_rules::{instantiate, lookup, Bindings, ParamKind, RuleSet, Variant};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shift the first angle binding of the first step that has one.
pub fn wrong_phase(script: &Script) -> (Script, usize) {
    let mut s = script.clone();
    let k = s
        .steps
        .iter()
        .position(|st| st.bindings.as_object().is_some_and(|o| o.values().any(|v| v.is_string())))
        .unwrap();
    let obj = s.steps[k].bindings.as_object_mut().unwrap();
    let (key, value) = obj.iter().find(|(_, v)| v.is_string()).map(|(a, b)| (a.clone(), b.clone())).unwrap();
    let old: zx_core::PiRational = value.as_str().unwrap().parse().unwrap();
    let new = RealAngle::Exact(old).add(RealAngle::frac(1, 4));
    obj.insert(key, json!(new.to_string()));
    (s, k)
}

/// Point one node of a step's match at a different host node.
pub fn wrong_embedding(script: &Script, k: usize) -> Script {
    let mut s = script.clone();
    let nodes = &mut s.steps[k].embedding.nodes;
    let targets: Vec<String> = nodes.values().cloned().collect();
    let first = nodes.keys().next().unwrap().clone();
    let other =
        script.initial.nodes().keys().find(|id| !targets.contains(id)).cloned().unwrap_or_else(|| "ghost".into());
    nodes.insert(first, other);
    s
}

pub fn wrong_final_iso(script: &Script) -> Script {
    let mut s = script.clone();
    let keys: Vec<String> = s.final_iso.keys().cloned().collect();
    let pick = keys.iter().enumerate().find_map(|(a, ka)| {
        keys[a + 1..]
            .iter()
            .find(|kb| {
                let label = |k: &str| s.claimed.node(&s.final_iso[k]).unwrap().label();
                label(ka) != label(kb)
            })
            .map(|kb| (ka.clone(), kb.clone()))
    });
    match pick {
        Some((a, b)) => {
            let (va, vb) = (s.final_iso[&a].clone(), s.final_iso[&b].clone());
            s.final_iso.insert(a, vb);
            s.final_iso.insert(b, va);
        }
        None => {
            s.final_iso.insert("ghost".into(), "ghost".into());
        }
    }
    s
}

pub fn random_bindings(rule: &str, rng: &mut ChaCha8Rng) -> Bindings {
    let mut b = Bindings::new();
    for p in &lookup(rule).unwrap().params {
        b = match p.kind {
            ParamKind::Angle => b.with_angle(p.name, RealAngle::frac(rng.gen_range(0..8), 4)),
            ParamKind::Count { min } => b.with_count(p.name, rng.gen_range(min..=min + 2)),
        };
    }
    b
}

pub fn random_spider(rng: &mut ChaCha8Rng) -> NodeKind {
    let p = RealAngle::frac(rng.gen_range(0..8), 4);
    if rng.gen() {
        NodeKind::Z(p)
    } else {
        NodeKind::X(p)
    }
}

/// Places one side of a random instance of `rule` into a fresh host part
/// whose ids all start with `tag`. Every boundary port of the side becomes a
/// random spider, some of which carry ports of the host.
pub fn place(
    rule: &str,
    tag: &str,
    host: &mut Diagram,
    ports: &mut (Vec<String>, Vec<String>),
    rng: &mut ChaCha8Rng,
) -> Step {
    let bindings = random_bindings(rule, rng);
    let variant = *Variant::ALL.choose(rng).unwrap();
    let ltr = rng.gen();
    let inst = instantiate(lookup(rule).unwrap(), &bindings, variant).unwrap();
    let (from, _) = inst.sides(ltr);
    let id = |s: &str| format!("{tag}{s}");
    let mut step = Step::new(rule);
    step.variant = variant;
    step.dir = if ltr { Direction::Ltr } else { Direction::Rtl };
    step.bindings = bindings.to_json();
    for (n, kind) in from.nodes() {
        host.add_node(id(n), *kind).unwrap();
        step.embedding.nodes.insert(n.clone(), id(n));
    }
    let boundary: Vec<&String> = from.inputs().iter().chain(from.outputs()).collect();
    for p in &boundary {
        let c = id(&format!("c_{p}"));
        host.add_node(c.clone(), random_spider(rng)).unwrap();
        for _ in 0..rng.gen_range(0..=2) {
            let q = id(&format!("p{}", ports.0.len() + ports.1.len()));
            if rng.gen() {
                host.add_input(q.clone()).unwrap();
                ports.0.push(q.clone());
            } else {
                host.add_output(q.clone()).unwrap();
                ports.1.push(q.clone());
            }
            host.add_edge(q, c.clone());
        }
    }
    for [a, b] in from.edges() {
        match (from.is_port(a), from.is_port(b)) {
            (false, false) => host.add_edge(id(a), id(b)),
            (true, true) => {
                let (ca, cb) = (id(&format!("c_{a}")), id(&format!("c_{b}")));
                host.add_edge(ca.clone(), cb.clone());
                step.embedding.boundary.insert(a.clone(), [cb.clone(), ca.clone()]);
                step.embedding.boundary.insert(b.clone(), [ca, cb]);
            }
            (pa, _) => {
                let (p, n) = if pa { (a, b) } else { (b, a) };
                let c = id(&format!("c_{p}"));
                host.add_edge(id(n), c.clone());
                step.embedding.boundary.insert(p.clone(), [id(n), c]);
            }
        }
    }
    if boundary.len() >= 2 && rng.gen_bool(0.3) {
        let pick: Vec<&&String> = boundary.choose_multiple(rng, 2).collect();
        host.add_edge(id(&format!("c_{}", pick[0])), id(&format!("c_{}", pick[1])));
    }
    step
}

/// A script whose steps each rewrite their own disjoint part of the initial
/// diagram.
pub fn random_script(ruleset: RuleSet, rules: &[&str], tag: &str, rng: &mut ChaCha8Rng) -> Script {
    let mut initial = Diagram::new();
    let mut ports = (Vec::new(), Vec::new());
    let steps: Vec<Step> = rules
        .iter()
        .enumerate()
        .map(|(k, r)| place(r, &format!("{tag}s{k}_"), &mut initial, &mut ports, rng))
        .collect();
    initial.set_boundary(ports.0, ports.1);
    zx_core::validate_diagram(&initial).unwrap();
    let mut current = initial.clone();
    for step in &steps {
        current = zx_derive::apply_step(&current, ruleset, step, 1e-9).unwrap().diagram;
    }
    let iso: BTreeMap<String, String> = current.nodes().keys().map(|k| (k.clone(), k.clone())).collect();
    Script { ruleset, initial, steps, claimed: current, final_iso: iso }
}

pub fn pool(ruleset: RuleSet, without: &str) -> Vec<&'static str> {
    ruleset.members().iter().copied().filter(|r| *r != without && *r != TWINS).collect()
}

pub fn spider(green: bool, p: RealAngle) -> NodeKind {
    if green {
        NodeKind::Z(p)
    } else {
        NodeKind::X(p)
    }
}

/// `n` twins sharing up to three spider neighbours, each wire repeated up to
/// twice; neighbours may also touch each other and the boundary.
pub fn configuration(rng: &mut ChaCha8Rng) -> (Diagram, Vec<String>, usize) {
    let n = rng.gen_range(1..=4usize);
    let green = rng.gen();
    let base = RealAngle::frac(rng.gen_range(0..24), 12);
    let mut offsets: Vec<i64> = (0..n as i64).collect();
    for k in (1..n).rev() {
        offsets.swap(k, rng.gen_range(0..=k));
    }
    let mut d = Diagram::new();
    let twins: Vec<String> = (0..n).map(|k| format!("t{k}")).collect();
    for (t, k) in twins.iter().zip(&offsets) {
        d.add_node(t.clone(), spider(green, base.add(RealAngle::frac(2 * k, n as u64)))).unwrap();
    }
    let neighbours = rng.gen_range(1..=3);
    let mut outputs = Vec::new();
    for v in 0..neighbours {
        let id = format!("v{v}");
        d.add_node(id.clone(), spider(rng.gen(), RealAngle::frac(rng.gen_range(0..8), 4))).unwrap();
        let m = rng.gen_range(1..=2);
        for t in &twins {
            for _ in 0..m {
                d.add_edge(t.clone(), id.clone());
            }
        }
        if rng.gen() {
            let p = format!("o{}", outputs.len());
            d.add_output(p.clone()).unwrap();
            d.add_edge(id.clone(), p.clone());
            outputs.push(p);
        }
        if v > 0 && rng.gen_bool(0.3) {
            d.add_edge(id.clone(), format!("v{}", v - 1));
        }
    }
    (d, twins, n)
}
