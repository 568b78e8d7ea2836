//! The rule schemas. Inputs are drawn at the top of every rule and
//! outputs at the bottom; port ids `i0..`/`o0..` coincide on both sides.

use std::sync::OnceLock;

use zx_core::{Diagram, NodeKind, RealAngle};

use crate::{Bindings, Origin, Param, ParamKind, RuleSchema};

fn z(d: &mut Diagram, id: &str, p: RealAngle) {
    d.add_node(id, NodeKind::Z(p)).expect("fresh rule node");
}

fn x(d: &mut Diagram, id: &str, p: RealAngle) {
    d.add_node(id, NodeKind::X(p)).expect("fresh rule node");
}

fn h(d: &mut Diagram, id: &str) {
    d.add_node(id, NodeKind::H).expect("fresh rule node");
}

fn zero() -> RealAngle {
    RealAngle::zero()
}

/// Declare inputs `i0..i{n-1}` and outputs `o0..o{m-1}`.
fn ports(d: &mut Diagram, n: usize, m: usize) {
    for k in 0..n {
        d.add_input(format!("i{k}")).expect("fresh port");
    }
    for k in 0..m {
        d.add_output(format!("o{k}")).expect("fresh port");
    }
}

fn wire_range(d: &mut Diagram, node: &str, prefix: char, range: std::ops::Range<usize>) {
    for k in range {
        d.add_edge(format!("{prefix}{k}"), node);
    }
}

/// An X(0)-Z(0) pair joined by one wire: the scalar sqrt 2.
fn pair(d: &mut Diagram, tag: &str) {
    let (xs, zs) = (format!("px{tag}"), format!("pz{tag}"));
    z(d, &zs, zero());
    x(d, &xs, zero());
    d.add_edge(zs, xs);
}

fn s1(b: &Bindings) -> (Diagram, Diagram) {
    let (ia, oa, ib, ob) = (b.count("in_a"), b.count("out_a"), b.count("in_b"), b.count("out_b"));
    let mut lhs = Diagram::new();
    ports(&mut lhs, ia + ib, oa + ob);
    z(&mut lhs, "za", b.angle("phase_a"));
    z(&mut lhs, "zb", b.angle("phase_b"));
    wire_range(&mut lhs, "za", 'i', 0..ia);
    wire_range(&mut lhs, "za", 'o', 0..oa);
    wire_range(&mut lhs, "zb", 'i', ia..ia + ib);
    wire_range(&mut lhs, "zb", 'o', oa..oa + ob);
    for _ in 0..b.count("links") {
        lhs.add_edge("za", "zb");
    }
    let mut rhs = Diagram::new();
    ports(&mut rhs, ia + ib, oa + ob);
    z(&mut rhs, "z", b.angle("phase_a").add(b.angle("phase_b")));
    wire_range(&mut rhs, "z", 'i', 0..ia + ib);
    wire_range(&mut rhs, "z", 'o', 0..oa + ob);
    (lhs, rhs)
}

fn s2(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, 1, 1);
    z(&mut lhs, "z", zero());
    lhs.add_edge("i0", "z");
    lhs.add_edge("z", "o0");
    let mut rhs = Diagram::new();
    ports(&mut rhs, 1, 1);
    rhs.add_edge("i0", "o0");
    (lhs, rhs)
}

fn s3(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, 0, 2);
    lhs.add_edge("o0", "o1");
    let mut rhs = Diagram::new();
    ports(&mut rhs, 0, 2);
    z(&mut rhs, "z", zero());
    rhs.add_edge("z", "o0");
    rhs.add_edge("z", "o1");
    (lhs, rhs)
}

fn iv(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    pair(&mut lhs, "");
    x(&mut lhs, "x3", zero());
    z(&mut lhs, "z3", zero());
    for _ in 0..3 {
        lhs.add_edge("x3", "z3");
    }
    (lhs, Diagram::new())
}

fn b1(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, 0, 2);
    x(&mut lhs, "x", zero());
    z(&mut lhs, "z", zero());
    lhs.add_edge("x", "z");
    lhs.add_edge("z", "o0");
    lhs.add_edge("z", "o1");
    pair(&mut lhs, "");
    let mut rhs = Diagram::new();
    ports(&mut rhs, 0, 2);
    x(&mut rhs, "x0", zero());
    x(&mut rhs, "x1", zero());
    rhs.add_edge("x0", "o0");
    rhs.add_edge("x1", "o1");
    (lhs, rhs)
}

/// `ins` Z(0) nodes on the inputs, `outs` X(0) nodes on the outputs, all
/// pairwise joined, against X(0)-Z(0) in series.
fn bialgebra(ins: usize, outs: usize) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, ins, outs);
    for k in 0..ins {
        z(&mut lhs, &format!("z{k}"), zero());
        lhs.add_edge(format!("i{k}"), format!("z{k}"));
    }
    for j in 0..outs {
        x(&mut lhs, &format!("x{j}"), zero());
        lhs.add_edge(format!("x{j}"), format!("o{j}"));
        for k in 0..ins {
            lhs.add_edge(format!("z{k}"), format!("x{j}"));
        }
    }
    for t in 0..(ins - 1) * (outs - 1) {
        pair(&mut lhs, &t.to_string());
    }
    let mut rhs = Diagram::new();
    ports(&mut rhs, ins, outs);
    x(&mut rhs, "x", zero());
    z(&mut rhs, "z", zero());
    wire_range(&mut rhs, "x", 'i', 0..ins);
    rhs.add_edge("x", "z");
    wire_range(&mut rhs, "z", 'o', 0..outs);
    (lhs, rhs)
}

fn b2(_: &Bindings) -> (Diagram, Diagram) {
    bialgebra(2, 2)
}

fn gbialg(b: &Bindings) -> (Diagram, Diagram) {
    bialgebra(b.count("ins"), b.count("outs"))
}

fn k1(b: &Bindings) -> (Diagram, Diagram) {
    let n = b.count("fanout");
    let mut lhs = Diagram::new();
    ports(&mut lhs, 1, n);
    z(&mut lhs, "zp", RealAngle::pi());
    x(&mut lhs, "x", zero());
    lhs.add_edge("i0", "zp");
    lhs.add_edge("zp", "x");
    wire_range(&mut lhs, "x", 'o', 0..n);
    let mut rhs = Diagram::new();
    ports(&mut rhs, 1, n);
    x(&mut rhs, "x", zero());
    rhs.add_edge("i0", "x");
    for k in 0..n {
        let zk = format!("zp{k}");
        z(&mut rhs, &zk, RealAngle::pi());
        rhs.add_edge("x", zk.clone());
        rhs.add_edge(zk, format!("o{k}"));
    }
    (lhs, rhs)
}

fn k2(b: &Bindings) -> (Diagram, Diagram) {
    let a = b.angle("phase");
    let mut lhs = Diagram::new();
    ports(&mut lhs, 1, 1);
    x(&mut lhs, "x", a);
    z(&mut lhs, "zp", RealAngle::pi());
    lhs.add_edge("i0", "x");
    lhs.add_edge("x", "zp");
    lhs.add_edge("zp", "o0");
    pair(&mut lhs, "");
    let mut rhs = Diagram::new();
    ports(&mut rhs, 1, 1);
    z(&mut rhs, "zp", RealAngle::pi());
    x(&mut rhs, "x", a.neg());
    rhs.add_edge("i0", "zp");
    rhs.add_edge("zp", "x");
    rhs.add_edge("x", "o0");
    x(&mut rhs, "sx", a);
    z(&mut rhs, "sz", RealAngle::pi());
    rhs.add_edge("sx", "sz");
    (lhs, rhs)
}

fn eu(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, 1, 1);
    h(&mut lhs, "h");
    lhs.add_edge("i0", "h");
    lhs.add_edge("h", "o0");
    let mut rhs = Diagram::new();
    ports(&mut rhs, 1, 1);
    z(&mut rhs, "za", RealAngle::frac(1, 2));
    x(&mut rhs, "x", zero());
    z(&mut rhs, "zb", RealAngle::frac(1, 2));
    z(&mut rhs, "zl", RealAngle::frac(-1, 2));
    rhs.add_edge("i0", "za");
    rhs.add_edge("za", "x");
    rhs.add_edge("x", "zb");
    rhs.add_edge("zb", "o0");
    rhs.add_edge("x", "zl");
    (lhs, rhs)
}

fn hadamard(b: &Bindings) -> (Diagram, Diagram) {
    let (n, m, a) = (b.count("ins"), b.count("outs"), b.angle("phase"));
    let mut lhs = Diagram::new();
    ports(&mut lhs, n, m);
    x(&mut lhs, "x", a);
    for (prefix, count) in [('i', n), ('o', m)] {
        for k in 0..count {
            let hid = format!("h{prefix}{k}");
            h(&mut lhs, &hid);
            lhs.add_edge(format!("{prefix}{k}"), hid.clone());
            lhs.add_edge(hid, "x");
        }
    }
    let mut rhs = Diagram::new();
    ports(&mut rhs, n, m);
    z(&mut rhs, "z", a);
    wire_range(&mut rhs, "z", 'i', 0..n);
    wire_range(&mut rhs, "z", 'o', 0..m);
    (lhs, rhs)
}

fn zo(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, 1, 1);
    z(&mut lhs, "zp", RealAngle::pi());
    lhs.add_edge("i0", "o0");
    let mut rhs = Diagram::new();
    ports(&mut rhs, 1, 1);
    z(&mut rhs, "zp", RealAngle::pi());
    z(&mut rhs, "ze", zero());
    x(&mut rhs, "xs", zero());
    rhs.add_edge("i0", "ze");
    rhs.add_edge("xs", "o0");
    (lhs, rhs)
}

/// `n` green leaves at `phase + 2k pi/n` on one X(0) node with one output,
/// against Z(n phase + (n-1) pi) joined to it by `n` wires.
fn supplementarity(phase: RealAngle, n: usize) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, 0, 1);
    x(&mut lhs, "x", zero());
    lhs.add_edge("x", "o0");
    for k in 0..n {
        let g = format!("g{k}");
        z(&mut lhs, &g, phase.add(RealAngle::frac(2 * k as i64, n as u64)));
        lhs.add_edge(g, "x");
    }
    let mut rhs = Diagram::new();
    ports(&mut rhs, 0, 1);
    x(&mut rhs, "x", zero());
    rhs.add_edge("x", "o0");
    z(&mut rhs, "g", phase.mul_int(n as i64).add(RealAngle::frac(n as i64 - 1, 1)));
    for _ in 0..n {
        rhs.add_edge("g", "x");
    }
    (lhs, rhs)
}

fn sup(b: &Bindings) -> (Diagram, Diagram) {
    supplementarity(b.angle("phase"), 2)
}

fn sup_n(b: &Bindings) -> (Diagram, Diagram) {
    supplementarity(b.angle("phase"), b.count("branches"))
}

fn e_rule(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    z(&mut lhs, "z", RealAngle::frac(1, 4));
    x(&mut lhs, "x", RealAngle::frac(-1, 4));
    lhs.add_edge("z", "x");
    (lhs, Diagram::new())
}

fn hopf(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    ports(&mut lhs, 1, 1);
    x(&mut lhs, "x", zero());
    z(&mut lhs, "z", zero());
    lhs.add_edge("i0", "x");
    lhs.add_edge("x", "z");
    lhs.add_edge("x", "z");
    lhs.add_edge("z", "o0");
    pair(&mut lhs, "0");
    pair(&mut lhs, "1");
    let mut rhs = Diagram::new();
    ports(&mut rhs, 1, 1);
    x(&mut rhs, "x", zero());
    z(&mut rhs, "z", zero());
    rhs.add_edge("i0", "x");
    rhs.add_edge("z", "o0");
    (lhs, rhs)
}

fn double_pair(_: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    pair(&mut lhs, "0");
    pair(&mut lhs, "1");
    let mut rhs = Diagram::new();
    z(&mut rhs, "z", zero());
    (lhs, rhs)
}

fn pair_phase(b: &Bindings) -> (Diagram, Diagram) {
    let mut lhs = Diagram::new();
    z(&mut lhs, "z", zero());
    x(&mut lhs, "x", b.angle("phase"));
    lhs.add_edge("z", "x");
    let mut rhs = Diagram::new();
    pair(&mut rhs, "");
    (lhs, rhs)
}

const fn angle(name: &'static str) -> Param {
    Param { name, kind: ParamKind::Angle }
}

const fn count(name: &'static str, min: usize) -> Param {
    Param { name, kind: ParamKind::Count { min } }
}

fn build() -> Vec<RuleSchema> {
    use Origin::*;
    let s1_params = vec![
        angle("phase_a"),
        angle("phase_b"),
        count("in_a", 0),
        count("out_a", 0),
        count("in_b", 0),
        count("out_b", 0),
        count("links", 1),
    ];
    vec![
        RuleSchema::new("S1", "spider fusion along one or more wires", Axiom, s1_params, s1),
        RuleSchema::new("S2", "a phase-free 1->1 spider is a wire", Axiom, vec![], s2),
        RuleSchema::new("S3", "the cap is a phase-free 0->2 spider", Axiom, vec![], s3),
        RuleSchema::new("IV", "a sqrt 2 pair times a triple-wired pair is empty", Axiom, vec![], iv),
        RuleSchema::new("B1", "a red state copies through a green node", Axiom, vec![], b1),
        RuleSchema::new("B2", "bialgebra", Axiom, vec![], b2),
        RuleSchema::new("K1", "pi commutation through a red node", Axiom, vec![count("fanout", 0)], k1),
        RuleSchema::new("K2", "pi commutation negating a red phase", Axiom, vec![angle("phase")], k2),
        RuleSchema::new("EU", "Euler decomposition of the Hadamard box", Axiom, vec![], eu),
        RuleSchema::new(
            "H",
            "colour change by H boxes on every leg",
            Axiom,
            vec![angle("phase"), count("ins", 0), count("outs", 0)],
            hadamard,
        ),
        RuleSchema::new("ZO", "a zero scalar disconnects a wire", Axiom, vec![], zo),
        RuleSchema::new("SUP", "supplementarity of antipodal leaves", Axiom, vec![angle("phase")], sup),
        RuleSchema::new("E", "the pi/4 pair is the scalar 1", AddedAxiom, vec![], e_rule),
        RuleSchema::new(
            "SUP_n",
            "cyclotomic supplementarity of n equally spaced leaves",
            Schema,
            vec![angle("phase"), count("branches", 1)],
            sup_n,
        ),
        RuleSchema::new("HL", "Hopf law with its two sqrt 2 pairs", DerivedImported, vec![], hopf),
        RuleSchema::new("DOUBLE_PAIR", "two sqrt 2 pairs make the scalar 2", DerivedImported, vec![], double_pair),
        RuleSchema::new(
            "PAIR_PHASE",
            "a red phase next to a green leaf is irrelevant",
            DerivedImported,
            vec![angle("phase")],
            pair_phase,
        ),
        RuleSchema::new(
            "GBIALG",
            "generalised bialgebra with (ins-1)(outs-1) sqrt 2 pairs",
            DerivedImported,
            vec![count("ins", 1), count("outs", 1)],
            gbialg,
        ),
    ]
}

pub fn catalogue() -> &'static [RuleSchema] {
    static CATALOGUE: OnceLock<Vec<RuleSchema>> = OnceLock::new();
    CATALOGUE.get_or_init(build)
}

pub fn lookup(name: &str) -> Option<&'static RuleSchema> {
    catalogue().iter().find(|s| s.name == name)
}
