//! The bundled derivations, built step by step. Every helper reads colours,
//! phases and leg counts off the current host so the scripts stay in sync
//! with the rule catalogue.

use std::collections::BTreeMap;

use zx_core::{Diagram, NodeKind, RealAngle};
use zx_derive::{Script, ScriptBuilder, Step};
use zx_rules::{instantiate, lookup, Bindings, RuleSet, Variant};

type Built = BTreeMap<String, String>;

fn run(b: &mut ScriptBuilder, step: Step) -> Built {
    let label = format!("{} {:?}", step.rule, step.embedding.nodes);
    match b.apply(step) {
        Ok(placed) => placed,
        Err(e) => panic!("step {} ({label}) failed: {e}", b.steps().len()),
    }
}

fn kind(b: &ScriptBuilder, id: &str) -> NodeKind {
    *b.current().node(id).unwrap_or_else(|| panic!("no node {id}"))
}

fn is_x(b: &ScriptBuilder, id: &str) -> bool {
    matches!(kind(b, id), NodeKind::X(_))
}

fn phase(b: &ScriptBuilder, id: &str) -> RealAngle {
    kind(b, id).phase().expect("spider")
}

fn s1_step(pa: RealAngle, pb: RealAngle, ia: usize, ib: usize, links: usize) -> Step {
    Step::new("S1")
        .angle("phase_a", pa)
        .angle("phase_b", pb)
        .count("in_a", ia)
        .count("out_a", 0)
        .count("in_b", ib)
        .count("out_b", 0)
        .count("links", links)
}

fn coloured(step: Step, x: bool) -> Step {
    if x {
        step.swap()
    } else {
        step
    }
}

/// Fuse `other` into `keep`; the result keeps the id `keep`.
fn fuse(b: &mut ScriptBuilder, keep: &str, other: &str) {
    let d = b.current();
    let links = d.multiplicity(keep, other);
    let (ia, ib) = (d.degree(keep) - links, d.degree(other) - links);
    let step =
        s1_step(phase(b, keep), phase(b, other), ia, ib, links).node("za", keep).node("zb", other).name("z", keep);
    let step = coloured(step, is_x(b, keep));
    run(b, step);
}

/// Split `node` in two joined by one wire: `keep` (phase `pa`) takes the
/// host neighbours `legs_a`, `new` (phase `pb`) takes `legs_b`.
fn split(
    b: &mut ScriptBuilder,
    node: &str,
    pa: RealAngle,
    legs_a: &[&str],
    keep: &str,
    pb: RealAngle,
    legs_b: &[&str],
    new: &str,
) {
    let mut step =
        s1_step(pa, pb, legs_a.len(), legs_b.len(), 1).rtl().node("z", node).name("za", keep).name("zb", new);
    for (k, leg) in legs_a.iter().chain(legs_b).enumerate() {
        step = step.port(&format!("i{k}"), node, leg);
    }
    let step = coloured(step, is_x(b, node));
    run(b, step);
}

/// Split a phase-free leaf off `node`, which keeps its id and neighbours.
fn sprout(b: &mut ScriptBuilder, node: &str, leaf: &str) {
    let legs: Vec<String> = b.current().neighbors(node);
    let legs: Vec<&str> = legs.iter().map(String::as_str).collect();
    let p = phase(b, node);
    split(b, node, p, &legs, node, RealAngle::zero(), &[], leaf);
}

/// Map the rule's sqrt 2 pair `(px{tag}, pz{tag})` onto a host pair given as
/// `(x node, z node)`, following the colour swap.
fn pair(step: Step, tag: &str, host: (&str, &str)) -> Step {
    let (xs, zs) = (format!("px{tag}"), format!("pz{tag}"));
    if step.variant.swap {
        step.node(&xs, host.1).node(&zs, host.0)
    } else {
        step.node(&xs, host.0).node(&zs, host.1)
    }
}

/// Host ids `(x node, z node)` of a pair the last step inserted.
fn placed_pair(placed: &Built, tag: &str, swapped: bool) -> (String, String) {
    let (xs, zs) = (placed[&format!("px{tag}")].clone(), placed[&format!("pz{tag}")].clone());
    if swapped {
        (zs, xs)
    } else {
        (xs, zs)
    }
}

/// Given a zero scalar `zpi` (a leg-free Z(pi)), cut the host wire `a`-`b`
/// into a Z(0) effect on `a` and a Z(0) state on `b`. Uses no rule that
/// changes `invariant_r`, and leaves the number of sqrt 2 pairs unchanged.
/// Returns the ids of the two new leaves.
pub fn cut(b: &mut ScriptBuilder, zpi: &str, a: &str, c: &str, tag: &str) -> (String, String) {
    let id = |s: &str| format!("{s}{tag}");
    let (r, rl, pl, hx, hz) = (id("r"), id("rl"), id("pl"), id("hx"), id("hz"));
    run(
        b,
        Step::new("S2").rtl().swap().port("i0", c, a).port("o0", a, c).name("z", &r).note("put a red node on the wire"),
    );
    sprout(b, &r, &rl);
    sprout(b, zpi, &pl);
    let placed = run(b, Step::new("HL").rtl().node("x", &rl).node("z", &pl).name("x", &hx).name("z", &hz));
    let pairs = [placed_pair(&placed, "0", false), placed_pair(&placed, "1", false)];
    fuse(b, &r, &hx);
    fuse(b, zpi, &hz);
    let (ra, rb) = (id("ra"), id("rb"));
    let zero = RealAngle::zero();
    split(b, &r, zero, &[zpi, zpi], &ra, zero, &[a, c], &rb);
    let s0 = id("s0");
    run(
        b,
        Step::new("SUP")
            .rtl()
            .angle("phase", zero)
            .node("x", &ra)
            .node("g", zpi)
            .name("x", &ra)
            .name("g0", &s0)
            .name("g1", zpi),
    );
    fuse(b, &rb, &ra);
    let (r1, r2) = (id("r1"), id("r2"));
    split(b, &rb, zero, &[a, c], &r1, zero, &[&s0, zpi], &r2);
    let (pg, g1) = (id("pg"), id("g1"));
    let step = Step::new("B1").swap().node("x", &s0).node("z", &r2).port("o0", &r2, zpi).port("o1", &r2, &r1);
    run(b, pair(step, "", (&pairs[0].0, &pairs[0].1)).name("x0", &pg).name("x1", &g1));
    fuse(b, zpi, &pg);
    let (ga, gb) = (id("ga"), id("gb"));
    let step = Step::new("B1").swap().node("x", &g1).node("z", &r1).port("o0", &r1, a).port("o1", &r1, c);
    run(b, pair(step, "", (&pairs[1].0, &pairs[1].1)).name("x0", &ga).name("x1", &gb));
    (ga, gb)
}

/// The inverse of [`cut`]: with a zero scalar `zpi` around, a Z(0) leaf on
/// `a` and one on `c` become a wire `a`-`c`.
pub fn uncut(b: &mut ScriptBuilder, zpi: &str, leaf_a: &str, leaf_c: &str, tag: &str) {
    let id = |s: &str| format!("{s}{tag}");
    let outer = |b: &ScriptBuilder, leaf: &str| b.current().neighbors(leaf)[0].clone();
    let (a, c) = (outer(b, leaf_a), outer(b, leaf_c));
    let zero = RealAngle::zero();
    let (r1, g1) = (id("r1"), id("g1"));
    let placed = run(
        b,
        Step::new("B1")
            .swap()
            .rtl()
            .node("x0", leaf_a)
            .node("x1", leaf_c)
            .port("o0", leaf_a, &a)
            .port("o1", leaf_c, &c)
            .name("z", &r1)
            .name("x", &g1),
    );
    let first = placed_pair(&placed, "", true);
    let pg = id("pg");
    sprout(b, zpi, &pg);
    let (r2, s0) = (id("r2"), id("s0"));
    let placed = run(
        b,
        Step::new("B1")
            .swap()
            .rtl()
            .node("x0", &pg)
            .node("x1", &g1)
            .port("o0", &pg, zpi)
            .port("o1", &g1, &r1)
            .name("z", &r2)
            .name("x", &s0),
    );
    let second = placed_pair(&placed, "", true);
    let r = id("r");
    fuse(b, &r1, &r2);
    let (ra, rb) = (id("ra"), id("rb"));
    split(b, &r1, zero, &[&a, &c], &rb, zero, &[&s0, zpi], &ra);
    run(
        b,
        Step::new("SUP")
            .angle("phase", zero)
            .node("x", &ra)
            .node("g0", &s0)
            .node("g1", zpi)
            .name("g", zpi)
            .name("x", &ra),
    );
    fuse(b, &rb, &ra);
    let hz = id("hz");
    split(b, zpi, RealAngle::pi(), &[], zpi, zero, &[&rb, &rb], &hz);
    let hx = id("hx");
    split(b, &rb, zero, &[&a, &c], &r, zero, &[&hz, &hz], &hx);
    let (rl, pl) = (id("rl"), id("pl"));
    let step = Step::new("HL").node("x", &hx).node("z", &hz).name("x", &rl).name("z", &pl);
    let step = pair(pair(step, "0", (&first.0, &first.1)), "1", (&second.0, &second.1));
    run(b, step);
    fuse(b, zpi, &pl);
    fuse(b, &r, &rl);
    run(b, Step::new("S2").swap().node("z", &r).port("i0", &r, &a).port("o0", &r, &c).note("drop the red node"));
}

fn rule_side(name: &str, bindings: Bindings, lhs: bool) -> Diagram {
    let inst = instantiate(lookup(name).unwrap(), &bindings, Variant::default()).unwrap();
    if lhs {
        inst.lhs
    } else {
        inst.rhs
    }
}

/// IV from the rules of ZX_E: create the scalar of E, turn the sqrt 2 pair and
/// the triple-wired pair into its two nodes, and remove it again.
pub fn iv_from_zxe() -> Script {
    let initial = rule_side("IV", Bindings::new(), true);
    let mut b = ScriptBuilder::new(RuleSet::ZxE, initial);
    let q = RealAngle::frac(1, 4);
    run(&mut b, Step::new("E").rtl().name("z", "ez").name("x", "ex").note("introduce the scalar 1"));
    sprout(&mut b, "x3", "xl");
    sprout(&mut b, "ex", "xl2");
    let placed = run(
        &mut b,
        Step::new("B1")
            .rtl()
            .node("x0", "xl")
            .node("x1", "xl2")
            .name("x", "s")
            .name("z", "g")
            .name("px", "p2x")
            .name("pz", "p2z"),
    );
    assert_eq!(placed["px"], "p2x");
    let zero = RealAngle::zero();
    split(&mut b, "x3", zero, &["z3", "z3"], "x3a", zero, &["z3", "g"], "x3b");
    let step = Step::new("HL").node("x", "x3a").node("z", "z3").name("x", "xe").name("z", "ze");
    run(&mut b, pair(pair(step, "0", ("px", "pz")), "1", ("p2x", "p2z")));
    fuse(&mut b, "x3b", "xe");
    run(&mut b, Step::new("S2").swap().node("z", "x3b"));
    fuse(&mut b, "g", "ze");
    run(&mut b, Step::new("S2").node("z", "g"));
    fuse(&mut b, "ex", "s");
    assert_eq!(phase(&b, "ex"), q.neg());
    run(&mut b, Step::new("E").node("z", "ez").node("x", "ex").note("remove the scalar 1"));
    b.finish(Diagram::new(), BTreeMap::new())
}

/// ZO from the rules of ZX_E, using the two imported pair lemmas.
pub fn zo_from_zxe() -> Script {
    let initial = rule_side("ZO", Bindings::new(), true);
    let mut b = ScriptBuilder::new(RuleSet::ZxE, initial);
    let (eff, st) = cut(&mut b, "zp", "i0", "o0", "_w");
    run(&mut b, Step::new("E").rtl().name("z", "ez").name("x", "ex").note("the only step that changes invariant_r"));
    let (ga, gb) = cut(&mut b, "zp", "ez", "ex", "_e");
    fuse(&mut b, "ez", &ga);
    run(
        &mut b,
        Step::new("PAIR_PHASE")
            .angle("phase", RealAngle::frac(-1, 4))
            .node("z", &gb)
            .node("x", "ex")
            .name("px", "qx")
            .name("pz", "qz"),
    );
    sprout(&mut b, "ez", "gz");
    uncut(&mut b, "zp", "qz", "gz", "_u");
    run(
        &mut b,
        Step::new("PAIR_PHASE")
            .swap()
            .angle("phase", RealAngle::frac(1, 4))
            .node("z", "qx")
            .node("x", "ez")
            .name("px", "qg")
            .name("pz", "qr"),
    );
    uncut(&mut b, "zp", "qg", &st, "_v");
    let claimed = rule_side("ZO", Bindings::new(), false);
    let iso = [("zp", "zp"), (eff.as_str(), "ze"), ("qr", "xs")]
        .iter()
        .map(|(a, c)| (a.to_string(), c.to_string()))
        .collect();
    b.finish(claimed, iso)
}

/// SUP_4 at phase pi/4 from two uses of SUP and one twin merge.
pub fn sup4_from_sup2() -> Script {
    let a = RealAngle::frac(1, 4);
    let bind = Bindings::new().with_angle("phase", a).with_count("branches", 4);
    let initial = rule_side("SUP_n", bind.clone(), true);
    let mut b = ScriptBuilder::new(RuleSet::Zx, initial);
    let zero = RealAngle::zero();
    split(&mut b, "x", zero, &["g0", "g2"], "x1", zero, &["o0", "g1", "g3"], "x2");
    run(
        &mut b,
        Step::new("SUP")
            .angle("phase", a)
            .node("x", "x1")
            .node("g0", "g0")
            .node("g1", "g2")
            .name("g", "ga")
            .name("x", "x1"),
    );
    split(&mut b, "x2", zero, &["g1", "g3"], "x3", zero, &["o0", "x1"], "x2");
    let three = RealAngle::frac(3, 4);
    run(
        &mut b,
        Step::new("SUP")
            .angle("phase", three)
            .node("x", "x3")
            .node("g0", "g1")
            .node("g1", "g3")
            .name("g", "gb")
            .name("x", "x3"),
    );
    fuse(&mut b, "x2", "x1");
    fuse(&mut b, "x2", "x3");
    run(&mut b, Step::new("TWINS").count("branches", 2).node("0", "ga").node("1", "gb").name("merged", "g"));
    let claimed = rule_side("SUP_n", bind, false);
    let iso = [("x2", "x"), ("g", "g")].iter().map(|(a, c)| (a.to_string(), c.to_string())).collect();
    b.finish(claimed, iso)
}

pub fn alpha0() -> f64 {
    std::f64::consts::FRAC_PI_2 - (2.0f64 / 3.0).sqrt().acos()
}

pub fn theta0() -> f64 {
    (2f64.sqrt() / 2.0 + 3f64.sqrt() / 6.0).acos()
}

fn chain(d: &mut Diagram, ids: &[(&str, NodeKind)]) {
    for (k, (id, kind)) in ids.iter().enumerate() {
        d.add_node(*id, *kind).unwrap();
        if k > 0 {
            d.add_edge(ids[k - 1].0, *id);
        }
    }
}

/// The first diagram of the incompleteness argument with a Z(pi) state on
/// its input and a Z(0) effect on its output.
pub fn d1_plugged() -> Diagram {
    let mut d = Diagram::new();
    let (q, z) = (RealAngle::frac(1, 4), RealAngle::zero());
    chain(
        &mut d,
        &[
            ("a", NodeKind::Z(RealAngle::pi())),
            ("b", NodeKind::X(q)),
            ("c", NodeKind::Z(RealAngle::frac(1, 2))),
            ("d", NodeKind::X(q)),
            ("e", NodeKind::Z(z)),
        ],
    );
    d
}

/// The second diagram at `(alpha, theta)`, plugged the same way.
pub fn d2_plugged(alpha: f64, theta: f64) -> Diagram {
    let mut d = Diagram::new();
    let al = RealAngle::float(alpha).unwrap();
    chain(
        &mut d,
        &[
            ("p", NodeKind::Z(RealAngle::pi())),
            ("a", NodeKind::Z(al)),
            ("m", NodeKind::X(RealAngle::frac(1, 3))),
            ("b", NodeKind::Z(al)),
            ("q", NodeKind::Z(RealAngle::zero())),
        ],
    );
    chain(&mut d, &[("tx", NodeKind::X(RealAngle::zero())), ("tz", NodeKind::Z(RealAngle::zero()))]);
    d.add_edge("tx", "tz");
    d.add_edge("tx", "tz");
    chain(&mut d, &[("sx", NodeKind::X(RealAngle::pi())), ("sz", NodeKind::Z(RealAngle::float(theta).unwrap()))]);
    d
}

pub fn thm2_d1_plug() -> Script {
    let mut b = ScriptBuilder::new(RuleSet::Zx, d1_plugged());
    let (z, q) = (RealAngle::zero(), RealAngle::frac(1, 4));
    let placed = run(&mut b, Step::new("IV").rtl().name("x3", "tx").name("z3", "tz"));
    let iv_pair = placed_pair(&placed, "", false);
    split(&mut b, "d", z, &["c", "e"], "d0", q, &[], "dl");
    let step = Step::new("B1").swap().node("x", "e").node("z", "d0").port("o0", "d0", "c").port("o1", "d0", "dl");
    run(&mut b, pair(step, "", (&iv_pair.0, &iv_pair.1)).name("x0", "ec").name("x1", "ed"));
    fuse(&mut b, "c", "ec");
    let placed = run(&mut b, Step::new("PAIR_PHASE").angle("phase", q).node("z", "ed").node("x", "dl"));
    let fresh_pair = placed_pair(&placed, "", false);
    split(&mut b, "b", z, &["a", "c"], "b0", q, &[], "bl");
    sprout(&mut b, "a", "ga");
    run(
        &mut b,
        Step::new("K1")
            .count("fanout", 2)
            .node("zp", "a")
            .node("x", "b0")
            .port("i0", "a", "ga")
            .port("o0", "b0", "c")
            .port("o1", "b0", "bl")
            .name("x", "xk")
            .name("zp0", "k0")
            .name("zp1", "k1"),
    );
    fuse(&mut b, "c", "k0");
    let step = Step::new("B1").swap().node("x", "ga").node("z", "xk").port("o0", "xk", "c").port("o1", "xk", "k1");
    run(&mut b, pair(step, "", (&fresh_pair.0, &fresh_pair.1)).name("x0", "l0").name("x1", "l1"));
    fuse(&mut b, "c", "l0");
    fuse(&mut b, "k1", "l1");
    b.finish_as_is()
}

pub fn thm2_d2_plug() -> Script {
    let (alpha, theta) = (alpha0(), theta0());
    let mut b = ScriptBuilder::new(RuleSet::Zx, d2_plugged(alpha, theta));
    let z = RealAngle::zero();
    fuse(&mut b, "a", "p");
    fuse(&mut b, "b", "q");
    split(&mut b, "m", z, &["a", "b"], "m0", RealAngle::frac(1, 3), &[], "ml");
    let al = RealAngle::float(alpha).unwrap();
    run(
        &mut b,
        Step::new("SUP")
            .angle("phase", al)
            .node("x", "m0")
            .node("g0", "b")
            .node("g1", "a")
            .name("g", "g")
            .name("x", "m0"),
    );
    fuse(&mut b, "ml", "m0");
    let first = run(&mut b, Step::new("IV").rtl().name("x3", "t1x").name("z3", "t1z"));
    let second = run(&mut b, Step::new("IV").rtl().name("x3", "t2x").name("z3", "t2z"));
    let (p1, p2) = (placed_pair(&first, "", false), placed_pair(&second, "", false));
    let gp = phase(&b, "g");
    split(&mut b, "ml", RealAngle::frac(1, 3), &[], "ml", z, &["g", "g"], "hx");
    split(&mut b, "g", gp, &[], "g", z, &["hx", "hx"], "hz");
    let step = Step::new("HL").node("x", "hx").node("z", "hz").name("x", "hl").name("z", "hr");
    run(&mut b, pair(pair(step, "0", (&p1.0, &p1.1)), "1", (&p2.0, &p2.1)));
    fuse(&mut b, "ml", "hl");
    fuse(&mut b, "g", "hr");
    b.finish_as_is()
}

pub fn all() -> Vec<(&'static str, Script)> {
    vec![
        ("iv_from_zxe", iv_from_zxe()),
        ("zo_from_zxe", zo_from_zxe()),
        ("sup4_from_sup2", sup4_from_sup2()),
        ("thm2_d1_plug", thm2_d1_plug()),
        ("thm2_d2_plug", thm2_d2_plug()),
    ]
}
