//! Merging cyclotomic twins: same-colour spiders with a common
//! neighbourhood whose phases are `a + 2k pi/n`, `k = 0..n-1`.

use std::collections::{BTreeMap, BTreeSet};

use zx_core::{Diagram, RealAngle};

/// Check the twin conditions and merge. Returns the new diagram and the id
/// of the merged spider (`name`, or a fresh id derived from `"twin"`).
pub fn merge_twins(
    host: &Diagram,
    twins: &[String],
    n: usize,
    name: Option<&str>,
    tol: f64,
) -> Result<(Diagram, String), String> {
    if n == 0 || twins.len() != n {
        return Err(format!("not twins: {} nodes given for n = {n}", twins.len()));
    }
    let set: BTreeSet<&String> = twins.iter().collect();
    if set.len() != n {
        return Err("not twins: a node is listed twice".into());
    }
    let mut kinds = Vec::new();
    for t in twins {
        let kind = host.node(t).ok_or_else(|| format!("not twins: {t} is not a node"))?;
        if kind.color().is_none() {
            return Err(format!("not twins: {t} is not a spider (colour clause)"));
        }
        kinds.push(*kind);
    }
    if kinds.iter().any(|k| k.color() != kinds[0].color()) {
        return Err("not twins: colours differ (colour clause)".into());
    }

    let base = kinds[0].phase().expect("spider");
    let mut unmatched: Vec<usize> = (0..n).collect();
    for t in &kinds {
        let p = t.phase().expect("spider");
        let offset = p.add(base.neg());
        let pos = unmatched.iter().position(|&k| offset.matches(&RealAngle::frac(2 * k as i64, n as u64), tol));
        match pos {
            Some(i) => {
                unmatched.remove(i);
            }
            None => {
                return Err(format!("not twins: phase {p} is not {base} + 2k pi/{n} for an unused k (phase clause)"))
            }
        }
    }

    let profile = |t: &String| -> Result<BTreeMap<String, usize>, String> {
        let mut m = BTreeMap::new();
        for v in host.neighbors(t) {
            if set.contains(&v) {
                return Err(format!("not twins: {t} is wired to a twin (neighbourhood clause)"));
            }
            *m.entry(v).or_default() += 1;
        }
        Ok(m)
    };
    let common = profile(&twins[0])?;
    for t in &twins[1..] {
        if profile(t)? != common {
            return Err(format!(
                "not twins: {t} and {} have different neighbourhoods (neighbourhood clause)",
                twins[0]
            ));
        }
    }
    if n > 1 {
        if let Some(p) = common.keys().find(|v| host.is_port(v)) {
            return Err(format!("not twins: boundary port {p} cannot touch {n} nodes"));
        }
    }

    let merged_phase = base.mul_int(n as i64).add(RealAngle::frac(n as i64 - 1, 1));
    let mut out = host.clone();
    out.replace_edges(host.edges().iter().filter(|[a, b]| !set.contains(a) && !set.contains(b)).cloned().collect());
    for t in twins {
        out.remove_node(t);
    }
    let id = match name {
        Some(id) if out.contains_id(id) => return Err(format!("requested id {id} is already in use")),
        Some(id) => id.to_string(),
        None => out.fresh_id("twin"),
    };
    out.add_node(id.clone(), kinds[0].with_phase(merged_phase)).expect("fresh");
    for (v, m) in &common {
        for _ in 0..n * m {
            out.add_edge(id.clone(), v.clone());
        }
    }
    Ok((out, id))
}

/// The twins with their neighbours as a stand-alone rule pair, so a merge can
/// be checked semantically without the rest of the host. Wires leaving the
/// neighbourhood become outputs.
pub fn local_instance(host: &Diagram, twins: &[String], merged: &Diagram, merged_id: &str) -> (Diagram, Diagram) {
    let set: BTreeSet<&String> = twins.iter().collect();
    let mut region: BTreeSet<String> = twins.iter().cloned().collect();
    for t in twins {
        region.extend(host.neighbors(t).into_iter().filter(|v| host.is_node(v)));
    }
    let cut = |d: &Diagram, keep: &BTreeSet<String>| {
        let mut out = Diagram::new();
        for id in keep {
            out.add_node(id.clone(), *d.node(id).expect("region nodes")).expect("fresh");
        }
        let mut k = 0;
        for [a, b] in d.edges() {
            match (keep.contains(a), keep.contains(b)) {
                (true, true) => out.add_edge(a.clone(), b.clone()),
                (true, false) | (false, true) => {
                    let inside = if keep.contains(a) { a } else { b };
                    let port = format!("cut{k}");
                    k += 1;
                    out.add_output(port.clone()).expect("fresh");
                    out.add_edge(inside.clone(), port);
                }
                (false, false) => {}
            }
        }
        out
    };
    let before = cut(host, &region);
    let mut after_region: BTreeSet<String> = region.iter().filter(|v| !set.contains(v)).cloned().collect();
    after_region.insert(merged_id.to_string());
    let after = cut(merged, &after_region);
    (before, after)
}
