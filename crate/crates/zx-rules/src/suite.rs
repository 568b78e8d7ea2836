//! Grid sweeps over a rule set: soundness and invariant preservation.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use zx_core::{PiRational, RealAngle};
use zx_interp::invariant_r;

use crate::{check_soundness, instantiate, lookup, Bindings, ParamKind, RuleSchema, RuleSet, Variant};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub ruleset: RuleSet,
    /// Largest value tried for every count parameter.
    pub max_arity: usize,
    /// Angles are the multiples of `pi / grid_den`.
    pub grid_den: u64,
    /// Float draws per schema, checked at `tol`.
    pub random: usize,
    pub seed: u64,
    pub tol: f64,
    /// Branch counts tried for `SUP_n`; the arity ceiling is ignored there.
    pub sup_branches: Vec<usize>,
}

impl SuiteConfig {
    pub fn new(ruleset: RuleSet) -> Self {
        SuiteConfig {
            ruleset,
            max_arity: 3,
            grid_den: 4,
            random: 20,
            seed: 0,
            tol: 1e-9,
            sup_branches: (1..=8).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub rule: String,
    pub variant: String,
    pub bindings: String,
    pub mode: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl SuiteEntry {
    pub fn line(&self) -> String {
        let verdict = match &self.witness {
            Some(w) => format!("FAIL[{w}]"),
            None if self.pass => "PASS".into(),
            None => "FAIL".into(),
        };
        format!("RULE {} {} {} → {}", self.rule, self.variant, self.bindings, verdict)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub ruleset: &'static str,
    pub entries: Vec<SuiteEntry>,
    pub checked: usize,
    pub failed: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// One line per failure, then a summary.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        for e in &self.entries {
            if verbose || !e.pass {
                out.push_str(&e.line());
                out.push('\n');
            }
        }
        out.push_str(&format!(
            "suite soundness {}: {} instances, {} failed ({:.1}s)\n",
            self.ruleset,
            self.checked,
            self.failed,
            self.elapsed.as_secs_f64()
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}

/// Every combination of count values, each from its floor up to the ceiling.
fn count_grid(schema: &RuleSchema, max_arity: usize, sup_branches: &[usize]) -> Vec<Vec<(&'static str, usize)>> {
    let mut grid = vec![vec![]];
    for p in schema.count_params() {
        let ParamKind::Count { min } = p.kind else { unreachable!() };
        let values: Vec<usize> = if schema.name == "SUP_n" && p.name == "branches" {
            sup_branches.iter().copied().filter(|&n| n >= min).collect()
        } else {
            (min..=max_arity.max(min)).collect()
        };
        grid = grid
            .into_iter()
            .flat_map(|row| {
                values.iter().map(move |&v| {
                    let mut row = row.clone();
                    row.push((p.name, v));
                    row
                })
            })
            .collect();
    }
    grid
}

fn angle_grid(schema: &RuleSchema, angles: &[RealAngle]) -> Vec<Vec<(&'static str, RealAngle)>> {
    let mut grid = vec![vec![]];
    for p in schema.angle_params() {
        grid = grid
            .into_iter()
            .flat_map(|row| {
                angles.iter().map(move |&a| {
                    let mut row = row.clone();
                    row.push((p.name, a));
                    row
                })
            })
            .collect();
    }
    grid
}

/// All grid bindings of a schema.
pub fn grid_bindings(
    schema: &RuleSchema,
    max_arity: usize,
    angles: &[RealAngle],
    sup_branches: &[usize],
) -> Vec<Bindings> {
    let mut out = Vec::new();
    for counts in count_grid(schema, max_arity, sup_branches) {
        for phases in angle_grid(schema, angles) {
            let mut b = Bindings::new();
            for (k, v) in &counts {
                b = b.with_count(k, *v);
            }
            for (k, a) in &phases {
                b = b.with_angle(k, *a);
            }
            out.push(b);
        }
    }
    out
}

pub fn pi_grid(den: u64) -> Vec<RealAngle> {
    (0..2 * den as i64).map(|k| RealAngle::Exact(PiRational::frac(k, den))).collect()
}

fn entry(schema: &'static RuleSchema, b: &Bindings, v: Variant, tol: f64, mode: &'static str) -> SuiteEntry {
    let (pass, witness) = match instantiate(schema, b, v) {
        Err(e) => (false, Some(e.to_string())),
        Ok(inst) => match check_soundness(&inst, tol) {
            Ok(verdict) => (verdict.is_sound(), verdict.witness()),
            Err(e) => (false, Some(e.to_string())),
        },
    };
    SuiteEntry { rule: schema.name.into(), variant: v.to_string(), bindings: b.to_string(), mode, pass, witness }
}

/// Exact sweep of one schema over variants, count grid and angle grid,
/// then seeded float draws.
pub fn sweep_schema<R: Rng>(schema: &'static RuleSchema, config: &SuiteConfig, rng: &mut R) -> Vec<SuiteEntry> {
    let angles = pi_grid(config.grid_den);
    let mut entries = Vec::new();
    let grid = grid_bindings(schema, config.max_arity, &angles, &config.sup_branches);
    for v in Variant::ALL {
        for b in &grid {
            entries.push(entry(schema, b, v, 0.0, "exact"));
        }
    }
    if schema.angle_params().next().is_none() {
        return entries;
    }
    let counts = count_grid(schema, config.max_arity, &config.sup_branches);
    for _ in 0..config.random {
        let mut b = Bindings::new();
        for (k, v) in &counts[rng.gen_range(0..counts.len())] {
            b = b.with_count(k, *v);
        }
        for p in schema.angle_params() {
            let a = RealAngle::float(rng.gen_range(0.0..std::f64::consts::TAU)).expect("finite");
            b = b.with_angle(p.name, a);
        }
        let v = Variant::ALL[rng.gen_range(0..4)];
        entries.push(entry(schema, &b, v, config.tol, "float"));
    }
    entries
}

pub fn soundness_suite(config: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut entries = Vec::new();
    for name in config.ruleset.members() {
        let schema = lookup(name).expect("ruleset members are catalogued");
        entries.extend(sweep_schema(schema, config, &mut rng));
    }
    let failed = entries.iter().filter(|e| !e.pass).count();
    SuiteReport {
        schema: "1",
        ruleset: config.ruleset.name(),
        checked: entries.len(),
        failed,
        entries,
        elapsed: start.elapsed(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantEntry {
    pub rule: String,
    pub preserving: bool,
    pub instances: usize,
    /// First instance where the bit changes: (variant, bindings, lhs bit, rhs bit).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(String, String, u8, u8)>,
}

/// Per schema of the set: does `invariant_r` agree on both sides of every
/// grid instance? The bit ignores phases, so angles are fixed at 0.
pub fn invariant_preservation_check(ruleset: RuleSet, max_arity: usize, sup_branches: &[usize]) -> Vec<InvariantEntry> {
    let zero = [RealAngle::zero()];
    ruleset
        .members()
        .iter()
        .map(|name| {
            let schema = lookup(name).expect("catalogued");
            let mut instances = 0;
            let mut counterexample = None;
            for v in Variant::ALL {
                for b in grid_bindings(schema, max_arity, &zero, sup_branches) {
                    let inst = instantiate(schema, &b, v).expect("grid bindings respect floors");
                    instances += 1;
                    let (l, r) = (invariant_r(&inst.lhs), invariant_r(&inst.rhs));
                    if l != r && counterexample.is_none() {
                        counterexample = Some((v.to_string(), b.to_string(), l, r));
                    }
                }
            }
            InvariantEntry { rule: schema.name.into(), preserving: counterexample.is_none(), instances, counterexample }
        })
        .collect()
}

/// Rule names keyed for quick lookup in reports.
pub fn preserving_map(entries: &[InvariantEntry]) -> BTreeMap<String, bool> {
    entries.iter().map(|e| (e.rule.clone(), e.preserving)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check_sides;

    #[test]
    fn grid_sizes() {
        let s1 = lookup("S1").unwrap();
        assert_eq!(count_grid(s1, 3, &[]).len(), 4 * 4 * 4 * 4 * 3);
        assert_eq!(angle_grid(s1, &pi_grid(4)).len(), 64);
        let sup = lookup("SUP_n").unwrap();
        assert_eq!(count_grid(sup, 3, &[1, 2, 11]).len(), 3);
    }

    #[test]
    fn invariants_flag_exactly_zo_and_e() {
        let zx = preserving_map(&invariant_preservation_check(RuleSet::Zx, 2, &[1, 2, 3]));
        for (rule, keeps) in &zx {
            assert_eq!(*keeps, rule != "ZO", "{rule}");
        }
        let cyc = preserving_map(&invariant_preservation_check(RuleSet::ZxCyclo, 2, &[1, 2, 3, 4, 5]));
        for (rule, keeps) in &cyc {
            assert_eq!(*keeps, rule != "E", "{rule}");
        }
    }

    #[test]
    fn corrupted_fusion_is_caught() {
        let mut found = false;
        for k in 0..8 {
            let b = Bindings::new()
                .with_angle("phase_a", RealAngle::frac(k, 4))
                .with_angle("phase_b", RealAngle::frac(1, 4))
                .with_count("in_a", 1)
                .with_count("out_a", 0)
                .with_count("in_b", 0)
                .with_count("out_b", 1)
                .with_count("links", 1);
            let inst = instantiate(lookup("S1").unwrap(), &b, Variant::default()).unwrap();
            let mut wrong = inst.rhs.clone();
            let p = wrong.node("z").unwrap().phase().unwrap();
            wrong.set_kind("z", zx_core::NodeKind::Z(p.add(RealAngle::pi())));
            let verdict = check_sides(&inst.lhs, &wrong, 0.0).unwrap();
            assert!(!verdict.is_sound());
            found |= verdict.witness().unwrap().contains("entry");
        }
        assert!(found);
    }

    #[test]
    fn report_lines() {
        let e = SuiteEntry {
            rule: "S2".into(),
            variant: "plain".into(),
            bindings: "-".into(),
            mode: "exact",
            pass: true,
            witness: None,
        };
        assert_eq!(e.line(), "RULE S2 plain - → PASS");
    }
}
