use std::fs;

use anyhow::{bail, Context, Result};
use serde_json::json;
use zx_core::{diagram_from_json, diagram_to_json, Diagram};
use zx_derive::{bundled, bundled_names, bundled_text, check_derivation_with_tol, Script};
use zx_interp::{interpret_with_cap, invariant_g, invariant_r, Backend, SemanticMatrix};
use zx_rules::{
    catalogue, check_soundness, instantiate, invariant_preservation_check, lookup, soundness_suite, Bindings,
    RuleSchema, RuleSet, SuiteConfig, Variant,
};
use zx_witness::{
    witness_e_independence, witness_sqrt2, witness_sup_necessity, witness_theorem2, SupConfig, WitnessReport,
};

use crate::{Cli, Command, DeriveCmd, Global, RuleCmd, SuiteCmd, WitnessCmd};

/// `Ok(pass)` for a completed run, `Err` for bad input.
pub fn run(cli: &Cli) -> Result<bool> {
    let g = &cli.global;
    if !(g.tol > 0.0) {
        bail!("tolerance must be positive, got {}", g.tol);
    }
    if g.cap < 4 {
        bail!("resource cap must be at least 4, got {}", g.cap);
    }
    match &cli.command {
        Command::Interpret { file, backend } => interpret(g, file, backend.as_deref()),
        Command::Invariant { file } => invariant(g, file),
        Command::Rule(cmd) => rule(g, cmd),
        Command::Suite(cmd) => suite(g, cmd),
        Command::Derive(cmd) => derive(g, cmd),
        Command::Witness(cmd) => witness(g, cmd),
    }
}

fn load_diagram(path: &str) -> Result<Diagram> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    diagram_from_json(&text).with_context(|| format!("{path}"))
}

fn emit(g: &Global, text: &str, value: serde_json::Value) {
    if g.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        println!("{text}");
    }
}

fn matrix_json(m: &SemanticMatrix) -> serde_json::Value {
    let entries: Vec<_> = m.nonzero().into_iter().map(|(r, c)| json!([r, c, m.get(r, c).to_string()])).collect();
    json!({
        "schema": "1",
        "backend": format!("{:?}", m.backend()).to_lowercase(),
        "outputs": m.outputs(),
        "inputs": m.inputs(),
        "modulus": m.modulus(),
        "scalar": m.scalar().map(|s| s.to_string()),
        "entries": entries,
    })
}

fn interpret(g: &Global, file: &str, backend: Option<&str>) -> Result<bool> {
    let d = load_diagram(file)?;
    let backend = match backend {
        Some(b) => b.parse::<Backend>().map_err(|e| anyhow::anyhow!("{e}"))?,
        None if d.nodes().values().all(|k| k.phase().map_or(true, |p| p.is_exact())) => Backend::Exact,
        None => Backend::Float,
    };
    let m = interpret_with_cap(&d, backend, g.cap).with_context(|| format!("{file}"))?;
    emit(g, &m.render(), matrix_json(&m));
    Ok(true)
}

fn invariant(g: &Global, file: &str) -> Result<bool> {
    let d = load_diagram(file)?;
    let (r, gr) = (invariant_r(&d), invariant_g(&d));
    emit(
        g,
        &format!("invariant_r: {r}\ninvariant_g: {gr}"),
        json!({"schema": "1", "invariant_r": r, "invariant_g": gr}),
    );
    Ok(true)
}

fn schema(name: &str) -> Result<&'static RuleSchema> {
    lookup(name).with_context(|| format!("unknown rule {name:?}; try `zxe rule list`"))
}

fn bindings(s: &RuleSchema, bind: &[String]) -> Result<Bindings> {
    let pairs = bind
        .iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .context(format!("binding {kv:?} is not K=V"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Bindings::parse(s, &pairs)?)
}

fn variants(v: &str) -> Result<Vec<Variant>> {
    if v == "all" {
        return Ok(Variant::ALL.to_vec());
    }
    Ok(vec![v.parse::<Variant>().map_err(|e| anyhow::anyhow!("{e}"))?])
}

fn rule(g: &Global, cmd: &RuleCmd) -> Result<bool> {
    match cmd {
        RuleCmd::List => {
            let rows: Vec<_> = catalogue()
                .iter()
                .map(|s| json!({"name": s.name, "origin": s.origin.to_string(), "summary": s.summary}))
                .collect();
            let text: Vec<String> = catalogue()
                .iter()
                .map(|s| format!("{:<12} {:<17} {}", s.name, s.origin.to_string(), s.summary))
                .collect();
            emit(g, &text.join("\n"), json!({"schema": "1", "rules": rows}));
            Ok(true)
        }
        RuleCmd::Show { name, bind, variant } => {
            let s = schema(name)?;
            let params: Vec<String> = s.params.iter().map(|p| format!("{} ({:?})", p.name, p.kind)).collect();
            let params = if params.is_empty() { "-".to_string() } else { params.join(", ") };
            if bind.is_empty() && !s.params.is_empty() {
                let text = format!(
                    "{} [{}]: {}\nparams: {params}\n(pass --bind K=V for every parameter to see an instance)",
                    s.name, s.origin, s.summary
                );
                let value = json!({"schema": "1", "name": s.name, "origin": s.origin.to_string(), "summary": s.summary, "params": params});
                emit(g, &text, value);
                return Ok(true);
            }
            let b = bindings(s, bind)?;
            let v = variants(variant)?[0];
            let inst = instantiate(s, &b, v)?;
            let text = format!(
                "{} [{}]: {}\nparams: {}\ninstance {v} {b}\nlhs:\n{}\nrhs:\n{}",
                s.name,
                s.origin,
                s.summary,
                params,
                diagram_to_json(&inst.lhs),
                diagram_to_json(&inst.rhs)
            );
            let value = json!({
                "schema": "1", "name": s.name, "origin": s.origin.to_string(), "summary": s.summary,
                "variant": v.to_string(), "bindings": b.to_json(),
                "lhs": serde_json::from_str::<serde_json::Value>(&diagram_to_json(&inst.lhs))?,
                "rhs": serde_json::from_str::<serde_json::Value>(&diagram_to_json(&inst.rhs))?,
            });
            emit(g, &text, value);
            Ok(true)
        }
        RuleCmd::Check { name, bind, variant } => {
            let s = schema(name)?;
            let b = bindings(s, bind)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut all = true;
            for v in variants(variant)? {
                let inst = instantiate(s, &b, v)?;
                let verdict = check_soundness(&inst, g.tol)?;
                all &= verdict.is_sound();
                let tail = match verdict.witness() {
                    None => "PASS".to_string(),
                    Some(w) => format!("FAIL[{w}]"),
                };
                lines.push(format!("RULE {} {v} {b} → {tail}", s.name));
                rows.push(json!({"rule": s.name, "variant": v.to_string(), "bindings": b.to_string(),
                    "pass": verdict.is_sound(), "witness": verdict.witness()}));
            }
            emit(g, &lines.join("\n"), json!({"schema": "1", "entries": rows}));
            Ok(all)
        }
    }
}

fn grid_den(grid: &str) -> Result<u64> {
    let t = grid.trim();
    let k = t.strip_prefix("π/").or_else(|| t.strip_prefix("pi/")).unwrap_or(t);
    match k.parse::<u64>() {
        Ok(k) if k > 0 => Ok(k),
        _ => bail!("grid {grid:?} should look like π/4"),
    }
}

fn ruleset(name: &str) -> Result<RuleSet> {
    Ok(name.parse::<RuleSet>()?)
}

fn suite(g: &Global, cmd: &SuiteCmd) -> Result<bool> {
    match cmd {
        SuiteCmd::Soundness { ruleset: rs, max_arity, grid, random, verbose } => {
            let mut config = SuiteConfig::new(ruleset(rs)?);
            config.max_arity = *max_arity;
            config.grid_den = grid_den(grid)?;
            config.random = *random;
            config.seed = g.seed;
            config.tol = g.tol;
            let report = soundness_suite(&config);
            if g.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render(*verbose));
            }
            Ok(report.all_pass())
        }
        SuiteCmd::Invariants { ruleset: rs, max_arity } => {
            let rs = ruleset(rs)?;
            let entries = invariant_preservation_check(rs, *max_arity, &(1..=8).collect::<Vec<_>>());
            let mut text = Vec::new();
            for e in &entries {
                let tail = match &e.counterexample {
                    None => format!("preserves invariant_r ({} instances)", e.instances),
                    Some((v, b, l, r)) => format!("changes invariant_r: {v} {b} gives {l} vs {r}"),
                };
                text.push(format!("{:<8} {tail}", e.rule));
            }
            emit(g, &text.join("\n"), json!({"schema": "1", "ruleset": rs.name(), "entries": entries}));
            Ok(true)
        }
    }
}

fn load_script(spec: &str) -> Result<Script> {
    match fs::read_to_string(spec) {
        Ok(text) => Ok(Script::from_json(&text).with_context(|| format!("{spec}"))?),
        Err(e) => {
            let stem = spec.trim_end_matches(".json");
            let stem = stem.rsplit('/').next().unwrap_or(stem);
            bundled(stem).with_context(|| format!("cannot read {spec}: {e}; not a bundled script either"))
        }
    }
}

fn derive(g: &Global, cmd: &DeriveCmd) -> Result<bool> {
    match cmd {
        DeriveCmd::Check { script, paranoid } => {
            let s = load_script(script)?;
            let report = check_derivation_with_tol(&s, *paranoid, g.tol);
            if g.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.render());
            }
            Ok(report.accepted())
        }
        DeriveCmd::List => {
            emit(g, &bundled_names().join("\n"), json!({"schema": "1", "scripts": bundled_names()}));
            Ok(true)
        }
        DeriveCmd::Show { name } => {
            let text = bundled_text(name).with_context(|| format!("no bundled script {name:?}"))?;
            print!("{text}");
            Ok(true)
        }
    }
}

fn witness(g: &Global, cmd: &WitnessCmd) -> Result<bool> {
    let report: WitnessReport = match cmd {
        WitnessCmd::Prop1 => witness_e_independence()?,
        WitnessCmd::Sqrt2 { k } => witness_sqrt2(k)?,
        WitnessCmd::Supnec { p, max_arity } => {
            witness_sup_necessity(*p, &SupConfig { max_arity: *max_arity, ..SupConfig::default() })?
        }
        WitnessCmd::Thm2 => witness_theorem2(g.tol)?,
    };
    if g.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
    }
    Ok(report.pass)
}
