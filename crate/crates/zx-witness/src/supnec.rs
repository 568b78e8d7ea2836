//! Necessity of SUP_p: multiply every angle by p^2 before interpreting.
//! Every other rule survives the rescaling; SUP_p does not.

use num::integer::gcd;
use zx_core::{scale_angles, RealAngle};
use zx_cyclo::{sqrt_two, CycloScalar};
use zx_interp::Scalar;
use zx_rules::{check_sides, grid_bindings, instantiate, lookup, pi_grid, Bindings, RuleSet, Variant, Verdict};

use crate::report::{SubCheck, WitnessReport};
use crate::WitnessError;

#[derive(Clone, Debug)]
pub struct SupConfig {
    pub max_arity: usize,
    pub grid_den: u64,
    /// SUP_q is checked for every prime q up to this bound, q != p.
    pub prime_ceiling: usize,
}

impl Default for SupConfig {
    fn default() -> Self {
        SupConfig { max_arity: 3, grid_den: 4, prime_ceiling: 13 }
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Scaled soundness over the whole grid of one schema; returns the number
/// of instances and the first failure.
fn scaled_sweep(rule: &str, factor: u64, bindings: &[Bindings]) -> Result<(usize, Option<String>), WitnessError> {
    let schema = lookup(rule).expect("catalogue rule");
    let mut n = 0;
    for v in Variant::ALL {
        for b in bindings {
            let inst = instantiate(schema, b, v).map_err(|e| WitnessError::Input(e.to_string()))?;
            let verdict = check_sides(&scale_angles(&inst.lhs, factor), &scale_angles(&inst.rhs, factor), 0.0)?;
            n += 1;
            if let Some(w) = verdict.witness() {
                return Ok((n, Some(format!("{v} {b}: {w}"))));
            }
        }
    }
    Ok((n, None))
}

fn sup_bindings(q: usize, angle: RealAngle) -> Bindings {
    Bindings::new().with_angle("phase", angle).with_count("branches", q)
}

fn sqrt2_power(m: u32, e: usize) -> Result<CycloScalar, WitnessError> {
    let s = sqrt_two(m)?;
    let mut acc = CycloScalar::one(m)?;
    for _ in 0..e {
        acc = &acc * &s;
    }
    Ok(acc)
}

pub fn witness_sup_necessity(p: usize, config: &SupConfig) -> Result<WitnessReport, WitnessError> {
    if p % 2 == 0 || !is_prime(p as u64) {
        let check = SubCheck::new("p is an odd prime", false, format!("p = {p}"));
        let note = "inapplicable: the rescaling only gives an interpretation for odd p".to_string();
        return Ok(WitnessReport::new(&format!("supnec p={p}"), vec![check], vec![note]));
    }
    if p > config.prime_ceiling {
        return Err(WitnessError::Input(format!("p = {p} is above the prime ceiling {}", config.prime_ceiling)));
    }
    let factor = (p * p) as u64;
    let angles = pi_grid(config.grid_den);
    let mut checks = vec![SubCheck::new("p^2 = 1 mod 8", factor % 8 == 1, format!("{factor} mod 8 = {}", factor % 8))];

    for rule in RuleSet::ZxE.members() {
        let schema = lookup(rule).expect("catalogue rule");
        let grid = grid_bindings(schema, config.max_arity, &angles, &[]);
        let (n, fail) = scaled_sweep(rule, factor, &grid)?;
        let evidence = fail.clone().unwrap_or_else(|| format!("{n} instances sound"));
        checks.push(SubCheck::new(format!("{rule} sound under x{factor}"), fail.is_none(), evidence));
    }
    for q in (2..=config.prime_ceiling).filter(|&q| q != p && is_prime(q as u64)) {
        let grid: Vec<Bindings> = angles.iter().map(|&a| sup_bindings(q, a)).collect();
        let (n, fail) = scaled_sweep("SUP_n", factor, &grid)?;
        let coprime = gcd(factor as usize, q) == 1;
        let evidence = fail.clone().unwrap_or_else(|| format!("{n} instances sound, gcd({factor}, {q}) = 1"));
        checks.push(SubCheck::new(format!("SUP_{q} sound under x{factor}"), fail.is_none() && coprime, evidence));
    }

    // At angle 0 the rescaled left side is sqrt2^(p-1) times a Z(0) state
    // and the right side is sqrt2^-(p-1) times the same state.
    let inst = instantiate(lookup("SUP_n").unwrap(), &sup_bindings(p, RealAngle::zero()), Variant::default())
        .map_err(|e| WitnessError::Input(e.to_string()))?;
    let verdict = check_sides(&scale_angles(&inst.lhs, factor), &scale_angles(&inst.rhs, factor), 0.0)?;
    let (pass, evidence) = match &verdict {
        Verdict::Sound => (false, "rescaled SUP_p still sound".to_string()),
        Verdict::Unsound { lhs: Scalar::Exact(l), rhs: Scalar::Exact(r), .. } => {
            let big = sqrt2_power(l.modulus(), p - 1)?;
            let small_times_big = r * &sqrt2_power(r.modulus(), p - 1)?;
            let closed = *l == big && small_times_big.is_one();
            (closed, format!("{}; expected lhs sqrt2^{} and rhs sqrt2^-{}", verdict.witness().unwrap(), p - 1, p - 1))
        }
        Verdict::Unsound { .. } => (false, verdict.witness().unwrap()),
    };
    checks.push(SubCheck::new(format!("SUP_{p} unsound under x{factor} at angle 0"), pass, evidence));

    let mut unsound = 0;
    for &a in &angles {
        let inst = instantiate(lookup("SUP_n").unwrap(), &sup_bindings(p, a), Variant::default())
            .map_err(|e| WitnessError::Input(e.to_string()))?;
        if !check_sides(&scale_angles(&inst.lhs, factor), &scale_angles(&inst.rhs, factor), 0.0)?.is_sound() {
            unsound += 1;
        }
    }
    let notes = vec![
        format!("informational: rescaled SUP_{p} fails at {unsound} of {} grid angles", angles.len()),
        format!("the rescaled interpretation models ZX_E and every SUP_q with q != {p} but not SUP_{p}, so SUP_{p} is not derivable from them"),
    ];
    Ok(WitnessReport::new(&format!("supnec p={p}"), checks, notes))
}
