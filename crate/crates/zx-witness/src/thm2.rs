//! Numerics for the incompleteness of the general calculus: two diagrams
//! equal at one irrational pair of angles, the quartic behind it, the
//! solution count, and the plugged-state reductions.

use std::f64::consts::{FRAC_PI_2, PI};

use num::complex::Complex64;
use zx_core::{make_spider, sequential_compose, Color, Diagram, NodeKind, RealAngle};
use zx_derive::{bundled, check_derivation_with_tol, Script};
use zx_interp::{compare_diagrams, interpret, Backend, Comparison, SemanticMatrix};

use crate::report::{SubCheck, WitnessReport};
use crate::supnec::is_prime;
use crate::WitnessError;

/// Value of the quartic's coefficients read as decimal digits.
pub const QUARTIC_AT_TEN: u64 = 30203;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thm2Constants {
    pub alpha0: f64,
    pub theta0: f64,
    /// Coefficients of `3z^4 + 2z^2 + 3`, highest degree first.
    pub quartic: [i64; 5],
}

impl Default for Thm2Constants {
    fn default() -> Self {
        Thm2Constants {
            alpha0: FRAC_PI_2 - (2.0f64 / 3.0).sqrt().acos(),
            theta0: (2f64.sqrt() / 2.0 + 3f64.sqrt() / 6.0).acos(),
            quartic: [3, 0, 2, 0, 3],
        }
    }
}

fn chain(kinds: &[NodeKind]) -> Diagram {
    let mut d = Diagram::new();
    d.add_input("i0").unwrap();
    d.add_output("o0").unwrap();
    let mut prev = "i0".to_string();
    for (k, kind) in kinds.iter().enumerate() {
        let id = format!("n{k}");
        d.add_node(id.clone(), *kind).unwrap();
        d.add_edge(prev, id.clone());
        prev = id;
    }
    d.add_edge(prev, "o0");
    d
}

/// X(pi/4), Z(pi/2), X(pi/4) on one wire.
pub fn d1() -> Diagram {
    let q = RealAngle::frac(1, 4);
    chain(&[NodeKind::X(q), NodeKind::Z(RealAngle::frac(1, 2)), NodeKind::X(q)])
}

/// Z(alpha), X(pi/3), Z(alpha) on one wire, next to two scalars: a red and
/// a green node joined by three wires, and X(pi) joined to Z(theta).
pub fn d2(alpha: f64, theta: f64) -> Result<Diagram, WitnessError> {
    let al = RealAngle::float(alpha).map_err(|e| WitnessError::Input(e.to_string()))?;
    let th = RealAngle::float(theta).map_err(|e| WitnessError::Input(e.to_string()))?;
    let mut d = chain(&[NodeKind::Z(al), NodeKind::X(RealAngle::frac(1, 3)), NodeKind::Z(al)]);
    d.add_node("lx", NodeKind::X(RealAngle::zero())).unwrap();
    d.add_node("lz", NodeKind::Z(RealAngle::zero())).unwrap();
    for _ in 0..3 {
        d.add_edge("lx", "lz");
    }
    d.add_node("sx", NodeKind::X(RealAngle::pi())).unwrap();
    d.add_node("sz", NodeKind::Z(th)).unwrap();
    d.add_edge("sx", "sz");
    Ok(d)
}

/// A Z(pi) state below and a Z(0) effect above a one-wire diagram.
pub fn plug(d: &Diagram) -> Diagram {
    let state = make_spider(Color::Z, RealAngle::pi(), 0, 1);
    let effect = make_spider(Color::Z, RealAngle::zero(), 1, 0);
    let inner = sequential_compose(d, &state).expect("one wire");
    sequential_compose(&effect, &inner).expect("one wire")
}

pub fn quartic_at(coeffs: &[i64; 5], z: Complex64) -> Complex64 {
    coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
}

/// Roots of `|cos(a + pi/2)| = sqrt(2/3)` in `[0, 2pi)`: sign changes on a
/// grid of the given step, each refined by bisection.
pub fn find_alpha_solutions(step: f64) -> Vec<f64> {
    let target = (2.0f64 / 3.0).sqrt();
    let f = |a: f64| (a + FRAC_PI_2).cos().abs() - target;
    let n = (2.0 * PI / step).ceil() as usize;
    let mut roots = Vec::new();
    for k in 0..n {
        let (mut lo, mut hi) = (k as f64 * step, ((k + 1) as f64 * step).min(2.0 * PI));
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo * fhi > 0.0 {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < step);
    roots
}

fn max_gap(a: &SemanticMatrix, b: &SemanticMatrix) -> f64 {
    let mut gap: f64 = 0.0;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            gap = gap.max((a.get(r, c).to_complex() - b.get(r, c).to_complex()).norm());
        }
    }
    gap
}

fn equal(a: &Diagram, b: &Diagram, tol: f64) -> Result<(bool, String), WitnessError> {
    Ok(match compare_diagrams(a, b, Backend::Float, tol)? {
        Comparison::Equal => {
            let gap = max_gap(&interpret(a, Backend::Float)?, &interpret(b, Backend::Float)?);
            (true, format!("max entry difference {gap:.3e}"))
        }
        Comparison::Unequal { row, col, left, right } => (false, format!("entry ({row},{col}): {left} vs {right}")),
    })
}

fn plugged_chain(name: &str, drawn: &Diagram, tol: f64) -> Result<(SubCheck, Option<Diagram>), WitnessError> {
    let label = format!("{name} reduction agrees");
    let Some(script): Option<Script> = bundled(name) else {
        return Ok((SubCheck::new(label, false, "bundled script missing"), None));
    };
    let report = check_derivation_with_tol(&script, true, tol);
    if !report.accepted() {
        return Ok((SubCheck::new(label, false, report.render().trim_end().replace('\n', "; ")), None));
    }
    let (same_start, start_ev) = equal(&plug(drawn), &script.initial, tol)?;
    let (same_end, end_ev) = equal(&script.initial, &script.claimed, tol)?;
    let value = interpret(&script.claimed, Backend::Float)?.scalar().map(|s| s.to_string()).unwrap_or_default();
    let evidence = format!(
        "{} steps replayed; plugged diagram vs script start: {start_ev}; start vs reduced form: {end_ev}; value {value}",
        script.steps.len()
    );
    Ok((SubCheck::new(label, same_start && same_end, evidence), Some(script.claimed)))
}

pub fn witness_theorem2(tol: f64) -> Result<WitnessReport, WitnessError> {
    if !(tol > 0.0) {
        return Err(WitnessError::Input(format!("tolerance must be positive, got {tol}")));
    }
    let k = Thm2Constants::default();
    let mut checks = vec![SubCheck::new(
        "constants",
        0.0 < k.alpha0 && k.alpha0 < FRAC_PI_2 && 0.0 < k.theta0 && k.theta0 < FRAC_PI_2,
        format!("alpha0 = {:.6} rad, theta0 = {:.6} rad", k.alpha0, k.theta0),
    )];

    let (same, ev) = equal(&d1(), &d2(k.alpha0, k.theta0)?, tol)?;
    checks.push(SubCheck::new("D1 = D2 at (alpha0, theta0)", same, ev));

    let value = quartic_at(&k.quartic, Complex64::from_polar(1.0, k.alpha0)).norm();
    checks.push(SubCheck::new(
        "quartic vanishes at exp(i alpha0)",
        value <= tol,
        format!("|3z^4+2z^2+3| = {value:.3e}"),
    ));

    let roots = find_alpha_solutions(1e-4);
    let c = (2.0f64 / 3.0).sqrt().acos();
    let closed: Vec<f64> =
        [FRAC_PI_2 - c, FRAC_PI_2 + c, -FRAC_PI_2 - c, -FRAC_PI_2 + c].iter().map(|a| a.rem_euclid(2.0 * PI)).collect();
    let matched = roots.iter().all(|r| closed.iter().any(|c| (r - c).abs() <= tol));
    let listed: Vec<String> = roots.iter().map(|r| format!("{r:.9}")).collect();
    checks.push(SubCheck::new(
        "four solution classes for alpha",
        roots.len() == 4 && matched,
        format!("{} roots in [0, 2pi): {}", roots.len(), listed.join(", ")),
    ));

    let at_ten: i64 = k.quartic.iter().fold(0, |acc, &c| acc * 10 + c);
    checks.push(SubCheck::new(
        "coefficients read in base 10 form a prime",
        at_ten as u64 == QUARTIC_AT_TEN && is_prime(QUARTIC_AT_TEN),
        format!("{at_ten} is prime: {}", is_prime(at_ten as u64)),
    ));

    let mut spot = true;
    for q in 1..=7u64 {
        let f: u64 = (1..=q + 4).product();
        for mult in 1..=3 {
            let qq = mult * f + 1;
            spot &= f % 8 == 0 && f % 6 == 0 && (2..=q + 4).all(|m| num::integer::gcd(qq, m) == 1);
        }
    }
    checks.push(SubCheck::new(
        "modular ingredients for q <= 7",
        spot,
        "(q+4)! divisible by 8 and 6, k(q+4)!+1 coprime to 2..q+4".to_string(),
    ));

    let (c1, r1) = plugged_chain("thm2_d1_plug", &d1(), tol)?;
    let (c2, r2) = plugged_chain("thm2_d2_plug", &d2(k.alpha0, k.theta0)?, tol)?;
    checks.push(c1);
    checks.push(c2);
    let (agree, ev) = match (r1, r2) {
        (Some(a), Some(b)) => equal(&a, &b, tol)?,
        _ => (false, "a reduction was rejected".to_string()),
    };
    checks.push(SubCheck::new("reduced forms agree", agree, ev));

    let notes = vec![
        "plugging fixes the first reduced form to a product of exact phases, while the second keeps Z(2 alpha + pi); equality forces alpha to be a root of the quartic".into(),
        "the quartic is irreducible and not cyclotomic, so alpha0 is not a rational multiple of pi".into(),
        "the choice of a prime q' = k(q+4)!+1 bounding every derivation is a statement about all derivations and is not computed; only its arithmetic ingredients are spot-checked".into(),
    ];
    Ok(WitnessReport::new("thm2", checks, notes))
}
