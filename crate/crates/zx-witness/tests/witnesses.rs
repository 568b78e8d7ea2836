use num::complex::Complex64;
use num::ToPrimitive;
use zx_interp::{compare_diagrams, Backend};
use zx_witness::*;

#[test]
fn sqrt2_table_follows_the_mod_four_rule() {
    let ks: Vec<u32> = (1..=12).collect();
    let r = witness_sqrt2(&ks).unwrap();
    assert!(r.pass, "{}", r.render());
    for k in ks {
        let m = sqrt2_membership(k).unwrap();
        assert_eq!(m.member, k % 4 == 0, "k={k}");
        if let Some(c) = m.coords {
            // independent check: evaluate the coordinates numerically
            let zeta = Complex64::from_polar(1.0, std::f64::consts::PI / k as f64);
            let v: Complex64 = c.iter().enumerate().map(|(j, x)| zeta.powu(j as u32) * x.to_f64().unwrap()).sum();
            assert!((v - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-12, "k={k}: {v}");
        }
    }
}

#[test]
fn scaling_witness_for_three_and_five() {
    let config = SupConfig { max_arity: 2, ..SupConfig::default() };
    for p in [3, 5] {
        let r = witness_sup_necessity(p, &config).unwrap();
        assert!(r.pass, "{}", r.render());
        let name = format!("SUP_{p} unsound under x{} at angle 0", p * p);
        let ev = &r.check(&name).unwrap().evidence;
        // closed form at angle 0: lhs sqrt2^(p-1), rhs sqrt2^-(p-1)
        let expected = format!("lhs {}", 1 << ((p - 1) / 2));
        assert!(ev.contains(&expected), "{ev}");
        assert!(r.checks.iter().filter(|c| c.name.starts_with("SUP_")).count() >= 5);
    }
    assert!(!witness_sup_necessity(2, &config).unwrap().pass);
    assert!(witness_sup_necessity(9, &config).unwrap().checks[0].name == "p is an odd prime");
}

#[test]
fn theorem2_constants_and_checks() {
    let k = Thm2Constants::default();
    // independent closed forms: sin(alpha0) = sqrt(2/3), cos(theta0) = (3 sqrt2 + sqrt3) / 6
    assert!((k.alpha0.sin() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!((k.theta0.cos() - (3.0 * 2f64.sqrt() + 3f64.sqrt()) / 6.0).abs() < 1e-12);
    assert!((k.alpha0 - 0.955317).abs() < 1e-6);
    let r = witness_theorem2(1e-9).unwrap();
    assert!(r.pass, "{}", r.render());
    assert!(witness_theorem2(0.0).is_err());
}

#[test]
fn theorem2_sensitivity_controls() {
    let k = Thm2Constants::default();
    let off = d2(k.alpha0, k.theta0 + 1e-3).unwrap();
    assert!(!compare_diagrams(&d1(), &off, Backend::Float, 1e-9).unwrap().is_equal());
    let v = quartic_at(&k.quartic, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4));
    assert!((v.norm() - 2.0).abs() < 1e-12);
    let roots = find_alpha_solutions(1e-4);
    assert_eq!(roots.len(), 4);
    for r in roots {
        assert!((r.sin().abs() - (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
    }
}

#[test]
fn e_witness_is_exact() {
    let r = witness_e_independence().unwrap();
    assert!(r.pass);
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["schema"], "1");
    assert_eq!(json["checks"].as_array().unwrap().len(), 5);
}
