//! Separating the two sides of a sound equation with `invariant_r`.

use std::fmt;

use zx_core::Diagram;
use zx_interp::{interpret, invariant_r, Backend, Scalar};
use zx_rules::{instantiate, lookup, Bindings, Variant};

use crate::report::{SubCheck, WitnessReport};
use crate::WitnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    /// Both sides non-zero and the invariant differs.
    Separated {
        lhs: u8,
        rhs: u8,
    },
    NotSeparated {
        bit: u8,
    },
    /// A side has zero interpretation, so the invariant says nothing.
    Inapplicable,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Separation::Separated { lhs, rhs } => write!(f, "separated (invariant bits {lhs} vs {rhs})"),
            Separation::NotSeparated { bit } => write!(f, "not separated (both bits {bit})"),
            Separation::Inapplicable => write!(f, "invariant argument inapplicable (zero interpretation)"),
        }
    }
}

pub fn separation(lhs: &Diagram, rhs: &Diagram) -> Result<Separation, WitnessError> {
    for d in [lhs, rhs] {
        if interpret(d, Backend::Exact)?.is_zero() {
            return Ok(Separation::Inapplicable);
        }
    }
    let (a, b) = (invariant_r(lhs), invariant_r(rhs));
    Ok(if a == b { Separation::NotSeparated { bit: a } } else { Separation::Separated { lhs: a, rhs: b } })
}

fn sides(rule: &str) -> (Diagram, Diagram) {
    let inst = instantiate(lookup(rule).expect("catalogue rule"), &Bindings::new(), Variant::default())
        .expect("parameter-free rule");
    (inst.lhs, inst.rhs)
}

fn exact_one(d: &Diagram) -> Result<(bool, String), WitnessError> {
    let m = interpret(d, Backend::Exact)?;
    Ok(match m.scalar() {
        Some(Scalar::Exact(s)) => (s.is_one(), s.to_string()),
        Some(other) => (false, other.to_string()),
        None => (false, format!("not a scalar ({}x{})", m.rows(), m.cols())),
    })
}

/// (E) holds semantically, yet its sides carry different invariant bits,
/// so it cannot follow from rules that all preserve the bit. Controls: S2
/// is not separated and ZO has a zero side.
pub fn witness_e_independence() -> Result<WitnessReport, WitnessError> {
    let (lhs, rhs) = sides("E");
    let (l1, lv) = exact_one(&lhs)?;
    let (r1, rv) = exact_one(&rhs)?;
    let mut checks = vec![SubCheck::new("sides equal the scalar 1", l1 && r1, format!("lhs {lv}, rhs {rv}"))];
    let lz = interpret(&lhs, Backend::Exact)?.is_zero();
    let rz = interpret(&rhs, Backend::Exact)?.is_zero();
    checks.push(SubCheck::new("sides non-zero", !lz && !rz, format!("lhs zero: {lz}, rhs zero: {rz}")));
    let sep = separation(&lhs, &rhs)?;
    checks.push(SubCheck::new(
        "invariant_r separates E",
        matches!(sep, Separation::Separated { lhs: 1, rhs: 0 }),
        sep.to_string(),
    ));
    let s2 = separation(&sides("S2").0, &sides("S2").1)?;
    checks.push(SubCheck::new("control S2", matches!(s2, Separation::NotSeparated { .. }), s2.to_string()));
    let zo = separation(&sides("ZO").0, &sides("ZO").1)?;
    checks.push(SubCheck::new("control ZO", zo == Separation::Inapplicable, zo.to_string()));
    let notes = vec![
        "every rule of ZX other than ZO keeps invariant_r; ZO only rewrites diagrams with zero interpretation".into(),
        "so no ZX derivation links two non-zero diagrams with different bits, and E is independent".into(),
    ];
    Ok(WitnessReport::new("prop1", checks, notes))
}
