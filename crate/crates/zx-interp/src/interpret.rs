use std::collections::{BTreeMap, HashMap};

use num::complex::Complex64;
use zx_core::{validate_diagram, Diagram, NodeKind, PiRational, RealAngle};

use crate::matrix::{matrix_compare, Backend, Comparison, Scalar, SemanticMatrix};
use crate::ring::{CycInt, Entry};
use crate::tensor::{contract_network, Tensor};
use crate::InterpError;

pub const DEFAULT_RANK_CAP: usize = 16;

/// `lcm(8, 2 * den)` over every spider phase.
pub fn choose_modulus(d: &Diagram) -> Result<u32, InterpError> {
    let mut m = 8u32;
    for (id, kind) in d.nodes() {
        match kind.phase() {
            Some(RealAngle::Exact(p)) => m = zx_cyclo::lcm(m, 2 * p.den() as u32),
            Some(RealAngle::Float(_)) => return Err(InterpError::FloatPhase { node: id.clone() }),
            None => {}
        }
    }
    Ok(m)
}

/// Leg labels: one per internal edge, one per port.
struct Wiring {
    legs: BTreeMap<String, Vec<usize>>,
    port_leg: HashMap<String, usize>,
    bare_wires: Vec<[usize; 2]>,
}

fn wiring(d: &Diagram) -> Wiring {
    let mut legs: BTreeMap<String, Vec<usize>> = d.nodes().keys().map(|k| (k.clone(), Vec::new())).collect();
    let mut port_leg = HashMap::new();
    let mut bare_wires = Vec::new();
    let mut next = 0usize;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for [a, b] in d.edges() {
        match (d.is_node(a), d.is_node(b)) {
            (true, true) => {
                let l = fresh();
                legs.get_mut(a).expect("node").push(l);
                legs.get_mut(b).expect("node").push(l);
            }
            (true, false) | (false, true) => {
                let (n, p) = if d.is_node(a) { (a, b) } else { (b, a) };
                let l = fresh();
                legs.get_mut(n).expect("node").push(l);
                port_leg.insert(p.clone(), l);
            }
            (false, false) => {
                let (la, lb) = (fresh(), fresh());
                port_leg.insert(a.clone(), la);
                port_leg.insert(b.clone(), lb);
                bare_wires.push([la, lb]);
            }
        }
    }
    Wiring { legs, port_leg, bare_wires }
}

/// Node tensors with entries `phase -> T`, plus the number of `1/sqrt 2`
/// factors that were left out of the entries (exact) or folded in (float).
trait Builder {
    type T: Entry;
    fn phase(&self, p: &RealAngle) -> Self::T;
    fn int(&self, v: i128) -> Self::T;
    /// Multiply by `2^(-k/2)`; exact builders only count.
    fn half_powers(&mut self, k: u32, v: Self::T) -> Self::T;
}

struct ExactBuilder {
    modulus: u32,
    halves: u32,
}

impl Builder for ExactBuilder {
    type T = CycInt;
    fn phase(&self, p: &RealAngle) -> CycInt {
        let p: PiRational = p.exact().expect("checked by choose_modulus");
        CycInt::monomial(self.modulus, p.num() * (self.modulus as u64 / (2 * p.den())) as i64, 1)
    }
    fn int(&self, v: i128) -> CycInt {
        CycInt::monomial(self.modulus, 0, v)
    }
    fn half_powers(&mut self, k: u32, v: CycInt) -> CycInt {
        self.halves += k;
        v
    }
}

struct FloatBuilder;

impl Builder for FloatBuilder {
    type T = Complex64;
    fn phase(&self, p: &RealAngle) -> Complex64 {
        Complex64::from_polar(1.0, p.radians())
    }
    fn int(&self, v: i128) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }
    fn half_powers(&mut self, k: u32, v: Complex64) -> Complex64 {
        v * 0.5f64.powf(k as f64 / 2.0)
    }
}

fn node_tensor<B: Builder>(
    b: &mut B,
    kind: &NodeKind,
    legs: Vec<usize>,
    cap: usize,
) -> Result<Tensor<B::T>, InterpError> {
    let deg = legs.len();
    if deg > cap {
        return Err(InterpError::Resource { rank: deg, limit: cap });
    }
    let mut data = HashMap::new();
    match kind {
        NodeKind::Z(p) => {
            let e = b.phase(p);
            if deg == 0 {
                let mut one = b.int(1);
                one.add_assign(&e);
                data.insert(0, one);
            } else {
                data.insert(0, b.int(1));
                data.insert((1u64 << deg) - 1, e);
            }
        }
        NodeKind::X(p) => {
            // H on every leg around a Z spider: entry 1 + (-1)^|bits| e^{i phase}
            let e = b.phase(p);
            let neg = b.int(-1).mul(&e);
            let one = b.int(1);
            let scale = b.half_powers(deg as u32, one);
            for key in 0..1u64 << deg {
                let mut v = b.int(1);
                v.add_assign(if key.count_ones() % 2 == 0 { &e } else { &neg });
                let v = v.mul(&scale);
                if !v.is_zero() {
                    data.insert(key, v);
                }
            }
        }
        NodeKind::H => {
            let one = b.int(1);
            let scale = b.half_powers(1, one);
            for (key, v) in [(0, 1), (1, 1), (2, 1), (3, -1)] {
                data.insert(key, b.int(v).mul(&scale));
            }
        }
    }
    Ok(Tensor { legs, data })
}

fn run<B: Builder>(d: &Diagram, b: &mut B, cap: usize) -> Result<Tensor<B::T>, InterpError> {
    let w = wiring(d);
    let mut tensors = Vec::new();
    for (id, legs) in w.legs {
        tensors.push(node_tensor(b, &d.nodes()[&id], legs, cap)?);
    }
    for [la, lb] in w.bare_wires {
        tensors.push(Tensor { legs: vec![la, lb], data: HashMap::from([(0, b.int(1)), (3, b.int(1))]) });
    }
    // open legs ordered so the high bits are outputs, output 0 first
    let order: Vec<usize> = d.inputs().iter().rev().chain(d.outputs().iter().rev()).map(|p| w.port_leg[p]).collect();
    let one = b.int(1);
    Ok(contract_network(tensors, one, cap)?.permuted(&order))
}

fn split_key(key: u64, inputs: usize) -> (u64, u64) {
    (key >> inputs, key & ((1u64 << inputs) - 1))
}

/// The standard interpretation with the default rank cap.
pub fn interpret(d: &Diagram, backend: Backend) -> Result<SemanticMatrix, InterpError> {
    interpret_with_cap(d, backend, DEFAULT_RANK_CAP)
}

pub fn interpret_with_cap(d: &Diagram, backend: Backend, cap: usize) -> Result<SemanticMatrix, InterpError> {
    validate_diagram(d).map_err(InterpError::Invalid)?;
    let (n, m) = (d.num_inputs(), d.num_outputs());
    match backend {
        Backend::Exact => {
            let modulus = choose_modulus(d)?;
            let mut b = ExactBuilder { modulus, halves: 0 };
            let t = run(d, &mut b, cap)?;
            let mut map = BTreeMap::new();
            for (key, v) in t.data {
                map.insert(split_key(key, n), v.to_scalar(b.halves)?);
            }
            Ok(SemanticMatrix::exact(m, n, modulus, map))
        }
        Backend::Float => {
            let t = run(d, &mut FloatBuilder, cap)?;
            Ok(SemanticMatrix::float(m, n, t.data.into_iter().map(|(k, v)| (split_key(k, n), v)).collect()))
        }
    }
}

fn exact_tensor(d: &Diagram, modulus: u32, cap: usize) -> Result<(HashMap<u64, CycInt>, u32), InterpError> {
    validate_diagram(d).map_err(InterpError::Invalid)?;
    let mut b = ExactBuilder { modulus, halves: 0 };
    let t = run(d, &mut b, cap)?;
    Ok((t.data, b.halves))
}

/// Compare two diagrams' interpretations without building field elements
/// unless a difference has to be reported. Exact backend compares in
/// `Z[zeta_M]` modulo `Phi_M`; float backend entrywise within `tol`.
pub fn compare_diagrams(a: &Diagram, b: &Diagram, backend: Backend, tol: f64) -> Result<Comparison, InterpError> {
    compare_diagrams_with_cap(a, b, backend, tol, DEFAULT_RANK_CAP)
}

pub fn compare_diagrams_with_cap(
    a: &Diagram,
    b: &Diagram,
    backend: Backend,
    tol: f64,
    cap: usize,
) -> Result<Comparison, InterpError> {
    let dims = |d: &Diagram| (d.num_outputs(), d.num_inputs());
    if dims(a) != dims(b) {
        return Err(InterpError::Dimension { left: dims(a), right: dims(b) });
    }
    if backend == Backend::Float {
        return matrix_compare(&interpret_with_cap(a, backend, cap)?, &interpret_with_cap(b, backend, cap)?, tol);
    }
    let modulus = zx_cyclo::lcm(choose_modulus(a)?, choose_modulus(b)?);
    let (ta, ha) = exact_tensor(a, modulus, cap)?;
    let (tb, hb) = exact_tensor(b, modulus, cap)?;
    let h = ha.max(hb);
    let zero = CycInt::monomial(modulus, 0, 0);
    let mut keys: Vec<u64> = ta.keys().chain(tb.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let n = a.num_inputs();
    for key in keys {
        let va = ta.get(&key).unwrap_or(&zero);
        let vb = tb.get(&key).unwrap_or(&zero);
        let mut diff = va.times_sqrt2_pow(h - ha);
        diff.add_assign(&vb.times_sqrt2_pow(h - hb).mul(&CycInt::monomial(modulus, 0, -1)));
        if !diff.vanishes() {
            let (row, col) = split_key(key, n);
            return Ok(Comparison::Unequal {
                row,
                col,
                left: Scalar::Exact(va.to_scalar(ha)?),
                right: Scalar::Exact(vb.to_scalar(hb)?),
            });
        }
    }
    Ok(Comparison::Equal)
}

/// Exact when every phase is exact, float otherwise.
pub fn interpret_auto(d: &Diagram) -> Result<SemanticMatrix, InterpError> {
    let all_exact = d.nodes().values().all(|k| k.phase().map_or(true, |p| p.is_exact()));
    interpret(d, if all_exact { Backend::Exact } else { Backend::Float })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zx_core::{make_generator, make_spider, sequential_compose, Color, Generator};
    use zx_cyclo::{sqrt_two, CycloScalar};

    fn exact(d: &Diagram) -> SemanticMatrix {
        interpret(d, Backend::Exact).unwrap()
    }

    fn scalar(d: &Diagram) -> CycloScalar {
        match exact(d).scalar().unwrap() {
            Scalar::Exact(s) => s,
            Scalar::Float(_) => unreachable!(),
        }
    }

    fn joined(state: Diagram, effect: Diagram) -> Diagram {
        sequential_compose(&effect, &state).unwrap()
    }

    #[test]
    fn modulus_choice() {
        assert_eq!(choose_modulus(&make_spider(Color::Z, RealAngle::frac(1, 4), 1, 1)).unwrap(), 8);
        assert_eq!(choose_modulus(&make_generator(Generator::Swap)).unwrap(), 8);
        let two = zx_core::tensor_product(
            &make_spider(Color::Z, RealAngle::frac(1, 3), 0, 0),
            &make_spider(Color::X, RealAngle::frac(1, 4), 0, 0),
        );
        assert_eq!(choose_modulus(&two).unwrap(), 24);
        let float = make_spider(Color::Z, RealAngle::float(0.3).unwrap(), 0, 0);
        assert!(matches!(interpret(&float, Backend::Exact), Err(InterpError::FloatPhase { .. })));
    }

    #[test]
    fn generator_tensors() {
        let zpi = exact(&make_spider(Color::Z, RealAngle::pi(), 1, 1));
        assert!(zpi.get(0, 0).to_complex() == 1.0.into() && zpi.get(1, 1).to_complex() == (-1.0).into());
        assert_eq!(zpi.nonzero().len(), 2);
        assert!(scalar(&make_spider(Color::Z, RealAngle::pi(), 0, 0)).is_zero());
        let xeff = exact(&make_spider(Color::X, RealAngle::zero(), 1, 0));
        assert_eq!(xeff.get(0, 0), Scalar::Exact(sqrt_two(8).unwrap()));
        assert!(xeff.get(0, 1).is_zero());
        let h = exact(&make_generator(Generator::HBox));
        let half = CycloScalar::from_rational(8, num::BigRational::new(1.into(), 2.into())).unwrap();
        let inv_sqrt2 = &sqrt_two(8).unwrap() * &half;
        assert_eq!(h.get(1, 1), Scalar::Exact(-&inv_sqrt2));
        assert_eq!(h.get(0, 1), Scalar::Exact(inv_sqrt2));
    }

    #[test]
    fn closed_examples() {
        let e_lhs = joined(
            make_spider(Color::Z, RealAngle::frac(1, 4), 0, 1),
            make_spider(Color::X, RealAngle::frac(-1, 4), 1, 0),
        );
        assert!(scalar(&e_lhs).is_one());
        assert!(scalar(&make_generator(Generator::Empty)).is_one());
        let circle = joined(make_generator(Generator::Cap), make_generator(Generator::Cup));
        assert_eq!(scalar(&circle), CycloScalar::from_integer(8, 2).unwrap());
        let pair =
            joined(make_spider(Color::Z, RealAngle::zero(), 0, 1), make_spider(Color::X, RealAngle::zero(), 1, 0));
        assert_eq!(scalar(&pair), sqrt_two(8).unwrap());
    }

    #[test]
    fn hbox_squares_to_identity() {
        let hh = sequential_compose(&make_generator(Generator::HBox), &make_generator(Generator::HBox)).unwrap();
        let id = exact(&make_generator(Generator::Identity));
        assert_eq!(exact(&hh), id);
        assert_eq!(interpret(&hh, Backend::Float).unwrap().nonzero(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn row_order_puts_output_zero_high() {
        // Z(0) 0->1 on output 0, X(pi) 0->1 on output 1: state |+> (x) |1>*sqrt2
        let d = zx_core::tensor_product(
            &make_spider(Color::Z, RealAngle::zero(), 0, 1),
            &make_spider(Color::X, RealAngle::pi(), 0, 1),
        );
        let m = exact(&d);
        assert_eq!(m.nonzero(), vec![(1, 0), (3, 0)]);
    }

    #[test]
    fn self_loops_contract() {
        let mut d = make_spider(Color::Z, RealAngle::frac(1, 2), 1, 1);
        d.add_edge("s", "s");
        assert_eq!(exact(&d), exact(&make_spider(Color::Z, RealAngle::frac(1, 2), 1, 1)));
        let mut x = make_spider(Color::X, RealAngle::zero(), 1, 1);
        x.add_edge("s", "s");
        // X self-loop: each loop contributes sqrt 2 times a Z(0)-type projection in the X basis
        assert!(!exact(&x).is_zero());
    }

    #[test]
    fn rank_cap() {
        let d = make_spider(Color::X, RealAngle::zero(), 9, 9);
        assert!(matches!(interpret(&d, Backend::Exact), Err(InterpError::Resource { .. })));
        assert!(interpret_with_cap(&d, Backend::Float, 18).is_ok());
    }
}
