//! The contraction engine against a brute-force sum over edge labellings,
//! with X spiders evaluated by explicit Hadamard conjugation.

use num::complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zx_core::{random_diagram, Diagram, NodeKind, RandomShape};
use zx_interp::{interpret, Backend};

fn brute_force(d: &Diagram) -> Vec<Vec<Complex64>> {
    let edges = d.edges();
    let (n, m) = (d.num_inputs(), d.num_outputs());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); 1 << n]; 1 << m];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hm = |a: u8, b: u8| if a == 1 && b == 1 { -h } else { h };
    for assign in 0u64..1 << edges.len() {
        let bit = |e: usize| ((assign >> e) & 1) as u8;
        let mut value = Complex64::new(1.0, 0.0);
        for (id, kind) in d.nodes() {
            let mut ends = Vec::new();
            for (e, [a, b]) in edges.iter().enumerate() {
                for x in [a, b] {
                    if x == id {
                        ends.push(bit(e));
                    }
                }
            }
            value *= match kind {
                NodeKind::Z(p) => {
                    let phase = Complex64::from_polar(1.0, p.radians());
                    if ends.is_empty() {
                        1.0 + phase
                    } else if ends.iter().all(|&b| b == 0) {
                        1.0.into()
                    } else if ends.iter().all(|&b| b == 1) {
                        phase
                    } else {
                        0.0.into()
                    }
                }
                NodeKind::X(p) => {
                    let phase = Complex64::from_polar(1.0, p.radians());
                    (0..2u8)
                        .map(|z| {
                            let legs: f64 = ends.iter().map(|&b| hm(b, z)).product();
                            legs * if z == 1 { phase } else { 1.0.into() }
                        })
                        .sum()
                }
                NodeKind::H => hm(ends[0], ends[1]).into(),
            };
        }
        let port_bit = |p: &String| {
            let e = edges.iter().position(|[a, b]| a == p || b == p).expect("port edge");
            bit(e) as usize
        };
        let row = d.outputs().iter().fold(0, |acc, p| (acc << 1) | port_bit(p));
        let col = d.inputs().iter().fold(0, |acc, p| (acc << 1) | port_bit(p));
        out[row][col] += value;
    }
    out
}

fn diagram() -> impl Strategy<Value = Diagram> {
    (any::<u64>(), 0usize..3, 0usize..3, prop::sample::select(vec![2u64, 3, 4, 6])).prop_map(
        |(seed, inputs, outputs, den)| {
            let shape = RandomShape { max_nodes: 5, inputs, outputs, phase_den: den, max_extra_edges: 3 };
            random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), &shape)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn both_backends_match_brute_force(d in diagram()) {
        let want = brute_force(&d);
        for backend in [Backend::Exact, Backend::Float] {
            let got = interpret(&d, backend).unwrap();
            for (r, row) in want.iter().enumerate() {
                for (c, w) in row.iter().enumerate() {
                    let g = got.get(r as u64, c as u64).to_complex();
                    prop_assert!((g - w).norm() < 1e-9, "{backend:?} entry ({r},{c}): {g} vs {w}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn fast_comparison_agrees_with_matrices(s1: u64, s2: u64, n in 0usize..3, m in 0usize..3) {
        let shape = RandomShape { max_nodes: 4, inputs: n, outputs: m, phase_den: 4, max_extra_edges: 2 };
        let a = random_diagram(&mut ChaCha8Rng::seed_from_u64(s1), &shape);
        let b = random_diagram(&mut ChaCha8Rng::seed_from_u64(s2), &shape);
        for (x, y) in [(&a, &b), (&a, &a)] {
            let slow = zx_interp::matrix_compare(&interpret(x, Backend::Exact).unwrap(), &interpret(y, Backend::Exact).unwrap(), 0.0).unwrap();
            let fast = zx_interp::compare_diagrams(x, y, Backend::Exact, 0.0).unwrap();
            prop_assert_eq!(slow.is_equal(), fast.is_equal());
        }
    }
}
