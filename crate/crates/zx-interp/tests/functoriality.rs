use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zx_core::{
    make_generator, make_spider, random_diagram, sequential_compose, tensor_product, transform_variant, Color, Diagram,
    Generator, RandomShape, RealAngle,
};
use zx_interp::{interpret, invariant_g, invariant_r, matrix_compare, Backend, SemanticMatrix};

fn exact(d: &Diagram) -> SemanticMatrix {
    interpret(d, Backend::Exact).unwrap()
}

fn random(seed: u64, inputs: usize, outputs: usize) -> Diagram {
    let shape = RandomShape { max_nodes: 5, inputs, outputs, ..Default::default() };
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), &shape)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn compose_is_matrix_product(s1: u64, s2: u64, a in 0usize..3, b in 0usize..3, c in 0usize..3) {
        let (d1, d2) = (random(s1, a, b), random(s2, b, c));
        let composed = exact(&sequential_compose(&d2, &d1).unwrap());
        prop_assert_eq!(composed, exact(&d2).matmul(&exact(&d1)).unwrap());
    }

    #[test]
    fn tensor_is_kronecker(s1: u64, s2: u64, a in 0usize..3, b in 0usize..2) {
        let (d1, d2) = (random(s1, a, b), random(s2, b, a));
        prop_assert_eq!(exact(&tensor_product(&d1, &d2)), exact(&d1).kron(&exact(&d2)).unwrap());
    }

    #[test]
    fn degree_sum_identity(s: u64, n in 0usize..3, m in 0usize..3) {
        let d = random(s, n, m);
        prop_assert_eq!((invariant_r(&d) + invariant_g(&d)) as usize % 2, (n + m) % 2);
    }
}

#[test]
fn yanking_instances() {
    let g = make_generator;
    let id = exact(&g(Generator::Identity));
    let id2 = exact(&tensor_product(&g(Generator::Identity), &g(Generator::Identity)));
    let snake1 = sequential_compose(
        &tensor_product(&g(Generator::Identity), &g(Generator::Cup)),
        &tensor_product(&g(Generator::Cap), &g(Generator::Identity)),
    )
    .unwrap();
    let snake2 = sequential_compose(
        &tensor_product(&g(Generator::Cup), &g(Generator::Identity)),
        &tensor_product(&g(Generator::Identity), &g(Generator::Cap)),
    )
    .unwrap();
    assert_eq!(exact(&snake1), id);
    assert_eq!(exact(&snake2), id);
    let swap_swap = sequential_compose(&g(Generator::Swap), &g(Generator::Swap)).unwrap();
    assert_eq!(exact(&swap_swap), id2);
    let swapped_cap = sequential_compose(&g(Generator::Swap), &g(Generator::Cap)).unwrap();
    assert_eq!(exact(&swapped_cap), exact(&g(Generator::Cap)));
    let swapped_cup = sequential_compose(&g(Generator::Cup), &g(Generator::Swap)).unwrap();
    assert_eq!(exact(&swapped_cup), exact(&g(Generator::Cup)));
}

#[test]
fn backend_agreement_on_random_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..200 {
        let shape = RandomShape { max_nodes: 6, inputs: k % 3, outputs: (k / 3) % 3, ..Default::default() };
        let d = random_diagram(&mut rng, &shape);
        let ex = exact(&d).to_float();
        let fl = interpret(&d, Backend::Float).unwrap();
        assert!(matrix_compare(&ex, &fl, 1e-9).unwrap().is_equal(), "diagram {k}");
    }
}

#[test]
fn scalar_pair_tensor() {
    let (a, b) = (RealAngle::frac(1, 3), RealAngle::frac(3, 4));
    let d = tensor_product(&make_spider(Color::Z, a, 0, 0), &make_spider(Color::X, b, 0, 0));
    let want = (1.0 + num::complex::Complex64::from_polar(1.0, a.radians()))
        * (1.0 + num::complex::Complex64::from_polar(1.0, b.radians()));
    assert!((exact(&d).get(0, 0).to_complex() - want).norm() < 1e-12);
}

#[test]
fn fusion_survives_every_variant() {
    // Z(pi/4) 1->2 then its flip, joined by two wires, fuses to Z(pi/2) 1->1
    let s = make_spider(Color::Z, RealAngle::frac(1, 4), 1, 2);
    let lhs = sequential_compose(&transform_variant(&s, false, true), &s).unwrap();
    let rhs = make_spider(Color::Z, RealAngle::frac(1, 2), 1, 1);
    for (swap, flip) in [(false, false), (true, false), (false, true), (true, true)] {
        let (l, r) = (transform_variant(&lhs, swap, flip), transform_variant(&rhs, swap, flip));
        assert!(matrix_compare(&exact(&l), &exact(&r), 0.0).unwrap().is_equal(), "{swap} {flip}");
    }
}

#[test]
fn invariant_examples() {
    assert_eq!(invariant_r(&make_generator(Generator::HBox)), 1);
    assert_eq!(invariant_r(&make_generator(Generator::Identity)), 0);
    let e_lhs = sequential_compose(
        &make_spider(Color::X, RealAngle::frac(-1, 4), 1, 0),
        &make_spider(Color::Z, RealAngle::frac(1, 4), 0, 1),
    )
    .unwrap();
    assert_eq!(invariant_r(&e_lhs), 1);
    assert_eq!(invariant_r(&make_generator(Generator::Empty)), 0);
}
