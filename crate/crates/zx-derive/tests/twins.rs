mod common;

use common::configuration;
use zx_core::RealAngle;
use zx_derive::merge_twins;
use zx_interp::{compare_diagrams_with_cap, Backend};

#[test]
fn merging_preserves_the_interpretation() {
    let mut rng = common::rng(99);
    let mut sizes = [0usize; 5];
    for _ in 0..100 {
        let (d, twins, n) = configuration(&mut rng);
        let (merged, id) = merge_twins(&d, &twins, n, None, 1e-9).unwrap();
        assert_eq!(merged.nodes().len(), d.nodes().len() + 1 - n);
        assert!(merged.is_node(&id));
        let cmp = compare_diagrams_with_cap(&d, &merged, Backend::Exact, 1e-9, 24).unwrap();
        assert!(cmp.is_equal(), "n={n}: {cmp:?}\n{d:?}");
        sizes[n] += 1;
    }
    assert!(sizes[1..].iter().all(|&c| c > 0), "{sizes:?}");
}

#[test]
fn clauses_are_enforced() {
    let mut rng = common::rng(5);
    let (mut d, twins, n) = loop {
        let c = configuration(&mut rng);
        if c.2 >= 2 {
            break c;
        }
    };
    let kind = *d.node(&twins[0]).unwrap();
    let shifted = kind.with_phase(kind.phase().unwrap().add(RealAngle::frac(1, 7)));
    let mut bad_phase = d.clone();
    bad_phase.set_kind(&twins[0], shifted);
    assert!(merge_twins(&bad_phase, &twins, n, None, 1e-9).unwrap_err().contains("phase clause"));
    let mut bad_colour = d.clone();
    bad_colour.set_kind(&twins[0], kind.color_swapped());
    assert!(merge_twins(&bad_colour, &twins, n, None, 1e-9).unwrap_err().contains("colour clause"));
    d.add_edge(twins[0].clone(), twins[1].clone());
    assert!(merge_twins(&d, &twins, n, None, 1e-9).unwrap_err().contains("neighbourhood clause"));
}
