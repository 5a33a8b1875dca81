use proptest::prelude::*;
use spinlab_core::codes::{CoherentCode, Encoding, MultiRepState, SphereGrid};
use spinlab_core::fidelity::{fidelity_matched, max_fidelity_rotation};
use spinlab_core::povm::{
    check_identity, grid_povm, octahedron_povm, povm_fidelity_exact, quadrature_povm, simulate,
    von_neumann_pair,
};
use spinlab_core::{Direction, FinitePovm};

fn direction() -> impl Strategy<Value = Direction> {
    (-1.0f64..=1.0, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(c, phi)| Direction::new(c.acos(), phi).unwrap())
}

fn quadrature_case(n: usize) -> (MultiRepState, FinitePovm) {
    let (_, code) = max_fidelity_rotation(n).unwrap();
    (code, quadrature_povm(n, n + 2, n + 2).unwrap())
}

proptest! {
    #[test]
    fn probabilities_sum_to_one(n in 1usize..=6, dir in direction(), m in direction()) {
        let (code, p) = quadrature_case(n);
        let total: f64 = p.probabilities(&code.encode(&dir)).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);

        let pair = von_neumann_pair(&m);
        let qubit = CoherentCode::with_dimension(2).unwrap();
        let total: f64 = pair.probabilities(&qubit.encode(&dir)).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);

        let four = CoherentCode::with_dimension(4).unwrap();
        let total: f64 = octahedron_povm().probabilities(&four.encode(&dir)).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn von_neumann_pair_resolves_identity(m in direction()) {
        prop_assert!(check_identity(&von_neumann_pair(&m), 2).unwrap() < 1e-14);
    }
}

#[test]
fn exact_povm_fidelity_matches_fidelity_module() {
    for n in 1..=6 {
        let (code, p) = quadrature_case(n);
        let grid = SphereGrid::exact_for(code.space().max_spin());
        let exact = povm_fidelity_exact(&code, &p, &grid).unwrap();
        let reference = fidelity_matched(&code).unwrap();
        assert!(
            (exact - reference).abs() < 1e-9,
            "N={n}: {exact} vs {reference}"
        );
        assert!((p.total_weight() - code.space().dim() as f64).abs() < 1e-12);
    }
}

#[test]
fn grid_povm_with_code_phases_resolves_identity() {
    let code = spinlab_core::codes::AlphaFamily::new(0.6, 2.2)
        .unwrap()
        .to_state();
    let p = grid_povm(&code, &SphereGrid::exact_for(code.space().max_spin())).unwrap();
    assert!(check_identity(&p, 4).unwrap() < 1e-12);
}

#[test]
fn dropped_element_shows_up_in_the_deviation() {
    let p = octahedron_povm();
    let deviation = check_identity(&p.without(2).unwrap(), 4).unwrap();
    assert!((deviation - 2.0 / 3.0).abs() < 1e-12);
    let code = CoherentCode::with_dimension(4).unwrap();
    assert!(simulate(&code, &p.without(0).unwrap(), 10, 1).is_err());
}

#[test]
fn coarse_quadrature_povm_is_rejected() {
    assert!(quadrature_povm(4, 5, 6).is_err());
    assert!(quadrature_povm(4, 6, 5).is_err());
    assert!(quadrature_povm(4, 6, 6).is_ok());
}

#[test]
fn identical_seeds_reproduce_bit_for_bit() {
    let code = CoherentCode::with_dimension(4).unwrap();
    let p = octahedron_povm();
    let a = simulate(&code, &p, 200_000, 11).unwrap();
    let b = simulate(&code, &p, 200_000, 11).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
}

#[test]
fn different_seeds_agree_statistically() {
    for n in [1, 2, 3] {
        let (code, p) = quadrature_case(n);
        let a = simulate(&code, &p, 100_000, 1).unwrap();
        let b = simulate(&code, &p, 100_000, 2).unwrap();
        assert_ne!(a.mean, b.mean);
        let combined = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() < 6.0 * combined, "N={n}");
    }
}

#[test]
fn degenerate_shot_counts() {
    let code = CoherentCode::with_dimension(2).unwrap();
    let p = von_neumann_pair(&Direction::z());
    assert!(simulate(&code, &p, 0, 5).is_err());
    let one = simulate(&code, &p, 1, 5).unwrap();
    assert!(one.mean.is_finite() && one.stderr.is_infinite());
    let ten = simulate(&code, &p, 10, 5).unwrap();
    assert!(ten.stderr.is_finite() && ten.stderr > 0.0);
}
