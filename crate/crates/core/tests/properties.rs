use proptest::prelude::*;

use qudit_core::hamiltonian::{
    classify_region, linear_hamiltonian, linear_spectrum, lmg_spectrum, LMGParams, RegionClass, Spin,
};
use qudit_core::linalg::hermitian_eigenvalues;
use qudit_core::states::{invariants, lambda_to_p, p_to_lambda, positivity_check, orbit_classification};
use qudit_core::thermal::{gibbs_state, Spectrum};
use qudit_core::{bloch_bound, ProbabilityVector};

fn simplex_point(n: usize) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(1e-6f64..1.0, n).prop_map(|w| {
        let s: f64 = w.iter().sum();
        ProbabilityVector::new(w.iter().map(|x| x / s).collect()).unwrap()
    })
}

fn any_simplex_point() -> impl Strategy<Value = ProbabilityVector> {
    (2usize..=7).prop_flat_map(simplex_point)
}

proptest! {
    #[test]
    fn lambda_round_trip(p in any_simplex_point()) {
        let lam = p_to_lambda(&p);
        prop_assert!(lam.norm() <= bloch_bound(p.dimension()).unwrap() + 1e-12);
        let back = lambda_to_p(&lam).unwrap();
        for (a, b) in p.as_slice().iter().zip(back.as_slice()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn invariants_ignore_permutations(p in simplex_point(4), perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let q = p.permuted(&perm).unwrap();
        let (a, b) = (invariants(&p), invariants(&q));
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            prop_assert!((x - y).abs() < 1e-15);
        }
        prop_assert!(a.within_bounds(1e-12));
    }

    #[test]
    fn diagonal_states_pass_positivity(p in any_simplex_point()) {
        let n = p.dimension();
        let m = qudit_core::linalg::real_diagonal(p.as_slice());
        prop_assert!(positivity_check(&m).unwrap().positive);
        let orbit = orbit_classification(&p, 1e-9);
        prop_assert_eq!(orbit.multiplicities.iter().sum::<usize>(), n);
    }

    #[test]
    fn gibbs_probabilities_descend(e in prop::collection::vec(-5.0f64..5.0, 2..7), beta in 0.0f64..50.0) {
        let mut e = e;
        e.sort_by(f64::total_cmp);
        let st = gibbs_state(&Spectrum::new(e).unwrap(), beta).unwrap();
        prop_assert!(st.p.as_slice().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn region_matches_thermal_ranking(gm in -6.0f64..6.0, gp in -6.0f64..6.0, beta in 0.05f64..5.0, j in 2u32..=3) {
        let spin = Spin::from_twice(j).unwrap();
        let params = LMGParams::from_pm(1.0, gm, gp).unwrap();
        if let RegionClass::Interior(region) = classify_region(spin, &params, 1e-9).unwrap() {
            let spec = lmg_spectrum(spin, &params).unwrap();
            let p = spec.to_label_order(gibbs_state(&spec, beta).unwrap().p.as_slice());
            let mut rank: Vec<usize> = (0..p.len()).collect();
            rank.sort_by(|&a, &b| p[b].total_cmp(&p[a]));
            prop_assert_eq!(rank, region.probability_order);
        }
    }

    #[test]
    fn linear_spectrum_is_direction_free(theta in 0.0f64..std::f64::consts::PI, phi in 0.0f64..6.3, twice in 1u32..=4) {
        let spin = Spin::from_twice(twice).unwrap();
        let e = hermitian_eigenvalues(&linear_hamiltonian(spin, 1.3, theta, phi).unwrap()).unwrap();
        for (a, b) in e.iter().zip(linear_spectrum(spin, 1.3).unwrap().energies()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}
