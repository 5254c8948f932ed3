//! Property tests over random sizes and labels, through the public API.

use num_complex::Complex64;
use proptest::prelude::*;

use triangulene::edge::{build_seed, edge_basis, project};
use triangulene::oracle::{build_hamiltonian, chirality_deviation, multiset_deviation, oracle_spectrum};
use triangulene::spectrum::{analytic_spectrum, index_set, quantized_k, verify_diophantine};
use triangulene::states::{build_periodic_state, extend_state, Window};
use triangulene::{layer_count, Sublattice, TrianguleneLattice};

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_is_bipartite_and_symmetric(n in 2usize..36) {
        let lat = TrianguleneLattice::build(n).unwrap();
        prop_assert_eq!(lat.len(), (n - 1) * (n - 1));
        prop_assert_eq!(lat.bonds().len(), 3 * (n - 1) * (n - 2) / 2);
        for &(i, j) in lat.bonds() {
            prop_assert_ne!(lat.sites()[i].sublattice, lat.sites()[j].sublattice);
        }
        let rot = lat.rotation();
        let thrice: Vec<usize> = (0..lat.len()).map(|i| rot[rot[rot[i]]]).collect();
        prop_assert_eq!(thrice, (0..lat.len()).collect::<Vec<_>>());
        let refl = lat.reflection();
        prop_assert!((0..lat.len()).all(|i| refl[refl[i]] == i));
    }

    #[test]
    fn periodic_states_are_eigenstates(n in 3usize..24, pick in 0usize..1000, which in 0usize..4) {
        let points = index_set(n);
        let pt = points[pick % points.len()];
        let labels = pt.labels();
        let qn = labels[which % labels.len()];
        let lat = TrianguleneLattice::build(n).unwrap();
        let st = build_periodic_state(&qn, &lat).unwrap();
        prop_assert!(st.residual(&lat) < 1e-10);
        prop_assert!((st.norm() - 1.0).abs() < 1e-12);
        prop_assert!(st.is_real(0.0));
        prop_assert!(verify_diophantine(qn.q, qn.p, n));
        let field = extend_state(&qn, n, &Window::supercells(n, 2)).unwrap();
        prop_assert!(field.nodal_max() < 1e-10);
        let kk = quantized_k(qn.q, qn.p, n);
        prop_assert!((st.energy.abs() - triangulene::dispersion(kk)).abs() < 1e-12);
    }

    #[test]
    fn seeds_stay_on_b_and_project_cleanly(n in 2usize..30, layer in 1usize..10, q in -1i32..=1) {
        let lat = TrianguleneLattice::build(n).unwrap();
        let layer = 1 + (layer - 1) % layer_count(n);
        let seed = build_seed(layer, &lat).unwrap();
        for (s, a) in lat.sites().iter().zip(&seed.amplitudes) {
            if s.sublattice == Sublattice::A {
                prop_assert_eq!(*a, 0.0);
            }
        }
        let v = seed.to_complex();
        let pv = project(&v, q, &lat);
        let hv = lat.apply_hamiltonian(&pv);
        let scale = triangulene::vecops::norm(&v).max(1.0);
        prop_assert!(triangulene::vecops::norm(&hv) < 1e-12 * scale);
        // projections onto different representations are orthogonal
        let other = project(&v, if q == 1 { -1 } else { q + 1 }, &lat);
        prop_assert!(inner(&pv, &other).norm() < 1e-10 * scale * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn analytic_spectrum_matches_oracle(n in 2usize..26) {
        let analytic = analytic_spectrum(n).unwrap().energies();
        let numeric = oracle_spectrum(n).unwrap().values;
        prop_assert!(multiset_deviation(&analytic, &numeric) < 1e-9);
        prop_assert!(chirality_deviation(&analytic) < 1e-12);
        let h = build_hamiltonian(&TrianguleneLattice::build(n).unwrap());
        let sum_sq: f64 = analytic.iter().map(|e| e * e).sum();
        prop_assert!((sum_sq - h.trace_squared()).abs() < 1e-8);
    }

    #[test]
    fn edge_basis_is_orthonormal(n in 2usize..28) {
        let lat = TrianguleneLattice::build(n).unwrap();
        let basis = edge_basis(&lat).unwrap();
        prop_assert_eq!(basis.states.len(), n - 1);
        for (i, u) in basis.states.iter().enumerate() {
            for (j, v) in basis.states.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((inner(&u.amplitudes, &v.amplitudes) - target).norm() < 1e-10);
            }
        }
    }
}
