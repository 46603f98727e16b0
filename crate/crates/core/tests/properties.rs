use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use dicke_core::antisym::{elementary_antisym, is_antisymmetric, FirstQuantizedState};
use dicke_core::entanglement::{
    block_structure_residual, brute_force_rdm, dicke_two_particle_rdm, hermitian_eigenvalues, jacobi_eigen,
    negativity, partial_transpose, schmidt_negativity_oracle, BasisOrder, Correlators, TwoQuditMatrix,
    TwoQutritState, RHO_BLOCKS,
};
use dicke_core::io::{expansion_from_csv, expansion_to_csv};
use dicke_core::{dicke_expansion, enumerate_basis, oracle_expansion, SpinSpecies};

fn subspace() -> impl Strategy<Value = (SpinSpecies, u32, i64)> {
    (1u32..=4, 1u32..=10).prop_flat_map(|(ts, n)| {
        let species = SpinSpecies::from_twice(ts).unwrap();
        let tj = species.twice_j(n);
        (Just(species), Just(n), (0..=tj).prop_map(move |k| 2 * k - tj))
    })
}

fn spin_one_subspace(max_n: u32) -> impl Strategy<Value = (u32, i64)> {
    (2u32..=max_n).prop_flat_map(|n| (Just(n), (0..=2 * n as i64).prop_map(move |k| 2 * k - 2 * n as i64)))
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn pure_state() -> impl Strategy<Value = TwoQutritState> {
    proptest::array::uniform9(complex())
        .prop_filter("non-zero", |v| v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            TwoQutritState(v.map(|z| z / norm))
        })
}

/// Random Hermitian, unit-trace 9×9 matrix (not necessarily positive).
fn hermitian_unit_trace() -> impl Strategy<Value = TwoQuditMatrix> {
    proptest::collection::vec(complex(), 81).prop_map(|v| {
        let a = DMatrix::from_vec(9, 9, v);
        let mut h = &a + a.adjoint();
        let tr = h.trace().re;
        let shift = (1.0 - tr) / 9.0;
        for i in 0..9 {
            h[(i, i)] = Complex64::new(h[(i, i)].re + shift, 0.0);
        }
        TwoQuditMatrix::new(BasisOrder::Product, h).unwrap()
    })
}

proptest! {
    #[test]
    fn basis_vectors_obey_conservation((species, n, tm) in subspace()) {
        for v in enumerate_basis(species, n, tm).unwrap() {
            prop_assert_eq!(v.total(), n as u64);
            prop_assert_eq!(v.twice_magnetization(), tm);
        }
    }

    #[test]
    fn expansion_is_normalized_and_mirror_symmetric((species, n, tm) in subspace()) {
        let x = dicke_expansion(species, n, tm).unwrap();
        prop_assert!((x.norm_sq() - 1.0).abs() < 1e-12);
        let y = dicke_expansion(species, n, -tm).unwrap();
        prop_assert!(x.mirror().max_deviation(&y) < 1e-15);
        prop_assert!(x.terms.iter().all(|t| t.1 > 0.0));
    }

    #[test]
    fn oracle_support_is_the_basis((species, n, tm) in subspace()) {
        let basis = enumerate_basis(species, n, tm).unwrap();
        let oracle = oracle_expansion(species, n, tm).unwrap();
        let mut support = oracle.support(1e-12);
        support.sort_by(|a, b| b.cmp(a));
        prop_assert_eq!(support, basis);
    }

    #[test]
    fn expansion_csv_roundtrip((species, n, tm) in subspace()) {
        let x = dicke_expansion(species, n, tm).unwrap();
        let back = expansion_from_csv(&expansion_to_csv(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn partial_transpose_properties(m in hermitian_unit_trace()) {
        let pt = partial_transpose(&m);
        prop_assert_eq!(partial_transpose(&pt).to_order(BasisOrder::Product), m.clone());
        prop_assert!((pt.trace() - m.trace()).norm() < 1e-12);
        prop_assert!(pt.hermiticity_residual() < 1e-12);
    }

    #[test]
    fn jacobi_reconstructs(v in proptest::collection::vec(-1.0f64..1.0, 81)) {
        let a = DMatrix::from_vec(9, 9, v);
        let s = (&a + a.transpose()) * 0.5;
        let r = jacobi_eigen(&s).unwrap();
        let back = &r.vectors * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(r.values.clone())) * r.vectors.transpose();
        prop_assert!((back - &s).amax() <= 1e-10);
        prop_assert!((r.values.iter().sum::<f64>() - s.trace()).abs() <= 1e-10);
    }

    #[test]
    fn complex_embedding_matches_trace(m in hermitian_unit_trace()) {
        let ev = hermitian_eigenvalues(m.entries()).unwrap();
        prop_assert_eq!(ev.len(), 9);
        prop_assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let sq: f64 = ev.iter().map(|l| l * l).sum();
        let frob: f64 = m.entries().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((sq - frob).abs() < 1e-9);
    }

    #[test]
    fn permuted_elementary_states_stay_antisymmetric(
        ts in 1u32..=4,
        mask in 0u32..32,
        i in 0usize..5,
        j in 0usize..5,
    ) {
        let species = SpinSpecies::from_twice(ts).unwrap();
        let levels: Vec<i64> = species.twice_m_values().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|p| p.1).collect();
        prop_assume!(levels.len() >= 2);
        let state = elementary_antisym(species, &levels).unwrap();
        prop_assert!(is_antisymmetric(&state));
        let (i, j) = (i % levels.len(), j % levels.len());
        prop_assume!(i != j);
        let swapped = FirstQuantizedState {
            terms: state.terms.iter().map(|(a, c)| {
                let mut a = a.clone();
                a.swap(i, j);
                (a, *c)
            }).collect(),
            ..state.clone()
        };
        prop_assert!((swapped.inner(&state) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rdm_formulas_match_brute_force((n, tm) in spin_one_subspace(6)) {
        let x = dicke_expansion(SpinSpecies::ONE, n, tm).unwrap();
        let a = dicke_two_particle_rdm(&x).unwrap();
        let b = brute_force_rdm(&x).unwrap();
        prop_assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-10);
    }

    #[test]
    fn dicke_rdm_block_structure((n, tm) in spin_one_subspace(40)) {
        let x = dicke_expansion(SpinSpecies::ONE, n, tm).unwrap();
        let c = Correlators::from_expansion(&x).unwrap();
        prop_assert_eq!(c.a[3], c.a[4]);
        prop_assert_eq!(c.a[5], c.a[6]);
        prop_assert_eq!(c.c[0], c.c[1]);
        prop_assert!(c.trace_closure_residual() < 1e-12);
        prop_assert!(c.expanded_form_residual() < 1e-12);
        let rho = dicke_two_particle_rdm(&x).unwrap();
        prop_assert_eq!(block_structure_residual(rho.matrix().entries(), &RHO_BLOCKS), 0.0);
        let report = negativity(&rho).unwrap();
        let blocks = report.block_decomposition.unwrap();
        prop_assert!((blocks.value - report.value).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn negativity_matches_schmidt(state in pure_state()) {
        let rho = state.density().unwrap();
        let n = negativity(&rho).unwrap();
        let s = schmidt_negativity_oracle(&state);
        prop_assert!((n.value - s).abs() < 1e-10, "negativity {} vs Schmidt {}", n.value, s);
        let listed: f64 = n.negative_eigenvalues.iter().map(|l| l.abs()).sum();
        prop_assert_eq!(listed, n.value);
    }
}
