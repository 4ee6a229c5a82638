//! Property tests over randomized inputs: storage round-trips, sign-symbol
//! antisymmetry, coboundary nilpotency, commutator skew symmetry, and
//! evolution-phase structure.

use genmat::algebra::nfold_commutator;
use genmat::cohomology::{antisymmetrize, coboundary, Cochain};
use genmat::dynamics::{evolve, EvolvingVariable, HamiltonianSet};
use genmat::perm::for_each_tuple;
use genmat::spectrum::PlanckConstants;
use genmat::tensor::{GeneralizedMatrix, LeviCivita};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex_entries(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn storage_round_trip(entries in complex_entries(27)) {
        let mut m = GeneralizedMatrix::zeros(3, 3).unwrap();
        let mut i = 0usize;
        for_each_tuple(3, 3, |idx| {
            let (re, im) = entries[i];
            let idx = idx.to_vec();
            m.set(&idx, Complex64::new(re, im)).unwrap();
            i += 1;
        });
        let mut j = 0usize;
        let mut exact = true;
        for_each_tuple(3, 3, |idx| {
            let (re, im) = entries[j];
            exact &= m.get(idx).unwrap() == Complex64::new(re, im);
            j += 1;
        });
        prop_assert!(exact);
        // lincomb with the zero matrix is the identity, bit for bit
        let z = GeneralizedMatrix::zeros(3, 3).unwrap();
        let same = GeneralizedMatrix::lincomb(
            Complex64::new(1.0, 0.0), &m, Complex64::ZERO, &z,
        ).unwrap();
        prop_assert_eq!(same, m);
    }

    #[test]
    fn sign_symbol_total_antisymmetry(rank in 2usize..=4) {
        let (eps, _) = LeviCivita::new(rank, rank);
        let mut ok = true;
        for_each_tuple(rank, rank, |idx| {
            for a in 0..rank {
                for b in (a + 1)..rank {
                    let mut swapped = idx.to_vec();
                    swapped.swap(a, b);
                    ok &= eps.value(&swapped) == -eps.value(idx);
                }
            }
        });
        prop_assert!(ok);
    }

    #[test]
    fn coboundary_squares_to_zero(values in prop::collection::vec(-5.0f64..5.0, 64), k in 1usize..=3) {
        let dim = 4usize;
        let len = dim.pow(k as u32);
        let mut i = 0usize;
        let c = Cochain::from_fn(k, dim, |_| {
            let v = values[i % len.min(values.len())];
            i += 1;
            v
        }).unwrap();
        let dd = coboundary(&coboundary(&c).unwrap()).unwrap();
        prop_assert!(dd.max_abs() < 1e-12);
    }

    #[test]
    fn antisymmetrization_projects(values in prop::collection::vec(-5.0f64..5.0, 27)) {
        let mut i = 0usize;
        let raw = Cochain::from_fn(3, 3, |_| {
            let v = values[i % values.len()];
            i += 1;
            v
        }).unwrap();
        let once = antisymmetrize(&raw).unwrap();
        prop_assert!(once.antisymmetry_defect() < 1e-12);
        let twice = antisymmetrize(&once).unwrap();
        let drift = once.values().iter().zip(twice.values())
            .map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        prop_assert!(drift < 1e-12);
    }

    #[test]
    fn commutator_skew_under_any_transposition(
        entries in complex_entries(3 * 27),
        a in 0usize..3,
        b in 0usize..3,
    ) {
        prop_assume!(a != b);
        let mats: Vec<GeneralizedMatrix> = (0..3).map(|w| {
            let mut i = w * 27;
            GeneralizedMatrix::from_fn(3, 3, |_| {
                let (re, im) = entries[i];
                i += 1;
                Complex64::new(re, im)
            }).unwrap()
        }).collect();
        let refs: Vec<&GeneralizedMatrix> = mats.iter().collect();
        let base = nfold_commutator(&refs).unwrap();
        let mut swapped = refs.clone();
        swapped.swap(a, b);
        let flipped = nfold_commutator(&swapped).unwrap();
        let sum = GeneralizedMatrix::lincomb(
            Complex64::new(1.0, 0.0), &base, Complex64::new(1.0, 0.0), &flipped,
        ).unwrap();
        let scale = 1.0 + base.max_abs();
        prop_assert!(sum.max_abs() < 1e-9 * scale);
    }

    #[test]
    fn evolution_preserves_moduli_and_composes(
        potentials in prop::collection::vec(prop::collection::vec(-2.0f64..2.0, 4), 2),
        t1 in -3.0f64..3.0,
        t2 in -3.0f64..3.0,
    ) {
        let constants = PlanckConstants::natural();
        let set = HamiltonianSet::from_potentials(3, &potentials, constants).unwrap();
        let a0 = GeneralizedMatrix::from_fn(3, 4, |idx| {
            Complex64::new(idx[0] as f64, (idx[1] * idx[2]) as f64)
        }).unwrap();
        let v = EvolvingVariable::driven_by(a0.clone(), &set).unwrap();
        let at1 = evolve(&v, t1);
        // moduli are preserved componentwise
        let mut ok = true;
        for_each_tuple(3, 4, |idx| {
            ok &= (at1.at(idx).norm() - a0.at(idx).norm()).abs() < 1e-10;
        });
        prop_assert!(ok);
        // phases compose: evolving to t1 + t2 equals evolving twice
        let direct = evolve(&v, t1 + t2);
        let two_step = evolve(&EvolvingVariable::new(at1, v.nu.clone()).unwrap(), t2);
        prop_assert!(direct.max_abs_diff(&two_step).unwrap() < 1e-9 * (1.0 + a0.max_abs()));
    }
}
