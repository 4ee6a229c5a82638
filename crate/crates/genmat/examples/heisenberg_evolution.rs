//! Time evolution under the generalized Heisenberg equation: build a
//! conserved Hamiltonian set, evolve a random variable by phase rotation,
//! measure the equation-of-motion residual, probe the commutator
//! eigenvalues, and demonstrate the translation symmetry of the tables.
//!
//! Run with: cargo run --example heisenberg_evolution

use genmat::dynamics::{
    commutator_eigenvalue, eigenvalue_multiplicity, eom_residual, heisenberg_rhs,
    measured_frequency_cochain, EvolvingVariable, HamiltonianSet,
};
use genmat::spectrum::{gamma, PlanckConstants};
use genmat::tensor::GeneralizedMatrix;
use num_complex::Complex64;

fn main() -> genmat::Result<()> {
    let constants = PlanckConstants::natural();

    for rank in [2usize, 3, 4, 5] {
        let dim = 4.max(rank);
        // combination-rule tables from simple potentials
        let potentials: Vec<Vec<f64>> = (0..rank - 1)
            .map(|a| {
                (0..dim)
                    .map(|l| ((l + 1) as f64).powi(a as i32 + 1) * 0.3)
                    .collect()
            })
            .collect();
        let set = HamiltonianSet::from_potentials(rank, &potentials, constants)?;

        // the frequency cochain that matches the measured commutator action
        let nu = if rank == 2 {
            set.frequency_cochain()?
        } else {
            measured_frequency_cochain(&set)?
        };
        let a0 = GeneralizedMatrix::from_fn(rank, dim, |idx| {
            let s: usize = idx.iter().enumerate().map(|(p, &i)| (p + 2) * i).sum();
            Complex64::new((s as f64).sin(), (s as f64).cos())
        })?;
        let v = EvolvingVariable::new(a0, nu)?;
        let mut worst = 0.0f64;
        for t in [0.0, 0.4, 1.9, -0.7, 12.3] {
            worst = worst.max(eom_residual(&v, &set, t)?);
        }
        print!("rank {rank}: equation-of-motion residual {worst:9.3e}");

        if rank >= 3 {
            // the probe eigenvalue carries the multiplicity n - 2 relative
            // to the single-reference determinant frequency
            let idx: Vec<usize> = (1..=rank).collect();
            let f = commutator_eigenvalue(&set, &idx)?;
            let single = set.frequency_cochain()?.get(&idx)?;
            let ratio = f / (-constants.h() * single);
            println!(
                "  eigenvalue/single-count ratio {:.3} (multiplicity {} over gamma {})",
                ratio,
                eigenvalue_multiplicity(rank)?,
                gamma(rank)?
            );
        } else {
            println!();
        }

        // every Hamiltonian in the set is conserved
        let mut conserved = 0.0f64;
        for h in set.matrices() {
            conserved = conserved.max(heisenberg_rhs(h, &set)?.max_abs());
        }
        println!("        conservation residual      {conserved:9.3e}");
    }

    // translation symmetry: adding a constant to every off-diagonal table
    // entry leaves the commutator unchanged on the dynamical sector
    let set = HamiltonianSet::from_potentials(
        3,
        &[vec![0.0, 0.4, 1.1, 2.3], vec![0.0, -0.2, 0.9, 1.7]],
        constants,
    )?;
    let moved = set.shifted(&[0.7, -1.3])?;
    let a = GeneralizedMatrix::from_fn(3, 4, |idx| {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            Complex64::ZERO
        } else {
            Complex64::new(idx[0] as f64, (idx[1] * idx[2]) as f64)
        }
    })?;
    let defect = heisenberg_rhs(&a, &set)?.max_abs_diff(&heisenberg_rhs(&a, &moved)?)?;
    println!("\ntable translation by (0.7, -1.3): commutator change {defect:.3e}");
    Ok(())
}
