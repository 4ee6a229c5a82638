//! Frequency cochains from Hamiltonian pair tables: Bohr differences at
//! rank 2, the cyclic determinant form at rank 3, its cocycle and
//! combination-rule structure, and the coboundary-built alternative.
//!
//! Run with: cargo run --example spectrum_frequencies

use genmat::cohomology::{coboundary, ritz_defect_max};
use genmat::perm::for_each_tuple;
use genmat::spectrum::{
    beta, bohr_frequency, nu0_raw, nu_cyclic_cochain, nu_tilde, PairTable, PlanckConstants,
};

fn main() -> genmat::Result<()> {
    let constants = PlanckConstants::natural();

    // rank 2: hydrogen-like levels E_n = -1/n^2 (in units hcR = 1)
    let hydrogen: Vec<f64> = (1..=4).map(|n| -1.0 / (n * n) as f64).collect();
    println!("hydrogen-like Bohr frequencies (units hcR / h):");
    for m in 2..=4usize {
        let nu = bohr_frequency(&hydrogen, m, 1, &constants)?;
        println!("  {m} -> 1: nu = {:.6}", nu);
    }

    // rank 3: two potentials and their difference tables
    let t1 = PairTable::from_potential(&[0.0, 1.0, 2.0, 4.5])?;
    let t2 = PairTable::from_potential(&[0.0, 1.0, 4.0, -2.0])?;
    println!(
        "\ntables follow the combination rule: {} / {}",
        t1.satisfies_combination_rule(),
        t2.satisfies_combination_rule()
    );

    let nu = nu_cyclic_cochain(&[&t1, &t2], &constants)?;
    println!("cyclic frequency on ascending triples:");
    for_each_tuple(3, 4, |idx| {
        if idx.windows(2).all(|w| w[0] < w[1]) {
            println!("  nu{idx:?} = {:+.6}", nu.at(idx));
        }
    });
    println!("total antisymmetry defect: {:.3e}", nu.antisymmetry_defect());
    println!("cocycle defect |delta nu|:  {:.3e}", coboundary(&nu)?.max_abs());
    println!("combination-rule defect:    {:.3e}", ritz_defect_max(&nu));

    // the raw determinant form hides its cyclic symmetry behind the rule
    let b = beta(3, &constants)?;
    let raw = nu0_raw(&[&t1, &t2], b)?;
    let mut cyclic = 0.0f64;
    for p in 1..3 {
        cyclic = cyclic.max(genmat::cohomology::cyclic_defect(&raw, p));
    }
    println!("raw-form cyclic defect:     {:.3e}", cyclic);

    // the coboundary-built frequency is a cocycle even without the rule
    let mut v = vec![0.0; 16];
    for (l, m, val) in [(1usize, 2usize, 0.9f64), (1, 3, -0.4), (1, 4, 1.7), (2, 3, 2.2), (2, 4, -1.1), (3, 4, 0.6)] {
        v[(l - 1) * 4 + (m - 1)] = val;
        v[(m - 1) * 4 + (l - 1)] = -val;
    }
    let free = PairTable::from_values(4, v)?;
    println!(
        "\nrule-free table: combination rule = {}",
        free.satisfies_combination_rule()
    );
    let tilde = nu_tilde(&[&free], 3, &constants)?;
    println!(
        "coboundary frequency: |delta nu~| = {:.3e}, nu~(1,2,3) = {:+.6}",
        coboundary(&tilde)?.max_abs(),
        tilde.get(&[1, 2, 3])?
    );
    Ok(())
}
