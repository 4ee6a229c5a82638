//! The rank-3 fermionic oscillator: 3 x 3 x 3 cubic matrices built from the
//! sign symbol, the triple anti-commutation relations, the two conserved
//! Hamiltonians (a normal form plus the identity element), and the frequency
//! cochain -(omega / 2 pi) eps.
//!
//! Run with: cargo run --example cubic_oscillator

use genmat::algebra::nfold_commutator;
use genmat::oscillator::{
    hamiltonian_from_ladder, hamiltonian_from_pair, hamiltonian_set, ladder, verify_oscillator,
    xi_eta, OscillatorConfig, OscillatorRank,
};
use genmat::spectrum::{PlanckConstants, TWO_PI};
use genmat::tensor::GeneralizedMatrix;

fn main() -> genmat::Result<()> {
    let omega = 1.0;
    let config = OscillatorConfig::new(OscillatorRank::Three, omega, PlanckConstants::natural())?;

    let (xi, eta) = xi_eta(&config, 0.0);
    println!("xi(0) at (1,2,3)  = {}", xi.get(&[1, 2, 3])?);
    println!("eta(0) at (1,2,3) = {}", eta.get(&[1, 2, 3])?);
    let (lower, _) = ladder(&config, 0.0);
    println!(
        "C(0): (1,2,3) -> {}, (2,1,3) -> {}",
        lower.get(&[1, 2, 3])?.re,
        lower.get(&[2, 1, 3])?.re
    );

    // the conserved set: H1 is the normal form of (hbar w / 6) eps2, H2 the
    // identity element; three independent constructions agree
    let set = hamiltonian_set(&config)?;
    let h1 = &set.matrices()[0];
    println!("\nH1 at (1,2,2) = {:.6} (hbar w / 6 = {:.6})", h1.get(&[1, 2, 2])?.re, 1.0 / 6.0);
    let from_pair = hamiltonian_from_pair(&config, 0.8)?;
    let from_ladder = hamiltonian_from_ladder(&config, 0.8)?;
    println!(
        "construction agreement at t = 0.8: pair {:.2e}, ladder {:.2e}",
        from_pair.max_abs_diff(h1)?,
        from_ladder.max_abs_diff(h1)?
    );

    // the commutator with the set acts diagonally on the ladder variable
    let args: Vec<&GeneralizedMatrix> =
        std::iter::once(&lower).chain(set.matrices().iter()).collect();
    let action = nfold_commutator(&args)?;
    println!(
        "\n[C, H1, H2] at (1,2,3) = {:.6} (C component {:.1}, so the action is -hbar omega)",
        action.get(&[1, 2, 3])?.re,
        lower.get(&[1, 2, 3])?.re
    );

    // the frequency cochain of the coboundary branch
    let nu = set.frequency_cochain()?;
    println!(
        "frequency nu(1,2,3) = {:.6}; -omega/(2 pi) = {:.6}",
        nu.get(&[1, 2, 3])?,
        -omega / TWO_PI
    );

    let report = verify_oscillator(&config, &[0.0, 0.3, 1.7])?;
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass()).collect();
    println!(
        "\nverification: {} checks, {} failures",
        report.checks.len(),
        failed.len()
    );
    for check in failed {
        println!("  FAIL {} defect {:.3e}", check.name, check.defect);
    }
    Ok(())
}
