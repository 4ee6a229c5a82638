//! The rank-2 fermionic oscillator: 2 x 2 matrices xi, eta and the ladder
//! pair, their anti-commutation relations, the half-split diagonal
//! Hamiltonian, and the Heisenberg equation of motion.
//!
//! Run with: cargo run --example matrix_oscillator

use genmat::oscillator::{
    hamiltonian_set, ladder, verify_oscillator, xi_eta, OscillatorConfig, OscillatorRank,
};
use genmat::spectrum::PlanckConstants;

fn main() -> genmat::Result<()> {
    let config = OscillatorConfig::new(OscillatorRank::Two, 1.0, PlanckConstants::natural())?;

    let (xi, eta) = xi_eta(&config, 0.0);
    println!("xi(0) at (1,2)  = {}", xi.get(&[1, 2])?);
    println!("eta(0) at (1,2) = {}", eta.get(&[1, 2])?);

    let (lower, raise) = ladder(&config, 0.0);
    println!("C(0) at (1,2)   = {}", lower.get(&[1, 2])?);
    println!("C+(0) at (2,1)  = {}", raise.get(&[2, 1])?);

    let set = hamiltonian_set(&config)?;
    let h = &set.matrices()[0];
    println!(
        "H = diag({}, {}) in units hbar omega",
        h.get(&[1, 1])?.re,
        h.get(&[2, 2])?.re
    );
    let nu = set.frequency_cochain()?;
    println!("Bohr frequency nu(1,2) = {:.6}", nu.get(&[1, 2])?);

    let report = verify_oscillator(&config, &[0.0, 0.3, 1.7])?;
    println!("\nchecks at t in {{0, 0.3, 1.7}}:");
    for check in &report.checks {
        println!(
            "  {:32} t={:4}  defect {:9.2e}  tol {:7.1e}  {}",
            check.name,
            check.time,
            check.defect,
            check.tol,
            if check.pass() { "pass" } else { "FAIL" }
        );
    }
    println!(
        "\nall {} checks pass: {}",
        report.checks.len(),
        report.all_pass()
    );
    Ok(())
}
