//! The four defining properties of the classical bracket, measured on
//! polynomial test functions: skew symmetry, linearity, the fundamental
//! identity and the derivation rule. Polynomials carry exact derivatives, so
//! the exact-side defects are pure rounding; the finite-difference side
//! shows the expected second-order truncation.
//!
//! Run with: cargo run --example bracket_properties

use genmat::nambu::{bracket_properties_report, nambu_bracket, nambu_bracket_exact_at, Poly};

fn main() -> genmat::Result<()> {
    let f1 = Poly::new(3, vec![(1.0, vec![2, 1, 0]), (0.5, vec![0, 0, 1])])?;
    let f2 = Poly::new(3, vec![(1.0, vec![0, 2, 0]), (-0.7, vec![1, 0, 1])])?;
    let f3 = Poly::new(3, vec![(0.3, vec![1, 1, 1]), (1.0, vec![0, 0, 2])])?;
    let g1 = Poly::new(3, vec![(1.0, vec![1, 1, 0])])?;
    let g2 = Poly::new(3, vec![(1.0, vec![0, 1, 1]), (0.2, vec![1, 0, 0])])?;

    let points = vec![
        vec![0.3, -0.8, 1.1],
        vec![1.0, 0.5, -0.4],
        vec![-0.6, 0.9, 0.2],
    ];
    let report = bracket_properties_report(
        &[f1.clone(), f2.clone(), f3.clone()],
        &[g1, g2],
        &points,
        1e-5,
    )?;
    println!("property defects (exact derivatives / central differences):");
    println!("  skew symmetry        {:9.3e} / {:9.3e}", report.skew_exact, report.skew_fd);
    println!("  linearity            {:9.3e} / {:9.3e}", report.linearity_exact, report.linearity_fd);
    println!("  fundamental identity {:9.3e}", report.fundamental_exact);
    println!("  derivation rule      {:9.3e}", report.derivation_exact);

    // the rank-2 bracket is the Poisson bracket: {q, p} = 1
    let fq = |p: &[f64]| p[0];
    let fp = |p: &[f64]| p[1];
    println!(
        "\nPoisson bracket {{q, p}} at (0.2, 0.7) = {:.9}",
        nambu_bracket(&[&fq, &fp], &[0.2, 0.7], 1e-5)?
    );

    // exact vs differenced bracket at one point
    let at = [0.7, -0.4, 1.1];
    let exact = nambu_bracket_exact_at(&[&f1, &f2, &f3], &at)?;
    let ff1 = |p: &[f64]| f1.eval(p);
    let ff2 = |p: &[f64]| f2.eval(p);
    let ff3 = |p: &[f64]| f3.eval(p);
    let fd = nambu_bracket(&[&ff1, &ff2, &ff3], &at, 1e-5)?;
    println!("bracket at {at:?}: exact {exact:.9}, differenced {fd:.9}");
    Ok(())
}
