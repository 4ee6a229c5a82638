//! Classical bracket dynamics: integrate a rigid-body-like quadratic system
//! with the fixed-step fourth-order scheme, watch both Hamiltonians stay
//! conserved, and write the trajectory as CSV.
//!
//! Run with: cargo run --example nambu_trajectory

use genmat::nambu::{integrate, NambuSystem, Poly};

fn main() -> genmat::Result<()> {
    // H1 = (x^2 + y^2 + z^2)/2, H2 = x^2/2 + y^2/4 + z^2/6
    let h1 = Poly::new(
        3,
        vec![(0.5, vec![2, 0, 0]), (0.5, vec![0, 2, 0]), (0.5, vec![0, 0, 2])],
    )?;
    let h2 = Poly::new(
        3,
        vec![(0.5, vec![2, 0, 0]), (0.25, vec![0, 2, 0]), (1.0 / 6.0, vec![0, 0, 2])],
    )?;
    let sys = NambuSystem::new(3, vec![h1, h2], 1e-5)?;

    let x0 = [1.0, 0.3, 0.5];
    let traj = integrate(&sys, &x0, 10.0, 1e-3).map_err(|(e, _)| e)?;
    let drift = traj.max_drift();
    println!("integrated {} steps to t = {}", traj.times.len() - 1, traj.times.last().unwrap());
    println!("conservation drift: H1 {:.3e}, H2 {:.3e}", drift[0], drift[1]);

    // step-halving order check against a fine reference
    let reference = integrate(&sys, &x0, 2.0, 1e-4).map_err(|(e, _)| e)?;
    let xref = reference.points.last().unwrap();
    let endpoint_error = |dt: f64| -> genmat::Result<f64> {
        let t = integrate(&sys, &x0, 2.0, dt).map_err(|(e, _)| e)?;
        Ok(t.points
            .last()
            .unwrap()
            .iter()
            .zip(xref)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt())
    };
    let coarse = endpoint_error(0.02)?;
    let fine = endpoint_error(0.01)?;
    println!(
        "step halving: error {coarse:.3e} -> {fine:.3e}, observed order {:.2}",
        (coarse / fine).log2()
    );

    let csv = traj.to_csv();
    let path = std::env::temp_dir().join("nambu_trajectory.csv");
    std::fs::write(&path, &csv).expect("temp dir is writable");
    println!("trajectory written to {}", path.display());
    println!("first rows:");
    for line in csv.lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
