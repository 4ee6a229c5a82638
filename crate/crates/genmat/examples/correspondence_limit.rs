//! Classical-limit checks: the discrete frequency expressions converge to
//! their derivative/Jacobian counterparts as the level numbers grow, at the
//! rate O(1/l).
//!
//! Run with: cargo run --example correspondence_limit

use genmat::spectrum::{correspondence_error_2, correspondence_error_3, ActionEnergy1, ActionEnergy2};

fn main() -> genmat::Result<()> {
    // one action variable, E(J) = J^2: the relative error is exactly 1/(2l)
    let quadratic = ActionEnergy1 {
        value: &|j| j * j,
        derivative: &|j| 2.0 * j,
    };
    println!("E(J) = J^2, grid spacing 0.5, step 1:");
    for level in [10u64, 100, 1000] {
        let err = correspondence_error_2(&quadratic, 0.5, level, 1)?;
        println!(
            "  level {level:5}: relative error {err:.6e} (1/(2l) = {:.6e})",
            1.0 / (2.0 * level as f64)
        );
    }

    // linear energies are differenced exactly
    let linear = ActionEnergy1 {
        value: &|j| 3.0 * j,
        derivative: &|_| 3.0,
    };
    println!(
        "E(J) = 3J: relative error {:.3e}",
        correspondence_error_2(&linear, 0.5, 50, 1)?
    );

    // two action variables: the bracket of difference quotients against the
    // Jacobian on a quadratic pair, decaying as O(1/l + 1/m)
    let q1 = ActionEnergy2 {
        value: &|j1, _| j1 * j1,
        d1: &|j1, _| 2.0 * j1,
        d2: &|_, _| 0.0,
    };
    let q2 = ActionEnergy2 {
        value: &|j1, j2| j1 * j2,
        d1: &|_, j2| j2,
        d2: &|j1, _| j1,
    };
    println!("\n(E1, E2) = (J1^2, J1 J2):");
    for level in [20u64, 200, 2000] {
        let err = correspondence_error_3(&q1, &q2, 0.5, (level, level), (1, 1))?;
        println!("  levels ({level:5}, {level:5}): relative error {err:.6e}");
    }

    // the linear pair gives the unit Jacobian exactly
    let lin1 = ActionEnergy2 {
        value: &|j1, _| j1,
        d1: &|_, _| 1.0,
        d2: &|_, _| 0.0,
    };
    let lin2 = ActionEnergy2 {
        value: &|_, j2| j2,
        d1: &|_, _| 0.0,
        d2: &|_, _| 1.0,
    };
    println!(
        "(E1, E2) = (J1, J2): relative error {:.3e}",
        correspondence_error_3(&lin1, &lin2, 0.5, (20, 30), (1, 1))?
    );
    Ok(())
}
