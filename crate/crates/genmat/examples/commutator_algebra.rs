//! The multiplication structures on rank-n matrices: the n-at-a-time
//! product, the identity element, normal forms, and the skew-symmetric
//! n-fold commutator.
//!
//! Run with: cargo run --example commutator_algebra

use genmat::algebra::{
    identity_matrix, nfold_commutator, nfold_product, normal_matrix, NormalSpec,
};
use genmat::spectrum::PairTable;
use genmat::tensor::GeneralizedMatrix;
use num_complex::Complex64;

fn main() -> genmat::Result<()> {
    let dim = 4;

    // a cubic matrix with recognizable entries
    let a = GeneralizedMatrix::from_fn(3, dim, |idx| {
        Complex64::new((idx[0] * 100 + idx[1] * 10 + idx[2]) as f64, 0.0)
    })?;

    // the identity element is 1 exactly on tuples with one coincident pair
    let id = identity_matrix(3, dim)?;
    println!("identity components: I(1,2,2) = {}, I(1,2,3) = {}, I(1,1,1) = {}",
        id.get(&[1, 2, 2])?.re,
        id.get(&[1, 2, 3])?.re,
        id.get(&[1, 1, 1])?.re,
    );

    // it acts as the identity on all-distinct components in any slot
    let prod = nfold_product(&[&a, &id, &id])?;
    println!(
        "product with two identity slots at (1,2,3): {} (matrix holds {})",
        prod.get(&[1, 2, 3])?.re,
        a.get(&[1, 2, 3])?.re,
    );

    // normal forms: nonzero only where exactly one index pair coincides,
    // with values summed from an antisymmetric pair table
    let table = PairTable::from_potential(&[0.0, 1.0, 3.0, 6.0])?;
    let spec = NormalSpec::new(3, dim, table.values())?;
    let normal = normal_matrix(&spec)?;
    println!(
        "normal form: N(1,2,2) = {} (table entry (1,2) = {}), N(1,2,3) = {}",
        normal.get(&[1, 2, 2])?.re,
        table.entry(1, 2),
        normal.get(&[1, 2, 3])?.re,
    );

    // the commutator is totally skew: a repeated argument annihilates it
    let h = GeneralizedMatrix::from_fn(3, dim, |idx| {
        Complex64::new((idx[0] + idx[1]) as f64, (idx[2] as f64).sin())
    })?;
    let degenerate = nfold_commutator(&[&a, &a, &h])?;
    println!("|[A, A, H]| = {:.3e}", degenerate.max_abs());

    // and swapping two arguments flips the overall sign
    let c1 = nfold_commutator(&[&a, &h, &id])?;
    let c2 = nfold_commutator(&[&h, &a, &id])?;
    let sum = GeneralizedMatrix::lincomb(
        Complex64::new(1.0, 0.0),
        &c1,
        Complex64::new(1.0, 0.0),
        &c2,
    )?;
    println!("|[A,H,I] + [H,A,I]| = {:.3e}", sum.max_abs());

    // for rank 2 everything reduces to ordinary matrix algebra
    let p = GeneralizedMatrix::from_fn(2, 3, |idx| Complex64::new(idx[0] as f64, idx[1] as f64))?;
    let q = GeneralizedMatrix::from_fn(2, 3, |idx| Complex64::new((idx[0] * idx[1]) as f64, 0.0))?;
    let comm = nfold_commutator(&[&p, &q])?;
    let pq = nfold_product(&[&p, &q])?;
    let qp = nfold_product(&[&q, &p])?;
    let direct = GeneralizedMatrix::lincomb(
        Complex64::new(1.0, 0.0),
        &pq,
        Complex64::new(-1.0, 0.0),
        &qp,
    )?;
    println!(
        "rank-2 commutator vs PQ - QP: difference {:.3e}",
        comm.max_abs_diff(&direct)?
    );

    Ok(())
}
