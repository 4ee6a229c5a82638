//! Generalized (n-index) matrix mechanics.
//!
//! Rank-n complex arrays carry an n-at-a-time product and an n-fold
//! commutator; conserved quantities take a normal form built from
//! antisymmetric pair tables; frequencies are n-index cocycles; variables
//! evolve by pure phase rotation and satisfy a Heisenberg-type equation of
//! motion driven by the commutator with n-1 normal Hamiltonians. A classical
//! companion integrates the matching bracket dynamics (Jacobian determinants)
//! for correspondence checks.
//!
//! Start with the `examples/` directory: each file exercises one capability
//! end to end. The `genmat` binary wraps the verification suites, spectrum
//! construction, oscillator checks and trajectory integration behind a small
//! CLI.
//!
//! The core flow in miniature: conserved Hamiltonians from level potentials,
//! a variable evolving with the attached frequency cochain, and a vanishing
//! equation-of-motion residual.
//!
//! ```
//! use genmat::dynamics::{eom_residual, EvolvingVariable, HamiltonianSet};
//! use genmat::spectrum::PlanckConstants;
//! use genmat::tensor::GeneralizedMatrix;
//! use num_complex::Complex64;
//!
//! let set = HamiltonianSet::from_potentials(
//!     3,
//!     &[vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 4.0]],
//!     PlanckConstants::natural(),
//! )?;
//! let a0 = GeneralizedMatrix::from_fn(3, 3, |idx| {
//!     Complex64::new(idx[0] as f64, (idx[1] * idx[2]) as f64)
//! })?;
//! let variable = EvolvingVariable::driven_by(a0, &set)?;
//! assert!(eom_residual(&variable, &set, 1.7)? < 1e-10 * set.scale());
//! # Ok::<(), genmat::Error>(())
//! ```

pub mod algebra;
pub mod cohomology;
pub mod dynamics;
pub mod error;
pub mod nambu;
pub mod oscillator;
pub mod perm;
pub mod report;
pub mod spectrum;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{GeneralizedMatrix, LeviCivita};
