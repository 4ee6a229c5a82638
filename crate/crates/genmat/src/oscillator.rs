//! Closed-form fermionic harmonic oscillators for ranks 2 and 3.
//!
//! The variables are built from the sign symbol: xi carries |eps| with a
//! phase rotating at -omega * eps, eta carries -i * eps with the same phase,
//! and the ladder pair C, C-dagger are their complex combinations. The rank-2
//! Hamiltonian is the diagonal matrix diag(-hbar w/2, +hbar w/2); the rank-3
//! set is the normal form of the contracted-symbol table (hbar w/6) eps2
//! together with the identity element, and the attached frequency cochain is
//! -(w/2 pi) eps.

use num_complex::Complex64;

use crate::algebra::{identity_matrix, nfold_anticommutator, nfold_commutator, nfold_product};
use crate::dynamics::HamiltonianSet;
use crate::error::{Error, Result};
use crate::perm::for_each_tuple;
use crate::spectrum::{PairTable, PlanckConstants, TWO_PI};
use crate::tensor::{GeneralizedMatrix, LeviCivita};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OscillatorRank {
    Two,
    Three,
}

impl OscillatorRank {
    pub fn as_usize(self) -> usize {
        match self {
            OscillatorRank::Two => 2,
            OscillatorRank::Three => 3,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OscillatorConfig {
    pub rank: OscillatorRank,
    pub omega: f64,
    pub constants: PlanckConstants,
}

impl OscillatorConfig {
    pub fn new(rank: OscillatorRank, omega: f64, constants: PlanckConstants) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::Domain(format!(
                "angular frequency must be positive, got {omega}"
            )));
        }
        Ok(Self {
            rank,
            omega,
            constants,
        })
    }

    fn n(&self) -> usize {
        self.rank.as_usize()
    }

    fn eps(&self) -> LeviCivita {
        LeviCivita::new(self.n(), self.n()).0
    }
}

/// The pair (xi, eta) at time t.
pub fn xi_eta(config: &OscillatorConfig, t: f64) -> (GeneralizedMatrix, GeneralizedMatrix) {
    let n = config.n();
    let eps = config.eps();
    let omega = config.omega;
    let root_half = 1.0 / 2f64.sqrt();
    let xi = GeneralizedMatrix::from_fn(n, n, |idx| {
        let e = eps.value(idx) as f64;
        Complex64::from_polar(e.abs() * root_half, -omega * e * t)
    })
    .expect("oscillator shapes are valid");
    let eta = GeneralizedMatrix::from_fn(n, n, |idx| {
        let e = eps.value(idx) as f64;
        Complex64::new(0.0, -e * root_half) * Complex64::from_polar(1.0, -omega * e * t)
    })
    .expect("oscillator shapes are valid");
    (xi, eta)
}

/// The ladder pair (C, C-dagger) at time t:
/// C = (xi + i eta)/sqrt 2, C-dagger = (xi - i eta)/sqrt 2.
pub fn ladder(config: &OscillatorConfig, t: f64) -> (GeneralizedMatrix, GeneralizedMatrix) {
    let n = config.n();
    let eps = config.eps();
    let omega = config.omega;
    let lower = GeneralizedMatrix::from_fn(n, n, |idx| {
        let e = eps.value(idx) as f64;
        Complex64::from_polar(0.5 * (e.abs() + e), -omega * t)
    })
    .expect("oscillator shapes are valid");
    let raise = GeneralizedMatrix::from_fn(n, n, |idx| {
        let e = eps.value(idx) as f64;
        Complex64::from_polar(0.5 * (e.abs() - e), omega * t)
    })
    .expect("oscillator shapes are valid");
    (lower, raise)
}

/// The conserved Hamiltonian set in closed form: rank 2 gives the diagonal
/// matrix of (-hbar w/2, +hbar w/2); rank 3 gives the normal form of the
/// table (hbar w/6) eps2 plus the identity element.
pub fn hamiltonian_set(config: &OscillatorConfig) -> Result<HamiltonianSet> {
    let hw = config.constants.hbar() * config.omega;
    match config.rank {
        OscillatorRank::Two => {
            HamiltonianSet::from_potentials(2, &[vec![-0.5 * hw, 0.5 * hw]], config.constants)
        }
        OscillatorRank::Three => {
            let eps2 = config.eps().contracted_last();
            let table: Vec<f64> = eps2.iter().map(|e| hw / 6.0 * e).collect();
            let t = PairTable::from_values(3, table)?;
            HamiltonianSet::coboundary_set(3, vec![t], config.constants)
        }
    }
}

/// The first Hamiltonian rebuilt from the time-dependent pair:
/// rank 2: i hbar w * (xi eta); rank 3: i (hbar w / 6) [xi, I, eta].
/// Time-independent despite the rotating factors.
pub fn hamiltonian_from_pair(config: &OscillatorConfig, t: f64) -> Result<GeneralizedMatrix> {
    let (xi, eta) = xi_eta(config, t);
    let hw = config.constants.hbar() * config.omega;
    match config.rank {
        OscillatorRank::Two => {
            let prod = nfold_product(&[&xi, &eta])?;
            Ok(prod.scaled(Complex64::new(0.0, hw)))
        }
        OscillatorRank::Three => {
            let id = identity_matrix(3, 3)?;
            let comm = nfold_commutator(&[&xi, &id, &eta])?;
            Ok(comm.scaled(Complex64::new(0.0, hw / 6.0)))
        }
    }
}

/// The first Hamiltonian rebuilt from the ladder pair:
/// rank 2: hbar w (C-dagger C - 1/2 delta); rank 3: (hbar w / 6)[C-dagger, I, C].
pub fn hamiltonian_from_ladder(config: &OscillatorConfig, t: f64) -> Result<GeneralizedMatrix> {
    let (lower, raise) = ladder(config, t);
    let hw = config.constants.hbar() * config.omega;
    match config.rank {
        OscillatorRank::Two => {
            let prod = nfold_product(&[&raise, &lower])?;
            let id = identity_matrix(2, 2)?;
            GeneralizedMatrix::lincomb(
                Complex64::new(hw, 0.0),
                &prod,
                Complex64::new(-0.5 * hw, 0.0),
                &id,
            )
        }
        OscillatorRank::Three => {
            let id = identity_matrix(3, 3)?;
            let comm = nfold_commutator(&[&raise, &id, &lower])?;
            Ok(comm.scaled(Complex64::new(hw / 6.0, 0.0)))
        }
    }
}

/// One verified relation, with the measured defect and its tolerance.
#[derive(Clone, Debug)]
pub struct OscillatorCheck {
    pub name: String,
    pub time: f64,
    pub defect: f64,
    pub tol: f64,
}

impl OscillatorCheck {
    pub fn pass(&self) -> bool {
        self.defect <= self.tol
    }
}

#[derive(Clone, Debug)]
pub struct OscillatorReport {
    pub rank: usize,
    pub omega: f64,
    pub checks: Vec<OscillatorCheck>,
}

impl OscillatorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(OscillatorCheck::pass)
    }

    pub fn worst(&self) -> Option<&OscillatorCheck> {
        self.checks
            .iter()
            .max_by(|a, b| (a.defect / a.tol).total_cmp(&(b.defect / b.tol)))
    }
}

fn push(checks: &mut Vec<OscillatorCheck>, name: &str, time: f64, defect: f64, tol: f64) {
    checks.push(OscillatorCheck {
        name: name.to_string(),
        time,
        defect,
        tol,
    });
}

/// Run every closed-form relation at the given times: anti-commutators,
/// first- and second-order motion via finite differences, agreement of the
/// Hamiltonian constructions and their time independence, the frequency
/// cochain, and the diagonal commutator action on the evolving variables.
pub fn verify_oscillator(config: &OscillatorConfig, times: &[f64]) -> Result<OscillatorReport> {
    let n = config.n();
    let omega = config.omega;
    let hbar = config.constants.hbar();
    let hw = hbar * omega;
    let tol = 1e-12;
    let mut checks = Vec::new();

    let id = identity_matrix(n, n)?;
    let set = hamiltonian_set(config)?;
    let h1_closed = set.matrices()[0].clone();

    // finite-difference steps sized for 1e-6 relative accuracy
    let fd = 1e-3 / omega;

    for &t in times {
        let (xi, eta) = xi_eta(config, t);
        let (lower, raise) = ladder(config, t);

        // anti-commutation relations
        let anti = |a: &GeneralizedMatrix, b: &GeneralizedMatrix| -> Result<GeneralizedMatrix> {
            match config.rank {
                OscillatorRank::Two => nfold_anticommutator(&[a, b]),
                OscillatorRank::Three => nfold_anticommutator(&[a, &id, b]),
            }
        };
        let unit = &id;
        let zero = GeneralizedMatrix::zeros(n, n)?;
        push(&mut checks, "anticommutator_xi_xi", t, anti(&xi, &xi)?.max_abs_diff(unit)?, tol);
        push(&mut checks, "anticommutator_eta_eta", t, anti(&eta, &eta)?.max_abs_diff(unit)?, tol);
        push(&mut checks, "anticommutator_xi_eta", t, anti(&xi, &eta)?.max_abs_diff(&zero)?, tol);
        push(&mut checks, "anticommutator_lower_raise", t, anti(&lower, &raise)?.max_abs_diff(unit)?, tol);
        push(&mut checks, "anticommutator_lower_lower", t, anti(&lower, &lower)?.max_abs_diff(&zero)?, tol);
        push(&mut checks, "anticommutator_raise_raise", t, anti(&raise, &raise)?.max_abs_diff(&zero)?, tol);

        // first-order equations by central differences
        let (xi_p, eta_p) = xi_eta(config, t + fd);
        let (xi_m, eta_m) = xi_eta(config, t - fd);
        let ddt = |plus: &GeneralizedMatrix, minus: &GeneralizedMatrix| {
            GeneralizedMatrix::lincomb(
                Complex64::new(0.5 / fd, 0.0),
                plus,
                Complex64::new(-0.5 / fd, 0.0),
                minus,
            )
        };
        let dxi = ddt(&xi_p, &xi_m)?;
        let deta = ddt(&eta_p, &eta_m)?;
        let fd_tol = 1e-6 * omega;
        push(
            &mut checks,
            "first_order_xi",
            t,
            dxi.max_abs_diff(&eta.scaled(Complex64::new(omega, 0.0)))?,
            fd_tol,
        );
        push(
            &mut checks,
            "first_order_eta",
            t,
            deta.max_abs_diff(&xi.scaled(Complex64::new(-omega, 0.0)))?,
            fd_tol,
        );
        let (lo_p, ra_p) = ladder(config, t + fd);
        let (lo_m, ra_m) = ladder(config, t - fd);
        push(
            &mut checks,
            "first_order_lower",
            t,
            ddt(&lo_p, &lo_m)?.max_abs_diff(&lower.scaled(Complex64::new(0.0, -omega)))?,
            fd_tol,
        );
        push(
            &mut checks,
            "first_order_raise",
            t,
            ddt(&ra_p, &ra_m)?.max_abs_diff(&raise.scaled(Complex64::new(0.0, omega)))?,
            fd_tol,
        );

        // simple harmonic motion by second differences, relative tolerance
        let second = GeneralizedMatrix::lincomb(
            Complex64::new(1.0 / (fd * fd), 0.0),
            &GeneralizedMatrix::lincomb(
                Complex64::new(1.0, 0.0),
                &xi_p,
                Complex64::new(1.0, 0.0),
                &xi_m,
            )?,
            Complex64::new(-2.0 / (fd * fd), 0.0),
            &xi,
        )?;
        let shm_defect = second.max_abs_diff(&xi.scaled(Complex64::new(-omega * omega, 0.0)))?;
        push(
            &mut checks,
            "second_difference_shm",
            t,
            shm_defect / (omega * omega),
            1e-6,
        );

        // Hamiltonian constructions agree and do not move
        push(
            &mut checks,
            "hamiltonian_from_pair",
            t,
            hamiltonian_from_pair(config, t)?.max_abs_diff(&h1_closed)?,
            tol * hw.max(1.0),
        );
        push(
            &mut checks,
            "hamiltonian_from_ladder",
            t,
            hamiltonian_from_ladder(config, t)?.max_abs_diff(&h1_closed)?,
            tol * hw.max(1.0),
        );

        // the commutator acts diagonally on the evolving variables:
        // rank 2: (1/i hbar)[C, H] = -i omega C (the equation of motion);
        // rank 3: [C, H1, H2] = -hbar omega C, the eigenvalue action whose
        // frequency is the coboundary cochain below
        match config.rank {
            OscillatorRank::Two => {
                let h = &set.matrices()[0];
                let comm = nfold_commutator(&[&lower, h])?;
                let rhs = comm.scaled(Complex64::new(0.0, -1.0 / hbar));
                let expected = lower.scaled(Complex64::new(0.0, -omega));
                push(&mut checks, "equation_of_motion_lower", t, rhs.max_abs_diff(&expected)?, tol * omega.max(1.0));
                let comm_xi = nfold_commutator(&[&xi, h])?;
                let rhs_xi = comm_xi.scaled(Complex64::new(0.0, -1.0 / hbar));
                let expected_xi = eta.scaled(Complex64::new(omega, 0.0));
                push(&mut checks, "equation_of_motion_xi", t, rhs_xi.max_abs_diff(&expected_xi)?, tol * omega.max(1.0));
            }
            OscillatorRank::Three => {
                let args: Vec<&GeneralizedMatrix> =
                    std::iter::once(&lower).chain(set.matrices().iter()).collect();
                let comm = nfold_commutator(&args)?;
                let expected = lower.scaled(Complex64::new(-hw, 0.0));
                push(&mut checks, "eigenvalue_action_lower", t, comm.max_abs_diff(&expected)?, tol * hw.max(1.0));
                let args_xi: Vec<&GeneralizedMatrix> =
                    std::iter::once(&xi).chain(set.matrices().iter()).collect();
                let comm_xi = nfold_commutator(&args_xi)?;
                // the diagonal action pairs +eps components with -hbar omega
                // and -eps components with +hbar omega, which is omega eta
                // rotated against the evolution direction
                let expected_xi = eta.scaled(Complex64::new(0.0, -hbar * omega));
                push(&mut checks, "eigenvalue_action_xi", t, comm_xi.max_abs_diff(&expected_xi)?, tol * hw.max(1.0));
            }
        }
    }

    // frequency cochain of the rank-3 set: -(omega / 2 pi) eps, a cocycle
    if config.rank == OscillatorRank::Three {
        let nu = set.frequency_cochain()?;
        let eps = config.eps();
        let mut worst = 0.0f64;
        for_each_tuple(3, 3, |idx| {
            let expected = -omega / TWO_PI * eps.value(idx) as f64;
            worst = worst.max((nu.at(idx) - expected).abs());
        });
        push(&mut checks, "frequency_cochain_values", 0.0, worst, tol * omega.max(1.0));
        let (_, defect) = crate::cohomology::is_cocycle(&nu, 1e-12 * (1.0 + nu.max_abs()))?;
        push(&mut checks, "frequency_cochain_cocycle", 0.0, defect, 1e-12 * (1.0 + nu.max_abs()));
    } else {
        // rank 2: Bohr frequency of the level pair matches the phase of xi
        let nu = set.frequency_cochain()?;
        let expected = -omega / TWO_PI;
        push(
            &mut checks,
            "frequency_cochain_values",
            0.0,
            (nu.get(&[1, 2])? - expected).abs(),
            tol * omega.max(1.0),
        );
    }

    Ok(OscillatorReport {
        rank: n,
        omega,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(rank: OscillatorRank, omega: f64) -> OscillatorConfig {
        OscillatorConfig::new(rank, omega, PlanckConstants::natural()).unwrap()
    }

    #[test]
    fn rejects_non_positive_omega() {
        assert!(OscillatorConfig::new(OscillatorRank::Two, 0.0, PlanckConstants::natural()).is_err());
        assert!(OscillatorConfig::new(OscillatorRank::Three, -1.0, PlanckConstants::natural()).is_err());
    }

    #[test]
    fn initial_values_match_closed_forms() {
        let c3 = config(OscillatorRank::Three, 1.0);
        let (xi, eta) = xi_eta(&c3, 0.0);
        let r = 1.0 / 2f64.sqrt();
        assert!((xi.get(&[1, 2, 3]).unwrap() - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((eta.get(&[1, 2, 3]).unwrap() - Complex64::new(0.0, -r)).norm() < 1e-15);
        let (lower, raise) = ladder(&c3, 0.0);
        assert!((lower.get(&[1, 2, 3]).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(lower.get(&[2, 1, 3]).unwrap(), Complex64::ZERO);
        assert!((raise.get(&[2, 1, 3]).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let c2 = config(OscillatorRank::Two, 1.0);
        let (xi2, _) = xi_eta(&c2, 0.37);
        assert_eq!(xi2.get(&[1, 1]).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn rank2_hamiltonian_is_half_split_diagonal() {
        let c2 = config(OscillatorRank::Two, 1.0);
        let set = hamiltonian_set(&c2).unwrap();
        let h = &set.matrices()[0];
        assert!((h.get(&[1, 1]).unwrap() - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!((h.get(&[2, 2]).unwrap() - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(h.get(&[1, 2]).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn rank3_first_hamiltonian_component() {
        let c3 = config(OscillatorRank::Three, 1.0);
        let set = hamiltonian_set(&c3).unwrap();
        let h1 = &set.matrices()[0];
        // value at (1,2,2) is hbar w / 6 with eps2(1,2) = 1
        assert!((h1.get(&[1, 2, 2]).unwrap() - Complex64::new(1.0 / 6.0, 0.0)).norm() < 1e-15);
        assert_eq!(h1.get(&[1, 2, 3]).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn report_passes_for_both_ranks() {
        for (rank, omega) in [
            (OscillatorRank::Two, 1.0),
            (OscillatorRank::Two, 2.7),
            (OscillatorRank::Three, 1.0),
            (OscillatorRank::Three, 2.0),
        ] {
            let cfg = config(rank, omega);
            let report = verify_oscillator(&cfg, &[0.0, 0.3, 1.7]).unwrap();
            assert!(
                report.all_pass(),
                "rank {:?} omega {omega}: worst {:?}",
                rank,
                report.worst()
            );
        }
    }

    #[test]
    fn rank3_frequency_value() {
        let cfg = config(OscillatorRank::Three, 2.0);
        let set = hamiltonian_set(&cfg).unwrap();
        let nu = set.frequency_cochain().unwrap();
        // nu_123 = -omega / (2 pi) = -1/pi at omega = 2
        assert!((nu.get(&[1, 2, 3]).unwrap() + 1.0 / std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn ladder_is_the_complex_combination_of_the_pair() {
        // C = (xi + i eta)/sqrt 2 and C+ = (xi - i eta)/sqrt 2, componentwise
        let r = 1.0 / 2f64.sqrt();
        for rank in [OscillatorRank::Two, OscillatorRank::Three] {
            let cfg = config(rank, 1.7);
            for t in [0.0, 0.6] {
                let (xi, eta) = xi_eta(&cfg, t);
                let (lower, raise) = ladder(&cfg, t);
                let combo_lower = GeneralizedMatrix::lincomb(
                    Complex64::new(r, 0.0),
                    &xi,
                    Complex64::new(0.0, r),
                    &eta,
                )
                .unwrap();
                let combo_raise = GeneralizedMatrix::lincomb(
                    Complex64::new(r, 0.0),
                    &xi,
                    Complex64::new(0.0, -r),
                    &eta,
                )
                .unwrap();
                assert!(lower.max_abs_diff(&combo_lower).unwrap() < 1e-14);
                assert!(raise.max_abs_diff(&combo_raise).unwrap() < 1e-14);
            }
        }
        // at t = 0 the rank-3 combination lands on 1 at (1,2,3)
        let cfg = config(OscillatorRank::Three, 1.0);
        let (xi, eta) = xi_eta(&cfg, 0.0);
        let combo = GeneralizedMatrix::lincomb(
            Complex64::new(r, 0.0),
            &xi,
            Complex64::new(0.0, r),
            &eta,
        )
        .unwrap();
        assert!((combo.get(&[1, 2, 3]).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rank2_ladder_commutator_is_twice_the_half_split() {
        // [C+, C] = diag(-1, +1): twice the (-1/2, +1/2) diagonal pattern of
        // the Hamiltonian in hbar omega units
        let cfg = config(OscillatorRank::Two, 1.0);
        let (lower, raise) = ladder(&cfg, 0.0);
        let comm = crate::algebra::nfold_commutator(&[&raise, &lower]).unwrap();
        assert!((comm.get(&[1, 1]).unwrap() - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        assert!((comm.get(&[2, 2]).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(comm.get(&[1, 2]).unwrap().norm() < 1e-14);
    }

    #[test]
    fn rank3_evolution_reproduces_the_closed_form() {
        let cfg = config(OscillatorRank::Three, 1.3);
        let set = hamiltonian_set(&cfg).unwrap();
        let (xi0, _) = xi_eta(&cfg, 0.0);
        let v = crate::dynamics::EvolvingVariable::driven_by(xi0, &set).unwrap();
        for t in [0.4, 2.9] {
            let (xi_t, _) = xi_eta(&cfg, t);
            let evolved = crate::dynamics::evolve(&v, t);
            assert!(evolved.max_abs_diff(&xi_t).unwrap() < 1e-12);
        }
    }
}
