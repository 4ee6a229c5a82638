//! Named verification suites over seeded random inputs, and the JSON report
//! they produce. Every case records the measured defect against its
//! tolerance; a report passes when every case does. Reports are
//! deterministic for a fixed (seed, flags) pair up to the timestamp field:
//! per-case seeds are derived from the case label, so dispatch order cannot
//! change any number.

use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    identity_matrix, nfold_anticommutator, nfold_commutator, nfold_product, normal_matrix,
    NormalSpec,
};
use crate::cohomology::{antisymmetrize, coboundary, cyclic_defect, ritz_defect_max, Cochain};
use crate::dynamics::{
    commutator_eigenvalue, eigenvalue_multiplicity, eom_residual, fundamental_identity_defect,
    heisenberg_rhs, measured_frequency_cochain, reordered_rhs, reordering_sign, EvolvingVariable,
    HamiltonianSet,
};
use crate::error::Result;
use crate::nambu::{bracket_properties_report, integrate, nambu_bracket, NambuSystem, Poly};
use crate::oscillator::{verify_oscillator, OscillatorConfig, OscillatorRank};
use crate::perm::for_each_tuple;
use crate::spectrum::{
    beta, bohr_frequency, correspondence_error_2, correspondence_error_3, nu0_raw,
    nu_cyclic_cochain, nu_tilde, ActionEnergy1, ActionEnergy2, PairTable, PlanckConstants,
};
use crate::tensor::GeneralizedMatrix;

/// Splittable 64-bit generator; the per-case stream is derived from the
/// run seed and the case label so results do not depend on dispatch order.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn split(&self, label: &str) -> Self {
        let mut h = 0xcbf29ce484222325u64; // FNV offset basis
        for b in label.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        Self {
            state: self.state ^ h,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in (-1, 1).
    pub fn next_signed(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckCase {
    pub suite: String,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    pub check: String,
    pub max_defect: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Wall-clock stamp; the only field allowed to vary between identical runs.
    pub generated_unix_ms: u64,
    pub seed: u64,
    pub summary: ReportSummary,
    pub cases: Vec<CheckCase>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

pub struct SuiteParams {
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    pub tol: f64,
}

struct Collector<'a> {
    suite: &'a str,
    params: &'a SuiteParams,
    cases: Vec<CheckCase>,
}

impl<'a> Collector<'a> {
    fn new(suite: &'a str, params: &'a SuiteParams) -> Self {
        Self {
            suite,
            params,
            cases: Vec::new(),
        }
    }

    fn rng(&self, check: &str) -> SplitMix64 {
        SplitMix64::new(self.params.seed).split(&format!("{}/{}", self.suite, check))
    }

    fn push(&mut self, check: &str, max_defect: f64, tol: f64) {
        self.cases.push(CheckCase {
            suite: self.suite.to_string(),
            n: self.params.n,
            dim: self.params.dim,
            seed: self.params.seed,
            check: check.to_string(),
            max_defect,
            tol,
            pass: max_defect <= tol,
        });
    }

    /// For counterexample checks: the defect reported is the shortfall of
    /// the observed violation below the required size, zero when the
    /// counterexample is exhibited.
    fn push_counterexample(&mut self, check: &str, observed: f64, required: f64) {
        let shortfall = (required - observed).max(0.0);
        self.push(check, shortfall, 0.0);
    }
}

fn random_matrix(rank: usize, dim: usize, rng: &mut SplitMix64) -> GeneralizedMatrix {
    GeneralizedMatrix::from_fn(rank, dim, |_| {
        Complex64::new(rng.next_signed(), rng.next_signed())
    })
    .expect("verified shapes")
}

fn random_distinct_support(rank: usize, dim: usize, rng: &mut SplitMix64) -> GeneralizedMatrix {
    GeneralizedMatrix::from_fn(rank, dim, |idx| {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            Complex64::ZERO
        } else {
            Complex64::new(rng.next_signed(), rng.next_signed())
        }
    })
    .expect("verified shapes")
}

fn random_potentials(count: usize, dim: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| rng.next_signed()).collect())
        .collect()
}

fn random_rule_tables(count: usize, dim: usize, rng: &mut SplitMix64) -> Vec<PairTable> {
    random_potentials(count, dim, rng)
        .iter()
        .map(|e| PairTable::from_potential(e).expect("valid potential"))
        .collect()
}

fn random_antisym_table(dim: usize, rng: &mut SplitMix64) -> PairTable {
    let mut v = vec![0.0; dim * dim];
    for l in 0..dim {
        for m in (l + 1)..dim {
            let x = rng.next_signed();
            v[l * dim + m] = x;
            v[m * dim + l] = -x;
        }
    }
    PairTable::from_values(dim, v).expect("antisymmetric by construction")
}

fn all_distinct(idx: &[usize]) -> bool {
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

pub fn algebra_suite(params: &SuiteParams) -> Result<Vec<CheckCase>> {
    let mut col = Collector::new("algebra", params);
    let (n, dim, tol) = (params.n, params.dim, params.tol);

    // skew symmetry: transposing any two arguments flips the sign
    {
        let mut rng = col.rng("skew_symmetry");
        let args: Vec<GeneralizedMatrix> = (0..n).map(|_| random_matrix(n, dim, &mut rng)).collect();
        let refs: Vec<&GeneralizedMatrix> = args.iter().collect();
        let base = nfold_commutator(&refs)?;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in (a + 1)..n {
                let mut swapped = refs.clone();
                swapped.swap(a, b);
                let flipped = nfold_commutator(&swapped)?;
                let sum = GeneralizedMatrix::lincomb(
                    Complex64::new(1.0, 0.0),
                    &base,
                    Complex64::new(1.0, 0.0),
                    &flipped,
                )?;
                worst = worst.max(sum.max_abs());
            }
        }
        let scale = (1.0 + dim as f64) * refs.iter().map(|m| m.max_abs()).product::<f64>();
        col.push("skew_symmetry", worst, tol * scale.max(1.0));
    }

    // linearity in the first slot
    {
        let mut rng = col.rng("linearity");
        let a = random_matrix(n, dim, &mut rng);
        let b = random_matrix(n, dim, &mut rng);
        let rest: Vec<GeneralizedMatrix> =
            (0..n - 1).map(|_| random_matrix(n, dim, &mut rng)).collect();
        let sum = GeneralizedMatrix::lincomb(
            Complex64::new(1.0, 0.0),
            &a,
            Complex64::new(1.0, 0.0),
            &b,
        )?;
        let with = |first: &GeneralizedMatrix| -> Result<GeneralizedMatrix> {
            let mut refs: Vec<&GeneralizedMatrix> = vec![first];
            refs.extend(rest.iter());
            nfold_commutator(&refs)
        };
        let lhs = with(&sum)?;
        let rhs = GeneralizedMatrix::lincomb(
            Complex64::new(1.0, 0.0),
            &with(&a)?,
            Complex64::new(1.0, 0.0),
            &with(&b)?,
        )?;
        let scale = 1.0 + lhs.max_abs();
        col.push("linearity", lhs.max_abs_diff(&rhs)?, 1e-12 * scale * dim as f64);
    }

    if n >= 3 {
        // the product of a matrix vanishing on all-distinct tuples with
        // normal factors vanishes on the all-distinct sector
        let mut rng = col.rng("annihilation");
        let tables = random_rule_tables(n - 1, dim, &mut rng);
        let normals: Vec<GeneralizedMatrix> = tables
            .iter()
            .map(|t| normal_matrix(&NormalSpec::new(n, dim, t.values()).expect("sized")))
            .collect::<Result<_>>()?;
        let b = GeneralizedMatrix::from_fn(n, dim, |idx| {
            if all_distinct(idx) {
                Complex64::ZERO
            } else {
                Complex64::new(rng.next_signed(), rng.next_signed())
            }
        })?;
        let mut refs: Vec<&GeneralizedMatrix> = vec![&b];
        refs.extend(normals.iter());
        let prod = nfold_product(&refs)?;
        let mut worst = 0.0f64;
        for_each_tuple(n, dim, |idx| {
            if all_distinct(idx) {
                worst = worst.max(prod.at(idx).norm());
            }
        });
        col.push("annihilation_on_distinct", worst, tol);

        // identity element acts as the identity in every slot
        let id = identity_matrix(n, dim)?;
        let a = random_matrix(n, dim, &mut rng);
        let mut worst_id = 0.0f64;
        for slot in 0..n {
            let mut factors: Vec<&GeneralizedMatrix> = vec![&id; n];
            factors[slot] = &a;
            let prod = nfold_product(&factors)?;
            for_each_tuple(n, dim, |idx| {
                if all_distinct(idx) {
                    worst_id = worst_id.max((prod.at(idx) - a.at(idx)).norm());
                }
            });
        }
        col.push("identity_action", worst_id, tol * (1.0 + a.max_abs()));
    }

    // rank-2 reduction: the machinery reproduces matrix commutators
    {
        let mut rng = col.rng("rank2_reduction");
        let a = random_matrix(2, dim, &mut rng);
        let h = random_matrix(2, dim, &mut rng);
        let comm = nfold_commutator(&[&a, &h])?;
        let ab = nfold_product(&[&a, &h])?;
        let ba = nfold_product(&[&h, &a])?;
        let direct = GeneralizedMatrix::lincomb(
            Complex64::new(1.0, 0.0),
            &ab,
            Complex64::new(-1.0, 0.0),
            &ba,
        )?;
        col.push("rank2_commutator", comm.max_abs_diff(&direct)?, tol * dim as f64);
        let anti = nfold_anticommutator(&[&a, &h])?;
        let direct_anti = GeneralizedMatrix::lincomb(
            Complex64::new(1.0, 0.0),
            &ab,
            Complex64::new(1.0, 0.0),
            &ba,
        )?;
        col.push(
            "rank2_anticommutator",
            anti.max_abs_diff(&direct_anti)?,
            tol * dim as f64,
        );
    }

    // reordering the first n-2 Hamiltonians flips the stated sign
    if n >= 3 {
        let mut rng = col.rng("reordering_sign");
        let constants = PlanckConstants::natural();
        let set = HamiltonianSet::from_potentials(
            n,
            &random_potentials(n - 1, dim, &mut rng),
            constants,
        )?;
        let a = random_matrix(n, dim, &mut rng);
        let plain = heisenberg_rhs(&a, &set)?;
        let reordered = reordered_rhs(&a, &set)?;
        let expected = plain.scaled(Complex64::new(reordering_sign(n), 0.0));
        col.push(
            "reordering_sign",
            reordered.max_abs_diff(&expected)?,
            tol * set.scale() * a.max_abs().max(1.0),
        );
    }

    Ok(col.cases)
}

pub fn cohomology_suite(params: &SuiteParams) -> Result<Vec<CheckCase>> {
    let mut col = Collector::new("cohomology", params);
    let (dim, tol) = (params.dim.min(6), params.tol);

    // at least n distinct levels keep the rank-n frequency arrays away from
    // the vacuous all-repeated regime
    let freq_dim = dim.max(params.n.min(6));

    // nilpotency over random cochains of every arity up to 4
    {
        let mut rng = col.rng("nilpotency");
        let mut worst = 0.0f64;
        for k in 1..=4usize {
            let raw = Cochain::from_fn(k, dim, |_| rng.next_signed())?;
            let dd = coboundary(&coboundary(&raw)?)?;
            worst = worst.max(dd.max_abs());
        }
        col.push("nilpotency", worst, 1e-12);
    }

    // antisymmetrization is an idempotent projection
    {
        let mut rng = col.rng("antisymmetrize");
        let raw = Cochain::from_fn(3, dim, |_| rng.next_signed())?;
        let once = antisymmetrize(&raw)?;
        let twice = antisymmetrize(&once)?;
        let drift = once
            .values()
            .iter()
            .zip(twice.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        col.push("antisymmetrize_idempotent", drift.max(once.antisymmetry_defect()), 1e-12);
    }

    // the cyclic frequency of rule tables is a cocycle with zero
    // reconstruction defect
    {
        let mut rng = col.rng("frequency_cocycle");
        let n = params.n.max(3);
        let constants = PlanckConstants::natural();
        let tables = random_rule_tables(n - 1, freq_dim, &mut rng);
        let refs: Vec<&PairTable> = tables.iter().collect();
        let nu = nu_cyclic_cochain(&refs, &constants)?;
        let scale = 1.0 + nu.max_abs();
        let d = coboundary(&nu)?;
        col.push("frequency_cocycle", d.max_abs(), tol * scale);
        col.push("frequency_ritz", ritz_defect_max(&nu), tol * scale);
        col.push("frequency_antisymmetry", nu.antisymmetry_defect(), tol * scale);

        // the coboundary-built frequency is a cocycle without any rule
        let tilde_tables: Vec<PairTable> =
            (0..n - 2).map(|_| random_antisym_table(freq_dim, &mut rng)).collect();
        let tilde_refs: Vec<&PairTable> = tilde_tables.iter().collect();
        let tilde = nu_tilde(&tilde_refs, n, &constants)?;
        let dt = coboundary(&tilde)?;
        col.push("coboundary_frequency_cocycle", dt.max_abs(), tol * (1.0 + tilde.max_abs()));
    }

    // a random antisymmetric 3-cochain generically fails the cocycle test
    {
        let mut rng = col.rng("random_noncocycle");
        let raw = Cochain::from_fn(3, dim.max(4), |_| rng.next_signed())?;
        let anti = antisymmetrize(&raw)?;
        let defect = coboundary(&anti)?.max_abs();
        col.push_counterexample(
            "random_cochain_is_no_cocycle",
            defect,
            1e-3 * (1.0 + anti.max_abs()),
        );
    }

    // the raw determinant frequency is cyclic exactly when the tables
    // follow the combination rule
    {
        let mut rng = col.rng("hidden_cyclicity");
        let n = params.n.max(3);
        let constants = PlanckConstants::natural();
        let b = beta(n, &constants)?;
        let tables = random_rule_tables(n - 1, freq_dim, &mut rng);
        let refs: Vec<&PairTable> = tables.iter().collect();
        let raw = nu0_raw(&refs, b)?;
        let mut worst = 0.0f64;
        for p in 1..n {
            worst = worst.max(cyclic_defect(&raw, p));
        }
        col.push("hidden_cyclicity", worst, tol * (1.0 + raw.max_abs()));

        let bad_tables: Vec<PairTable> =
            (0..n - 1).map(|_| random_antisym_table(freq_dim, &mut rng)).collect();
        let bad_refs: Vec<&PairTable> = bad_tables.iter().collect();
        let bad_raw = nu0_raw(&bad_refs, b)?;
        col.push_counterexample(
            "hidden_cyclicity_needs_rule",
            cyclic_defect(&bad_raw, 1),
            1e-3 * (1.0 + bad_raw.max_abs()),
        );
    }

    Ok(col.cases)
}

pub fn spectrum_suite(params: &SuiteParams) -> Result<Vec<CheckCase>> {
    let mut col = Collector::new("spectrum", params);
    let (dim, tol) = (params.dim, params.tol);
    let constants = PlanckConstants::natural();

    // Bohr frequencies telescope
    {
        let mut rng = col.rng("bohr");
        let e: Vec<f64> = (0..dim).map(|_| rng.next_signed()).collect();
        let mut worst = 0.0f64;
        for m in 1..=dim {
            for n in 1..=dim {
                for k in 1..=dim {
                    let direct = bohr_frequency(&e, m, n, &constants)?;
                    let via = bohr_frequency(&e, m, k, &constants)?
                        + bohr_frequency(&e, k, n, &constants)?;
                    worst = worst.max((direct - via).abs());
                }
            }
        }
        col.push("bohr_telescoping", worst, 1e-12);
    }

    // cyclic frequency coincides with the probe eigenvalue after the
    // multiplicity rescaling
    {
        let mut rng = col.rng("frequency_vs_probe");
        let n = params.n.max(3);
        let set = HamiltonianSet::from_potentials(
            n,
            &random_potentials(n - 1, dim.max(n), &mut rng),
            constants,
        )?;
        let nu = measured_frequency_cochain(&set)?;
        let h = constants.h();
        let mut worst = 0.0f64;
        for_each_tuple(n, dim.max(n), |idx| {
            if all_distinct(idx) {
                let f = commutator_eigenvalue(&set, idx).expect("probe");
                worst = worst.max((f + h * nu.at(idx)).abs());
            }
        });
        col.push("frequency_matches_probe", worst, tol * set.scale());
    }

    // correspondence rates
    {
        let energy = ActionEnergy1 {
            value: &|j| j * j,
            derivative: &|j| 2.0 * j,
        };
        let mut worst = 0.0f64;
        for level in [10u64, 100, 1000] {
            let err = correspondence_error_2(&energy, 0.5, level, 1)?;
            worst = worst.max((err - 1.0 / (2.0 * level as f64)).abs());
        }
        col.push("correspondence_rank2_rate", worst, 1e-12);

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
        let coarse = correspondence_error_3(&q1, &q2, 0.5, (50, 50), (1, 1))?;
        let fine = correspondence_error_3(&q1, &q2, 0.5, (500, 500), (1, 1))?;
        // first-order decay: ten times the levels cuts the error by ~10
        let rate_defect = if fine > 0.0 {
            ((coarse / fine) - 10.0).abs() / 10.0
        } else {
            0.0
        };
        col.push("correspondence_rank3_rate", rate_defect, 0.2);
    }

    Ok(col.cases)
}

pub fn dynamics_suite(params: &SuiteParams) -> Result<Vec<CheckCase>> {
    let mut col = Collector::new("dynamics", params);
    let (n, dim, tol) = (params.n, params.dim, params.tol);
    let constants = PlanckConstants::natural();

    // equation of motion with the measured frequency cochain
    {
        let mut rng = col.rng("equation_of_motion");
        let set = HamiltonianSet::from_potentials(
            n,
            &random_potentials(n - 1, dim, &mut rng),
            constants,
        )?;
        let a0 = random_matrix(n, dim, &mut rng);
        let scale = set.scale() * a0.max_abs();
        let nu = if n == 2 {
            set.frequency_cochain()?
        } else {
            measured_frequency_cochain(&set)?
        };
        let v = EvolvingVariable::new(a0, nu)?;
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let t = 4.0 * rng.next_signed();
            worst = worst.max(eom_residual(&v, &set, t)?);
        }
        col.push("equation_of_motion", worst, tol * scale.max(1.0));

        // conservation and stationarity of the repeated-index sector
        let mut worst_cons = 0.0f64;
        for h in set.matrices() {
            worst_cons = worst_cons.max(heisenberg_rhs(h, &set)?.max_abs());
        }
        col.push("hamiltonians_conserved", worst_cons, tol * set.scale().max(1.0));

        let mut rng2 = col.rng("repeated_sector");
        let a = random_matrix(n, dim, &mut rng2);
        let rhs = heisenberg_rhs(&a, &set)?;
        let mut worst_rep = 0.0f64;
        for_each_tuple(n, dim, |idx| {
            if !all_distinct(idx) {
                worst_rep = worst_rep.max(rhs.at(idx).norm());
            }
        });
        col.push("repeated_sector_stationary", worst_rep, tol * set.scale() * a.max_abs());
    }

    if n >= 3 {
        // probe eigenvalues carry the bijection-count multiplicity n - 2
        // relative to the single-reference determinant frequency
        {
            let mut rng = col.rng("eigenvalue_multiplicity");
            let set = HamiltonianSet::from_potentials(
                n,
                &random_potentials(n - 1, dim.max(n), &mut rng),
                constants,
            )?;
            let nu = set.frequency_cochain()?;
            let h = constants.h();
            let mult = eigenvalue_multiplicity(n)? as f64;
            let g = crate::spectrum::gamma(n)? as f64;
            let mut worst = 0.0f64;
            for_each_tuple(n, dim.max(n), |idx| {
                if all_distinct(idx) {
                    let f = commutator_eigenvalue(&set, idx).expect("probe");
                    worst = worst.max((f + h * nu.at(idx) * mult / g).abs());
                }
            });
            col.push("eigenvalue_multiplicity", worst, tol * set.scale());
        }

        // translation symmetry on the dynamical sector
        {
            let mut rng = col.rng("translation");
            let set = HamiltonianSet::from_potentials(
                n,
                &random_potentials(n - 1, dim, &mut rng),
                constants,
            )?;
            let shifts: Vec<f64> = (0..n - 1).map(|_| rng.next_signed()).collect();
            let moved = set.shifted(&shifts)?;
            let a = random_distinct_support(n, dim, &mut rng);
            let base = heisenberg_rhs(&a, &set)?;
            let after = heisenberg_rhs(&a, &moved)?;
            col.push(
                "translation_invariance",
                base.max_abs_diff(&after)?,
                tol * set.scale().max(1.0) * a.max_abs().max(1.0),
            );
        }

        // conditional fundamental identity at rank 3
        if n == 3 {
            let mut rng = col.rng("fundamental_identity");
            let set = HamiltonianSet::from_potentials(
                3,
                &random_potentials(2, dim, &mut rng),
                constants,
            )?;
            let args: Vec<GeneralizedMatrix> =
                (0..3).map(|_| random_matrix(3, dim, &mut rng)).collect();
            let arg_refs: Vec<&GeneralizedMatrix> = args.iter().collect();
            let gen_refs: Vec<&GeneralizedMatrix> = set.matrices().iter().collect();
            let defects = fundamental_identity_defect(&arg_refs, &gen_refs)?;
            let scale = set.scale().powi(2)
                * args.iter().map(|m| m.max_abs()).fold(1.0f64, f64::max);
            col.push("fundamental_identity", defects.fundamental, tol * scale);
            col.push("derivation_rule", defects.derivation, tol * scale);

            let bad_tables =
                vec![random_antisym_table(dim, &mut rng), random_antisym_table(dim, &mut rng)];
            let bad = HamiltonianSet::from_tables(3, bad_tables, constants)?;
            let bad_refs: Vec<&GeneralizedMatrix> = bad.matrices().iter().collect();
            let bad_defects = fundamental_identity_defect(&arg_refs, &bad_refs)?;
            col.push_counterexample(
                "fundamental_identity_needs_cocycle",
                bad_defects.fundamental,
                1e-3,
            );
        }

        // coboundary branch: diagonal action matching its frequency cochain
        {
            let mut rng = col.rng("coboundary_action");
            let tables: Vec<PairTable> =
                (0..n - 2).map(|_| random_antisym_table(dim.max(n), &mut rng)).collect();
            let set = HamiltonianSet::coboundary_set(n, tables, constants)?;
            let tilde = set.frequency_cochain()?;
            let h = constants.h();
            let g = crate::spectrum::gamma(n)? as f64;
            let mut worst = 0.0f64;
            for_each_tuple(n, dim.max(n), |idx| {
                if all_distinct(idx) {
                    let f = commutator_eigenvalue(&set, idx).expect("probe");
                    worst = worst.max((f - h * tilde.at(idx) / g).abs());
                }
            });
            col.push("coboundary_eigenvalue_action", worst, tol * set.scale());
        }
    }

    Ok(col.cases)
}

pub fn oscillator_suite(params: &SuiteParams) -> Result<Vec<CheckCase>> {
    let mut col = Collector::new("oscillator", params);
    for (rank, omega) in [(OscillatorRank::Two, 1.0), (OscillatorRank::Three, 1.0)] {
        let config = OscillatorConfig::new(rank, omega, PlanckConstants::natural())?;
        let report = verify_oscillator(&config, &[0.0, 0.3, 1.7])?;
        for check in report.checks {
            col.push(
                &format!("rank{}_{}", report.rank, check.name),
                check.defect,
                check.tol,
            );
        }
    }
    // deduplicate repeated time samples: keep the worst defect per name
    let mut best: Vec<CheckCase> = Vec::new();
    for case in col.cases {
        match best.iter_mut().find(|c| c.check == case.check) {
            Some(existing) => {
                if case.max_defect > existing.max_defect {
                    *existing = case;
                }
            }
            None => best.push(case),
        }
    }
    Ok(best)
}

pub fn nambu_suite(params: &SuiteParams) -> Result<Vec<CheckCase>> {
    let mut col = Collector::new("nambu", params);

    // unit Jacobian of the coordinate functions
    {
        let fx = |p: &[f64]| p[0];
        let fy = |p: &[f64]| p[1];
        let fz = |p: &[f64]| p[2];
        let v = nambu_bracket(&[&fx, &fy, &fz], &[0.4, -0.7, 1.2], 1e-5)?;
        col.push("coordinate_bracket_unit", (v - 1.0).abs(), 1e-9);
    }

    // bracket properties on polynomial inputs
    {
        let mut rng = col.rng("bracket_properties");
        let mut poly = |max_deg: u32| {
            let mut terms = Vec::new();
            for _ in 0..4 {
                let exps: Vec<u32> = (0..3)
                    .map(|_| (rng.next_u64() % (max_deg as u64 + 1)) as u32)
                    .collect();
                terms.push((rng.next_signed(), exps));
            }
            Poly::new(3, terms).expect("sized terms")
        };
        let funcs = [poly(2), poly(2), poly(2)];
        let gens = [poly(1), poly(1)];
        let points: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..3).map(|_| rng.next_signed()).collect())
            .collect();
        let report = bracket_properties_report(&funcs, &gens, &points, 1e-5)?;
        col.push("bracket_skew_exact", report.skew_exact, 1e-9);
        col.push("bracket_linearity_exact", report.linearity_exact, 1e-9);
        col.push("bracket_fundamental_identity", report.fundamental_exact, 1e-9);
        col.push("bracket_derivation_rule", report.derivation_exact, 1e-9);
        col.push("bracket_skew_fd", report.skew_fd, 1e-7);
        col.push("bracket_linearity_fd", report.linearity_fd, 1e-7);
    }

    // conservation along the quadratic demo system
    {
        let h1 = Poly::new(
            3,
            vec![(0.5, vec![2, 0, 0]), (0.5, vec![0, 2, 0]), (0.5, vec![0, 0, 2])],
        )?;
        let h2 = Poly::new(
            3,
            vec![(0.5, vec![2, 0, 0]), (0.25, vec![0, 2, 0]), (1.0 / 6.0, vec![0, 0, 2])],
        )?;
        let sys = NambuSystem::new(3, vec![h1, h2], 1e-5)?;
        let traj = integrate(&sys, &[1.0, 0.3, 0.5], 10.0, 1e-3)
            .map_err(|(e, _)| e)?;
        let drift = traj.max_drift().into_iter().fold(0.0f64, f64::max);
        col.push("demo_conservation_drift", drift, 1e-8);

        // integrator order by step halving against a fine reference
        let reference = integrate(&sys, &[1.0, 0.3, 0.5], 2.0, 1e-4).map_err(|(e, _)| e)?;
        let xref = reference.points.last().expect("nonempty").clone();
        let coarse = integrate(&sys, &[1.0, 0.3, 0.5], 2.0, 0.02).map_err(|(e, _)| e)?;
        let fine = integrate(&sys, &[1.0, 0.3, 0.5], 2.0, 0.01).map_err(|(e, _)| e)?;
        let err = |t: &crate::nambu::Trajectory| {
            t.points
                .last()
                .expect("nonempty")
                .iter()
                .zip(&xref)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let order = (err(&coarse) / err(&fine)).log2();
        col.push("integrator_order", (4.0 - order).max(0.0), 0.2);
    }

    // bracket finite differences converge at second order; cubic terms keep
    // the truncation error above rounding noise
    {
        let h = Poly::new(3, vec![(1.0, vec![3, 1, 0]), (0.5, vec![0, 3, 1])])?;
        let g = Poly::new(3, vec![(1.0, vec![1, 0, 3]), (-0.3, vec![0, 3, 0])])?;
        let z = Poly::coordinate(3, 2);
        let at = [0.7, -0.4, 1.1];
        let exact = crate::nambu::nambu_bracket_exact_at(&[&h, &g, &z], &at)?;
        let eval_fd = |step: f64| -> Result<f64> {
            let fh = |p: &[f64]| h.eval(p);
            let fg = |p: &[f64]| g.eval(p);
            let fzf = |p: &[f64]| p[2];
            nambu_bracket(&[&fh, &fg, &fzf], &at, step)
        };
        let e1 = (eval_fd(1e-3)? - exact).abs();
        let e2 = (eval_fd(5e-4)? - exact).abs();
        let observed = (e1 / e2).log2();
        col.push("bracket_fd_second_order", (2.0 - observed).abs(), 0.3);
    }

    Ok(col.cases)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Cohomology,
    Spectrum,
    Dynamics,
    Oscillator,
    Nambu,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "algebra" => Suite::Algebra,
            "cohomology" => Suite::Cohomology,
            "spectrum" => Suite::Spectrum,
            "dynamics" => Suite::Dynamics,
            "oscillator" => Suite::Oscillator,
            "nambu" => Suite::Nambu,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

fn worker_cap() -> usize {
    std::env::var("GMM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|v| v.get())
                .unwrap_or(1)
        })
}

type SuiteFn = fn(&SuiteParams) -> Result<Vec<CheckCase>>;

/// Run the selected suites and assemble the deterministic report. Suites run
/// on a small worker pool capped by GMM_THREADS; cases are sorted by key
/// before the report is assembled, so scheduling cannot reorder anything.
pub fn run_verification(suite: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    let started = std::time::Instant::now();
    let selected: Vec<(&str, SuiteFn)> = match suite {
        Suite::Algebra => vec![("algebra", algebra_suite as SuiteFn)],
        Suite::Cohomology => vec![("cohomology", cohomology_suite as SuiteFn)],
        Suite::Spectrum => vec![("spectrum", spectrum_suite as SuiteFn)],
        Suite::Dynamics => vec![("dynamics", dynamics_suite as SuiteFn)],
        Suite::Oscillator => vec![("oscillator", oscillator_suite as SuiteFn)],
        Suite::Nambu => vec![("nambu", nambu_suite as SuiteFn)],
        Suite::All => vec![
            ("algebra", algebra_suite as SuiteFn),
            ("cohomology", cohomology_suite as SuiteFn),
            ("spectrum", spectrum_suite as SuiteFn),
            ("dynamics", dynamics_suite as SuiteFn),
            ("oscillator", oscillator_suite as SuiteFn),
            ("nambu", nambu_suite as SuiteFn),
        ],
    };

    let cap = worker_cap().max(1);
    let mut cases: Vec<CheckCase> = Vec::new();
    let mut results: Vec<Result<Vec<CheckCase>>> = Vec::new();
    for chunk in selected.chunks(cap) {
        let mut chunk_results: Vec<Option<Result<Vec<CheckCase>>>> =
            (0..chunk.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (_, run) in chunk {
                handles.push(scope.spawn(move || run(params)));
            }
            for (slot, handle) in chunk_results.iter_mut().zip(handles) {
                *slot = Some(handle.join().expect("suite worker panicked"));
            }
        });
        results.extend(chunk_results.into_iter().flatten());
    }
    for r in results {
        cases.extend(r?);
    }
    cases.sort_by(|a, b| {
        (&a.suite, &a.check, a.n, a.dim).cmp(&(&b.suite, &b.check, b.n, b.dim))
    });

    let passed = cases.iter().filter(|c| c.pass).count();
    let failed = cases.len() - passed;
    Ok(VerificationReport {
        generated_unix_ms: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0),
        seed: params.seed,
        summary: ReportSummary {
            total: cases.len(),
            passed,
            failed,
            wall_ms: started.elapsed().as_millis() as u64,
        },
        cases,
    })
}
