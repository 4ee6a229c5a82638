//! Time evolution and the structures around the equation of motion: normal
//! Hamiltonian sets, phase evolution, commutator right-hand sides and their
//! residuals, eigenvalue probes, table-translation symmetry, the conditional
//! fundamental identity and the rank-3 infinitesimal transformation.

use num_complex::Complex64;

use crate::algebra::{
    identity_matrix, nfold_commutator, nfold_commutator_at, nfold_product, normal_matrix,
    normal_matrix_unchecked, NormalSpec,
};
use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::perm::for_each_tuple;
use crate::spectrum::{nu_cyclic_cochain, nu_tilde, PairTable, PlanckConstants, TWO_PI};
use crate::tensor::GeneralizedMatrix;

/// How a Hamiltonian set was built; decides which frequency cochain drives
/// its solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
enum SetKind {
    /// n-1 normal forms from antisymmetric pair tables (for rank 2: the
    /// diagonal matrix of a level potential).
    Standard,
    /// n-2 normal forms from antisymmetric tables plus the identity element
    /// in the last slot.
    Coboundary,
    /// Off-diagonal translation of a standard set; tables are no longer
    /// antisymmetric and no frequency cochain is attached.
    Shifted,
}

/// Ordered list of n-1 conserved normal Hamiltonians together with their
/// source tables and constants.
#[derive(Clone, Debug)]
pub struct HamiltonianSet {
    rank: usize,
    dim: usize,
    constants: PlanckConstants,
    matrices: Vec<GeneralizedMatrix>,
    tables: Vec<PairTable>,
    kind: SetKind,
}

impl HamiltonianSet {
    /// Standard set from level potentials, one per Hamiltonian. For rank 2
    /// the single Hamiltonian is the diagonal matrix of the potential; for
    /// rank >= 3 each Hamiltonian is the normal form of the difference table.
    pub fn from_potentials(
        rank: usize,
        potentials: &[Vec<f64>],
        constants: PlanckConstants,
    ) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Domain("rank must be at least 2".into()));
        }
        if potentials.len() != rank - 1 {
            return Err(Error::ArityMismatch {
                rank,
                expected: rank - 1,
                got: potentials.len(),
            });
        }
        let dim = potentials[0].len();
        if potentials.iter().any(|e| e.len() != dim) {
            return Err(Error::Validation(
                "all potentials must have the same number of levels".into(),
            ));
        }
        let tables: Vec<PairTable> = potentials
            .iter()
            .map(|e| PairTable::from_potential(e))
            .collect::<Result<_>>()?;
        let matrices = if rank == 2 {
            vec![GeneralizedMatrix::from_fn(2, dim, |idx| {
                if idx[0] == idx[1] {
                    Complex64::new(potentials[0][idx[0] - 1], 0.0)
                } else {
                    Complex64::ZERO
                }
            })?]
        } else {
            tables
                .iter()
                .map(|t| normal_matrix(&NormalSpec::new(rank, dim, t.values())?))
                .collect::<Result<_>>()?
        };
        Ok(Self {
            rank,
            dim,
            constants,
            matrices,
            tables,
            kind: SetKind::Standard,
        })
    }

    /// Standard set from ready-made antisymmetric tables (rank >= 3; a rank-2
    /// set needs level values, which a combination-rule table determines up
    /// to an irrelevant constant).
    pub fn from_tables(
        rank: usize,
        tables: Vec<PairTable>,
        constants: PlanckConstants,
    ) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Domain("rank must be at least 2".into()));
        }
        if tables.len() != rank - 1 {
            return Err(Error::ArityMismatch {
                rank,
                expected: rank - 1,
                got: tables.len(),
            });
        }
        let dim = tables[0].dim();
        if tables.iter().any(|t| t.dim() != dim) {
            return Err(Error::Validation(
                "all pair tables must share one dimension".into(),
            ));
        }
        if rank == 2 {
            if !tables[0].satisfies_combination_rule() {
                return Err(Error::Domain(
                    "a rank-2 set needs a combination-rule table to recover level values".into(),
                ));
            }
            let e: Vec<f64> = (1..=dim).map(|l| tables[0].entry(l, 1)).collect();
            return Self::from_potentials(2, &[e], constants);
        }
        let matrices = tables
            .iter()
            .map(|t| normal_matrix(&NormalSpec::new(rank, dim, t.values())?))
            .collect::<Result<_>>()?;
        Ok(Self {
            rank,
            dim,
            constants,
            matrices,
            tables,
            kind: SetKind::Standard,
        })
    }

    /// Coboundary-branch set: n-2 normal forms from antisymmetric tables
    /// (combination rule not required) with the identity element appended as
    /// the last Hamiltonian.
    pub fn coboundary_set(
        rank: usize,
        tables: Vec<PairTable>,
        constants: PlanckConstants,
    ) -> Result<Self> {
        if rank < 3 {
            return Err(Error::Domain(
                "the coboundary branch needs rank >= 3".into(),
            ));
        }
        if tables.len() != rank - 2 {
            return Err(Error::ArityMismatch {
                rank,
                expected: rank - 2,
                got: tables.len(),
            });
        }
        let dim = tables[0].dim();
        if tables.iter().any(|t| t.dim() != dim) {
            return Err(Error::Validation(
                "all pair tables must share one dimension".into(),
            ));
        }
        let mut matrices: Vec<GeneralizedMatrix> = tables
            .iter()
            .map(|t| normal_matrix(&NormalSpec::new(rank, dim, t.values())?))
            .collect::<Result<_>>()?;
        matrices.push(identity_matrix(rank, dim)?);
        Ok(Self {
            rank,
            dim,
            constants,
            matrices,
            tables,
            kind: SetKind::Coboundary,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &PlanckConstants {
        &self.constants
    }

    pub fn matrices(&self) -> &[GeneralizedMatrix] {
        &self.matrices
    }

    pub fn tables(&self) -> &[PairTable] {
        &self.tables
    }

    pub fn is_coboundary(&self) -> bool {
        self.kind == SetKind::Coboundary
    }

    /// Size scale of commutator outputs: every term is a product of n-1
    /// table entries summed over one level index.
    pub fn scale(&self) -> f64 {
        let mut s = self.dim as f64;
        for t in &self.tables {
            s *= t.max_abs().max(1e-30);
        }
        if self.kind == SetKind::Coboundary {
            // the identity slot contributes entries of size 1
            s = s.max(self.dim as f64);
        }
        s
    }

    /// The frequency cochain attached to the set: Bohr differences for rank
    /// 2, the cyclic determinant form for a standard rank >= 3 set, and the
    /// coboundary solution for a coboundary set. Shifted sets carry none.
    pub fn frequency_cochain(&self) -> Result<Cochain> {
        match self.kind {
            SetKind::Shifted => Err(Error::Domain(
                "translated sets do not carry a frequency cochain".into(),
            )),
            SetKind::Coboundary => {
                let refs: Vec<&PairTable> = self.tables.iter().collect();
                nu_tilde(&refs, self.rank, &self.constants)
            }
            SetKind::Standard => {
                if self.rank == 2 {
                    let h = self.constants.h();
                    let t = &self.tables[0];
                    Cochain::from_fn(2, self.dim, |idx| t.entry(idx[0], idx[1]) / h)
                } else {
                    let refs: Vec<&PairTable> = self.tables.iter().collect();
                    nu_cyclic_cochain(&refs, &self.constants)
                }
            }
        }
    }

    /// Translate every off-diagonal table entry of Hamiltonian a by c[a]
    /// (diagonal kept zero) and rebuild the normal forms. The translated
    /// tables are deliberately not antisymmetric; only the commutator-level
    /// equality on the dynamical sector is meaningful for the result.
    pub fn shifted(&self, c: &[f64]) -> Result<Self> {
        if self.kind != SetKind::Standard || self.rank < 3 {
            return Err(Error::Domain(
                "translation applies to standard sets of rank >= 3".into(),
            ));
        }
        if c.len() != self.rank - 1 {
            return Err(Error::ArityMismatch {
                rank: self.rank,
                expected: self.rank - 1,
                got: c.len(),
            });
        }
        let dim = self.dim;
        let matrices = self
            .tables
            .iter()
            .zip(c)
            .map(|(t, &shift)| {
                let mut v = t.values().to_vec();
                for l in 0..dim {
                    for m in 0..dim {
                        if l != m {
                            v[l * dim + m] += shift;
                        }
                    }
                }
                normal_matrix_unchecked(&NormalSpec::new(self.rank, dim, &v)?)
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            rank: self.rank,
            dim,
            constants: self.constants,
            matrices,
            tables: self.tables.clone(),
            kind: SetKind::Shifted,
        })
    }
}

/// A dynamical variable: initial values plus the frequency cochain that
/// rotates each component.
#[derive(Clone, Debug)]
pub struct EvolvingVariable {
    pub a0: GeneralizedMatrix,
    pub nu: Cochain,
}

impl EvolvingVariable {
    pub fn new(a0: GeneralizedMatrix, nu: Cochain) -> Result<Self> {
        if a0.rank() != nu.arity() || a0.dim() != nu.dim() {
            return Err(Error::ShapeMismatch {
                expected_rank: a0.rank(),
                expected_dim: a0.dim(),
                rank: nu.arity(),
                dim: nu.dim(),
            });
        }
        Ok(Self { a0, nu })
    }

    /// Initial data with the frequency cochain of a Hamiltonian set.
    pub fn driven_by(a0: GeneralizedMatrix, set: &HamiltonianSet) -> Result<Self> {
        let nu = set.frequency_cochain()?;
        Self::new(a0, nu)
    }
}

/// Pure phase rotation: A(t) = A(0) * exp(2 pi i nu t) componentwise.
/// Components with repeated indices carry zero frequency for antisymmetric
/// cochains and stay constant.
pub fn evolve(v: &EvolvingVariable, t: f64) -> GeneralizedMatrix {
    let nu = &v.nu;
    let mut out = v.a0.clone();
    let mut result = Vec::with_capacity(v.a0.data().len());
    for_each_tuple(v.a0.rank(), v.a0.dim(), |idx| {
        let phase = Complex64::from_polar(1.0, TWO_PI * nu.at(idx) * t);
        result.push(v.a0.at(idx) * phase);
    });
    let mut i = 0usize;
    for_each_tuple(v.a0.rank(), v.a0.dim(), |idx| {
        out.set(idx, result[i]).expect("enumerated tuple is valid");
        i += 1;
    });
    out
}

/// Right-hand side of the equation of motion: (1 / i hbar) [A, H_1 ... H_{n-1}].
pub fn heisenberg_rhs(a: &GeneralizedMatrix, set: &HamiltonianSet) -> Result<GeneralizedMatrix> {
    if a.rank() != set.rank || a.dim() != set.dim {
        return Err(Error::ShapeMismatch {
            expected_rank: set.rank,
            expected_dim: set.dim,
            rank: a.rank(),
            dim: a.dim(),
        });
    }
    let mut args: Vec<&GeneralizedMatrix> = Vec::with_capacity(set.rank);
    args.push(a);
    args.extend(set.matrices.iter());
    let comm = nfold_commutator(&args)?;
    // 1/(i hbar) = -i / hbar
    Ok(comm.scaled(Complex64::new(0.0, -1.0 / set.constants.hbar())))
}

/// Variant with the first n-2 Hamiltonians in reversed order. Differs from
/// the plain right-hand side by the sign (-1)^{(n-2)(n-3)/2}, a direct
/// consequence of the commutator's skew symmetry.
pub fn reordered_rhs(a: &GeneralizedMatrix, set: &HamiltonianSet) -> Result<GeneralizedMatrix> {
    if a.rank() != set.rank || a.dim() != set.dim {
        return Err(Error::ShapeMismatch {
            expected_rank: set.rank,
            expected_dim: set.dim,
            rank: a.rank(),
            dim: a.dim(),
        });
    }
    let n = set.rank;
    let mut args: Vec<&GeneralizedMatrix> = Vec::with_capacity(n);
    args.push(a);
    for k in (0..n.saturating_sub(2)).rev() {
        args.push(&set.matrices[k]);
    }
    if n >= 2 {
        args.push(&set.matrices[n - 2]);
    }
    let comm = nfold_commutator(&args)?;
    Ok(comm.scaled(Complex64::new(0.0, -1.0 / set.constants.hbar())))
}

/// Sign relating the plain and reordered right-hand sides.
pub fn reordering_sign(n: usize) -> f64 {
    if ((n - 2) * (n - 3) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Max-norm residual of the equation of motion at time t for a variable
/// evolving with its frequency cochain: |2 pi i nu A(t) - rhs(A(t))|.
pub fn eom_residual(v: &EvolvingVariable, set: &HamiltonianSet, t: f64) -> Result<f64> {
    let at = evolve(v, t);
    let rhs = heisenberg_rhs(&at, set)?;
    let mut worst = 0.0f64;
    for_each_tuple(set.rank, set.dim, |idx| {
        let lhs = Complex64::new(0.0, TWO_PI * v.nu.at(idx)) * at.at(idx);
        worst = worst.max((lhs - rhs.at(idx)).norm());
    });
    Ok(worst)
}

/// Scalar by which the commutator with the set multiplies a probe component
/// at the given tuple. A probe is a matrix with a single unit entry; the
/// commutator maps it to (eigenvalue) * probe at that tuple.
pub fn commutator_eigenvalue(set: &HamiltonianSet, idx: &[usize]) -> Result<f64> {
    let mut probe = GeneralizedMatrix::zeros(set.rank, set.dim)?;
    probe.set(idx, Complex64::new(1.0, 0.0))?;
    let mut args: Vec<&GeneralizedMatrix> = Vec::with_capacity(set.rank);
    args.push(&probe);
    args.extend(set.matrices.iter());
    let value = nfold_commutator_at(&args, idx)?;
    if value.im.abs() > 1e-9 * (1.0 + value.norm()) {
        return Err(Error::Validation(format!(
            "eigenvalue probe produced a non-real value {value} at {idx:?}"
        )));
    }
    Ok(value.re)
}

/// Number of signed table-to-slot assignments that survive when the n-fold
/// commutator of normal forms collapses onto a probe component: n - 2 for
/// every rank n >= 3 (each of the n-1 Hamiltonian slots excludes one row,
/// and the signed count of bijections avoiding a perfect matching has
/// magnitude n - 2).
pub fn eigenvalue_multiplicity(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::Domain(
            "the eigenvalue multiplicity is defined for rank >= 3".into(),
        ));
    }
    Ok(n - 2)
}

/// Frequency cochain nu_m with [A, H_1, ..., H_{n-1}] = -h nu_m A on the
/// dynamical sector, i.e. the cochain against which the measured commutator
/// eigenvalues close exactly. For a standard rank >= 3 set this is the
/// cyclic determinant form rescaled from the odd-rank multiplicity
/// convention to the observed count n - 2; for a coboundary set the
/// coboundary form flips sign and sheds its multiplicity prefactor.
pub fn measured_frequency_cochain(set: &HamiltonianSet) -> Result<Cochain> {
    let nu = set.frequency_cochain()?;
    if set.rank == 2 {
        return Ok(nu);
    }
    let g = crate::spectrum::gamma(set.rank)? as f64;
    let factor = match set.kind {
        SetKind::Standard => eigenvalue_multiplicity(set.rank)? as f64 / g,
        SetKind::Coboundary => -1.0 / g,
        SetKind::Shifted => unreachable!("shifted sets carry no frequency cochain"),
    };
    Cochain::from_fn(set.rank, set.dim, |idx| factor * nu.at(idx))
}

/// Both defects of the conditional identities for the n-fold commutator with
/// normal generators: the fundamental identity and the derivation rule.
#[derive(Clone, Copy, Debug)]
pub struct IdentityDefects {
    pub fundamental: f64,
    pub derivation: f64,
}

/// Brute-force evaluation of the fundamental identity
///   [[A_1..A_n], B...] = sum_i [A_1, .., [A_i, B...], .., A_n]
/// and the derivation rule (same shape with the outer commutator replaced by
/// the n-fold product). Both hold when the generator eigenvalue cochain is a
/// cocycle and fail otherwise.
pub fn fundamental_identity_defect(
    args: &[&GeneralizedMatrix],
    generators: &[&GeneralizedMatrix],
) -> Result<IdentityDefects> {
    let n = args.len();
    if n < 2 || generators.len() != n - 1 {
        return Err(Error::ArityMismatch {
            rank: n,
            expected: n.saturating_sub(1),
            got: generators.len(),
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let bracket = |m: &GeneralizedMatrix| -> Result<GeneralizedMatrix> {
        let mut ba: Vec<&GeneralizedMatrix> = vec![m];
        ba.extend(generators.iter().copied());
        nfold_commutator(&ba)
    };

    let inner = nfold_commutator(args)?;
    let lhs_fi = bracket(&inner)?;
    let prod = nfold_product(args)?;
    let lhs_dr = bracket(&prod)?;

    let mut rhs_fi = GeneralizedMatrix::zeros(inner.rank(), inner.dim())?;
    let mut rhs_dr = rhs_fi.clone();
    for i in 0..n {
        let replaced = bracket(args[i])?;
        let mut outer: Vec<&GeneralizedMatrix> = args.to_vec();
        outer[i] = &replaced;
        let fi_term = nfold_commutator(&outer)?;
        rhs_fi = GeneralizedMatrix::lincomb(one, &rhs_fi, one, &fi_term)?;
        let dr_term = nfold_product(&outer)?;
        rhs_dr = GeneralizedMatrix::lincomb(one, &rhs_dr, one, &dr_term)?;
    }
    Ok(IdentityDefects {
        fundamental: lhs_fi.max_abs_diff(&rhs_fi)?,
        derivation: lhs_dr.max_abs_diff(&rhs_dr)?,
    })
}

/// Rank-3 infinitesimal transformation A -> A + eps [A, G1, G2] for normal
/// cubic generators, together with the worst deviation of the commutator
/// from its closed six-term multiplier acting componentwise on A.
pub fn infinitesimal_transform(
    a: &GeneralizedMatrix,
    g1: &PairTable,
    g2: &PairTable,
    eps: f64,
) -> Result<(GeneralizedMatrix, f64)> {
    if a.rank() != 3 {
        return Err(Error::Domain(
            "the infinitesimal transformation is a rank-3 construction".into(),
        ));
    }
    let dim = a.dim();
    if g1.dim() != dim || g2.dim() != dim {
        return Err(Error::ShapeMismatch {
            expected_rank: 3,
            expected_dim: dim,
            rank: 3,
            dim: g1.dim().min(g2.dim()),
        });
    }
    let m1 = normal_matrix(&NormalSpec::new(3, dim, g1.values())?)?;
    let m2 = normal_matrix(&NormalSpec::new(3, dim, g2.values())?)?;
    let comm = nfold_commutator(&[a, &m1, &m2])?;
    let transformed = GeneralizedMatrix::lincomb(
        Complex64::new(1.0, 0.0),
        a,
        Complex64::new(eps, 0.0),
        &comm,
    )?;

    // six-term multiplier at (l, m, n):
    //   g1(l,n) g2(m,n) - g2(l,n) g1(m,n)
    // + g1(m,l) g2(n,l) - g2(m,l) g1(n,l)
    // + g1(n,m) g2(l,m) - g2(n,m) g1(l,m)
    let mut defect = 0.0f64;
    for_each_tuple(3, dim, |idx| {
        let (l, m, n) = (idx[0], idx[1], idx[2]);
        let mult = g1.entry(l, n) * g2.entry(m, n) - g2.entry(l, n) * g1.entry(m, n)
            + g1.entry(m, l) * g2.entry(n, l)
            - g2.entry(m, l) * g1.entry(n, l)
            + g1.entry(n, m) * g2.entry(l, m)
            - g2.entry(n, m) * g1.entry(l, m);
        let expected = a.at(idx) * mult;
        defect = defect.max((comm.at(idx) - expected).norm());
    });
    Ok((transformed, defect))
}
