//! The multiplication structures on rank-n matrices: the n-at-a-time product,
//! the n-fold commutator and anti-commutator, the identity element and the
//! normal forms that every conserved quantity takes.
//!
//! The product of n factors at an output tuple (l_1, ..., l_n) sums over one
//! extra level index k, with factor number s (1-based) evaluated at the output
//! tuple with position n - s + 1 replaced by k. For n = 2 this is ordinary
//! matrix multiplication. The commutator antisymmetrizes the product over all
//! n! orderings of its arguments; the anti-commutator takes the all-plus sum.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perm::permutations_with_sign;
use crate::tensor::GeneralizedMatrix;

fn check_args(args: &[&GeneralizedMatrix]) -> Result<(usize, usize)> {
    let first = args.first().ok_or(Error::ArityMismatch {
        rank: 0,
        expected: 1,
        got: 0,
    })?;
    let (rank, dim) = (first.rank(), first.dim());
    if args.len() != rank {
        return Err(Error::ArityMismatch {
            rank,
            expected: rank,
            got: args.len(),
        });
    }
    for m in args {
        first.same_shape(m)?;
    }
    Ok((rank, dim))
}

/// One component of the n-fold product of exactly n same-shape factors.
pub fn nfold_product_at(factors: &[&GeneralizedMatrix], idx: &[usize]) -> Result<Complex64> {
    let (rank, dim) = check_args(factors)?;
    if idx.len() != rank || idx.iter().any(|&i| i < 1 || i > dim) {
        return Err(Error::IndexOutOfRange {
            index: idx.to_vec(),
            rank,
            dim,
        });
    }
    let mut scratch = idx.to_vec();
    Ok(product_at_unchecked(factors, idx, &mut scratch))
}

/// Hot-path product component; `scratch` must be a copy of `idx`.
#[inline]
fn product_at_unchecked(
    factors: &[&GeneralizedMatrix],
    idx: &[usize],
    scratch: &mut [usize],
) -> Complex64 {
    let rank = idx.len();
    let dim = factors[0].dim();
    let mut total = Complex64::ZERO;
    for k in 1..=dim {
        let mut term = Complex64::new(1.0, 0.0);
        for (s, factor) in factors.iter().enumerate() {
            let pos = rank - 1 - s; // 0-based position n - s + 1 for 1-based s
            let saved = scratch[pos];
            scratch[pos] = k;
            term *= factor.at(scratch);
            scratch[pos] = saved;
            if term == Complex64::ZERO {
                break;
            }
        }
        total += term;
    }
    total
}

/// Full-tensor n-fold product.
pub fn nfold_product(factors: &[&GeneralizedMatrix]) -> Result<GeneralizedMatrix> {
    let (rank, dim) = check_args(factors)?;
    let mut scratch = vec![0usize; rank];
    GeneralizedMatrix::from_fn(rank, dim, |idx| {
        scratch.copy_from_slice(idx);
        product_at_unchecked(factors, idx, &mut scratch)
    })
}

fn signed_sum_at<'a>(
    args: &[&'a GeneralizedMatrix],
    idx: &[usize],
    signed: bool,
    scratch: &mut [usize],
    ordered: &mut Vec<&'a GeneralizedMatrix>,
) -> Complex64 {
    let n = args.len();
    let mut total = Complex64::ZERO;
    for (perm, sign) in permutations_with_sign(n) {
        ordered.clear();
        ordered.extend(perm.iter().map(|&a| args[a]));
        scratch.copy_from_slice(idx);
        let term = product_at_unchecked(ordered, idx, scratch);
        total += if signed && sign < 0 { -term } else { term };
    }
    total
}

fn signed_sum_full(args: &[&GeneralizedMatrix], signed: bool) -> Result<GeneralizedMatrix> {
    let (rank, dim) = check_args(args)?;
    let perms = permutations_with_sign(rank);
    let mut ordered: Vec<&GeneralizedMatrix> = Vec::with_capacity(rank);
    let mut scratch = vec![0usize; rank];
    let mut out = GeneralizedMatrix::zeros(rank, dim)?;
    for (perm, sign) in &perms {
        ordered.clear();
        ordered.extend(perm.iter().map(|&a| args[a]));
        let term_tensor = GeneralizedMatrix::from_fn(rank, dim, |idx| {
            scratch.copy_from_slice(idx);
            product_at_unchecked(&ordered, idx, &mut scratch)
        })?;
        let coeff = if signed && *sign < 0 { -1.0 } else { 1.0 };
        out = GeneralizedMatrix::lincomb(
            Complex64::new(1.0, 0.0),
            &out,
            Complex64::new(coeff, 0.0),
            &term_tensor,
        )?;
    }
    Ok(out)
}

/// n-fold commutator: signed sum of the product over all orderings of the
/// arguments. For n = 2 it reduces to AB - BA.
pub fn nfold_commutator(args: &[&GeneralizedMatrix]) -> Result<GeneralizedMatrix> {
    signed_sum_full(args, true)
}

/// Single component of the n-fold commutator.
pub fn nfold_commutator_at(args: &[&GeneralizedMatrix], idx: &[usize]) -> Result<Complex64> {
    let (rank, dim) = check_args(args)?;
    if idx.len() != rank || idx.iter().any(|&i| i < 1 || i > dim) {
        return Err(Error::IndexOutOfRange {
            index: idx.to_vec(),
            rank,
            dim,
        });
    }
    let mut scratch = vec![0usize; rank];
    let mut ordered = Vec::with_capacity(rank);
    Ok(signed_sum_at(args, idx, true, &mut scratch, &mut ordered))
}

/// n-fold anti-commutator: the all-plus sum over orderings. For n = 2 it is
/// AB + BA; the rank-3 case is the triple anti-commutator of the ladder
/// relations.
pub fn nfold_anticommutator(args: &[&GeneralizedMatrix]) -> Result<GeneralizedMatrix> {
    signed_sum_full(args, false)
}

/// Classify a tuple: Some((pair_value, lone_positions)) when the tuple has
/// exactly one coincident pair (two positions sharing a value) and all other
/// values distinct; None otherwise.
pub(crate) fn one_pair_structure(idx: &[usize]) -> Option<(usize, Vec<usize>)> {
    let n = idx.len();
    let mut pair: Option<(usize, usize)> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            if idx[i] == idx[j] {
                if pair.is_some() {
                    return None; // two coincidences (distinct pairs or a triple)
                }
                pair = Some((i, j));
            }
        }
    }
    let (i, j) = pair?;
    let lone: Vec<usize> = (0..n).filter(|&u| u != i && u != j).collect();
    // lone values must be mutually distinct and differ from the pair value;
    // both already guaranteed by the single-coincidence scan
    Some((idx[i], lone))
}

/// The identity element: for rank 2 the Kronecker delta; for rank >= 3 the
/// normal form with value 1 on every tuple carrying exactly one coincident
/// pair (remaining values all distinct) and 0 elsewhere. It acts as the
/// identity on all-distinct components in any slot of the product.
pub fn identity_matrix(rank: usize, dim: usize) -> Result<GeneralizedMatrix> {
    if rank == 2 {
        return GeneralizedMatrix::from_fn(2, dim, |idx| {
            if idx[0] == idx[1] {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::ZERO
            }
        });
    }
    GeneralizedMatrix::from_fn(rank, dim, |idx| {
        if one_pair_structure(idx).is_some() {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::ZERO
        }
    })
}

/// Recipe for a normal generalized matrix: nonzero only on one-pair tuples,
/// where the value is the sum of `table[l_u][pair_value]` over the lone index
/// values l_u.
#[derive(Clone, Debug)]
pub struct NormalSpec<'a> {
    pub rank: usize,
    pub dim: usize,
    /// Row-major dim x dim real table, 1-based accessor below.
    pub table: &'a [f64],
}

impl<'a> NormalSpec<'a> {
    pub fn new(rank: usize, dim: usize, table: &'a [f64]) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::Validation(format!(
                "pair table must hold {}x{} entries, got {}",
                dim,
                dim,
                table.len()
            )));
        }
        Ok(Self { rank, dim, table })
    }

    #[inline]
    fn entry(&self, l: usize, m: usize) -> f64 {
        self.table[(l - 1) * self.dim + (m - 1)]
    }

    fn is_antisymmetric(&self, tol: f64) -> bool {
        for l in 1..=self.dim {
            for m in 1..=self.dim {
                if (self.entry(l, m) + self.entry(m, l)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Build a normal matrix from an antisymmetric pair table. Rejects tables
/// that are not antisymmetric; the unchecked variant below exists for the
/// identity-like and shifted tables that deliberately break antisymmetry.
pub fn normal_matrix(spec: &NormalSpec) -> Result<GeneralizedMatrix> {
    if !spec.is_antisymmetric(1e-12 * (1.0 + table_scale(spec.table))) {
        return Err(Error::Validation(
            "normal form requires an antisymmetric pair table".into(),
        ));
    }
    normal_matrix_unchecked(spec)
}

/// Same construction without the antisymmetry gate.
pub fn normal_matrix_unchecked(spec: &NormalSpec) -> Result<GeneralizedMatrix> {
    if spec.rank < 3 {
        return Err(Error::Domain(
            "normal forms are defined for rank >= 3".into(),
        ));
    }
    GeneralizedMatrix::from_fn(spec.rank, spec.dim, |idx| {
        match one_pair_structure(idx) {
            None => Complex64::ZERO,
            Some((pair_value, lone)) => {
                let mut v = 0.0;
                for &u in &lone {
                    v += spec.entry(idx[u], pair_value);
                }
                Complex64::new(v, 0.0)
            }
        }
    })
}

pub(crate) fn table_scale(table: &[f64]) -> f64 {
    table.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}
