//! Dense rank-n complex tensors over level indices `1..=N`.
//!
//! A [`GeneralizedMatrix`] is the carrier for every dynamical variable in the
//! crate: rank-n arrays A, the ladder variables, the identity element and the
//! normal-form Hamiltonians. Storage is dense row-major over the index tuple
//! (desk-scale sizes, N <= 6 and n <= 5, make anything fancier pointless;
//! memory is O(N^n)).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perm::{for_each_tuple, parity};

/// Rank-n complex tensor, indices 1-based in the public API.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedMatrix {
    rank: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl GeneralizedMatrix {
    /// All-zero tensor. Rejects rank < 2 or dim < 2.
    pub fn zeros(rank: usize, dim: usize) -> Result<Self> {
        if rank < 2 || dim < 2 {
            return Err(Error::Domain(format!(
                "generalized matrix needs rank >= 2 and dim >= 2, got rank {rank}, dim {dim}"
            )));
        }
        let len = dim.checked_pow(rank as u32).ok_or_else(|| {
            Error::Domain(format!("dim^rank overflows for dim {dim}, rank {rank}"))
        })?;
        Ok(Self {
            rank,
            dim,
            data: vec![Complex64::ZERO; len],
        })
    }

    /// Build by evaluating `f` at every 1-based index tuple.
    pub fn from_fn(rank: usize, dim: usize, mut f: impl FnMut(&[usize]) -> Complex64) -> Result<Self> {
        let mut m = Self::zeros(rank, dim)?;
        let mut offset = 0usize;
        for_each_tuple(rank, dim, |idx| {
            m.data[offset] = f(idx);
            offset += 1;
        });
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    fn check_index(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.rank || idx.iter().any(|&i| i < 1 || i > self.dim) {
            return Err(Error::IndexOutOfRange {
                index: idx.to_vec(),
                rank: self.rank,
                dim: self.dim,
            });
        }
        Ok(self.flat_offset(idx))
    }

    /// Flat offset of a valid 1-based tuple; row-major, last index fastest.
    #[inline]
    pub fn flat_offset(&self, idx: &[usize]) -> usize {
        let mut offset = 0usize;
        for &i in idx {
            offset = offset * self.dim + (i - 1);
        }
        offset
    }

    pub fn get(&self, idx: &[usize]) -> Result<Complex64> {
        Ok(self.data[self.check_index(idx)?])
    }

    pub fn set(&mut self, idx: &[usize], value: Complex64) -> Result<()> {
        let offset = self.check_index(idx)?;
        self.data[offset] = value;
        Ok(())
    }

    /// Unchecked accessor for hot loops; callers guarantee a valid tuple.
    #[inline]
    pub fn at(&self, idx: &[usize]) -> Complex64 {
        self.data[self.flat_offset(idx)]
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank || self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                expected_rank: self.rank,
                expected_dim: self.dim,
                rank: other.rank,
                dim: other.dim,
            });
        }
        Ok(())
    }

    /// Componentwise a*M1 + b*M2.
    pub fn lincomb(a: Complex64, m1: &Self, b: Complex64, m2: &Self) -> Result<Self> {
        m1.same_shape(m2)?;
        let data = m1
            .data
            .iter()
            .zip(&m2.data)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            rank: m1.rank,
            dim: m1.dim,
            data,
        })
    }

    pub fn scaled(&self, a: Complex64) -> Self {
        Self {
            rank: self.rank,
            dim: self.dim,
            data: self.data.iter().map(|x| a * x).collect(),
        }
    }

    /// Largest componentwise |M1 - M2|; zero iff the tensors are equal.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// Totally antisymmetric sign symbol over `rank` indices with values
/// `1..=dim`; +1 on ascending tuples of distinct values, sign of the sorting
/// permutation otherwise, 0 on any repeated index.
#[derive(Clone, Debug)]
pub struct LeviCivita {
    rank: usize,
    dim: usize,
}

impl LeviCivita {
    /// For rank > dim every component vanishes by the pigeonhole; that is
    /// allowed but reported to the caller.
    pub fn new(rank: usize, dim: usize) -> (Self, bool) {
        let degenerate = rank > dim;
        (Self { rank, dim }, degenerate)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value at a 1-based tuple: -1, 0 or +1.
    pub fn value(&self, idx: &[usize]) -> i32 {
        assert_eq!(idx.len(), self.rank, "tuple length must equal rank");
        for (k, &i) in idx.iter().enumerate() {
            assert!(i >= 1 && i <= self.dim, "index out of range");
            if idx[k + 1..].contains(&i) {
                return 0;
            }
        }
        parity(idx)
    }

    /// The same values as a complex tensor, for use in tensor arithmetic.
    pub fn as_matrix(&self) -> Result<GeneralizedMatrix> {
        GeneralizedMatrix::from_fn(self.rank, self.dim, |idx| {
            Complex64::new(self.value(idx) as f64, 0.0)
        })
    }

    /// Contraction of the cubic symbol over its last slot:
    /// eps2(l, m) = sum_k eps(l, m, k), the two-index antisymmetric table
    /// the rank-3 oscillator Hamiltonian is built from.
    pub fn contracted_last(&self) -> Vec<f64> {
        assert_eq!(self.rank, 3, "the contracted symbol is a cubic reduction");
        let d = self.dim;
        let mut out = vec![0.0; d * d];
        for l in 1..=d {
            for m in 1..=d {
                let mut s = 0.0;
                for k in 1..=d {
                    s += self.value(&[l, m, k]) as f64;
                }
                out[(l - 1) * d + (m - 1)] = s;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeros_sizes() {
        assert_eq!(GeneralizedMatrix::zeros(2, 2).unwrap().data().len(), 4);
        assert_eq!(GeneralizedMatrix::zeros(3, 3).unwrap().data().len(), 27);
        assert_eq!(GeneralizedMatrix::zeros(5, 4).unwrap().data().len(), 1024);
    }

    #[test]
    fn rejects_degenerate_shapes() {
        assert!(GeneralizedMatrix::zeros(1, 4).is_err());
        assert!(GeneralizedMatrix::zeros(3, 1).is_err());
    }

    #[test]
    fn get_set_round_trip() {
        let mut m = GeneralizedMatrix::zeros(3, 3).unwrap();
        assert_eq!(m.get(&[1, 2, 3]).unwrap(), Complex64::ZERO);
        m.set(&[1, 1, 1], c(0.25, -3.5)).unwrap();
        assert_eq!(m.get(&[1, 1, 1]).unwrap(), c(0.25, -3.5));
        assert!(m.get(&[0, 1, 1]).is_err());
        assert!(m.get(&[1, 4, 1]).is_err());
        assert!(m.get(&[1, 1]).is_err());
    }

    #[test]
    fn storage_round_trips_every_component() {
        let mut m = GeneralizedMatrix::zeros(3, 4).unwrap();
        let mut v = 0.0;
        for_each_tuple(3, 4, |idx| {
            v += 1.0;
            let idx = idx.to_vec();
            m.set(&idx, c(v, -v)).unwrap();
        });
        let mut v2 = 0.0;
        for_each_tuple(3, 4, |idx| {
            v2 += 1.0;
            assert_eq!(m.get(idx).unwrap(), c(v2, -v2));
        });
    }

    #[test]
    fn lincomb_cancellation_and_zero() {
        let m = GeneralizedMatrix::from_fn(2, 3, |idx| c(idx[0] as f64, idx[1] as f64)).unwrap();
        let z = GeneralizedMatrix::zeros(2, 3).unwrap();
        let diff = GeneralizedMatrix::lincomb(c(1.0, 0.0), &m, c(-1.0, 0.0), &m).unwrap();
        assert_eq!(diff.max_abs(), 0.0);
        let scaled_zero =
            GeneralizedMatrix::lincomb(c(2.0, 0.0), &z, c(3.0, 0.0), &z).unwrap();
        assert_eq!(scaled_zero.max_abs(), 0.0);
        let id = GeneralizedMatrix::lincomb(c(1.0, 0.0), &m, c(0.0, 0.0), &z).unwrap();
        assert_eq!(id, m);
    }

    #[test]
    fn lincomb_shape_mismatch() {
        let a = GeneralizedMatrix::zeros(2, 3).unwrap();
        let b = GeneralizedMatrix::zeros(3, 3).unwrap();
        assert!(GeneralizedMatrix::lincomb(c(1.0, 0.0), &a, c(1.0, 0.0), &b).is_err());
    }

    #[test]
    fn max_abs_diff_reference_values() {
        let m = GeneralizedMatrix::from_fn(3, 3, |idx| c(idx[0] as f64, -(idx[2] as f64))).unwrap();
        assert_eq!(m.max_abs_diff(&m).unwrap(), 0.0);
        // against the unit-entry identity element the gap is exactly 1
        let zero = GeneralizedMatrix::zeros(3, 3).unwrap();
        let id = crate::algebra::identity_matrix(3, 3).unwrap();
        assert_eq!(zero.max_abs_diff(&id).unwrap(), 1.0);
        // the rank-2 oscillator pair at t = 0 sits at distance 1:
        // |1/sqrt2 - (-i/sqrt2)| = 1
        let (eps, _) = LeviCivita::new(2, 2);
        let xi = GeneralizedMatrix::from_fn(2, 2, |idx| {
            c(eps.value(idx).abs() as f64 / 2f64.sqrt(), 0.0)
        })
        .unwrap();
        let eta = GeneralizedMatrix::from_fn(2, 2, |idx| {
            c(0.0, -(eps.value(idx) as f64) / 2f64.sqrt())
        })
        .unwrap();
        assert!((xi.max_abs_diff(&eta).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn levi_civita_reference_values() {
        let (eps3, degenerate) = LeviCivita::new(3, 3);
        assert!(!degenerate);
        assert_eq!(eps3.value(&[1, 2, 3]), 1);
        assert_eq!(eps3.value(&[2, 3, 1]), 1);
        assert_eq!(eps3.value(&[2, 1, 3]), -1);
        assert_eq!(eps3.value(&[1, 3, 2]), -1);
        assert_eq!(eps3.value(&[1, 1, 2]), 0);

        let (eps2, _) = LeviCivita::new(2, 2);
        assert_eq!(eps2.value(&[1, 2]), 1);
        assert_eq!(eps2.value(&[2, 1]), -1);
        assert_eq!(eps2.value(&[1, 1]), 0);

        let (eps_over, degenerate) = LeviCivita::new(3, 2);
        assert!(degenerate);
        let mut all_zero = true;
        for_each_tuple(3, 2, |idx| all_zero &= eps_over.value(idx) == 0);
        assert!(all_zero);
    }

    #[test]
    fn levi_civita_total_antisymmetry_exhaustive() {
        for rank in 2..=4usize {
            let (eps, _) = LeviCivita::new(rank, rank);
            for_each_tuple(rank, rank, |idx| {
                for a in 0..rank {
                    for b in (a + 1)..rank {
                        let mut swapped = idx.to_vec();
                        swapped.swap(a, b);
                        assert_eq!(eps.value(&swapped), -eps.value(idx));
                    }
                }
            });
        }
    }

    #[test]
    fn levi_civita_as_matrix_matches() {
        let (eps, _) = LeviCivita::new(3, 3);
        let m = eps.as_matrix().unwrap();
        assert_eq!(m.get(&[2, 1, 3]).unwrap(), c(-1.0, 0.0));
        assert_eq!(m.get(&[3, 1, 2]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn contracted_symbol_of_cubic_levi_civita() {
        let (eps, _) = LeviCivita::new(3, 3);
        let e = eps.contracted_last();
        let at = |l: usize, m: usize| e[(l - 1) * 3 + (m - 1)];
        // eps2(1,2) = eps(1,2,3) = 1; eps2(1,3) = eps(1,3,2) = -1
        assert_eq!(at(1, 2), 1.0);
        assert_eq!(at(2, 3), 1.0);
        assert_eq!(at(3, 1), 1.0);
        assert_eq!(at(1, 3), -1.0);
        assert_eq!(at(1, 1), 0.0);
    }
}
