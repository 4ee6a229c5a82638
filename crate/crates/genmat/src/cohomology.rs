//! k-index real cochains, the coboundary operator and the defect functionals
//! built on it: cocycle test, the n-term combination-rule (Ritz) defect and
//! the cyclic-shift defect.
//!
//! Cochains are stored dense (N^k reals) with the same 1-based row-major
//! layout as the tensors. A `Cochain` value is not forced to be antisymmetric
//! at the type level: the raw frequency array of the determinant form is
//! deliberately kept un-symmetrized so its hidden cyclic property can be
//! observed, while `antisymmetrize` produces the manifestly antisymmetric
//! representative.

use crate::error::{Error, Result};
use crate::perm::{self, parity, permutations_with_sign};

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    arity: usize,
    dim: usize,
    values: Vec<f64>,
}

impl Cochain {
    pub fn zeros(arity: usize, dim: usize) -> Result<Self> {
        if arity < 1 || dim < 1 {
            return Err(Error::Domain(format!(
                "cochain needs arity >= 1 and dim >= 1, got {arity}, {dim}"
            )));
        }
        let len = dim.checked_pow(arity as u32).ok_or_else(|| {
            Error::Domain(format!("dim^arity overflows for {dim}^{arity}"))
        })?;
        Ok(Self {
            arity,
            dim,
            values: vec![0.0; len],
        })
    }

    pub fn from_fn(arity: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let mut c = Self::zeros(arity, dim)?;
        let mut offset = 0usize;
        perm::for_each_tuple(arity, dim, |idx| {
            c.values[offset] = f(idx);
            offset += 1;
        });
        Ok(c)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    fn flat_offset(&self, idx: &[usize]) -> usize {
        let mut offset = 0usize;
        for &i in idx {
            offset = offset * self.dim + (i - 1);
        }
        offset
    }

    pub fn get(&self, idx: &[usize]) -> Result<f64> {
        if idx.len() != self.arity || idx.iter().any(|&i| i < 1 || i > self.dim) {
            return Err(Error::IndexOutOfRange {
                index: idx.to_vec(),
                rank: self.arity,
                dim: self.dim,
            });
        }
        Ok(self.values[self.flat_offset(idx)])
    }

    pub fn set(&mut self, idx: &[usize], v: f64) -> Result<()> {
        if idx.len() != self.arity || idx.iter().any(|&i| i < 1 || i > self.dim) {
            return Err(Error::IndexOutOfRange {
                index: idx.to_vec(),
                rank: self.arity,
                dim: self.dim,
            });
        }
        let off = self.flat_offset(idx);
        self.values[off] = v;
        Ok(())
    }

    /// Unchecked accessor for hot loops.
    #[inline]
    pub fn at(&self, idx: &[usize]) -> f64 {
        self.values[self.flat_offset(idx)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    /// Largest violation of total antisymmetry over all transpositions.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        perm::for_each_tuple(self.arity, self.dim, |idx| {
            let v = self.at(idx);
            let mut swapped = idx.to_vec();
            for a in 0..self.arity {
                for b in (a + 1)..self.arity {
                    swapped.copy_from_slice(idx);
                    swapped.swap(a, b);
                    worst = worst.max((self.at(&swapped) + v).abs());
                }
            }
        });
        worst
    }
}

/// Total antisymmetrization: (1/k!) sum over permutations of sign times the
/// permuted value. Idempotent on already-antisymmetric input; kills any
/// symmetric part.
pub fn antisymmetrize(raw: &Cochain) -> Result<Cochain> {
    let k = raw.arity;
    let perms = permutations_with_sign(k);
    let norm = 1.0 / perms.len() as f64;
    let mut permuted = vec![0usize; k];
    Cochain::from_fn(k, raw.dim, |idx| {
        let mut acc = 0.0;
        for (p, sign) in &perms {
            for (slot, &src) in p.iter().enumerate() {
                permuted[slot] = idx[src];
            }
            acc += (*sign as f64) * raw.at(&permuted);
        }
        acc * norm
    })
}

/// Coboundary operator: (delta c)_{l_1..l_{k+1}} = sum_i (-1)^{i+1} c with
/// index i omitted. Raises arity by one; nilpotent.
pub fn coboundary(c: &Cochain) -> Result<Cochain> {
    let k = c.arity;
    let mut sub = vec![0usize; k];
    Cochain::from_fn(k + 1, c.dim, |idx| {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for omit in 0..=k {
            let mut w = 0;
            for (pos, &v) in idx.iter().enumerate() {
                if pos != omit {
                    sub[w] = v;
                    w += 1;
                }
            }
            acc += sign * c.at(&sub);
            sign = -sign;
        }
        acc
    })
}

/// Cocycle test: true iff max |delta c| <= tol. Returns the defect as well.
pub fn is_cocycle(c: &Cochain, tol: f64) -> Result<(bool, f64)> {
    let d = coboundary(c)?;
    let defect = d.max_abs();
    Ok((defect <= tol, defect))
}

/// Default absolute tolerance for cocycle tests, scaled by the cochain size:
/// double precision with at most ~1e3 summands.
pub fn default_cocycle_tol(c: &Cochain) -> f64 {
    1e-10 * (1.0 + c.max_abs())
}

/// Defect of the n-term decomposition
/// nu(idx) = sum_i nu(idx with position i replaced by the spare index k).
/// Vanishes exactly when nu is a cocycle (the alternating-sum form and this
/// form are related by moving the spare index into place).
pub fn ritz_defect(nu: &Cochain, idx: &[usize], spare: usize) -> Result<f64> {
    let n = nu.arity;
    if idx.len() != n {
        return Err(Error::IndexOutOfRange {
            index: idx.to_vec(),
            rank: n,
            dim: nu.dim,
        });
    }
    let direct = nu.get(idx)?;
    let mut sum = 0.0;
    let mut replaced = idx.to_vec();
    for i in 0..n {
        replaced.copy_from_slice(idx);
        replaced[i] = spare;
        sum += nu.get(&replaced)?;
    }
    Ok((direct - sum).abs())
}

/// Largest Ritz defect over all index tuples and spare indices.
pub fn ritz_defect_max(nu: &Cochain) -> f64 {
    let mut worst = 0.0f64;
    perm::for_each_tuple(nu.arity, nu.dim, |idx| {
        for spare in 1..=nu.dim {
            worst = worst.max(ritz_defect(nu, idx, spare).expect("valid tuple"));
        }
    });
    worst
}

/// Cyclic-shift defect: max over tuples of
/// |c(rotate_left(idx, p)) - (-1)^{(n-1)p} c(idx)|.
/// Works on raw arrays as well as antisymmetric cochains; the determinant
/// frequency form satisfies this only when its tables follow the combination
/// rule, which is exactly what the defect is used to observe.
pub fn cyclic_defect(c: &Cochain, p: usize) -> f64 {
    let n = c.arity;
    let sign = if ((n - 1) * p) % 2 == 0 { 1.0 } else { -1.0 };
    let mut worst = 0.0f64;
    let mut rotated = vec![0usize; n];
    perm::for_each_tuple(n, c.dim, |idx| {
        for slot in 0..n {
            // left rotation by p: slot s takes the value from position s + p
            rotated[slot] = idx[(slot + p) % n];
        }
        let lhs = c.at(&rotated);
        let rhs = sign * c.at(idx);
        worst = worst.max((lhs - rhs).abs());
    });
    worst
}

/// Equivalence used throughout: the alternating reconstruction
/// sum_i (-1)^(n-i) c(idx without i, spare appended) equals
/// sum_i c(idx with position i replaced) for antisymmetric c. Exposed for
/// the test suite.
pub fn alternating_reconstruction(c: &Cochain, idx: &[usize], spare: usize) -> Result<f64> {
    let n = c.arity;
    let mut acc = 0.0;
    let mut sub = vec![0usize; n];
    for omit in 0..n {
        let mut w = 0;
        for (pos, &v) in idx.iter().enumerate() {
            if pos != omit {
                sub[w] = v;
                w += 1;
            }
        }
        sub[n - 1] = spare;
        let sign = if (n - 1 - omit) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * c.get(&sub)?;
    }
    Ok(acc)
}

/// Sign of a sequence of distinct values (exposed for frequency builders).
pub fn tuple_parity(seq: &[usize]) -> i32 {
    parity(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetrize_kills_symmetric_input() {
        let sym = Cochain::from_fn(2, 4, |idx| (idx[0] + idx[1]) as f64).unwrap();
        let anti = antisymmetrize(&sym).unwrap();
        assert_eq!(anti.max_abs(), 0.0);
    }

    #[test]
    fn antisymmetrize_is_idempotent() {
        let raw = Cochain::from_fn(3, 4, |idx| {
            (idx[0] * 7 + idx[1] * 3 + idx[2]) as f64 * 0.173
        })
        .unwrap();
        let once = antisymmetrize(&raw).unwrap();
        let twice = antisymmetrize(&once).unwrap();
        let diff: f64 = once
            .values()
            .iter()
            .zip(twice.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-14);
        assert!(once.antisymmetry_defect() < 1e-14);
    }

    #[test]
    fn antisymmetrize_halves_one_sided_entry() {
        let mut raw = Cochain::zeros(2, 3).unwrap();
        raw.set(&[1, 2], 1.0).unwrap();
        let anti = antisymmetrize(&raw).unwrap();
        assert!((anti.get(&[1, 2]).unwrap() - 0.5).abs() < 1e-15);
        assert!((anti.get(&[2, 1]).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn coboundary_of_potential_differences_vanishes() {
        // c_{mn} = e_m - e_n telescopes
        let e = [0.0, 0.4, -1.3, 2.2];
        let c = Cochain::from_fn(2, 4, |idx| e[idx[0] - 1] - e[idx[1] - 1]).unwrap();
        let d = coboundary(&c).unwrap();
        assert!(d.max_abs() < 1e-14);
        let (ok, defect) = is_cocycle(&c, 1e-12).unwrap();
        assert!(ok);
        assert!(defect < 1e-14);
    }

    #[test]
    fn coboundary_detects_non_telescoping_cochain() {
        // antisymmetric but c_12 + c_23 + c_31 != 0
        let mut c = Cochain::zeros(2, 3).unwrap();
        for (i, j, v) in [(1usize, 2usize, 1.0f64), (2, 3, 1.0), (1, 3, -1.0)] {
            c.set(&[i, j], v).unwrap();
            c.set(&[j, i], -v).unwrap();
        }
        let d = coboundary(&c).unwrap();
        // (delta c)_{123} = c_23 - c_13 + c_12 = 1 + 1 + 1 = 3
        assert!((d.get(&[1, 2, 3]).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn coboundary_is_nilpotent() {
        let raw = Cochain::from_fn(3, 5, |idx| {
            ((idx[0] * idx[0]) as f64).sin() + (idx[1] as f64).cos() * idx[2] as f64
        })
        .unwrap();
        let dd = coboundary(&coboundary(&raw).unwrap()).unwrap();
        assert!(dd.max_abs() < 1e-12);
    }

    #[test]
    fn ritz_defect_zero_for_bohr_differences() {
        let e = [0.0, 1.5, -0.7, 3.1, 0.2];
        let c = Cochain::from_fn(2, 5, |idx| e[idx[0] - 1] - e[idx[1] - 1]).unwrap();
        for spare in 1..=5 {
            assert!(ritz_defect(&c, &[2, 4], spare).unwrap() < 1e-14);
        }
        assert!(ritz_defect_max(&c) < 1e-14);
    }

    #[test]
    fn cyclic_defect_zero_for_antisymmetric_odd_arity() {
        let raw = Cochain::from_fn(3, 4, |idx| {
            (idx[0] as f64) * 1.7 - (idx[1] as f64).powi(2) + (idx[2] as f64) * 0.3
        })
        .unwrap();
        let anti = antisymmetrize(&raw).unwrap();
        // rank 3: (-1)^{(3-1)p} = +1, and a cyclic shift is an even permutation
        assert!(cyclic_defect(&anti, 1) < 1e-14);
        assert!(cyclic_defect(&anti, 2) < 1e-14);
    }

    #[test]
    fn alternating_reconstruction_matches_ritz_form() {
        let raw = Cochain::from_fn(3, 4, |idx| {
            ((idx[0] * 5 + idx[1] * 2 + idx[2]) as f64).sin()
        })
        .unwrap();
        let anti = antisymmetrize(&raw).unwrap();
        perm::for_each_tuple(3, 4, |idx| {
            for spare in 1..=4 {
                let alt = alternating_reconstruction(&anti, idx, spare).unwrap();
                let mut replaced_sum = 0.0;
                let mut replaced = idx.to_vec();
                for i in 0..3 {
                    replaced.copy_from_slice(idx);
                    replaced[i] = spare;
                    replaced_sum += anti.get(&replaced).unwrap();
                }
                assert!((alt - replaced_sum).abs() < 1e-12);
            }
        });
    }
}
