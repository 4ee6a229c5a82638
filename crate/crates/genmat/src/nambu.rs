//! Classical companion: Nambu brackets as Jacobian determinants, the bracket
//! equations of motion, a fixed-step fourth-order integrator with
//! conservation monitoring, and numeric checks of the bracket's four
//! defining properties on polynomial test functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::permutations_with_sign;
use crate::spectrum::det_gauss;

/// Multivariate polynomial in n variables: a sum of coeff * prod x_i^e_i
/// terms. Polynomials carry exact partial derivatives, which makes them the
/// oracle side of every finite-difference comparison here.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Poly {
    pub vars: usize,
    pub terms: Vec<(f64, Vec<u32>)>,
}

impl Poly {
    pub fn new(vars: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        if terms.iter().any(|(_, e)| e.len() != vars) {
            return Err(Error::Validation(
                "every exponent vector must cover all variables".into(),
            ));
        }
        Ok(Self { vars, terms })
    }

    pub fn constant(vars: usize, c: f64) -> Self {
        Self {
            vars,
            terms: vec![(c, vec![0; vars])],
        }
    }

    /// The coordinate function x_i (0-based).
    pub fn coordinate(vars: usize, i: usize) -> Self {
        let mut e = vec![0u32; vars];
        e[i] = 1;
        Self {
            vars,
            terms: vec![(1.0, e)],
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, exps)| {
                c * exps
                    .iter()
                    .zip(x)
                    .map(|(&e, &xi)| xi.powi(e as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Exact partial derivative with respect to variable i.
    pub fn partial(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(_, exps)| exps[i] > 0)
            .map(|(c, exps)| {
                let mut e = exps.clone();
                let power = e[i];
                e[i] -= 1;
                (c * power as f64, e)
            })
            .collect();
        Poly {
            vars: self.vars,
            terms,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Poly {
            vars: self.vars,
            terms,
        }
        .compact()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, e1) in &self.terms {
            for (c2, e2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                terms.push((c1 * c2, exps));
            }
        }
        Poly {
            vars: self.vars,
            terms,
        }
        .compact()
    }

    pub fn scale(&self, a: f64) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(c, e)| (a * c, e.clone())).collect(),
        }
    }

    fn compact(mut self) -> Poly {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(f64, Vec<u32>)> = Vec::with_capacity(self.terms.len());
        for (c, e) in self.terms {
            match out.last_mut() {
                Some((c0, e0)) if *e0 == e => *c0 += c,
                _ => out.push((c, e)),
            }
        }
        out.retain(|(c, _)| *c != 0.0);
        Poly {
            vars: self.vars,
            terms: out,
        }
    }
}

/// Bracket of n scalar functions at a point: the determinant of the n x n
/// Jacobian, with partials taken by central differences of step `fd_step`.
pub fn nambu_bracket(
    funcs: &[&dyn Fn(&[f64]) -> f64],
    x: &[f64],
    fd_step: f64,
) -> Result<f64> {
    let n = x.len();
    if funcs.len() != n {
        return Err(Error::ArityMismatch {
            rank: n,
            expected: n,
            got: funcs.len(),
        });
    }
    if !(fd_step > 0.0) {
        return Err(Error::Domain("finite-difference step must be positive".into()));
    }
    let mut jac = vec![0.0; n * n];
    let mut probe = x.to_vec();
    for j in 0..n {
        let step = fd_step * (1.0 + x[j].abs());
        probe.copy_from_slice(x);
        probe[j] = x[j] + step;
        let plus: Vec<f64> = funcs.iter().map(|f| f(&probe)).collect();
        probe[j] = x[j] - step;
        let minus: Vec<f64> = funcs.iter().map(|f| f(&probe)).collect();
        for i in 0..n {
            let v = (plus[i] - minus[i]) / (2.0 * step);
            if !v.is_finite() {
                return Err(Error::NonFinite { at: x.to_vec() });
            }
            jac[i * n + j] = v;
        }
    }
    Ok(det_gauss(n, &mut jac))
}

/// Exact bracket of polynomials: determinant of the exact Jacobian values.
pub fn nambu_bracket_exact_at(funcs: &[&Poly], x: &[f64]) -> Result<f64> {
    let n = x.len();
    if funcs.len() != n {
        return Err(Error::ArityMismatch {
            rank: n,
            expected: n,
            got: funcs.len(),
        });
    }
    let mut jac = vec![0.0; n * n];
    for (i, f) in funcs.iter().enumerate() {
        for j in 0..n {
            jac[i * n + j] = f.partial(j).eval(x);
        }
    }
    Ok(det_gauss(n, &mut jac))
}

/// Exact bracket of polynomials as a polynomial: the signed sum over
/// orderings of products of first partials. Keeps the result in the
/// polynomial ring so nested brackets stay exact.
pub fn nambu_bracket_exact(funcs: &[&Poly]) -> Result<Poly> {
    let n = funcs
        .first()
        .map(|f| f.vars)
        .ok_or(Error::ArityMismatch {
            rank: 0,
            expected: 1,
            got: 0,
        })?;
    if funcs.len() != n || funcs.iter().any(|f| f.vars != n) {
        return Err(Error::ArityMismatch {
            rank: n,
            expected: n,
            got: funcs.len(),
        });
    }
    let mut out = Poly::constant(n, 0.0);
    for (perm, sign) in permutations_with_sign(n) {
        let mut term = Poly::constant(n, *&(sign as f64));
        for (slot, &which) in perm.iter().enumerate() {
            term = term.mul(&funcs[which].partial(slot));
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// A classical system: n-dimensional phase point, n-1 polynomial
/// Hamiltonians, and the finite-difference step for bracket evaluation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NambuSystem {
    pub dim: usize,
    pub hamiltonians: Vec<Poly>,
    pub fd_step: f64,
}

impl NambuSystem {
    pub fn new(dim: usize, hamiltonians: Vec<Poly>, fd_step: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain("phase space needs dimension >= 2".into()));
        }
        if hamiltonians.len() != dim - 1 {
            return Err(Error::ArityMismatch {
                rank: dim,
                expected: dim - 1,
                got: hamiltonians.len(),
            });
        }
        if hamiltonians.iter().any(|h| h.vars != dim) {
            return Err(Error::Validation(
                "every Hamiltonian must be a function of all phase variables".into(),
            ));
        }
        if !(fd_step > 0.0) {
            return Err(Error::Domain("finite-difference step must be positive".into()));
        }
        Ok(Self {
            dim,
            hamiltonians,
            fd_step,
        })
    }

    /// Velocity field: dx_i/dt = bracket(x_i, H_1, ..., H_{n-1}).
    /// The coordinate slot contributes an exact unit row, so only the
    /// Hamiltonian rows are differenced.
    pub fn rhs(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim;
        if x.len() != n {
            return Err(Error::IndexOutOfRange {
                index: vec![x.len()],
                rank: n,
                dim: n,
            });
        }
        // Jacobian rows 1..n hold the differenced Hamiltonian gradients;
        // row 0 is the coordinate function's exact unit row, rebuilt per i.
        let mut grads = vec![0.0; (n - 1) * n];
        let mut probe = x.to_vec();
        for j in 0..n {
            let step = self.fd_step * (1.0 + x[j].abs());
            probe.copy_from_slice(x);
            probe[j] = x[j] + step;
            let plus: Vec<f64> = self.hamiltonians.iter().map(|h| h.eval(&probe)).collect();
            probe[j] = x[j] - step;
            let minus: Vec<f64> = self.hamiltonians.iter().map(|h| h.eval(&probe)).collect();
            for a in 0..n - 1 {
                let v = (plus[a] - minus[a]) / (2.0 * step);
                if !v.is_finite() {
                    return Err(Error::NonFinite { at: x.to_vec() });
                }
                grads[a * n + j] = v;
            }
        }
        let mut velocity = vec![0.0; n];
        let mut jac = vec![0.0; n * n];
        for i in 0..n {
            for v in jac.iter_mut() {
                *v = 0.0;
            }
            jac[i] = 1.0; // row 0 = gradient of x_i
            for a in 0..n - 1 {
                jac[(a + 1) * n..(a + 2) * n].copy_from_slice(&grads[a * n..(a + 1) * n]);
            }
            velocity[i] = det_gauss(n, &mut jac);
        }
        Ok(velocity)
    }
}

/// Integrated path with the conserved quantities sampled along it.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    /// hamiltonian values per step, row-major [step][which]
    pub invariants: Vec<Vec<f64>>,
}

impl Trajectory {
    /// Largest drift of each conserved quantity from its initial value.
    pub fn max_drift(&self) -> Vec<f64> {
        let Some(first) = self.invariants.first() else {
            return Vec::new();
        };
        let mut drift = vec![0.0f64; first.len()];
        for row in &self.invariants {
            for (d, (v, v0)) in drift.iter_mut().zip(row.iter().zip(first)) {
                *d = (*d).max((v - v0).abs());
            }
        }
        drift
    }

    /// CSV with header t,x1,...,xn,H1,...,Hn-1 and one row per step.
    pub fn to_csv(&self) -> String {
        let n = self.points.first().map_or(0, Vec::len);
        let k = self.invariants.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for i in 1..=n {
            out.push_str(&format!(",x{i}"));
        }
        for a in 1..=k {
            out.push_str(&format!(",H{a}"));
        }
        out.push('\n');
        for ((t, x), h) in self.times.iter().zip(&self.points).zip(&self.invariants) {
            out.push_str(&format!("{t}"));
            for v in x {
                out.push_str(&format!(",{v}"));
            }
            for v in h {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

const DIVERGENCE_NORM: f64 = 1e9;

/// Classic fixed-step fourth-order integration of the bracket dynamics from
/// x0 to t1. Conservation is monitored, never enforced, so integrator drift
/// stays observable. On blow-up the partial trajectory is returned with the
/// error.
pub fn integrate(
    sys: &NambuSystem,
    x0: &[f64],
    t1: f64,
    dt: f64,
) -> std::result::Result<Trajectory, (Error, Trajectory)> {
    let mut traj = Trajectory {
        times: Vec::new(),
        points: Vec::new(),
        invariants: Vec::new(),
    };
    let record = |traj: &mut Trajectory, t: f64, x: &[f64]| {
        traj.times.push(t);
        traj.points.push(x.to_vec());
        traj.invariants
            .push(sys.hamiltonians.iter().map(|h| h.eval(x)).collect());
    };
    let check = |x: &[f64], t: f64| -> Result<()> {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm > DIVERGENCE_NORM {
            return Err(Error::Divergence { t, norm });
        }
        Ok(())
    };
    if !(dt > 0.0) || !(t1 > 0.0) {
        return Err((
            Error::Domain("integration needs dt > 0 and t1 > 0".into()),
            traj,
        ));
    }

    let mut x = x0.to_vec();
    let mut t = 0.0;
    record(&mut traj, t, &x);
    let steps = (t1 / dt).round() as usize;
    let axpy = |y: &[f64], a: f64, v: &[f64]| -> Vec<f64> {
        y.iter().zip(v).map(|(yi, vi)| yi + a * vi).collect()
    };
    // an overflow inside a stage evaluation is a blow-up as well
    let as_divergence = |e: Error, t: f64| match e {
        Error::NonFinite { .. } => Error::Divergence {
            t,
            norm: f64::INFINITY,
        },
        other => other,
    };
    for _ in 0..steps {
        let k1 = sys
            .rhs(&x)
            .map_err(|e| (as_divergence(e, t), traj.clone()))?;
        let k2 = sys
            .rhs(&axpy(&x, 0.5 * dt, &k1))
            .map_err(|e| (as_divergence(e, t), traj.clone()))?;
        let k3 = sys
            .rhs(&axpy(&x, 0.5 * dt, &k2))
            .map_err(|e| (as_divergence(e, t), traj.clone()))?;
        let k4 = sys
            .rhs(&axpy(&x, dt, &k3))
            .map_err(|e| (as_divergence(e, t), traj.clone()))?;
        for i in 0..x.len() {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += dt;
        if let Err(e) = check(&x, t) {
            return Err((e, traj));
        }
        record(&mut traj, t, &x);
    }
    Ok(traj)
}

/// Defects of the bracket's defining properties on polynomial inputs, each
/// evaluated with exact derivatives and with central differences.
#[derive(Clone, Debug)]
pub struct BracketPropertyReport {
    pub skew_exact: f64,
    pub skew_fd: f64,
    pub linearity_exact: f64,
    pub linearity_fd: f64,
    pub fundamental_exact: f64,
    pub derivation_exact: f64,
}

/// Check skew symmetry, linearity, the fundamental identity and the
/// derivation rule for polynomial functions at the given sample points.
/// The nested-bracket identities are evaluated in the polynomial ring, where
/// derivatives are exact.
pub fn bracket_properties_report(
    funcs: &[Poly],
    extra: &[Poly],
    points: &[Vec<f64>],
    fd_step: f64,
) -> Result<BracketPropertyReport> {
    let n = funcs.first().map(|f| f.vars).ok_or(Error::ArityMismatch {
        rank: 0,
        expected: 1,
        got: 0,
    })?;
    if funcs.len() != n || extra.len() != n - 1 {
        return Err(Error::ArityMismatch {
            rank: n,
            expected: n,
            got: funcs.len(),
        });
    }
    let refs: Vec<&Poly> = funcs.iter().collect();
    let gens: Vec<&Poly> = extra.iter().collect();

    let mut report = BracketPropertyReport {
        skew_exact: 0.0,
        skew_fd: 0.0,
        linearity_exact: 0.0,
        linearity_fd: 0.0,
        fundamental_exact: 0.0,
        derivation_exact: 0.0,
    };

    // skew symmetry: swapping two arguments flips the sign
    let mut swapped = refs.clone();
    swapped.swap(0, 1);
    // linearity: bracket(f0 + f1, f1, ..) = bracket(f0, ..) + bracket(f1, ..)
    let sum01 = funcs[0].add(&funcs[1]);
    let mut lin_args = refs.clone();
    lin_args[0] = &sum01;
    let mut first_swapped = refs.clone();
    first_swapped[0] = &funcs[1];

    for x in points {
        let base = nambu_bracket_exact_at(&refs, x)?;
        let swap = nambu_bracket_exact_at(&swapped, x)?;
        report.skew_exact = report.skew_exact.max((base + swap).abs());

        let lin = nambu_bracket_exact_at(&lin_args, x)?;
        let second = nambu_bracket_exact_at(&first_swapped, x)?;
        report.linearity_exact = report.linearity_exact.max((lin - base - second).abs());

        // finite-difference mirrors
        let as_fn: Vec<Box<dyn Fn(&[f64]) -> f64>> = funcs
            .iter()
            .map(|p| {
                let p = p.clone();
                Box::new(move |y: &[f64]| p.eval(y)) as Box<dyn Fn(&[f64]) -> f64>
            })
            .collect();
        let fn_refs: Vec<&dyn Fn(&[f64]) -> f64> = as_fn.iter().map(|b| b.as_ref()).collect();
        let base_fd = nambu_bracket(&fn_refs, x, fd_step)?;
        let mut fn_swapped = fn_refs.clone();
        fn_swapped.swap(0, 1);
        let swap_fd = nambu_bracket(&fn_swapped, x, fd_step)?;
        report.skew_fd = report.skew_fd.max((base_fd + swap_fd).abs());
        let sum_fn = |y: &[f64]| sum01.eval(y);
        let mut fn_lin = fn_refs.clone();
        fn_lin[0] = &sum_fn;
        let lin_fd = nambu_bracket(&fn_lin, x, fd_step)?;
        let mut fn_second = fn_refs.clone();
        fn_second[0] = fn_refs[1];
        let second_fd = nambu_bracket(&fn_second, x, fd_step)?;
        report.linearity_fd = report
            .linearity_fd
            .max((lin_fd - base_fd - second_fd).abs());
    }

    // fundamental identity, in the polynomial ring:
    // {{f_1..f_n}, g_1..g_{n-1}} = sum_i {f_1, .., {f_i, g..}, .., f_n}
    let inner = nambu_bracket_exact(&refs)?;
    let mut lhs_args: Vec<&Poly> = vec![&inner];
    lhs_args.extend(&gens);
    let lhs = nambu_bracket_exact(&lhs_args)?;
    let mut rhs = Poly::constant(n, 0.0);
    for i in 0..n {
        let mut bracket_args: Vec<&Poly> = vec![refs[i]];
        bracket_args.extend(&gens);
        let replaced = nambu_bracket_exact(&bracket_args)?;
        let mut outer = refs.clone();
        outer[i] = &replaced;
        rhs = rhs.add(&nambu_bracket_exact(&outer)?);
    }
    for x in points {
        report.fundamental_exact = report.fundamental_exact.max((lhs.eval(x) - rhs.eval(x)).abs());
    }

    // derivation rule: {f_1 f_2 .. f_n, g..} = sum_i f_1 .. {f_i, g..} .. f_n
    let mut product = funcs[0].clone();
    for f in &funcs[1..] {
        product = product.mul(f);
    }
    let mut dl_args: Vec<&Poly> = vec![&product];
    dl_args.extend(&gens);
    let dl = nambu_bracket_exact(&dl_args)?;
    let mut dr = Poly::constant(n, 0.0);
    for i in 0..n {
        let mut bracket_args: Vec<&Poly> = vec![refs[i]];
        bracket_args.extend(&gens);
        let mut term = nambu_bracket_exact(&bracket_args)?;
        for (j, f) in funcs.iter().enumerate() {
            if j != i {
                term = term.mul(f);
            }
        }
        dr = dr.add(&term);
    }
    for x in points {
        report.derivation_exact = report.derivation_exact.max((dl.eval(x) - dr.eval(x)).abs());
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_top() -> NambuSystem {
        // rigid-body-like demo: H1 = (x^2 + y^2 + z^2)/2,
        // H2 = x^2/2 + y^2/4 + z^2/6
        let h1 = Poly::new(
            3,
            vec![
                (0.5, vec![2, 0, 0]),
                (0.5, vec![0, 2, 0]),
                (0.5, vec![0, 0, 2]),
            ],
        )
        .unwrap();
        let h2 = Poly::new(
            3,
            vec![
                (0.5, vec![2, 0, 0]),
                (0.25, vec![0, 2, 0]),
                (1.0 / 6.0, vec![0, 0, 2]),
            ],
        )
        .unwrap();
        NambuSystem::new(3, vec![h1, h2], 1e-5).unwrap()
    }

    #[test]
    fn coordinate_bracket_is_unit() {
        let x = Poly::coordinate(3, 0);
        let y = Poly::coordinate(3, 1);
        let z = Poly::coordinate(3, 2);
        let fx = |p: &[f64]| p[0];
        let fy = |p: &[f64]| p[1];
        let fz = |p: &[f64]| p[2];
        let at = [0.3, -1.1, 2.4];
        let fd = nambu_bracket(&[&fx, &fy, &fz], &at, 1e-5).unwrap();
        assert!((fd - 1.0).abs() < 1e-9);
        let exact = nambu_bracket_exact_at(&[&x, &y, &z], &at).unwrap();
        assert_eq!(exact, 1.0);
    }

    #[test]
    fn repeated_argument_vanishes() {
        let sys = euler_top();
        let h1 = &sys.hamiltonians[0];
        let at = [0.9, 0.4, -0.2];
        let v = nambu_bracket_exact_at(&[h1, h1, &Poly::coordinate(3, 2)], &at).unwrap();
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn rank2_bracket_is_poisson() {
        // {q, p} = 1
        let fq = |p: &[f64]| p[0];
        let fp = |p: &[f64]| p[1];
        let v = nambu_bracket(&[&fq, &fp], &[0.2, 0.7], 1e-5).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn simple_linear_hamiltonians_move_one_axis() {
        // H1 = y, H2 = z: dx/dt = 1, dy/dt = dz/dt = 0
        let h1 = Poly::coordinate(3, 1);
        let h2 = Poly::coordinate(3, 2);
        let sys = NambuSystem::new(3, vec![h1, h2], 1e-5).unwrap();
        let v = sys.rhs(&[0.4, 1.0, -2.0]).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-9);
        assert!(v[1].abs() < 1e-9);
        assert!(v[2].abs() < 1e-9);
    }

    #[test]
    fn constant_hamiltonians_freeze_the_point() {
        let h1 = Poly::constant(3, 2.0);
        let h2 = Poly::constant(3, -1.0);
        let sys = NambuSystem::new(3, vec![h1, h2], 1e-5).unwrap();
        let x0 = [0.5, -0.25, 1.0];
        let traj = integrate(&sys, &x0, 1.0, 0.01).unwrap();
        for p in &traj.points {
            assert_eq!(p.as_slice(), x0.as_slice());
        }
    }

    #[test]
    fn demo_system_conserves_both_hamiltonians() {
        let sys = euler_top();
        let traj = integrate(&sys, &[1.0, 0.3, 0.5], 10.0, 1e-3).unwrap();
        let drift = traj.max_drift();
        assert!(drift.iter().all(|d| *d <= 1e-8), "drift {drift:?}");
    }

    #[test]
    fn integrator_order_is_fourth() {
        let sys = euler_top();
        let x0 = [1.0, 0.3, 0.5];
        let t1 = 2.0;
        let reference = integrate(&sys, &x0, t1, 1e-4).unwrap();
        let xref = reference.points.last().unwrap().clone();
        let coarse = integrate(&sys, &x0, t1, 0.02).unwrap();
        let fine = integrate(&sys, &x0, t1, 0.01).unwrap();
        let err = |traj: &Trajectory| {
            traj.points
                .last()
                .unwrap()
                .iter()
                .zip(&xref)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let order = (err(&coarse) / err(&fine)).log2();
        assert!(order >= 3.8, "observed order {order}");
    }

    #[test]
    fn harmonic_oscillator_period() {
        // n = 2: H = (q^2 + p^2)/2, one full turn takes 2 pi
        let h = Poly::new(2, vec![(0.5, vec![2, 0]), (0.5, vec![0, 2])]).unwrap();
        let sys = NambuSystem::new(2, vec![h], 1e-6).unwrap();
        let x0 = [1.0, 0.0];
        let period = std::f64::consts::TAU;
        let traj = integrate(&sys, &x0, period, period / 20000.0).unwrap();
        let end = traj.points.last().unwrap();
        let err = ((end[0] - x0[0]).powi(2) + (end[1] - x0[1]).powi(2)).sqrt();
        assert!(err < 1e-4, "period-return error {err}");
    }

    #[test]
    fn reduction_to_plane_dynamics() {
        // H2 = z freezes z and reduces to plane motion generated by H1
        let h1 = Poly::new(
            3,
            vec![(0.5, vec![2, 0, 0]), (0.5, vec![0, 2, 0])],
        )
        .unwrap();
        let h2 = Poly::coordinate(3, 2);
        let sys3 = NambuSystem::new(3, vec![h1.clone(), h2], 1e-5).unwrap();
        let x0 = [0.8, 0.0, 0.3];
        let t1 = std::f64::consts::TAU;
        let dt = 1e-3;
        let traj3 = integrate(&sys3, &x0, t1, dt).unwrap();

        // plane reference: dq/dt = dH1/dp, dp/dt = -dH1/dq with exact partials
        let mut q = x0[0];
        let mut p = x0[1];
        let steps = (t1 / dt).round() as usize;
        let rhs2 = |q: f64, p: f64| (p, -q);
        for _ in 0..steps {
            let (k1q, k1p) = rhs2(q, p);
            let (k2q, k2p) = rhs2(q + 0.5 * dt * k1q, p + 0.5 * dt * k1p);
            let (k3q, k3p) = rhs2(q + 0.5 * dt * k2q, p + 0.5 * dt * k2p);
            let (k4q, k4p) = rhs2(q + dt * k3q, p + dt * k3p);
            q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
            p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        }
        let end = traj3.points.last().unwrap();
        assert!((end[0] - q).abs() < 1e-6);
        assert!((end[1] - p).abs() < 1e-6);
        assert!((end[2] - x0[2]).abs() < 1e-8);
    }

    #[test]
    fn bracket_properties_on_polynomials() {
        let f1 = Poly::new(3, vec![(1.0, vec![2, 1, 0]), (0.5, vec![0, 0, 1])]).unwrap();
        let f2 = Poly::new(3, vec![(1.0, vec![0, 2, 0]), (-0.7, vec![1, 0, 1])]).unwrap();
        let f3 = Poly::new(3, vec![(0.3, vec![1, 1, 1]), (1.0, vec![0, 0, 2])]).unwrap();
        let g1 = Poly::new(3, vec![(1.0, vec![1, 1, 0])]).unwrap();
        let g2 = Poly::new(3, vec![(1.0, vec![0, 1, 1]), (0.2, vec![1, 0, 0])]).unwrap();
        let points = vec![
            vec![0.3, -0.8, 1.1],
            vec![1.0, 0.5, -0.4],
            vec![-0.6, 0.9, 0.2],
        ];
        let report =
            bracket_properties_report(&[f1, f2, f3], &[g1, g2], &points, 1e-5).unwrap();
        assert!(report.skew_exact < 1e-12, "{report:?}");
        assert!(report.linearity_exact < 1e-12, "{report:?}");
        assert!(report.fundamental_exact < 1e-9, "{report:?}");
        assert!(report.derivation_exact < 1e-9, "{report:?}");
        assert!(report.skew_fd < 1e-8, "{report:?}");
        assert!(report.linearity_fd < 1e-8, "{report:?}");
    }

    #[test]
    fn divergence_reports_partial_trajectory() {
        // dx/dt grows superlinearly: x' = {x, H1, H2} with H1 = y z x^2 ...
        // simpler: engineered blow-up via H1 = x^2 y, H2 = z
        let h1 = Poly::new(3, vec![(1.0, vec![3, 1, 0])]).unwrap();
        let h2 = Poly::coordinate(3, 2);
        let sys = NambuSystem::new(3, vec![h1, h2], 1e-6).unwrap();
        match integrate(&sys, &[2.0, 2.0, 0.0], 50.0, 0.05) {
            Err((Error::Divergence { .. }, partial)) => {
                assert!(!partial.points.is_empty());
            }
            Ok(traj) => {
                // if it did not blow up, the norm must have stayed bounded
                assert!(traj
                    .points
                    .iter()
                    .all(|p| p.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e9));
            }
            Err((e, _)) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn csv_layout() {
        let sys = euler_top();
        let traj = integrate(&sys, &[1.0, 0.0, 0.0], 0.02, 0.01).unwrap();
        let csv = traj.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,x1,x2,x3,H1,H2");
        assert_eq!(lines.count(), 3);
    }
}
