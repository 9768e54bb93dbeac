//! Coefficient-transfer solver: maps forcing coefficients in the `mu = 0`
//! basis to solution coefficients in the `mu = -1` basis, synthesizes the
//! solution, and verifies residuals.
//!
//! The transfer rests on the operator identity
//! `L Q^{n,-1}_{m,j,l} = a_{m,j} (Q^{n,0}_{m,j,l} - b_{m,n} Q^{n,0}_{m-2,j-1,l})`
//! with `L = e^t (d_tt - Lap_x) e^{-t}`, which makes the coefficient map
//! triangular and degree-preserving. Both the closed form and the
//! back-substitution recursion are implemented; they must agree exactly.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::analysis::{CoeffScalar, CoefficientSet};
use crate::arith::{falling, rat, ratio, to_f64, Rational};
use crate::conebasis::{a_mj, b_mn, enumerate, q_poly, BasisSpec, ConeIndex};
use crate::polyalg::MultiPoly;

/// Action of the conjugated wave operator on a `mu = -1` basis member, as a
/// combination of at most two `mu = 0` members:
/// `a_{m,j} Q^{n,0}_{m,j,l} - a_{m,j} b_{m,n} Q^{n,0}_{m-2,j-1,l}`,
/// the second term dropped when `m - 2` or `j - 1` is negative.
pub fn wave_apply_basis(index: &ConeIndex, d: usize) -> Vec<(ConeIndex, Rational)> {
    let a = a_mj(d, index.m, index.j);
    let mut out = vec![(*index, a.clone())];
    if index.m >= 2 && index.j >= 1 {
        out.push((
            ConeIndex::new(index.n, index.m - 2, index.j - 1, index.ell),
            -a * b_mn(index.n, index.m),
        ));
    }
    out
}

/// Action of the spatial Laplacian on a `mu = -1` basis member: zero for
/// `j = 0` (harmonic times a function of `t`), else a single `mu = 1` term
/// `4 (m - j + (d-2)/2)^2 Q^{n-2,1}_{m-2,j-1,l}`.
///
/// The sign and the `(d-2)/2` offset are pinned by the exact polynomial
/// oracle (`laplace_x` of the actual member); see the tests.
pub fn laplace_apply_basis(index: &ConeIndex, d: usize) -> Option<(ConeIndex, Rational)> {
    if index.j == 0 {
        return None;
    }
    let factor = rat(index.m as i64 - index.j as i64) + ratio(d as i64 - 2, 2);
    Some((
        ConeIndex::new(index.n - 2, index.m - 2, index.j - 1, index.ell),
        rat(4) * &factor * &factor,
    ))
}

/// Solution coefficients over the `mu = -1` basis, together with the forcing
/// coefficients they came from. The map is triangular and degree-preserving:
/// degree-n solution coefficients depend only on degree-n forcing ones.
#[derive(Debug, Clone)]
pub struct SolutionSeries<T: CoeffScalar> {
    pub coeffs: CoefficientSet<T>,
    pub source: CoefficientSet<T>,
}

fn mu_minus1_spec(spec: &BasisSpec) -> BasisSpec {
    BasisSpec::new(spec.dim, rat(-1), spec.c.clone(), spec.convention).expect("valid")
}

/// Closed-form coefficient transfer:
/// `u^n_{m,j,l} = (1/a_{m,j}) sum_i ((n-m)!/(n-m-2i)!) fhat^n_{m+2i,j+i,l}`.
pub fn solve_coefficients<T: CoeffScalar>(fhat: &CoefficientSet<T>) -> SolutionSeries<T> {
    let d = fhat.spec.dim;
    let mut out = CoefficientSet::new(mu_minus1_spec(&fhat.spec), fhat.trunc);
    for idx in enumerate(&fhat.spec, fhat.trunc) {
        let (n, m) = (idx.n, idx.m);
        let mut acc = T::zero();
        for i in 0..=((n - m) / 2) {
            let source = ConeIndex::new(n, m + 2 * i, idx.j + i, idx.ell);
            let term = fhat.get(&source);
            if term.is_zero() {
                continue;
            }
            acc = acc.add_ref(&term.mul_rational(&falling(n - m, 2 * i)));
        }
        if acc.is_zero() {
            continue;
        }
        let a = a_mj(d, m, idx.j);
        // the transfer constants stay uniformly away from zero (>= 1/3
        // across d = 1..3), so this division is benign in float mode
        assert!(a >= ratio(1, 3), "transfer constant unexpectedly small");
        out.set(idx, acc.mul_rational(&(Rational::one() / a)));
    }
    SolutionSeries {
        coeffs: out,
        source: fhat.clone(),
    }
}

/// Back-substitution transfer: seeds at `m = n, n-1` and the downward
/// recursion `u^n_{m} = (fhat^n_m + a_{m+2,j+1} b_{m+2,n} u^n_{m+2}) / a_{m,j}`.
/// Must agree exactly with [`solve_coefficients`].
pub fn solve_coefficients_recursive<T: CoeffScalar>(fhat: &CoefficientSet<T>) -> SolutionSeries<T> {
    let d = fhat.spec.dim;
    let mut out = CoefficientSet::new(mu_minus1_spec(&fhat.spec), fhat.trunc);
    for idx in enumerate(&fhat.spec, fhat.trunc).into_iter().rev() {
        let (n, m) = (idx.n, idx.m);
        let mut acc = fhat.get(&idx);
        if m + 2 <= n {
            let upper = ConeIndex::new(n, m + 2, idx.j + 1, idx.ell);
            let carried: T = out.get(&upper);
            if !carried.is_zero() {
                let transfer = a_mj(d, m + 2, idx.j + 1) * b_mn(n, m + 2);
                acc = acc.add_ref(&carried.mul_rational(&transfer));
            }
        }
        if !acc.is_zero() {
            let a = a_mj(d, m, idx.j);
            out.set(idx, acc.mul_rational(&(Rational::one() / a)));
        }
    }
    SolutionSeries {
        coeffs: out,
        source: fhat.clone(),
    }
}

impl SolutionSeries<Rational> {
    /// Exact synthesis `u = sum u^n Q^{n,-1}`.
    pub fn synthesize(&self) -> MultiPoly {
        let spec = &self.coeffs.spec;
        let mut acc = MultiPoly::zero(spec.dim);
        for (idx, value) in self.coeffs.iter() {
            acc = acc.add(&q_poly(idx, spec).expect("admissible").scale(value));
        }
        acc
    }
}

impl<T: CoeffScalar> SolutionSeries<T> {
    /// Float evaluator for `u` (and `U = e^-t u`).
    pub fn evaluator(&self) -> SolutionEvaluator {
        let spec = &self.coeffs.spec;
        let parts = self
            .coeffs
            .iter()
            .map(|(idx, value)| {
                (
                    value.as_f64(),
                    q_poly(idx, spec).expect("admissible"),
                )
            })
            .collect();
        SolutionEvaluator {
            parts,
            dim: spec.dim,
        }
    }
}

/// Evaluates a synthesized solution series in floating point.
pub struct SolutionEvaluator {
    parts: Vec<(f64, MultiPoly)>,
    dim: usize,
}

impl SolutionEvaluator {
    /// `u(x, t)`.
    pub fn eval_u(&self, x: &[f64], t: f64) -> f64 {
        assert_eq!(x.len(), self.dim);
        crate::quadrature::pairwise_sum(
            &self
                .parts
                .iter()
                .map(|(c, q)| c * q.eval_f64(x, t))
                .collect::<Vec<_>>(),
        )
    }

    /// `U(x, t) = e^-t u(x, t)`, the solution of the original equation.
    pub fn eval_big_u(&self, x: &[f64], t: f64) -> f64 {
        (-t).exp() * self.eval_u(x, t)
    }
}

/// Residual verification report, serializable as JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    /// Whether `L u - f` is the zero polynomial (exact mode only).
    pub exact_residual_zero: bool,
    /// Max abs finite-difference residual of
    /// `(d_tt - c^2 Lap)(e^-t u) - e^-t f` over the probe points.
    pub max_fd_residual: f64,
    /// Number of probe points.
    pub probes: usize,
}

/// Probe points strictly inside the cone `|x| <= 0.9 c t`, `t in [0.5, 10]`.
fn probe_points(d: usize, c: f64, count: usize, seed: u64) -> Vec<(Vec<f64>, f64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t = rng.random_range(0.5..10.0);
            // direction scaled into the ball of radius 0.9 c t
            let dir: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-9);
            let radius = 0.9 * c * t * rng.random_range(0.0..1.0f64).powf(1.0 / d as f64);
            let x = dir.iter().map(|v| v / norm * radius).collect();
            (x, t)
        })
        .collect()
}

/// Finite-difference residual summary: max absolute residual plus the
/// magnitude scale of the quantities entering the stencils (the rounding
/// floor of a second difference grows with that scale).
#[derive(Debug, Clone, Copy)]
pub struct FdResidual {
    pub max_abs: f64,
    pub scale: f64,
}

/// Central-difference residual of the original wave equation at the probes:
/// `(d_tt - c^2 Lap_x)(e^-t u) - e^-t f`, O(h^2) stencils with `h = 1e-4`.
pub fn fd_residual(
    u: &SolutionEvaluator,
    f: impl Fn(&[f64], f64) -> f64,
    c: f64,
    probes: usize,
    seed: u64,
) -> FdResidual {
    let h = 1e-4;
    let d = u.dim;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for (x, t) in probe_points(d, c, probes, seed) {
        let g = |x: &[f64], t: f64| u.eval_big_u(x, t);
        let g0 = g(&x, t);
        let dtt = (g(&x, t + h) - 2.0 * g0 + g(&x, t - h)) / (h * h);
        let mut lap = 0.0;
        for i in 0..d {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            lap += (g(&xp, t) - 2.0 * g0 + g(&xm, t)) / (h * h);
        }
        let forcing = (-t).exp() * f(&x, t);
        let residual = dtt - c * c * lap - forcing;
        worst = worst.max(residual.abs());
        scale = scale.max(dtt.abs() + c * c * lap.abs() + forcing.abs());
    }
    FdResidual {
        max_abs: worst,
        scale,
    }
}

impl SolutionSeries<Rational> {
    /// Full residual report for a polynomial forcing: exact conjugated-wave
    /// residual plus the finite-difference check of the original equation.
    pub fn residual_report(&self, f: &MultiPoly, probes: usize, seed: u64) -> ResidualReport {
        let spec = &self.coeffs.spec;
        let c = &spec.c;
        // undo the dilation: at unit speed the synthesized u obeys L u = f(c x, t)
        let u = self.synthesize();
        let unit_u = if c.is_one() { u.clone() } else { u.scale_x(c) };
        let unit_f = if c.is_one() { f.clone() } else { f.scale_x(c) };
        let exact_zero = unit_u.conjugated_wave().sub(&unit_f).is_zero();
        let evaluator = self.evaluator();
        let fd = fd_residual(
            &evaluator,
            |x, t| f.eval_f64(x, t),
            to_f64(c),
            probes,
            seed,
        );
        ResidualReport {
            exact_residual_zero: exact_zero,
            max_fd_residual: fd.max_abs,
            probes,
        }
    }
}

/// Substitute `x -> x / c`: moves a unit-speed solution `u` to the speed-`c`
/// solution `u(x/c, t)`, and a speed-`c` forcing to its unit-speed pullback.
pub fn rescale_speed(p: &MultiPoly, c: &Rational) -> MultiPoly {
    p.scale_x(&(Rational::one() / c))
}

/// The coefficient-growth sum
/// `A_{m,n} = sum_i (-(n-m))_{2i} / (n+m)_{2i}` (exact rationals) and its
/// maximum over `m <= n <= nmax`. `A_{n,n} = 1`; the maximum stays below 3.
pub fn amn_value(m: u32, n: u32) -> Rational {
    assert!(m <= n);
    let span = n - m;
    let mut acc = Rational::one(); // i = 0 term
    let mut term = Rational::one();
    for i in 0..(span / 2) {
        // multiply by the two next Pochhammer factors
        let k = 2 * i as i64;
        let top = rat(-(span as i64) + k) * rat(-(span as i64) + k + 1);
        let bottom = rat(n as i64 + m as i64 + k) * rat(n as i64 + m as i64 + k + 1);
        term *= top / bottom;
        acc += &term;
    }
    acc
}

/// Max of `A_{m,n}` over `m <= n <= nmax`, with its arg max.
pub fn amn_bound_check(nmax: u32) -> (Rational, (u32, u32)) {
    let mut best = Rational::zero();
    let mut arg = (0, 0);
    for n in 0..=nmax {
        for m in 0..=n {
            let v = amn_value(m, n);
            if v > best {
                best = v;
                arg = (m, n);
            }
        }
    }
    (best, arg)
}
