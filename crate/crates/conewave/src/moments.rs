//! Exact monomial moments for the normalized sphere, the cone weight
//! `b_mu (c^2 t^2 - |x|^2)^mu e^{-t}`, and the Sobolev boundary measure.
//!
//! These closed forms give the crate its symbolic integration path: inner
//! products of polynomials reduce to rational sums over term pairs, with no
//! quadrature involved.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{double_factorial, factorial, pochhammer, rat, ratio, Rational};
use crate::polyalg::MultiPoly;

#[derive(Debug, Error, PartialEq)]
pub enum MomentError {
    #[error("cone moments require mu > -1, got {0}")]
    MuOutOfRange(String),
    #[error("boundary integral diverges for d = 1 when f g has a nonzero constant term")]
    DivergentBoundary,
}

/// Normalized sphere moment `(1/omega_d) int_{S^{d-1}} xi^alpha d omega`:
/// zero unless every exponent is even, else
/// `prod_i (alpha_i - 1)!! / prod_{i=0}^{|alpha|/2 - 1} (d + 2i)`.
pub fn sphere_monomial_moment(d: usize, alpha: &[u32]) -> Rational {
    assert_eq!(alpha.len(), d, "exponent tuple must have length d");
    if alpha.iter().any(|&a| a % 2 == 1) {
        return Rational::zero();
    }
    let total: u32 = alpha.iter().sum();
    let mut num = Rational::one();
    for &a in alpha {
        num *= double_factorial(a as i64 - 1);
    }
    let mut den = Rational::one();
    for i in 0..(total / 2) {
        den *= rat((d + 2 * i as usize) as i64);
    }
    num / den
}

/// Exact normalized sphere inner product `(1/omega_d) int f g d omega` of two
/// purely spatial polynomials (no `t` dependence allowed).
pub fn sphere_inner(f: &MultiPoly, g: &MultiPoly) -> Rational {
    assert_eq!(f.dim(), g.dim(), "dimension mismatch");
    let d = f.dim();
    let mut acc = Rational::zero();
    for (ea, ca) in f.terms() {
        assert_eq!(ea[d], 0, "sphere inner product requires t-free polynomials");
        for (eb, cb) in g.terms() {
            assert_eq!(eb[d], 0, "sphere inner product requires t-free polynomials");
            let alpha: Vec<u32> = (0..d).map(|i| ea[i] + eb[i]).collect();
            let m = sphere_monomial_moment(d, &alpha);
            if !m.is_zero() {
                acc += ca * cb * m;
            }
        }
    }
    acc
}

/// Cone monomial moment at unit speed:
/// `b_mu int_V x^alpha t^k (t^2 - |x|^2)^mu e^{-t} dx dt`
/// `= (2mu+d+1)_{|alpha|+k} * (d/2)_a / (mu+d/2+1)_a * S(alpha)`, `a = |alpha|/2`,
/// with `S` the normalized sphere moment.
pub fn cone_monomial_moment(
    d: usize,
    mu: &Rational,
    alpha: &[u32],
    t_exp: u32,
) -> Result<Rational, MomentError> {
    if *mu <= rat(-1) {
        return Err(MomentError::MuOutOfRange(mu.to_string()));
    }
    let sphere = sphere_monomial_moment(d, alpha);
    if sphere.is_zero() {
        return Ok(Rational::zero());
    }
    let xdeg: u32 = alpha.iter().sum();
    let a = xdeg / 2;
    let half_d = ratio(d as i64, 2);
    let lag = pochhammer(&(rat(2) * mu + rat(d as i64 + 1)), xdeg + t_exp);
    let radial = pochhammer(&half_d, a) / pochhammer(&(mu + half_d + rat(1)), a);
    Ok(lag * radial * sphere)
}

/// Exact inner product `<f, g>_mu` at unit speed via the moment formulas.
pub fn inner_mu(f: &MultiPoly, g: &MultiPoly, mu: &Rational) -> Result<Rational, MomentError> {
    assert_eq!(f.dim(), g.dim(), "dimension mismatch");
    let d = f.dim();
    let mut acc = Rational::zero();
    for (ea, ca) in f.terms() {
        for (eb, cb) in g.terms() {
            let alpha: Vec<u32> = (0..d).map(|i| ea[i] + eb[i]).collect();
            let m = cone_monomial_moment(d, mu, &alpha, ea[d] + eb[d])?;
            if !m.is_zero() {
                acc += ca * cb * m;
            }
        }
    }
    Ok(acc)
}

/// The normalizing constant `b_mu` such that `<1,1>_mu = 1` at unit speed,
/// returned as the rational `r` in `b_mu = r / pi^{d/2}` for even `d`-powers;
/// concretely `b_mu = Gamma(mu+d/2+1) / (Gamma(2mu+d+1) Gamma(mu+1) pi^{d/2})`.
/// Only needed numerically, so this returns `f64`.
pub fn b_mu_f64(d: usize, mu: f64) -> f64 {
    gamma_f64(mu + d as f64 / 2.0 + 1.0)
        / (gamma_f64(2.0 * mu + d as f64 + 1.0)
            * gamma_f64(mu + 1.0)
            * std::f64::consts::PI.powf(d as f64 / 2.0))
}

/// Lanczos gamma, adequate for the small positive arguments used here.
pub fn gamma_f64(x: f64) -> f64 {
    // Lanczos approximation, g = 7, n = 9
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_f64(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = COEFFS[0];
        for (i, &c) in COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Exact rational parts of the Sobolev inner product at unit speed.
///
/// `<f,g>_grad = omega_d * (vol + lambda * sqrt(2) * bnd)` where
/// `vol = sum_h c * S(alpha) * Gamma(|alpha|+k+d+1) / (|alpha|+d)` over the
/// terms of `h = grad_x f . grad_x g`, and
/// `bnd = sum c * S(alpha) * Gamma(d-1+|alpha|+k)` over the terms of `f g`.
/// Since `sqrt(2)` is irrational, the product vanishes iff both parts vanish,
/// which makes this an exact orthogonality test.
pub fn sobolev_inner_parts(
    f: &MultiPoly,
    g: &MultiPoly,
) -> Result<(Rational, Rational), MomentError> {
    assert_eq!(f.dim(), g.dim(), "dimension mismatch");
    let d = f.dim();

    let mut vol = Rational::zero();
    let gf = f.grad_x();
    let gg = g.grad_x();
    for i in 0..d {
        let h = gf[i].mul(&gg[i]);
        for (e, c) in h.terms() {
            let alpha = &e[..d];
            let s = sphere_monomial_moment(d, alpha);
            if s.is_zero() {
                continue;
            }
            let xdeg: u32 = alpha.iter().sum();
            vol += c * s * factorial(xdeg + e[d] + d as u32) / rat((xdeg as usize + d) as i64);
        }
    }

    let mut bnd = Rational::zero();
    let fg = f.mul(g);
    for (e, c) in fg.terms() {
        let alpha = &e[..d];
        let s = sphere_monomial_moment(d, alpha);
        if s.is_zero() {
            continue;
        }
        let xdeg: u32 = alpha.iter().sum();
        let gamma_arg = d as i64 - 1 + xdeg as i64 + e[d] as i64;
        if gamma_arg <= 0 {
            return Err(MomentError::DivergentBoundary);
        }
        bnd += c * s * factorial(gamma_arg as u32 - 1);
    }
    Ok((vol, bnd))
}

/// Surface area of the unit sphere `S^{d-1}`.
pub fn omega_d(d: usize) -> f64 {
    match d {
        1 => 2.0,
        2 => 2.0 * std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI,
        _ => panic!("unsupported dimension {d}"),
    }
}

/// Volume of the unit ball in `R^d`.
pub fn ball_volume(d: usize) -> f64 {
    omega_d(d) / d as f64
}
