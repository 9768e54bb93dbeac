//! Orthogonal polynomials on the space-time cone `|x| <= c t`.
//!
//! A basis member of total degree `n` is the product of a Laguerre factor in
//! `t`, a Jacobi factor in the radial ratio `|x|^2/t^2` (expanded so the
//! apex `t = 0` never sees a division), and a spherical harmonic. The family
//! is parametrized by `mu`; `mu = -1` is defined by analytic continuation of
//! the Jacobi parameter and is the natural preimage family of the conjugated
//! wave operator.
//!
//! Basis members are exact rational polynomials for every convention; the
//! unit-norm harmonic scaling is carried as squared-scale bookkeeping (see
//! [`crate::harmonics`]), so all identity checks stay exact.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorial, pochhammer, rat, ratio, Rational};
use crate::harmonics::{self, Convention, HarmonicMember};
use crate::orthopoly1d::{jacobi, laguerre, UniPoly};
use crate::polyalg::{MultiPoly, Var};

/// Errors for inadmissible basis requests.
#[derive(Debug, Error, PartialEq)]
pub enum BasisError {
    #[error("index (n={0}, m={1}, j={2}, ell={3}) is not admissible for d={4}")]
    InadmissibleIndex(u32, u32, u32, u32, usize),
    #[error("mu must be -1 or > -1, got {0}")]
    MuOutOfRange(String),
    #[error("wave speed must be positive, got {0}")]
    NonPositiveSpeed(String),
    #[error("spatial dimension must be 1, 2, or 3, got {0}")]
    UnsupportedDim(usize),
    #[error("norms require mu > -1, got {0}")]
    NormRequiresMuAboveMinusOne(String),
}

/// Index quadruple `(n, m, j, ell)` of a cone basis member:
/// total degree `n`, homogeneous sub-degree `m <= n`, radial index
/// `j <= m/2`, and harmonic member `1 <= ell <= dim H_{m-2j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConeIndex {
    pub n: u32,
    pub m: u32,
    pub j: u32,
    pub ell: u32,
}

impl ConeIndex {
    pub fn new(n: u32, m: u32, j: u32, ell: u32) -> Self {
        ConeIndex { n, m, j, ell }
    }

    /// Harmonic degree `m - 2j`.
    pub fn harmonic_degree(&self) -> u32 {
        self.m - 2 * self.j
    }

    /// Range checks against the dimension.
    pub fn is_admissible(&self, d: usize) -> bool {
        self.m <= self.n
            && 2 * self.j <= self.m
            && self.ell >= 1
            && (self.ell as usize) <= harmonics::dim_h(d, self.m - 2 * self.j)
    }

    fn check(&self, d: usize) -> Result<(), BasisError> {
        if self.is_admissible(d) {
            Ok(())
        } else {
            Err(BasisError::InadmissibleIndex(
                self.n, self.m, self.j, self.ell, d,
            ))
        }
    }
}

/// Which basis family is meant: dimension, weight exponent `mu`, wave speed,
/// and harmonic convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    pub dim: usize,
    pub mu: Rational,
    pub c: Rational,
    pub convention: Convention,
}

impl BasisSpec {
    pub fn new(
        dim: usize,
        mu: Rational,
        c: Rational,
        convention: Convention,
    ) -> Result<Self, BasisError> {
        if !(1..=3).contains(&dim) {
            return Err(BasisError::UnsupportedDim(dim));
        }
        // admissible mu: exactly -1 (continuation family) or anything > -1
        if mu < rat(-1) {
            return Err(BasisError::MuOutOfRange(mu.to_string()));
        }
        if !c.is_positive() {
            return Err(BasisError::NonPositiveSpeed(c.to_string()));
        }
        Ok(BasisSpec {
            dim,
            mu,
            c,
            convention,
        })
    }

    /// The `mu = 0` spec at unit speed with the given convention.
    pub fn standard(dim: usize, convention: Convention) -> Self {
        BasisSpec::new(dim, rat(0), rat(1), convention).expect("valid")
    }

    /// Same spec with a different `mu`.
    pub fn with_mu(&self, mu: Rational) -> Self {
        BasisSpec {
            mu,
            ..self.clone()
        }
    }

    /// `beta_j = m - 2j + (d-2)/2`, the Jacobi beta of an index.
    pub fn beta_j(&self, m: u32, j: u32) -> Rational {
        rat(m as i64 - 2 * j as i64) + ratio(self.dim as i64 - 2, 2)
    }
}

/// All admissible indices with `n <= nmax` in `(n, m, j, ell)` order.
pub fn enumerate(spec: &BasisSpec, nmax: u32) -> Vec<ConeIndex> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=n {
            for j in 0..=(m / 2) {
                let dims = harmonics::dim_h(spec.dim, m - 2 * j);
                for ell in 1..=dims as u32 {
                    out.push(ConeIndex::new(n, m, j, ell));
                }
            }
        }
    }
    out
}

/// The harmonic member attached to an index under the spec's convention.
pub fn harmonic_member(index: &ConeIndex, spec: &BasisSpec) -> Result<HarmonicMember, BasisError> {
    index.check(spec.dim)?;
    let basis = harmonics::basis(spec.dim, index.harmonic_degree(), spec.convention);
    Ok(basis.members[index.ell as usize - 1].clone())
}

/// Expand `t^{2j} P(s)` with `s = (2|x|^2 - t^2)/t^2` into a polynomial in
/// `(x, t)`; requires `deg P <= j` so that no division by `t` survives.
fn lift_radial(d: usize, j: u32, p: &UniPoly) -> MultiPoly {
    assert!(p.degree() as u32 <= j, "radial degree exceeds t^(2j) budget");
    let mut r2 = MultiPoly::zero(d);
    for i in 0..d {
        r2 = r2.add(&MultiPoly::var(d, Var::X(i)).pow(2));
    }
    let t = MultiPoly::var(d, Var::T);
    let arg = r2.scale(&rat(2)).sub(&t.pow(2)); // 2|x|^2 - t^2
    let mut acc = MultiPoly::zero(d);
    for (k, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = k as u32;
        acc = acc.add(&t.pow(2 * (j - k)).mul(&arg.pow(k)).scale(c));
    }
    acc
}

/// The raw rational polynomial part of the basis member `Q` at an index.
///
/// The effective member is `sqrt(scale2)` times this, where `scale2` is the
/// harmonic member's squared scale; every identity in this crate is
/// homogeneous in the member, so the raw polynomial is what the identity
/// machinery consumes.
pub fn q_poly(index: &ConeIndex, spec: &BasisSpec) -> Result<MultiPoly, BasisError> {
    index.check(spec.dim)?;
    let d = spec.dim;
    let member = harmonic_member(index, spec)?;
    let lag_alpha = rat(2 * index.m as i64) + rat(2) * &spec.mu + rat(d as i64);
    let lag = laguerre(index.n - index.m, &lag_alpha).into_poly_t(d);
    let beta = spec.beta_j(index.m, index.j);
    let radial = jacobi(index.j, &spec.mu, &beta).map_err(|_| {
        BasisError::InadmissibleIndex(index.n, index.m, index.j, index.ell, d)
    })?;
    let lifted = lift_radial(d, index.j, &radial);
    let mut q = lag.mul(&lifted).mul(&member.poly);
    if !spec.c.is_one() {
        q = q.scale_x(&(Rational::one() / &spec.c));
    }
    Ok(q)
}

/// Laguerre-Jacobi part of the squared norm (everything except the harmonic
/// member's squared sphere norm).
fn radial_norm_part(index: &ConeIndex, spec: &BasisSpec) -> Result<Rational, BasisError> {
    index.check(spec.dim)?;
    if spec.mu <= rat(-1) {
        return Err(BasisError::NormRequiresMuAboveMinusOne(spec.mu.to_string()));
    }
    let d = spec.dim;
    let (n, m, j) = (index.n, index.m, index.j);
    let mu = &spec.mu;
    let half_d = ratio(d as i64, 2);
    let num = pochhammer(&(rat(2) * mu + rat(d as i64 + 1)), n + m)
        * pochhammer(&(mu + rat(1)), j)
        * pochhammer(&half_d, m - j)
        * (mu + rat((m - j) as i64) + &half_d);
    let den = factorial(n - m)
        * factorial(j)
        * pochhammer(&(mu + &half_d + rat(1)), m - j)
        * (mu + rat(m as i64) + &half_d);
    Ok(num / den)
}

/// Closed-form squared norm `<Q, Q>_mu` of the *effective* member (including
/// its scale factor), for `mu > -1`: the Laguerre-Jacobi product formula
/// times the squared sphere norm of the harmonic member. Under the unit-norm
/// convention the harmonic factor is 1.
pub fn q_norm(index: &ConeIndex, spec: &BasisSpec) -> Result<Rational, BasisError> {
    let part = radial_norm_part(index, spec)?;
    let harm = harmonic_member(index, spec)?.sq_norm();
    Ok(part * harm)
}

/// Squared norm `<Q, Q>_mu` of the *raw polynomial* that [`q_poly`] returns
/// (no scale factor). This is the normalizer for expansion coefficients:
/// with it, `sum fhat q_poly` reconstructs the input for every convention.
pub fn q_poly_norm(index: &ConeIndex, spec: &BasisSpec) -> Result<Rational, BasisError> {
    let part = radial_norm_part(index, spec)?;
    let member = harmonic_member(index, spec)?;
    Ok(part * crate::moments::sphere_inner(&member.poly, &member.poly))
}

/// The `mu = 0` norm in closed form: `d (d+1)_{n+m} / ((2m+d) (n-m)!)`,
/// without the harmonic factor.
pub fn norm_mu0(d: usize, n: u32, m: u32) -> Rational {
    rat(d as i64) * pochhammer(&rat(d as i64 + 1), n + m)
        / (rat((2 * m) as i64 + d as i64) * factorial(n - m))
}

/// Transfer constant `a_{m,j} = (2m - 2j + d - 2) / (2m + d - 2)`, with the
/// convention `a_{0,0} = 1` when `d = 2` (the formula is 0/0 there).
pub fn a_mj(d: usize, m: u32, j: u32) -> Rational {
    if d == 2 && m == 0 {
        return Rational::one();
    }
    ratio(
        2 * m as i64 - 2 * j as i64 + d as i64 - 2,
        2 * m as i64 + d as i64 - 2,
    )
}

/// Transfer constant `b_{m,n} = (n - m + 1)(n - m + 2)`.
pub fn b_mn(n: u32, m: u32) -> Rational {
    let k = n as i64 - m as i64;
    rat((k + 1) * (k + 2))
}

/// Transfer constant `c_{m,n} = (n + m + d - 2)(n - m + 1)`.
pub fn c_mn(d: usize, n: u32, m: u32) -> Rational {
    rat((n as i64 + m as i64 + d as i64 - 2) * (n as i64 - m as i64 + 1))
}

/// Transfer constant `d_{m,n} = (n + m + d - 2)(n + m + d - 3)`.
pub fn d_mn(d: usize, n: u32, m: u32) -> Rational {
    let s = n as i64 + m as i64 + d as i64 - 2;
    rat(s * (s - 1))
}

/// Expand a `mu = -1` member in the `mu = 0` family: at most six terms with
/// rational coefficients. Terms whose target index is inadmissible are
/// dropped (the convention `Q = 0` for negative `m`, `j`, or `n < m`).
pub fn convert_m1_to_0(index: &ConeIndex, d: usize) -> Result<Vec<(ConeIndex, Rational)>, BasisError> {
    index.check(d)?;
    let (n, m, j, ell) = (index.n, index.m, index.j, index.ell);
    let a = a_mj(d, m, j);
    let mut out = Vec::with_capacity(6);
    let mut push = |n2: i64, m2: i64, j2: i64, coeff: Rational| {
        if n2 >= 0 && m2 >= 0 && j2 >= 0 && m2 <= n2 && !coeff.is_zero() {
            out.push((
                ConeIndex::new(n2 as u32, m2 as u32, j2 as u32, ell),
                coeff,
            ));
        }
    };
    let (ni, mi, ji) = (n as i64, m as i64, j as i64);
    push(ni, mi, ji, a.clone());
    push(ni, mi - 2, ji - 1, -&a * b_mn(n, m));
    push(ni - 1, mi, ji, -&a * rat(2));
    push(ni - 1, mi - 2, ji - 1, &a * rat(2) * c_mn(d, n, m));
    push(ni - 2, mi, ji, a.clone());
    push(ni - 2, mi - 2, ji - 1, -&a * d_mn(d, n, m));
    Ok(out)
}

/// Concurrent memo table of constructed basis polynomials.
#[derive(Default)]
pub struct BasisCache {
    inner: Mutex<HashMap<(ConeIndex, BasisSpec), Arc<MultiPoly>>>,
}

impl BasisCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Return the memoized raw polynomial for the index, building it once.
    pub fn get(&self, index: &ConeIndex, spec: &BasisSpec) -> Result<Arc<MultiPoly>, BasisError> {
        let key = (*index, spec.clone());
        if let Some(hit) = self.inner.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        // Build outside the lock; a racing builder produces the same value.
        let poly = Arc::new(q_poly(index, spec)?);
        let mut map = self.inner.lock().unwrap();
        Ok(map.entry(key).or_insert(poly).clone())
    }
}
