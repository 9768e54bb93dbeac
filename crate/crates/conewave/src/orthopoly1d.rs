//! Laguerre, Jacobi, and Gegenbauer polynomials with exact rational
//! coefficients, plus stable three-term-recurrence evaluation in floats.
//!
//! Exact forms come from the explicit hypergeometric sums; negative integer
//! Jacobi parameters go through the analytic-continuation factorization. The
//! two paths (exact coefficients vs float recurrence) are cross-validated in
//! tests.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{binomial, factorial, pochhammer, rat, ratio, to_i64, Rational};
use crate::polyalg::{MultiPoly, Var};

/// Errors for inadmissible orthogonal-polynomial parameters.
#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("Laguerre norm requires alpha > -1, got {0}")]
    LaguerreAlpha(String),
    #[error("Jacobi parameters inadmissible: alpha={alpha}, beta={beta}, degree={degree}")]
    JacobiParams {
        alpha: String,
        beta: String,
        degree: u32,
    },
    #[error("Jacobi norm requires alpha, beta > -1")]
    JacobiNorm,
}

/// Dense univariate polynomial; `coeffs[k]` multiplies the k-th power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly { coeffs }.trim()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
        .trim()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly { coeffs }.trim()
    }

    /// Shift degree up: multiply by the variable to the k-th power.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        }
        .trim()
    }

    pub fn eval_rational(&self, s: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * s + crate::arith::to_f64(c);
        }
        acc
    }

    /// Lift to a `MultiPoly` in the variable `t`.
    pub fn into_poly_t(&self, dim: usize) -> MultiPoly {
        let mut acc = MultiPoly::zero(dim);
        let t = MultiPoly::var(dim, Var::T);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&t.pow(k as u32).scale(c));
            }
        }
        acc
    }
}

/// Laguerre polynomial `L_n^alpha` by the explicit sum
/// `((alpha+1)_n / n!) sum_k (-n)_k t^k / (k! (alpha+1)_k)`.
///
/// Negative integer `alpha = -k0` with `1 <= k0 <= n` goes through the
/// continuation `L_n^{(-k0)}(t) = (-t)^{k0} ((n-k0)!/n!) L_{n-k0}^{(k0)}(t)`.
pub fn laguerre(n: u32, alpha: &Rational) -> UniPoly {
    if let Some(a) = to_i64(alpha) {
        if a < 0 && (-a) as u32 <= n {
            let k0 = (-a) as u32;
            let base = laguerre(n - k0, &rat(k0 as i64));
            let sign = if k0 % 2 == 0 { rat(1) } else { rat(-1) };
            let scale = sign * factorial(n - k0) / factorial(n);
            return base.scale(&scale).shift_up(k0 as usize);
        }
    }
    let prefactor = pochhammer(&(alpha + Rational::one()), n) / factorial(n);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut term = Rational::one();
    for k in 0..=n {
        coeffs.push(&prefactor * &term);
        if k < n {
            // multiply by (-n+k) / ((k+1)(alpha+1+k))
            term *= rat(-(n as i64) + k as i64);
            term /= rat(k as i64 + 1) * (alpha + rat(k as i64 + 1));
        }
    }
    UniPoly { coeffs }.trim()
}

/// Normalized squared L2 norm of `L_n^alpha`: `(alpha+1)_n / n!`.
pub fn laguerre_norm(n: u32, alpha: &Rational) -> Result<Rational, ParamError> {
    if *alpha <= rat(-1) {
        return Err(ParamError::LaguerreAlpha(alpha.to_string()));
    }
    Ok(pochhammer(&(alpha + Rational::one()), n) / factorial(n))
}

/// Laguerre evaluation by the stable three-term recurrence.
pub fn laguerre_eval(n: u32, alpha: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - t;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - t) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^{(alpha,beta)}` with exact coefficients.
///
/// For `alpha > -1` this is the hypergeometric sum. A negative integer
/// `alpha = -k` uses the factored continuation
/// `C(n,k) P_n^{(-k,beta)} = C(n+beta,k) ((s-1)/2)^k P_{n-k}^{(k,beta)}`,
/// valid for `n >= k`, with the convention `P_0^{(-1,beta)} = 1`.
pub fn jacobi(n: u32, alpha: &Rational, beta: &Rational) -> Result<UniPoly, ParamError> {
    if *beta <= rat(-1) {
        return Err(ParamError::JacobiParams {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            degree: n,
        });
    }
    if n == 0 {
        return Ok(UniPoly::one());
    }
    if let Some(a) = to_i64(alpha) {
        if a < 0 {
            let k = (-a) as u32;
            if n < k {
                return Err(ParamError::JacobiParams {
                    alpha: alpha.to_string(),
                    beta: beta.to_string(),
                    degree: n,
                });
            }
            let inner = jacobi(n - k, &rat(k as i64), beta)?;
            // ((s-1)/2)^k expanded as a UniPoly
            let half_shift = UniPoly {
                coeffs: vec![ratio(-1, 2), ratio(1, 2)],
            };
            let mut factor = UniPoly::one();
            for _ in 0..k {
                factor = factor.mul(&half_shift);
            }
            let scale = binomial(&(rat(n as i64) + beta), k) / binomial(&rat(n as i64), k);
            return Ok(inner.mul(&factor).scale(&scale));
        }
    } else if *alpha <= rat(-1) {
        return Err(ParamError::JacobiParams {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            degree: n,
        });
    }
    // P_n = ((alpha+1)_n/n!) sum_k (-n)_k (n+alpha+beta+1)_k / ((alpha+1)_k k!) ((1-s)/2)^k
    let prefactor = pochhammer(&(alpha + Rational::one()), n) / factorial(n);
    let half_arg = UniPoly {
        coeffs: vec![ratio(1, 2), ratio(-1, 2)],
    };
    let mut acc = UniPoly::zero();
    let mut coeff = Rational::one();
    let mut power = UniPoly::one();
    for k in 0..=n {
        acc = acc.add(&power.scale(&(&prefactor * &coeff)));
        if k < n {
            let kk = rat(k as i64);
            coeff *= (rat(-(n as i64)) + &kk) * (rat(n as i64) + alpha + beta + rat(1) + &kk);
            coeff /= (alpha + rat(1) + &kk) * (kk + rat(1));
            power = power.mul(&half_arg);
        }
    }
    Ok(acc)
}

/// Normalized squared L2 norm of `P_n^{(alpha,beta)}` against
/// `c_{alpha,beta} (1-s)^alpha (1+s)^beta` on `[-1,1]`:
/// `(alpha+1)_n (beta+1)_n (alpha+beta+n+1) / (n! (alpha+beta+2)_n (alpha+beta+2n+1))`.
pub fn jacobi_norm(n: u32, alpha: &Rational, beta: &Rational) -> Result<Rational, ParamError> {
    if *alpha <= rat(-1) || *beta <= rat(-1) {
        return Err(ParamError::JacobiNorm);
    }
    let one = Rational::one();
    let num = pochhammer(&(alpha + &one), n)
        * pochhammer(&(beta + &one), n)
        * (alpha + beta + rat(n as i64) + &one);
    let den = factorial(n)
        * pochhammer(&(alpha + beta + rat(2)), n)
        * (alpha + beta + rat(2 * n as i64) + one);
    Ok(num / den)
}

/// Jacobi evaluation by the standard three-term recurrence.
pub fn jacobi_eval(n: u32, alpha: f64, beta: f64, s: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (alpha - beta) + (1.0 + 0.5 * (alpha + beta)) * s;
    for k in 1..n {
        let kf = k as f64;
        let a1 = 2.0 * (kf + 1.0) * (kf + alpha + beta + 1.0) * (2.0 * kf + alpha + beta);
        let a2 = (2.0 * kf + alpha + beta + 1.0) * (alpha * alpha - beta * beta);
        let a3 = (2.0 * kf + alpha + beta)
            * (2.0 * kf + alpha + beta + 1.0)
            * (2.0 * kf + alpha + beta + 2.0);
        let a4 = 2.0 * (kf + alpha) * (kf + beta) * (2.0 * kf + alpha + beta + 2.0);
        let next = ((a2 + a3 * s) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Gegenbauer polynomial `C_n^lambda` by the standard recurrence.
pub fn gegenbauer(n: u32, lambda: &Rational) -> UniPoly {
    if n == 0 {
        return UniPoly::one();
    }
    let s = UniPoly {
        coeffs: vec![Rational::zero(), Rational::one()],
    };
    let mut prev = UniPoly::one();
    let mut cur = s.scale(&(rat(2) * lambda));
    for k in 1..n {
        let kk = rat(k as i64);
        let next = s
            .mul(&cur)
            .scale(&(rat(2) * (&kk + lambda)))
            .sub(&prev.scale(&(&kk + rat(2) * lambda - rat(1))))
            .scale(&(Rational::one() / (kk + rat(1))));
        prev = cur;
        cur = next;
    }
    cur
}

/// Checks two Laguerre identities exactly for the given `(n, alpha)`:
/// the contiguous relation `L_k^a = L_k^{a+1} - L_{k-1}^{a+1}` (at `k = n`,
/// and trivially `L_0^a = L_0^{a+1}` when `n = 0`), and the composite
/// `t^2 L_n^{a+2} - 2 a t L_n^{a+1} + a(a-1) L_n^a = (n+1)(n+2) L_{n+2}^{a-2}`.
pub fn laguerre_identities_check(n: u32, alpha: &Rational) -> bool {
    let a1 = alpha + rat(1);
    let contiguous = if n == 0 {
        laguerre(0, alpha) == laguerre(0, &a1)
    } else {
        laguerre(n, alpha) == laguerre(n, &a1).sub(&laguerre(n - 1, &a1))
    };
    let a2 = alpha + rat(2);
    let am2 = alpha - rat(2);
    let composite = laguerre(n, &a2)
        .shift_up(2)
        .sub(&laguerre(n, &a1).shift_up(1).scale(&(rat(2) * alpha)))
        .add(&laguerre(n, alpha).scale(&(alpha * (alpha - rat(1)))))
        == laguerre(n + 2, &am2).scale(&(rat((n as i64 + 1) * (n as i64 + 2))));
    contiguous && composite
}
