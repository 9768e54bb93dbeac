//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials live in the variables `x1..xd, t` with `d <= 3`. They are the
//! ground truth for every operator identity in this crate: all differential
//! operators here are applied symbolically with no floating point involved.
//!
//! Terms are stored sparsely, keyed by exponent tuples in graded-lex order so
//! that iteration and printing are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, rat, Rational};

/// Hard cap on total degree; exceeding it aborts with a clear message rather
/// than letting a symbolic blowup grind on.
pub const DEGREE_CAP: u32 = 64;

/// A variable of the ambient space: one of `x1..xd` (0-based) or `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// Spatial variable `x{i+1}`.
    X(usize),
    /// The time-like variable `t`.
    T,
}

/// Exponent tuple `(a_1..a_d, a_t)`, ordered graded-lex: total degree first,
/// then t-major lexicographic. This gives stable term iteration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn t_exp(&self) -> u32 {
        *self.0.last().expect("empty exponent tuple")
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.t_exp().cmp(&other.t_exp()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial in `(x1..xd, t)` with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<Mono, Rational>,
}

impl MultiPoly {
    /// The zero polynomial in spatial dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        assert!((1..=3).contains(&dim), "spatial dimension must be 1..=3");
        MultiPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; dim + 1]), c);
        }
        p
    }

    /// The polynomial `x_i` or `t`.
    pub fn var(dim: usize, v: Var) -> Self {
        let mut exps = vec![0u32; dim + 1];
        match v {
            Var::X(i) => {
                assert!(i < dim, "variable x{} out of range for dim {}", i + 1, dim);
                exps[i] = 1;
            }
            Var::T => exps[dim] = 1,
        }
        let mut p = Self::zero(dim);
        p.terms.insert(Mono(exps), Rational::one());
        p
    }

    /// Build from raw `(exponents, coefficient)` pairs; zeros are pruned.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(dim);
        for (exps, c) in terms {
            assert_eq!(exps.len(), dim + 1, "exponent tuple length must be dim+1");
            p.add_term(Mono(exps), c);
        }
        p
    }

    /// Spatial dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::total).max().unwrap_or(0)
    }

    /// Iterate terms in graded-lex order as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Coefficient of an exponent tuple (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(
            self.dim, other.dim,
            "dimension mismatch: {} vs {}",
            self.dim, other.dim
        );
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact negation.
    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    /// Exact product. Panics past [`DEGREE_CAP`] to catch runaway blowup.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        let deg = self.degree() + other.degree();
        assert!(
            self.is_zero() || other.is_zero() || deg <= DEGREE_CAP,
            "product degree {} exceeds cap {}",
            deg,
            DEGREE_CAP
        );
        let mut out = Self::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Mono(exps), ca * cb);
            }
        }
        out
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Self {
        let idx = match v {
            Var::X(i) => {
                assert!(i < self.dim, "variable x{} out of range", i + 1);
                i
            }
            Var::T => self.dim,
        };
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] = e - 1;
            out.add_term(Mono(exps), c * rat(e as i64));
        }
        out
    }

    /// Spatial Laplacian `sum_i d^2/dx_i^2`.
    pub fn laplace_x(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            out = out.add(&self.partial(Var::X(i)).partial(Var::X(i)));
        }
        out
    }

    /// Spatial gradient, one polynomial per `x_i`.
    pub fn grad_x(&self) -> Vec<Self> {
        (0..self.dim).map(|i| self.partial(Var::X(i))).collect()
    }

    /// Euler operator `<x, grad_x>` in the spatial variables.
    pub fn x_dot_grad(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let xdeg: u32 = m.0[..self.dim].iter().sum();
            if xdeg > 0 {
                out.add_term(m.clone(), c * rat(xdeg as i64));
            }
        }
        out
    }

    /// Conjugated wave operator at unit speed:
    /// `e^t (d_tt - Lap_x) e^{-t} p = p_tt - 2 p_t + p - Lap_x p`, exactly.
    pub fn conjugated_wave(&self) -> Self {
        let pt = self.partial(Var::T);
        let ptt = pt.partial(Var::T);
        ptt.sub(&pt.scale(&rat(2)))
            .add(self)
            .sub(&self.laplace_x())
    }

    /// The operator `t^2 Lap_x - <x,grad>^2 - d <x,grad>`.
    pub fn operator_d(&self) -> Self {
        let t2 = MultiPoly::var(self.dim, Var::T).pow(2);
        let euler = self.x_dot_grad();
        t2.mul(&self.laplace_x())
            .sub(&euler.x_dot_grad())
            .sub(&euler.scale(&rat(self.dim as i64)))
    }

    /// The second-order operator whose eigenfunctions the cone bases are:
    /// `t (Lap_x + d_tt) + 2 <x,grad> d_t - <x,grad> + (2 mu + d + 1 - t) d_t`.
    pub fn eigen_operator(&self, mu: &Rational) -> Self {
        let d = self.dim;
        let t = MultiPoly::var(d, Var::T);
        let pt = self.partial(Var::T);
        let ptt = pt.partial(Var::T);
        let lap = self.laplace_x();
        let shift = rat(2) * mu + rat(d as i64 + 1);
        t.mul(&lap.add(&ptt))
            .add(&pt.x_dot_grad().scale(&rat(2)))
            .sub(&self.x_dot_grad())
            .add(&pt.scale(&shift))
            .sub(&t.mul(&pt))
    }

    /// Substitute `x -> c x` (each spatial variable scaled by `c`), exactly.
    pub fn scale_x(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c0) in &self.terms {
            let xdeg: u32 = m.0[..self.dim].iter().sum();
            let mut factor = Rational::one();
            for _ in 0..xdeg {
                factor *= c;
            }
            out.add_term(m.clone(), c0 * factor);
        }
        out
    }

    /// Exact evaluation at a rational point `(x, t)`.
    pub fn eval_rational(&self, x: &[Rational], t: &Rational) -> Rational {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0[..self.dim].iter().enumerate() {
                for _ in 0..e {
                    term *= &x[i];
                }
            }
            for _ in 0..m.t_exp() {
                term *= t;
            }
            acc += term;
        }
        acc
    }

    /// Floating-point evaluation at `(x, t)`.
    pub fn eval_f64(&self, x: &[f64], t: f64) -> f64 {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().expect("coefficient out of f64 range");
            for (i, &e) in m.0[..self.dim].iter().enumerate() {
                term *= x[i].powi(e as i32);
            }
            term *= t.powi(m.t_exp() as i32);
            acc += term;
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: terms in descending graded-lex order, factors
    /// printed `t` first then `x1..xd`, e.g. `2*t*x1^2 - 1/3*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.total() == 0 {
                factors.push(format_rational(&abs));
            }
            let te = m.t_exp();
            if te == 1 {
                factors.push("t".into());
            } else if te > 1 {
                factors.push(format!("t^{te}"));
            }
            for (i, &e) in m.0[..self.dim].iter().enumerate() {
                if e == 1 {
                    factors.push(format!("x{}", i + 1));
                } else if e > 1 {
                    factors.push(format!("x{}^{}", i + 1, e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn x(dim: usize, i: usize) -> MultiPoly {
        MultiPoly::var(dim, Var::X(i))
    }

    fn t(dim: usize) -> MultiPoly {
        MultiPoly::var(dim, Var::T)
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = x(2, 0);
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let d = 2;
        let lhs = t(d).sub(&x(d, 0)).mul(&t(d).add(&x(d, 0)));
        let rhs = t(d).pow(2).sub(&x(d, 0).pow(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_combination() {
        let d = 2;
        let txy = t(d).mul(&x(d, 1));
        let got = txy.scale(&rat(3)).add(&txy);
        assert_eq!(got, txy.scale(&rat(4)));
    }

    #[test]
    fn partial_derivatives() {
        let d = 2;
        let p = t(d).pow(2).mul(&x(d, 1));
        assert_eq!(p.partial(Var::T), t(d).mul(&x(d, 1)).scale(&rat(2)));
        let q = t(d).mul(&x(d, 0).pow(2));
        assert_eq!(q.partial(Var::X(0)), t(d).mul(&x(d, 0)).scale(&rat(2)));
        assert!(t(d).pow(3).partial(Var::X(1)).is_zero());
    }

    #[test]
    fn laplacian_cases() {
        let d = 2;
        let p = x(d, 0).pow(2).add(&x(d, 1).pow(2));
        assert_eq!(p.laplace_x(), MultiPoly::constant(d, rat(4)));
        let q = x(d, 0).mul(&x(d, 1).pow(2));
        assert_eq!(q.laplace_x(), x(d, 0).scale(&rat(2)));
        let harmonic = x(d, 0).pow(2).sub(&x(d, 1).pow(2));
        assert!(harmonic.laplace_x().is_zero());
    }

    #[test]
    fn conjugated_wave_on_constants_and_t() {
        let d = 2;
        assert_eq!(MultiPoly::one(d).conjugated_wave(), MultiPoly::one(d));
        // p = t: p_tt - 2 p_t + p - Lap p = 0 - 2 + t - 0
        assert_eq!(
            t(d).conjugated_wave(),
            t(d).sub(&MultiPoly::constant(d, rat(2)))
        );
    }

    #[test]
    fn conjugated_wave_recovers_forcing_from_known_solution() {
        // u = 8 + 2 x1^2 + 6 x2 + t^2 x2 + t (2 + x1^2 + 4 x2) + x1 (2 + x2^2)
        let d = 2;
        let u = MultiPoly::constant(d, rat(8))
            .add(&x(d, 0).pow(2).scale(&rat(2)))
            .add(&x(d, 1).scale(&rat(6)))
            .add(&t(d).pow(2).mul(&x(d, 1)))
            .add(&t(d).mul(
                &MultiPoly::constant(d, rat(2))
                    .add(&x(d, 0).pow(2))
                    .add(&x(d, 1).scale(&rat(4))),
            ))
            .add(&x(d, 0).mul(&MultiPoly::constant(d, rat(2)).add(&x(d, 1).pow(2))));
        let f = t(d)
            .mul(&x(d, 0).pow(2))
            .add(&t(d).pow(2).mul(&x(d, 1)))
            .add(&x(d, 0).mul(&x(d, 1).pow(2)));
        assert_eq!(u.conjugated_wave(), f);
        // and the closed form evaluates to 8 at the apex, 10 at (0,0,1)
        assert_eq!(
            u.eval_rational(&[rat(0), rat(0)], &rat(0)),
            rat(8),
            "value at the apex is the constant term"
        );
        assert_eq!(u.eval_rational(&[rat(0), rat(0)], &rat(1)), rat(10));
    }

    #[test]
    fn operator_d_cases() {
        let d = 2;
        assert!(MultiPoly::one(d).operator_d().is_zero());
        // D x1 = -x1 - 2 x1 = -3 x1, matching -m(m+d) with m=1, d=2
        assert_eq!(x(d, 0).operator_d(), x(d, 0).scale(&rat(-3)));
    }

    #[test]
    fn eigen_operator_cases() {
        let d = 2;
        assert!(MultiPoly::one(d).eigen_operator(&rat(0)).is_zero());
        // p = d + 1 - t is a degree-1 eigenfunction at mu = 0 with eigenvalue -1
        let p = MultiPoly::constant(d, rat(d as i64 + 1)).sub(&t(d));
        assert_eq!(p.eigen_operator(&rat(0)), p.neg());
    }

    #[test]
    fn eval_cases() {
        let d = 1;
        let p = t(d).pow(2).sub(&x(d, 0).pow(2));
        assert_eq!(p.eval_rational(&[rat(1)], &rat(2)), rat(3));
        let q = MultiPoly::constant(d, ratio(5, 3));
        assert_eq!(q.eval_rational(&[rat(9)], &rat(7)), ratio(5, 3));
    }

    #[test]
    fn display_canonical_form() {
        let d = 2;
        let p = t(d)
            .mul(&x(d, 0).pow(2))
            .scale(&rat(2))
            .sub(&x(d, 1).scale(&ratio(1, 3)));
        assert_eq!(p.to_string(), "2*t*x1^2 - 1/3*x2");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn dimension_mismatch_panics() {
        let _ = x(1, 0).add(&x(2, 0));
    }

    #[test]
    fn scale_x_substitutes() {
        let d = 2;
        let p = x(d, 0).pow(2).mul(&t(d));
        assert_eq!(p.scale_x(&rat(3)), p.scale(&rat(9)));
    }
}
