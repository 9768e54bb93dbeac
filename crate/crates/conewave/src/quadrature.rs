//! Gauss rules (Laguerre, Jacobi, Legendre) and product rules on the cone
//! and its boundary.
//!
//! Nodes and weights come from the symmetric tridiagonal eigenproblem of the
//! recurrence coefficients. All 1D rules are normalized: weights sum to one
//! against the normalized weight function, so the cone product rule computes
//! `<f,g>_mu` directly and its weights sum to one.
//!
//! Summation over nodes is pairwise in a fixed order, so identical inputs
//! reproduce bit-identical results.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::arith::to_f64;
use crate::conebasis::BasisSpec;
use crate::moments::{ball_volume, gamma_f64, omega_d};
use crate::polyalg::MultiPoly;

#[derive(Debug, Error, PartialEq)]
pub enum RuleError {
    #[error("rule needs at least one point")]
    EmptyRule,
    #[error("Gauss-Laguerre requires alpha > -1, got {0}")]
    LaguerreAlpha(f64),
    #[error("Gauss-Jacobi requires alpha, beta > -1, got ({0}, {1})")]
    JacobiParams(f64, f64),
    #[error("cone rules require mu > -1, got {0}")]
    MuOutOfRange(f64),
}

/// A one-dimensional Gauss rule, normalized so weights sum to one.
#[derive(Debug, Clone)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1d {
    /// Integrate `f` against the rule's normalized weight.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        pairwise_sum(
            &self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * f(x))
                .collect::<Vec<_>>(),
        )
    }
}

/// Pairwise (cascade) summation in a fixed order: deterministic and with
/// O(log n) error growth.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Nodes and weights from the symmetric tridiagonal (Jacobi) matrix of a
/// three-term recurrence: weights are the squared first components of the
/// normalized eigenvectors.
fn golub_welsch(diag: &[f64], offdiag: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = offdiag[i];
            m[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = m.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let v: DVector<f64> = eig.eigenvectors.column(k).into();
            (x, v[0] * v[0])
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("eigenvalue NaN"));
    pairs.into_iter().unzip()
}

/// Gauss-Laguerre rule for the normalized weight `t^alpha e^-t / Gamma(alpha+1)`,
/// exact for polynomials of degree `<= 2 npts - 1`.
pub fn gauss_laguerre(npts: usize, alpha: f64) -> Result<Rule1d, RuleError> {
    if npts == 0 {
        return Err(RuleError::EmptyRule);
    }
    if alpha <= -1.0 {
        return Err(RuleError::LaguerreAlpha(alpha));
    }
    let diag: Vec<f64> = (0..npts).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let offdiag: Vec<f64> = (1..npts)
        .map(|k| (k as f64 * (k as f64 + alpha)).sqrt())
        .collect();
    let (nodes, weights) = golub_welsch(&diag, &offdiag);
    Ok(Rule1d { nodes, weights })
}

/// Gauss-Jacobi rule for the normalized weight
/// `(1-s)^alpha (1+s)^beta / int_-1^1 (1-s)^alpha (1+s)^beta ds` on `[-1, 1]`.
/// Symmetric parameters produce a node set symmetrized about zero.
pub fn gauss_jacobi(npts: usize, alpha: f64, beta: f64) -> Result<Rule1d, RuleError> {
    if npts == 0 {
        return Err(RuleError::EmptyRule);
    }
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(RuleError::JacobiParams(alpha, beta));
    }
    let mut diag = Vec::with_capacity(npts);
    let mut offdiag = Vec::with_capacity(npts.saturating_sub(1));
    for k in 0..npts {
        let kf = k as f64;
        let denom = 2.0 * kf + alpha + beta;
        diag.push(if k == 0 {
            (beta - alpha) / (alpha + beta + 2.0)
        } else {
            (beta * beta - alpha * alpha) / (denom * (denom + 2.0))
        });
        if k + 1 < npts {
            let k1 = kf + 1.0;
            let d1 = 2.0 * k1 + alpha + beta;
            let num = if k == 0 {
                4.0 * (1.0 + alpha) * (1.0 + beta)
                    / ((alpha + beta + 3.0) * (alpha + beta + 2.0).powi(2))
            } else {
                4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + alpha + beta)
                    / ((d1 * d1 - 1.0) * d1 * d1)
            };
            offdiag.push(num.sqrt());
        }
    }
    let (mut nodes, mut weights) = golub_welsch(&diag, &offdiag);
    if (alpha - beta).abs() < 1e-15 {
        // enforce exact symmetry so odd integrands cancel cleanly
        let n = nodes.len();
        for i in 0..n / 2 {
            let v = 0.5 * (nodes[i] - nodes[n - 1 - i]);
            nodes[i] = v;
            nodes[n - 1 - i] = -v;
            let w = 0.5 * (weights[i] + weights[n - 1 - i]);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
    }
    Ok(Rule1d { nodes, weights })
}

/// Gauss-Legendre rule on `[-1, 1]` with the normalized weight `1/2`.
pub fn gauss_legendre(npts: usize) -> Result<Rule1d, RuleError> {
    gauss_jacobi(npts, 0.0, 0.0)
}

/// Quadrature on the unit sphere `S^{d-1}` with the normalized measure
/// `(1/omega_d) d omega`, exact for spherical polynomials up to the requested
/// trig degree. Node sets are symmetric under negation so odd monomials cancel.
fn sphere_rule(d: usize, trig_degree: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    match d {
        1 => (vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]),
        2 => {
            let half = trig_degree / 2 + 2;
            let k = 2 * half;
            let mut nodes = Vec::with_capacity(k);
            let mut weights = Vec::with_capacity(k);
            for i in 0..half {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                nodes.push(vec![theta.cos(), theta.sin()]);
                weights.push(1.0 / k as f64);
            }
            for i in 0..half {
                let p = nodes[i].clone();
                nodes.push(vec![-p[0], -p[1]]);
                weights.push(1.0 / k as f64);
            }
            (nodes, weights)
        }
        3 => {
            let nu = trig_degree / 2 + 2;
            let polar = gauss_legendre(nu).expect("legendre rule");
            let half = trig_degree / 2 + 2;
            let k = 2 * half;
            let mut azimuth: Vec<(f64, f64)> = Vec::with_capacity(k);
            for i in 0..half {
                let phi = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                azimuth.push((phi.cos(), phi.sin()));
            }
            for i in 0..half {
                let (c, s) = azimuth[i];
                azimuth.push((-c, -s));
            }
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for (&u, &wu) in polar.nodes.iter().zip(&polar.weights) {
                let r = (1.0 - u * u).max(0.0).sqrt();
                for &(c, s) in &azimuth {
                    nodes.push(vec![r * c, r * s, u]);
                    weights.push(wu / k as f64);
                }
            }
            (nodes, weights)
        }
        _ => panic!("unsupported dimension {d}"),
    }
}

/// Where a rule integrates: the solid cone with weight `mu`, or its lateral
/// boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleTarget {
    /// `<f,g>_mu = b_mu int f g (c^2 t^2 - |x|^2)^mu e^-t`.
    Cone,
    /// `int_boundary f g t^-1 e^-t d sigma` (unnormalized).
    Boundary,
}

/// A product rule on the cone `|x| <= c t` (or its boundary) with a declared
/// polynomial exactness degree.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    /// Nodes `(x, t)`.
    pub nodes: Vec<(Vec<f64>, f64)>,
    pub weights: Vec<f64>,
    pub exact_degree: usize,
    pub target: RuleTarget,
}

impl QuadratureRule {
    /// Integrate a function of `(x, t)` with deterministic pairwise summation.
    pub fn integrate(&self, mut f: impl FnMut(&[f64], f64) -> f64) -> f64 {
        let vals: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|((x, t), &w)| w * f(x, *t))
            .collect();
        pairwise_sum(&vals)
    }

    /// Inner product of two polynomials under the rule's measure.
    pub fn inner(&self, f: &MultiPoly, g: &MultiPoly) -> f64 {
        self.integrate(|x, t| f.eval_f64(x, t) * g.eval_f64(x, t))
    }

    /// Values of a polynomial at all nodes, for Gram-matrix assembly.
    pub fn eval_all(&self, p: &MultiPoly) -> Vec<f64> {
        self.nodes.iter().map(|(x, t)| p.eval_f64(x, *t)).collect()
    }

    /// Weighted dot product of two value vectors from [`Self::eval_all`].
    pub fn inner_from_values(&self, a: &[f64], b: &[f64]) -> f64 {
        let vals: Vec<f64> = a
            .iter()
            .zip(b)
            .zip(&self.weights)
            .map(|((&x, &y), &w)| w * x * y)
            .collect();
        pairwise_sum(&vals)
    }
}

/// Product Gauss rule computing `<f,g>_mu` on the cone of the spec, exact for
/// polynomial products of total degree `<= exact_degree`.
///
/// Construction: `x = c t rho xi` splits the integral into a Laguerre factor
/// in `t` (parameter `2 mu + d`), a Jacobi factor in `s = 2 rho^2 - 1`
/// (parameters `(mu, (d-2)/2)`), and a sphere average. Each factor rule is
/// normalized, so the product weights sum to one and no explicit `b_mu` is
/// needed; the weight's `c`-dependence is absorbed the same way.
pub fn cone_rule(spec: &BasisSpec, exact_degree: usize) -> Result<QuadratureRule, RuleError> {
    let mu = to_f64(&spec.mu);
    if mu <= -1.0 {
        return Err(RuleError::MuOutOfRange(mu));
    }
    let d = spec.dim;
    let c = to_f64(&spec.c);
    let npts_t = exact_degree / 2 + 3;
    let lag = gauss_laguerre(npts_t, 2.0 * mu + d as f64)?;
    let npts_r = exact_degree / 4 + 3;
    let jac = gauss_jacobi(npts_r, mu, (d as f64 - 2.0) / 2.0)?;
    let (sph_nodes, sph_weights) = sphere_rule(d, exact_degree);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (&t, &wt) in lag.nodes.iter().zip(&lag.weights) {
        for (&s, &ws) in jac.nodes.iter().zip(&jac.weights) {
            let rho = ((1.0 + s) / 2.0).max(0.0).sqrt();
            for (xi, &wx) in sph_nodes.iter().zip(&sph_weights) {
                let x: Vec<f64> = xi.iter().map(|&v| c * t * rho * v).collect();
                nodes.push((x, t));
                weights.push(wt * ws * wx);
            }
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        exact_degree,
        target: RuleTarget::Cone,
    })
}

/// Rule for the unnormalized boundary integral
/// `int_boundary f t^-1 e^-t d sigma = sqrt(2) int_0^inf t^{d-2} e^-t
/// int_{S^{d-1}} f(t xi, t) d omega dt` at unit speed.
///
/// For `d = 1` the radial weight is `t^-1`, which diverges on constants; the
/// rule folds `1/t` into the integrand, which is exact for integrands
/// vanishing at the apex (every product of distinct basis members).
pub fn boundary_rule(d: usize, exact_degree: usize) -> Result<QuadratureRule, RuleError> {
    let npts_t = exact_degree / 2 + 3;
    let (sph_nodes, sph_weights) = sphere_rule(d, exact_degree);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let sqrt2 = std::f64::consts::SQRT_2;
    if d == 1 {
        let lag = gauss_laguerre(npts_t, 0.0)?;
        for (&t, &wt) in lag.nodes.iter().zip(&lag.weights) {
            for (xi, &wx) in sph_nodes.iter().zip(&sph_weights) {
                nodes.push((vec![xi[0] * t], t));
                weights.push(sqrt2 * omega_d(1) * wt * wx / t);
            }
        }
    } else {
        let alpha = d as f64 - 2.0;
        let lag = gauss_laguerre(npts_t, alpha)?;
        let mass = gamma_f64(alpha + 1.0) * omega_d(d);
        for (&t, &wt) in lag.nodes.iter().zip(&lag.weights) {
            for (xi, &wx) in sph_nodes.iter().zip(&sph_weights) {
                let x: Vec<f64> = xi.iter().map(|&v| v * t).collect();
                nodes.push((x, t));
                weights.push(sqrt2 * mass * wt * wx);
            }
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        exact_degree,
        target: RuleTarget::Boundary,
    })
}

/// Sobolev inner product at unit speed:
/// `int_V grad_x f . grad_x g e^-t dx dt + lambda int_boundary f g t^-1 e^-t d sigma`.
///
/// The volume term is unnormalized (`<h,1>_0 / b_0` with
/// `b_0 = 1/(vol(B^d) Gamma(d+1))`); the boundary surface element is
/// `sqrt(2) t^{d-1} dt d omega` from the graph parametrization `|x| = t`.
pub fn sobolev_inner(f: &MultiPoly, g: &MultiPoly, lambda: f64) -> f64 {
    assert_eq!(f.dim(), g.dim(), "dimension mismatch");
    let d = f.dim();
    let degree = (f.degree() + g.degree()) as usize;
    let spec = BasisSpec::standard(d, crate::harmonics::Convention::TrigPaper);
    let vol_rule = cone_rule(&spec, degree.max(2)).expect("cone rule");
    let gf = f.grad_x();
    let gg = g.grad_x();
    let mut h = MultiPoly::zero(d);
    for i in 0..d {
        h = h.add(&gf[i].mul(&gg[i]));
    }
    let b0_inv = ball_volume(d) * gamma_f64(d as f64 + 1.0);
    let volume = vol_rule.integrate(|x, t| h.eval_f64(x, t)) * b0_inv;
    let brule = boundary_rule(d, degree).expect("boundary rule");
    let boundary = brule.integrate(|x, t| f.eval_f64(x, t) * g.eval_f64(x, t));
    volume + lambda * boundary
}
