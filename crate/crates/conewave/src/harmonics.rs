//! Real spherical harmonics for d = 1, 2, 3 as exact homogeneous polynomials.
//!
//! Members are stored as a rational polynomial together with a rational
//! squared scale factor: the effective member is `sqrt(scale2) * poly`. This
//! keeps every Gram computation exact even for the unit-norm convention,
//! whose scaling constants are square roots of rationals.
//!
//! Ordering is deterministic: for d = 2 the cosine-type member precedes the
//! sine-type; for d = 3 the zonal member comes first, then (cos, sin) pairs
//! by ascending azimuthal order.

use num_traits::{One, Zero};

use crate::arith::{rat, Rational};
use crate::moments::sphere_inner;
use crate::orthopoly1d::jacobi;
use crate::polyalg::{MultiPoly, Var};

/// Normalization convention for harmonic members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Members scaled to unit norm under `(1/omega_d) int_{S^{d-1}}`.
    Orthonormal,
    /// Unnormalized trigonometric members (`r^k cos k theta`, `r^k sin k theta`
    /// as polynomials for d = 2; raw rational members for d = 1, 3).
    TrigPaper,
}

/// One harmonic basis member: effectively `sqrt(scale2) * poly`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMember {
    /// Rational polynomial part, homogeneous and harmonic.
    pub poly: MultiPoly,
    /// Squared scale factor applied to `poly`.
    pub scale2: Rational,
}

impl HarmonicMember {
    /// Exact squared sphere norm of the effective member.
    pub fn sq_norm(&self) -> Rational {
        &self.scale2 * sphere_inner(&self.poly, &self.poly)
    }

    /// Floating-point evaluation of the effective member at `x`.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        crate::arith::to_f64(&self.scale2).sqrt() * self.poly.eval_f64(x, 0.0)
    }
}

/// An ordered degree-k harmonic basis.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub dim: usize,
    pub degree: u32,
    pub convention: Convention,
    pub members: Vec<HarmonicMember>,
}

/// Dimension of the space of degree-k spherical harmonics in d variables.
pub fn dim_h(d: usize, k: u32) -> usize {
    match d {
        1 => usize::from(k <= 1),
        2 => {
            if k == 0 {
                1
            } else {
                2
            }
        }
        3 => 2 * k as usize + 1,
        _ => panic!("unsupported dimension {d}"),
    }
}

/// Real and imaginary parts of `(x1 + i x2)^q` as polynomials in dimension d.
fn circular_pair(d: usize, q: u32) -> (MultiPoly, MultiPoly) {
    let x1 = MultiPoly::var(d, Var::X(0));
    let x2 = MultiPoly::var(d, Var::X(1));
    let mut re = MultiPoly::one(d);
    let mut im = MultiPoly::zero(d);
    for _ in 0..q {
        let new_re = re.mul(&x1).sub(&im.mul(&x2));
        let new_im = re.mul(&x2).add(&im.mul(&x1));
        re = new_re;
        im = new_im;
    }
    (re, im)
}

/// `r^{k-q} (d^q P_k / du^q)(x3 / r)` expanded as a polynomial in `x3` and
/// `r^2 = x1^2 + x2^2 + x3^2`. Polynomial because the q-th derivative of the
/// Legendre polynomial has parity `k - q`.
fn legendre_radial_part(k: u32, q: u32) -> MultiPoly {
    let d = 3;
    let mut deriv = jacobi(k, &rat(0), &rat(0)).expect("Legendre parameters");
    for _ in 0..q {
        deriv = deriv.derivative();
    }
    let r2 = MultiPoly::var(d, Var::X(0))
        .pow(2)
        .add(&MultiPoly::var(d, Var::X(1)).pow(2))
        .add(&MultiPoly::var(d, Var::X(2)).pow(2));
    let x3 = MultiPoly::var(d, Var::X(2));
    let deg = k - q;
    let mut acc = MultiPoly::zero(d);
    for (e, c) in deriv.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = e as u32;
        // u^e scaled by r^{deg}: x3^e * r^{deg - e}, with deg - e even
        debug_assert!((deg - e) % 2 == 0);
        acc = acc.add(&x3.pow(e).mul(&r2.pow((deg - e) / 2)).scale(c));
    }
    acc
}

/// Raw (unnormalized) rational members of the degree-k harmonic space.
fn raw_members(d: usize, k: u32) -> Vec<MultiPoly> {
    match d {
        1 => match k {
            0 => vec![MultiPoly::one(1)],
            1 => vec![MultiPoly::var(1, Var::X(0))],
            _ => vec![],
        },
        2 => {
            if k == 0 {
                vec![MultiPoly::one(2)]
            } else {
                let (re, im) = circular_pair(2, k);
                vec![re, im]
            }
        }
        3 => {
            let mut members = Vec::with_capacity(2 * k as usize + 1);
            members.push(legendre_radial_part(k, 0));
            for q in 1..=k {
                let (re, im) = circular_pair(3, q);
                let radial = legendre_radial_part(k, q);
                members.push(re.mul(&radial));
                members.push(im.mul(&radial));
            }
            members
        }
        _ => panic!("unsupported dimension {d}"),
    }
}

/// Build the degree-k harmonic basis in the requested convention.
pub fn basis(d: usize, k: u32, convention: Convention) -> HarmonicBasis {
    let members = raw_members(d, k)
        .into_iter()
        .map(|poly| {
            let scale2 = match convention {
                Convention::TrigPaper => Rational::one(),
                Convention::Orthonormal => {
                    let n = sphere_inner(&poly, &poly);
                    Rational::one() / n
                }
            };
            HarmonicMember { poly, scale2 }
        })
        .collect();
    HarmonicBasis {
        dim: d,
        degree: k,
        convention,
        members,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn dims() {
        assert_eq!(dim_h(3, 2), 5);
        assert_eq!(dim_h(2, 0), 1);
        assert_eq!(dim_h(1, 2), 0);
        assert_eq!(dim_h(1, 1), 1);
        assert_eq!(dim_h(2, 7), 2);
    }

    #[test]
    fn member_counts_match_dims() {
        for d in 1..=3 {
            for k in 0..=6 {
                let b = basis(d, k, Convention::Orthonormal);
                assert_eq!(b.members.len(), dim_h(d, k), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn degree2_trig_members() {
        let b = basis(2, 2, Convention::TrigPaper);
        let x1 = MultiPoly::var(2, Var::X(0));
        let x2 = MultiPoly::var(2, Var::X(1));
        assert_eq!(b.members[0].poly, x1.pow(2).sub(&x2.pow(2)));
        assert_eq!(b.members[1].poly, x1.mul(&x2).scale(&rat(2)));
        assert_eq!(b.members[0].scale2, rat(1));
    }

    #[test]
    fn degree1_orthonormal_d3() {
        // members are sqrt(3) * {x3, x1, x2}: zonal first, then cos, sin
        let b = basis(3, 1, Convention::Orthonormal);
        let expect = [2usize, 0, 1];
        for (member, &var) in b.members.iter().zip(&expect) {
            assert_eq!(member.poly, MultiPoly::var(3, Var::X(var)));
            assert_eq!(member.scale2, rat(3));
            assert_eq!(member.sq_norm(), rat(1));
        }
    }

    #[test]
    fn members_are_harmonic_and_homogeneous() {
        for d in 1..=3usize {
            for k in 0..=6u32 {
                for member in basis(d, k, Convention::TrigPaper).members {
                    assert!(
                        member.poly.laplace_x().is_zero(),
                        "d={d} k={k}: not harmonic"
                    );
                    // Y(lambda x) = lambda^k Y(x) checked at k+2 rational points,
                    // enough to pin a polynomial identity in lambda.
                    for i in 0..(k + 2) {
                        let lambda = ratio(2 * i as i64 + 3, 2);
                        let mut lk = Rational::one();
                        for _ in 0..k {
                            lk *= &lambda;
                        }
                        assert_eq!(
                            member.poly.scale_x(&lambda),
                            member.poly.scale(&lk),
                            "d={d} k={k}: not homogeneous"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn orthonormal_gram_is_identity_exactly() {
        for d in 1..=3usize {
            for k in 0..=6u32 {
                let b = basis(d, k, Convention::Orthonormal);
                for (i, a) in b.members.iter().enumerate() {
                    for (j, c) in b.members.iter().enumerate() {
                        let raw = sphere_inner(&a.poly, &c.poly);
                        if i == j {
                            assert_eq!(&a.scale2 * &raw, rat(1), "d={d} k={k} i={i}");
                        } else {
                            assert_eq!(raw, rat(0), "d={d} k={k} ({i},{j})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_degree_orthogonality() {
        // members of different degrees are sphere-orthogonal; same parity pairs
        // are the nontrivial cases
        for d in 2..=3usize {
            for k in 0..=4u32 {
                for k2 in (k + 2..=6).step_by(2) {
                    for a in basis(d, k, Convention::TrigPaper).members {
                        for b in basis(d, k2, Convention::TrigPaper).members {
                            assert_eq!(sphere_inner(&a.poly, &b.poly), rat(0));
                        }
                    }
                }
            }
        }
    }
}
