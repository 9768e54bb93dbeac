//! Spherical-harmonic bases as exact polynomials: member lists, harmonicity,
//! and exact Gram matrices under the normalized sphere inner product.
//!
//! Run with: `cargo run --example harmonic_bases`

use conewave::arith::format_rational;
use conewave::harmonics::{basis, dim_h, Convention};
use conewave::moments::sphere_inner;

fn main() {
    for d in 1..=3usize {
        println!("d = {d}:");
        for k in 0..=3u32 {
            let b = basis(d, k, Convention::Orthonormal);
            println!("  degree {k}: dim = {}", dim_h(d, k));
            for member in &b.members {
                println!(
                    "    sqrt({}) * ({})   [squared norm {}]",
                    format_rational(&member.scale2),
                    member.poly,
                    format_rational(&member.sq_norm())
                );
                assert!(member.poly.laplace_x().is_zero());
            }
            // exact Gram: raw inner products are rational, so the identity
            // matrix statement is exact
            for (i, a) in b.members.iter().enumerate() {
                for (j, c) in b.members.iter().enumerate() {
                    let raw = sphere_inner(&a.poly, &c.poly);
                    if i == j {
                        assert_eq!(&a.scale2 * &raw, conewave::arith::rat(1));
                    } else {
                        assert_eq!(raw, conewave::arith::rat(0));
                    }
                }
            }
        }
    }
    println!("\nall members harmonic; all orthonormal Grams exactly the identity");
}
