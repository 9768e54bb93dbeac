//! The two operator identities behind the solver, checked symbolically:
//! the conjugated wave operator maps a continuation-family member to a
//! two-term combination in the `mu = 0` family, and the spatial Laplacian
//! maps it to a single `mu = 1` member.
//!
//! Run with: `cargo run --example wave_identities`

use conewave::arith::{format_rational, rat};
use conewave::conebasis::{enumerate, q_poly, BasisSpec, ConeIndex};
use conewave::harmonics::Convention;
use conewave::polyalg::MultiPoly;
use conewave::wavesolver::{laplace_apply_basis, wave_apply_basis};

fn main() {
    let d = 2;
    let m1 = BasisSpec::new(d, rat(-1), rat(1), Convention::TrigPaper).unwrap();
    let m0 = BasisSpec::standard(d, Convention::TrigPaper);
    let p1 = BasisSpec::new(d, rat(1), rat(1), Convention::TrigPaper).unwrap();

    // one worked index in full
    let idx = ConeIndex::new(3, 2, 1, 1);
    let q = q_poly(&idx, &m1).unwrap();
    println!("member Q(3,2,1,1) of the continuation family:");
    println!("  Q = {q}");
    println!("  L Q = {}", q.conjugated_wave());
    println!("  as a combination:");
    for (target, coeff) in wave_apply_basis(&idx, d) {
        println!(
            "    {} * Q({},{},{},{}) where that member is {}",
            format_rational(&coeff),
            target.n,
            target.m,
            target.j,
            target.ell,
            q_poly(&target, &m0).unwrap()
        );
    }
    let (lt, lc) = laplace_apply_basis(&idx, d).unwrap();
    println!(
        "  Lap Q = {} * Q({},{},{},{}) in the mu = 1 family",
        format_rational(&lc),
        lt.n,
        lt.m,
        lt.j,
        lt.ell
    );

    // sweep: both identities exactly, every admissible index
    let nmax = 6;
    let mut wave_checked = 0;
    let mut lap_checked = 0;
    for idx in enumerate(&m1, nmax) {
        let q = q_poly(&idx, &m1).unwrap();
        let mut rhs = MultiPoly::zero(d);
        for (target, coeff) in wave_apply_basis(&idx, d) {
            rhs = rhs.add(&q_poly(&target, &m0).unwrap().scale(&coeff));
        }
        assert_eq!(q.conjugated_wave(), rhs);
        wave_checked += 1;

        let lap_rhs = match laplace_apply_basis(&idx, d) {
            None => MultiPoly::zero(d),
            Some((t, c)) => q_poly(&t, &p1).unwrap().scale(&c),
        };
        assert_eq!(q.laplace_x(), lap_rhs);
        lap_checked += 1;
    }
    println!("\nverified exactly for every admissible index with n <= {nmax}:");
    println!("  wave identity: {wave_checked} members");
    println!("  Laplacian identity: {lap_checked} members");
}
