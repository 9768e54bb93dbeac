//! Solve for a randomly generated rational forcing and verify the residual
//! both symbolically (zero polynomial) and by finite differences.
//!
//! Run with: `cargo run --example random_forcing [seed]`

use conewave::analysis::analyze_exact;
use conewave::arith::ratio;
use conewave::harmonics::Convention;
use conewave::polyalg::MultiPoly;
use conewave::wavesolver::{solve_coefficients, solve_coefficients_recursive};
use conewave::BasisSpec;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let mut rng = StdRng::seed_from_u64(seed);

    for d in 1..=3usize {
        let spec = BasisSpec::standard(d, Convention::Orthonormal);
        let mut f = MultiPoly::zero(d);
        for _ in 0..5 {
            let mut exps = vec![0u32; d + 1];
            let mut budget = 6u32;
            for e in exps.iter_mut() {
                let take = rng.random_range(0..=budget.min(3));
                *e = take;
                budget -= take;
            }
            let coeff = ratio(rng.random_range(-9i64..=9), rng.random_range(1i64..=4));
            f = f.add(&MultiPoly::from_terms(d, [(exps, coeff)]));
        }
        println!("d = {d}, f = {f}");
        let fhat = analyze_exact(&f, &spec);
        let series = solve_coefficients(&fhat);
        let cross = solve_coefficients_recursive(&fhat);
        assert_eq!(series.coeffs, cross.coeffs, "transfer paths must agree");
        let u = series.synthesize();
        println!("  u = {u}");
        let report = series.residual_report(&f, 50, seed);
        println!(
            "  coefficients: {} -> {}, exact residual zero: {}, max FD residual: {:.2e}",
            fhat.len(),
            series.coeffs.len(),
            report.exact_residual_zero,
            report.max_fd_residual
        );
        assert!(report.exact_residual_zero);
    }
}
