//! Gram matrix of the `mu = 0` basis two ways: exact rational moment
//! integration (zero off-diagonals, closed-form diagonals) and the cone
//! product quadrature rule.
//!
//! Run with: `cargo run --example orthogonality_gram`

use conewave::arith::{format_rational, rat, to_f64};
use conewave::conebasis::{enumerate, q_norm, q_poly, BasisSpec};
use conewave::harmonics::Convention;
use conewave::moments::inner_mu;
use conewave::quadrature::cone_rule;

fn main() {
    for d in 1..=3usize {
        let spec = BasisSpec::standard(d, Convention::TrigPaper);
        let nmax = 4;
        let indices = enumerate(&spec, nmax);
        let polys: Vec<_> = indices.iter().map(|i| q_poly(i, &spec).unwrap()).collect();

        // exact route
        let mut offdiag_zero = true;
        for (a, pa) in polys.iter().enumerate() {
            for pb in polys.iter().skip(a + 1) {
                if inner_mu(pa, pb, &rat(0)).unwrap() != rat(0) {
                    offdiag_zero = false;
                }
            }
        }

        // quadrature route
        let rule = cone_rule(&spec, 2 * nmax as usize).unwrap();
        let values: Vec<Vec<f64>> = polys.iter().map(|p| rule.eval_all(p)).collect();
        let mut worst_offdiag: f64 = 0.0;
        let mut worst_diag: f64 = 0.0;
        for (a, va) in values.iter().enumerate() {
            let norm = to_f64(&q_norm(&indices[a], &spec).unwrap());
            for (b, vb) in values.iter().enumerate().skip(a) {
                let g = rule.inner_from_values(va, vb);
                if a == b {
                    worst_diag = worst_diag.max((g - norm).abs() / norm);
                } else {
                    worst_offdiag = worst_offdiag.max(g.abs());
                }
            }
        }

        println!(
            "d = {d}: {} members up to degree {nmax}",
            indices.len()
        );
        println!("  exact moment off-diagonals all zero: {offdiag_zero}");
        println!("  quadrature worst off-diagonal: {worst_offdiag:.2e}");
        println!("  quadrature diagonal vs closed-form norm, worst rel: {worst_diag:.2e}");
        let sample = &indices[indices.len() - 1];
        println!(
            "  e.g. closed-form norm of ({},{},{},{}) = {}",
            sample.n,
            sample.m,
            sample.j,
            sample.ell,
            format_rational(&q_norm(sample, &spec).unwrap())
        );
    }
}
