//! Gauss rules and their exactness contracts: Laguerre, Jacobi, and the cone
//! product rule, including a negative control at the exactness boundary.
//!
//! Run with: `cargo run --example quadrature_rules`

use conewave::arith::{rat, to_f64};
use conewave::conebasis::BasisSpec;
use conewave::harmonics::Convention;
use conewave::moments::cone_monomial_moment;
use conewave::quadrature::{cone_rule, gauss_jacobi, gauss_laguerre, pairwise_sum};

fn main() {
    // Gauss-Laguerre: npts points are exact through degree 2 npts - 1
    let rule = gauss_laguerre(2, 0.0).unwrap();
    println!("Gauss-Laguerre, 2 points, alpha = 0:");
    println!("  int t^2 e^-t = {:.15} (truth 2)", rule.integrate(|t| t * t));
    println!(
        "  int t^3 e^-t = {:.15} (truth 6, still exact: degree 3 = 2n-1)",
        rule.integrate(|t| t * t * t)
    );
    println!(
        "  int t^4 e^-t = {:.6} (truth 24; degree 4 = 2n exceeds the contract)",
        rule.integrate(|t| t.powi(4))
    );

    // Gauss-Jacobi, normalized weight
    let rule = gauss_jacobi(2, 0.0, 0.0).unwrap();
    println!("\nGauss-Legendre (normalized), 2 points:");
    println!(
        "  mean of s^2 over [-1,1] = {:.15} (truth 1/3)",
        rule.integrate(|s| s * s)
    );

    // cone product rule: weights sum to one, moments match closed forms
    for d in 1..=3usize {
        let spec = BasisSpec::standard(d, Convention::TrigPaper);
        let rule = cone_rule(&spec, 8).unwrap();
        let mass = pairwise_sum(&rule.weights);
        let mut alpha = vec![0u32; d];
        alpha[0] = 2;
        let got = rule.integrate(|x, t| x[0] * x[0] * t);
        let truth = to_f64(&cone_monomial_moment(d, &rat(0), &alpha, 1).unwrap());
        let odd = rule.integrate(|x, _| x[0]);
        println!(
            "\ncone rule d = {d}: {} nodes, weight sum = {mass:.15}",
            rule.nodes.len()
        );
        println!("  <x1^2 t, 1> = {got:.12} (closed form {truth})");
        println!("  odd moment <x1, 1> = {odd:.2e} (zero by symmetry)");
    }
}
