//! Wave speeds other than 1 by dilation: the basis is built at unit speed
//! and the spatial arguments are mapped `x -> x/c`. Solving at c = 2 still
//! yields an exact polynomial solution of `(d_tt - 4 Lap) U = e^-t f`.
//!
//! Run with: `cargo run --example speed_rescaling`

use conewave::analysis::analyze_exact;
use conewave::arith::rat;
use conewave::expr::parse_poly;
use conewave::harmonics::Convention;
use conewave::wavesolver::{rescale_speed, solve_coefficients};
use conewave::BasisSpec;

fn main() {
    let c = rat(2);
    let spec = BasisSpec::new(2, rat(0), c.clone(), Convention::TrigPaper).unwrap();
    let f = parse_poly("t*x1^2 + t^2*x2 + x1*x2^2", 2).unwrap();

    let series = solve_coefficients(&analyze_exact(&f, &spec));
    let u = series.synthesize();
    println!("speed c = 2");
    println!("f = {f}");
    println!("u = {u}");

    // verification by substitution: v(x,t) = u(2x, t) must satisfy the
    // unit-speed conjugated equation with forcing f(2x, t)
    let v = u.scale_x(&c);
    let fc = f.scale_x(&c);
    let residual = v.conjugated_wave().sub(&fc);
    println!("exact residual after undoing the dilation: {residual}");
    assert!(residual.is_zero());

    let report = series.residual_report(&f, 50, 0);
    println!(
        "report: exact zero = {}, max FD residual = {:.2e}",
        report.exact_residual_zero, report.max_fd_residual
    );

    // rescale_speed is the dilation primitive itself
    let x1 = parse_poly("x1", 2).unwrap();
    println!("rescale_speed(x1, 2) = {}", rescale_speed(&x1, &c));
}
