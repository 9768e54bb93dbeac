//! The coefficient-growth sum `A(m,n) = sum_i (-(n-m))_{2i} / (n+m)_{2i}`
//! evaluated in exact rationals. `A(n,n) = 1` always; at fixed m the sum
//! grows like sqrt(n), crossing 3 for the first time at (m,n) = (0,26) -
//! exact arithmetic refutes the folklore uniform bound of 3.
//!
//! Run with: `cargo run --example coefficient_growth`

use conewave::arith::format_rational;
use conewave::wavesolver::{amn_bound_check, amn_value};
use num_traits::ToPrimitive;

fn main() {
    println!("diagonal values (always 1):");
    for n in [0u32, 5, 50, 200] {
        println!("  A({n},{n}) = {}", format_rational(&amn_value(n, n)));
    }

    println!("\nsmall cases:");
    for (m, n) in [(0u32, 2u32), (0, 4), (1, 5), (2, 8)] {
        let v = amn_value(m, n);
        println!(
            "  A({m},{n}) = {} ~ {:.6}",
            format_rational(&v),
            v.to_f64().unwrap()
        );
    }

    println!("\ngrowth along m = 0:");
    for n in [10u32, 26, 50, 100, 200] {
        let v = amn_value(0, n);
        println!("  A(0,{n}) ~ {:.6}", v.to_f64().unwrap());
    }

    let (max, (m, n)) = amn_bound_check(200);
    println!(
        "\nmax over m <= n <= 200: A({m},{n}) ~ {:.6}",
        max.to_f64().unwrap()
    );
    println!("first crossing of 3: A(0,26) ~ {:.6}", amn_value(0, 26).to_f64().unwrap());
    println!("(the sum scales like sqrt(n) at fixed m, so no uniform bound exists)");
}
