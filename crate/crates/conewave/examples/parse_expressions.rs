//! The forcing-expression grammar: rationals, exact decimals, powers,
//! parentheses, dimension-checked variables, and positioned errors.
//!
//! Run with: `cargo run --example parse_expressions`

use conewave::expr::{parse_expr, parse_poly};

fn main() {
    let good = [
        ("t*x1^2 + t^2*x2 + x1*x2^2", 2),
        ("(t - x1)^2", 1),
        ("1/2*t - 0.25*x1", 1),
        ("-x1^2", 1),
        ("3/4", 3),
    ];
    for (text, d) in good {
        let p = parse_poly(text, d).unwrap();
        println!("{text:32} (d={d})  ->  {p}");
        // printing is canonical: parse(print(p)) == p and print is stable
        let reparsed = parse_poly(&p.to_string(), d).unwrap();
        assert_eq!(reparsed, p);
    }

    println!();
    let bad = [
        ("x3 + 1", 2),
        ("t^-2", 1),
        ("2 x1", 2),
        ("(t", 1),
        ("t ** 2", 1),
    ];
    for (text, d) in bad {
        let err = parse_expr(text, d).unwrap_err();
        println!("{text:12} (d={d})  ->  error at byte {}: {}", err.position, err.message);
    }
}
