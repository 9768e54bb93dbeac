//! Small exact-arithmetic helpers shared across the crate.
//!
//! Everything here operates on `BigRational` so that the symbolic layers
//! never touch floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the symbolic layers.
pub type Rational = BigRational;

/// `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a reduced rational. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    assert!(q != 0, "ratio: zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Pochhammer rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Falling factorial `n! / (n-k)!` for `k <= n`.
pub fn falling(n: u32, k: u32) -> Rational {
    assert!(k <= n, "falling: k > n");
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= rat((n - i) as i64);
    }
    acc
}

/// Double factorial `n!! = n (n-2) (n-4) ...` with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> Rational {
    if n <= 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let mut i = n;
    while i > 0 {
        acc *= rat(i);
        i -= 2;
    }
    acc
}

/// Generalized binomial `C(a, k)` with rational `a` and integer `k >= 0`:
/// `a (a-1) ... (a-k+1) / k!`.
pub fn binomial(a: &Rational, k: u32) -> Rational {
    let mut num = Rational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        num *= &factor;
        factor -= Rational::one();
    }
    num / factorial(k)
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// `r` as an i64 if it is an integer that fits, else None.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Lossy conversion to f64 (used only at the float boundary).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Parse a rational from `"p/q"`, a plain integer, or a decimal string.
/// Decimal strings convert exactly (`"0.25"` -> 1/4).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_part: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let int_rat = Rational::from_integer(int_part);
        let frac_rat = Rational::new(frac, scale);
        return Some(if negative || int_rat.is_negative() {
            int_rat - frac_rat
        } else {
            int_rat + frac_rat
        });
    }
    let n: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Render a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
