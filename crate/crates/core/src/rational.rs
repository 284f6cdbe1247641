//! Exact arbitrary-precision fractions and their decimal renderings.
//!
//! All density and greedy arithmetic in this crate goes through
//! [`Rational`]; there is no floating-point fast path anywhere.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision fraction, always stored reduced with a positive
/// denominator. `num_rational::BigRational` guarantees both invariants.
pub type Rational = num_rational::BigRational;

/// `n` as an exact rational.
pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p / q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders `r` as a decimal string with `sig` significant digits,
/// rounding half away from zero, e.g. `1/22` -> `"0.04545454545"`.
pub fn to_decimal_sig(r: &Rational, sig: u32) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return String::from("0");
    }
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();

    // Scale so the integer part of num/den carries exactly `sig` digits.
    // exp10 = number of digits before the decimal point, possibly <= 0.
    let mut exp10: i64 = 0;
    let mut scaled_num = num.clone();
    let mut scaled_den = den.clone();
    let ten = BigInt::from(10);
    while scaled_num >= scaled_den {
        scaled_den *= &ten;
        exp10 += 1;
    }
    while scaled_num < &scaled_den / &ten {
        scaled_num *= &ten;
        exp10 -= 1;
    }
    // Now den/10 <= num < den, so num/den in [0.1, 1); first significant
    // digit sits at position exp10 (value ~ 10^(exp10-1) * d1...).
    let shift = BigInt::from(10).pow(sig);
    let (q, rem) = (&scaled_num * &shift).div_rem(&scaled_den);
    let mut digits = q;
    if &rem * 2 >= scaled_den {
        digits += 1;
    }
    let mut digit_str = digits.to_string();
    // Rounding can carry into one extra digit (e.g. 0.999.. -> 1.00).
    if digit_str.len() as u32 > sig {
        digit_str.truncate(sig as usize);
        exp10 += 1;
    }

    render_digits(&digit_str, exp10, negative)
}

/// Renders `r` as a fixed-point decimal with `places` digits after the
/// point, rounding half away from zero, e.g. `(7610.07301.., 4)` ->
/// `"7610.0730"`.
pub fn to_decimal_places(r: &Rational, places: u32) -> String {
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let shift = BigInt::from(10).pow(places);
    let (q, rem) = (&num * &shift).div_rem(&den);
    let mut scaled = q;
    if &rem * 2 >= den {
        scaled += 1;
    }
    let digits = scaled.to_string();
    let mut out = String::new();
    if negative && !scaled.is_zero() {
        out.push('-');
    }
    if places == 0 {
        out.push_str(&digits);
        return out;
    }
    let places = places as usize;
    if digits.len() > places {
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        let _ = write!(out, "{int_part}.{frac_part}");
    } else {
        let _ = write!(out, "0.");
        for _ in 0..places - digits.len() {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

fn render_digits(digits: &str, exp10: i64, negative: bool) -> String {
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    let n = digits.len() as i64;
    if exp10 <= 0 {
        out.push_str("0.");
        for _ in 0..(-exp10) {
            out.push('0');
        }
        out.push_str(digits);
    } else if exp10 >= n {
        out.push_str(digits);
        for _ in 0..(exp10 - n) {
            out.push('0');
        }
    } else {
        let (int_part, frac_part) = digits.split_at(exp10 as usize);
        let _ = write!(out, "{int_part}.{frac_part}");
    }
    out
}

/// Nearest integer to `r`, ties rounding up (toward +infinity).
pub fn round_half_up(r: &Rational) -> BigInt {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    (r + half).floor().to_integer()
}

/// `r` as `f64`, for tolerance-style comparisons in reports only.
pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(match r.numer().sign() {
        Sign::Minus => f64::NEG_INFINITY,
        _ => f64::INFINITY,
    }) / r.denom().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_sig_renders_known_fractions() {
        assert_eq!(to_decimal_sig(&ratio(1, 22), 10), "0.04545454545");
        assert_eq!(to_decimal_sig(&ratio(1, 4), 3), "0.250");
        assert_eq!(to_decimal_sig(&from_int(44), 10), "44.00000000");
        assert_eq!(to_decimal_sig(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(to_decimal_sig(&Rational::zero(), 5), "0");
        assert_eq!(to_decimal_sig(&ratio(999, 1000), 2), "1.0");
    }

    #[test]
    fn decimal_places_renders_fixed_point() {
        assert_eq!(to_decimal_places(&ratio(6238, 47), 4), "132.7234");
        assert_eq!(to_decimal_places(&ratio(1, 2), 0), "1");
        assert_eq!(to_decimal_places(&ratio(1, 8), 2), "0.13");
        assert_eq!(to_decimal_places(&ratio(-1, 8), 3), "-0.125");
    }

    #[test]
    fn round_half_up_ties_go_up() {
        assert_eq!(round_half_up(&ratio(7, 2)), BigInt::from(4));
        assert_eq!(round_half_up(&ratio(5, 2)), BigInt::from(3));
        assert_eq!(round_half_up(&ratio(-1, 2)), BigInt::from(0));
        assert_eq!(round_half_up(&ratio(72, 11)), BigInt::from(7));
    }
}
