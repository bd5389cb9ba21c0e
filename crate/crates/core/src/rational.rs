//! Exact rational scalars and their textual forms.
//!
//! Every quantity in this crate (channel strengths, deltas, GDoF values,
//! bounds) is an arbitrary-precision rational. There is no floating-point
//! computation path anywhere: regime membership and cycle bounds routinely
//! sit on boundary equalities that floats would misclassify.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a number string into an exact rational.
///
/// Accepted forms are `"p/q"` (integers, `q > 0`) and finite decimals such
/// as `"0.25"` or `"3"`. Bare exponents, infinities and anything else are
/// rejected; the reason string describes what went wrong.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty string".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .parse()
            .map_err(|_| format!("bad numerator {num:?}"))?;
        if den.starts_with('+') || den.starts_with('-') {
            return Err("denominator must be an unsigned integer".to_string());
        }
        let d: BigInt = den
            .parse()
            .map_err(|_| format!("bad denominator {den:?}"))?;
        if d.is_zero() {
            return Err("zero denominator".to_string());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal digits {frac:?}"));
        }
        let w: BigInt = whole
            .parse()
            .map_err(|_| format!("bad integer part {whole:?}"))?;
        let f: BigInt = frac.parse().expect("digits");
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let negative = whole.starts_with('-');
        let numer = if negative { w * &scale - f } else { w * &scale + f };
        return Ok(Rational::new(numer, scale));
    }
    let n: BigInt = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
    Ok(Rational::from_integer(n))
}

/// Formats a rational as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering with `digits` places after the point, rounded half away
/// from zero. Used only as an annotation; the exact value stays in `p/q`.
pub fn decimal_annotation(x: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u8).pow(digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let twice = scaled.numer() * BigInt::from(2);
    let denom = scaled.denom();
    let rounded: BigInt = if twice.is_negative() {
        (twice - denom) / (denom * BigInt::from(2))
    } else {
        (twice + denom) / (denom * BigInt::from(2))
    };
    let sign = if rounded.is_negative() { "-" } else { "" };
    let abs = rounded.abs();
    let whole = &abs / &scale;
    let frac = &abs % &scale;
    format!("{sign}{whole}.{frac:0width$}", width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1/0", "1/-2", "1.2.3", "1e3", "0.", ".5"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&rat(5, 2)), "5/2");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn decimal_annotation_rounds_half_away() {
        assert_eq!(decimal_annotation(&rat(5, 2), 6), "2.500000");
        assert_eq!(decimal_annotation(&rat(1, 3), 6), "0.333333");
        assert_eq!(decimal_annotation(&rat(-1, 3), 6), "-0.333333");
        assert_eq!(decimal_annotation(&rat(1, 2_000_000), 6), "0.000001");
    }
}
