//! Coset-weight generating functions of binary linear codes, exact
//! certificates for the local-growth bounds built on them, and the catalog of
//! LDPC rate–distance upper bounds.
//!
//! * [`f2`]: words, codes in RREF, duals and supports.
//! * [`cwgf`]: exact coset-weight distributions and `Q_C(λ)`.
//! * [`localfactor`]: local factors, growth certificates and polynomial
//!   identity checks.
//! * [`bounds`]: rate–distance curves and their optimizers.
//! * [`search`]: enumeration of low-weight-spanned codes and the extremal
//!   comparison against disjoint blocks.

pub mod bounds;
pub mod cwgf;
pub mod error;
pub mod f2;
pub mod grid;
pub mod localfactor;
pub mod par;
pub mod poly;
pub mod random;
pub mod search;

pub use error::{Error, Result};
pub use f2::{BitVector, GeneratorSet, LinearCode};
pub use grid::{LambdaGrid, Rational};
pub use par::Execution;
pub use poly::IntPolynomial;

/// Formats `x` with 12 significant digits in plain decimal notation, with
/// trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    } else {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(4.0), "4");
        assert_eq!(format_sig(1234.5), "1234.5");
        assert_eq!(format_sig(-0.25), "-0.25");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0e-5 / 3.0), "0.00000333333333333");
        assert_eq!(format_sig(0.99999999999999), "1");
        assert_eq!(format_sig(123456789012345.0), "123456789012000");
    }
}
