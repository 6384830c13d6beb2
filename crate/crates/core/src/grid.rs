//! Exact rational λ grids.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses a plain decimal (`0.05`, `1`, `-2.5`, `3/4`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("`{s}` is not a decimal number"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(num, den);
    Ok(if negative { -r } else { r })
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A finite list of λ values in `[0, 1]`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaGrid {
    points: Vec<Rational>,
}

impl LambdaGrid {
    /// `{1/count, 2/count, …, 1}`.
    pub fn uniform(count: usize) -> Self {
        let den = BigInt::from(count.max(1));
        LambdaGrid {
            points: (1..=count.max(1))
                .map(|i| Rational::new(BigInt::from(i), den.clone()))
                .collect(),
        }
    }

    /// `{0.05, 0.10, …, 1.00}`.
    pub fn default_grid() -> Self {
        Self::uniform(20)
    }

    pub fn from_points(points: Vec<Rational>) -> Result<Self> {
        for p in &points {
            if p.is_negative() || *p > Rational::one() {
                return Err(Error::Domain(format!("λ = {p} is outside [0, 1]")));
            }
        }
        Ok(LambdaGrid { points })
    }

    /// Parses `a:b:step`, inclusive of `b` when it is hit exactly.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Domain(format!(
                "λ grid `{spec}` must have the form a:b:step"
            )));
        }
        let a = parse_rational(parts[0])?;
        let b = parse_rational(parts[1])?;
        let step = parse_rational(parts[2])?;
        if !step.is_positive() {
            return Err(Error::Domain("λ grid step must be positive".into()));
        }
        if a > b {
            return Err(Error::Domain("λ grid start exceeds its end".into()));
        }
        let mut points = Vec::new();
        let mut x = a;
        while x <= b {
            points.push(x.clone());
            x += &step;
            if points.len() > 1_000_000 {
                return Err(Error::ResourceLimit {
                    what: "λ grid size",
                    requested: points.len(),
                    limit: 1_000_000,
                });
            }
        }
        Self::from_points(points)
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fails unless every point is in `(0, 1]`.
    pub fn require_positive(&self) -> Result<()> {
        match self.points.iter().find(|p| !p.is_positive()) {
            Some(p) => Err(Error::Domain(format!("λ = {p} must be positive"))),
            None => Ok(()),
        }
    }
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self::default_grid()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.05").unwrap(), q(1, 20));
        assert_eq!(parse_rational("1").unwrap(), q(1, 1));
        assert_eq!(parse_rational("-2.5").unwrap(), q(-5, 2));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn default_grid_matches_parsed_grid() {
        assert_eq!(LambdaGrid::parse("0.05:1:0.05").unwrap(), LambdaGrid::default_grid());
        assert_eq!(LambdaGrid::default_grid().len(), 20);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(LambdaGrid::parse("0:1:0").is_err());
        assert!(LambdaGrid::parse("0:2:1").is_err());
        assert!(LambdaGrid::parse("0.5:0.1:0.1").is_err());
        assert!(LambdaGrid::parse("0:1").is_err());
    }
}
