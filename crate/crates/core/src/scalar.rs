//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"3"`, `"-3/4"` or `" 7 / 2 "`.
pub fn parse(text: &str) -> Result<Scalar> {
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `a/b` for positive denominators, `a` for integers.
pub fn to_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_latex(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -x.numer(), x.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", x.numer(), x.denom())
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Generalized binomial coefficient `k(k-1)...(k-t+1)/t!`, valid for negative `k`.
pub fn binomial(k: i64, t: u32) -> Scalar {
    let mut acc = one();
    for i in 0..t as i64 {
        acc = acc * int(k - i) / int(i + 1);
    }
    acc
}

pub fn pow(x: &Scalar, e: u32) -> Scalar {
    let mut acc = one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

pub fn factorial(n: u32) -> Scalar {
    (1..=n as i64).fold(one(), |acc, i| acc * int(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn binomial_negative_upper() {
        // (-1 choose t) = (-1)^t
        for t in 0..6 {
            let expect = if t % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(binomial(-1, t), expect);
        }
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial(-2, 2), int(3));
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [frac(1, 4), frac(3, 2), frac(2, 3)];
        assert_eq!(denominator_lcm(xs.iter()), BigInt::from(12));
    }
}
