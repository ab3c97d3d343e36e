//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn factorial(k: u64) -> Scalar {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

/// Generalized binomial coefficient C(n, k) for any integer `n`.
pub fn binomial(n: i64, k: u64) -> Scalar {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    let mut den = BigInt::one();
    for i in 2..=k {
        den *= BigInt::from(i);
    }
    BigRational::new(num, den)
}

/// `(-1)^n` for an arbitrary integer exponent.
pub fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Falling factorial n(n-1)...(n-k+1).
pub fn falling(n: i64, k: u64) -> Scalar {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(n - i);
    }
    BigRational::from_integer(acc)
}

/// Canonical text: `p` or `p/q`.
pub fn fmt(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or `(p/q)`.
pub fn parse(text: &str) -> Option<Scalar> {
    let t = text.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        // C(-1, k) = (-1)^k, C(-2, k) = (-1)^k (k+1)
        for k in 0..6u64 {
            assert_eq!(binomial(-1, k), sign(k as i64));
            assert_eq!(binomial(-2, k), sign(k as i64) * int(k as i64 + 1));
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("(1/2)"), Some(rat(1, 2)));
        assert_eq!(parse("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(fmt(&rat(-3, 2)), "-3/2");
        assert_eq!(fmt(&int(7)), "7");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(falling(5, 2), int(20));
        assert_eq!(falling(-1, 2), int(2));
    }
}
