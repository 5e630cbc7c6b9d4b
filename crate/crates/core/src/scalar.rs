//! Exact rational scalars and the coefficient-ring abstraction.
//!
//! Every quantity in this crate is an arbitrary-precision rational; there is
//! no floating point anywhere. Operations that must also run with formal
//! indeterminates in place of numbers (group laws, brackets, scalings) are
//! written against the [`Ring`] trait, which is implemented by [`Rational`]
//! and by multivariate polynomials over it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact arbitrary-precision rational number, the scalar type of the crate.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (lowest terms not required; `q` may be signed).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_owned());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Formats in lowest terms with positive denominator: `"p"` when the
/// denominator is one, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a count, saturating at `u128::MAX`.
pub fn binomial_count(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial_big(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Commutative ring with a distinguished ℚ-algebra structure.
///
/// Associated functions, not methods, so that implementations never collide
/// with the inherent operator impls of the underlying types.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(x: &Self) -> Self;
    fn add(x: &Self, y: &Self) -> Self;
    fn sub(x: &Self, y: &Self) -> Self;
    fn mul(x: &Self, y: &Self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale(x: &Self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(x: &Self) -> Self {
        -x
    }
    fn add(x: &Self, y: &Self) -> Self {
        x + y
    }
    fn sub(x: &Self, y: &Self) -> Self {
        x - y
    }
    fn mul(x: &Self, y: &Self) -> Self {
        x * y
    }
    fn scale(x: &Self, c: &Rational) -> Self {
        x * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
}

/// `x^e` by repeated squaring.
pub fn ring_pow<R: Ring>(x: &R, e: u32) -> R {
    let mut acc = R::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = R::mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = R::mul(&base, &base);
        }
    }
    acc
}

/// Absolute value, for coefficient-size bounds.
pub fn rational_abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "7/2", "-7/2", "4/6"] {
            let r = parse_rational(s).unwrap();
            let back = parse_rational(&format_rational(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a", "1/2/3", "1.5"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_big(4, 2), BigInt::from(6));
        assert_eq!(binomial_big(5, 0), BigInt::one());
        assert_eq!(binomial_big(3, 5), BigInt::zero());
        assert_eq!(binomial_count(8, 4), 70);
        assert_eq!(factorial_big(5), BigInt::from(120));
    }

    #[test]
    fn pow_matches_naive() {
        let x = rat(3, 2);
        let mut acc = int(1);
        for e in 0..8u32 {
            assert_eq!(ring_pow(&x, e), acc);
            acc *= &x;
        }
    }
}
