//! Exact numeric substrate: rationals, prime fields, primality and Bernoulli numbers.
//!
//! Everything here is exact. Rationals are `num_rational::BigRational`, which
//! keeps values in lowest terms with a positive denominator.

mod bernoulli;
mod modular;
mod primes;

pub use bernoulli::{bernoulli, von_staudt_denominator, BernoulliTable};
pub use modular::{factorial_mod, inv_mod, pow_mod, ModN, Modulus};
pub use primes::{is_prime, next_odd_prime, next_prime};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: u64 },
    #[error("von Staudt denominator requires an even q >= 2, got {0}")]
    BadBernoulliIndex(i64),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

/// Canonical string form: `"num/den"`, with the denominator omitted when it is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"a"`, `"-a"` or `"a/b"` into a reduced rational. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let err = || ArithError::ParseRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Reduces a rational modulo `p`. Fails when the denominator is divisible by `p`.
pub fn reduce_rational(q: &Rational, modulus: Modulus) -> Result<ModN, ArithError> {
    let p = BigInt::from(modulus.get());
    let num = residue_of(q.numer(), &p);
    let den = residue_of(q.denom(), &p);
    let den = ModN::new(den, modulus);
    let inv = den.inverse().ok_or_else(|| ArithError::NotInvertible {
        value: format_rational(q),
        modulus: modulus.get(),
    })?;
    Ok(ModN::new(num, modulus) * inv)
}

fn residue_of(n: &BigInt, p: &BigInt) -> u64 {
    let mut r = n % p;
    if r.is_negative() {
        r += p;
    }
    u64::try_from(r).expect("residue fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        let q = Rational::new(BigInt::from(691), BigInt::from(-2730));
        assert_eq!(format_rational(&q), "-691/2730");
        assert_eq!(format_rational(&rational_from_int(4)), "4");
        assert_eq!(format_rational(&Rational::zero()), "0");
        assert_eq!(parse_rational("-691/2730").unwrap(), q);
        assert_eq!(
            parse_rational("6/4").unwrap(),
            Rational::new(3.into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn rational_reduction_mod_p() {
        let m = Modulus::new(11).unwrap();
        // 1/360 mod 11: 360 = 8 mod 11, 8^-1 = 7
        let q = Rational::new(1.into(), 360.into());
        assert_eq!(reduce_rational(&q, m).unwrap().residue(), 7);
        let q = Rational::new((-1).into(), 72.into());
        assert_eq!(reduce_rational(&q, m).unwrap().residue(), 9);
        let bad = Rational::new(1.into(), 22.into());
        assert!(reduce_rational(&bad, m).is_err());
    }
}
