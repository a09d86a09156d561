//! Exact rational arithmetic and p-adic absolute values.
//!
//! Rationals are `num_rational::BigRational`, which reduces to lowest terms
//! with a positive denominator after every operation. p-adic absolute values
//! are kept as exact powers of `p`, never as floats.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{arg_err, Error, Result};

pub type ExactRational = BigRational;

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Primes `<= bound` in increasing order.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(arg_err!("{p} is not prime"))
    }
}

/// Exponent of `p` in the nonzero integer `n`.
fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// The `v` with `q = p^v * u`, `u` a p-adic unit.
pub fn padic_valuation(q: &ExactRational, p: u64) -> Result<i64> {
    check_prime(p)?;
    if q.is_zero() {
        return Err(Error::Domain("valuation of 0 is +infinity".into()));
    }
    Ok(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

/// `p^v` as an exact rational (`v` may be negative).
pub fn prime_power(p: u64, v: i64) -> ExactRational {
    let base = BigInt::from(p);
    let mag = BigRational::from_integer(Pow::pow(&base, v.unsigned_abs()));
    if v >= 0 {
        mag
    } else {
        mag.recip()
    }
}

/// `|q|_p`, with `|0|_p = 0`.
pub fn padic_abs(q: &ExactRational, p: u64) -> Result<ExactRational> {
    check_prime(p)?;
    if q.is_zero() {
        return Ok(ExactRational::zero());
    }
    let v = padic_valuation(q, p)?;
    Ok(prime_power(p, -v))
}

/// Legendre's formula: the exponent of `p` in `d!`.
pub fn factorial_valuation(d: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut pk = p;
    while pk <= d {
        v += d / pk;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    v
}

/// `|d!|_p` without forming `d!`.
pub fn factorial_padic_abs(d: u64, p: u64) -> Result<ExactRational> {
    check_prime(p)?;
    if d == 0 {
        return Err(arg_err!("factorial_padic_abs requires d >= 1"));
    }
    Ok(prime_power(p, -(factorial_valuation(d, p) as i64)))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// A p-adic absolute value `p^(-v)`; `valuation == None` encodes `|0|_p = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicAbs {
    pub prime: u64,
    pub valuation: Option<i64>,
}

impl PadicAbs {
    pub fn of(q: &ExactRational, p: u64) -> Result<Self> {
        check_prime(p)?;
        let valuation = if q.is_zero() {
            None
        } else {
            Some(padic_valuation(q, p)?)
        };
        Ok(PadicAbs {
            prime: p,
            valuation,
        })
    }

    pub fn value(&self) -> ExactRational {
        match self.valuation {
            None => ExactRational::zero(),
            Some(v) => prime_power(self.prime, -v),
        }
    }
}

impl PartialOrd for PadicAbs {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.prime != other.prime {
            return None;
        }
        Some(match (self.valuation, other.valuation) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            // larger valuation means smaller absolute value
            (Some(a), Some(b)) => b.cmp(&a),
        })
    }
}

impl fmt::Display for PadicAbs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    if let Some((int_part, frac)) = s.split_once('.') {
        if s.contains('/') {
            return Err(arg_err!("cannot parse rational {s:?}"));
        }
        let digits = format!("{int_part}{frac}");
        let n: BigInt = digits
            .parse()
            .map_err(|_| arg_err!("cannot parse rational {s:?}"))?;
        let den = Pow::pow(&BigInt::from(10), frac.len() as u32);
        return Ok(BigRational::new(n, den));
    }
    s.parse::<BigRational>()
        .map_err(|_| arg_err!("cannot parse rational {s:?}"))
        .and_then(|q| {
            if q.denom().is_zero() {
                Err(arg_err!("zero denominator in {s:?}"))
            } else {
                Ok(q)
            }
        })
}

/// Exact integer value of `q` as `i64`, if `q` is an integer that fits.
pub fn to_i64_exact(q: &ExactRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&int(12), 2).unwrap(), 2);
        assert_eq!(padic_valuation(&rat(1, 6), 3).unwrap(), -1);
        let six_fact = BigRational::from_integer(factorial(6));
        assert_eq!(padic_valuation(&six_fact, 2).unwrap(), 4);
    }

    #[test]
    fn valuation_errors() {
        assert!(matches!(padic_valuation(&int(0), 2), Err(Error::Domain(_))));
        assert!(matches!(
            padic_valuation(&int(4), 4),
            Err(Error::Argument(_))
        ));
        assert!(matches!(padic_abs(&int(4), 1), Err(Error::Argument(_))));
    }

    #[test]
    fn abs_examples() {
        assert_eq!(padic_abs(&int(12), 2).unwrap(), rat(1, 4));
        assert_eq!(padic_abs(&int(0), 5).unwrap(), int(0));
        assert_eq!(padic_abs(&int(6), 2).unwrap(), rat(1, 2));
        assert_eq!(padic_abs(&rat(7, 9), 3).unwrap(), int(9));
    }

    #[test]
    fn factorial_abs_examples() {
        assert_eq!(factorial_padic_abs(3, 2).unwrap(), rat(1, 2));
        assert_eq!(factorial_padic_abs(7, 11).unwrap(), int(1));
        assert_eq!(factorial_padic_abs(10, 5).unwrap(), rat(1, 25));
        assert!(factorial_padic_abs(0, 5).is_err());
    }

    #[test]
    fn legendre_matches_literal_factorial() {
        for p in primes_up_to(13) {
            for d in 1..=30u64 {
                let literal = padic_abs(&BigRational::from_integer(factorial(d)), p).unwrap();
                assert_eq!(factorial_padic_abs(d, p).unwrap(), literal, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn padic_abs_ordering() {
        let a = PadicAbs::of(&rat(1, 4), 2).unwrap();
        let b = PadicAbs::of(&int(2), 2).unwrap();
        let z = PadicAbs::of(&int(0), 2).unwrap();
        assert!(a > b);
        assert!(z < b);
        assert_eq!(a.value(), int(4));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
