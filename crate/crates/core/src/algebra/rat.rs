//! Exact rationals backed by `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"`. Rejects anything with a decimal point.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// `num/den` with the denominator always present.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integer power with negative exponents allowed; `None` for `0^-k`.
pub fn rat_pow(r: &Rat, e: i64) -> Option<Rat> {
    if e >= 0 {
        Some(num_traits::pow(r.clone(), e as usize))
    } else if r.is_zero() {
        None
    } else {
        Some(num_traits::pow(r.recip(), (-e) as usize))
    }
}

/// Exact `n`-th root of a nonnegative rational, if it is rational.
pub fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    if r.is_negative() || n == 0 {
        return None;
    }
    let root_int = |a: &BigInt| -> Option<BigInt> {
        let c = a.nth_root(n);
        if num_traits::pow(c.clone(), n as usize) == *a {
            Some(c)
        } else {
            None
        }
    };
    Some(Rat::new(root_int(r.numer())?, root_int(r.denom())?))
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

pub fn factorial(k: u32) -> Rat {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    Rat::from_integer(f)
}
