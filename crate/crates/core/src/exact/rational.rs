//! Helpers around `BigRational`, the exact scalar type used throughout the crate.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// Parses `7`, `-3/4`, `1.25`, `1.5e10` or `-2E-3` into an exact rational.
/// Decimal and exponent forms are converted with power-of-ten denominators,
/// never through binary floating point.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{whole}{frac}");
    let mut value = big(joined.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac.len() as i64;
    let factor = big(pow10(scale.unsigned_abs() as u32));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Exact `p/q` or integer string.
pub fn to_exact_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact conversion of a finite `f64`.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Floor of log10 |q| for nonzero `q`.
fn decimal_exponent(q: &Rational) -> i64 {
    let a = q.abs();
    let mut e = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
    loop {
        let lower = ten_pow(e);
        if a < lower {
            e -= 1;
            continue;
        }
        if a >= ten_pow(e + 1) {
            e += 1;
            continue;
        }
        return e;
    }
}

fn ten_pow(e: i64) -> Rational {
    let p = big(pow10(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Rounds to `digits` significant figures (half away from zero). Returns the
/// signed integer mantissa and the power of ten of its last digit.
fn round_significant(q: &Rational, digits: u32) -> (BigInt, i64) {
    let e = decimal_exponent(q);
    let shift = e - digits as i64 + 1;
    let scaled = q / ten_pow(shift);
    let mut m = round_half_away(&scaled);
    let mut shift = shift;
    if m.abs() >= pow10(digits) {
        m = round_half_away(&(big(m) / big(BigInt::from(10))));
        shift += 1;
    }
    (m, shift)
}

pub fn round_half_away(q: &Rational) -> BigInt {
    let half = rat(1, 2);
    if q.is_negative() {
        -((-q) + &half).floor().to_integer()
    } else {
        (q + &half).floor().to_integer()
    }
}

/// Decimal rendering with `digits` significant figures; scientific notation
/// (`1.0436e10`) once the exponent leaves [-4, 6).
pub fn format_significant(q: &Rational, digits: u32) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let (m, shift) = round_significant(q, digits);
    let negative = m.sign() == Sign::Minus;
    let body = m.abs().to_string();
    let exp10 = shift + body.len() as i64 - 1;
    let sign = if negative { "-" } else { "" };
    if (-4..6).contains(&exp10) {
        let value = big(m) * ten_pow(shift);
        let places = (-shift).max(0) as usize;
        return format!("{sign}{}", fixed_string(&value.abs(), places));
    }
    let (head, tail) = body.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{sign}{head}e{exp10}")
    } else {
        format!("{sign}{head}.{tail}e{exp10}")
    }
}

fn fixed_string(q: &Rational, places: usize) -> String {
    let scaled = q * big(pow10(places as u32));
    let n = round_half_away(&scaled).to_string();
    if places == 0 {
        return n;
    }
    let padded = format!("{:0>width$}", n, width = places + 1);
    let (i, f) = padded.split_at(padded.len() - places);
    let f = f.trim_end_matches('0');
    if f.is_empty() {
        i.to_string()
    } else {
        format!("{i}.{f}")
    }
}

/// The rational with the smallest denominator (then smallest absolute
/// numerator) in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_nonneg(lo, Some(hi))
}

// 0 <= lo < hi (hi = None means +inf)
fn simplest_nonneg(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => return next,
        Some(h) if &next < h => return next,
        _ => {}
    }
    let hi = hi.unwrap();
    // lo and hi share the integer part `fl`; recurse on reciprocals
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let new_lo = hi_frac.recip();
    let y = if lo_frac.is_zero() {
        simplest_nonneg(&new_lo, None)
    } else {
        let new_hi = lo_frac.recip();
        simplest_nonneg(&new_lo, Some(&new_hi))
    };
    fl + y.recip()
}

/// Continued-fraction convergents of `x`, stopping once denominators exceed
/// `max_den`.
pub fn convergents(x: &Rational, max_den: &BigInt) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for _ in 0..4096 {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = &rest - big(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    out
}

pub fn cmp_abs(a: &Rational, b: &Rational) -> Ordering {
    a.abs().cmp(&b.abs())
}

pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Smallest `u` with `u >= sqrt(num/den)`, returned as a dyadic rational with
/// roughly 64 significant bits.
pub fn sqrt_upper(num: &BigInt, den: &BigInt) -> Rational {
    debug_assert!(!num.is_negative() && den.is_positive());
    if num.is_zero() {
        return Rational::zero();
    }
    // choose k so that num * 4^k / den has about 128 bits
    let k = (128i64 - num.bits() as i64 + den.bits() as i64).max(0) / 2 + 1;
    let scaled = (num << (2 * k as usize)).div_ceil(den);
    let root = scaled.sqrt() + BigInt::one();
    Rational::new(root, BigInt::one() << k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1.5e10").unwrap(), int(15_000_000_000));
        assert_eq!(parse_rational("25E-2").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "1e", "/3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(&int(10_436_000_000), 5), "1.0436e10");
        assert_eq!(format_significant(&int(45), 5), "45");
        assert_eq!(format_significant(&rat(231, 16), 5), "14.438");
        assert_eq!(format_significant(&rat(-1, 2), 3), "-0.5");
        assert_eq!(format_significant(&rat(999_996, 1), 5), "1e6");
        assert_eq!(format_significant(&rat(1, 1_000_000), 2), "1e-6");
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&int(-5), &int(7)), int(0));
        assert_eq!(simplest_between(&rat(7, 2), &int(10)), int(4));
        assert_eq!(simplest_between(&int(-10), &rat(-7, 2)), int(-4));
        assert_eq!(simplest_between(&int(3), &rat(7, 2)), rat(10, 3));
        let (a, b) = (rat(314159, 100000), rat(314160, 100000));
        let s = simplest_between(&a, &b);
        assert!(a < s && s < b);
        assert!(s.denom() < &BigInt::from(1000));
    }

    #[test]
    fn convergents_of_half() {
        let c = convergents(&rat(-1, 2), &BigInt::from(100));
        assert_eq!(c.last().unwrap(), &rat(-1, 2));
    }

    #[test]
    fn sqrt_upper_bounds() {
        for (n, d) in [(2, 1), (1, 3), (10_000, 7), (1, 1_000_000_007)] {
            let u = sqrt_upper(&BigInt::from(n), &BigInt::from(d));
            assert!(&u * &u >= rat(n, d));
            let rel = to_f64(&u) / (n as f64 / d as f64).sqrt() - 1.0;
            assert!(rel < 1e-15, "{rel}");
        }
    }
}

/// Serde adapter: rationals travel as exact strings ("-3/4", "45").
pub mod as_string {
    use super::{parse_rational, to_exact_string, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_exact_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}
