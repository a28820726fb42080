//! Binary floating point with arbitrary-size mantissa: value = mant · 2^exp,
//! mantissa rounded to `prec` bits after every operation.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::rational::{big, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        Self { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        Self { mant: n, exp: 0, prec }.rounded()
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_bigint(BigInt::from(n), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | (1 << 52), e - 1075) };
        Self { mant: BigInt::from(sign * m), exp: e, prec }.rounded()
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as i64 + 2 + q.denom().bits() as i64 - q.numer().bits() as i64;
        let num = if shift >= 0 { q.numer() << shift as usize } else { q.numer() >> (-shift) as usize };
        Self { mant: num / q.denom(), exp: -shift, prec }.rounded()
    }

    /// Exact dyadic value.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            big(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::from(1u8) << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mant >> drop as usize).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.exp + drop).clamp(-2000, 2000) as i32)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        match self.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Base-2 exponent of the leading bit (value in [2^e, 2^(e+1))).
    pub fn log2_floor(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + self.mant.bits() as i64 - 1
        }
    }

    fn rounded(mut self) -> Self {
        let bits = self.mant.bits() as i64;
        let excess = bits - self.prec as i64;
        if excess > 0 {
            // round half away from zero
            let neg = self.mant.is_negative();
            let mut a = self.mant.abs();
            a += BigInt::from(1u8) << (excess as usize - 1);
            a >>= excess as usize;
            self.mant = if neg { -a } else { a };
            self.exp += excess;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Self { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = shift.max(0);
        let num = &self.mant << shift as usize;
        Self { mant: num / &rhs.mant, exp: self.exp - rhs.exp - shift, prec }.rounded()
    }

    /// Square root of a nonnegative value (negative input gives zero).
    pub fn sqrt(&self) -> Self {
        if self.sign() != Ordering::Greater {
            return Self::zero(self.prec);
        }
        let mut shift = 2 * self.prec as i64 + 4 - self.mant.bits() as i64;
        shift = shift.max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = (&self.mant << shift as usize).sqrt();
        Self { mant: m, exp: (self.exp - shift) / 2, prec: self.prec }.rounded()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self { mant: self.mant.clone(), exp: self.exp, prec }.rounded()
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        // operands far below the other's precision only affect rounding
        let gap = self.log2_floor() - rhs.log2_floor();
        if gap > prec as i64 + 4 {
            return self.with_prec(prec);
        }
        if -gap > prec as i64 + 4 {
            return rhs.with_prec(prec);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        BigFloat { mant: a + b, exp: e, prec }.rounded()
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self + &(-rhs)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
            prec: self.prec.max(rhs.prec),
        }
        .rounded()
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

/// Complex number with [`BigFloat`] parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(BigFloat::zero(prec), BigFloat::zero(prec))
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.prec();
        Self::new(re, BigFloat::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Self::new(re.div(&d), im.div(&d))
    }

    pub fn recip(&self) -> Self {
        let prec = self.re.prec();
        Self::from_real(BigFloat::from_i64(1, prec)).div(self)
    }

    /// Principal square root: argument in (−π/2, π/2]; a negative real
    /// radicand maps to the positive imaginary axis.
    pub fn sqrt(&self) -> Self {
        let prec = self.re.prec();
        if self.is_zero() {
            return Self::zero(prec);
        }
        let r = self.abs();
        let half = |x: &BigFloat| x.mul_pow2(-1);
        let a = half(&(&r + &self.re)).sqrt();
        let b = half(&(&r - &self.re)).sqrt();
        let b = if self.im.sign() == Ordering::Less { -&b } else { b };
        Self::new(a, b)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
