//! Real algebraic numbers as (square-free defining polynomial, isolating
//! interval).

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::rational::{format_significant, int, pow10, big, to_f64, Rational};
use super::sturm::{bisect_once, isolate_square_free, IsolatingInterval, SturmChain};

/// Invariant: `defining` is square-free with exactly one real root in
/// `[lo, hi]`; if `lo < hi` neither endpoint is a root.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    defining: Poly,
    interval: IsolatingInterval,
}

/// Equality of values, not of representations.
impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl AlgebraicReal {
    pub fn from_rational(q: Rational) -> Self {
        Self {
            defining: Poly::linear_factor(&q).primitive(),
            interval: IsolatingInterval { lo: q.clone(), hi: q },
        }
    }

    /// Caller guarantees the isolation invariant for the square-free part.
    pub fn new(defining: &Poly, lo: Rational, hi: Rational) -> Self {
        let defining = defining.square_free_part().primitive();
        let mut x = Self { defining, interval: IsolatingInterval { lo, hi } };
        x.normalize();
        x
    }

    /// Real roots of `p`, increasing.
    pub fn real_roots(p: &Poly) -> Vec<AlgebraicReal> {
        let mut out = Vec::new();
        for (g, _) in p.square_free_decomposition() {
            let g = g.primitive();
            for iv in isolate_square_free(&g) {
                let mut x = Self { defining: g.clone(), interval: iv };
                x.normalize();
                x.snap_rational();
                out.push(x);
            }
        }
        out.sort_by(|a, b| a.cmp_value(b));
        out
    }

    /// An exact rational value always carries its linear defining polynomial.
    fn pin(&mut self, q: Rational) {
        self.defining = Poly::linear_factor(&q).primitive();
        self.interval = IsolatingInterval { lo: q.clone(), hi: q };
    }

    fn normalize(&mut self) {
        let iv = &self.interval;
        if iv.lo == iv.hi {
            self.pin(iv.lo.clone());
            return;
        }
        for e in [iv.lo.clone(), iv.hi.clone()] {
            if self.defining.eval(&e).is_zero() {
                self.pin(e);
                return;
            }
        }
        // a linear defining polynomial pins the value exactly
        if self.defining.degree() == Some(1) {
            let c = self.defining.coeffs();
            let r = -&c[0] / &c[1];
            self.pin(r);
        }
    }

    /// Detect a rational value exactly: a rational root of the primitive
    /// defining polynomial has the form k/lc, so once the interval is
    /// narrower than 1/lc at most two candidates remain.
    pub fn snap_rational(&mut self) {
        if self.as_rational().is_some() {
            return;
        }
        let lc = big(self.defining.leading().unwrap().numer().abs());
        let tol = lc.recip();
        while self.width() >= tol {
            self.bisect();
            if self.as_rational().is_some() {
                return;
            }
        }
        let k0 = (&self.interval.lo * &lc).floor();
        let k1 = (&self.interval.hi * &lc).ceil();
        let mut k = k0;
        while k <= k1 {
            let q = &k / &lc;
            if self.interval.lo <= q && q <= self.interval.hi && self.defining.eval(&q).is_zero() {
                self.pin(q);
                return;
            }
            k += int(1);
        }
    }

    pub fn defining(&self) -> &Poly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.interval.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.interval.hi
    }

    pub fn interval(&self) -> (Rational, Rational) {
        (self.interval.lo.clone(), self.interval.hi.clone())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.interval.lo == self.interval.hi).then_some(&self.interval.lo)
    }

    pub fn width(&self) -> Rational {
        &self.interval.hi - &self.interval.lo
    }

    pub fn bisect(&mut self) {
        bisect_once(&self.defining, &mut self.interval);
        if self.interval.lo == self.interval.hi {
            self.pin(self.interval.lo.clone());
        }
    }

    /// Shrink the isolating interval to width at most `width`; the new
    /// interval is nested in the old one.
    pub fn refine(&mut self, width: &Rational) {
        assert!(width.is_positive(), "refinement width must be positive");
        while &self.width() > width {
            self.bisect();
        }
    }

    /// Relative refinement: width ≤ 2^-bits · |x| (or absolute when x is
    /// near zero).
    pub fn refine_relative(&mut self, bits: u32) {
        loop {
            if self.as_rational().is_some() {
                return;
            }
            let scale = self.interval.lo.abs().min(self.interval.hi.abs());
            let straddles = self.interval.lo.is_negative() && self.interval.hi.is_positive();
            if !straddles && !scale.is_zero() {
                let tol = scale / big(num_bigint::BigInt::from(1u8) << bits as usize);
                if self.width() <= tol {
                    return;
                }
            }
            self.bisect();
        }
    }

    pub fn midpoint(&self) -> Rational {
        (&self.interval.lo + &self.interval.hi) / int(2)
    }

    pub fn to_f64(&self) -> f64 {
        let mut x = self.clone();
        x.refine_relative(60);
        to_f64(&x.midpoint())
    }

    /// Decimal rendering to `digits` significant figures.
    pub fn to_decimal(&self, digits: u32) -> String {
        if let Some(q) = self.as_rational() {
            return format_significant(q, digits);
        }
        let mut x = self.clone();
        let bits = (digits as f64 * 3.33).ceil() as u32 + 16;
        x.refine_relative(bits);
        format_significant(&x.midpoint(), digits)
    }

    /// Sign of this number.
    pub fn signum(&self) -> Ordering {
        self.cmp_value(&Self::from_rational(Rational::zero()))
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(q);
        }
        if self.defining.eval(q).is_zero() && self.interval.lo <= *q && *q <= self.interval.hi {
            return Ordering::Equal;
        }
        let mut x = self.clone();
        loop {
            if q < &x.interval.lo {
                return Ordering::Greater;
            }
            if q > &x.interval.hi {
                return Ordering::Less;
            }
            x.bisect();
            if let Some(r) = x.as_rational() {
                return r.cmp(q);
            }
        }
    }

    /// Exact total order of values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(q).reverse();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.interval.hi < b.interval.lo {
                return Ordering::Less;
            }
            if b.interval.hi < a.interval.lo {
                return Ordering::Greater;
            }
            let lo = a.interval.lo.clone().max(b.interval.lo.clone());
            let hi = a.interval.hi.clone().min(b.interval.hi.clone());
            let g = Poly::gcd(&a.defining, &b.defining);
            if g.degree().unwrap_or(0) > 0 && SturmChain::new(&g).count_closed(&lo, &hi) > 0 {
                return Ordering::Equal;
            }
            a.bisect();
            b.bisect();
            if a.as_rational().is_some() || b.as_rational().is_some() {
                return a.cmp_value(&b);
            }
        }
    }

    /// Whether this number is a root of `p`.
    pub fn is_root_of(&self, p: &Poly) -> bool {
        if let Some(q) = self.as_rational() {
            return p.eval(q).is_zero();
        }
        let g = Poly::gcd(&self.defining, p);
        g.degree().unwrap_or(0) > 0
            && SturmChain::new(&g).count_closed(&self.interval.lo, &self.interval.hi) > 0
    }

    /// Shortest decimal-free description: exact rational if known.
    pub fn exact_string(&self) -> Option<String> {
        self.as_rational().map(super::rational::to_exact_string)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{}", super::rational::to_exact_string(q)),
            None => write!(f, "{}", self.to_decimal(12)),
        }
    }
}

/// Nested interval of width at most `width` around `x`.
pub fn algebraic_refine(x: &AlgebraicReal, width: &Rational) -> (Rational, Rational) {
    let mut y = x.clone();
    y.refine(width);
    y.interval()
}

/// `10^k` as a rational, for refinement widths.
pub fn ten_to(k: u32) -> Rational {
    big(pow10(k))
}

impl serde::Serialize for AlgebraicReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use super::rational::to_exact_string;
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AlgebraicReal", 5)?;
        st.serialize_field("exact", &self.exact_string())?;
        st.serialize_field("defining", &self.defining)?;
        st.serialize_field("lo", &to_exact_string(&self.interval.lo))?;
        st.serialize_field("hi", &to_exact_string(&self.interval.hi))?;
        st.serialize_field("decimal", &self.to_decimal(16))?;
        st.end()
    }
}
