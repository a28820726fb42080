//! Dense univariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{big, int, lcm_denominators, Rational};

/// Coefficients in ascending order of power; never carries trailing zeros,
/// so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(big).collect())
    }

    /// `z - root`.
    pub fn linear_factor(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    /// Monic product of `(z - r)` over `roots`.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_factor(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Exact value, reduced once at the end: with x = a/b and L the lcm
    /// of the coefficient denominators, p(x) = Σ (L c_i) a^i b^(d−i) / (L b^d).
    pub fn eval(&self, x: &Rational) -> Rational {
        if self.coeffs.is_empty() {
            return Rational::zero();
        }
        let l = lcm_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let (num, bpow) = homogeneous_horner(&ints, x);
        Rational::new(num, l * bpow)
    }

    /// Sign of p(x); integer arithmetic only.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer().clone()).collect();
            return homogeneous_horner(&ints, x).0.cmp(&BigInt::zero());
        }
        // the common denominator L b^d is positive
        let l = lcm_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        homogeneous_horner(&ints, x).0.cmp(&BigInt::zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        coeffs[0] += c;
        Self::new(coeffs)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] / &lc;
            if q.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// `Some(q)` when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero),
    /// by the primitive pseudo-remainder sequence over ℤ.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.primitive_integer(), b.primitive_integer());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_ints(pseudo_rem(&a, &b));
            a = std::mem::replace(&mut b, r);
        }
        Poly::from_bigints(&a).monic()
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Self::zero();
        }
        let den = lcm_denominators(&self.coeffs);
        let nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * big(den.clone())).to_integer())
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        Self::new(nums.into_iter().map(|n| big(n / &g)).collect())
    }

    /// Integer coefficients of [`Poly::primitive`].
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        self.primitive()
            .coeffs
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }

    /// Yun's square-free decomposition: pairs `(g_i, i)` with `g_i` monic,
    /// square-free and pairwise coprime, and `self = lc * prod g_i^i`.
    pub fn square_free_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let c = Poly::gcd(self, &d);
        let mut w = self.exact_div(&c).expect("gcd divides").monic();
        let mut y = d.exact_div(&c).expect("gcd divides derivative");
        let lc_w = self.exact_div(&c).unwrap().leading().unwrap().clone();
        y = y.scale(&lc_w.recip());
        let mut z = &y - &w.derivative();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let g = Poly::gcd(&w, &z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            w = w.exact_div(&g).expect("gcd divides");
            y = z.exact_div(&g).expect("gcd divides");
            z = &y - &w.derivative();
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn square_free_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// `q(z) = p(z + a)`, by repeated synthetic division (Taylor shift).
    pub fn shift(&self, a: &Rational) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// Real and imaginary parts `(P, Q)` of `p(i t)` as polynomials in real `t`.
    pub fn split_on_imaginary_axis(&self) -> (Poly, Poly) {
        let mut re = Vec::with_capacity(self.coeffs.len());
        let mut im = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            // i^k cycles through 1, i, -1, -i
            let (r, q) = match k % 4 {
                0 => (c.clone(), Rational::zero()),
                1 => (Rational::zero(), c.clone()),
                2 => (-c.clone(), Rational::zero()),
                _ => (Rational::zero(), -c.clone()),
            };
            re.push(r);
            im.push(q);
        }
        (Poly::new(re), Poly::new(im))
    }

    /// Cauchy bound: every complex root satisfies |z| < bound.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading().expect("nonzero polynomial").abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                _ => {}
            }
            first = false;
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    write!(f, "z")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// lc(b)^(deg a − deg b + 1) · a mod b, ascending integer coefficients
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = &b[db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let top = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &top * bi;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// `q(z) = p(z + a)`.
pub fn poly_shift(p: &Poly, a: &Rational) -> Poly {
    p.shift(a)
}

impl serde::Serialize for Poly {
    /// Ascending coefficients as exact strings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&super::rational::to_exact_string(c))?;
        }
        seq.end()
    }
}

/// For x = a/b (b > 0): (Σ c_i a^i b^(d−i), b^d).
fn homogeneous_horner(c: &[BigInt], x: &Rational) -> (BigInt, BigInt) {
    let (a, b) = (x.numer(), x.denom());
    let mut bpow = BigInt::one();
    let mut acc = c.last().cloned().unwrap_or_default();
    for ci in c.iter().rev().skip(1) {
        bpow *= b;
        acc = acc * a + ci * &bpow;
    }
    (acc, bpow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-1, 0, 1]); // z^2 - 1
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(&q * &b, a);
        assert_eq!(Poly::gcd(&a, &p(&[1, 2, 1])), p(&[1, 1]));
        assert_eq!(a.to_string(), "z^2 - 1");
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn identity_shift_and_root_translation() {
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.shift(&int(0)), sq);
        let d = Poly::from_roots(&[int(0), int(1), int(2), int(3)]);
        let shifted = poly_shift(&d, &rat(-1, 2));
        for r in [rat(1, 2), rat(3, 2), rat(5, 2), rat(7, 2)] {
            assert!(shifted.eval(&r).is_zero());
        }
    }

    #[test]
    fn square_free_decomposition_recovers_multiplicities() {
        // (z-1)^2 (z+3)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[3, 1]);
        let sqf = f.square_free_decomposition();
        assert_eq!(sqf, vec![(p(&[3, 1]), 1), (p(&[-1, 1]), 2)]);
        // 2 (z^2+1)^3 z
        let g = &(&p(&[1, 0, 1]) * &p(&[1, 0, 1])) * &(&p(&[1, 0, 1]) * &p(&[0, 2]));
        let sqf = g.square_free_decomposition();
        assert_eq!(sqf, vec![(p(&[0, 1]), 1), (p(&[1, 0, 1]), 3)]);
        assert_eq!(g.square_free_part(), p(&[0, 1, 0, 1]));
    }

    #[test]
    fn imaginary_axis_split() {
        // z^2 + 1 at z = i t: 1 - t^2, imaginary part 0
        let (re, im) = p(&[1, 0, 1]).split_on_imaginary_axis();
        assert_eq!(re, p(&[1, 0, -1]));
        assert!(im.is_zero());
        let (re, im) = p(&[0, 0, 0, 1]).split_on_imaginary_axis();
        assert!(re.is_zero());
        assert_eq!(im, p(&[0, 0, 0, -1]));
    }

    proptest! {
        #[test]
        fn shift_translates_roots(roots in prop::collection::vec((-20i64..20, 1i64..6), 1..6),
                                  a in (-10i64..10, 1i64..5)) {
            let roots: Vec<Rational> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
            let a = rat(a.0, a.1);
            let shifted = Poly::from_roots(&roots).shift(&a);
            for r in &roots {
                prop_assert!(shifted.eval(&(r - &a)).is_zero());
            }
        }

        #[test]
        fn division_identity(a in prop::collection::vec(-9i64..9, 0..7),
                             b in prop::collection::vec(-9i64..9, 1..5)) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
