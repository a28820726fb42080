//! Indicial polynomials of the radial operators and the fourth-order
//! Euler family.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bigfloat::{BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::exact::rational::{int, rat, to_f64, Rational};
use crate::exact::Poly;

/// Radial operator of power `m` in dimension `n`, harmonic degree `l`,
/// coupling `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndicialSpec {
    pub m: u32,
    pub n: u32,
    pub l: u32,
    #[serde(with = "crate::exact::rational::as_string")]
    pub c: Rational,
}

impl IndicialSpec {
    pub fn new(m: u32, n: u32, l: u32, c: Rational) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidSpec(format!("m must be >= 1, got {m}")));
        }
        if n < 2 {
            return Err(Error::InvalidSpec(format!("n must be >= 2, got {n}")));
        }
        Ok(Self { m, n, l, c })
    }

    /// Effective dimension n + 2ℓ; the indicial data depend only on it.
    pub fn big_n(&self) -> i64 {
        effective_dim(self.n, self.l)
    }

    pub fn with_c(&self, c: Rational) -> Self {
        Self { c, ..self.clone() }
    }
}

pub fn effective_dim(n: u32, l: u32) -> i64 {
    n as i64 + 2 * l as i64
}

/// D(0; z) for effective dimension `big_n`:
/// (−1)^m ∏_{j=1}^m (z − (N+4j−5)/2)(z + (N−4j+1)/2).
pub fn indicial_base(m: u32, big_n: i64) -> Poly {
    let mut p = Poly::one();
    for j in 1..=m as i64 {
        let a = Poly::linear_factor(&rat(big_n + 4 * j - 5, 2));
        let b = Poly::linear_factor(&rat(-(big_n - 4 * j + 1), 2));
        p = &p * &(&a * &b);
    }
    if m % 2 == 1 {
        -&p
    } else {
        p
    }
}

/// D_{m,n,ℓ}(c; z).
pub fn build_indicial(spec: &IndicialSpec) -> Poly {
    indicial_base(spec.m, spec.big_n()).add_constant(&spec.c)
}

/// Coefficients (c₁, c₂) of the fourth-order Euler expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerParams {
    #[serde(with = "crate::exact::rational::as_string")]
    pub c1: Rational,
    #[serde(with = "crate::exact::rational::as_string")]
    pub c2: Rational,
}

impl EulerParams {
    pub fn new(c1: Rational, c2: Rational) -> Self {
        Self { c1, c2 }
    }

    /// Radicand 1 − 4c₁ + c₁² − c₂ of the inner square root.
    pub fn inner_radicand(&self) -> Rational {
        int(1) - &self.c1 * int(4) + &self.c1 * &self.c1 - &self.c2
    }
}

/// c₁ = −(N−1)(N−3)/4, c₂ = c₁² + c.
pub fn euler_params(n: u32, l: u32, c: &Rational) -> EulerParams {
    let big_n = effective_dim(n, l);
    let c1 = rat(-(big_n - 1) * (big_n - 3), 4);
    let c2 = &c1 * &c1 + c;
    EulerParams { c1, c2 }
}

/// D₂(c₁, c₂; z) = z(z−1)(z−2)(z−3) + c₁[z(z−1) + (z−2)(z−3)] + c₂.
pub fn euler_quartic(p: &EulerParams) -> Poly {
    let base = Poly::from_roots(&[int(0), int(1), int(2), int(3)]);
    let mid = &Poly::from_roots(&[int(0), int(1)]) + &Poly::from_roots(&[int(2), int(3)]);
    (&base + &mid.scale(&p.c1)).add_constant(&p.c2)
}

/// α₁..α₄ by the closed formulas, principal square roots throughout.
pub fn quartic_roots_closed_form(p: &EulerParams, prec: u32) -> [BigComplex; 4] {
    let q = |x: &Rational| BigComplex::from_real(BigFloat::from_rational(x, prec));
    let inner = q(&p.inner_radicand()).sqrt();
    let four = BigFloat::from_i64(4, prec);
    let base = q(&(int(5) - &p.c1 * int(4)));
    let plus = base.add(&inner.scale(&four)).sqrt();
    let minus = base.sub(&inner.scale(&four)).sqrt();
    let mid = q(&rat(3, 2));
    let half = BigFloat::from_rational(&rat(1, 2), prec);
    [
        mid.sub(&plus.scale(&half)),
        mid.sub(&minus.scale(&half)),
        mid.add(&minus.scale(&half)),
        mid.add(&plus.scale(&half)),
    ]
}

/// f64 version of [`quartic_roots_closed_form`], same branch conventions.
pub fn quartic_roots_closed_form_f64(p: &EulerParams) -> [Complex64; 4] {
    let c1 = to_f64(&p.c1);
    let inner = principal_sqrt(Complex64::new(to_f64(&p.inner_radicand()), 0.0));
    let base = Complex64::new(5.0 - 4.0 * c1, 0.0);
    let plus = principal_sqrt(base + 4.0 * inner);
    let minus = principal_sqrt(base - 4.0 * inner);
    [1.5 - 0.5 * plus, 1.5 - 0.5 * minus, 1.5 + 0.5 * minus, 1.5 + 0.5 * plus]
}

/// √z with argument in (−π/2, π/2]; negative reals map to +i·√|z|.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        Complex64::new(0.0, (-z.re).sqrt())
    } else {
        z.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::certified_roots;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn m2_n3_matches_euler_quartic() {
        for c in [int(0), int(45), rat(-7, 3)] {
            let d = build_indicial(&IndicialSpec::new(2, 3, 0, c.clone()).unwrap());
            assert_eq!(d, euler_quartic(&EulerParams::new(int(0), c.clone())));
            assert_eq!(euler_params(3, 0, &c), EulerParams::new(int(0), c));
        }
    }

    #[test]
    fn exponents_of_5_20_0() {
        let d = build_indicial(&IndicialSpec::new(5, 20, 0, int(0)).unwrap());
        let want: Vec<Rational> = [-17, -13, -9, -5, -1, 19, 23, 27, 31, 35].iter().map(|&k| rat(k, 2)).collect();
        for r in &want {
            assert!(d.eval(r).is_zero());
        }
        assert_eq!(d.degree(), Some(10));
    }

    #[test]
    fn coupling_is_constant_term() {
        let s = IndicialSpec::new(4, 7, 3, int(0)).unwrap();
        let diff = &build_indicial(&s.with_c(rat(17, 5))) - &build_indicial(&s);
        assert_eq!(diff, Poly::constant(rat(17, 5)));
    }

    #[test]
    fn parameter_map_examples() {
        assert_eq!(euler_params(2, 0, &int(48)), EulerParams::new(rat(1, 4), rat(1, 16) + int(48)));
        assert_eq!(euler_params(8, 0, &int(0)), EulerParams::new(rat(-35, 4), rat(1225, 16)));
    }

    #[test]
    fn shifted_quartic_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let c1 = rat(rng.gen_range(-40..40), rng.gen_range(1..9));
            let c2 = rat(rng.gen_range(-40..40), rng.gen_range(1..9));
            let s = euler_quartic(&EulerParams::new(c1.clone(), c2.clone())).shift(&rat(-1, 2));
            let want = Poly::new(vec![
                rat(105, 16) + &c1 * rat(19, 2) + &c2,
                int(-22) - &c1 * int(8),
                rat(43, 2) + &c1 * int(2),
                int(-8),
                int(1),
            ]);
            assert_eq!(s, want);
        }
    }

    #[test]
    fn closed_form_roots() {
        let r = quartic_roots_closed_form_f64(&EulerParams::new(int(0), int(0)));
        for (z, want) in r.iter().zip([0.0, 1.0, 2.0, 3.0]) {
            assert!((z.re - want).abs() < 1e-14 && z.im.abs() < 1e-14);
        }
        let r = quartic_roots_closed_form(&EulerParams::new(int(0), int(1)), 128);
        let (a2, a3) = (r[1].to_f64(), r[2].to_f64());
        assert!((a2.0 - 1.0).abs() < 1e-30 || (a2.0 - (1.5 - 0.5 * 5f64.sqrt())).abs() < 1e-12);
        assert!((a2.0 + a3.0 - 3.0).abs() < 1e-30);
    }

    #[test]
    fn closed_form_agrees_with_certified_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let p = EulerParams::new(rat(rng.gen_range(-80..80), 4), rat(rng.gen_range(-400..400), 4));
            let cf = quartic_roots_closed_form_f64(&p);
            assert!(cf[0].re <= cf[1].re + 1e-12 && cf[1].re <= 1.5 + 1e-12);
            assert!(((cf[0] + cf[3]) - 3.0).norm() < 1e-9 && ((cf[1] + cf[2]) - 3.0).norm() < 1e-9);
            let set = certified_roots(&euler_quartic(&p), 128).unwrap();
            for r in set.expanded() {
                let z = Complex64::new(r.re_f64(), r.im_f64());
                let best = cf.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-6 + r.radius_f64(), "{p:?} {z} {cf:?}");
            }
        }
    }
}
