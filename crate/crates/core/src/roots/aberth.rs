//! Aberth–Ehrlich simultaneous iteration, in f64 and in [`BigFloat`].

use num_complex::Complex64;

use crate::bigfloat::{BigComplex, BigFloat};
use num_bigint::BigInt;

fn eval_f64(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Initial guesses on a circle whose radius bounds the root moduli.
pub fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n].abs();
    // Fujiwara bound
    let r = (0..n)
        .map(|k| {
            let ratio = (coeffs[k] / lc).abs();
            let ratio = if k == 0 { ratio / 2.0 } else { ratio };
            ratio.powf(1.0 / (n - k) as f64)
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let r = if r.is_finite() && r > 0.0 { r } else { 1.0 };
    (0..n)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

/// Approximate roots with f64 arithmetic; `None` if the iteration fails to
/// settle (overflow or stagnation).
pub fn aberth_f64(coeffs: &[f64], max_iter: usize) -> Option<Vec<Complex64>> {
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 || coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let mut z = initial_guesses(coeffs);
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = eval_f64(coeffs, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            if w.norm() > 1e-14 * (1.0 + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            return Some(z);
        }
    }
    z.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(z)
}

fn eval_big(coeffs: &[BigFloat], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.re.prec();
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z);
        p.re = &p.re + c;
    }
    (p, dp)
}

/// Polish approximations at `prec` bits until corrections fall below
/// 2^(10−prec) relative, or `max_iter` sweeps.
pub fn aberth_big(coeffs: &[BigInt], start: &[BigComplex], prec: u32, max_iter: usize) -> Vec<BigComplex> {
    let cs: Vec<BigFloat> = coeffs.iter().map(|c| BigFloat::from_bigint(c.clone(), prec)).collect();
    let n = start.len();
    let mut z: Vec<BigComplex> = start
        .iter()
        .map(|c| BigComplex::new(c.re.with_prec(prec), c.im.with_prec(prec)))
        .collect();
    let tol_exp = 10 - prec as i64;
    let one = BigComplex::from_real(BigFloat::from_i64(1, prec));
    for _it in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = eval_big(&cs, &z[i]);
            if p.is_zero() {
                continue;
            }
            if dp.is_zero() {
                converged = false;
                continue;
            }
            let ratio = p.div(&dp);
            let mut s = BigComplex::zero(prec);
            let mut degenerate = false;
            for j in 0..n {
                if j != i {
                    let d = z[i].sub(&z[j]);
                    if d.is_zero() {
                        degenerate = true;
                        break;
                    }
                    s = s.add(&d.recip());
                }
            }
            let w = if degenerate {
                ratio
            } else {
                let denom = one.sub(&ratio.mul(&s));
                if denom.is_zero() { ratio } else { ratio.div(&denom) }
            };
            z[i] = z[i].sub(&w);
            let wmag = w.norm_sqr().log2_floor() / 2;
            let zmag = z[i].norm_sqr().log2_floor().max(0) / 2;
            if wmag > zmag + tol_exp {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roots_of_cubic() {
        // (z-1)(z-2)(z+3) = z^3 - 7z + 6
        let mut z = aberth_f64(&[6.0, -7.0, 0.0, 1.0], 500).unwrap();
        z.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (got, want) in z.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn big_polish_reaches_precision() {
        let coeffs = [BigInt::from(-2), BigInt::from(0), BigInt::from(1)];
        let start = [BigComplex::from_f64(1.4, 0.01, 256), BigComplex::from_f64(-1.3, -0.02, 256)];
        let z = aberth_big(&coeffs, &start, 256, 100);
        let r = &z[0].re;
        let err = (&(r * r) - &BigFloat::from_i64(2, 256)).abs();
        assert!(err.log2_floor() < -240);
    }
}
