//! Certified complex root enclosures.
//!
//! Each square-free factor is solved by Aberth iteration and every
//! approximation gets an inclusion disk of radius n·|W_i| with
//! W_i = g(z_i) / (lc · ∏_{j≠i}(z_i − z_j)), evaluated exactly over dyadic
//! Gaussian rationals. Pairwise disjoint disks each hold exactly one root.

pub mod aberth;
pub mod trajectory;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bigfloat::{BigComplex, BigFloat};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exact::rational::{big, convergents, lcm_denominators, sqrt_upper, to_f64, Rational};
use crate::exact::Poly;

pub use trajectory::{euler_trajectories, root_trajectories, trajectories_of, Labeling, TrajectoryRow};

/// Closed disk `|z − (re + i·im)| ≤ radius` holding exactly `multiplicity`
/// roots counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub re: Rational,
    pub im: Rational,
    pub radius: Rational,
    pub multiplicity: usize,
}

impl CertifiedRoot {
    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }

    pub fn radius_f64(&self) -> f64 {
        to_f64(&self.radius)
    }

    /// Exact value when the enclosure has collapsed to a point.
    pub fn exact(&self) -> Option<(&Rational, &Rational)> {
        self.radius.is_zero().then_some((&self.re, &self.im))
    }

    fn disjoint_from(&self, other: &Self) -> bool {
        let dx = &self.re - &other.re;
        let dy = &self.im - &other.im;
        let r = &self.radius + &other.radius;
        &dx * &dx + &dy * &dy > &r * &r
    }
}

/// Roots sorted by real part, ties by imaginary part.
#[derive(Clone, Debug)]
pub struct OrderedRootSet {
    pub roots: Vec<CertifiedRoot>,
    pub degree: usize,
    pub precision_bits: u32,
}

impl OrderedRootSet {
    /// One entry per root counted with multiplicity: α_1, …, α_degree.
    pub fn expanded(&self) -> Vec<&CertifiedRoot> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r, r.multiplicity))
            .collect()
    }

    /// Partner index of `j` (1-based) under the pairing j ↔ degree − j + 1.
    pub fn pair_of(&self, j: usize) -> usize {
        self.degree + 1 - j
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Position {
    Resolved { left: usize, axis: usize, right: usize },
    /// `straddling` roots (with multiplicity) have disks meeting the line
    /// without being exactly on it.
    Unresolved { left: usize, axis: usize, right: usize, straddling: usize },
}

/// Counts relative to the vertical line Re z = `threshold`.
pub fn real_part_position(set: &OrderedRootSet, threshold: &Rational) -> Position {
    let (mut left, mut axis, mut right, mut straddling) = (0, 0, 0, 0);
    for r in &set.roots {
        let m = r.multiplicity;
        if r.radius.is_zero() && &r.re == threshold {
            axis += m;
        } else if &(&r.re + &r.radius) < threshold {
            left += m;
        } else if &(&r.re - &r.radius) > threshold {
            right += m;
        } else {
            straddling += m;
        }
    }
    if straddling == 0 {
        Position::Resolved { left, axis, right }
    } else {
        Position::Unresolved { left, axis, right, straddling }
    }
}

/// Certified roots starting at `precision_bits`, doubling up to 4096 bits.
pub fn certified_roots(p: &Poly, precision_bits: u32) -> Result<OrderedRootSet> {
    certified_roots_with(p, &Config::default().starting_at(precision_bits))
}

pub fn certified_roots_with(p: &Poly, config: &Config) -> Result<OrderedRootSet> {
    certified_roots_until(p, config, |_| true)
}

/// Escalate precision until the disks are disjoint and `accept` holds.
pub fn certified_roots_until(
    p: &Poly,
    config: &Config,
    accept: impl Fn(&OrderedRootSet) -> bool,
) -> Result<OrderedRootSet> {
    match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial(0)),
        _ => {}
    }
    let factors: Vec<(Vec<BigInt>, usize)> = p
        .square_free_decomposition()
        .into_iter()
        .map(|(g, m)| (g.primitive_integer(), m))
        .collect();
    let mut last = 0;
    let mut seeds: Vec<Option<Vec<BigComplex>>> = vec![None; factors.len()];
    for prec in config.precisions() {
        last = prec;
        if let Some(set) = attempt(&factors, prec, &mut seeds) {
            let set = OrderedRootSet { degree: p.degree().unwrap(), precision_bits: prec, ..set };
            if accept(&set) {
                return Ok(set);
            }
        }
    }
    Err(Error::PrecisionExhausted(last))
}

fn attempt(
    factors: &[(Vec<BigInt>, usize)],
    prec: u32,
    seeds: &mut [Option<Vec<BigComplex>>],
) -> Option<OrderedRootSet> {
    let mut roots = Vec::new();
    for (k, (coeffs, mult)) in factors.iter().enumerate() {
        let n = coeffs.len() - 1;
        if n == 1 {
            let q = Rational::new(-coeffs[0].clone(), coeffs[1].clone());
            roots.push(CertifiedRoot { re: q, im: Rational::zero(), radius: Rational::zero(), multiplicity: *mult });
            continue;
        }
        let start = match seeds[k].take() {
            Some(s) => s,
            None => {
                let fc: Vec<f64> = coeffs.iter().map(|c| to_f64(&big(c.clone()))).collect();
                let approx = aberth::aberth_f64(&fc, 800).unwrap_or_else(|| aberth::initial_guesses(&fc));
                approx.iter().map(|z| BigComplex::from_f64(z.re, z.im, prec)).collect()
            }
        };
        let polished = aberth::aberth_big(coeffs, &start, prec, 60 + 2 * n);
        let disks = certify_factor(coeffs, &polished, *mult);
        seeds[k] = Some(polished);
        roots.extend(disks?);
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if !roots[i].disjoint_from(&roots[j]) {
                return None;
            }
        }
    }
    roots.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
    Some(OrderedRootSet { roots, degree: 0, precision_bits: prec })
}

type Gauss = (BigInt, BigInt);

fn gmul(a: &Gauss, b: &Gauss) -> Gauss {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gnorm(a: &Gauss) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// Exact inclusion radii; centers are brought to a common denominator T and
/// everything else is Gaussian-integer arithmetic.
fn radii(coeffs: &[BigInt], centers: &[(Rational, Rational)]) -> Option<Vec<Rational>> {
    let n = coeffs.len() - 1;
    let t = lcm_denominators(centers.iter().flat_map(|(a, b)| [a, b]));
    let zs: Vec<Gauss> = centers
        .iter()
        .map(|(a, b)| ((a * big(t.clone())).to_integer(), (b * big(t.clone())).to_integer()))
        .collect();
    let tpow: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * &t)).take(n + 1).collect();
    let lc = &coeffs[n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let z = &zs[i];
        let mut h: Gauss = (lc.clone(), BigInt::zero());
        for k in (0..n).rev() {
            h = gmul(&h, z);
            h.0 += &coeffs[k] * &tpow[n - k];
        }
        let hn = gnorm(&h);
        if hn.is_zero() {
            out.push(Rational::zero());
            continue;
        }
        let mut prod: Gauss = (BigInt::one(), BigInt::zero());
        for (j, w) in zs.iter().enumerate() {
            if j != i {
                prod = gmul(&prod, &(&z.0 - &w.0, &z.1 - &w.1));
            }
        }
        let pn = gnorm(&prod);
        if pn.is_zero() {
            return None;
        }
        let den = &t * &t * lc * lc * pn;
        out.push(sqrt_upper(&hn, &den) * big(BigInt::from(n)));
    }
    Some(out)
}

/// Try an exact rational root: a convergent of `x` with denominator dividing
/// the leading coefficient, accepted only after exact evaluation.
fn snap_rational(coeffs: &[BigInt], x: &Rational, prec: u32) -> Option<Rational> {
    let lc = coeffs.last().unwrap().abs();
    let scale = x.abs() + Rational::one();
    let tol = scale / big(BigInt::one() << (prec / 2) as usize);
    let cand = convergents(x, &lc)
        .into_iter()
        .find(|c| (c - x).abs() < tol && (&lc % c.denom()).is_zero())?;
    let val = coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, a| acc * &cand + big(a.clone()));
    val.is_zero().then_some(cand)
}

fn certify_factor(coeffs: &[BigInt], approx: &[BigComplex], mult: usize) -> Option<Vec<CertifiedRoot>> {
    let prec = approx[0].re.prec();
    let mut centers: Vec<(Rational, Rational)> =
        approx.iter().map(|z| (z.re.to_rational(), z.im.to_rational())).collect();
    let raw = radii(coeffs, &centers)?;
    let pairwise_ok = |cs: &[(Rational, Rational)], rs: &[Rational]| {
        (0..cs.len()).all(|i| {
            (i + 1..cs.len()).all(|j| {
                let dx = &cs[i].0 - &cs[j].0;
                let dy = &cs[i].1 - &cs[j].1;
                let r = &rs[i] + &rs[j];
                &dx * &dx + &dy * &dy > &r * &r
            })
        })
    };
    if !pairwise_ok(&centers, &raw) {
        return None;
    }
    // disks meeting the real axis: move the center onto it, so the disk is
    // conjugation-symmetric and its single root is real
    let mut moved = centers.clone();
    let mut any = false;
    for (c, r) in moved.iter_mut().zip(&raw) {
        if !c.1.is_zero() && &c.1.abs() <= r {
            c.1 = Rational::zero();
            any = true;
        }
        if c.1.is_zero() {
            if let Some(q) = snap_rational(coeffs, &c.0, prec) {
                c.0 = q;
                any = true;
            }
        }
    }
    let mut radii_final = raw;
    if any {
        if let Some(rs) = radii(coeffs, &moved) {
            if pairwise_ok(&moved, &rs) {
                centers = moved;
                radii_final = rs;
            }
        }
    }
    Some(
        centers
            .into_iter()
            .zip(radii_final)
            .map(|((re, im), radius)| CertifiedRoot { re, im, radius, multiplicity: mult })
            .collect(),
    )
}

/// Sort key helper for callers comparing root lists.
pub fn cmp_by_real_part(a: &CertifiedRoot, b: &CertifiedRoot) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// f64 approximations `(re, im)` of all roots with multiplicity.
pub fn approximate_roots(set: &OrderedRootSet) -> Vec<(f64, f64)> {
    set.expanded().iter().map(|r| (r.re_f64(), r.im_f64())).collect()
}

/// Disk center as a BigComplex, for callers that continue iterating.
pub fn to_bigcomplex(r: &CertifiedRoot, prec: u32) -> BigComplex {
    BigComplex::new(BigFloat::from_rational(&r.re, prec), BigFloat::from_rational(&r.im, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conjugate_pair_radius() {
        let set = certified_roots(&Poly::from_i64(&[1, 0, 1]), 128).unwrap();
        assert_eq!(set.roots.len(), 2);
        for r in &set.roots {
            assert!(r.re_f64().abs() < 1e-30);
            assert!((r.im_f64().abs() - 1.0).abs() < 1e-30);
            assert!(r.radius_f64() < 2f64.powi(-40));
        }
        assert_eq!(
            real_part_position(&set, &rat(-1, 2)),
            Position::Resolved { left: 0, axis: 0, right: 2 }
        );
    }

    #[test]
    fn rational_roots_become_exact() {
        let p = Poly::from_roots(&[rat(-1, 2), rat(7, 2), int(3), rat(-5, 3)]);
        let set = certified_roots(&p, 128).unwrap();
        let exact: Vec<Rational> = set.roots.iter().map(|r| r.exact().unwrap().0.clone()).collect();
        assert_eq!(exact, vec![rat(-5, 3), rat(-1, 2), int(3), rat(7, 2)]);
    }

    #[test]
    fn multiplicities_preserved() {
        let a = Poly::from_i64(&[1, 0, 1]);
        let p = &(&a * &a) * &Poly::from_i64(&[-2, 0, 1]);
        let set = certified_roots(&p, 128).unwrap();
        assert_eq!(set.expanded().len(), 6);
        assert_eq!(set.roots.iter().filter(|r| r.multiplicity == 2).count(), 2);
    }

    #[test]
    fn disk_sum_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let deg = rng.gen_range(2..=10);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-50..=50)).collect();
            c.push(rng.gen_range(1..=5));
            let p = Poly::from_i64(&c);
            let set = certified_roots(&p, 128).unwrap();
            let mut sum = Rational::zero();
            let mut rad = Rational::zero();
            for r in set.expanded() {
                sum += &r.re;
                rad += &r.radius;
            }
            let want = -p.coeff(deg - 1) / p.coeff(deg);
            assert!((sum - want).abs() <= rad + rat(1, 1_000_000_000_000));
        }
    }
}
