//! Hurwitz matrices, boundary candidates in c, exact imaginary-axis tests
//! and half-plane counts relative to Re z = −1/2.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exact::matrix::det_rational;
use crate::exact::rational::{int, rat, Rational};
use crate::exact::sturm::real_root_count_with_multiplicity;
use crate::exact::{polymatrix_det, AlgebraicReal, Poly, PolyMatrix};
use crate::indicial::{effective_dim, indicial_base};
use crate::roots::{certified_roots_until, real_part_position, OrderedRootSet, Position};

/// Hurwitz data of D̃(c; z) = D(c; z − 1/2) with c symbolic.
#[derive(Clone, Debug)]
pub struct HurwitzData {
    pub m: u32,
    /// D̃(0; ·); the coupling enters only the constant coefficient.
    pub shifted: Poly,
    /// 2m×2m matrix over ℚ[c].
    pub matrix: PolyMatrix,
    pub det_in_c: Poly,
    /// The root −D(0; −1/2) of the linear factor of `det_in_c`.
    pub linear_root: Rational,
    /// `det_in_c / (c − linear_root)`, unnormalized.
    pub q_factor: Poly,
}

impl HurwitzData {
    /// Assemble from D(0; ·) of degree 2m.
    pub fn from_base(base: &Poly) -> Self {
        let deg = base.degree().expect("nonzero indicial polynomial");
        assert!(deg >= 2 && deg.is_multiple_of(2), "indicial polynomials have even degree");
        let m = (deg / 2) as u32;
        let shifted = base.shift(&rat(-1, 2));
        let matrix = hurwitz_matrix_in_c(&shifted);
        let det_in_c = polymatrix_det(&matrix);
        let linear_root = -base.eval(&rat(-1, 2));
        let q_factor = det_in_c
            .exact_div(&Poly::linear_factor(&linear_root))
            .expect("Hurwitz determinant must carry the linear factor");
        Self { m, shifted, matrix, det_in_c, linear_root, q_factor }
    }

    /// Primitive integer normalization of `q_factor` with positive leading
    /// coefficient.
    pub fn q_factor_primitive(&self) -> Poly {
        let p = self.q_factor.primitive();
        if p.leading().is_some_and(|c| c.is_negative()) {
            -&p
        } else {
            p
        }
    }
}

/// Hurwitz data for (m, n, ℓ).
pub fn hurwitz_assemble(m: u32, n: u32, l: u32) -> HurwitzData {
    HurwitzData::from_base(&indicial_base(m, effective_dim(n, l)))
}

/// Hurwitz matrix of a real polynomial: entry (i, j) (1-based) is a_{2j−i},
/// where a_k is the coefficient of z^{deg−k}.
pub fn hurwitz_matrix(p: &Poly) -> Vec<Vec<Rational>> {
    let d = p.degree().unwrap_or(0);
    let a = |k: i64| -> Rational {
        if k < 0 || k > d as i64 {
            Rational::zero()
        } else {
            p.coeff(d - k as usize)
        }
    };
    (1..=d as i64)
        .map(|i| (1..=d as i64).map(|j| a(2 * j - i)).collect())
        .collect()
}

/// The Hurwitz matrix of `shifted + c` as a matrix over ℚ[c].
pub fn hurwitz_matrix_in_c(shifted: &Poly) -> PolyMatrix {
    let d = shifted.degree().unwrap();
    PolyMatrix::from_fn(d, |i, j| {
        let k = 2 * (j as i64 + 1) - (i as i64 + 1);
        if k < 0 || k > d as i64 {
            Poly::zero()
        } else if k as usize == d {
            Poly::new(vec![shifted.coeff(0), Rational::one()])
        } else {
            Poly::constant(shifted.coeff(d - k as usize))
        }
    })
}

pub fn hurwitz_det(p: &Poly) -> Rational {
    det_rational(hurwitz_matrix(p))
}

/// Values t with p(−1/2 + i t) = 0, exactly.
pub fn axis_roots_exact(p: &Poly) -> Vec<AlgebraicReal> {
    let g = axis_gcd(p);
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    AlgebraicReal::real_roots(&g)
}

// gcd(P, Q) with p(−1/2 + it) = P(t) + iQ(t)
fn axis_gcd(p: &Poly) -> Poly {
    let (re, im) = p.shift(&rat(-1, 2)).split_on_imaginary_axis();
    Poly::gcd(&re, &im)
}

fn distinct_real_roots(g: &Poly) -> usize {
    if g.degree().unwrap_or(0) == 0 {
        0
    } else {
        crate::exact::SturmChain::new(&g.square_free_part()).count_all()
    }
}

/// Roots on Re z = −1/2 counted with multiplicity.
pub fn axis_count_exact(p: &Poly) -> usize {
    let mut q = p.clone();
    let mut total = 0;
    while q.degree().unwrap_or(0) > 0 {
        let k = distinct_real_roots(&axis_gcd(&q));
        if k == 0 {
            break;
        }
        total += k;
        q = Poly::gcd(&q, &q.derivative());
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HalfPlaneCount {
    /// Re < −1/2.
    pub left: usize,
    /// Re = −1/2.
    pub axis: usize,
    /// Re > −1/2.
    pub right: usize,
    pub exact: bool,
}

/// Exact half-plane count together with the certified roots that settled it.
pub fn halfplane_count_with(p: &Poly, config: &Config) -> Result<(HalfPlaneCount, OrderedRootSet)> {
    let axis = axis_count_exact(p);
    let threshold = rat(-1, 2);
    let set = certified_roots_until(p, config, |set| match real_part_position(set, &threshold) {
        Position::Resolved { axis: a, .. } => a == axis,
        Position::Unresolved { axis: a, straddling, .. } => a + straddling == axis,
    })?;
    let (left, right) = match real_part_position(&set, &threshold) {
        Position::Resolved { left, right, .. } | Position::Unresolved { left, right, .. } => (left, right),
    };
    Ok((HalfPlaneCount { left, axis, right, exact: true }, set))
}

pub fn halfplane_count(p: &Poly) -> Result<HalfPlaneCount> {
    halfplane_count_with(p, &Config::default()).map(|(h, _)| h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RealRootClass {
    TwoRealTwoImaginary,
    NoRealRoots,
    FourReal,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticInvariants {
    pub disc: Rational,
    pub pi: Rational,
    pub lambda: Rational,
    pub real_root_class: RealRootClass,
}

/// Discriminant of a polynomial of degree 2, 3 or 4 (standard normalization).
pub fn discriminant(p: &Poly) -> Result<Rational> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let c = |k: usize| p.coeff(d - k);
    Ok(match d {
        2 => {
            let (a, b, cc) = (c(0), c(1), c(2));
            &b * &b - int(4) * a * cc
        }
        3 => {
            let (a, b, cc, dd) = (c(0), c(1), c(2), c(3));
            &b * &b * &cc * &cc - int(4) * &a * &cc * &cc * &cc - int(4) * &b * &b * &b * &dd
                - int(27) * &a * &a * &dd * &dd
                + int(18) * &a * &b * &cc * &dd
        }
        4 => quartic_disc(&c(0), &c(1), &c(2), &c(3), &c(4)),
        _ => return Err(Error::WrongDegree { expected: 4, got: d }),
    })
}

fn quartic_disc(a: &Rational, b: &Rational, c: &Rational, d: &Rational, e: &Rational) -> Rational {
    let t = |k: i64, f: &[&Rational]| f.iter().fold(int(k), |acc, x| acc * *x);
    t(256, &[a, a, a, e, e, e]) - t(192, &[a, a, b, d, e, e]) - t(128, &[a, a, c, c, e, e])
        + t(144, &[a, a, c, d, d, e])
        - t(27, &[a, a, d, d, d, d])
        + t(144, &[a, b, b, c, e, e])
        - t(6, &[a, b, b, d, d, e])
        - t(80, &[a, b, c, c, d, e])
        + t(18, &[a, b, c, d, d, d])
        + t(16, &[a, c, c, c, c, e])
        - t(4, &[a, c, c, c, d, d])
        - t(27, &[b, b, b, b, e, e])
        + t(18, &[b, b, b, c, d, e])
        - t(4, &[b, b, b, d, d, d])
        - t(4, &[b, b, c, c, c, e])
        + t(1, &[b, b, c, c, d, d])
}

/// Disc, Π = 8ac − 3b², Λ = 64a³e − 16a²bd − 16a²c² + 16ab²c − 3b⁴, and
/// the real-root class: Disc < 0 gives two real roots; Disc > 0 with Π ≥ 0
/// or Λ ≥ 0 gives none; other cases are settled by a Sturm count.
pub fn quartic_classify(q: &Poly) -> Result<QuarticInvariants> {
    let d = q.degree().ok_or(Error::ZeroPolynomial)?;
    if d != 4 {
        return Err(Error::WrongDegree { expected: 4, got: d });
    }
    let [a, b, c, dd, e] = [4, 3, 2, 1, 0].map(|k| q.coeff(k));
    let disc = quartic_disc(&a, &b, &c, &dd, &e);
    let pi = int(8) * &a * &c - int(3) * &b * &b;
    let lambda = int(64) * &a * &a * &a * &e - int(16) * &a * &a * &b * &dd - int(16) * &a * &a * &c * &c
        + int(16) * &a * &b * &b * &c
        - int(3) * &b * &b * &b * &b;
    let zero = Rational::zero();
    let real_root_class = if disc < zero {
        RealRootClass::TwoRealTwoImaginary
    } else if disc > zero && (pi >= zero || lambda >= zero) {
        RealRootClass::NoRealRoots
    } else {
        match real_root_count_with_multiplicity(q) {
            4 => RealRootClass::FourReal,
            0 => RealRootClass::NoRealRoots,
            _ => RealRootClass::Other,
        }
    };
    Ok(QuarticInvariants { disc, pi, lambda, real_root_class })
}

impl QuarticInvariants {
    /// Signs of (Disc, Π, Λ) as a three-character string such as "+-+".
    pub fn sign_string(&self) -> String {
        [&self.disc, &self.pi, &self.lambda]
            .iter()
            .map(|x| match x.cmp(&&Rational::zero()) {
                Ordering::Less => '-',
                Ordering::Equal => '0',
                Ordering::Greater => '+',
            })
            .collect()
    }
}

/// Invariant signs of the quartic cofactor Q_{5,20,ℓ}.
pub fn signs_q5_20(l: u32) -> String {
    quartic_classify(&hurwitz_assemble(5, 20, l).q_factor).expect("quartic cofactor").sign_string()
}

/// Discriminant of the quadratic cofactor Q_{3,n,ℓ}.
pub fn disc_q3(n: u32, l: u32) -> Rational {
    discriminant(&hurwitz_assemble(3, n, l).q_factor).expect("quadratic cofactor")
}

/// −764411904(3k²+60k+52)²(15k²+300k+476).
pub fn disc_q3_closed_form(k: i64) -> Rational {
    let a = 3 * k * k + 60 * k + 52;
    let b = 15 * k * k + 300 * k + 476;
    int(-764_411_904) * int(a) * int(a) * int(b)
}

/// 2⁴¹·3⁴·5¹⁵·(161875k¹⁰ + … + 32928178597910728704) with k = ℓ − 29.
pub fn pi_q5_closed_form(k: i64) -> Rational {
    let coeffs: [&str; 11] = [
        "32928178597910728704",
        "42256876792510195200",
        "9364063767203524800",
        "974749919610039200",
        "59262332963402100",
        "2291590504307500",
        "58206830051875",
        "969468160000",
        "10201465000",
        "61512500",
        "161875",
    ];
    let poly = Poly::new(coeffs.iter().map(|s| crate::exact::parse_rational(s).unwrap()).collect());
    let pre = int(2).pow(41) * int(3).pow(4) * int(5).pow(15);
    pre * poly.eval(&int(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;
    use crate::indicial::{build_indicial, euler_quartic, EulerParams, IndicialSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(m: u32, n: u32, l: u32, c: Rational) -> Poly {
        build_indicial(&IndicialSpec::new(m, n, l, c).unwrap())
    }

    #[test]
    fn h2_layout_and_determinant() {
        let p = euler_quartic(&EulerParams::new(int(0), int(0))).shift(&rat(-1, 2));
        let h = hurwitz_matrix(&p);
        assert_eq!(h[0], vec![int(-8), int(-22), int(0), int(0)]);
        assert_eq!(h[1], vec![int(1), rat(43, 2), rat(105, 16), int(0)]);
        assert_eq!(h[3], vec![int(0), int(1), rat(43, 2), rat(105, 16)]);
        assert_eq!(hurwitz_det(&p), int(18900));
    }

    #[test]
    fn cofactor_of_5_20_0_is_displayed_quartic() {
        let h = hurwitz_assemble(5, 20, 0);
        assert_eq!(h.linear_root, int(0));
        let want: Vec<Rational> = [
            "629847004905001626921946285352115240960000",
            "1045471534388841527438982355353600",
            "429438995162964368031744",
            "-83914629120000",
            "3125",
        ]
        .iter()
        .map(|s| parse_rational(s).unwrap())
        .collect();
        assert_eq!(h.q_factor_primitive(), Poly::new(want));
        assert_eq!(&Poly::linear_factor(&h.linear_root) * &h.q_factor, h.det_in_c);
    }

    #[test]
    fn axis_roots() {
        // boundary c2 = 45 at c1 = 0
        let p = euler_quartic(&EulerParams::new(int(0), int(45)));
        assert_eq!(axis_roots_exact(&p).len(), 2);
        assert!(axis_roots_exact(&Poly::from_roots(&[int(0), int(1), int(2), int(3)])).is_empty());
        let roots = axis_roots_exact(&spec(2, 8, 0, int(0)));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].as_rational(), Some(&int(0)));
    }

    #[test]
    fn halfplane_examples() {
        let h = halfplane_count(&Poly::from_roots(&[int(0), int(1), int(2), int(3)])).unwrap();
        assert_eq!((h.left, h.axis, h.right), (0, 0, 4));
        let h = halfplane_count(&spec(2, 8, 0, int(0))).unwrap();
        assert_eq!((h.left, h.axis, h.right), (1, 1, 2));
        let h = halfplane_count(&spec(5, 20, 0, int(15_000_000_000))).unwrap();
        assert_eq!((h.left, h.axis, h.right), (3, 0, 7));
        // double root on the axis
        let sq = Poly::from_i64(&[1, 2, 2]); // roots -1/2 ± i/2
        let h = halfplane_count(&(&sq * &sq)).unwrap();
        assert_eq!((h.left, h.axis, h.right), (0, 4, 0));
        assert_eq!(axis_count_exact(&(&sq * &Poly::from_i64(&[1, 2]))), 3);
    }

    #[test]
    fn quartic_rules() {
        let q = quartic_classify(&Poly::from_i64(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(q.disc, int(-256));
        assert_eq!(q.real_root_class, RealRootClass::TwoRealTwoImaginary);
        let q = quartic_classify(&Poly::from_roots(&[int(1), int(2), int(3), int(4)])).unwrap();
        assert_eq!(q.real_root_class, RealRootClass::FourReal);
        assert!(quartic_classify(&Poly::from_i64(&[1, 1])).is_err());
        let q0 = quartic_classify(&hurwitz_assemble(5, 20, 0).q_factor).unwrap();
        assert_eq!(q0.real_root_class, RealRootClass::TwoRealTwoImaginary);
        let q1 = quartic_classify(&hurwitz_assemble(5, 20, 1).q_factor).unwrap();
        assert!(q1.disc.is_positive() && q1.pi.is_negative() && q1.lambda.is_positive());
        assert_eq!(q1.real_root_class, RealRootClass::NoRealRoots);
    }

    #[test]
    fn quartic_classifier_matches_sturm() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..300 {
            let mut c: Vec<i64> = (0..4).map(|_| rng.gen_range(-30..=30)).collect();
            c.push(rng.gen_range(1..=4));
            let q = Poly::from_i64(&c);
            let inv = quartic_classify(&q).unwrap();
            let real = real_root_count_with_multiplicity(&q);
            match inv.real_root_class {
                RealRootClass::TwoRealTwoImaginary => assert_eq!(real, 2),
                RealRootClass::NoRealRoots => assert_eq!(real, 0),
                RealRootClass::FourReal => assert_eq!(real, 4),
                RealRootClass::Other => {}
            }
        }
    }

    #[test]
    fn cubic_and_quadratic_discriminants() {
        assert_eq!(discriminant(&Poly::from_i64(&[-2, 0, 1])).unwrap(), int(8));
        assert_eq!(discriminant(&Poly::from_roots(&[int(0), int(1), int(2)])).unwrap(), int(4));
    }

    #[test]
    fn factorization_identity_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let h = hurwitz_assemble(rng.gen_range(1..=4), rng.gen_range(2..=24), rng.gen_range(0..=10));
            assert_eq!(&Poly::linear_factor(&h.linear_root) * &h.q_factor, h.det_in_c);
            assert_eq!(h.q_factor.degree(), Some(h.m as usize - 1));
        }
    }
}
