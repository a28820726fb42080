//! Frobenius bases of τ₂(c₁, c₂)y = λy: resonance loci, case selection,
//! ₀F₃ evaluation and residual checks.
//!
//! Loci, with exponents α₁..α₄ labeled by the closed formulas:
//!   𝕃_k: 16c₂ = −9 − 24c₁ − 128c₁k² + 160k² − 256k⁴  (α₁−α₄ or α₂−α₃ = −4k)
//!   ℙ_k: c₂ = 1 − 4c₁ + c₁² + 16c₁k² − 20k² + 64k⁴   (α₁−α₂ or α₁−α₃ = −4k)

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::esa::quartic_esa_closed_form;
use crate::exact::rational::{int, rat, to_f64, Rational};
use crate::indicial::{quartic_roots_closed_form_f64, EulerParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Locus {
    Line,
    Parabola,
}

/// c₂ on 𝕃_k or ℙ_k above c₁.
pub fn locus_c2(locus: Locus, k: u64, c1: &Rational) -> Rational {
    let k2 = Rational::from_integer(BigInt::from(k) * BigInt::from(k));
    let k4 = &k2 * &k2;
    match locus {
        Locus::Line => (int(-9) - c1 * int(24) - c1 * &k2 * int(128) + &k2 * int(160) - k4 * int(256)) / int(16),
        Locus::Parabola => int(1) - c1 * int(4) + c1 * c1 + c1 * &k2 * int(16) - k2 * int(20) + k4 * int(64),
    }
}

/// c₁ at which the exponent relation on a locus switches branch.
pub fn pivot(locus: Locus, k: u64) -> Rational {
    let k2 = int((k * k) as i64);
    match locus {
        Locus::Line => rat(5, 4) - k2 * int(4),
        Locus::Parabola => rat(5, 4) - k2 * int(8),
    }
}

/// Quadratic a K² + b K + c in K = k² whose roots give the memberships.
fn membership_quadratic(locus: Locus, c1: &Rational, c2: &Rational) -> [Rational; 3] {
    match locus {
        Locus::Line => [int(256), c1 * int(128) - int(160), c2 * int(16) + int(9) + c1 * int(24)],
        Locus::Parabola => [int(64), c1 * int(16) - int(20), int(1) - c1 * int(4) + c1 * c1 - c2],
    }
}

fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// All k ≥ 0 with (c₁, c₂) on the locus; exact, no bound on k needed.
pub fn memberships(locus: Locus, c1: &Rational, c2: &Rational) -> Vec<u64> {
    let [a, b, c] = membership_quadratic(locus, c1, c2);
    let Some(s) = exact_sqrt(&(&b * &b - &a * &c * int(4))) else {
        return Vec::new();
    };
    let mut ks: Vec<u64> = [(-&b - &s) / (&a * int(2)), (-&b + &s) / (&a * int(2))]
        .iter()
        .filter(|big_k| big_k.is_integer() && !big_k.is_negative())
        .filter_map(|big_k| {
            let v = big_k.to_integer();
            let k = v.sqrt();
            (&k * &k == v).then(|| k.to_u64()).flatten()
        })
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub locus: Locus,
    pub k: u64,
    /// Exponent relation holding at this point, by the sign of c₁ − pivot.
    pub branch: String,
}

/// Side of the pivot that decides the exponent relation. On ℙ₀ with
/// c₁ > 5/4 the exponents are complex and the closed formulas give
/// α₁ = α₂, α₃ = α₄, the relation of the lower side.
fn side(locus: Locus, k: u64, c1: &Rational) -> Ordering {
    match (locus, k, c1.cmp(&pivot(locus, k))) {
        (Locus::Parabola, 0, Ordering::Greater) => Ordering::Less,
        (_, _, o) => o,
    }
}

fn branch(locus: Locus, k: u64, c1: &Rational) -> String {
    let v = if k == 0 { "0".to_string() } else { format!("-{k}") };
    match (locus, side(locus, k, c1)) {
        (Locus::Line, Ordering::Greater) => format!("(α1-α4)/4 = {v}"),
        (Locus::Line, Ordering::Equal) => format!("α1 = α2, α3 = α4, (α1-α4)/4 = {v}"),
        (Locus::Line, Ordering::Less) => format!("(α2-α3)/4 = {v}"),
        (Locus::Parabola, Ordering::Greater) => format!("(α1-α3)/4 = (α2-α4)/4 = {v}"),
        (Locus::Parabola, Ordering::Equal) => format!("α2 = α3, (α1-α3)/4 = (α2-α4)/4 = {v}"),
        (Locus::Parabola, Ordering::Less) => format!("(α1-α2)/4 = (α3-α4)/4 = {v}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResonanceClassification {
    pub line_memberships: Vec<u64>,
    pub parabola_memberships: Vec<u64>,
    pub branches: Vec<Membership>,
}

pub fn classify_resonance(c1: &Rational, c2: &Rational) -> ResonanceClassification {
    let lines = memberships(Locus::Line, c1, c2);
    let parabolas = memberships(Locus::Parabola, c1, c2);
    let branches = lines
        .iter()
        .map(|&k| (Locus::Line, k))
        .chain(parabolas.iter().map(|&k| (Locus::Parabola, k)))
        .map(|(locus, k)| Membership { locus, k, branch: branch(locus, k, c1) })
        .collect();
    ResonanceClassification { line_memberships: lines, parabola_memberships: parabolas, branches }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolutionKind {
    SeriesF03,
    MeijerG20,
    MeijerG30,
    MeijerG40,
}

/// One member of a fundamental system.
///
/// SeriesF03: r^{α_j} ₀F₃(1 + (α_j − α_i)/4 for i in `order` | z).
/// Meijer G: parameters α_i/4 for i in `order`, in that sequence.
/// z = argument_sign · λ r⁴/256.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionDescriptor {
    pub kind: SolutionKind,
    /// 1-based index of the leading exponent.
    pub exponent_index: usize,
    pub exponent: Complex64,
    /// 1-based exponent indices defining the parameters.
    pub order: Vec<usize>,
    pub parameters: Vec<Complex64>,
    pub argument_sign: i8,
}

impl SolutionDescriptor {
    fn series(j: usize, alpha: &[Complex64; 4]) -> Self {
        let order: Vec<usize> = (1..=4).filter(|&i| i != j).collect();
        let parameters = order.iter().map(|&i| 1.0 + (alpha[j - 1] - alpha[i - 1]) / 4.0).collect();
        Self { kind: SolutionKind::SeriesF03, exponent_index: j, exponent: alpha[j - 1], order, parameters, argument_sign: 1 }
    }

    fn meijer(kind: SolutionKind, order: [usize; 4], alpha: &[Complex64; 4], argument_sign: i8) -> Self {
        Self {
            kind,
            exponent_index: order[0],
            exponent: alpha[order[0] - 1],
            order: order.to_vec(),
            parameters: order.iter().map(|&i| alpha[i - 1] / 4.0).collect(),
            argument_sign,
        }
    }

    pub fn argument(&self, lambda: Complex64, r: f64) -> Complex64 {
        lambda * r.powi(4) / 256.0 * f64::from(self.argument_sign)
    }
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    Generic,
    A3a_upper,
    A3a_lower,
    A3b_upper,
    A3b_lower,
    A3c,
    A3d,
    /// Membership pattern without a displayed basis (e.g. two parabolas, no line).
    NotCovered,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisSelection {
    pub case_tag: CaseTag,
    pub classification: ResonanceClassification,
    pub exponents: [Complex64; 4],
    pub lambda: Complex64,
    /// Empty when the case is not covered.
    pub solutions: Vec<SolutionDescriptor>,
}

pub fn case_tag(c1: &Rational, cls: &ResonanceClassification) -> CaseTag {
    let (lines, parabolas) = (&cls.line_memberships, &cls.parabola_memberships);
    match (lines.len(), parabolas.len()) {
        (0, 0) => CaseTag::Generic,
        (1, 0) if side(Locus::Line, lines[0], c1) == Ordering::Greater => CaseTag::A3a_upper,
        (1, 0) => CaseTag::A3a_lower,
        (0, 1) if side(Locus::Parabola, parabolas[0], c1) == Ordering::Greater => CaseTag::A3b_upper,
        (0, 1) => CaseTag::A3b_lower,
        (2, 0) => CaseTag::A3c,
        (l, p) if l >= 1 && p >= 1 => CaseTag::A3d,
        _ => CaseTag::NotCovered,
    }
}

/// Fundamental system for τ₂(c₁, c₂)y = λy.
pub fn select_fundamental_system(c1: &Rational, c2: &Rational, lambda: Complex64) -> BasisSelection {
    use SolutionKind::*;
    let classification = classify_resonance(c1, c2);
    let tag = case_tag(c1, &classification);
    let a = quartic_roots_closed_form_f64(&EulerParams::new(c1.clone(), c2.clone()));
    let f = |j| SolutionDescriptor::series(j, &a);
    let g = |kind, order, sign| SolutionDescriptor::meijer(kind, order, &a, sign);
    let solutions = match tag {
        CaseTag::Generic => vec![f(1), f(2), f(3), f(4)],
        CaseTag::A3a_upper => vec![g(MeijerG20, [1, 4, 2, 3], 1), f(2), f(3), f(4)],
        CaseTag::A3a_lower => vec![f(1), g(MeijerG20, [2, 3, 1, 4], 1), f(3), f(4)],
        CaseTag::A3b_upper => vec![g(MeijerG20, [1, 3, 2, 4], 1), g(MeijerG20, [2, 4, 1, 3], 1), f(3), f(4)],
        CaseTag::A3b_lower => vec![g(MeijerG20, [1, 2, 3, 4], 1), f(2), g(MeijerG20, [3, 4, 1, 2], 1), f(4)],
        CaseTag::A3c => vec![g(MeijerG20, [1, 4, 2, 3], 1), g(MeijerG20, [2, 3, 1, 4], 1), f(3), f(4)],
        CaseTag::A3d => vec![
            g(MeijerG40, [1, 2, 3, 4], 1),
            g(MeijerG30, [2, 3, 4, 1], -1),
            g(MeijerG20, [3, 4, 1, 2], 1),
            f(4),
        ],
        CaseTag::NotCovered => Vec::new(),
    };
    BasisSelection { case_tag: tag, classification, exponents: a, lambda, solutions }
}

/// A truncated ₀F₃ sum with its certified tail bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
    pub tail_bound: f64,
}

const RESONANCE_GUARD: f64 = 1e-9;

fn check_parameters(p: &[Complex64; 3]) -> Result<()> {
    for q in p {
        let k = q.re.round();
        if k <= 0.0 && (q - Complex64::new(k, 0.0)).norm() < RESONANCE_GUARD {
            return Err(Error::ResonantParameter(format!("{q}")));
        }
    }
    Ok(())
}

/// Σ z^k / ((p₁)_k (p₂)_k (p₃)_k k!) to absolute tail ≤ tol.
///
/// For K with Re p_i + K > 0, every later term ratio is at most
/// ρ_K = |z| / (∏(Re p_i + K)(K + 1)), so the tail after term K is at
/// most |t_K| ρ_K / (1 − ρ_K).
pub fn eval_0f3(p: [Complex64; 3], z: Complex64, tol: f64) -> Result<Complex64> {
    eval_0f3_with(p, z, tol, 1_000_000).map(|s| s.value)
}

pub fn eval_0f3_with(p: [Complex64; 3], z: Complex64, tol: f64, cap: usize) -> Result<SeriesValue> {
    check_parameters(&p)?;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..cap {
        let kf = k as f64;
        if p.iter().all(|q| q.re + kf > 0.0) {
            let rho = z.norm() / (p.iter().map(|q| q.re + kf).product::<f64>() * (kf + 1.0));
            if rho < 1.0 {
                let tail = term.norm() * rho / (1.0 - rho);
                if tail <= tol {
                    return Ok(SeriesValue { value: sum, terms: k + 1, tail_bound: tail });
                }
            }
        }
        term *= z / ((p[0] + kf) * (p[1] + kf) * (p[2] + kf) * (kf + 1.0));
        sum += term;
    }
    Err(Error::SeriesTermCap(cap))
}

/// D₂(c₁, c₂; s) for complex s.
fn d2(c1: f64, c2: f64, s: Complex64) -> Complex64 {
    s * (s - 1.0) * (s - 2.0) * (s - 3.0) + c1 * (s * (s - 1.0) + (s - 2.0) * (s - 3.0)) + c2
}

/// |τ₂ y − λ y| at r for a series member, differentiating r^{α+4k} exactly:
/// τ₂ r^s = D₂(s) r^{s−4}. The series is truncated to tail ≤ tol.
pub fn ode_residual(
    sol: &SolutionDescriptor,
    c1: &Rational,
    c2: &Rational,
    lambda: Complex64,
    r: f64,
    tol: f64,
) -> Result<f64> {
    if sol.kind != SolutionKind::SeriesF03 {
        return Err(Error::UnsupportedSolutionKind(format!("{:?}", sol.kind)));
    }
    if r <= 0.0 {
        return Err(Error::InvalidSpec("r must be positive".into()));
    }
    let p = [sol.parameters[0], sol.parameters[1], sol.parameters[2]];
    let z = sol.argument(lambda, r);
    let terms = eval_0f3_with(p, z, tol, 1_000_000)?.terms;
    let (c1, c2) = (to_f64(c1), to_f64(c2));
    let mut coeff = Complex64::new(1.0, 0.0);
    let scale = lambda * f64::from(sol.argument_sign) / 256.0;
    let mut residual = Complex64::new(0.0, 0.0);
    for k in 0..terms {
        let kf = k as f64;
        let s = sol.exponent + 4.0 * kf;
        let rs = Complex64::new(r, 0.0).powc(s);
        residual += coeff * (d2(c1, c2, s) * rs / r.powi(4) - lambda * rs);
        coeff *= scale / ((p[0] + kf) * (p[1] + kf) * (p[2] + kf) * (kf + 1.0));
    }
    Ok(residual.norm())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub h: u64,
    pub k: u64,
    pub holds: bool,
}

/// Exact check of the tangency and intersection identities.
pub fn resonance_geometry_table(h_max: u64, k_max: u64) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let c2_as_poly = |locus, k| {
        // c₂ = q₀ + q₁c₁ + q₂c₁²
        let q0 = locus_c2(locus, k, &int(0));
        let q1v = locus_c2(locus, k, &int(1));
        let qm = locus_c2(locus, k, &int(-1));
        let q2 = (&q1v + &qm) / int(2) - &q0;
        let q1 = (&q1v - &qm) / int(2);
        [q0, q1, q2]
    };
    let intersection = |(la, ka): (Locus, u64), (lb, kb): (Locus, u64)| {
        let a = c2_as_poly(la, ka);
        let b = c2_as_poly(lb, kb);
        [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
    };
    for k in 0..=k_max {
        for (a, b, name) in [
            ((Locus::Line, k), (Locus::Parabola, 0), "line k tangent to parabola 0"),
            ((Locus::Parabola, k), (Locus::Line, 0), "parabola k tangent to line 0"),
        ] {
            let [c, b1, a2] = intersection(a, b);
            let holds = !a2.is_zero() && (&b1 * &b1 - &a2 * &c * int(4)).is_zero();
            out.push(IdentityCheck { identity: name.into(), h: 0, k, holds });
        }
    }
    for h in 0..=h_max {
        for k in 0..=k_max {
            let hk2 = int((h * h + k * k) as i64);
            if h != k {
                for (locus, want) in [
                    (Locus::Line, rat(5, 4) - &hk2 * int(2)),
                    (Locus::Parabola, rat(5, 4) - &hk2 * int(4)),
                ] {
                    let [c, b1, a2] = intersection((locus, h), (locus, k));
                    let holds = a2.is_zero() && !b1.is_zero() && -c / b1 == want;
                    let name = match locus {
                        Locus::Line => "line h ∩ line k: c1 = 5/4 - 2h² - 2k²",
                        Locus::Parabola => "parabola h ∩ parabola k: c1 = 5/4 - 4h² - 4k²",
                    };
                    out.push(IdentityCheck { identity: name.into(), h, k, holds });
                }
            }
            let [c, b1, a2] = intersection((Locus::Line, h), (Locus::Parabola, k));
            let base = rat(5, 4) - int((h * h) as i64) * int(4) - int((k * k) as i64) * int(8);
            let d = int((8 * h * k) as i64);
            let holds = [&base + &d, &base - &d].iter().all(|x| (&c + &b1 * x + &a2 * x * x).is_zero());
            out.push(IdentityCheck {
                identity: "line h ∩ parabola k: c1 = 5/4 - 4h² ± 8hk - 8k²".into(),
                h,
                k,
                holds,
            });
        }
    }
    out
}

/// One row of the locus/shading data set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusPoint {
    /// "line", "parabola" or "shade".
    pub locus: &'static str,
    pub k: Option<u64>,
    pub c1: f64,
    pub c2: f64,
    pub esa: bool,
}

/// Lines k ≤ lines_max, parabolas k ≤ parabolas_max sampled over c₁ in
/// [lo, hi], and a grid of ESA shading samples over the same c₁ range.
pub fn locus_plot_data(
    lines_max: u64,
    parabolas_max: u64,
    c1_range: (Rational, Rational),
    c2_range: (Rational, Rational),
    samples: u32,
) -> Vec<LocusPoint> {
    let step = |range: &(Rational, Rational), i: u32| {
        &range.0 + (&range.1 - &range.0) * rat(i as i64, samples.max(1) as i64)
    };
    let mut out = Vec::new();
    for (locus, kmax, name) in [(Locus::Line, lines_max, "line"), (Locus::Parabola, parabolas_max, "parabola")] {
        for k in 0..=kmax {
            for i in 0..=samples {
                let c1 = step(&c1_range, i);
                let c2 = locus_c2(locus, k, &c1);
                out.push(LocusPoint { locus: name, k: Some(k), c1: to_f64(&c1), c2: to_f64(&c2), esa: quartic_esa_closed_form(&c1, &c2) });
            }
        }
    }
    for i in 0..=samples {
        for j in 0..=samples {
            let (c1, c2) = (step(&c1_range, i), step(&c2_range, j));
            out.push(LocusPoint { locus: "shade", k: None, c1: to_f64(&c1), c2: to_f64(&c2), esa: quartic_esa_closed_form(&c1, &c2) });
        }
    }
    out
}
