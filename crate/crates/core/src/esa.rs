//! ESA decisions, thresholds and regions in the coupling c.
//!
//! Criterion: the radial operator of order 2m is ESA iff exactly m
//! indicial roots satisfy Re α ≤ −1/2, i.e. left + axis = m.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exact::rational::{int, rat, simplest_between, to_exact_string, Rational};
use crate::exact::{AlgebraicReal, Poly};
use crate::indicial::{build_indicial, effective_dim, euler_quartic, EulerParams, IndicialSpec};
use crate::roots::OrderedRootSet;
use crate::stability::{axis_roots_exact, halfplane_count_with, hurwitz_assemble, hurwitz_det, HalfPlaneCount};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "ESA")]
    Esa,
    #[serde(rename = "NotESA")]
    NotEsa,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Esa => "ESA",
            Verdict::NotEsa => "NotESA",
        })
    }
}

/// Enclosure of one root, rendered for reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    pub re: String,
    pub im: String,
    pub radius: String,
    pub multiplicity: usize,
}

/// Exact artifacts supporting a verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    /// Determinant of the Hurwitz matrix of D(c; z − 1/2).
    pub hurwitz_det: String,
    /// Values t with D(c; −1/2 + it) = 0.
    pub axis_roots: Vec<AlgebraicReal>,
    pub precision_bits: u32,
    pub roots: Vec<RootReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EsaVerdict {
    pub spec: IndicialSpec,
    pub verdict: Verdict,
    pub count: HalfPlaneCount,
    pub certificate: Certificate,
}

fn root_reports(set: &OrderedRootSet) -> Vec<RootReport> {
    use crate::exact::rational::format_significant;
    set.roots
        .iter()
        .map(|r| RootReport {
            re: format_significant(&r.re, 20),
            im: format_significant(&r.im, 20),
            radius: format_significant(&r.radius, 3),
            multiplicity: r.multiplicity,
        })
        .collect()
}

/// Decide the criterion for an indicial polynomial of degree 2m.
pub fn decide_polynomial(p: &Poly, config: &Config) -> Result<(Verdict, HalfPlaneCount, Certificate)> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let m = deg / 2;
    let (count, set) = halfplane_count_with(p, config)?;
    let verdict = if count.left + count.axis == m { Verdict::Esa } else { Verdict::NotEsa };
    let certificate = Certificate {
        hurwitz_det: to_exact_string(&hurwitz_det(&p.shift(&rat(-1, 2)))),
        axis_roots: axis_roots_exact(p),
        precision_bits: set.precision_bits,
        roots: root_reports(&set),
    };
    Ok((verdict, count, certificate))
}

pub fn esa_decide_radial(spec: &IndicialSpec) -> Result<EsaVerdict> {
    esa_decide_radial_with(spec, &Config::default())
}

pub fn esa_decide_radial_with(spec: &IndicialSpec, config: &Config) -> Result<EsaVerdict> {
    let (verdict, count, certificate) = decide_polynomial(&build_indicial(spec), config)?;
    Ok(EsaVerdict { spec: spec.clone(), verdict, count, certificate })
}

/// Decide for the fourth-order Euler expression with raw (c₁, c₂).
pub fn esa_decide_euler(p: &EulerParams, config: &Config) -> Result<(Verdict, HalfPlaneCount)> {
    decide_polynomial(&euler_quartic(p), config).map(|(v, c, _)| (v, c))
}

/// Interval endpoint; finite endpoints are closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    NegInf,
    Finite(AlgebraicReal),
    PosInf,
}

impl Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp_value(b),
        }
    }

    pub fn finite(&self) -> Option<&AlgebraicReal> {
        match self {
            Endpoint::Finite(x) => Some(x),
            _ => None,
        }
    }

    fn contains_rational(&self, q: &Rational, below: bool) -> bool {
        match self {
            Endpoint::NegInf => below,
            Endpoint::PosInf => !below,
            Endpoint::Finite(x) => {
                let o = x.cmp_rational(q);
                if below {
                    o != Ordering::Greater
                } else {
                    o != Ordering::Less
                }
            }
        }
    }

    fn render(&self, digits: u32, left: bool) -> String {
        match (self, left) {
            (Endpoint::NegInf, _) => "(-∞".into(),
            (Endpoint::PosInf, _) => "∞)".into(),
            (Endpoint::Finite(x), true) => format!("[{}", x.to_decimal(digits)),
            (Endpoint::Finite(x), false) => format!("{}]", x.to_decimal(digits)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Piece {
    pub fn contains(&self, c: &Rational) -> bool {
        self.lo.contains_rational(c, true) && self.hi.contains_rational(c, false)
    }

    pub fn contains_value(&self, x: &AlgebraicReal) -> bool {
        let x = Endpoint::Finite(x.clone());
        self.lo.cmp(&x) != Ordering::Greater && x.cmp(&self.hi) != Ordering::Greater
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    /// A single radial operator, decided exactly.
    Radial { l: u32 },
    /// Intersection over 0 ≤ ℓ ≤ l_max; `closed_form` reports agreement
    /// with the closed-form region when one exists.
    UpToL { l_max: u32, closed_form: Option<bool> },
    /// Produced by a closed-form formula.
    ClosedForm,
}

/// Ordered union of disjoint closed intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EsaRegion {
    pub pieces: Vec<Piece>,
    /// Real roots of det H(c), increasing.
    pub boundary_candidates: Vec<AlgebraicReal>,
    /// Irrational candidates with non-ESA on both sides, left unclassified.
    pub isolated_candidates: Vec<AlgebraicReal>,
    pub certification: Certification,
}

impl EsaRegion {
    pub fn contains(&self, c: &Rational) -> bool {
        self.pieces.iter().any(|p| p.contains(c))
    }

    /// Same pieces with equal endpoints.
    pub fn same_pieces(&self, other: &EsaRegion) -> bool {
        self.pieces.len() == other.pieces.len()
            && self
                .pieces
                .iter()
                .zip(&other.pieces)
                .all(|(a, b)| a.lo.cmp(&b.lo) == Ordering::Equal && a.hi.cmp(&b.hi) == Ordering::Equal)
    }

    /// E.g. "[0, 1.0436e10] ∪ [1.8324e10, ∞)".
    pub fn render(&self, digits: u32) -> String {
        if self.pieces.is_empty() {
            return "∅".into();
        }
        self.pieces
            .iter()
            .map(|p| {
                if p.lo.cmp(&p.hi) == Ordering::Equal {
                    let x = p.lo.finite().unwrap().to_decimal(digits);
                    format!("{{{x}}}")
                } else {
                    format!("{}, {}", p.lo.render(digits, true), p.hi.render(digits, false))
                }
            })
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }

    fn closed_form(pieces: Vec<Piece>) -> Self {
        Self {
            pieces,
            boundary_candidates: Vec::new(),
            isolated_candidates: Vec::new(),
            certification: Certification::ClosedForm,
        }
    }
}

fn separate(a: &mut AlgebraicReal, b: &mut AlgebraicReal) {
    while a.hi() >= b.lo() {
        if a.as_rational().is_some() && b.as_rational().is_some() {
            break;
        }
        a.bisect();
        b.bisect();
    }
}

/// ESA region of the single radial operator (m, n, ℓ).
pub fn esa_region_radial(m: u32, n: u32, l: u32) -> Result<EsaRegion> {
    esa_region_radial_with(m, n, l, &Config::default())
}

pub fn esa_region_radial_with(m: u32, n: u32, l: u32, config: &Config) -> Result<EsaRegion> {
    IndicialSpec::new(m, n, l, Rational::zero())?;
    let h = hurwitz_assemble(m, n, l);
    let mut cands = AlgebraicReal::real_roots(&h.det_in_c);
    for i in 1..cands.len() {
        let (a, b) = cands.split_at_mut(i);
        separate(&mut a[i - 1], &mut b[0]);
    }
    // one sample per open gap: gap k lies left of candidate k
    let mut samples = Vec::with_capacity(cands.len() + 1);
    if cands.is_empty() {
        samples.push(Rational::zero());
    } else {
        samples.push(cands[0].lo().floor() - int(1));
        for w in cands.windows(2) {
            samples.push(simplest_between(w[0].hi(), w[1].lo()));
        }
        samples.push(cands.last().unwrap().hi().ceil() + int(1));
    }
    let esa: Vec<bool> = samples
        .par_iter()
        .map(|c| {
            let spec = IndicialSpec::new(m, n, l, c.clone())?;
            decide_polynomial(&build_indicial(&spec), config).map(|(v, _, _)| v == Verdict::Esa)
        })
        .collect::<Result<_>>()?;
    let mut pieces: Vec<Piece> = Vec::new();
    let mut isolated = Vec::new();
    for (k, &ok) in esa.iter().enumerate() {
        let lo = if k == 0 { Endpoint::NegInf } else { Endpoint::Finite(cands[k - 1].clone()) };
        let hi = if k == cands.len() { Endpoint::PosInf } else { Endpoint::Finite(cands[k].clone()) };
        if ok {
            match pieces.last_mut() {
                // the shared candidate joins two ESA gaps
                Some(last) if k > 0 && esa[k - 1] => last.hi = hi,
                _ => pieces.push(Piece { lo, hi }),
            }
        } else if k > 0 && !esa[k - 1] {
            let x = &cands[k - 1];
            match x.as_rational() {
                // a rational candidate is decided exactly at the point itself
                Some(q) => {
                    let spec = IndicialSpec::new(m, n, l, q.clone())?;
                    if decide_polynomial(&build_indicial(&spec), config)?.0 == Verdict::Esa {
                        pieces.push(Piece { lo: Endpoint::Finite(x.clone()), hi: Endpoint::Finite(x.clone()) });
                    }
                }
                None => isolated.push(x.clone()),
            }
        }
    }
    Ok(EsaRegion {
        pieces,
        boundary_candidates: cands,
        isolated_candidates: isolated,
        certification: Certification::Radial { l },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThresholdSource {
    Engine,
    ClosedForm,
}

/// γ_{m,n,ℓ}: the largest boundary point of the radial ESA region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub value: AlgebraicReal,
    pub kind: ThresholdKind,
    pub source: ThresholdSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThresholdKind {
    LargestBoundary,
}

pub fn gamma_threshold(m: u32, n: u32, l: u32) -> Result<Threshold> {
    gamma_threshold_with(m, n, l, &Config::default())
}

pub fn gamma_threshold_with(m: u32, n: u32, l: u32, config: &Config) -> Result<Threshold> {
    let region = esa_region_radial_with(m, n, l, config)?;
    threshold_of(&region)
}

fn threshold_of(region: &EsaRegion) -> Result<Threshold> {
    match region.pieces.last() {
        Some(Piece { lo: Endpoint::Finite(x), hi: Endpoint::PosInf }) => {
            Ok(Threshold { value: x.clone(), kind: ThresholdKind::LargestBoundary, source: ThresholdSource::Engine })
        }
        _ => Err(Error::InvalidSpec("ESA region has no largest finite boundary".into())),
    }
}

/// Intersection of two regions (pieces only).
pub fn intersect(a: &[Piece], b: &[Piece]) -> Vec<Piece> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let lo = if a[i].lo.cmp(&b[j].lo) == Ordering::Greater { &a[i].lo } else { &b[j].lo };
        let hi = if a[i].hi.cmp(&b[j].hi) == Ordering::Less { &a[i].hi } else { &b[j].hi };
        if lo.cmp(hi) != Ordering::Greater {
            out.push(Piece { lo: lo.clone(), hi: hi.clone() });
        }
        if a[i].hi.cmp(&b[j].hi) == Ordering::Less {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Region of the full operator, certified for 0 ≤ ℓ ≤ l_max and checked
/// against a closed form where one exists.
pub fn esa_region_full(m: u32, n: u32, l_max: u32) -> Result<EsaRegion> {
    esa_region_full_with(m, n, l_max, &Config::default())
}

pub fn esa_region_full_with(m: u32, n: u32, l_max: u32, config: &Config) -> Result<EsaRegion> {
    let regions: Vec<EsaRegion> = (0..=l_max)
        .into_par_iter()
        .map(|l| esa_region_radial_with(m, n, l, config))
        .collect::<Result<_>>()?;
    let mut pieces = regions[0].pieces.clone();
    for r in &regions {
        pieces = intersect(&pieces, &r.pieces);
    }
    // an isolated candidate of one ℓ matters only where every ℓ may be ESA
    let undecided = |r: &EsaRegion, x: &AlgebraicReal| {
        r.pieces.iter().any(|p| p.contains_value(x))
            || r.isolated_candidates.iter().any(|y| y.cmp_value(x) == Ordering::Equal)
    };
    let mut isolated: Vec<AlgebraicReal> = Vec::new();
    for x in regions.iter().flat_map(|r| &r.isolated_candidates) {
        if regions.iter().all(|r| undecided(r, x)) && !isolated.iter().any(|y| y.cmp_value(x) == Ordering::Equal) {
            isolated.push(x.clone());
        }
    }
    let mut region = EsaRegion {
        pieces,
        boundary_candidates: regions[0].boundary_candidates.clone(),
        isolated_candidates: isolated,
        certification: Certification::UpToL { l_max, closed_form: None },
    };
    if let Ok(oracle) = oracle_region(m, n) {
        region.certification = Certification::UpToL { l_max, closed_form: Some(region.same_pieces(&oracle)) };
    }
    Ok(region)
}

/// c = 0 decision for every ℓ ≤ l_max.
pub fn power_zero_coupling(m: u32, n: u32, l_max: u32, config: &Config) -> Result<bool> {
    let verdicts: Vec<bool> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let spec = IndicialSpec::new(m, n, l, Rational::zero())?;
            esa_decide_radial_with(&spec, config).map(|v| v.verdict == Verdict::Esa)
        })
        .collect::<Result<_>>()?;
    Ok(verdicts.into_iter().all(|x| x))
}

/// One exploratory row: γ_{m,3,0} against (2m²/π)^{2m}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub m: u32,
    pub gamma: AlgebraicReal,
    pub gamma_approx: f64,
    pub asymptotic: f64,
    /// ln γ / ln((2m²/π)^{2m}); undefined when γ ≤ 1.
    pub log_ratio: Option<f64>,
}

/// Exploratory table for m = 1..=m_max; nothing is asserted.
pub fn conjecture_explore(m_max: u32, config: &Config) -> Result<Vec<ConjectureRow>> {
    (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let gamma = gamma_threshold_with(m, 3, 0, config)?.value;
            let g = gamma.to_f64();
            let mf = m as f64;
            let log_asym = 2.0 * mf * (2.0 * mf * mf / std::f64::consts::PI).ln();
            Ok(ConjectureRow {
                m,
                gamma_approx: g,
                asymptotic: log_asym.exp(),
                log_ratio: (g > 1.0).then(|| g.ln() / log_asym),
                gamma,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Closed forms

/// ESA region of τ₂(c₁, c₂) in closed form: c₂ ≥ 45 + 12c₁ + c₁² for
/// c₁ ≥ −11/4, c₂ ≥ −105/16 − 19c₁/2 otherwise.
pub fn quartic_esa_closed_form(c1: &Rational, c2: &Rational) -> bool {
    c2 >= &quartic_esa_boundary(c1)
}

pub fn quartic_esa_boundary(c1: &Rational) -> Rational {
    if c1 >= &rat(-11, 4) {
        int(45) + c1 * int(12) + c1 * c1
    } else {
        rat(-105, 16) - c1 * rat(19, 2)
    }
}

/// γ_{1,n,ℓ} = −N(N − 4)/4.
pub fn gamma1_closed_form(big_n: i64) -> Rational {
    rat(-big_n * (big_n - 4), 4)
}

/// γ_{2,n,ℓ} with N = n + 2ℓ.
pub fn gamma2_closed_form(big_n: i64) -> Rational {
    if (big_n - 1) * (big_n - 3) <= 11 {
        int(-3 * (big_n + 2) * (big_n - 6))
    } else {
        rat(-(big_n + 4) * big_n * (big_n - 4) * (big_n - 8), 16)
    }
}

/// γ_{3,·} with N = n + 2ℓ: the surd branch for N ≤ 9, the sextic otherwise.
pub fn gamma3_closed_form(big_n: i64) -> AlgebraicReal {
    let n = big_n;
    if n >= 10 {
        return AlgebraicReal::from_rational(rat(-(n + 8) * (n + 4) * n * (n - 4) * (n - 8) * (n - 12), 64));
    }
    // x = (64/27)(A + B√C) is a root of (27x/64 − A)² − B²C
    let a = int(7112 + 504 * n - 126 * n * n);
    let b = int(236 + 12 * n - 3 * n * n);
    let c = int(964 + 60 * n - 15 * n * n);
    let u = Poly::new(vec![-a, rat(27, 64)]);
    let quad = (&u * &u).add_constant(&-(&b * &b * &c));
    let roots = AlgebraicReal::real_roots(&quad);
    if b.is_negative() {
        roots[0].clone()
    } else {
        roots.last().unwrap().clone()
    }
}

/// The quartic displayed for (m, n, ℓ) = (5, 20, 0).
pub fn q5200_display() -> Poly {
    let coeffs = [
        "629847004905001626921946285352115240960000",
        "1045471534388841527438982355353600",
        "429438995162964368031744",
        "-83914629120000",
        "3125",
    ];
    Poly::new(coeffs.iter().map(|s| crate::exact::parse_rational(s).unwrap()).collect())
}

fn ray(x: AlgebraicReal) -> Piece {
    Piece { lo: Endpoint::Finite(x), hi: Endpoint::PosInf }
}

/// Closed-form radial region for (m, n, ℓ) where one is known.
pub fn oracle_radial_region(m: u32, n: u32, l: u32) -> Result<EsaRegion> {
    let big_n = effective_dim(n, l);
    let piece = match m {
        1 => ray(AlgebraicReal::from_rational(gamma1_closed_form(big_n))),
        2 => ray(AlgebraicReal::from_rational(gamma2_closed_form(big_n))),
        3 => ray(gamma3_closed_form(big_n)),
        5 if big_n == 20 => return oracle_region(5, 20),
        _ => return Err(Error::NoClosedForm { m, n }),
    };
    Ok(EsaRegion::closed_form(vec![piece]))
}

/// Closed-form region of the full operator ((−Δ)^m + c|x|^{−2m}).
pub fn oracle_region(m: u32, n: u32) -> Result<EsaRegion> {
    match (m, n) {
        (1..=3, _) => oracle_radial_region(m, n, 0),
        (5, 20) => {
            let roots = AlgebraicReal::real_roots(&q5200_display());
            let [beta, gamma] = [roots[0].clone(), roots[1].clone()];
            Ok(EsaRegion::closed_form(vec![
                Piece {
                    lo: Endpoint::Finite(AlgebraicReal::from_rational(Rational::zero())),
                    hi: Endpoint::Finite(beta),
                },
                ray(gamma),
            ]))
        }
        _ => Err(Error::NoClosedForm { m, n }),
    }
}
