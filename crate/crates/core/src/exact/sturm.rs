//! Sturm sequences and exact real-root isolation.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Sturm chain of a square-free polynomial. Remainders are replaced by
/// their primitive parts, which only rescales by positive constants.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let r = (-&seq[n - 2].rem(&seq[n - 1])).primitive();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        Self { seq }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.seq
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        count_variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    /// Sign variations at ±∞.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.seq.iter().map(|p| {
            let lc = p.leading().map_or(Ordering::Equal, |c| c.cmp(&Rational::zero()));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if positive || !odd {
                lc
            } else {
                lc.reverse()
            }
        }))
    }

    /// Distinct roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }

    /// Distinct roots in the closed interval `[lo, hi]`.
    pub fn count_closed(&self, lo: &Rational, hi: &Rational) -> usize {
        let at_lo = usize::from(self.seq[0].eval(lo).is_zero());
        if lo == hi {
            return at_lo;
        }
        at_lo + self.count(lo, hi)
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Closed isolating interval; `lo == hi` means the root is exactly `lo`.
/// When `lo < hi` neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

/// Isolating intervals for the distinct real roots of a square-free `p`,
/// sorted increasingly.
pub fn isolate_square_free(p: &Poly) -> Vec<IsolatingInterval> {
    let chain = SturmChain::new(p);
    let b = p.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b.clone(), chain.count(&-b.clone(), &b))];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            if p.eval(&hi).is_zero() {
                out.push(IsolatingInterval { lo: hi.clone(), hi });
                continue;
            }
            if !p.eval(&lo).is_zero() {
                out.push(IsolatingInterval { lo, hi });
                continue;
            }
        }
        let mid = (&lo + &hi) / int(2);
        let left = chain.count(&lo, &mid);
        stack.push((mid.clone(), hi, n - left));
        stack.push((lo, mid, left));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// One real root with its multiplicity in the source polynomial, together
/// with the square-free factor it is a simple root of.
#[derive(Clone, Debug)]
pub struct RealRoot {
    pub interval: IsolatingInterval,
    pub multiplicity: usize,
    pub factor: Poly,
}

/// All real roots of `p`, disjoint isolating intervals sorted increasingly.
pub fn sturm_isolate(p: &Poly) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<RealRoot> = Vec::new();
    for (g, mult) in p.square_free_decomposition() {
        for interval in isolate_square_free(&g) {
            roots.push(RealRoot { interval, multiplicity: mult, factor: g.clone() });
        }
    }
    // roots of distinct factors are distinct; shrink until pairwise disjoint
    loop {
        roots.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
        let mut clash = None;
        for i in 1..roots.len() {
            if roots[i].interval.lo <= roots[i - 1].interval.hi {
                clash = Some(i);
                break;
            }
        }
        let Some(i) = clash else { break };
        for k in [i - 1, i] {
            let r = &mut roots[k];
            bisect_once(&r.factor, &mut r.interval);
        }
    }
    Ok(roots)
}

/// Halve an isolating interval of a square-free polynomial.
pub fn bisect_once(p: &Poly, iv: &mut IsolatingInterval) {
    if iv.lo == iv.hi {
        return;
    }
    let mid = (&iv.lo + &iv.hi) / int(2);
    let sm = p.sign_at(&mid);
    if sm == Ordering::Equal {
        iv.lo = mid.clone();
        iv.hi = mid;
    } else if sm == p.sign_at(&iv.lo) {
        iv.lo = mid;
    } else {
        iv.hi = mid;
    }
}

/// Number of real roots of `p` counted with multiplicity.
pub fn real_root_count_with_multiplicity(p: &Poly) -> usize {
    p.square_free_decomposition()
        .iter()
        .map(|(g, m)| SturmChain::new(g).count_all() * m)
        .sum()
}

pub fn width(iv: &IsolatingInterval) -> Rational {
    (&iv.hi - &iv.lo).abs()
}
