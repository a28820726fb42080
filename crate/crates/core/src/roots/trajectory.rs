//! Root trajectories over a grid of couplings, for plotting.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use super::{certified_roots_with, OrderedRootSet};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exact::rational::{to_f64, Rational};
use crate::exact::Poly;
use crate::indicial::{build_indicial, euler_quartic, quartic_roots_closed_form_f64, EulerParams, IndicialSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Labeling {
    /// Continue labels from the previous grid point by proximity in ℂ.
    #[default]
    NearestNeighbor,
    /// Label j is the j-th root by real part at every grid point.
    SortedByRealPart,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub c: f64,
    /// 1-based label.
    pub j: usize,
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub ambiguous: bool,
}

/// Trajectories of the indicial roots of `(m, n, ℓ)` over `grid`.
pub fn root_trajectories(
    m: u32,
    n: u32,
    l: u32,
    grid: &[Rational],
    labeling: Labeling,
    config: &Config,
) -> Result<Vec<TrajectoryRow>> {
    let polys: Vec<(Rational, Poly)> = grid
        .iter()
        .map(|c| Ok((c.clone(), build_indicial(&IndicialSpec::new(m, n, l, c.clone())?))))
        .collect::<Result<_>>()?;
    trajectories_of(&polys, labeling, config)
}

/// Trajectories of an arbitrary polynomial family sampled at increasing
/// parameters.
pub fn trajectories_of(
    polys: &[(Rational, Poly)],
    labeling: Labeling,
    config: &Config,
) -> Result<Vec<TrajectoryRow>> {
    if polys.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::GridNotIncreasing);
    }
    let sets: Vec<OrderedRootSet> = polys
        .par_iter()
        .map(|(_, p)| certified_roots_with(p, config))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut prev: Option<Vec<(f64, f64)>> = None;
    for ((c, _), set) in polys.iter().zip(&sets) {
        let pts: Vec<(f64, f64, f64)> = set
            .expanded()
            .iter()
            .map(|r| (r.re_f64(), r.im_f64(), r.radius_f64()))
            .collect();
        let (order, ambiguous) = match (&prev, labeling) {
            (Some(p), Labeling::NearestNeighbor) => match_nearest(p, &pts),
            _ => ((0..pts.len()).collect(), vec![false; pts.len()]),
        };
        let cf = to_f64(c);
        let mut labeled = Vec::with_capacity(pts.len());
        for (j, &k) in order.iter().enumerate() {
            let (re, im, radius) = pts[k];
            rows.push(TrajectoryRow { c: cf, j: j + 1, re, im, radius, ambiguous: ambiguous[j] });
            labeled.push((re, im));
        }
        prev = Some(labeled);
    }
    Ok(rows)
}

/// Trajectories of α₁..α₄ of D₂(c₁, t; ·) over t in `grid`, labeled by
/// the closed formulas; each radius is that of the certified disk
/// nearest the closed-form value.
pub fn euler_trajectories(c1: &Rational, grid: &[Rational], config: &Config) -> Result<Vec<TrajectoryRow>> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::GridNotIncreasing);
    }
    let per_point: Vec<Vec<TrajectoryRow>> = grid
        .par_iter()
        .map(|t| {
            let params = EulerParams::new(c1.clone(), t.clone());
            let set = certified_roots_with(&euler_quartic(&params), config)?;
            let disks: Vec<(f64, f64, f64)> =
                set.roots.iter().map(|r| (r.re_f64(), r.im_f64(), r.radius_f64())).collect();
            let tf = to_f64(t);
            Ok(quartic_roots_closed_form_f64(&params)
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    let nearest = disks
                        .iter()
                        .min_by(|x, y| (x.0 - a.re).hypot(x.1 - a.im).total_cmp(&(y.0 - a.re).hypot(y.1 - a.im)))
                        .expect("quartic has roots");
                    let d = (nearest.0 - a.re).hypot(nearest.1 - a.im);
                    TrajectoryRow { c: tf, j: j + 1, re: a.re, im: a.im, radius: nearest.2 + d, ambiguous: false }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// Greedy global matching by distance; `order[label] = index of current
/// root`. A label is ambiguous when a second candidate lies within twice
/// the matched distance.
fn match_nearest(prev: &[(f64, f64)], cur: &[(f64, f64, f64)]) -> (Vec<usize>, Vec<bool>) {
    let n = prev.len();
    let dist = |a: usize, b: usize| (prev[a].0 - cur[b].0).hypot(prev[a].1 - cur[b].1);
    let mut pairs: Vec<(f64, usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (dist(a, b), a, b)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut order = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for (_, a, b) in pairs {
        if order[a] == usize::MAX && !taken[b] {
            order[a] = b;
            taken[b] = true;
        }
    }
    let ambiguous = (0..n)
        .map(|a| {
            let d = dist(a, order[a]);
            (0..n).any(|b| b != order[a] && dist(a, b) <= 2.0 * d + cur[b].2 + cur[order[a]].2)
        })
        .collect();
    (order, ambiguous)
}

/// CSV with columns `c,j,re,im,radius,ambiguous_flag`, plus any extra
/// columns given as `(header, per-row values)`.
pub fn write_csv<W: Write>(rows: &[TrajectoryRow], extra: &[(&str, Vec<String>)], mut out: W) -> io::Result<()> {
    write!(out, "c,j,re,im,radius,ambiguous_flag")?;
    for (h, _) in extra {
        write!(out, ",{h}")?;
    }
    writeln!(out)?;
    for (i, r) in rows.iter().enumerate() {
        write!(out, "{},{},{},{},{:e},{}", r.c, r.j, r.re, r.im, r.radius, u8::from(r.ambiguous))?;
        for (_, v) in extra {
            write!(out, ",{}", v[i])?;
        }
        writeln!(out)?;
    }
    Ok(())
}
