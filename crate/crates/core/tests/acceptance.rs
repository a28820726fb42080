//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `UNATTAINABLE` are implemented as stated and reported
//! honestly; every other failure fails the run.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use euler_esa::esa::{
    esa_decide_euler, esa_region_full, esa_region_radial, gamma2_closed_form, gamma3_closed_form,
    gamma_threshold, power_zero_coupling, quartic_esa_closed_form, quartic_esa_boundary, Endpoint, EsaRegion, Piece,
    Verdict,
};
use euler_esa::exact::rational::{int, parse_rational, rat, Rational};
use euler_esa::exact::sturm::sturm_isolate;
use euler_esa::exact::{polymatrix_det, AlgebraicReal, Poly};
use euler_esa::frobenius::{resonance_geometry_table, select_fundamental_system, ode_residual, SolutionKind};
use euler_esa::indicial::{build_indicial, euler_quartic, EulerParams, IndicialSpec};
use euler_esa::roots::certified_roots;
use euler_esa::stability::{
    disc_q3, disc_q3_closed_form, hurwitz_assemble, hurwitz_det, hurwitz_matrix_in_c, pi_q5_closed_form,
    quartic_classify, signs_q5_20, RealRootClass,
};
use euler_esa::Config;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot pass as stated; see the decisions ledger.
const UNATTAINABLE: &[u32] = &[8];

struct Report {
    pass: bool,
    detail: String,
}

fn report(pass: bool, detail: impl Into<String>) -> Report {
    Report { pass, detail: detail.into() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// p/q in [−bound, bound] with q ≤ 12.
fn random_rational(r: &mut ChaCha8Rng, bound: i64) -> Rational {
    let q: i64 = r.gen_range(1..=12);
    rat(r.gen_range(-bound * q..=bound * q), q)
}

fn timed(limit: Duration, f: impl FnOnce() -> Report) -> Report {
    let t = Instant::now();
    let mut rep = f();
    let e = t.elapsed();
    rep.detail = format!("{}; {:.2?} (limit {:?})", rep.detail, e, limit);
    rep.pass &= e < limit;
    rep
}

const GAMMA2_REFERENCE: [&str; 11] = ["48", "45", "36", "21", "15", "231/16", "0", "-585/16", "-105", "-3465/16", "-384"];

fn criterion_1() -> Report {
    timed(Duration::from_secs(10), || {
        let bad: Vec<u32> = (2..=12u32)
            .filter(|&n| {
                let want = parse_rational(GAMMA2_REFERENCE[(n - 2) as usize]).unwrap();
                gamma_threshold(2, n, 0).unwrap().value.as_rational() != Some(&want)
            })
            .collect();
        report(bad.is_empty(), format!("gamma_(2,n,0) for n = 2..12, mismatches at {bad:?}"))
    })
}

fn criterion_2() -> Report {
    timed(Duration::from_secs(120), || {
        let mut r = rng(2);
        let mut points: Vec<(Rational, Rational)> =
            (0..500).map(|_| (random_rational(&mut r, 20), random_rational(&mut r, 20))).collect();
        for i in 0..50 {
            // both branches: c₁ ≥ −11/4 and c₁ < −11/4
            let c1 = if i % 2 == 0 {
                rat(-11, 4) + random_rational(&mut r, 10).abs()
            } else {
                rat(-11, 4) - random_rational(&mut r, 10).abs() - rat(1, 7)
            };
            let c2 = quartic_esa_boundary(&c1);
            points.push((c1, c2));
        }
        let config = Config::default();
        let bad = points
            .iter()
            .filter(|(c1, c2)| {
                let (v, _) = esa_decide_euler(&EulerParams::new(c1.clone(), c2.clone()), &config).unwrap();
                (v == Verdict::Esa) != quartic_esa_closed_form(c1, c2)
            })
            .count();
        report(bad == 0, format!("{} points, {bad} disagreements", points.len()))
    })
}

fn criterion_3() -> Report {
    let mut r = rng(3);
    let mut bad = 0;
    for _ in 0..100 {
        let c1 = random_rational(&mut r, 20);
        let c2 = random_rational(&mut r, 20);
        let shifted = euler_quartic(&EulerParams::new(c1.clone(), int(0))).shift(&rat(-1, 2));
        let det = polymatrix_det(&hurwitz_matrix_in_c(&shifted)).eval(&c2);
        let want = int(64)
            * (int(45) + &c1 * int(12) + &c1 * &c1 - &c2)
            * (rat(105, 16) + &c1 * rat(19, 2) + &c2);
        let direct = hurwitz_det(&euler_quartic(&EulerParams::new(c1, c2)).shift(&rat(-1, 2)));
        if det != want || direct != want {
            bad += 1;
        }
    }
    report(bad == 0, format!("100 random points, {bad} mismatches"))
}

fn ray_at(region: &EsaRegion, x: &Rational) -> bool {
    matches!(
        region.pieces.as_slice(),
        [Piece { lo: Endpoint::Finite(a), hi: Endpoint::PosInf }] if a.as_rational() == Some(x)
    )
}

fn criterion_4() -> Report {
    let mut bad = Vec::new();
    for n in 2..=20u32 {
        let ni = n as i64;
        let want = if n <= 5 {
            int(3 * (ni + 2) * (6 - ni))
        } else {
            rat(-ni * (ni + 4) * (ni - 4) * (ni - 8), 16)
        };
        if want != gamma2_closed_form(ni) || !ray_at(&esa_region_full(2, n, 50).unwrap(), &want) {
            bad.push(format!("region n={n}"));
        }
        let g0 = gamma_threshold(2, n, 0).unwrap().value;
        for l in 1..=50 {
            if gamma_threshold(2, n, l).unwrap().value.cmp_value(&g0) == Ordering::Greater {
                bad.push(format!("monotone n={n} l={l}"));
            }
        }
    }
    report(bad.is_empty(), format!("n = 2..20 regions and l <= 50 monotonicity; failures {bad:?}"))
}

fn criterion_5() -> Report {
    let mut bad = Vec::new();
    for n in 2..=20u32 {
        let ni = n as f64;
        let mut engine = gamma_threshold(3, n, 0).unwrap().value;
        let oracle = gamma3_closed_form(n as i64);
        engine.refine_relative(60);
        let value = engine.to_f64();
        let closed = if n >= 10 {
            -(ni + 8.0) * (ni + 4.0) * ni * (ni - 4.0) * (ni - 8.0) * (ni - 12.0) / 64.0
        } else {
            let a = 7112.0 + 504.0 * ni - 126.0 * ni * ni;
            let b = 236.0 + 12.0 * ni - 3.0 * ni * ni;
            let c = 964.0 + 60.0 * ni - 15.0 * ni * ni;
            64.0 / 27.0 * (a + b * c.sqrt())
        };
        let rel = (value - closed).abs() / closed.abs().max(1.0);
        if rel > 1e-12 || engine.cmp_value(&oracle) != Ordering::Equal {
            bad.push(format!("gamma n={n} rel={rel:e}"));
        }
        let spec = IndicialSpec::new(3, n, 0, Rational::zero()).unwrap();
        let esa = euler_esa::esa_decide_radial(&spec).unwrap().verdict == Verdict::Esa;
        if esa != (n >= 12) {
            bad.push(format!("c=0 n={n}"));
        }
    }
    report(bad.is_empty(), format!("n = 2..20; failures {bad:?}"))
}

fn criterion_6() -> Report {
    timed(Duration::from_secs(300), || {
        let mut bad = Vec::new();
        let h = hurwitz_assemble(5, 20, 0);
        let displayed = [
            "629847004905001626921946285352115240960000",
            "1045471534388841527438982355353600",
            "429438995162964368031744",
            "-83914629120000",
            "3125",
        ];
        let q = h.q_factor_primitive();
        let want = Poly::new(displayed.iter().map(|s| parse_rational(s).unwrap()).collect());
        if q != want {
            bad.push("quartic coefficients".to_string());
        }
        let quartic_roots = sturm_isolate(&q).unwrap().len();
        let quintic_roots = sturm_isolate(&h.det_in_c).unwrap().len();
        if quartic_roots != 2 || quintic_roots != 3 {
            bad.push(format!("real roots {quartic_roots}/{quintic_roots}"));
        }
        let roots = AlgebraicReal::real_roots(&q);
        let shown: Vec<String> = roots.iter().map(|x| x.to_decimal(5)).collect();
        if shown != ["1.0436e10", "1.8324e10"] {
            bad.push(format!("decimals {shown:?}"));
        }
        let expected = vec![
            Piece {
                lo: Endpoint::Finite(AlgebraicReal::from_rational(int(0))),
                hi: Endpoint::Finite(roots[0].clone()),
            },
            Piece { lo: Endpoint::Finite(roots[1].clone()), hi: Endpoint::PosInf },
        ];
        let radial = esa_region_radial(5, 20, 0).unwrap();
        let full = esa_region_full(5, 20, 50).unwrap();
        if radial.pieces != expected || !full.same_pieces(&radial) {
            bad.push(format!("regions {} / {}", radial.render(5), full.render(5)));
        }
        report(bad.is_empty(), format!("region {}; failures {bad:?}", radial.render(5)))
    })
}

const SIGNS520_REFERENCE: [&str; 31] = [
    "---", "+-+", "+++", "++-", "++-", "++-", "++-", "+++", "+++", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+",
    "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+-+", "+++",
    "+++",
];

fn criterion_7() -> Report {
    let bad: Vec<u32> = (0..=30u32).filter(|&l| signs_q5_20(l) != SIGNS520_REFERENCE[l as usize]).collect();
    report(bad.is_empty(), format!("l = 0..30, mismatches at {bad:?}"))
}

/// (n, ℓ) pairs with n + 2ℓ = target, n ≥ 2.
fn pairs_with_sum(target: i64) -> Vec<(u32, u32)> {
    (0..=target / 2)
        .filter(|l| target - 2 * l >= 2)
        .map(|l| ((target - 2 * l) as u32, l as u32))
        .step_by(3)
        .collect()
}

fn disc_mismatches(offset: i64) -> Vec<i64> {
    (0..=30)
        .filter(|&k| pairs_with_sum(k + offset).iter().any(|&(n, l)| disc_q3(n, l) != disc_q3_closed_form(k)))
        .collect()
}

fn criterion_8() -> Report {
    let disc_bad = disc_mismatches(11);
    let pi_bad: Vec<u32> = (29..=40u32)
        .filter(|&l| quartic_classify(&hurwitz_assemble(5, 20, l).q_factor).unwrap().pi != pi_q5_closed_form(l as i64 - 29))
        .collect();
    report(
        disc_bad.is_empty() && pi_bad.is_empty(),
        format!(
            "disc with k = n+2l-11: {} of 31 k values mismatch; Pi for l = 29..40: {} mismatches",
            disc_bad.len(),
            pi_bad.len()
        ),
    )
}

fn criterion_8_corrected() -> Report {
    let bad = disc_mismatches(12);
    report(bad.is_empty(), format!("disc with k = n+2l-12: {} of 31 k values mismatch", bad.len()))
}

fn criterion_9() -> Report {
    let config = Config::default();
    let mut bad = Vec::new();
    for m in 1..=5u32 {
        for n in 2..=24u32 {
            if power_zero_coupling(m, n, 50, &config).unwrap() != (n >= 4 * m) {
                bad.push((m, n));
            }
        }
    }
    report(bad.is_empty(), format!("m = 1..5, n = 2..24, l <= 50; mismatches {bad:?}"))
}

fn pairing_holds(m: u32, n: u32, l: u32, c: Rational) -> bool {
    let p = build_indicial(&IndicialSpec::new(m, n, l, c).unwrap());
    let set = certified_roots(&p, 128).unwrap();
    let roots = set.expanded();
    let d = roots.len();
    (0..d).all(|j| {
        let (a, b) = (roots[j], roots[d - 1 - j]);
        let gap = (&a.re + &b.re - int(2 * m as i64 - 1)).abs();
        gap <= &a.radius + &b.radius
    })
}

fn criterion_10() -> Report {
    let mut failures = Vec::new();
    let mut r = rng(10);

    let pairing_bad = (0..1000)
        .filter(|_| {
            let m = r.gen_range(1..=5);
            let n = r.gen_range(2..=24);
            let l = r.gen_range(0..=6);
            let c = random_rational(&mut r, 1000) * int(r.gen_range(1..=1000));
            !pairing_holds(m, n, l, c)
        })
        .count();
    if pairing_bad > 0 {
        failures.push(format!("pairing {pairing_bad}"));
    }

    let mut orlando_checked = 0;
    for (m, n, l) in [(1, 3, 0), (2, 3, 0), (2, 5, 2), (2, 7, 0), (3, 2, 0), (3, 9, 1), (3, 12, 0), (4, 6, 0), (5, 20, 0)] {
        let region = esa_region_radial(m, n, l).unwrap();
        let det = hurwitz_assemble(m, n, l).det_in_c;
        for p in &region.pieces {
            for e in [&p.lo, &p.hi] {
                if let Some(x) = e.finite() {
                    orlando_checked += 1;
                    if !x.is_root_of(&det) {
                        failures.push(format!("endpoint of ({m},{n},{l}) not a root of det H"));
                    }
                }
            }
        }
    }

    let classifier_bad = (0..1000)
        .filter(|_| {
            let coeffs: Vec<Rational> =
                (0..5).map(|k| if k == 4 { int(r.gen_range(1..=5)) } else { random_rational(&mut r, 30) }).collect();
            let q = Poly::new(coeffs);
            let real = euler_esa::exact::sturm::real_root_count_with_multiplicity(&q);
            match quartic_classify(&q).unwrap().real_root_class {
                RealRootClass::TwoRealTwoImaginary => real != 2,
                RealRootClass::NoRealRoots => real != 0,
                RealRootClass::FourReal => real != 4,
                RealRootClass::Other => false,
            }
        })
        .count();
    if classifier_bad > 0 {
        failures.push(format!("classifier {classifier_bad}"));
    }

    let mut worst: f64 = 0.0;
    let mut residual_count = 0;
    for (c1, c2) in [(int(0), int(-1)), (rat(1, 3), int(2)), (int(-3), rat(7, 2)), (int(0), rat(-9, 16)), (int(0), int(1))] {
        for _ in 0..20 {
            let lambda = Complex64::from_polar(r.gen_range(0.0..4.0), r.gen_range(0.0..std::f64::consts::TAU));
            let radius = r.gen_range(0.25..2.0);
            let sel = select_fundamental_system(&c1, &c2, lambda);
            for s in sel.solutions.iter().filter(|s| s.kind == SolutionKind::SeriesF03) {
                let res = ode_residual(s, &c1, &c2, lambda, radius, 1e-20).unwrap();
                worst = worst.max(res);
                residual_count += 1;
            }
        }
    }
    if worst >= 1e-10 {
        failures.push(format!("residual {worst:e}"));
    }

    let geometry = resonance_geometry_table(5, 5);
    let geometry_bad = geometry.iter().filter(|c| !c.holds).count();
    if geometry_bad > 0 {
        failures.push(format!("geometry {geometry_bad}"));
    }

    report(
        failures.is_empty(),
        format!(
            "pairing 1000 specs, Orlando {orlando_checked} endpoints, classifier 1000 quartics, {residual_count} residuals (max {worst:.1e}), {} identities; failures {failures:?}",
            geometry.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, fn() -> Report)> = vec![
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = 0;
    for (id, run) in criteria {
        let rep = run();
        println!("criterion {id:>2}: {} | {}", if rep.pass { "PASS" } else { "FAIL" }, rep.detail);
        if !rep.pass && !UNATTAINABLE.contains(&id) {
            unexpected += 1;
        }
    }
    let info = criterion_8_corrected();
    println!("info 8 (offset n+2l-12): {} | {}", if info.pass { "PASS" } else { "FAIL" }, info.detail);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed outside the documented list");
        ExitCode::FAILURE
    }
}
