//! The `verify` self-check: every module property at small fixed sizes.

use std::time::Duration;

use num_traits::Signed;

use crate::arclength::{inscribed_polyline, polyline_vertices};
use crate::interval::{int, interval_arith, rat, ulp, ArithOp, Interval, Rational};
use crate::pi_methods::{
    archimedes_trajectory, bisect_cos_root, certify_root_bracket, cross_check, pi_archimedes,
    pi_arcsin, pi_arcsin_schedule, pi_cosroot, pi_quadrature, pi_quadrature_exact, run_all,
    Enclosure, Method,
};
use crate::powerseries::{
    arcsin_coeff_factorial, arcsin_coeff_sum, arcsin_coeffs, arcsin_series, arcsin_tail_bound,
    sin_coeffs, Series,
};

use super::format::guaranteed_digits;

type CheckResult = std::result::Result<String, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Adds a fabricated enclosure of π that cannot be right, to exercise
    /// the failure path of the cross-check.
    pub inject_disjoint: bool,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sample_intervals() -> Vec<Interval> {
    let pts = [
        rat(-7, 3),
        rat(-1, 2),
        int(0),
        rat(1, 5),
        rat(3, 2),
        rat(11, 4),
    ];
    let mut out = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i..] {
            out.push(Interval::new(a.clone(), b.clone()).expect("sorted sample"));
        }
    }
    out
}

fn sample_points(iv: &Interval) -> Vec<Rational> {
    let w = iv.width();
    [rat(0, 1), rat(1, 7), rat(1, 2), rat(5, 6), rat(1, 1)]
        .iter()
        .map(|t| iv.lo() + &w * t)
        .collect()
}

fn check_enclosure_soundness(_: &VerifyOptions) -> CheckResult {
    let ivs = sample_intervals();
    let mut count = 0usize;
    for a in &ivs {
        for b in &ivs {
            for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div] {
                let Ok(r) = interval_arith(op, a, b) else {
                    ensure(op == ArithOp::Div && b.contains_zero(), || {
                        format!("{op:?} failed on {a} and {b}")
                    })?;
                    continue;
                };
                for x in sample_points(a) {
                    for y in sample_points(b) {
                        let v = match op {
                            ArithOp::Add => &x + &y,
                            ArithOp::Sub => &x - &y,
                            ArithOp::Mul => &x * &y,
                            ArithOp::Div => &x / &y,
                        };
                        ensure(r.contains(&v), || {
                            format!("{x} {op:?} {y} = {v} escapes {r}")
                        })?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} sampled point operations enclosed"))
}

fn check_compress(_: &VerifyOptions) -> CheckResult {
    for a in sample_intervals() {
        for k in [1u32, 2, 5, 13, 40] {
            let c = a.compress(k);
            ensure(c.contains_interval(&a), || {
                format!("compress({a}, {k}) lost points")
            })?;
            ensure(c.width() <= a.width() + ulp(k) * int(2), || {
                format!("compress({a}, {k}) widened by more than 2^(1-k)")
            })?;
        }
    }
    Ok("compress widens by at most 2^(1-k)".into())
}

fn check_sqrt(_: &VerifyOptions) -> CheckResult {
    for a in sample_intervals()
        .into_iter()
        .filter(|a| !a.lo().is_negative())
    {
        for k in [4u32, 10, 33] {
            let r = a.sqrt(k).map_err(|e| e.to_string())?;
            let squared =
                Interval::new(r.lo() * r.lo(), r.hi() * r.hi()).map_err(|e| e.to_string())?;
            ensure(squared.contains_interval(&a), || {
                format!("sqrt({a}, {k})² misses input")
            })?;
        }
    }
    Ok("[lo², hi²] covers every input".into())
}

fn check_recurrence(_: &VerifyOptions) -> CheckResult {
    let a = arcsin_coeffs(50);
    for n in 0..=50u64 {
        ensure(a.coeff(n as usize) == arcsin_coeff_factorial(n), || {
            format!("a_{n} recurrence disagrees with factorial formula")
        })?;
    }
    Ok("a_n recurrence equals (2n)!/(4^n (n!)^2 (2n+1)) for n <= 50".into())
}

fn check_monotone_coeffs(_: &VerifyOptions) -> CheckResult {
    let a = arcsin_coeffs(200);
    for n in 1..200 {
        ensure(a.coeff(n) > int(0) && a.coeff(n + 1) < a.coeff(n), || {
            format!("a_{n} breaks positivity or monotonicity")
        })?;
    }
    Ok("a_n > 0 and decreasing for 1 <= n < 200".into())
}

fn check_tail_bound(_: &VerifyOptions) -> CheckResult {
    for n in [2u64, 5, 10, 100] {
        let partial = arcsin_coeff_sum(n + 1, n + 10_000);
        let bound = arcsin_tail_bound(n).map_err(|e| e.to_string())?;
        ensure(partial < bound, || {
            format!("tail after N = {n} exceeds {bound}")
        })?;
    }
    Ok("sum_{n=N+1}^{N+10^4} a_n < 1/floor(sqrt(2N+1)) for N in {2, 5, 10, 100}".into())
}

fn check_reversion(_: &VerifyOptions) -> CheckResult {
    let asin = arcsin_series(9);
    let g = asin.revert().map_err(|e| e.to_string())?;
    ensure(g == sin_coeffs(9), || format!("revert(arcsin) = {g}"))?;
    let id = asin.compose(&g).map_err(|e| e.to_string())?;
    ensure(id == Series::identity(9), || {
        format!("arcsin(revert) = {id}")
    })?;
    Ok("sin coefficients recovered through order 9".into())
}

fn check_triple_angle(_: &VerifyOptions) -> CheckResult {
    let s = sin_coeffs(9);
    let three_x = Series::identity(9).scale(&int(3));
    let lhs = s.compose(&three_x).map_err(|e| e.to_string())?;
    let rhs = s.scale(&int(3)).sub(&s.pow(3).scale(&int(4)));
    ensure(lhs == rhs, || {
        format!("sin(3x) = {lhs} but 3 sin - 4 sin^3 = {rhs}")
    })?;
    Ok("sin(3x) = 3 sin x - 4 sin^3 x through order 9".into())
}

fn check_quadrature_gap(_: &VerifyOptions) -> CheckResult {
    for n in [1u64, 4, 1000] {
        let w = pi_quadrature_exact(n).map_err(|e| e.to_string())?.width();
        ensure(w == rat(2, n as i64), || format!("gap at n = {n} is {w}"))?;
    }
    Ok("exact Riemann gap is 2/n for n in {1, 4, 1000}".into())
}

fn check_archimedes(_: &VerifyOptions) -> CheckResult {
    let traj = archimedes_trajectory(20, 96).map_err(|e| e.to_string())?;
    for w in traj.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        ensure(
            a.inscribed.hi() < b.inscribed.lo()
                && b.inscribed.hi() < b.circumscribed.lo()
                && b.circumscribed.hi() < a.circumscribed.lo(),
            || format!("squeeze broken at {} sides", b.sides),
        )?;
    }
    let oct = pi_archimedes(1, 64).map_err(|e| e.to_string())?;
    let inner = Interval::new(rat(30615, 10000), rat(33137, 10000)).map_err(|e| e.to_string())?;
    ensure(oct.value.contains_interval(&inner), || {
        format!("octagon enclosure {} misses [3.0615, 3.3137]", oct.value)
    })?;
    Ok("s_k < s_{k+1} < t_{k+1} < t_k for k < 20; octagon covers [3.0615, 3.3137]".into())
}

fn check_bisection(_: &VerifyOptions) -> CheckResult {
    let cert = certify_root_bracket(64).map_err(|e| e.to_string())?;
    ensure(
        cert.cos_at_one.order == 3 && cert.cos_at_two.order == 3,
        || "endpoint signs needed more than order 3".into(),
    )?;
    let b = bisect_cos_root(Some(1), None, 64).map_err(|e| e.to_string())?;
    let want = Interval::new(rat(3, 2), int(2)).map_err(|e| e.to_string())?;
    ensure(b.bracket == want, || {
        format!("first step gave {}", b.bracket)
    })?;
    Ok("cos(1) > 0 and cos(2) < 0 at order 3; first step selects [3/2, 2]".into())
}

fn small_runs() -> std::result::Result<Vec<Enclosure>, String> {
    let e = |r: crate::Result<Enclosure>| r.map_err(|e| e.to_string());
    Ok(vec![
        e(pi_arcsin(100, 48))?,
        e(pi_cosroot(&rat(1, 1_000_000), 56))?,
        e(pi_archimedes(10, 56))?,
        e(pi_quadrature(100, 48))?,
    ])
}

fn check_cross_method(opts: &VerifyOptions) -> CheckResult {
    let mut all = small_runs()?;
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            a.value
                .intersect(&b.value)
                .map_err(|_| format!("{} and {} do not meet", a.method, b.method))?;
        }
    }
    if opts.inject_disjoint {
        all.push(Enclosure {
            method: Method::Arcsin,
            value: Interval::new(rat(20, 10), rat(21, 10)).map_err(|e| e.to_string())?,
            work: 0,
            elapsed: Duration::ZERO,
            flagged: true,
        });
    }
    let x = cross_check(&all).map_err(|e| e.to_string())?;
    Ok(format!(
        "all methods intersect in {}",
        super::format::ReportRow::from_interval("x", 0, &x).lo
    ))
}

fn check_nesting(_: &VerifyOptions) -> CheckResult {
    let bits = 48;
    let slack = ulp(bits) * int(2);
    let nested = |outer: &Interval, inner: &Interval| {
        outer.lo() <= &(inner.lo() + &slack) && inner.hi() <= &(outer.hi() + &slack)
    };
    let works: Vec<u64> = (1..=300).collect();
    let arcsin = pi_arcsin_schedule(&works, bits).map_err(|e| e.to_string())?;
    for w in arcsin.windows(2) {
        ensure(nested(&w[0].value, &w[1].value), || {
            format!("arcsin N = {}", w[1].work)
        })?;
    }
    let bis = bisect_cos_root(Some(40), None, bits).map_err(|e| e.to_string())?;
    for w in bis.trajectory.windows(2) {
        ensure(
            nested(&w[0], &w[1]) && w[1].width() * int(2) == w[0].width(),
            || "cosroot brackets do not halve".into(),
        )?;
    }
    let arch = archimedes_trajectory(16, bits).map_err(|e| e.to_string())?;
    for w in arch.windows(2) {
        ensure(nested(&w[0].enclosure(), &w[1].enclosure()), || {
            format!("archimedes at {} sides", w[1].sides)
        })?;
    }
    let mut prev: Option<Interval> = None;
    for k in 0..=10 {
        let q = pi_quadrature(1 << k, bits)
            .map_err(|e| e.to_string())?
            .value;
        if let Some(p) = &prev {
            ensure(nested(p, &q), || format!("quadrature n = {}", 1 << k))?;
        }
        prev = Some(q);
    }
    Ok("higher work nests inside lower work for every method".into())
}

fn check_slow_convergence(_: &VerifyOptions) -> CheckResult {
    let coarse = rat(15, 1000);
    let works: Vec<u64> = (1..=10_000).collect();
    let table = pi_arcsin_schedule(&works, 48).map_err(|e| e.to_string())?;
    let needed = table
        .iter()
        .find(|e| e.width() <= coarse)
        .map(|e| e.work)
        .ok_or("arcsin never reached width 0.015 within 10^4 terms")?;
    let at_cap = table.last().map(|e| e.width()).unwrap_or_else(|| int(4));

    let fine = rat(1, 1_000_000_000_000);
    let cos = pi_cosroot(&fine, 72).map_err(|e| e.to_string())?;
    ensure(cos.width() <= fine && cos.work <= 50, || {
        format!("cosroot took {} steps for 1e-12", cos.work)
    })?;
    ensure(needed > cos.work, || {
        "arcsin was not the slower method".into()
    })?;
    ensure(at_cap >= cos.width() * int(1000), || {
        "arcsin width at 10^4 terms is not 10^3 times the cosroot width".into()
    })?;
    Ok(format!(
        "arcsin needs {needed} terms for width <= 0.015; cosroot reaches 1e-12 in {} steps",
        cos.work
    ))
}

fn check_polyline(_: &VerifyOptions) -> CheckResult {
    let bits = 48;
    let slack = ulp(bits) * int(2);
    let pi = pi_cosroot(&rat(1, 1_000_000_000), bits).map_err(|e| e.to_string())?;
    let half_pi_hi = pi.value.hi() / int(2);
    let mut prev_lo = int(0);
    for k in 0..=6 {
        let n = 1u64 << k;
        let p = inscribed_polyline(n, bits).map_err(|e| e.to_string())?;
        ensure(p.length.lo() + &slack >= prev_lo, || {
            format!("lower bound fell at n = {n}")
        })?;
        ensure(p.length.hi() < &(&half_pi_hi + &slack), || {
            format!("polyline at n = {n} exceeds pi/2")
        })?;
        prev_lo = p.length.lo().clone();
    }
    ensure(prev_lo > rat(1570, 1000), || {
        "n = 64 lower bound not above 1.570".into()
    })?;
    for (x, y) in polyline_vertices(16, bits).map_err(|e| e.to_string())? {
        let unit = Interval::from_ints(0, 1).map_err(|e| e.to_string())?;
        ensure(unit.contains_interval(&y), || {
            format!("y({x}) outside [0, 1]")
        })?;
        ensure(
            y.square().add_rational(&(&x * &x)).contains(&int(1)),
            || format!("x² + y² misses 1 at x = {x}"),
        )?;
    }
    Ok("polyline lengths rise with n and stay below pi/2".into())
}

fn check_determinism(_: &VerifyOptions) -> CheckResult {
    let w = rat(1, 1_000_000);
    let run = || -> std::result::Result<(Vec<Interval>, String), String> {
        let all = run_all(&w, None).map_err(|e| e.to_string())?;
        let x = cross_check(&all).map_err(|e| e.to_string())?;
        Ok((
            all.into_iter().map(|e| e.value).collect(),
            guaranteed_digits(&x),
        ))
    };
    let a = run()?;
    let b = run()?;
    ensure(a == b, || "two identical runs disagree".into())?;
    Ok(format!("repeatable guaranteed digits {}", a.1))
}

pub type Check = fn(&VerifyOptions) -> CheckResult;

pub const CHECKS: &[(&str, Check)] = &[
    ("interval enclosure soundness", check_enclosure_soundness),
    ("compress widening", check_compress),
    ("sqrt containment", check_sqrt),
    ("arcsin recurrence vs closed form", check_recurrence),
    ("arcsin coefficient monotonicity", check_monotone_coeffs),
    ("arcsin tail bound", check_tail_bound),
    ("series reversion", check_reversion),
    ("triple-angle identity", check_triple_angle),
    ("quadrature gap identity", check_quadrature_gap),
    ("archimedes geometry", check_archimedes),
    ("bisection certification", check_bisection),
    ("cross-method consistency", check_cross_method),
    ("enclosure nesting", check_nesting),
    ("slow convergence of arcsin", check_slow_convergence),
    ("polyline bounds", check_polyline),
    ("determinism", check_determinism),
];

pub fn run_checks(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, check)| match check(opts) {
            Ok(detail) => CheckOutcome {
                name,
                passed: true,
                detail,
            },
            Err(detail) => CheckOutcome {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}
