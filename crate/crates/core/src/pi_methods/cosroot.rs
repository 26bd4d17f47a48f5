//! π/2 as the first positive zero of the cosine series.
//!
//! cos is evaluated from its Maclaurin partial sum in `y = x²`, widened by
//! the alternating-series remainder. The root bracket `[1, 2]` is certified
//! once: cos > 0 on `[0, 1]`, cos(2) < 0, and sin > 0 on `[1, 2]` so cos is
//! strictly decreasing there. The zero found by bisection is then the
//! smallest positive one.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{doubled, Enclosure, Method};
use crate::error::{Error, Result};
use crate::interval::{int, rat, Interval, Rational};
use crate::powerseries::Series;

/// Highest cos order tried when certifying the sign at a bisection midpoint.
pub const MAX_COS_ORDER: u32 = 64;
const START_ORDER: u32 = 3;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn check_domain(x: &Interval) -> Result<()> {
    if x.lo().is_negative() || *x.hi() > rat(5, 2) {
        return Err(Error::Domain(format!(
            "series evaluation is restricted to [0, 5/2], got {x}"
        )));
    }
    Ok(())
}

/// Σ_{n<=N} (-1)^n y^n / (first + 2n)!, as a polynomial in y.
fn alternating_in_square(order: u32, first: u32) -> Series {
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut denom = factorial(first);
    for n in 0..=order {
        if n > 0 {
            let k = first + 2 * n;
            denom *= BigInt::from(k) * BigInt::from(k - 1);
        }
        let c = Rational::new(BigInt::one(), denom.clone());
        coeffs.push(if n % 2 == 0 { c } else { -c });
    }
    Series::new(coeffs).expect("order + 1 >= 1 coefficients")
}

fn widen(v: &Interval, r: &Rational) -> Interval {
    Interval::ordered(v.lo() - r, v.hi() + r)
}

/// Enclosure of cos over `x ⊂ [0, 5/2]` from the partial sum through
/// `x^(2N)`, widened by `x.hi^(2N+2) / (2N+2)!`. The remainder bound needs
/// the omitted terms to shrink, i.e. `x.hi² <= (2N+1)(2N+2)`.
pub fn cos_eval_interval(x: &Interval, order: u32, bits: u32) -> Result<Interval> {
    check_domain(x)?;
    let limit = int(((2 * order + 1) * (2 * order + 2)) as i64);
    if x.hi() * x.hi() > limit {
        return Err(Error::Domain(format!(
            "cos order {order} too small for x up to {}",
            x.hi()
        )));
    }
    let y = x.square();
    let partial = alternating_in_square(order, 0).eval_interval(&y, bits);
    let e = 2 * order + 2;
    let remainder =
        num_traits::pow(x.hi().clone(), e as usize) / Rational::from_integer(factorial(e));
    Ok(widen(&partial, &remainder).compress(bits))
}

/// sin over `x ⊂ [0, 5/2]` through `x^(2N+1)`, widened by
/// `x.hi^(2N+3) / (2N+3)!`; needs `x.hi² <= (2N+2)(2N+3)`.
pub fn sin_eval_interval(x: &Interval, order: u32, bits: u32) -> Result<Interval> {
    check_domain(x)?;
    let limit = int(((2 * order + 2) * (2 * order + 3)) as i64);
    if x.hi() * x.hi() > limit {
        return Err(Error::Domain(format!(
            "sin order {order} too small for x up to {}",
            x.hi()
        )));
    }
    let y = x.square();
    let partial = &alternating_in_square(order, 1).eval_interval(&y, bits) * x;
    let e = 2 * order + 3;
    let remainder =
        num_traits::pow(x.hi().clone(), e as usize) / Rational::from_integer(factorial(e));
    Ok(widen(&partial, &remainder).compress(bits))
}

/// A certified sign of cos at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignCertificate {
    pub x: Rational,
    pub order: u32,
    pub value: Interval,
    pub positive: bool,
}

/// Tries orders 3, 6, 12, 24, 48, 64 until the enclosure of cos(x) excludes
/// zero. `None` once the cap is reached without a decision.
pub fn certify_cos_sign(x: &Rational, bits: u32) -> Option<SignCertificate> {
    let point = Interval::point(x.clone());
    let mut order = START_ORDER;
    loop {
        let value = cos_eval_interval(&point, order, bits + order).ok()?;
        if value.is_positive() || value.is_negative() {
            return Some(SignCertificate {
                x: x.clone(),
                order,
                positive: value.is_positive(),
                value,
            });
        }
        if order >= MAX_COS_ORDER {
            return None;
        }
        order = (order * 2).min(MAX_COS_ORDER);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCertificate {
    pub cos_at_one: SignCertificate,
    pub cos_at_two: SignCertificate,
    /// Encloses cos over `[0, 1]`; strictly positive.
    pub cos_on_unit: Interval,
    /// Encloses sin over `[1, 2]`; strictly positive.
    pub sin_on_bracket: Interval,
}

/// Certifies that `[1, 2]` holds exactly one zero of cos and that it is the
/// smallest positive one.
pub fn certify_root_bracket(bits: u32) -> Result<RootCertificate> {
    let fail = |what: &str| Error::Domain(format!("could not certify {what}"));
    let cos_at_one = certify_cos_sign(&int(1), bits)
        .filter(|c| c.positive)
        .ok_or_else(|| fail("cos(1) > 0"))?;
    let cos_at_two = certify_cos_sign(&int(2), bits)
        .filter(|c| !c.positive)
        .ok_or_else(|| fail("cos(2) < 0"))?;
    let cos_on_unit = cos_eval_interval(&Interval::from_ints(0, 1)?, 6, bits)?;
    if !cos_on_unit.is_positive() {
        return Err(fail("cos > 0 on [0, 1]"));
    }
    let sin_on_bracket = sin_eval_interval(&Interval::from_ints(1, 2)?, 6, bits)?;
    if !sin_on_bracket.is_positive() {
        return Err(fail("sin > 0 on [1, 2]"));
    }
    Ok(RootCertificate {
        cos_at_one,
        cos_at_two,
        cos_on_unit,
        sin_on_bracket,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisection {
    /// Bracket for π/2 with cos(lo) > 0 > cos(hi).
    pub bracket: Interval,
    pub steps: u64,
    /// The sign at some midpoint could not be certified within
    /// [`MAX_COS_ORDER`]; the bracket is still sound.
    pub flagged: bool,
    /// Bracket before the first step and after each accepted step.
    pub trajectory: Vec<Interval>,
}

/// Bisects `[1, 2]` until `max_steps` steps are taken or the bracket is no
/// wider than `target`, whichever comes first.
pub fn bisect_cos_root(
    max_steps: Option<u64>,
    target: Option<&Rational>,
    bits: u32,
) -> Result<Bisection> {
    certify_root_bracket(bits)?;
    let mut lo = int(1);
    let mut hi = int(2);
    let mut steps = 0u64;
    let mut flagged = false;
    let mut trajectory = vec![Interval::ordered(lo.clone(), hi.clone())];
    loop {
        if max_steps.is_some_and(|m| steps >= m) {
            break;
        }
        if target.is_some_and(|t| &hi - &lo <= *t) {
            break;
        }
        let mid = (&lo + &hi) / int(2);
        match certify_cos_sign(&mid, bits) {
            Some(c) if c.positive => lo = mid,
            Some(_) => hi = mid,
            None => {
                flagged = true;
                break;
            }
        }
        steps += 1;
        trajectory.push(Interval::ordered(lo.clone(), hi.clone()));
    }
    Ok(Bisection {
        bracket: Interval::ordered(lo, hi),
        steps,
        flagged,
        trajectory,
    })
}

/// π enclosure of width at most `target_width` (unless flagged).
pub fn pi_cosroot(target_width: &Rational, bits: u32) -> Result<Enclosure> {
    if !target_width.is_positive() {
        return Err(Error::Domain("target width must be positive".into()));
    }
    let start = Instant::now();
    let half = target_width / int(2);
    let b = bisect_cos_root(None, Some(&half), bits)?;
    Ok(Enclosure {
        method: Method::Cosroot,
        value: doubled(&b.bracket),
        work: b.steps,
        elapsed: start.elapsed(),
        flagged: b.flagged,
    })
}

/// π enclosure after exactly `steps` bisection steps (unless flagged).
pub fn pi_cosroot_steps(steps: u64, bits: u32) -> Result<Enclosure> {
    let start = Instant::now();
    let b = bisect_cos_root(Some(steps), None, bits)?;
    Ok(Enclosure {
        method: Method::Cosroot,
        value: doubled(&b.bracket),
        work: b.steps,
        elapsed: start.elapsed(),
        flagged: b.flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_at_one_order_three() {
        let v = cos_eval_interval(&Interval::point(int(1)), 3, 64).unwrap();
        // partial sum 389/720, remainder 1/8!
        let exact =
            Interval::new(rat(389, 720) - rat(1, 40320), rat(389, 720) + rat(1, 40320)).unwrap();
        assert!(v.contains_interval(&exact));
        assert!(v.is_positive());
        assert!(Interval::new(rat(5402, 10000), rat(5404, 10000))
            .unwrap()
            .contains_interval(&v));
    }

    #[test]
    fn cos_at_two_order_three() {
        let v = cos_eval_interval(&Interval::point(int(2)), 3, 64).unwrap();
        let r = rat(256, 40320);
        let exact = Interval::new(rat(-19, 45) - &r, rat(-19, 45) + &r).unwrap();
        assert!(v.contains_interval(&exact));
        assert!(v.is_negative());
        assert!(Interval::new(rat(-429, 1000), rat(-415, 1000))
            .unwrap()
            .contains_interval(&v));
    }

    #[test]
    fn cos_at_zero_is_one() {
        for n in [0u32, 1, 5] {
            let v = cos_eval_interval(&Interval::point(int(0)), n, 32).unwrap();
            assert_eq!(v, Interval::point(int(1)));
        }
    }

    #[test]
    fn order_precondition_enforced() {
        // 2.5² = 6.25 > 1·2 for N = 0
        assert!(cos_eval_interval(&Interval::point(rat(5, 2)), 0, 32).is_err());
        assert!(cos_eval_interval(&Interval::point(int(3)), 10, 32).is_err());
        assert!(cos_eval_interval(&Interval::point(int(-1)), 10, 32).is_err());
    }

    #[test]
    fn bracket_certificates_at_order_three() {
        let c = certify_root_bracket(64).unwrap();
        assert_eq!(c.cos_at_one.order, 3);
        assert_eq!(c.cos_at_two.order, 3);
        assert!(c.cos_on_unit.is_positive());
        assert!(c.sin_on_bracket.is_positive());
    }

    #[test]
    fn first_step_moves_to_upper_half() {
        let cert = certify_cos_sign(&rat(3, 2), 64).unwrap();
        assert!(cert.positive);
        let b = bisect_cos_root(Some(1), None, 64).unwrap();
        assert_eq!(b.bracket, Interval::new(rat(3, 2), int(2)).unwrap());
    }

    #[test]
    fn widths_halve() {
        let b = bisect_cos_root(Some(30), None, 64).unwrap();
        assert_eq!(b.trajectory.len(), 31);
        for w in b.trajectory.windows(2) {
            assert_eq!(w[1].width() * int(2), w[0].width());
            assert!(w[0].contains_interval(&w[1]));
        }
    }

    #[test]
    fn target_width_reached() {
        let e = pi_cosroot(&rat(1, 10), 40).unwrap();
        assert!(e.width() <= rat(1, 10));
        assert!(!e.flagged);
        assert!(pi_cosroot(&int(0), 40).is_err());
    }
}
