use std::time::Instant;

use super::{Enclosure, Method};
use crate::error::{Error, Result};
use crate::interval::{int, Interval, Rational};
use crate::powerseries::{arcsin_coeff_sum, arcsin_ratio, arcsin_tail_bound};

/// `[2·S_N, 2·S_N + 2·tail(N)]` with `S_N = Σ_{n<=N} a_n` summed exactly.
pub fn arcsin_bounds_exact(n: u64) -> Result<Interval> {
    let tail = arcsin_tail_bound(n)?;
    let lo = arcsin_coeff_sum(0, n) * int(2);
    let hi = &lo + tail * int(2);
    Interval::new(lo, hi)
}

/// Running partial sum of the arcsin coefficients at `x = 1`, with both the
/// current coefficient and the sum held as dyadic intervals.
///
/// Every `2·S_M + 2·tail(M)` with `M <= N` bounds π from above, and the tail
/// bound is constant over long runs of `M`, so the smallest one seen is kept.
/// This makes successive enclosures nested.
struct PartialSum {
    n: u64,
    term: Interval,
    sum: Interval,
    best_hi: Option<Rational>,
    bits: u32,
}

impl PartialSum {
    fn new(bits: u32) -> Self {
        Self {
            n: 0,
            term: Interval::point(int(1)),
            sum: Interval::point(int(1)),
            best_hi: None,
            bits,
        }
    }

    fn advance(&mut self) -> Result<()> {
        let (p, q) = arcsin_ratio(self.n);
        self.term = self.term.scale(&Rational::new(p, q)).compress(self.bits);
        self.sum = (&self.sum + &self.term).compress(self.bits);
        self.n += 1;

        let two = int(2);
        let hi = self.sum.hi() * &two + arcsin_tail_bound(self.n)? * &two;
        let hi = Interval::point(hi).compress(self.bits).hi().clone();
        if self.best_hi.as_ref().is_none_or(|b| hi < *b) {
            self.best_hi = Some(hi);
        }
        Ok(())
    }

    fn enclosure(&self, start: Instant) -> Result<Enclosure> {
        let lo = Interval::point(self.sum.lo() * int(2))
            .compress(self.bits)
            .lo()
            .clone();
        let hi = self
            .best_hi
            .clone()
            .ok_or_else(|| Error::Domain("arcsin method needs N >= 1".into()))?;
        Ok(Enclosure {
            method: Method::Arcsin,
            value: Interval::new(lo, hi)?,
            work: self.n,
            elapsed: start.elapsed(),
            flagged: false,
        })
    }
}

/// π from the doubled arcsin series at `x = 1`, using `N` terms past the
/// constant and the rational tail bound. The lower end is `2·S_N`; the upper
/// end is the best `2·S_M + 2·tail(M)` over `1 <= M <= N`.
pub fn pi_arcsin(n: u64, bits: u32) -> Result<Enclosure> {
    if n == 0 {
        return Err(Error::Domain("arcsin method needs N >= 1".into()));
    }
    let start = Instant::now();
    let mut s = PartialSum::new(bits);
    while s.n < n {
        s.advance()?;
    }
    s.enclosure(start)
}

/// One pass over the series, emitting an enclosure at every requested `N`.
/// `works` must be strictly increasing and start at 1 or above.
pub fn pi_arcsin_schedule(works: &[u64], bits: u32) -> Result<Vec<Enclosure>> {
    if works.first() == Some(&0) || works.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "arcsin schedule must be strictly increasing and positive".into(),
        ));
    }
    let start = Instant::now();
    let mut s = PartialSum::new(bits);
    let mut out = Vec::with_capacity(works.len());
    for &w in works {
        while s.n < w {
            s.advance()?;
        }
        out.push(s.enclosure(start)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn two_terms_match_displayed_series() {
        let exact = arcsin_bounds_exact(2).unwrap();
        assert_eq!(exact.lo(), &rat(149, 60));
        assert_eq!(exact.hi(), &(rat(149, 60) + int(1)));
        let e = pi_arcsin(2, 40).unwrap();
        assert!(e.value.contains_interval(&exact));
        assert_eq!(e.work, 2);
    }

    #[test]
    fn one_term() {
        let exact = arcsin_bounds_exact(1).unwrap();
        assert_eq!(exact.lo(), &rat(7, 3));
        // tail(1) = 1/⌊√3⌋ = 1
        assert_eq!(exact.width(), int(2));
    }

    #[test]
    fn compressed_run_contains_exact_bounds() {
        for n in [1u64, 3, 10, 57, 200] {
            let lo = arcsin_bounds_exact(n).unwrap().lo().clone();
            let hi = (1..=n)
                .map(|m| arcsin_bounds_exact(m).unwrap().hi().clone())
                .min()
                .unwrap();
            let exact = Interval::new(lo, hi).unwrap();
            let e = pi_arcsin(n, 48).unwrap();
            assert!(e.value.contains_interval(&exact), "n = {n}");
            assert!(e.width() - exact.width() < rat(1, 1 << 30));
        }
    }

    #[test]
    fn schedule_matches_individual_runs() {
        let sched = pi_arcsin_schedule(&[1, 2, 5, 9], 40).unwrap();
        for e in &sched {
            let single = pi_arcsin(e.work, 40).unwrap();
            assert_eq!(single.value, e.value);
        }
        assert!(pi_arcsin_schedule(&[2, 2], 40).is_err());
        assert!(pi_arcsin_schedule(&[0, 2], 40).is_err());
    }

    #[test]
    fn zero_terms_rejected() {
        assert!(pi_arcsin(0, 32).is_err());
    }
}
