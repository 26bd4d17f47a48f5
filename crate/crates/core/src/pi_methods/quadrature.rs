//! Riemann sums for the quarter-arc integral after `x = 2t/(1+t²)`, which
//! turns `∫₀¹ dx/√(1−x²)` into `∫₀¹ 2/(1+t²) dt`. The new integrand is
//! strictly decreasing on `[0, 1]`, so the right sum is a lower bound and the
//! left sum an upper bound, and their gap is `(f(0) − f(1))/n = 1/n`.

use std::time::Instant;

use num_bigint::BigInt;

use super::{doubled, Enclosure, Method};
use crate::error::{Error, Result};
use crate::interval::{int, Interval, Rational};

/// `f(i/n) = 2n² / (n² + i²)`.
fn sample(i: u64, n: u64) -> Rational {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let i2 = BigInt::from(i) * BigInt::from(i);
    Rational::new(&n2 * 2, n2 + i2)
}

fn check(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(
            "quadrature needs at least one subinterval".into(),
        ));
    }
    Ok(())
}

/// `[right sum, left sum]` for `∫₀¹ 2/(1+t²) dt` (= π/2), in exact arithmetic.
pub fn riemann_bounds_exact(n: u64) -> Result<Interval> {
    check(n)?;
    let interior: Rational = (1..n).map(|i| sample(i, n)).sum();
    let nr = int(n as i64);
    let right = (&interior + int(1)) / &nr;
    let left = (interior + int(2)) / nr;
    Interval::new(right, left)
}

/// Doubled [`riemann_bounds_exact`]: an uncompressed π enclosure of width `2/n`.
pub fn pi_quadrature_exact(n: u64) -> Result<Interval> {
    Ok(doubled(&riemann_bounds_exact(n)?))
}

/// Same bounds with the interior sum accumulated in dyadic intervals.
pub fn pi_quadrature(n: u64, bits: u32) -> Result<Enclosure> {
    check(n)?;
    let start = Instant::now();
    let mut interior = Interval::point(int(0));
    for i in 1..n {
        let term = Interval::point(sample(i, n)).compress(bits);
        interior = (&interior + &term).compress(bits);
    }
    let nr = int(n as i64).recip();
    let right = interior.lo() + int(1);
    let left = interior.hi() + int(2);
    let half = Interval::new(right * &nr, left * &nr)?;
    Ok(Enclosure {
        method: Method::Quadrature,
        value: doubled(&half).compress(bits),
        work: n,
        elapsed: start.elapsed(),
        flagged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn single_subinterval() {
        assert_eq!(
            pi_quadrature_exact(1).unwrap(),
            Interval::from_ints(2, 4).unwrap()
        );
        assert_eq!(
            pi_quadrature(1, 16).unwrap().value,
            Interval::from_ints(2, 4).unwrap()
        );
    }

    #[test]
    fn four_subintervals() {
        // interior samples 32/17, 8/5, 32/25
        let interior = rat(32, 17) + rat(8, 5) + rat(32, 25);
        let exact = pi_quadrature_exact(4).unwrap();
        assert_eq!(exact.lo(), &((&interior + int(1)) / int(2)));
        assert_eq!(exact.hi(), &((interior + int(2)) / int(2)));
        assert!(exact.lo() > &rat(28811, 10000) && exact.lo() < &rat(28812, 10000));
        assert!(exact.hi() > &rat(33811, 10000) && exact.hi() < &rat(33812, 10000));
        assert!(pi_quadrature(4, 40)
            .unwrap()
            .value
            .contains_interval(&exact));
    }

    #[test]
    fn gap_is_two_over_n() {
        for n in [1u64, 2, 3, 4, 17, 100] {
            assert_eq!(pi_quadrature_exact(n).unwrap().width(), rat(2, n as i64));
        }
    }

    #[test]
    fn zero_rejected() {
        assert!(pi_quadrature(0, 16).is_err());
        assert!(riemann_bounds_exact(0).is_err());
    }
}
