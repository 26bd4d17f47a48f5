//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] of order `N` stores the coefficients of `x^0 ..= x^N`.
//! Binary operations truncate to the smaller of the two orders; nothing is
//! ever padded silently.
//!
//! The arcsin generator works with the odd-term data `a_n`, where
//! `arcsin(x) = Σ a_n x^(2n+1)`, and only expands it to a full series in `x`
//! when composition or reversion needs one ([`arcsin_series`]).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{int, isqrt_u64, Interval, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`, truncated at `order` (for `order == 0` this is `0`).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::constant(Rational::one(), self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(inner(x))`, truncated at the shared order. Requires
    /// `inner(0) == 0` so every coefficient is a finite sum.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain(format!(
                "composition needs an inner series with zero constant term, got {}",
                inner.coeffs[0]
            )));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(x)) = x` through `self.order()`.
    ///
    /// Coefficients are fixed one order at a time: with `g_1 .. g_{k-1}`
    /// known, `[x^k] self(g)` is `f_1 g_k` plus terms that only involve the
    /// earlier coefficients, so `g_k` is whatever cancels them.
    pub fn revert(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("reversion needs a zero constant term".into()));
        }
        let n = self.order();
        if n == 0 {
            return Err(Error::Domain("reversion needs order at least 1".into()));
        }
        let f1 = self.coeffs[1].clone();
        if f1.is_zero() {
            return Err(Error::Domain(
                "reversion needs a nonzero linear coefficient".into(),
            ));
        }
        let mut g = Series::zero(n);
        g.coeffs[1] = f1.recip();
        for k in 2..=n {
            let partial = self.truncate(k).compose(&g.truncate(k))?;
            g.coeffs[k] = -&partial.coeffs[k] / &f1;
        }
        Ok(g)
    }

    pub fn eval_exact(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval Horner evaluation, compressing to `bits` after every step.
    pub fn eval_interval(&self, x: &Interval, bits: u32) -> Interval {
        let mut acc = Interval::point(self.coeffs[self.order()].clone());
        for c in self.coeffs.iter().rev().skip(1) {
            acc = (&acc * x).add_rational(c).compress(bits);
        }
        acc
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}·x")?,
                _ => write!(f, "{a}·x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// `(2n+1)² / ((2n+2)(2n+3))`, the ratio `a_{n+1} / a_n`.
pub fn arcsin_ratio(n: u64) -> (BigInt, BigInt) {
    let odd = BigInt::from(2 * n + 1);
    let p = &odd * &odd;
    let q = BigInt::from(2 * n + 2) * BigInt::from(2 * n + 3);
    (p, q)
}

/// Odd-term arcsin data `[a_0, .., a_N]` with `arcsin(x) = Σ a_n x^(2n+1)`,
/// by the recurrence `a_0 = 1`, `a_{n+1} = a_n (2n+1)² / ((2n+2)(2n+3))`.
pub fn arcsin_coeffs(n: usize) -> Series {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut a = Rational::one();
    coeffs.push(a.clone());
    for k in 0..n as u64 {
        let (p, q) = arcsin_ratio(k);
        a *= Rational::new(p, q);
        coeffs.push(a.clone());
    }
    Series { coeffs }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `a_n = (2n)! / (4^n (n!)² (2n+1))`, straight from the factorials. An
/// independent route to the recurrence in [`arcsin_coeffs`].
pub fn arcsin_coeff_factorial(n: u64) -> Rational {
    let num = factorial(2 * n);
    let nf = factorial(n);
    let den = (BigInt::one() << (2 * n)) * &nf * &nf * BigInt::from(2 * n + 1);
    Rational::new(num, den)
}

/// The arcsin Maclaurin series in `x` through `x^order` (even coefficients zero).
pub fn arcsin_series(order: usize) -> Series {
    let data = arcsin_coeffs(order / 2);
    let mut s = Series::zero(order);
    for (n, a) in data.coeffs.iter().enumerate() {
        let k = 2 * n + 1;
        if k <= order {
            s.coeffs[k] = a.clone();
        }
    }
    s
}

/// cos through `x^order`: `[x^(2n)] = (-1)^n / (2n)!`.
pub fn cos_coeffs(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut term = Rational::one();
    for k in (0..=order).step_by(2) {
        if k > 0 {
            term = -term / int((k * (k - 1)) as i64);
        }
        s.coeffs[k] = term.clone();
    }
    s
}

/// sin through `x^order`: `[x^(2n+1)] = (-1)^n / (2n+1)!`.
pub fn sin_coeffs(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut term = Rational::one();
    for k in (1..=order).step_by(2) {
        if k > 1 {
            term = -term / int((k * (k - 1)) as i64);
        }
        s.coeffs[k] = term.clone();
    }
    s
}

/// Rational upper bound on `Σ_{n>N} a_n` (the tail of the arcsin series at
/// `x = 1`).
///
/// `C(2n,n)/4^n <= (2n+1)^(-1/2)` by induction, so `a_n <= (2n+1)^(-3/2)`,
/// and comparing the sum with `∫_N^∞ (2x+1)^(-3/2) dx` bounds the tail by
/// `(2N+1)^(-1/2)`. Returned as `1/⌊√(2N+1)⌋`, which is no smaller.
pub fn arcsin_tail_bound(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("tail bound needs N >= 1".into()));
    }
    let r = isqrt_u64(2 * n + 1);
    Ok(Rational::new(BigInt::one(), BigInt::from(r)))
}

struct Split {
    p: BigInt,
    q: BigInt,
    t: BigInt,
}

// Over [a, b): p, q are the products of the ratio numerators/denominators and
// t/q = Σ_{k=a}^{b-1} Π_{j=a}^{k-1} p_j/q_j.
fn split(a: u64, b: u64) -> Split {
    if b - a == 1 {
        let (p, q) = arcsin_ratio(a);
        return Split { t: q.clone(), p, q };
    }
    let m = a + (b - a) / 2;
    let l = split(a, m);
    let r = split(m, b);
    Split {
        t: &l.t * &r.q + &l.p * &r.t,
        p: l.p * r.p,
        q: l.q * r.q,
    }
}

fn ratio_product(a: u64, b: u64) -> (BigInt, BigInt) {
    match b - a {
        0 => (BigInt::one(), BigInt::one()),
        1 => arcsin_ratio(a),
        _ => {
            let m = a + (b - a) / 2;
            let (p1, q1) = ratio_product(a, m);
            let (p2, q2) = ratio_product(m, b);
            (p1 * p2, q1 * q2)
        }
    }
}

/// Exact `Σ_{n=from}^{to} a_n` by binary splitting over the coefficient
/// recurrence. Empty ranges sum to zero.
pub fn arcsin_coeff_sum(from: u64, to: u64) -> Rational {
    if to < from {
        return Rational::zero();
    }
    let (pa, qa) = ratio_product(0, from);
    let s = split(from, to + 1);
    Rational::new(pa * s.t, qa * s.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn arcsin_first_coefficients() {
        assert_eq!(arcsin_coeffs(0).coeffs(), &rats(&[(1, 1)])[..]);
        let a = arcsin_coeffs(3);
        assert_eq!(a.coeffs(), &rats(&[(1, 1), (1, 6), (3, 40), (5, 112)])[..]);
        assert_eq!(arcsin_coeff_factorial(3), rat(5, 112));
        let doubled: Rational = arcsin_coeffs(2).coeffs().iter().sum::<Rational>() * int(2);
        assert_eq!(doubled, int(2) + rat(1, 3) + rat(3, 20));
        assert_eq!(doubled, rat(149, 60));
    }

    #[test]
    fn recurrence_matches_factorials() {
        let a = arcsin_coeffs(50);
        for n in 0..=50u64 {
            assert_eq!(a.coeff(n as usize), arcsin_coeff_factorial(n), "n = {n}");
        }
    }

    #[test]
    fn arcsin_coefficients_positive_decreasing() {
        let a = arcsin_coeffs(60);
        for n in 1..60 {
            assert!(a.coeff(n).is_positive());
            assert!(a.coeff(n + 1) < a.coeff(n));
        }
    }

    #[test]
    fn cos_sin_generators() {
        assert_eq!(
            cos_coeffs(4).coeffs(),
            &rats(&[(1, 1), (0, 1), (-1, 2), (0, 1), (1, 24)])[..]
        );
        assert_eq!(
            sin_coeffs(3).coeffs(),
            &rats(&[(0, 1), (1, 1), (0, 1), (-1, 6)])[..]
        );
        assert_eq!(cos_coeffs(0).coeff(0), int(1));
        assert_eq!(sin_coeffs(7).coeff(7), rat(-1, 5040));
    }

    #[test]
    fn mul_and_compose() {
        let a = Series::from_ints(&[1, 1, 0]).unwrap();
        let b = Series::from_ints(&[1, -1, 0]).unwrap();
        assert_eq!(a.mul(&b), Series::from_ints(&[1, 0, -1]).unwrap());

        let f = Series::from_ints(&[3, -2, 5, 7]).unwrap();
        assert_eq!(f.compose(&Series::identity(3)).unwrap(), f);

        // (x + x²)² = x² + 2x³ + x⁴, truncated at x³
        let outer = Series::from_ints(&[0, 0, 1, 0]).unwrap();
        let inner = Series::from_ints(&[0, 1, 1, 0]).unwrap();
        assert_eq!(
            outer.compose(&inner).unwrap(),
            Series::from_ints(&[0, 0, 1, 2]).unwrap()
        );
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let f = Series::from_ints(&[0, 1]).unwrap();
        let g = Series::from_ints(&[1, 1]).unwrap();
        assert!(matches!(f.compose(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn truncation_is_to_smaller_order() {
        let a = Series::from_ints(&[1, 2, 3, 4]).unwrap();
        let b = Series::from_ints(&[1, 1]).unwrap();
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.add(&b).order(), 1);
    }

    #[test]
    fn revert_arcsin_gives_sin() {
        let asin5 = arcsin_series(5);
        assert_eq!(
            asin5.coeffs(),
            &rats(&[(0, 1), (1, 1), (0, 1), (1, 6), (0, 1), (3, 40)])[..]
        );
        assert_eq!(asin5.revert().unwrap(), sin_coeffs(5));

        let x = Series::identity(6);
        assert_eq!(x.revert().unwrap(), x);

        let asin9 = arcsin_series(9);
        let back = asin9.compose(&asin9.revert().unwrap()).unwrap();
        assert_eq!(back, Series::identity(9));
    }

    #[test]
    fn revert_preconditions() {
        assert!(Series::from_ints(&[1, 1, 0]).unwrap().revert().is_err());
        assert!(Series::from_ints(&[0, 0, 1]).unwrap().revert().is_err());
        assert!(Series::from_ints(&[0]).unwrap().revert().is_err());
    }

    #[test]
    fn triple_angle() {
        let s = sin_coeffs(9);
        let lhs = s
            .compose(&Series::from_ints(&[0, 3, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap())
            .unwrap();
        let rhs = s.scale(&int(3)).sub(&s.pow(3).scale(&int(4)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tail_bound_values() {
        assert_eq!(arcsin_tail_bound(2).unwrap(), rat(1, 2));
        assert_eq!(arcsin_tail_bound(12).unwrap(), rat(1, 5));
        assert_eq!(arcsin_tail_bound(10_000).unwrap(), rat(1, 141));
        assert!(arcsin_tail_bound(0).is_err());
    }

    #[test]
    fn binary_splitting_matches_direct_sum() {
        let a = arcsin_coeffs(40);
        for (from, to) in [(0u64, 0u64), (0, 2), (3, 17), (5, 40), (40, 40), (7, 6)] {
            let direct: Rational = (from..=to).map(|k| a.coeff(k as usize)).sum();
            assert_eq!(arcsin_coeff_sum(from, to), direct, "range {from}..={to}");
        }
        assert_eq!(arcsin_coeff_sum(0, 2), rat(149, 120));
    }

    #[test]
    fn interval_eval_contains_exact() {
        let c = cos_coeffs(10);
        let x = rat(7, 5);
        let exact = c.eval_exact(&x);
        let enc = c.eval_interval(&Interval::point(x), 40);
        assert!(enc.contains(&exact));
        assert!(enc.width() < rat(1, 1 << 30));
    }

    #[test]
    fn display_is_readable() {
        let s = sin_coeffs(3);
        assert_eq!(s.to_string(), "1·x - 1/6·x^3 + O(x^4)");
    }
}
