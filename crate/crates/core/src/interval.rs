//! Exact rational intervals.
//!
//! Endpoints are `BigRational`s kept in lowest terms, so arithmetic between
//! intervals is exact. Precision is only ever lost in [`Interval::compress`]
//! and [`Interval::sqrt`], and both round outward: the lower endpoint moves
//! down, the upper endpoint moves up, and the result always contains the
//! exact image of the inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational; canonical (reduced, positive
/// denominator) after every operation.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `2^-bits` as a rational.
pub fn ulp(bits: u32) -> Rational {
    Rational::new(BigInt::one(), pow2(bits))
}

/// Floor of the integer square root, by Newton iteration from above.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // 2^ceil(bits/2) >= sqrt(n); the iterates decrease monotonically to the floor.
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Ceiling of the integer square root.
pub fn isqrt_ceil(n: &BigUint) -> BigUint {
    let r = isqrt(n);
    if &r * &r == *n {
        r
    } else {
        r + 1u32
    }
}

fn floor_scaled(x: &Rational, scale: &BigInt) -> BigInt {
    (x * Rational::from_integer(scale.clone()))
        .floor()
        .to_integer()
}

fn ceil_scaled(x: &Rational, scale: &BigInt) -> BigInt {
    (x * Rational::from_integer(scale.clone()))
        .ceil()
        .to_integer()
}

fn to_biguint(n: BigInt) -> BigUint {
    match n.to_biguint() {
        Some(u) => u,
        None => BigUint::zero(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self { lo, hi })
    }

    /// Internal constructor for endpoints already known to be ordered.
    pub(crate) fn ordered(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "ordered() called with lo > hi");
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Result<Self> {
        Self::new(int(lo), int(hi))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `self ⊇ other`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= Rational::zero() && self.hi >= Rational::zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Self::ordered(b, a)
        } else {
            Self::ordered(a, b)
        }
    }

    pub fn add_rational(&self, k: &Rational) -> Interval {
        Self::ordered(&self.lo + k, &self.hi + k)
    }

    pub fn mul_interval(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Self::ordered(lo, hi)
    }

    pub fn div_interval(&self, other: &Interval) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::DivisionByZero(other.to_string()));
        }
        let recip = Self::ordered(other.hi.recip(), other.lo.recip());
        Ok(self.mul_interval(&recip))
    }

    /// Tight enclosure of `{x² : x ∈ self}`.
    pub fn square(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if !self.lo.is_negative() {
            Self::ordered(a, b)
        } else if !self.hi.is_positive() {
            Self::ordered(b, a)
        } else {
            Self::ordered(Rational::zero(), if a > b { a } else { b })
        }
    }

    /// Outward rounding to dyadic endpoints with at most `bits` fractional bits.
    pub fn compress(&self, bits: u32) -> Interval {
        let scale = pow2(bits);
        let lo = Rational::new(floor_scaled(&self.lo, &scale), scale.clone());
        let hi = Rational::new(ceil_scaled(&self.hi, &scale), scale);
        Self::ordered(lo, hi)
    }

    /// Enclosure of `{√x : x ∈ self}` with dyadic endpoints of `bits`
    /// fractional bits: `lo = ⌊√⌊lo·4^bits⌋⌋ / 2^bits`,
    /// `hi = ⌈√⌈hi·4^bits⌉⌉ / 2^bits`.
    pub fn sqrt(&self, bits: u32) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(Error::NegativeSqrt(self.lo.to_string()));
        }
        let scale = pow2(bits);
        let sq_scale = pow2(2 * bits);
        let lo_n = isqrt(&to_biguint(floor_scaled(&self.lo, &sq_scale)));
        let hi_n = isqrt_ceil(&to_biguint(ceil_scaled(&self.hi, &sq_scale)));
        Ok(Self::ordered(
            Rational::new(BigInt::from_biguint(Sign::Plus, lo_n), scale.clone()),
            Rational::new(BigInt::from_biguint(Sign::Plus, hi_n), scale),
        ))
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval> {
        let lo = if self.lo > other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi < other.hi {
            &self.hi
        } else {
            &other.hi
        };
        if lo > hi {
            return Err(Error::Inconsistent(format!(
                "{self} and {other} are disjoint"
            )));
        }
        Ok(Self::ordered(lo.clone(), hi.clone()))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        let lo = if self.lo < other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi > other.hi {
            &self.hi
        } else {
            &other.hi
        };
        Self::ordered(lo.clone(), hi.clone())
    }
}

pub fn interval_arith(op: ArithOp, a: &Interval, b: &Interval) -> Result<Interval> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.div_interval(b)?,
    })
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::ordered(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::ordered(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        self.mul_interval(rhs)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::ordered(-&self.hi, -&self.lo)
    }
}

/// `⌈log₂(1/w)⌉` for a positive rational `w`, clamped at 0.
pub fn bits_for_width(w: &Rational) -> u32 {
    if !w.is_positive() {
        return 0;
    }
    let mut bits = 0u32;
    let mut scaled = w.clone();
    while scaled < Rational::one() {
        scaled *= int(2);
        bits += 1;
    }
    bits
}

/// Integer `⌊√n⌋` for machine-sized `n`, exact.
pub fn isqrt_u64(n: u64) -> u64 {
    let r = isqrt(&BigUint::from(n));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// `gcd(|num|, den) == 1 && den > 0`; everything built here satisfies it.
pub fn is_canonical(x: &Rational) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}
