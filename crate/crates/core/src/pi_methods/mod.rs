//! Four independent producers of guaranteed enclosures of π.
//!
//! | method       | construction                                         | work unit       |
//! |--------------|------------------------------------------------------|-----------------|
//! | `arcsin`     | `2·Σ a_n` at `x = 1` plus a rational tail bound      | series terms    |
//! | `cosroot`    | bisection for the first positive zero of cos         | bisection steps |
//! | `archimedes` | inscribed/circumscribed polygon doubling from squares | doublings       |
//! | `quadrature` | monotone Riemann sums of `2/(1+t²)` on `[0, 1]`      | subintervals    |
//!
//! None of them consults a stored value of π, and none needs a trigonometric
//! fact that is itself defined through π. [`cross_check`] intersects their
//! results; an empty intersection means one of the soundness arguments is
//! broken.

mod archimedes;
mod arcsin;
mod cosroot;
mod quadrature;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::interval::{bits_for_width, int, Interval, Rational};

pub use archimedes::{
    archimedes_trajectory, pi_archimedes, pi_archimedes_to_width, Polygons, MAX_DOUBLINGS,
};
pub use arcsin::{arcsin_bounds_exact, pi_arcsin, pi_arcsin_schedule};
pub use cosroot::{
    bisect_cos_root, certify_cos_sign, certify_root_bracket, cos_eval_interval, pi_cosroot,
    pi_cosroot_steps, sin_eval_interval, Bisection, RootCertificate, SignCertificate,
    MAX_COS_ORDER,
};
pub use quadrature::{pi_quadrature, pi_quadrature_exact, riemann_bounds_exact};

/// Guard bits added on top of the bits a requested width needs.
pub const GUARD_BITS: u32 = 32;

/// Budget cap for the slowly converging methods when `--method all` maps a
/// single target width onto every method.
pub const ALL_TERMS_CAP: u64 = 10_000;
pub const ALL_SUBINTERVALS_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Arcsin,
    Cosroot,
    Archimedes,
    Quadrature,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Arcsin,
        Method::Cosroot,
        Method::Archimedes,
        Method::Quadrature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Arcsin => "arcsin",
            Method::Cosroot => "cosroot",
            Method::Archimedes => "archimedes",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown method {s:?}")))
    }
}

/// A guaranteed interval containing π, with the work that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub method: Method,
    pub value: Interval,
    /// Terms, bisection steps, doublings or subintervals, depending on `method`.
    pub work: u64,
    pub elapsed: Duration,
    /// Set when the method stopped before reaching its requested width; the
    /// value is still a valid enclosure.
    pub flagged: bool,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        self.value.width()
    }
}

/// What decides when a method stops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Budget {
    Terms(u64),
    TargetWidth(Rational),
    Doublings(u32),
    Subintervals(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodConfig {
    pub budget: Budget,
    /// Working precision in fractional bits; derived from the budget when absent.
    pub bits: Option<u32>,
}

impl MethodConfig {
    pub fn new(budget: Budget) -> Self {
        Self { budget, bits: None }
    }

    pub fn with_bits(budget: Budget, bits: u32) -> Self {
        Self {
            budget,
            bits: Some(bits),
        }
    }
}

/// `⌈log₂(1/w)⌉ + GUARD_BITS`.
pub fn default_bits(target_width: &Rational) -> u32 {
    bits_for_width(target_width) + GUARD_BITS
}

/// Working precision implied by a budget: the width the method is expected
/// to reach, plus guard bits.
pub fn bits_for_budget(budget: &Budget) -> u32 {
    match budget {
        Budget::TargetWidth(w) => default_bits(w),
        Budget::Terms(n) => {
            let r = crate::interval::isqrt_u64(2 * n + 1).max(1);
            default_bits(&Rational::new(2.into(), r.into()))
        }
        Budget::Doublings(k) => 2 * k + GUARD_BITS,
        Budget::Subintervals(n) => default_bits(&Rational::new(2.into(), (*n).max(1).into())),
    }
}

/// Runs one method under a budget of the matching kind.
pub fn run(method: Method, config: &MethodConfig) -> Result<Enclosure> {
    let bits = config
        .bits
        .unwrap_or_else(|| bits_for_budget(&config.budget));
    match (method, &config.budget) {
        (Method::Arcsin, Budget::Terms(n)) => pi_arcsin(*n, bits),
        (Method::Cosroot, Budget::TargetWidth(w)) => pi_cosroot(w, bits),
        (Method::Archimedes, Budget::Doublings(k)) => pi_archimedes(*k, bits),
        (Method::Quadrature, Budget::Subintervals(n)) => pi_quadrature(*n, bits),
        (m, b) => Err(Error::Usage(format!(
            "method {m} does not take a {} budget",
            budget_kind(b)
        ))),
    }
}

pub fn budget_kind(b: &Budget) -> &'static str {
    match b {
        Budget::Terms(_) => "terms",
        Budget::TargetWidth(_) => "target-width",
        Budget::Doublings(_) => "doublings",
        Budget::Subintervals(_) => "subintervals",
    }
}

/// Terms `N` with `2/⌊√(2N+1)⌋ <= w`, capped.
fn arcsin_terms_for_width(w: &Rational, cap: u64) -> u64 {
    // need ⌊√(2N+1)⌋ >= r where r = ⌈2/w⌉
    let r = (Rational::from_integer(2.into()) / w).ceil().to_integer();
    let Ok(r) = u64::try_from(r) else { return cap };
    let Some(sq) = r.checked_mul(r) else {
        return cap;
    };
    sq.saturating_sub(1).div_ceil(2).min(cap).max(1)
}

fn subintervals_for_width(w: &Rational, cap: u64) -> u64 {
    let n = (Rational::from_integer(2.into()) / w).ceil().to_integer();
    u64::try_from(n).unwrap_or(cap).min(cap).max(1)
}

/// Runs all four methods for one target width, concurrently, in the fixed
/// order of [`Method::ALL`]. Arcsin and quadrature budgets are capped at
/// [`ALL_TERMS_CAP`] and [`ALL_SUBINTERVALS_CAP`]; they are flagged when the
/// cap is what stopped them.
pub fn run_all(target_width: &Rational, bits: Option<u32>) -> Result<Vec<Enclosure>> {
    if !target_width.is_positive() {
        return Err(Error::Domain("target width must be positive".into()));
    }
    let bits = bits.unwrap_or_else(|| default_bits(target_width));
    let terms = arcsin_terms_for_width(target_width, ALL_TERMS_CAP);
    let subintervals = subintervals_for_width(target_width, ALL_SUBINTERVALS_CAP);

    let results: Vec<Result<Enclosure>> = std::thread::scope(|scope| {
        let handles = [
            scope.spawn(|| pi_arcsin(terms, bits)),
            scope.spawn(|| pi_cosroot(target_width, bits)),
            scope.spawn(|| pi_archimedes_to_width(target_width, bits)),
            scope.spawn(|| pi_quadrature(subintervals, bits)),
        ];
        handles
            .into_iter()
            .map(|h| match h.join() {
                Ok(r) => r,
                Err(_) => Err(Error::Domain("method thread panicked".into())),
            })
            .collect()
    });
    let mut out = Vec::with_capacity(4);
    for r in results {
        let mut e = r?;
        if e.width() > *target_width {
            e.flagged = true;
        }
        out.push(e);
    }
    Ok(out)
}

/// Intersection of every enclosure. Empty input and empty intersection are
/// both errors; the latter means some method's bound is unsound.
pub fn cross_check(enclosures: &[Enclosure]) -> Result<Interval> {
    let (first, rest) = enclosures
        .split_first()
        .ok_or_else(|| Error::Domain("cross_check needs at least one enclosure".into()))?;
    let mut acc = first.value.clone();
    for e in rest {
        acc = acc.intersect(&e.value).map_err(|_| {
            Error::Inconsistent(format!(
                "{} enclosure {} misses the running intersection {}",
                e.method, e.value, acc
            ))
        })?;
    }
    Ok(acc)
}

/// Repeatedly doubles a method's work until `budget` of wall-clock time has
/// been spent, and returns the last (tightest) enclosure.
pub fn run_for_duration(method: Method, budget: Duration) -> Result<Enclosure> {
    let start = Instant::now();
    let mut work: u64 = 1;
    let mut last = None;
    while last.is_none() || start.elapsed() < budget {
        let e = match method {
            Method::Arcsin => pi_arcsin(work, bits_for_budget(&Budget::Terms(work)))?,
            Method::Cosroot => pi_cosroot_steps(work, work as u32 + GUARD_BITS)?,
            Method::Archimedes => {
                let k = work.min(MAX_DOUBLINGS as u64) as u32;
                pi_archimedes(k, bits_for_budget(&Budget::Doublings(k)))?
            }
            Method::Quadrature => {
                pi_quadrature(work, bits_for_budget(&Budget::Subintervals(work)))?
            }
        };
        let capped = method == Method::Archimedes && work >= MAX_DOUBLINGS as u64;
        last = Some(e);
        if capped {
            break;
        }
        work *= 2;
    }
    let mut e = last.ok_or_else(|| Error::Domain("no run completed".into()))?;
    e.elapsed = start.elapsed();
    Ok(e)
}

/// `[2·lo, 2·hi]`, used by the methods that enclose π/2.
pub(crate) fn doubled(x: &Interval) -> Interval {
    x.scale(&int(2))
}
