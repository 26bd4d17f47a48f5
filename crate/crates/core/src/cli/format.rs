//! Outward-rounded decimal rendering and the row/JSON shapes the CLI prints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interval::{Interval, Rational};
use crate::pi_methods::Enclosure;

/// Upper limit on decimals considered when looking for agreement.
pub const MAX_DECIMALS: usize = 60;

fn pow10(d: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), d)
}

fn render_scaled(n: &BigInt, d: usize) -> String {
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    let body = if d == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = d + 1);
        let (int_part, frac) = padded.split_at(padded.len() - d);
        format!("{int_part}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `x` rounded down to `d` decimals.
pub fn decimal_floor(x: &Rational, d: usize) -> String {
    let scaled = (x * Rational::from_integer(pow10(d))).floor().to_integer();
    render_scaled(&scaled, d)
}

/// `x` rounded up to `d` decimals.
pub fn decimal_ceil(x: &Rational, d: usize) -> String {
    let scaled = (x * Rational::from_integer(pow10(d))).ceil().to_integer();
    render_scaled(&scaled, d)
}

/// Largest `d <= MAX_DECIMALS` with `⌊lo·10^d⌋ = ⌊hi·10^d⌋`, so every point
/// of the interval shares the first `d` decimals. `None` if even the integer
/// parts differ.
pub fn agreed_decimals(iv: &Interval) -> Option<usize> {
    let mut best = None;
    for d in 0..=MAX_DECIMALS {
        let s = Rational::from_integer(pow10(d));
        let a = (iv.lo() * &s).floor();
        let b = (iv.hi() * &s).floor();
        if a != b {
            break;
        }
        best = Some(d);
    }
    best
}

/// The decimal prefix shared by every point of `iv` (empty when none).
pub fn guaranteed_digits(iv: &Interval) -> String {
    match agreed_decimals(iv) {
        Some(d) => decimal_floor(iv.lo(), d),
        None => String::new(),
    }
}

/// Decimals to print: two past the agreement prefix.
pub fn print_decimals(iv: &Interval) -> usize {
    agreed_decimals(iv).map_or(2, |d| d + 2)
}

/// Width rounded up to three significant digits, as `m.mme±x`.
pub fn width_ceil(w: &Rational) -> String {
    if w.is_zero() {
        return "0".to_string();
    }
    // find e with 10^e <= w < 10^(e+1)
    let ten = Rational::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut scaled = w.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < Rational::from_integer(BigInt::from(1)) {
        scaled *= &ten;
        e -= 1;
    }
    let mut m = (scaled * Rational::from_integer(BigInt::from(100)))
        .ceil()
        .to_integer();
    if m >= BigInt::from(1000) {
        m = BigInt::from(100);
        e += 1;
    }
    let (q, r) = m.div_rem(&BigInt::from(100));
    format!("{q}.{r:0>2}e{e}")
}

/// Parses a decimal in `[+-]digits[.digits][e[+-]digits]` or `num/den` form
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Usage(format!("cannot parse {s:?} as a number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.trim_start_matches(['+', '-']).is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = format!("{int_part}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let scale = pow10(shift.unsigned_abs() as usize);
    Ok(if shift >= 0 {
        Rational::from_integer(n * scale)
    } else {
        Rational::new(n, scale)
    })
}

pub fn exact_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// One line of a convergence table, with outward-rounded decimals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub method: String,
    pub work: u64,
    pub lo: String,
    pub hi: String,
    pub width: String,
}

impl ReportRow {
    pub fn from_interval(method: &str, work: u64, iv: &Interval) -> Self {
        let d = print_decimals(iv);
        Self {
            method: method.to_string(),
            work,
            lo: decimal_floor(iv.lo(), d),
            hi: decimal_ceil(iv.hi(), d),
            width: width_ceil(&iv.width()),
        }
    }

    pub fn from_enclosure(e: &Enclosure) -> Self {
        Self::from_interval(e.method.name(), e.work, &e.value)
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.method, self.work, self.lo, self.hi, self.width
        )
    }
}

pub const CSV_HEADER: &str = "method,work,lo,hi,width";

fn endpoint_json(decimal: String, exact: &Rational) -> Value {
    json!({ "decimal": decimal, "exact": exact_string(exact) })
}

/// `{method, lo, hi, width, work, elapsed_ms}`; `lo`/`hi` carry both an
/// outward-rounded decimal and the exact `num/den` value.
pub fn enclosure_json(e: &Enclosure) -> Value {
    let row = ReportRow::from_enclosure(e);
    json!({
        "method": e.method.name(),
        "lo": endpoint_json(row.lo, e.value.lo()),
        "hi": endpoint_json(row.hi, e.value.hi()),
        "width": row.width,
        "work": e.work,
        "elapsed_ms": e.elapsed.as_secs_f64() * 1000.0,
    })
}

pub fn interval_json(iv: &Interval) -> Value {
    let row = ReportRow::from_interval("intersection", 0, iv);
    json!({
        "lo": endpoint_json(row.lo, iv.lo()),
        "hi": endpoint_json(row.hi, iv.hi()),
        "width": row.width,
    })
}
