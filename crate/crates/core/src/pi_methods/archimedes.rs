use std::time::Instant;

use super::{Enclosure, Method};
use crate::error::{Error, Result};
use crate::interval::{int, Interval, Rational};

/// Most doublings supported; the side count `4·2^k` must fit in a `u64`.
pub const MAX_DOUBLINGS: u32 = 60;

fn check_doublings(k: u32) -> Result<()> {
    if k > MAX_DOUBLINGS {
        return Err(Error::Domain(format!(
            "at most {MAX_DOUBLINGS} doublings are supported, got {k}"
        )));
    }
    Ok(())
}

/// Semiperimeters of the regular `sides`-gons inscribed in and
/// circumscribed about the unit circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygons {
    pub sides: u64,
    pub inscribed: Interval,
    pub circumscribed: Interval,
}

impl Polygons {
    fn squares(bits: u32) -> Result<Self> {
        // inscribed square has side √2, circumscribed square side 2
        Ok(Self {
            sides: 4,
            inscribed: Interval::point(int(8)).sqrt(bits)?,
            circumscribed: Interval::point(int(4)),
        })
    }

    /// `t' = 2st/(s+t)`, then `s' = √(s·t')`. The harmonic mean is increasing
    /// in both arguments, so it is evaluated endpoint-wise.
    fn doubled(&self, bits: u32) -> Result<Self> {
        let s = &self.inscribed;
        let t = &self.circumscribed;
        let hm = |a: &Rational, b: &Rational| int(2) * a * b / (a + b);
        let t_next = Interval::new(hm(s.lo(), t.lo()), hm(s.hi(), t.hi()))?.compress(bits);
        let s_next = (s * &t_next).sqrt(bits)?;
        Ok(Self {
            sides: self.sides * 2,
            inscribed: s_next,
            circumscribed: t_next,
        })
    }

    /// `[s.lo, t.hi]`.
    pub fn enclosure(&self) -> Interval {
        Interval::ordered(self.inscribed.lo().clone(), self.circumscribed.hi().clone())
    }
}

/// Squares followed by `k` doublings.
pub fn archimedes_trajectory(k: u32, bits: u32) -> Result<Vec<Polygons>> {
    check_doublings(k)?;
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut p = Polygons::squares(bits)?;
    for _ in 0..k {
        let next = p.doubled(bits)?;
        out.push(p);
        p = next;
    }
    out.push(p);
    Ok(out)
}

pub fn pi_archimedes(k: u32, bits: u32) -> Result<Enclosure> {
    check_doublings(k)?;
    let start = Instant::now();
    let mut p = Polygons::squares(bits)?;
    for _ in 0..k {
        p = p.doubled(bits)?;
    }
    Ok(Enclosure {
        method: Method::Archimedes,
        value: p.enclosure(),
        work: k as u64,
        elapsed: start.elapsed(),
        flagged: false,
    })
}

/// Doubles until the enclosure is no wider than `target`; flagged if the
/// doubling cap or the working precision stops it first.
pub fn pi_archimedes_to_width(target: &Rational, bits: u32) -> Result<Enclosure> {
    if *target <= int(0) {
        return Err(Error::Domain("target width must be positive".into()));
    }
    let start = Instant::now();
    let mut p = Polygons::squares(bits)?;
    let mut k = 0u32;
    let mut flagged = false;
    while p.enclosure().width() > *target {
        if k >= MAX_DOUBLINGS {
            flagged = true;
            break;
        }
        let next = p.doubled(bits)?;
        if next.enclosure().width() >= p.enclosure().width() {
            // rounding has overtaken the geometric contraction
            flagged = true;
            break;
        }
        p = next;
        k += 1;
    }
    Ok(Enclosure {
        method: Method::Archimedes,
        value: p.enclosure(),
        work: k as u64,
        elapsed: start.elapsed(),
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn squares() {
        let e = pi_archimedes(0, 32).unwrap();
        // 2√2 = 2.828427…
        assert!(e.value.lo() <= &rat(28285, 10000));
        assert!(e.value.lo() >= &rat(28284, 10000));
        assert!(e.value.lo() * e.value.lo() <= int(8));
        assert_eq!(e.value.hi(), &int(4));
    }

    #[test]
    fn octagon_contains_oracle() {
        // t₁ = 8√2 − 8 ≈ 3.3137085, s₁ = √(32 − 16√2) ≈ 3.0614675
        let e = pi_archimedes(1, 48).unwrap();
        assert!(e.value.lo() <= &rat(30615, 10000));
        assert!(e.value.hi() >= &rat(33137, 10000));
        assert!(e.value.lo() >= &rat(30614, 10000));
        assert!(e.value.hi() <= &rat(33138, 10000));
    }

    #[test]
    fn strict_squeeze() {
        let traj = archimedes_trajectory(20, 80).unwrap();
        for w in traj.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            assert!(a.inscribed.hi() < b.inscribed.lo());
            assert!(b.inscribed.hi() < b.circumscribed.lo());
            assert!(b.circumscribed.hi() < a.circumscribed.lo());
        }
        assert_eq!(traj[20].sides, 4 << 20);
        assert!(traj[20].enclosure().width() <= rat(1, 100_000_000_000));
    }

    #[test]
    fn to_width() {
        let e = pi_archimedes_to_width(&rat(1, 1000), 48).unwrap();
        assert!(e.width() <= rat(1, 1000));
        assert!(!e.flagged);
        let coarse = pi_archimedes_to_width(&rat(1, 1_000_000_000_000), 8).unwrap();
        assert!(coarse.flagged);
        assert!(pi_archimedes(MAX_DOUBLINGS + 1, 64).is_err());
    }
}
