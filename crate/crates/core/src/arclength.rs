//! The quarter arc of the unit circle, `y = √(1 − x²)` on `[0, 1]`.
//!
//! [`inscribed_polyline`] gives lower-bound witnesses for its length using
//! uniformly spaced abscissae, so only rational arithmetic and square roots
//! are involved. [`demo_circularity`] lays out the circular textbook chain
//! and the grounded constructions that replace it.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::Result;
use crate::interval::{int, Interval, Rational};
use crate::powerseries::arcsin_coeffs;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolylineResult {
    pub segments: u64,
    /// Contains the exact polyline length, which is below the arc length.
    pub length: Interval,
}

/// `(x_i, y_i)` for `x_i = i/n`, with `y_i` enclosing `√(1 − x_i²)`.
pub fn polyline_vertices(n: u64, bits: u32) -> Result<Vec<(Rational, Interval)>> {
    let n = n.max(1);
    (0..=n)
        .map(|i| {
            let x = Rational::new(i.into(), n.into());
            let y = Interval::point(int(1) - &x * &x).sqrt(bits)?;
            Ok((x, y))
        })
        .collect()
}

pub fn inscribed_polyline(n: u64, bits: u32) -> Result<PolylineResult> {
    if n == 0 {
        return Err(crate::error::Error::Domain(
            "a polyline needs at least one segment".into(),
        ));
    }
    let vertices = polyline_vertices(n, bits)?;
    let dx2 = Rational::new(1.into(), (n * n).into());
    let mut length = Interval::point(Rational::zero());
    for w in vertices.windows(2) {
        let dy = &w[0].1 - &w[1].1;
        let seg = dy.square().add_rational(&dx2).sqrt(bits)?;
        length = (&length + &seg).compress(bits);
    }
    Ok(PolylineResult {
        segments: n,
        length,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainNode {
    pub concept: &'static str,
    pub definition: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairStep {
    pub method: &'static str,
    pub construction: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularityReport {
    pub chain: Vec<ChainNode>,
    /// `(from, to)`, 1-based node indices of the edge that closes the cycle.
    pub cycle_edge: (usize, usize),
    pub parametric: Vec<&'static str>,
    pub repair: Vec<RepairStep>,
    /// `pi = 2 M(1) = 2 + 1/3 + 3/20 + ...`, with terms computed from the series.
    pub repaired_definition: String,
}

pub const CHAIN_MARKER: &str = "pi -> circle length -> arcsin -> pi";

pub fn demo_circularity() -> CircularityReport {
    let chain = vec![
        ChainNode {
            concept: "pi",
            definition: "pi := (length of the unit circle) / 2",
        },
        ChainNode {
            concept: "circle length",
            definition:
                "length = 4 * int_0^1 sqrt(1 + x^2/(1 - x^2)) dx = 4 * int_0^1 dx/sqrt(1 - x^2)",
        },
        ChainNode {
            concept: "arcsin",
            definition: "int_0^1 dx/sqrt(1 - x^2) = arcsin(1) - arcsin(0) = arcsin(1)",
        },
        ChainNode {
            concept: "pi",
            definition: "arcsin(1) := pi/2",
        },
    ];
    let parametric = vec![
        "x = cos t, y = sin t, t from 0 to 2 pi",
        "length = int_0^{2 pi} sqrt((dx/dt)^2 + (dy/dt)^2) dt",
        "with these, the integrand is identically 1: int_0^{2 pi} 1 dt = 2 pi",
        "the limits of integration already need pi, so nothing is defined",
    ];
    let repair = vec![
        RepairStep {
            method: "arcsin",
            construction:
                "pi = 2 M(1), M(x) = sum_n a_n x^(2n+1), tail after N terms <= 1/floor(sqrt(2N+1))",
        },
        RepairStep {
            method: "cosroot",
            construction:
                "pi/2 = smallest positive zero of the cos Maclaurin series, bracketed in [1, 2]",
        },
        RepairStep {
            method: "archimedes",
            construction: "s_k < pi < t_k, inscribed/circumscribed polygons doubled from squares",
        },
        RepairStep {
            method: "quadrature",
            construction:
                "pi/2 = int_0^1 2/(1 + t^2) dt after x = 2t/(1 + t^2), monotone Riemann bounds",
        },
        RepairStep {
            method: "sin",
            construction: "sin := compositional inverse of M (series reversion)",
        },
    ];
    let terms: Vec<String> = arcsin_coeffs(2)
        .coeffs()
        .iter()
        .map(|a| (a * int(2)).to_string())
        .collect();
    CircularityReport {
        chain,
        cycle_edge: (4, 1),
        parametric,
        repair,
        repaired_definition: format!("pi = 2 M(1) = {} + ...", terms.join(" + ")),
    }
}

impl CircularityReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("CYCLE\n");
        for (i, node) in self.chain.iter().enumerate() {
            let _ = writeln!(s, "  [{}] {:<13} {}", i + 1, node.concept, node.definition);
        }
        let _ = writeln!(s, "  {CHAIN_MARKER}");
        let (from, to) = self.cycle_edge;
        let _ = writeln!(
            s,
            "  edge [{from}] -> [{to}] closes the cycle: pi is defined through pi"
        );
        s.push_str("\nPARAMETRIC-DEAD-END\n");
        for line in &self.parametric {
            let _ = writeln!(s, "  {line}");
        }
        s.push_str("\nREPAIR\n");
        for step in &self.repair {
            let _ = writeln!(s, "  {:<11} {}", step.method, step.construction);
        }
        let _ = writeln!(s, "  {}", self.repaired_definition);
        s
    }

    /// Flat `key=value` lines, one chain node per line.
    pub fn to_machine(&self) -> String {
        let mut s = String::new();
        for (i, node) in self.chain.iter().enumerate() {
            let _ = writeln!(s, "node.{}={} | {}", i + 1, node.concept, node.definition);
        }
        let (from, to) = self.cycle_edge;
        let _ = writeln!(s, "edge.cycle={from}->{to}");
        let _ = writeln!(s, "chain={CHAIN_MARKER}");
        for (i, line) in self.parametric.iter().enumerate() {
            let _ = writeln!(s, "dead_end.{}={line}", i + 1);
        }
        for step in &self.repair {
            let _ = writeln!(s, "repair.{}={}", step.method, step.construction);
        }
        let _ = writeln!(s, "repair.result={}", self.repaired_definition);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn single_chord() {
        let p = inscribed_polyline(1, 40).unwrap();
        assert!(p.length.lo() * p.length.lo() <= int(2));
        assert!(p.length.hi() * p.length.hi() >= int(2));
        assert!(p.length.width() < rat(1, 1 << 30));
    }

    #[test]
    fn two_chords() {
        // chords through (1/2, √3/2): √(1/4 + (1 − √3/2)²) + 1 ≈ 0.5176 + 1
        let p = inscribed_polyline(2, 40).unwrap();
        assert!(p.length.lo() > &rat(15176, 10000) && p.length.hi() < &rat(15177, 10000));
    }

    #[test]
    fn vertices_valid() {
        for (x, y) in polyline_vertices(16, 40).unwrap() {
            assert!(Interval::from_ints(0, 1).unwrap().contains_interval(&y));
            let r = y.square().add_rational(&(&x * &x));
            assert!(r.contains(&int(1)));
        }
    }

    #[test]
    fn zero_segments_rejected() {
        assert!(inscribed_polyline(0, 16).is_err());
    }

    #[test]
    fn report_sections() {
        let r = demo_circularity();
        let text = r.to_text();
        assert!(text.contains(CHAIN_MARKER));
        let cycle = text.find("CYCLE").unwrap();
        let dead = text.find("PARAMETRIC-DEAD-END").unwrap();
        let repair = text.find("REPAIR").unwrap();
        assert!(cycle < dead && dead < repair);
        assert!(text
            .trim_end()
            .ends_with("pi = 2 M(1) = 2 + 1/3 + 3/20 + ..."));

        let machine = r.to_machine();
        assert_eq!(
            machine.lines().filter(|l| l.starts_with("node.")).count(),
            4
        );
        assert_eq!(
            machine.lines().filter(|l| l.starts_with("edge.")).count(),
            1
        );
        assert!(machine
            .trim_end()
            .ends_with("repair.result=pi = 2 M(1) = 2 + 1/3 + 3/20 + ..."));
    }
}
