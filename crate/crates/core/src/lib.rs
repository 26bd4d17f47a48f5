//! Guaranteed enclosures of π built without circular definitions.
//!
//! Everything rests on exact rational intervals ([`interval`]). On top of
//! them sit truncated power series ([`powerseries`]) for arcsin, sin and cos,
//! four independent π constructions ([`pi_methods`]), inscribed-polyline
//! witnesses for the quarter-arc length ([`arclength`]), and the command-line
//! front end ([`cli`]).

pub mod arclength;
pub mod cli;
pub mod error;
pub mod interval;
pub mod pi_methods;
pub mod powerseries;

pub use error::{Error, Result};
pub use interval::{Interval, Rational};
pub use pi_methods::{cross_check, Enclosure, Method};
