//! Exact computational toolkit for finite set families: minimal-cover
//! (transversal) enumeration, covering numbers, exact rational cover-weight
//! functionals, digraph-based family constructions, kernel decompositions,
//! degree-moment machinery, spread probes and chain encodings — everything
//! evaluated in exact arithmetic unless a bound is genuinely transcendental,
//! in which case an explicit slack is carried.

pub mod error;
pub mod set;
pub mod family;
pub mod weight;
pub mod format;
pub mod transversal;
pub mod inequalities;
pub mod constructions;
pub mod search;
pub mod ledger;
pub mod kernels;
pub mod moments;
pub mod spread;
pub mod encoding;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use family::SetFamily;
pub use set::{ElementSet, GroundSet, MAX_GROUND};
pub use transversal::{CoverDistribution, CoverFamily, EnumerationLimits};
pub use weight::{ApproxWeight, ExactWeight, Rational};
