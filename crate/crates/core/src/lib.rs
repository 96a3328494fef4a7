//! Maximum weighted Nash welfare with lexicographic tie-breaking for
//! binary valuations and rational weights.
//!
//! [`solve_mwnw_tie`] is the polynomial-time solver. [`brute_force_mwnw_tie`]
//! enumerates allocations for small instances and serves as ground truth.
//! The [`axioms`] module checks monotonicity and strategyproofness
//! properties, and [`baselines`] holds simple rules to compare against.

pub mod axioms;
pub mod baselines;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod model;
pub mod oracle;
pub mod ordering;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};
pub use model::{
    is_minimally_complete, parse_instance, parse_rational, restrict, utility, Allocation, Instance,
    Rational, UtilityVector,
};
pub use oracle::{brute_force_mwnw_tie, SizeGuard};
pub use ordering::{compare_outcomes, NashOrder, OutcomeOrdering};
pub use solver::{add_one_good, solve_mwnw_tie};
