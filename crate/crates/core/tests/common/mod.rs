#![allow(dead_code)]

use mwnw::{parse_rational, Instance, Rational};
use proptest::prelude::*;

pub const WEIGHTS: [&str; 5] = ["1", "1/2", "3/2", "2", "3"];

pub fn weight(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

/// Instances with `n` in `agents`, `m` in `goods` and weights from
/// [`WEIGHTS`].
pub fn instances(
    agents: std::ops::RangeInclusive<usize>,
    goods: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Instance> {
    (agents, goods).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(prop::sample::select(WEIGHTS.to_vec()), n),
            prop::collection::vec(prop::collection::vec(0u8..=1, m), n),
        )
            .prop_map(|(w, rows)| {
                Instance::from_matrix(w.iter().map(|s| weight(s)).collect(), &rows).unwrap()
            })
    })
}

pub fn unit_instances(
    agents: std::ops::RangeInclusive<usize>,
    goods: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Instance> {
    (agents, goods).prop_flat_map(|(n, m)| {
        prop::collection::vec(prop::collection::vec(0u8..=1, m), n)
            .prop_map(|rows| Instance::unweighted(&rows).unwrap())
    })
}
