//! Small hand-built instances with known outcomes. They back the golden
//! tests and the `reproduce-paper` command, so they need no files on disk.

use crate::model::{parse_rational, Instance};

fn build(weights: &[&str], rows: &[Vec<u8>]) -> Instance {
    let weights = weights
        .iter()
        .map(|w| parse_rational(w).expect("literal weight"))
        .collect();
    Instance::from_matrix(weights, rows).expect("literal instance")
}

/// Three unit-weight agents over four goods in a path: agent 1 likes
/// g1,g2, agent 2 likes g2,g3, agent 3 likes g3,g4.
pub fn coalition_counterexample() -> Instance {
    build(
        &["1", "1", "1"],
        &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]],
    )
}

/// The same instance after agent 2 hides g3 and agent 3 claims g2.
pub fn coalition_misreport() -> Instance {
    build(
        &["1", "1", "1"],
        &[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 1, 1, 1]],
    )
}

/// Two goods where round-robin hands agent 1 the only good agent 2 wants.
pub fn round_robin_inefficiency() -> Instance {
    build(&["1", "1"], &[vec![1, 1], vec![1, 0]])
}

/// Six goods where agent 1 profits from hiding g2 under round-robin.
pub fn round_robin_truthful() -> Instance {
    build(
        &["1", "1"],
        &[vec![1, 1, 1, 1, 0, 0], vec![0, 0, 1, 1, 1, 1]],
    )
}

pub fn round_robin_misreport() -> Instance {
    build(
        &["1", "1"],
        &[vec![1, 0, 1, 1, 0, 0], vec![0, 0, 1, 1, 1, 1]],
    )
}

/// Every agent values every good.
pub fn universally_valued() -> Instance {
    build(
        &["1", "1", "1"],
        &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]],
    )
}

/// One good wanted by two agents of weights 2 and 1.
pub fn unequal_weights_single_good() -> Instance {
    build(&["2", "1"], &[vec![1], vec![1]])
}
