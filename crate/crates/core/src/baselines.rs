//! Comparison rules: serial dictatorship, round-robin, a utilitarian
//! maximizer and brute-force weighted leximin.

use std::cmp::Ordering;

use crate::error::Result;
use crate::model::{Allocation, Instance, Rational};
use crate::oracle::{owners_to_allocation, scan_assignments, SizeGuard};

/// Agents in index order take every remaining good they value. Goods nobody
/// values stay in the pool.
pub fn serial_dictatorship(inst: &Instance) -> Allocation {
    let mut owner = vec![None; inst.m()];
    for i in 0..inst.n() {
        for (g, slot) in owner.iter_mut().enumerate() {
            if slot.is_none() && inst.values(i, g) {
                *slot = Some(i);
            }
        }
    }
    Allocation::from_owners(inst.n(), &owner)
}

/// Agents pick in the order `1, 2, ..., n, 1, 2, ...` until the goods run
/// out. A picker takes her lowest-indexed remaining valued good, or the
/// lowest-indexed remaining good when she values none of them. Weights are
/// ignored and every good ends up allocated.
pub fn round_robin(inst: &Instance) -> Allocation {
    let mut remaining: Vec<usize> = (0..inst.m()).collect();
    let mut owner = vec![None; inst.m()];
    let mut picker = 0;
    while !remaining.is_empty() {
        let pos = remaining
            .iter()
            .position(|&g| inst.values(picker, g))
            .unwrap_or(0);
        let g = remaining.remove(pos);
        owner[g] = Some(picker);
        picker = (picker + 1) % inst.n();
    }
    Allocation::from_owners(inst.n(), &owner)
}

/// Each valued good goes to the lowest-indexed agent who values it.
pub fn max_utilitarian(inst: &Instance) -> Allocation {
    let owner: Vec<Option<usize>> = (0..inst.m())
        .map(|g| (0..inst.n()).find(|&i| inst.values(i, g)))
        .collect();
    Allocation::from_owners(inst.n(), &owner)
}

/// Ratios `u_i / w_i` sorted ascending.
fn sorted_ratios(utilities: &[u64], weights: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = utilities
        .iter()
        .zip(weights)
        .map(|(&u, w)| Rational::from_integer(u.into()) / w)
        .collect();
    r.sort();
    r
}

/// Among all minimally complete allocations, one whose ascending vector
/// of `u_i / w_i` is lexicographically largest. Ties go to the larger
/// utility vector in index order, then to the first in enumeration order.
pub fn weighted_leximin(inst: &Instance, guard: SizeGuard) -> Result<Allocation> {
    let mut best: Option<(Vec<usize>, Vec<Rational>, Vec<u64>)> = None;
    scan_assignments(inst, guard, |owners, utilities| {
        let ratios = sorted_ratios(utilities, inst.weights());
        let better = match &best {
            None => true,
            Some((_, r, u)) => ratios.cmp(r).then_with(|| utilities.cmp(u)) == Ordering::Greater,
        };
        if better {
            best = Some((owners.to_vec(), ratios, utilities.to_vec()));
        }
    })?;
    let (owners, _, _) = best.expect("the enumeration is never empty");
    Ok(owners_to_allocation(inst, &owners))
}
