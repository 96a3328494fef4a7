//! Exhaustive ground truth for small instances.
//!
//! Every valued good is assigned to one of the `n` agents in every possible
//! way; unvalued goods always stay in the pool. The enumeration follows the
//! definition of MWNW^tie directly and does not assume that agents only
//! receive goods they value.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, UtilityVector};
use crate::ordering::NashOrder;

/// Upper bound on `n^(valued goods)` for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_search_space: u64,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_search_space: 10_000_000,
        }
    }
}

impl SizeGuard {
    pub fn new(max_search_space: u64) -> Self {
        SizeGuard { max_search_space }
    }

    /// Number of assignments of the valued goods of `inst`, or an error when
    /// it exceeds the limit.
    pub fn check(&self, inst: &Instance) -> Result<u64> {
        let k = inst.valued_goods().len() as u32;
        let size = (inst.n() as u64).checked_pow(k);
        match size {
            Some(s) if s <= self.max_search_space => Ok(s),
            _ => Err(Error::SearchSpaceExceeded {
                size: format!("{}^{}", inst.n(), k),
                limit: self.max_search_space,
            }),
        }
    }
}

/// Lazily yields every assignment of valued goods to agents. The first
/// valued good is the most significant digit, so assignments come out in
/// lexicographic order of their owner tuples.
#[derive(Debug, Clone)]
pub struct AllocationIter {
    n: usize,
    m: usize,
    valued: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl AllocationIter {
    fn new(inst: &Instance) -> Self {
        let valued = inst.valued_goods();
        AllocationIter {
            n: inst.n(),
            m: inst.m(),
            digits: vec![0; valued.len()],
            valued,
            done: false,
        }
    }

    /// Owner of each valued good, in the order of [`Instance::valued_goods`].
    fn current(&self) -> &[usize] {
        &self.digits
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.n {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }

    fn to_allocation(&self) -> Allocation {
        let mut owner = vec![None; self.m];
        for (&g, &a) in self.valued.iter().zip(&self.digits) {
            owner[g] = Some(a);
        }
        Allocation::from_owners(self.n, &owner)
    }
}

impl Iterator for AllocationIter {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        if self.done {
            return None;
        }
        let out = self.to_allocation();
        self.advance();
        Some(out)
    }
}

pub fn enumerate_allocations(inst: &Instance, guard: SizeGuard) -> Result<AllocationIter> {
    guard.check(inst)?;
    Ok(AllocationIter::new(inst))
}

/// Calls `f(owners, utilities)` for every assignment without materializing
/// allocations. `owners[k]` is the owner of the `k`-th valued good.
pub(crate) fn scan_assignments<F>(inst: &Instance, guard: SizeGuard, mut f: F) -> Result<()>
where
    F: FnMut(&[usize], &[u64]),
{
    guard.check(inst)?;
    let mut it = AllocationIter::new(inst);
    let mut utilities = vec![0u64; inst.n()];
    while !it.done {
        utilities.iter_mut().for_each(|u| *u = 0);
        for (&g, &a) in it.valued.iter().zip(it.current()) {
            if inst.values(a, g) {
                utilities[a] += 1;
            }
        }
        f(it.current(), &utilities);
        it.advance();
    }
    Ok(())
}

pub(crate) fn owners_to_allocation(inst: &Instance, owners: &[usize]) -> Allocation {
    let mut owner = vec![None; inst.m()];
    for (g, &a) in inst.valued_goods().into_iter().zip(owners) {
        owner[g] = Some(a);
    }
    Allocation::from_owners(inst.n(), &owner)
}

/// The MWNW^tie utility vector by exhaustive search, with the first
/// allocation in enumeration order that attains it.
pub fn brute_force_mwnw_tie(
    inst: &Instance,
    guard: SizeGuard,
) -> Result<(Allocation, UtilityVector)> {
    let order = NashOrder::new(inst.weights())?;
    let mut best: Option<(Vec<usize>, Vec<u64>)> = None;
    scan_assignments(inst, guard, |owners, utilities| {
        let better = match &best {
            None => true,
            Some((_, b)) => order.ordering(utilities, b) == Ordering::Greater,
        };
        if better {
            best = Some((owners.to_vec(), utilities.to_vec()));
        }
    })?;
    let (owners, utilities) = best.expect("the enumeration is never empty");
    Ok((
        owners_to_allocation(inst, &owners),
        UtilityVector(utilities),
    ))
}

/// True when no assignment of the valued goods gives every agent at least
/// her current utility and someone strictly more.
pub fn is_pareto_optimal(inst: &Instance, alloc: &Allocation, guard: SizeGuard) -> Result<bool> {
    let current = crate::model::utility(inst, alloc)?;
    let mut dominated = false;
    scan_assignments(inst, guard, |_, u| {
        if !dominated
            && u.iter().zip(&current.0).all(|(a, b)| a >= b)
            && u.iter().zip(&current.0).any(|(a, b)| a > b)
        {
            dominated = true;
        }
    })?;
    Ok(!dominated)
}

/// Envy-freeness up to one good, ignoring weights.
pub fn is_ef1(inst: &Instance, alloc: &Allocation) -> bool {
    if alloc.validate(inst).is_err() {
        return false;
    }
    let value = |i: usize, bundle: &std::collections::BTreeSet<usize>| {
        bundle.iter().filter(|&&g| inst.values(i, g)).count() as u64
    };
    (0..inst.n()).all(|i| {
        let own = value(i, alloc.bundle(i));
        (0..inst.n()).filter(|&j| j != i).all(|j| {
            let other = alloc.bundle(j);
            let theirs = value(i, other);
            own >= theirs
                || other.iter().any(|&g| {
                    let without = theirs - u64::from(inst.values(i, g));
                    own >= without
                })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::utility;

    fn coalition_instance() -> Instance {
        Instance::unweighted(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let two = Instance::unweighted(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            enumerate_allocations(&two, SizeGuard::default())
                .unwrap()
                .count(),
            4
        );
        let none = Instance::unweighted(&[vec![0, 0], vec![0, 0], vec![0, 0]]).unwrap();
        let all: Vec<_> = enumerate_allocations(&none, SizeGuard::default())
            .unwrap()
            .collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].unallocated().len(), 2);
        let three_by_four = coalition_instance();
        assert_eq!(
            enumerate_allocations(&three_by_four, SizeGuard::default())
                .unwrap()
                .count(),
            81
        );
    }

    #[test]
    fn enumeration_is_distinct_and_complete() {
        let inst = coalition_instance();
        let all: std::collections::HashSet<_> = enumerate_allocations(&inst, SizeGuard::default())
            .unwrap()
            .collect();
        assert_eq!(all.len(), 81);
        assert!(all
            .iter()
            .all(|a| crate::model::is_minimally_complete(&inst, a)));
    }

    #[test]
    fn guard_refuses_large_spaces() {
        let inst = coalition_instance();
        assert!(matches!(
            enumerate_allocations(&inst, SizeGuard::new(80)),
            Err(Error::SearchSpaceExceeded { .. })
        ));
        assert!(brute_force_mwnw_tie(&inst, SizeGuard::new(81)).is_ok());
    }

    #[test]
    fn brute_force_coalition_instance() {
        let inst = coalition_instance();
        let (alloc, u) = brute_force_mwnw_tie(&inst, SizeGuard::default()).unwrap();
        assert_eq!(u.0, vec![2, 1, 1]);
        assert_eq!(utility(&inst, &alloc).unwrap(), u);
    }

    #[test]
    fn brute_force_single_agent() {
        let inst = Instance::unweighted(&[vec![1, 0, 1]]).unwrap();
        let (alloc, u) = brute_force_mwnw_tie(&inst, SizeGuard::default()).unwrap();
        assert_eq!(u.0, vec![2]);
        assert_eq!(alloc, Allocation::from_lists(&[&[0, 2]], &[1]).unwrap());
    }

    #[test]
    fn round_robin_output_is_pareto_dominated() {
        let inst = Instance::unweighted(&[vec![1, 1], vec![1, 0]]).unwrap();
        let rr = Allocation::from_lists(&[&[0], &[1]], &[]).unwrap();
        assert!(!is_pareto_optimal(&inst, &rr, SizeGuard::default()).unwrap());
        let swapped = Allocation::from_lists(&[&[1], &[0]], &[]).unwrap();
        assert!(is_pareto_optimal(&inst, &swapped, SizeGuard::default()).unwrap());
        let empty = Instance::unweighted(&[vec![], vec![]]).unwrap();
        assert!(is_pareto_optimal(&empty, &Allocation::empty(2), SizeGuard::default()).unwrap());
    }

    #[test]
    fn ef1_cases() {
        let inst = coalition_instance();
        let alloc = Allocation::from_lists(&[&[0, 1], &[2], &[3]], &[]).unwrap();
        assert!(is_ef1(&inst, &alloc));

        let both = Instance::unweighted(&[vec![1, 1], vec![1, 1]]).unwrap();
        let greedy = Allocation::from_lists(&[&[0, 1], &[]], &[]).unwrap();
        assert!(!is_ef1(&both, &greedy));
        let split = Allocation::from_lists(&[&[0], &[1]], &[]).unwrap();
        assert!(is_ef1(&both, &split));

        let single = Instance::unweighted(&[vec![1, 1, 1]]).unwrap();
        let all = Allocation::from_lists(&[&[0, 1, 2]], &[]).unwrap();
        assert!(is_ef1(&single, &all));
    }

    /// All six ordered pairs of the coalition instance are envy-free outright,
    /// which is stronger than EF1.
    #[test]
    fn ef1_coalition_pairs_by_hand() {
        let inst = coalition_instance();
        let alloc = Allocation::from_lists(&[&[0, 1], &[2], &[3]], &[]).unwrap();
        let value = |i: usize, j: usize| {
            alloc
                .bundle(j)
                .iter()
                .filter(|&&g| inst.values(i, g))
                .count()
        };
        let envy: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && value(i, i) < value(i, j))
            .collect();
        assert!(envy.is_empty(), "unexpected envy {envy:?}");
    }
}
