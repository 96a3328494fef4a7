//! Polynomial-time MWNW^tie solver for binary valuations.
//!
//! Goods are added one at a time. Each step keeps the partial allocation
//! optimal for the goods seen so far: a new valued good raises exactly one
//! agent's utility by one, and which agent that is gets decided by scoring
//! every agent reachable in the exchange graph and realizing the winner by
//! a chain of transfers along a shortest path.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{utility, Allocation, Instance, UtilityVector};
use crate::ordering::NashOrder;

/// A node of the exchange graph: the dummy source holding the incoming
/// good, or a real agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Source,
    Agent(usize),
}

/// Edge `x -> y` when agent `y` values some good in `x`'s bundle; edge
/// `source -> i` when agent `i` values the incoming good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    source: Vec<usize>,
    agents: Vec<Vec<usize>>,
}

impl ExchangeGraph {
    pub fn n(&self) -> usize {
        self.agents.len()
    }

    /// Successors in ascending agent order.
    pub fn successors(&self, node: Node) -> &[usize] {
        match node {
            Node::Source => &self.source,
            Node::Agent(x) => &self.agents[x],
        }
    }

    pub fn has_edge(&self, from: Node, to: usize) -> bool {
        self.successors(from).binary_search(&to).is_ok()
    }

    /// Breadth-first search from the source, expanding successors in
    /// ascending order. `parents[i]` is the node that discovered agent `i`.
    fn bfs_parents(&self) -> Vec<Option<Node>> {
        let mut parents = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &i in &self.source {
            parents[i] = Some(Node::Source);
            queue.push_back(i);
        }
        while let Some(x) = queue.pop_front() {
            for &y in &self.agents[x] {
                if parents[y].is_none() {
                    parents[y] = Some(Node::Agent(x));
                    queue.push_back(y);
                }
            }
        }
        parents
    }
}

fn path_from(parents: &[Option<Node>], target: usize) -> Option<Vec<usize>> {
    parents[target]?;
    let mut path = vec![target];
    let mut at = target;
    while let Some(Node::Agent(p)) = parents[at] {
        path.push(p);
        at = p;
    }
    path.reverse();
    Some(path)
}

pub fn build_exchange_graph(
    inst: &Instance,
    partial: &Allocation,
    good: usize,
) -> Result<ExchangeGraph> {
    partial.validate(inst)?;
    if good >= inst.m() {
        return Err(Error::GoodOutOfRange { good, m: inst.m() });
    }
    let n = inst.n();
    let source = (0..n).filter(|&i| inst.values(i, good)).collect();
    let mut agents = Vec::with_capacity(n);
    for x in 0..n {
        let bundle = partial.bundle(x);
        let succ = (0..n)
            .filter(|&y| y != x && bundle.iter().any(|&g| inst.values(y, g)))
            .collect();
        agents.push(succ);
    }
    Ok(ExchangeGraph { source, agents })
}

/// Shortest path `source -> a_1 -> ... -> target`, returned as the agent
/// sequence `[a_1, ..., target]`. Ties go to lower agent indices.
pub fn find_path(graph: &ExchangeGraph, target: usize) -> Option<Vec<usize>> {
    if target >= graph.n() {
        return None;
    }
    path_from(&graph.bfs_parents(), target)
}

/// A reachable agent, the path that reaches her, and the utility vector
/// after she gains one valued good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub terminal_agent: usize,
    pub path: Vec<usize>,
    pub resulting_utilities: UtilityVector,
}

/// One candidate per agent reachable from the source, in agent order.
pub fn candidates(graph: &ExchangeGraph, base: &UtilityVector) -> Vec<Candidate> {
    let parents = graph.bfs_parents();
    (0..graph.n())
        .filter_map(|i| {
            let path = path_from(&parents, i)?;
            let mut resulting = base.clone();
            resulting.0[i] += 1;
            Some(Candidate {
                terminal_agent: i,
                path,
                resulting_utilities: resulting,
            })
        })
        .collect()
}

/// Incremental solver state: an allocation that is MWNW^tie for the goods
/// added so far.
#[derive(Debug, Clone)]
pub struct MwnwSolver<'a> {
    inst: &'a Instance,
    order: NashOrder,
    alloc: Allocation,
    utilities: UtilityVector,
}

impl<'a> MwnwSolver<'a> {
    pub fn new(inst: &'a Instance) -> Result<Self> {
        Ok(MwnwSolver {
            inst,
            order: NashOrder::new(inst.weights())?,
            alloc: Allocation::empty(inst.n()),
            utilities: UtilityVector::zeros(inst.n()),
        })
    }

    /// Resumes from an allocation the caller knows to be MWNW^tie for the
    /// goods it contains.
    pub fn resume(inst: &'a Instance, partial: Allocation) -> Result<Self> {
        let utilities = utility(inst, &partial)?;
        Ok(MwnwSolver {
            inst,
            order: NashOrder::new(inst.weights())?,
            alloc: partial,
            utilities,
        })
    }

    pub fn allocation(&self) -> &Allocation {
        &self.alloc
    }

    pub fn utilities(&self) -> &UtilityVector {
        &self.utilities
    }

    pub fn into_allocation(self) -> Allocation {
        self.alloc
    }

    /// Adds `good` and returns the agent whose utility went up, if any.
    pub fn add_good(&mut self, good: usize) -> Result<Option<usize>> {
        let inst = self.inst;
        if good >= inst.m() {
            return Err(Error::GoodOutOfRange { good, m: inst.m() });
        }
        if self.alloc.contains(good) {
            return Err(Error::GoodAlreadyAllocated { good });
        }
        if !inst.is_valued(good) {
            self.alloc.unallocated.insert(good);
            return Ok(None);
        }
        let graph = build_exchange_graph(inst, &self.alloc, good)?;
        let cands = candidates(&graph, &self.utilities);
        let best = self
            .order
            .best(cands.iter().map(|c| c.resulting_utilities.as_slice()))
            .expect("a valued good always has a direct candidate");
        let chosen = &cands[best];
        self.transfer_along(good, &chosen.path);
        self.utilities.0[chosen.terminal_agent] += 1;
        Ok(Some(chosen.terminal_agent))
    }

    /// `good` goes to the first agent on the path; every later agent takes
    /// the lowest-indexed good she values from her predecessor's bundle as
    /// it stood before this step.
    fn transfer_along(&mut self, good: usize, path: &[usize]) {
        let moves: Vec<(usize, usize, usize)> = path
            .windows(2)
            .map(|pair| {
                let (giver, taker) = (pair[0], pair[1]);
                let g = *self
                    .alloc
                    .bundle(giver)
                    .iter()
                    .find(|&&g| self.inst.values(taker, g))
                    .expect("path edge without a transferable good");
                (giver, taker, g)
            })
            .collect();
        for (giver, taker, g) in moves {
            self.alloc.bundles[giver].remove(&g);
            self.alloc.bundles[taker].insert(g);
        }
        self.alloc.bundles[path[0]].insert(good);
    }
}

/// Adds one good to an allocation that is MWNW^tie for the goods it holds.
pub fn add_one_good(inst: &Instance, partial: &Allocation, good: usize) -> Result<Allocation> {
    partial.validate(inst)?;
    let mut solver = MwnwSolver::resume(inst, partial.clone())?;
    solver.add_good(good)?;
    Ok(solver.into_allocation())
}

/// Computes an MWNW^tie allocation by adding the goods in input order.
pub fn solve_mwnw_tie(inst: &Instance) -> Result<Allocation> {
    let mut solver = MwnwSolver::new(inst)?;
    for g in 0..inst.m() {
        solver.add_good(g)?;
    }
    Ok(solver.into_allocation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_minimally_complete, parse_rational, Rational};

    fn weights(list: &[&str]) -> Vec<Rational> {
        list.iter().map(|s| parse_rational(s).unwrap()).collect()
    }

    fn coalition_instance() -> Instance {
        Instance::unweighted(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn truthful_coalition_instance() {
        let inst = coalition_instance();
        let alloc = solve_mwnw_tie(&inst).unwrap();
        assert_eq!(utility(&inst, &alloc).unwrap().0, vec![2, 1, 1]);
        assert_eq!(
            alloc,
            Allocation::from_lists(&[&[0, 1], &[2], &[3]], &[]).unwrap()
        );
    }

    #[test]
    fn misreported_coalition_instance() {
        let inst =
            Instance::unweighted(&[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 1, 1, 1]]).unwrap();
        let alloc = solve_mwnw_tie(&inst).unwrap();
        assert_eq!(utility(&inst, &alloc).unwrap().0, vec![1, 1, 2]);
        assert_eq!(
            alloc,
            Allocation::from_lists(&[&[0], &[1], &[2, 3]], &[]).unwrap()
        );
    }

    #[test]
    fn single_agent_takes_every_good() {
        let inst = Instance::from_matrix(weights(&["5/3"]), &[vec![1, 1, 1, 1, 1]]).unwrap();
        assert_eq!(
            utility(&inst, &solve_mwnw_tie(&inst).unwrap()).unwrap().0,
            vec![5]
        );
    }

    #[test]
    fn no_goods_gives_empty_allocation() {
        let inst = Instance::unweighted(&[vec![], vec![]]).unwrap();
        assert_eq!(solve_mwnw_tie(&inst).unwrap(), Allocation::empty(2));
    }

    #[test]
    fn unvalued_good_goes_to_the_pool() {
        let inst = Instance::unweighted(&[vec![0, 1], vec![0, 1]]).unwrap();
        let alloc = solve_mwnw_tie(&inst).unwrap();
        assert_eq!(
            alloc.unallocated().iter().copied().collect::<Vec<_>>(),
            vec![0]
        );
        assert!(is_minimally_complete(&inst, &alloc));
    }

    #[test]
    fn add_one_good_single_candidate() {
        let inst = Instance::unweighted(&[vec![0], vec![1], vec![0]]).unwrap();
        let out = add_one_good(&inst, &Allocation::empty(3), 0).unwrap();
        assert_eq!(utility(&inst, &out).unwrap().0, vec![0, 1, 0]);
    }

    #[test]
    fn add_one_good_chain_transfer() {
        // Agent 0 holds good 0, which agent 1 also values; good 1 is valued
        // only by agent 0. The chain source -> 0 -> 1 yields (1,1).
        let inst = Instance::unweighted(&[vec![1, 1], vec![1, 0]]).unwrap();
        let partial = Allocation::from_lists(&[&[0], &[]], &[]).unwrap();
        let out = add_one_good(&inst, &partial, 1).unwrap();
        assert_eq!(out, Allocation::from_lists(&[&[1], &[0]], &[]).unwrap());
        assert_eq!(utility(&inst, &out).unwrap().0, vec![1, 1]);
    }

    #[test]
    fn add_one_good_weighted_choice() {
        // weights (2,1), utilities (1,1): 2^2*1 = 4 beats 1*2 = 2.
        let inst =
            Instance::from_matrix(weights(&["2", "1"]), &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let partial = Allocation::from_lists(&[&[0], &[1]], &[]).unwrap();
        let out = add_one_good(&inst, &partial, 2).unwrap();
        assert_eq!(utility(&inst, &out).unwrap().0, vec![2, 1]);
    }

    #[test]
    fn add_one_good_errors() {
        let inst = Instance::unweighted(&[vec![1, 1]]).unwrap();
        let partial = Allocation::from_lists(&[&[0]], &[]).unwrap();
        assert!(matches!(
            add_one_good(&inst, &partial, 0),
            Err(Error::GoodAlreadyAllocated { good: 0 })
        ));
        assert!(matches!(
            add_one_good(&inst, &partial, 5),
            Err(Error::GoodOutOfRange { good: 5, .. })
        ));
    }

    #[test]
    fn exchange_graph_on_empty_partial_has_only_source_edges() {
        let inst = Instance::unweighted(&[vec![1], vec![0], vec![1]]).unwrap();
        let g = build_exchange_graph(&inst, &Allocation::empty(3), 0).unwrap();
        assert_eq!(g.successors(Node::Source), &[0, 2]);
        assert!((0..3).all(|x| g.successors(Node::Agent(x)).is_empty()));
    }

    #[test]
    fn exchange_graph_holder_edges() {
        let inst = Instance::unweighted(&[vec![1, 0], vec![1, 0], vec![1, 1]]).unwrap();
        let partial = Allocation::from_lists(&[&[0], &[], &[]], &[]).unwrap();
        let g = build_exchange_graph(&inst, &partial, 1).unwrap();
        assert!(g.has_edge(Node::Agent(0), 1));
        assert!(g.has_edge(Node::Agent(0), 2));
        assert!(!g.has_edge(Node::Agent(1), 0));
        assert_eq!(g.successors(Node::Source), &[2]);
    }

    fn graph(source: Vec<usize>, agents: Vec<Vec<usize>>) -> ExchangeGraph {
        ExchangeGraph { source, agents }
    }

    #[test]
    fn find_path_cases() {
        let direct = graph(vec![1], vec![vec![], vec![]]);
        assert_eq!(find_path(&direct, 1), Some(vec![1]));
        assert_eq!(find_path(&direct, 0), None);
        // source -> 1 -> 3 and source -> 2 -> 3: lower index wins.
        let diamond = graph(vec![1, 2], vec![vec![], vec![3], vec![3], vec![]]);
        assert_eq!(find_path(&diamond, 3), Some(vec![1, 3]));
        // Shortest beats lower-index when lengths differ.
        let skew = graph(vec![0, 2], vec![vec![1], vec![3], vec![3], vec![]]);
        assert_eq!(find_path(&skew, 3), Some(vec![2, 3]));
    }
}
