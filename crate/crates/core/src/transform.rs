//! Transformation graphs between two allocations of the same agents.
//!
//! There is one edge `i -> j` per good that sits in agent `i`'s bundle in the
//! first allocation and in agent `j`'s bundle in the second (`i != j`). Each
//! edge remembers its good so the moves can be replayed.

use crate::model::Allocation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransferEdge {
    pub from: usize,
    pub to: usize,
    pub good: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationGraph {
    node_count: usize,
    edges: Vec<TransferEdge>,
}

impl TransformationGraph {
    pub fn new(node_count: usize, edges: Vec<TransferEdge>) -> Self {
        assert!(
            edges
                .iter()
                .all(|e| e.from < node_count && e.to < node_count),
            "edge endpoint out of range"
        );
        TransformationGraph { node_count, edges }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[TransferEdge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn indegree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.to == node).count()
    }

    pub fn outdegree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.from == node).count()
    }

    /// `indegree - outdegree` for every node.
    pub fn degree_deltas(&self) -> Vec<i64> {
        let mut delta = vec![0i64; self.node_count];
        for e in &self.edges {
            delta[e.to] += 1;
            delta[e.from] -= 1;
        }
        delta
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Edge indices of the first cycle met by a depth-first search that
    /// starts from the lowest-index node and follows edges in stored order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            OnStack,
            Done,
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.node_count];
        for (k, e) in self.edges.iter().enumerate() {
            out[e.from].push(k);
        }
        let mut mark = vec![Mark::New; self.node_count];
        for root in 0..self.node_count {
            if mark[root] != Mark::New {
                continue;
            }
            // (node, next outgoing position); `path` holds the edges taken.
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            let mut path: Vec<usize> = Vec::new();
            mark[root] = Mark::OnStack;
            while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
                if let Some(&k) = out[node].get(*pos) {
                    *pos += 1;
                    let next = self.edges[k].to;
                    match mark[next] {
                        Mark::New => {
                            mark[next] = Mark::OnStack;
                            path.push(k);
                            stack.push((next, 0));
                        }
                        Mark::OnStack => {
                            let start = path
                                .iter()
                                .position(|&p| self.edges[p].from == next)
                                .unwrap_or(path.len());
                            let mut cycle = path[start..].to_vec();
                            cycle.push(k);
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[node] = Mark::Done;
                    stack.pop();
                    path.pop();
                }
            }
        }
        None
    }
}

/// Graph from `a` to `a2`; both must have the same number of bundles.
/// Goods in either pool are ignored.
pub fn build_transformation_graph(a: &Allocation, a2: &Allocation) -> TransformationGraph {
    assert_eq!(a.n(), a2.n(), "allocations over different agent sets");
    let mut edges = Vec::new();
    for (i, bundle) in a.bundles().iter().enumerate() {
        for &g in bundle {
            if let Some(j) = a2.owner_of(g) {
                if j != i {
                    edges.push(TransferEdge {
                        from: i,
                        to: j,
                        good: g,
                    });
                }
            }
        }
    }
    edges.sort_by_key(|e| e.good);
    TransformationGraph::new(a.n(), edges)
}

/// As [`build_transformation_graph`], with the unallocated pool of each
/// allocation acting as an extra node `n`.
pub fn build_transformation_graph_with_pool(
    a: &Allocation,
    a2: &Allocation,
) -> TransformationGraph {
    assert_eq!(a.n(), a2.n(), "allocations over different agent sets");
    let pool = a.n();
    let holder = |alloc: &Allocation, g: usize| {
        alloc
            .owner_of(g)
            .or_else(|| alloc.unallocated().contains(&g).then_some(pool))
    };
    let goods: std::collections::BTreeSet<usize> = a
        .bundles()
        .iter()
        .flatten()
        .chain(a.unallocated())
        .copied()
        .collect();
    let edges = goods
        .into_iter()
        .filter_map(|g| match (holder(a, g), holder(a2, g)) {
            (Some(i), Some(j)) if i != j => Some(TransferEdge {
                from: i,
                to: j,
                good: g,
            }),
            _ => None,
        })
        .collect();
    TransformationGraph::new(pool + 1, edges)
}

/// Repeatedly removes a cycle until none is left. Cycle removal keeps every
/// node's `indegree - outdegree`.
pub fn eliminate_cycles(graph: &TransformationGraph) -> TransformationGraph {
    let mut g = graph.clone();
    while let Some(cycle) = g.find_cycle() {
        let mut drop = vec![false; g.edges.len()];
        for k in cycle {
            drop[k] = true;
        }
        let mut k = 0;
        g.edges.retain(|_| {
            let keep = !drop[k];
            k += 1;
            keep
        });
    }
    g
}

/// Moves each edge's good from its source bundle to its target bundle.
/// Edges touching a node `>= a.n()` (the pool node) move goods to or from
/// the unallocated pool.
pub fn apply_transfers(a: &Allocation, graph: &TransformationGraph) -> Allocation {
    let mut out = a.clone();
    let n = a.n();
    for e in graph.edges() {
        let removed = if e.from < n {
            out.bundles[e.from].remove(&e.good)
        } else {
            out.unallocated.remove(&e.good)
        };
        assert!(removed, "good {} not held by node {}", e.good, e.from);
        if e.to < n {
            out.bundles[e.to].insert(e.good);
        } else {
            out.unallocated.insert(e.good);
        }
    }
    out
}
