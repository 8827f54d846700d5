//! The outward partial order and the level subgraphs.

use super::StableGraph;
use serde::Serialize;
use std::collections::BTreeSet;

/// `v1 ⪯ v2` iff `v1 = v2`, `v1` is the root, or removing `v1` separates
/// the root from `v2`.
#[derive(Debug, Clone)]
pub struct PartialOrder {
    below: Vec<Vec<bool>>,
}

impl PartialOrder {
    pub fn preceq(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }

    /// `e` points away from the root.
    pub fn outward(&self, g: &StableGraph, e: usize) -> bool {
        self.preceq(g.edges[e].src, g.edges[e].dst)
    }
}

fn reachable_without(g: &StableGraph, removed: Option<usize>) -> Vec<bool> {
    let mut seen = vec![false; g.vertices.len()];
    if removed == Some(g.root) {
        return seen;
    }
    seen[g.root] = true;
    let mut stack = vec![g.root];
    while let Some(v) = stack.pop() {
        for e in g.out_edges(v) {
            let t = g.edges[e].dst;
            if Some(t) != removed && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

pub fn partial_order(g: &StableGraph) -> PartialOrder {
    let n = g.vertices.len();
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        if a == g.root {
            below[a] = vec![true; n];
            continue;
        }
        let reach = reachable_without(g, Some(a));
        for b in 0..n {
            below[a][b] = a == b || !reach[b];
        }
    }
    PartialOrder { below }
}

/// `G'_j` and `G_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subgraph {
    pub j: u32,
    /// Components of inertia above `p^j` and branch points with `p^{j+1}`
    /// dividing the index.
    pub primed_vertices: BTreeSet<usize>,
    /// Edges touching `primed_vertices`.
    pub primed_edges: BTreeSet<usize>,
    /// The part lying in the component graph.
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

pub fn subgraph_level(g: &StableGraph, j: u32) -> Subgraph {
    let primed_vertices: BTreeSet<usize> = (0..g.vertices.len())
        .filter(|&v| match g.inertia(v) {
            Some(r) => r > j,
            None => match g.vertices[v].kind {
                super::VertexKind::BranchPoint { index } => crate::rational::vp(g.p, index) > j,
                _ => unreachable!(),
            },
        })
        .collect();
    let primed_edges: BTreeSet<usize> = (0..g.edges.len())
        .filter(|&e| primed_vertices.contains(&g.edges[e].src) || primed_vertices.contains(&g.edges[e].dst))
        .collect();
    let vertices: BTreeSet<usize> = primed_vertices.iter().copied().filter(|&v| g.is_component(v)).collect();
    let edges = primed_edges.iter().copied().filter(|&e| !g.is_branch_edge(e)).collect();
    Subgraph { j, primed_vertices, primed_edges, vertices, edges }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicReport {
    pub from: String,
    pub monotonic: bool,
    /// Pairs `W' ⪯ W''` where inertia goes up.
    pub increases: Vec<(String, String)>,
    pub outward_etale_tails: usize,
    pub warning: Option<String>,
}

/// Inertia never increases moving outward from `from`.
pub fn is_monotonic(g: &StableGraph, from: usize) -> MonotonicReport {
    let ord = partial_order(g);
    let comps: Vec<usize> = g.component_vertices().filter(|&w| ord.preceq(from, w)).collect();
    let mut increases = Vec::new();
    for &a in &comps {
        for &b in &comps {
            if a != b && ord.preceq(a, b) && g.inertia(a) < g.inertia(b) {
                increases.push((g.vertices[a].id.clone(), g.vertices[b].id.clone()));
            }
        }
    }
    let outward_etale_tails = comps.iter().filter(|&&w| w != from && g.inertia(w) == Some(0)).count();
    let monotonic = increases.is_empty();
    let warning = (!monotonic && outward_etale_tails == 0).then(|| {
        format!(
            "no étale tail lies outward of {}, which forces monotonicity; the graph is inconsistent",
            g.vertices[from].id
        )
    });
    MonotonicReport { from: g.vertices[from].id.clone(), monotonic, increases, outward_etale_tails, warning }
}
