//! Augmented dual graphs of stable reductions.
//!
//! Edges are half-edges with an explicit opposite, because the effective
//! invariant is a function on directed edges that changes sign under
//! reversal. Wild branch points are vertices of their own, attached to the
//! component they specialize to by a single edge pair.

pub mod enumerate;
pub mod monodromy;
pub mod order;
pub mod tails;
pub mod vanishing;

use crate::ramification::effective_invariant;
use crate::rational::{fmt_q, vp, QText, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use order::{is_monotonic, partial_order, subgraph_level, MonotonicReport, Subgraph};
pub use tails::{check_tail_constraints, classify_tails, outward_fraction_check, TailFlavor, TailRecord};
pub use vanishing::{check_effective_local, check_generalized, check_global, GeneralizedReport, GeneralizedVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub element: String,
    pub message: String,
}

impl Violation {
    pub fn new(rule: &str, element: impl Into<String>, message: impl Into<String>) -> Self {
        Violation { rule: rule.into(), element: element.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("{rule}: {message}")]
    Malformed { rule: &'static str, message: String },
    #[error("misplaced branch point at {vertex}: index {index} needs a p^{expected}-component, found p^{found}")]
    MisplacedBranchPoint { vertex: String, index: u64, expected: u32, found: u32 },
    #[error("sigma^(eff,{alpha}) is not defined at {vertex}")]
    AlphaNotDefined { vertex: String, alpha: usize },
    #[error("no node separates inertia above and at or below alpha = {alpha}")]
    NoApplicableNodes { alpha: usize },
    #[error("{0} is not an interior edge")]
    NotInterior(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexKind {
    Component { genus: u64, inertia: u32, tame_branches: Vec<u64> },
    BranchPoint { index: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub opp: usize,
    /// `σ^{eff,α}` keyed by `α`.
    pub sigma_eff: BTreeMap<usize, Q>,
    /// Deformation-data invariants `σ_{1,w}..σ_{r,w}` on the source side,
    /// from which `sigma_eff` can be derived.
    pub sigma_levels: Option<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableGraph {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub g_x: u64,
    pub branch_indices: Vec<u64>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub root: usize,
}

impl StableGraph {
    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn is_component(&self, v: usize) -> bool {
        matches!(self.vertices[v].kind, VertexKind::Component { .. })
    }

    pub fn inertia(&self, v: usize) -> Option<u32> {
        match self.vertices[v].kind {
            VertexKind::Component { inertia, .. } => Some(inertia),
            VertexKind::BranchPoint { .. } => None,
        }
    }

    pub fn genus(&self, v: usize) -> u64 {
        match self.vertices[v].kind {
            VertexKind::Component { genus, .. } => genus,
            VertexKind::BranchPoint { .. } => 0,
        }
    }

    pub fn tame_branches(&self, v: usize) -> &[u64] {
        match &self.vertices[v].kind {
            VertexKind::Component { tame_branches, .. } => tame_branches,
            VertexKind::BranchPoint { .. } => &[],
        }
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].src == v)
    }

    /// Number of truncation levels defined on an edge: the larger inertia
    /// exponent among its component endpoints.
    pub fn levels(&self, e: usize) -> usize {
        let ed = &self.edges[e];
        [ed.src, ed.dst].iter().filter_map(|&v| self.inertia(v)).max().unwrap_or(0) as usize
    }

    pub fn is_branch_edge(&self, e: usize) -> bool {
        let ed = &self.edges[e];
        !self.is_component(ed.src) || !self.is_component(ed.dst)
    }

    pub fn sigma(&self, e: usize, alpha: usize) -> Option<&Q> {
        self.edges[e].sigma_eff.get(&alpha)
    }

    /// Branch points whose index is divisible by `p^i`.
    pub fn pi_count(&self, i: u32) -> usize {
        self.branch_indices.iter().filter(|&&b| vp(self.p, b) >= i).count()
    }

    pub fn three_point_genus_zero(&self) -> bool {
        self.g_x == 0 && self.branch_indices.len() == 3
    }

    pub fn branch_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(move |&v| !self.is_component(v))
    }

    pub fn component_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(move |&v| self.is_component(v))
    }

    /// Component neighbours through edges of the component graph.
    pub fn component_degree(&self, v: usize) -> usize {
        self.out_edges(v).filter(|&e| self.is_component(self.edges[e].dst)).count()
    }

    pub fn from_json(s: &str) -> Result<StableGraph> {
        let doc: GraphDoc = serde_json::from_str(s)
            .map_err(|e| GraphError::Malformed { rule: "json-schema", message: e.to_string() })?;
        doc.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphDoc::from_graph(self)).expect("serializable")
    }

    /// Fill invariants that the input leaves implicit: derived values from
    /// `sigma_levels`, zeros on branch edges, negatives across an edge
    /// whose opposite is given.
    fn complete(&mut self) {
        for e in 0..self.edges.len() {
            if let Some(levels) = self.edges[e].sigma_levels.clone() {
                for alpha in 0..levels.len() {
                    if let Ok(v) = effective_invariant(self.p, &levels, alpha) {
                        self.edges[e].sigma_eff.entry(alpha).or_insert(v);
                    }
                }
            }
        }
        for e in 0..self.edges.len() {
            if self.is_branch_edge(e) && self.edges[e].sigma_eff.is_empty() {
                for alpha in 0..self.levels(e) {
                    self.edges[e].sigma_eff.insert(alpha, Q::zero());
                }
            }
        }
        for e in 0..self.edges.len() {
            let o = self.edges[e].opp;
            if self.edges[e].sigma_eff.is_empty() && o < self.edges.len() && !self.edges[o].sigma_eff.is_empty() {
                let neg = self.edges[o].sigma_eff.iter().map(|(a, v)| (*a, -v)).collect();
                self.edges[e].sigma_eff = neg;
            }
        }
    }
}

/// Structural checks. An empty list means the graph is well formed.
pub fn validate(g: &StableGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let name = |e: usize| g.edges[e].id.clone();
    // half-edge structure
    for (i, e) in g.edges.iter().enumerate() {
        let o = e.opp;
        if o == i || g.edges[o].opp != i || g.edges[o].src != e.dst || g.edges[o].dst != e.src {
            out.push(Violation::new("half-edge-involution", name(i), "opposite pairing is not a fixed-point-free involution reversing the edge"));
        }
        if e.src == e.dst {
            out.push(Violation::new("half-edge-involution", name(i), "loop edge"));
        }
    }
    // root and inertia range
    match g.inertia(g.root) {
        None => out.push(Violation::new("root-kind", &g.vertices[g.root].id, "the original component must be a component vertex")),
        Some(0) => out.push(Violation::new("root-kind", &g.vertices[g.root].id, "the original component is inseparable under bad reduction")),
        _ => {}
    }
    for v in g.component_vertices() {
        let r = g.inertia(v).expect("component");
        if r > g.n {
            out.push(Violation::new("inertia-range", &g.vertices[v].id, format!("inertia p^{r} exceeds p^{}", g.n)));
        }
    }
    // component graph connected, a tree for three-point covers
    let comps: Vec<usize> = g.component_vertices().collect();
    let mut seen = BTreeSet::from([g.root]);
    let mut stack = vec![g.root];
    while let Some(v) = stack.pop() {
        for e in g.out_edges(v) {
            let t = g.edges[e].dst;
            if g.is_component(t) && seen.insert(t) {
                stack.push(t);
            }
        }
    }
    if comps.iter().any(|v| !seen.contains(v)) {
        out.push(Violation::new("component-tree", "graph", "the component graph is not connected"));
    }
    let comp_edges = (0..g.edges.len()).filter(|&e| !g.is_branch_edge(e)).count() / 2;
    if g.three_point_genus_zero() && comp_edges + 1 != comps.len() {
        out.push(Violation::new("component-tree", "graph", "a three-point cover of the line has a tree of components"));
    }
    // branch point attachment and placement
    for v in g.branch_vertices() {
        let outs: Vec<usize> = g.out_edges(v).collect();
        let ok = outs.len() == 1 && g.is_component(g.edges[outs[0]].dst);
        if !ok {
            out.push(Violation::new("branch-point-attachment", &g.vertices[v].id, "a branch point vertex needs exactly one edge pair, to a component"));
            continue;
        }
        if let Err(GraphError::MisplacedBranchPoint { index, expected, found, .. }) = check_placement(g, v) {
            out.push(Violation::new(
                "misplaced-branch-point",
                &g.vertices[v].id,
                format!("index {index} specializes to a p^{expected}-component, not p^{found}"),
            ));
        }
    }
    for v in g.component_vertices() {
        let r = g.inertia(v).expect("component");
        for &b in g.tame_branches(v) {
            if vp(g.p, b) != 0 {
                out.push(Violation::new("misplaced-branch-point", &g.vertices[v].id, format!("index {b} is divisible by p; it needs its own vertex")));
            } else if r != 0 {
                out.push(Violation::new("misplaced-branch-point", &g.vertices[v].id, format!("tame index {b} specializes to an étale component, not p^{r}")));
            }
        }
    }
    // branch index multiset
    let mut listed: Vec<u64> = g.branch_indices.clone();
    let mut found: Vec<u64> = g
        .vertices
        .iter()
        .flat_map(|v| match &v.kind {
            VertexKind::BranchPoint { index } => vec![*index],
            VertexKind::Component { tame_branches, .. } => tame_branches.clone(),
        })
        .collect();
    listed.sort_unstable();
    found.sort_unstable();
    if listed != found {
        out.push(Violation::new("branch-index-multiset", "graph", format!("branch_indices {listed:?} but the vertices carry {found:?}")));
    }
    // étale components are tails; tails adjoin higher inertia
    for v in g.component_vertices() {
        let r = g.inertia(v).expect("component");
        let deg = g.component_degree(v);
        if r == 0 && (v == g.root || deg != 1) {
            out.push(Violation::new("etale-component-is-tail", &g.vertices[v].id, "an étale component must be a tail"));
        }
        if v != g.root && deg == 1 {
            let e = g.out_edges(v).find(|&e| g.is_component(g.edges[e].dst)).expect("leaf edge");
            let rp = g.inertia(g.edges[e].dst).expect("component");
            if rp <= r {
                out.push(Violation::new(
                    "tail-adjoins-higher-inertia",
                    &g.vertices[v].id,
                    format!("p^{r}-tail meets a p^{rp}-component; the neighbour needs larger inertia"),
                ));
            }
        }
    }
    // invariants on edges
    for e in 0..g.edges.len() {
        let ed = &g.edges[e];
        let want: BTreeSet<usize> = (0..g.levels(e)).collect();
        let have: BTreeSet<usize> = ed.sigma_eff.keys().copied().collect();
        if want != have {
            out.push(Violation::new(
                "sigma-levels-defined",
                name(e),
                format!("sigma_eff is defined for alpha in {have:?}, expected {want:?}"),
            ));
        }
        if g.is_branch_edge(e) && ed.sigma_eff.values().any(|s| !s.is_zero()) {
            out.push(Violation::new("branch-edge-zero", name(e), "edges at branch point vertices carry invariant 0"));
        }
        if let Some(o) = (ed.opp < g.edges.len()).then_some(ed.opp) {
            for (a, s) in &ed.sigma_eff {
                if let Some(t) = g.edges[o].sigma_eff.get(a) {
                    if s + t != Q::zero() && e < o {
                        out.push(Violation::new(
                            "sigma-antisymmetry",
                            name(e),
                            format!("alpha = {a}: {} and {} on the opposite edge do not cancel", fmt_q(s), fmt_q(t)),
                        ));
                    }
                }
            }
        }
        if let Some(levels) = &ed.sigma_levels {
            let rs = g.inertia(ed.src).unwrap_or(0) as usize;
            let rt = g.inertia(ed.dst).unwrap_or(0) as usize;
            if levels.len() != rs || rs < rt {
                out.push(Violation::new(
                    "sigma-derivation-mismatch",
                    name(e),
                    format!("sigma_levels needs one value per level of the higher-inertia source (p^{rs})"),
                ));
                continue;
            }
            for alpha in 0..levels.len() {
                let d = effective_invariant(g.p, levels, alpha).expect("alpha < r");
                if let Some(s) = ed.sigma_eff.get(&alpha) {
                    if *s != d {
                        out.push(Violation::new(
                            "sigma-derivation-mismatch",
                            name(e),
                            format!("alpha = {alpha}: given {} but the levels give {}", fmt_q(s), fmt_q(&d)),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// A wild branch point of index `p^a s` sits on a `p^a`-component.
pub(crate) fn check_placement(g: &StableGraph, v: usize) -> Result<()> {
    if let VertexKind::BranchPoint { index } = g.vertices[v].kind {
        let a = vp(g.p, index);
        if let Some(e) = g.out_edges(v).next() {
            let r = g.inertia(g.edges[e].dst).unwrap_or(0);
            if r != a {
                return Err(GraphError::MisplacedBranchPoint { vertex: g.vertices[v].id.clone(), index, expected: a, found: r });
            }
        }
    }
    Ok(())
}

// ---- JSON document ----

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    p: u64,
    n: u32,
    m: u64,
    #[serde(rename = "gX")]
    g_x: u64,
    branch_indices: Vec<u64>,
    root: String,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum VertexDoc {
    Component {
        id: String,
        #[serde(default)]
        genus: u64,
        inertia: u32,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        branches: Vec<u64>,
    },
    BranchPoint {
        id: String,
        index: u64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    src: String,
    dst: String,
    opp: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    sigma_eff: BTreeMap<String, QText>,
    #[serde(default, with = "opt_levels", skip_serializing_if = "Option::is_none")]
    sigma_levels: Option<Vec<Q>>,
}

mod opt_levels {
    use crate::rational::{serde_q, Q};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => serde_q::vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Q>>, D::Error> {
        serde_q::vec::deserialize(d).map(Some)
    }
}

impl GraphDoc {
    fn into_graph(self) -> Result<StableGraph> {
        let bad = |message: String| GraphError::Malformed { rule: "malformed-reference", message };
        let mut vertices = Vec::new();
        let mut vidx: HashMap<String, usize> = HashMap::new();
        for v in self.vertices {
            let (id, kind) = match v {
                VertexDoc::Component { id, genus, inertia, branches } => {
                    (id, VertexKind::Component { genus, inertia, tame_branches: branches })
                }
                VertexDoc::BranchPoint { id, index } => (id, VertexKind::BranchPoint { index }),
            };
            if vidx.insert(id.clone(), vertices.len()).is_some() {
                return Err(bad(format!("duplicate vertex id {id}")));
            }
            vertices.push(Vertex { id, kind });
        }
        let mut eidx: HashMap<String, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if eidx.insert(e.id.clone(), i).is_some() {
                return Err(bad(format!("duplicate edge id {}", e.id)));
            }
        }
        let look = |m: &HashMap<String, usize>, id: &str, what: &str| {
            m.get(id).copied().ok_or_else(|| bad(format!("unknown {what} {id}")))
        };
        let mut edges = Vec::new();
        for e in self.edges {
            let mut sigma_eff = BTreeMap::new();
            for (k, v) in e.sigma_eff {
                let a: usize = k.parse().map_err(|_| bad(format!("edge {}: alpha {k:?} is not a level", e.id)))?;
                sigma_eff.insert(a, v.0);
            }
            edges.push(Edge {
                src: look(&vidx, &e.src, "vertex")?,
                dst: look(&vidx, &e.dst, "vertex")?,
                opp: look(&eidx, &e.opp, "edge")?,
                id: e.id,
                sigma_eff,
                sigma_levels: e.sigma_levels,
            });
        }
        let root = look(&vidx, &self.root, "root vertex")?;
        let mut g = StableGraph {
            p: self.p,
            n: self.n,
            m: self.m,
            g_x: self.g_x,
            branch_indices: self.branch_indices,
            vertices,
            edges,
            root,
        };
        if !crate::rational::is_prime(g.p) || g.m == 0 {
            return Err(GraphError::Malformed { rule: "json-schema", message: "p must be prime and m positive".into() });
        }
        g.complete();
        Ok(g)
    }

    fn from_graph(g: &StableGraph) -> GraphDoc {
        GraphDoc {
            p: g.p,
            n: g.n,
            m: g.m,
            g_x: g.g_x,
            branch_indices: g.branch_indices.clone(),
            root: g.vertices[g.root].id.clone(),
            vertices: g
                .vertices
                .iter()
                .map(|v| match &v.kind {
                    VertexKind::Component { genus, inertia, tame_branches } => VertexDoc::Component {
                        id: v.id.clone(),
                        genus: *genus,
                        inertia: *inertia,
                        branches: tame_branches.clone(),
                    },
                    VertexKind::BranchPoint { index } => VertexDoc::BranchPoint { id: v.id.clone(), index: *index },
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    src: g.vertices[e.src].id.clone(),
                    dst: g.vertices[e.dst].id.clone(),
                    opp: g.edges[e.opp].id.clone(),
                    sigma_eff: e
                        .sigma_eff
                        .iter()
                        .map(|(a, v)| (a.to_string(), QText(v.clone())))
                        .collect(),
                    sigma_levels: e.sigma_levels.clone(),
                })
                .collect(),
        }
    }
}

/// Builder used by tests, generators and examples.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    p: u64,
    n: u32,
    m: u64,
    g_x: u64,
    branch_indices: Vec<u64>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    pub fn new(p: u64, n: u32, m: u64, g_x: u64) -> Self {
        GraphBuilder { p, n, m, g_x, ..Default::default() }
    }

    pub fn component(&mut self, id: &str, genus: u64, inertia: u32, tame: &[u64]) -> usize {
        self.branch_indices.extend_from_slice(tame);
        self.vertices.push(Vertex {
            id: id.into(),
            kind: VertexKind::Component { genus, inertia, tame_branches: tame.to_vec() },
        });
        self.vertices.len() - 1
    }

    /// A wild branch point attached to `at`.
    pub fn branch_point(&mut self, id: &str, index: u64, at: usize) -> usize {
        self.branch_indices.push(index);
        self.vertices.push(Vertex { id: id.into(), kind: VertexKind::BranchPoint { index } });
        let v = self.vertices.len() - 1;
        self.link(at, v, &[]);
        v
    }

    /// An edge pair `a -> b`, `b -> a`; `sigma[α]` is the invariant on
    /// `a -> b`.
    pub fn link(&mut self, a: usize, b: usize, sigma: &[Q]) -> usize {
        let i = self.edges.len();
        let fwd: BTreeMap<usize, Q> = sigma.iter().cloned().enumerate().collect();
        let back: BTreeMap<usize, Q> = sigma.iter().map(|s| -s).enumerate().collect();
        let (ia, ib) = (self.vertices[a].id.clone(), self.vertices[b].id.clone());
        self.edges.push(Edge { id: format!("{ia}>{ib}"), src: a, dst: b, opp: i + 1, sigma_eff: fwd, sigma_levels: None });
        self.edges.push(Edge { id: format!("{ib}>{ia}"), src: b, dst: a, opp: i, sigma_eff: back, sigma_levels: None });
        i
    }

    pub fn build(self, root: usize) -> StableGraph {
        let mut g = StableGraph {
            p: self.p,
            n: self.n,
            m: self.m,
            g_x: self.g_x,
            branch_indices: self.branch_indices,
            vertices: self.vertices,
            edges: self.edges,
            root,
        };
        g.complete();
        g
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::rational::{q, qi};

    /// Root `p^1`, three primitive tails with `σ = 1/3`.
    pub fn three_thirds() -> StableGraph {
        let mut b = GraphBuilder::new(7, 1, 3, 0);
        let root = b.component("v0", 0, 1, &[]);
        for (i, idx) in [2u64, 4, 4].iter().enumerate() {
            let t = b.component(&format!("t{i}"), 0, 0, &[*idx]);
            b.link(root, t, &[q(1, 3)]);
        }
        b.build(root)
    }

    /// Root `p^1` with wild branch points 5 and 10 and a primitive tail of
    /// invariant 1.
    pub fn one_primitive() -> StableGraph {
        let mut b = GraphBuilder::new(5, 1, 1, 0);
        let root = b.component("v0", 0, 1, &[]);
        b.branch_point("b1", 5, root);
        b.branch_point("b2", 10, root);
        let t = b.component("t", 0, 0, &[3]);
        b.link(root, t, &[qi(1)]);
        b.build(root)
    }
}
