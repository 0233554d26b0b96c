//! Graphs on dense vertex labels `1..=n` (n <= 63) with adjacency stored as
//! bitmasks, node/edge weights, graph operations, generators for the named
//! families, and the plain-text graph file format.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{parse_q, q, qf, Q};

/// A subset of vertices: bit `i - 1` stands for vertex `i`.
pub type VertexSet = u64;

pub const MAX_VERTICES: usize = 63;

#[inline]
pub fn bit(v: usize) -> VertexSet {
    1u64 << (v - 1)
}

/// Vertices of `set` in ascending order.
pub fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let v = rest.trailing_zeros() as usize + 1;
        rest &= rest - 1;
        Some(v)
    })
}

pub fn set_of(vertices: &[usize]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | bit(v))
}

/// Formats a vertex set as `{1,3}`.
pub fn fmt_set(set: VertexSet) -> String {
    let inner: Vec<String> = members(set).map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for (i, j) in edges {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{i},{j}}}")));
            }
            g.adj[i - 1] |= bit(j);
            g.adj[j - 1] |= bit(i);
        }
        Ok(g)
    }

    fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn vertices(&self) -> VertexSet {
        if self.n == 0 {
            0
        } else {
            u64::MAX >> (64 - self.n)
        }
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i - 1] & bit(j) != 0
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in members(self.adj[i - 1] >> i << i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        members(set).all(|v| set & !bit(v) & !self.adj[v - 1] == 0)
    }

    pub fn is_stable(&self, set: VertexSet) -> bool {
        members(set).all(|v| self.adj[v - 1] & set == 0)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (1..=self.n).map(|v| all & !self.adj[v - 1] & !bit(v)).collect();
        Graph::from_adjacency(adj)
    }

    /// Two-colouring by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![None::<bool>; self.n + 1];
        for start in 1..=self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for u in members(self.adj[v - 1]) {
                    match colour[u] {
                        None => {
                            colour[u] = Some(!c);
                            stack.push(u);
                        }
                        Some(cu) if cu == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced by `keep`, relabelled `1..=|keep|` in ascending order.
    pub fn induced(&self, keep: VertexSet) -> (Graph, Relabeling) {
        let relabel = Relabeling::keeping(self.n, keep);
        let adj = members(keep)
            .map(|v| relabel.map_set(self.adj[v - 1] & keep))
            .collect();
        (Graph::from_adjacency(adj), relabel)
    }
}

/// Old-to-new vertex map produced by deletions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// `old_to_new[old - 1]`, `None` for deleted vertices.
    pub old_to_new: Vec<Option<usize>>,
}

impl Relabeling {
    fn keeping(n: usize, keep: VertexSet) -> Self {
        let mut next = 0;
        let old_to_new = (1..=n)
            .map(|v| {
                if keep & bit(v) != 0 {
                    next += 1;
                    Some(next)
                } else {
                    None
                }
            })
            .collect();
        Relabeling { old_to_new }
    }

    pub fn get(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old.wrapping_sub(1)).copied().flatten()
    }

    pub fn map_set(&self, set: VertexSet) -> VertexSet {
        members(set).filter_map(|v| self.get(v)).fold(0, |acc, v| acc | bit(v))
    }

    /// New-to-old inverse.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = Vec::new();
        for (i, new) in self.old_to_new.iter().enumerate() {
            if new.is_some() {
                inv.push(i + 1);
            }
        }
        inv
    }
}

/// How edge weights relate to node weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum WeightMode {
    /// `w_ij = min{w_i, w_j}`
    Min,
    /// `w_ij = max{w_i, w_j}`
    #[default]
    Max,
    /// all node and edge weights equal 1
    Unit,
    /// explicit per-edge weights
    Custom,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::Min => "MIN",
            WeightMode::Max => "MAX",
            WeightMode::Unit => "UNIT",
            WeightMode::Custom => "CUSTOM",
        })
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "MIN" => Ok(WeightMode::Min),
            "MAX" => Ok(WeightMode::Max),
            "UNIT" => Ok(WeightMode::Unit),
            "CUSTOM" => Ok(WeightMode::Custom),
            _ => Err(Error::InvalidParameter(format!("unknown edge mode `{s}`"))),
        }
    }
}

fn derived_edge_weight(mode: WeightMode, wi: &Q, wj: &Q) -> Q {
    match mode {
        WeightMode::Min => wi.min(wj).clone(),
        WeightMode::Max | WeightMode::Custom => wi.max(wj).clone(),
        WeightMode::Unit => Q::one(),
    }
}

/// A graph with nonnegative node weights and per-edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    node_weights: Vec<Q>,
    edge_weights: BTreeMap<(usize, usize), Q>,
    mode: WeightMode,
}

impl WeightedGraph {
    /// All node and edge weights 1.
    pub fn unit(graph: Graph) -> Self {
        let node_weights = vec![Q::one(); graph.n()];
        let edge_weights = graph.edges().into_iter().map(|e| (e, Q::one())).collect();
        WeightedGraph {
            graph,
            node_weights,
            edge_weights,
            mode: WeightMode::Unit,
        }
    }

    /// Node weights with edge weights derived from `mode` (MIN, MAX or UNIT).
    pub fn derived(graph: Graph, node_weights: Vec<Q>, mode: WeightMode) -> Result<Self> {
        Self::check_node_weights(&graph, &node_weights)?;
        match mode {
            WeightMode::Custom => {
                return Err(Error::InvalidParameter(
                    "CUSTOM mode needs explicit edge weights".into(),
                ))
            }
            WeightMode::Unit if node_weights.iter().any(|w| !w.is_one()) => {
                return Err(Error::InvalidParameter("UNIT mode requires all node weights 1".into()))
            }
            _ => {}
        }
        let edge_weights = graph
            .edges()
            .into_iter()
            .map(|(i, j)| ((i, j), derived_edge_weight(mode, &node_weights[i - 1], &node_weights[j - 1])))
            .collect();
        Ok(WeightedGraph {
            graph,
            node_weights,
            edge_weights,
            mode,
        })
    }

    /// Explicit edge weights (any sign), one for each edge of `graph`.
    pub fn custom(graph: Graph, node_weights: Vec<Q>, edge_weights: BTreeMap<(usize, usize), Q>) -> Result<Self> {
        Self::check_node_weights(&graph, &node_weights)?;
        let mut normalized = BTreeMap::new();
        for ((i, j), w) in edge_weights {
            let key = (i.min(j), i.max(j));
            if !graph.has_edge(key.0, key.1) {
                return Err(Error::MissingEdge(key.0, key.1));
            }
            normalized.insert(key, w);
        }
        if let Some((i, j)) = graph.edges().into_iter().find(|e| !normalized.contains_key(e)) {
            return Err(Error::InvalidGraph(format!("edge {{{i},{j}}} has no weight")));
        }
        Ok(WeightedGraph {
            graph,
            node_weights,
            edge_weights: normalized,
            mode: WeightMode::Custom,
        })
    }

    fn check_node_weights(graph: &Graph, w: &[Q]) -> Result<()> {
        if w.len() != graph.n() {
            return Err(Error::InvalidGraph(format!(
                "{} node weights for {} vertices",
                w.len(),
                graph.n()
            )));
        }
        if let Some(i) = w.iter().position(|x| x.is_negative()) {
            return Err(Error::InvalidGraph(format!("negative weight on vertex {}", i + 1)));
        }
        Ok(())
    }

    /// Same graph, new node weights, edge weights re-derived from `mode`.
    pub fn reweighted(&self, node_weights: Vec<Q>, mode: WeightMode) -> Result<Self> {
        Self::derived(self.graph.clone(), node_weights, mode)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn node_weights(&self) -> &[Q] {
        &self.node_weights
    }

    pub fn weight(&self, v: usize) -> &Q {
        &self.node_weights[v - 1]
    }

    pub fn edge_weights(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.edge_weights
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> Option<&Q> {
        self.edge_weights.get(&(i.min(j), i.max(j)))
    }

    pub fn total_weight(&self) -> Q {
        self.node_weights.iter().sum()
    }

    pub fn set_weight(&self, set: VertexSet) -> Q {
        members(set).map(|v| &self.node_weights[v - 1]).sum()
    }

    pub fn has_integer_weights(&self) -> bool {
        self.node_weights.iter().all(|w| w.is_integer())
    }

    /// `w_ij >= min{w_i, w_j}` on every edge.
    pub fn edges_dominate_min_weight(&self) -> bool {
        self.edge_weights
            .iter()
            .all(|(&(i, j), w)| w >= self.weight(i).min(self.weight(j)))
    }

    /// `w_ij >= max{w_i, w_j}` on every edge.
    pub fn edges_dominate_max_weight(&self) -> bool {
        self.edge_weights
            .iter()
            .all(|(&(i, j), w)| w >= self.weight(i).max(self.weight(j)))
    }

    /// Weighted subgraph induced by `keep`, weights restricted.
    pub fn induced(&self, keep: VertexSet) -> (WeightedGraph, Relabeling) {
        let (graph, relabel) = self.graph.induced(keep);
        let node_weights = members(keep).map(|v| self.weight(v).clone()).collect();
        let edge_weights = self
            .edge_weights
            .iter()
            .filter(|(&(i, j), _)| keep & bit(i) != 0 && keep & bit(j) != 0)
            .map(|(&(i, j), w)| ((relabel.get(i).unwrap(), relabel.get(j).unwrap()), w.clone()))
            .collect();
        let g = WeightedGraph {
            graph,
            node_weights,
            edge_weights,
            mode: self.mode,
        };
        (g, relabel)
    }

    /// `G - i`.
    pub fn delete_node(&self, i: usize) -> Result<(WeightedGraph, Relabeling)> {
        self.graph.check_vertex(i)?;
        Ok(self.induced(self.graph.vertices() & !bit(i)))
    }

    /// `G ⊖ i`: removes `i` together with its neighbours.
    pub fn delete_closed_neighborhood(&self, i: usize) -> Result<(WeightedGraph, Relabeling)> {
        self.graph.check_vertex(i)?;
        let gone = bit(i) | self.graph.neighbors(i);
        Ok(self.induced(self.graph.vertices() & !gone))
    }

    pub fn delete_vertices(&self, gone: VertexSet) -> (WeightedGraph, Relabeling) {
        self.induced(self.graph.vertices() & !gone)
    }

    fn check_edge(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        self.graph.check_vertex(i)?;
        self.graph.check_vertex(j)?;
        if !self.graph.has_edge(i, j) {
            return Err(Error::MissingEdge(i.min(j), i.max(j)));
        }
        Ok((i.min(j), i.max(j)))
    }

    /// `G \ e`.
    pub fn delete_edge(&self, i: usize, j: usize) -> Result<WeightedGraph> {
        let e = self.check_edge(i, j)?;
        let mut out = self.clone();
        out.graph.adj[e.0 - 1] &= !bit(e.1);
        out.graph.adj[e.1 - 1] &= !bit(e.0);
        out.edge_weights.remove(&e);
        Ok(out)
    }

    /// `G / e`: the higher-labelled endpoint is merged into the lower one,
    /// which keeps its own node weight. Returns the relabelling of the old
    /// vertices (the removed endpoint maps to the kept one).
    pub fn contract_edge(&self, i: usize, j: usize) -> Result<(WeightedGraph, Relabeling)> {
        let (keep, gone) = self.check_edge(i, j)?;
        let mut merged = self.clone();
        let extra = self.graph.neighbors(gone) & !bit(keep) & !self.graph.neighbors(keep);
        for k in members(extra) {
            merged.graph.adj[keep - 1] |= bit(k);
            merged.graph.adj[k - 1] |= bit(keep);
            let w = match self.mode {
                WeightMode::Custom => self.edge_weight(gone, k).unwrap().clone(),
                mode => derived_edge_weight(mode, self.weight(keep), self.weight(k)),
            };
            merged.edge_weights.insert((keep.min(k), keep.max(k)), w);
        }
        let (mut out, mut relabel) = merged.delete_vertices(bit(gone));
        relabel.old_to_new[gone - 1] = relabel.get(keep);
        if self.mode != WeightMode::Custom {
            out = out.rederived();
        }
        Ok((out, relabel))
    }

    fn rederived(self) -> WeightedGraph {
        let mode = self.mode;
        WeightedGraph::derived(self.graph, self.node_weights, mode).expect("weights already validated")
    }

    /// Complement graph. Edge weights are re-derived from the weight mode;
    /// CUSTOM graphs fall back to MAX since the new edges carry no weight.
    pub fn complement(&self) -> WeightedGraph {
        let mode = match self.mode {
            WeightMode::Custom => WeightMode::Max,
            m => m,
        };
        WeightedGraph::derived(self.graph.complement(), self.node_weights.clone(), mode)
            .expect("weights already validated")
    }

    /// Clique sum: `c1[k]` of `g1` is identified with `c2[k]` of `g2`.
    /// Vertices of `g1` keep their labels; the remaining vertices of `g2`
    /// follow in ascending order.
    pub fn clique_sum(g1: &WeightedGraph, g2: &WeightedGraph, c1: &[usize], c2: &[usize]) -> Result<WeightedGraph> {
        if c1.len() != c2.len() {
            return Err(Error::CliqueSum(format!(
                "clique sizes differ ({} vs {})",
                c1.len(),
                c2.len()
            )));
        }
        if g1.mode != g2.mode {
            return Err(Error::CliqueSum(format!(
                "edge modes differ ({} vs {})",
                g1.mode, g2.mode
            )));
        }
        for &v in c1 {
            g1.graph.check_vertex(v)?;
        }
        for &v in c2 {
            g2.graph.check_vertex(v)?;
        }
        let (s1, s2) = (set_of(c1), set_of(c2));
        if s1.count_ones() as usize != c1.len() || s2.count_ones() as usize != c2.len() {
            return Err(Error::CliqueSum("repeated vertex in clique list".into()));
        }
        if !g1.graph.is_clique(s1) || !g2.graph.is_clique(s2) {
            return Err(Error::CliqueSum("identified vertices do not form a clique".into()));
        }
        let n1 = g1.n();
        let n = n1 + g2.n() - c2.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        // map g2 labels into the sum
        let mut map2 = vec![0usize; g2.n() + 1];
        for (a, b) in c1.iter().zip(c2) {
            if g1.weight(*a) != g2.weight(*b) {
                return Err(Error::CliqueSum(format!(
                    "weight conflict on identified vertices {a} and {b}"
                )));
            }
            map2[*b] = *a;
        }
        let mut next = n1;
        for v in 1..=g2.n() {
            if s2 & bit(v) == 0 {
                next += 1;
                map2[v] = next;
            }
        }
        let mut node_weights = g1.node_weights.clone();
        for v in 1..=g2.n() {
            if s2 & bit(v) == 0 {
                node_weights.push(g2.weight(v).clone());
            }
        }
        let mut edge_weights = g1.edge_weights.clone();
        for (&(i, j), w) in &g2.edge_weights {
            let (a, b) = (map2[i], map2[j]);
            let key = (a.min(b), a.max(b));
            if let Some(existing) = edge_weights.get(&key) {
                if existing != w {
                    return Err(Error::CliqueSum(format!(
                        "edge {{{},{}}} carries different weights",
                        key.0, key.1
                    )));
                }
            }
            edge_weights.insert(key, w.clone());
        }
        let graph = Graph::from_edges(n, edge_weights.keys().copied())?;
        Ok(WeightedGraph {
            graph,
            node_weights,
            edge_weights,
            mode: g1.mode,
        })
    }

    /// Serializes to the graph file format.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}", self.n());
        if self.node_weights.iter().any(|w| !w.is_one()) {
            let ws: Vec<String> = self.node_weights.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(out, "nodeweights {}", ws.join(" "));
        }
        let _ = writeln!(out, "edgemode {}", self.mode);
        for (&(i, j), w) in &self.edge_weights {
            if self.mode == WeightMode::Custom {
                let _ = writeln!(out, "edge {i} {j} {w}");
            } else {
                let _ = writeln!(out, "edge {i} {j}");
            }
        }
        out
    }

    /// Parses the graph file format:
    ///
    /// ```text
    /// # comment
    /// nodes 5
    /// nodeweights 1 2 3/2 1 1
    /// edgemode MAX
    /// edge 1 2
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut weights: Option<Vec<Q>> = None;
        let mut mode = WeightMode::default();
        let mut edges: Vec<(usize, usize, Option<Q>, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let keyword = words.next().unwrap();
            let rest: Vec<&str> = words.collect();
            if n.is_none() && keyword != "nodes" {
                return Err(err("expected `nodes <n>` first".into()));
            }
            match keyword {
                "nodes" => {
                    if n.is_some() {
                        return Err(err("duplicate `nodes` line".into()));
                    }
                    let [count] = rest.as_slice() else {
                        return Err(err("usage: nodes <n>".into()));
                    };
                    let count: usize = count.parse().map_err(|_| err(format!("bad vertex count `{count}`")))?;
                    if count > MAX_VERTICES {
                        return Err(err(format!("{count} vertices; at most {MAX_VERTICES} supported")));
                    }
                    n = Some(count);
                }
                "nodeweights" => {
                    let parsed: Result<Vec<Q>> = rest.iter().map(|w| parse_q(w)).collect();
                    let parsed = parsed.map_err(|e| err(e.to_string()))?;
                    if parsed.len() != n.unwrap() {
                        return Err(err(format!("expected {} weights, found {}", n.unwrap(), parsed.len())));
                    }
                    weights = Some(parsed);
                }
                "edgemode" => {
                    let [m] = rest.as_slice() else {
                        return Err(err("usage: edgemode MIN|MAX|UNIT|CUSTOM".into()));
                    };
                    mode = m.parse().map_err(|e: Error| err(e.to_string()))?;
                }
                "edge" => {
                    let (i, j, w) = match rest.as_slice() {
                        [i, j] => (i, j, None),
                        [i, j, w] => (i, j, Some(parse_q(w).map_err(|e| err(e.to_string()))?)),
                        _ => return Err(err("usage: edge <i> <j> [<wij>]".into())),
                    };
                    let i: usize = i.parse().map_err(|_| err(format!("bad vertex `{i}`")))?;
                    let j: usize = j.parse().map_err(|_| err(format!("bad vertex `{j}`")))?;
                    edges.push((i, j, w, line_no));
                }
                other => return Err(err(format!("unknown keyword `{other}`"))),
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `nodes` line".into(),
        })?;
        for &(i, j, ref w, line) in &edges {
            let err = |msg: String| Error::Parse { line, msg };
            if i == 0 || j == 0 || i > n || j > n {
                return Err(err(format!("edge {{{i},{j}}} outside 1..={n}")));
            }
            match (mode, w) {
                (WeightMode::Custom, None) => return Err(err("CUSTOM mode requires an edge weight".into())),
                (m, Some(_)) if m != WeightMode::Custom => {
                    return Err(err("edge weights are only allowed in CUSTOM mode".into()))
                }
                _ => {}
            }
        }
        let graph = Graph::from_edges(n, edges.iter().map(|e| (e.0, e.1)))?;
        let weights = weights.unwrap_or_else(|| vec![Q::one(); n]);
        match mode {
            WeightMode::Custom => {
                let ew = edges.into_iter().map(|(i, j, w, _)| ((i, j), w.unwrap())).collect();
                WeightedGraph::custom(graph, weights, ew)
            }
            m => WeightedGraph::derived(graph, weights, m),
        }
    }
}

/// Named graph families.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Complete(usize),
    Circuit(usize),
    /// Complement of the circuit `C_n`.
    ComplementCircuit(usize),
    /// `W_n`: the odd circuit `C_n` (vertices `1..=n`) plus apex `n + 1`.
    OddWheel(usize),
    /// `K_{1,n}`: centre 1, leaves `2..=n+1`.
    Star(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    /// The graphs `G_k` of Lipták and Tunçel on `3k` vertices.
    LiptakTuncel(usize),
    /// `t` copies of `K_{t+1}` glued along a common `K_t` (2t vertices).
    CliqueFan(usize),
    Random { n: usize, p: f64, seed: u64 },
}

impl FromStr for Family {
    type Err = Error;

    /// `complete:5`, `circuit:7`, `co-circuit:7`, `wheel:5`, `star:3`,
    /// `bipartite:2:3`, `path:4`, `lt:2`, `fan:2`, `random:8:0.5:42`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidParameter(format!("cannot parse family `{s}`"));
        let num = |i: usize| -> Result<usize> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let fam = match parts[0] {
            "complete" | "K" => Family::Complete(num(1)?),
            "circuit" | "C" => Family::Circuit(num(1)?),
            "co-circuit" | "complement-circuit" => Family::ComplementCircuit(num(1)?),
            "wheel" | "W" => Family::OddWheel(num(1)?),
            "star" => Family::Star(num(1)?),
            "bipartite" => Family::CompleteBipartite(num(1)?, num(2)?),
            "path" | "P" => Family::Path(num(1)?),
            "lt" | "liptak-tuncel" => Family::LiptakTuncel(num(1)?),
            "fan" => Family::CliqueFan(num(1)?),
            "random" => Family::Random {
                n: num(1)?,
                p: parts.get(2).ok_or_else(bad)?.parse().map_err(|_| bad())?,
                seed: parts.get(3).ok_or_else(bad)?.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        if parts.len() > fam.arity() + 1 {
            return Err(bad());
        }
        Ok(fam)
    }
}

impl Family {
    fn arity(&self) -> usize {
        match self {
            Family::CompleteBipartite(..) => 2,
            Family::Random { .. } => 3,
            _ => 1,
        }
    }

    /// Unweighted graph of the family.
    pub fn graph(&self) -> Result<Graph> {
        match *self {
            Family::Complete(n) => complete(n),
            Family::Circuit(n) => circuit(n),
            Family::ComplementCircuit(n) => Ok(circuit(n)?.complement()),
            Family::OddWheel(n) => odd_wheel(n),
            Family::Star(n) => complete_bipartite(1, n),
            Family::CompleteBipartite(a, b) => complete_bipartite(a, b),
            Family::Path(n) => path(n),
            Family::LiptakTuncel(k) => liptak_tuncel(k),
            Family::CliqueFan(t) => clique_fan(t),
            Family::Random { n, p, seed } => random_graph(n, p, seed),
        }
    }
}

/// Builds a family member with unit node weights and the requested edge mode.
pub fn generate(family: &Family, mode: WeightMode) -> Result<WeightedGraph> {
    let g = family.graph()?;
    match mode {
        WeightMode::Unit => Ok(WeightedGraph::unit(g)),
        WeightMode::Custom => {
            let ew = g.edges().into_iter().map(|e| (e, Q::one())).collect();
            WeightedGraph::custom(g.clone(), vec![Q::one(); g.n()], ew)
        }
        m => WeightedGraph::derived(g.clone(), vec![Q::one(); g.n()], m),
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
}

pub fn circuit(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("circuit needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (1..=n).map(|i| (i, i % n + 1)))
}

pub fn odd_wheel(n: usize) -> Result<Graph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("odd wheel needs an odd circuit length >= 3, got {n}")));
    }
    let rim = (1..=n).map(|i| (i, i % n + 1));
    let spokes = (1..=n).map(|i| (i, n + 1));
    Graph::from_edges(n + 1, rim.chain(spokes))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    Graph::from_edges(a + b, (1..=a).flat_map(|i| (a + 1..=a + b).map(move |j| (i, j))))
}

pub fn path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|i| (i, i + 1)))
}

/// `G_k` on vertices `1..=3k`: the block `{1,2,3,4}` is complete minus `34`;
/// each middle block `{3i-2,..,3i+1}` (`2 <= i <= k-1`) is complete minus
/// `{3i-2,3i}` and `{3i,3i+1}`; the last block `{3k-2,3k-1,3k}` is complete
/// minus `{3k-2,3k}`; chords `{3i,3i+3}` join consecutive blocks.
pub fn liptak_tuncel(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("G_k needs k >= 2, got {k}")));
    }
    let mut edges = Vec::new();
    let mut block = |vs: &[usize], missing: &[(usize, usize)]| {
        for (a, &i) in vs.iter().enumerate() {
            for &j in &vs[a + 1..] {
                if !missing.contains(&(i, j)) {
                    edges.push((i, j));
                }
            }
        }
    };
    block(&[1, 2, 3, 4], &[(3, 4)]);
    for i in 2..k {
        let b = 3 * i - 2;
        block(&[b, b + 1, b + 2, b + 3], &[(b, b + 2), (b + 2, b + 3)]);
    }
    let b = 3 * k - 2;
    block(&[b, b + 1, b + 2], &[(b, b + 2)]);
    for i in 1..k {
        edges.push((3 * i, 3 * i + 3));
    }
    Graph::from_edges(3 * k, edges)
}

/// Clique sum of `t` copies of `K_{t+1}` along a common `K_t`: the common
/// clique is `1..=t` and vertex `t + s` is the private vertex of copy `s`.
pub fn clique_fan(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidParameter("clique fan needs t >= 1".into()));
    }
    let core = (1..=t).flat_map(|i| (i + 1..=t).map(move |j| (i, j)));
    let spokes = (t + 1..=2 * t).flat_map(|s| (1..=t).map(move |i| (i, s)));
    Graph::from_edges(2 * t, core.chain(spokes))
}

/// Erdos-Renyi graph from a seeded ChaCha8 stream.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Random bipartite graph: vertices `1..=a` on one side, `a+1..=a+b` on the
/// other, each crossing pair joined with probability `p`.
pub fn random_bipartite(a: usize, b: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 1..=a {
        for j in a + 1..=a + b {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(a + b, edges)
}

/// Integer weights drawn uniformly from `lo..=hi`.
pub fn random_integer_weights(n: usize, lo: i64, hi: i64, seed: u64) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| q(rng.gen_range(lo..=hi))).collect()
}

/// Positive rationals `a/b` with `a` in `1..=12`, `b` in `1..=4`.
pub fn random_rational_weights(n: usize, seed: u64) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| qf(rng.gen_range(1..=12), rng.gen_range(1..=4))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit(g: Result<Graph>) -> WeightedGraph {
        WeightedGraph::unit(g.unwrap())
    }

    #[test]
    fn deleting_a_node_of_k4_leaves_k3() {
        for i in 1..=4 {
            let (h, relabel) = unit(complete(4)).delete_node(i).unwrap();
            assert_eq!(h.graph(), &complete(3).unwrap());
            assert_eq!(relabel.get(i), None);
        }
    }

    #[test]
    fn c5_minus_node_is_a_path() {
        let (h, relabel) = unit(circuit(5)).delete_node(1).unwrap();
        assert_eq!(h.graph(), &path(4).unwrap());
        assert!(h.graph().is_bipartite());
        assert_eq!(relabel.inverse(), vec![2, 3, 4, 5]);
    }

    #[test]
    fn single_vertex_deletion_gives_empty_graph() {
        let (h, _) = unit(complete(1)).delete_node(1).unwrap();
        assert_eq!(h.n(), 0);
        assert!(unit(complete(1)).delete_node(2).is_err());
    }

    #[test]
    fn closed_neighbourhood_of_c5() {
        let (h, relabel) = unit(circuit(5)).delete_closed_neighborhood(1).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.graph().edges(), vec![(1, 2)]);
        assert_eq!(relabel.inverse(), vec![3, 4]);
    }

    #[test]
    fn closed_neighbourhood_of_complete_and_star() {
        let (h, _) = unit(complete(5)).delete_closed_neighborhood(3).unwrap();
        assert_eq!(h.n(), 0);
        let (h, _) = unit(complete_bipartite(1, 4)).delete_closed_neighborhood(1).unwrap();
        assert_eq!(h.n(), 0);
    }

    #[test]
    fn c5_is_self_complementary() {
        let c = circuit(5).unwrap().complement();
        assert_eq!(c.num_edges(), 5);
        assert!((1..=5).all(|v| c.degree(v) == 2));
        // 1-3-5-2-4-1
        for (i, j) in [(1, 3), (3, 5), (5, 2), (2, 4), (4, 1)] {
            assert!(c.has_edge(i, j));
        }
    }

    #[test]
    fn k4_minus_edge() {
        let g = unit(complete(4)).delete_edge(1, 3).unwrap();
        assert_eq!(g.graph().num_edges(), 5);
        assert!(!g.graph().has_edge(1, 3));
        assert!(g.delete_edge(1, 3).is_err());
    }

    #[test]
    fn contracting_a_triangle_edge() {
        let (g, relabel) = unit(complete(3)).contract_edge(2, 3).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.graph().edges(), vec![(1, 2)]);
        assert_eq!(relabel.get(3), Some(2));
    }

    #[test]
    fn contraction_keeps_lower_endpoint_weight() {
        let g = WeightedGraph::derived(path(3).unwrap(), vec![q(1), q(5), q(2)], WeightMode::Max).unwrap();
        let (h, _) = g.contract_edge(2, 3).unwrap();
        assert_eq!(h.node_weights(), &[q(1), q(5)]);
        assert_eq!(h.edge_weight(1, 2), Some(&q(5)));
    }

    #[test]
    fn clique_two_sum_of_triangles_is_the_fan() {
        let k3 = unit(complete(3));
        let g = WeightedGraph::clique_sum(&k3, &k3, &[1, 2], &[1, 2]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.graph().num_edges(), 5);
        assert_eq!(g.graph(), &clique_fan(2).unwrap());
    }

    #[test]
    fn clique_zero_sum_adds_isolated_vertex() {
        let g = WeightedGraph::clique_sum(&unit(complete(1)), &unit(complete(3)), &[], &[]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.graph().degree(1), 0);
        assert_eq!(g.graph().num_edges(), 3);
    }

    #[test]
    fn clique_sum_errors() {
        let c5 = unit(circuit(5));
        let k3 = unit(complete(3));
        assert!(WeightedGraph::clique_sum(&c5, &k3, &[1, 3], &[1, 2]).is_err());
        assert!(WeightedGraph::clique_sum(&k3, &k3, &[1, 2], &[1]).is_err());
        let heavy = WeightedGraph::derived(complete(3).unwrap(), vec![q(2), q(1), q(1)], WeightMode::Max).unwrap();
        let k3max = WeightedGraph::derived(complete(3).unwrap(), vec![q(1); 3], WeightMode::Max).unwrap();
        assert!(WeightedGraph::clique_sum(&k3max, &heavy, &[1], &[1]).is_err());
    }

    #[test]
    fn liptak_tuncel_g2_edges() {
        let g = liptak_tuncel(2).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(
            g.edges(),
            vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 6), (4, 5), (5, 6)]
        );
        // C_5 = 1-3-6-5-4-1 plus vertex 2 adjacent to the consecutive 3, 1, 4
        let (c, _) = g.induced(g.vertices() & !bit(2));
        assert!((1..=5).all(|v| c.degree(v) == 2));
        assert_eq!(g.neighbors(2), set_of(&[1, 3, 4]));
    }

    #[test]
    fn wheel_and_trivial_families() {
        let w = odd_wheel(5).unwrap();
        assert_eq!(w.n(), 6);
        assert_eq!(w.degree(6), 5);
        assert_eq!(w.num_edges(), 10);
        assert!(odd_wheel(4).is_err());
        let k1 = complete(1).unwrap();
        assert_eq!((k1.n(), k1.num_edges()), (1, 0));
    }

    #[test]
    fn family_parsing() {
        assert_eq!("wheel:5".parse::<Family>().unwrap(), Family::OddWheel(5));
        assert_eq!("bipartite:2:3".parse::<Family>().unwrap(), Family::CompleteBipartite(2, 3));
        assert!("circuit".parse::<Family>().is_err());
        assert!("complete:3:4".parse::<Family>().is_err());
    }

    #[test]
    fn weight_conditions() {
        let g = WeightedGraph::derived(path(2).unwrap(), vec![q(1), q(3)], WeightMode::Min).unwrap();
        assert!(g.edges_dominate_min_weight());
        assert!(!g.edges_dominate_max_weight());
        let g = g.reweighted(vec![q(1), q(3)], WeightMode::Max).unwrap();
        assert!(g.edges_dominate_min_weight() && g.edges_dominate_max_weight());
        assert!(WeightedGraph::derived(path(2).unwrap(), vec![q(1), q(2)], WeightMode::Unit).is_err());
    }

    #[test]
    fn file_format_roundtrip_and_errors() {
        let text = "# weighted path\nnodes 3\nnodeweights 1 5/2 2\nedgemode MIN\nedge 1 2\nedge 2 3\n";
        let g = WeightedGraph::parse(text).unwrap();
        assert_eq!(g.edge_weight(2, 3), Some(&q(2)));
        assert_eq!(WeightedGraph::parse(&g.to_file_string()).unwrap(), g);

        let custom = "nodes 2\nedgemode CUSTOM\nedge 1 2 -3/4\n";
        let g = WeightedGraph::parse(custom).unwrap();
        assert_eq!(g.edge_weight(1, 2), Some(&qf(-3, 4)));
        assert_eq!(WeightedGraph::parse(&g.to_file_string()).unwrap(), g);

        assert!(matches!(WeightedGraph::parse("edge 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(WeightedGraph::parse("nodes 2\nedgemode CUSTOM\nedge 1 2\n").is_err());
        assert!(WeightedGraph::parse("nodes 2\nedge 1 2 5\n").is_err());
        assert!(WeightedGraph::parse("nodes 2\nedge 1 3\n").is_err());
        assert!(WeightedGraph::parse("nodes 2\nedge 1 2\nedge 2 1\n").is_err());
        assert!(WeightedGraph::parse("nodes 64\n").is_err());
    }

    fn arb_weighted() -> impl Strategy<Value = WeightedGraph> {
        (1usize..9, any::<u64>(), 0usize..3).prop_map(|(n, seed, m)| {
            let mode = [WeightMode::Min, WeightMode::Max, WeightMode::Unit][m];
            let g = random_graph(n, 0.5, seed).unwrap();
            let w = if mode == WeightMode::Unit {
                vec![Q::one(); n]
            } else {
                random_rational_weights(n, seed ^ 7)
            };
            WeightedGraph::derived(g, w, mode).unwrap()
        })
    }

    proptest! {
        #[test]
        fn complement_is_an_involution(g in arb_weighted()) {
            prop_assert_eq!(g.complement().complement(), g);
        }

        #[test]
        fn node_deletions_commute(g in arb_weighted(), a in 1usize..9, b in 1usize..9) {
            prop_assume!(a <= g.n() && b <= g.n() && a != b);
            let (ga, ra) = g.delete_node(a).unwrap();
            let (gab, _) = ga.delete_node(ra.get(b).unwrap()).unwrap();
            let (gb, rb) = g.delete_node(b).unwrap();
            let (gba, _) = gb.delete_node(rb.get(a).unwrap()).unwrap();
            prop_assert_eq!(gab, gba);
        }

        #[test]
        fn clique_sum_restricts_to_first_summand(g in arb_weighted(), k in 1usize..5) {
            let g = g.reweighted(vec![Q::one(); g.n()], WeightMode::Max).unwrap();
            let other = WeightedGraph::derived(complete(k + 1).unwrap(), vec![Q::one(); k + 1], WeightMode::Max).unwrap();
            // glue along a single vertex of g
            let s = WeightedGraph::clique_sum(&g, &other, &[1], &[1]).unwrap();
            let (back, _) = s.induced(g.graph().vertices());
            prop_assert_eq!(back, g);
        }

        #[test]
        fn derived_max_and_unit_edges_dominate_node_weights(g in arb_weighted()) {
            if g.mode() != WeightMode::Min {
                prop_assert!(g.edges_dominate_max_weight());
            }
            prop_assert!(g.edges_dominate_min_weight());
        }
    }
}
