//! Acyclic networks with ordered sources and one sink, source profiles of
//! edge subsets, and unit-capacity flow primitives.

mod flow;
mod sets;

pub use flow::{
    edge_disjoint_paths, max_flow, mincut_node_to_node, mincut_to_edgeset, FlowOutcome, Terminal,
};
pub use sets::{EdgeSet, SourceSet};

use std::collections::HashMap;

/// Upper bound on the number of sources; source sets are `u32` masks.
pub const MAX_SOURCES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("network has a directed cycle")]
    CycleDetected,
    #[error("source `{0}` has an incoming edge")]
    SourceHasInEdge(String),
    #[error("sink `{0}` has an outgoing edge")]
    SinkHasOutEdge(String),
    #[error("node `{0}` has no path to the sink")]
    NodeCannotReachSink(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdgeId(String),
    #[error("no sink declared")]
    MissingSink,
    #[error("no source declared")]
    MissingSource,
    #[error("node `{0}` declared more than once as a terminal")]
    DuplicateTerminal(String),
    #[error("at most {MAX_SOURCES} sources are supported")]
    TooManySources,
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("requested {requested} edge-disjoint paths but only {available} exist")]
    InsufficientConnectivity { requested: usize, available: usize },
    #[error("target node lies in the source set")]
    TargetInSources,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// Unvalidated network description, as read from a file.
#[derive(Debug, Clone, Default)]
pub struct NetworkSpec {
    pub sources: Vec<String>,
    pub sink: Option<String>,
    /// `(edge id, tail, head)`
    pub edges: Vec<(String, String, String)>,
}

impl NetworkSpec {
    /// Parses the line-oriented network format:
    ///
    /// ```text
    /// source s1
    /// sink rho
    /// edge e1 s1 rho   # comment
    /// ```
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut spec = NetworkSpec::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: n + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["source", id] => spec.sources.push(id.to_string()),
                ["sink", id] => {
                    if spec.sink.is_some() {
                        return Err(err("second sink declaration".into()));
                    }
                    spec.sink = Some(id.to_string());
                }
                ["edge", id, tail, head] => {
                    spec.edges
                        .push((id.to_string(), tail.to_string(), head.to_string()))
                }
                _ => return Err(err(format!("unrecognised declaration `{line}`"))),
            }
        }
        Ok(spec)
    }
}

/// A validated acyclic network: every source has no incoming edge, the sink
/// has no outgoing edge, every node reaches the sink.
#[derive(Debug, Clone)]
pub struct Network {
    names: Vec<String>,
    node_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    topo: Vec<usize>,
    sources: Vec<usize>,
    sink: usize,
    /// Sources with a directed path to each node (a source reaches itself).
    upstream: Vec<SourceSet>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.edges == other.edges
            && self.sources == other.sources
            && self.sink == other.sink
    }
}

/// Kahn's algorithm, smallest node index first. `None` if cyclic.
fn topological_order(n: usize, edges: &[Edge]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for e in edges {
        indeg[e.head] += 1;
        out[e.tail].push(e.head);
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

impl Network {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        Self::validate(&NetworkSpec::parse(text)?)
    }

    /// Checks every structural invariant and builds the adjacency indexes.
    pub fn validate(spec: &NetworkSpec) -> Result<Self, GraphError> {
        let sink_name = spec.sink.clone().ok_or(GraphError::MissingSink)?;
        if spec.sources.is_empty() {
            return Err(GraphError::MissingSource);
        }
        if spec.sources.len() > MAX_SOURCES {
            return Err(GraphError::TooManySources);
        }
        let mut names = Vec::new();
        let mut node_index = HashMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
            *node_index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        let mut sources = Vec::new();
        for s in &spec.sources {
            let v = intern(s, &mut names);
            if sources.contains(&v) {
                return Err(GraphError::DuplicateTerminal(s.clone()));
            }
            sources.push(v);
        }
        let sink = intern(&sink_name, &mut names);
        if sources.contains(&sink) {
            return Err(GraphError::DuplicateTerminal(sink_name));
        }
        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        for (id, t, h) in &spec.edges {
            if edge_index.insert(id.clone(), edges.len()).is_some() {
                return Err(GraphError::DuplicateEdgeId(id.clone()));
            }
            let tail = intern(t, &mut names);
            let head = intern(h, &mut names);
            edges.push(Edge {
                id: id.clone(),
                tail,
                head,
            });
        }
        let node_index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Self::assemble(names, node_index, edges, edge_index, sources, sink)
    }

    fn assemble(
        names: Vec<String>,
        node_index: HashMap<String, usize>,
        edges: Vec<Edge>,
        edge_index: HashMap<String, usize>,
        sources: Vec<usize>,
        sink: usize,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.tail].push(i);
            in_edges[e.head].push(i);
        }
        for &s in &sources {
            if !in_edges[s].is_empty() {
                return Err(GraphError::SourceHasInEdge(names[s].clone()));
            }
        }
        if !out_edges[sink].is_empty() {
            return Err(GraphError::SinkHasOutEdge(names[sink].clone()));
        }
        let topo = topological_order(n, &edges).ok_or(GraphError::CycleDetected)?;

        let mut reaches = vec![false; n];
        reaches[sink] = true;
        for &v in topo.iter().rev() {
            if out_edges[v].iter().any(|&e| reaches[edges[e].head]) {
                reaches[v] = true;
            }
        }
        if let Some(v) = (0..n).find(|&v| !reaches[v]) {
            return Err(GraphError::NodeCannotReachSink(names[v].clone()));
        }

        let mut upstream = vec![SourceSet::EMPTY; n];
        for (i, &s) in sources.iter().enumerate() {
            upstream[s] = SourceSet::single(i);
        }
        for &v in &topo {
            for &e in &out_edges[v] {
                let h = edges[e].head;
                upstream[h] = upstream[h].union(upstream[v]);
            }
        }
        Ok(Network {
            names,
            node_index,
            edges,
            edge_index,
            out_edges,
            in_edges,
            topo,
            sources,
            sink,
            upstream,
        })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn source_count(&self) -> usize {
        self.sources.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize, GraphError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    /// Edge set from edge ids.
    pub fn edge_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<EdgeSet, GraphError> {
        ids.iter()
            .map(|id| self.edge_by_id(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(EdgeSet::from_iter)
    }

    pub fn edge_ids(&self, set: &EdgeSet) -> Vec<String> {
        set.iter().map(|e| self.edges[e].id.clone()).collect()
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn node_by_name(&self, name: &str) -> Result<usize, GraphError> {
        self.node_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownNode(name.to_string()))
    }

    /// Source nodes in declaration order `σ_1..σ_s`.
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Edges sorted so that every edge comes after all edges into its tail.
    pub fn edge_topo_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.edges.len());
        for &v in &self.topo {
            order.extend_from_slice(&self.out_edges[v]);
        }
        order
    }

    /// Source position of node `v`, if it is a source.
    pub fn source_position(&self, v: usize) -> Option<usize> {
        self.sources.iter().position(|&s| s == v)
    }

    /// Sources with a directed path to node `v`.
    pub fn upstream_sources(&self, v: usize) -> SourceSet {
        self.upstream[v]
    }

    pub fn all_sources(&self) -> SourceSet {
        SourceSet::full(self.sources.len())
    }

    /// `D_C`: sources with a path to the tail of some edge of `C`.
    pub fn d_set(&self, edges: impl IntoIterator<Item = usize>) -> SourceSet {
        edges
            .into_iter()
            .fold(SourceSet::EMPTY, |acc, e| acc.union(self.upstream[self.edges[e].tail]))
    }

    /// Sources that cannot reach the sink once the flagged edges are deleted.
    pub fn severed_sources(&self, removed: &[bool]) -> SourceSet {
        self.severed_by(|e| removed[e])
    }

    /// As [`severed_sources`](Self::severed_sources) with a bitmask over edge
    /// indices (networks with at most 64 edges).
    pub fn severed_by_mask(&self, mask: u64) -> SourceSet {
        self.severed_by(|e| mask >> e & 1 == 1)
    }

    fn severed_by(&self, removed: impl Fn(usize) -> bool) -> SourceSet {
        let mut reach = vec![false; self.names.len()];
        reach[self.sink] = true;
        for &v in self.topo.iter().rev() {
            if !reach[v] {
                reach[v] = self.out_edges[v]
                    .iter()
                    .any(|&e| !removed(e) && reach[self.edges[e].head]);
            }
        }
        let mut out = SourceSet::EMPTY;
        for (i, &s) in self.sources.iter().enumerate() {
            if !reach[s] {
                out.insert(i);
            }
        }
        out
    }

    /// Nodes reachable from `from` once the edges of `removed` are deleted.
    pub fn reachable_from(&self, from: &[usize], removed: &EdgeSet) -> Vec<bool> {
        let mut seen = vec![false; self.names.len()];
        for &u in from {
            seen[u] = true;
        }
        for &v in &self.topo {
            if seen[v] {
                for &e in &self.out_edges[v] {
                    if !removed.contains(e) {
                        seen[self.edges[e].head] = true;
                    }
                }
            }
        }
        seen
    }

    /// True iff `cut` separates the edge set `target` from the node set
    /// `from`: after deleting `cut`, no remaining edge of `target` can be
    /// entered from `from`.
    pub fn separates_edges(&self, cut: &EdgeSet, from: &[usize], target: &EdgeSet) -> bool {
        let seen = self.reachable_from(from, cut);
        target
            .iter()
            .all(|e| cut.contains(e) || !seen[self.edges[e].tail])
    }

    /// Node indices of a source set.
    pub fn source_nodes(&self, set: SourceSet) -> Vec<usize> {
        set.iter().map(|i| self.sources[i]).collect()
    }

    /// `(D_C, I_C, J_C)` for an edge subset.
    pub fn source_profile(&self, c: &EdgeSet) -> SourceProfile {
        let d_set = self.d_set(c.iter());
        let i_set = self.severed_sources(&c.indicator(self.edge_count()));
        SourceProfile {
            d_set,
            i_set,
            j_set: d_set.difference(i_set),
        }
    }

    /// True iff deleting `C` disconnects at least one source from the sink.
    pub fn is_cut_set(&self, c: &EdgeSet) -> bool {
        !self.severed_sources(&c.indicator(self.edge_count())).is_empty()
    }

    /// The network with every edge flipped. The sink becomes the only source
    /// and the sources become sinks.
    pub fn reverse(&self) -> ReversedNetwork {
        ReversedNetwork {
            names: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    id: e.id.clone(),
                    tail: e.head,
                    head: e.tail,
                })
                .collect(),
            source: self.sink,
            sinks: self.sources.clone(),
        }
    }

    /// Drops the given sources and their outgoing edges. Fails if a remaining
    /// node loses its path to the sink.
    pub fn without_sources(&self, drop: SourceSet) -> Result<Network, GraphError> {
        let mut spec = NetworkSpec {
            sources: Vec::new(),
            sink: Some(self.names[self.sink].clone()),
            edges: Vec::new(),
        };
        let dropped: Vec<usize> = drop.iter().map(|i| self.sources[i]).collect();
        for (i, &s) in self.sources.iter().enumerate() {
            if !drop.contains(i) {
                spec.sources.push(self.names[s].clone());
            }
        }
        for e in &self.edges {
            if !dropped.contains(&e.tail) {
                spec.edges.push((
                    e.id.clone(),
                    self.names[e.tail].clone(),
                    self.names[e.head].clone(),
                ));
            }
        }
        Network::validate(&spec)
    }

    /// Text form accepted by [`Network::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &v in &self.sources {
            s.push_str(&format!("source {}\n", self.names[v]));
        }
        s.push_str(&format!("sink {}\n", self.names[self.sink]));
        for e in &self.edges {
            s.push_str(&format!(
                "edge {} {} {}\n",
                e.id, self.names[e.tail], self.names[e.head]
            ));
        }
        s
    }
}

/// A network with every edge reversed: one source (the former sink) and the
/// former sources as ordered sinks.
#[derive(Debug, Clone, PartialEq)]
pub struct ReversedNetwork {
    pub names: Vec<String>,
    pub edges: Vec<Edge>,
    pub source: usize,
    pub sinks: Vec<usize>,
}

impl ReversedNetwork {
    /// Flips the edges back.
    pub fn reverse(&self) -> Result<Network, GraphError> {
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                tail: e.head,
                head: e.tail,
            })
            .collect();
        let node_index = self
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        Network::assemble(
            self.names.clone(),
            node_index,
            edges,
            edge_index,
            self.sinks.clone(),
            self.source,
        )
    }

    /// Edge lists per node `(in, out)` in the reversed orientation.
    pub fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = self.names.len();
        let (mut inc, mut out) = (vec![Vec::new(); n], vec![Vec::new(); n]);
        for (i, e) in self.edges.iter().enumerate() {
            out[e.tail].push(i);
            inc[e.head].push(i);
        }
        (inc, out)
    }

    /// Edges in a topological order of the reversed graph.
    pub fn edge_topo_order(&self) -> Vec<usize> {
        let order = topological_order(self.names.len(), &self.edges)
            .expect("reversal of an acyclic network is acyclic");
        let (_, out) = self.adjacency();
        order.iter().flat_map(|&v| out[v].clone()).collect()
    }
}

/// `(D_C, I_C, J_C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceProfile {
    pub d_set: SourceSet,
    pub i_set: SourceSet,
    pub j_set: SourceSet,
}
