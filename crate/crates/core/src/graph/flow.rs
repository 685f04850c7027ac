//! Unit-capacity max-flow (Edmonds-Karp) with edge splitting, so that cut
//! terminals can be node sets or edge sets.
//!
//! An edge set used as a flow *source* becomes arcs `s* -> head(e)`; an edge
//! set used as a *target* becomes arcs `tail(e) -> t*`. Each such arc keeps
//! the original edge label, so cutting it means cutting that edge. Node
//! terminals attach through infinite-capacity arcs.

use std::collections::VecDeque;

use super::{EdgeSet, GraphError, Network};

const INF: i64 = i64::MAX / 4;

/// One end of a flow problem.
#[derive(Debug, Clone)]
pub enum Terminal {
    Node(usize),
    Nodes(Vec<usize>),
    Edges(EdgeSet),
}

/// Result of a max-flow computation.
#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub value: usize,
    /// Minimum cut closest to the flow source: edges leaving the residual
    /// reachable set of `s*`.
    pub source_side_cut: EdgeSet,
    /// Minimum cut closest to the flow target: edges entering the set of
    /// nodes that still reach `t*` in the residual graph.
    pub sink_side_cut: EdgeSet,
    /// Graph nodes that reach `t*` in the residual graph.
    pub sink_side_nodes: Vec<bool>,
    /// Edge-disjoint paths carrying the flow, as edge index lists.
    pub paths: Vec<Vec<usize>>,
}

struct Arc {
    from: usize,
    to: usize,
    cap: i64,
    orig: i64,
    label: Option<usize>,
}

struct FlowNet {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            arcs: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64, label: Option<usize>) {
        let i = self.arcs.len();
        self.arcs.push(Arc { from, to, cap, orig: cap, label });
        self.arcs.push(Arc { from: to, to: from, cap: 0, orig: 0, label: None });
        self.adj[from].push(i);
        self.adj[to].push(i + 1);
    }

    fn augment(&mut self, s: usize, t: usize) -> Option<i64> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return None;
        }
        let mut bottleneck = INF;
        let mut v = t;
        while v != s {
            let a = parent[v];
            bottleneck = bottleneck.min(self.arcs[a].cap);
            v = self.arcs[a].from;
        }
        let mut v = t;
        while v != s {
            let a = parent[v];
            self.arcs[a].cap -= bottleneck;
            self.arcs[a ^ 1].cap += bottleneck;
            v = self.arcs[a].from;
        }
        Some(bottleneck)
    }

    fn forward_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }

    fn backward_reach(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(y) = queue.pop_front() {
            for &b in &self.adj[y] {
                let x = self.arcs[b].to;
                if self.arcs[b ^ 1].cap > 0 && !seen[x] {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        seen
    }

    fn decompose(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut flow: Vec<i64> = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| if i % 2 == 0 { a.orig - a.cap } else { 0 })
            .collect();
        let mut paths = Vec::new();
        loop {
            let mut path = Vec::new();
            let mut u = s;
            while u != t {
                let Some(&a) = self.adj[u].iter().find(|&&a| a % 2 == 0 && flow[a] > 0) else {
                    return paths;
                };
                flow[a] -= 1;
                if let Some(e) = self.arcs[a].label {
                    path.push(e);
                }
                u = self.arcs[a].to;
            }
            paths.push(path);
        }
    }
}

/// Max-flow from `from` to `to` in the network with `removed` edges deleted.
pub fn max_flow(
    net: &Network,
    removed: &EdgeSet,
    from: &Terminal,
    to: &Terminal,
) -> Result<FlowOutcome, GraphError> {
    let n = net.node_count();
    let (s, t) = (n, n + 1);
    let mut fnet = FlowNet::new(n + 2);
    let source_nodes: &[usize] = match from {
        Terminal::Node(v) => std::slice::from_ref(v),
        Terminal::Nodes(vs) => vs,
        Terminal::Edges(_) => &[],
    };
    if let Terminal::Node(v) = to {
        if source_nodes.contains(v) {
            return Err(GraphError::TargetInSources);
        }
    }
    for &u in source_nodes {
        fnet.add(s, u, INF, None);
    }
    if let Terminal::Node(v) = to {
        fnet.add(*v, t, INF, None);
    }
    let empty = EdgeSet::empty();
    let from_edges = match from {
        Terminal::Edges(c) => c,
        _ => &empty,
    };
    let to_edges = match to {
        Terminal::Edges(w) => w,
        _ => &empty,
    };
    for (i, e) in net.edges().iter().enumerate() {
        if removed.contains(i) {
            continue;
        }
        let tail = if from_edges.contains(i) { s } else { e.tail };
        let head = if to_edges.contains(i) { t } else { e.head };
        fnet.add(tail, head, 1, Some(i));
    }

    let mut value = 0i64;
    while let Some(b) = fnet.augment(s, t) {
        value += b;
    }

    let src_side = fnet.forward_reach(s);
    let snk_side = fnet.backward_reach(t);
    let mut source_cut = Vec::new();
    let mut sink_cut = Vec::new();
    for arc in fnet.arcs.iter().step_by(2) {
        if let Some(e) = arc.label {
            if src_side[arc.from] && !src_side[arc.to] {
                source_cut.push(e);
            }
            if !snk_side[arc.from] && snk_side[arc.to] {
                sink_cut.push(e);
            }
        }
    }
    Ok(FlowOutcome {
        value: value as usize,
        source_side_cut: source_cut.into_iter().collect(),
        sink_side_cut: sink_cut.into_iter().collect(),
        sink_side_nodes: snk_side[..n].to_vec(),
        paths: fnet.decompose(s, t),
    })
}

/// Minimum number of edges separating node `v` from the node set `u`,
/// with a witness cut (the one closest to `u`). Zero with an empty witness
/// when no path exists.
pub fn mincut_node_to_node(
    net: &Network,
    u: &[usize],
    v: usize,
) -> Result<(usize, EdgeSet), GraphError> {
    let out = max_flow(net, &EdgeSet::empty(), &Terminal::Nodes(u.to_vec()), &Terminal::Node(v))?;
    Ok((out.value, out.source_side_cut))
}

/// `mincut(D_W, W)` with the minimum cut closest to the sources of `D_W`.
pub fn mincut_to_edgeset(net: &Network, w: &EdgeSet) -> (usize, EdgeSet) {
    if w.is_empty() {
        return (0, EdgeSet::empty());
    }
    let d: Vec<usize> = net.d_set(w.iter()).iter().map(|i| net.sources()[i]).collect();
    let out = max_flow(net, &EdgeSet::empty(), &Terminal::Nodes(d), &Terminal::Edges(w.clone()))
        .expect("edge-set targets never coincide with source nodes");
    (out.value, out.source_side_cut)
}

/// `count` pairwise edge-disjoint paths from the node set `u` to `target`.
pub fn edge_disjoint_paths(
    net: &Network,
    u: &[usize],
    target: &Terminal,
    count: usize,
) -> Result<Vec<Vec<usize>>, GraphError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let out = max_flow(net, &EdgeSet::empty(), &Terminal::Nodes(u.to_vec()), target)?;
    if out.value < count {
        return Err(GraphError::InsufficientConnectivity {
            requested: count,
            available: out.value,
        });
    }
    Ok(out.paths.into_iter().take(count).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn three_source_network_has_mincut_three() {
        let net = fixtures::three_source_network();
        let (cap, cut) = mincut_node_to_node(&net, net.sources(), net.sink()).unwrap();
        assert_eq!(cap, 3);
        assert_eq!(cut.len(), 3);
        let paths = edge_disjoint_paths(&net, net.sources(), &Terminal::Node(net.sink()), 3).unwrap();
        assert_eq!(paths.len(), 3);
    }

    #[test]
    fn single_edge() {
        let net = Network::parse("source s\nsink t\nedge e s t\n").unwrap();
        let (cap, cut) = mincut_node_to_node(&net, net.sources(), net.sink()).unwrap();
        assert_eq!((cap, cut.as_slice()), (1, &[0usize][..]));
        assert!(edge_disjoint_paths(&net, net.sources(), &Terminal::Node(net.sink()), 0)
            .unwrap()
            .is_empty());
        assert!(matches!(
            edge_disjoint_paths(&net, net.sources(), &Terminal::Node(net.sink()), 2),
            Err(GraphError::InsufficientConnectivity { .. })
        ));
    }

    #[test]
    fn parallel_source_edges() {
        let net = Network::parse("source s\nsink t\nedge a s t\nedge b s t\n").unwrap();
        let w: EdgeSet = [0, 1].into_iter().collect();
        assert_eq!(mincut_to_edgeset(&net, &w).0, 2);
        assert_eq!(mincut_to_edgeset(&net, &EdgeSet::single(0)).0, 1);
    }

    #[test]
    fn target_in_sources_rejected() {
        let net = Network::parse("source s\nsink t\nedge e s t\n").unwrap();
        assert_eq!(
            mincut_node_to_node(&net, &[0], 0).unwrap_err(),
            GraphError::TargetInSources
        );
    }

    #[test]
    fn bottleneck_wiretap_maps_upstream() {
        let net = fixtures::three_source_network();
        let w = net.edge_set(&["e13"]).unwrap();
        let (cap, cut) = mincut_to_edgeset(&net, &w);
        assert_eq!(cap, 1);
        assert_eq!(net.edge_ids(&cut), vec!["e10"]);
    }
}
