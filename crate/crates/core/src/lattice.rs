//! Primary minimum cuts, the reduced wiretap and global-cut families, and the
//! linear-target capacity bound computed both through those families and by
//! exhaustive enumeration.
//!
//! Terminology used throughout:
//!
//! * the *bottom* of a wiretap set `W` is the minimum cut separating `W` from
//!   `D_W` that lies closest to the sources;
//! * `G_W` is the network with the edges of `W` deleted, and `I^W_C` the
//!   sources severed from the sink in `G_W` by `C` (that is, `I_{C ∪ W}`);
//! * the *top* of a cut `C` in `G_W` is the minimum cut separating the sink
//!   from `C` that lies closest to the sink.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_rational::Ratio;

use crate::gf::GfMatrix;
use crate::graph::{max_flow, mincut_to_edgeset, EdgeSet, Network, SourceSet, Terminal};

pub type Rational = Ratio<i64>;

/// Enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Most candidate nodes for the node-subset scan of [`primary_global_cuts`].
    pub max_nodes: usize,
    /// Most edges for [`primary_global_cuts_oracle`] and [`omega_oracle`].
    pub oracle_edges: usize,
    /// Most edges for [`bruteforce_linear_bound`].
    pub bruteforce_edges: usize,
    /// Most edges for the general (tabular) bounds.
    pub general_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: 20,
            oracle_edges: 18,
            bruteforce_edges: 24,
            general_edges: 18,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("instance too large: {what} is {size}, limit {limit}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("security level {level} exceeds the {edges} edges of the network")]
    LevelTooLarge { level: usize, edges: usize },
    #[error("target matrix has {rows} rows but the network has {sources} sources")]
    TargetShape { rows: usize, sources: usize },
    #[error("row {0} of the target matrix is zero")]
    ZeroRow(usize),
}

fn too_large(what: &'static str, size: usize, limit: usize) -> Result<(), LatticeError> {
    if size > limit {
        Err(LatticeError::InstanceTooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// A bound value with the `(W, C)` pair attaining it. `C` always contains `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Rational,
    pub wiretap: EdgeSet,
    pub cut: EdgeSet,
}

impl BoundValue {
    fn key(&self) -> (Rational, &EdgeSet, &EdgeSet) {
        (self.value, &self.wiretap, &self.cut)
    }

    /// Keeps the smaller of two candidates; ties go to the lexicographically
    /// smaller `(W, C)`.
    fn keep_min(best: &mut Option<BoundValue>, cand: BoundValue) {
        if best.as_ref().is_none_or(|b| cand.key() < b.key()) {
            *best = Some(cand);
        }
    }
}

/// Ranks of row selections of `T`, memoised per source subset.
pub struct RankCache<'a> {
    t: &'a GfMatrix,
    memo: HashMap<u32, usize>,
}

impl<'a> RankCache<'a> {
    pub fn new(t: &'a GfMatrix) -> Self {
        RankCache {
            t,
            memo: HashMap::new(),
        }
    }

    /// `Rank(T_I)`.
    pub fn rank(&mut self, rows: SourceSet) -> usize {
        *self
            .memo
            .entry(rows.bits())
            .or_insert_with(|| self.t.select_rows(&rows.to_vec()).rank())
    }
}

/// Checks that `T` has one row per source and no zero row.
pub fn check_target(net: &Network, t: &GfMatrix) -> Result<(), LatticeError> {
    if t.rows() != net.source_count() {
        return Err(LatticeError::TargetShape {
            rows: t.rows(),
            sources: net.source_count(),
        });
    }
    match (0..t.rows()).find(|&i| t.row(i).iter().all(|&v| v == 0)) {
        Some(i) => Err(LatticeError::ZeroRow(i)),
        None => Ok(()),
    }
}

/// The bottom of `W`: the minimum cut separating `W` from `D_W` closest to
/// the sources. Empty for empty `W`.
pub fn primary_mincut_source_side(net: &Network, w: &EdgeSet) -> EdgeSet {
    mincut_to_edgeset(net, w).1
}

/// The top of `C` in `G_W`: the minimum cut separating the sink from `C`
/// closest to the sink.
pub fn primary_mincut_sink_side(net: &Network, c: &EdgeSet, w: &EdgeSet) -> EdgeSet {
    max_flow(net, w, &Terminal::Edges(c.clone()), &Terminal::Node(net.sink()))
        .expect("edge-set sources never contain the sink")
        .sink_side_cut
}

/// `α ≤ β`: `α` is a minimum cut separating `β` from `D_β`.
pub fn precedes(net: &Network, alpha: &EdgeSet, beta: &EdgeSet) -> bool {
    let d = net.source_nodes(net.d_set(beta.iter()));
    alpha.len() == mincut_to_edgeset(net, beta).0 && net.separates_edges(alpha, &d, beta)
}

/// Every minimum cut separating `W` from `D_W`, by exhaustive search over
/// subsets of the edges. Intended as a test oracle.
pub fn all_minimum_cuts(net: &Network, w: &EdgeSet, limit: usize) -> Result<Vec<EdgeSet>, LatticeError> {
    too_large("edge count", net.edge_count(), limit)?;
    let d = net.source_nodes(net.d_set(w.iter()));
    let m = mincut_to_edgeset(net, w).0;
    Ok((0..net.edge_count())
        .combinations(m)
        .map(EdgeSet::from_iter)
        .filter(|c| net.separates_edges(c, &d, w))
        .collect())
}

/// The bottoms of all wiretap sets of size at most `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryWiretapFamily {
    pub level: usize,
    /// Distinct bottoms, sorted; always starts with the empty set.
    pub members: Vec<EdgeSet>,
    /// Members of size exactly `level`.
    pub exact_members: Vec<EdgeSet>,
}

/// Maps every `W` with `|W| ≤ r` to its bottom and deduplicates.
pub fn enumerate_primary_wiretaps(net: &Network, r: usize) -> Result<PrimaryWiretapFamily, LatticeError> {
    if r > net.edge_count() {
        return Err(LatticeError::LevelTooLarge {
            level: r,
            edges: net.edge_count(),
        });
    }
    let mut bottoms = BTreeSet::new();
    for k in 0..=r {
        for w in (0..net.edge_count()).combinations(k) {
            bottoms.insert(primary_mincut_source_side(net, &EdgeSet::from_iter(w)));
        }
    }
    let members: Vec<EdgeSet> = bottoms.into_iter().collect();
    let exact_members = members.iter().filter(|w| w.len() == r).cloned().collect();
    Ok(PrimaryWiretapFamily {
        level: r,
        members,
        exact_members,
    })
}

/// A global cut of `G_W` with its severed sources `I^W_C`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GlobalCut {
    pub cut: EdgeSet,
    pub severed: SourceSet,
}

/// Tops of all cuts `C` of `G_W` with `I^W_C ≠ ∅` and `D_W ⊆ I^W_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryGlobalCutFamily {
    pub wiretap: EdgeSet,
    /// Sorted by cut.
    pub members: Vec<GlobalCut>,
}

/// Nodes that reach the sink in `G_W`.
fn sink_reachers(net: &Network, w: &EdgeSet) -> Vec<bool> {
    let mut reach = vec![false; net.node_count()];
    reach[net.sink()] = true;
    for &v in net.topo_order().iter().rev() {
        if !reach[v] {
            reach[v] = net
                .out_edges(v)
                .iter()
                .any(|&e| !w.contains(e) && reach[net.edge(e).head]);
        }
    }
    reach
}

fn severed_with(net: &Network, c: &EdgeSet, w: &EdgeSet) -> SourceSet {
    net.severed_sources(&c.union(w).indicator(net.edge_count()))
}

/// Scan of node subsets `N` with `D_W ∩ V_ρ ⊆ N ⊆ V_ρ \ {ρ}`, where `V_ρ` are
/// the nodes reaching the sink in `G_W`. Each `N` yields the top of the flow
/// from `N` to the sink. Once `N` has been processed with source side `V^c`,
/// every later `μ` with `N ⊆ μ ⊆ V^c` has the same top and is skipped.
///
/// Tops padded with edges that sever nothing extra (a member plus an edge
/// leaving some other node) are not produced; such cuts never attain `Ω`.
pub fn primary_global_cuts(
    net: &Network,
    w: &EdgeSet,
    limits: &Limits,
) -> Result<PrimaryGlobalCutFamily, LatticeError> {
    let d_w = net.d_set(w.iter());
    let reach = sink_reachers(net, w);
    let cand: Vec<usize> = (0..net.node_count())
        .filter(|&v| v != net.sink() && reach[v])
        .collect();
    too_large("candidate node count", cand.len(), limits.max_nodes)?;
    let bit = |v: usize| cand.iter().position(|&u| u == v);
    let required = net
        .source_nodes(d_w)
        .into_iter()
        .filter_map(bit)
        .fold(0u32, |m, b| m | 1 << b);

    let mut processed: Vec<(u32, u32)> = Vec::new();
    let mut found = BTreeMap::new();
    for mask in 0u32..(1 << cand.len()) {
        if mask & required != required
            || processed.iter().any(|&(n, vc)| mask & n == n && mask & !vc == 0)
        {
            continue;
        }
        let nodes: Vec<usize> = (0..cand.len()).filter(|b| mask >> b & 1 == 1).map(|b| cand[b]).collect();
        let flow = max_flow(net, w, &Terminal::Nodes(nodes), &Terminal::Node(net.sink()))
            .expect("candidate nodes exclude the sink");
        let source_side = (0..cand.len())
            .filter(|&b| !flow.sink_side_nodes[cand[b]])
            .fold(0u32, |m, b| m | 1 << b);
        if source_side != mask {
            processed.push((mask, source_side));
        }
        let top = flow.sink_side_cut;
        let severed = severed_with(net, &top, w);
        if !severed.is_empty() && d_w.is_subset(severed) {
            found.entry(top).or_insert(severed);
        }
    }
    Ok(PrimaryGlobalCutFamily {
        wiretap: w.clone(),
        members: found
            .into_iter()
            .map(|(cut, severed)| GlobalCut { cut, severed })
            .collect(),
    })
}

/// Visits every `C ⊆ E \ W` with `I^W_C ≠ ∅` and `D_W ⊆ I^W_C`.
fn for_each_valid_cut(
    net: &Network,
    w: &EdgeSet,
    limit: usize,
    mut visit: impl FnMut(EdgeSet, SourceSet),
) -> Result<(), LatticeError> {
    let rest: Vec<usize> = (0..net.edge_count()).filter(|&e| !w.contains(e)).collect();
    too_large("edge count outside the wiretap set", rest.len(), limit)?;
    let d_w = net.d_set(w.iter());
    let mut removed = w.indicator(net.edge_count());
    for mask in 0u64..(1 << rest.len()) {
        for (b, &e) in rest.iter().enumerate() {
            removed[e] = mask >> b & 1 == 1;
        }
        let severed = net.severed_sources(&removed);
        if !severed.is_empty() && d_w.is_subset(severed) {
            let c = (0..rest.len()).filter(|b| mask >> b & 1 == 1).map(|b| rest[b]).collect();
            visit(c, severed);
        }
    }
    Ok(())
}

/// Direct definition: every valid cut of `G_W` mapped to its top.
///
/// Only cuts with at most `|In(ρ) \ W|` edges are visited. Every top is at
/// most that large, is itself a valid cut and is its own top, so the family
/// is unchanged.
pub fn primary_global_cuts_oracle(
    net: &Network,
    w: &EdgeSet,
    limits: &Limits,
) -> Result<PrimaryGlobalCutFamily, LatticeError> {
    let rest: Vec<usize> = (0..net.edge_count()).filter(|&e| !w.contains(e)).collect();
    too_large("edge count outside the wiretap set", rest.len(), limits.oracle_edges)?;
    let bound = net.in_edges(net.sink()).iter().filter(|&&e| !w.contains(e)).count();
    let d_w = net.d_set(w.iter());
    let mut found = BTreeMap::new();
    for size in 0..=bound.min(rest.len()) {
        for c in rest.iter().copied().combinations(size) {
            let c = EdgeSet::from_iter(c);
            let severed = net.severed_sources(&c.union(w).indicator(net.edge_count()));
            if severed.is_empty() || !d_w.is_subset(severed) {
                continue;
            }
            let top = primary_mincut_sink_side(net, &c, w);
            found.entry(top).or_insert_with_key(|top| severed_with(net, top, w));
        }
    }
    Ok(PrimaryGlobalCutFamily {
        wiretap: w.clone(),
        members: found
            .into_iter()
            .map(|(cut, severed)| GlobalCut { cut, severed })
            .collect(),
    })
}

fn omega_over(
    w: &EdgeSet,
    cuts: impl IntoIterator<Item = (EdgeSet, SourceSet)>,
    ranks: &mut RankCache,
) -> Option<BoundValue> {
    let mut best = None;
    for (c, severed) in cuts {
        let rank = ranks.rank(severed);
        let value = Rational::new(c.len() as i64, rank as i64);
        BoundValue::keep_min(
            &mut best,
            BoundValue {
                value,
                wiretap: w.clone(),
                cut: c.union(w),
            },
        );
    }
    best
}

/// `Ω(W) = min |C| / Rank(T_{I^W_C})` over cuts `C` of `G_W` with
/// `D_W ⊆ I^W_C`, evaluated on the primary global cut family.
pub fn omega(net: &Network, w: &EdgeSet, t: &GfMatrix, limits: &Limits) -> Result<BoundValue, LatticeError> {
    check_target(net, t)?;
    let family = primary_global_cuts(net, w, limits)?;
    let mut ranks = RankCache::new(t);
    Ok(omega_with(&family, &mut ranks))
}

fn omega_with(family: &PrimaryGlobalCutFamily, ranks: &mut RankCache) -> BoundValue {
    omega_over(
        &family.wiretap,
        family.members.iter().map(|g| (g.cut.clone(), g.severed)),
        ranks,
    )
    .expect("the cut In(ρ) of G_W severs every source")
}

/// `Ω(W)` by enumerating every valid cut of `G_W`.
pub fn omega_oracle(net: &Network, w: &EdgeSet, t: &GfMatrix, limits: &Limits) -> Result<BoundValue, LatticeError> {
    check_target(net, t)?;
    let mut ranks = RankCache::new(t);
    let mut cuts = Vec::new();
    for_each_valid_cut(net, w, limits.oracle_edges, |c, i| cuts.push((c, i)))?;
    Ok(omega_over(w, cuts, &mut ranks).expect("the cut In(ρ) of G_W severs every source"))
}

/// `min_{W ∈ Ŵ*_r} Ω(W)` with the witness pair.
pub fn algorithm2_bound(net: &Network, t: &GfMatrix, r: usize, limits: &Limits) -> Result<BoundValue, LatticeError> {
    check_target(net, t)?;
    let family = enumerate_primary_wiretaps(net, r)?;
    let mut ranks = RankCache::new(t);
    let mut best = None;
    for w in &family.members {
        let cuts = primary_global_cuts(net, w, limits)?;
        BoundValue::keep_min(&mut best, omega_with(&cuts, &mut ranks));
    }
    Ok(best.expect("the empty wiretap set is always a member"))
}

/// Exhaustive minimum of `(|C| − |W|) / Rank(T_{I_C})` over `W ⊆ C`,
/// `|W| ≤ r`, `D_W ⊆ I_C`, `I_C ≠ ∅`. For fixed `C` the best `W` takes the
/// first `min(r, n)` of the `n` edges `e ∈ C` with `D_e ⊆ I_C`.
pub fn bruteforce_linear_bound(
    net: &Network,
    t: &GfMatrix,
    r: usize,
    limits: &Limits,
) -> Result<BoundValue, LatticeError> {
    check_target(net, t)?;
    let m = net.edge_count();
    too_large("edge count", m, limits.bruteforce_edges.min(63))?;
    let d_edge: Vec<SourceSet> = (0..m).map(|e| net.d_set([e])).collect();
    let mut ranks = RankCache::new(t);
    let mut best: Option<BoundValue> = None;
    for mask in 1u64..(1 << m) {
        let severed = net.severed_by_mask(mask);
        if severed.is_empty() {
            continue;
        }
        let size = mask.count_ones() as i64;
        let eligible = (0..m).filter(|&e| mask >> e & 1 == 1 && d_edge[e].is_subset(severed));
        let wiretap: EdgeSet = eligible.take(r).collect();
        let value = Rational::new(size - wiretap.len() as i64, ranks.rank(severed) as i64);
        if best.as_ref().is_some_and(|b| value > b.value) {
            continue;
        }
        BoundValue::keep_min(
            &mut best,
            BoundValue {
                value,
                wiretap,
                cut: EdgeSet::from_mask(mask),
            },
        );
    }
    Ok(best.expect("the set of all edges severs every source"))
}

/// Re-evaluates `(|C| − |W|) / Rank(T_{I_C})` for a witness pair, checking
/// the pair is admissible (`W ⊆ C`, `|W| ≤ r`, `D_W ⊆ I_C ≠ ∅`).
pub fn evaluate_pair(net: &Network, t: &GfMatrix, r: usize, w: &EdgeSet, c: &EdgeSet) -> Option<Rational> {
    let severed = net.severed_sources(&c.indicator(net.edge_count()));
    let ok = w.is_subset(c) && w.len() <= r && !severed.is_empty() && net.d_set(w.iter()).is_subset(severed);
    ok.then(|| {
        let rank = t.select_rows(&severed.to_vec()).rank();
        Rational::new((c.len() - w.len()) as i64, rank as i64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gf::{parse_matrix, Field};

    fn three_source_target() -> GfMatrix {
        parse_matrix(fixtures::THREE_SOURCE_TARGET).unwrap()
    }

    #[test]
    fn three_source_bounds() {
        let net = fixtures::three_source_network();
        let t = three_source_target();
        let lim = Limits::default();
        let a = algorithm2_bound(&net, &t, 1, &lim).unwrap();
        let b = bruteforce_linear_bound(&net, &t, 1, &lim).unwrap();
        assert_eq!(a.value, Rational::from_integer(2));
        assert_eq!(b.value, Rational::from_integer(2));
        assert_eq!(evaluate_pair(&net, &t, 1, &a.wiretap, &a.cut), Some(a.value));
        assert_eq!(evaluate_pair(&net, &t, 1, &b.wiretap, &b.cut), Some(b.value));
        let zero = algorithm2_bound(&net, &t, 0, &lim).unwrap();
        assert_eq!(zero.value, Rational::from_integer(3));
    }

    #[test]
    fn fifteen_exact_primary_wiretaps() {
        let net = fixtures::three_source_network();
        let fam = enumerate_primary_wiretaps(&net, 1).unwrap();
        assert_eq!(fam.exact_members.len(), 15);
        assert_eq!(fam.members[0], EdgeSet::empty());
        let names: Vec<String> = fam.exact_members.iter().map(|w| net.edge_ids(w).join(",")).collect();
        for dropped in ["e13", "e14", "e15", "e16", "e17", "e18"] {
            assert!(!names.contains(&dropped.to_string()));
        }
    }

    #[test]
    fn level_zero_family() {
        let net = fixtures::reverse_butterfly();
        let fam = enumerate_primary_wiretaps(&net, 0).unwrap();
        assert_eq!(fam.members, vec![EdgeSet::empty()]);
        assert_eq!(fam.exact_members, vec![EdgeSet::empty()]);
        assert!(matches!(
            enumerate_primary_wiretaps(&net, 10),
            Err(LatticeError::LevelTooLarge { .. })
        ));
    }

    #[test]
    fn sink_side_top_of_source_edges() {
        let net = fixtures::three_source_network();
        let out_sources: EdgeSet = (0..9).collect();
        let top = primary_mincut_sink_side(&net, &out_sources, &EdgeSet::empty());
        assert_eq!(net.edge_ids(&top), vec!["e19", "e20", "e21"]);
        let in_rho = net.edge_set(&["e19", "e20", "e21"]).unwrap();
        assert_eq!(primary_mincut_sink_side(&net, &in_rho, &EdgeSet::empty()), in_rho);
    }

    #[test]
    fn chain_has_single_top() {
        let net = Network::parse("source s\nsink t\nedge a s u\nedge b u v\nedge c v t\n").unwrap();
        let lim = Limits::default();
        let fam = primary_global_cuts_oracle(&net, &EdgeSet::empty(), &lim).unwrap();
        assert_eq!(fam.members.len(), 1);
        assert_eq!(net.edge_ids(&fam.members[0].cut), vec!["c"]);
        assert_eq!(primary_global_cuts(&net, &EdgeSet::empty(), &lim).unwrap(), fam);
        let t = GfMatrix::lit(&Field::prime(2).unwrap(), &[&[1]]);
        assert_eq!(omega(&net, &EdgeSet::empty(), &t, &lim).unwrap().value, Rational::from_integer(1));
    }

    #[test]
    fn butterfly_family_contains_sink_cut() {
        let net = fixtures::reverse_butterfly();
        let lim = Limits::default();
        let fam = primary_global_cuts(&net, &EdgeSet::empty(), &lim).unwrap();
        let in_rho = net.edge_set(&["b1_rho", "b2_rho"]).unwrap();
        let g = fam.members.iter().find(|g| g.cut == in_rho).unwrap();
        assert_eq!(g.severed, net.all_sources());
        assert_eq!(fam, primary_global_cuts_oracle(&net, &EdgeSet::empty(), &lim).unwrap());
    }

    #[test]
    fn severing_wiretap_keeps_empty_cut() {
        // W = {a} already cuts s1 off; C = ∅ is then a valid cut of G_W.
        let net = Network::parse("source s1\nsource s2\nsink t\nedge a s1 t\nedge b s2 t\n").unwrap();
        let w = net.edge_set(&["a"]).unwrap();
        let lim = Limits::default();
        let fam = primary_global_cuts(&net, &w, &lim).unwrap();
        assert!(fam.members.iter().any(|g| g.cut.is_empty()));
        assert_eq!(fam, primary_global_cuts_oracle(&net, &w, &lim).unwrap());
    }

    #[test]
    fn witness_level_at_least_mincut_gives_zero() {
        let net = fixtures::reverse_butterfly();
        let t = GfMatrix::lit(&Field::prime(3).unwrap(), &[&[1], &[1]]);
        let lim = Limits::default();
        let v = algorithm2_bound(&net, &t, 2, &lim).unwrap();
        assert_eq!(v.value, Rational::from_integer(0));
        assert_eq!(v.wiretap, v.cut);
    }

    #[test]
    fn rejects_bad_targets() {
        let net = fixtures::reverse_butterfly();
        let f = Field::prime(3).unwrap();
        let lim = Limits::default();
        let zero_row = GfMatrix::lit(&f, &[&[1], &[0]]);
        assert_eq!(algorithm2_bound(&net, &zero_row, 1, &lim), Err(LatticeError::ZeroRow(1)));
        let wrong = GfMatrix::lit(&f, &[&[1]]);
        assert!(matches!(
            bruteforce_linear_bound(&net, &wrong, 1, &lim),
            Err(LatticeError::TargetShape { .. })
        ));
    }
}
