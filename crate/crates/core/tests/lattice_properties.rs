use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sncomp::fixtures::{random_network, random_target};
use sncomp::gf::Field;
use sncomp::graph::{mincut_to_edgeset, EdgeSet, Network};
use sncomp::lattice::*;

fn instance(seed: u64) -> (Network, sncomp::gf::GfMatrix, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = rng.gen_range(1..=3);
    let inner = rng.gen_range(0..=4);
    let net = random_network(&mut rng, s, inner, 12);
    let field = Field::prime([2, 3][rng.gen_range(0..2)]).unwrap();
    let t = random_target(&mut rng, &field, s);
    let r = rng.gen_range(0..=2usize).min(net.edge_count());
    (net, t, r)
}

/// Independent evaluation of `min_C |C| / Rank(T_{I_C})` with reachability
/// recomputed per source by depth-first search.
fn level_zero_oracle(net: &Network, t: &sncomp::gf::GfMatrix) -> Rational {
    let m = net.edge_count();
    let mut best: Option<Rational> = None;
    for mask in 1u64..(1 << m) {
        let mut severed = Vec::new();
        for (i, &src) in net.sources().iter().enumerate() {
            let mut stack = vec![src];
            let mut seen = vec![false; net.node_count()];
            let mut hit = false;
            while let Some(v) = stack.pop() {
                if v == net.sink() {
                    hit = true;
                    break;
                }
                for &e in net.out_edges(v) {
                    let h = net.edge(e).head;
                    if mask >> e & 1 == 0 && !seen[h] {
                        seen[h] = true;
                        stack.push(h);
                    }
                }
            }
            if !hit {
                severed.push(i);
            }
        }
        if severed.is_empty() {
            continue;
        }
        let v = Rational::new(mask.count_ones() as i64, t.select_rows(&severed).rank() as i64);
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    best.unwrap()
}

/// `X` separates the sink from every edge of `c` in `G_W`.
fn separates_sink(net: &Network, x: &EdgeSet, c: &EdgeSet, w: &EdgeSet) -> bool {
    let removed = x.union(w);
    let heads: Vec<usize> = c.iter().filter(|&e| !x.contains(e)).map(|e| net.edge(e).head).collect();
    !net.reachable_from(&heads, &removed)[net.sink()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn reduced_bound_matches_exhaustive(seed in any::<u64>()) {
        let (net, t, r) = instance(seed);
        let lim = Limits::default();
        let a = algorithm2_bound(&net, &t, r, &lim).unwrap();
        let b = bruteforce_linear_bound(&net, &t, r, &lim).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(evaluate_pair(&net, &t, r, &a.wiretap, &a.cut), Some(a.value));
        prop_assert_eq!(evaluate_pair(&net, &t, r, &b.wiretap, &b.cut), Some(b.value));
        if r == 0 {
            prop_assert_eq!(a.value, level_zero_oracle(&net, &t));
        }
    }

    #[test]
    fn node_scan_covers_cut_oracle(seed in any::<u64>()) {
        let (net, t, r) = instance(seed);
        let lim = Limits::default();
        for k in 0..=r.min(2) {
            for w in (0..net.edge_count()).combinations(k) {
                let w = EdgeSet::from_iter(w);
                let fam = primary_global_cuts(&net, &w, &lim).unwrap();
                let all = primary_global_cuts_oracle(&net, &w, &lim).unwrap();
                for g in &fam.members {
                    prop_assert!(all.members.contains(g));
                }
                // every other top is a member padded with extra edges
                for x in &all.members {
                    prop_assert!(fam
                        .members
                        .iter()
                        .any(|y| y.cut.is_subset(&x.cut) && y.severed == x.severed));
                }
                let om = omega(&net, &w, &t, &lim).unwrap();
                prop_assert_eq!(om.value, omega_oracle(&net, &w, &t, &lim).unwrap().value);
            }
        }
    }

    #[test]
    fn cut_oracle_equals_tops_of_every_valid_cut(seed in any::<u64>()) {
        let (net, _, r) = instance(seed);
        let m = net.edge_count();
        let lim = Limits::default();
        for k in 0..=r.min(1) {
            for w in (0..m).combinations(k) {
                let w = EdgeSet::from_iter(w);
                let d_w = net.d_set(w.iter());
                let mut tops = std::collections::BTreeSet::new();
                for mask in 0u64..1 << m {
                    if mask & w.mask() != 0 {
                        continue;
                    }
                    let c = EdgeSet::from_iter((0..m).filter(|e| mask >> e & 1 == 1));
                    let sev = net.severed_sources(&c.union(&w).indicator(m));
                    if !sev.is_empty() && d_w.is_subset(sev) {
                        tops.insert(primary_mincut_sink_side(&net, &c, &w));
                    }
                }
                let fam = primary_global_cuts_oracle(&net, &w, &lim).unwrap();
                let got: std::collections::BTreeSet<EdgeSet> = fam.members.into_iter().map(|g| g.cut).collect();
                prop_assert_eq!(got, tops);
            }
        }
    }

    #[test]
    fn bottoms_lower_omega_and_precede_their_class(seed in any::<u64>()) {
        let (net, t, r) = instance(seed);
        let lim = Limits::default();
        for k in 1..=r.max(1) {
            for w in (0..net.edge_count()).combinations(k) {
                let w = EdgeSet::from_iter(w);
                let bottom = primary_mincut_source_side(&net, &w);
                prop_assert_eq!(bottom.len(), mincut_to_edgeset(&net, &w).0);
                prop_assert!(
                    omega(&net, &bottom, &t, &lim).unwrap().value <= omega(&net, &w, &t, &lim).unwrap().value
                );
                for x in all_minimum_cuts(&net, &w, 12).unwrap() {
                    prop_assert!(precedes(&net, &bottom, &x));
                }
            }
        }
    }

    #[test]
    fn primary_wiretaps_are_pairwise_unrelated(seed in any::<u64>()) {
        let (net, _, r) = instance(seed);
        let fam = enumerate_primary_wiretaps(&net, r).unwrap();
        let cuts: Vec<Vec<EdgeSet>> =
            fam.members.iter().map(|w| all_minimum_cuts(&net, w, 12).unwrap()).collect();
        for (i, w) in fam.members.iter().enumerate() {
            prop_assert!(w.len() <= r);
            prop_assert_eq!(w.len(), mincut_to_edgeset(&net, w).0);
            for j in i + 1..fam.members.len() {
                if !w.is_empty() {
                    prop_assert!(cuts[i].iter().all(|x| !cuts[j].contains(x)));
                }
            }
        }
        // partial-order axioms on the family
        for a in &fam.members {
            prop_assert!(precedes(&net, a, a));
            for b in &fam.members {
                if a != b {
                    prop_assert!(!(precedes(&net, a, b) && precedes(&net, b, a)));
                }
                for c in &fam.members {
                    if precedes(&net, a, b) && precedes(&net, b, c) {
                        prop_assert!(precedes(&net, a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn tops_shrink_cuts_and_dominate_their_class(seed in any::<u64>()) {
        let (net, _, _) = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let m = net.edge_count();
        let w = if rng.gen_bool(0.3) { EdgeSet::single(rng.gen_range(0..m)) } else { EdgeSet::empty() };
        let c: EdgeSet = (0..m).filter(|&e| !w.contains(e) && rng.gen_bool(0.4)).collect();
        let top = primary_mincut_sink_side(&net, &c, &w);
        prop_assert!(top.len() <= c.len());
        let sev = |x: &EdgeSet| net.severed_sources(&x.union(&w).indicator(m));
        prop_assert!(sev(&c).is_subset(sev(&top)));
        prop_assert!(separates_sink(&net, &top, &c, &w));
        let rest: Vec<usize> = (0..m).filter(|&e| !w.contains(e)).collect();
        for x in rest.iter().copied().combinations(top.len()) {
            let x = EdgeSet::from_iter(x);
            if separates_sink(&net, &x, &c, &w) {
                prop_assert!(separates_sink(&net, &top, &x, &w));
            }
        }
    }
}

#[test]
fn butterfly_family_matches_oracle() {
    let net = sncomp::fixtures::reverse_butterfly();
    let lim = Limits::default();
    for w in enumerate_primary_wiretaps(&net, 2).unwrap().members {
        assert_eq!(
            primary_global_cuts(&net, &w, &lim).unwrap(),
            primary_global_cuts_oracle(&net, &w, &lim).unwrap()
        );
    }
}

#[test]
fn three_source_family_matches_oracle() {
    let net = sncomp::fixtures::three_source_network();
    let lim = Limits { oracle_edges: 21, ..Limits::default() };
    let fam = enumerate_primary_wiretaps(&net, 1).unwrap();
    for w in fam.members.iter().filter(|w| !w.is_empty()) {
        assert_eq!(
            primary_global_cuts(&net, w, &lim).unwrap(),
            primary_global_cuts_oracle(&net, w, &lim).unwrap()
        );
    }
}
