use std::collections::HashMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sncomp::fixtures::{random_network, random_target};
use sncomp::function::*;
use sncomp::gf::{Field, GfMatrix};
use sncomp::graph::{EdgeSet, Network, SourceSet};
use sncomp::lattice::{bruteforce_linear_bound, Limits};

fn approx(a: f64, b: f64) -> bool {
    (a.is_infinite() && b.is_infinite()) || (a - b).abs() < 1e-9
}

/// All set partitions of `0..n` as restricted growth strings.
fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            go(i + 1, max.max(b), cur, out);
        }
    }
    if n > 0 {
        go(1, 0, &mut cur, &mut out);
    }
    out
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
    let k = rng.gen_range(1..=n);
    Partition::from_labels((0..n).map(|_| rng.gen_range(0..k)))
}

fn random_table(rng: &mut ChaCha8Rng, sizes: &[usize], out: usize) -> TabularFunction {
    let inputs: Vec<Alphabet> = sizes.iter().map(|&a| Alphabet::with_zero(a, rng.gen_range(0..a))).collect();
    loop {
        let n: usize = sizes.iter().product();
        let table = (0..n).map(|_| rng.gen_range(0..out)).collect();
        let f = TabularFunction::new(inputs.clone(), Alphabet::new(out), table).unwrap();
        if !f.is_constant() {
            return f;
        }
    }
}

/// Sources cut off from the sink once the masked edges are deleted, by
/// depth-first search from each source.
fn severed_dfs(net: &Network, mask: u64) -> SourceSet {
    let mut out = SourceSet::EMPTY;
    for (i, &src) in net.sources().iter().enumerate() {
        let mut seen = vec![false; net.node_count()];
        let mut stack = vec![src];
        let mut hit = false;
        while let Some(v) = stack.pop() {
            hit |= v == net.sink();
            for &e in net.out_edges(v) {
                let h = net.edge(e).head;
                if mask >> e & 1 == 0 && !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        if !hit {
            out.insert(i);
        }
    }
    out
}

fn entropy_of_counts<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> f64 {
    let mut counts: HashMap<K, usize> = HashMap::new();
    let mut n = 0usize;
    for k in keys {
        *counts.entry(k).or_default() += 1;
        n += 1;
    }
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.log2()
        })
        .sum()
}

/// `H(f(M_I, 0))` computed straight from the table.
fn pinned_entropy(f: &TabularFunction, inside: SourceSet) -> f64 {
    let zeros: Vec<usize> = f.inputs().iter().map(|a| a.zero.unwrap()).collect();
    entropy_of_counts((0..f.domain_size()).filter_map(|x| {
        let m = f.decode(x);
        (0..m.len())
            .all(|i| inside.contains(i) || m[i] == zeros[i])
            .then(|| f.value_at(x))
    }))
}

fn small_instance(seed: u64) -> (ChaCha8Rng, Network) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = rng.gen_range(1..=3);
    let inner = rng.gen_range(0..=3);
    let net = random_network(&mut rng, s, inner, 10);
    (rng, net)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn meet_is_finest_common_coarsening(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=8);
        let (p1, p2) = (random_partition(&mut rng, n), random_partition(&mut rng, n));
        let m = maximal_common_function(&p1, &p2).unwrap();
        prop_assert_eq!(&m, &maximal_common_function(&p2, &p1).unwrap());
        prop_assert_eq!(&maximal_common_function(&p1, &p1).unwrap(), &p1);
        prop_assert_eq!(&maximal_common_function(&p1, &Partition::identity(n)).unwrap(), &p1);
        prop_assert!(p1.refines(&m) && p2.refines(&m));
        let mut best: Option<Partition> = None;
        for labels in all_partitions(n) {
            let q = Partition::from_labels(labels);
            if p1.refines(&q) && p2.refines(&q) {
                prop_assert!(entropy_uniform(&q) <= entropy_uniform(&m) + 1e-12);
                if best.as_ref().is_none_or(|b| q.block_count() > b.block_count()) {
                    best = Some(q);
                }
            }
        }
        prop_assert_eq!(best.unwrap(), m);
    }

    #[test]
    fn decomposition_reconstructs_the_table(seed in any::<u64>()) {
        let (mut rng, net) = small_instance(seed);
        let s = net.source_count();
        let sizes: Vec<usize> = (0..s).map(|_| rng.gen_range(2..=3)).collect();
        // a sum-like function decomposes on every subset; a random one rarely does
        let f = if rng.gen_bool(0.5) {
            let out = sizes.iter().sum::<usize>();
            TabularFunction::from_fn(
                sizes.iter().map(|&a| Alphabet::with_zero(a, 0)).collect(),
                Alphabet::new(out),
                |m| m.iter().sum(),
            ).unwrap()
        } else {
            random_table(&mut rng, &sizes, 3)
        };
        let m = net.edge_count();
        let c = EdgeSet::from_mask(rng.gen_range(1u64..1 << m));
        let inside = net.severed_sources(&c.indicator(m));
        let Ok(decomp) = strong_decomposition(&net, &c, &f) else {
            prop_assert!(inside.is_empty());
            return Ok(());
        };
        let ins: Vec<usize> = inside.to_vec();
        let inner_index = |mm: &[usize]| ins.iter().fold(0, |acc, &i| acc * sizes[i] + mm[i]);
        let outer = |mm: &[usize]| (0..s).filter(|i| !inside.contains(*i)).map(|i| mm[i]).collect::<Vec<_>>();
        match decomp {
            Some(fc) => {
                let mut hat: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
                for x in 0..f.domain_size() {
                    let mm = f.decode(x);
                    let key = (fc.block_of(inner_index(&mm)), outer(&mm));
                    prop_assert_eq!(*hat.entry(key).or_insert(f.value_at(x)), f.value_at(x));
                }
                // injective in the first argument
                let mut seen: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
                for ((b, o), v) in &hat {
                    prop_assert_eq!(*seen.entry((o.clone(), *v)).or_insert(*b), *b);
                }
                let h_fc = entropy_of_counts((0..f.domain_size()).map(|x| fc.block_of(inner_index(&f.decode(x)))));
                prop_assert!(approx(h_fc, pinned_entropy(&f, inside)));
            }
            None => {
                // two slices induce different partitions
                let mut parts = Vec::new();
                let mut by_outer: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
                for x in 0..f.domain_size() {
                    let mm = f.decode(x);
                    by_outer.entry(outer(&mm)).or_default().push((inner_index(&mm), f.value_at(x)));
                }
                for (_, mut row) in by_outer {
                    row.sort();
                    parts.push(Partition::from_labels(row.into_iter().map(|(_, v)| v)));
                }
                prop_assert!(parts.iter().any(|p| *p != parts[0]));
            }
        }
    }

    #[test]
    fn linear_general_bound_matches_rank_bound(seed in any::<u64>()) {
        let (mut rng, net) = small_instance(seed);
        let field = Field::prime([2, 3][rng.gen_range(0..2)]).unwrap();
        let t = random_target(&mut rng, &field, net.source_count());
        let r = rng.gen_range(0..=2usize).min(net.edge_count());
        let f = TabularFunction::linear(&t).unwrap();
        let zeta = TabularFunction::identity(f.inputs().to_vec()).unwrap();
        let lim = Limits::default();
        let q = field.order() as usize;
        let g = general_upper_bound(&net, &f, &zeta, r, q, &lim).unwrap();
        let l = bruteforce_linear_bound(&net, &t, r, &lim).unwrap();
        prop_assert!(approx(g.value, *l.value.numer() as f64 / *l.value.denom() as f64));

        // sandwich between the pinned-entropy forms
        let log_b = (q as f64).log2();
        let (mut upper, mut lower) = (f64::INFINITY, f64::INFINITY);
        for mask in 1u64..1 << net.edge_count() {
            let inside = severed_dfs(&net, mask);
            if inside.is_empty() {
                continue;
            }
            let h = pinned_entropy(&f, inside);
            if h > 1e-9 {
                upper = upper.min(mask.count_ones() as f64 * log_b / h);
                lower = lower.min((mask.count_ones() as f64 - r as f64) * log_b / h);
            }
        }
        prop_assert!(lower <= g.value + 1e-9 && g.value <= upper + 1e-9);
    }

    #[test]
    fn pinned_entropy_bound_matches_direct_formula(seed in any::<u64>()) {
        let (mut rng, net) = small_instance(seed);
        let s = net.source_count();
        let sizes: Vec<usize> = (0..s).map(|_| rng.gen_range(2..=3)).collect();
        let f = random_table(&mut rng, &sizes, 3);
        let b = rng.gen_range(2..=4);
        let got = theorem2_upper_bound(&net, &f, b, &Limits::default()).unwrap();
        let mut want = f64::INFINITY;
        for mask in 1u64..1 << net.edge_count() {
            let inside = severed_dfs(&net, mask);
            if inside.is_empty() {
                continue;
            }
            let h = pinned_entropy(&f, inside);
            if h > 1e-9 {
                want = want.min(mask.count_ones() as f64 * (b as f64).log2() / h);
            }
        }
        prop_assert!(approx(got.value, want));
        if let Some(c) = &got.cut {
            let inside = severed_dfs(&net, c.mask());
            prop_assert!(approx(got.value, c.len() as f64 * (b as f64).log2() / pinned_entropy(&f, inside)));
        }
    }

    #[test]
    fn scalar_sum_secured_by_itself_has_two_regimes(seed in any::<u64>()) {
        let (mut rng, net) = small_instance(seed);
        let s = net.source_count();
        let field = Field::prime(3).unwrap();
        let coeffs: Vec<Vec<u32>> = (0..s).map(|_| vec![rng.gen_range(1..3)]).collect();
        let t = GfMatrix::from_rows(&field, &coeffs).unwrap();
        let f = TabularFunction::linear(&t).unwrap();
        let r = rng.gen_range(0..=2usize).min(net.edge_count());
        let got = combined_upper_bound(&net, &f, &f, r, 3, &Limits::default()).unwrap();
        let m = net.edge_count();
        let mut global = usize::MAX;
        let mut any = usize::MAX;
        for mask in 1u64..1 << m {
            let inside = severed_dfs(&net, mask);
            if inside.is_empty() {
                continue;
            }
            let size = mask.count_ones() as usize;
            any = any.min(size);
            if inside == SourceSet::full(s) {
                global = global.min(size - size.min(r));
            }
        }
        prop_assert!(approx(got.value, global.min(any) as f64));

        // the single-formula statement: W ⊆ C with I_C = D_W = S, or I_C \ D_W ≠ ∅
        let d_edge: Vec<SourceSet> = (0..m).map(|e| net.d_set([e])).collect();
        let mut stated = usize::MAX;
        for mask in 1u64..1 << m {
            let inside = severed_dfs(&net, mask);
            if inside.is_empty() {
                continue;
            }
            for wm in 0u64..1 << m {
                if wm & !mask != 0 || wm.count_ones() as usize > r {
                    continue;
                }
                let dw = (0..m).filter(|e| wm >> e & 1 == 1).fold(SourceSet::EMPTY, |a, e| a.union(d_edge[e]));
                let full = SourceSet::full(s);
                if (inside == full && dw == full) || !inside.difference(dw).is_empty() {
                    stated = stated.min((mask.count_ones() - wm.count_ones()) as usize);
                }
            }
        }
        prop_assert_eq!(stated, global.min(any));
    }
}
