use std::collections::HashMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sncomp::code::security_matrix;
use sncomp::fixtures::*;
use sncomp::function::{Alphabet, TabularFunction};
use sncomp::gf::{parse_matrix, Field, GfMatrix};
use sncomp::graph::EdgeSet;
use sncomp::lattice::Rational;
use sncomp::verify::*;

/// `H(Y) + H(Z) − H(Y, Z)` from counts, in bits.
fn mi_by_entropies(pairs: &[(u128, u128)]) -> f64 {
    fn h<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> f64 {
        let mut c: HashMap<K, usize> = HashMap::new();
        let mut n = 0;
        for k in keys {
            *c.entry(k).or_default() += 1;
            n += 1;
        }
        c.values().map(|&v| -(v as f64 / n as f64) * (v as f64 / n as f64).log2()).sum()
    }
    h(pairs.iter().map(|p| p.0)) + h(pairs.iter().map(|p| p.1)) - h(pairs.iter().copied())
}

fn product_target() -> TabularFunction {
    TabularFunction::parse(BUTTERFLY_TARGET).unwrap()
}

fn message_identity() -> TabularFunction {
    TabularFunction::identity(vec![Alphabet::new(2), Alphabet::new(2)]).unwrap()
}

#[test]
fn product_code_is_admissible() {
    let code = butterfly_product_code();
    let c = check_computability_tabular(&code, &product_target(), EXHAUSTIVE_LIMIT).unwrap();
    assert!(c.ok());
    assert_eq!(c.realizations, 16);
    for e in 0..code.network.edge_count() {
        let mi = mutual_information_tabular(&code, &EdgeSet::single(e), &message_identity(), EXHAUSTIVE_LIMIT).unwrap();
        assert!(mi.zero && mi.bits == 0.0, "{}", code.network.edge_id(e));
    }
    let report = full_report_tabular(&code, &product_target(), &message_identity(), &ReportOptions::new(1)).unwrap();
    assert!(report.admissible);
    assert_eq!(report.rate, Rational::from_integer(1));
    assert_eq!(report.per_wiretap.len(), 9);
    // two edges together do leak: the masked message and its key
    let both = code.network.edge_set(&["s1_b1", "s1_m1"]).unwrap();
    let mi = mutual_information_tabular(&code, &both, &message_identity(), EXHAUSTIVE_LIMIT).unwrap();
    assert!(!mi.zero && (mi.bits - 1.0).abs() < 1e-12);
    assert!(!full_report_tabular(&code, &product_target(), &message_identity(), &ReportOptions::new(2)).unwrap().admissible);
}

#[test]
fn unmasked_product_code_leaks() {
    let mut code = butterfly_product_code();
    let e = code.network.edge_by_id("s1_m1").unwrap();
    let b1 = code.network.edge_by_id("b1_rho").unwrap();
    // send the message in the clear and stop stripping the first key
    code.tables[e] = vec![0, 0, 1, 1];
    code.tables[b1] = vec![0, 1, 0, 1];
    assert!(check_computability_tabular(&code, &product_target(), EXHAUSTIVE_LIMIT).unwrap().ok());
    let mi = mutual_information_tabular(&code, &EdgeSet::single(e), &message_identity(), EXHAUSTIVE_LIMIT).unwrap();
    assert!(!mi.zero && (mi.bits - 1.0).abs() < 1e-12);
    // a wrong decoder is caught
    let mut broken = butterfly_product_code();
    broken.decoder = vec![0, 0, 0, 1];
    assert!(!check_computability_tabular(&broken, &product_target(), EXHAUSTIVE_LIMIT).unwrap().ok());
    broken.decoder.pop();
    assert!(matches!(broken.validate(), Err(VerifyError::InvalidTable(_))));
}

#[test]
fn tampering_is_detected() {
    let f3 = Field::prime(3).unwrap();
    let base = three_source_base_code();
    let mut code = base.clone();
    code.decoder = GfMatrix::zeros(&f3, code.decoder.rows(), code.decoder.cols());
    let c = check_computability(&code, &CheckOptions::default()).unwrap();
    assert!(!c.algebraic && !c.decoded && c.globals_consistent);

    let mut code = base.clone();
    let g = &mut code.globals[4];
    g.set(3, 0, f3.add(g.get(3, 0), 1));
    assert!(!check_computability(&code, &CheckOptions::default()).unwrap().globals_consistent);

    let mut code = base;
    if let sncomp::code::LocalCoding::Source { matrix, .. } = &mut code.locals[0] {
        matrix.set(0, 0, f3.add(matrix.get(0, 0), 1));
    }
    let c = check_computability(&code, &CheckOptions::default()).unwrap();
    assert!(!c.ok() && !c.decoded);
}

#[test]
fn sampling_mode_beyond_budget() {
    let code = three_source_base_code();
    let opts = CheckOptions {
        exhaustive_limit: 100,
        samples: 50,
        seed: 3,
    };
    let c = check_computability(&code, &opts).unwrap();
    assert_eq!((c.mode, c.realizations), (CheckMode::Probabilistic, 50));
    assert!(c.ok());
    let c = check_computability(&code, &CheckOptions::default()).unwrap();
    assert_eq!((c.mode, c.realizations), (CheckMode::Exhaustive, 19683));
    let err = mutual_information_oracle(&code, &EdgeSet::single(0), &SecurityFunction::Linear(GfMatrix::identity(&Field::prime(3).unwrap(), 3)), 1000);
    assert!(matches!(err, Err(VerifyError::InstanceTooLarge { .. })));
}

#[test]
fn reduction_to_primary_wiretaps_on_reference_code() {
    let base = three_source_base_code();
    let ups = parse_matrix(THREE_SOURCE_SECURITY).unwrap();
    let params = sncomp::code::CodeParameters::new(3, 3, 3, 1, 1).unwrap();
    let b = sncomp::construct::TransformMatrix::shared(three_source_transform(), 3);
    let code = sncomp::construct::apply_transform(&base, &b, &params, Some(&ups)).unwrap();
    let all = all_wiretaps(&code.network, 1, WIRETAP_LIMIT).unwrap();
    assert_eq!(check_security_primary(&code, &ups, 1).unwrap(), check_security_algebraic(&code, &ups, &all).unwrap());
    assert_eq!(check_security_primary(&base, &ups, 1).unwrap(), check_security_algebraic(&base, &ups, &all).unwrap());
    // tabular security function applied per message symbol equals the linear one
    let zeta = TabularFunction::linear(&ups).unwrap();
    for w in &all {
        let a = mutual_information_oracle(&code, w, &SecurityFunction::Linear(ups.clone()), EXHAUSTIVE_LIMIT).unwrap();
        let t = mutual_information_oracle(&code, w, &SecurityFunction::Table(zeta.clone()), EXHAUSTIVE_LIMIT).unwrap();
        assert_eq!(a.zero, t.zero);
        assert!((a.bits - t.bits).abs() < 1e-9);
    }
}

#[test]
fn empty_wiretap_learns_nothing() {
    let code = three_source_base_code();
    let ups = parse_matrix(THREE_SOURCE_SECURITY).unwrap();
    let mi = mutual_information_oracle(&code, &EdgeSet::empty(), &SecurityFunction::Linear(ups.clone()), EXHAUSTIVE_LIMIT).unwrap();
    assert!(mi.zero && mi.bits == 0.0);
    assert!(check_security_algebraic(&code, &ups, &[]).unwrap());
}

struct Instance {
    code: sncomp::code::LinearSecureCode,
    upsilon: GfMatrix,
}

/// A random linear code with `q ≤ 3` and `(ℓ + z)·s ≤ 12`, small enough for
/// exhaustive enumeration.
fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = if rng.gen_bool(0.5) { 2 } else { 3 };
    let field = Field::prime(q).unwrap();
    let budget = if q == 2 { 12 } else { 8 };
    let s = rng.gen_range(1..=3usize);
    let big_r = rng.gen_range(1..=(budget / s).min(4));
    let k = rng.gen_range(1..=big_r.min(2));
    let r = rng.gen_range(0..=big_r / k);
    let inner = rng.gen_range(0..=3);
    let net = random_network(&mut rng, s, inner, (s + inner + 4).max(s + inner));
    let code = random_linear_code(&mut rng, &field, &net, big_r, k, r.min(2));
    let cols = rng.gen_range(1..=s);
    let upsilon = random_full_rank(&mut rng, &field, s, cols);
    Instance { code, upsilon }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulation_is_linear_and_matches_globals(seed in any::<u64>()) {
        let Instance { code, .. } = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let f = &code.field;
        let w = code.params.width();
        let x: Vec<u32> = (0..w).map(|_| rng.gen_range(0..f.order())).collect();
        let x2: Vec<u32> = (0..w).map(|_| rng.gen_range(0..f.order())).collect();
        let sum: Vec<u32> = x.iter().zip(&x2).map(|(&a, &b)| f.add(a, b)).collect();
        let (t1, t2, ts) = (simulate(&code, &x).unwrap(), simulate(&code, &x2).unwrap(), simulate(&code, &sum).unwrap());
        for e in 0..code.network.edge_count() {
            let added: Vec<u32> = t1.blocks[e].iter().zip(&t2.blocks[e]).map(|(&a, &b)| f.add(a, b)).collect();
            prop_assert_eq!(&ts.blocks[e], &added);
            prop_assert_eq!(&t1.blocks[e], &vec_mat(f, &x, &code.globals[e]));
        }
        let zero = simulate(&code, &vec![0; w]).unwrap();
        prop_assert!(zero.blocks.iter().all(|b| b.iter().all(|&v| v == 0)));
    }

    #[test]
    fn subspace_condition_matches_oracle(seed in any::<u64>()) {
        let Instance { code, upsilon } = instance(seed);
        let s = security_matrix(&upsilon, &code.params);
        let zeta = SecurityFunction::Linear(upsilon.clone());
        for w in all_wiretaps(&code.network, 2, WIRETAP_LIMIT).unwrap() {
            let algebraic = wiretap_secure(&code, &s, &w).unwrap();
            let mi = mutual_information_oracle(&code, &w, &zeta, EXHAUSTIVE_LIMIT).unwrap();
            prop_assert_eq!(algebraic, mi.zero, "W = {:?}", w);
            prop_assert_eq!(mi.zero, mi.bits == 0.0);
        }
    }

    #[test]
    fn oracle_bits_match_entropy_identity(seed in any::<u64>()) {
        let Instance { code, upsilon } = instance(seed);
        let s = security_matrix(&upsilon, &code.params);
        let q = code.field.order() as u128;
        let pack = |v: Vec<u32>| v.into_iter().fold(0u128, |a, d| a * q + d as u128);
        let w = EdgeSet::single(seed as usize % code.network.edge_count());
        let gw = code.global_of(&w);
        let n = code.params.width();
        let pairs: Vec<(u128, u128)> = (0..(q as u64).pow(n as u32))
            .map(|i| {
                let x: Vec<u32> = (0..n).map(|c| ((i / (q as u64).pow((n - 1 - c) as u32)) % q as u64) as u32).collect();
                (pack(vec_mat(&code.field, &x, &gw)), pack(vec_mat(&code.field, &x, &s)))
            })
            .collect();
        let mi = mutual_information_oracle(&code, &w, &SecurityFunction::Linear(upsilon), EXHAUSTIVE_LIMIT).unwrap();
        prop_assert!((mi.bits - mi_by_entropies(&pairs)).abs() < 1e-9);
    }
}
