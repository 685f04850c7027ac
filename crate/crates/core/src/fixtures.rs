//! Reference networks, codes and random instance generators shared by the
//! unit tests, the acceptance suite and the command-line tests.

use rand::Rng;

use crate::code::{CodeParameters, LinearSecureCode, LocalCoding};
use crate::gf::{next_prime_power_above, parse_matrix, Field, GfMatrix};
use crate::graph::{Network, NetworkSpec};
use crate::verify::TabularCode;

pub const REVERSE_BUTTERFLY: &str = include_str!("../fixtures/reverse_butterfly.net");
pub const BUTTERFLY_TARGET: &str = include_str!("../fixtures/butterfly_product.fn");
pub const THREE_SOURCE: &str = include_str!("../fixtures/three_source.net");
pub const THREE_SOURCE_TARGET: &str = include_str!("../fixtures/three_source_target.mat");
pub const THREE_SOURCE_SECURITY: &str = include_str!("../fixtures/three_source_security.mat");

/// Two sources whose messages meet on one shared middle link.
pub fn reverse_butterfly() -> Network {
    Network::parse(REVERSE_BUTTERFLY).expect("fixture parses")
}

/// Three sources, 21 edges, min-cut 3 from the sources to the sink.
pub fn three_source_network() -> Network {
    Network::parse(THREE_SOURCE).expect("fixture parses")
}

/// Random valid network: `s` sources, `inner` relay nodes and one sink, with
/// at most `max_edges` edges (at least `s + inner` are needed so that every
/// node reaches the sink). Parallel edges may occur.
pub fn random_network<R: Rng>(rng: &mut R, s: usize, inner: usize, max_edges: usize) -> Network {
    assert!(s >= 1 && s + inner <= max_edges);
    // Node order is a topological order: sources, relays, sink.
    let n = s + inner + 1;
    let name = |v: usize| {
        if v < s {
            format!("s{}", v + 1)
        } else if v == n - 1 {
            "rho".to_string()
        } else {
            format!("v{}", v - s + 1)
        }
    };
    let mut pairs = Vec::new();
    for v in 0..n - 1 {
        let lo = (v + 1).max(s);
        pairs.push((v, rng.gen_range(lo..n)));
    }
    let extra = rng.gen_range(0..=max_edges - pairs.len());
    for _ in 0..extra {
        let tail = rng.gen_range(0..n - 1);
        let lo = (tail + 1).max(s);
        pairs.push((tail, rng.gen_range(lo..n)));
    }
    pairs.sort();
    let spec = NetworkSpec {
        sources: (0..s).map(name).collect(),
        sink: Some(name(n - 1)),
        edges: pairs
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| (format!("e{}", i + 1), name(t), name(h)))
            .collect(),
    };
    Network::validate(&spec).expect("generated network is valid")
}

/// Random `s × k` matrix of full column rank with no zero row, `k` drawn
/// from `1..=s`.
pub fn random_target<R: Rng>(rng: &mut R, field: &Field, s: usize) -> GfMatrix {
    let k = rng.gen_range(1..=s);
    random_full_rank(rng, field, s, k)
}

/// Random `rows × cols` matrix of full column rank with no zero row.
pub fn random_full_rank<R: Rng>(rng: &mut R, field: &Field, rows: usize, cols: usize) -> GfMatrix {
    assert!(cols <= rows);
    loop {
        let data: Vec<Vec<u32>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..field.order())).collect())
            .collect();
        let m = GfMatrix::from_rows(field, &data).unwrap();
        if m.rank() == cols && data.iter().all(|r| r.iter().any(|&v| v != 0)) {
            return m;
        }
    }
}

/// Source coefficients of the reference three-source code for the target
/// `(1, 1, 2)ᵀ`, one column per source edge `e1..e9`.
const THREE_SOURCE_SOURCE_COEFFS: [[u32; 3]; 9] = [
    [2, 2, 1],
    [0, 1, 0],
    [1, 0, 0],
    [0, 0, 1],
    [2, 1, 2],
    [1, 0, 0],
    [0, 0, 2],
    [0, 2, 0],
    [2, 1, 1],
];

/// The reference `(3, 1)` code over `GF(3)` on [`three_source_network`] for
/// the sum `m_1 + m_2 + 2m_3`: fixed source coefficients, every relay adds
/// its inputs.
pub fn three_source_base_code() -> LinearSecureCode {
    let net = three_source_network();
    let field = Field::prime(3).expect("3 is prime");
    let target = parse_matrix(THREE_SOURCE_TARGET).expect("fixture parses");
    let params = CodeParameters::new(3, 3, 3, 1, 0).expect("r = 0");
    let locals = (0..net.edge_count())
        .map(|e| match net.source_position(net.edge(e).tail) {
            Some(i) => LocalCoding::Source {
                source: i,
                matrix: GfMatrix::column(&field, &THREE_SOURCE_SOURCE_COEFFS[e]),
            },
            None => LocalCoding::Relay {
                inputs: net
                    .in_edges(net.edge(e).tail)
                    .iter()
                    .map(|&d| (d, GfMatrix::identity(&field, 1)))
                    .collect(),
            },
        })
        .collect();
    let mut code = LinearSecureCode {
        network: net,
        field,
        params,
        target,
        security: None,
        locals,
        globals: Vec::new(),
        decoder: GfMatrix::zeros(&Field::prime(3).unwrap(), 0, 0),
    };
    code.globals = code.recompute_globals().expect("locals are consistent");
    code.decoder = code
        .sink_matrix()
        .solve_right(&code.padded_target())
        .expect("same rows")
        .expect("the sink decodes the sum");
    code
}

/// A shared transform block that secures [`three_source_base_code`] at
/// level 1 against [`THREE_SOURCE_SECURITY`].
pub fn three_source_transform() -> GfMatrix {
    let field = Field::prime(3).expect("3 is prime");
    GfMatrix::lit(&field, &[&[1, 0, 0], &[0, 0, 1], &[2, 1, 2]])
}

/// A `(1, 1)` code on [`reverse_butterfly`] for the product of two nonzero
/// elements of `GF(3)`, symbols `0, 1` standing for `1, 2`; product is XOR.
/// Each source masks its message with its own key, the middle node
/// multiplies the masked messages, `b1` strips the first key and the sink
/// strips the second.
pub fn butterfly_product_code() -> TabularCode {
    let net = reverse_butterfly();
    let id = |name: &str| net.edge_by_id(name).expect("fixture edge");
    let mut tables = vec![Vec::new(); net.edge_count()];
    // source tables are indexed by m·2 + k
    tables[id("s1_b1")] = vec![0, 1, 0, 1];
    tables[id("s1_m1")] = vec![0, 1, 1, 0];
    tables[id("s2_m1")] = vec![0, 1, 1, 0];
    tables[id("s2_b2")] = vec![0, 1, 0, 1];
    // relays combine their inputs in order of declaration
    let xor2 = vec![0, 1, 1, 0];
    tables[id("m1_m2")] = xor2.clone();
    tables[id("m2_b1")] = vec![0, 1];
    tables[id("m2_b2")] = vec![0, 1];
    tables[id("b1_rho")] = xor2.clone();
    tables[id("b2_rho")] = vec![0, 0, 1, 1];
    TabularCode {
        edge_alphabets: vec![2; net.edge_count()],
        network: net,
        messages: vec![2, 2],
        keys: vec![2, 2],
        tables,
        decoder: xor2,
        message_len: 1,
        edge_uses: 1,
    }
}

/// Random linear code on `net` with arbitrary local coefficients. The target
/// is a random `s × k` matrix and the decoder is zero; useful where only the
/// global matrices matter.
pub fn random_linear_code<R: Rng>(rng: &mut R, field: &Field, net: &Network, big_r: usize, k: usize, r: usize) -> LinearSecureCode {
    let s = net.source_count();
    let params = CodeParameters::new(field.order(), s, big_r, k, r).expect("r·k ≤ R");
    let random = |rng: &mut R, rows: usize, cols: usize| {
        let data: Vec<Vec<u32>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..field.order())).collect())
            .collect();
        GfMatrix::from_rows(field, &data).unwrap_or_else(|_| GfMatrix::zeros(field, rows, cols))
    };
    let locals = (0..net.edge_count())
        .map(|e| {
            let tail = net.edge(e).tail;
            match net.source_position(tail) {
                Some(i) => LocalCoding::Source {
                    source: i,
                    matrix: random(rng, big_r, k),
                },
                None => LocalCoding::Relay {
                    inputs: net.in_edges(tail).iter().map(|&d| (d, random(rng, k, k))).collect(),
                },
            }
        })
        .collect();
    let mut code = LinearSecureCode {
        network: net.clone(),
        field: field.clone(),
        params,
        target: random(rng, s, k),
        security: None,
        locals,
        globals: Vec::new(),
        decoder: GfMatrix::zeros(field, net.in_edges(net.sink()).len() * k, params.ell * k),
    };
    code.globals = code.recompute_globals().expect("locals follow the topological order");
    code
}

/// A random construction instance over the smallest field of order above
/// `s·|Ŵ'_r|`: network, target, security matrix and level with
/// `r·k ≤ C_min`.
#[derive(Debug, Clone)]
pub struct ConstructionInstance {
    pub network: Network,
    pub target: GfMatrix,
    pub security: GfMatrix,
    pub level: usize,
}

pub fn random_construction_instance<R: Rng>(rng: &mut R, max_edges: usize) -> ConstructionInstance {
    let s = rng.gen_range(1..=3);
    let inner = rng.gen_range(0..=(max_edges - s).min(4));
    let network = random_network(rng, s, inner, max_edges);
    let c_min = crate::construct::min_source_cut(&network);
    let k = rng.gen_range(1..=s.min(c_min));
    let level = rng.gen_range(0..=(c_min / k).min(2));
    let wiretaps = crate::lattice::enumerate_primary_wiretaps(&network, level).expect("level within edge count");
    let q = next_prime_power_above(crate::construct::field_size_bound(s, &wiretaps) as u32);
    let field = Field::with_order(q).expect("prime power");
    let target = random_full_rank(rng, &field, s, k);
    let cols = rng.gen_range(1..=s);
    let security = random_full_rank(rng, &field, s, cols);
    ConstructionInstance {
        network,
        target,
        security,
        level,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_networks_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let s = rng.gen_range(1..=3);
            let inner = rng.gen_range(0..=4);
            let net = random_network(&mut rng, s, inner, 12);
            assert!(net.edge_count() <= 12);
            assert_eq!(net.source_count(), s);
        }
    }
}
