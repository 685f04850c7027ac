//! Target and security functions given as finite tables, strong
//! decompositions, maximal common functions and the entropy-based upper
//! bounds on the secure computing capacity.

mod partition;
mod table;

use std::collections::HashMap;

pub use partition::{entropy_uniform, maximal_common_function, Partition};
pub use table::{induced_partition, Alphabet, TabularFunction, MAX_DOMAIN};

use crate::graph::{EdgeSet, Network, SourceSet};
use crate::lattice::Limits;
use table::Split;

/// Absolute tolerance for comparing bound values.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctionError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("domain sizes differ: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("function has {found} inputs, network has {expected} sources")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{0} function is constant")]
    ConstantFunction(&'static str),
    #[error("edge set severs no source")]
    NotACutSet,
    #[error("alphabet of source {0} has no designated zero")]
    MissingZeroElement(usize),
    #[error("instance too large: {what} is {size}, limit {limit}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

/// The partition of `A_I` (inputs of `inside`, mixed radix) shared by every
/// slice `f(·, m')`, if all slices agree.
fn common_slice_partition(f: &TabularFunction, inside: SourceSet) -> Option<Partition> {
    let split = Split::new(f, inside);
    let slices = split.slices(f);
    let first = Partition::from_labels(slices[0].iter().copied());
    slices[1..]
        .iter()
        .all(|s| Partition::from_labels(s.iter().copied()) == first)
        .then_some(first)
}

/// The intermediate function `f_C` as a partition of `A_{I_C}`, or `None`
/// when `(C, f)` is not strongly decomposable.
pub fn strong_decomposition(net: &Network, c: &EdgeSet, f: &TabularFunction) -> Result<Option<Partition>, FunctionError> {
    check_arity(net, f)?;
    let severed = net.severed_sources(&c.indicator(net.edge_count()));
    if severed.is_empty() {
        return Err(FunctionError::NotACutSet);
    }
    Ok(common_slice_partition(f, severed))
}

/// `f_I ⊓ ζ` on the full domain, with `f_I` the common slice partition on
/// `A_I`; `None` when `f` does not decompose on `I`.
pub fn meet_with_security(f: &TabularFunction, zeta: &TabularFunction, inside: SourceSet) -> Option<Partition> {
    let f_i = common_slice_partition(f, inside)?;
    let split = Split::new(f, inside);
    let lifted = f_i.pull_back(f.domain_size(), |x| split.parts[x].0);
    Some(maximal_common_function(&lifted, &induced_partition(zeta)).expect("same domain"))
}

/// Partition of `A_I` induced by `f(m_I, 0)`.
pub fn pinned_partition(f: &TabularFunction, inside: SourceSet) -> Result<Partition, FunctionError> {
    let mut zero = Vec::with_capacity(f.arity());
    for (i, a) in f.inputs().iter().enumerate() {
        zero.push(match a.zero {
            Some(z) => z,
            None if inside.contains(i) => 0,
            None => return Err(FunctionError::MissingZeroElement(i)),
        });
    }
    let split = Split::new(f, inside);
    let row = split.parts[f.encode(&zero)].1;
    Ok(Partition::from_labels(split.slices(f).swap_remove(row)))
}

fn check_arity(net: &Network, f: &TabularFunction) -> Result<(), FunctionError> {
    if f.arity() != net.source_count() {
        return Err(FunctionError::ArityMismatch {
            expected: net.source_count(),
            found: f.arity(),
        });
    }
    Ok(())
}

/// A bound value in target computations per edge use, with the pair
/// attaining it. `value` is `+∞` with no witness when no pair constrains.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBound {
    pub value: f64,
    pub wiretap: Option<EdgeSet>,
    pub cut: Option<EdgeSet>,
}

impl EntropyBound {
    fn unbounded() -> Self {
        EntropyBound {
            value: f64::INFINITY,
            wiretap: None,
            cut: None,
        }
    }

    fn offer(&mut self, value: f64, wiretap: EdgeSet, cut: EdgeSet) {
        let better = value < self.value - TOLERANCE
            || ((value - self.value).abs() <= TOLERANCE
                && (Some(&wiretap), Some(&cut)) < (self.wiretap.as_ref(), self.cut.as_ref()));
        if better {
            *self = EntropyBound {
                value,
                wiretap: Some(wiretap),
                cut: Some(cut),
            };
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

fn enumerable_masks(net: &Network, limits: &Limits) -> Result<u64, FunctionError> {
    let m = net.edge_count();
    let limit = limits.general_edges.min(63);
    if m > limit {
        return Err(FunctionError::InstanceTooLarge {
            what: "edge count",
            size: m,
            limit,
        });
    }
    Ok(1u64 << m)
}

/// `min (|C| − |W|) · log2|B| / H(f_C ⊓ ζ)` over valid pairs: `(C, f)`
/// strongly decomposable, `W ⊆ C`, `|W| ≤ r`, `D_W ⊆ I_C`. Pairs with zero
/// entropy are skipped.
pub fn general_upper_bound(
    net: &Network,
    f: &TabularFunction,
    zeta: &TabularFunction,
    r: usize,
    b_size: usize,
    limits: &Limits,
) -> Result<EntropyBound, FunctionError> {
    check_arity(net, f)?;
    check_arity(net, zeta)?;
    if f.inputs().iter().zip(zeta.inputs()).any(|(a, b)| a.size != b.size) {
        return Err(FunctionError::DomainMismatch(f.domain_size(), zeta.domain_size()));
    }
    if f.is_constant() {
        return Err(FunctionError::ConstantFunction("target"));
    }
    if zeta.is_constant() {
        return Err(FunctionError::ConstantFunction("security"));
    }
    let masks = enumerable_masks(net, limits)?;
    let log_b = (b_size as f64).log2();
    let m = net.edge_count();
    let d_edge: Vec<SourceSet> = (0..m).map(|e| net.d_set([e])).collect();
    let mut entropy: HashMap<u32, Option<f64>> = HashMap::new();
    let mut best = EntropyBound::unbounded();
    for mask in 1..masks {
        let severed = net.severed_by_mask(mask);
        if severed.is_empty() {
            continue;
        }
        let h = *entropy
            .entry(severed.bits())
            .or_insert_with(|| meet_with_security(f, zeta, severed).map(|p| entropy_uniform(&p)));
        let Some(h) = h.filter(|&h| h > TOLERANCE) else {
            continue;
        };
        let eligible = (0..m).filter(|&e| mask >> e & 1 == 1 && d_edge[e].is_subset(severed));
        let wiretap: EdgeSet = eligible.take(r).collect();
        let value = (mask.count_ones() as usize - wiretap.len()) as f64 * log_b / h;
        if value <= best.value + TOLERANCE {
            best.offer(value, wiretap, EdgeSet::from_mask(mask));
        }
    }
    Ok(best)
}

/// `min |C| · log2|B| / H(f(M_{I_C}, 0))` over cut sets. Zero-entropy cuts
/// are skipped; the witness wiretap set is empty.
pub fn theorem2_upper_bound(
    net: &Network,
    f: &TabularFunction,
    b_size: usize,
    limits: &Limits,
) -> Result<EntropyBound, FunctionError> {
    check_arity(net, f)?;
    if let Some(i) = f.inputs().iter().position(|a| a.zero.is_none()) {
        return Err(FunctionError::MissingZeroElement(i));
    }
    let masks = enumerable_masks(net, limits)?;
    let log_b = (b_size as f64).log2();
    let mut entropy: HashMap<u32, f64> = HashMap::new();
    let mut best = EntropyBound::unbounded();
    for mask in 1..masks {
        let severed = net.severed_by_mask(mask);
        if severed.is_empty() {
            continue;
        }
        let h = *entropy
            .entry(severed.bits())
            .or_insert_with(|| entropy_uniform(&pinned_partition(f, severed).expect("zeros checked")));
        if h <= TOLERANCE {
            continue;
        }
        let value = mask.count_ones() as f64 * log_b / h;
        if value <= best.value + TOLERANCE {
            best.offer(value, EdgeSet::empty(), EdgeSet::from_mask(mask));
        }
    }
    Ok(best)
}

/// The smaller of the two bounds. The second is absent when some alphabet
/// has no designated zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedBound {
    pub value: f64,
    pub general: EntropyBound,
    pub pinned: Option<EntropyBound>,
}

pub fn combined_upper_bound(
    net: &Network,
    f: &TabularFunction,
    zeta: &TabularFunction,
    r: usize,
    b_size: usize,
    limits: &Limits,
) -> Result<CombinedBound, FunctionError> {
    let general = general_upper_bound(net, f, zeta, r, b_size, limits)?;
    let pinned = match theorem2_upper_bound(net, f, b_size, limits) {
        Ok(b) => Some(b),
        Err(FunctionError::MissingZeroElement(_)) => None,
        Err(e) => return Err(e),
    };
    let value = pinned.as_ref().map_or(general.value, |t| t.value.min(general.value));
    Ok(CombinedBound { value, general, pinned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gf::{parse_matrix, Field, GfMatrix};
    use crate::lattice::bruteforce_linear_bound;

    fn mult_f3_star() -> TabularFunction {
        TabularFunction::parse(fixtures::BUTTERFLY_TARGET).unwrap()
    }

    #[test]
    fn multiplication_decomposes_everywhere() {
        let net = fixtures::reverse_butterfly();
        let f = mult_f3_star();
        assert_eq!(induced_partition(&f).block_sizes(), vec![2, 2]);
        for mask in 1u64..(1 << net.edge_count()) {
            let c = EdgeSet::from_mask(mask);
            match strong_decomposition(&net, &c, &f) {
                Ok(p) => {
                    let p = p.expect("decomposable");
                    if net.severed_sources(&c.indicator(net.edge_count())).len() == 1 {
                        assert_eq!(p, Partition::identity(2));
                    } else {
                        assert_eq!(p, induced_partition(&f));
                    }
                }
                Err(e) => assert_eq!(e, FunctionError::NotACutSet),
            }
        }
    }

    #[test]
    fn or_is_not_decomposable_on_one_source() {
        let f = TabularFunction::from_fn(vec![Alphabet::new(2); 2], Alphabet::new(2), |m| m[0] | m[1]).unwrap();
        assert!(common_slice_partition(&f, SourceSet::single(0)).is_none());
        assert!(common_slice_partition(&f, SourceSet::full(2)).is_some());
    }

    #[test]
    fn butterfly_general_bound_is_one() {
        let net = fixtures::reverse_butterfly();
        let f = mult_f3_star();
        let zeta = TabularFunction::identity(f.inputs().to_vec()).unwrap();
        let entropy = entropy_uniform(&induced_partition(&f));
        assert!((entropy - 1.0).abs() < 1e-12);
        let b = combined_upper_bound(&net, &f, &zeta, 1, 2, &Limits::default()).unwrap();
        assert!((b.value - 1.0).abs() < 1e-9);
        assert!(b.pinned.is_none());
    }

    #[test]
    fn level_at_least_cut_gives_zero() {
        let net = fixtures::reverse_butterfly();
        let f = mult_f3_star();
        let zeta = TabularFunction::identity(f.inputs().to_vec()).unwrap();
        let b = general_upper_bound(&net, &f, &zeta, 2, 2, &Limits::default()).unwrap();
        assert_eq!(b.value, 0.0);
    }

    #[test]
    fn linear_target_matches_rank_bound() {
        let net = fixtures::reverse_butterfly();
        let f3 = Field::prime(3).unwrap();
        let t = GfMatrix::lit(&f3, &[&[1], &[2]]);
        let f = TabularFunction::linear(&t).unwrap();
        let zeta = TabularFunction::identity(f.inputs().to_vec()).unwrap();
        let lim = Limits::default();
        for r in 0..3 {
            let g = general_upper_bound(&net, &f, &zeta, r, 3, &lim).unwrap();
            let l = bruteforce_linear_bound(&net, &t, r, &lim).unwrap();
            assert!((g.value - *l.value.numer() as f64 / *l.value.denom() as f64).abs() < 1e-9);
        }
        let t2 = theorem2_upper_bound(&net, &f, 3, &lim).unwrap();
        assert!((t2.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn three_source_linear_bounds() {
        let net = fixtures::three_source_network();
        let t = parse_matrix(fixtures::THREE_SOURCE_TARGET).unwrap();
        let f = TabularFunction::linear(&t).unwrap();
        let zeta = TabularFunction::identity(f.inputs().to_vec()).unwrap();
        let lim = Limits {
            general_edges: 21,
            ..Limits::default()
        };
        let g = general_upper_bound(&net, &f, &zeta, 1, 3, &lim).unwrap();
        assert!((g.value - 2.0).abs() < 1e-9);
    }
}
