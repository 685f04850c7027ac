//! Admissibility checks for secure network codes: traffic simulation,
//! computability at the sink, the subspace security condition and an
//! exhaustive mutual-information oracle.

use std::collections::HashMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{security_matrix, CodeError, LinearSecureCode, LocalCoding};
use crate::function::{FunctionError, TabularFunction};
use crate::gf::{Field, GfMatrix, LinalgError};
use crate::graph::{EdgeSet, GraphError, Network};
use crate::lattice::{enumerate_primary_wiretaps, LatticeError, Rational};
use crate::report::rational;

/// Most realizations enumerated by the exhaustive checks.
/// Maps a realization to a packed observation key.
type Packer<'a> = Box<dyn Fn(&[u32]) -> u128 + 'a>;

pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
/// Random realizations checked when the exhaustive budget is exceeded.
pub const SAMPLE_COUNT: usize = 10_000;
/// Most wiretap sets listed in a report.
pub const WIRETAP_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("instance too large: {what} is {size}, limit {limit}")]
    InstanceTooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("tabular code: {0}")]
    InvalidTable(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn too_large(what: &'static str, size: u128, limit: u128) -> Result<(), VerifyError> {
    if size > limit {
        Err(VerifyError::InstanceTooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// Edge traffic for one realization, indexed by edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrafficTrace {
    pub blocks: Vec<Vec<u32>>,
}

impl TrafficTrace {
    /// `Y_W`, blocks of `W` concatenated in edge order.
    pub fn observe(&self, w: &EdgeSet) -> Vec<u32> {
        w.iter().flat_map(|e| self.blocks[e].iter().copied()).collect()
    }
}

/// `v · M` for a row vector `v`.
pub fn vec_mat(field: &Field, v: &[u32], m: &GfMatrix) -> Vec<u32> {
    let mut out = vec![0u32; m.cols()];
    for (r, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(m.row(r)) {
            *o = field.add(*o, field.mul(a, b));
        }
    }
    out
}

/// Propagates `x_S` through the local coding functions in topological order.
pub fn simulate(code: &LinearSecureCode, x: &[u32]) -> Result<TrafficTrace, VerifyError> {
    let p = &code.params;
    if x.len() != p.width() {
        return Err(VerifyError::ShapeMismatch(format!("realization has {} symbols, expected {}", x.len(), p.width())));
    }
    let field = &code.field;
    let mut blocks = vec![Vec::new(); code.network.edge_count()];
    for e in code.network.edge_topo_order() {
        blocks[e] = match &code.locals[e] {
            LocalCoding::Source { source, matrix } => {
                vec_mat(field, &x[source * p.big_r..(source + 1) * p.big_r], matrix)
            }
            LocalCoding::Relay { inputs } => {
                let mut acc = vec![0u32; p.k];
                for (d, a) in inputs {
                    for (o, v) in acc.iter_mut().zip(vec_mat(field, &blocks[*d], a)) {
                        *o = field.add(*o, v);
                    }
                }
                acc
            }
        };
    }
    Ok(TrafficTrace { blocks })
}

/// `y_{In(ρ)} · D`.
pub fn decode(code: &LinearSecureCode, trace: &TrafficTrace) -> Vec<u32> {
    let net = &code.network;
    let y: Vec<u32> = net
        .in_edges(net.sink())
        .iter()
        .flat_map(|&e| trace.blocks[e].iter().copied())
        .collect();
    vec_mat(&code.field, &y, &code.decoder)
}

/// Realization `index` of `F_q^len`, first coordinate most significant.
fn digits(index: u64, q: u64, len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    let mut x = index;
    for c in v.iter_mut().rev() {
        *c = (x % q) as u32;
        x /= q;
    }
    v
}

/// Either every realization or a fixed number of seeded random ones.
fn realizations(q: u64, len: usize, limit: u64, samples: usize, seed: u64) -> (CheckMode, Box<dyn Iterator<Item = Vec<u32>>>) {
    let total = (q as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if total <= limit as u128 {
        let total = total as u64;
        (CheckMode::Exhaustive, Box::new((0..total).map(move |i| digits(i, q, len))))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (
            CheckMode::Probabilistic,
            Box::new((0..samples).map(move |_| (0..len).map(|_| rng.gen_range(0..q) as u32).collect())),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Probabilistic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Computability {
    /// Stored globals equal the ones recomputed from the locals.
    pub globals_consistent: bool,
    /// `Ĝ_{In(ρ)} · D = T_ℓ` (for tabular codes: not applicable, true).
    pub algebraic: bool,
    /// Every checked realization decodes to the target value.
    pub decoded: bool,
    pub mode: CheckMode,
    pub realizations: u64,
}

impl Computability {
    pub fn ok(&self) -> bool {
        self.globals_consistent && self.algebraic && self.decoded
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exhaustive_limit: EXHAUSTIVE_LIMIT,
            samples: SAMPLE_COUNT,
            seed: 0,
        }
    }
}

/// Decoding at the sink: algebraically through `Ĝ_{In(ρ)}·D = T_ℓ`, and by
/// simulating the locals on every realization (or on random samples beyond
/// the exhaustive budget).
pub fn check_computability(code: &LinearSecureCode, options: &CheckOptions) -> Result<Computability, VerifyError> {
    let globals_consistent = code.recompute_globals()? == code.globals;
    let t_ell = code.padded_target();
    let sink = code.sink_matrix();
    let algebraic = code.decoder.shape() == (sink.cols(), t_ell.cols())
        && sink.column_span_contains(&t_ell)?
        && sink.mul(&code.decoder)? == t_ell;
    let mut decoded = code.decoder.shape() == (sink.cols(), t_ell.cols());
    let (mode, xs) = realizations(
        code.field.order() as u64,
        code.params.width(),
        options.exhaustive_limit,
        options.samples,
        options.seed,
    );
    let mut count = 0u64;
    if decoded {
        for x in xs {
            count += 1;
            let trace = simulate(code, &x)?;
            if decode(code, &trace) != vec_mat(&code.field, &x, &t_ell) {
                decoded = false;
                break;
            }
        }
    }
    Ok(Computability {
        globals_consistent,
        algebraic,
        decoded,
        mode,
        realizations: count,
    })
}

/// `⟨Ĝ_W⟩ ∩ ⟨S⟩ = {0}`.
pub fn wiretap_secure(code: &LinearSecureCode, s_matrix: &GfMatrix, w: &EdgeSet) -> Result<bool, VerifyError> {
    Ok(s_matrix.subspaces_intersect_trivially(&code.global_of(w))?)
}

/// The subspace condition for every set of the family.
pub fn check_security_algebraic(code: &LinearSecureCode, upsilon: &GfMatrix, family: &[EdgeSet]) -> Result<bool, VerifyError> {
    let s = checked_security_matrix(code, upsilon)?;
    for w in family {
        if !wiretap_secure(code, &s, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The subspace condition over the primary wiretap sets of size exactly `r`.
pub fn check_security_primary(code: &LinearSecureCode, upsilon: &GfMatrix, r: usize) -> Result<bool, VerifyError> {
    let family = enumerate_primary_wiretaps(&code.network, r)?;
    check_security_algebraic(code, upsilon, &family.exact_members)
}

fn checked_security_matrix(code: &LinearSecureCode, upsilon: &GfMatrix) -> Result<GfMatrix, VerifyError> {
    if upsilon.rows() != code.params.s {
        return Err(VerifyError::ShapeMismatch(format!(
            "security matrix has {} rows, code has {} sources",
            upsilon.rows(),
            code.params.s
        )));
    }
    if upsilon.field() != &code.field {
        return Err(LinalgError::FieldMismatch.into());
    }
    Ok(security_matrix(upsilon, &code.params))
}

/// The function of the messages the eavesdropper must learn nothing about.
#[derive(Debug, Clone)]
pub enum SecurityFunction {
    /// `ζ(M_S) = Σ_i m_i·Υ_i`, applied symbol by symbol.
    Linear(GfMatrix),
    /// Applied to each message coordinate `(m_{1,t}, ..., m_{s,t})`.
    Table(TabularFunction),
}

/// `I(Y; Z)` of a uniform joint sample, with an exact zero test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MutualInformation {
    pub bits: f64,
    /// `P(y, z) = P(y)·P(z)` for every pair, decided on integer counts.
    pub zero: bool,
    pub realizations: u64,
}

/// Joint distribution of equally likely `(y, z)` pairs.
pub fn mutual_information(pairs: impl IntoIterator<Item = (u128, u128)>) -> MutualInformation {
    let mut joint: HashMap<(u128, u128), u64> = HashMap::new();
    let mut ys: HashMap<u128, u64> = HashMap::new();
    let mut zs: HashMap<u128, u64> = HashMap::new();
    let mut n = 0u64;
    for (y, z) in pairs {
        *joint.entry((y, z)).or_default() += 1;
        *ys.entry(y).or_default() += 1;
        *zs.entry(z).or_default() += 1;
        n += 1;
    }
    let mut zero = joint.len() == ys.len() * zs.len();
    let mut bits = 0.0;
    // sorted for a schedule-independent floating-point sum
    for ((y, z), &c) in joint.iter().sorted() {
        let (cy, cz) = (ys[y], zs[z]);
        if c as u128 * n as u128 != cy as u128 * cz as u128 {
            zero = false;
        }
        let nf = n as f64;
        bits += c as f64 / nf * ((c as f64 * nf) / (cy as f64 * cz as f64)).log2();
    }
    if zero {
        bits = 0.0;
    }
    MutualInformation {
        bits: bits.max(0.0),
        zero,
        realizations: n,
    }
}

fn pack(v: impl IntoIterator<Item = u32>, q: u128) -> u128 {
    v.into_iter().fold(0u128, |acc, d| acc * q + d as u128)
}

fn pack_limit(len: usize, q: u128, what: &'static str) -> Result<(), VerifyError> {
    match q.checked_pow(len as u32) {
        Some(_) => Ok(()),
        None => Err(VerifyError::InstanceTooLarge {
            what,
            size: len as u128,
            limit: (128.0 / (q as f64).log2()) as u128,
        }),
    }
}

/// Exact `I(Y_W; ζ(M_S))` over all uniformly drawn `(m_S, k_S)`.
pub fn mutual_information_oracle(
    code: &LinearSecureCode,
    w: &EdgeSet,
    zeta: &SecurityFunction,
    limit: u64,
) -> Result<MutualInformation, VerifyError> {
    let p = code.params;
    let field = &code.field;
    let q = field.order() as u128;
    let total = q.checked_pow(p.width() as u32).unwrap_or(u128::MAX);
    too_large("realization count", total, limit as u128)?;
    let gw = code.global_of(w);
    pack_limit(gw.cols(), q, "observed symbols")?;
    let zeta_of: Packer = match zeta {
        SecurityFunction::Linear(upsilon) => {
            let s = checked_security_matrix(code, upsilon)?;
            pack_limit(s.cols(), q, "secured symbols")?;
            Box::new(move |x: &[u32]| pack(vec_mat(field, x, &s), q))
        }
        SecurityFunction::Table(f) => {
            if f.arity() != p.s || f.inputs().iter().any(|a| a.size != q as usize) {
                return Err(VerifyError::ShapeMismatch(format!(
                    "security function needs {} inputs over alphabets of size {q}",
                    p.s
                )));
            }
            let out = f.output().size as u128;
            pack_limit(p.ell, out, "secured symbols")?;
            Box::new(move |x: &[u32]| {
                pack(
                    (0..p.ell).map(|t| {
                        let m: Vec<usize> = (0..p.s).map(|i| x[i * p.big_r + t] as usize).collect();
                        f.eval(&m) as u32
                    }),
                    out,
                )
            })
        }
    };
    let pairs = (0..total as u64).map(|i| {
        let x = digits(i, q as u64, p.width());
        (pack(vec_mat(field, &x, &gw), q), zeta_of(&x))
    });
    Ok(mutual_information(pairs))
}

/// Which wiretap sets a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WiretapFamily {
    /// Every nonempty set of at most `r` edges.
    All,
    /// Primary wiretap sets of size exactly `r`.
    Primary,
}

/// Every nonempty edge set of size at most `r`, by size then lexicographically.
pub fn all_wiretaps(net: &Network, r: usize, limit: usize) -> Result<Vec<EdgeSet>, VerifyError> {
    let m = net.edge_count();
    let count: u128 = (1..=r.min(m)).map(|k| binomial(m, k)).sum();
    too_large("wiretap set count", count, limit as u128)?;
    Ok((1..=r.min(m))
        .flat_map(|k| (0..m).combinations(k).map(EdgeSet::from_iter))
        .collect())
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Debug, Clone, Serialize)]
pub struct WiretapCheck {
    pub edges: Vec<String>,
    pub algebraic_ok: Option<bool>,
    pub mi_bits: Option<f64>,
    pub mi_zero: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SecurityReport {
    pub admissible: bool,
    #[serde(with = "rational")]
    pub rate: Rational,
    pub level: usize,
    pub family: WiretapFamily,
    pub computability: Computability,
    /// The subspace condition and the oracle agree on every set checked by both.
    pub consistent: bool,
    pub per_wiretap: Vec<WiretapCheck>,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub level: usize,
    pub family: WiretapFamily,
    pub check: CheckOptions,
    /// Realization budget of the mutual-information oracle; larger codes are
    /// checked algebraically only.
    pub mi_limit: u64,
    pub wiretap_limit: usize,
}

impl ReportOptions {
    pub fn new(level: usize) -> Self {
        ReportOptions {
            level,
            family: WiretapFamily::All,
            check: CheckOptions::default(),
            mi_limit: EXHAUSTIVE_LIMIT,
            wiretap_limit: WIRETAP_LIMIT,
        }
    }
}

fn family_of(net: &Network, options: &ReportOptions) -> Result<Vec<EdgeSet>, VerifyError> {
    match options.family {
        WiretapFamily::All => all_wiretaps(net, options.level, options.wiretap_limit),
        WiretapFamily::Primary => Ok(enumerate_primary_wiretaps(net, options.level)?.exact_members),
    }
}

/// Computability, the subspace condition per wiretap set and, within the
/// realization budget, the mutual-information oracle.
pub fn full_report(code: &LinearSecureCode, upsilon: &GfMatrix, options: &ReportOptions) -> Result<SecurityReport, VerifyError> {
    let computability = check_computability(code, &options.check)?;
    let s = checked_security_matrix(code, upsilon)?;
    let q = code.field.order() as u128;
    let run_mi = q.checked_pow(code.params.width() as u32).is_some_and(|t| t <= options.mi_limit as u128);
    let zeta = SecurityFunction::Linear(upsilon.clone());
    let mut per_wiretap = Vec::new();
    for w in family_of(&code.network, options)? {
        let algebraic = wiretap_secure(code, &s, &w)?;
        let mi = if run_mi {
            Some(mutual_information_oracle(code, &w, &zeta, options.mi_limit)?)
        } else {
            None
        };
        per_wiretap.push(WiretapCheck {
            edges: code.network.edge_ids(&w),
            algebraic_ok: Some(algebraic),
            mi_bits: mi.map(|m| m.bits),
            mi_zero: mi.map(|m| m.zero),
        });
    }
    Ok(assemble_report(
        computability,
        crate::construct::rate(&code.params),
        options,
        per_wiretap,
    ))
}

fn assemble_report(
    computability: Computability,
    rate: Rational,
    options: &ReportOptions,
    per_wiretap: Vec<WiretapCheck>,
) -> SecurityReport {
    let consistent = per_wiretap.iter().all(|c| match (c.algebraic_ok, c.mi_zero) {
        (Some(a), Some(m)) => a == m,
        _ => true,
    });
    let secure = per_wiretap
        .iter()
        .all(|c| c.algebraic_ok != Some(false) && c.mi_zero != Some(false));
    SecurityReport {
        admissible: computability.ok() && secure,
        rate,
        level: options.level,
        family: options.family,
        computability,
        consistent,
        per_wiretap,
    }
}

/// A secure network code given by lookup tables, for nonlinear schemes.
///
/// Source `σ_i` holds a message from `0..messages[i]` and an independent
/// uniform key from `0..keys[i]`. The table of an edge leaving a source is
/// indexed by `m·keys[i] + k`; the table of any other edge, and the decoder,
/// by the symbols on the incoming edges of its tail in mixed radix, first
/// incoming edge most significant.
#[derive(Debug, Clone)]
pub struct TabularCode {
    pub network: Network,
    pub messages: Vec<usize>,
    pub keys: Vec<usize>,
    pub edge_alphabets: Vec<usize>,
    pub tables: Vec<Vec<usize>>,
    pub decoder: Vec<usize>,
    /// Message symbols per block, `ℓ`.
    pub message_len: usize,
    /// Edge uses per block, `n`.
    pub edge_uses: usize,
}

impl TabularCode {
    /// Checks table sizes and entries.
    pub fn validate(&self) -> Result<(), VerifyError> {
        let net = &self.network;
        let bad = |m: String| Err(VerifyError::InvalidTable(m));
        let s = net.source_count();
        if self.messages.len() != s || self.keys.len() != s {
            return bad(format!("expected alphabets for {s} sources"));
        }
        if self.edge_alphabets.len() != net.edge_count() || self.tables.len() != net.edge_count() {
            return bad(format!("expected {} edge tables", net.edge_count()));
        }
        for e in 0..net.edge_count() {
            let expected = self.input_size(net.edge(e).tail);
            if self.tables[e].len() != expected {
                return bad(format!("table of {} has {} entries, expected {expected}", net.edge_id(e), self.tables[e].len()));
            }
            if self.tables[e].iter().any(|&v| v >= self.edge_alphabets[e]) {
                return bad(format!("table of {} leaves its alphabet", net.edge_id(e)));
            }
        }
        let expected = self.input_size(net.sink());
        if self.decoder.len() != expected {
            return bad(format!("decoder has {} entries, expected {expected}", self.decoder.len()));
        }
        Ok(())
    }

    fn input_size(&self, v: usize) -> usize {
        match self.network.source_position(v) {
            Some(i) => self.messages[i] * self.keys[i],
            None => self.network.in_edges(v).iter().map(|&d| self.edge_alphabets[d]).product(),
        }
    }

    fn input_index(&self, v: usize, symbols: &[usize]) -> usize {
        self.network
            .in_edges(v)
            .iter()
            .fold(0, |acc, &d| acc * self.edge_alphabets[d] + symbols[d])
    }

    pub fn realization_count(&self) -> u128 {
        self.messages
            .iter()
            .zip(&self.keys)
            .map(|(&m, &k)| (m * k) as u128)
            .product()
    }

    /// Edge symbols for messages `m` and keys `k`.
    pub fn simulate(&self, m: &[usize], k: &[usize]) -> Vec<usize> {
        let net = &self.network;
        let mut y = vec![0usize; net.edge_count()];
        for e in net.edge_topo_order() {
            let tail = net.edge(e).tail;
            let idx = match net.source_position(tail) {
                Some(i) => m[i] * self.keys[i] + k[i],
                None => self.input_index(tail, &y),
            };
            y[e] = self.tables[e][idx];
        }
        y
    }

    pub fn decode(&self, y: &[usize]) -> usize {
        self.decoder[self.input_index(self.network.sink(), y)]
    }

    /// All `(m, k)` in mixed radix, first source most significant, message
    /// before key.
    fn all_realizations(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
        let radices: Vec<usize> = self
            .messages
            .iter()
            .zip(&self.keys)
            .flat_map(|(&m, &k)| [m, k])
            .collect();
        radices
            .iter()
            .map(|&r| 0..r)
            .multi_cartesian_product()
            .map(|v| (v.iter().step_by(2).copied().collect(), v.iter().skip(1).step_by(2).copied().collect()))
    }

    pub fn rate(&self) -> Rational {
        Rational::new(self.message_len as i64, self.edge_uses as i64)
    }
}

fn check_arity(code: &TabularCode, f: &TabularFunction, what: &str) -> Result<(), VerifyError> {
    let ok = f.arity() == code.messages.len() && f.inputs().iter().zip(&code.messages).all(|(a, &m)| a.size == m);
    if ok {
        Ok(())
    } else {
        Err(VerifyError::ShapeMismatch(format!("{what} does not match the message alphabets")))
    }
}

/// Exhaustive decode over every realization of a tabular code.
pub fn check_computability_tabular(code: &TabularCode, f: &TabularFunction, limit: u64) -> Result<Computability, VerifyError> {
    code.validate()?;
    check_arity(code, f, "target function")?;
    too_large("realization count", code.realization_count(), limit as u128)?;
    let mut decoded = true;
    let mut count = 0;
    for (m, k) in code.all_realizations() {
        count += 1;
        if code.decode(&code.simulate(&m, &k)) != f.eval(&m) {
            decoded = false;
            break;
        }
    }
    Ok(Computability {
        globals_consistent: true,
        algebraic: true,
        decoded,
        mode: CheckMode::Exhaustive,
        realizations: count,
    })
}

/// Exact `I(Y_W; ζ(M_S))` for a tabular code.
pub fn mutual_information_tabular(
    code: &TabularCode,
    w: &EdgeSet,
    zeta: &TabularFunction,
    limit: u64,
) -> Result<MutualInformation, VerifyError> {
    code.validate()?;
    check_arity(code, zeta, "security function")?;
    too_large("realization count", code.realization_count(), limit as u128)?;
    let pairs = code.all_realizations().map(|(m, k)| {
        let y = code.simulate(&m, &k);
        let obs = w.iter().fold(0u128, |acc, e| acc * code.edge_alphabets[e] as u128 + y[e] as u128);
        (obs, zeta.eval(&m) as u128)
    });
    Ok(mutual_information(pairs))
}

/// Computability and the oracle on every wiretap set of the family.
pub fn full_report_tabular(
    code: &TabularCode,
    f: &TabularFunction,
    zeta: &TabularFunction,
    options: &ReportOptions,
) -> Result<SecurityReport, VerifyError> {
    let computability = check_computability_tabular(code, f, options.mi_limit)?;
    let mut per_wiretap = Vec::new();
    for w in family_of(&code.network, options)? {
        let mi = mutual_information_tabular(code, &w, zeta, options.mi_limit)?;
        per_wiretap.push(WiretapCheck {
            edges: code.network.edge_ids(&w),
            algebraic_ok: None,
            mi_bits: Some(mi.bits),
            mi_zero: Some(mi.zero),
        });
    }
    Ok(assemble_report(computability, code.rate(), options, per_wiretap))
}
