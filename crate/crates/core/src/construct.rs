//! Construction of admissible linear secure network codes: a base code for
//! the target matrix obtained by reversing a random multicast code, then a
//! block-diagonal change of basis at the sources that turns the trailing
//! `r·k` coordinates of each source into keys.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{padded_target, security_matrix, CodeError, CodeParameters, LinearSecureCode, LocalCoding};
use crate::gf::{Field, GfMatrix, LinalgError};
use crate::graph::{mincut_node_to_node, EdgeSet, GraphError, Network, SourceSet};
use crate::lattice::{enumerate_primary_wiretaps, LatticeError, PrimaryWiretapFamily, Rational};

pub const DEFAULT_MULTICAST_RETRIES: usize = 64;
pub const DEFAULT_SEARCH_BUDGET: usize = 10_000;
pub const DEFAULT_CANDIDATE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("rate {rate} exceeds the minimum source cut {mincut}")]
    RateExceedsMincut { rate: usize, mincut: usize },
    #[error("rate must be positive")]
    ZeroRate,
    #[error("no multicast code found after {attempts} attempts")]
    MulticastConstructionFailed { attempts: usize },
    #[error("target matrix does not have full column rank")]
    NotFullColumnRank,
    #[error("no admissible choice for transform vector {index} over GF({q})")]
    FieldTooSmall { index: usize, q: u32 },
    #[error("candidate limit {limit} reached while choosing transform vector {index}")]
    CandidateLimit { index: usize, limit: u64 },
    #[error("no valid transform among {budget} random candidates")]
    SearchExhausted { budget: usize },
    #[error("security level {r} with {k} target columns exceeds the minimum source cut {mincut}")]
    SecurityLevelTooHigh { r: usize, k: usize, mincut: usize },
    #[error("the sink cannot decode the target after the transform")]
    NotDecodable,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `C_min = min_i mincut(σ_i, ρ)`.
pub fn min_source_cut(net: &Network) -> usize {
    net.sources()
        .iter()
        .map(|&v| {
            mincut_node_to_node(net, &[v], net.sink())
                .expect("a source is never the sink")
                .0
        })
        .min()
        .unwrap_or(0)
}

/// `s·|Ŵ'_r|`; the sequential scheme succeeds for every field larger than this.
pub fn field_size_bound(s: usize, wiretaps: &PrimaryWiretapFamily) -> usize {
    s * wiretaps.exact_members.len()
}

/// `C_min/k − r`.
pub fn capacity_lower_bound(c_min: usize, k: usize, r: usize) -> Result<Rational, ConstructError> {
    if k == 0 {
        return Err(ConstructError::ShapeMismatch("target has no columns".into()));
    }
    if r * k > c_min {
        return Err(ConstructError::SecurityLevelTooHigh { r, k, mincut: c_min });
    }
    Ok(Rational::new(c_min as i64, k as i64) - Rational::from_integer(r as i64))
}

#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub target: GfMatrix,
    pub network: Network,
    /// Original indices of the sources that remain.
    pub kept: Vec<usize>,
}

/// Drops sources whose row of `T` is zero, together with their outgoing edges.
pub fn preprocess_target(t: &GfMatrix, net: &Network) -> Result<Preprocessed, ConstructError> {
    if t.rows() != net.source_count() {
        return Err(ConstructError::ShapeMismatch(format!(
            "target has {} rows, network has {} sources",
            t.rows(),
            net.source_count()
        )));
    }
    let mut drop = SourceSet::default();
    let mut kept = Vec::new();
    for i in 0..t.rows() {
        if t.row(i).iter().all(|&v| v == 0) {
            drop.insert(i);
        } else {
            kept.push(i);
        }
    }
    let target = t.select_rows(&kept);
    if kept.is_empty() || target.rank() < t.cols() {
        return Err(ConstructError::NotFullColumnRank);
    }
    let network = if drop.is_empty() { net.clone() } else { net.without_sources(drop)? };
    Ok(Preprocessed { target, network, kept })
}

fn random_vector<R: Rng>(rng: &mut R, field: &Field, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..field.order())).collect()
}

/// A plain `(R, k)` code computing `x_S·T_R`: every source block is a message.
///
/// A random rate-`R` multicast code from the sink of the reversed network is
/// transposed into a code for the sum of the source vectors, one copy per
/// column of `T` with source `σ_i` scaling its input by `T_{i,j}`.
pub fn build_base_code(net: &Network, t: &GfMatrix, big_r: usize, seed: u64) -> Result<LinearSecureCode, ConstructError> {
    build_base_code_with(net, t, big_r, seed, DEFAULT_MULTICAST_RETRIES)
}

pub fn build_base_code_with(
    net: &Network,
    t: &GfMatrix,
    big_r: usize,
    seed: u64,
    retries: usize,
) -> Result<LinearSecureCode, ConstructError> {
    let field = t.field().clone();
    let s = t.rows();
    if s != net.source_count() {
        return Err(ConstructError::ShapeMismatch(format!("target has {s} rows, network has {} sources", net.source_count())));
    }
    if big_r == 0 {
        return Err(ConstructError::ZeroRate);
    }
    let c_min = min_source_cut(net);
    if big_r > c_min {
        return Err(ConstructError::RateExceedsMincut { rate: big_r, mincut: c_min });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries.max(1) {
        if let Some((h, coeff)) = reverse_multicast(net, &field, big_r, &mut rng) {
            return Ok(assemble_base(net, t, big_r, &h, &coeff));
        }
    }
    Err(ConstructError::MulticastConstructionFailed { attempts: retries.max(1) })
}

/// Uniform over the nonzero elements, except over `GF(2)` where zero is kept
/// so that retries still differ.
fn coefficient<R: Rng>(rng: &mut R, field: &Field) -> u32 {
    if field.order() == 2 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(1..field.order())
    }
}

/// Random multicast on the reversed network. `h[e]` is the reversed global
/// vector of `e`, `coeff[d]` lists `(e, k_{e,d})` for `e ∈ Out(head d)`.
/// `None` if some source cannot recover all `R` symbols.
#[allow(clippy::type_complexity)]
fn reverse_multicast<R: Rng>(
    net: &Network,
    field: &Field,
    big_r: usize,
    rng: &mut R,
) -> Option<(Vec<Vec<u32>>, Vec<Vec<(usize, u32)>>)> {
    let m = net.edge_count();
    let mut h = vec![vec![0u32; big_r]; m];
    let mut coeff = vec![Vec::new(); m];
    for &d in net.in_edges(net.sink()) {
        h[d] = random_vector(rng, field, big_r);
    }
    for &v in net.topo_order().iter().rev() {
        if v == net.sink() || net.source_position(v).is_some() {
            continue;
        }
        for &d in net.in_edges(v) {
            let mut acc = vec![0u32; big_r];
            for &e in net.out_edges(v) {
                let c = coefficient(rng, field);
                coeff[d].push((e, c));
                for (a, &x) in acc.iter_mut().zip(&h[e]) {
                    *a = field.add(*a, field.mul(c, x));
                }
            }
            h[d] = acc;
        }
    }
    let ok = net.sources().iter().all(|&v| {
        let cols: Vec<Vec<u32>> = net.out_edges(v).iter().map(|&e| h[e].clone()).collect();
        GfMatrix::from_rows(field, &cols).expect("rectangular").rank() == big_r
    });
    ok.then_some((h, coeff))
}

fn assemble_base(
    net: &Network,
    t: &GfMatrix,
    big_r: usize,
    h: &[Vec<u32>],
    coeff: &[Vec<(usize, u32)>],
) -> LinearSecureCode {
    let field = t.field().clone();
    let (s, k) = t.shape();
    let params = CodeParameters::new(field.order(), s, big_r, k, 0).expect("r = 0");
    let mut locals: Vec<Option<LocalCoding>> = vec![None; net.edge_count()];
    for (i, &v) in net.sources().iter().enumerate() {
        // H_i X = I_R; row e of X is the sum-code coefficient vector of e.
        let outs = net.out_edges(v);
        let hi = GfMatrix::from_rows(&field, &outs.iter().map(|&e| h[e].clone()).collect::<Vec<_>>())
            .expect("rectangular")
            .transpose();
        let x = hi
            .solve_right(&GfMatrix::identity(&field, big_r))
            .expect("same rows")
            .expect("full row rank");
        for (row, &e) in outs.iter().enumerate() {
            let mut a = GfMatrix::zeros(&field, big_r, k);
            for j in 0..k {
                for c in 0..big_r {
                    a.set(c, j, field.mul(t.get(i, j), x.get(row, c)));
                }
            }
            locals[e] = Some(LocalCoding::Source { source: i, matrix: a });
        }
    }
    for (e, local) in locals.iter_mut().enumerate() {
        if local.is_none() {
            let tail = net.edge(e).tail;
            let inputs = net
                .in_edges(tail)
                .iter()
                .map(|&d| {
                    let c = coeff[d].iter().find(|&&(x, _)| x == e).map_or(0, |&(_, c)| c);
                    (d, GfMatrix::identity(&field, k).scale(c))
                })
                .collect();
            *local = Some(LocalCoding::Relay { inputs });
        }
    }
    let ins = net.in_edges(net.sink());
    let mut decoder = GfMatrix::zeros(&field, ins.len() * k, big_r * k);
    for (di, &d) in ins.iter().enumerate() {
        for j in 0..k {
            for (c, &v) in h[d].iter().enumerate() {
                decoder.set(di * k + j, j * big_r + c, v);
            }
        }
    }
    let mut code = LinearSecureCode {
        network: net.clone(),
        field,
        params,
        target: t.clone(),
        security: None,
        locals: locals.into_iter().map(|l| l.expect("every edge has a local")).collect(),
        globals: Vec::new(),
        decoder,
    };
    code.globals = code.recompute_globals().expect("locals follow the topological order");
    code
}

/// Per-source invertible `R × R` blocks of `B̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    pub blocks: Vec<GfMatrix>,
}

impl TransformMatrix {
    pub fn shared(b: GfMatrix, s: usize) -> Self {
        TransformMatrix { blocks: vec![b; s] }
    }

    pub fn identity(field: &Field, big_r: usize, s: usize) -> Self {
        Self::shared(GfMatrix::identity(field, big_r), s)
    }

    pub fn block_diag(&self, field: &Field) -> GfMatrix {
        GfMatrix::block_diag(field, &self.blocks)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(GfMatrix::is_invertible)
    }
}

/// `Ĝ_e = B̂·g_e` for every edge of the base code.
fn transformed_globals(base: &LinearSecureCode, b: &TransformMatrix) -> Result<Vec<GfMatrix>, ConstructError> {
    let p = &base.params;
    if b.blocks.len() != p.s || b.blocks.iter().any(|m| m.shape() != (p.big_r, p.big_r)) {
        return Err(ConstructError::ShapeMismatch(format!("transform needs {} blocks of size {}", p.s, p.big_r)));
    }
    let bh = b.block_diag(&base.field);
    Ok(base.globals.iter().map(|g| bh.mul(g)).collect::<Result<_, _>>()?)
}

fn concat(field: &Field, rows: usize, globals: &[GfMatrix], edges: impl Iterator<Item = usize>) -> GfMatrix {
    let blocks: Vec<&GfMatrix> = edges.map(|e| &globals[e]).collect();
    GfMatrix::hcat(field, rows, &blocks).expect("same shapes")
}

/// Both transform conditions: the sink can still decode `T_ℓ`, and the span
/// of `S` meets `⟨Ĝ_W⟩` only in zero for every `W` of the family.
pub fn verify_transform(
    b: &TransformMatrix,
    base: &LinearSecureCode,
    params: &CodeParameters,
    s_matrix: Option<&GfMatrix>,
    family: &[EdgeSet],
) -> Result<bool, ConstructError> {
    if !b.is_invertible() {
        return Ok(false);
    }
    let globals = transformed_globals(base, b)?;
    let rows = params.width();
    let net = &base.network;
    let sink = concat(&base.field, rows, &globals, net.in_edges(net.sink()).iter().copied());
    if !sink.column_span_contains(&padded_target(&base.target, params))? {
        return Ok(false);
    }
    if let Some(s) = s_matrix {
        for w in family {
            let gw = concat(&base.field, rows, &globals, w.iter());
            if !s.subspaces_intersect_trivially(&gw)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The secure code: source coefficients premultiplied by `B_i`, relays kept,
/// decoder solved against `T_ℓ`.
pub fn apply_transform(
    base: &LinearSecureCode,
    b: &TransformMatrix,
    params: &CodeParameters,
    security: Option<&GfMatrix>,
) -> Result<LinearSecureCode, ConstructError> {
    let globals = transformed_globals(base, b)?;
    let locals = base
        .locals
        .iter()
        .map(|l| match l {
            LocalCoding::Source { source, matrix } => Ok(LocalCoding::Source {
                source: *source,
                matrix: b.blocks[*source].mul(matrix)?,
            }),
            relay => Ok(relay.clone()),
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    let net = &base.network;
    let sink = concat(&base.field, params.width(), &globals, net.in_edges(net.sink()).iter().copied());
    let decoder = sink
        .solve_right(&padded_target(&base.target, params))?
        .ok_or(ConstructError::NotDecodable)?;
    Ok(LinearSecureCode {
        network: base.network.clone(),
        field: base.field.clone(),
        params: *params,
        target: base.target.clone(),
        security: security.cloned(),
        locals,
        globals,
        decoder,
    })
}

#[derive(Debug, Clone)]
pub struct SelectOptions {
    /// Vectors fixed in advance as `b_1, b_2, ...`.
    pub prefix: Vec<Vec<u32>>,
    /// Try this many seeded random candidates per vector before the
    /// lexicographic scan.
    pub random_tries: Option<(u64, usize)>,
    /// Most candidates examined per vector in the lexicographic scan.
    pub candidate_limit: u64,
}

impl Default for SelectOptions {
    fn default() -> Self {
        SelectOptions {
            prefix: Vec::new(),
            random_tries: None,
            candidate_limit: DEFAULT_CANDIDATE_LIMIT,
        }
    }
}

/// A subspace of `F_q^R` given by the left kernel of a spanning set.
struct Subspace {
    checks: GfMatrix,
}

impl Subspace {
    fn spanned_by(m: &GfMatrix) -> Self {
        Subspace {
            checks: m.transpose().kernel().transpose(),
        }
    }

    fn contains(&self, field: &Field, v: &[u32]) -> bool {
        (0..self.checks.rows()).all(|r| {
            self.checks
                .row(r)
                .iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
                == 0
        })
    }
}

/// Sequential choice of `b_1..b_R`. The first `ℓ` avoid every
/// `⟨G_W^{(σ_i)}⟩ + ⟨b_1..b_{j−1}⟩` for `W` in `wiretaps`, the rest only the
/// running span. `B = [b_1 ... b_R]^{-1}` is shared by all sources.
pub fn select_b_vectors(
    base: &LinearSecureCode,
    params: &CodeParameters,
    wiretaps: &[EdgeSet],
    options: &SelectOptions,
) -> Result<TransformMatrix, ConstructError> {
    let field = &base.field;
    let big_r = params.big_r;
    let width = params.width();
    let blocks: Vec<GfMatrix> = wiretaps
        .iter()
        .flat_map(|w| {
            let gw = concat(field, width, &base.globals, w.iter());
            (0..params.s).map(move |i| gw.block(i * big_r, 0, big_r, gw.cols()))
        })
        .collect();
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    let mut rng = options.random_tries.map(|(seed, _)| ChaCha8Rng::seed_from_u64(seed));
    for j in 0..big_r {
        let running = chosen
            .iter()
            .fold(GfMatrix::zeros(field, big_r, 0), |m, v| m.hstack(&GfMatrix::column(field, v)).expect("same rows"));
        let mut avoid = vec![Subspace::spanned_by(&running)];
        if j < params.ell {
            avoid.extend(blocks.iter().map(|g| Subspace::spanned_by(&g.hstack(&running).expect("same rows"))));
        }
        let admissible = |v: &[u32]| avoid.iter().all(|sp| !sp.contains(field, v));
        if let Some(v) = options.prefix.get(j) {
            if v.len() != big_r || !admissible(v) {
                return Err(ConstructError::FieldTooSmall { index: j + 1, q: field.order() });
            }
            chosen.push(v.clone());
            continue;
        }
        let mut pick = None;
        if let (Some(rng), Some((_, tries))) = (rng.as_mut(), options.random_tries) {
            pick = (0..tries).map(|_| random_vector(rng, field, big_r)).find(|v| admissible(v));
        }
        if pick.is_none() {
            pick = lexicographic_scan(field, big_r, options.candidate_limit, j + 1, &avoid)?;
        }
        match pick {
            Some(v) => chosen.push(v),
            None => return Err(ConstructError::FieldTooSmall { index: j + 1, q: field.order() }),
        }
    }
    let cols = GfMatrix::from_rows(field, &chosen)?.transpose();
    Ok(TransformMatrix::shared(cols.inverse()?, params.s))
}

/// First vector of `F_q^R` in lexicographic order (first coordinate most
/// significant) outside every subspace in `avoid`. Depth-first over prefixes;
/// a prefix is dropped once all its completions lie in a single subspace.
/// `limit` caps the number of prefixes visited.
fn lexicographic_scan(
    field: &Field,
    big_r: usize,
    limit: u64,
    index: usize,
    avoid: &[Subspace],
) -> Result<Option<Vec<u32>>, ConstructError> {
    // free_inside[i][d]: unit vectors e_d..e_{R-1} all lie in avoid[i]
    let free_inside: Vec<Vec<bool>> = avoid
        .iter()
        .map(|sp| {
            let mut out = vec![true; big_r + 1];
            for d in (0..big_r).rev() {
                let mut e = vec![0; big_r];
                e[d] = 1;
                out[d] = out[d + 1] && sp.contains(field, &e);
            }
            out
        })
        .collect();
    let q = field.order();
    let mut v = vec![0u32; big_r];
    let mut visited = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        d: usize,
        v: &mut Vec<u32>,
        q: u32,
        field: &Field,
        avoid: &[Subspace],
        free_inside: &[Vec<bool>],
        visited: &mut u64,
        limit: u64,
    ) -> Option<bool> {
        *visited += 1;
        if *visited > limit {
            return None;
        }
        let covered = avoid.iter().zip(free_inside).any(|(sp, f)| f[d] && sp.contains(field, v));
        if covered {
            return Some(false);
        }
        if d == v.len() {
            return Some(v.iter().any(|&x| x != 0));
        }
        for x in 0..q {
            v[d] = x;
            if dfs(d + 1, v, q, field, avoid, free_inside, visited, limit)? {
                return Some(true);
            }
        }
        v[d] = 0;
        Some(false)
    }

    match dfs(0, &mut v, q, field, avoid, &free_inside, &mut visited, limit) {
        Some(true) => Ok(Some(v)),
        Some(false) => Ok(None),
        None => Err(ConstructError::CandidateLimit { index, limit }),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub seed: u64,
    pub budget: usize,
    /// Draw a separate block per source instead of one shared block. The
    /// message columns of `B_i^{-1}` stay shared so that the sink can still
    /// decode; only the key columns differ between sources.
    pub distinct_blocks: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            budget: DEFAULT_SEARCH_BUDGET,
            distinct_blocks: false,
        }
    }
}

fn random_invertible<R: Rng>(rng: &mut R, field: &Field, n: usize) -> GfMatrix {
    loop {
        let rows: Vec<Vec<u32>> = (0..n).map(|_| random_vector(rng, field, n)).collect();
        let m = GfMatrix::from_rows(field, &rows).expect("rectangular");
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random invertible transforms checked directly with [`verify_transform`];
/// the first that passes is returned.
pub fn search_transform(
    base: &LinearSecureCode,
    params: &CodeParameters,
    s_matrix: Option<&GfMatrix>,
    wiretaps: &[EdgeSet],
    options: &SearchOptions,
) -> Result<TransformMatrix, ConstructError> {
    let field = &base.field;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.budget {
        let shared = random_invertible(&mut rng, field, params.big_r);
        let b = if options.distinct_blocks {
            let blocks = (0..params.s)
                .map(|_| {
                    let mut inv = shared.clone();
                    loop {
                        let keys = GfMatrix::from_rows(
                            field,
                            &(0..params.big_r).map(|_| random_vector(&mut rng, field, params.z)).collect::<Vec<_>>(),
                        )
                        .expect("rectangular");
                        if params.z > 0 {
                            inv.set_block(0, params.ell, &keys);
                        }
                        if inv.is_invertible() {
                            return inv.inverse().expect("invertible");
                        }
                    }
                })
                .collect();
            TransformMatrix { blocks }
        } else {
            TransformMatrix::shared(shared.inverse().expect("invertible"), params.s)
        };
        if verify_transform(&b, base, params, s_matrix, wiretaps)? {
            return Ok(b);
        }
    }
    Err(ConstructError::SearchExhausted { budget: options.budget })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Sequential,
    RandomSearch,
}

#[derive(Debug, Clone)]
pub struct ConstructOptions {
    /// `R`; defaults to `C_min`.
    pub rate: Option<usize>,
    pub seed: u64,
    pub multicast_retries: usize,
    pub select: SelectOptions,
    pub search_budget: usize,
    pub distinct_blocks: bool,
    /// Fall back to the random search when the sequential scheme fails.
    pub allow_search: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            rate: None,
            seed: 0,
            multicast_retries: DEFAULT_MULTICAST_RETRIES,
            select: SelectOptions::default(),
            search_budget: DEFAULT_SEARCH_BUDGET,
            distinct_blocks: false,
            allow_search: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub code: LinearSecureCode,
    pub base: LinearSecureCode,
    pub transform: TransformMatrix,
    pub scheme: Scheme,
    /// Sources of the input network kept by preprocessing.
    pub kept_sources: Vec<usize>,
    pub wiretaps: PrimaryWiretapFamily,
    pub c_min: usize,
    pub field_size_bound: usize,
    pub capacity_lower_bound: Rational,
}

/// Preprocessing, base code, transform selection (sequential scheme first,
/// then random search) and the final secure code.
pub fn construct_secure_code(
    net: &Network,
    t: &GfMatrix,
    upsilon: &GfMatrix,
    r: usize,
    options: &ConstructOptions,
) -> Result<Construction, ConstructError> {
    if upsilon.rows() != t.rows() {
        return Err(ConstructError::ShapeMismatch(format!(
            "security matrix has {} rows, target has {}",
            upsilon.rows(),
            t.rows()
        )));
    }
    if upsilon.field() != t.field() {
        return Err(LinalgError::FieldMismatch.into());
    }
    let pre = preprocess_target(t, net)?;
    let net = &pre.network;
    let t = &pre.target;
    let upsilon = upsilon.select_rows(&pre.kept);
    let (s, k) = t.shape();
    let c_min = min_source_cut(net);
    let lower = capacity_lower_bound(c_min, k, r)?;
    let big_r = options.rate.unwrap_or(c_min);
    if big_r < r * k {
        return Err(ConstructError::SecurityLevelTooHigh { r, k, mincut: big_r });
    }
    let wiretaps = enumerate_primary_wiretaps(net, r)?;
    let base = build_base_code_with(net, t, big_r, options.seed, options.multicast_retries)?;
    let params = CodeParameters::new(t.field().order(), s, big_r, k, r).expect("checked r·k ≤ R");
    let s_matrix = security_matrix(&upsilon, &params);
    let (transform, scheme) = match select_b_vectors(&base, &params, &wiretaps.exact_members, &options.select) {
        Ok(b) => (b, Scheme::Sequential),
        Err(ConstructError::FieldTooSmall { .. } | ConstructError::CandidateLimit { .. }) if options.allow_search => {
            let search = SearchOptions {
                seed: options.seed,
                budget: options.search_budget,
                distinct_blocks: options.distinct_blocks,
            };
            (
                search_transform(&base, &params, Some(&s_matrix), &wiretaps.exact_members, &search)?,
                Scheme::RandomSearch,
            )
        }
        Err(e) => return Err(e),
    };
    let code = apply_transform(&base, &transform, &params, Some(&upsilon))?;
    Ok(Construction {
        field_size_bound: field_size_bound(s, &wiretaps),
        capacity_lower_bound: lower,
        code,
        base,
        transform,
        scheme,
        kept_sources: pre.kept,
        wiretaps,
        c_min,
    })
}

/// Rate `ℓ/n` of a code.
pub fn rate(params: &CodeParameters) -> Rational {
    if params.k == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(params.ell as i64, params.k as i64)
    }
}
