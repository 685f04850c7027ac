//! Linear secure network codes: local coding coefficients, global encoding
//! matrices, the sink decoder and a JSON document form.
//!
//! Each source `σ_i` holds `x_i = (m_i, k_i)` with `ℓ` message and `z` key
//! symbols, `ℓ + z = R`. Every edge carries `n = k` symbols per block, and
//! `y_e = x_S · ĝ_e` with `ĝ_e` of shape `(R·s) × k`.

use serde::{Deserialize, Serialize};

use crate::gf::{Field, GfMatrix, LinalgError};
use crate::graph::{EdgeSet, GraphError, Network, NetworkSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("code document: {0}")]
    Document(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    /// Field order.
    pub q: u32,
    /// Number of sources.
    pub s: usize,
    /// Symbols per source and block, `ℓ + z`.
    #[serde(rename = "R")]
    pub big_r: usize,
    /// Columns of the target matrix, also the symbols per edge and block.
    pub k: usize,
    /// Security level.
    pub r: usize,
    /// Message symbols per source, `R − r·k`.
    pub ell: usize,
    /// Key symbols per source, `r·k`.
    pub z: usize,
}

impl CodeParameters {
    pub fn new(q: u32, s: usize, big_r: usize, k: usize, r: usize) -> Option<Self> {
        let z = r.checked_mul(k)?;
        let ell = big_r.checked_sub(z)?;
        Some(CodeParameters { q, s, big_r, k, r, ell, z })
    }

    /// Rows of a global encoding matrix.
    pub fn width(&self) -> usize {
        self.big_r * self.s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocalCoding {
    /// `y_e = x_i · A_{i,e}` with `A_{i,e}` of shape `R × k`.
    Source { source: usize, matrix: GfMatrix },
    /// `y_e = Σ y_d · A_{d,e}` with each `A_{d,e}` of shape `k × k`.
    Relay { inputs: Vec<(usize, GfMatrix)> },
}

#[derive(Debug, Clone)]
pub struct LinearSecureCode {
    pub network: Network,
    pub field: Field,
    pub params: CodeParameters,
    /// `T`, `s × k`.
    pub target: GfMatrix,
    /// `Υ`, `s × r_Υ`; absent for codes built without a security function.
    pub security: Option<GfMatrix>,
    /// Indexed by edge.
    pub locals: Vec<LocalCoding>,
    /// `ĝ_e`, indexed by edge.
    pub globals: Vec<GfMatrix>,
    /// `D` with `Ĝ_{In(ρ)} · D = T_ℓ`, shape `(|In(ρ)|·k) × (ℓ·k)`.
    pub decoder: GfMatrix,
}

/// `T_ℓ`: block `(i, j)` is `T_{ij}·I_ℓ` over `z` zero rows.
pub fn padded_target(t: &GfMatrix, params: &CodeParameters) -> GfMatrix {
    padded(t, params)
}

/// `S`: block row `i` is `Υ_i ⊗ I_ℓ` over `z` zero rows.
pub fn security_matrix(upsilon: &GfMatrix, params: &CodeParameters) -> GfMatrix {
    padded(upsilon, params)
}

fn padded(m: &GfMatrix, p: &CodeParameters) -> GfMatrix {
    let f = m.field();
    let mut out = GfMatrix::zeros(f, p.width(), p.ell * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let block = GfMatrix::identity(f, p.ell).scale(m.get(i, j));
            out.set_block(i * p.big_r, j * p.ell, &block);
        }
    }
    out
}

impl LinearSecureCode {
    /// Recomputes every global matrix from the locals in topological order.
    pub fn recompute_globals(&self) -> Result<Vec<GfMatrix>, CodeError> {
        let p = &self.params;
        let net = &self.network;
        let mut out: Vec<Option<GfMatrix>> = vec![None; net.edge_count()];
        for e in net.edge_topo_order() {
            let g = match &self.locals[e] {
                LocalCoding::Source { source, matrix } => {
                    let mut g = GfMatrix::zeros(&self.field, p.width(), p.k);
                    g.set_block(source * p.big_r, 0, matrix);
                    g
                }
                LocalCoding::Relay { inputs } => {
                    let mut g = GfMatrix::zeros(&self.field, p.width(), p.k);
                    for (d, a) in inputs {
                        let gd = out[*d]
                            .as_ref()
                            .ok_or_else(|| CodeError::Document(format!("edge {} feeds from a later edge", net.edge_id(e))))?;
                        g = g.add(&gd.mul(a)?)?;
                    }
                    g
                }
            };
            out[e] = Some(g);
        }
        Ok(out.into_iter().map(|g| g.expect("every edge visited")).collect())
    }

    /// `G_W = [ĝ_e : e ∈ W]`.
    pub fn global_of(&self, w: &EdgeSet) -> GfMatrix {
        let blocks: Vec<&GfMatrix> = w.iter().map(|e| &self.globals[e]).collect();
        GfMatrix::hcat(&self.field, self.params.width(), &blocks).expect("same shapes")
    }

    pub fn sink_edges(&self) -> EdgeSet {
        self.network.in_edges(self.network.sink()).iter().copied().collect()
    }

    /// `Ĝ_{In(ρ)}`, columns ordered by incoming edge then symbol.
    pub fn sink_matrix(&self) -> GfMatrix {
        let ins: Vec<&GfMatrix> = self
            .network
            .in_edges(self.network.sink())
            .iter()
            .map(|&e| &self.globals[e])
            .collect();
        GfMatrix::hcat(&self.field, self.params.width(), &ins).expect("same shapes")
    }

    pub fn padded_target(&self) -> GfMatrix {
        padded_target(&self.target, &self.params)
    }

    pub fn security_matrix(&self) -> Option<GfMatrix> {
        self.security.as_ref().map(|u| security_matrix(u, &self.params))
    }

    pub fn to_document(&self) -> CodeDocument {
        let net = &self.network;
        let rows = |m: &GfMatrix| m.to_rows();
        CodeDocument {
            field: FieldDoc {
                p: self.field.characteristic(),
                m: self.field.degree(),
            },
            params: self.params,
            sources: net.sources().iter().map(|&v| net.node_name(v).to_string()).collect(),
            sink: net.node_name(net.sink()).to_string(),
            target: rows(&self.target),
            security: self.security.as_ref().map(rows),
            edges: (0..net.edge_count())
                .map(|e| {
                    let edge = net.edge(e);
                    EdgeDoc {
                        id: edge.id.clone(),
                        tail: net.node_name(edge.tail).to_string(),
                        head: net.node_name(edge.head).to_string(),
                        local: match &self.locals[e] {
                            LocalCoding::Source { matrix, .. } => LocalDoc::Source { matrix: rows(matrix) },
                            LocalCoding::Relay { inputs } => LocalDoc::Relay {
                                inputs: inputs
                                    .iter()
                                    .map(|(d, a)| RelayInput {
                                        edge: net.edge_id(*d).to_string(),
                                        matrix: rows(a),
                                    })
                                    .collect(),
                            },
                        },
                        global: rows(&self.globals[e]),
                    }
                })
                .collect(),
            decoder: rows(&self.decoder),
        }
    }

    pub fn from_document(doc: &CodeDocument) -> Result<Self, CodeError> {
        let bad = |msg: String| CodeError::Document(msg);
        let field = Field::new(doc.field.p, doc.field.m)?;
        let p = doc.params;
        if p.q != field.order() || p.ell + p.z != p.big_r || p.z != p.r * p.k || p.s != doc.sources.len() {
            return Err(bad("inconsistent parameters".into()));
        }
        let network = Network::validate(&NetworkSpec {
            sources: doc.sources.clone(),
            sink: Some(doc.sink.clone()),
            edges: doc.edges.iter().map(|e| (e.id.clone(), e.tail.clone(), e.head.clone())).collect(),
        })?;
        let mat = |rows: &[Vec<u32>], r: usize, c: usize, what: &str| -> Result<GfMatrix, CodeError> {
            let m = if rows.is_empty() {
                GfMatrix::zeros(&field, 0, c)
            } else {
                GfMatrix::from_rows(&field, rows)?
            };
            if m.shape() != (r, c) {
                return Err(bad(format!("{what} has shape {:?}, expected {:?}", m.shape(), (r, c))));
            }
            Ok(m)
        };
        let target = mat(&doc.target, p.s, p.k, "target")?;
        let security = match &doc.security {
            Some(rows) => {
                let cols = rows.first().map_or(0, Vec::len);
                Some(mat(rows, p.s, cols, "security")?)
            }
            None => None,
        };
        let mut locals = Vec::with_capacity(doc.edges.len());
        let mut globals = Vec::with_capacity(doc.edges.len());
        for (e, ed) in doc.edges.iter().enumerate() {
            let tail = network.edge(e).tail;
            let local = match (&ed.local, network.source_position(tail)) {
                (LocalDoc::Source { matrix }, Some(i)) => LocalCoding::Source {
                    source: i,
                    matrix: mat(matrix, p.big_r, p.k, "source coefficients")?,
                },
                (LocalDoc::Relay { inputs }, None) => {
                    let mut out = Vec::new();
                    for inp in inputs {
                        let d = network.edge_by_id(&inp.edge)?;
                        if network.edge(d).head != tail {
                            return Err(bad(format!("{} does not enter the tail of {}", inp.edge, ed.id)));
                        }
                        out.push((d, mat(&inp.matrix, p.k, p.k, "relay coefficients")?));
                    }
                    LocalCoding::Relay { inputs: out }
                }
                _ => return Err(bad(format!("edge {} has the wrong kind of local coding", ed.id))),
            };
            locals.push(local);
            globals.push(mat(&ed.global, p.width(), p.k, "global matrix")?);
        }
        let n_in = network.in_edges(network.sink()).len();
        let decoder = mat(&doc.decoder, n_in * p.k, p.ell * p.k, "decoder")?;
        Ok(LinearSecureCode {
            network,
            field,
            params: p,
            target,
            security,
            locals,
            globals,
            decoder,
        })
    }

    pub fn to_json(&self) -> String {
        crate::report::to_json(&self.to_document())
    }

    pub fn from_json(text: &str) -> Result<Self, CodeError> {
        let doc: CodeDocument = serde_json::from_str(text).map_err(|e| CodeError::Document(e.to_string()))?;
        Self::from_document(&doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u32,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelayInput {
    pub edge: String,
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LocalDoc {
    Source { matrix: Vec<Vec<u32>> },
    Relay { inputs: Vec<RelayInput> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub local: LocalDoc,
    pub global: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub field: FieldDoc,
    pub params: CodeParameters,
    pub sources: Vec<String>,
    pub sink: String,
    pub target: Vec<Vec<u32>>,
    pub security: Option<Vec<Vec<u32>>>,
    pub edges: Vec<EdgeDoc>,
    pub decoder: Vec<Vec<u32>>,
}
