//! JSON code-specification files: a group, a representation over it, and an
//! optional named error list. This is the schema behind `--spec`.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "group": {"family": "symmetric", "n": 3},
//!   "rep": {"kind": "tensor_permutation", "local_dim": 2},
//!   "errors": {"flip": "X0", "demo": "U:Z0 X1 CNOT10 H1"}
//! }
//! ```
//!
//! Stabilizer codes may instead give `"stabilizer": {"dims": [...],
//! "generators": ["Z0 Z1", ...]}`, which implies the cyclic-product group and
//! its product representation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::groups::{self, FiniteGroup};
use crate::isotypic::{build_code, decompose, IsotypicDecomposition, SymmetryCode};
use crate::linalg::{self, identity, zeros, CMat, C_ONE};
use crate::reps::{
    basis_permutation_rep, dihedral_vertex_edge_rep, s3_faithful4_rep,
    tensor_permutation_rep, PermAction, UnitaryRep,
};
use crate::stabilizer::{PauliWord, StabilizerSpec};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("i/o error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema version {0} unsupported (expected {SCHEMA_VERSION})")]
    SchemaVersion(u64),
    #[error("field '{field}': {reason}")]
    Field { field: String, reason: String },
    #[error("group error: {0}")]
    Group(#[from] groups::GroupError),
    #[error("representation error: {0}")]
    Rep(#[from] crate::reps::RepError),
    #[error("stabilizer error: {0}")]
    Stabilizer(#[from] crate::stabilizer::StabilizerError),
    #[error("decomposition error: {0}")]
    Isotypic(#[from] crate::isotypic::IsotypicError),
    #[error("error word '{word}': {reason}")]
    ErrorWord { word: String, reason: String },
}

fn field_err(field: &str, reason: impl Into<String>) -> SpecError {
    SpecError::Field {
        field: field.into(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    CyclicProduct { dims: Vec<usize> },
    Symmetric { n: usize },
    Dihedral { n: usize },
    DirectProduct { a: Box<GroupSpec>, b: Box<GroupSpec> },
    Custom { cayley: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, SpecError> {
        Ok(match self {
            GroupSpec::CyclicProduct { dims } => groups::make_cyclic_product(dims)?,
            GroupSpec::Symmetric { n } => groups::make_symmetric(*n)?,
            GroupSpec::Dihedral { n } => groups::make_dihedral(*n)?,
            GroupSpec::DirectProduct { a, b } => {
                groups::direct_product(&a.build()?, &b.build()?)?
            }
            GroupSpec::Custom { cayley } => FiniteGroup::from_cayley(cayley.clone())?,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepSpec {
    TensorPermutation { local_dim: usize },
    BasisPermutation { perms: Vec<Vec<usize>> },
    DihedralVertexEdge,
    S3Faithful4,
    Matrices { matrices: Vec<Vec<Vec<[f64; 2]>>> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ErrorSpec {
    Word(String),
    Matrix { matrix: Vec<Vec<[f64; 2]>> },
}

#[derive(Debug, Clone, Deserialize)]
pub struct CodeSpecFile {
    pub schema: u64,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub rep: Option<RepSpec>,
    #[serde(default)]
    pub stabilizer: Option<StabilizerJson>,
    #[serde(default)]
    pub errors: Option<BTreeMap<String, ErrorSpec>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct StabilizerJson {
    pub dims: Vec<usize>,
    pub generators: Vec<String>,
}

/// Everything a CLI command needs, built from a spec file.
pub struct BuiltCode {
    pub group: Arc<FiniteGroup>,
    pub rep: Arc<UnitaryRep>,
    pub code: SymmetryCode,
    pub decomp: IsotypicDecomposition,
    pub stabilizer: Option<StabilizerSpec>,
    pub errors: BTreeMap<String, CMat>,
}

fn json_matrix(rows: &[Vec<[f64; 2]>]) -> Result<CMat, SpecError> {
    let n = rows.len();
    let mut m = zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(field_err("matrix", "must be square"));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

impl CodeSpecFile {
    pub fn from_path(path: &str) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.to_string(),
            source,
        })?;
        Self::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<Self, SpecError> {
        let spec: CodeSpecFile = serde_json::from_str(text)?;
        if spec.schema != SCHEMA_VERSION {
            return Err(SpecError::SchemaVersion(spec.schema));
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<BuiltCode, SpecError> {
        let (group, rep, stab) = if let Some(stab) = &self.stabilizer {
            let words: Vec<&str> = stab.generators.iter().map(String::as_str).collect();
            let spec = StabilizerSpec::new(stab.dims.clone(), &words)?;
            let (rep, _code) = crate::stabilizer::build_stabilizer_code(&spec)?;
            let group = Arc::clone(&rep.group);
            (group, rep, Some(spec))
        } else {
            let gspec = self
                .group
                .as_ref()
                .ok_or_else(|| field_err("group", "missing (or use 'stabilizer')"))?;
            let rspec = self
                .rep
                .as_ref()
                .ok_or_else(|| field_err("rep", "missing (or use 'stabilizer')"))?;
            let group = Arc::new(gspec.build()?);
            let rep = match rspec {
                RepSpec::TensorPermutation { local_dim } => {
                    Arc::new(tensor_permutation_rep(&group, *local_dim)?)
                }
                RepSpec::BasisPermutation { perms } => {
                    let action = PermAction::new(Arc::clone(&group), perms.clone())?;
                    Arc::new(basis_permutation_rep(&action)?)
                }
                RepSpec::DihedralVertexEdge => {
                    let crate::groups::FamilyTag::Dihedral(n) = *group.family() else {
                        return Err(field_err("rep", "dihedral_vertex_edge needs a dihedral group"));
                    };
                    Arc::new(dihedral_vertex_edge_rep(n)?)
                }
                RepSpec::S3Faithful4 => Arc::new(s3_faithful4_rep()?),
                RepSpec::Matrices { matrices } => {
                    if matrices.len() != group.order() {
                        return Err(field_err(
                            "rep.matrices",
                            format!(
                                "expected {} matrices, got {}",
                                group.order(),
                                matrices.len()
                            ),
                        ));
                    }
                    let mats: Vec<CMat> = matrices
                        .iter()
                        .map(|m| json_matrix(m))
                        .collect::<Result<_, _>>()?;
                    Arc::new(UnitaryRep::new(
                        Arc::clone(&group),
                        mats,
                        None,
                        "custom matrices",
                    )?)
                }
            };
            (group, rep, None)
        };
        let code = build_code(&rep)?;
        let chars = groups::character_table(&group)?;
        let decomp = decompose(&rep, &chars)?;
        let dims = rep
            .qudit_shape
            .clone()
            .unwrap_or_else(|| vec![rep.dim]);
        let mut errors = BTreeMap::new();
        if let Some(list) = &self.errors {
            for (name, e) in list {
                errors.insert(name.clone(), parse_error_spec(e, &dims, rep.dim)?);
            }
        }
        Ok(BuiltCode {
            group,
            rep,
            code,
            decomp,
            stabilizer: stab,
            errors,
        })
    }
}

pub fn parse_error_spec(
    spec: &ErrorSpec,
    dims: &[usize],
    dim: usize,
) -> Result<CMat, SpecError> {
    match spec {
        ErrorSpec::Word(w) => parse_error_word(w, dims, dim),
        ErrorSpec::Matrix { matrix } => {
            let m = json_matrix(matrix)?;
            if m.nrows() != dim {
                return Err(field_err("errors", format!("matrix must be {dim}x{dim}")));
            }
            Ok(m)
        }
    }
}

/// Parses an error operator: a Pauli word ("X0 Z1", "x[1]^2"), or a gate word
/// prefixed with "U:" whose tokens multiply left to right as written (the
/// rightmost gate acts first).
pub fn parse_error_word(word: &str, dims: &[usize], dim: usize) -> Result<CMat, SpecError> {
    let trimmed = word.trim();
    if let Some(gates) = trimmed.strip_prefix("U:") {
        parse_gate_word(gates, dims)
    } else {
        let p = PauliWord::parse(trimmed, dims).map_err(|e| SpecError::ErrorWord {
            word: word.to_string(),
            reason: e.to_string(),
        })?;
        let m = p.to_matrix(dims);
        if m.nrows() != dim {
            return Err(field_err("error", "dimension mismatch"));
        }
        Ok(m)
    }
}

fn parse_gate_word(gates: &str, dims: &[usize]) -> Result<CMat, SpecError> {
    let dim: usize = dims.iter().product();
    let mut total = identity(dim);
    let err = |tok: &str, reason: &str| SpecError::ErrorWord {
        word: tok.to_string(),
        reason: reason.to_string(),
    };
    // left-to-right as matrix product: accumulate by right-multiplying
    for tok in gates.split_whitespace() {
        let upper = tok.to_ascii_uppercase();
        let m = if let Some(rest) = upper.strip_prefix("CNOT") {
            let (c, t) = parse_two_sites(rest, dims.len()).map_err(|r| err(tok, &r))?;
            two_qubit_gate(dims, c, t, TwoQubit::Cnot)
        } else if let Some(rest) = upper.strip_prefix("SWAP") {
            let (a, b) = parse_two_sites(rest, dims.len()).map_err(|r| err(tok, &r))?;
            two_qubit_gate(dims, a, b, TwoQubit::Swap)
        } else if let Some(rest) = upper.strip_prefix("CZ") {
            let (a, b) = parse_two_sites(rest, dims.len()).map_err(|r| err(tok, &r))?;
            two_qubit_gate(dims, a, b, TwoQubit::Cz)
        } else {
            let kind = upper.chars().next().ok_or_else(|| err(tok, "empty"))?;
            let site: usize = upper[1..]
                .parse()
                .map_err(|_| err(tok, "bad site index"))?;
            if site >= dims.len() {
                return Err(err(tok, "site out of range"));
            }
            if dims[site] != 2 && matches!(kind, 'H' | 'S' | 'T' | 'Y') {
                return Err(err(tok, "gate defined on qubit sites only"));
            }
            let local = match kind {
                'X' => crate::stabilizer::sigma(dims[site], 1, 0),
                'Z' => crate::stabilizer::sigma(dims[site], 0, 1),
                'Y' => ndarray::array![
                    [linalg::C_ZERO, Complex64::new(0.0, -1.0)],
                    [Complex64::new(0.0, 1.0), linalg::C_ZERO]
                ],
                'H' => {
                    let s = 1.0 / 2f64.sqrt();
                    ndarray::array![
                        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
                        [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)]
                    ]
                }
                'S' => ndarray::array![
                    [C_ONE, linalg::C_ZERO],
                    [linalg::C_ZERO, Complex64::new(0.0, 1.0)]
                ],
                'T' => ndarray::array![
                    [C_ONE, linalg::C_ZERO],
                    [
                        linalg::C_ZERO,
                        Complex64::from_polar(1.0, std::f64::consts::PI / 4.0)
                    ]
                ],
                _ => return Err(err(tok, "unknown gate")),
            };
            linalg::op_on_site(&local, site, dims)
        };
        total = total.dot(&m);
    }
    Ok(total)
}

fn parse_two_sites(rest: &str, n_sites: usize) -> Result<(usize, usize), String> {
    let digits: Vec<char> = rest.chars().collect();
    if digits.len() != 2 || !digits.iter().all(|c| c.is_ascii_digit()) {
        return Err("expected two single-digit site indices".into());
    }
    let a = digits[0].to_digit(10).unwrap() as usize;
    let b = digits[1].to_digit(10).unwrap() as usize;
    if a >= n_sites || b >= n_sites || a == b {
        return Err("site indices out of range or equal".into());
    }
    Ok((a, b))
}

enum TwoQubit {
    Cnot,
    Swap,
    Cz,
}

fn two_qubit_gate(dims: &[usize], a: usize, b: usize, kind: TwoQubit) -> CMat {
    let dim: usize = dims.iter().product();
    let mut m = zeros(dim, dim);
    for idx in 0..dim {
        let digit = |site: usize| {
            let stride: usize = dims[..site].iter().product();
            idx / stride % dims[site]
        };
        let (da, db) = (digit(a), digit(b));
        match kind {
            TwoQubit::Cnot => {
                // control a, target b
                let out = if da == 1 {
                    let stride: usize = dims[..b].iter().product();
                    let flipped = (db + 1) % dims[b];
                    idx - db * stride + flipped * stride
                } else {
                    idx
                };
                m[(out, idx)] = C_ONE;
            }
            TwoQubit::Swap => {
                let sa: usize = dims[..a].iter().product();
                let sb: usize = dims[..b].iter().product();
                let out = idx - da * sa - db * sb + db * sa + da * sb;
                m[(out, idx)] = C_ONE;
            }
            TwoQubit::Cz => {
                let phase = if da == 1 && db == 1 { -C_ONE } else { C_ONE };
                m[(idx, idx)] = phase;
            }
        }
    }
    m
}
