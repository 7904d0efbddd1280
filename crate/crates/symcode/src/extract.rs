//! Exact statevector simulation of the symmetry test and isotypic syndrome
//! extraction, with two independent computation paths that must agree: direct
//! projector algebra and a full ancilla-circuit simulation.

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::gqft::GroupQft;
use crate::isotypic::{IsotypicDecomposition, SymmetryCode};
use crate::linalg::{self, CMat, CVec};
use crate::reps::UnitaryRep;

/// Branches below this probability are reported absent instead of producing a
/// garbage normalized state.
pub const P_FLOOR: f64 = 1e-12;
/// Joint data ⊗ ancilla statevector cap for the circuit path.
pub const CIRCUIT_STATE_CAP: usize = 1 << 20;
/// Required agreement between the two computation paths.
pub const PATH_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("dimension mismatch: state has {state}, expected {expected}")]
    DimMismatch { state: usize, expected: usize },
    #[error("state norm {0} is not 1")]
    NotNormalized(f64),
    #[error("joint dimension {0} exceeds the circuit cap {CIRCUIT_STATE_CAP}")]
    CircuitCap(usize),
    #[error("pad rows received amplitude {0:.3e}; ancilla labeling is broken")]
    PadAmplitude(f64),
    #[error("branch {label} has probability {p:.3e} below the floor")]
    ZeroProbability { label: String, p: f64 },
    #[error("ancilla failed to disentangle for label {label} (residual {residual:.3e})")]
    Entangled { label: String, residual: f64 },
}

/// A normalized pure state on a qudit register. Site 0 is the least
/// significant digit of the basis index.
#[derive(Debug, Clone)]
pub struct Statevector {
    pub amplitudes: CVec,
    pub dims: Vec<usize>,
}

impl Statevector {
    pub fn new(amplitudes: CVec, dims: Vec<usize>) -> Result<Self, ExtractError> {
        let dim: usize = dims.iter().product();
        if amplitudes.len() != dim {
            return Err(ExtractError::DimMismatch {
                state: amplitudes.len(),
                expected: dim,
            });
        }
        let norm = linalg::vec_norm(&amplitudes);
        if (norm - 1.0).abs() > 1e-10 {
            return Err(ExtractError::NotNormalized(norm));
        }
        Ok(Statevector { amplitudes, dims })
    }

    pub fn basis_state(index: usize, dims: Vec<usize>) -> Self {
        let dim: usize = dims.iter().product();
        assert!(index < dim);
        let mut v = CVec::zeros(dim);
        v[index] = linalg::C_ONE;
        Statevector {
            amplitudes: v,
            dims,
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Applies a unitary (an error operator, a gate word, ...) to the state.
    pub fn apply(&self, u: &CMat) -> Result<Self, ExtractError> {
        if u.ncols() != self.dim() {
            return Err(ExtractError::DimMismatch {
                state: self.dim(),
                expected: u.ncols(),
            });
        }
        Ok(Statevector {
            amplitudes: u.dot(&self.amplitudes),
            dims: self.dims.clone(),
        })
    }
}

/// Which computation path produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyndromePath {
    Direct,
    Circuit,
}

#[derive(Debug, Clone)]
pub struct SyndromeEntry {
    pub label: String,
    pub probability: f64,
    /// Normalized post-measurement state; absent below the probability floor.
    pub post_state: Option<Statevector>,
}

#[derive(Debug, Clone)]
pub struct SyndromeReport {
    pub entries: Vec<SyndromeEntry>,
    pub path: SyndromePath,
}

impl SyndromeReport {
    pub fn probability(&self, label: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map(|e| e.probability)
    }

    pub fn entry(&self, label: &str) -> Option<&SyndromeEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|e| e.probability).sum()
    }

    /// The label with the largest probability.
    pub fn argmax(&self) -> &SyndromeEntry {
        self.entries
            .iter()
            .max_by(|a, b| a.probability.partial_cmp(&b.probability).unwrap())
            .expect("non-empty report")
    }

    /// Samples one label from the exact distribution. Demo output only; the
    /// simulation itself always carries the full distribution.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> &SyndromeEntry {
        let mut t: f64 = rng.gen_range(0.0..1.0);
        for e in &self.entries {
            if t < e.probability {
                return e;
            }
            t -= e.probability;
        }
        self.entries.last().expect("non-empty report")
    }
}

/// Overlap with the code space: ‖Π_G ψ‖². Any error operator is applied by
/// the caller beforehand.
pub fn bose_test_probability(
    code: &SymmetryCode,
    state: &Statevector,
) -> Result<f64, ExtractError> {
    if state.dim() != code.dim() {
        return Err(ExtractError::DimMismatch {
            state: state.dim(),
            expected: code.dim(),
        });
    }
    let projected = code.projector.dot(&state.amplitudes);
    Ok(projected.iter().map(|z| z.norm_sqr()).sum())
}

/// Direct path: p_λ = ⟨ψ|Π_λ|ψ⟩ with post states Π_λψ/√p_λ.
pub fn syndrome_direct(
    decomp: &IsotypicDecomposition,
    state: &Statevector,
) -> Result<SyndromeReport, ExtractError> {
    if state.dim() != decomp.rep.dim {
        return Err(ExtractError::DimMismatch {
            state: state.dim(),
            expected: decomp.rep.dim,
        });
    }
    let mut entries = Vec::with_capacity(decomp.components.len());
    for c in &decomp.components {
        let projected = c.projector.dot(&state.amplitudes);
        let p: f64 = projected.iter().map(|z| z.norm_sqr()).sum();
        let post = if p >= P_FLOOR {
            let amps = projected.mapv(|z| z / p.sqrt());
            Some(Statevector {
                amplitudes: amps,
                dims: state.dims.clone(),
            })
        } else {
            None
        };
        entries.push(SyndromeEntry {
            label: c.label.clone(),
            probability: p,
            post_state: post,
        });
    }
    Ok(SyndromeReport {
        entries,
        path: SyndromePath::Direct,
    })
}

/// Circuit path: prepares (1/√|G|) Σ_g (W(g)ψ) ⊗ |g⟩, applies I ⊗ QFT_G, and
/// marginalizes the ancilla rows per irrep label.
///
/// Post states come from the physically faithful continuation: the λ-branch
/// is projected, the ancilla Fourier transform and the controlled group
/// action are inverted, and the ancilla (now back in |+_G⟩) is factored out.
/// This disentangles the register exactly, so the branch state must be a
/// product; any residual signals an implementation bug.
pub fn syndrome_circuit(
    rep: &UnitaryRep,
    qft: &GroupQft,
    state: &Statevector,
) -> Result<SyndromeReport, ExtractError> {
    if state.dim() != rep.dim {
        return Err(ExtractError::DimMismatch {
            state: state.dim(),
            expected: rep.dim,
        });
    }
    let order = rep.group.order();
    let ancilla = qft.matrix.nrows();
    assert!(ancilla >= order, "ancilla must hold all group labels");
    let joint_dim = rep.dim * ancilla;
    if joint_dim > CIRCUIT_STATE_CAP {
        return Err(ExtractError::CircuitCap(joint_dim));
    }

    // joint[(d, a)] amplitude layout; controlled-W on the |+_G> ancilla.
    let mut joint = linalg::zeros(rep.dim, ancilla);
    let scale = 1.0 / (order as f64).sqrt();
    for g in 0..order {
        let v = rep.matrix(g).dot(&state.amplitudes);
        for d in 0..rep.dim {
            joint[(d, g)] = v[d] * scale;
        }
    }
    // I ⊗ QFT: rows of the QFT act on the ancilla index.
    let fourier = joint.dot(&qft.matrix.t());

    // Pads must stay empty.
    let pad_weight: f64 = qft
        .labeling
        .pad_rows()
        .iter()
        .map(|&r| fourier.column(r).iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum();
    if pad_weight > 1e-18 {
        return Err(ExtractError::PadAmplitude(pad_weight));
    }

    let plus = crate::gqft::plus_state(&rep.group, ancilla)
        .expect("ancilla holds the group");
    let mut entries = Vec::new();
    for label in qft.labeling.irrep_labels() {
        let rows = qft.labeling.rows_of_label(&label);
        let p: f64 = rows
            .iter()
            .map(|&r| fourier.column(r).iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum();
        if p < P_FLOOR {
            entries.push(SyndromeEntry {
                label,
                probability: p,
                post_state: None,
            });
            continue;
        }
        // Project the ancilla onto the label's rows, then uncompute.
        let mut branch = linalg::zeros(rep.dim, ancilla);
        for &r in &rows {
            for d in 0..rep.dim {
                branch[(d, r)] = fourier[(d, r)];
            }
        }
        let mut back = branch.dot(&qft.matrix.mapv(|z| z.conj()));
        for g in 0..order {
            let col: CVec = back.column(g).to_owned();
            let undone = linalg::dagger(rep.matrix(g)).dot(&col);
            for d in 0..rep.dim {
                back[(d, g)] = undone[d];
            }
        }
        // back should now be (Π_λ ψ) ⊗ |+_G⟩; contract with the ancilla.
        let mut data = CVec::zeros(rep.dim);
        for d in 0..rep.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..ancilla {
                acc += plus[a].conj() * back[(d, a)];
            }
            data[d] = acc;
        }
        let mut residual = 0f64;
        for d in 0..rep.dim {
            for a in 0..ancilla {
                residual += (back[(d, a)] - data[d] * plus[a]).norm_sqr();
            }
        }
        let residual = residual.sqrt();
        if residual > 1e-8 {
            return Err(ExtractError::Entangled { label, residual });
        }
        let post = data.mapv(|z| z / p.sqrt());
        entries.push(SyndromeEntry {
            label,
            probability: p,
            post_state: Some(Statevector {
                amplitudes: post,
                dims: state.dims.clone(),
            }),
        });
    }
    Ok(SyndromeReport {
        entries,
        path: SyndromePath::Circuit,
    })
}

/// Collapses a state into one isotypic component: Π_λψ/‖Π_λψ‖.
pub fn collapse(
    decomp: &IsotypicDecomposition,
    state: &Statevector,
    label: &str,
) -> Result<Statevector, ExtractError> {
    let report = syndrome_direct(decomp, state)?;
    let entry = report.entry(label).ok_or_else(|| ExtractError::ZeroProbability {
        label: label.to_string(),
        p: 0.0,
    })?;
    entry
        .post_state
        .clone()
        .ok_or_else(|| ExtractError::ZeroProbability {
            label: label.to_string(),
            p: entry.probability,
        })
}

/// Maximum per-label probability difference between two reports.
pub fn report_distance(a: &SyndromeReport, b: &SyndromeReport) -> f64 {
    let mut worst = 0f64;
    for ea in &a.entries {
        let pb = b.probability(&ea.label).unwrap_or(0.0);
        worst = worst.max((ea.probability - pb).abs());
    }
    for eb in &b.entries {
        if a.probability(&eb.label).is_none() {
            worst = worst.max(eb.probability);
        }
    }
    worst
}
