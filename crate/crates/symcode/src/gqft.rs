//! Group quantum Fourier transforms: abelian tensor QFTs, the general
//! irrep-indexed matrix, dihedral irreps, the efficient D_{2^m} circuit, and
//! ancilla state preparation.
//!
//! Sign convention: abelian QFT entries are ω^{-jk}/√d and the group QFT uses
//! conjugated irrep matrix elements, entry((λ,i,j), g) = √(d_λ/|G|)·ρ_λ(g)*_{ij}.
//! Fourier rows are ordered per λ in character-table order with (i,j) row-major.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::groups::{dihedral_exponents, FiniteGroup};
use crate::linalg::{self, identity, kron, zeros, CMat, CVec, C_ONE, C_ZERO};

pub const QFT_UNITARITY_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum QftError {
    #[error("irrep input invalid: {0}")]
    IrrepInput(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("resulting transform not unitary (defect {0:.3e}); check the irreps")]
    NotUnitary(f64),
}

/// One label of the Fourier basis: an irrep matrix-element slot or a pad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowLabel {
    /// (λ, i, j) with 1-based i, j ranging over the irrep dimension.
    Irrep { label: String, i: usize, j: usize },
    Pad,
}

/// Bijection between Fourier-basis row indices and (λ, i, j) labels.
#[derive(Debug, Clone)]
pub struct FourierLabeling {
    rows: Vec<RowLabel>,
}

impl FourierLabeling {
    pub fn new(rows: Vec<RowLabel>) -> Self {
        FourierLabeling { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, idx: usize) -> &RowLabel {
        &self.rows[idx]
    }

    pub fn rows(&self) -> &[RowLabel] {
        &self.rows
    }

    pub fn position(&self, label: &RowLabel) -> Option<usize> {
        self.rows.iter().position(|r| r == label)
    }

    /// Row indices carrying the irrep `label`.
    pub fn rows_of_label(&self, label: &str) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, RowLabel::Irrep { label: l, .. } if l == label))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn irrep_labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.rows {
            if let RowLabel::Irrep { label, .. } = r {
                if !out.contains(label) {
                    out.push(label.clone());
                }
            }
        }
        out
    }

    pub fn pad_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, RowLabel::Pad))
            .map(|(i, _)| i)
            .collect()
    }
}

/// A group QFT matrix together with its row labeling.
#[derive(Debug, Clone)]
pub struct GroupQft {
    pub matrix: CMat,
    pub labeling: FourierLabeling,
}

impl GroupQft {
    /// Embeds the transform into a larger register, identity on pad rows and
    /// columns (basis states ≥ |G| on the input side).
    pub fn pad_to(&self, dim: usize) -> Result<GroupQft, QftError> {
        let n = self.matrix.nrows();
        if dim < n {
            return Err(QftError::Size(format!(
                "cannot pad a {n}-dim transform into {dim}"
            )));
        }
        let mut m = identity(dim);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.matrix[(i, j)];
            }
        }
        let mut rows = self.labeling.rows().to_vec();
        rows.extend(std::iter::repeat(RowLabel::Pad).take(dim - n));
        Ok(GroupQft {
            matrix: m,
            labeling: FourierLabeling::new(rows),
        })
    }
}

/// DFT matrix of Z_d with entry (j,k) = ω^{-jk}/√d.
pub fn dft_minus(d: usize) -> CMat {
    let mut m = zeros(d, d);
    let norm = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        for k in 0..d {
            let phase = -2.0 * PI * ((j * k) % d) as f64 / d as f64;
            m[(j, k)] = Complex64::from_polar(norm, phase);
        }
    }
    m
}

/// QFT over Z_{d_1} + … + Z_{d_n}: the tensor product of per-factor DFTs.
/// Component 0 is the least significant digit, so it sits rightmost in the
/// Kronecker chain.
pub fn qft_abelian(dims: &[usize]) -> CMat {
    assert!(!dims.is_empty(), "qft_abelian needs at least one factor");
    let factors: Vec<CMat> = dims.iter().rev().map(|&d| dft_minus(d)).collect();
    linalg::kron_list(&factors)
}

/// Explicit unitary matrices of one irrep, one entry per group element.
#[derive(Debug, Clone)]
pub struct IrrepMatrices {
    pub label: String,
    pub dim: usize,
    pub matrices: Vec<CMat>,
}

/// General group QFT from explicit unitary irreps per Eq.-style construction:
/// entry ((λ,i,j), g) = √(d_λ/|G|) · [ρ_λ(g)]*_{ij}.
pub fn qft_group(
    group: &FiniteGroup,
    irreps: &[IrrepMatrices],
) -> Result<GroupQft, QftError> {
    let order = group.order();
    let sum_sq: usize = irreps.iter().map(|ir| ir.dim * ir.dim).sum();
    if sum_sq != order {
        return Err(QftError::IrrepInput(format!(
            "sum of squared irrep dims {sum_sq} != |G| = {order}"
        )));
    }
    for ir in irreps {
        if ir.matrices.len() != order {
            return Err(QftError::IrrepInput(format!(
                "irrep {} has {} matrices, expected {order}",
                ir.label,
                ir.matrices.len()
            )));
        }
        for (e, m) in ir.matrices.iter().enumerate() {
            if m.nrows() != ir.dim || m.ncols() != ir.dim {
                return Err(QftError::IrrepInput(format!(
                    "irrep {} matrix {e} has wrong shape",
                    ir.label
                )));
            }
            if linalg::unitarity_defect(m) > 1e-9 {
                return Err(QftError::IrrepInput(format!(
                    "irrep {} matrix {e} is not unitary",
                    ir.label
                )));
            }
        }
    }
    let mut rows = Vec::with_capacity(order);
    let mut matrix = zeros(order, order);
    let mut r = 0;
    for ir in irreps {
        let scale = (ir.dim as f64 / order as f64).sqrt();
        for i in 0..ir.dim {
            for j in 0..ir.dim {
                for g in 0..order {
                    matrix[(r, g)] = ir.matrices[g][(i, j)].conj() * scale;
                }
                rows.push(RowLabel::Irrep {
                    label: ir.label.clone(),
                    i: i + 1,
                    j: j + 1,
                });
                r += 1;
            }
        }
    }
    let defect = linalg::unitarity_defect(&matrix);
    if defect > QFT_UNITARITY_TOL {
        // equivalent-duplicate or non-homomorphic irreps land here
        return Err(QftError::NotUnitary(defect));
    }
    Ok(GroupQft {
        matrix,
        labeling: FourierLabeling::new(rows),
    })
}

/// Unitary irreps of D_n in the presentation that reproduces the published
/// D_3 transform: trivial; flip sign; for even n the two characters with
/// r ↦ -1; and 2-dim irreps ρ_λ(f^α r^k) = X^α · diag(ω^{-λk}, ω^{+λk}).
pub fn dihedral_irreps(n: usize) -> Result<Vec<IrrepMatrices>, QftError> {
    if n < 3 {
        return Err(QftError::Size(format!("dihedral irreps need n >= 3, got {n}")));
    }
    let order = 2 * n;
    let elems: Vec<(usize, usize)> = (0..order).map(dihedral_exponents).collect();
    let scalar = |f: &dyn Fn(usize, usize) -> f64| -> Vec<CMat> {
        elems
            .iter()
            .map(|&(k, a)| {
                let mut m = zeros(1, 1);
                m[(0, 0)] = Complex64::new(f(k, a), 0.0);
                m
            })
            .collect()
    };
    let mut out = vec![
        IrrepMatrices {
            label: "triv".into(),
            dim: 1,
            matrices: scalar(&|_, _| 1.0),
        },
        IrrepMatrices {
            label: "sgn".into(),
            dim: 1,
            matrices: scalar(&|_, a| if a == 1 { -1.0 } else { 1.0 }),
        },
    ];
    if n % 2 == 0 {
        out.push(IrrepMatrices {
            label: "rot".into(),
            dim: 1,
            matrices: scalar(&|k, _| if k % 2 == 1 { -1.0 } else { 1.0 }),
        });
        out.push(IrrepMatrices {
            label: "rotsgn".into(),
            dim: 1,
            matrices: scalar(&|k, a| if (k + a) % 2 == 1 { -1.0 } else { 1.0 }),
        });
    }
    let two_dim = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    for lam in 1..=two_dim {
        let matrices = elems
            .iter()
            .map(|&(k, a)| {
                let up = Complex64::from_polar(1.0, -2.0 * PI * (lam * k) as f64 / n as f64);
                let dn = up.conj();
                let mut m = zeros(2, 2);
                if a == 0 {
                    m[(0, 0)] = up;
                    m[(1, 1)] = dn;
                } else {
                    m[(0, 1)] = dn;
                    m[(1, 0)] = up;
                }
                m
            })
            .collect();
        out.push(IrrepMatrices {
            label: format!("E{lam}"),
            dim: 2,
            matrices,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Gate sequences
// ---------------------------------------------------------------------------

/// A gate acting on target wires, optionally controlled on other wires being
/// in specific states. Wire 0 is the least significant digit.
#[derive(Debug, Clone)]
pub struct Gate {
    pub name: String,
    pub targets: Vec<usize>,
    /// (wire, trigger value) pairs; the gate applies only when every control
    /// wire holds its trigger value.
    pub controls: Vec<(usize, usize)>,
    /// Dense matrix on the target subspace, targets ordered least significant
    /// first.
    pub matrix: CMat,
}

#[derive(Debug, Clone)]
pub struct GateSequence {
    /// Local dimension of each wire.
    pub wires: Vec<usize>,
    pub gates: Vec<Gate>,
}

impl GateSequence {
    pub fn dim(&self) -> usize {
        self.wires.iter().product()
    }

    /// Composes the full-space matrix (gates applied in list order).
    pub fn compose_matrix(&self) -> CMat {
        let dim = self.dim();
        let mut total = identity(dim);
        for gate in &self.gates {
            let tdim: usize = gate.targets.iter().map(|&w| self.wires[w]).product();
            assert_eq!(gate.matrix.nrows(), tdim, "gate {} shape", gate.name);
            let mut full = zeros(dim, dim);
            for idx in 0..dim {
                // decode wires
                let mut digits = vec![0usize; self.wires.len()];
                let mut rem = idx;
                for (w, d) in self.wires.iter().enumerate() {
                    digits[w] = rem % d;
                    rem /= d;
                }
                let triggered = gate
                    .controls
                    .iter()
                    .all(|&(w, v)| digits[w] == v);
                if !triggered {
                    full[(idx, idx)] = C_ONE;
                    continue;
                }
                // decompose target sub-index
                let mut tin = 0usize;
                let mut stride = 1usize;
                for &w in &gate.targets {
                    tin += digits[w] * stride;
                    stride *= self.wires[w];
                }
                for tout in 0..tdim {
                    let amp = gate.matrix[(tout, tin)];
                    if amp == C_ZERO {
                        continue;
                    }
                    let mut od = digits.clone();
                    let mut rem = tout;
                    for &w in &gate.targets {
                        od[w] = rem % self.wires[w];
                        rem /= self.wires[w];
                    }
                    let mut oidx = 0usize;
                    let mut stride = 1usize;
                    for (w, d) in self.wires.iter().enumerate() {
                        oidx += od[w] * stride;
                        stride *= d;
                    }
                    full[(oidx, idx)] += amp;
                }
            }
            total = full.dot(&total);
        }
        total
    }

    pub fn apply(&self, state: &CVec) -> CVec {
        self.compose_matrix().dot(state)
    }
}

fn hadamard() -> CMat {
    let s = 1.0 / 2f64.sqrt();
    ndarray::array![
        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)]
    ]
}

/// Standard QFT ladder on m qubits realizing the minus-sign DFT of Z_{2^m}
/// (wire b = bit b of the index).
fn qft_pow2_ladder(m: usize, wire_offset: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for t in (0..m).rev() {
        gates.push(Gate {
            name: format!("H(w{})", wire_offset + t),
            targets: vec![wire_offset + t],
            controls: vec![],
            matrix: hadamard(),
        });
        for c in (0..t).rev() {
            let angle = -2.0 * PI / 2f64.powi((t - c + 1) as i32);
            let mut phase = identity(2);
            phase[(1, 1)] = Complex64::from_polar(1.0, angle);
            gates.push(Gate {
                name: format!("CR{}(w{}->w{})", t - c + 1, wire_offset + c, wire_offset + t),
                targets: vec![wire_offset + t],
                controls: vec![(wire_offset + c, 1)],
                matrix: phase,
            });
        }
    }
    for b in 0..m / 2 {
        let mut swap = zeros(4, 4);
        swap[(0, 0)] = C_ONE;
        swap[(3, 3)] = C_ONE;
        swap[(1, 2)] = C_ONE;
        swap[(2, 1)] = C_ONE;
        gates.push(Gate {
            name: format!("SWAP(w{},w{})", wire_offset + b, wire_offset + m - 1 - b),
            targets: vec![wire_offset + b, wire_offset + m - 1 - b],
            controls: vec![],
            matrix: swap,
        });
    }
    gates
}

/// Efficient QFT circuit for D_{2^m} and its reconciliation data against the
/// direct irrep-indexed matrix.
#[derive(Debug, Clone)]
pub struct DihedralQftCircuit {
    pub gates: GateSequence,
    /// Label of each circuit output basis state (flip bit most significant).
    pub labeling: FourierLabeling,
    /// Circuit input column for each canonical group element index 2k+α:
    /// the circuit packs |g⟩ = |α⟩|k⟩, so element 2k+α enters at α·n + k.
    pub column_of_element: Vec<usize>,
}

/// The D_{2^m} QFT circuit: a QFT over Z_n on the rotation register followed
/// by a Hadamard on the flip qubit controlled on the low rotation bits being
/// zero. The declared relabeling maps circuit output a·n + rot to the Fourier
/// label with a = i⊕j and rot = (-1)^j λ mod n for the 2-dim irreps (1-based
/// i, j), and to the four 1-dim irreps at rot ∈ {0, n/2}.
pub fn qft_dihedral_pow2_circuit(m: usize) -> Result<DihedralQftCircuit, QftError> {
    if m < 2 {
        return Err(QftError::Size(format!(
            "power-of-two dihedral circuit needs m >= 2, got {m}"
        )));
    }
    let n = 1usize << m;
    // wires: 0..m-1 = rotation bits, wire m = flip qubit
    let mut wires = vec![2usize; m + 1];
    wires[m] = 2;
    let mut gates = qft_pow2_ladder(m, 0);
    // Hadamard on the flip qubit, controlled on rotation bits 0..m-2 all zero
    gates.push(Gate {
        name: "CH(flip; x=0)".to_string(),
        targets: vec![m],
        controls: (0..m - 1).map(|w| (w, 0)).collect(),
        matrix: hadamard(),
    });
    let seq = GateSequence { wires, gates };

    // Output labeling: index a*n + rot.
    let mut rows = vec![RowLabel::Pad; 2 * n];
    let mut set = |pos: usize, label: String, i: usize, j: usize| {
        rows[pos] = RowLabel::Irrep { label, i, j };
    };
    set(0, "triv".into(), 1, 1);
    set(n, "sgn".into(), 1, 1);
    set(n / 2, "rot".into(), 1, 1);
    set(n + n / 2, "rotsgn".into(), 1, 1);
    for lam in 1..=(n / 2 - 1) {
        // (i,j) 1-based; a = (i-1) xor (j-1); rot = lam for j=2, n-lam for j=1
        set(n - lam, format!("E{lam}"), 1, 1);
        set(lam, format!("E{lam}"), 2, 2);
        set(n + lam, format!("E{lam}"), 1, 2);
        set(n + (n - lam), format!("E{lam}"), 2, 1);
    }
    let column_of_element = (0..2 * n)
        .map(|e| {
            let (k, a) = dihedral_exponents(e);
            a * n + k
        })
        .collect();
    Ok(DihedralQftCircuit {
        gates: seq,
        labeling: FourierLabeling::new(rows),
        column_of_element,
    })
}

/// QFT of K × Z_2^{⊕n} as QFT_K ⊗ H^{⊗n} (K factor most significant).
pub fn qft_product(k_qft: &CMat, n: usize) -> Result<CMat, QftError> {
    if linalg::unitarity_defect(k_qft) > QFT_UNITARITY_TOL {
        return Err(QftError::IrrepInput("k_qft is not unitary".into()));
    }
    let mut h = identity(1);
    for _ in 0..n {
        h = kron(&h, &hadamard());
    }
    Ok(kron(k_qft, &h))
}

/// |+_G⟩: uniform amplitude on the first |G| basis states of the ancilla.
pub fn plus_state(group: &FiniteGroup, ancilla_dim: usize) -> Result<CVec, QftError> {
    let order = group.order();
    if ancilla_dim < order {
        return Err(QftError::Size(format!(
            "ancilla dimension {ancilla_dim} < |G| = {order}"
        )));
    }
    let mut v = CVec::zeros(ancilla_dim);
    let amp = Complex64::new(1.0 / (order as f64).sqrt(), 0.0);
    for g in 0..order {
        v[g] = amp;
    }
    Ok(v)
}

/// Euler-angle single-qubit gate U(θ, φ, λ).
pub fn euler_unitary(theta: f64, phi: f64, lambda: f64) -> CMat {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ndarray::array![
        [
            Complex64::new(c, 0.0),
            -Complex64::from_polar(s, lambda)
        ],
        [
            Complex64::from_polar(s, phi),
            Complex64::from_polar(c, phi + lambda)
        ]
    ]
}

/// The published angle 2·arccos(csc(π/8)sec(π/8) / (2√3)).
pub fn d3_prep_gamma() -> f64 {
    let csc = 1.0 / (PI / 8.0).sin();
    let sec = 1.0 / (PI / 8.0).cos();
    2.0 * (csc * sec / (2.0 * 3f64.sqrt())).acos()
}

/// State-preparation circuit for |+_{D_3}⟩ on three qubits: two rotation
/// qubits (wires 1, 2) brought to (|00⟩+|01⟩+|10⟩)/√3 by two Euler rotations
/// around a CNOT, and a Hadamard on the flip qubit (wire 0).
///
/// Wire layout matches the ancilla convention: the flip bit is the least
/// significant, the rotation value k occupies wires 1 (low bit) and 2.
pub fn d3_prep_circuit() -> GateSequence {
    d3_prep_circuit_with_gamma(d3_prep_gamma())
}

/// Same circuit with an explicit rotation angle, e.g. the six-significant-
/// digit value quoted alongside the published diagram.
pub fn d3_prep_circuit_with_gamma(gamma: f64) -> GateSequence {
    // The rotation pair in the published diagram: qubit 1 -> wire 2 (high bit),
    // qubit 0 -> wire 1 (low bit).
    let (q0, q1) = (1usize, 2usize);
    let mut cnot = zeros(4, 4);
    // control q1, target q0, targets ordered [q0, q1]
    cnot[(0, 0)] = C_ONE;
    cnot[(1, 1)] = C_ONE;
    cnot[(3, 2)] = C_ONE;
    cnot[(2, 3)] = C_ONE;
    GateSequence {
        wires: vec![2, 2, 2],
        gates: vec![
            Gate {
                name: "U1(γ,0,0)".into(),
                targets: vec![q1],
                controls: vec![],
                matrix: euler_unitary(gamma, 0.0, 0.0),
            },
            Gate {
                name: "U0(3π/4,-2π,-π/2)".into(),
                targets: vec![q0],
                controls: vec![],
                matrix: euler_unitary(3.0 * PI / 4.0, -2.0 * PI, -PI / 2.0),
            },
            Gate {
                name: "CNOT(1->0)".into(),
                targets: vec![q0, q1],
                controls: vec![],
                matrix: cnot,
            },
            Gate {
                name: "U0(π/4,-π,π)".into(),
                targets: vec![q0],
                controls: vec![],
                matrix: euler_unitary(PI / 4.0, -PI, PI),
            },
            Gate {
                name: "H(flip)".into(),
                targets: vec![0],
                controls: vec![],
                matrix: hadamard(),
            },
        ],
    }
}
