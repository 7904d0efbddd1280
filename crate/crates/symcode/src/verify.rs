//! Code-quality verification and the logical layer: Knill-Laflamme checks,
//! G-weight and G-distance search, normalizer and centralizer membership,
//! logical-operator extraction, the operator-algebra spanning check, and the
//! measurement-based logical CNOT protocol with its correction table.

use std::collections::HashMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::isotypic::{IsotypicDecomposition, SymmetryCode};
use crate::linalg::{
    self, dagger, identity, kron_list, max_abs_diff, phase_insensitive_distance, zeros,
    CMat, CVec, C_ONE,
};
use crate::reps::UnitaryRep;

/// Default scalar tolerance for Knill-Laflamme residuals.
pub const KL_TOL: f64 = 1e-8;
/// Group-element matching tolerance in normalizer checks.
pub const MATCH_TOL: f64 = 1e-8;
/// Default cap on word length in weight/distance searches.
pub const DEFAULT_WMAX: usize = 6;
/// Singular-value threshold for the algebra span closure.
pub const SPAN_TOL: f64 = 1e-9;
/// Span checks vectorize dim×dim matrices; keep the dimension modest.
pub const SPAN_DIM_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("empty error set")]
    EmptyErrorSet,
    #[error("operator is not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("operator is not in the normalizer")]
    NotInNormalizer,
    #[error("restriction to the code space is not unitary (defect {0:.3e})")]
    RestrictionNotUnitary(f64),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("span check capped at dim <= {SPAN_DIM_CAP}, got {0}")]
    SpanCap(usize),
    #[error("measurement branch ({a},{b},{c}) has zero probability for this input")]
    BranchUnreachable { a: i8, b: i8, c: i8 },
    #[error("G-distance not certified within w_max = {0}")]
    DistanceInconclusive(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

// ---------------------------------------------------------------------------
// Knill-Laflamme
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum KlStatus {
    /// Π A Π = c Π within tolerance.
    Scalar(Complex64),
    /// Residual norm of Π A Π − c Π.
    Violation(f64),
}

#[derive(Debug, Clone)]
pub struct KlPair {
    pub left: usize,
    pub right: usize,
    pub status: KlStatus,
}

#[derive(Debug, Clone)]
pub struct KlReport {
    pub pairs: Vec<KlPair>,
    pub pass: bool,
}

impl KlReport {
    pub fn violations(&self) -> Vec<&KlPair> {
        self.pairs
            .iter()
            .filter(|p| matches!(p.status, KlStatus::Violation(_)))
            .collect()
    }
}

/// Checks Π E†F Π = c Π for every ordered pair from the error set. The scalar
/// comes from the trace ratio c = tr(Π A Π) / tr(Π).
pub fn kl_check(
    code: &SymmetryCode,
    errors: &[CMat],
    tol: f64,
) -> Result<KlReport, VerifyError> {
    if errors.is_empty() {
        return Err(VerifyError::EmptyErrorSet);
    }
    let dim = code.dim();
    for e in errors {
        if e.nrows() != dim || e.ncols() != dim {
            return Err(VerifyError::DimMismatch(format!(
                "error operator shape {:?}",
                e.dim()
            )));
        }
    }
    let proj = &code.projector;
    let trace_p: f64 = proj.diag().iter().map(|z| z.re).sum();
    let mut pairs = Vec::with_capacity(errors.len() * errors.len());
    let mut pass = true;
    for (i, e) in errors.iter().enumerate() {
        for (j, f) in errors.iter().enumerate() {
            let a = dagger(e).dot(f);
            let pap = proj.dot(&a).dot(proj);
            let c: Complex64 =
                pap.diag().iter().sum::<Complex64>() / Complex64::new(trace_p, 0.0);
            let residual = max_abs_diff(&pap, &proj.mapv(|z| z * c));
            let status = if residual <= tol {
                KlStatus::Scalar(c)
            } else {
                pass = false;
                KlStatus::Violation(residual)
            };
            pairs.push(KlPair {
                left: i,
                right: j,
                status,
            });
        }
    }
    Ok(KlReport { pairs, pass })
}

// ---------------------------------------------------------------------------
// Weight and distance
// ---------------------------------------------------------------------------

/// A named unitary generator for weight searches.
#[derive(Debug, Clone)]
pub struct NamedOperator {
    pub name: String,
    pub matrix: CMat,
}

/// An operator reached by a BFS word, with its generator word and length.
#[derive(Debug, Clone)]
pub struct WeightedOperator {
    pub matrix: CMat,
    pub word: Vec<String>,
    pub weight: usize,
}

pub enum WeightResult {
    Found(usize),
    ExceedsWmax(usize),
}

fn matrix_key(m: &CMat) -> Vec<(i64, i64)> {
    m.iter()
        .map(|z| ((z.re * 1e7).round() as i64, (z.im * 1e7).round() as i64))
        .collect()
}

/// BFS enumeration of all products of the generating set up to length w_max,
/// deduplicated exactly. Words are visited in breadth-first order, so the
/// first time an operator appears its word length is its weight.
pub fn enumerate_words(
    generators: &[NamedOperator],
    w_max: usize,
) -> Vec<WeightedOperator> {
    let dim = generators
        .first()
        .map(|g| g.matrix.nrows())
        .unwrap_or(0);
    let mut seen: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    let mut out = vec![WeightedOperator {
        matrix: identity(dim),
        word: Vec::new(),
        weight: 0,
    }];
    seen.insert(matrix_key(&out[0].matrix), 0);
    let mut frontier: Vec<usize> = vec![0];
    for depth in 1..=w_max {
        let mut next = Vec::new();
        for &idx in &frontier {
            let base = out[idx].clone();
            for g in generators {
                let m = g.matrix.dot(&base.matrix);
                let key = matrix_key(&m);
                if !seen.contains_key(&key) {
                    seen.insert(key, out.len());
                    let mut word = vec![g.name.clone()];
                    word.extend(base.word.iter().cloned());
                    next.push(out.len());
                    out.push(WeightedOperator {
                        matrix: m,
                        word,
                        weight: depth,
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    out
}

/// Minimal word length generating `target` up to a global phase.
pub fn g_weight(
    target: &CMat,
    generators: &[NamedOperator],
    w_max: usize,
) -> WeightResult {
    let words = enumerate_words(generators, w_max);
    let mut best: Option<usize> = None;
    for w in &words {
        if phase_insensitive_distance(target, &w.matrix) <= MATCH_TOL {
            best = Some(best.map_or(w.weight, |b: usize| b.min(w.weight)));
        }
    }
    match best {
        Some(w) => WeightResult::Found(w),
        None => WeightResult::ExceedsWmax(w_max),
    }
}

/// Membership mode for matching conjugates against the group image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    /// Conjugates must equal some W(h) exactly (phases are part of W(G)).
    Exact,
    /// Conjugates may differ from some W(h) by a global phase.
    UpToPhase,
}

fn matches_some_element(rep: &UnitaryRep, m: &CMat, mode: PhaseMode) -> Option<usize> {
    for (h, w) in rep.matrices.iter().enumerate() {
        let d = match mode {
            PhaseMode::Exact => max_abs_diff(m, w),
            PhaseMode::UpToPhase => phase_insensitive_distance(m, w),
        };
        if d <= MATCH_TOL {
            return Some(h);
        }
    }
    None
}

/// Is n W(g) n† inside W(G) for every generator g (hence for all of G)?
pub fn normalizer_membership(
    n: &CMat,
    rep: &UnitaryRep,
    mode: PhaseMode,
) -> Result<bool, VerifyError> {
    let defect = linalg::unitarity_defect(n);
    if defect > 1e-8 {
        return Err(VerifyError::NotUnitary(defect));
    }
    let nd = dagger(n);
    let gens: Vec<usize> = if rep.group.generators().is_empty() {
        (0..rep.group.order()).collect()
    } else {
        rep.group.generators().iter().map(|(_, g)| *g).collect()
    };
    for g in gens {
        let conj = n.dot(rep.matrix(g)).dot(&nd);
        if matches_some_element(rep, &conj, mode).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does n commute with every W(g)?
pub fn centralizer_membership(n: &CMat, rep: &UnitaryRep) -> Result<bool, VerifyError> {
    let defect = linalg::unitarity_defect(n);
    if defect > 1e-8 {
        return Err(VerifyError::NotUnitary(defect));
    }
    let gens: Vec<usize> = if rep.group.generators().is_empty() {
        (0..rep.group.order()).collect()
    } else {
        rep.group.generators().iter().map(|(_, g)| *g).collect()
    };
    for g in gens {
        let lhs = n.dot(rep.matrix(g));
        let rhs = rep.matrix(g).dot(n);
        if max_abs_diff(&lhs, &rhs) > MATCH_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The permutation of irrep labels induced by conjugation: returns per-label
/// index μ with n† Π_λ n = Π_μ.
pub fn conjugation_irrep_permutation(
    n: &CMat,
    decomp: &IsotypicDecomposition,
) -> Result<Vec<usize>, VerifyError> {
    let nd = dagger(n);
    let mut out = Vec::with_capacity(decomp.components.len());
    for c in &decomp.components {
        let conj = nd.dot(&c.projector).dot(n);
        let mut found = None;
        for (mi, target) in decomp.components.iter().enumerate() {
            if max_abs_diff(&conj, &target.projector) <= 1e-7 {
                found = Some(mi);
                break;
            }
        }
        out.push(found.ok_or(VerifyError::NotInNormalizer)?);
    }
    Ok(out)
}

/// The action of a normalizer element on the code space, as a matrix in the
/// codespace basis. Normalizer elements preserve Sym_G, so the restriction
/// must be unitary.
pub fn logical_action(n: &CMat, code: &SymmetryCode) -> Result<CMat, VerifyError> {
    let k = code.code_dim();
    let mut m = zeros(k, k);
    for (j, bj) in code.codespace_basis.iter().enumerate() {
        let image = n.dot(bj);
        for (i, bi) in code.codespace_basis.iter().enumerate() {
            m[(i, j)] = linalg::inner(bi, &image);
        }
    }
    let defect = linalg::unitarity_defect(&m);
    if defect > 1e-8 {
        return Err(VerifyError::RestrictionNotUnitary(defect));
    }
    Ok(m)
}

/// G-distance: the minimal weight of a word that normalizes W(G) without
/// lying in it. Words are enumerated breadth-first; exhausting w_max without
/// a hit certifies the lower bound d_G > w_max.
pub fn g_distance(
    code: &SymmetryCode,
    generators: &[NamedOperator],
    w_max: usize,
    mode: PhaseMode,
) -> Result<Result<(usize, WeightedOperator), usize>, VerifyError> {
    let rep = &code.rep;
    let words = enumerate_words(generators, w_max);
    let mut best: Option<(usize, WeightedOperator)> = None;
    for w in &words {
        if w.weight == 0 {
            continue;
        }
        if let Some((bw, _)) = best {
            if w.weight > bw {
                break;
            }
        }
        if matches_some_element(rep, &w.matrix, PhaseMode::Exact).is_some() {
            continue;
        }
        if normalizer_membership(&w.matrix, rep, mode)? {
            best = Some((w.weight, w.clone()));
        }
    }
    Ok(match best {
        Some((d, op)) => Ok((d, op)),
        None => Err(w_max),
    })
}

/// Checks the correctability bound: enumerates normalizer elements of weight
/// ≤ t and runs the scalar condition on that set. Requires 2t < d_G with d_G
/// certified inside w_max.
pub fn generalized_kl_bound_check(
    code: &SymmetryCode,
    generators: &[NamedOperator],
    t: usize,
    w_max: usize,
    mode: PhaseMode,
) -> Result<KlReport, VerifyError> {
    let d_g = match g_distance(code, generators, w_max, mode)? {
        Ok((d, _)) => d,
        Err(cap) => {
            if 2 * t < cap + 1 {
                // d_G > cap >= 2t still certifies the premise
                cap + 1
            } else {
                return Err(VerifyError::DistanceInconclusive(cap));
            }
        }
    };
    if 2 * t >= d_g {
        return Err(VerifyError::Precondition(format!(
            "need 2t < d_G, got t = {t}, d_G = {d_g}"
        )));
    }
    let words = enumerate_words(generators, t);
    let mut set: Vec<CMat> = Vec::new();
    for w in &words {
        if normalizer_membership(&w.matrix, &code.rep, mode)? {
            set.push(w.matrix.clone());
        }
    }
    kl_check(code, &set, KL_TOL)
}

// ---------------------------------------------------------------------------
// Algebra span
// ---------------------------------------------------------------------------

/// Dimension of the associative algebra generated by a set of matrices:
/// the span of all nonempty products, closed under left multiplication.
pub fn algebra_span_dimension(generators: &[CMat]) -> Result<usize, VerifyError> {
    if generators.is_empty() {
        return Err(VerifyError::EmptyErrorSet);
    }
    let dim = generators[0].nrows();
    if dim > SPAN_DIM_CAP {
        return Err(VerifyError::SpanCap(dim));
    }
    let vec_len = dim * dim;
    let mut basis: Vec<CVec> = Vec::new();
    let mut members: Vec<CMat> = Vec::new();
    let add = |m: &CMat, basis: &mut Vec<CVec>, members: &mut Vec<CMat>| -> bool {
        let mut v = CVec::zeros(vec_len);
        for i in 0..dim {
            for j in 0..dim {
                v[i * dim + j] = m[(i, j)];
            }
        }
        let norm0 = linalg::vec_norm(&v).max(1e-300);
        for b in basis.iter() {
            let c = linalg::inner(b, &v);
            v = &v - &b.mapv(|x| x * c);
        }
        if linalg::vec_norm(&v) > SPAN_TOL * norm0 {
            let nv = linalg::vec_norm(&v);
            basis.push(v.mapv(|x| x / nv));
            members.push(m.clone());
            true
        } else {
            false
        }
    };
    for g in generators {
        if g.nrows() != dim || g.ncols() != dim {
            return Err(VerifyError::DimMismatch("span generator shape".into()));
        }
        add(g, &mut basis, &mut members);
    }
    loop {
        let mut grew = false;
        let snapshot = members.clone();
        for g in generators {
            for m in &snapshot {
                let prod = g.dot(m);
                if add(&prod, &mut basis, &mut members) {
                    grew = true;
                }
            }
        }
        if !grew || basis.len() == vec_len {
            break;
        }
    }
    Ok(basis.len())
}

// ---------------------------------------------------------------------------
// Logical CNOT protocol
// ---------------------------------------------------------------------------

/// The published correction table for the measurement-based CNOT, keyed by
/// the three outcomes (a, b, c) ∈ {±1}³. Corrections are words over
/// {X_T, Z_C}.
pub fn cnot_correction(a: i8, b: i8, c: i8) -> (bool, bool) {
    // returns (apply X_T, apply Z_C)
    match (a, b, c) {
        (1, 1, 1) => (false, false),
        (1, 1, -1) => (true, false),
        (1, -1, 1) => (false, true),
        (1, -1, -1) => (true, true),
        (-1, 1, 1) => (true, false),
        (-1, 1, -1) => (false, false),
        (-1, -1, 1) => (true, true),
        (-1, -1, -1) => (false, true),
        _ => panic!("outcomes must be ±1"),
    }
}

/// Logical qubit realization for the protocol: a register dimension, logical
/// basis states, and involutions X_L, Z_L acting on that register.
#[derive(Debug, Clone)]
pub struct LogicalQubit {
    pub dim: usize,
    pub ket0: CVec,
    pub ket1: CVec,
    pub x_l: CMat,
    pub z_l: CMat,
}

impl LogicalQubit {
    /// The abstract one-qubit-per-register realization.
    pub fn bare() -> Self {
        let mut ket0 = CVec::zeros(2);
        ket0[0] = C_ONE;
        let mut ket1 = CVec::zeros(2);
        ket1[1] = C_ONE;
        let x = ndarray::array![
            [linalg::C_ZERO, C_ONE],
            [C_ONE, linalg::C_ZERO]
        ];
        let z = ndarray::array![
            [C_ONE, linalg::C_ZERO],
            [linalg::C_ZERO, -C_ONE]
        ];
        LogicalQubit {
            dim: 2,
            ket0,
            ket1,
            x_l: x,
            z_l: z,
        }
    }

    /// A physical realization from a two-dimensional code plus logical Pauli
    /// operators on the physical register.
    pub fn physical(code: &SymmetryCode, x_l: CMat, z_l: CMat) -> Result<Self, VerifyError> {
        if code.code_dim() < 2 {
            return Err(VerifyError::Precondition(
                "physical mode needs a code with at least 2 codewords".into(),
            ));
        }
        Ok(LogicalQubit {
            dim: code.dim(),
            ket0: code.codeword(0).clone(),
            ket1: code.codeword(1).clone(),
            x_l,
            z_l,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CnotOutcome {
    /// Final control+target state after correction, ancilla discarded.
    pub state: CVec,
    /// Probability of this outcome branch.
    pub probability: f64,
    /// Fidelity against CNOT applied to the logical input.
    pub fidelity: f64,
    pub correction_xt: bool,
    pub correction_zc: bool,
}

/// Runs the three-measurement logical CNOT protocol on registers C, T with a
/// fresh ancilla in |+⟩_A, postselecting the outcomes (a, b, c) and applying
/// the published correction.
///
/// `logical_input` holds the four amplitudes of |ψ⟩_CT in the logical basis.
pub fn cnot_protocol(
    qubit: &LogicalQubit,
    logical_input: &[Complex64; 4],
    outcomes: (i8, i8, i8),
) -> Result<CnotOutcome, VerifyError> {
    let (a, b, c) = outcomes;
    if a.abs() != 1 || b.abs() != 1 || c.abs() != 1 {
        return Err(VerifyError::Precondition("outcomes must be ±1".into()));
    }
    let d = qubit.dim;
    let full = d * d * d; // registers C, T, A with C most significant
    let emb = |op: &CMat, reg: usize| -> CMat {
        let mut ops = vec![identity(d), identity(d), identity(d)];
        ops[reg] = op.clone();
        kron_list(&ops)
    };
    // logical two-qubit input on C, T
    let kets = [&qubit.ket0, &qubit.ket1];
    let mut psi_ct = CVec::zeros(d * d);
    for (idx, amp) in logical_input.iter().enumerate() {
        let (qc, qt) = (idx >> 1, idx & 1);
        let mut prod = CVec::zeros(d * d);
        for i in 0..d {
            for j in 0..d {
                prod[i * d + j] = kets[qc][i] * kets[qt][j];
            }
        }
        psi_ct = psi_ct + prod.mapv(|x| x * *amp);
    }
    let plus = (&qubit.ket0 + &qubit.ket1).mapv(|x| x / 2f64.sqrt());
    let mut state = CVec::zeros(full);
    for i in 0..d * d {
        for k in 0..d {
            state[i * d + k] = psi_ct[i] * plus[k];
        }
    }
    // observables
    let zc_za = emb(&qubit.z_l, 0).dot(&emb(&qubit.z_l, 2));
    let xa_xt = emb(&qubit.x_l, 2).dot(&emb(&qubit.x_l, 1));
    let za = emb(&qubit.z_l, 2);
    let mut probability = 1.0;
    for (obs, o) in [(&zc_za, a), (&xa_xt, b), (&za, c)] {
        let pushed = obs.dot(&state);
        state = state.mapv(|x| x * Complex64::new(0.5, 0.0))
            + pushed.mapv(|x| x * Complex64::new(0.5 * o as f64, 0.0));
        let norm = linalg::vec_norm(&state);
        if norm < 1e-9 {
            return Err(VerifyError::BranchUnreachable { a, b, c });
        }
        probability *= norm * norm;
        state = state.mapv(|x| x / norm);
    }
    let (fix_xt, fix_zc) = cnot_correction(a, b, c);
    if fix_xt {
        state = emb(&qubit.x_l, 1).dot(&state);
    }
    if fix_zc {
        state = emb(&qubit.z_l, 0).dot(&state);
    }
    // The ancilla collapsed to a Z_L eigenstate; factor it out by contracting
    // with whichever logical ket carries the weight.
    let state_mat = {
        let mut m = zeros(d * d, d);
        for i in 0..d * d {
            for k in 0..d {
                m[(i, k)] = state[i * d + k];
            }
        }
        m
    };
    let mut ct = CVec::zeros(d * d);
    let mut best = -1.0;
    for ket in [&qubit.ket0, &qubit.ket1] {
        let mut v = CVec::zeros(d * d);
        for i in 0..d * d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += ket[k].conj() * state_mat[(i, k)];
            }
            v[i] = acc;
        }
        let nv = linalg::vec_norm(&v);
        if nv > best {
            best = nv;
            ct = v;
        }
    }
    let nv = linalg::vec_norm(&ct);
    if nv < 1e-9 {
        return Err(VerifyError::BranchUnreachable { a, b, c });
    }
    let ct = ct.mapv(|x| x / nv);
    // target: CNOT on the logical amplitudes
    let target_log = [
        logical_input[0],
        logical_input[1],
        logical_input[3],
        logical_input[2],
    ];
    let mut target = CVec::zeros(d * d);
    for (idx, amp) in target_log.iter().enumerate() {
        let (qc, qt) = (idx >> 1, idx & 1);
        let mut prod = CVec::zeros(d * d);
        for i in 0..d {
            for j in 0..d {
                prod[i * d + j] = kets[qc][i] * kets[qt][j];
            }
        }
        target = target + prod.mapv(|x| x * *amp);
    }
    let tnorm = linalg::vec_norm(&target);
    let fidelity = (linalg::inner(&target, &ct).norm() / tnorm).powi(2);
    Ok(CnotOutcome {
        state: ct,
        probability,
        fidelity,
        correction_xt: fix_xt,
        correction_zc: fix_zc,
    })
}

// ---------------------------------------------------------------------------
// Published operators for the two-qubit faithful code
// ---------------------------------------------------------------------------

/// Logical Pauli X for the two-qubit faithful code:
/// (X_0 + X_1 + X_0X_1 + X_0Z_1 + Z_0X_1 − Y_0Y_1) / (2√3).
pub fn faithful4_logical_x() -> CMat {
    let dims = [2usize, 2];
    let x = crate::stabilizer::sigma(2, 1, 0);
    let z = crate::stabilizer::sigma(2, 0, 1);
    let y = ndarray::array![
        [linalg::C_ZERO, Complex64::new(0.0, -1.0)],
        [Complex64::new(0.0, 1.0), linalg::C_ZERO]
    ];
    let on = |op: &CMat, site: usize| linalg::op_on_site(op, site, &dims);
    let sum = on(&x, 0).clone()
        + on(&x, 1)
        + on(&x, 0).dot(&on(&x, 1))
        + on(&x, 0).dot(&on(&z, 1))
        + on(&z, 0).dot(&on(&x, 1))
        - on(&y, 0).dot(&on(&y, 1));
    sum.mapv(|v| v / (2.0 * 3f64.sqrt()))
}

/// Logical Pauli Z for the two-qubit faithful code:
/// (Z_0 + Z_1 + Z_0Z_1 − 1) / 2.
pub fn faithful4_logical_z() -> CMat {
    let dims = [2usize, 2];
    let z = crate::stabilizer::sigma(2, 0, 1);
    let on = |op: &CMat, site: usize| linalg::op_on_site(op, site, &dims);
    let sum = on(&z, 0).clone() + on(&z, 1) + on(&z, 0).dot(&on(&z, 1)) - identity(4);
    sum.mapv(|v| v / 2.0)
}

/// The published correctable error for the two-qubit faithful code, realized
/// so the corrupted codewords match the printed states exactly:
/// Z on qubit 0, X on qubit 1, CNOT with control qubit 1, H on qubit 1.
pub fn faithful4_demo_error() -> CMat {
    let dims = [2usize, 2];
    let x = crate::stabilizer::sigma(2, 1, 0);
    let z = crate::stabilizer::sigma(2, 0, 1);
    let h = {
        let s = 1.0 / 2f64.sqrt();
        ndarray::array![
            [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)]
        ]
    };
    let on = |op: &CMat, site: usize| linalg::op_on_site(op, site, &dims);
    let mut cnot10 = zeros(4, 4);
    // control qubit 1 (bit value 2), target qubit 0
    for idx in 0..4usize {
        let out = if idx & 2 != 0 { idx ^ 1 } else { idx };
        cnot10[(out, idx)] = C_ONE;
    }
    on(&z, 0).dot(&on(&x, 1)).dot(&cnot10).dot(&on(&h, 1))
}

/// Full round trip of the published correctable error: encode, corrupt, read
/// the syndrome (must be the nontrivial label with certainty), recover with
/// the adjoint, and return the fidelity with the original state.
pub fn correctable_demo_ive(
    alpha: Complex64,
    beta: Complex64,
) -> Result<(f64, f64), VerifyError> {
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(VerifyError::Precondition(
            "amplitudes must be normalized".into(),
        ));
    }
    let rep = std::sync::Arc::new(
        crate::reps::s3_faithful4_rep().map_err(|e| VerifyError::DimMismatch(e.to_string()))?,
    );
    let code = crate::isotypic::build_code(&rep)
        .map_err(|e| VerifyError::DimMismatch(e.to_string()))?;
    let chars = crate::groups::character_table(&rep.group)
        .map_err(|e| VerifyError::DimMismatch(e.to_string()))?;
    let decomp = crate::isotypic::decompose(&rep, &chars)
        .map_err(|e| VerifyError::DimMismatch(e.to_string()))?;
    let psi = code.encode(&[alpha, beta]);
    let u = faithful4_demo_error();
    let corrupted = u.dot(&psi);
    let std_proj = &decomp.component("std").expect("std component").projector;
    let p_std: f64 = std_proj
        .dot(&corrupted)
        .iter()
        .map(|z| z.norm_sqr())
        .sum();
    let recovered = dagger(&u).dot(&std_proj.dot(&corrupted).mapv(|z| z / p_std.sqrt()));
    let fidelity = linalg::inner(&recovered, &psi).norm().powi(2);
    Ok((p_std, fidelity))
}

/// Single-qubit Pauli generating set (X_i, Y_i, Z_i on every site).
pub fn pauli_generators(n_qubits: usize, include_y: bool) -> Vec<NamedOperator> {
    let dims = vec![2usize; n_qubits];
    let x = crate::stabilizer::sigma(2, 1, 0);
    let z = crate::stabilizer::sigma(2, 0, 1);
    let y = ndarray::array![
        [linalg::C_ZERO, Complex64::new(0.0, -1.0)],
        [Complex64::new(0.0, 1.0), linalg::C_ZERO]
    ];
    let mut out = Vec::new();
    for site in 0..n_qubits {
        out.push(NamedOperator {
            name: format!("X{site}"),
            matrix: linalg::op_on_site(&x, site, &dims),
        });
        if include_y {
            out.push(NamedOperator {
                name: format!("Y{site}"),
                matrix: linalg::op_on_site(&y, site, &dims),
            });
        }
        out.push(NamedOperator {
            name: format!("Z{site}"),
            matrix: linalg::op_on_site(&z, site, &dims),
        });
    }
    out
}

/// The dihedral Fourier-basis permutation operators U_{a,b} on the two-orbit
/// register: U_{a,b}|k̂,α⟩ = ω^{bk}|âk,α⟩.
pub fn dihedral_u_ab(n: usize, a: usize, b: usize) -> CMat {
    let dim = 2 * n;
    let omega = |e: i64| {
        Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * e as f64 / n as f64,
        )
    };
    // Fourier vertex basis |k̂⟩ = (1/√n) Σ_j ω^{jk} |j⟩, sector α preserved.
    let mut u = zeros(dim, dim);
    for k in 0..n {
        for alpha in 0..2 {
            let ak = (a * k) % n;
            for j_out in 0..n {
                for j_in in 0..n {
                    let coeff = omega((j_out * ak) as i64)
                        * omega(-((j_in * k) as i64))
                        * omega((b * k) as i64)
                        / n as f64;
                    u[(2 * j_out + alpha, 2 * j_in + alpha)] += coeff;
                }
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::character_table;
    use crate::isotypic::{build_code, decompose};
    use crate::reps::dihedral_vertex_edge_rep;
    use crate::stabilizer::{build_stabilizer_code, StabilizerSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn repetition_code() -> (Arc<UnitaryRep>, SymmetryCode) {
        let spec = StabilizerSpec::new(vec![2, 2, 2], &["Z0 Z1", "Z1 Z2"]).unwrap();
        build_stabilizer_code(&spec).unwrap()
    }

    #[test]
    fn kl_identity_only() {
        let (_, code) = repetition_code();
        let report = kl_check(&code, &[identity(8)], KL_TOL).unwrap();
        assert!(report.pass);
        match &report.pairs[0].status {
            KlStatus::Scalar(c) => assert!((c - C_ONE).norm() < 1e-10),
            _ => panic!("expected scalar"),
        }
    }

    #[test]
    fn kl_repetition_x_errors_pass() {
        let (_, code) = repetition_code();
        let gens = pauli_generators(3, false);
        let errors: Vec<CMat> = std::iter::once(identity(8))
            .chain(
                gens.iter()
                    .filter(|g| g.name.starts_with('X'))
                    .map(|g| g.matrix.clone()),
            )
            .collect();
        let report = kl_check(&code, &errors, KL_TOL).unwrap();
        assert!(report.pass);
        // cross terms scalar zero
        for p in &report.pairs {
            if p.left != p.right {
                match &p.status {
                    KlStatus::Scalar(c) => assert!(c.norm() < 1e-10),
                    _ => panic!("cross term not scalar"),
                }
            }
        }
    }

    #[test]
    fn kl_repetition_z_error_violates() {
        let (_, code) = repetition_code();
        let z0 = pauli_generators(3, false)
            .into_iter()
            .find(|g| g.name == "Z0")
            .unwrap()
            .matrix;
        let report = kl_check(&code, &[identity(8), z0], KL_TOL).unwrap();
        assert!(!report.pass);
        assert!(!report.violations().is_empty());
    }

    #[test]
    fn kl_empty_set_rejected() {
        let (_, code) = repetition_code();
        assert!(matches!(
            kl_check(&code, &[], KL_TOL),
            Err(VerifyError::EmptyErrorSet)
        ));
    }

    #[test]
    fn g_weight_examples() {
        let gens = pauli_generators(2, true);
        match g_weight(&identity(4), &gens, 3) {
            WeightResult::Found(w) => assert_eq!(w, 0),
            _ => panic!(),
        }
        let x0x1 = gens
            .iter()
            .find(|g| g.name == "X0")
            .unwrap()
            .matrix
            .dot(&gens.iter().find(|g| g.name == "X1").unwrap().matrix);
        match g_weight(&x0x1, &gens, 3) {
            WeightResult::Found(w) => assert_eq!(w, 2),
            _ => panic!(),
        }
    }

    #[test]
    fn g_weight_logical_x_bar_is_three() {
        let gens = pauli_generators(3, false);
        let xbar = gens
            .iter()
            .filter(|g| g.name.starts_with('X'))
            .fold(identity(8), |acc, g| g.matrix.dot(&acc));
        match g_weight(&xbar, &gens, 4) {
            WeightResult::Found(w) => assert_eq!(w, 3),
            _ => panic!(),
        }
    }

    #[test]
    fn g_distance_repetition_full_pauli_is_one() {
        let (_, code) = repetition_code();
        let gens = pauli_generators(3, true);
        let res = g_distance(&code, &gens, 2, PhaseMode::Exact).unwrap();
        let (d, op) = res.expect("distance found");
        assert_eq!(d, 1);
        // a weight-1 nontrivial logical exists (a Z error)
        assert!(op.word[0].starts_with('Z'));
    }

    #[test]
    fn g_distance_x_only_is_three() {
        let (_, code) = repetition_code();
        let gens: Vec<NamedOperator> = pauli_generators(3, false)
            .into_iter()
            .filter(|g| g.name.starts_with('X'))
            .collect();
        let res = g_distance(&code, &gens, 3, PhaseMode::Exact).unwrap();
        let (d, op) = res.expect("distance found");
        assert_eq!(d, 3);
        assert_eq!(op.word.len(), 3);
        // and the lower-bound report when capped below
        let res = g_distance(&code, &gens, 2, PhaseMode::Exact).unwrap();
        assert_eq!(res.unwrap_err(), 2);
    }

    #[test]
    fn trivial_code_distance_one() {
        // trivial group on one qubit: Sym = everything, any non-element of
        // W(G) = {I} that normalizes gives distance 1.
        let g = Arc::new(crate::groups::make_cyclic_product(&[2]).unwrap());
        let z = crate::stabilizer::sigma(2, 0, 1);
        let rep = Arc::new(
            crate::reps::stabilizer_rep(
                &g,
                &[linalg::op_on_site(&z, 0, &[2, 2])],
                &[2],
            )
            .unwrap(),
        );
        let code = build_code(&rep).unwrap();
        let gens = pauli_generators(2, false);
        let (d, _) = g_distance(&code, &gens, 2, PhaseMode::Exact)
            .unwrap()
            .expect("found");
        assert_eq!(d, 1);
    }

    #[test]
    fn normalizer_contains_group_image() {
        let (rep, _) = repetition_code();
        for m in &rep.matrices {
            assert!(normalizer_membership(m, &rep, PhaseMode::Exact).unwrap());
        }
    }

    #[test]
    fn centralizer_iff_commutes() {
        let (rep, _) = repetition_code();
        // Z0 commutes with the Z-type image
        let z0 = pauli_generators(3, false)
            .into_iter()
            .find(|g| g.name == "Z0")
            .unwrap()
            .matrix;
        assert!(centralizer_membership(&z0, &rep).unwrap());
        let x0 = pauli_generators(3, false)
            .into_iter()
            .find(|g| g.name == "X0")
            .unwrap()
            .matrix;
        assert!(!centralizer_membership(&x0, &rep).unwrap());
    }

    #[test]
    fn x_words_phase_sensitive_normalizer() {
        let (rep, _) = repetition_code();
        let gens = pauli_generators(3, false);
        let x0 = &gens.iter().find(|g| g.name == "X0").unwrap().matrix;
        // X0 flips the sign of Z0Z1: not in the normalizer under exact match,
        // but tolerated up to phase.
        assert!(!normalizer_membership(x0, &rep, PhaseMode::Exact).unwrap());
        assert!(normalizer_membership(x0, &rep, PhaseMode::UpToPhase).unwrap());
        let xbar = gens
            .iter()
            .filter(|g| g.name.starts_with('X'))
            .fold(identity(8), |acc, g| g.matrix.dot(&acc));
        assert!(normalizer_membership(&xbar, &rep, PhaseMode::Exact).unwrap());
    }

    #[test]
    fn dihedral_u_ab_normalizes_and_fixes_triv() {
        let n = 5;
        let rep = Arc::new(dihedral_vertex_edge_rep(n).unwrap());
        let chars = character_table(&rep.group).unwrap();
        let decomp = decompose(&rep, &chars).unwrap();
        for (a, b) in [(2usize, 3usize), (1, 1), (4, 0)] {
            let u = dihedral_u_ab(n, a, b);
            assert!(linalg::is_unitary(&u, 1e-9));
            assert!(normalizer_membership(&u, &rep, PhaseMode::Exact).unwrap());
            let perm = conjugation_irrep_permutation(&u, &decomp).unwrap();
            assert_eq!(perm[0], 0, "trivial label must be fixed");
        }
    }

    #[test]
    fn logical_action_of_group_elements_is_identity() {
        let rep = Arc::new(crate::reps::s3_faithful4_rep().unwrap());
        let code = build_code(&rep).unwrap();
        for m in &rep.matrices {
            let act = logical_action(m, &code).unwrap();
            assert!(max_abs_diff(&act, &identity(2)) < 1e-9);
        }
    }

    #[test]
    fn published_logical_paulis_act_correctly() {
        let rep = Arc::new(crate::reps::s3_faithful4_rep().unwrap());
        let code = build_code(&rep).unwrap();
        let xl = faithful4_logical_x();
        let zl = faithful4_logical_z();
        let ax = logical_action(&xl, &code).unwrap();
        let az = logical_action(&zl, &code).unwrap();
        let x = crate::stabilizer::sigma(2, 1, 0);
        let z = crate::stabilizer::sigma(2, 0, 1);
        assert!(max_abs_diff(&ax, &x) < 1e-9);
        assert!(max_abs_diff(&az, &z) < 1e-9);
    }

    #[test]
    fn logical_action_coset_invariance() {
        let rep = Arc::new(crate::reps::s3_faithful4_rep().unwrap());
        let code = build_code(&rep).unwrap();
        let xl = faithful4_logical_x();
        let base = logical_action(&xl, &code).unwrap();
        for m in &rep.matrices {
            let act = logical_action(&xl.dot(m), &code).unwrap();
            assert!(max_abs_diff(&act, &base) < 1e-9);
        }
    }

    #[test]
    fn span_single_qubit_paulis() {
        let x = crate::stabilizer::sigma(2, 1, 0);
        let z = crate::stabilizer::sigma(2, 0, 1);
        assert_eq!(algebra_span_dimension(&[x, z]).unwrap(), 4);
    }

    #[test]
    fn span_group_algebra_alone_is_proper() {
        let rep = dihedral_vertex_edge_rep(4).unwrap();
        let dim = algebra_span_dimension(&rep.matrices).unwrap();
        assert_eq!(dim, 6); // sum of d_λ² over irreps appearing in W
        assert!(dim < 64);
    }

    #[test]
    fn span_full_set_reaches_everything() {
        let rep = dihedral_vertex_edge_rep(4).unwrap();
        let mut gens = rep.matrices.clone();
        let x = crate::stabilizer::sigma(2, 1, 0);
        let z = crate::stabilizer::sigma(2, 0, 1);
        gens.push(linalg::op_on_site(&x, 0, &[2, 4]));
        gens.push(linalg::op_on_site(&z, 0, &[2, 4]));
        let mut d = zeros(8, 8);
        for j in 0..4 {
            let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 5.0);
            d[(2 * j, 2 * j)] = phase;
            d[(2 * j + 1, 2 * j + 1)] = phase;
        }
        gens.push(d);
        gens.push(identity(8).mapv(|v| v * Complex64::new(0.0, 1.0)));
        assert_eq!(algebra_span_dimension(&gens).unwrap(), 64);
    }

    #[test]
    fn span_monotone_under_generators() {
        let x = crate::stabilizer::sigma(2, 1, 0);
        let z = crate::stabilizer::sigma(2, 0, 1);
        let dx = algebra_span_dimension(std::slice::from_ref(&x)).unwrap();
        let dxz = algebra_span_dimension(&[x, z]).unwrap();
        assert!(dx <= dxz);
        assert_eq!(dxz, 4);
    }

    #[test]
    fn cnot_all_branches_abstract() {
        let qubit = LogicalQubit::bare();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let amps = crate::linalg::random_state(&mut rng, 4);
            let input = [amps[0], amps[1], amps[2], amps[3]];
            for a in [1i8, -1] {
                for b in [1i8, -1] {
                    for c in [1i8, -1] {
                        match cnot_protocol(&qubit, &input, (a, b, c)) {
                            Ok(out) => assert!(
                                out.fidelity >= 1.0 - 1e-9,
                                "branch ({a},{b},{c}) fidelity {}",
                                out.fidelity
                            ),
                            Err(VerifyError::BranchUnreachable { .. }) => {}
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cnot_truth_table_and_corrections() {
        let qubit = LogicalQubit::bare();
        // |10> must map to |11> on every reachable branch
        let input = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            C_ONE,
            Complex64::new(0.0, 0.0),
        ];
        for a in [1i8, -1] {
            for b in [1i8, -1] {
                for c in [1i8, -1] {
                    if let Ok(out) = cnot_protocol(&qubit, &input, (a, b, c)) {
                        assert!(out.fidelity >= 1.0 - 1e-9);
                    }
                }
            }
        }
        assert_eq!(cnot_correction(1, 1, 1), (false, false));
        assert_eq!(cnot_correction(1, -1, -1), (true, true));
        assert_eq!(cnot_correction(-1, 1, -1), (false, false));
    }

    #[test]
    fn cnot_physical_mode_with_published_logicals() {
        let rep = Arc::new(crate::reps::s3_faithful4_rep().unwrap());
        let code = build_code(&rep).unwrap();
        let qubit =
            LogicalQubit::physical(&code, faithful4_logical_x(), faithful4_logical_z())
                .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let amps = crate::linalg::random_state(&mut rng, 4);
            let input = [amps[0], amps[1], amps[2], amps[3]];
            for a in [1i8, -1] {
                for b in [1i8, -1] {
                    for c in [1i8, -1] {
                        if let Ok(out) = cnot_protocol(&qubit, &input, (a, b, c)) {
                            assert!(
                                out.fidelity >= 1.0 - 1e-9,
                                "physical branch ({a},{b},{c}) fidelity {}",
                                out.fidelity
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn correctable_demo_matches_published_states() {
        // the corrupted codewords for (1,0) and (0,1)
        let u = faithful4_demo_error();
        let rep = Arc::new(crate::reps::s3_faithful4_rep().unwrap());
        let code = build_code(&rep).unwrap();
        let c0 = u.dot(code.codeword(0));
        let mut expect = CVec::zeros(4);
        expect[2] = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        expect[1] = Complex64::new(-1.0 / 2f64.sqrt(), 0.0);
        assert!(crate::linalg::vec_max_abs_diff(&c0, &expect) < 1e-12);
        let c1 = u.dot(code.codeword(1));
        let mut expect = CVec::zeros(4);
        expect[1] = Complex64::new(1.0 / 6f64.sqrt(), 0.0);
        expect[2] = Complex64::new(1.0 / 6f64.sqrt(), 0.0);
        expect[3] = Complex64::new(-2.0 / 6f64.sqrt(), 0.0);
        assert!(crate::linalg::vec_max_abs_diff(&c1, &expect) < 1e-12);
    }

    #[test]
    fn correctable_demo_recovery() {
        for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.6, 0.8)] {
            let (p_std, fid) =
                correctable_demo_ive(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
                    .unwrap();
            assert!((p_std - 1.0).abs() < 1e-9);
            assert!((fid - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn generalized_bound_repetition_x_only() {
        let (_, code) = repetition_code();
        let gens: Vec<NamedOperator> = pauli_generators(3, false)
            .into_iter()
            .filter(|g| g.name.starts_with('X'))
            .collect();
        let report =
            generalized_kl_bound_check(&code, &gens, 1, 3, PhaseMode::Exact).unwrap();
        assert!(report.pass);
        // t = 0 trivially passes
        let report =
            generalized_kl_bound_check(&code, &gens, 0, 3, PhaseMode::Exact).unwrap();
        assert!(report.pass);
        // 2t >= d_G refused
        assert!(matches!(
            generalized_kl_bound_check(&code, &gens, 2, 3, PhaseMode::Exact),
            Err(VerifyError::Precondition(_))
        ));
    }

    #[test]
    fn same_coset_same_syndrome_distribution() {
        // label-fixing normalizer elements leave every syndrome distribution
        // unchanged: filter by conjugation permutation == identity.
        let (rep, _) = repetition_code();
        let chars = character_table(&rep.group).unwrap();
        let decomp = decompose(&rep, &chars).unwrap();
        let gens = pauli_generators(3, true);
        let words = enumerate_words(&gens, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let st = crate::extract::Statevector::new(
            crate::linalg::random_state(&mut rng, 8),
            vec![2, 2, 2],
        )
        .unwrap();
        let mut tested = 0;
        for w in words.iter().filter(|w| w.weight > 0) {
            if !normalizer_membership(&w.matrix, &rep, PhaseMode::Exact).unwrap() {
                continue;
            }
            let perm = conjugation_irrep_permutation(&w.matrix, &decomp).unwrap();
            if perm.iter().enumerate().any(|(i, &p)| i != p) {
                continue;
            }
            let base = crate::extract::syndrome_direct(&decomp, &st).unwrap();
            let shifted = st.apply(&w.matrix).unwrap();
            let after = crate::extract::syndrome_direct(&decomp, &shifted).unwrap();
            assert!(crate::extract::report_distance(&base, &after) < 1e-9);
            tested += 1;
        }
        assert!(tested > 0, "no label-fixing elements exercised");
    }
}
