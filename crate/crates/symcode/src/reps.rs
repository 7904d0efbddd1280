//! Unitary representations stored as dense matrices, one per group element.
//!
//! Constructors validate the full homomorphism table (all |G|² pairs) and
//! unitarity of every matrix before returning, and reject rather than repair.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::groups::{FamilyTag, FiniteGroup, GroupError};
use crate::linalg::{
    self, identity, kron, matrix_power, max_abs_diff, zeros, CMat, C_ONE,
};

/// Validation tolerance for unitarity and the homomorphism check.
pub const REP_TOL: f64 = 1e-10;
/// Default cap on the Hilbert-space dimension of tensor-factor reps.
pub const STATE_CAP: usize = 1 << 14;
/// Memory guard: |G| * dim^2 complex entries must stay below this.
pub const REP_STORAGE_CAP: usize = 1 << 26;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("dimension {dim} exceeds cap {cap}")]
    SizeCap { dim: usize, cap: usize },
    #[error("expected group family {expected}, got {got}")]
    FamilyMismatch { expected: String, got: String },
    #[error("matrix for element {element} is not unitary (defect {defect:.3e})")]
    NotUnitary { element: usize, defect: f64 },
    #[error("homomorphism violated at pair ({x}, {y}) (defect {defect:.3e})")]
    NotHomomorphism { x: usize, y: usize, defect: f64 },
    #[error("action is not a homomorphism at pair ({x}, {y})")]
    ActionNotHomomorphism { x: usize, y: usize },
    #[error("identity element is not mapped to the identity matrix")]
    IdentityMismatch,
    #[error("stabilizer generators {i} and {j} do not commute")]
    NonCommuting { i: usize, j: usize },
    #[error("generator {i} does not have order {order}")]
    WrongOrder { i: usize, order: usize },
    #[error("generator {i} is a scalar multiple of the identity")]
    ScalarGenerator { i: usize },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
}

/// A validated unitary representation of a finite group.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    pub group: Arc<FiniteGroup>,
    pub dim: usize,
    pub matrices: Vec<CMat>,
    /// Local dimensions when the space is a qudit register (site 0 = least
    /// significant digit of the basis index).
    pub qudit_shape: Option<Vec<usize>>,
    pub label: String,
}

impl UnitaryRep {
    /// Validates unitarity, W(e) = I, and the full multiplication table.
    pub fn new(
        group: Arc<FiniteGroup>,
        matrices: Vec<CMat>,
        qudit_shape: Option<Vec<usize>>,
        label: impl Into<String>,
    ) -> Result<Self, RepError> {
        let order = group.order();
        assert_eq!(matrices.len(), order, "one matrix per element");
        let dim = matrices[0].nrows();
        if order * dim * dim > REP_STORAGE_CAP {
            return Err(RepError::SizeCap {
                dim,
                cap: REP_STORAGE_CAP / order,
            });
        }
        for (e, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(RepError::DimMismatch(format!(
                    "matrix {e} has shape {:?}",
                    m.dim()
                )));
            }
            let defect = linalg::unitarity_defect(m);
            if defect > REP_TOL {
                return Err(RepError::NotUnitary { element: e, defect });
            }
        }
        if max_abs_diff(&matrices[group.identity()], &identity(dim)) > REP_TOL {
            return Err(RepError::IdentityMismatch);
        }
        for x in 0..order {
            for y in 0..order {
                let prod = matrices[x].dot(&matrices[y]);
                let defect = max_abs_diff(&prod, &matrices[group.mul(x, y)]);
                if defect > REP_TOL {
                    return Err(RepError::NotHomomorphism { x, y, defect });
                }
            }
        }
        if let Some(shape) = &qudit_shape {
            let prod: usize = shape.iter().product();
            if prod != dim {
                return Err(RepError::DimMismatch(format!(
                    "qudit shape {shape:?} does not multiply to {dim}"
                )));
            }
        }
        Ok(UnitaryRep {
            group,
            dim,
            matrices,
            qudit_shape,
            label: label.into(),
        })
    }

    pub fn matrix(&self, element: usize) -> &CMat {
        &self.matrices[element]
    }

    /// Attaches a qudit-register interpretation to the Hilbert space.
    pub fn with_qudit_shape(mut self, shape: Vec<usize>) -> Result<Self, RepError> {
        let prod: usize = shape.iter().product();
        if prod != self.dim {
            return Err(RepError::DimMismatch(format!(
                "qudit shape {shape:?} does not multiply to {}",
                self.dim
            )));
        }
        self.qudit_shape = Some(shape);
        Ok(self)
    }

    /// Character of the representation on each element.
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices
            .iter()
            .map(|m| m.diag().iter().sum())
            .collect()
    }
}

/// A group action on a finite set of points, one permutation per element.
#[derive(Debug, Clone)]
pub struct PermAction {
    pub group: Arc<FiniteGroup>,
    pub points: usize,
    /// perms[g][p] = image of point p under element g.
    pub perms: Vec<Vec<usize>>,
}

impl PermAction {
    pub fn new(
        group: Arc<FiniteGroup>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self, RepError> {
        let order = group.order();
        assert_eq!(perms.len(), order);
        let points = perms[0].len();
        for p in &perms {
            if p.len() != points {
                return Err(RepError::DimMismatch("ragged action".into()));
            }
            let mut seen = vec![false; points];
            for &q in p {
                if q >= points || seen[q] {
                    return Err(RepError::DimMismatch(
                        "action image is not a permutation".into(),
                    ));
                }
                seen[q] = true;
            }
        }
        for x in 0..order {
            for y in 0..order {
                let xy = group.mul(x, y);
                for p in 0..points {
                    if perms[x][perms[y][p]] != perms[xy][p] {
                        return Err(RepError::ActionNotHomomorphism { x, y });
                    }
                }
            }
        }
        Ok(PermAction {
            group,
            points,
            perms,
        })
    }

    /// Orbits of the action, each sorted, in order of smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.points];
        let mut orbits = Vec::new();
        for start in 0..self.points {
            if assigned[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut frontier = vec![start];
            assigned[start] = true;
            while let Some(p) = frontier.pop() {
                orbit.push(p);
                for perm in &self.perms {
                    let q = perm[p];
                    if !assigned[q] {
                        assigned[q] = true;
                        frontier.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }
}

fn family_name(f: &FamilyTag) -> String {
    match f {
        FamilyTag::CyclicProduct(d) => format!("cyclic_product{d:?}"),
        FamilyTag::Symmetric(n) => format!("symmetric({n})"),
        FamilyTag::Dihedral(n) => format!("dihedral({n})"),
        FamilyTag::DirectProduct(_, _) => "direct_product".to_string(),
        FamilyTag::Custom => "custom".to_string(),
    }
}

/// Tensor-factor permutation representation of S_n on n qudits:
/// W(σ)|i_0 … i_{n-1}⟩ has digit d at site σ(s) when the input has digit d at
/// site s, i.e. output digit at site t is the input digit at site σ^{-1}(t).
pub fn tensor_permutation_rep(
    g: &Arc<FiniteGroup>,
    local_dim: usize,
) -> Result<UnitaryRep, RepError> {
    let FamilyTag::Symmetric(n) = *g.family() else {
        return Err(RepError::FamilyMismatch {
            expected: "symmetric(n)".into(),
            got: family_name(g.family()),
        });
    };
    let dim = local_dim.checked_pow(n as u32).filter(|&d| d <= STATE_CAP).ok_or(
        RepError::SizeCap {
            dim: usize::MAX,
            cap: STATE_CAP,
        },
    )?;
    let perms = crate::groups::symmetric_permutations(n);
    let mut matrices = Vec::with_capacity(g.order());
    for p in &perms {
        let mut m = zeros(dim, dim);
        let mut pinv = vec![0usize; n];
        for (i, &pi) in p.iter().enumerate() {
            pinv[pi] = i;
        }
        for idx in 0..dim {
            let mut digits = vec![0usize; n];
            let mut rem = idx;
            for d in digits.iter_mut() {
                *d = rem % local_dim;
                rem /= local_dim;
            }
            let mut out = 0usize;
            let mut stride = 1usize;
            for t in 0..n {
                out += digits[pinv[t]] * stride;
                stride *= local_dim;
            }
            m[(out, idx)] = C_ONE;
        }
        matrices.push(m);
    }
    UnitaryRep::new(
        Arc::clone(g),
        matrices,
        Some(vec![local_dim; n]),
        format!("tensor_perm(S{n}, d={local_dim})"),
    )
}

/// Representation induced by a permutation action: W(g) e_a = e_{g·a}.
pub fn basis_permutation_rep(action: &PermAction) -> Result<UnitaryRep, RepError> {
    let dim = action.points;
    let mut matrices = Vec::with_capacity(action.group.order());
    for perm in &action.perms {
        let mut m = zeros(dim, dim);
        for (src, &dst) in perm.iter().enumerate() {
            m[(dst, src)] = C_ONE;
        }
        matrices.push(m);
    }
    UnitaryRep::new(
        Arc::clone(&action.group),
        matrices,
        None,
        format!("basis_perm({} points)", dim),
    )
}

/// Natural D_n action on Z_n: r sends i to i+1, f sends i to -i (mod n).
pub fn dihedral_vertex_action(g: &Arc<FiniteGroup>) -> Result<PermAction, RepError> {
    let FamilyTag::Dihedral(n) = *g.family() else {
        return Err(RepError::FamilyMismatch {
            expected: "dihedral(n)".into(),
            got: family_name(g.family()),
        });
    };
    let perms = (0..g.order())
        .map(|idx| {
            let (k, a) = crate::groups::dihedral_exponents(idx);
            (0..n)
                .map(|i| {
                    let shifted = (i + k) % n;
                    if a == 1 {
                        (n - shifted) % n
                    } else {
                        shifted
                    }
                })
                .collect()
        })
        .collect();
    PermAction::new(Arc::clone(g), perms)
}

/// Two-orbit dihedral representation on C^{2n}, basis |i⟩|j⟩ with vertex or
/// edge index i and sector flag j; basis index = 2i + j.
pub fn dihedral_vertex_edge_rep(n: usize) -> Result<UnitaryRep, RepError> {
    let g = Arc::new(crate::groups::make_dihedral(n)?);
    let action = dihedral_vertex_action(&g)?;
    let dim = 2 * n;
    if dim > STATE_CAP {
        return Err(RepError::SizeCap {
            dim,
            cap: STATE_CAP,
        });
    }
    let mut matrices = Vec::with_capacity(g.order());
    for perm in &action.perms {
        let mut m = zeros(dim, dim);
        for i in 0..n {
            for j in 0..2 {
                m[(2 * perm[i] + j, 2 * i + j)] = C_ONE;
            }
        }
        matrices.push(m);
    }
    UnitaryRep::new(
        Arc::clone(&g),
        matrices,
        Some(vec![2, n]),
        format!("dihedral_vertex_edge(D{n})"),
    )
}

/// The faithful 4-dimensional representation of S_3 on two qubits generated
/// by W((0 1)) = CNOT (control qubit 1, target qubit 0) and
/// W((0 1 2)) = CNOT · SWAP. Every image is a permutation matrix fixing |00⟩.
pub fn s3_faithful4_rep() -> Result<UnitaryRep, RepError> {
    let g = Arc::new(crate::groups::make_symmetric(3)?);
    let perms = crate::groups::symmetric_permutations(3);
    let idx_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let tau = idx_of(&[1, 0, 2]);
    let eta = idx_of(&[1, 2, 0]);

    let mut cnot = zeros(4, 4);
    // control = qubit 1 (bit value 2), target = qubit 0
    for idx in 0..4 {
        let out = if idx & 2 != 0 { idx ^ 1 } else { idx };
        cnot[(out, idx)] = C_ONE;
    }
    let mut swap = zeros(4, 4);
    for idx in 0..4 {
        let out = ((idx & 1) << 1) | ((idx >> 1) & 1);
        swap[(out, idx)] = C_ONE;
    }
    let w_tau = cnot.clone();
    let w_eta = cnot.dot(&swap);

    // extend to all six elements along words in the generators
    let mut matrices: Vec<Option<CMat>> = vec![None; 6];
    matrices[g.identity()] = Some(identity(4));
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for (gen, mat) in [(tau, &w_tau), (eta, &w_eta)] {
            let y = g.mul(gen, x);
            if matrices[y].is_none() {
                matrices[y] = Some(mat.dot(matrices[x].as_ref().unwrap()));
                frontier.push(y);
            }
        }
    }
    let matrices: Vec<CMat> = matrices.into_iter().map(Option::unwrap).collect();
    UnitaryRep::new(
        Arc::clone(&g),
        matrices,
        Some(vec![2, 2]),
        "s3_faithful4".to_string(),
    )
}

fn is_scalar_multiple_of_identity(m: &CMat, tol: f64) -> bool {
    let n = m.nrows();
    let tr: Complex64 = m.diag().iter().sum();
    let scaled = identity(n).mapv(|z| z * (tr / n as f64));
    max_abs_diff(m, &scaled) <= tol
}

/// Representation of a cyclic product group generated by commuting unitaries:
/// W(k_1, …, k_n) = S_1^{k_1} ⋯ S_n^{k_n}.
pub fn stabilizer_rep(
    g: &Arc<FiniteGroup>,
    generators: &[CMat],
    orders: &[usize],
) -> Result<UnitaryRep, RepError> {
    let FamilyTag::CyclicProduct(dims) = g.family().clone() else {
        return Err(RepError::FamilyMismatch {
            expected: "cyclic_product".into(),
            got: family_name(g.family()),
        });
    };
    if dims.len() != generators.len() || orders.len() != generators.len() {
        return Err(RepError::DimMismatch(
            "one generator and order per cyclic factor".into(),
        ));
    }
    if dims != orders {
        return Err(RepError::DimMismatch(
            "generator orders must match the cyclic factors".into(),
        ));
    }
    let dim = generators[0].nrows();
    for (i, s) in generators.iter().enumerate() {
        if s.nrows() != dim || s.ncols() != dim {
            return Err(RepError::DimMismatch(format!("generator {i} shape")));
        }
        if linalg::unitarity_defect(s) > REP_TOL {
            return Err(RepError::NotUnitary {
                element: i,
                defect: linalg::unitarity_defect(s),
            });
        }
        if is_scalar_multiple_of_identity(s, REP_TOL) {
            return Err(RepError::ScalarGenerator { i });
        }
        if max_abs_diff(&matrix_power(s, orders[i]), &identity(dim)) > REP_TOL {
            return Err(RepError::WrongOrder {
                i,
                order: orders[i],
            });
        }
    }
    for i in 0..generators.len() {
        for j in (i + 1)..generators.len() {
            let ab = generators[i].dot(&generators[j]);
            let ba = generators[j].dot(&generators[i]);
            if max_abs_diff(&ab, &ba) > REP_TOL {
                return Err(RepError::NonCommuting { i, j });
            }
        }
    }
    let mut matrices = Vec::with_capacity(g.order());
    for idx in 0..g.order() {
        let mut rem = idx;
        let mut m = identity(dim);
        for (s, &d) in generators.iter().zip(&dims) {
            let k = rem % d;
            rem /= d;
            if k > 0 {
                m = matrix_power(s, k).dot(&m);
            }
        }
        matrices.push(m);
    }
    UnitaryRep::new(Arc::clone(g), matrices, None, "stabilizer_rep".to_string())
}

/// Block-diagonal direct sum of two representations of the same group.
pub fn rep_direct_sum(a: &UnitaryRep, b: &UnitaryRep) -> Result<UnitaryRep, RepError> {
    if a.group.order() != b.group.order()
        || (0..a.group.order()).any(|x| {
            (0..a.group.order()).any(|y| a.group.mul(x, y) != b.group.mul(x, y))
        })
    {
        return Err(RepError::DimMismatch(
            "direct sum requires the same group".into(),
        ));
    }
    let dim = a.dim + b.dim;
    let matrices = a
        .matrices
        .iter()
        .zip(&b.matrices)
        .map(|(ma, mb)| {
            let mut m = zeros(dim, dim);
            for i in 0..a.dim {
                for j in 0..a.dim {
                    m[(i, j)] = ma[(i, j)];
                }
            }
            for i in 0..b.dim {
                for j in 0..b.dim {
                    m[(a.dim + i, a.dim + j)] = mb[(i, j)];
                }
            }
            m
        })
        .collect();
    UnitaryRep::new(
        Arc::clone(&a.group),
        matrices,
        None,
        format!("{} (+) {}", a.label, b.label),
    )
}

/// Tensor product representation of the direct product of the factor groups.
/// Element (g_a, g_b) sits at index g_a·|B| + g_b and maps to W_a(g_a) ⊗ W_b(g_b).
pub fn rep_tensor(a: &UnitaryRep, b: &UnitaryRep) -> Result<UnitaryRep, RepError> {
    let pg = Arc::new(crate::groups::direct_product(&a.group, &b.group)?);
    let nb = b.group.order();
    let matrices = (0..pg.order())
        .map(|idx| kron(&a.matrices[idx / nb], &b.matrices[idx % nb]))
        .collect();
    let shape = match (&a.qudit_shape, &b.qudit_shape) {
        (Some(sa), Some(sb)) => {
            let mut s = sb.clone();
            s.extend_from_slice(sa);
            Some(s)
        }
        _ => None,
    };
    UnitaryRep::new(
        pg,
        matrices,
        shape,
        format!("{} (x) {}", a.label, b.label),
    )
}

/// The trivial one-dimensional representation of any group.
pub fn trivial_rep(g: &Arc<FiniteGroup>) -> UnitaryRep {
    UnitaryRep::new(
        Arc::clone(g),
        vec![identity(1); g.order()],
        None,
        "trivial".to_string(),
    )
    .expect("trivial rep always valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_dihedral, make_symmetric, symmetric_permutations};
    use crate::linalg::dagger;
    use crate::linalg::op_on_site;
    use ndarray::array;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(make_symmetric(3).unwrap())
    }

    #[test]
    fn tensor_perm_transposition_is_swap() {
        let rep = tensor_permutation_rep(&s3(), 2).unwrap();
        let perms = symmetric_permutations(3);
        let t01 = perms.iter().position(|p| p == &[1, 0, 2]).unwrap();
        // swap of sites 0,1 tensored with identity on site 2
        let mut swap = zeros(4, 4);
        for idx in 0..4 {
            let out = ((idx & 1) << 1) | ((idx >> 1) & 1);
            swap[(out, idx)] = C_ONE;
        }
        let expect = kron(&identity(2), &swap);
        assert!(max_abs_diff(rep.matrix(t01), &expect) < 1e-12);
    }

    #[test]
    fn tensor_perm_character_counts_fixed_points() {
        let rep = tensor_permutation_rep(&s3(), 2).unwrap();
        let perms = symmetric_permutations(3);
        for (e, p) in perms.iter().enumerate() {
            let fixed = {
                let mut seen = vec![false; 3];
                let mut cycles = 0;
                for s in 0..3 {
                    if !seen[s] {
                        cycles += 1;
                        let mut j = s;
                        while !seen[j] {
                            seen[j] = true;
                            j = p[j];
                        }
                    }
                }
                2usize.pow(cycles as u32)
            };
            let tr = rep.character()[e];
            assert!((tr - Complex64::new(fixed as f64, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn s2_swap() {
        let g = Arc::new(make_symmetric(2).unwrap());
        let rep = tensor_permutation_rep(&g, 2).unwrap();
        let mut swap = zeros(4, 4);
        for idx in 0..4 {
            let out = ((idx & 1) << 1) | ((idx >> 1) & 1);
            swap[(out, idx)] = C_ONE;
        }
        assert!(max_abs_diff(rep.matrix(1), &swap) < 1e-12);
    }

    #[test]
    fn tensor_perm_commutes_with_collective_unitaries() {
        let rep = tensor_permutation_rep(&s3(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let u = crate::linalg::random_unitary(&mut rng, 2);
            let mut coll = identity(8);
            for site in 0..3 {
                coll = op_on_site(&u, site, &[2, 2, 2]).dot(&coll);
            }
            for m in &rep.matrices {
                let lhs = m.dot(&coll);
                let rhs = coll.dot(m);
                assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
            }
        }
    }

    #[test]
    fn basis_perm_trivial_action() {
        let g = s3();
        let perms = vec![vec![0usize]; 6];
        let action = PermAction::new(Arc::clone(&g), perms).unwrap();
        let rep = basis_permutation_rep(&action).unwrap();
        for m in &rep.matrices {
            assert!(max_abs_diff(m, &identity(1)) < 1e-12);
        }
    }

    #[test]
    fn s3_natural_action_character() {
        let g = s3();
        let perms = symmetric_permutations(3);
        let action = PermAction::new(Arc::clone(&g), perms.clone()).unwrap();
        let rep = basis_permutation_rep(&action).unwrap();
        for (e, p) in perms.iter().enumerate() {
            let fixed = (0..3).filter(|&i| p[i] == i).count();
            assert!(
                (rep.character()[e] - Complex64::new(fixed as f64, 0.0)).norm() < 1e-12
            );
        }
    }

    #[test]
    fn bad_action_rejected_with_pair() {
        let g = Arc::new(make_symmetric(2).unwrap());
        // maps both elements to the identity permutation on 2 points except
        // the non-identity one permutes: not a homomorphism since g*g = e.
        let perms = vec![vec![0, 1], vec![0, 1]];
        assert!(PermAction::new(Arc::clone(&g), perms).is_ok());
        let bad = vec![vec![1, 0], vec![0, 1]];
        let err = PermAction::new(g, bad).unwrap_err();
        assert!(matches!(err, RepError::ActionNotHomomorphism { .. }));
    }

    #[test]
    fn dihedral_rotation_is_double_cycle() {
        let rep = dihedral_vertex_edge_rep(4).unwrap();
        let r = rep.matrix(2);
        // r: |i,j> -> |i+1,j>, index 2i+j
        for i in 0..4 {
            for j in 0..2 {
                assert_eq!(r[(2 * ((i + 1) % 4) + j, 2 * i + j)], C_ONE);
            }
        }
    }

    #[test]
    fn dihedral_flip_reflects() {
        let rep = dihedral_vertex_edge_rep(3).unwrap();
        let f = rep.matrix(1);
        // f |1>|0> = |2>|0>  (indices 2 and 4)
        assert_eq!(f[(4, 2)], C_ONE);
    }

    #[test]
    fn dihedral_uniform_vertex_state_fixed() {
        let rep = dihedral_vertex_edge_rep(4).unwrap();
        let mut v = crate::linalg::CVec::zeros(8);
        for i in 0..4 {
            v[2 * i] = Complex64::new(0.5, 0.0);
        }
        for m in &rep.matrices {
            let w = m.dot(&v);
            assert!(crate::linalg::vec_max_abs_diff(&w, &v) < 1e-12);
        }
    }

    #[test]
    fn dihedral_rep_is_two_basis_perm_copies() {
        let n = 5;
        let rep = dihedral_vertex_edge_rep(n).unwrap();
        let action = dihedral_vertex_action(&rep.group).unwrap();
        let v = basis_permutation_rep(&action).unwrap();
        let sum = rep_direct_sum(&v, &v).unwrap();
        // interleaving permutation: vertex block i -> 2i, edge block i -> 2i+1
        let mut p = zeros(2 * n, 2 * n);
        for i in 0..n {
            p[(2 * i, i)] = C_ONE;
            p[(2 * i + 1, n + i)] = C_ONE;
        }
        for e in 0..rep.group.order() {
            let lhs = p.dot(sum.matrix(e)).dot(&dagger(&p));
            assert!(max_abs_diff(&lhs, rep.matrix(e)) < 1e-12);
        }
    }

    #[test]
    fn faithful4_fixes_first_basis_vector() {
        let rep = s3_faithful4_rep().unwrap();
        for m in &rep.matrices {
            assert!((m[(0, 0)] - C_ONE).norm() < 1e-12);
            for k in 1..4 {
                assert!(m[(0, k)].norm() < 1e-12);
                assert!(m[(k, 0)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn faithful4_character_values() {
        let rep = s3_faithful4_rep().unwrap();
        let mut chars: Vec<i64> = rep
            .character()
            .iter()
            .map(|c| c.re.round() as i64)
            .collect();
        chars.sort_unstable();
        assert_eq!(chars, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn faithful4_word_identity() {
        let rep = s3_faithful4_rep().unwrap();
        let g = &rep.group;
        let perms = symmetric_permutations(3);
        let tau = perms.iter().position(|p| p == &[1, 0, 2]).unwrap();
        let eta = perms.iter().position(|p| p == &[1, 2, 0]).unwrap();
        let lhs = rep.matrix(tau).dot(rep.matrix(eta)).dot(rep.matrix(tau));
        let word = g.mul(g.mul(tau, eta), tau);
        assert!(max_abs_diff(&lhs, rep.matrix(word)) < 1e-12);
    }

    #[test]
    fn stabilizer_rep_diagonal_example() {
        let g = Arc::new(crate::groups::make_cyclic_product(&[2, 2]).unwrap());
        let z = array![
            [C_ONE, linalg::C_ZERO],
            [linalg::C_ZERO, -C_ONE]
        ];
        let s1 = op_on_site(&z, 0, &[2, 2, 2]).dot(&op_on_site(&z, 1, &[2, 2, 2]));
        let s2 = op_on_site(&z, 1, &[2, 2, 2]).dot(&op_on_site(&z, 2, &[2, 2, 2]));
        let rep = stabilizer_rep(&g, &[s1, s2], &[2, 2]).unwrap();
        for m in &rep.matrices {
            for i in 0..8 {
                for j in 0..8 {
                    if i != j {
                        assert!(m[(i, j)].norm() < 1e-12);
                    } else {
                        assert!((m[(i, j)].norm() - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn stabilizer_rep_qutrit_clock() {
        let g = Arc::new(crate::groups::make_cyclic_product(&[3]).unwrap());
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let z3 = array![
            [C_ONE, linalg::C_ZERO, linalg::C_ZERO],
            [linalg::C_ZERO, w, linalg::C_ZERO],
            [linalg::C_ZERO, linalg::C_ZERO, w * w]
        ];
        let rep = stabilizer_rep(&g, &[z3], &[3]).unwrap();
        for k in 0..3 {
            for m in 0..3 {
                let expect = Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * (k * m) as f64 / 3.0,
                );
                assert!((rep.matrix(k)[(m, m)] - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn stabilizer_rep_rejects_noncommuting() {
        let g = Arc::new(crate::groups::make_cyclic_product(&[2, 2]).unwrap());
        let x = array![[linalg::C_ZERO, C_ONE], [C_ONE, linalg::C_ZERO]];
        let z = array![[C_ONE, linalg::C_ZERO], [linalg::C_ZERO, -C_ONE]];
        let err = stabilizer_rep(&g, &[x, z], &[2, 2]).unwrap_err();
        assert!(matches!(err, RepError::NonCommuting { i: 0, j: 1 }));
    }

    #[test]
    fn stabilizer_rep_rejects_scalar() {
        let g = Arc::new(crate::groups::make_cyclic_product(&[2]).unwrap());
        let minus_i2 = identity(2).mapv(|z| -z);
        let err = stabilizer_rep(&g, &[minus_i2], &[2]).unwrap_err();
        assert!(matches!(err, RepError::ScalarGenerator { i: 0 }));
    }

    #[test]
    fn direct_sum_of_trivials() {
        let g = s3();
        let t = trivial_rep(&g);
        let sum = rep_direct_sum(&t, &t).unwrap();
        for m in &sum.matrices {
            assert!(max_abs_diff(m, &identity(2)) < 1e-12);
        }
    }

    #[test]
    fn tensor_of_sign_reps() {
        let z2 = Arc::new(crate::groups::make_cyclic_product(&[2]).unwrap());
        let sign = UnitaryRep::new(
            Arc::clone(&z2),
            vec![identity(1), identity(1).mapv(|z| -z)],
            None,
            "sign",
        )
        .unwrap();
        let t = rep_tensor(&sign, &sign).unwrap();
        let chars: Vec<f64> = t.character().iter().map(|c| c.re).collect();
        assert_eq!(t.group.order(), 4);
        // element (a,b) at index a*2+b; character (-1)^a (-1)^b
        assert!((chars[0] - 1.0).abs() < 1e-12);
        assert!((chars[1] + 1.0).abs() < 1e-12);
        assert!((chars[2] + 1.0).abs() < 1e-12);
        assert!((chars[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn d3_tensor_perm_matches_published_generator_words() {
        // In the dihedral enumeration, W(f) = SWAP_{02}, W(r) = cyclic shift of
        // the three sites; fr etc. follow by homomorphism.
        let d3 = Arc::new(make_dihedral(3).unwrap());
        let map = crate::groups::find_isomorphism(&d3, &make_symmetric(3).unwrap());
        assert!(map.is_some());
    }
}
