//! Symmetric-subspace and isotypic projectors, code spaces, and the three
//! independent dimension formulas (trace, orbit counting, cycle index).

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::groups::{CharacterTable, GroupError};
use crate::linalg::{self, canonical_phase, identity, max_abs_diff, CMat, CVec};
use crate::reps::{PermAction, RepError, UnitaryRep};

/// Projector algebra tolerance (idempotence, orthogonality, completeness).
pub const PROJ_TOL: f64 = 1e-9;
/// Multiplicities aggregate |G| character terms; allow a looser integer snap.
pub const MULT_INT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum IsotypicError {
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("representation error: {0}")]
    Rep(#[from] RepError),
    #[error("multiplicity of {label} is {value}, not an integer within {tol}")]
    NonIntegerMultiplicity {
        label: String,
        value: f64,
        tol: f64,
    },
    #[error("code space is trivial (dimension 0)")]
    TrivialCode,
    #[error("internal consistency: {0}")]
    Inconsistent(String),
}

/// Per-irrep block of a decomposition.
#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    pub label: String,
    pub dim_irrep: usize,
    pub multiplicity: usize,
    pub projector: CMat,
}

#[derive(Debug, Clone)]
pub struct IsotypicDecomposition {
    pub rep: Arc<UnitaryRep>,
    pub components: Vec<IsotypicComponent>,
}

impl IsotypicDecomposition {
    pub fn component(&self, label: &str) -> Option<&IsotypicComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    /// Multiplicities keyed by label, in table order.
    pub fn multiplicities(&self) -> Vec<(String, usize)> {
        self.components
            .iter()
            .map(|c| (c.label.clone(), c.multiplicity))
            .collect()
    }

    /// The projector onto the trivial isotypic component.
    pub fn trivial_projector(&self) -> &CMat {
        &self.components[0].projector
    }
}

/// Π_G = (1/|G|) Σ_g W(g).
pub fn projector_symmetric(rep: &UnitaryRep) -> CMat {
    let mut acc = linalg::zeros(rep.dim, rep.dim);
    for m in &rep.matrices {
        acc = acc + m;
    }
    acc.mapv(|z| z / rep.group.order() as f64)
}

/// Full isotypic decomposition: Π_λ = (d_λ/|G|) Σ_g χ_λ(g⁻¹) W(g) with
/// multiplicities m_λ = ⟨χ_W, χ_λ⟩ snapped to integers.
pub fn decompose(
    rep: &Arc<UnitaryRep>,
    chars: &CharacterTable,
) -> Result<IsotypicDecomposition, IsotypicError> {
    let g = &rep.group;
    let order = g.order();
    let rep_char = rep.character();
    let mut components = Vec::with_capacity(chars.n_irreps());
    for row in 0..chars.n_irreps() {
        let d = chars.dims[row];
        let mut proj = linalg::zeros(rep.dim, rep.dim);
        for e in 0..order {
            let chi_inv = chars.value_on_element(g, row, g.inverse(e));
            proj = proj + rep.matrix(e).mapv(|z| z * chi_inv);
        }
        proj = proj.mapv(|z| z * (d as f64 / order as f64));

        let mut mult = Complex64::new(0.0, 0.0);
        for e in 0..order {
            mult += rep_char[e] * chars.value_on_element(g, row, e).conj();
        }
        mult /= order as f64;
        let m_round = mult.re.round();
        if (mult - Complex64::new(m_round, 0.0)).norm() > MULT_INT_TOL || m_round < 0.0 {
            return Err(IsotypicError::NonIntegerMultiplicity {
                label: chars.labels[row].clone(),
                value: mult.re,
                tol: MULT_INT_TOL,
            });
        }
        components.push(IsotypicComponent {
            label: chars.labels[row].clone(),
            dim_irrep: d,
            multiplicity: m_round as usize,
            projector: proj,
        });
    }
    let total: usize = components
        .iter()
        .map(|c| c.dim_irrep * c.multiplicity)
        .sum();
    if total != rep.dim {
        return Err(IsotypicError::Inconsistent(format!(
            "sum of m_λ·d_λ = {total} != dim {}",
            rep.dim
        )));
    }
    Ok(IsotypicDecomposition {
        rep: Arc::clone(rep),
        components,
    })
}

/// A symmetry code: the G-symmetric subspace of a representation.
#[derive(Debug, Clone)]
pub struct SymmetryCode {
    pub rep: Arc<UnitaryRep>,
    pub projector: CMat,
    /// Orthonormal, deterministically ordered basis of the code space.
    pub codespace_basis: Vec<CVec>,
    /// Number of logical qubits: floor(log2 of the code dimension).
    pub k: usize,
    /// Upper bound floor(log2 dim Sym) / log2(dim H).
    pub rate_bound: f64,
}

impl SymmetryCode {
    pub fn code_dim(&self) -> usize {
        self.codespace_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    /// Physical state encoding the logical basis state `i`.
    pub fn codeword(&self, i: usize) -> &CVec {
        &self.codespace_basis[i]
    }

    /// Encodes a logical amplitude vector into the physical space.
    pub fn encode(&self, logical: &[Complex64]) -> CVec {
        assert!(logical.len() <= self.code_dim());
        let mut v = CVec::zeros(self.dim());
        for (a, b) in logical.iter().zip(&self.codespace_basis) {
            v = v + b.mapv(|x| x * *a);
        }
        v
    }
}

/// Builds the code space of a representation.
///
/// The basis comes from Gram-Schmidt over the columns of Π_G taken in
/// computational-basis order, each vector rotated so its first nonzero
/// amplitude is real positive. That realizes the documented determinism and
/// yields the natural bases (Dicke states, uniform orbit superpositions). The
/// rank is cross-checked against round(tr Π_G).
pub fn build_code(rep: &Arc<UnitaryRep>) -> Result<SymmetryCode, IsotypicError> {
    let projector = projector_symmetric(rep);
    let trace: f64 = projector.diag().iter().map(|z| z.re).sum();
    let rank = trace.round() as usize;
    if (trace - rank as f64).abs() > 1e-6 {
        return Err(IsotypicError::Inconsistent(format!(
            "projector trace {trace} is not an integer"
        )));
    }
    if rank == 0 {
        return Err(IsotypicError::TrivialCode);
    }
    let mut basis: Vec<CVec> = Vec::with_capacity(rank);
    for col in 0..rep.dim {
        if basis.len() == rank {
            break;
        }
        let mut v: CVec = projector.column(col).to_owned();
        for b in &basis {
            let c = linalg::inner(b, &v);
            v = &v - &b.mapv(|x| x * c);
        }
        let nv = linalg::vec_norm(&v);
        if nv > 1e-6 {
            basis.push(canonical_phase(&v.mapv(|x| x / nv), 1e-9));
        }
    }
    if basis.len() != rank {
        return Err(IsotypicError::Inconsistent(format!(
            "projector column span has rank {} but trace says {rank}",
            basis.len()
        )));
    }
    let k = (rank as f64).log2().floor() as usize;
    let rate_bound = k as f64 / (rep.dim as f64).log2();
    Ok(SymmetryCode {
        rep: Arc::clone(rep),
        projector,
        codespace_basis: basis,
        k,
        rate_bound,
    })
}

/// dim Sym_G = round((1/|G|) Σ_g tr W(g)).
pub fn dim_sym_trace(rep: &UnitaryRep) -> usize {
    let s: Complex64 = rep.character().iter().sum();
    (s.re / rep.group.order() as f64).round() as usize
}

/// Burnside: the number of orbits of a permutation action.
pub fn dim_sym_burnside(action: &PermAction) -> usize {
    action.orbits().len()
}

/// Cycle-index evaluation Z_G(d, …, d) for a permutation subgroup acting on
/// qudits of local dimension d: the average of d^{#cycles(g)}.
pub fn dim_sym_cycle_index(perms: &[Vec<usize>], local_dim: usize) -> usize {
    let mut total = 0f64;
    for p in perms {
        let n = p.len();
        let mut seen = vec![false; n];
        let mut cycles = 0u32;
        for s in 0..n {
            if !seen[s] {
                cycles += 1;
                let mut j = s;
                while !seen[j] {
                    seen[j] = true;
                    j = p[j];
                }
            }
        }
        total += (local_dim as f64).powi(cycles as i32);
    }
    (total / perms.len() as f64).round() as usize
}

/// Checks the projector-algebra invariants of a decomposition; returns the
/// worst defect found (idempotence, hermiticity, pairwise orthogonality,
/// completeness).
pub fn projector_defect(decomp: &IsotypicDecomposition) -> f64 {
    let dim = decomp.rep.dim;
    let mut worst = 0f64;
    let mut sum = linalg::zeros(dim, dim);
    for c in &decomp.components {
        let p = &c.projector;
        worst = worst.max(max_abs_diff(&p.dot(p), p));
        worst = worst.max(max_abs_diff(&linalg::dagger(p), p));
        sum = sum + p;
    }
    worst = worst.max(max_abs_diff(&sum, &identity(dim)));
    for i in 0..decomp.components.len() {
        for j in (i + 1)..decomp.components.len() {
            let prod = decomp.components[i]
                .projector
                .dot(&decomp.components[j].projector);
            worst = worst.max(linalg::max_abs(&prod));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{character_table, make_symmetric};
    use crate::linalg::{hermitian_eig, vec_max_abs_diff, C_ONE};
    use crate::reps::{
        dihedral_vertex_action, dihedral_vertex_edge_rep, s3_faithful4_rep,
        tensor_permutation_rep, trivial_rep,
    };
    use std::sync::Arc;

    fn s3_tensor() -> Arc<UnitaryRep> {
        let g = Arc::new(make_symmetric(3).unwrap());
        Arc::new(tensor_permutation_rep(&g, 2).unwrap())
    }

    #[test]
    fn trivial_group_projector_is_identity() {
        // trivial rep of any group has Π_G = I on 1 dim; use a 1-point action
        let g = Arc::new(make_symmetric(2).unwrap());
        let rep = trivial_rep(&g);
        let p = projector_symmetric(&rep);
        assert!(max_abs_diff(&p, &identity(1)) < 1e-12);
    }

    #[test]
    fn z2_x_projector_is_plus_state() {
        let z2 = Arc::new(crate::groups::make_cyclic_product(&[2]).unwrap());
        let x = ndarray::array![
            [linalg::C_ZERO, C_ONE],
            [C_ONE, linalg::C_ZERO]
        ];
        let rep = UnitaryRep::new(
            Arc::clone(&z2),
            vec![identity(2), x],
            Some(vec![2]),
            "z2x",
        )
        .unwrap();
        let p = projector_symmetric(&rep);
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[(i, j)] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn s3_projector_matches_published_matrix() {
        let rep = s3_tensor();
        let p = projector_symmetric(&rep);
        let third = Complex64::new(1.0 / 3.0, 0.0);
        let mut expect = linalg::zeros(8, 8);
        expect[(0, 0)] = C_ONE;
        expect[(7, 7)] = C_ONE;
        for &a in &[1usize, 2, 4] {
            for &b in &[1usize, 2, 4] {
                expect[(a, b)] = third;
            }
        }
        for &a in &[3usize, 5, 6] {
            for &b in &[3usize, 5, 6] {
                expect[(a, b)] = third;
            }
        }
        assert!(max_abs_diff(&p, &expect) < 1e-12);
    }

    #[test]
    fn s3_tensor_multiplicities() {
        let rep = s3_tensor();
        let chars = character_table(&rep.group).unwrap();
        let d = decompose(&rep, &chars).unwrap();
        let get = |l: &str| d.component(l).unwrap().multiplicity;
        assert_eq!(get("triv"), 4);
        assert_eq!(get("sgn"), 0);
        assert_eq!(get("std"), 2);
        assert!(projector_defect(&d) < PROJ_TOL);
    }

    #[test]
    fn faithful4_multiplicities() {
        let rep = Arc::new(s3_faithful4_rep().unwrap());
        let chars = character_table(&rep.group).unwrap();
        let d = decompose(&rep, &chars).unwrap();
        let get = |l: &str| d.component(l).unwrap().multiplicity;
        assert_eq!((get("triv"), get("sgn"), get("std")), (2, 0, 1));
    }

    #[test]
    fn trivial_projector_agrees_with_symmetric_average() {
        for rep in [
            s3_tensor(),
            Arc::new(s3_faithful4_rep().unwrap()),
            Arc::new(dihedral_vertex_edge_rep(4).unwrap()),
        ] {
            let chars = character_table(&rep.group).unwrap();
            let d = decompose(&rep, &chars).unwrap();
            let pg = projector_symmetric(&rep);
            assert!(max_abs_diff(d.trivial_projector(), &pg) < PROJ_TOL);
        }
    }

    #[test]
    fn projector_ranks_match_mult_times_dim() {
        let rep = s3_tensor();
        let chars = character_table(&rep.group).unwrap();
        let d = decompose(&rep, &chars).unwrap();
        for c in &d.components {
            let (vals, _) = hermitian_eig(&c.projector);
            let rank = vals.iter().filter(|v| **v >= 0.5).count();
            assert_eq!(rank, c.multiplicity * c.dim_irrep, "label {}", c.label);
        }
    }

    #[test]
    fn s3_code_is_dicke_basis() {
        let rep = s3_tensor();
        let code = build_code(&rep).unwrap();
        assert_eq!(code.code_dim(), 4);
        assert_eq!(code.k, 2);
        assert!((code.rate_bound - 2.0 / 3.0).abs() < 1e-12);
        let third = (1.0f64 / 3.0).sqrt();
        let expect: Vec<Vec<(usize, f64)>> = vec![
            vec![(0, 1.0)],
            vec![(1, third), (2, third), (4, third)],
            vec![(3, third), (5, third), (6, third)],
            vec![(7, 1.0)],
        ];
        for (b, pattern) in code.codespace_basis.iter().zip(&expect) {
            let mut v = CVec::zeros(8);
            for &(i, a) in pattern {
                v[i] = Complex64::new(a, 0.0);
            }
            assert!(vec_max_abs_diff(b, &v) < 1e-9);
        }
        // every basis vector fixed by every W(g)
        for bvec in &code.codespace_basis {
            for m in &code.rep.matrices {
                let w = m.dot(bvec);
                assert!(vec_max_abs_diff(&w, bvec) < PROJ_TOL);
            }
        }
    }

    #[test]
    fn dihedral_code_uniform_superpositions() {
        for n in [4usize, 5, 8] {
            let rep = Arc::new(dihedral_vertex_edge_rep(n).unwrap());
            let code = build_code(&rep).unwrap();
            assert_eq!(code.code_dim(), 2);
            assert_eq!(code.k, 1);
            let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
            let mut v0 = CVec::zeros(2 * n);
            let mut v1 = CVec::zeros(2 * n);
            for i in 0..n {
                v0[2 * i] = amp;
                v1[2 * i + 1] = amp;
            }
            assert!(vec_max_abs_diff(code.codeword(0), &v0) < 1e-9);
            assert!(vec_max_abs_diff(code.codeword(1), &v1) < 1e-9);
        }
    }

    #[test]
    fn trivial_code_error_when_sym_empty() {
        // Z_2 represented by -I on one dim: projector (I + (-I))/2 = 0.
        let z2 = Arc::new(crate::groups::make_cyclic_product(&[2]).unwrap());
        let rep = UnitaryRep::new(
            Arc::clone(&z2),
            vec![identity(1), identity(1).mapv(|z| -z)],
            None,
            "sign",
        )
        .unwrap();
        assert!(matches!(
            build_code(&rep.into()),
            Err(IsotypicError::TrivialCode)
        ));
    }

    #[test]
    fn three_dimension_formulas_agree() {
        // S_3 tensor perm, d = 2
        let rep = s3_tensor();
        let perms = crate::groups::symmetric_permutations(3);
        assert_eq!(dim_sym_trace(&rep), 4);
        assert_eq!(dim_sym_cycle_index(&perms, 2), 4);
        // (2^3 + 3*2^2 + 2*2)/6 = 4

        // D_n vertex/edge: two orbits
        for n in [3usize, 4, 8] {
            let rep = Arc::new(dihedral_vertex_edge_rep(n).unwrap());
            let g = &rep.group;
            let vaction = dihedral_vertex_action(g).unwrap();
            // vertex/edge action on 2n points
            let perms: Vec<Vec<usize>> = vaction
                .perms
                .iter()
                .map(|p| {
                    let mut q = vec![0usize; 2 * n];
                    for i in 0..n {
                        q[2 * i] = 2 * p[i];
                        q[2 * i + 1] = 2 * p[i] + 1;
                    }
                    q
                })
                .collect();
            let action = PermAction::new(Arc::clone(g), perms).unwrap();
            assert_eq!(dim_sym_burnside(&action), 2);
            assert_eq!(dim_sym_trace(&rep), 2);
        }
    }

    #[test]
    fn trivial_group_action_orbit_per_point() {
        let g = Arc::new(make_symmetric(2).unwrap());
        // S_2 acting trivially on 5 points: every point its own orbit
        let perms = vec![(0..5).collect::<Vec<_>>(); 2];
        let action = PermAction::new(g, perms).unwrap();
        assert_eq!(dim_sym_burnside(&action), 5);
    }

    #[test]
    fn rate_bound_formula() {
        // rate bound equals floor(log2 m_triv) / log2(sum m d)
        let rep = Arc::new(dihedral_vertex_edge_rep(8).unwrap());
        let chars = character_table(&rep.group).unwrap();
        let d = decompose(&rep, &chars).unwrap();
        let m_triv = d.components[0].multiplicity;
        let total: usize = d
            .components
            .iter()
            .map(|c| c.multiplicity * c.dim_irrep)
            .sum();
        let code = build_code(&rep).unwrap();
        let expect = (m_triv as f64).log2().floor() / (total as f64).log2();
        assert!((code.rate_bound - expect).abs() < 1e-12);
    }

    #[test]
    fn abelian_decomposition_label_count() {
        let g = Arc::new(crate::groups::make_cyclic_product(&[2, 2]).unwrap());
        let z = ndarray::array![[C_ONE, linalg::C_ZERO], [linalg::C_ZERO, -C_ONE]];
        let dims = [2usize, 2, 2];
        let s1 = crate::linalg::op_on_site(&z, 0, &dims)
            .dot(&crate::linalg::op_on_site(&z, 1, &dims));
        let s2 = crate::linalg::op_on_site(&z, 1, &dims)
            .dot(&crate::linalg::op_on_site(&z, 2, &dims));
        let rep = Arc::new(crate::reps::stabilizer_rep(&g, &[s1, s2], &[2, 2]).unwrap());
        let chars = character_table(&rep.group).unwrap();
        let d = decompose(&rep, &chars).unwrap();
        assert_eq!(d.components.len(), 4);
        assert!(d.components.iter().all(|c| c.dim_irrep == 1));
        assert!(projector_defect(&d) < PROJ_TOL);
    }
}
