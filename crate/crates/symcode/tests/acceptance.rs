//! Acceptance suite: the exact-number reproductions and property checks the
//! project promises. One criterion per test, each printing a PASS line with
//! its measured figures (run with `--nocapture` to see them all).

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symcode::extract::{
    report_distance, syndrome_circuit, syndrome_direct, Statevector,
};
use symcode::gqft::{
    d3_prep_circuit_with_gamma, dihedral_irreps, plus_state, qft_abelian,
    qft_dihedral_pow2_circuit, qft_group, FourierLabeling, GroupQft, RowLabel,
};
use symcode::groups::{character_table, find_isomorphism, make_dihedral, make_symmetric};
use symcode::isotypic::{build_code, decompose, projector_defect, IsotypicDecomposition};
use symcode::linalg::{self, identity, vec_max_abs_diff, CMat, CVec};
use symcode::reps::{dihedral_vertex_edge_rep, s3_faithful4_rep, tensor_permutation_rep, UnitaryRep};
use symcode::stabilizer::{
    build_stabilizer_code, commutation_phases, hadamard_test_syndrome, sigma,
    syndrome_label, PauliWord, StabilizerSpec,
};
use symcode::verify::{
    algebra_span_dimension, cnot_protocol, correctable_demo_ive, faithful4_demo_error,
    faithful4_logical_x, faithful4_logical_z, kl_check, pauli_generators, KlStatus,
    LogicalQubit,
};

const TOL: f64 = 1e-9;

fn s3_tensor_setup() -> (Arc<UnitaryRep>, IsotypicDecomposition) {
    let g = Arc::new(make_symmetric(3).unwrap());
    let rep = Arc::new(tensor_permutation_rep(&g, 2).unwrap());
    let chars = character_table(&g).unwrap();
    let decomp = decompose(&rep, &chars).unwrap();
    (rep, decomp)
}

/// Group Fourier transform in the S_3 element order, transported from the
/// dihedral presentation through the generator isomorphism.
fn s3_qft(group: &symcode::groups::FiniteGroup) -> GroupQft {
    let d3 = make_dihedral(3).unwrap();
    let iso = find_isomorphism(&d3, group).unwrap();
    let irreps: Vec<symcode::gqft::IrrepMatrices> = dihedral_irreps(3)
        .unwrap()
        .into_iter()
        .map(|ir| {
            let mut mats = vec![identity(ir.dim); 6];
            for (didx, m) in ir.matrices.iter().enumerate() {
                mats[iso[didx]] = m.clone();
            }
            symcode::gqft::IrrepMatrices {
                label: if ir.label == "E1" { "std".into() } else { ir.label },
                dim: ir.dim,
                matrices: mats,
            }
        })
        .collect();
    qft_group(group, &irreps).unwrap().pad_to(8).unwrap()
}

#[test]
fn acceptance_1_s3_tensor_syndrome_and_post_states() {
    let start = Instant::now();
    let (_, decomp) = s3_tensor_setup();
    let st = Statevector::basis_state(1, vec![2, 2, 2]); // X_0 |000> = |001>
    let report = syndrome_direct(&decomp, &st).unwrap();
    let p_triv = report.probability("triv").unwrap();
    let p_std = report.probability("std").unwrap();
    let p_sgn = report.probability("sgn").unwrap();
    assert!((p_triv - 1.0 / 3.0).abs() < TOL);
    assert!((p_std - 2.0 / 3.0).abs() < TOL);
    assert!(p_sgn.abs() < TOL);

    let w = &report.entry("triv").unwrap().post_state.as_ref().unwrap().amplitudes;
    let mut w_expect = CVec::zeros(8);
    let third = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    w_expect[1] = third;
    w_expect[2] = third;
    w_expect[4] = third;
    assert!(vec_max_abs_diff(w, &w_expect) < TOL);

    let s = &report.entry("std").unwrap().post_state.as_ref().unwrap().amplitudes;
    let mut s_expect = CVec::zeros(8);
    s_expect[1] = Complex64::new((2f64 / 3.0).sqrt(), 0.0);
    s_expect[2] = Complex64::new(-1.0 / 6f64.sqrt(), 0.0);
    s_expect[4] = Complex64::new(-1.0 / 6f64.sqrt(), 0.0);
    assert!(vec_max_abs_diff(s, &s_expect) < TOL);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1: PASS  (p = ({p_triv:.9}, {p_std:.9}, {p_sgn:.9}), post states exact, {elapsed:?})"
    );
}

#[test]
fn acceptance_2_faithful_code_multiplicities_and_correctable_error() {
    let rep = Arc::new(s3_faithful4_rep().unwrap());
    let chars = character_table(&rep.group).unwrap();
    let decomp = decompose(&rep, &chars).unwrap();
    let get = |l: &str| decomp.component(l).unwrap().multiplicity;
    assert_eq!((get("triv"), get("sgn"), get("std")), (2, 0, 1));

    // X_1 on |00>
    let st = Statevector::basis_state(0, vec![2, 2]);
    let x1 = PauliWord::parse("X1", &[2, 2]).unwrap().to_matrix(&[2, 2]);
    let corrupted = st.apply(&x1).unwrap();
    let report = syndrome_direct(&decomp, &corrupted).unwrap();
    assert!((report.probability("triv").unwrap() - 1.0 / 3.0).abs() < TOL);
    assert!((report.probability("std").unwrap() - 2.0 / 3.0).abs() < TOL);
    assert!(report.probability("sgn").unwrap().abs() < TOL);

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_p: f64 = 1.0;
    let mut worst_f: f64 = 1.0;
    for _ in 0..100 {
        let amps = linalg::random_state(&mut rng, 2);
        let (p_std, fid) = correctable_demo_ive(amps[0], amps[1]).unwrap();
        worst_p = worst_p.min(p_std);
        worst_f = worst_f.min(fid);
    }
    assert!((worst_p - 1.0).abs() < TOL);
    assert!((worst_f - 1.0).abs() < TOL);
    println!(
        "ACCEPTANCE 2: PASS  (multiplicities (2,0,1); X1 gives (1/3,2/3,0); \
         100 random codewords: min p_std = {worst_p:.12}, min fidelity = {worst_f:.12})"
    );
}

#[test]
fn acceptance_3_qft_d3_matrix_and_prep_circuit() {
    let g = make_dihedral(3).unwrap();
    let qft = qft_group(&g, &dihedral_irreps(3).unwrap())
        .unwrap()
        .pad_to(8)
        .unwrap();
    let s6 = Complex64::new(1.0 / 6f64.sqrt(), 0.0);
    let s3 = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let wc = w.conj();
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let expect: Vec<Vec<Complex64>> = vec![
        vec![s6, s6, s6, s6, s6, s6, z, z],
        vec![s6, -s6, s6, -s6, s6, -s6, z, z],
        vec![s3, z, w * s3, z, wc * s3, z, z, z],
        vec![z, s3, z, wc * s3, z, w * s3, z, z],
        vec![z, s3, z, w * s3, z, wc * s3, z, z],
        vec![s3, z, wc * s3, z, w * s3, z, z, z],
        vec![z, z, z, z, z, z, o, z],
        vec![z, z, z, z, z, z, z, o],
    ];
    let mut worst = 0f64;
    for i in 0..8 {
        for j in 0..8 {
            worst = worst.max((qft.matrix[(i, j)] - expect[i][j]).norm());
        }
    }
    assert!(worst < 1e-12, "entrywise defect {worst:.3e}");

    // prep circuit with the printed six-digit angle
    let seq = d3_prep_circuit_with_gamma(1.23096);
    let mut zero = CVec::zeros(8);
    zero[0] = Complex64::new(1.0, 0.0);
    let out = seq.apply(&zero);
    let target = plus_state(&g, 8).unwrap();
    let prep_err = vec_max_abs_diff(&out, &target);
    assert!(prep_err < 1e-4, "prep error {prep_err:.3e}");
    println!(
        "ACCEPTANCE 3: PASS  (matrix defect {worst:.2e} < 1e-12, prep error {prep_err:.2e} < 1e-4)"
    );
}

#[test]
fn acceptance_4_dihedral_pow2_circuit_equals_direct_matrix() {
    let mut reported = Vec::new();
    for m in [2usize, 3] {
        let n = 1usize << m;
        let g = make_dihedral(n).unwrap();
        let direct = qft_group(&g, &dihedral_irreps(n).unwrap()).unwrap();
        let circ = qft_dihedral_pow2_circuit(m).unwrap();
        let cm = circ.gates.compose_matrix();
        let mut worst = 0f64;
        for (r, label) in circ.labeling.rows().iter().enumerate() {
            let dr = direct.labeling.position(label).unwrap();
            for e in 0..2 * n {
                let cc = circ.column_of_element[e];
                worst = worst.max((cm[(r, cc)] - direct.matrix[(dr, e)]).norm());
            }
        }
        assert!(worst < TOL, "m={m} defect {worst:.3e}");
        reported.push(format!("m={m}: {worst:.2e}"));
    }
    println!(
        "ACCEPTANCE 4: PASS  (circuit vs relabeled matrix defects: {})",
        reported.join(", ")
    );
}

fn cyclic_qft_for(spec: &StabilizerSpec) -> GroupQft {
    let matrix = qft_abelian(&spec.orders);
    let order: usize = spec.orders.iter().product();
    let mut rows = Vec::with_capacity(order);
    for j in 0..order {
        let mut rem = j;
        let digits: Vec<usize> = spec
            .orders
            .iter()
            .map(|&d| {
                let k = rem % d;
                rem /= d;
                k
            })
            .collect();
        rows.push(RowLabel::Irrep {
            label: syndrome_label(&digits),
            i: 1,
            j: 1,
        });
    }
    GroupQft {
        matrix,
        labeling: FourierLabeling::new(rows),
    }
}

#[test]
fn acceptance_5_stabilizer_path_equivalence() {
    let start = Instant::now();
    let specs = [
        StabilizerSpec::new(vec![2, 2, 2], &["Z0 Z1", "Z1 Z2"]).unwrap(),
        StabilizerSpec::new(
            vec![2; 5],
            &["X0 Z1 Z2 X3", "X1 Z2 Z3 X4", "X2 Z3 Z4 X0", "Z0 X3 Z4 X1"],
        )
        .unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut worst = 0f64;
    for spec in &specs {
        let (rep, code) = build_stabilizer_code(spec).unwrap();
        let n_sites = spec.dims.len();
        let expected_dim = 2usize.pow((n_sites - spec.generators.len()) as u32);
        assert_eq!(code.code_dim(), expected_dim);
        let chars = character_table(&rep.group).unwrap();
        let decomp = decompose(&rep, &chars).unwrap();
        let qft = cyclic_qft_for(spec);
        let dim: usize = spec.dims.iter().product();
        for _ in 0..20 {
            let st =
                Statevector::new(linalg::random_state(&mut rng, dim), spec.dims.clone())
                    .unwrap();
            let direct = syndrome_direct(&decomp, &st).unwrap();
            let circuit = syndrome_circuit(&rep, &qft, &st).unwrap();
            let ht = hadamard_test_syndrome(spec, &st).unwrap();
            worst = worst.max(report_distance(&direct, &circuit));
            worst = worst.max(report_distance(&direct, &ht));
        }
    }
    assert!(worst < TOL, "path disagreement {worst:.3e}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 5: PASS  (three-path agreement {worst:.2e} over 20 states x 2 codes, \
         dims = 2^(N-n), {elapsed:?})"
    );
}

#[test]
fn acceptance_6_qudit_and_mixed_deterministic_syndromes() {
    // two qutrits, one generator: dim 3^(2-1)
    let qutrit = StabilizerSpec::new(vec![3, 3], &["z[0] z[1]^2"]).unwrap();
    let (rep, code) = build_stabilizer_code(&qutrit).unwrap();
    assert_eq!(code.code_dim(), 3);
    let mixed = StabilizerSpec::new(vec![2, 3], &["Z0", "z[1]"]).unwrap();
    let mut checked = 0usize;
    for spec in [&qutrit, &mixed] {
        let (rep, code) = if spec.dims == vec![3, 3] {
            (rep.clone(), code.clone())
        } else {
            let (r, c) = build_stabilizer_code(spec).unwrap();
            (r, c)
        };
        let chars = character_table(&rep.group).unwrap();
        let decomp = decompose(&rep, &chars).unwrap();
        let dims = spec.dims.clone();
        // single-hot structure is a statement about the per-site-generator
        // construction: generator i touching only site i
        let site_local = spec
            .generators
            .iter()
            .enumerate()
            .all(|(i, g)| g.ops.len() == 1 && g.ops.contains_key(&i));
        // every single-site generalized Pauli error on every codeword
        for site in 0..dims.len() {
            for a in 0..dims[site] {
                for b in 0..dims[site] {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let mut word = PauliWord::identity();
                    word.ops.insert(site, (a, b));
                    let ell = commutation_phases(spec, &word).unwrap();
                    if site_local {
                        for (i, &l) in ell.iter().enumerate() {
                            if i != site {
                                assert_eq!(l, 0);
                            }
                        }
                    }
                    let label = syndrome_label(&ell);
                    let e = word.to_matrix(&dims);
                    for cw in 0..code.code_dim() {
                        let st =
                            Statevector::new(code.codeword(cw).clone(), dims.clone())
                                .unwrap();
                        let corrupted = st.apply(&e).unwrap();
                        let report = syndrome_direct(&decomp, &corrupted).unwrap();
                        let p = report.probability(&label).unwrap();
                        assert!(
                            (p - 1.0).abs() < TOL,
                            "site {site} (a,b)=({a},{b}) label {label} p={p}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 6: PASS  (qutrit code dim 3; {checked} single-site error/codeword \
         pairs all deterministic single-hot)"
    );
}

#[test]
fn acceptance_7_dihedral_code_family() {
    let mut summary = Vec::new();
    for n in [4usize, 5, 8] {
        let rep = Arc::new(dihedral_vertex_edge_rep(n).unwrap());
        let code = build_code(&rep).unwrap();
        assert_eq!(code.code_dim(), 2);
        let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        let mut v0 = CVec::zeros(2 * n);
        let mut v1 = CVec::zeros(2 * n);
        for i in 0..n {
            v0[2 * i] = amp;
            v1[2 * i + 1] = amp;
        }
        assert!(vec_max_abs_diff(code.codeword(0), &v0) < TOL);
        assert!(vec_max_abs_diff(code.codeword(1), &v1) < TOL);
        let chars = character_table(&rep.group).unwrap();
        let decomp = decompose(&rep, &chars).unwrap();
        let used = decomp
            .components
            .iter()
            .filter(|c| c.multiplicity > 0)
            .count();
        let expect_components = if n % 2 == 1 { (n + 1) / 2 } else { (n + 2) / 2 };
        let expect_nontrivial = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 };
        assert_eq!(used, expect_components, "n = {n}");
        assert_eq!(used - 1, expect_nontrivial, "n = {n}");
        summary.push(format!("D{n}: {used} components"));
    }
    println!(
        "ACCEPTANCE 7: PASS  (uniform two-dim codes; {})",
        summary.join(", ")
    );
}

#[test]
fn acceptance_8_logical_cnot_all_branches() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let abstract_qubit = LogicalQubit::bare();
    let rep = Arc::new(s3_faithful4_rep().unwrap());
    let code = build_code(&rep).unwrap();
    let physical_qubit =
        LogicalQubit::physical(&code, faithful4_logical_x(), faithful4_logical_z())
            .unwrap();
    let mut worst: f64 = 1.0;
    let mut branches_hit = 0usize;
    for qubit in [&abstract_qubit, &physical_qubit] {
        for _ in 0..25 {
            let amps = linalg::random_state(&mut rng, 4);
            let input = [amps[0], amps[1], amps[2], amps[3]];
            for a in [1i8, -1] {
                for b in [1i8, -1] {
                    for c in [1i8, -1] {
                        match cnot_protocol(qubit, &input, (a, b, c)) {
                            Ok(out) => {
                                worst = worst.min(out.fidelity);
                                branches_hit += 1;
                            }
                            Err(symcode::verify::VerifyError::BranchUnreachable {
                                ..
                            }) => {}
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }
    assert!(worst >= 1.0 - TOL, "worst fidelity {worst}");
    assert!(branches_hit >= 2 * 25 * 8 - 16, "too few reachable branches");
    println!(
        "ACCEPTANCE 8: PASS  (abstract + physical modes, {branches_hit} branch runs, \
         min fidelity {worst:.12})"
    );
}

#[test]
fn acceptance_9_property_suites_over_corpus() {
    // corpus: S_3 tensor, S_3 faithful, dihedral 4/5/8, repetition, qutrit
    let mut corpus: Vec<(String, Arc<UnitaryRep>)> = Vec::new();
    let (s3rep, _) = s3_tensor_setup();
    corpus.push(("s3-tensor".into(), s3rep));
    corpus.push(("s3-faithful".into(), Arc::new(s3_faithful4_rep().unwrap())));
    for n in [4usize, 5, 8] {
        corpus.push((
            format!("dihedral-{n}"),
            Arc::new(dihedral_vertex_edge_rep(n).unwrap()),
        ));
    }
    let rspec = StabilizerSpec::new(vec![2, 2, 2], &["Z0 Z1", "Z1 Z2"]).unwrap();
    corpus.push((
        "repetition".into(),
        build_stabilizer_code(&rspec).unwrap().0,
    ));
    let qspec = StabilizerSpec::new(vec![3, 3], &["z[0] z[1]^2"]).unwrap();
    corpus.push(("qutrit".into(), build_stabilizer_code(&qspec).unwrap().0));

    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut worst_proj = 0f64;
    let mut worst_total = 0f64;
    for (name, rep) in &corpus {
        // full homomorphism check over all |G|^2 pairs
        let order = rep.group.order();
        for x in 0..order {
            for y in 0..order {
                let prod = rep.matrix(x).dot(rep.matrix(y));
                let defect =
                    linalg::max_abs_diff(&prod, rep.matrix(rep.group.mul(x, y)));
                assert!(defect < 1e-10, "{name} hom ({x},{y}) defect {defect:.3e}");
            }
        }
        let chars = character_table(&rep.group).unwrap();
        let decomp = decompose(rep, &chars).unwrap();
        worst_proj = worst_proj.max(projector_defect(&decomp));
        // probability conservation over random states
        let dims = rep.qudit_shape.clone().unwrap_or_else(|| vec![rep.dim]);
        for _ in 0..5 {
            let st =
                Statevector::new(linalg::random_state(&mut rng, rep.dim), dims.clone())
                    .unwrap();
            let report = syndrome_direct(&decomp, &st).unwrap();
            worst_total = worst_total.max((report.total_probability() - 1.0).abs());
        }
    }
    assert!(worst_proj < TOL);
    assert!(worst_total < TOL);

    // trace = Burnside = cycle index for the permutation reps
    let (s3rep, _) = s3_tensor_setup();
    let perms = symcode::groups::symmetric_permutations(3);
    assert_eq!(symcode::isotypic::dim_sym_trace(&s3rep), 4);
    assert_eq!(symcode::isotypic::dim_sym_cycle_index(&perms, 2), 4);
    for n in [4usize, 5, 8] {
        let rep = Arc::new(dihedral_vertex_edge_rep(n).unwrap());
        let action = symcode::reps::dihedral_vertex_action(&rep.group).unwrap();
        let ve_perms: Vec<Vec<usize>> = action
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
        let ve_action =
            symcode::reps::PermAction::new(Arc::clone(&rep.group), ve_perms).unwrap();
        assert_eq!(symcode::isotypic::dim_sym_burnside(&ve_action), 2);
        assert_eq!(symcode::isotypic::dim_sym_trace(&rep), 2);
    }

    // KL goldens on the repetition code
    let (_, code) = build_stabilizer_code(&rspec).unwrap();
    let gens = pauli_generators(3, false);
    let xs: Vec<CMat> = std::iter::once(identity(8))
        .chain(
            gens.iter()
                .filter(|g| g.name.starts_with('X'))
                .map(|g| g.matrix.clone()),
        )
        .collect();
    let pass_report = kl_check(&code, &xs, symcode::verify::KL_TOL).unwrap();
    assert!(pass_report.pass);
    let z0 = gens.iter().find(|g| g.name == "Z0").unwrap().matrix.clone();
    let fail_report =
        kl_check(&code, &[identity(8), z0], symcode::verify::KL_TOL).unwrap();
    assert!(!fail_report.pass);
    assert!(matches!(
        fail_report.pairs.iter().find(|p| (p.left, p.right) == (0, 1)).unwrap().status,
        KlStatus::Violation(_)
    ));

    println!(
        "ACCEPTANCE 9: PASS  ({} corpus reps: projector defect {worst_proj:.2e}, \
         probability defect {worst_total:.2e}, dimension formulas agree, KL goldens hold)",
        corpus.len()
    );
}

#[test]
fn acceptance_10_operator_algebra_span() {
    let rep = dihedral_vertex_edge_rep(4).unwrap();
    let alone = algebra_span_dimension(&rep.matrices).unwrap();
    assert!(alone < 64, "group algebra alone spans {alone}");

    let x = sigma(2, 1, 0);
    let z = sigma(2, 0, 1);
    let mut gens = rep.matrices.clone();
    gens.push(linalg::op_on_site(&x, 0, &[2, 4]));
    gens.push(linalg::op_on_site(&z, 0, &[2, 4]));
    let mut d = linalg::zeros(8, 8);
    for j in 0..4 {
        let phase =
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 5.0);
        d[(2 * j, 2 * j)] = phase;
        d[(2 * j + 1, 2 * j + 1)] = phase;
    }
    gens.push(d);
    gens.push(identity(8).mapv(|v| v * Complex64::new(0.0, 1.0)));
    let full = algebra_span_dimension(&gens).unwrap();
    assert_eq!(full, 64);
    println!(
        "ACCEPTANCE 10: PASS  (group image alone spans {alone}; full set spans {full} = 8²)"
    );
}

#[test]
fn acceptance_extra_circuit_path_uses_group_qft_on_nonabelian_code() {
    // ties criteria 1 and 3 together: the ancilla-circuit path with the padded
    // 8-dim transform reproduces the direct distribution on S_3.
    let (rep, decomp) = s3_tensor_setup();
    let qft = s3_qft(&rep.group);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = 0f64;
    for _ in 0..50 {
        let st =
            Statevector::new(linalg::random_state(&mut rng, 8), vec![2, 2, 2]).unwrap();
        let direct = syndrome_direct(&decomp, &st).unwrap();
        let circuit = syndrome_circuit(&rep, &qft, &st).unwrap();
        worst = worst.max(report_distance(&direct, &circuit));
    }
    assert!(worst < TOL);
    println!("ACCEPTANCE extra: PASS  (padded nonabelian circuit path, defect {worst:.2e})");
}

#[test]
fn acceptance_extra_demo_error_matrix_is_the_printed_word() {
    // guard: the built-in demo error equals the parsed gate word
    let parsed =
        symcode::specfile::parse_error_word("U:Z0 X1 CNOT10 H1", &[2, 2], 4).unwrap();
    assert!(linalg::max_abs_diff(&parsed, &faithful4_demo_error()) < 1e-12);
    println!("ACCEPTANCE extra: PASS  (demo error word round-trips)");
}
