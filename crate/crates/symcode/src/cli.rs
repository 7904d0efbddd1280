//! Command-line surface: build codes from JSON specs, run syndrome sweeps,
//! emit Fourier matrices and circuits, and run the verification suites.
//!
//! Output is JSON (keys sorted, complex numbers as [re, im] pairs) or CSV for
//! flat tables. Exit codes: 0 = pass, 1 = violation detected, 2 = usage or
//! spec error.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use serde_json::{json, Map, Value};

use crate::extract::{
    bose_test_probability, syndrome_circuit, syndrome_direct, Statevector,
    SyndromeReport,
};
use crate::gqft::{
    d3_prep_circuit, dihedral_irreps, plus_state, qft_abelian, qft_dihedral_pow2_circuit,
    qft_group, GroupQft, RowLabel,
};
use crate::groups::FamilyTag;
use crate::linalg::{self, CMat, CVec};
use crate::specfile::{parse_error_word, CodeSpecFile, GroupSpec};
use crate::stabilizer::{
    commutation_phases, hadamard_test_syndrome, mixed_dimension_code, PauliWord,
};
use crate::verify::{
    algebra_span_dimension, cnot_protocol, correctable_demo_ive, faithful4_logical_x,
    faithful4_logical_z, g_distance, kl_check, pauli_generators, KlStatus,
    LogicalQubit, NamedOperator, PhaseMode,
};

#[derive(Parser)]
#[command(
    name = "symcode",
    about = "Workbench for symmetry-based quantum error-correcting codes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a code built from a spec file
    Code {
        #[command(subcommand)]
        what: CodeCmd,
    },
    /// Run isotypic syndrome extraction on a (possibly corrupted) state
    Syndrome(SyndromeArgs),
    /// Emit group Fourier transform matrices, labelings, and circuits
    Qft(QftArgs),
    /// Check the scalar error-correction condition on an error set
    KlCheck(KlArgs),
    /// Search the minimal weight of a nontrivial logical operation
    Distance(DistanceArgs),
    /// Run the measurement-based logical CNOT over its outcome branches
    CnotDemo(CnotArgs),
    /// Measure the dimension of the operator algebra a generator set spans
    SpanCheck(SpanArgs),
    /// Reproduce a built-in worked example
    Demo(DemoArgs),
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Dimensions, rate bound, multiplicities, and the code basis
    Info {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Args)]
struct SyndromeArgs {
    #[arg(long)]
    spec: String,
    /// Error to apply: a named error from the spec, a Pauli word, or "U:..."
    #[arg(long, default_value = "I")]
    error: String,
    /// Input state: "codeword:i", "basis:j", or "random:seed"
    #[arg(long, default_value = "codeword:0")]
    state: String,
    /// Computation path: direct, circuit, or hadamard (qubit stabilizer only)
    #[arg(long, default_value = "direct")]
    path: String,
    /// Emit a flat CSV table instead of JSON
    #[arg(long)]
    csv: bool,
    /// Also sample one syndrome from the distribution with this seed
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct QftArgs {
    /// Inline group spec JSON, e.g. '{"family":"dihedral","n":3}'
    #[arg(long)]
    group: String,
    /// Pad the transform to this register dimension
    #[arg(long)]
    pad: Option<usize>,
    /// Emit the efficient circuit instead of the dense matrix (dihedral 2^m)
    #[arg(long)]
    circuit: bool,
    /// Include the Fourier row labeling
    #[arg(long)]
    labeling: bool,
}

#[derive(Args)]
struct KlArgs {
    #[arg(long)]
    spec: String,
    /// Comma-separated error words ("I,X0,X1,X2"); names from the spec work too
    #[arg(long)]
    errors: String,
    #[arg(long, default_value_t = crate::verify::KL_TOL)]
    tol: f64,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 4)]
    wmax: usize,
    /// Generating set: "xyz", "xz", or "x" single-site Paulis
    #[arg(long, default_value = "xyz")]
    gens: String,
    /// Match conjugates up to a global phase
    #[arg(long)]
    phase_insensitive: bool,
}

#[derive(Args)]
struct CnotArgs {
    /// Outcomes as "+1,-1,-1"; omit to run all eight branches
    #[arg(long)]
    outcomes: Option<String>,
    /// Use the two-qubit code with its published logical Paulis
    #[arg(long)]
    physical: bool,
    #[arg(long, default_value_t = 25)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct SpanArgs {
    /// Spec whose representation matrices seed the span
    #[arg(long)]
    spec: Option<String>,
    /// Run the built-in full-algebra instance instead
    #[arg(long)]
    demo: bool,
}

#[derive(Args)]
struct DemoArgs {
    /// One of: s3, s3alt, d3, dn, repetition, qudit, mixed
    which: String,
    /// Dihedral index for the dn demo
    #[arg(long, default_value_t = 8)]
    n: usize,
}

pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return 2;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

type CliResult = Result<i32, Box<dyn std::error::Error>>;

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Code { what } => match what {
            CodeCmd::Info { spec } => cmd_code_info(&spec, out),
        },
        Command::Syndrome(a) => cmd_syndrome(a, out),
        Command::Qft(a) => cmd_qft(a, out),
        Command::KlCheck(a) => cmd_kl_check(a, out),
        Command::Distance(a) => cmd_distance(a, out),
        Command::CnotDemo(a) => cmd_cnot_demo(a, out),
        Command::SpanCheck(a) => cmd_span_check(a, out),
        Command::Demo(a) => cmd_demo(a, out),
    }
}

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

/// Rounds to 12 significant digits for byte-stable float output.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    let mag = x.abs().log10().floor();
    let scale = 10f64.powi(11 - mag as i32);
    (x * scale).round() / scale
}

fn c_json(z: Complex64) -> Value {
    json!([sig12(z.re), sig12(z.im)])
}

fn vec_json(v: &CVec) -> Value {
    Value::Array(v.iter().map(|z| c_json(*z)).collect())
}

fn mat_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| c_json(m[(i, j)])).collect()))
            .collect(),
    )
}

fn emit(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)
}

fn report_json(report: &SyndromeReport, include_states: bool) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("label".into(), json!(e.label));
            m.insert("probability".into(), json!(sig12(e.probability)));
            if include_states {
                if let Some(p) = &e.post_state {
                    m.insert("post_state".into(), vec_json(&p.amplitudes));
                }
            }
            Value::Object(m)
        })
        .collect();
    json!(entries)
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_code_info(spec_path: &str, out: &mut dyn Write) -> CliResult {
    let built = CodeSpecFile::from_path(spec_path)?.build()?;
    let mults: Map<String, Value> = built
        .decomp
        .multiplicities()
        .into_iter()
        .map(|(l, m)| (l, json!(m)))
        .collect();
    let basis: Vec<Value> = built
        .code
        .codespace_basis
        .iter()
        .map(vec_json)
        .collect();
    let v = json!({
        "schema": crate::specfile::SCHEMA_VERSION,
        "dim": built.rep.dim,
        "code_dim": built.code.code_dim(),
        "k": built.code.k,
        "rate_bound": sig12(built.code.rate_bound),
        "multiplicities": mults,
        "code_basis": basis,
    });
    emit(out, &v)?;
    Ok(0)
}

fn resolve_state(
    built: &crate::specfile::BuiltCode,
    selector: &str,
) -> Result<Statevector, Box<dyn std::error::Error>> {
    let dims = built
        .rep
        .qudit_shape
        .clone()
        .unwrap_or_else(|| vec![built.rep.dim]);
    if let Some(i) = selector.strip_prefix("codeword:") {
        let i: usize = i.parse()?;
        if i >= built.code.code_dim() {
            return Err(format!("codeword index {i} out of range").into());
        }
        Ok(Statevector::new(built.code.codeword(i).clone(), dims)?)
    } else if let Some(j) = selector.strip_prefix("basis:") {
        let j: usize = j.parse()?;
        if j >= built.rep.dim {
            return Err(format!("basis index {j} out of range").into());
        }
        Ok(Statevector::basis_state(j, dims))
    } else if let Some(seed) = selector.strip_prefix("random:") {
        let seed: u64 = seed.parse()?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Ok(Statevector::new(
            linalg::random_state(&mut rng, built.rep.dim),
            dims,
        )?)
    } else {
        Err(format!("unknown state selector '{selector}'").into())
    }
}

fn resolve_error(
    built: &crate::specfile::BuiltCode,
    word: &str,
) -> Result<CMat, Box<dyn std::error::Error>> {
    if let Some(m) = built.errors.get(word) {
        return Ok(m.clone());
    }
    let dims = built
        .rep
        .qudit_shape
        .clone()
        .unwrap_or_else(|| vec![built.rep.dim]);
    Ok(parse_error_word(word, &dims, built.rep.dim)?)
}

/// Group QFT for the families the CLI supports directly.
fn qft_for_group(
    group: &crate::groups::FiniteGroup,
) -> Result<GroupQft, Box<dyn std::error::Error>> {
    match group.family().clone() {
        FamilyTag::CyclicProduct(dims) => {
            let matrix = qft_abelian(&dims);
            let chars = crate::groups::character_table(group)?;
            let rows = chars
                .labels
                .iter()
                .map(|l| RowLabel::Irrep {
                    label: l.clone(),
                    i: 1,
                    j: 1,
                })
                .collect();
            Ok(GroupQft {
                matrix,
                labeling: crate::gqft::FourierLabeling::new(rows),
            })
        }
        FamilyTag::Dihedral(n) => Ok(qft_group(group, &dihedral_irreps(n)?)?),
        FamilyTag::Symmetric(3) => {
            // transport the dihedral irreps through the D_3 -> S_3 isomorphism
            let d3 = crate::groups::make_dihedral(3)?;
            let iso = crate::groups::find_isomorphism(&d3, group)
                .ok_or("no isomorphism found")?;
            let irreps: Vec<crate::gqft::IrrepMatrices> = dihedral_irreps(3)?
                .into_iter()
                .map(|ir| {
                    let mut mats = vec![linalg::identity(ir.dim); 6];
                    for (didx, m) in ir.matrices.iter().enumerate() {
                        mats[iso[didx]] = m.clone();
                    }
                    crate::gqft::IrrepMatrices {
                        label: if ir.label == "E1" {
                            "std".to_string()
                        } else {
                            ir.label
                        },
                        dim: ir.dim,
                        matrices: mats,
                    }
                })
                .collect();
            Ok(qft_group(group, &irreps)?)
        }
        other => Err(format!(
            "qft for family {other:?} needs explicit irreps; supported here: \
             cyclic products, dihedral, symmetric(3)"
        )
        .into()),
    }
}

fn cmd_syndrome(a: SyndromeArgs, out: &mut dyn Write) -> CliResult {
    let built = CodeSpecFile::from_path(&a.spec)?.build()?;
    let state = resolve_state(&built, &a.state)?;
    let error = resolve_error(&built, &a.error)?;
    let corrupted = state.apply(&error)?;
    let report = match a.path.as_str() {
        "direct" => syndrome_direct(&built.decomp, &corrupted)?,
        "circuit" => {
            let qft = qft_for_group(&built.group)?;
            let ancilla = built.group.order().next_power_of_two();
            let qft = if ancilla > built.group.order() {
                qft.pad_to(ancilla)?
            } else {
                qft
            };
            syndrome_circuit(&built.rep, &qft, &corrupted)?
        }
        "hadamard" => {
            let spec = built
                .stabilizer
                .as_ref()
                .ok_or("hadamard path needs a stabilizer spec")?;
            hadamard_test_syndrome(spec, &corrupted)?
        }
        other => return Err(format!("unknown path '{other}'").into()),
    };
    if a.csv {
        writeln!(out, "label,probability")?;
        for e in &report.entries {
            writeln!(out, "{},{:.12}", e.label, e.probability)?;
        }
        return Ok(0);
    }
    let mut v = Map::new();
    v.insert("schema".into(), json!(crate::specfile::SCHEMA_VERSION));
    v.insert("error".into(), json!(a.error));
    v.insert("state".into(), json!(a.state));
    v.insert("path".into(), json!(a.path));
    v.insert(
        "bose_test_probability".into(),
        json!(sig12(bose_test_probability(&built.code, &corrupted)?)),
    );
    v.insert("entries".into(), report_json(&report, true));
    if let Some(seed) = a.seed {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        v.insert("sampled".into(), json!(report.sample(&mut rng).label));
    }
    emit(out, &Value::Object(v))?;
    Ok(0)
}

fn labeling_json(labeling: &crate::gqft::FourierLabeling) -> Value {
    Value::Array(
        labeling
            .rows()
            .iter()
            .map(|r| match r {
                RowLabel::Irrep { label, i, j } => json!({"label": label, "i": i, "j": j}),
                RowLabel::Pad => json!("pad"),
            })
            .collect(),
    )
}

fn cmd_qft(a: QftArgs, out: &mut dyn Write) -> CliResult {
    let gspec: GroupSpec = serde_json::from_str(&a.group)?;
    let group = gspec.build()?;
    if a.circuit {
        let FamilyTag::Dihedral(n) = *group.family() else {
            return Err("--circuit is implemented for dihedral 2^m groups".into());
        };
        if !n.is_power_of_two() || n < 4 {
            return Err("--circuit needs a dihedral group with n = 2^m, m >= 2".into());
        }
        let m = n.trailing_zeros() as usize;
        let circ = qft_dihedral_pow2_circuit(m)?;
        let gates: Vec<Value> = circ
            .gates
            .gates
            .iter()
            .map(|g| {
                json!({
                    "name": g.name,
                    "targets": g.targets,
                    "controls": g.controls.iter().map(|&(w, v)| json!([w, v])).collect::<Vec<_>>(),
                    "matrix": mat_json(&g.matrix),
                })
            })
            .collect();
        let mut v = Map::new();
        v.insert("schema".into(), json!(crate::specfile::SCHEMA_VERSION));
        v.insert("wires".into(), json!(circ.gates.wires));
        v.insert("gates".into(), json!(gates));
        v.insert(
            "column_of_element".into(),
            json!(circ.column_of_element),
        );
        if a.labeling {
            v.insert("labeling".into(), labeling_json(&circ.labeling));
        }
        emit(out, &Value::Object(v))?;
        return Ok(0);
    }
    let mut qft = qft_for_group(&group)?;
    if let Some(p) = a.pad {
        qft = qft.pad_to(p)?;
    }
    let mut v = Map::new();
    v.insert("schema".into(), json!(crate::specfile::SCHEMA_VERSION));
    v.insert("dim".into(), json!(qft.matrix.nrows()));
    v.insert("matrix".into(), mat_json(&qft.matrix));
    if a.labeling {
        v.insert("labeling".into(), labeling_json(&qft.labeling));
    }
    emit(out, &Value::Object(v))?;
    Ok(0)
}

fn cmd_kl_check(a: KlArgs, out: &mut dyn Write) -> CliResult {
    let built = CodeSpecFile::from_path(&a.spec)?.build()?;
    let names: Vec<&str> = a.errors.split(',').map(str::trim).collect();
    let mut errors = Vec::new();
    for name in &names {
        errors.push(resolve_error(&built, name)?);
    }
    let report = kl_check(&built.code, &errors, a.tol)?;
    let pairs: Vec<Value> = report
        .pairs
        .iter()
        .map(|p| {
            let (status, detail) = match &p.status {
                KlStatus::Scalar(c) => ("scalar", c_json(*c)),
                KlStatus::Violation(r) => ("violation", json!(sig12(*r))),
            };
            json!({
                "left": names[p.left],
                "right": names[p.right],
                "status": status,
                "value": detail,
            })
        })
        .collect();
    let v = json!({
        "schema": crate::specfile::SCHEMA_VERSION,
        "pass": report.pass,
        "tol": a.tol,
        "pairs": pairs,
    });
    emit(out, &v)?;
    Ok(if report.pass { 0 } else { 1 })
}

fn generating_set(kind: &str, n_qubits: usize) -> Result<Vec<NamedOperator>, String> {
    match kind {
        "xyz" => Ok(pauli_generators(n_qubits, true)),
        "xz" => Ok(pauli_generators(n_qubits, false)),
        "x" => Ok(pauli_generators(n_qubits, false)
            .into_iter()
            .filter(|g| g.name.starts_with('X'))
            .collect()),
        other => Err(format!("unknown generating set '{other}'")),
    }
}

fn cmd_distance(a: DistanceArgs, out: &mut dyn Write) -> CliResult {
    let built = CodeSpecFile::from_path(&a.spec)?.build()?;
    let shape = built
        .rep
        .qudit_shape
        .clone()
        .ok_or("distance search needs a qudit register")?;
    if shape.iter().any(|&d| d != 2) {
        return Err("distance search ships Pauli generating sets for qubits only".into());
    }
    let gens = generating_set(&a.gens, shape.len())?;
    let mode = if a.phase_insensitive {
        PhaseMode::UpToPhase
    } else {
        PhaseMode::Exact
    };
    let result = g_distance(&built.code, &gens, a.wmax, mode)?;
    let v = match result {
        Ok((d, op)) => json!({
            "schema": crate::specfile::SCHEMA_VERSION,
            "distance": d,
            "witness": op.word,
            "wmax": a.wmax,
        }),
        Err(cap) => json!({
            "schema": crate::specfile::SCHEMA_VERSION,
            "lower_bound_exclusive": cap,
            "wmax": a.wmax,
        }),
    };
    emit(out, &v)?;
    Ok(0)
}

fn cmd_cnot_demo(a: CnotArgs, out: &mut dyn Write) -> CliResult {
    let qubit = if a.physical {
        let rep = std::sync::Arc::new(crate::reps::s3_faithful4_rep()?);
        let code = crate::isotypic::build_code(&rep)?;
        LogicalQubit::physical(&code, faithful4_logical_x(), faithful4_logical_z())?
    } else {
        LogicalQubit::bare()
    };
    let branches: Vec<(i8, i8, i8)> = match &a.outcomes {
        Some(s) => {
            let parts: Vec<i8> = s
                .split(',')
                .map(|t| match t.trim() {
                    "+1" | "1" => Ok(1i8),
                    "-1" => Ok(-1i8),
                    other => Err(format!("bad outcome '{other}'")),
                })
                .collect::<Result<_, _>>()?;
            if parts.len() != 3 {
                return Err("need exactly three outcomes".into());
            }
            vec![(parts[0], parts[1], parts[2])]
        }
        None => {
            let mut all = Vec::new();
            for a_ in [1i8, -1] {
                for b in [1i8, -1] {
                    for c in [1i8, -1] {
                        all.push((a_, b, c));
                    }
                }
            }
            all
        }
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed);
    let mut worst: f64 = 1.0;
    let mut rows = Vec::new();
    for _ in 0..a.trials {
        let amps = linalg::random_state(&mut rng, 4);
        let input = [amps[0], amps[1], amps[2], amps[3]];
        for &(x, y, z) in &branches {
            match cnot_protocol(&qubit, &input, (x, y, z)) {
                Ok(res) => {
                    worst = worst.min(res.fidelity);
                    rows.push((x, y, z, res.fidelity, res.correction_xt, res.correction_zc));
                }
                Err(crate::verify::VerifyError::BranchUnreachable { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    let pass = worst >= 1.0 - 1e-9;
    let branch_summary: Vec<Value> = branches
        .iter()
        .map(|&(x, y, z)| {
            let fids: Vec<f64> = rows
                .iter()
                .filter(|r| (r.0, r.1, r.2) == (x, y, z))
                .map(|r| r.3)
                .collect();
            let min = fids.iter().cloned().fold(f64::INFINITY, f64::min);
            let corr = rows
                .iter()
                .find(|r| (r.0, r.1, r.2) == (x, y, z))
                .map(|r| match (r.4, r.5) {
                    (false, false) => "-",
                    (true, false) => "X_T",
                    (false, true) => "Z_C",
                    (true, true) => "X_T Z_C",
                })
                .unwrap_or("-");
            json!({
                "outcomes": [x, y, z],
                "correction": corr,
                "reached": fids.len(),
                "min_fidelity": if fids.is_empty() { Value::Null } else { json!(min) },
            })
        })
        .collect();
    let v = json!({
        "schema": crate::specfile::SCHEMA_VERSION,
        "mode": if a.physical { "physical" } else { "abstract" },
        "trials": a.trials,
        "pass": pass,
        "worst_fidelity": worst,
        "branches": branch_summary,
    });
    emit(out, &v)?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_span_check(a: SpanArgs, out: &mut dyn Write) -> CliResult {
    let (gens, what): (Vec<CMat>, &str) = if a.demo || a.spec.is_none() {
        let rep = crate::reps::dihedral_vertex_edge_rep(4)?;
        let x = crate::stabilizer::sigma(2, 1, 0);
        let z = crate::stabilizer::sigma(2, 0, 1);
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
        gens.push(linalg::identity(8).mapv(|v| v * Complex64::new(0.0, 1.0)));
        (gens, "dihedral-4 full instance")
    } else {
        let built = CodeSpecFile::from_path(a.spec.as_ref().unwrap())?.build()?;
        (built.rep.matrices.clone(), "representation image")
    };
    let dim = gens[0].nrows();
    let span = algebra_span_dimension(&gens)?;
    let full = span == dim * dim;
    let v = json!({
        "schema": crate::specfile::SCHEMA_VERSION,
        "generators": what,
        "matrix_dim": dim,
        "span_dim": span,
        "full_algebra": full,
    });
    emit(out, &v)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// Demos
// ---------------------------------------------------------------------------

fn builtin_spec(which: &str, n: usize) -> Result<String, String> {
    let text = match which {
        "s3" => r#"{
            "schema": 1,
            "group": {"family": "symmetric", "n": 3},
            "rep": {"kind": "tensor_permutation", "local_dim": 2}
        }"#
        .to_string(),
        "s3alt" => r#"{
            "schema": 1,
            "group": {"family": "symmetric", "n": 3},
            "rep": {"kind": "s3_faithful4"}
        }"#
        .to_string(),
        "d3" => r#"{
            "schema": 1,
            "group": {"family": "dihedral", "n": 3},
            "rep": {"kind": "dihedral_vertex_edge"}
        }"#
        .to_string(),
        "dn" => format!(
            r#"{{
            "schema": 1,
            "group": {{"family": "dihedral", "n": {n}}},
            "rep": {{"kind": "dihedral_vertex_edge"}}
        }}"#
        ),
        "repetition" => r#"{
            "schema": 1,
            "stabilizer": {"dims": [2, 2, 2], "generators": ["Z0 Z1", "Z1 Z2"]}
        }"#
        .to_string(),
        "qudit" => r#"{
            "schema": 1,
            "stabilizer": {"dims": [3, 3], "generators": ["z[0] z[1]^2"]}
        }"#
        .to_string(),
        "mixed" => r#"{
            "schema": 1,
            "stabilizer": {"dims": [2, 3], "generators": ["Z0", "z[1]"]}
        }"#
        .to_string(),
        other => return Err(format!("unknown demo '{other}'")),
    };
    Ok(text)
}

fn cmd_demo(a: DemoArgs, out: &mut dyn Write) -> CliResult {
    let text = builtin_spec(&a.which, a.n)?;
    let built = CodeSpecFile::from_str(&text)?.build()?;
    let mut v = Map::new();
    v.insert("schema".into(), json!(crate::specfile::SCHEMA_VERSION));
    v.insert("demo".into(), json!(a.which));
    v.insert("dim".into(), json!(built.rep.dim));
    v.insert("code_dim".into(), json!(built.code.code_dim()));
    v.insert("k".into(), json!(built.code.k));
    let mults: Map<String, Value> = built
        .decomp
        .multiplicities()
        .into_iter()
        .map(|(l, m)| (l, json!(m)))
        .collect();
    v.insert("multiplicities".into(), json!(mults));
    match a.which.as_str() {
        "s3" => {
            // X_0 on |000>
            let dims = vec![2, 2, 2];
            let st = Statevector::basis_state(0, dims.clone());
            let x0 = parse_error_word("X0", &dims, 8)?;
            let corrupted = st.apply(&x0)?;
            let report = syndrome_direct(&built.decomp, &corrupted)?;
            v.insert("error".into(), json!("X0"));
            v.insert("entries".into(), report_json(&report, true));
        }
        "s3alt" => {
            let (p_std, fid) = correctable_demo_ive(
                Complex64::new(0.6, 0.0),
                Complex64::new(0.0, 0.8),
            )?;
            v.insert("correctable_error".into(), json!("U:Z0 X1 CNOT10 H1"));
            v.insert("p_std".into(), json!(sig12(p_std)));
            v.insert("recovery_fidelity".into(), json!(sig12(fid)));
            let dims = vec![2, 2];
            let st = Statevector::basis_state(0, dims.clone());
            let x1 = parse_error_word("X1", &dims, 4)?;
            let report = syndrome_direct(&built.decomp, &st.apply(&x1)?)?;
            v.insert("x1_entries".into(), report_json(&report, false));
        }
        "d3" => {
            let qft = qft_for_group(&built.group)?.pad_to(8)?;
            v.insert("qft_matrix".into(), mat_json(&qft.matrix));
            let prep = d3_prep_circuit();
            let zero = Statevector::basis_state(0, vec![2, 2, 2]);
            let prepared = prep.apply(&zero.amplitudes);
            let target = plus_state(&built.group, 8)?;
            let dist = linalg::vec_max_abs_diff(&prepared, &target);
            v.insert("prep_state_error".into(), json!(sig12(dist)));
        }
        "dn" => {
            let labels_used = built
                .decomp
                .components
                .iter()
                .filter(|c| c.multiplicity > 0)
                .count();
            v.insert("isotypic_components".into(), json!(labels_used));
            v.insert("nontrivial_syndromes".into(), json!(labels_used - 1));
        }
        "repetition" => {
            let spec = built.stabilizer.as_ref().unwrap();
            let mut table = Vec::new();
            for word in ["X0", "X1", "X2", "Z0"] {
                let p = PauliWord::parse(word, &spec.dims)?;
                let ell = commutation_phases(spec, &p)?;
                table.push(json!({
                    "error": word,
                    "syndrome": crate::stabilizer::syndrome_label(&ell),
                }));
            }
            v.insert("syndrome_table".into(), json!(table));
        }
        "qudit" | "mixed" => {
            let spec = built.stabilizer.as_ref().unwrap();
            let mixed = mixed_dimension_code(spec)?;
            let table: Vec<Value> = mixed
                .predicted
                .iter()
                .map(|(text, _, ell)| {
                    json!({
                        "error": text,
                        "syndrome": crate::stabilizer::syndrome_label(ell),
                    })
                })
                .collect();
            v.insert("label_count".into(), json!(mixed.label_count));
            v.insert("syndrome_table".into(), json!(table));
        }
        _ => {}
    }
    emit(out, &Value::Object(v))?;
    Ok(0)
}
