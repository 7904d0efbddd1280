//! Generalized Pauli machinery and the adapters that realize qubit, qudit,
//! and mixed-dimension stabilizer codes as symmetry codes.
//!
//! Pauli words track their phases symbolically (as exact rational multiples
//! of 2π), so commutation phases are integers by construction and never pass
//! through floating point.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::extract::{self, Statevector, SyndromeEntry, SyndromePath, SyndromeReport};
use crate::groups::make_cyclic_product;
use crate::isotypic::{build_code, IsotypicError, SymmetryCode};
use crate::linalg::{self, identity, kron_list, op_on_site, zeros, CMat};
use crate::reps::{stabilizer_rep, RepError, UnitaryRep};

#[derive(Debug, Error)]
pub enum StabilizerError {
    #[error("parse error in '{word}': {reason}")]
    Parse { word: String, reason: String },
    #[error("site {site} out of range for {n_sites} sites")]
    SiteRange { site: usize, n_sites: usize },
    #[error("generators {i} and {j} do not commute (phase {num}/{den} of 2π)")]
    NonCommuting {
        i: usize,
        j: usize,
        num: i64,
        den: i64,
    },
    #[error("generators are dependent: group order {found} < expected {expected}")]
    Dependent { found: usize, expected: usize },
    #[error("representation error: {0}")]
    Rep(#[from] RepError),
    #[error("code construction error: {0}")]
    Isotypic(#[from] IsotypicError),
    #[error("extraction error: {0}")]
    Extract(#[from] extract::ExtractError),
    #[error("{0}")]
    Invalid(String),
}

/// Exact phase e^{2πi·num/den}, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phase {
    pub num: i64,
    pub den: i64,
}

impl Phase {
    pub fn zero() -> Self {
        Phase { num: 0, den: 1 }
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0);
        let g = gcd(num.rem_euclid(den), den);
        let (num, den) = (num.rem_euclid(den) / g, den / g);
        Phase { num, den }
    }

    pub fn add(self, other: Phase) -> Phase {
        Phase::new(self.num * other.den + other.num * self.den, self.den * other.den)
    }

    pub fn value(self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.num as f64 / self.den as f64)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs().max(1), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A word Π_i X_i^{a_i} Z_i^{b_i} with a global phase.
///
/// Qubit `Y` parses as the Hermitian Pauli (phase i times XZ), so `Y` words
/// square to the identity like the textbook operator.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliWord {
    /// site -> (x exponent, z exponent)
    pub ops: BTreeMap<usize, (usize, usize)>,
    pub phase: Phase,
}

impl PauliWord {
    pub fn identity() -> Self {
        PauliWord {
            ops: BTreeMap::new(),
            phase: Phase::zero(),
        }
    }

    /// Parses words like "X0 Z1 Z2", "Y1", or the qudit form
    /// "x[0]^2 z[1]" (exponents default to 1). "I" tokens are allowed.
    pub fn parse(word: &str, dims: &[usize]) -> Result<Self, StabilizerError> {
        let mut out = PauliWord::identity();
        for token in word.split_whitespace() {
            if token.eq_ignore_ascii_case("I") {
                continue;
            }
            let (kind, site, exp) = Self::parse_token(token, word)?;
            if site >= dims.len() {
                return Err(StabilizerError::SiteRange {
                    site,
                    n_sites: dims.len(),
                });
            }
            let d = dims[site];
            let entry = out.ops.entry(site).or_insert((0, 0));
            match kind {
                'x' => entry.0 = (entry.0 + exp) % d,
                'z' => entry.1 = (entry.1 + exp) % d,
                'y' => {
                    if d != 2 {
                        return Err(StabilizerError::Parse {
                            word: word.into(),
                            reason: format!("Y only defined on qubit sites, site {site} has d={d}"),
                        });
                    }
                    // Y = i X Z
                    entry.0 = (entry.0 + exp) % 2;
                    entry.1 = (entry.1 + exp) % 2;
                    out.phase = out.phase.add(Phase::new(exp as i64, 4));
                }
                _ => unreachable!(),
            }
            // discard vanished site entries
            if *entry == (0, 0) {
                out.ops.remove(&site);
            }
        }
        Ok(out)
    }

    fn parse_token(token: &str, word: &str) -> Result<(char, usize, usize), StabilizerError> {
        let err = |reason: &str| StabilizerError::Parse {
            word: word.into(),
            reason: reason.into(),
        };
        let lower = token.to_ascii_lowercase();
        let kind = lower.chars().next().ok_or_else(|| err("empty token"))?;
        if !matches!(kind, 'x' | 'y' | 'z') {
            return Err(err(&format!("unknown operator '{token}'")));
        }
        let rest = &lower[1..];
        if let Some(stripped) = rest.strip_prefix('[') {
            // qudit form x[site]^exp
            let close = stripped.find(']').ok_or_else(|| err("missing ']'"))?;
            let site: usize = stripped[..close]
                .parse()
                .map_err(|_| err("bad site index"))?;
            let tail = &stripped[close + 1..];
            let exp = if tail.is_empty() {
                1
            } else if let Some(e) = tail.strip_prefix('^') {
                e.parse().map_err(|_| err("bad exponent"))?
            } else {
                return Err(err(&format!("unexpected suffix '{tail}'")));
            };
            Ok((kind, site, exp))
        } else {
            let site: usize = rest.parse().map_err(|_| err("bad site index"))?;
            Ok((kind, site, 1))
        }
    }

    /// Dense matrix realization on the given register.
    pub fn to_matrix(&self, dims: &[usize]) -> CMat {
        let total: usize = dims.iter().product();
        let mut m = identity(total).mapv(|z| z * self.phase.value());
        for (&site, &(a, b)) in &self.ops {
            let local = sigma(dims[site], a, b);
            m = op_on_site(&local, site, dims).dot(&m);
        }
        m
    }

    /// Exact commutation phase: self · other = e^{2πi·phase} other · self.
    pub fn commutation_with(&self, other: &PauliWord, dims: &[usize]) -> Phase {
        // per site: X^a Z^b X^c Z^d = ω^{bc} X^{a+c} Z^{b+d};
        // swapping order gives ω^{da}, so the relative phase is ω^{bc - ad}.
        let mut phase = Phase::zero();
        for (&site, &(a, b)) in &self.ops {
            if let Some(&(c, d)) = other.ops.get(&site) {
                let dd = dims[site] as i64;
                let delta = (b as i64 * c as i64 - a as i64 * d as i64).rem_euclid(dd);
                phase = phase.add(Phase::new(delta, dd));
            }
        }
        phase
    }

    /// Order of the word's matrix realization (smallest k with M^k = I),
    /// accounting for the tracked phase.
    pub fn order(&self, dims: &[usize]) -> usize {
        let m = self.to_matrix(dims);
        let mut acc = m.clone();
        let total: usize = dims.iter().product();
        for k in 1..=(4 * dims.iter().map(|&d| d * d).product::<usize>()) {
            if linalg::max_abs_diff(&acc, &identity(total)) < 1e-9 {
                return k;
            }
            acc = acc.dot(&m);
        }
        panic!("order search exhausted");
    }
}

/// σ_{k,j} = Σ_m ω^{jm} |m+k⟩⟨m|: the clock-and-shift family on one qudit.
/// σ_{1,0} is the shift X, σ_{0,1} the clock Z.
pub fn sigma(d: usize, k: usize, j: usize) -> CMat {
    assert!(d >= 2);
    let mut m = zeros(d, d);
    for col in 0..d {
        let phase = 2.0 * PI * ((j * col) % d) as f64 / d as f64;
        m[((col + k) % d, col)] = Complex64::from_polar(1.0, phase);
    }
    m
}

/// A stabilizer specification: site dimensions plus commuting generator words.
#[derive(Debug, Clone)]
pub struct StabilizerSpec {
    pub dims: Vec<usize>,
    pub generators: Vec<PauliWord>,
    pub orders: Vec<usize>,
}

impl StabilizerSpec {
    /// Parses generator strings and validates commutation, non-scalarity, and
    /// independence (the generated group has the full expected order).
    pub fn new(dims: Vec<usize>, words: &[&str]) -> Result<Self, StabilizerError> {
        let generators: Vec<PauliWord> = words
            .iter()
            .map(|w| PauliWord::parse(w, &dims))
            .collect::<Result<_, _>>()?;
        Self::from_words(dims, generators)
    }

    pub fn from_words(
        dims: Vec<usize>,
        generators: Vec<PauliWord>,
    ) -> Result<Self, StabilizerError> {
        if generators.is_empty() {
            return Err(StabilizerError::Invalid("no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.ops.is_empty() {
                return Err(StabilizerError::Invalid(format!(
                    "generator {i} is a scalar"
                )));
            }
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                let ph = generators[i].commutation_with(&generators[j], &dims);
                if !ph.is_zero() {
                    return Err(StabilizerError::NonCommuting {
                        i,
                        j,
                        num: ph.num,
                        den: ph.den,
                    });
                }
            }
        }
        let orders: Vec<usize> = generators.iter().map(|g| g.order(&dims)).collect();
        // Independence: enumerate the generated image and compare its size to
        // the direct product of the generator orders.
        let expected: usize = orders.iter().product();
        let total: usize = dims.iter().product();
        let mut seen: Vec<CMat> = Vec::new();
        let mut count = 0usize;
        let mut indices = vec![0usize; generators.len()];
        loop {
            let mut m = identity(total);
            for (g, (&k, word)) in indices.iter().zip(&generators).enumerate() {
                let _ = g;
                for _ in 0..k {
                    m = word.to_matrix(&dims).dot(&m);
                }
            }
            if !seen.iter().any(|s| linalg::max_abs_diff(s, &m) < 1e-9) {
                seen.push(m);
                count += 1;
            }
            // mixed-radix advance over exponent tuples
            let mut i = 0;
            loop {
                if i == indices.len() {
                    break;
                }
                indices[i] += 1;
                if indices[i] < orders[i] {
                    break;
                }
                indices[i] = 0;
                i += 1;
            }
            if i == indices.len() {
                break;
            }
        }
        if count != expected {
            return Err(StabilizerError::Dependent {
                found: count,
                expected,
            });
        }
        Ok(StabilizerSpec {
            dims,
            generators,
            orders,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn generator_matrices(&self) -> Vec<CMat> {
        self.generators
            .iter()
            .map(|g| g.to_matrix(&self.dims))
            .collect()
    }
}

/// Builds the symmetry code of a stabilizer specification: the cyclic-product
/// group Z_{o_1} + … + Z_{o_n} represented by W(k) = Π S_i^{k_i}.
pub fn build_stabilizer_code(
    spec: &StabilizerSpec,
) -> Result<(Arc<UnitaryRep>, SymmetryCode), StabilizerError> {
    let group = Arc::new(make_cyclic_product(&spec.orders).map_err(RepError::Group)?);
    let rep = Arc::new(
        stabilizer_rep(&group, &spec.generator_matrices(), &spec.orders)?
            .with_qudit_shape(spec.dims.clone())?,
    );
    let code = build_code(&rep)?;
    // Uniform-dimension sanity: dim Sym = d^{N-n} when every site has the
    // same dimension and every generator has full order d.
    let d0 = spec.dims[0];
    if spec.dims.iter().all(|&d| d == d0) && spec.orders.iter().all(|&o| o == d0) {
        let expected = d0.pow((spec.n_sites() - spec.generators.len()) as u32);
        if code.code_dim() != expected {
            return Err(StabilizerError::Invalid(format!(
                "code dimension {} != d^(N-n) = {expected}",
                code.code_dim()
            )));
        }
    }
    Ok((rep, code))
}

/// Commutation phases of an error word against every generator:
/// S_i E = ω_{o_i}^{ℓ_i} E S_i. This is the syndrome the isotypic measurement
/// will produce with certainty.
pub fn commutation_phases(
    spec: &StabilizerSpec,
    error: &PauliWord,
) -> Result<Vec<usize>, StabilizerError> {
    let mut out = Vec::with_capacity(spec.generators.len());
    for (gen, &order) in spec.generators.iter().zip(&spec.orders) {
        let ph = gen.commutation_with(error, &spec.dims);
        // ℓ_i/o_i must equal the rational phase
        let num = ph.num * order as i64;
        if num % ph.den != 0 {
            return Err(StabilizerError::Invalid(format!(
                "phase {}/{} is not a multiple of 1/{order}",
                ph.num, ph.den
            )));
        }
        out.push((num / ph.den).rem_euclid(order as i64) as usize);
    }
    Ok(out)
}

/// Numeric commutation check for an arbitrary unitary error against arbitrary
/// generator matrices. Returns None when the covariance relation
/// S E = ω^ℓ E S has no solution (a legal outcome, not an error).
pub fn commutation_phases_matrix(
    generators: &[CMat],
    orders: &[usize],
    error: &CMat,
) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(generators.len());
    for (s, &order) in generators.iter().zip(orders) {
        let se = s.dot(error);
        let es = error.dot(s);
        // se = φ es for a scalar φ?
        let num: Complex64 = es
            .iter()
            .zip(se.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let den: f64 = es.iter().map(|a| a.norm_sqr()).sum();
        if den < 1e-12 {
            return None;
        }
        let phi = num / den;
        let defect = linalg::max_abs_diff(&se, &es.mapv(|z| z * phi));
        if defect > 1e-8 {
            return None;
        }
        let ell = (phi.arg() / (2.0 * PI) * order as f64).round();
        let check = Complex64::from_polar(1.0, 2.0 * PI * ell / order as f64);
        if (phi - check).norm() > 1e-8 {
            return None;
        }
        out.push((ell as i64).rem_euclid(order as i64) as usize);
    }
    Some(out)
}

/// Label string for a syndrome tuple, matching the cyclic-product character
/// table labels ("ℓ_0,ℓ_1,…").
pub fn syndrome_label(ell: &[usize]) -> String {
    ell.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Simulates the textbook qubit syndrome circuit: one ancilla qubit per
/// generator, H, controlled-S_i, H, measure. Returns the exact distribution
/// over outcomes j ∈ Z_2^n together with post-measurement data states.
pub fn hadamard_test_syndrome(
    spec: &StabilizerSpec,
    state: &Statevector,
) -> Result<SyndromeReport, StabilizerError> {
    if spec.dims.iter().any(|&d| d != 2) || spec.orders.iter().any(|&o| o != 2) {
        return Err(StabilizerError::Invalid(
            "hadamard test path requires qubit generators of order 2".into(),
        ));
    }
    let dim: usize = spec.dims.iter().product();
    if state.dim() != dim {
        return Err(StabilizerError::Invalid(format!(
            "state dimension {} != {dim}",
            state.dim()
        )));
    }
    let n = spec.generators.len();
    let a_dim = 1usize << n;
    if dim * a_dim > extract::CIRCUIT_STATE_CAP {
        return Err(StabilizerError::Invalid("joint state exceeds cap".into()));
    }
    let gens = spec.generator_matrices();
    // W(k) for every ancilla pattern k.
    let mut w = Vec::with_capacity(a_dim);
    for k in 0..a_dim {
        let mut m = identity(dim);
        for (i, gmat) in gens.iter().enumerate() {
            if k >> i & 1 == 1 {
                m = gmat.dot(&m);
            }
        }
        w.push(m);
    }
    // After H^{UL}n the ancilla is uniform; controlled-S ladder applies W(k)
    // on branch k; the closing H^{UL}n mixes branches.
    let mut joint = zeros(dim, a_dim);
    let scale = 1.0 / (a_dim as f64).sqrt();
    for k in 0..a_dim {
        let v = w[k].dot(&state.amplitudes);
        for d in 0..dim {
            joint[(d, k)] = v[d] * scale;
        }
    }
    let h = {
        let s = 1.0 / 2f64.sqrt();
        let h1 = ndarray::array![
            [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)]
        ];
        kron_list(&vec![h1; n])
    };
    let fin = joint.dot(&h.t());
    let mut entries = Vec::with_capacity(a_dim);
    for j in 0..a_dim {
        let p: f64 = fin.column(j).iter().map(|z| z.norm_sqr()).sum();
        let bits: Vec<usize> = (0..n).map(|i| j >> i & 1).collect();
        let label = syndrome_label(&bits);
        let post = if p >= extract::P_FLOOR {
            let amps = fin.column(j).to_owned().mapv(|z| z / p.sqrt());
            Some(Statevector {
                amplitudes: amps,
                dims: state.dims.clone(),
            })
        } else {
            None
        };
        entries.push(SyndromeEntry {
            label,
            probability: p,
            post_state: post,
        });
    }
    Ok(SyndromeReport {
        entries,
        path: SyndromePath::Circuit,
    })
}

/// Predicted deterministic syndromes for all single-site generalized Pauli
/// errors of a code with distinct site dimensions.
pub struct MixedDimensionCode {
    pub rep: Arc<UnitaryRep>,
    pub code: SymmetryCode,
    /// (error word text, error, predicted syndrome tuple)
    pub predicted: Vec<(String, PauliWord, Vec<usize>)>,
    /// Number of syndrome labels the group distinguishes (d_1⋯d_n), counting
    /// the trivial all-zeros label.
    pub label_count: usize,
}

/// Builds a mixed-dimension stabilizer code and tabulates the predicted
/// single-site error syndromes.
pub fn mixed_dimension_code(
    spec: &StabilizerSpec,
) -> Result<MixedDimensionCode, StabilizerError> {
    let (rep, code) = build_stabilizer_code(spec)?;
    let mut predicted = Vec::new();
    for site in 0..spec.n_sites() {
        let d = spec.dims[site];
        for a in 0..d {
            for b in 0..d {
                if a == 0 && b == 0 {
                    continue;
                }
                let mut word = PauliWord::identity();
                word.ops.insert(site, (a, b));
                let ell = commutation_phases(spec, &word)?;
                let text = format!("x[{site}]^{a} z[{site}]^{b}");
                predicted.push((text, word, ell));
            }
        }
    }
    let label_count: usize = spec.orders.iter().product();
    Ok(MixedDimensionCode {
        rep,
        code,
        predicted,
        label_count,
    })
}
