//! Dense complex linear algebra helpers shared by every module.
//!
//! Everything operates on `ndarray` arrays of `Complex64` at desk scale
//! (dimensions up to a few thousand), so the routines favour robustness and
//! determinism over asymptotic speed. The Hermitian eigensolver embeds the
//! matrix into a real symmetric one of twice the size and runs cyclic Jacobi
//! sweeps, which avoids any external LAPACK backend.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;

pub type CMat = Array2<Complex64>;
pub type CVec = Array1<Complex64>;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn zeros(n: usize, m: usize) -> CMat {
    Array2::zeros((n, m))
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.dim(), b.dim(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_max_abs_diff(a: &CVec, b: &CVec) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `<a|b>` with the left argument conjugated.
pub fn inner(a: &CVec, b: &CVec) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// ‖m†m − I‖_max.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    if n != m.ncols() {
        return f64::INFINITY;
    }
    max_abs_diff(&dagger(m).dot(m), &identity(n))
}

pub fn is_unitary(m: &CMat, tol: f64) -> bool {
    unitarity_defect(m) <= tol
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == C_ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a list, first factor most significant.
pub fn kron_list(mats: &[CMat]) -> CMat {
    let mut out = identity(1);
    for m in mats {
        out = kron(&out, m);
    }
    out
}

/// Embeds `op` acting on `site` of a qudit register with the given local
/// dimensions. Site 0 is the least significant digit of the basis index.
pub fn op_on_site(op: &CMat, site: usize, dims: &[usize]) -> CMat {
    assert_eq!(op.nrows(), dims[site]);
    let lower: usize = dims[..site].iter().product();
    let upper: usize = dims[site + 1..].iter().product();
    kron_list(&[identity(upper), op.clone(), identity(lower)])
}

pub fn matrix_power(m: &CMat, k: usize) -> CMat {
    let mut out = identity(m.nrows());
    for _ in 0..k {
        out = out.dot(m);
    }
    out
}

/// Distance between unitaries modulo a global phase:
/// min over φ of ‖a − e^{iφ}b‖_max, with the optimal phase from tr(b†a).
pub fn phase_insensitive_distance(a: &CMat, b: &CMat) -> f64 {
    let t: Complex64 = dagger(b).dot(a).diag().iter().sum();
    let phase = if t.norm() > 1e-14 {
        t / t.norm()
    } else {
        C_ONE
    };
    let shifted = b.mapv(|z| z * phase);
    max_abs_diff(a, &shifted)
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
/// Returns (eigenvalues, eigenvectors as columns), unordered.
fn jacobi_symmetric(a: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = Array2::<f64>::eye(n);
    let off = |a: &Array2<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[(i, j)] * a[(i, j)];
            }
        }
        s.sqrt()
    };
    let scale = a.iter().map(|x| x.abs()).fold(1e-300, f64::max);
    for _sweep in 0..100 {
        if off(&a) <= 1e-14 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let eigs = (0..n).map(|i| a[(i, i)]).collect();
    (eigs, v)
}

/// Eigendecomposition of a Hermitian matrix via the real symmetric embedding
/// [[Re, -Im], [Im, Re]]. Returns eigenpairs sorted by ascending eigenvalue;
/// eigenvectors are orthonormal columns of the second component.
pub fn hermitian_eig(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    assert_eq!(n, h.ncols());
    let herm_defect = max_abs_diff(h, &dagger(h));
    assert!(
        herm_defect <= 1e-8 * (1.0 + max_abs(h)),
        "hermitian_eig: input not Hermitian (defect {herm_defect:.3e})"
    );
    let mut m = Array2::<f64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            m[(i, j)] = z.re;
            m[(i, j + n)] = -z.im;
            m[(i + n, j)] = z.im;
            m[(i + n, j + n)] = z.re;
        }
    }
    let (eigs, vecs) = jacobi_symmetric(&m);
    // Each complex eigenvector appears twice (as (u, v) and (-v, u)); keep an
    // orthonormal complex set of size n by Gram-Schmidt within the doubled list.
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());
    let mut out_vals = Vec::with_capacity(n);
    let mut out_vecs: Vec<CVec> = Vec::with_capacity(n);
    for &col in &order {
        if out_vecs.len() == n {
            break;
        }
        let mut z: CVec = Array1::from_iter(
            (0..n).map(|i| Complex64::new(vecs[(i, col)], vecs[(i + n, col)])),
        );
        for prev in &out_vecs {
            let c = inner(prev, &z);
            z = &z - &prev.mapv(|p| p * c);
        }
        let nz = vec_norm(&z);
        if nz > 1e-8 {
            out_vals.push(eigs[col]);
            out_vecs.push(z.mapv(|x| x / nz));
        }
    }
    assert_eq!(out_vecs.len(), n, "hermitian_eig: lost eigenvectors");
    let mut vmat = zeros(n, n);
    for (c, v) in out_vecs.iter().enumerate() {
        for r in 0..n {
            vmat[(r, c)] = v[r];
        }
    }
    (out_vals, vmat)
}

/// Rotates `v` by a global phase so its first entry with |amp| > tol is real
/// positive.
pub fn canonical_phase(v: &CVec, tol: f64) -> CVec {
    for z in v.iter() {
        if z.norm() > tol {
            let phase = z.conj() / z.norm();
            return v.mapv(|x| x * phase);
        }
    }
    v.clone()
}

/// Haar-ish random unitary from Gram-Schmidt on complex Gaussian columns.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let mut cols: Vec<CVec> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: CVec =
            Array1::from_iter((0..n).map(|_| Complex64::new(gauss(rng), gauss(rng))));
        for prev in &cols {
            let c = inner(prev, &v);
            v = &v - &prev.mapv(|p| p * c);
        }
        let nv = vec_norm(&v);
        if nv > 1e-8 {
            cols.push(v.mapv(|x| x / nv));
        }
    }
    let mut m = zeros(n, n);
    for (c, v) in cols.iter().enumerate() {
        for r in 0..n {
            m[(r, c)] = v[r];
        }
    }
    m
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> CVec {
    loop {
        let v: CVec =
            Array1::from_iter((0..n).map(|_| Complex64::new(gauss(rng), gauss(rng))));
        let nv = vec_norm(&v);
        if nv > 1e-6 {
            return v.mapv(|x| x / nv);
        }
    }
}

fn gauss<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; rand_distr is overkill for this one use.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
