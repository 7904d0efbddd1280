//! Finite groups as dense Cayley tables, plus character tables.
//!
//! Groups stay small (the enumeration cap defaults to 4096 elements), so
//! everything is stored explicitly: the full multiplication table, inverses,
//! and brute-forced conjugacy classes. Element enumeration per family is
//! canonical and documented on each constructor, because downstream Fourier
//! transforms and golden tests depend on it byte for byte.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{hermitian_eig, CMat, CVec};

/// Default enumeration cap on |G|.
pub const DEFAULT_GROUP_CAP: usize = 4096;
/// The numeric character-table path diagonalizes |G|x|G| matrices; cap it.
pub const NUMERIC_CHAR_TABLE_CAP: usize = 512;
/// Orthogonality acceptance for numerically computed character tables.
pub const NUMERIC_CHAR_TOL: f64 = 1e-8;
/// Orthogonality requirement for closed-form tables.
pub const CHAR_ORTHOGONALITY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order {order} exceeds cap {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("not a valid group table: {0}")]
    InvalidTable(String),
    #[error("character table diagnostics: {0}")]
    CharTable(String),
}

/// Index of an element within a group's fixed enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyTag {
    CyclicProduct(Vec<usize>),
    Symmetric(usize),
    Dihedral(usize),
    DirectProduct(Box<FamilyTag>, Box<FamilyTag>),
    Custom,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major |G|x|G| multiplication table; entry (x, y) = index of x*y.
    cayley: Vec<u16>,
    identity: usize,
    inverses: Vec<usize>,
    /// Named generators.
    generators: Vec<(String, usize)>,
    conjugacy_classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    family: FamilyTag,
    element_names: Vec<String>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x * self.order + y] as usize
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.conjugacy_classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn family(&self) -> &FamilyTag {
        &self.family
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.element_names[x]
    }

    pub fn is_abelian(&self) -> bool {
        self.conjugacy_classes.len() == self.order
    }

    /// Order of a single element.
    pub fn element_order(&self, x: usize) -> usize {
        let mut cur = x;
        let mut n = 1;
        while cur != self.identity {
            cur = self.mul(cur, x);
            n += 1;
        }
        n
    }

    fn from_table(
        cayley: Vec<u16>,
        generators: Vec<(String, usize)>,
        family: FamilyTag,
        element_names: Vec<String>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let order = element_names.len();
        if order > cap {
            return Err(GroupError::SizeCap { order, cap });
        }
        assert_eq!(cayley.len(), order * order);
        let mul = |x: usize, y: usize| cayley[x * order + y] as usize;

        // Latin square check.
        for x in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for y in 0..order {
                let r = mul(x, y);
                let c = mul(y, x);
                if r >= order || seen_row[r] {
                    return Err(GroupError::InvalidTable(format!(
                        "row {x} is not a permutation"
                    )));
                }
                if c >= order || seen_col[c] {
                    return Err(GroupError::InvalidTable(format!(
                        "column {x} is not a permutation"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }

        // Identity.
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;

        // Inverses.
        let mut inverses = vec![0usize; order];
        for x in 0..order {
            inverses[x] = (0..order)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or_else(|| {
                    GroupError::InvalidTable(format!("element {x} has no inverse"))
                })?;
        }

        // Associativity. Full O(n^3) check at small orders; above that use
        // Light's test over a generating set, which is equivalent as long as
        // the set generates (verified below by closure).
        let gen_indices: Vec<usize> = if generators.is_empty() {
            (0..order).collect()
        } else {
            generators.iter().map(|(_, g)| *g).collect()
        };
        if order <= 1024 {
            for x in 0..order {
                for y in 0..order {
                    let xy = mul(x, y);
                    for z in 0..order {
                        if mul(xy, z) != mul(x, mul(y, z)) {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut reached = vec![false; order];
            reached[identity] = true;
            let mut frontier = vec![identity];
            while let Some(x) = frontier.pop() {
                for &g in &gen_indices {
                    let y = mul(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
            if reached.iter().any(|r| !r) {
                return Err(GroupError::InvalidTable(
                    "generators do not generate the group".into(),
                ));
            }
            for &a in &gen_indices {
                for x in 0..order {
                    for y in 0..order {
                        if mul(mul(a, x), y) != mul(a, mul(x, y)) {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({a},{x},{y})"
                            )));
                        }
                    }
                }
            }
        }

        // Conjugacy classes, brute force.
        let mut class_of = vec![usize::MAX; order];
        let mut conjugacy_classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            for h in 0..order {
                let c = mul(mul(h, x), inverses[h]);
                if class_of[c] == usize::MAX {
                    class_of[c] = conjugacy_classes.len();
                    members.push(c);
                }
            }
            members.sort_unstable();
            conjugacy_classes.push(members);
        }

        Ok(FiniteGroup {
            order,
            cayley,
            identity,
            inverses,
            generators,
            conjugacy_classes,
            class_of,
            family,
            element_names,
        })
    }

    /// Builds a group from a raw Cayley table (`family_tag = custom`).
    pub fn from_cayley(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_cayley_capped(table, DEFAULT_GROUP_CAP)
    }

    pub fn from_cayley_capped(
        table: Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if order > u16::MAX as usize {
            return Err(GroupError::SizeCap {
                order,
                cap: u16::MAX as usize,
            });
        }
        let mut cayley = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order {
                return Err(GroupError::InvalidTable("ragged table".into()));
            }
            for &e in row {
                if e >= order {
                    return Err(GroupError::InvalidTable(format!(
                        "entry {e} out of range"
                    )));
                }
                cayley.push(e as u16);
            }
        }
        let names = (0..order).map(|i| format!("g{i}")).collect();
        Self::from_table(cayley, Vec::new(), FamilyTag::Custom, names, cap)
    }
}

fn build_cayley<F: Fn(usize, usize) -> usize>(order: usize, mul: F) -> Vec<u16> {
    let mut t = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            t.push(mul(x, y) as u16);
        }
    }
    t
}

/// Z_{d_1} + ... + Z_{d_n} with componentwise addition.
///
/// Component 0 is the least significant digit of the element index, matching
/// the qudit register convention used everywhere else.
pub fn make_cyclic_product(dims: &[usize]) -> Result<FiniteGroup, GroupError> {
    make_cyclic_product_capped(dims, DEFAULT_GROUP_CAP)
}

pub fn make_cyclic_product_capped(
    dims: &[usize],
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(GroupError::BadParameter(
            "cyclic product needs factors >= 2".into(),
        ));
    }
    let order: usize = dims.iter().product();
    if order > cap {
        return Err(GroupError::SizeCap { order, cap });
    }
    let decode = |mut idx: usize| -> Vec<usize> {
        dims.iter()
            .map(|&d| {
                let k = idx % d;
                idx /= d;
                k
            })
            .collect()
    };
    let encode = |ks: &[usize]| -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (k, &d) in ks.iter().zip(dims) {
            idx += k * stride;
            stride *= d;
        }
        idx
    };
    let cayley = build_cayley(order, |x, y| {
        let a = decode(x);
        let b = decode(y);
        let sum: Vec<usize> = a
            .iter()
            .zip(&b)
            .zip(dims)
            .map(|((p, q), &d)| (p + q) % d)
            .collect();
        encode(&sum)
    });
    let mut generators = Vec::new();
    let mut stride = 1;
    for (i, &d) in dims.iter().enumerate() {
        generators.push((format!("e{i}"), stride));
        stride *= d;
    }
    let names = (0..order)
        .map(|idx| {
            let ks = decode(idx);
            format!(
                "({})",
                ks.iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    FiniteGroup::from_table(
        cayley,
        generators,
        FamilyTag::CyclicProduct(dims.to_vec()),
        names,
        cap,
    )
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = (0..n).collect::<Vec<_>>();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    cycles
}

fn perm_name(p: &[usize]) -> String {
    // cycle notation
    let n = p.len();
    let mut seen = vec![false; n];
    let mut s = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        s.push('(');
        let mut j = start;
        let mut first = true;
        while !seen[j] {
            seen[j] = true;
            if !first {
                s.push(' ');
            }
            s.push_str(&j.to_string());
            first = false;
            j = p[j];
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push('e');
    }
    s
}

/// Symmetric group S_n, elements enumerated in lexicographic one-line order,
/// multiplication (s*t)(i) = s(t(i)).
pub fn make_symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    make_symmetric_capped(n, DEFAULT_GROUP_CAP)
}

pub fn make_symmetric_capped(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    if !(2..=6).contains(&n) {
        return Err(GroupError::BadParameter(format!(
            "symmetric group supported for 2 <= n <= 6, got {n}"
        )));
    }
    let perms = permutations_lex(n);
    let order = perms.len();
    let index: BTreeMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let cayley = build_cayley(order, |x, y| {
        let s = &perms[x];
        let t = &perms[y];
        let st: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
        index[&st]
    });
    let mut generators = Vec::new();
    for i in 0..n - 1 {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, i + 1);
        generators.push((format!("({} {})", i, i + 1), index[&p]));
    }
    let names = perms.iter().map(|p| perm_name(p)).collect();
    FiniteGroup::from_table(cayley, generators, FamilyTag::Symmetric(n), names, cap)
}

/// One-line permutations of S_n in the group's enumeration order.
pub fn symmetric_permutations(n: usize) -> Vec<Vec<usize>> {
    permutations_lex(n)
}

/// Dihedral group D_n of order 2n.
///
/// The element at index 2k+α is f^α r^k (α the flip exponent, k the rotation
/// exponent), with relations r^n = f^2 = e and f r f = r^{-1}. This is the
/// enumeration whose ancilla labels reproduce the published D_3 Fourier
/// transform: e, f, r, fr, r^2, fr^2, ...
pub fn make_dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    make_dihedral_capped(n, DEFAULT_GROUP_CAP)
}

pub fn make_dihedral_capped(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::BadParameter(format!(
            "dihedral group needs n >= 3, got {n}"
        )));
    }
    let order = 2 * n;
    if order > cap {
        return Err(GroupError::SizeCap { order, cap });
    }
    // (f^a1 r^k1)(f^a2 r^k2) = f^(a1+a2) r^((-1)^a2 k1 + k2)
    let cayley = build_cayley(order, |x, y| {
        let (k1, a1) = (x / 2, x % 2);
        let (k2, a2) = (y / 2, y % 2);
        let k = if a2 == 1 {
            (n - k1 + k2) % n
        } else {
            (k1 + k2) % n
        };
        2 * k + ((a1 + a2) % 2)
    });
    let generators = vec![("r".to_string(), 2), ("f".to_string(), 1)];
    let names = (0..order)
        .map(|idx| {
            let (k, a) = (idx / 2, idx % 2);
            match (k, a) {
                (0, 0) => "e".to_string(),
                (0, 1) => "f".to_string(),
                (1, 0) => "r".to_string(),
                (1, 1) => "fr".to_string(),
                (k, 0) => format!("r^{k}"),
                (k, _) => format!("fr^{k}"),
            }
        })
        .collect();
    FiniteGroup::from_table(cayley, generators, FamilyTag::Dihedral(n), names, cap)
}

/// Rotation/flip exponents (k, α) of the dihedral element at `idx`.
pub fn dihedral_exponents(idx: usize) -> (usize, usize) {
    (idx / 2, idx % 2)
}

/// Direct product A x B, element (a, b) at index a*|B| + b.
pub fn direct_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
) -> Result<FiniteGroup, GroupError> {
    direct_product_capped(a, b, DEFAULT_GROUP_CAP)
}

pub fn direct_product_capped(
    a: &FiniteGroup,
    b: &FiniteGroup,
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    let order = a.order() * b.order();
    if order > cap {
        return Err(GroupError::SizeCap { order, cap });
    }
    let nb = b.order();
    let cayley = build_cayley(order, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    });
    let mut generators = Vec::new();
    for (name, g) in a.generators() {
        generators.push((format!("{name}|e"), g * nb + b.identity()));
    }
    for (name, g) in b.generators() {
        generators.push((format!("e|{name}"), a.identity() * nb + g));
    }
    let names = (0..order)
        .map(|i| format!("{}|{}", a.element_name(i / nb), b.element_name(i % nb)))
        .collect();
    FiniteGroup::from_table(
        cayley,
        generators,
        FamilyTag::DirectProduct(Box::new(a.family().clone()), Box::new(b.family().clone())),
        names,
        cap,
    )
}

// ---------------------------------------------------------------------------
// Character tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    /// values[(row = irrep, col = conjugacy class)]
    pub values: CMat,
    pub class_sizes: Vec<usize>,
}

impl CharacterTable {
    pub fn n_irreps(&self) -> usize {
        self.labels.len()
    }

    /// χ_λ evaluated on the class containing element `x` of `g`.
    pub fn value_on_element(&self, g: &FiniteGroup, row: usize, x: usize) -> Complex64 {
        self.values[(row, g.class_of(x))]
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Checks sum of squared dims and row orthogonality.
    pub fn validate(&self, order: usize, tol: f64) -> Result<(), GroupError> {
        let sum_sq: usize = self.dims.iter().map(|d| d * d).sum();
        if sum_sq != order {
            return Err(GroupError::CharTable(format!(
                "sum of squared dims {sum_sq} != |G| = {order}"
            )));
        }
        let k = self.n_irreps();
        for r in 0..k {
            for s in 0..k {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..self.class_sizes.len() {
                    acc += Complex64::new(self.class_sizes[c] as f64, 0.0)
                        * self.values[(r, c)]
                        * self.values[(s, c)].conj();
                }
                acc /= order as f64;
                let target = if r == s { 1.0 } else { 0.0 };
                if (acc - Complex64::new(target, 0.0)).norm() > tol {
                    return Err(GroupError::CharTable(format!(
                        "row orthogonality fails for ({r},{s}): {acc}"
                    )));
                }
            }
        }
        if self.dims[0] != 1
            || (0..self.class_sizes.len())
                .any(|c| (self.values[(0, c)] - Complex64::new(1.0, 0.0)).norm() > tol)
        {
            return Err(GroupError::CharTable(
                "first row is not the trivial character".into(),
            ));
        }
        Ok(())
    }
}

/// Character table of `g`. Built-in families use closed forms; custom groups
/// fall back to simultaneous diagonalization of class sums in the regular
/// representation.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    let table = match g.family().clone() {
        FamilyTag::CyclicProduct(dims) => cyclic_char_table(g, &dims),
        FamilyTag::Symmetric(n) => symmetric_char_table(g, n),
        FamilyTag::Dihedral(n) => dihedral_char_table(g, n),
        FamilyTag::DirectProduct(_, _) => product_char_table(g)?,
        FamilyTag::Custom => numeric_char_table(g)?,
    };
    let tol = if matches!(g.family(), FamilyTag::Custom) {
        NUMERIC_CHAR_TOL
    } else {
        CHAR_ORTHOGONALITY_TOL
    };
    table.validate(g.order(), tol)?;
    Ok(table)
}

fn class_representatives(g: &FiniteGroup) -> Vec<usize> {
    g.conjugacy_classes().iter().map(|c| c[0]).collect()
}

fn cyclic_char_table(g: &FiniteGroup, dims: &[usize]) -> CharacterTable {
    let order = g.order();
    // abelian: every element is its own class; labels = exponent tuples j
    let decode = |mut idx: usize| -> Vec<usize> {
        dims.iter()
            .map(|&d| {
                let k = idx % d;
                idx /= d;
                k
            })
            .collect()
    };
    let reps = class_representatives(g);
    let mut values = CMat::zeros((order, order));
    let mut labels = Vec::with_capacity(order);
    for j in 0..order {
        let js = decode(j);
        labels.push(
            js.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        for (c, &rep) in reps.iter().enumerate() {
            let ks = decode(rep);
            let mut phase = 0.0;
            for ((&jj, &kk), &d) in js.iter().zip(&ks).zip(dims) {
                phase += 2.0 * std::f64::consts::PI * (jj * kk) as f64 / d as f64;
            }
            values[(j, c)] = Complex64::from_polar(1.0, phase);
        }
    }
    CharacterTable {
        labels,
        dims: vec![1; order],
        values,
        class_sizes: g.conjugacy_classes().iter().map(|c| c.len()).collect(),
    }
}

// ---- Murnaghan-Nakayama recursion for S_n characters ----

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// χ_λ(μ) by the Murnaghan-Nakayama rule (border-strip recursion), exact in
/// integer arithmetic.
fn mn_character(lambda: &[usize], mu: &[usize]) -> i64 {
    if lambda.is_empty() && mu.is_empty() {
        return 1;
    }
    if mu.is_empty() {
        return 0;
    }
    let strip = mu[0];
    let rest = &mu[1..];
    let rows = lambda.len();
    let mut total = 0i64;
    // Remove a border strip of size `strip` ending in each possible row.
    // Border strips are parameterized by the row range [r0, r1] they touch.
    for r1 in 0..rows {
        for r0 in 0..=r1 {
            // The strip occupies columns (lambda[r] shrinks); after removal the
            // new shape nu must interleave: nu[r] = lambda[r+1] - 1 for r in
            // r0..r1, and nu[r1] determined by the strip size.
            let mut nu: Vec<usize> = lambda.to_vec();
            let mut ok = true;
            for r in r0..r1 {
                if lambda[r + 1] == 0 {
                    ok = false;
                    break;
                }
                nu[r] = lambda[r + 1] - 1;
            }
            if !ok {
                continue;
            }
            // cells removed from rows r0..r1 plus the tail in row r1
            let removed_above: usize = (r0..r1).map(|r| lambda[r] - nu[r]).sum();
            if removed_above >= strip {
                continue;
            }
            let tail = strip - removed_above;
            if tail > lambda[r1] {
                continue;
            }
            nu[r1] = lambda[r1] - tail;
            // nu must be a partition, and for contiguity of the strip the
            // lowest row removal must keep nu[r1] >= (r1+1 < rows ? lambda[r1+1] : 0)
            // and the strip must be connected: nu[r1] + 1 <= nu[r1 - 1] + 1 etc.
            if r1 + 1 < rows && nu[r1] < lambda[r1 + 1] {
                continue;
            }
            // connectivity: row r (r0 <= r < r1) removal starts at column nu[r]+1
            // and the next row starts at nu[r+1]+1; they connect iff
            // nu[r] <= lambda[r+1] - 1 which holds by construction; also need
            // nu[r] >= nu[r+1] (partition) checked below, and for r0 the strip
            // must not extend past the row: nu[r0] <= lambda[r0].
            let mut valid = nu[r1] <= usize::MAX;
            for r in 0..rows.saturating_sub(1) {
                if nu[r] < nu[r + 1] {
                    valid = false;
                    break;
                }
            }
            // Strip connectivity across rows: for r in r0..r1 the removed cells
            // in row r are columns nu[r]..lambda[r]-1 and in row r+1 columns
            // nu[r+1]..lambda[r+1]-1; they connect iff nu[r] <= lambda[r+1]-1.
            if valid {
                for r in r0..r1 {
                    if nu[r] + 1 > lambda[r + 1] {
                        valid = false;
                        break;
                    }
                }
            }
            if !valid {
                continue;
            }
            let height = (r1 - r0) as u32;
            let sign = if height % 2 == 0 { 1 } else { -1 };
            let mut nu_trim: Vec<usize> = nu.into_iter().filter(|&x| x > 0).collect();
            nu_trim.sort_unstable_by(|a, b| b.cmp(a));
            total += sign as i64 * mn_character(&nu_trim, rest);
        }
    }
    total
}

fn partition_dim(lambda: &[usize]) -> usize {
    // dimension = χ_λ(identity) = χ_λ(1^n)
    let n: usize = lambda.iter().sum();
    let mu = vec![1usize; n];
    mn_character(lambda, &mu) as usize
}

fn symmetric_char_table(g: &FiniteGroup, n: usize) -> CharacterTable {
    let perms = permutations_lex(n);
    let reps = class_representatives(g);
    let rep_types: Vec<Vec<usize>> = reps.iter().map(|&r| cycle_type(&perms[r])).collect();
    // Label irreps by partitions. Order: trivial (n) first, then descending
    // lexicographic, with sign and standard named specially.
    let mut parts = partitions(n);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let mut labels = Vec::new();
    let mut dims = Vec::new();
    let mut values = CMat::zeros((parts.len(), reps.len()));
    for (row, lambda) in parts.iter().enumerate() {
        let name = if lambda.len() == 1 {
            "triv".to_string()
        } else if lambda.iter().all(|&x| x == 1) {
            "sgn".to_string()
        } else if lambda[0] == n - 1 && lambda.len() == 2 {
            "std".to_string()
        } else {
            format!(
                "p[{}]",
                lambda
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        labels.push(name);
        dims.push(partition_dim(lambda));
        for (c, mu) in rep_types.iter().enumerate() {
            values[(row, c)] = Complex64::new(mn_character(lambda, mu) as f64, 0.0);
        }
    }
    CharacterTable {
        labels,
        dims,
        values,
        class_sizes: g.conjugacy_classes().iter().map(|c| c.len()).collect(),
    }
}

fn dihedral_char_table(g: &FiniteGroup, n: usize) -> CharacterTable {
    // Characters from the closed-form irreps: trivial, flip sign, and for even
    // n the two characters with r -> -1; then 2-dim irreps E_1..E_m with
    // χ(f^a r^k) = 0 for a = 1 and 2cos(2π λ k / n) otherwise.
    let reps = class_representatives(g);
    let mut labels = vec!["triv".to_string(), "sgn".to_string()];
    let mut dims = vec![1usize, 1];
    if n % 2 == 0 {
        labels.push("rot".to_string());
        labels.push("rotsgn".to_string());
        dims.push(1);
        dims.push(1);
    }
    let two_dim = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    for lam in 1..=two_dim {
        labels.push(format!("E{lam}"));
        dims.push(2);
    }
    let mut values = CMat::zeros((labels.len(), reps.len()));
    for (c, &repidx) in reps.iter().enumerate() {
        let (k, a) = dihedral_exponents(repidx);
        let mut row = 0;
        values[(row, c)] = Complex64::new(1.0, 0.0);
        row += 1;
        values[(row, c)] = Complex64::new(if a == 1 { -1.0 } else { 1.0 }, 0.0);
        row += 1;
        if n % 2 == 0 {
            values[(row, c)] = Complex64::new(if k % 2 == 1 { -1.0 } else { 1.0 }, 0.0);
            row += 1;
            values[(row, c)] =
                Complex64::new(if (k + a) % 2 == 1 { -1.0 } else { 1.0 }, 0.0);
            row += 1;
        }
        for lam in 1..=two_dim {
            let v = if a == 1 {
                0.0
            } else {
                2.0 * (2.0 * std::f64::consts::PI * (lam * k) as f64 / n as f64).cos()
            };
            values[(row, c)] = Complex64::new(v, 0.0);
            row += 1;
        }
    }
    CharacterTable {
        labels,
        dims,
        values,
        class_sizes: g.conjugacy_classes().iter().map(|c| c.len()).collect(),
    }
}

fn product_char_table(g: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    let FamilyTag::DirectProduct(fa, fb) = g.family().clone() else {
        unreachable!()
    };
    // Rebuild the factors to get their tables; factor orders are recoverable
    // from the family tags.
    let a = group_from_tag(&fa)?;
    let b = group_from_tag(&fb)?;
    let ta = character_table(&a)?;
    let tb = character_table(&b)?;
    let nb = b.order();
    let reps = class_representatives(g);
    let mut labels = Vec::new();
    let mut dims = Vec::new();
    for ia in 0..ta.n_irreps() {
        for ib in 0..tb.n_irreps() {
            labels.push(format!("{}*{}", ta.labels[ia], tb.labels[ib]));
            dims.push(ta.dims[ia] * tb.dims[ib]);
        }
    }
    let mut values = CMat::zeros((labels.len(), reps.len()));
    for (c, &rep) in reps.iter().enumerate() {
        let (ra, rb) = (rep / nb, rep % nb);
        let mut row = 0;
        for ia in 0..ta.n_irreps() {
            for ib in 0..tb.n_irreps() {
                values[(row, c)] = ta.value_on_element(&a, ia, ra)
                    * tb.value_on_element(&b, ib, rb);
                row += 1;
            }
        }
    }
    Ok(CharacterTable {
        labels,
        dims,
        values,
        class_sizes: g.conjugacy_classes().iter().map(|c| c.len()).collect(),
    })
}

fn group_from_tag(tag: &FamilyTag) -> Result<FiniteGroup, GroupError> {
    match tag {
        FamilyTag::CyclicProduct(dims) => make_cyclic_product(dims),
        FamilyTag::Symmetric(n) => make_symmetric(*n),
        FamilyTag::Dihedral(n) => make_dihedral(*n),
        FamilyTag::DirectProduct(a, b) => {
            direct_product(&group_from_tag(a)?, &group_from_tag(b)?)
        }
        FamilyTag::Custom => Err(GroupError::CharTable(
            "cannot rebuild a custom factor group from its tag".into(),
        )),
    }
}

/// Numeric character table via class sums in the regular representation.
///
/// A random Hermitian element of the algebra spanned by the class sums acts
/// as a distinct scalar on each isotypic component of the regular
/// representation; grouping its eigenvectors by their central character
/// recovers d_λ and χ_λ(c) for every irrep.
fn numeric_char_table(g: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    let order = g.order();
    if order > NUMERIC_CHAR_TABLE_CAP {
        return Err(GroupError::CharTable(format!(
            "numeric path capped at |G| <= {NUMERIC_CHAR_TABLE_CAP}, got {order}"
        )));
    }
    let classes = g.conjugacy_classes();
    let k = classes.len();
    // Class sum matrices in the regular representation R(g) e_h = e_{gh}.
    let mut class_sums: Vec<CMat> = Vec::with_capacity(k);
    for cl in classes {
        let mut c = CMat::zeros((order, order));
        for &x in cl {
            for h in 0..order {
                c[(g.mul(x, h), h)] += Complex64::new(1.0, 0.0);
            }
        }
        class_sums.push(c);
    }
    let inv_class: Vec<usize> = classes
        .iter()
        .map(|cl| g.class_of(g.inverse(cl[0])))
        .collect();

    use rand::{Rng, SeedableRng};
    let mut seed = 0x5ca1ab1eu64;
    for _attempt in 0..4 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut h = CMat::zeros((order, order));
        for ci in 0..k {
            let x: f64 = rng.gen_range(-1.0..1.0);
            let y: f64 = rng.gen_range(-1.0..1.0);
            let cs = &class_sums[ci];
            let csi = &class_sums[inv_class[ci]];
            h = h + cs.mapv(|z| z * Complex64::new(x, y))
                + csi.mapv(|z| z * Complex64::new(x, -y));
        }
        let (_vals, vecs) = hermitian_eig(&h);
        // Central character of each eigenvector, then group.
        let mut groups: BTreeMap<Vec<(i64, i64)>, Vec<usize>> = BTreeMap::new();
        let mut ok = true;
        'cols: for col in 0..order {
            let v: CVec = vecs.column(col).to_owned();
            let mut key = Vec::with_capacity(k);
            for cs in &class_sums {
                let cv = cs.dot(&v);
                let omega = crate::linalg::inner(&v, &cv);
                // must actually be an eigenvector of every class sum
                let resid: f64 = cv
                    .iter()
                    .zip(v.iter())
                    .map(|(a, b)| (a - b * omega).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                if resid > 1e-7 * order as f64 {
                    ok = false;
                    break 'cols;
                }
                key.push((
                    (omega.re * 1e6).round() as i64,
                    (omega.im * 1e6).round() as i64,
                ));
            }
            groups.entry(key).or_default().push(col);
        }
        if ok && groups.len() == k {
            let mut rows: Vec<(usize, Vec<Complex64>)> = Vec::new();
            for (key, cols) in &groups {
                let m = cols.len();
                let d = (m as f64).sqrt().round() as usize;
                if d * d != m {
                    ok = false;
                    break;
                }
                let chi: Vec<Complex64> = (0..k)
                    .map(|ci| {
                        let omega = Complex64::new(
                            key[ci].0 as f64 / 1e6,
                            key[ci].1 as f64 / 1e6,
                        );
                        omega * d as f64 / classes[ci].len() as f64
                    })
                    .collect();
                rows.push((d, chi));
            }
            if ok {
                // refine chi by re-evaluating exactly from the eigenvectors
                let mut refined: Vec<(usize, Vec<Complex64>)> = Vec::new();
                for ((_key, cols), (d, _)) in groups.iter().zip(&rows) {
                    let mut chi = vec![Complex64::new(0.0, 0.0); k];
                    for (ci, cs) in class_sums.iter().enumerate() {
                        let mut tr = Complex64::new(0.0, 0.0);
                        for &col in cols {
                            let v: CVec = vecs.column(col).to_owned();
                            tr += crate::linalg::inner(&v, &cs.dot(&v));
                        }
                        chi[ci] = tr * (*d as f64)
                            / (cols.len() as f64 * classes[ci].len() as f64);
                    }
                    refined.push((*d, chi));
                }
                // order rows: trivial first, then by (dim, rounded values)
                let ident_class = g.class_of(g.identity());
                refined.sort_by(|a, b| {
                    let triv_a = a.0 == 1
                        && a.1.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-5);
                    let triv_b = b.0 == 1
                        && b.1.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-5);
                    triv_b
                        .cmp(&triv_a)
                        .then(a.0.cmp(&b.0))
                        .then_with(|| {
                            let ka: Vec<(i64, i64)> = a
                                .1
                                .iter()
                                .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
                                .collect();
                            let kb: Vec<(i64, i64)> = b
                                .1
                                .iter()
                                .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
                                .collect();
                            ka.cmp(&kb)
                        })
                });
                let labels: Vec<String> = refined
                    .iter()
                    .enumerate()
                    .map(|(i, _)| if i == 0 { "triv".to_string() } else { format!("irr{i}") })
                    .collect();
                let dims: Vec<usize> = refined.iter().map(|r| r.0).collect();
                let mut values = CMat::zeros((refined.len(), k));
                for (row, (_, chi)) in refined.iter().enumerate() {
                    for (c, v) in chi.iter().enumerate() {
                        values[(row, c)] = *v;
                    }
                }
                // sanity on the identity column before returning
                let idok = dims
                    .iter()
                    .zip(0..refined.len())
                    .all(|(&d, row)| {
                        (values[(row, ident_class)] - Complex64::new(d as f64, 0.0)).norm()
                            < 1e-5
                    });
                if idok {
                    return Ok(CharacterTable {
                        labels,
                        dims,
                        values,
                        class_sizes: classes.iter().map(|c| c.len()).collect(),
                    });
                }
            }
        }
        seed = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    }
    Err(GroupError::CharTable(
        "class-sum diagonalization failed to separate irreps".into(),
    ))
}

// ---------------------------------------------------------------------------
// Isomorphism search
// ---------------------------------------------------------------------------

/// Brute-force isomorphism search by mapping generators of `a` to candidate
/// images in `b` and extending along words. Desk scale only.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let n = a.order();
    let gens: Vec<usize> = if a.generators().is_empty() {
        (0..n).collect()
    } else {
        a.generators().iter().map(|(_, g)| *g).collect()
    };
    // orders must match per generator
    let cand: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let og = a.element_order(g);
            (0..n).filter(|&h| b.element_order(h) == og).collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    fn extend_map(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        imgs: &[usize],
    ) -> Option<Vec<usize>> {
        let n = a.order();
        let mut map = vec![usize::MAX; n];
        map[a.identity()] = b.identity();
        let mut frontier = vec![a.identity()];
        while let Some(x) = frontier.pop() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = a.mul(x, g);
                let img = b.mul(map[x], imgs[gi]);
                if map[y] == usize::MAX {
                    map[y] = img;
                    frontier.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        if map.iter().any(|&m| m == usize::MAX) {
            return None;
        }
        let mut seen = vec![false; n];
        for &m in &map {
            if seen[m] {
                return None;
            }
            seen[m] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                    return None;
                }
            }
        }
        Some(map)
    }
    loop {
        let imgs: Vec<usize> = choice.iter().zip(&cand).map(|(&c, v)| v[c]).collect();
        if let Some(map) = extend_map(a, b, &gens, &imgs) {
            return Some(map);
        }
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < cand[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b).is_some()
}
