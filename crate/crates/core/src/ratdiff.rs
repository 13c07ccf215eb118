//! Difference rational cohomology in the two computable cases: difference
//! `G_m`-modules, which are graded `k[x]`-modules with `x M^j ⊆ M^{pj}`, and the
//! trivial module over `(G_a, Frobenius)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::linalg::{self, is_prime, Field, Matrix, PrimeField};
use crate::{Error, Result};

/// A graded module `⊕_j M^j` over `F_p` with `x: M^j → M^{pj}`.
///
/// `xmaps[j]` is a `dim M^{pj} × dim M^j` matrix. A weight whose target is
/// absent may omit its map or carry a map with zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDiffModule {
    pub p: u8,
    pub weights: BTreeMap<i64, usize>,
    pub xmaps: BTreeMap<i64, Matrix<u8>>,
}

impl GradedDiffModule {
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p as u32)
    }

    pub fn weight_dim(&self, j: i64) -> usize {
        self.weights.get(&j).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.weights.values().sum()
    }

    /// `x` on `M^j`, as a `dim M^{pj} × dim M^j` matrix (zero if not declared).
    pub fn xmap(&self, j: i64) -> Matrix<u8> {
        match self.xmaps.get(&j) {
            Some(m) => m.clone(),
            None => Matrix::filled(self.weight_dim(self.p as i64 * j), self.weight_dim(j), 0),
        }
    }

    /// Nonzero weights only.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.weights.iter().filter(|(_, &d)| d > 0).map(|(&j, _)| j)
    }
}

/// Checks that `p` is prime, every entry is reduced and every `xmap` has shape
/// `dim M^{pj} × dim M^j`.
pub fn validate_graded(m: &GradedDiffModule) -> Result<()> {
    if !is_prime(m.p as u32) {
        return Err(Error::NotPrime(m.p as u32));
    }
    for (&j, x) in &m.xmaps {
        let (rows, cols) = (m.weight_dim(m.p as i64 * j), m.weight_dim(j));
        if x.rows() != rows || x.cols() != cols {
            return Err(Error::InvalidGraded(format!(
                "x on weight {j} is {}x{}, expected {rows}x{cols} (target weight {})",
                x.rows(),
                x.cols(),
                m.p as i64 * j
            )));
        }
        if x.as_slice().iter().any(|&e| e >= m.p) {
            return Err(Error::InvalidGraded(format!(
                "x on weight {j} has entries outside F_{}",
                m.p
            )));
        }
    }
    Ok(())
}

/// The weights `j, pj, p²j, …` reachable from a representative in `(Z ∖ pZ) ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitClass {
    pub representative: i64,
    /// The weights of the module lying on this chain, increasing in `|j|`.
    pub chain: Vec<i64>,
}

/// Strips every factor of `p` from `j`; `0` maps to itself.
pub fn orbit_representative(p: u8, j: i64) -> i64 {
    let p = p as i64;
    let mut r = j;
    while r != 0 && r % p == 0 {
        r /= p;
    }
    r
}

/// Splits `M` into its parts supported on the chains `j·pⁿ`.
pub fn decompose_orbits(m: &GradedDiffModule) -> Vec<(OrbitClass, GradedDiffModule)> {
    let mut classes: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for j in m.support() {
        classes.entry(orbit_representative(m.p, j)).or_default().push(j);
    }
    classes
        .into_iter()
        .map(|(rep, mut chain)| {
            chain.sort_by_key(|j| j.unsigned_abs());
            let weights: BTreeMap<i64, usize> = chain.iter().map(|&j| (j, m.weight_dim(j))).collect();
            let xmaps = m
                .xmaps
                .iter()
                .filter(|(j, _)| weights.contains_key(j))
                .map(|(&j, x)| (j, x.clone()))
                .collect();
            let part = GradedDiffModule { p: m.p, weights, xmaps };
            (
                OrbitClass {
                    representative: rep,
                    chain,
                },
                part,
            )
        })
        .collect()
}

/// Reassembles a module from its parts.
pub fn direct_sum(p: u8, parts: &[GradedDiffModule]) -> GradedDiffModule {
    let mut out = GradedDiffModule {
        p,
        weights: BTreeMap::new(),
        xmaps: BTreeMap::new(),
    };
    for part in parts {
        for (&j, &d) in &part.weights {
            *out.weights.entry(j).or_default() += d;
        }
    }
    for part in parts {
        for (&j, x) in &part.xmaps {
            assert!(!out.xmaps.contains_key(&j), "parts overlap at weight {j}");
            out.xmaps.insert(j, x.clone());
        }
    }
    out
}

/// `dim H^0_σ` and `dim H^1_σ` of a difference `G_m`-module; higher degrees vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GmCohomology {
    pub h0: usize,
    pub h1: usize,
}

/// `H^0_σ = ker(x − 1)` and `H^1_σ = coker(x − 1)` on `M^0`, using that
/// `H^{>0}(G_m, −) = 0` and `H^0(G_m, M) = M^0`.
pub fn gm_difference_cohomology(m: &GradedDiffModule) -> Result<GmCohomology> {
    validate_graded(m)?;
    let fp = m.field();
    let d = m.weight_dim(0);
    let mut a = m.xmap(0);
    for i in 0..d {
        a[(i, i)] = fp.sub(a[(i, i)], 1);
    }
    let r = linalg::rank(&fp, &a);
    Ok(GmCohomology { h0: d - r, h1: d - r })
}

/// `dim H^0_st`: the eventual image of `x` on `M^0`, `rank x^D` with `D = dim M^0`.
pub fn gm_stable_h0(m: &GradedDiffModule) -> Result<usize> {
    validate_graded(m)?;
    let fp = m.field();
    let x = m.xmap(0);
    Ok(linalg::rank(&fp, &linalg::mat_pow(&fp, &x, m.weight_dim(0) as u64)))
}

/// The coordinate ring `k[T, T⁻¹]` with `σ(T^j) = T^{pj}`, truncated to `|j| <= n`.
pub fn regular_gm_module(p: u8, n: i64) -> GradedDiffModule {
    let weights: BTreeMap<i64, usize> = (-n..=n).map(|j| (j, 1)).collect();
    let xmaps = (-n..=n)
        .map(|j| {
            let target = (p as i64 * j).abs() <= n;
            (j, Matrix::filled(usize::from(target), 1, 1))
        })
        .collect();
    GradedDiffModule { p, weights, xmaps }
}

/// `⊕_{i<levels} M^{(i)}` for a rational `G_m`-module with the given weight
/// multiplicities: `M^{(i)}` has its weights multiplied by `pⁱ`, and `x`
/// includes each copy identically into the next.
pub fn gm_induced_module(p: u8, base: &BTreeMap<i64, usize>, levels: u32) -> GradedDiffModule {
    // Coordinates of weight w: the copies (level i, base weight b, component) with pⁱ·b = w.
    let mut slots: BTreeMap<i64, Vec<(u32, i64, usize)>> = BTreeMap::new();
    for i in 0..levels {
        for (&b, &d) in base {
            let w = b * (p as i64).pow(i);
            for c in 0..d {
                slots.entry(w).or_default().push((i, b, c));
            }
        }
    }
    let weights = slots.iter().map(|(&w, s)| (w, s.len())).collect();
    let mut xmaps = BTreeMap::new();
    for (&w, src) in &slots {
        let dst = slots.get(&(p as i64 * w)).map(Vec::as_slice).unwrap_or(&[]);
        let mut x = Matrix::filled(dst.len(), src.len(), 0u8);
        for (col, &(i, b, c)) in src.iter().enumerate() {
            if let Some(row) = dst.iter().position(|&s| s == (i + 1, b, c)) {
                x[(row, col)] = 1;
            }
        }
        xmaps.insert(w, x);
    }
    GradedDiffModule { p, weights, xmaps }
}

/// A basis monomial of `H*(G_a, F_p) = Λ(a_0, a_1, …) ⊗ S(b_1, b_2, …)` with
/// `|a_i| = 1`, `|b_i| = 2`; `σ` adds 1 to every index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaMonomial {
    /// Distinct exterior indices, increasing.
    pub exterior: Vec<u32>,
    /// Symmetric indices with repetition, non-decreasing, each `>= 1`.
    pub symmetric: Vec<u32>,
}

impl GaMonomial {
    pub fn degree(&self) -> usize {
        self.exterior.len() + 2 * self.symmetric.len()
    }

    pub fn shift(&self) -> GaMonomial {
        GaMonomial {
            exterior: self.exterior.iter().map(|i| i + 1).collect(),
            symmetric: self.symmetric.iter().map(|i| i + 1).collect(),
        }
    }

    /// Whether this monomial is not the shift of another one.
    pub fn is_orbit_start(&self) -> bool {
        self.exterior.first() == Some(&0) || self.symmetric.first() == Some(&1)
    }

    fn max_index(&self) -> u32 {
        self.exterior.iter().chain(&self.symmetric).copied().max().unwrap_or(0)
    }

    fn min_index(&self) -> Option<u32> {
        self.exterior.iter().chain(&self.symmetric).copied().min()
    }
}

impl fmt::Display for GaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exterior
            .iter()
            .map(|i| format!("a{i}"))
            .chain(self.symmetric.iter().map(|i| format!("b{i}")))
            .collect();
        f.write_str(&parts.join("·"))
    }
}

/// All monomials of the given degree with every index `<= n`.
pub fn ga_monomials(degree: usize, n: u32) -> Vec<GaMonomial> {
    let mut out = Vec::new();
    for ext_len in (0..=degree).filter(|k| (degree - k).is_multiple_of(2)) {
        let sym_len = (degree - ext_len) / 2;
        let mut exterior = Vec::new();
        subsets(0, n, ext_len, &mut exterior, &mut |e| {
            let mut symmetric = Vec::new();
            multisets(1, n, sym_len, &mut symmetric, &mut |s| {
                out.push(GaMonomial {
                    exterior: e.to_vec(),
                    symmetric: s.to_vec(),
                });
            });
        });
    }
    out
}

fn subsets(from: u32, to: u32, k: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if k == 0 {
        return f(cur);
    }
    for i in from..=to {
        cur.push(i);
        subsets(i + 1, to, k - 1, cur, f);
        cur.pop();
    }
}

fn multisets(from: u32, to: u32, k: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if k == 0 {
        return f(cur);
    }
    for i in from..=to {
        cur.push(i);
        multisets(i, to, k - 1, cur, f);
        cur.pop();
    }
}

/// Number of shift orbits among monomials of the given degree with indices `<= n`.
///
/// Degree 0 is the unit, which `σ` fixes: one orbit.
pub fn ga_orbit_count(degree: usize, n: u32) -> usize {
    if degree == 0 {
        return 1;
    }
    ga_monomials(degree, n).iter().filter(|m| m.is_orbit_start()).count()
}

/// Checks the facts that force `H^j(G_a, F_p)^σ = 0` for `j > 0` on the
/// truncation: the shift is injective on monomials and strictly raises the
/// minimum index, so a `σ`-fixed combination has no term of least minimum index.
pub fn ga_shift_has_no_invariants(degree: usize, n: u32) -> bool {
    if degree == 0 {
        return false;
    }
    let monos = ga_monomials(degree, n);
    let images: BTreeSet<GaMonomial> = monos.iter().map(GaMonomial::shift).collect();
    images.len() == monos.len()
        && monos.iter().all(|m| {
            let s = m.shift();
            s.min_index() > m.min_index() && s.max_index() == m.max_index() + 1
        })
}

/// A dimension that may be infinite, with the evidence for the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaybeInfiniteDim {
    Finite(usize),
    /// Orbit counts at three consecutive truncations, strictly increasing.
    Infinite {
        evidence: [(u32, usize); 3],
    },
}

impl MaybeInfiniteDim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            MaybeInfiniteDim::Finite(d) => Some(*d),
            MaybeInfiniteDim::Infinite { .. } => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, MaybeInfiniteDim::Infinite { .. })
    }
}

impl fmt::Display for MaybeInfiniteDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaybeInfiniteDim::Finite(d) => write!(f, "{d}"),
            MaybeInfiniteDim::Infinite { .. } => f.write_str("inf"),
        }
    }
}

/// `dim H^j_σ(G_a, F_p)` for `j <= jmax`, with `σ` the Frobenius.
///
/// `H^0_σ = H^0 = F_p`. For `j > 0` the invariants of `σ` on `H^j` vanish, so
/// `H^j_σ` is the coinvariants of the shift on `H^{j−1}`, whose dimension is
/// the number of shift orbits of degree `j−1` monomials. Counts are taken at
/// truncations `n, n+1, n+2`: constant counts are reported as finite,
/// strictly growing counts as infinite.
pub fn ga_example_dims(p: u32, jmax: usize, n: u32) -> Result<Vec<MaybeInfiniteDim>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime(p));
    }
    let required = jmax as u32 + 4;
    if n < required {
        return Err(Error::TruncationTooSmall { given: n, required });
    }
    let mut out = vec![MaybeInfiniteDim::Finite(1)];
    for j in 1..=jmax {
        if !ga_shift_has_no_invariants(j, n) {
            return Err(Error::Mismatch(format!("shift has invariants in degree {j}")));
        }
        let counts = [n, n + 1, n + 2].map(|t| (t, ga_orbit_count(j - 1, t)));
        let dim = if counts[0].1 == counts[1].1 && counts[1].1 == counts[2].1 {
            MaybeInfiniteDim::Finite(counts[0].1)
        } else if counts[0].1 < counts[1].1 && counts[1].1 < counts[2].1 {
            MaybeInfiniteDim::Infinite { evidence: counts }
        } else {
            return Err(Error::Mismatch(format!(
                "orbit counts in degree {} neither stable nor growing: {counts:?}",
                j - 1
            )));
        };
        out.push(dim);
    }
    Ok(out)
}
