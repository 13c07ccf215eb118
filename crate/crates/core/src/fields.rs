//! Finite fields `F_{p^n}` with a power of Frobenius, semilinear maps and
//! restriction of scalars to the prime field.
//!
//! Elements are stored as their index `Σ c_i p^i` in the power basis of the
//! modulus, so arithmetic is table lookup. Fields up to order [`MAX_ORDER`]
//! are supported.

use std::fmt;
use std::sync::Arc;

use crate::linalg::{self, is_prime, Field, Matrix, PrimeField};
use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1024;

/// An element of `F_{p^n}`; only meaningful together with its [`FieldSpec`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(u16);

impl FqElem {
    pub fn index(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct Tables {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    /// `frob[s][x] = x^{p^s}` for `0 <= s < n`.
    frob: Vec<Vec<u16>>,
}

/// The field `F_{p^n}` together with the endomorphism `c ↦ c^{p^s}`, `s = sigma_power`.
#[derive(Clone)]
pub struct FieldSpec {
    tables: Arc<Tables>,
    sigma_power: u32,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p())
            .field("n", &self.n())
            .field("modulus", &self.tables.modulus)
            .field("sigma_power", &self.sigma_power)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.sigma_power == other.sigma_power
            && (Arc::ptr_eq(&self.tables, &other.tables)
                || (self.tables.p == other.tables.p && self.tables.modulus == other.tables.modulus))
    }
}

impl Eq for FieldSpec {}

/// Standard irreducible moduli (low degree first) for the small fields used most.
pub fn default_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    match (p, n) {
        (_, 1) if is_prime(p) => Some(vec![0, 1]),
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 3) => Some(vec![1, 2, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        (5, 2) => Some(vec![2, 0, 1]),
        _ => None,
    }
}

/// Builds `F_p[u]/(modulus)` with `σ = Frob^{sigma_power}`.
///
/// `modulus` lists coefficients from degree 0 up to the leading 1.
pub fn make_field(p: u32, n: u32, modulus: &[u32], sigma_power: i64) -> Result<FieldSpec> {
    if !is_prime(p) || p > 255 {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::BadModulus("extension degree must be at least 1".into()));
    }
    if modulus.len() != n as usize + 1 {
        return Err(Error::BadModulus(format!(
            "expected {} coefficients for degree {n}, got {}",
            n + 1,
            modulus.len()
        )));
    }
    if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
        return Err(Error::BadModulus(format!("coefficient {c} is not reduced mod {p}")));
    }
    if modulus[n as usize] != 1 {
        return Err(Error::BadModulus("modulus must be monic".into()));
    }
    if sigma_power < 0 || sigma_power >= n as i64 {
        return Err(Error::BadSigmaPower { s: sigma_power, n });
    }
    let q = (p as u64).pow(n);
    if q > MAX_ORDER as u64 {
        return Err(Error::FieldTooLarge { q, max: MAX_ORDER });
    }
    if !is_irreducible(p, modulus) {
        return Err(Error::ReducibleModulus { p });
    }
    Ok(FieldSpec {
        tables: Arc::new(build_tables(p, n, modulus.to_vec())),
        sigma_power: sigma_power as u32,
    })
}

impl FieldSpec {
    /// The field of order `p^n` with its default modulus.
    pub fn standard(p: u32, n: u32, sigma_power: i64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = default_modulus(p, n)
            .ok_or_else(|| Error::BadModulus(format!("no built-in modulus for F_{p}^{n}; supply one")))?;
        make_field(p, n, &modulus, sigma_power)
    }

    /// `F_p` with the identity endomorphism.
    pub fn prime(p: u32) -> Result<FieldSpec> {
        make_field(p, 1, &[0, 1], 0)
    }

    /// The same field with a different designated endomorphism (taken mod `n`).
    pub fn with_sigma_power(&self, s: i64) -> FieldSpec {
        FieldSpec {
            tables: self.tables.clone(),
            sigma_power: s.rem_euclid(self.n() as i64) as u32,
        }
    }

    pub fn p(&self) -> u32 {
        self.tables.p
    }

    pub fn n(&self) -> u32 {
        self.tables.n
    }

    pub fn order(&self) -> u32 {
        self.tables.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.tables.modulus
    }

    pub fn sigma_power(&self) -> u32 {
        self.sigma_power
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField::new(self.p())
    }

    /// The generator `u` of the power basis (equal to 0 in `F_p` itself).
    pub fn generator(&self) -> FqElem {
        if self.n() == 1 {
            // u is a root of the modulus u, i.e. zero.
            FqElem(0)
        } else {
            FqElem(self.p() as u16)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.order()).map(|i| FqElem(i as u16))
    }

    /// Coordinates in the basis `1, u, …, u^{n−1}`.
    pub fn coeffs(&self, x: FqElem) -> Vec<u8> {
        let p = self.p();
        let mut v = x.0 as u32;
        (0..self.n())
            .map(|_| {
                let c = v % p;
                v /= p;
                c as u8
            })
            .collect()
    }

    /// Inverse of [`FieldSpec::coeffs`]; coefficients are reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FqElem> {
        if coeffs.len() > self.n() as usize {
            return Err(Error::DimensionMismatch(format!(
                "field element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.n()
            )));
        }
        let p = self.p() as i64;
        let mut idx = 0i64;
        for &c in coeffs.iter().rev() {
            idx = idx * p + c.rem_euclid(p);
        }
        Ok(FqElem(idx as u16))
    }

    /// Embeds a prime-field element.
    pub fn embed(&self, c: u8) -> FqElem {
        debug_assert!((c as u32) < self.p());
        FqElem(c as u16)
    }

    /// `x^{p^s}`; `s` is taken mod `n`, so negative powers give inverse Frobenius.
    pub fn frobenius_power(&self, x: FqElem, s: i64) -> FqElem {
        let s = s.rem_euclid(self.n() as i64) as usize;
        FqElem(self.tables.frob[s][x.0 as usize])
    }

    /// The designated endomorphism `σ_A`.
    pub fn sigma(&self, x: FqElem) -> FqElem {
        self.frobenius_power(x, self.sigma_power as i64)
    }

    pub fn sigma_inv(&self, x: FqElem) -> FqElem {
        self.frobenius_power(x, -(self.sigma_power as i64))
    }

    pub fn pow(&self, x: FqElem, mut e: u64) -> FqElem {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Applies `Frob^s` to every entry.
    pub fn frob_matrix(&self, m: &Matrix<FqElem>, s: i64) -> Matrix<FqElem> {
        m.map(|x| self.frobenius_power(x, s))
    }

    pub fn frob_vec(&self, v: &[FqElem], s: i64) -> Vec<FqElem> {
        v.iter().map(|&x| self.frobenius_power(x, s)).collect()
    }

    /// Prime-field coordinates of a vector, component `i` occupying `i·n .. (i+1)·n`.
    pub fn to_prime_coords(&self, v: &[FqElem]) -> Vec<u8> {
        v.iter().flat_map(|&x| self.coeffs(x)).collect()
    }

    pub fn from_prime_coords(&self, c: &[u8]) -> Vec<FqElem> {
        let n = self.n() as usize;
        assert_eq!(c.len() % n, 0);
        c.chunks(n)
            .map(|ch| {
                let coeffs: Vec<i64> = ch.iter().map(|&x| x as i64).collect();
                self.from_coeffs(&coeffs).expect("chunk has length n")
            })
            .collect()
    }

    /// Matrix over `F_p` of an `F_{p^n}`-linear map, in the coordinates of
    /// [`FieldSpec::to_prime_coords`].
    pub fn restrict_linear(&self, m: &Matrix<FqElem>) -> Matrix<u8> {
        self.restrict_semilinear(m, 0)
    }

    /// Matrix over `F_p` of `v ↦ m·Frob^twist(v)`.
    pub fn restrict_semilinear(&self, m: &Matrix<FqElem>, twist: i64) -> Matrix<u8> {
        let n = self.n() as usize;
        let basis: Vec<FqElem> = (0..n)
            .map(|l| self.frobenius_power(FqElem((self.p() as u16).pow(l as u32)), twist))
            .collect();
        let mut out = Matrix::filled(m.rows() * n, m.cols() * n, 0u8);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let s = m[(i, j)];
                if s == self.zero() {
                    continue;
                }
                for (l, &b) in basis.iter().enumerate() {
                    let img = self.coeffs(self.mul(s, b));
                    for (lp, &c) in img.iter().enumerate() {
                        out[(i * n + lp, j * n + l)] = c;
                    }
                }
            }
        }
        out
    }
}

impl Field for FieldSpec {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }
    fn one(&self) -> FqElem {
        FqElem(1)
    }
    fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let q = self.tables.q as usize;
        FqElem(self.tables.add[a.0 as usize * q + b.0 as usize])
    }
    fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.tables.neg[a.0 as usize])
    }
    fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let q = self.tables.q as usize;
        FqElem(self.tables.mul[a.0 as usize * q + b.0 as usize])
    }
    fn inv(&self, a: FqElem) -> FqElem {
        assert!(a.0 != 0, "inverse of zero");
        FqElem(self.tables.inv[a.0 as usize])
    }
    fn characteristic(&self) -> u32 {
        self.p()
    }
    fn size(&self) -> u32 {
        self.order()
    }
    fn element(&self, i: u32) -> FqElem {
        debug_assert!(i < self.order());
        FqElem(i as u16)
    }
    fn from_int(&self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.p() as i64) as u16)
    }

    fn axpy(&self, dst: &mut [FqElem], c: FqElem, src: &[FqElem]) {
        if c.0 == 0 {
            return;
        }
        let q = self.tables.q as usize;
        let row = &self.tables.mul[c.0 as usize * q..(c.0 as usize + 1) * q];
        let add = &self.tables.add;
        for (d, &s) in dst.iter_mut().zip(src) {
            d.0 = add[d.0 as usize * q + row[s.0 as usize] as usize];
        }
    }
}

fn poly_mulmod(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus[..n].iter().enumerate() {
            prod[k - n + i] = (prod[k - n + i] + (p - c) * m) % p;
        }
    }
    prod.truncate(n);
    prod
}

fn build_tables(p: u32, n: u32, modulus: Vec<u32>) -> Tables {
    let q = p.pow(n) as usize;
    let decode = |mut v: usize| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let c = (v % p as usize) as u32;
                v /= p as usize;
                c
            })
            .collect()
    };
    let encode = |c: &[u32]| -> u16 { c.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u16 };
    let digits: Vec<Vec<u32>> = (0..q).map(decode).collect();

    let mut add = vec![0u16; q * q];
    let mut neg = vec![0u16; q];
    for a in 0..q {
        let na: Vec<u32> = digits[a].iter().map(|&x| (p - x) % p).collect();
        neg[a] = encode(&na);
        for b in 0..q {
            let s: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(&x, &y)| (x + y) % p).collect();
            add[a * q + b] = encode(&s);
        }
    }

    // Multiplication through discrete logarithms of a primitive element.
    let mut exp = vec![0u16; q];
    let mut log = vec![0usize; q];
    let mut found = false;
    for g_digits in &digits[1..q] {
        let mut x = vec![0u32; n as usize];
        x[0] = 1;
        let mut seen_one_early = false;
        for (k, slot) in exp[..q - 1].iter_mut().enumerate() {
            let e = encode(&x);
            if k > 0 && e == 1 {
                seen_one_early = true;
                break;
            }
            *slot = e;
            x = poly_mulmod(p, &modulus, &x, g_digits);
        }
        if !seen_one_early {
            for (k, &e) in exp[..q - 1].iter().enumerate() {
                log[e as usize] = k;
            }
            found = true;
            break;
        }
    }
    assert!(found, "irreducible modulus always has a primitive element");
    let mut mul = vec![0u16; q * q];
    let mut inv = vec![0u16; q];
    for a in 1..q {
        inv[a] = exp[(q - 1 - log[a]) % (q - 1)];
        for b in 1..q {
            mul[a * q + b] = exp[(log[a] + log[b]) % (q - 1)];
        }
    }

    let mut frob = Vec::with_capacity(n as usize);
    frob.push((0..q as u16).collect::<Vec<u16>>());
    for s in 1..n as usize {
        let prev = &frob[s - 1];
        let next: Vec<u16> = prev
            .iter()
            .map(|&x| {
                // x^p by repeated multiplication; p is small.
                let mut acc = 1u16;
                for _ in 0..p {
                    acc = mul[acc as usize * q + x as usize];
                }
                if x == 0 {
                    0
                } else {
                    acc
                }
            })
            .collect();
        frob.push(next);
    }

    Tables {
        p,
        n,
        q: q as u32,
        modulus,
        add,
        mul,
        neg,
        inv,
        frob,
    }
}

fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let n = modulus.len() - 1;
    if n == 1 {
        return true;
    }
    for d in 1..=n / 2 {
        // Every monic polynomial of degree d.
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if poly_rem_is_zero(p, modulus, &div) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, a: &[u32], monic: &[u32]) -> bool {
    let mut r = a.to_vec();
    let d = monic.len() - 1;
    for k in (d..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (i, &m) in monic.iter().enumerate() {
            r[k - d + i] = (r[k - d + i] + (p - c) * m) % p;
        }
    }
    r.iter().all(|&x| x == 0)
}

/// `v ↦ S·Frob^twist(v)` on `F_{p^n}^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: Matrix<FqElem>,
    /// Frobenius exponent, normalized to `0..n`.
    pub twist: u32,
}

impl SemilinearMap {
    pub fn new(field: &FieldSpec, matrix: Matrix<FqElem>, twist: i64) -> Self {
        assert!(matrix.is_square(), "semilinear map must be square");
        SemilinearMap {
            matrix,
            twist: twist.rem_euclid(field.n() as i64) as u32,
        }
    }

    pub fn identity(field: &FieldSpec, d: usize) -> Self {
        Self::new(field, Matrix::identity(field, d), 0)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, field: &FieldSpec, v: &[FqElem]) -> Vec<FqElem> {
        let tv = field.frob_vec(v, self.twist as i64);
        linalg::mat_vec(field, &self.matrix, &tv)
    }

    /// `self ∘ other`: `S·(S'·v^{(s')})^{(s)} = S·S'^{(s)}·v^{(s+s')}`.
    pub fn compose(&self, field: &FieldSpec, other: &SemilinearMap) -> SemilinearMap {
        let m = linalg::mat_mul(
            field,
            &self.matrix,
            &field.frob_matrix(&other.matrix, self.twist as i64),
        );
        SemilinearMap::new(field, m, self.twist as i64 + other.twist as i64)
    }

    pub fn power(&self, field: &FieldSpec, e: u64) -> SemilinearMap {
        let mut acc = SemilinearMap::identity(field, self.dim());
        for _ in 0..e {
            acc = self.compose(field, &acc);
        }
        acc
    }
}

/// The `F_p`-matrix of a semilinear map acting on prime-field coordinates.
pub fn restrict_scalars(field: &FieldSpec, f: &SemilinearMap) -> Matrix<u8> {
    field.restrict_semilinear(&f.matrix, f.twist as i64)
}

fn minus_identity(fp: &PrimeField, m: &Matrix<u8>) -> Matrix<u8> {
    let mut out = m.clone();
    for i in 0..m.rows() {
        out[(i, i)] = fp.sub(out[(i, i)], 1);
    }
    out
}

/// Fixed vectors of `f` over `F_p`: returns the dimension and a basis in prime coordinates.
pub fn semilinear_invariants(field: &FieldSpec, f: &SemilinearMap) -> (usize, Matrix<u8>) {
    let fp = field.prime_field();
    let k = linalg::nullspace(&fp, &minus_identity(&fp, &restrict_scalars(field, f)));
    (k.rows(), k)
}

/// `dim_{F_p}` of `M / ⟨f(m) − m⟩`.
pub fn semilinear_coinvariants(field: &FieldSpec, f: &SemilinearMap) -> usize {
    let fp = field.prime_field();
    let m = minus_identity(&fp, &restrict_scalars(field, f));
    m.rows() - linalg::rank(&fp, &m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenspaceResult {
    pub value: u8,
    pub dim_invariant: usize,
    pub dim_coinvariant: usize,
}

/// Eigenspace and co-eigenspace of `F = Frob^s` on `k` for the eigenvalue `a ∈ F_p^*`.
pub fn eigenspace(field: &FieldSpec, s: i64, a: u8) -> Result<EigenspaceResult> {
    let fp = field.prime_field();
    let a = fp.from_int(a as i64);
    if a == 0 {
        return Err(Error::ZeroEigenvalue);
    }
    let frob = field.restrict_semilinear(&Matrix::identity(field, 1), s);
    let mut m = frob;
    for i in 0..m.rows() {
        m[(i, i)] = fp.sub(m[(i, i)], a);
    }
    let r = linalg::rank(&fp, &m);
    Ok(EigenspaceResult {
        value: a,
        dim_invariant: m.cols() - r,
        dim_coinvariant: m.rows() - r,
    })
}
