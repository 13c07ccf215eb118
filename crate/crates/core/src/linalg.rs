//! Dense exact linear algebra over finite fields.
//!
//! Everything here is generic over the [`Field`] trait, which is implemented by
//! [`PrimeField`] (elements stored as `u8`) and by [`crate::fields::FieldSpec`]
//! (extension fields, elements stored as packed coefficient indices).
//!
//! Elimination is plain Gaussian elimination with deterministic pivoting: the
//! pivot of a column is the first row (at or below the current rank) with a
//! nonzero entry there. Results are therefore reproducible bit for bit.

use std::fmt;
use std::hash::Hash;

/// Arithmetic context for a finite field.
///
/// Elements are small `Copy` values that only make sense together with the
/// context that produced them.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Copy + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u32;
    /// Number of elements.
    fn size(&self) -> u32;
    /// The `i`-th element in a fixed enumeration of the field, `0 <= i < size`.
    fn element(&self, i: u32) -> Self::Elem;
    /// Image of an integer under `Z -> F`.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, v: i64) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    /// `dst += c * src`, entrywise.
    fn axpy(&self, dst: &mut [Self::Elem], c: Self::Elem, src: &[Self::Elem]) {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    /// `v *= c`, entrywise.
    fn scale(&self, v: &mut [Self::Elem], c: Self::Elem) {
        for x in v.iter_mut() {
            *x = self.mul(c, *x);
        }
    }
}

/// The prime field `F_p`, `p < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    /// Panics unless `p` is a prime below 256.
    pub fn new(p: u32) -> Self {
        assert!(
            p < 256 && is_prime(p),
            "prime field characteristic must be a prime below 256, got {p}"
        );
        PrimeField { p: p as u8 }
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[inline]
fn axpy_u8<const P: u16>(dst: &mut [u8], c: u8, src: &[u8]) {
    let c = c as u16;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u16 + c * s as u16) % P) as u8;
    }
}

#[inline]
fn axpy_u8_generic(p: u16, dst: &mut [u8], c: u8, src: &[u8]) {
    let c = c as u16;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u16 + c * s as u16) % p) as u8;
    }
}

impl Field for PrimeField {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }
    fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }
    fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        pow_mod(a as u64, self.p as u64 - 2, self.p as u64) as u8
    }
    fn characteristic(&self) -> u32 {
        self.p as u32
    }
    fn size(&self) -> u32 {
        self.p as u32
    }
    fn element(&self, i: u32) -> u8 {
        debug_assert!(i < self.p as u32);
        i as u8
    }
    fn from_int(&self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    fn axpy(&self, dst: &mut [u8], c: u8, src: &[u8]) {
        match self.p {
            2 => {
                if c != 0 {
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
            3 => axpy_u8::<3>(dst, c, src),
            5 => axpy_u8::<5>(dst, c, src),
            7 => axpy_u8::<7>(dst, c, src),
            p => axpy_u8_generic(p as u16, dst, c, src),
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<E: Copy> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row has the wrong length");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [E] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[E]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)]);
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<T: Copy>(&self, f: impl Fn(E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn push_row(&mut self, row: &[E]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<E>) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (r, c): (usize, usize)) -> &E {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<E: Copy + Eq> Matrix<E> {
    pub fn is_zero_with(&self, zero: E) -> bool {
        self.data.iter().all(|&x| x == zero)
    }
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for r in 0..a.rows {
        let row_out = r * b.cols;
        for k in 0..a.cols {
            let c = a[(r, k)];
            if field.is_zero(c) {
                continue;
            }
            let src = b.row(k);
            field.axpy(&mut out.data[row_out..row_out + b.cols], c, src);
        }
    }
    out
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "matrix-vector shape mismatch");
    (0..a.rows)
        .map(|r| {
            a.row(r)
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
        })
        .collect()
}

pub fn mat_add<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(&x, &y)| field.add(x, y)).collect();
    Matrix::from_vec(a.rows, a.cols, data)
}

pub fn mat_sub<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(&x, &y)| field.sub(x, y)).collect();
    Matrix::from_vec(a.rows, a.cols, data)
}

pub fn mat_pow<F: Field>(field: &F, a: &Matrix<F::Elem>, mut e: u64) -> Matrix<F::Elem> {
    assert!(a.is_square());
    let mut acc = Matrix::identity(field, a.rows);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(field, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(field, &base, &base);
        }
    }
    acc
}

/// Brings `m` to row echelon form in place and returns the pivot columns.
///
/// With `reduced`, the result is the reduced row echelon form (pivots equal to
/// one and the only nonzero entry of their column). Rows past the rank are zero.
pub fn echelonize<F: Field>(field: &F, m: &mut Matrix<F::Elem>, reduced: bool) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| !field.is_zero(m[(r, col)])) else {
            continue;
        };
        m.swap_rows(rank, pr);
        let inv = field.inv(m[(rank, col)]);
        field.scale(&mut m.row_mut(rank)[col..], inv);

        let (head, tail) = m.data.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols + col..(rank + 1) * cols];
        for r in 0..(rows - rank - 1) {
            let row = &mut tail[r * cols + col..(r + 1) * cols];
            let c = row[0];
            if !field.is_zero(c) {
                field.axpy(row, field.neg(c), pivot_row);
            }
        }
        if reduced {
            let (above, rest) = head.split_at_mut(rank * cols);
            let pivot_row = &rest[col..cols];
            for r in 0..rank {
                let row = &mut above[r * cols + col..(r + 1) * cols];
                let c = row[0];
                if !field.is_zero(c) {
                    field.axpy(row, field.neg(c), pivot_row);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // Eliminating along the shorter side touches fewer rows per pivot.
    let mut work = if m.rows > m.cols { m.transpose() } else { m.clone() };
    echelonize(field, &mut work, false).len()
}

/// A subspace of `F^n` stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<E> {
    basis: Matrix<E>,
    pivots: Vec<usize>,
}

impl<E: Copy + Eq> Subspace<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    /// The span of the rows of `m`.
    pub fn row_space<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        let mut work = m.clone();
        let pivots = echelonize(field, &mut work, true);
        let basis = Matrix::from_vec(pivots.len(), m.cols, work.data[..pivots.len() * m.cols].to_vec());
        Subspace { basis, pivots }
    }

    /// The span of the columns of `m`.
    pub fn column_space<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        Self::row_space(field, &m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace, in place. The result vanishes at every pivot column.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &mut [E]) {
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if !field.is_zero(c) {
                field.axpy(v, field.neg(c), self.basis.row(i));
            }
        }
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| field.is_zero(x))
    }
}

/// Basis (as rows) of the kernel `{x : m x = 0}`.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let cols = m.cols;
    let mut work = m.clone();
    let pivots = echelonize(field, &mut work, true);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(field, free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        out[(k, fc)] = field.one();
        for (i, &pc) in pivots.iter().enumerate() {
            out[(k, pc)] = field.neg(work[(i, fc)]);
        }
    }
    out
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(field, n, 2 * n);
    for r in 0..n {
        aug.row_mut(r)[..n].copy_from_slice(m.row(r));
        aug[(r, n + r)] = field.one();
    }
    let pivots = echelonize(field, &mut aug, true);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Matrix::zeros(field, n, n);
    for r in 0..n {
        out.row_mut(r).copy_from_slice(&aug.row(r)[n..]);
    }
    Some(out)
}

/// Coordinates of vectors of a subspace `Z` modulo a subspace `B ⊆ Z`, with
/// respect to a fixed list of representatives of a basis of `Z / B`.
#[derive(Clone, Debug)]
pub struct Quotient<E> {
    modulus: Subspace<E>,
    /// Representatives, one per row.
    reps: Matrix<E>,
    /// Echelon form of `[reps reduced mod B | I]`.
    tagged: Matrix<E>,
    pivots: Vec<usize>,
}

impl<E: Copy + Eq> Quotient<E> {
    /// Picks representatives greedily from `candidates` (rows, in order),
    /// keeping each one that is independent modulo `modulus` and the previous picks.
    pub fn from_candidates<F: Field<Elem = E>>(field: &F, modulus: Subspace<E>, candidates: &Matrix<E>) -> Self {
        let n = modulus.ambient_dim();
        let mut chosen: Vec<Vec<E>> = Vec::new();
        let mut span = modulus.clone();
        for row in candidates.iter_rows() {
            let mut w = row.to_vec();
            span.reduce(field, &mut w);
            if w.iter().any(|&x| !field.is_zero(x)) {
                chosen.push(row.to_vec());
                let mut stacked = span.basis.clone();
                stacked.push_row(&w);
                span = Subspace::row_space(field, &stacked);
            }
        }
        let reps = Matrix::from_rows(n, &chosen);
        Self::new(field, modulus, reps)
    }

    /// `reps` must be independent modulo `modulus`.
    pub fn new<F: Field<Elem = E>>(field: &F, modulus: Subspace<E>, reps: Matrix<E>) -> Self {
        let n = modulus.ambient_dim();
        let h = reps.rows;
        let mut tagged = Matrix::zeros(field, h, n + h);
        for i in 0..h {
            let mut w = reps.row(i).to_vec();
            modulus.reduce(field, &mut w);
            tagged.row_mut(i)[..n].copy_from_slice(&w);
            tagged[(i, n + i)] = field.one();
        }
        let pivots = echelonize(field, &mut tagged, true);
        assert!(
            pivots.len() == h && pivots.iter().all(|&p| p < n),
            "quotient representatives are dependent modulo the subspace"
        );
        Quotient {
            modulus,
            reps,
            tagged,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.rows
    }

    pub fn reps(&self) -> &Matrix<E> {
        &self.reps
    }

    pub fn modulus(&self) -> &Subspace<E> {
        &self.modulus
    }

    /// Coordinates of the class of `v`, or `None` if `v` is not in `B + span(reps)`.
    pub fn coords<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Option<Vec<E>> {
        let n = self.modulus.ambient_dim();
        let h = self.reps.rows;
        let mut w = vec![field.zero(); n + h];
        w[..n].copy_from_slice(v);
        self.modulus.reduce(field, &mut w[..n]);
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if !field.is_zero(c) {
                field.axpy(&mut w, field.neg(c), self.tagged.row(i));
            }
        }
        if w[..n].iter().any(|&x| !field.is_zero(x)) {
            return None;
        }
        Some(w[n..].iter().map(|&x| field.neg(x)).collect())
    }
}
