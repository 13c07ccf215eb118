//! Group cohomology through the inhomogeneous bar complex, and the action of
//! cochain maps `f ↦ V·f(π(g_1), …, π(g_j))^{(s)}` on cohomology.
//!
//! A `j`-cochain is a function `G^j → M`, stored as a vector whose entry
//! `tuple·d + i` is component `i` of the value at `tuple`, with tuples encoded
//! big-endian in base `b`. The normalized complex only keeps tuples avoiding the
//! identity (`b = m − 1`); every group endomorphism fixes the identity, so
//! pulling back along it preserves normalized cochains.

use crate::diffgroup::{DiffModule, GroupModule};
use crate::fields::{FieldSpec, FqElem, SemilinearMap};
use crate::linalg::{self, echelonize, Field, Matrix, Quotient, Subspace};
use crate::{Error, Result};

/// Largest dense elimination accepted, in prime-field entries: degree `j`
/// needs about `dim C^j · (dim C^{j+1} + dim C^j)` of them.
pub const MAX_DENSE_ENTRIES: usize = 1 << 26;

/// The bar complex of a representation.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    module: GroupModule,
    normalized: bool,
    /// Group elements allowed in tuples, in index order.
    letters: Vec<usize>,
    /// Position of each group element among the letters.
    letter_of: Vec<Option<usize>>,
}

impl CochainComplex {
    pub fn new(module: &GroupModule, normalized: bool) -> Self {
        let g = &module.group;
        let letters: Vec<usize> = (0..g.order()).filter(|&x| !normalized || x != g.identity()).collect();
        let mut letter_of = vec![None; g.order()];
        for (k, &x) in letters.iter().enumerate() {
            letter_of[x] = Some(k);
        }
        CochainComplex {
            module: module.clone(),
            normalized,
            letters,
            letter_of,
        }
    }

    pub fn module(&self) -> &GroupModule {
        &self.module
    }

    pub fn field(&self) -> &FieldSpec {
        &self.module.field
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn base(&self) -> usize {
        self.letters.len()
    }

    pub fn tuple_count(&self, j: usize) -> usize {
        self.base().pow(j as u32)
    }

    /// Dimension of `C^j` over the coefficient field.
    pub fn dim(&self, j: usize) -> usize {
        self.tuple_count(j) * self.module.dim
    }

    /// The group elements of tuple number `idx` in degree `j`.
    pub fn decode(&self, j: usize, mut idx: usize) -> Vec<usize> {
        let b = self.base();
        let mut out = vec![0; j];
        for slot in out.iter_mut().rev() {
            *slot = self.letters[idx % b];
            idx /= b;
        }
        out
    }

    /// Tuple number of a list of group elements, or `None` if an element is not
    /// allowed (the identity, in the normalized complex).
    pub fn encode(&self, elems: &[usize]) -> Option<usize> {
        let b = self.base();
        elems
            .iter()
            .try_fold(0usize, |acc, &x| Some(acc * b + self.letter_of[x]?))
    }

    /// Terms of `(df)(g_1..g_{j+1})`: pairs of (sign or action, source tuple).
    fn differential_terms(&self, j: usize, tuple: &[usize]) -> Vec<(Term, usize)> {
        let g = &self.module.group;
        let mut terms = Vec::with_capacity(j + 2);
        if let Some(src) = self.encode(&tuple[1..]) {
            terms.push((Term::Act(tuple[0]), src));
        }
        for i in 1..=j {
            let mut t = Vec::with_capacity(j);
            t.extend_from_slice(&tuple[..i - 1]);
            t.push(g.mul(tuple[i - 1], tuple[i]));
            t.extend_from_slice(&tuple[i + 1..]);
            if let Some(src) = self.encode(&t) {
                terms.push((Term::Sign(i % 2 == 1), src));
            }
        }
        if let Some(src) = self.encode(&tuple[..j]) {
            terms.push((Term::Sign((j + 1) % 2 == 1), src));
        }
        terms
    }

    /// The matrix of `d^j: C^j → C^{j+1}`.
    pub fn differential(&self, j: usize) -> Matrix<FqElem> {
        let f = self.field();
        let d = self.module.dim;
        let mut out = Matrix::zeros(f, self.dim(j + 1), self.dim(j));
        for row_t in 0..self.tuple_count(j + 1) {
            let tuple = self.decode(j + 1, row_t);
            for (term, src) in self.differential_terms(j, &tuple) {
                for r in 0..d {
                    for c in 0..d {
                        let v = term.entry(f, &self.module, r, c);
                        let cell = &mut out[(row_t * d + r, src * d + c)];
                        *cell = f.add(*cell, v);
                    }
                }
            }
        }
        out
    }

    /// The rows of `(d^j)^T` indexed by `cols`, i.e. `d^j(e_c)` for each `c`.
    fn differential_images(&self, j: usize, cols: &[usize]) -> Matrix<FqElem> {
        let f = self.field();
        let mut out = Matrix::zeros(f, cols.len(), self.dim(j + 1));
        let table = self.term_table(j);
        let mut e = vec![f.zero(); self.dim(j)];
        for (k, &c) in cols.iter().enumerate() {
            e[c] = f.one();
            let img = self.apply_terms(&table, j, &e);
            out.row_mut(k).copy_from_slice(&img);
            e[c] = f.zero();
        }
        out
    }

    /// `d^j f`, evaluated directly from the bar formula.
    pub fn apply_differential(&self, j: usize, cochain: &[FqElem]) -> Vec<FqElem> {
        self.apply_terms(&self.term_table(j), j, cochain)
    }

    /// `differential_terms` for every tuple of degree `j + 1`.
    fn term_table(&self, j: usize) -> Vec<Vec<(Term, usize)>> {
        (0..self.tuple_count(j + 1))
            .map(|t| self.differential_terms(j, &self.decode(j + 1, t)))
            .collect()
    }

    fn apply_terms(&self, table: &[Vec<(Term, usize)>], j: usize, cochain: &[FqElem]) -> Vec<FqElem> {
        let f = self.field();
        let d = self.module.dim;
        assert_eq!(cochain.len(), self.dim(j));
        let mut out = vec![f.zero(); self.dim(j + 1)];
        for (row_t, terms) in table.iter().enumerate() {
            let dst = &mut out[row_t * d..(row_t + 1) * d];
            for &(term, src) in terms {
                let val = &cochain[src * d..(src + 1) * d];
                if val.iter().all(|&x| x == f.zero()) {
                    continue;
                }
                match term {
                    Term::Act(g) => {
                        let v = linalg::mat_vec(f, &self.module.rho[g], val);
                        for (x, y) in dst.iter_mut().zip(v) {
                            *x = f.add(*x, y);
                        }
                    }
                    Term::Sign(negative) => {
                        let c = if negative { f.neg(f.one()) } else { f.one() };
                        f.axpy(dst, c, val);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
enum Term {
    /// `ρ(g)` applied to the value.
    Act(usize),
    /// `±1`; `true` means `−1`.
    Sign(bool),
}

impl Term {
    fn entry(self, f: &FieldSpec, module: &GroupModule, r: usize, c: usize) -> FqElem {
        match self {
            Term::Act(g) => module.rho[g][(r, c)],
            Term::Sign(neg) if r == c => {
                if neg {
                    f.neg(f.one())
                } else {
                    f.one()
                }
            }
            Term::Sign(_) => f.zero(),
        }
    }
}

/// `d^j` of the bar complex as a dense matrix.
pub fn bar_differential(module: &GroupModule, j: usize, normalized: bool) -> Matrix<FqElem> {
    CochainComplex::new(module, normalized).differential(j)
}

/// A cochain map `(Φf)(g_1..g_j) = V·f(π(g_1), …, π(g_j))^{(s)}` for a group
/// endomorphism `π` and a semilinear value map `v ↦ V·v^{(s)}`.
#[derive(Clone, Debug)]
pub struct CochainMap {
    pub pullback: Vec<usize>,
    pub values: SemilinearMap,
}

impl CochainMap {
    /// The `σ`-operator of a difference module: `π = σ_G`, `V = σ_M`.
    pub fn sigma(module: &DiffModule) -> Self {
        CochainMap {
            pullback: module.group().sigma_map().to_vec(),
            values: module.sigma_m.clone(),
        }
    }

    /// Restriction along `σ_G^k` with identity on values.
    pub fn restriction(module: &GroupModule, k: usize) -> Self {
        CochainMap {
            pullback: module.group.sigma_pow_map(k),
            values: SemilinearMap::identity(&module.field, module.dim),
        }
    }

    pub fn twist(&self) -> u32 {
        self.values.twist
    }

    /// Applies the map to a cochain of `src`, producing a cochain of `dst`
    /// (the two complexes must share group, dimension and normalization).
    pub fn apply(&self, src: &CochainComplex, dst: &CochainComplex, j: usize, cochain: &[FqElem]) -> Vec<FqElem> {
        self.apply_pulled(&self.pull_table(src, dst, j), src, dst, j, cochain)
    }

    /// For each tuple of `dst` in degree `j`, the `src` tuple it pulls back to;
    /// `None` where a pulled-back element is the identity of a normalized complex.
    fn pull_table(&self, src: &CochainComplex, dst: &CochainComplex, j: usize) -> Vec<Option<usize>> {
        (0..dst.tuple_count(j))
            .map(|t| {
                let pulled: Vec<usize> = dst.decode(j, t).iter().map(|&g| self.pullback[g]).collect();
                src.encode(&pulled)
            })
            .collect()
    }

    fn apply_pulled(
        &self,
        table: &[Option<usize>],
        src: &CochainComplex,
        dst: &CochainComplex,
        j: usize,
        cochain: &[FqElem],
    ) -> Vec<FqElem> {
        let f = src.field();
        let d = src.module.dim;
        let mut out = vec![f.zero(); dst.dim(j)];
        for (t, s) in table.iter().enumerate() {
            let Some(s) = *s else { continue };
            let v = self.values.apply(f, &cochain[s * d..(s + 1) * d]);
            out[t * d..(t + 1) * d].copy_from_slice(&v);
        }
        out
    }

    /// The matrix over `F_p` of the map `C^j → C^j` on prime-field coordinates.
    pub fn prime_matrix(&self, complex: &CochainComplex, j: usize) -> Matrix<u8> {
        let f = complex.field();
        let n = f.n() as usize;
        let d = complex.module.dim;
        let block = f.restrict_semilinear(&self.values.matrix, self.values.twist as i64);
        let dim = complex.dim(j) * n;
        let mut out = Matrix::filled(dim, dim, 0u8);
        for t in 0..complex.tuple_count(j) {
            let tuple = complex.decode(j, t);
            let pulled: Vec<usize> = tuple.iter().map(|&g| self.pullback[g]).collect();
            let Some(s) = complex.encode(&pulled) else {
                continue;
            };
            out.set_block(t * d * n, s * d * n, &block);
        }
        out
    }
}

/// Checks `d^j ∘ Φ = Φ ∘ d^j` on every basis cochain of `C^j`.
pub fn check_chain_map(complex: &CochainComplex, map: &CochainMap, j: usize) -> Result<()> {
    let f = complex.field();
    let terms = complex.term_table(j);
    let (pull_j, pull_next) = (
        map.pull_table(complex, complex, j),
        map.pull_table(complex, complex, j + 1),
    );
    let mut e = vec![f.zero(); complex.dim(j)];
    for k in 0..e.len() {
        e[k] = f.one();
        let lhs = complex.apply_terms(&terms, j, &map.apply_pulled(&pull_j, complex, complex, j, &e));
        let rhs = map.apply_pulled(&pull_next, complex, complex, j + 1, &complex.apply_terms(&terms, j, &e));
        e[k] = f.zero();
        if lhs != rhs {
            return Err(Error::ChainMapViolation { degree: j });
        }
    }
    Ok(())
}

/// `σ` on `C^j` of a difference module, as a semilinear map (matrix over the
/// coefficient field plus Frobenius twist).
pub fn sigma_on_cochains(module: &DiffModule, j: usize, normalized: bool) -> Result<SemilinearMap> {
    crate::diffgroup::validate_left(module)?;
    let complex = CochainComplex::new(&module.base, normalized);
    let map = CochainMap::sigma(module);
    let f = module.field();
    let dim = complex.dim(j);
    let mut m = Matrix::zeros(f, dim, dim);
    let table = map.pull_table(&complex, &complex, j);
    let mut e = vec![f.zero(); dim];
    for k in 0..dim {
        e[k] = f.one();
        let col = map.apply_pulled(&table, &complex, &complex, j, &e);
        e[k] = f.zero();
        for (r, &x) in col.iter().enumerate() {
            m[(r, k)] = x;
        }
    }
    Ok(SemilinearMap::new(f, m, map.twist() as i64))
}

/// `H^j(G, M) = Z^j / B^j` with a fixed basis of class representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub degree: usize,
    quotient: Quotient<FqElem>,
}

impl CohomologySpace {
    /// Dimension over the coefficient field.
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cocycle representatives, one per row.
    pub fn reps(&self) -> &Matrix<FqElem> {
        self.quotient.reps()
    }

    pub fn coboundaries(&self) -> &Subspace<FqElem> {
        self.quotient.modulus()
    }

    /// Coordinates of the class of a cocycle; `None` if `z` is not a cocycle.
    pub fn class_coords(&self, field: &FieldSpec, z: &[FqElem]) -> Option<Vec<FqElem>> {
        self.quotient.coords(field, z)
    }

    /// The same space with different representatives of the same classes.
    pub fn with_reps(&self, field: &FieldSpec, reps: Matrix<FqElem>) -> Self {
        CohomologySpace {
            degree: self.degree,
            quotient: Quotient::new(field, self.quotient.modulus().clone(), reps),
        }
    }
}

/// Rejects `jmax` when the eliminations up to that degree would not fit in memory.
pub(crate) fn check_size(complex: &CochainComplex, jmax: usize) -> Result<()> {
    let n = complex.field().n() as usize;
    let dim_p = |j: usize| {
        complex
            .base()
            .checked_pow(j as u32)
            .and_then(|t| t.checked_mul(complex.module.dim * n))
    };
    let entries = dim_p(jmax)
        .zip(dim_p(jmax + 1))
        .and_then(|(a, b)| a.checked_mul(a.checked_add(b)?));
    match entries {
        Some(e) if e <= MAX_DENSE_ENTRIES => Ok(()),
        _ => Err(Error::SizeLimit(format!(
            "degree {jmax} needs a dense elimination beyond {MAX_DENSE_ENTRIES} entries; lower jmax"
        ))),
    }
}

/// `H^0 … H^jmax` of the bar complex.
///
/// In each degree, `d^j` is restricted to the coordinates outside the pivots of
/// `B^j`; its kernel there is a complement of `B^j` in `Z^j`, and its image is `B^{j+1}`.
pub fn cohomology_spaces(complex: &CochainComplex, jmax: usize) -> Result<Vec<CohomologySpace>> {
    check_size(complex, jmax)?;
    let f = complex.field();
    let mut out = Vec::with_capacity(jmax + 1);
    let mut boundaries = Subspace::zero(f, complex.dim(0));
    for j in 0..=jmax {
        let dim = complex.dim(j);
        let mut is_pivot = vec![false; dim];
        for &p in boundaries.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..dim).filter(|&c| !is_pivot[c]).collect();
        let images = complex.differential_images(j, &free);
        let next_dim = complex.dim(j + 1);
        let u = free.len();
        let mut aug = Matrix::zeros(f, u, next_dim + u);
        for k in 0..u {
            aug.row_mut(k)[..next_dim].copy_from_slice(images.row(k));
            aug[(k, next_dim + k)] = f.one();
        }
        let pivots = echelonize(f, &mut aug, true);
        let rank = pivots.iter().take_while(|&&p| p < next_dim).count();
        let mut next_basis = Matrix::zeros(f, rank, next_dim);
        for r in 0..rank {
            next_basis.row_mut(r).copy_from_slice(&aug.row(r)[..next_dim]);
        }
        let mut reps = Matrix::zeros(f, u - rank, dim);
        for (k, r) in (rank..u).enumerate() {
            for (i, &c) in free.iter().enumerate() {
                reps[(k, c)] = aug[(r, next_dim + i)];
            }
        }
        out.push(CohomologySpace {
            degree: j,
            quotient: Quotient::new(f, boundaries, reps),
        });
        boundaries = Subspace::row_space(f, &next_basis);
    }
    Ok(out)
}

/// Dimension of `H^j` for `j = 0..=jmax`, over the coefficient field.
pub fn cohomology_dims(module: &GroupModule, jmax: usize, normalized: bool) -> Result<Vec<usize>> {
    let complex = CochainComplex::new(module, normalized);
    Ok(cohomology_spaces(&complex, jmax)?.iter().map(|h| h.dim()).collect())
}

/// The map induced on cohomology by a cochain map from `src` to `dst`, as a
/// matrix in the representative bases (columns are images of source classes).
pub fn induced_matrix(
    src_complex: &CochainComplex,
    src: &CohomologySpace,
    dst_complex: &CochainComplex,
    dst: &CohomologySpace,
    map: &CochainMap,
) -> Result<Matrix<FqElem>> {
    let f = src_complex.field();
    let j = src.degree;
    let mut out = Matrix::zeros(f, dst.dim(), src.dim());
    for (k, z) in src.reps().iter_rows().enumerate() {
        let image = map.apply(src_complex, dst_complex, j, z);
        let coords = dst
            .class_coords(f, &image)
            .ok_or(Error::ChainMapViolation { degree: j })?;
        for (r, c) in coords.into_iter().enumerate() {
            out[(r, k)] = c;
        }
    }
    Ok(out)
}

/// Cohomology of a difference module in one degree, with its induced `σ`.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degree: usize,
    /// Dimension over the prime field.
    pub dim_fp: usize,
    /// Dimension over the coefficient field.
    pub dim_k: usize,
    pub space: CohomologySpace,
    /// `σ` on `H^j` in the representative basis.
    pub sigma: SemilinearMap,
}

/// `H^j(G, M)` with the induced action of `σ = (σ_M)_* ∘ σ_G^*`, for `j <= jmax`.
pub fn cohomology(module: &DiffModule, jmax: usize) -> Result<Vec<CohomologyResult>> {
    crate::diffgroup::validate_left(module)?;
    let complex = CochainComplex::new(&module.base, true);
    let spaces = cohomology_spaces(&complex, jmax)?;
    let map = CochainMap::sigma(module);
    let f = module.field();
    spaces
        .into_iter()
        .map(|space| {
            let m = induced_matrix(&complex, &space, &complex, &space, &map)?;
            Ok(CohomologyResult {
                degree: space.degree,
                dim_fp: space.dim() * f.n() as usize,
                dim_k: space.dim(),
                sigma: SemilinearMap::new(f, m, map.twist() as i64),
                space,
            })
        })
        .collect()
}

/// `σ` on `H^j(G, M)` in the representative basis of [`cohomology`].
pub fn sigma_on_cohomology(module: &DiffModule, j: usize) -> Result<SemilinearMap> {
    let mut all = cohomology(module, j)?;
    Ok(all.pop().expect("degree j is present").sigma)
}

/// Cohomology dimensions of a cyclic group from the periodic resolution:
/// `ker(T−1)`, then alternately `ker N / im(T−1)` and `ker(T−1) / im N`.
pub fn cyclic_cohomology_oracle(module: &GroupModule, jmax: usize) -> Result<Vec<usize>> {
    let g = &module.group;
    let gen = g.cyclic_generator().ok_or(Error::NotCyclic)?;
    let f = &module.field;
    let d = module.dim;
    let t = &module.rho[gen];
    let mut t_minus = t.clone();
    for i in 0..d {
        t_minus[(i, i)] = f.sub(t_minus[(i, i)], f.one());
    }
    let mut norm = Matrix::zeros(f, d, d);
    let mut power = Matrix::identity(f, d);
    for _ in 0..g.order() {
        norm = linalg::mat_add(f, &norm, &power);
        power = linalg::mat_mul(f, &power, t);
    }
    let r_t = linalg::rank(f, &t_minus);
    let r_n = linalg::rank(f, &norm);
    Ok((0..=jmax)
        .map(|j| match j {
            0 => d - r_t,
            j if j % 2 == 1 => (d - r_n) - r_t,
            _ => (d - r_t) - r_n,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffgroup::FiniteDiffGroup;

    fn trivial(p: u32, m: i64, t: i64) -> DiffModule {
        let f = FieldSpec::prime(p).unwrap();
        let g = FiniteDiffGroup::cyclic_group(m, t).unwrap();
        DiffModule::trivial(&f, &g, 1)
    }

    #[test]
    fn degree_zero_differential_of_trivial_module_is_zero() {
        let m = trivial(3, 3, 2);
        let d0 = bar_differential(&m.base, 0, false);
        assert!(d0.is_zero_with(m.field().zero()));
    }

    #[test]
    fn d_squared_vanishes() {
        let f = FieldSpec::prime(3).unwrap();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        let reg = DiffModule::regular_left(&f, &g).unwrap();
        for normalized in [true, false] {
            let c = CochainComplex::new(&reg.base, normalized);
            for j in 0..3 {
                let prod = linalg::mat_mul(&f, &c.differential(j + 1), &c.differential(j));
                assert!(prod.is_zero_with(f.zero()));
            }
        }
    }

    #[test]
    fn small_normalized_differential() {
        let m = trivial(3, 3, 2);
        let d1 = bar_differential(&m.base, 1, true);
        assert_eq!((d1.rows(), d1.cols()), (4, 2));
        assert_eq!(linalg::rank(m.field(), &d1), 1);
    }

    #[test]
    fn trivial_cyclic_cohomology_is_one_dimensional() {
        let m = trivial(3, 3, 2);
        assert_eq!(cohomology_dims(&m.base, 6, true).unwrap(), vec![1; 7]);
        assert_eq!(cohomology_dims(&m.base, 4, false).unwrap(), vec![1; 5]);
        assert_eq!(cyclic_cohomology_oracle(&m.base, 6).unwrap(), vec![1; 7]);
        // Coprime order: F_4 coefficients over Z/3.
        let f4 = FieldSpec::standard(2, 2, 1).unwrap();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        let t = DiffModule::trivial(&f4, &g, 1);
        assert_eq!(cohomology_dims(&t.base, 3, true).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn sigma_acts_by_powers_of_t() {
        // Z/3 with t = 2: σ on H^{2j} and H^{2j−1} is multiplication by 2^j.
        let m = trivial(3, 3, 2);
        let res = cohomology(&m, 6).unwrap();
        for (j, r) in res.iter().enumerate().skip(1) {
            let power = j.div_ceil(2) as u64;
            let expect = m.field().pow(m.field().from_int(2), power);
            assert_eq!(r.sigma.matrix.as_slice(), &[expect], "degree {j}");
        }
    }

    #[test]
    fn sigma_on_degree_one_cochains_swaps_arguments() {
        let m = trivial(3, 3, 2);
        let s = sigma_on_cochains(&m, 1, true).unwrap();
        let f = m.field();
        assert_eq!(
            s.matrix,
            Matrix::from_vec(2, 2, vec![f.zero(), f.one(), f.one(), f.zero()])
        );
        let s0 = sigma_on_cochains(&m, 0, true).unwrap();
        assert_eq!(s0, m.sigma_m);
    }

    #[test]
    fn chain_map_detects_incompatible_modules() {
        let f = FieldSpec::prime(3).unwrap();
        let g = FiniteDiffGroup::cyclic_group(4, 2).unwrap();
        let rho = (0..4)
            .map(|k| Matrix::from_vec(1, 1, vec![f.pow(f.from_int(2), k)]))
            .collect();
        let base = GroupModule {
            field: f.clone(),
            group: g,
            dim: 1,
            rho,
        };
        let bad = DiffModule::new(base, SemilinearMap::identity(&f, 1));
        let complex = CochainComplex::new(&bad.base, true);
        assert_eq!(
            check_chain_map(&complex, &CochainMap::sigma(&bad), 0),
            Err(Error::ChainMapViolation { degree: 0 })
        );
        let good = trivial(3, 4, 2);
        let complex = CochainComplex::new(&good.base, true);
        for j in 0..3 {
            assert_eq!(check_chain_map(&complex, &CochainMap::sigma(&good), j), Ok(()));
        }
    }

    #[test]
    fn cyclic_oracle_rejects_non_cyclic_groups() {
        let f = FieldSpec::prime(2).unwrap();
        let s3 = FiniteDiffGroup::symmetric3_inner();
        let m = GroupModule::trivial(&f, &s3, 1);
        assert_eq!(cyclic_cohomology_oracle(&m, 2), Err(Error::NotCyclic));
        let z4 = FiniteDiffGroup::cyclic_group(4, 3).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        let m = GroupModule::trivial(&f3, &z4, 2);
        assert_eq!(cyclic_cohomology_oracle(&m, 3).unwrap(), vec![2, 0, 0, 0]);
    }
}
