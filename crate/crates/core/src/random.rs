//! Seeded generators for random modules, used by the randomized checks.
//!
//! Representations are built from small blocks (all 1- and 2-dimensional
//! representations, found by enumerating generator images), glued by random
//! extension cocycles and conjugated by a random invertible matrix. A
//! compatible `σ_M` is then drawn from the solution space of
//! `S·ρ(σ_G g)^{(tw)} = ρ(g)·S`.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffgroup::{validate_left, DiffModule, FiniteDiffGroup, GroupModule, ModuleViolation};
use crate::fields::{FieldSpec, FqElem, SemilinearMap};
use crate::linalg::{self, Field, Matrix};
use crate::ore::OrePoly;
use crate::ratdiff::GradedDiffModule;

/// Seed of the default randomized suite.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub type CaseRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elem(field: &FieldSpec, rng: &mut CaseRng) -> FqElem {
    field.element(rng.random_range(0..field.order()))
}

pub fn random_matrix(field: &FieldSpec, rows: usize, cols: usize, rng: &mut CaseRng) -> Matrix<FqElem> {
    let data = (0..rows * cols).map(|_| random_elem(field, rng)).collect();
    Matrix::from_vec(rows, cols, data)
}

pub fn random_invertible(field: &FieldSpec, d: usize, rng: &mut CaseRng) -> Matrix<FqElem> {
    loop {
        let m = random_matrix(field, d, d, rng);
        if linalg::rank(field, &m) == d {
            return m;
        }
    }
}

/// Extends `gens[i] ↦ images[i]` to all of `G` on `k^d`, or `None` if that is not a homomorphism.
pub fn extend_from_generators(
    field: &FieldSpec,
    group: &FiniteDiffGroup,
    d: usize,
    gens: &[usize],
    images: &[Matrix<FqElem>],
) -> Option<Vec<Matrix<FqElem>>> {
    let mut rho: Vec<Option<Matrix<FqElem>>> = vec![None; group.order()];
    rho[group.identity()] = Some(Matrix::identity(field, d));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(h) = queue.pop_front() {
        for (&g, a) in gens.iter().zip(images) {
            let hg = group.mul(h, g);
            let value = linalg::mat_mul(field, rho[h].as_ref().expect("visited"), a);
            match &rho[hg] {
                Some(existing) if *existing != value => return None,
                Some(_) => {}
                None => {
                    rho[hg] = Some(value);
                    queue.push_back(hg);
                }
            }
        }
    }
    let rho: Vec<_> = rho.into_iter().collect::<Option<_>>()?;
    let module = GroupModule {
        field: field.clone(),
        group: group.clone(),
        dim: d,
        rho,
    };
    module.check_homomorphism().ok()?;
    Some(module.rho)
}

/// Every representation of dimension 1 or 2, by enumerating generator images
/// whose order divides the generator's order.
pub fn small_representations(field: &FieldSpec, group: &FiniteDiffGroup, d: usize) -> Vec<Vec<Matrix<FqElem>>> {
    assert!((1..=2).contains(&d), "only dimensions 1 and 2 are enumerated");
    let gens = group.generators();
    let q = field.order() as usize;
    let all: Vec<Matrix<FqElem>> = (0..q.pow((d * d) as u32))
        .map(|mut code| {
            let data = (0..d * d)
                .map(|_| {
                    let e = field.element((code % q) as u32);
                    code /= q;
                    e
                })
                .collect();
            Matrix::from_vec(d, d, data)
        })
        .collect();
    let identity = Matrix::identity(field, d);
    let candidates: Vec<Vec<&Matrix<FqElem>>> = gens
        .iter()
        .map(|&g| {
            let order = group.element_order(g) as u64;
            all.iter()
                .filter(|a| linalg::mat_pow(field, a, order) == identity)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let images: Vec<Matrix<FqElem>> = choice.iter().zip(&candidates).map(|(&i, c)| c[i].clone()).collect();
        if let Some(rho) = extend_from_generators(field, group, d, &gens, &images) {
            out.push(rho);
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Cocycles `c: G → Hom(V_2, V_1)` with `c(gh) = ρ_1(g)c(h) + c(g)ρ_2(h)`, so that
/// `[[ρ_1, c], [0, ρ_2]]` is a representation.
fn extension_cocycles(
    field: &FieldSpec,
    group: &FiniteDiffGroup,
    rho1: &[Matrix<FqElem>],
    rho2: &[Matrix<FqElem>],
) -> Vec<Vec<Matrix<FqElem>>> {
    let (d1, d2, n) = (rho1[0].rows(), rho2[0].rows(), group.order());
    let unknowns = n * d1 * d2;
    let unpack = |x: &[FqElem]| -> Vec<Matrix<FqElem>> {
        x.chunks(d1 * d2)
            .map(|c| Matrix::from_vec(d1, d2, c.to_vec()))
            .collect()
    };
    let residual = |c: &[Matrix<FqElem>]| -> Vec<FqElem> {
        let mut out = Vec::with_capacity(n * n * d1 * d2);
        for g in 0..n {
            for h in 0..n {
                let lhs = &c[group.mul(g, h)];
                let rhs = linalg::mat_add(
                    field,
                    &linalg::mat_mul(field, &rho1[g], &c[h]),
                    &linalg::mat_mul(field, &c[g], &rho2[h]),
                );
                out.extend(linalg::mat_sub(field, lhs, &rhs).as_slice());
            }
        }
        out
    };
    let basis = solve_linear(field, unknowns, |x| residual(&unpack(x)));
    basis.iter_rows().map(unpack).collect()
}

/// Kernel of a linear map given as a closure on coordinate vectors.
fn solve_linear(field: &FieldSpec, unknowns: usize, map: impl Fn(&[FqElem]) -> Vec<FqElem>) -> Matrix<FqElem> {
    let columns: Vec<Vec<FqElem>> = (0..unknowns)
        .map(|k| {
            let mut e = vec![field.zero(); unknowns];
            e[k] = field.one();
            map(&e)
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    let mut a = Matrix::zeros(field, rows, unknowns);
    for (k, col) in columns.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            a[(r, k)] = v;
        }
    }
    linalg::nullspace(field, &a)
}

fn random_combination(field: &FieldSpec, basis: &[Vec<Matrix<FqElem>>], rng: &mut CaseRng) -> Vec<Matrix<FqElem>> {
    let mut acc: Vec<Matrix<FqElem>> = basis[0]
        .iter()
        .map(|m| Matrix::zeros(field, m.rows(), m.cols()))
        .collect();
    for b in basis {
        let c = random_elem(field, rng);
        for (a, m) in acc.iter_mut().zip(b) {
            *a = linalg::mat_add(field, a, &m.map(|x| field.mul(c, x)));
        }
    }
    acc
}

/// A random twisted polynomial over `field` with at most `max_len` coefficients.
pub fn random_ore_poly(field: &FieldSpec, max_len: usize, rng: &mut CaseRng) -> OrePoly<FieldSpec> {
    let len = rng.random_range(0..=max_len);
    OrePoly::new(field, (0..len).map(|_| random_elem(field, rng)).collect())
}

/// A random representation of dimension `dim`.
pub fn random_group_module(field: &FieldSpec, group: &FiniteDiffGroup, dim: usize, rng: &mut CaseRng) -> GroupModule {
    if dim == 0 {
        return GroupModule::trivial(field, group, 0);
    }
    let ones = small_representations(field, group, 1);
    let twos = if dim >= 2 {
        small_representations(field, group, 2)
    } else {
        Vec::new()
    };
    let mut blocks: Vec<Vec<Matrix<FqElem>>> = Vec::new();
    let mut left = dim;
    while left > 0 {
        if left >= 2 && !twos.is_empty() && rng.random_bool(0.5) {
            blocks.push(twos.choose(rng).expect("nonempty").clone());
            left -= 2;
        } else {
            blocks.push(ones.choose(rng).expect("trivial character exists").clone());
            left -= 1;
        }
    }
    let mut rho = blocks.pop().expect("dim > 0");
    while let Some(block) = blocks.pop() {
        let cocycles = extension_cocycles(field, group, &block, &rho);
        let c = if cocycles.is_empty() || rng.random_bool(0.25) {
            None
        } else {
            Some(random_combination(field, &cocycles, rng))
        };
        let (d1, d2) = (block[0].rows(), rho[0].rows());
        rho = (0..group.order())
            .map(|g| {
                let mut m = Matrix::zeros(field, d1 + d2, d1 + d2);
                m.set_block(0, 0, &block[g]);
                m.set_block(d1, d1, &rho[g]);
                if let Some(c) = &c {
                    m.set_block(0, d1, &c[g]);
                }
                m
            })
            .collect();
    }
    let p = random_invertible(field, dim, rng);
    let p_inv = linalg::inverse(field, &p).expect("invertible");
    let rho = rho
        .iter()
        .map(|m| linalg::mat_mul(field, &linalg::mat_mul(field, &p, m), &p_inv))
        .collect();
    GroupModule {
        field: field.clone(),
        group: group.clone(),
        dim,
        rho,
    }
}

/// Basis of the matrices `S` with `S·ρ(σ_G g)^{(tw)} = ρ(g)·S` for all `g`,
/// where `tw` is the twist forced by the scalars.
pub fn compatible_sigma_basis(module: &GroupModule) -> Vec<Matrix<FqElem>> {
    let f = &module.field;
    let d = module.dim;
    let tw = DiffModule::required_twist(f) as i64;
    let twisted: Vec<Matrix<FqElem>> = (0..module.group.order())
        .map(|g| f.frob_matrix(&module.rho[module.group.sigma(g)], tw))
        .collect();
    let basis = solve_linear(f, d * d, |x| {
        let s = Matrix::from_vec(d, d, x.to_vec());
        let mut out = Vec::new();
        for (g, t) in twisted.iter().enumerate() {
            let r = linalg::mat_sub(f, &linalg::mat_mul(f, &s, t), &linalg::mat_mul(f, &module.rho[g], &s));
            out.extend(r.as_slice());
        }
        out
    });
    basis.iter_rows().map(|r| Matrix::from_vec(d, d, r.to_vec())).collect()
}

/// A random difference module with the given representation, or `None` if
/// only `S = 0` satisfies the compatibility condition and `allow_zero` is false.
pub fn random_sigma(module: &GroupModule, allow_zero: bool, rng: &mut CaseRng) -> Option<DiffModule> {
    let f = &module.field;
    let basis = compatible_sigma_basis(module);
    if basis.is_empty() && !allow_zero {
        return None;
    }
    let d = module.dim;
    let s = if basis.is_empty() {
        Matrix::zeros(f, d, d)
    } else {
        let wrapped: Vec<Vec<Matrix<FqElem>>> = basis.into_iter().map(|m| vec![m]).collect();
        random_combination(f, &wrapped, rng).remove(0)
    };
    let sigma = SemilinearMap::new(f, s, DiffModule::required_twist(f) as i64);
    Some(DiffModule::new(module.clone(), sigma))
}

/// A random difference module, preferring a nonzero `σ_M`.
pub fn random_diff_module(field: &FieldSpec, group: &FiniteDiffGroup, dim: usize, rng: &mut CaseRng) -> DiffModule {
    for _ in 0..8 {
        let base = random_group_module(field, group, dim, rng);
        if let Some(m) = random_sigma(&base, false, rng) {
            return m;
        }
    }
    let base = random_group_module(field, group, dim, rng);
    random_sigma(&base, true, rng).expect("zero is always allowed")
}

/// Perturbs `σ_M` so that the compatibility condition fails while the
/// representation and the scalar twist stay valid. `None` if every `S`
/// is compatible (for instance when `G` acts trivially).
pub fn corrupt(module: &DiffModule, rng: &mut CaseRng) -> Option<DiffModule> {
    let f = module.field();
    let d = module.dim();
    for _ in 0..32 {
        let e = random_matrix(f, d, d, rng);
        let s = linalg::mat_add(f, &module.sigma_m.matrix, &e);
        let bad = DiffModule::new(
            module.base.clone(),
            SemilinearMap::new(f, s, module.sigma_m.twist as i64),
        );
        if matches!(validate_left(&bad), Err(ModuleViolation::Compatibility { .. })) {
            return Some(bad);
        }
    }
    None
}

/// One instance of the randomized suite.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub index: usize,
    pub label: String,
    pub module: DiffModule,
    pub jmax: usize,
}

/// The groups of the randomized suite, each with every endomorphism as `σ_G`.
pub fn suite_groups() -> Vec<FiniteDiffGroup> {
    let bases = [
        FiniteDiffGroup::cyclic_with_multiplier(2, 1),
        FiniteDiffGroup::cyclic_with_multiplier(3, 1),
        FiniteDiffGroup::cyclic_with_multiplier(4, 1),
        FiniteDiffGroup::cyclic_with_multiplier(6, 1),
        FiniteDiffGroup::symmetric3((0..6).collect()),
    ];
    let mut out = Vec::new();
    for base in bases {
        let base = base.expect("suite groups are valid");
        let cyclic = base.is_abelian() && base.cyclic_generator() == Some(1);
        for sigma in base.endomorphisms() {
            let mut g = base.with_sigma(sigma.clone()).expect("endomorphism");
            g.set_description(if cyclic {
                format!("Z/{}, sigma(x) = {}x", g.order(), sigma[1])
            } else {
                format!("S_3, sigma = {sigma:?}")
            });
            out.push(g);
        }
    }
    out
}

/// Top degree of the suite for a cochain space of `(|G|−1)^j·d·n` prime-field
/// coordinates: 4 while the degree-5 cochains stay below 4000 coordinates, else 3.
pub fn suite_jmax(group_order: usize, dim: usize, n: u32) -> usize {
    let b = group_order.saturating_sub(1);
    if b.pow(5) * dim * n as usize <= 4000 {
        4
    } else {
        3
    }
}

fn suite_fields() -> Vec<FieldSpec> {
    [(2, 1), (3, 1), (2, 2), (3, 2)]
        .into_iter()
        .map(|(p, n)| FieldSpec::standard(p, n, (n > 1) as i64).expect("standard field"))
        .collect()
}

/// `count` valid instances cycling through every `(G, σ_G)` pair and the fields
/// `F_2, F_3, F_4, F_9` (with `σ_A` the Frobenius), with random dimension `1..=3`.
pub fn oracle_suite(seed: u64, count: usize) -> Vec<SuiteCase> {
    let mut rng = rng(seed);
    let groups = suite_groups();
    let fields = suite_fields();
    (0..count)
        .map(|i| {
            let group = &groups[i % groups.len()];
            let field = &fields[(i / groups.len() + i) % fields.len()];
            let dim = rng.random_range(1..=3);
            let module = random_diff_module(field, group, dim, &mut rng);
            SuiteCase {
                index: i,
                label: format!("{} over F_{} dim {dim}", group.description(), field.order()),
                jmax: suite_jmax(group.order(), dim, field.n()),
                module,
            }
        })
        .collect()
}

/// `count` modules violating the compatibility condition.
pub fn negative_controls(seed: u64, count: usize) -> Vec<SuiteCase> {
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let groups = suite_groups();
    let fields = suite_fields();
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0usize;
    while out.len() < count {
        let group = &groups[attempt % groups.len()];
        let field = &fields[attempt % fields.len()];
        attempt += 1;
        let dim = rng.random_range(1..=2);
        let valid = random_diff_module(field, group, dim, &mut rng);
        if let Some(module) = corrupt(&valid, &mut rng) {
            out.push(SuiteCase {
                index: out.len(),
                label: format!("corrupted {} over F_{} dim {dim}", group.description(), field.order()),
                jmax: 2,
                module,
            });
        }
    }
    out
}

/// A random graded module over `F_p` with weights in `[-range, range]`,
/// multiplicities `0..=max_dim` and random `x` maps.
pub fn random_graded_module(p: u8, range: i64, max_dim: usize, rng: &mut CaseRng) -> GradedDiffModule {
    let mut weights = BTreeMap::new();
    for j in -range..=range {
        if rng.random_bool(0.5) {
            weights.insert(j, rng.random_range(0..=max_dim));
        }
    }
    let dim_of = |j: i64, w: &BTreeMap<i64, usize>| w.get(&j).copied().unwrap_or(0);
    let xmaps = weights
        .keys()
        .map(|&j| {
            let (rows, cols) = (dim_of(p as i64 * j, &weights), dim_of(j, &weights));
            let data = (0..rows * cols).map(|_| rng.random_range(0..p)).collect();
            (j, Matrix::from_vec(rows, cols, data))
        })
        .collect();
    GradedDiffModule { p, weights, xmaps }
}
