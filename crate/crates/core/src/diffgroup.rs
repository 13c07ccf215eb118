//! Finite groups with an endomorphism, their group algebras, and difference modules.
//!
//! A left difference module over `(A[G], σ)` is a `G`-representation `ρ` on
//! `M = A^d` together with `σ_M(v) = S·v^{(s)}` (entrywise `Frob^s`) such that
//! `σ_M(σ(r)·m) = r·σ_M(m)` for all `r ∈ A[G]`. On scalars this forces
//! `s ≡ −sigma_power (mod n)`; on group elements it reads
//! `S·ρ(σ_G(g))^{(s)} = ρ(g)·S`.

use std::collections::HashMap;
use std::fmt;

use crate::fields::{FieldSpec, FqElem, SemilinearMap};
use crate::linalg::{self, Field, Matrix};
use crate::{Error, Result};

/// A finite group given by its multiplication table, with an endomorphism `σ_G`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteDiffGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    sigma: Vec<usize>,
    description: String,
}

impl fmt::Debug for FiniteDiffGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteDiffGroup")
            .field("description", &self.description)
            .field("sigma", &self.sigma)
            .finish()
    }
}

impl FiniteDiffGroup {
    /// Validates the table (closure, associativity, identity, inverses) and that
    /// `sigma` is an endomorphism.
    pub fn from_table(table: Vec<Vec<usize>>, sigma: Vec<usize>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if table.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidGroup("multiplication table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= m) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * m + b];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![0; m];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..m)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
        }
        let mut g = FiniteDiffGroup {
            order: m,
            table: flat,
            identity,
            inverse,
            sigma: (0..m).collect(),
            description: format!("table group of order {m}"),
        };
        g.set_sigma(sigma)?;
        Ok(g)
    }

    /// `Z/m` with `σ_G(x) = t·x`, `1 <= t < m`.
    pub fn cyclic_group(m: i64, t: i64) -> Result<Self> {
        if m < 1 || t < 1 || t >= m {
            return Err(Error::BadMultiplier { m, t });
        }
        Self::cyclic_with_multiplier(m as usize, t as usize)
    }

    /// `Z/m` with `σ_G(x) = t·x` for any residue `t`, including the zero map.
    pub fn cyclic_with_multiplier(m: usize, t: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table: Vec<Vec<usize>> = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let sigma = (0..m).map(|x| x * t % m).collect();
        let mut g = Self::from_table(table, sigma)?;
        g.description = format!("Z/{m}, sigma(x) = {}x", t % m);
        Ok(g)
    }

    /// The symmetric group on `{0,1,2}`, elements in lexicographic order of their
    /// image lists, with the given endomorphism.
    pub fn symmetric3(sigma: Vec<usize>) -> Result<Self> {
        let perms = s3_permutations();
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    // (a·b)(x) = a(b(x))
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(table, sigma)?;
        g.description = format!("S_3, sigma = {:?}", g.sigma);
        Ok(g)
    }

    /// `S_3` with `σ_G` conjugation by the transposition `(0 1)`.
    pub fn symmetric3_inner() -> Self {
        let plain = Self::symmetric3((0..6).collect()).expect("identity is an endomorphism");
        let tau = s3_permutations()
            .iter()
            .position(|&p| p == [1, 0, 2])
            .expect("transposition");
        let sigma = (0..6).map(|g| plain.mul(plain.mul(tau, g), plain.inv(tau))).collect();
        let mut g = Self::symmetric3(sigma).expect("conjugation is an automorphism");
        g.description = "S_3, sigma = conjugation by (0 1)".into();
        g
    }

    /// Replaces `σ_G`, checking that the new map is an endomorphism.
    pub fn with_sigma(&self, sigma: Vec<usize>) -> Result<Self> {
        let mut g = self.clone();
        g.set_sigma(sigma)?;
        Ok(g)
    }

    fn set_sigma(&mut self, sigma: Vec<usize>) -> Result<()> {
        if sigma.len() != self.order || sigma.iter().any(|&x| x >= self.order) {
            return Err(Error::InvalidGroup("sigma must map each element to an element".into()));
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if sigma[self.mul(a, b)] != self.mul(sigma[a], sigma[b]) {
                    return Err(Error::InvalidGroup(format!(
                        "sigma is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        self.sigma = sigma;
        Ok(())
    }

    pub fn set_description(&mut self, description: impl Into<String>) {
        self.description = description.into();
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn sigma(&self, g: usize) -> usize {
        self.sigma[g]
    }

    pub fn sigma_map(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(g, |x, _| self.sigma[x])
    }

    /// The map `σ_G^k` as an index table.
    pub fn sigma_pow_map(&self, k: usize) -> Vec<usize> {
        (0..self.order).map(|g| self.sigma_pow(g, k)).collect()
    }

    pub fn sigma_injective(&self) -> bool {
        let mut seen = vec![false; self.order];
        self.sigma.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A generator if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order).find(|&g| self.element_order(g) == self.order)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order {
            let next = (0..self.order).find(|g| !span.contains(g)).expect("span is proper");
            gens.push(next);
            span = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Every endomorphism of the group, each as an index table, in a fixed order.
    pub fn endomorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        // Express every element as a word in the generators (BFS order).
        let mut word: Vec<Option<(usize, usize)>> = vec![None; self.order];
        let mut order = vec![self.identity];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    word[y] = Some((x, k));
                    order.push(y);
                }
            }
            i += 1;
        }
        let mut out = Vec::new();
        let total = self.order.pow(gens.len() as u32);
        for code in 0..total {
            let mut images = Vec::with_capacity(gens.len());
            let mut c = code;
            for _ in &gens {
                images.push(c % self.order);
                c /= self.order;
            }
            let mut map = vec![usize::MAX; self.order];
            map[self.identity] = self.identity;
            for &x in &order[1..] {
                let (prev, k) = word[x].expect("non-identity has a word");
                map[x] = self.mul(map[prev], images[k]);
            }
            let is_hom =
                (0..self.order).all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])));
            if is_hom {
                out.push(map);
            }
        }
        out.sort();
        out
    }
}

/// The six permutations of `{0,1,2}` in lexicographic order.
pub fn s3_permutations() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// The group algebra `A[G]` with `σ(Σ a_g g) = Σ σ_A(a_g) σ_G(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebra {
    pub field: FieldSpec,
    pub group: FiniteDiffGroup,
}

/// Dense coefficient vector indexed by group element.
pub type GroupAlgebraElem = Vec<FqElem>;

impl GroupAlgebra {
    pub fn new(field: FieldSpec, group: FiniteDiffGroup) -> Self {
        GroupAlgebra { field, group }
    }

    pub fn basis_element(&self, g: usize) -> GroupAlgebraElem {
        let mut v = vec![self.field.zero(); self.group.order()];
        v[g] = self.field.one();
        v
    }

    pub fn scalar(&self, c: FqElem) -> GroupAlgebraElem {
        let mut v = vec![self.field.zero(); self.group.order()];
        v[self.group.identity()] = c;
        v
    }
}

/// A finite-dimensional representation of a finite group over `F_{p^n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModule {
    pub field: FieldSpec,
    pub group: FiniteDiffGroup,
    pub dim: usize,
    /// `rho[g]` for every group element.
    pub rho: Vec<Matrix<FqElem>>,
}

impl GroupModule {
    /// The trivial representation on `F^d`.
    pub fn trivial(field: &FieldSpec, group: &FiniteDiffGroup, dim: usize) -> Self {
        GroupModule {
            field: field.clone(),
            group: group.clone(),
            dim,
            rho: vec![Matrix::identity(field, dim); group.order()],
        }
    }

    /// Checks shapes, `ρ(e) = I` and `ρ(g)ρ(h) = ρ(gh)`.
    pub fn check_homomorphism(&self) -> Result<()> {
        let f = &self.field;
        if self.rho.len() != self.group.order() {
            return Err(Error::DimensionMismatch(format!(
                "rho given for {} elements, group has {}",
                self.rho.len(),
                self.group.order()
            )));
        }
        for (g, r) in self.rho.iter().enumerate() {
            if r.rows() != self.dim || r.cols() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "rho({g}) is {}x{}, module dimension is {}",
                    r.rows(),
                    r.cols(),
                    self.dim
                )));
            }
        }
        let e = self.group.identity();
        if self.rho[e] != Matrix::identity(f, self.dim) {
            return Err(Error::NotHomomorphism { g: e, h: e });
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                if linalg::mat_mul(f, &self.rho[g], &self.rho[h]) != self.rho[gh] {
                    return Err(Error::NotHomomorphism { g, h });
                }
            }
        }
        Ok(())
    }

    /// `M^G = ∩_g ker(ρ(g) − I)`, as a row basis over `F_{p^n}`.
    pub fn invariants(&self) -> Matrix<FqElem> {
        self.fixed_by(0..self.group.order())
    }

    /// Vectors fixed by `ρ(h)` for every `h` in `elements`.
    pub fn fixed_by(&self, elements: impl IntoIterator<Item = usize>) -> Matrix<FqElem> {
        let f = &self.field;
        let d = self.dim;
        let mut stacked = Matrix::zeros(f, 0, d);
        for g in elements {
            let mut m = self.rho[g].clone();
            for i in 0..d {
                m[(i, i)] = f.sub(m[(i, i)], f.one());
            }
            for r in m.iter_rows() {
                stacked.push_row(r);
            }
        }
        linalg::nullspace(f, &stacked)
    }

    /// `ρ(Σ a_g g) = Σ a_g ρ(g)`.
    pub fn act(&self, r: &GroupAlgebraElem) -> Matrix<FqElem> {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (g, &a) in r.iter().enumerate() {
            if a == f.zero() {
                continue;
            }
            let scaled = self.rho[g].map(|x| f.mul(a, x));
            out = linalg::mat_add(f, &out, &scaled);
        }
        out
    }

    /// The module with `ρ` precomposed with `σ_G^i`.
    pub fn restrict_along_sigma(&self, i: usize) -> GroupModule {
        let map = self.group.sigma_pow_map(i);
        GroupModule {
            field: self.field.clone(),
            group: self.group.clone(),
            dim: self.dim,
            rho: map.iter().map(|&g| self.rho[g].clone()).collect(),
        }
    }
}

/// A left difference module: a representation plus `σ_M(v) = S·v^{(twist)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffModule {
    pub base: GroupModule,
    pub sigma_m: SemilinearMap,
    /// Number of times the module has been twisted by `σ`; scalars of the
    /// underlying space act through `σ_A` to this power.
    pub scalar_twist: u32,
}

/// Why a module fails to be a left (or right) difference module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleViolation {
    Shape(String),
    NotHomomorphism {
        g: usize,
        h: usize,
    },
    /// `σ_M` is not semilinear with respect to the right power of Frobenius.
    ScalarTwist {
        twist: u32,
        expected: u32,
    },
    /// The compatibility identity fails at this group element.
    Compatibility {
        g: usize,
    },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::Shape(s) => write!(f, "{s}"),
            ModuleViolation::NotHomomorphism { g, h } => {
                write!(f, "rho is not a homomorphism at ({g}, {h})")
            }
            ModuleViolation::ScalarTwist { twist, expected } => write!(
                f,
                "sigma_M has Frobenius twist {twist}, compatibility with scalars needs {expected}"
            ),
            ModuleViolation::Compatibility { g } => {
                write!(f, "sigma_M is incompatible with the action of group element {g}")
            }
        }
    }
}

impl From<ModuleViolation> for Error {
    fn from(v: ModuleViolation) -> Self {
        match v {
            ModuleViolation::NotHomomorphism { g, h } => Error::NotHomomorphism { g, h },
            ModuleViolation::Shape(s) => Error::DimensionMismatch(s),
            other => Error::InvalidModule(other.to_string()),
        }
    }
}

fn homomorphism_violation(base: &GroupModule) -> Option<ModuleViolation> {
    match base.check_homomorphism() {
        Ok(()) => None,
        Err(Error::NotHomomorphism { g, h }) => Some(ModuleViolation::NotHomomorphism { g, h }),
        Err(e) => Some(ModuleViolation::Shape(e.to_string())),
    }
}

impl DiffModule {
    /// Assembles a module without validating it; see [`validate_left`].
    pub fn new(base: GroupModule, sigma_m: SemilinearMap) -> Self {
        DiffModule {
            base,
            sigma_m,
            scalar_twist: 0,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.base.field
    }

    pub fn group(&self) -> &FiniteDiffGroup {
        &self.base.group
    }

    pub fn dim(&self) -> usize {
        self.base.dim
    }

    pub fn rho(&self, g: usize) -> &Matrix<FqElem> {
        &self.base.rho[g]
    }

    /// The Frobenius exponent every valid `σ_M` must carry.
    pub fn required_twist(field: &FieldSpec) -> u32 {
        (field.n() - field.sigma_power()) % field.n()
    }

    /// The trivial module `F^d` with `σ_M = σ_A^{-1}` entrywise (the identity when `σ_A = id`).
    pub fn trivial(field: &FieldSpec, group: &FiniteDiffGroup, dim: usize) -> Self {
        let sigma_m = SemilinearMap::new(field, Matrix::identity(field, dim), Self::required_twist(field) as i64);
        DiffModule::new(GroupModule::trivial(field, group, dim), sigma_m)
    }

    /// The zero module.
    pub fn zero(field: &FieldSpec, group: &FiniteDiffGroup) -> Self {
        Self::trivial(field, group, 0)
    }

    /// `A[G]` acting on itself by left multiplication, with `σ_M = σ^{-1}`.
    ///
    /// Needs `σ_G` to be an automorphism.
    pub fn regular_left(field: &FieldSpec, group: &FiniteDiffGroup) -> Result<Self> {
        if !group.sigma_injective() {
            return Err(Error::NonInjectiveSigma);
        }
        let m = group.order();
        let mut sigma_inv = vec![0; m];
        for g in 0..m {
            sigma_inv[group.sigma(g)] = g;
        }
        let rho = (0..m).map(|g| left_regular_matrix(field, group, g)).collect();
        let mut s = Matrix::zeros(field, m, m);
        for h in 0..m {
            s[(sigma_inv[h], h)] = field.one();
        }
        let base = GroupModule {
            field: field.clone(),
            group: group.clone(),
            dim: m,
            rho,
        };
        Ok(DiffModule::new(
            base,
            SemilinearMap::new(field, s, Self::required_twist(field) as i64),
        ))
    }

    /// `σ_M` applied to a vector.
    pub fn apply_sigma(&self, v: &[FqElem]) -> Vec<FqElem> {
        self.sigma_m.apply(self.field(), v)
    }

    /// `M^{(i)}`: the action precomposed with `σ_G^i`, same `σ_M`.
    pub fn twist(&self, i: usize) -> DiffModule {
        let n = self.field().n();
        DiffModule {
            base: self.base.restrict_along_sigma(i),
            sigma_m: self.sigma_m.clone(),
            scalar_twist: ((self.scalar_twist as u64 + i as u64) % n as u64) as u32,
        }
    }
}

fn left_regular_matrix(field: &FieldSpec, group: &FiniteDiffGroup, g: usize) -> Matrix<FqElem> {
    let m = group.order();
    let mut r = Matrix::zeros(field, m, m);
    for h in 0..m {
        r[(group.mul(g, h), h)] = field.one();
    }
    r
}

/// Checks that `M` is a left difference module.
pub fn validate_left(module: &DiffModule) -> std::result::Result<(), ModuleViolation> {
    let f = module.field();
    let d = module.dim();
    if module.sigma_m.dim() != d {
        return Err(ModuleViolation::Shape(format!(
            "sigma_M has dimension {}, module has {d}",
            module.sigma_m.dim()
        )));
    }
    if let Some(v) = homomorphism_violation(&module.base) {
        return Err(v);
    }
    let expected = DiffModule::required_twist(f);
    if d > 0 && module.sigma_m.twist != expected {
        return Err(ModuleViolation::ScalarTwist {
            twist: module.sigma_m.twist,
            expected,
        });
    }
    let s = &module.sigma_m.matrix;
    let tw = module.sigma_m.twist as i64;
    let g_ = module.group();
    for g in 0..g_.order() {
        let lhs = linalg::mat_mul(f, s, &f.frob_matrix(module.rho(g_.sigma(g)), tw));
        let rhs = linalg::mat_mul(f, module.rho(g), s);
        if lhs != rhs {
            return Err(ModuleViolation::Compatibility { g });
        }
    }
    Ok(())
}

/// A right difference module: `m·g = R(g)·m` with `R(gh) = R(h)R(g)`, and
/// `σ_M(m·r) = σ_M(m)·σ(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightDiffModule {
    pub field: FieldSpec,
    pub group: FiniteDiffGroup,
    pub dim: usize,
    /// Matrix of `m ↦ m·g` for every group element.
    pub action: Vec<Matrix<FqElem>>,
    pub sigma_m: SemilinearMap,
}

impl RightDiffModule {
    /// `A[G]` acting on itself by right multiplication, with `σ_M = σ`.
    pub fn regular(field: &FieldSpec, group: &FiniteDiffGroup) -> Self {
        let m = group.order();
        let action = (0..m)
            .map(|g| {
                let mut r = Matrix::zeros(field, m, m);
                for h in 0..m {
                    r[(group.mul(h, g), h)] = field.one();
                }
                r
            })
            .collect();
        let mut s = Matrix::zeros(field, m, m);
        for h in 0..m {
            s[(group.sigma(h), h)] = field.one();
        }
        RightDiffModule {
            field: field.clone(),
            group: group.clone(),
            dim: m,
            action,
            sigma_m: SemilinearMap::new(field, s, field.sigma_power() as i64),
        }
    }

    /// The trivial right action with an arbitrary `σ_M` of the right twist.
    pub fn trivial(field: &FieldSpec, group: &FiniteDiffGroup, s: Matrix<FqElem>) -> Self {
        let d = s.rows();
        RightDiffModule {
            field: field.clone(),
            group: group.clone(),
            dim: d,
            action: vec![Matrix::identity(field, d); group.order()],
            sigma_m: SemilinearMap::new(field, s, field.sigma_power() as i64),
        }
    }

    /// `M^G`: vectors fixed by every `m ↦ m·g`.
    pub fn invariants(&self) -> Matrix<FqElem> {
        GroupModule {
            field: self.field.clone(),
            group: self.group.clone(),
            dim: self.dim,
            rho: self.action.clone(),
        }
        .invariants()
    }
}

/// Checks that `M` is a right difference module.
pub fn validate_right(module: &RightDiffModule) -> std::result::Result<(), ModuleViolation> {
    let f = &module.field;
    let g_ = &module.group;
    let d = module.dim;
    if module.action.len() != g_.order()
        || module.action.iter().any(|r| r.rows() != d || r.cols() != d)
        || module.sigma_m.dim() != d
    {
        return Err(ModuleViolation::Shape("right action has inconsistent shapes".into()));
    }
    if module.action[g_.identity()] != Matrix::identity(f, d) {
        let e = g_.identity();
        return Err(ModuleViolation::NotHomomorphism { g: e, h: e });
    }
    for g in 0..g_.order() {
        for h in 0..g_.order() {
            let prod = linalg::mat_mul(f, &module.action[h], &module.action[g]);
            if prod != module.action[g_.mul(g, h)] {
                return Err(ModuleViolation::NotHomomorphism { g, h });
            }
        }
    }
    let expected = f.sigma_power();
    if d > 0 && module.sigma_m.twist != expected {
        return Err(ModuleViolation::ScalarTwist {
            twist: module.sigma_m.twist,
            expected,
        });
    }
    let s = &module.sigma_m.matrix;
    let tw = module.sigma_m.twist as i64;
    for g in 0..g_.order() {
        let lhs = linalg::mat_mul(f, s, &f.frob_matrix(&module.action[g], tw));
        let rhs = linalg::mat_mul(f, &module.action[g_.sigma(g)], s);
        if lhs != rhs {
            return Err(ModuleViolation::Compatibility { g });
        }
    }
    Ok(())
}

/// An invariant vector whose image under `σ_M` is not invariant, if one exists.
pub fn invariants_not_stable_witness(module: &RightDiffModule) -> Option<Vec<FqElem>> {
    let f = &module.field;
    let inv = module.invariants();
    let span = linalg::Subspace::row_space(f, &inv);
    let witness = inv
        .iter_rows()
        .find(|v| !span.contains(f, &module.sigma_m.apply(f, v)))
        .map(|v| v.to_vec());
    witness
}

/// Searches right difference modules over a cyclic group of the given dimension
/// for one whose invariants are not `σ_M`-stable.
///
/// Faithful actions are preferred; the returned flag says whether the witness
/// module is faithful. Exhaustive, so only meant for tiny fields and dimensions.
pub fn find_unstable_right_module(
    field: &FieldSpec,
    group: &FiniteDiffGroup,
    dim: usize,
) -> Result<Option<(RightDiffModule, Vec<FqElem>, bool)>> {
    let gen = group.cyclic_generator().ok_or(Error::NotCyclic)?;
    let m = group.order();
    let q = field.order() as usize;
    let cells = dim * dim;
    let total = (q as u64)
        .checked_pow(cells as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| Error::SizeLimit("exhaustive right-module search is limited to 2^20 matrices".into()))?;
    let matrix_from = |mut code: u64| {
        let data = (0..cells)
            .map(|_| {
                let e = field.element((code % q as u64) as u32);
                code /= q as u64;
                e
            })
            .collect();
        Matrix::from_vec(dim, dim, data)
    };
    // Powers of the generator, by element.
    let mut gen_power = vec![0usize; m];
    let mut x = group.identity();
    for k in 0..m {
        gen_power[x] = k;
        x = group.mul(x, gen);
    }
    let mut fallback = None;
    for rc in 0..total {
        let r = matrix_from(rc);
        if linalg::mat_pow(field, &r, m as u64) != Matrix::identity(field, dim) {
            continue;
        }
        let action: Vec<Matrix<FqElem>> = (0..m)
            .map(|g| linalg::mat_pow(field, &r, gen_power[g] as u64))
            .collect();
        let faithful = (1..m).all(|k| linalg::mat_pow(field, &r, k as u64) != Matrix::identity(field, dim));
        if !faithful && fallback.is_some() {
            continue;
        }
        for sc in 0..total {
            let module = RightDiffModule {
                field: field.clone(),
                group: group.clone(),
                dim,
                action: action.clone(),
                sigma_m: SemilinearMap::new(field, matrix_from(sc), field.sigma_power() as i64),
            };
            if validate_right(&module).is_err() {
                continue;
            }
            if let Some(w) = invariants_not_stable_witness(&module) {
                if faithful {
                    return Ok(Some((module, w, true)));
                }
                fallback = Some((module, w, false));
                break;
            }
        }
    }
    Ok(fallback)
}

/// Outcome of checking `ρ(σ_G(g)) = σ_M^{-1} ∘ ρ(g) ∘ σ_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomReformulation {
    Holds,
    /// `σ_M` is not invertible, so there is no conjugation to compare with.
    NotApplicable,
    Fails {
        g: usize,
    },
}

/// Restates compatibility as a conjugation identity when `σ_M` is invertible.
pub fn group_hom_reformulation_check(module: &DiffModule) -> HomReformulation {
    let f = module.field();
    let Some(s_inv) = linalg::inverse(f, &module.sigma_m.matrix) else {
        return HomReformulation::NotApplicable;
    };
    let s = &module.sigma_m.matrix;
    let tw = module.sigma_m.twist as i64;
    let g_ = module.group();
    for g in 0..g_.order() {
        // σ_M^{-1}(v) = Frob^{-tw}(S^{-1} v), so the conjugate is Frob^{-tw}(S^{-1} ρ(g) S).
        let inner = linalg::mat_mul(f, &linalg::mat_mul(f, &s_inv, module.rho(g)), s);
        if f.frob_matrix(&inner, -tw) != *module.rho(g_.sigma(g)) {
            return HomReformulation::Fails { g };
        }
    }
    HomReformulation::Holds
}

/// The least `(a, c)` with `σ_G^{a+c} = σ_G^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicityProfile {
    pub preperiod: usize,
    pub period: usize,
}

pub fn sigma_periodicity(group: &FiniteDiffGroup) -> PeriodicityProfile {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut current: Vec<usize> = (0..group.order()).collect();
    let mut k = 0;
    loop {
        if let Some(&a) = seen.get(&current) {
            return PeriodicityProfile {
                preperiod: a,
                period: k - a,
            };
        }
        seen.insert(current.clone(), k);
        current = current.iter().map(|&g| group.sigma(g)).collect();
        k += 1;
    }
}

/// The system `M^{(0)} → M^{(1)} → …` underlying `M^∞ = ⊕_i M^{(i)}`, whose
/// difference structure is the right shift.
///
/// Levels repeat with the group's periodicity profile: `M^{(i+c)} = M^{(i)}` for `i >= a`.
#[derive(Clone, Debug)]
pub struct ShiftSystem {
    pub module: GroupModule,
    pub profile: PeriodicityProfile,
}

impl ShiftSystem {
    pub fn level(&self, i: usize) -> GroupModule {
        self.module.restrict_along_sigma(self.canonical_level(i))
    }

    /// The level in `0..a+c` identified with level `i`.
    pub fn canonical_level(&self, i: usize) -> usize {
        let PeriodicityProfile {
            preperiod: a,
            period: c,
        } = self.profile;
        if i < a {
            i
        } else {
            a + (i - a) % c
        }
    }

    /// Number of distinct levels, `a + c`.
    pub fn distinct_levels(&self) -> usize {
        self.profile.preperiod + self.profile.period
    }

    /// Applies the shift to a finitely supported element `(m_0, m_1, …)`.
    pub fn shift(&self, element: &[Vec<FqElem>]) -> Vec<Vec<FqElem>> {
        let mut out = Vec::with_capacity(element.len() + 1);
        out.push(vec![self.module.field.zero(); self.module.dim]);
        out.extend(element.iter().cloned());
        out
    }
}

pub fn m_infinity(module: &GroupModule) -> ShiftSystem {
    ShiftSystem {
        module: module.clone(),
        profile: sigma_periodicity(&module.group),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn scalar_rep(field: &FieldSpec, group: &FiniteDiffGroup, gen_value: i64) -> GroupModule {
        let m = group.order();
        GroupModule {
            field: field.clone(),
            group: group.clone(),
            dim: 1,
            rho: (0..m)
                .map(|g| {
                    let v = field.pow(field.from_int(gen_value), g as u64);
                    Matrix::from_vec(1, 1, vec![v])
                })
                .collect(),
        }
    }

    #[test]
    fn cyclic_group_multipliers() {
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        assert_eq!(g.sigma_map(), &[0, 2, 1]);
        assert!(g.sigma_injective());
        let id = FiniteDiffGroup::cyclic_group(5, 1).unwrap();
        assert_eq!(id.sigma_map(), &[0, 1, 2, 3, 4]);
        let z4 = FiniteDiffGroup::cyclic_group(4, 2).unwrap();
        assert!(!z4.sigma_injective());
        assert_eq!(z4.sigma(2), 0);
        assert_eq!(
            FiniteDiffGroup::cyclic_group(3, 3),
            Err(Error::BadMultiplier { m: 3, t: 3 })
        );
        assert_eq!(
            FiniteDiffGroup::cyclic_group(3, 0),
            Err(Error::BadMultiplier { m: 3, t: 0 })
        );
    }

    #[test]
    fn table_validation() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteDiffGroup::from_table(bad, vec![0, 1]).is_err());
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(FiniteDiffGroup::from_table(z2.clone(), vec![1, 1]).is_err());
        assert!(FiniteDiffGroup::from_table(z2, vec![0, 0]).is_ok());
    }

    #[test]
    fn endomorphism_counts() {
        // |End(Z/m)| = m; S_3 has 6 automorphisms, 3 maps onto order-2 subgroups, 1 trivial.
        for m in [2, 3, 4, 6] {
            let g = FiniteDiffGroup::cyclic_with_multiplier(m, 1).unwrap();
            assert_eq!(g.endomorphisms().len(), m);
        }
        let s3 = FiniteDiffGroup::symmetric3((0..6).collect()).unwrap();
        assert_eq!(s3.endomorphisms().len(), 10);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn periodicity_profiles() {
        let p = |m, t| sigma_periodicity(&FiniteDiffGroup::cyclic_group(m, t).unwrap());
        assert_eq!(
            p(3, 2),
            PeriodicityProfile {
                preperiod: 0,
                period: 2
            }
        );
        assert_eq!(
            p(5, 1),
            PeriodicityProfile {
                preperiod: 0,
                period: 1
            }
        );
        assert_eq!(
            p(4, 2),
            PeriodicityProfile {
                preperiod: 2,
                period: 1
            }
        );
        let s3 = FiniteDiffGroup::symmetric3_inner();
        assert_eq!(
            sigma_periodicity(&s3),
            PeriodicityProfile {
                preperiod: 0,
                period: 2
            }
        );
    }

    #[test]
    fn trivial_and_regular_modules_validate() {
        let f = f3();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        assert_eq!(validate_left(&DiffModule::trivial(&f, &g, 2)), Ok(()));
        let reg = DiffModule::regular_left(&f, &g).unwrap();
        assert_eq!(validate_left(&reg), Ok(()));
        // For t = 2 on Z/3, σ_G is an involution, so σ_M = σ^{-1} = σ.
        let mut direct = reg.clone();
        let mut s = Matrix::zeros(&f, 3, 3);
        for h in 0..3 {
            s[(g.sigma(h), h)] = f.one();
        }
        direct.sigma_m = SemilinearMap::new(&f, s, 0);
        assert_eq!(validate_left(&direct), Ok(()));
        let f9 = FieldSpec::standard(3, 2, 1).unwrap();
        assert_eq!(validate_left(&DiffModule::regular_left(&f9, &g).unwrap()), Ok(()));
    }

    #[test]
    fn sign_character_over_z4() {
        let f = f3();
        let sigma_id = SemilinearMap::identity(&f, 1);
        // ρ(1) = −1, σ_M = id. With t = 3 the identity holds, with t = 2 it fails at g = 1.
        let g3 = FiniteDiffGroup::cyclic_group(4, 3).unwrap();
        let m3 = DiffModule::new(scalar_rep(&f, &g3, -1), sigma_id.clone());
        assert_eq!(validate_left(&m3), Ok(()));
        let g2 = FiniteDiffGroup::cyclic_group(4, 2).unwrap();
        let m2 = DiffModule::new(scalar_rep(&f, &g2, -1), sigma_id);
        assert_eq!(validate_left(&m2), Err(ModuleViolation::Compatibility { g: 1 }));
    }

    #[test]
    fn scalar_twist_is_checked() {
        let f9 = FieldSpec::standard(3, 2, 1).unwrap();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        let mut m = DiffModule::trivial(&f9, &g, 1);
        assert_eq!(m.sigma_m.twist, 1);
        assert_eq!(validate_left(&m), Ok(()));
        m.sigma_m = SemilinearMap::identity(&f9, 1);
        assert_eq!(
            validate_left(&m),
            Err(ModuleViolation::ScalarTwist { twist: 0, expected: 1 })
        );
    }

    #[test]
    fn right_modules() {
        let f = f3();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        assert_eq!(validate_right(&RightDiffModule::regular(&f, &g)), Ok(()));
        let s = Matrix::from_vec(2, 2, vec![f.from_int(1), f.from_int(2), f.zero(), f.one()]);
        assert_eq!(validate_right(&RightDiffModule::trivial(&f, &g, s)), Ok(()));
        let f9 = FieldSpec::standard(3, 2, 1).unwrap();
        assert_eq!(validate_right(&RightDiffModule::regular(&f9, &g)), Ok(()));
    }

    #[test]
    fn unstable_invariants_for_a_right_module() {
        let f = f3();
        let g = FiniteDiffGroup::cyclic_group(4, 2).unwrap();
        let (module, witness, _faithful) = find_unstable_right_module(&f, &g, 2)
            .unwrap()
            .expect("a witness exists");
        assert_eq!(validate_right(&module), Ok(()));
        let inv = linalg::Subspace::row_space(&f, &module.invariants());
        assert!(inv.contains(&f, &witness));
        assert!(!inv.contains(&f, &module.sigma_m.apply(&f, &witness)));
    }

    #[test]
    fn twisting() {
        let f = f3();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        let reg = DiffModule::regular_left(&f, &g).unwrap();
        assert_eq!(reg.twist(0), reg);
        let t1 = reg.twist(1);
        assert_eq!(t1.rho(1), reg.rho(2));
        assert_eq!(validate_left(&t1), Ok(()));
        assert_eq!(reg.twist(1).twist(2), reg.twist(3));
    }

    #[test]
    fn hom_reformulation() {
        let f = f3();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        assert_eq!(
            group_hom_reformulation_check(&DiffModule::trivial(&f, &g, 2)),
            HomReformulation::Holds
        );
        assert_eq!(
            group_hom_reformulation_check(&DiffModule::regular_left(&f, &g).unwrap()),
            HomReformulation::Holds
        );
        let mut zero_s = DiffModule::trivial(&f, &g, 2);
        zero_s.sigma_m = SemilinearMap::new(&f, Matrix::zeros(&f, 2, 2), 0);
        assert_eq!(group_hom_reformulation_check(&zero_s), HomReformulation::NotApplicable);
    }

    #[test]
    fn shift_system_levels() {
        let f = f3();
        let g = FiniteDiffGroup::cyclic_group(3, 2).unwrap();
        let reg = DiffModule::regular_left(&f, &g).unwrap();
        let sys = m_infinity(&reg.base);
        assert_eq!(sys.profile.period, 2);
        assert_eq!(sys.level(2), sys.level(0));
        assert_eq!(sys.level(3), sys.level(1));
        let shifted = sys.shift(&[vec![f.one(); 3]]);
        assert_eq!(shifted.len(), 2);
        assert!(shifted[0].iter().all(|&x| x == f.zero()));
    }
}
