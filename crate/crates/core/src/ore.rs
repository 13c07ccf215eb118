//! Twisted polynomial rings `R[σ]` and the colimit module `R̃`.
//!
//! Polynomials are written `Σ tⁱ rᵢ` with coefficients to the right of the
//! powers of `t`; multiplication is driven by `r·t = t·σ(r)`:
//!
//! `(Σ tⁱ rᵢ)(Σ tʲ r′ⱼ) = Σₙ tⁿ Σ_{i+j=n} σʲ(rᵢ) r′ⱼ`.

use std::fmt::Debug;

use crate::diffgroup::{DiffModule, GroupAlgebra, GroupAlgebraElem};
use crate::fields::{FieldSpec, FqElem};
use crate::linalg::{self, Field};
use crate::{Error, Result};

/// A ring with a distinguished unital endomorphism.
pub trait DiffRing: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sigma(&self, a: &Self::Elem) -> Self::Elem;
    /// `σ^{-1}(a)` when `σ` is bijective, `None` otherwise.
    fn sigma_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn sigma_injective(&self) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sigma_pow(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        (0..k).fold(a.clone(), |x, _| self.sigma(&x))
    }
}

impl DiffRing for FieldSpec {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        Field::zero(self)
    }
    fn one(&self) -> FqElem {
        Field::one(self)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Field::mul(self, *a, *b)
    }
    fn sigma(&self, a: &FqElem) -> FqElem {
        FieldSpec::sigma(self, *a)
    }
    fn sigma_inv(&self, a: &FqElem) -> Option<FqElem> {
        Some(FieldSpec::sigma_inv(self, *a))
    }
    fn sigma_injective(&self) -> bool {
        true
    }
}

impl DiffRing for GroupAlgebra {
    type Elem = GroupAlgebraElem;

    fn zero(&self) -> GroupAlgebraElem {
        vec![Field::zero(&self.field); self.group.order()]
    }
    fn one(&self) -> GroupAlgebraElem {
        self.basis_element(self.group.identity())
    }
    fn add(&self, a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> GroupAlgebraElem {
        a.iter().zip(b).map(|(&x, &y)| Field::add(&self.field, x, y)).collect()
    }
    fn neg(&self, a: &GroupAlgebraElem) -> GroupAlgebraElem {
        a.iter().map(|&x| Field::neg(&self.field, x)).collect()
    }
    fn mul(&self, a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> GroupAlgebraElem {
        let f = &self.field;
        let mut out = DiffRing::zero(self);
        for (g, &x) in a.iter().enumerate() {
            if x == Field::zero(f) {
                continue;
            }
            for (h, &y) in b.iter().enumerate() {
                let gh = self.group.mul(g, h);
                out[gh] = Field::add(f, out[gh], Field::mul(f, x, y));
            }
        }
        out
    }
    fn sigma(&self, a: &GroupAlgebraElem) -> GroupAlgebraElem {
        let f = &self.field;
        let mut out = DiffRing::zero(self);
        for (g, &x) in a.iter().enumerate() {
            let sg = self.group.sigma(g);
            out[sg] = Field::add(f, out[sg], f.sigma(x));
        }
        out
    }
    fn sigma_inv(&self, a: &GroupAlgebraElem) -> Option<GroupAlgebraElem> {
        if !self.group.sigma_injective() {
            return None;
        }
        let f = &self.field;
        let mut out = DiffRing::zero(self);
        for (g, y) in out.iter_mut().enumerate() {
            *y = f.sigma_inv(a[self.group.sigma(g)]);
        }
        Some(out)
    }
    fn sigma_injective(&self) -> bool {
        self.group.sigma_injective()
    }
}

/// `Σ tⁱ rᵢ` over a difference ring, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct OrePoly<R: DiffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: DiffRing> OrePoly<R> {
    pub fn new(ring: &R, coeffs: Vec<R::Elem>) -> Self {
        let mut p = OrePoly {
            ring: ring.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(ring: &R) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn one(ring: &R) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    /// The variable `t`.
    pub fn t(ring: &R) -> Self {
        Self::new(ring, vec![ring.zero(), ring.one()])
    }

    /// `1 − t`.
    pub fn one_minus_t(ring: &R) -> Self {
        Self::new(ring, vec![ring.one(), ring.neg(&ring.one())])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = self.ring.zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                self.ring.add(a, b)
            })
            .collect();
        Ok(Self::new(&self.ring, coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self::new(&self.ring, coeffs)
    }
}

pub fn ore_mul<R: DiffRing>(f: &OrePoly<R>, g: &OrePoly<R>) -> Result<OrePoly<R>> {
    if f.ring != g.ring {
        return Err(Error::RingMismatch);
    }
    let ring = &f.ring;
    if f.is_zero() || g.is_zero() {
        return Ok(OrePoly::zero(ring));
    }
    let mut out = vec![ring.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, ri) in f.coeffs.iter().enumerate() {
        // σʲ(rᵢ) for successive j.
        let mut twisted = ri.clone();
        for (j, rj) in g.coeffs.iter().enumerate() {
            if j > 0 {
                twisted = ring.sigma(&twisted);
            }
            out[i + j] = ring.add(&out[i + j], &ring.mul(&twisted, rj));
        }
    }
    Ok(OrePoly::new(ring, out))
}

/// `f·(1 − t) = Σ tⁱ rᵢ − Σ t^{i+1} σ(rᵢ)`.
pub fn right_mul_one_minus_t<R: DiffRing>(f: &OrePoly<R>) -> OrePoly<R> {
    let ring = &f.ring;
    let mut out = f.coeffs.clone();
    out.push(ring.zero());
    for (i, r) in f.coeffs.iter().enumerate() {
        out[i + 1] = ring.sub(&out[i + 1], &ring.sigma(r));
    }
    OrePoly::new(ring, out)
}

/// The class of `tⁱ r` in `R̃ = R[σ] / R[σ](1 − t)`.
///
/// Requires `σ` bijective; over finite rings injective already implies this.
#[derive(Clone, Debug)]
pub struct RTildeElem<R: DiffRing> {
    ring: R,
    level: usize,
    coeff: R::Elem,
}

impl<R: DiffRing> RTildeElem<R> {
    pub fn new(ring: &R, level: usize, coeff: R::Elem) -> Result<Self> {
        if !ring.sigma_injective() {
            return Err(Error::NonInjectiveSigma);
        }
        Ok(RTildeElem {
            ring: ring.clone(),
            level,
            coeff,
        })
    }

    /// `α(r)`: the class of `r` at level 0.
    pub fn alpha(ring: &R, r: R::Elem) -> Result<Self> {
        Self::new(ring, 0, r)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeff(&self) -> &R::Elem {
        &self.coeff
    }

    /// The representative at level 0, using `(i, r) ≡ (i−1, σ^{-1}(r))`.
    pub fn normalize(&self) -> Self {
        let mut c = self.coeff.clone();
        for _ in 0..self.level {
            c = self.ring.sigma_inv(&c).expect("constructor ensures sigma is bijective");
        }
        RTildeElem {
            ring: self.ring.clone(),
            level: 0,
            coeff: c,
        }
    }

    /// `σ_R̃`: left multiplication by `t`, `(i, r) ↦ (i+1, r)`.
    pub fn sigma(&self) -> Self {
        RTildeElem {
            ring: self.ring.clone(),
            level: self.level + 1,
            coeff: self.coeff.clone(),
        }
    }

    /// `σ_R̃^{-1}`: `(i, r) ↦ (i, σ(r))`.
    pub fn sigma_inv(&self) -> Self {
        RTildeElem {
            ring: self.ring.clone(),
            level: self.level,
            coeff: self.ring.sigma(&self.coeff),
        }
    }

    /// `β(i, r) = σ^{-i}(r)`, the isomorphism `(R̃, σ_R̃) ≅ (R, σ^{-1})`.
    pub fn iso_to_inverse(&self) -> R::Elem {
        self.normalize().coeff
    }
}

impl<R: DiffRing> PartialEq for RTildeElem<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        // Raise both to the common top level, where the relation is a plain comparison.
        let top = self.level.max(other.level);
        let a = self.ring.sigma_pow(&self.coeff, top - self.level);
        let b = other.ring.sigma_pow(&other.coeff, top - other.level);
        a == b
    }
}

/// `(Σ tⁱ rᵢ)·m = Σ σ_M^i(ρ(rᵢ)·m)`.
pub fn ore_act(f: &OrePoly<GroupAlgebra>, m: &[FqElem], module: &DiffModule) -> Result<Vec<FqElem>> {
    if m.len() != module.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, module dimension is {}",
            m.len(),
            module.dim()
        )));
    }
    if f.ring.field != *module.field() || f.ring.group != *module.group() {
        return Err(Error::RingMismatch);
    }
    let field = module.field();
    let mut acc = vec![Field::zero(field); module.dim()];
    for (i, r) in f.coeffs.iter().enumerate() {
        let mut v = linalg::mat_vec(field, &module.base.act(r), m);
        for _ in 0..i {
            v = module.apply_sigma(&v);
        }
        acc = acc.iter().zip(&v).map(|(&x, &y)| Field::add(field, x, y)).collect();
    }
    Ok(acc)
}
