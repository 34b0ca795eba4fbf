//! Normalized nerve complexes computing Ext and Tor over a category, and
//! the chain maps induced by functors.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{CatFunctor, FiniteCategory, Nerve, ObjectChain};
use crate::homalg::complex::{BasisLabel, Complex, Direction};
use crate::linalg::{Matrix, SparseMatrix};
use crate::modcat::{CatModule, Variance};

/// Degrees beyond this are refused.
pub const MAX_DEGREE: usize = 24;

pub(crate) fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeOverflow { requested: n, bound: MAX_DEGREE });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NerveShape {
    /// `⊕_σ Hom(N(σ_n), M(σ_0))`, cochain.
    Ext,
    /// `⊕_σ N(σ_n) ⊗ M(σ_0)`, chain.
    Tor,
}

/// A complex indexed by nondegenerate chains, with one coefficient block per
/// chain.
#[derive(Clone, Debug)]
pub struct NerveComplex<F: Field> {
    pub shape: NerveShape,
    pub nerve: Nerve,
    /// Per degree, per chain: start of its block; a final entry holds the total.
    pub offsets: Vec<Vec<usize>>,
    /// Per object: dimension of the first-slot module (`N`).
    pub left_dims: Vec<usize>,
    /// Per object: dimension of the second-slot module (`M`).
    pub right_dims: Vec<usize>,
    pub complex: Complex<F>,
}

impl<F: Field> NerveComplex<F> {
    pub fn block_size(&self, chain: &ObjectChain) -> usize {
        self.left_dims[chain.last()] * self.right_dims[chain.first()]
    }

    /// Chain and in-block index of basis vector `i` in degree `n`.
    pub fn label(&self, n: usize, i: usize) -> BasisLabel {
        let offs = &self.offsets[n];
        let j = offs.partition_point(|&o| o <= i) - 1;
        BasisLabel { chain: self.nerve.level(n)[j].clone(), index: i - offs[j] }
    }

    /// Whether the first slot is the constant module (cohomology/homology).
    pub fn has_trivial_first_slot(&self) -> bool {
        self.left_dims.iter().all(|&d| d == 1)
    }
}

fn layout(nerve: &Nerve, top: usize, block: impl Fn(&ObjectChain) -> usize) -> Vec<Vec<usize>> {
    (0..=top)
        .map(|n| {
            let mut offs = Vec::with_capacity(nerve.count(n) + 1);
            let mut acc = 0;
            for ch in nerve.level(n) {
                offs.push(acc);
                acc += block(ch);
            }
            offs.push(acc);
            offs
        })
        .collect()
}

fn sign<F: Field>(f: &F, i: usize) -> F::Elem {
    if i.is_multiple_of(2) {
        f.one()
    } else {
        f.neg(&f.one())
    }
}

/// The cochain complex `Hom_{RC}(P_*, M)` for the bar resolution `P_*` of
/// `N`, through degree `top`. Both modules are right modules.
///
/// Block of `σ`: `Hom(N(σ_n), M(σ_0))`, entry `(w, v)` at `w·dim N(σ_n) + v`.
/// `(δf)(σ) = M(α_1)f(d_0σ) + Σ_{0<i<n+1} (−1)^i f(d_iσ) + (−1)^{n+1} f(d_{n+1}σ)N(α_{n+1})`.
pub fn ext_complex<F: Field>(n: &CatModule<F>, m: &CatModule<F>, top: usize) -> Result<NerveComplex<F>> {
    check_degree(top)?;
    n.check_same_base(m)?;
    if m.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("Ext complexes are built for right modules".into()));
    }
    let c: &FiniteCategory = m.category();
    let f = m.field().clone();
    let nerve = Nerve::new(c, top);
    let offsets = layout(&nerve, top, |ch| n.dim(ch.last()) * m.dim(ch.first()));
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut links = Vec::with_capacity(top);
    for l in 1..=top {
        let mut trip = Vec::new();
        for (j, sigma) in nerve.level(l).iter().enumerate() {
            let row0 = offsets[l][j];
            let (x0, xl) = (sigma.first(), sigma.last());
            let (mw, nv) = (m.dim(x0), n.dim(xl));
            if mw * nv == 0 {
                continue;
            }
            if let Some(t) = nerve.face(c, l, j, 0) {
                let col0 = offsets[l - 1][t];
                let x1 = sigma.objects[1];
                let ma = m.map(sigma.morphisms[0]);
                for w in 0..mw {
                    for k in 0..m.dim(x1) {
                        let a = ma.get(w, k);
                        if f.is_zero(a) {
                            continue;
                        }
                        for v in 0..nv {
                            trip.push((row0 + w * nv + v, col0 + k * nv + v, a.clone()));
                        }
                    }
                }
            }
            for i in 1..l {
                if let Some(t) = nerve.face(c, l, j, i) {
                    let col0 = offsets[l - 1][t];
                    let s = sign(&f, i);
                    for e in 0..mw * nv {
                        trip.push((row0 + e, col0 + e, s.clone()));
                    }
                }
            }
            if let Some(t) = nerve.face(c, l, j, l) {
                let col0 = offsets[l - 1][t];
                let prev = sigma.objects[l - 1];
                let na = n.map(sigma.morphisms[l - 1]);
                let s = sign(&f, l);
                let width = n.dim(prev);
                for k in 0..width {
                    for v in 0..nv {
                        let a = na.get(k, v);
                        if f.is_zero(a) {
                            continue;
                        }
                        let coef = f.mul(&s, a);
                        for w in 0..mw {
                            trip.push((row0 + w * nv + v, col0 + w * width + k, coef.clone()));
                        }
                    }
                }
            }
        }
        links.push(SparseMatrix::from_triplets(&f, dims[l], dims[l - 1], trip));
    }
    let complex = Complex::new(f, Direction::Cochain, dims, links)?;
    Ok(NerveComplex { shape: NerveShape::Ext, nerve, offsets, left_dims: n.dims().to_vec(), right_dims: m.dims().to_vec(), complex })
}

/// The chain complex `N ⊗_{RC} B_*(M)` (two-sided bar construction) for a
/// right module `N` and a left module `M`, through degree `top`.
///
/// Block of `σ`: `N(σ_n) ⊗ M(σ_0)`, entry `(a, b)` at `a·dim M(σ_0) + b`.
/// `∂(σ, a⊗b) = (d_0σ, a⊗M(α_1)b) + Σ_{0<i<n} (−1)^i (d_iσ, a⊗b) + (−1)^n (d_nσ, N(α_n)a⊗b)`.
pub fn tor_complex<F: Field>(n: &CatModule<F>, m: &CatModule<F>, top: usize) -> Result<NerveComplex<F>> {
    check_degree(top)?;
    if n.variance() != Variance::Right || m.variance() != Variance::Left {
        return Err(Error::VarianceMismatch("Tor expects a right module and a left module".into()));
    }
    if **n.category() != **m.category() || n.field() != m.field() {
        return Err(Error::MismatchedBase("Tor arguments over different bases".into()));
    }
    let c: &FiniteCategory = n.category();
    let f = n.field().clone();
    let nerve = Nerve::new(c, top);
    let offsets = layout(&nerve, top, |ch| n.dim(ch.last()) * m.dim(ch.first()));
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut links = Vec::with_capacity(top);
    for l in 1..=top {
        let mut trip = Vec::new();
        for (j, sigma) in nerve.level(l).iter().enumerate() {
            let col0 = offsets[l][j];
            let (x0, xl) = (sigma.first(), sigma.last());
            let (mb, na) = (m.dim(x0), n.dim(xl));
            if mb * na == 0 {
                continue;
            }
            if let Some(t) = nerve.face(c, l, j, 0) {
                let row0 = offsets[l - 1][t];
                let x1 = sigma.objects[1];
                let mm = m.map(sigma.morphisms[0]);
                let width = m.dim(x1);
                for b1 in 0..width {
                    for b in 0..mb {
                        let coef = mm.get(b1, b);
                        if f.is_zero(coef) {
                            continue;
                        }
                        for a in 0..na {
                            trip.push((row0 + a * width + b1, col0 + a * mb + b, coef.clone()));
                        }
                    }
                }
            }
            for i in 1..l {
                if let Some(t) = nerve.face(c, l, j, i) {
                    let row0 = offsets[l - 1][t];
                    let s = sign(&f, i);
                    for e in 0..mb * na {
                        trip.push((row0 + e, col0 + e, s.clone()));
                    }
                }
            }
            if let Some(t) = nerve.face(c, l, j, l) {
                let row0 = offsets[l - 1][t];
                let prev = sigma.objects[l - 1];
                let nm = n.map(sigma.morphisms[l - 1]);
                let s = sign(&f, l);
                for a1 in 0..n.dim(prev) {
                    for a in 0..na {
                        let coef = nm.get(a1, a);
                        if f.is_zero(coef) {
                            continue;
                        }
                        let coef = f.mul(&s, coef);
                        for b in 0..mb {
                            trip.push((row0 + a1 * mb + b, col0 + a * mb + b, coef.clone()));
                        }
                    }
                }
            }
        }
        links.push(SparseMatrix::from_triplets(&f, dims[l - 1], dims[l], trip));
    }
    let complex = Complex::new(f, Direction::Chain, dims, links)?;
    Ok(NerveComplex { shape: NerveShape::Tor, nerve, offsets, left_dims: n.dims().to_vec(), right_dims: m.dims().to_vec(), complex })
}

/// Image of a chain under a functor; `None` if it degenerates.
pub fn push_chain(fun: &CatFunctor, chain: &ObjectChain) -> Option<ObjectChain> {
    let t = fun.target();
    let morphisms: Vec<usize> = chain.morphisms.iter().map(|&a| fun.mor(a)).collect();
    if morphisms.iter().any(|&a| t.is_identity(a)) {
        return None;
    }
    let objects = chain.objects.iter().map(|&x| fun.obj(x)).collect();
    Some(ObjectChain { objects, morphisms })
}

/// Cochain map in degree `n` from a cohomology complex over the target of
/// `fun` to one over its source: `f ↦ (σ ↦ θ_{σ_0} f(Fσ))`, where
/// `θ_a: M_B(F a) → M_A(a)`.
pub fn pullback_cochains<F: Field>(
    fun: &CatFunctor,
    from: &NerveComplex<F>,
    to: &NerveComplex<F>,
    theta: &[Matrix<F::Elem>],
    n: usize,
) -> SparseMatrix<F::Elem> {
    debug_assert!(from.has_trivial_first_slot() && to.has_trivial_first_slot());
    let f = from.complex.field();
    let mut trip = Vec::new();
    for (j, sigma) in to.nerve.level(n).iter().enumerate() {
        let Some(image) = push_chain(fun, sigma) else { continue };
        let t = from.nerve.find(&image).expect("image chain is listed");
        let (row0, col0) = (to.offsets[n][j], from.offsets[n][t]);
        let th = &theta[sigma.first()];
        for r in 0..th.rows() {
            for c in 0..th.cols() {
                let a = th.get(r, c);
                if !f.is_zero(a) {
                    trip.push((row0 + r, col0 + c, a.clone()));
                }
            }
        }
    }
    SparseMatrix::from_triplets(f, to.complex.dim(n), from.complex.dim(n), trip)
}

/// Chain map in degree `n` from a homology complex over the source of `fun`
/// to one over its target: `(σ, a) ↦ (Fσ, θ_{σ_n} a)`, where
/// `θ_a: N_A(a) → N_B(F a)`.
pub fn push_chains<F: Field>(fun: &CatFunctor, from: &NerveComplex<F>, to: &NerveComplex<F>, theta: &[Matrix<F::Elem>], n: usize) -> SparseMatrix<F::Elem> {
    debug_assert!(from.right_dims.iter().all(|&d| d == 1) && to.right_dims.iter().all(|&d| d == 1));
    let f = from.complex.field();
    let mut trip = Vec::new();
    for (j, sigma) in from.nerve.level(n).iter().enumerate() {
        let Some(image) = push_chain(fun, sigma) else { continue };
        let t = to.nerve.find(&image).expect("image chain is listed");
        let (col0, row0) = (from.offsets[n][j], to.offsets[n][t]);
        let th = &theta[sigma.last()];
        for r in 0..th.rows() {
            for c in 0..th.cols() {
                let a = th.get(r, c);
                if !f.is_zero(a) {
                    trip.push((row0 + r, col0 + c, a.clone()));
                }
            }
        }
    }
    SparseMatrix::from_triplets(f, to.complex.dim(n), from.complex.dim(n), trip)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use std::sync::Arc;

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_monoid("*", names, &mul, 0).unwrap())
    }

    #[test]
    fn square_zero_for_regular_coefficients() {
        let f = PrimeField::new(2).unwrap();
        let c = cyclic(3);
        let reg = CatModule::representable(c.clone(), 0, f).unwrap();
        let triv = CatModule::constant(c.clone(), f, Variance::Right);
        let ext = ext_complex(&reg, &reg, 4).unwrap();
        ext.complex.check_square_zero().unwrap();
        let ext = ext_complex(&triv, &reg, 4).unwrap();
        ext.complex.check_square_zero().unwrap();
        let left = reg.opposite_over(c.clone());
        let tor = tor_complex(&reg, &left, 4).unwrap();
        tor.complex.check_square_zero().unwrap();
    }

    #[test]
    fn group_z2_constant_cohomology() {
        let f = PrimeField::new(2).unwrap();
        let c = cyclic(2);
        let triv = CatModule::constant(c.clone(), f, Variance::Right);
        let ext = ext_complex(&triv, &triv, 5).unwrap();
        assert_eq!(ext.complex.homology_dims(), vec![1, 1, 1, 1, 1]);
        let ltriv = CatModule::constant(c, f, Variance::Left);
        let tor = tor_complex(&triv, &ltriv, 5).unwrap();
        assert_eq!(tor.complex.homology_dims(), vec![1, 1, 1, 1, 1]);
    }
}
