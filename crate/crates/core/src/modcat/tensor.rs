use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Rref, SparseVec};
use crate::modcat::{CatModule, Variance};

/// `M ⊗_{RC} N` for a right module `M` and a left module `N`, presented as
/// `⊕_x M(x)⊗N(x)` modulo `M(φ)m⊗n − m⊗N(φ)n`.
///
/// Generator `(x, i, j)` has index `offset[x] + i·dim N(x) + j`. The
/// quotient basis is the set of non-pivot generators of the relation RREF.
#[derive(Clone, Debug)]
pub struct TensorPresentation<F: Field> {
    offsets: Vec<usize>,
    right_dims: Vec<usize>,
    left_dims: Vec<usize>,
    relations: Rref<F>,
    free: Vec<usize>,
    free_pos: HashMap<usize, usize>,
}

impl<F: Field> TensorPresentation<F> {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn num_generators(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn generator(&self, x: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < self.right_dims[x] && j < self.left_dims[x]);
        self.offsets[x] + i * self.left_dims[x] + j
    }

    /// Quotient basis element `k` as a generator index.
    pub fn basis_generator(&self, k: usize) -> usize {
        self.free[k]
    }

    /// Coordinates of the class of a generator combination.
    pub fn project(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let red = self.relations.reduce(v);
        red.into_iter().map(|(g, a)| (self.free_pos[&g], a)).collect()
    }
}

pub fn tensor<F: Field>(right: &CatModule<F>, left: &CatModule<F>) -> Result<TensorPresentation<F>> {
    if right.variance() != Variance::Right || left.variance() != Variance::Left {
        return Err(Error::VarianceMismatch("tensor expects a right module and a left module".into()));
    }
    if *right.category() != *left.category() || right.field() != left.field() {
        return Err(Error::MismatchedBase("tensor factors over different bases".into()));
    }
    let c = right.category();
    let f = right.field().clone();
    let n = c.num_objects();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for x in 0..n {
        offsets.push(total);
        total += right.dim(x) * left.dim(x);
    }
    offsets.push(total);
    let gen = |x: usize, i: usize, j: usize| offsets[x] + i * left.dim(x) + j;
    let mut ech = Echelon::new(f.clone(), total);
    for phi in 0..c.num_morphisms() {
        if c.is_identity(phi) {
            continue;
        }
        let (x, y) = (c.src(phi), c.tgt(phi));
        let (mp, np) = (right.map(phi), left.map(phi));
        for i in 0..right.dim(y) {
            for j in 0..left.dim(x) {
                let mut rel = Vec::new();
                for k in 0..right.dim(x) {
                    let a = mp.get(k, i);
                    if !f.is_zero(a) {
                        rel.push((gen(x, k, j), a.clone()));
                    }
                }
                for l in 0..left.dim(y) {
                    let a = np.get(l, j);
                    if !f.is_zero(a) {
                        rel.push((gen(y, i, l), f.neg(a)));
                    }
                }
                let rel = crate::linalg::collect_sparse(&f, rel);
                if !rel.is_empty() {
                    ech.insert(rel);
                }
            }
        }
    }
    let relations = ech.into_rref();
    let free = relations.free_columns();
    let free_pos = free.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    Ok(TensorPresentation { offsets, right_dims: right.dims().to_vec(), left_dims: left.dims().to_vec(), relations, free, free_pos })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fincat::FiniteCategory;
    use std::sync::Arc;

    #[test]
    fn tensor_with_representable_collapses() {
        // M ⊗ RC(x, ?) ≅ M(x)
        let f = PrimeField::new(2).unwrap();
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |x, y| x <= y).unwrap());
        let m = CatModule::representable(c.clone(), 1, f).unwrap().direct_sum(&CatModule::constant(c.clone(), f, Variance::Right)).unwrap();
        for x in 0..3 {
            let l = CatModule::left_representable(c.clone(), x, f).unwrap();
            assert_eq!(tensor(&m, &l).unwrap().dim(), m.dim(x));
        }
    }

    #[test]
    fn variance_checked() {
        let f = PrimeField::new(2).unwrap();
        let c = Arc::new(FiniteCategory::terminal());
        let m = CatModule::constant(c, f, Variance::Right);
        assert!(matches!(tensor(&m, &m), Err(Error::VarianceMismatch(_))));
    }
}
