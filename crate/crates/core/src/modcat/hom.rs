use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::modcat::{CatModule, ModuleMap, Variance};

/// The space of module maps `M → N` with an explicit basis.
///
/// Unknowns are the entries of the components, laid out per object
/// row-major: `offset[x] + r·dim M(x) + c` for `f_x[r][c]`.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    source: CatModule<F>,
    target: CatModule<F>,
    offsets: Vec<usize>,
    free: Vec<usize>,
    basis: Vec<ModuleMap<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleMap<F>] {
        &self.basis
    }

    pub fn source(&self) -> &CatModule<F> {
        &self.source
    }

    pub fn target(&self) -> &CatModule<F> {
        &self.target
    }

    /// Coordinates of a module map (given by components) in the basis.
    pub fn coordinates(&self, components: &[Matrix<F::Elem>]) -> Vec<F::Elem> {
        self.free
            .iter()
            .map(|&u| {
                let x = self.offsets.partition_point(|&o| o <= u) - 1;
                let local = u - self.offsets[x];
                let cols = self.source.dim(x);
                components[x].get(local / cols, local % cols).clone()
            })
            .collect()
    }

    /// The map with the given coordinates.
    pub fn combination(&self, coords: &[F::Elem]) -> Vec<Matrix<F::Elem>> {
        let f = self.source.field();
        let n = self.source.category().num_objects();
        let mut out: Vec<Matrix<F::Elem>> = (0..n).map(|x| Matrix::zeros(f, self.target.dim(x), self.source.dim(x))).collect();
        for (b, a) in self.basis.iter().zip(coords) {
            if f.is_zero(a) {
                continue;
            }
            for x in 0..n {
                out[x] = out[x].add(f, &b.component(x).scale(f, a));
            }
        }
        out
    }
}

pub fn hom_space<F: Field>(source: &CatModule<F>, target: &CatModule<F>) -> Result<HomSpace<F>> {
    source.check_same_base(target)?;
    let c = source.category().clone();
    let f = source.field().clone();
    let n = c.num_objects();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for x in 0..n {
        offsets.push(total);
        total += source.dim(x) * target.dim(x);
    }
    offsets.push(total);
    let var = |x: usize, r: usize, col: usize| offsets[x] + r * source.dim(x) + col;
    let mut ech = Echelon::new(f.clone(), total);
    for phi in 0..c.num_morphisms() {
        if c.is_identity(phi) {
            continue;
        }
        // f_a · M(φ) = N(φ) · f_b with M(φ): M(b) → M(a)
        let (a, b) = match source.variance() {
            Variance::Right => (c.src(phi), c.tgt(phi)),
            Variance::Left => (c.tgt(phi), c.src(phi)),
        };
        let (mp, np) = (source.map(phi), target.map(phi));
        for r in 0..target.dim(a) {
            for col in 0..source.dim(b) {
                let mut eq: SparseVec<F::Elem> = Vec::new();
                for k in 0..source.dim(a) {
                    let m = mp.get(k, col);
                    if !f.is_zero(m) {
                        eq.push((var(a, r, k), m.clone()));
                    }
                }
                for k in 0..target.dim(b) {
                    let m = np.get(r, k);
                    if !f.is_zero(m) {
                        eq.push((var(b, k, col), f.neg(m)));
                    }
                }
                let eq = crate::linalg::collect_sparse(&f, eq);
                if !eq.is_empty() {
                    ech.insert(eq);
                }
            }
        }
    }
    let rref = ech.into_rref();
    let free = rref.free_columns();
    let basis = rref
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut comps: Vec<Matrix<F::Elem>> = (0..n).map(|x| Matrix::zeros(&f, target.dim(x), source.dim(x))).collect();
            for (u, a) in v {
                let x = offsets.partition_point(|&o| o <= u) - 1;
                let local = u - offsets[x];
                let cols = source.dim(x);
                comps[x].set(local / cols, local % cols, a);
            }
            ModuleMap::new(source.clone(), target.clone(), comps)
        })
        .collect::<Result<Vec<_>>>()?;
    offsets.pop();
    Ok(HomSpace { source: source.clone(), target: target.clone(), offsets, free, basis })
}

/// Evaluation at the identity: the element `h_x(id_x) ∈ M(x)` of a map `h: RC(?, x) → M`.
pub fn representable_element<F: Field>(map: &ModuleMap<F>, x: usize) -> Result<Vec<F::Elem>> {
    let c = map.source().category();
    let pos = c.hom(x, x).iter().position(|&u| u == c.identity(x)).ok_or_else(|| Error::InvalidModule("identity missing".into()))?;
    if map.source().dim(x) != c.hom(x, x).len() || map.source().variance() != Variance::Right {
        return Err(Error::InvalidModule("source is not the representable at the object".into()));
    }
    Ok(map.component(x).column(pos))
}

/// Inverse of `representable_element`: the map `RC(?, x) → M`, `u ↦ M(u)m`.
pub fn representable_map<F: Field>(module: &CatModule<F>, x: usize, element: &[F::Elem]) -> Result<ModuleMap<F>> {
    if module.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("representable_map expects a right module".into()));
    }
    let c = module.category().clone();
    let f = module.field();
    let rep = CatModule::representable(c.clone(), x, f.clone())?;
    let comps = (0..c.num_objects())
        .map(|y| {
            let mut m = Matrix::zeros(f, module.dim(y), rep.dim(y));
            for (col, &u) in c.hom(y, x).iter().enumerate() {
                for (r, v) in module.map(u).mul_vec(f, element).into_iter().enumerate() {
                    m.set(r, col, v);
                }
            }
            m
        })
        .collect();
    ModuleMap::new(rep, module.clone(), comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fincat::FiniteCategory;
    use std::sync::Arc;

    #[test]
    fn representable_dimension_and_round_trip() {
        let f = PrimeField::new(3).unwrap();
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |x, y| x <= y).unwrap());
        let m = CatModule::representable(c.clone(), 2, f).unwrap().direct_sum(&CatModule::constant(c.clone(), f, Variance::Right)).unwrap();
        for x in 0..3 {
            let rep = CatModule::representable(c.clone(), x, f).unwrap();
            let h = hom_space(&rep, &m).unwrap();
            assert_eq!(h.dim(), m.dim(x));
            for b in h.basis() {
                let e = representable_element(b, x).unwrap();
                let back = representable_map(&m, x, &e).unwrap();
                assert_eq!(&back, b);
            }
        }
    }

    #[test]
    fn coordinates_recover_combination() {
        let f = PrimeField::new(2).unwrap();
        let mul = vec![vec![0, 1], vec![1, 0]];
        let g = Arc::new(FiniteCategory::from_monoid("*", vec!["e".into(), "g".into()], &mul, 0).unwrap());
        let reg = CatModule::representable(g, 0, f).unwrap();
        let h = hom_space(&reg, &reg).unwrap();
        assert_eq!(h.dim(), 2);
        let coords = vec![f.one(), f.one()];
        let comps = h.combination(&coords);
        assert_eq!(h.coordinates(&comps), coords);
    }
}
