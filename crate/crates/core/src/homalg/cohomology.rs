use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{CatFunctor, FiniteCategory};
use crate::homalg::cochains::{ext_complex, pullback_cochains, push_chains, tor_complex, NerveComplex};
use crate::homalg::complex::HomologyBasis;
use crate::linalg::{Matrix, SparseVec};
use crate::modcat::{CatModule, Variance};

/// Graded (co)homology through degree `n_max`, with echelon bases.
#[derive(Clone, Debug)]
pub struct Graded<F: Field> {
    pub n_max: usize,
    pub dims: Vec<usize>,
    pub bases: Vec<HomologyBasis<F>>,
    pub nerve_complex: NerveComplex<F>,
}

impl<F: Field> Graded<F> {
    fn from_complex(nc: NerveComplex<F>, n_max: usize) -> Result<Self> {
        let bases = (0..=n_max).map(|n| nc.complex.homology_basis(n)).collect::<Result<Vec<_>>>()?;
        let dims = bases.iter().map(|b| b.dim()).collect();
        Ok(Graded { n_max, dims, bases, nerve_complex: nc })
    }

    /// Dimensions only, from ranks.
    fn dims_only(nc: &NerveComplex<F>, n_max: usize) -> Vec<usize> {
        let mut d = nc.complex.homology_dims();
        d.truncate(n_max + 1);
        d
    }
}

/// Module and category a computation actually runs on: left modules are
/// turned into right modules over the opposite category.
fn as_right<F: Field>(m: &CatModule<F>) -> CatModule<F> {
    match m.variance() {
        Variance::Right => m.clone(),
        Variance::Left => m.opposite(),
    }
}

/// `H^n(C; M) = Ext^n(R̲, M)` for `n ≤ n_max`. Left modules are handled as
/// right modules over the opposite category.
pub fn cat_cohomology<F: Field>(m: &CatModule<F>, n_max: usize) -> Result<Graded<F>> {
    let m = as_right(m);
    let triv = CatModule::constant(m.category().clone(), m.field().clone(), Variance::Right);
    Graded::from_complex(ext_complex(&triv, &m, n_max + 1)?, n_max)
}

/// Dimensions of `H^n(C; M)` without bases.
pub fn cohomology_dims<F: Field>(m: &CatModule<F>, n_max: usize) -> Result<Vec<usize>> {
    let m = as_right(m);
    let triv = CatModule::constant(m.category().clone(), m.field().clone(), Variance::Right);
    Ok(Graded::dims_only(&ext_complex(&triv, &m, n_max + 1)?, n_max))
}

/// `H_n(C; N) = Tor_n(N, R̲)` for `n ≤ n_max`. Left modules are handled as
/// right modules over the opposite category.
pub fn cat_homology<F: Field>(n: &CatModule<F>, n_max: usize) -> Result<Graded<F>> {
    let n = as_right(n);
    let triv = CatModule::constant(n.category().clone(), n.field().clone(), Variance::Left);
    Graded::from_complex(tor_complex(&n, &triv, n_max + 1)?, n_max)
}

pub fn homology_dims<F: Field>(n: &CatModule<F>, n_max: usize) -> Result<Vec<usize>> {
    let n = as_right(n);
    let triv = CatModule::constant(n.category().clone(), n.field().clone(), Variance::Left);
    Ok(Graded::dims_only(&tor_complex(&n, &triv, n_max + 1)?, n_max))
}

/// `Ext^n_{RC}(N, M)` for right modules (left modules via the opposite
/// category), with representative cocycles.
pub fn ext_groups<F: Field>(n: &CatModule<F>, m: &CatModule<F>, n_max: usize) -> Result<Graded<F>> {
    n.check_same_base(m)?;
    let (n, m) = match m.variance() {
        Variance::Right => (n.clone(), m.clone()),
        Variance::Left => {
            let op = Arc::new(m.category().opposite());
            (n.opposite_over(op.clone()), m.opposite_over(op))
        }
    };
    Graded::from_complex(ext_complex(&n, &m, n_max + 1)?, n_max)
}

pub fn ext_dims<F: Field>(n: &CatModule<F>, m: &CatModule<F>, n_max: usize) -> Result<Vec<usize>> {
    Ok(ext_groups(n, m, n_max)?.dims)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapDirection {
    Cohomology,
    Homology,
}

/// Matrices of the map in (co)homology induced by a functor `G: A → B`
/// together with a coefficient transformation.
///
/// Cohomology: `from` is over `B`, `to` over `A`, `θ_a: M_B(Ga) → M_A(a)`;
/// the result in degree `n` is `dim H^n(A) × dim H^n(B)`.
/// Homology: `from` is over `A`, `to` over `B`, `θ_a: N_A(a) → N_B(Ga)`.
pub fn coefficient_map<F: Field>(
    fun: &CatFunctor,
    from: &Graded<F>,
    to: &Graded<F>,
    theta: &[Matrix<F::Elem>],
    direction: MapDirection,
) -> Result<Vec<Matrix<F::Elem>>> {
    let n_max = from.n_max.min(to.n_max);
    let f = from.nerve_complex.complex.field().clone();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let chain_map = match direction {
            MapDirection::Cohomology => pullback_cochains(fun, &from.nerve_complex, &to.nerve_complex, theta, n),
            MapDirection::Homology => push_chains(fun, &from.nerve_complex, &to.nerve_complex, theta, n),
        };
        let mut m = Matrix::zeros(&f, to.dims[n], from.dims[n]);
        for (k, rep) in from.bases[n].representatives().iter().enumerate() {
            let img = chain_map.mul_vec(&f, rep);
            let coords = to.bases[n].coordinates(&img).ok_or_else(|| Error::InvalidModule("induced chain map does not preserve cycles".into()))?;
            for (r, a) in coords.into_iter().enumerate() {
                m.set(r, k, a);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `F^*: H^n(D; M) → H^n(C; Res_F M)` (cohomology) or
/// `F_*: H_n(C; Res_F N) → H_n(D; N)` (homology), in echelon bases.
pub fn induced_map<F: Field>(fun: &CatFunctor, m: &CatModule<F>, n_max: usize, direction: MapDirection) -> Result<Vec<Matrix<F::Elem>>> {
    if **fun.target() != **m.category() {
        return Err(Error::MismatchedBase("module does not live over the functor's target".into()));
    }
    if m.variance() == Variance::Left {
        let fop = fun.opposite();
        let mop = m.opposite_over(fop.target().clone());
        return induced_map(&fop, &mop, n_max, direction);
    }
    let res = m.restrict(fun)?;
    let theta: Vec<Matrix<F::Elem>> = (0..fun.source().num_objects()).map(|x| Matrix::identity(m.field(), m.dim(fun.obj(x)))).collect();
    match direction {
        MapDirection::Cohomology => {
            let big = cat_cohomology(m, n_max)?;
            let small = cat_cohomology(&res, n_max)?;
            coefficient_map(fun, &big, &small, &theta, direction)
        }
        MapDirection::Homology => {
            let big = cat_homology(m, n_max)?;
            let small = cat_homology(&res, n_max)?;
            coefficient_map(fun, &small, &big, &theta, direction)
        }
    }
}

/// `H^n(C; θ)` for a module map `θ: M → M'` of right modules over the same
/// category, `dim H^n(M') × dim H^n(M)`.
pub fn coefficient_change<F: Field>(theta: &crate::modcat::ModuleMap<F>, n_max: usize, direction: MapDirection) -> Result<Vec<Matrix<F::Elem>>> {
    let (src, tgt) = (theta.source(), theta.target());
    let c = src.category().clone();
    let id = CatFunctor::identity(c);
    match direction {
        MapDirection::Cohomology => {
            let from = cat_cohomology(src, n_max)?;
            let to = cat_cohomology(tgt, n_max)?;
            // pullback uses θ as M_B(a) → M_A(a) with B the "from" side
            coefficient_map(&id, &from, &to, theta.components(), direction)
        }
        MapDirection::Homology => {
            let from = cat_homology(src, n_max)?;
            let to = cat_homology(tgt, n_max)?;
            coefficient_map(&id, &from, &to, theta.components(), direction)
        }
    }
}

/// Whether every matrix in the list is square and invertible.
pub fn all_invertible<F: Field>(field: &F, maps: &[Matrix<F::Elem>]) -> bool {
    maps.iter().all(|m| m.rows() == m.cols() && m.rank(field) == m.rows())
}

/// Dimension of `lim_C M`, from the linear system directly.
pub fn limit_dim<F: Field>(m: &CatModule<F>) -> usize {
    let c: &FiniteCategory = m.category();
    let f = m.field();
    let mut offsets = Vec::new();
    let mut total = 0;
    for x in 0..c.num_objects() {
        offsets.push(total);
        total += m.dim(x);
    }
    let mut ech = crate::linalg::Echelon::new(f.clone(), total);
    for phi in 0..c.num_morphisms() {
        let (x, y) = (c.src(phi), c.tgt(phi));
        // Right module: m_x = M(φ) m_y; left module: m_y = M(φ) m_x.
        let (into, from) = match m.variance() {
            Variance::Right => (x, y),
            Variance::Left => (y, x),
        };
        let mp = m.map(phi);
        for r in 0..m.dim(into) {
            let mut row: SparseVec<F::Elem> = vec![(offsets[into] + r, f.one())];
            for k in 0..m.dim(from) {
                let a = mp.get(r, k);
                if !f.is_zero(a) {
                    row.push((offsets[from] + k, f.neg(a)));
                }
            }
            ech.insert(crate::linalg::collect_sparse(f, row));
        }
    }
    total - ech.rank()
}

/// For `η: F ⇒ G` and a right module `M` over the common target, whether
/// `(Res_η)_* ∘ G^* = F^*` as matrices in every degree `≤ n_max`.
pub fn first_homotopy_holds<F: Field>(eta: &crate::fincat::NatTransformation, m: &CatModule<F>, n_max: usize) -> Result<bool> {
    if m.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("the homotopy identity is checked for right modules".into()));
    }
    let (fun_f, fun_g) = (eta.from(), eta.to());
    let res_f = m.restrict(fun_f)?;
    let res_g = m.restrict(fun_g)?;
    let comps = eta.components().iter().map(|&e| m.map(e).clone()).collect();
    let res_eta = crate::modcat::ModuleMap::new(res_g, res_f, comps)?;
    let f_star = induced_map(fun_f, m, n_max, MapDirection::Cohomology)?;
    let g_star = induced_map(fun_g, m, n_max, MapDirection::Cohomology)?;
    let change = coefficient_change(&res_eta, n_max, MapDirection::Cohomology)?;
    let field = m.field();
    Ok((0..=n_max).all(|n| change[n].mul(field, &g_star[n]) == f_star[n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_monoid("*", names, &mul, 0).unwrap())
    }

    #[test]
    fn terminal_category() {
        let f = PrimeField::new(2).unwrap();
        let t = Arc::new(FiniteCategory::terminal());
        let m = CatModule::constant(t, f, Variance::Right);
        assert_eq!(cat_cohomology(&m, 3).unwrap().dims, vec![1, 0, 0, 0]);
        assert_eq!(cat_homology(&m, 3).unwrap().dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn invertible_order_kills_higher_cohomology() {
        let f = PrimeField::new(2).unwrap();
        let m = CatModule::constant(cyclic(3), f, Variance::Right);
        assert_eq!(ext_dims(&m, &m, 4).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn zero_structure_map_limit() {
        let f = PrimeField::new(5).unwrap();
        let c = Arc::new(FiniteCategory::poset(vec!["0".into(), "1".into()], |a, b| a <= b).unwrap());
        let le = c.hom(0, 1)[0];
        let mut maps = vec![Matrix::identity(&f, 1); c.num_morphisms()];
        maps[le] = Matrix::zeros(&f, 1, 1);
        let m = CatModule::new(c, Variance::Right, f, vec![1, 1], maps).unwrap();
        let h = cat_cohomology(&m, 2).unwrap();
        assert_eq!(h.dims[0], 1);
        assert_eq!(limit_dim(&m), 1);
    }

    #[test]
    fn identity_functor_induces_identity() {
        let f = PrimeField::new(2).unwrap();
        let c = cyclic(2);
        let m = CatModule::representable(c.clone(), 0, f).unwrap().direct_sum(&CatModule::constant(c.clone(), f, Variance::Right)).unwrap();
        let id = CatFunctor::identity(c);
        for dir in [MapDirection::Cohomology, MapDirection::Homology] {
            for mat in induced_map(&id, &m, 3, dir).unwrap() {
                assert!(mat.is_identity(&f));
            }
        }
    }
}
