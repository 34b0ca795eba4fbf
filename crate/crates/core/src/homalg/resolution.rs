use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::Nerve;
use crate::homalg::cochains::{check_degree, tor_complex};
use crate::linalg::{Echelon, Matrix};
use crate::modcat::{hom_space, tensor, CatModule, ModuleMap, Variance};

/// The normalized bar resolution `P_* → N → 0` of a right module.
///
/// `P_n(y)` has basis `(σ, a, u)` with `σ` a nondegenerate `n`-chain,
/// `a` a basis index of `N(σ_n)` and `u ∈ Mor(y, σ_0)`; so
/// `P_n = ⊕_σ N(σ_n) ⊗ RC(?, σ_0)`.
#[derive(Clone, Debug)]
pub struct BarResolution<F: Field> {
    pub base: CatModule<F>,
    pub modules: Vec<CatModule<F>>,
    /// `differentials[n-1]: P_n → P_{n-1}`.
    pub differentials: Vec<ModuleMap<F>>,
    pub augmentation: ModuleMap<F>,
    /// Exactness of the augmented complex in degrees `< n_max`, checked by
    /// rank counting at every object.
    pub exact: bool,
}

pub fn bar_resolution<F: Field>(n: &CatModule<F>, n_max: usize) -> Result<BarResolution<F>> {
    check_degree(n_max)?;
    if n.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("bar resolutions are built for right modules".into()));
    }
    let c = n.category().clone();
    let f = n.field().clone();
    let nerve = Nerve::new(&c, n_max);
    let objs = c.num_objects();
    // offsets[k][y][j]: start of chain j's block in P_k(y)
    let offsets: Vec<Vec<Vec<usize>>> = (0..=n_max)
        .map(|k| {
            (0..objs)
                .map(|y| {
                    let mut acc = 0;
                    let mut offs = Vec::with_capacity(nerve.count(k) + 1);
                    for ch in nerve.level(k) {
                        offs.push(acc);
                        acc += n.dim(ch.last()) * c.hom(y, ch.first()).len();
                    }
                    offs.push(acc);
                    offs
                })
                .collect()
        })
        .collect();
    let index = |k: usize, y: usize, j: usize, a: usize, u: usize| -> usize {
        let ch = &nerve.level(k)[j];
        let width = c.hom(y, ch.first()).len();
        let pos = c.hom(y, ch.first()).iter().position(|&v| v == u).expect("morphism lies in the hom-set");
        offsets[k][y][j] + a * width + pos
    };
    let dims = |k: usize| -> Vec<usize> { (0..objs).map(|y| *offsets[k][y].last().unwrap()).collect() };

    let mut modules = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let d = dims(k);
        let maps = (0..c.num_morphisms())
            .map(|psi| {
                let (y1, y) = (c.src(psi), c.tgt(psi));
                let mut m = Matrix::zeros(&f, d[y1], d[y]);
                for (j, ch) in nerve.level(k).iter().enumerate() {
                    for a in 0..n.dim(ch.last()) {
                        for &u in c.hom(y, ch.first()) {
                            m.set(index(k, y1, j, a, c.compose(u, psi)), index(k, y, j, a, u), f.one());
                        }
                    }
                }
                m
            })
            .collect();
        modules.push(CatModule::new(c.clone(), Variance::Right, f.clone(), d, maps)?);
    }

    let mut differentials = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        let (dk, dk1) = (dims(k), dims(k - 1));
        let comps = (0..objs)
            .map(|y| {
                let mut m = Matrix::zeros(&f, dk1[y], dk[y]);
                let add = |m: &mut Matrix<F::Elem>, r: usize, col: usize, v: F::Elem| {
                    let cur = f.add(m.get(r, col), &v);
                    m.set(r, col, cur);
                };
                for (j, sigma) in nerve.level(k).iter().enumerate() {
                    for a in 0..n.dim(sigma.last()) {
                        for &u in c.hom(y, sigma.first()) {
                            let col = index(k, y, j, a, u);
                            if let Some(t) = nerve.face(&c, k, j, 0) {
                                let u1 = c.compose(sigma.morphisms[0], u);
                                add(&mut m, index(k - 1, y, t, a, u1), col, f.one());
                            }
                            for i in 1..k {
                                if let Some(t) = nerve.face(&c, k, j, i) {
                                    let s = if i % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                                    add(&mut m, index(k - 1, y, t, a, u), col, s);
                                }
                            }
                            if let Some(t) = nerve.face(&c, k, j, k) {
                                let na = n.map(sigma.morphisms[k - 1]);
                                let s = if k % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                                for a1 in 0..na.rows() {
                                    let coef = na.get(a1, a);
                                    if !f.is_zero(coef) {
                                        add(&mut m, index(k - 1, y, t, a1, u), col, f.mul(&s, coef));
                                    }
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        differentials.push(ModuleMap::new(modules[k].clone(), modules[k - 1].clone(), comps)?);
    }

    let aug_comps = (0..objs)
        .map(|y| {
            let mut m = Matrix::zeros(&f, n.dim(y), dims(0)[y]);
            for x in 0..objs {
                for a in 0..n.dim(x) {
                    for &u in c.hom(y, x) {
                        let col = index(0, y, x, a, u);
                        for r in 0..n.dim(y) {
                            m.set(r, col, n.map(u).get(r, a).clone());
                        }
                    }
                }
            }
            m
        })
        .collect();
    let augmentation = ModuleMap::new(modules[0].clone(), n.clone(), aug_comps)?;

    let mut exact = true;
    for y in 0..objs {
        let mut ranks = vec![augmentation.component(y).rank(&f)];
        for d in &differentials {
            ranks.push(d.component(y).rank(&f));
        }
        if ranks[0] != n.dim(y) {
            exact = false;
        }
        for k in 0..n_max {
            if modules[k].dim(y) - ranks[k] != ranks[k + 1] {
                exact = false;
            }
        }
    }
    Ok(BarResolution { base: n.clone(), modules, differentials, augmentation, exact })
}

/// Tor computed by two resolution orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorGroups {
    /// `L_n(−⊗M)(N)`: two-sided bar complex over `C`.
    pub dims: Vec<usize>,
    /// `L_n(N⊗−)(M)`: resolve `M` as a right module over `C^op`.
    pub resolving_second: Vec<usize>,
    pub balanced: bool,
}

/// `Tor_n^{RC}(N, M)` for a right module `N` and a left module `M`.
pub fn tor_groups<F: Field>(n: &CatModule<F>, m: &CatModule<F>, n_max: usize) -> Result<TorGroups> {
    let first = tor_complex(n, m, n_max + 1)?;
    let mut dims = first.complex.homology_dims();
    dims.truncate(n_max + 1);
    let op = Arc::new(n.category().opposite());
    let second = tor_complex(&m.opposite_over(op.clone()), &n.opposite_over(op), n_max + 1)?;
    let mut resolving_second = second.complex.homology_dims();
    resolving_second.truncate(n_max + 1);
    let balanced = dims == resolving_second;
    Ok(TorGroups { dims, resolving_second, balanced })
}

/// Tor through an explicit bar resolution of `N` tensored with `M` by the
/// generic tensor presentation. Cost grows quickly; meant for small inputs.
pub fn tor_via_resolution<F: Field>(n: &CatModule<F>, m: &CatModule<F>, n_max: usize) -> Result<Vec<usize>> {
    let res = bar_resolution(n, n_max + 1)?;
    let f = n.field().clone();
    let pres = res.modules.iter().map(|p| tensor(p, m)).collect::<Result<Vec<_>>>()?;
    // rank of d_k ⊗ 1: Q_k → Q_{k-1}, for k = 1..=n_max+1
    let mut ranks = vec![0usize; n_max + 2];
    for k in 1..=n_max + 1 {
        let d = &res.differentials[k - 1];
        let (from, to) = (&pres[k], &pres[k - 1]);
        let mut ech = Echelon::new(f.clone(), to.dim());
        for q in 0..from.dim() {
            let g = from.basis_generator(q);
            let (y, i, j) = locate(&res.modules[k], m, g);
            let dy = d.component(y);
            let img: Vec<_> = (0..dy.rows()).filter(|&r| !f.is_zero(dy.get(r, i))).map(|r| (to.generator(y, r, j), dy.get(r, i).clone())).collect();
            let img = crate::linalg::collect_sparse(&f, img);
            ech.insert(to.project(&img));
        }
        ranks[k] = ech.rank();
    }
    Ok((0..=n_max).map(|k| pres[k].dim() - ranks[k] - ranks[k + 1]).collect())
}

/// `(object, right index, left index)` of a tensor generator.
fn locate<F: Field>(right: &CatModule<F>, left: &CatModule<F>, g: usize) -> (usize, usize, usize) {
    let mut start = 0;
    for y in 0..right.dims().len() {
        let size = right.dim(y) * left.dim(y);
        if g < start + size {
            let local = g - start;
            return (y, local / left.dim(y), local % left.dim(y));
        }
        start += size;
    }
    unreachable!("generator out of range")
}

/// Ext through `Hom_{RC}(P_*, M)` for the explicit bar resolution of `N`.
/// Meant for small inputs.
pub fn ext_via_resolution<F: Field>(n: &CatModule<F>, m: &CatModule<F>, n_max: usize) -> Result<Vec<usize>> {
    let res = bar_resolution(n, n_max + 1)?;
    let f = n.field().clone();
    let homs = res.modules.iter().map(|p| hom_space(p, m)).collect::<Result<Vec<_>>>()?;
    // rank of d_k^*: Hom(P_{k-1}, M) → Hom(P_k, M)
    let mut ranks = vec![0usize; n_max + 2];
    for k in 1..=n_max + 1 {
        let d = &res.differentials[k - 1];
        let mut ech = Echelon::new(f.clone(), homs[k].dim());
        for h in homs[k - 1].basis() {
            let comps: Vec<_> = (0..m.dims().len()).map(|y| h.component(y).mul(&f, d.component(y))).collect();
            let coords = homs[k].coordinates(&comps);
            ech.insert(crate::linalg::dense_to_sparse(&f, &coords));
        }
        ranks[k] = ech.rank();
    }
    Ok((0..=n_max).map(|k| homs[k].dim() - ranks[k + 1] - ranks[k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fincat::FiniteCategory;

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_monoid("*", names, &mul, 0).unwrap())
    }

    #[test]
    fn terminal_resolution_is_trivial() {
        let f = PrimeField::new(2).unwrap();
        let t = Arc::new(FiniteCategory::terminal());
        let r = bar_resolution(&CatModule::constant(t, f, Variance::Right), 3).unwrap();
        assert_eq!(r.modules.iter().map(|p| p.dim(0)).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        assert!(r.exact);
    }

    #[test]
    fn z2_resolution_dims() {
        let f = PrimeField::new(2).unwrap();
        let r = bar_resolution(&CatModule::constant(cyclic(2), f, Variance::Right), 3).unwrap();
        assert!(r.modules.iter().all(|p| p.dim(0) == 2));
        assert!(r.exact);
    }

    #[test]
    fn explicit_routes_match_fast_path() {
        let f = PrimeField::new(2).unwrap();
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |x, y| x <= y).unwrap());
        let n = CatModule::representable(c.clone(), 1, f).unwrap().direct_sum(&CatModule::constant(c.clone(), f, Variance::Right)).unwrap();
        let m = CatModule::left_representable(c.clone(), 0, f).unwrap();
        let fast = tor_groups(&n, &m, 2).unwrap();
        assert!(fast.balanced);
        assert_eq!(tor_via_resolution(&n, &m, 2).unwrap(), fast.dims);
        let mr = CatModule::constant(c.clone(), f, Variance::Right);
        assert_eq!(ext_via_resolution(&n, &mr, 2).unwrap(), crate::homalg::ext_dims(&n, &mr, 2).unwrap());
        let g = cyclic(2);
        let t = CatModule::constant(g.clone(), f, Variance::Right);
        assert_eq!(ext_via_resolution(&t, &t, 3).unwrap(), vec![1, 1, 1, 1]);
        let tl = CatModule::constant(g, f, Variance::Left);
        assert_eq!(tor_via_resolution(&t, &tl, 3).unwrap(), vec![1, 1, 1, 1]);
    }
}
