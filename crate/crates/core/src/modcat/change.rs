//! Change of base along a functor: restriction, induction, coinduction.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::CatFunctor;
use crate::linalg::Matrix;
use crate::modcat::{hom_space, tensor, CatModule, HomSpace, ModuleMap, TensorPresentation, Variance};

/// `Ind_F M = M ⊗_{RC} RD(?, F(-))` with the presentations used per object.
#[derive(Clone, Debug)]
pub struct Induced<F: Field> {
    pub module: CatModule<F>,
    pub presentations: Vec<TensorPresentation<F>>,
}

/// `CoInd_F M = Hom_{RC}(RD(F(-), ?), M)` with the hom spaces per object.
#[derive(Clone, Debug)]
pub struct Coinduced<F: Field> {
    pub module: CatModule<F>,
    pub homs: Vec<HomSpace<F>>,
}

fn check_source<F: Field>(fun: &CatFunctor, m: &CatModule<F>) -> Result<()> {
    if **fun.source() != **m.category() {
        return Err(Error::MismatchedBase("module does not live over the functor's source".into()));
    }
    Ok(())
}

/// Left module `c ↦ R D(d, F(c))` over the source of `fun`.
fn under_module<F: Field>(fun: &CatFunctor, d: usize, field: &F) -> CatModule<F> {
    let (c, t) = (fun.source(), fun.target());
    let dims: Vec<usize> = (0..c.num_objects()).map(|x| t.hom(d, fun.obj(x)).len()).collect();
    let maps = (0..c.num_morphisms())
        .map(|phi| {
            let (x, y) = (c.src(phi), c.tgt(phi));
            let fphi = fun.mor(phi);
            let target_homs = t.hom(d, fun.obj(y));
            let mut m = Matrix::zeros(field, dims[y], dims[x]);
            for (col, &u) in t.hom(d, fun.obj(x)).iter().enumerate() {
                let v = t.compose(fphi, u);
                m.set(target_homs.iter().position(|&w| w == v).unwrap(), col, field.one());
            }
            m
        })
        .collect();
    CatModule::new_unchecked(c.clone(), Variance::Left, field.clone(), dims, maps)
}

/// Right module `c ↦ R D(F(c), d)` over the source of `fun`.
fn over_module<F: Field>(fun: &CatFunctor, d: usize, field: &F) -> CatModule<F> {
    let (c, t) = (fun.source(), fun.target());
    let dims: Vec<usize> = (0..c.num_objects()).map(|x| t.hom(fun.obj(x), d).len()).collect();
    let maps = (0..c.num_morphisms())
        .map(|phi| {
            let (x, y) = (c.src(phi), c.tgt(phi));
            let fphi = fun.mor(phi);
            let target_homs = t.hom(fun.obj(x), d);
            let mut m = Matrix::zeros(field, dims[x], dims[y]);
            for (col, &v) in t.hom(fun.obj(y), d).iter().enumerate() {
                let w = t.compose(v, fphi);
                m.set(target_homs.iter().position(|&z| z == w).unwrap(), col, field.one());
            }
            m
        })
        .collect();
    CatModule::new_unchecked(c.clone(), Variance::Right, field.clone(), dims, maps)
}

/// Left Kan extension along `fun`. Left modules are handled through the
/// opposite categories.
pub fn induce<F: Field>(fun: &CatFunctor, m: &CatModule<F>) -> Result<Induced<F>> {
    check_source(fun, m)?;
    if m.variance() == Variance::Left {
        let fop = fun.opposite();
        let mop = m.opposite_over(fop.source().clone());
        let ind = induce(&fop, &mop)?;
        return Ok(Induced { module: ind.module.opposite_over(fun.target().clone()), presentations: ind.presentations });
    }
    let f = m.field().clone();
    let (c, t) = (fun.source(), fun.target());
    let presentations = (0..t.num_objects()).map(|d| tensor(m, &under_module(fun, d, &f))).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = presentations.iter().map(|p| p.dim()).collect();
    let maps = (0..t.num_morphisms())
        .map(|psi| {
            let (d1, d) = (t.src(psi), t.tgt(psi));
            let (from, to) = (&presentations[d], &presentations[d1]);
            let mut out = Matrix::zeros(&f, dims[d1], dims[d]);
            for k in 0..dims[d] {
                let (x, i, j) = decode(from, c.num_objects(), m, fun, d, k);
                let u = t.hom(d, fun.obj(x))[j];
                let v = t.compose(u, psi);
                let j1 = t.hom(d1, fun.obj(x)).iter().position(|&w| w == v).unwrap();
                for (r, a) in to.project(&[(to.generator(x, i, j1), f.one())]) {
                    out.set(r, k, a);
                }
            }
            out
        })
        .collect();
    let module = CatModule::new(t.clone(), Variance::Right, f, dims, maps)?;
    Ok(Induced { module, presentations })
}

/// Object and indices of quotient basis element `k` of the presentation at `d`.
fn decode<F: Field>(p: &TensorPresentation<F>, n: usize, m: &CatModule<F>, fun: &CatFunctor, d: usize, k: usize) -> (usize, usize, usize) {
    let g = p.basis_generator(k);
    let t = fun.target();
    let mut start = 0;
    for x in 0..n {
        let width = t.hom(d, fun.obj(x)).len();
        let size = m.dim(x) * width;
        if g < start + size {
            let local = g - start;
            return (x, local / width, local % width);
        }
        start += size;
    }
    unreachable!("generator index out of range")
}

/// `Ind_F(h): Ind_F M → Ind_F M'` for right modules.
pub fn induce_map<F: Field>(fun: &CatFunctor, h: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    if h.source().variance() != Variance::Right {
        return Err(Error::VarianceMismatch("induced maps are computed for right modules".into()));
    }
    let src = induce(fun, h.source())?;
    let tgt = induce(fun, h.target())?;
    let f = h.source().field().clone();
    let t = fun.target();
    let n = fun.source().num_objects();
    let comps = (0..t.num_objects())
        .map(|d| {
            let (from, to) = (&src.presentations[d], &tgt.presentations[d]);
            let mut out = Matrix::zeros(&f, to.dim(), from.dim());
            for k in 0..from.dim() {
                let (x, i, j) = decode(from, n, h.source(), fun, d, k);
                let hx = h.component(x);
                let gens: Vec<_> = (0..hx.rows()).filter(|&r| !f.is_zero(hx.get(r, i))).map(|r| (to.generator(x, r, j), hx.get(r, i).clone())).collect();
                let gens = crate::linalg::collect_sparse(&f, gens);
                for (r, a) in to.project(&gens) {
                    out.set(r, k, a);
                }
            }
            out
        })
        .collect();
    ModuleMap::new(src.module, tgt.module, comps)
}

/// Right Kan extension along `fun`. Left modules are handled through the
/// opposite categories.
pub fn coinduce<F: Field>(fun: &CatFunctor, m: &CatModule<F>) -> Result<Coinduced<F>> {
    check_source(fun, m)?;
    if m.variance() == Variance::Left {
        let fop = fun.opposite();
        let mop = m.opposite_over(fop.source().clone());
        let co = coinduce(&fop, &mop)?;
        return Ok(Coinduced { module: co.module.opposite_over(fun.target().clone()), homs: co.homs });
    }
    let f = m.field().clone();
    let (c, t) = (fun.source(), fun.target());
    let reps: Vec<CatModule<F>> = (0..t.num_objects()).map(|d| over_module(fun, d, &f)).collect();
    let homs = reps.iter().map(|k| hom_space(k, m)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
    let maps = (0..t.num_morphisms())
        .map(|psi| {
            let (d, d1) = (t.src(psi), t.tgt(psi));
            // ψ_*: K_d → K_{d1}, v ↦ ψ∘v
            let push: Vec<Matrix<F::Elem>> = (0..c.num_objects())
                .map(|x| {
                    let (from, to) = (t.hom(fun.obj(x), d), t.hom(fun.obj(x), d1));
                    let mut p = Matrix::zeros(&f, to.len(), from.len());
                    for (col, &v) in from.iter().enumerate() {
                        let w = t.compose(psi, v);
                        p.set(to.iter().position(|&z| z == w).unwrap(), col, f.one());
                    }
                    p
                })
                .collect();
            let mut out = Matrix::zeros(&f, dims[d], dims[d1]);
            for (k, b) in homs[d1].basis().iter().enumerate() {
                let pulled: Vec<Matrix<F::Elem>> = (0..c.num_objects()).map(|x| b.component(x).mul(&f, &push[x])).collect();
                for (r, a) in homs[d].coordinates(&pulled).into_iter().enumerate() {
                    out.set(r, k, a);
                }
            }
            out
        })
        .collect();
    let module = CatModule::new(t.clone(), Variance::Right, f, dims, maps)?;
    Ok(Coinduced { module, homs })
}

/// Whether `Ind_F` keeps injections injective on a probe family: the
/// submodules of `m` and of every representable generated by one basis
/// vector. Induction is right exact, so this probes exactness.
pub fn induction_exact_on_probes<F: Field>(fun: &CatFunctor, m: &CatModule<F>) -> Result<bool> {
    check_source(fun, m)?;
    if m.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("induction is probed on right modules".into()));
    }
    let c = fun.source();
    let f = m.field();
    let mut ambients = vec![m.clone()];
    for x in 0..c.num_objects() {
        ambients.push(CatModule::representable(c.clone(), x, f.clone())?);
    }
    for a in &ambients {
        for x in 0..c.num_objects() {
            for i in 0..a.dim(x) {
                let (_, incl) = a.generated_submodule(&[(x, vec![(i, f.one())])])?;
                if !induce_map(fun, &incl)?.is_injective() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fincat::FiniteCategory;
    use std::sync::Arc;

    fn group(n: usize) -> Arc<FiniteCategory> {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_monoid("*", names, &mul, 0).unwrap())
    }

    #[test]
    fn induction_from_trivial_group_is_regular() {
        let f = PrimeField::new(5).unwrap();
        let g = group(3);
        let inc = CatFunctor::new(Arc::new(FiniteCategory::terminal()), g.clone(), vec![0], vec![0]).unwrap();
        let triv = CatModule::constant(inc.source().clone(), f, Variance::Right);
        let ind = induce(&inc, &triv).unwrap().module;
        let reg = CatModule::representable(g.clone(), 0, f).unwrap();
        assert_eq!(ind.dims(), &[3]);
        assert_eq!(hom_space(&ind, &reg).unwrap().dim(), 3);
        let co = coinduce(&inc, &triv).unwrap().module;
        assert_eq!(co.dims(), &[3]);
        assert_eq!(hom_space(&co, &reg).unwrap().dim(), 3);
    }

    #[test]
    fn induction_to_terminal_is_coinvariants() {
        let f = PrimeField::new(2).unwrap();
        let g = group(2);
        let reg = CatModule::representable(g.clone(), 0, f).unwrap();
        let fun = CatFunctor::to_terminal(g.clone());
        assert_eq!(induce(&fun, &reg).unwrap().module.dims(), &[1]);
        assert_eq!(coinduce(&fun, &reg).unwrap().module.dims(), &[1]);
        let triv = CatModule::constant(g, f, Variance::Left);
        assert_eq!(induce(&fun, &triv).unwrap().module.variance(), Variance::Left);
    }

    #[test]
    fn induce_map_identity() {
        let f = PrimeField::new(3).unwrap();
        let g = group(3);
        let fun = CatFunctor::to_terminal(g.clone());
        let reg = CatModule::representable(g, 0, f).unwrap();
        let id = ModuleMap::identity(&reg);
        let ind = induce_map(&fun, &id).unwrap();
        assert!(ind.is_iso());
    }
}
