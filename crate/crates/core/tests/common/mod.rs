//! Random test inputs: categories of functions between small finite sets,
//! modules over them and functors into them.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use catcoh::fincat::Morphism;
use catcoh::linalg::{Matrix, SparseVec};
use catcoh::{CatFunctor, CatModule, Field, FiniteCategory, Variance};
use rand::seq::SliceRandom;
use rand::Rng;

pub const MAX_OBJECTS: usize = 4;
pub const MAX_MORPHISMS: usize = 12;

/// A category whose morphisms are functions between the finite sets
/// `0..sizes[x]`.
#[derive(Clone)]
pub struct Concrete {
    pub cat: Arc<FiniteCategory>,
    pub sizes: Vec<usize>,
    /// `funcs[f][s]` is the image of `s`.
    pub funcs: Vec<Vec<usize>>,
    /// Indices of the chosen generators.
    pub generators: Vec<usize>,
}

type Arrow = (usize, usize, Vec<usize>);

fn close(sizes: &[usize], gens: &[Arrow], limit: usize) -> Option<Vec<Arrow>> {
    let mut all: Vec<Arrow> = (0..sizes.len()).map(|x| (x, x, (0..sizes[x]).collect())).collect();
    for g in gens {
        if !all.contains(g) {
            all.push(g.clone());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = all.clone();
        for g in &snapshot {
            for f in &snapshot {
                if f.1 != g.0 {
                    continue;
                }
                let h = (f.0, g.1, f.2.iter().map(|&s| g.2[s]).collect());
                if !all.contains(&h) {
                    all.push(h);
                    changed = true;
                    if all.len() > limit {
                        return None;
                    }
                }
            }
        }
    }
    Some(all)
}

pub fn random_concrete<R: Rng>(rng: &mut R) -> Concrete {
    random_concrete_within(rng, MAX_OBJECTS, MAX_MORPHISMS)
}

pub fn random_concrete_within<R: Rng>(rng: &mut R, max_objects: usize, max_morphisms: usize) -> Concrete {
    loop {
        let n = rng.gen_range(1..=max_objects);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let count = rng.gen_range(0..=4);
        let mut gens: Vec<Arrow> = Vec::new();
        for _ in 0..count {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            gens.push((x, y, (0..sizes[x]).map(|_| rng.gen_range(0..sizes[y])).collect()));
        }
        // drop generators until the closure is small enough
        while !gens.is_empty() && close(&sizes, &gens, max_morphisms).is_none() {
            gens.pop();
        }
        let Some(all) = close(&sizes, &gens, max_morphisms) else { continue };
        return concrete(&sizes, &all, &gens);
    }
}

fn concrete(sizes: &[usize], all: &[Arrow], gens: &[Arrow]) -> Concrete {
    let objects: Vec<String> = (0..sizes.len()).map(|x| format!("x{x}")).collect();
    let morphisms: Vec<Morphism> = all.iter().enumerate().map(|(i, a)| Morphism { id: format!("m{i}"), src: a.0, tgt: a.1 }).collect();
    let index: HashMap<&Arrow, usize> = all.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let identity: Vec<usize> = (0..sizes.len()).collect();
    let cat = FiniteCategory::build(objects, morphisms, identity, |g, f| {
        let (fa, ga) = (&all[f], &all[g]);
        let h = (fa.0, ga.1, fa.2.iter().map(|&s| ga.2[s]).collect::<Vec<_>>());
        index.get(&h).copied()
    })
    .expect("function categories are categories");
    let generators = gens.iter().map(|g| index[g]).collect();
    Concrete { cat: Arc::new(cat), sizes: sizes.to_vec(), funcs: all.iter().map(|a| a.2.clone()).collect(), generators }
}

/// Totally ordered set `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> Arc<FiniteCategory> {
    Arc::new(FiniteCategory::poset((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).unwrap())
}

fn random_elem<F: Field, R: Rng>(f: &F, rng: &mut R) -> F::Elem {
    f.from_i64(rng.gen_range(0..3))
}

/// `F^{S_x}` with `M(φ)` precomposition by `φ`.
pub fn function_module<F: Field>(c: &Concrete, f: &F) -> CatModule<F> {
    let maps = (0..c.cat.num_morphisms())
        .map(|m| {
            let (x, y) = (c.cat.src(m), c.cat.tgt(m));
            let mut a = Matrix::zeros(f, c.sizes[x], c.sizes[y]);
            for (s, &t) in c.funcs[m].iter().enumerate() {
                a.set(s, t, f.one());
            }
            a
        })
        .collect();
    CatModule::new(c.cat.clone(), Variance::Right, f.clone(), c.sizes.clone(), maps).unwrap()
}

/// `F[S_x]` with `M(φ)` pushforward along `φ`.
pub fn permutation_module<F: Field>(c: &Concrete, f: &F) -> CatModule<F> {
    let maps = (0..c.cat.num_morphisms())
        .map(|m| {
            let (x, y) = (c.cat.src(m), c.cat.tgt(m));
            let mut a = Matrix::zeros(f, c.sizes[y], c.sizes[x]);
            for (s, &t) in c.funcs[m].iter().enumerate() {
                a.set(t, s, f.one());
            }
            a
        })
        .collect();
    CatModule::new(c.cat.clone(), Variance::Left, f.clone(), c.sizes.clone(), maps).unwrap()
}

fn random_vector<F: Field, R: Rng>(f: &F, dim: usize, rng: &mut R) -> SparseVec<F::Elem> {
    (0..dim).map(|i| (i, random_elem(f, rng))).filter(|(_, a)| !f.is_zero(a)).collect()
}

/// Cokernel of the submodule generated by one random vector.
fn quotient<F: Field, R: Rng>(m: &CatModule<F>, rng: &mut R) -> CatModule<F> {
    let x = rng.gen_range(0..m.category().num_objects());
    let v = random_vector(m.field(), m.dim(x), rng);
    let (_, incl) = m.generated_submodule(&[(x, v)]).unwrap();
    incl.cokernel().unwrap().0
}

pub fn random_right_module<F: Field, R: Rng>(c: &Concrete, f: &F, rng: &mut R) -> CatModule<F> {
    let n = c.cat.num_objects();
    let base = |rng: &mut R| -> CatModule<F> {
        match rng.gen_range(0..4) {
            0 => CatModule::constant(c.cat.clone(), f.clone(), Variance::Right),
            1 => CatModule::representable(c.cat.clone(), rng.gen_range(0..n), f.clone()).unwrap(),
            2 => function_module(c, f),
            _ => quotient(&CatModule::representable(c.cat.clone(), rng.gen_range(0..n), f.clone()).unwrap(), rng),
        }
    };
    let m = base(rng);
    match rng.gen_range(0..4) {
        0 => m.direct_sum(&base(rng)).unwrap(),
        1 => quotient(&m, rng),
        _ => m,
    }
}

pub fn random_left_module<F: Field, R: Rng>(c: &Concrete, f: &F, rng: &mut R) -> CatModule<F> {
    let n = c.cat.num_objects();
    let m = match rng.gen_range(0..4) {
        0 => CatModule::constant(c.cat.clone(), f.clone(), Variance::Left),
        1 => CatModule::left_representable(c.cat.clone(), rng.gen_range(0..n), f.clone()).unwrap(),
        2 => permutation_module(c, f),
        _ => quotient(&permutation_module(c, f), rng),
    };
    if rng.gen_bool(0.25) {
        m.direct_sum(&CatModule::constant(c.cat.clone(), f.clone(), Variance::Left)).unwrap()
    } else {
        m
    }
}

/// A functor `S → C` into the given category: a full or wide
/// subcategory inclusion, or the constant functor at one object.
pub fn random_functor_into<R: Rng>(c: &Concrete, rng: &mut R) -> CatFunctor {
    let cat = &c.cat;
    let n = cat.num_objects();
    match rng.gen_range(0..3) {
        0 => {
            let mut objs: Vec<usize> = (0..n).collect();
            objs.shuffle(rng);
            objs.truncate(rng.gen_range(1..=n));
            objs.sort();
            let (sub, o, m) = cat.full_subcategory(&objs).unwrap();
            CatFunctor::new(Arc::new(sub), cat.clone(), o, m).unwrap()
        }
        1 => {
            // wide subcategory generated by a subset of the generators
            let keep: Vec<usize> = c.generators.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let mut mors: Vec<usize> = (0..n).map(|x| cat.identity(x)).collect();
            mors.extend(keep);
            loop {
                let mut grown = mors.clone();
                for &g in &mors {
                    for &f in &mors {
                        if let Some(h) = cat.try_compose(g, f) {
                            if !grown.contains(&h) {
                                grown.push(h);
                            }
                        }
                    }
                }
                if grown.len() == mors.len() {
                    break;
                }
                mors = grown;
            }
            mors.sort();
            mors.dedup();
            let objs: Vec<usize> = (0..n).collect();
            let (sub, o, m) = cat.subcategory(&objs, &mors).unwrap();
            CatFunctor::new(Arc::new(sub), cat.clone(), o, m).unwrap()
        }
        _ => {
            let x = rng.gen_range(0..n);
            let point = Arc::new(FiniteCategory::terminal());
            CatFunctor::new(point, cat.clone(), vec![x], vec![cat.identity(x)]).unwrap()
        }
    }
}
