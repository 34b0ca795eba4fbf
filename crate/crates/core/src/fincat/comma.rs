use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory, Morphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommaSide {
    /// `d\F`: objects `(c, f: d → F(c))`.
    Under,
    /// `F/d`: objects `(c, f: F(c) → d)`.
    Over,
}

/// A comma category together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: Arc<FiniteCategory>,
    /// Projection onto the source of `F`.
    pub projection: CatFunctor,
    /// For each comma object, the pair `(c, f)`.
    pub pairs: Vec<(usize, usize)>,
    pub side: CommaSide,
    pub base: usize,
    lookup: HashMap<(usize, usize), usize>,
}

impl Comma {
    pub fn object_of(&self, c: usize, f: usize) -> Option<usize> {
        self.lookup.get(&(c, f)).copied()
    }
}

/// Morphisms `(c,f) → (c',f')` are `φ: c → c'` with `f' = F(φ)∘f` (under)
/// or `f = f'∘F(φ)` (over).
pub fn comma_category(fun: &CatFunctor, d: usize, side: CommaSide) -> Result<Comma> {
    let c = fun.source();
    let t = fun.target();
    if d >= t.num_objects() {
        return Err(Error::ObjectNotInTarget(d.to_string()));
    }
    let mut pairs = Vec::new();
    for x in 0..c.num_objects() {
        let fx = fun.obj(x);
        let homs = match side {
            CommaSide::Under => t.hom(d, fx),
            CommaSide::Over => t.hom(fx, d),
        };
        for &f in homs {
            pairs.push((x, f));
        }
    }
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let name = |&(x, f): &(usize, usize)| format!("({},{})", c.object_name(x), t.morphism_id(f));
    let objects: Vec<String> = pairs.iter().map(name).collect();

    let mut morphisms = Vec::new();
    let mut base_mor = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut identity = vec![usize::MAX; pairs.len()];
    for (a, &(x, f)) in pairs.iter().enumerate() {
        for (b, &(y, g)) in pairs.iter().enumerate() {
            for &phi in c.hom(x, y) {
                let fphi = fun.mor(phi);
                let ok = match side {
                    CommaSide::Under => t.compose(fphi, f) == g,
                    CommaSide::Over => t.compose(g, fphi) == f,
                };
                if !ok {
                    continue;
                }
                if a == b && phi == c.identity(x) {
                    identity[a] = morphisms.len();
                }
                index.insert((a, b, phi), morphisms.len());
                base_mor.push(phi);
                morphisms.push(Morphism { id: format!("{}:{}->{}", c.morphism_id(phi), objects[a], objects[b]), src: a, tgt: b });
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let cat = FiniteCategory::build(objects, morphisms, identity, |g, f| {
        let phi = c.compose(base_mor[g], base_mor[f]);
        index.get(&(ends[f].0, ends[g].1, phi)).copied()
    })?;
    let cat = Arc::new(cat);
    let obj_map = pairs.iter().map(|&(x, _)| x).collect();
    let projection = CatFunctor::new(cat.clone(), c.clone(), obj_map, base_mor)?;
    Ok(Comma { category: cat, projection, pairs, side, base: d, lookup: pair_index })
}

/// The functor `F/φ: F/d → F/d'` for `φ: d → d'`, `(c, f) ↦ (c, φ∘f)`;
/// or `φ\F: d'\F → d\F`, `(c, f) ↦ (c, f∘φ)`.
pub fn comma_transport(over_or_under_from: &Comma, to: &Comma, fun: &CatFunctor, phi: usize) -> Result<CatFunctor> {
    let t = fun.target();
    let (from, target) = (over_or_under_from, to);
    let mut obj_map = Vec::with_capacity(from.pairs.len());
    for &(x, f) in &from.pairs {
        let g = match from.side {
            CommaSide::Over => t.compose(phi, f),
            CommaSide::Under => t.compose(f, phi),
        };
        obj_map.push(target.object_of(x, g).ok_or_else(|| Error::InvalidFunctor("comma transport leaves target".into()))?);
    }
    let fc = &from.category;
    let tc = &target.category;
    let mut mor_map = Vec::with_capacity(fc.num_morphisms());
    for m in 0..fc.num_morphisms() {
        let base = from.projection.mor(m);
        let (a, b) = (obj_map[fc.src(m)], obj_map[fc.tgt(m)]);
        let img = tc
            .hom(a, b)
            .iter()
            .copied()
            .find(|&n| target.projection.mor(n) == base)
            .ok_or_else(|| Error::InvalidFunctor("comma transport has no image morphism".into()))?;
        mor_map.push(img);
    }
    CatFunctor::new(from.category.clone(), target.category.clone(), obj_map, mor_map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteCategory> {
        let mul = vec![vec![0, 1], vec![1, 0]];
        Arc::new(FiniteCategory::from_monoid("*", vec!["e".into(), "g".into()], &mul, 0).unwrap())
    }

    #[test]
    fn point_over_group_is_discrete() {
        let g = z2();
        let p = CatFunctor::point(g, 0);
        let comma = comma_category(&p, 0, CommaSide::Over).unwrap();
        assert_eq!(comma.category.num_objects(), 2);
        assert_eq!(comma.category.num_morphisms(), 2);
    }

    #[test]
    fn identity_under_has_initial_object() {
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |x, y| x < y).unwrap());
        let id = CatFunctor::identity(c.clone());
        let comma = comma_category(&id, 1, CommaSide::Under).unwrap();
        // objects (b, id_b) and (c, b<=c)
        assert_eq!(comma.category.num_objects(), 2);
        let init = comma.object_of(1, c.identity(1)).unwrap();
        for y in 0..comma.category.num_objects() {
            assert_eq!(comma.category.hom(init, y).len(), 1);
        }
    }

    #[test]
    fn out_of_range_object() {
        let g = z2();
        let id = CatFunctor::identity(g);
        assert!(matches!(comma_category(&id, 3, CommaSide::Over), Err(Error::ObjectNotInTarget(_))));
    }
}
