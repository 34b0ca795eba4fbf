use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, RawCategory};

/// Functor file: both categories inline, maps by name. Identities may be
/// omitted from `morphisms`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    pub source: RawCategory,
    pub target: RawCategory,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

/// Transformation file: two functors with one component per object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTransformation {
    pub from: RawFunctor,
    pub to: RawFunctor,
    pub components: BTreeMap<String, String>,
}

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl CatFunctor {
    /// Checked construction: identities, endpoints and composition are
    /// verified exhaustively.
    pub fn new(source: Arc<FiniteCategory>, target: Arc<FiniteCategory>, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<Self> {
        let fun = CatFunctor { source, target, objects, morphisms };
        fun.check()?;
        Ok(fun)
    }

    fn check(&self) -> Result<()> {
        let (c, d) = (&*self.source, &*self.target);
        if self.objects.len() != c.num_objects() || self.morphisms.len() != c.num_morphisms() {
            return Err(Error::InvalidFunctor("map sizes do not match the source category".into()));
        }
        if self.objects.iter().any(|&y| y >= d.num_objects()) || self.morphisms.iter().any(|&g| g >= d.num_morphisms()) {
            return Err(Error::InvalidFunctor("map leaves the target category".into()));
        }
        for x in 0..c.num_objects() {
            if self.morphisms[c.identity(x)] != d.identity(self.objects[x]) {
                return Err(Error::InvalidFunctor(format!("identity of {} not preserved", c.object_name(x))));
            }
        }
        for f in 0..c.num_morphisms() {
            let g = self.morphisms[f];
            if d.src(g) != self.objects[c.src(f)] || d.tgt(g) != self.objects[c.tgt(f)] {
                return Err(Error::InvalidFunctor(format!("endpoints of {} not preserved", c.morphism_id(f))));
            }
        }
        for g in 0..c.num_morphisms() {
            for &f in c.morphisms_into(c.src(g)) {
                let lhs = self.morphisms[c.compose(g, f)];
                let rhs = d.compose(self.morphisms[g], self.morphisms[f]);
                if lhs != rhs {
                    return Err(Error::InvalidFunctor(format!("composite {} ∘ {} not preserved", c.morphism_id(g), c.morphism_id(f))));
                }
            }
        }
        Ok(())
    }

    pub fn from_raw(raw: &RawFunctor) -> Result<Self> {
        let c = Arc::new(FiniteCategory::from_raw(&raw.source)?);
        let d = Arc::new(FiniteCategory::from_raw(&raw.target)?);
        Self::from_raw_over(c, d, raw)
    }

    /// Reads the maps of `raw` against already-built categories.
    pub fn from_raw_over(c: Arc<FiniteCategory>, d: Arc<FiniteCategory>, raw: &RawFunctor) -> Result<Self> {
        let mut objects = Vec::with_capacity(c.num_objects());
        for x in c.objects() {
            let y = raw.objects.get(x).ok_or_else(|| Error::InvalidFunctor(format!("object {x:?} has no image")))?;
            objects.push(d.object_index(y).ok_or_else(|| Error::ObjectNotInTarget(y.clone()))?);
        }
        for key in raw.objects.keys() {
            c.object_index(key).ok_or_else(|| Error::ObjectNotInCategory(key.clone()))?;
        }
        for key in raw.morphisms.keys() {
            c.morphism_index(key).ok_or_else(|| Error::UnknownMorphism(key.clone()))?;
        }
        let mut morphisms = Vec::with_capacity(c.num_morphisms());
        for f in 0..c.num_morphisms() {
            let image = match raw.morphisms.get(c.morphism_id(f)) {
                Some(id) => d.morphism_index(id).ok_or_else(|| Error::UnknownMorphism(id.clone()))?,
                None if c.is_identity(f) => d.identity(objects[c.src(f)]),
                None => return Err(Error::InvalidFunctor(format!("morphism {:?} has no image", c.morphism_id(f)))),
            };
            morphisms.push(image);
        }
        Self::new(c, d, objects, morphisms)
    }

    pub fn to_raw(&self) -> RawFunctor {
        let (c, d) = (&self.source, &self.target);
        RawFunctor {
            source: c.to_raw(),
            target: d.to_raw(),
            objects: (0..c.num_objects()).map(|x| (c.object_name(x).to_string(), d.object_name(self.objects[x]).to_string())).collect(),
            morphisms: (0..c.num_morphisms())
                .filter(|&f| !c.is_identity(f))
                .map(|f| (c.morphism_id(f).to_string(), d.morphism_id(self.morphisms[f]).to_string()))
                .collect(),
        }
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let objects = (0..c.num_objects()).collect();
        let morphisms = (0..c.num_morphisms()).collect();
        CatFunctor { source: c.clone(), target: c, objects, morphisms }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(c: Arc<FiniteCategory>) -> Self {
        let t = Arc::new(FiniteCategory::terminal());
        let objects = vec![0; c.num_objects()];
        let morphisms = vec![0; c.num_morphisms()];
        CatFunctor { source: c, target: t, objects, morphisms }
    }

    /// The functor from the terminal category picking out `d`.
    pub fn point(d: Arc<FiniteCategory>, object: usize) -> Self {
        let id = d.identity(object);
        CatFunctor { source: Arc::new(FiniteCategory::terminal()), target: d, objects: vec![object], morphisms: vec![id] }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    pub fn obj(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &CatFunctor) -> Result<CatFunctor> {
        if *self.target != *other.source {
            return Err(Error::InvalidFunctor("composable functors must share a category".into()));
        }
        Ok(CatFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&y| other.objects[y]).collect(),
            morphisms: self.morphisms.iter().map(|&g| other.morphisms[g]).collect(),
        })
    }

    /// The same maps viewed between opposite categories.
    pub fn opposite(&self) -> CatFunctor {
        CatFunctor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// As `opposite`, reusing already-built opposite categories.
    pub fn opposite_with(&self, source_op: Arc<FiniteCategory>, target_op: Arc<FiniteCategory>) -> CatFunctor {
        CatFunctor { source: source_op, target: target_op, objects: self.objects.clone(), morphisms: self.morphisms.clone() }
    }

    pub fn is_identity_on_objects(&self) -> bool {
        self.source.num_objects() == self.target.num_objects() && self.objects.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Full and faithful: bijective on every hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let c = &self.source;
        let d = &self.target;
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let mut imgs: Vec<usize> = c.hom(x, y).iter().map(|&f| self.morphisms[f]).collect();
                imgs.sort_unstable();
                imgs.dedup();
                if imgs.len() != c.hom(x, y).len() || imgs.len() != d.hom(self.objects[x], self.objects[y]).len() {
                    return false;
                }
            }
        }
        true
    }

    /// Every target object is isomorphic to an image object.
    pub fn is_essentially_surjective(&self) -> bool {
        let d = &self.target;
        (0..d.num_objects()).all(|y| self.objects.iter().any(|&fx| d.are_isomorphic(fx, y)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }
}

/// A natural transformation `η: F ⇒ G` between functors `C → D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    from: CatFunctor,
    to: CatFunctor,
    components: Vec<usize>,
}

impl NatTransformation {
    pub fn new(from: CatFunctor, to: CatFunctor, components: Vec<usize>) -> Result<Self> {
        if *from.source != *to.source || *from.target != *to.target {
            return Err(Error::InvalidTransformation("functors must share source and target".into()));
        }
        let c = from.source.clone();
        let d = from.target.clone();
        if components.len() != c.num_objects() {
            return Err(Error::InvalidTransformation("one component per object required".into()));
        }
        for x in 0..c.num_objects() {
            let e = components[x];
            if d.src(e) != from.obj(x) || d.tgt(e) != to.obj(x) {
                return Err(Error::InvalidTransformation(format!("component at {} has wrong endpoints", c.object_name(x))));
            }
        }
        for phi in 0..c.num_morphisms() {
            let (x, y) = (c.src(phi), c.tgt(phi));
            let lhs = d.compose(to.mor(phi), components[x]);
            let rhs = d.compose(components[y], from.mor(phi));
            if lhs != rhs {
                return Err(Error::InvalidTransformation(format!("naturality fails at {}", c.morphism_id(phi))));
            }
        }
        Ok(NatTransformation { from, to, components })
    }

    pub fn from_raw(raw: &RawTransformation) -> Result<Self> {
        let from = CatFunctor::from_raw(&raw.from)?;
        let to = CatFunctor::from_raw_over(from.source.clone(), from.target.clone(), &raw.to)?;
        let c = from.source.clone();
        let d = from.target.clone();
        let components = c
            .objects()
            .iter()
            .map(|x| {
                let id = raw.components.get(x).ok_or_else(|| Error::InvalidTransformation(format!("no component at {x:?}")))?;
                d.morphism_index(id).ok_or_else(|| Error::UnknownMorphism(id.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(from, to, components)
    }

    pub fn from(&self) -> &CatFunctor {
        &self.from
    }

    pub fn to(&self) -> &CatFunctor {
        &self.to
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }
}
