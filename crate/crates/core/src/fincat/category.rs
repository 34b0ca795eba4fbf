use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// Description of a category as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identity: BTreeMap<String, String>,
    /// Triples `[g, f, g∘f]`. Composites with an identity may be omitted.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A finite category with an explicit composition table.
///
/// Composition is stored per morphism `g` as a vector indexed by the
/// position of `f` among the morphisms into `src(g)`.
#[derive(Clone)]
pub struct FiniteCategory {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<String, usize>,
    identity: Vec<usize>,
    is_identity: Vec<bool>,
    hom: Vec<Vec<usize>>,
    into: Vec<Vec<usize>>,
    out_of: Vec<Vec<usize>>,
    pos_in_into: Vec<usize>,
    table: Vec<Vec<u32>>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.morphisms == other.morphisms && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FiniteCategory {}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory").field("objects", &self.objects.len()).field("morphisms", &self.morphisms.len()).finish()
    }
}

const MISSING: u32 = u32::MAX;

impl FiniteCategory {
    /// Build from indexed data. `compose(g, f)` is queried for every
    /// composable pair; all category laws are then verified.
    pub fn build<C>(objects: Vec<String>, morphisms: Vec<Morphism>, identity: Vec<usize>, mut compose: C) -> Result<Self>
    where
        C: FnMut(usize, usize) -> Option<usize>,
    {
        let mut cat = Self::skeleton_of(objects, morphisms, identity)?;
        for g in 0..cat.morphisms.len() {
            let x = cat.morphisms[g].src;
            let row: Vec<u32> = cat.into[x].iter().map(|&f| compose(g, f).map_or(MISSING, |h| h as u32)).collect();
            cat.table[g] = row;
        }
        cat.check_laws()?;
        Ok(cat)
    }

    fn skeleton_of(objects: Vec<String>, morphisms: Vec<Morphism>, identity: Vec<usize>) -> Result<Self> {
        let n = objects.len();
        let mut object_index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateId(o.clone()));
            }
        }
        let mut morphism_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if morphism_index.insert(m.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(m.id.clone()));
            }
            if m.src >= n || m.tgt >= n {
                return Err(Error::ObjectNotInCategory(format!("endpoint of {}", m.id)));
            }
        }
        if identity.len() != n {
            return Err(Error::MissingIdentity { object: String::new(), detail: "identity list has wrong length".into() });
        }
        let mut is_identity = vec![false; morphisms.len()];
        for (x, &i) in identity.iter().enumerate() {
            if i >= morphisms.len() || morphisms[i].src != x || morphisms[i].tgt != x {
                return Err(Error::MissingIdentity { object: objects[x].clone(), detail: "identity is not an endomorphism of the object".into() });
            }
            is_identity[i] = true;
        }
        let mut hom = vec![Vec::new(); n * n];
        let mut into = vec![Vec::new(); n];
        let mut out_of = vec![Vec::new(); n];
        let mut pos_in_into = vec![0; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.src * n + m.tgt].push(i);
            pos_in_into[i] = into[m.tgt].len();
            into[m.tgt].push(i);
            out_of[m.src].push(i);
        }
        let table = vec![Vec::new(); morphisms.len()];
        Ok(FiniteCategory { objects, object_index, morphisms, morphism_index, identity, is_identity, hom, into, out_of, pos_in_into, table })
    }

    /// Validate a raw description.
    pub fn from_raw(raw: &RawCategory) -> Result<Self> {
        let objects = raw.objects.clone();
        let object_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mut morphisms = Vec::with_capacity(raw.morphisms.len());
        for m in &raw.morphisms {
            let src = *object_index.get(m.src.as_str()).ok_or_else(|| Error::ObjectNotInCategory(m.src.clone()))?;
            let tgt = *object_index.get(m.tgt.as_str()).ok_or_else(|| Error::ObjectNotInCategory(m.tgt.clone()))?;
            morphisms.push(Morphism { id: m.id.clone(), src, tgt });
        }
        let morphism_index: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        let lookup = |id: &str| morphism_index.get(id).copied().ok_or_else(|| Error::UnknownMorphism(id.to_string()));
        let mut identity = Vec::with_capacity(objects.len());
        for o in &objects {
            let id = raw.identity.get(o).ok_or_else(|| Error::MissingIdentity { object: o.clone(), detail: "no identity listed".into() })?;
            identity.push(lookup(id)?);
        }
        for key in raw.identity.keys() {
            if !object_index.contains_key(key.as_str()) {
                return Err(Error::ObjectNotInCategory(key.clone()));
            }
        }
        let mut given: HashMap<(usize, usize), usize> = HashMap::new();
        for [g, f, gf] in &raw.compose {
            let (gi, fi, hi) = (lookup(g)?, lookup(f)?, lookup(gf)?);
            let (mg, mf, mh) = (&morphisms[gi], &morphisms[fi], &morphisms[hi]);
            if mg.src != mf.tgt {
                return Err(Error::IncompatibleEndpoints { g: g.clone(), f: f.clone(), detail: format!("source of {g} is not the target of {f}") });
            }
            if mh.src != mf.src || mh.tgt != mg.tgt {
                return Err(Error::IncompatibleEndpoints { g: g.clone(), f: f.clone(), detail: format!("composite {gf} has the wrong source or target") });
            }
            if let Some(prev) = given.insert((gi, fi), hi) {
                if prev != hi {
                    return Err(Error::IncompatibleEndpoints { g: g.clone(), f: f.clone(), detail: "conflicting composites listed".into() });
                }
            }
        }
        let ident = identity.clone();
        let morph = morphisms.clone();
        Self::build(objects, morphisms, identity, |g, f| {
            if let Some(&h) = given.get(&(g, f)) {
                return Some(h);
            }
            if ident[morph[g].src] == g {
                return Some(f);
            }
            if ident[morph[f].tgt] == f {
                return Some(g);
            }
            None
        })
    }

    pub fn to_raw(&self) -> RawCategory {
        let mut compose = Vec::new();
        for g in 0..self.morphisms.len() {
            if self.is_identity[g] {
                continue;
            }
            for &f in &self.into[self.morphisms[g].src] {
                if self.is_identity[f] {
                    continue;
                }
                let h = self.compose(g, f);
                compose.push([self.morphisms[g].id.clone(), self.morphisms[f].id.clone(), self.morphisms[h].id.clone()]);
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| RawMorphism { id: m.id.clone(), src: self.objects[m.src].clone(), tgt: self.objects[m.tgt].clone() })
                .collect(),
            identity: self.identity.iter().enumerate().map(|(x, &i)| (self.objects[x].clone(), self.morphisms[i].id.clone())).collect(),
            compose,
        }
    }

    fn check_laws(&self) -> Result<()> {
        let name = |i: usize| self.morphisms[i].id.clone();
        for g in 0..self.morphisms.len() {
            let x = self.morphisms[g].src;
            for (k, &f) in self.into[x].iter().enumerate() {
                let h = self.table[g][k];
                if h == MISSING {
                    return Err(Error::IncompleteCompositionTable { g: name(g), f: name(f) });
                }
                let h = h as usize;
                if self.morphisms[h].src != self.morphisms[f].src || self.morphisms[h].tgt != self.morphisms[g].tgt {
                    return Err(Error::IncompatibleEndpoints {
                        g: name(g),
                        f: name(f),
                        detail: format!("composite {} has the wrong source or target", name(h)),
                    });
                }
            }
        }
        for (x, &i) in self.identity.iter().enumerate() {
            for &f in &self.into[x] {
                if self.compose(i, f) != f {
                    return Err(Error::MissingIdentity { object: self.objects[x].clone(), detail: format!("{} ∘ {} != {}", name(i), name(f), name(f)) });
                }
            }
            for &g in &self.out_of[x] {
                if self.compose(g, i) != g {
                    return Err(Error::MissingIdentity { object: self.objects[x].clone(), detail: format!("{} ∘ {} != {}", name(g), name(i), name(g)) });
                }
            }
        }
        for h in 0..self.morphisms.len() {
            let y = self.morphisms[h].src;
            for &g in &self.into[y] {
                let hg = self.compose(h, g);
                let x = self.morphisms[g].src;
                for &f in &self.into[x] {
                    if self.compose(hg, f) != self.compose(h, self.compose(g, f)) {
                        return Err(Error::NonAssociative { h: name(h), g: name(g), f: name(f) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn terminal() -> Self {
        Self::build(vec!["*".into()], vec![Morphism { id: "id".into(), src: 0, tgt: 0 }], vec![0], |_, _| Some(0)).expect("terminal category")
    }

    pub fn empty() -> Self {
        Self::build(Vec::new(), Vec::new(), Vec::new(), |_, _| None).expect("empty category")
    }

    /// Poset category on `names`; `leq(a, b)` is closed transitively and
    /// reflexively. Fails if the closure is not antisymmetric.
    pub fn poset<L>(names: Vec<String>, leq: L) -> Result<Self>
    where
        L: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = a == b || leq(a, b);
            }
        }
        for k in 0..n {
            for a in 0..n {
                if rel[a * n + k] {
                    for b in 0..n {
                        if rel[k * n + b] {
                            rel[a * n + b] = true;
                        }
                    }
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut identity = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if rel[a * n + b] {
                    if a != b && rel[b * n + a] {
                        return Err(Error::InvalidFunctor(format!("relation is not antisymmetric at {} and {}", names[a], names[b])));
                    }
                    if a == b {
                        identity[a] = morphisms.len();
                    }
                    index.insert((a, b), morphisms.len());
                    morphisms.push(Morphism { id: format!("{}<={}", names[a], names[b]), src: a, tgt: b });
                }
            }
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
        Self::build(names, morphisms, identity, |g, f| index.get(&(ends[f].0, ends[g].1)).copied())
    }

    /// One-object category of a group or monoid given by its multiplication
    /// table; `mul[a][b]` is the product `a·b`, composition is `g∘f = g·f`.
    pub fn from_monoid(object: &str, names: Vec<String>, mul: &[Vec<usize>], unit: usize) -> Result<Self> {
        let morphisms = names.into_iter().map(|id| Morphism { id, src: 0, tgt: 0 }).collect();
        Self::build(vec![object.to_string()], morphisms, vec![unit], |g, f| Some(mul[g][f]))
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_id(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.is_identity[f]
    }

    /// Morphisms `x → y` in index order.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.objects.len() + y]
    }

    pub fn morphisms_into(&self, y: usize) -> &[usize] {
        &self.into[y]
    }

    pub fn morphisms_out_of(&self, x: usize) -> &[usize] {
        &self.out_of[x]
    }

    /// `g ∘ f`; panics if the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.morphisms[g].src, self.morphisms[f].tgt, "{} ∘ {} is not composable", self.morphisms[g].id, self.morphisms[f].id);
        self.table[g][self.pos_in_into[f]] as usize
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        if self.morphisms[g].src == self.morphisms[f].tgt {
            Some(self.compose(g, f))
        } else {
            None
        }
    }

    /// Composite of a path `f_1, f_2, …` applied left to right:
    /// `f_k ∘ … ∘ f_1`.
    pub fn compose_path(&self, path: &[usize]) -> Option<usize> {
        let mut it = path.iter();
        let mut acc = *it.next()?;
        for &f in it {
            acc = self.compose(f, acc);
        }
        Some(acc)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.src(f), self.tgt(f));
        self.hom(y, x).iter().copied().find(|&g| self.compose(g, f) == self.identity[x] && self.compose(f, g) == self.identity[y])
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn automorphisms(&self, x: usize) -> Vec<usize> {
        self.hom(x, x).iter().copied().filter(|&f| self.is_iso(f)).collect()
    }

    pub fn are_isomorphic(&self, x: usize, y: usize) -> bool {
        x == y || self.hom(x, y).iter().any(|&f| self.is_iso(f))
    }

    /// Same objects and morphisms with endpoints swapped.
    pub fn opposite(&self) -> Self {
        let morphisms = self.morphisms.iter().map(|m| Morphism { id: m.id.clone(), src: m.tgt, tgt: m.src }).collect();
        Self::build(self.objects.clone(), morphisms, self.identity.clone(), |g, f| Some(self.compose(f, g))).expect("opposite of a valid category is valid")
    }

    /// Full subcategory on `objects` (in the given order) with morphisms in
    /// original index order, and the inclusion functor data
    /// `(object map, morphism map)`.
    pub fn full_subcategory(&self, objects: &[usize]) -> Result<(Self, Vec<usize>, Vec<usize>)> {
        let mut new_index = vec![usize::MAX; self.objects.len()];
        for (i, &x) in objects.iter().enumerate() {
            new_index[x] = i;
        }
        let mut morphisms = Vec::new();
        let mut mor_map = Vec::new();
        let mut back = vec![usize::MAX; self.morphisms.len()];
        for (f, m) in self.morphisms.iter().enumerate() {
            if new_index[m.src] != usize::MAX && new_index[m.tgt] != usize::MAX {
                back[f] = morphisms.len();
                mor_map.push(f);
                morphisms.push(Morphism { id: m.id.clone(), src: new_index[m.src], tgt: new_index[m.tgt] });
            }
        }
        let names = objects.iter().map(|&x| self.objects[x].clone()).collect();
        let identity = objects.iter().map(|&x| back[self.identity[x]]).collect();
        let sub = Self::build(names, morphisms, identity, |g, f| Some(back[self.compose(mor_map[g], mor_map[f])]))?;
        Ok((sub, objects.to_vec(), mor_map))
    }

    /// Subcategory with the given objects and morphisms, which must contain
    /// identities and be closed under composition.
    pub fn subcategory(&self, objects: &[usize], morphisms: &[usize]) -> Result<(Self, Vec<usize>, Vec<usize>)> {
        let mut new_obj = vec![usize::MAX; self.objects.len()];
        for (i, &x) in objects.iter().enumerate() {
            new_obj[x] = i;
        }
        let mut back = vec![usize::MAX; self.morphisms.len()];
        let mut ms = Vec::new();
        for (i, &f) in morphisms.iter().enumerate() {
            let m = &self.morphisms[f];
            if new_obj[m.src] == usize::MAX || new_obj[m.tgt] == usize::MAX {
                return Err(Error::InvalidFunctor(format!("morphism {} leaves the object set", m.id)));
            }
            back[f] = i;
            ms.push(Morphism { id: m.id.clone(), src: new_obj[m.src], tgt: new_obj[m.tgt] });
        }
        let mut identity = Vec::new();
        for &x in objects {
            let i = back[self.identity[x]];
            if i == usize::MAX {
                return Err(Error::MissingIdentity { object: self.objects[x].clone(), detail: "identity not in subcategory".into() });
            }
            identity.push(i);
        }
        let names = objects.iter().map(|&x| self.objects[x].clone()).collect();
        let sub = Self::build(names, ms, identity, |g, f| {
            let h = back[self.compose(morphisms[g], morphisms[f])];
            (h != usize::MAX).then_some(h)
        })?;
        Ok((sub, objects.to_vec(), morphisms.to_vec()))
    }

    /// Every object is its only isomorphic object.
    pub fn is_skeletal(&self) -> bool {
        self.skeletal_witness().is_none()
    }

    pub fn skeletal_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.objects.len() {
            for y in x + 1..self.objects.len() {
                if self.are_isomorphic(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().collect::<std::collections::BTreeSet<_>>().len() <= 1
    }

    /// Connected component label of each object (minimal object index).
    pub fn components(&self) -> Vec<usize> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for m in &self.morphisms {
            let (a, b) = (find(&mut parent, m.src), find(&mut parent, m.tgt));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_interval() -> RawCategory {
        RawCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                RawMorphism { id: "i0".into(), src: "0".into(), tgt: "0".into() },
                RawMorphism { id: "i1".into(), src: "1".into(), tgt: "1".into() },
                RawMorphism { id: "a".into(), src: "0".into(), tgt: "1".into() },
            ],
            identity: [("0".to_string(), "i0".to_string()), ("1".to_string(), "i1".to_string())].into_iter().collect(),
            compose: Vec::new(),
        }
    }

    #[test]
    fn interval_is_valid() {
        let c = FiniteCategory::from_raw(&raw_interval()).unwrap();
        assert_eq!(c.num_morphisms(), 3);
        assert_eq!(c.hom(0, 1), &[2]);
        assert_eq!(c.compose(2, 0), 2);
        let back = FiniteCategory::from_raw(&c.to_raw()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn wrong_target_is_rejected() {
        let mut raw = raw_interval();
        raw.compose.push(["a".into(), "i0".into(), "i0".into()]);
        assert!(matches!(FiniteCategory::from_raw(&raw), Err(Error::IncompatibleEndpoints { .. })));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = raw_interval();
        raw.objects.push("2".into());
        raw.identity.insert("2".into(), "i2".into());
        raw.morphisms.push(RawMorphism { id: "i2".into(), src: "2".into(), tgt: "2".into() });
        raw.morphisms.push(RawMorphism { id: "b".into(), src: "1".into(), tgt: "2".into() });
        match FiniteCategory::from_raw(&raw) {
            Err(Error::IncompleteCompositionTable { g, f }) => assert_eq!((g.as_str(), f.as_str()), ("b", "a")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_identity_is_reported() {
        let mut raw = raw_interval();
        raw.identity.remove("1");
        assert!(matches!(FiniteCategory::from_raw(&raw), Err(Error::MissingIdentity { .. })));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // Monoid on {1, a, b} with a·a = b, a·b = 1, b·a = a: not associative.
        let mul = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 2]];
        let r = FiniteCategory::from_monoid("*", vec!["1".into(), "a".into(), "b".into()], &mul, 0);
        assert!(matches!(r, Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn opposite_is_involution() {
        let c = FiniteCategory::poset(vec!["0".into(), "1".into(), "2".into()], |a, b| a < b).unwrap();
        assert_eq!(c.opposite().opposite(), c);
        let op = c.opposite();
        assert_eq!(op.hom(1, 0).len(), 1);
        assert!(op.hom(0, 1).is_empty());
    }

    #[test]
    fn terminal_and_empty() {
        let t = FiniteCategory::terminal();
        assert_eq!(t.opposite(), t);
        assert_eq!(FiniteCategory::empty().num_objects(), 0);
    }
}
