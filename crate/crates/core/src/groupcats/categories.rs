use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory, Morphism, ObjectChain};
use crate::groupcats::group::{members, size, FiniteGroup, Subset};

/// Largest collection accepted by the category factory.
pub const MAX_COLLECTION: usize = 16;

/// Subgroups closed under conjugation, sorted by order then bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCollection {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subset>,
}

/// How a collection is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollectionSpec {
    /// Subgroups given by generator names.
    Explicit(Vec<Vec<String>>),
    All,
    AllPSubgroups(usize),
    NontrivialPSubgroups(usize),
    PCentric(usize),
}

impl CollectionSpec {
    /// `all`, `all-p-subgroups`, `nontrivial-p-subgroups`, `p-centric`, or an
    /// explicit list: subgroups separated by `;`, generators by whitespace.
    pub fn parse(text: &str, p: Option<usize>) -> Result<Self> {
        let need_p = || p.ok_or_else(|| Error::Parse(format!("collection {text:?} needs a prime")));
        Ok(match text.trim() {
            "all" => CollectionSpec::All,
            "all-p-subgroups" => CollectionSpec::AllPSubgroups(need_p()?),
            "nontrivial-p-subgroups" => CollectionSpec::NontrivialPSubgroups(need_p()?),
            "p-centric" => CollectionSpec::PCentric(need_p()?),
            list => CollectionSpec::Explicit(list.split(';').map(|s| s.split_whitespace().map(str::to_string).collect()).collect()),
        })
    }
}

pub(crate) fn check_prime(p: usize) -> Result<()> {
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::NotPrime(p as u32));
    }
    Ok(())
}

impl SubgroupCollection {
    pub fn new(group: Arc<FiniteGroup>, subgroups: &[Subset]) -> Result<Self> {
        let mut subs: Vec<Subset> = subgroups.to_vec();
        subs.sort_by_key(|&s| (size(s), s));
        subs.dedup();
        if subs.len() > MAX_COLLECTION {
            return Err(Error::CollectionTooLarge { size: subs.len(), bound: MAX_COLLECTION });
        }
        for &h in &subs {
            if h & !group.whole() != 0 || !group.is_subgroup(h) {
                return Err(Error::InvalidGroup(format!("{:?} is not a subgroup", members(h).map(|g| group.name(g)).collect::<Vec<_>>())));
            }
            for g in 0..group.order() {
                let c = group.conjugate(g, h);
                if !subs.contains(&c) {
                    return Err(Error::CollectionNotClosed(format!(
                        "{}·{}·{}⁻¹ = {} is missing",
                        group.name(g),
                        group.subgroup_name(h),
                        group.name(g),
                        group.subgroup_name(c)
                    )));
                }
            }
        }
        Ok(SubgroupCollection { group, subgroups: subs })
    }

    pub fn from_spec(group: Arc<FiniteGroup>, spec: &CollectionSpec) -> Result<Self> {
        let subs: Vec<Subset> = match spec {
            CollectionSpec::Explicit(lists) => lists
                .iter()
                .map(|names| {
                    let gens = names.iter().try_fold(0u64, |acc, n| {
                        group.index_of(n).map(|i| acc | 1 << i).ok_or_else(|| Error::InvalidGroup(format!("unknown element {n:?}")))
                    })?;
                    Ok(group.generate(gens))
                })
                .collect::<Result<_>>()?,
            CollectionSpec::All => group.subgroups(),
            CollectionSpec::AllPSubgroups(p) | CollectionSpec::NontrivialPSubgroups(p) => {
                check_prime(*p)?;
                let skip_trivial = matches!(spec, CollectionSpec::NontrivialPSubgroups(_));
                group.subgroups().into_iter().filter(|&s| group.is_p_group(s, *p) && !(skip_trivial && s == 1)).collect()
            }
            CollectionSpec::PCentric(p) => crate::groupcats::centric::p_centric(&group, *p)?.into_iter().map(|c| c.subgroup).collect(),
        };
        Self::new(group, &subs)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subset] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CategoryKind {
    Transporter,
    Orbit,
    Fusion,
    FusionOrbit,
}

impl CategoryKind {
    pub const ALL: [CategoryKind; 4] = [CategoryKind::Transporter, CategoryKind::Orbit, CategoryKind::Fusion, CategoryKind::FusionOrbit];

    fn left(self) -> bool {
        matches!(self, CategoryKind::Orbit | CategoryKind::FusionOrbit)
    }

    fn right(self) -> bool {
        matches!(self, CategoryKind::Fusion | CategoryKind::FusionOrbit)
    }
}

/// One morphism `H → K`: the class `L·g·R` of a transporting element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub src: usize,
    pub tgt: usize,
    /// Least element of the class.
    pub rep: usize,
    pub members: Subset,
}

/// Recipe for a category on subgroups whose morphisms are classes
/// `L·g·R(H)` of elements `g ∈ N_G(H, K) ∩ ambient`, with `L = K` when
/// `left` and `R(H)` a per-object right factor.
pub(crate) struct CosetSpec<'a> {
    pub group: &'a FiniteGroup,
    pub objects: Vec<Subset>,
    pub ambient: Subset,
    pub left: bool,
    pub right: Vec<Subset>,
    pub label: &'a str,
}

/// A category on subgroups built from transporter classes, with enough
/// data to recover group elements from morphisms.
#[derive(Clone, Debug)]
pub struct GroupCategory {
    pub label: String,
    pub group: Arc<FiniteGroup>,
    pub objects: Vec<Subset>,
    pub category: Arc<FiniteCategory>,
    pub classes: Vec<MorphismClass>,
    lookup: HashMap<(usize, usize, usize), usize>,
}

impl GroupCategory {
    pub(crate) fn build(group: &Arc<FiniteGroup>, spec: CosetSpec<'_>) -> Result<Self> {
        let g = spec.group;
        let objs = &spec.objects;
        let mut classes: Vec<MorphismClass> = Vec::new();
        let mut lookup = HashMap::new();
        for (h, &hs) in objs.iter().enumerate() {
            for (k, &ks) in objs.iter().enumerate() {
                let trans = g.transporter(hs, ks) & spec.ambient;
                let lefts: Vec<usize> = if spec.left { members(ks & spec.ambient).collect() } else { vec![0] };
                let mut left_over = trans;
                while left_over != 0 {
                    let x = left_over.trailing_zeros() as usize;
                    let mut class = 0u64;
                    for &l in &lefts {
                        for r in members(spec.right[h]) {
                            class |= 1 << g.mul(g.mul(l, x), r);
                        }
                    }
                    if class & !trans != 0 {
                        return Err(Error::IllDefinedComposition(format!("class of {} leaves the transporter set", g.name(x))));
                    }
                    left_over &= !class;
                    let idx = classes.len();
                    for y in members(class) {
                        lookup.insert((h, k, y), idx);
                    }
                    classes.push(MorphismClass { src: h, tgt: k, rep: x, members: class });
                }
            }
        }
        let names: Vec<String> = objs.iter().map(|&s| g.subgroup_name(s)).collect();
        let quotient = spec.left || spec.right.iter().any(|&r| r != 1);
        let morphisms: Vec<Morphism> = classes
            .iter()
            .map(|c| {
                let e = g.name(c.rep);
                let id = if quotient { format!("[{e}]:{}->{}", names[c.src], names[c.tgt]) } else { format!("{e}:{}->{}", names[c.src], names[c.tgt]) };
                Morphism { id, src: c.src, tgt: c.tgt }
            })
            .collect();
        let identity: Vec<usize> = (0..objs.len()).map(|h| lookup[&(h, h, 0)]).collect();
        // composition by representatives, checked on every member pair
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); objs.len()];
        for (i, c) in classes.iter().enumerate() {
            by_src[c.src].push(i);
        }
        for (f, cf) in classes.iter().enumerate() {
            for &gm in &by_src[cf.tgt] {
                let cg = &classes[gm];
                let h = *lookup
                    .get(&(cf.src, cg.tgt, g.mul(cg.rep, cf.rep)))
                    .ok_or_else(|| Error::IllDefinedComposition(format!("{} ∘ {} has no class", morphisms[gm].id, morphisms[f].id)))?;
                if quotient {
                    for y in members(cg.members) {
                        for x in members(cf.members) {
                            if lookup.get(&(cf.src, cg.tgt, g.mul(y, x))) != Some(&h) {
                                return Err(Error::IllDefinedComposition(format!(
                                    "{} ∘ {} depends on representatives {} and {}",
                                    morphisms[gm].id,
                                    morphisms[f].id,
                                    g.name(y),
                                    g.name(x)
                                )));
                            }
                        }
                    }
                }
                table.insert((gm, f), h);
            }
        }
        let category = FiniteCategory::build(names, morphisms, identity, |gm, f| table.get(&(gm, f)).copied())?;
        Ok(GroupCategory { label: spec.label.to_string(), group: group.clone(), objects: spec.objects, category: Arc::new(category), classes, lookup })
    }

    /// The morphism `H → K` containing `g`.
    pub fn morphism_of(&self, h: usize, k: usize, g: usize) -> Option<usize> {
        self.lookup.get(&(h, k, g)).copied()
    }

    pub fn rep(&self, m: usize) -> usize {
        self.classes[m].rep
    }

    /// The functor to a coarser category on the same objects sending each
    /// class to the class of its representative.
    pub fn quotient_functor(&self, to: &GroupCategory) -> Result<CatFunctor> {
        if self.objects != to.objects {
            return Err(Error::InvalidFunctor(format!("{} and {} have different objects", self.label, to.label)));
        }
        let mors = self
            .classes
            .iter()
            .map(|c| {
                to.morphism_of(c.src, c.tgt, c.rep)
                    .ok_or_else(|| Error::InvalidFunctor(format!("{} is not a morphism of {}", self.group.name(c.rep), to.label)))
            })
            .collect::<Result<Vec<_>>>()?;
        let objs = (0..self.objects.len()).collect();
        CatFunctor::new(self.category.clone(), to.category.clone(), objs, mors)
    }

    /// The subgroup chain inside the top object obtained by conjugating each
    /// object along the composite of representatives to the end.
    pub fn chain_image(&self, chain: &ObjectChain) -> Vec<Subset> {
        let g = &self.group;
        let n = chain.objects.len();
        let mut out = vec![0; n];
        let mut h = g.identity();
        out[n - 1] = self.objects[chain.objects[n - 1]];
        for i in (0..n - 1).rev() {
            h = g.mul(h, self.rep(chain.morphisms[i]));
            out[i] = g.conjugate(h, self.objects[chain.objects[i]]);
        }
        out
    }
}

/// The four categories of a collection and the quotient functors
/// `π1: T → O`, `π2: T → F`, `π3: O → F̄`, `π4: F → F̄`.
#[derive(Clone, Debug)]
pub struct GroupCategories {
    pub collection: SubgroupCollection,
    pub transporter: GroupCategory,
    pub orbit: GroupCategory,
    pub fusion: GroupCategory,
    pub fusion_orbit: GroupCategory,
    pub pi1: CatFunctor,
    pub pi2: CatFunctor,
    pub pi3: CatFunctor,
    pub pi4: CatFunctor,
}

impl GroupCategories {
    pub fn get(&self, kind: CategoryKind) -> &GroupCategory {
        match kind {
            CategoryKind::Transporter => &self.transporter,
            CategoryKind::Orbit => &self.orbit,
            CategoryKind::Fusion => &self.fusion,
            CategoryKind::FusionOrbit => &self.fusion_orbit,
        }
    }

    /// `π3∘π1 = π4∘π2`, checked morphism by morphism.
    pub fn square_commutes(&self) -> bool {
        (0..self.transporter.category.num_morphisms()).all(|m| self.pi3.mor(self.pi1.mor(m)) == self.pi4.mor(self.pi2.mor(m)))
    }
}

pub fn build_category(collection: &SubgroupCollection, kind: CategoryKind) -> Result<GroupCategory> {
    let g = collection.group();
    let objects = collection.subgroups().to_vec();
    let right = objects.iter().map(|&h| if kind.right() { g.centralizer(h) } else { 1 }).collect();
    let label = match kind {
        CategoryKind::Transporter => "transporter",
        CategoryKind::Orbit => "orbit",
        CategoryKind::Fusion => "fusion",
        CategoryKind::FusionOrbit => "fusion_orbit",
    };
    GroupCategory::build(g, CosetSpec { group: g, objects, ambient: g.whole(), left: kind.left(), right, label })
}

pub fn group_categories(collection: &SubgroupCollection) -> Result<GroupCategories> {
    let [t, o, f, fo] = CategoryKind::ALL.map(|k| build_category(collection, k));
    let (t, o, f, fo) = (t?, o?, f?, fo?);
    let pi1 = t.quotient_functor(&o)?;
    let pi2 = t.quotient_functor(&f)?;
    let pi3 = o.quotient_functor(&fo)?;
    let pi4 = f.quotient_functor(&fo)?;
    Ok(GroupCategories { collection: collection.clone(), transporter: t, orbit: o, fusion: f, fusion_orbit: fo, pi1, pi2, pi3, pi4 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collection(g: FiniteGroup, spec: CollectionSpec) -> SubgroupCollection {
        SubgroupCollection::from_spec(Arc::new(g), &spec).unwrap()
    }

    fn hom_count(c: &GroupCategory, a: usize, b: usize) -> usize {
        c.category.hom(a, b).len()
    }

    #[test]
    fn z2_orbit_and_transporter_counts() {
        let cats = group_categories(&collection(FiniteGroup::cyclic(2).unwrap(), CollectionSpec::All)).unwrap();
        let o = &cats.orbit;
        assert_eq!([hom_count(o, 0, 0), hom_count(o, 0, 1), hom_count(o, 1, 1), hom_count(o, 1, 0)], [2, 1, 1, 0]);
        let t = &cats.transporter;
        assert_eq!([hom_count(t, 0, 0), hom_count(t, 0, 1), hom_count(t, 1, 1), hom_count(t, 1, 0)], [2, 2, 2, 0]);
        assert_eq!(o.category.num_morphisms(), 4);
        assert!(cats.square_commutes());
    }

    #[test]
    fn s3_fusion_counts_match_cosets() {
        let cats = group_categories(&collection(FiniteGroup::symmetric(3).unwrap(), CollectionSpec::All)).unwrap();
        let g = cats.collection.group();
        let subs = cats.collection.subgroups();
        for (a, &h) in subs.iter().enumerate() {
            for (b, &k) in subs.iter().enumerate() {
                let n = size(g.transporter(h, k));
                assert_eq!(hom_count(&cats.fusion, a, b), n / size(g.centralizer(h)));
                assert_eq!(hom_count(&cats.transporter, a, b), n);
            }
        }
    }

    #[test]
    fn collections_must_be_closed() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let two = g.subgroups().into_iter().find(|&s| size(s) == 2).unwrap();
        let r = SubgroupCollection::new(g.clone(), &[1, two]);
        assert!(matches!(r, Err(Error::CollectionNotClosed(_))));
        let spec = CollectionSpec::parse("(1,2); (1,2,3)", None).unwrap();
        let c = SubgroupCollection::from_spec(g, &spec);
        assert!(matches!(c, Err(Error::CollectionNotClosed(_))));
    }
}
