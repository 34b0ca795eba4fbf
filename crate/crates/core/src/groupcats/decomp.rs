use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{analyze_extension, extension_e2, subdivision_e2, E2Report, ExtensionShape};
use crate::field::Field;
use crate::fincat::{ei_analysis, subdivide, ObjectChain};
use crate::groupcats::categories::{group_categories, CollectionSpec, GroupCategories, GroupCategory, SubgroupCollection};
use crate::groupcats::group::{size, FiniteGroup, Subset};
use crate::groupcats::linking::LinkingSystem;
use crate::homalg::{cohomology_dims, Window};
use crate::modcat::{CatModule, Variance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    /// Over the orbit category, from `T → O`.
    Subgroup,
    /// Over the fusion category, from `T → F`.
    Centralizer,
    /// Over conjugacy classes of subgroup chains.
    Normalizer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkingDecompositionKind {
    /// Over the centric orbit category, from `L → O^c(F)`.
    Subgroup,
    /// Over classes of chains, from the subdivision of `L`.
    Normalizer,
    /// Over classes of chains, from the subdivision of `O^c(F)`.
    OrbitFusion,
}

/// The explicit comparison between chain classes of a subdivision and
/// conjugacy classes of strict subgroup chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPosetCheck {
    pub chain_classes: usize,
    pub subgroup_chain_classes: usize,
    pub bijective: bool,
    /// `[σ] → [τ]` exactly when `τ` is conjugate to a subchain of `σ`.
    pub order_isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub kind: String,
    pub e2: E2Report,
    pub chain_poset: Option<ChainPosetCheck>,
    /// The subdivision computes the same cohomology as the category.
    pub ini_agrees: Option<bool>,
}

/// Minimal conjugate of a subgroup chain that stays inside `allowed`.
fn chain_key(g: &FiniteGroup, chain: &[Subset], allowed: &HashSet<Subset>) -> Vec<Subset> {
    (0..g.order())
        .map(|x| chain.iter().map(|&h| g.conjugate(x, h)).collect::<Vec<_>>())
        .filter(|c| c.iter().all(|h| allowed.contains(h)))
        .min()
        .expect("the identity conjugate is allowed")
}

fn strict_chains(objects: &[Subset]) -> Vec<Vec<Subset>> {
    fn extend(objects: &[Subset], current: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        out.push(current.clone());
        let top = *current.last().expect("nonempty");
        for &h in objects {
            if h != top && top & !h == 0 {
                current.push(h);
                extend(objects, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &h in objects {
        extend(objects, &mut vec![h], &mut out);
    }
    out
}

fn conjugate_to_subchain(g: &FiniteGroup, big: &[Subset], small: &[Subset]) -> bool {
    (0..g.order()).any(|x| small.iter().all(|&h| big.contains(&g.conjugate(x, h))))
}

/// Compares `[s(C)]` for `C = gc` with conjugacy classes of strict chains
/// among `gc`'s objects.
pub fn chain_poset_check(gc: &GroupCategory) -> Result<ChainPosetCheck> {
    let g = gc.group.as_ref();
    let ei = ei_analysis(&gc.category)?;
    let sub = subdivide(&ei.skeleton)?;
    let inc = &ei.inclusion;
    let images: Vec<Vec<Subset>> = sub
        .chains
        .iter()
        .map(|ch| {
            let lifted =
                ObjectChain { objects: ch.objects.iter().map(|&x| inc.obj(x)).collect(), morphisms: ch.morphisms.iter().map(|&m| inc.mor(m)).collect() };
            gc.chain_image(&lifted)
        })
        .collect();
    let allowed: HashSet<Subset> = gc.objects.iter().copied().collect();
    let keys: Vec<Vec<Subset>> = images.iter().map(|c| chain_key(g, c, &allowed)).collect();
    let targets: BTreeSet<Vec<Subset>> = strict_chains(&gc.objects).iter().map(|c| chain_key(g, c, &allowed)).collect();
    let distinct: BTreeSet<&Vec<Subset>> = keys.iter().collect();
    let strict = images.iter().all(|c| c.windows(2).all(|w| w[0] != w[1] && w[0] & !w[1] == 0));
    let bijective = strict && distinct.len() == keys.len() && keys.iter().all(|k| targets.contains(k)) && targets.len() == keys.len();
    let n = sub.chains.len();
    let order_isomorphic = (0..n).all(|a| (0..n).all(|b| !sub.small.hom(a, b).is_empty() == conjugate_to_subchain(g, &images[a], &images[b])));
    Ok(ChainPosetCheck { chain_classes: n, subgroup_chain_classes: targets.len(), bijective, order_isomorphic })
}

fn normalizer_report<F: Field>(gc: &GroupCategory, m: &CatModule<F>, window: Window, label: &str) -> Result<DecompositionReport> {
    let m = m.rehome(gc.category.clone())?;
    let sub = subdivision_e2(&gc.category, &m, window)?;
    let mut e2 = sub.e2;
    e2.shape = label.into();
    Ok(DecompositionReport { kind: label.into(), e2, chain_poset: Some(chain_poset_check(gc)?), ini_agrees: Some(sub.ini_agrees) })
}

/// `E_2` of a decomposition of `T_H(G)`. `Subgroup` and `Normalizer` take
/// `M` right over `T`; `Centralizer` takes `M` left over `T`, or right over
/// the fusion category for the source shape.
pub fn decomposition_e2<F: Field>(cats: &GroupCategories, kind: DecompositionKind, m: &CatModule<F>, window: Window) -> Result<DecompositionReport> {
    let t = &cats.transporter.category;
    let (label, e2) = match kind {
        DecompositionKind::Subgroup => {
            let ext = analyze_extension(&cats.pi1)?;
            ("Subgroup", extension_e2(&ext, None, m, window, Some(ExtensionShape::CohomologyTarget))?)
        }
        DecompositionKind::Centralizer => {
            let ext = analyze_extension(&cats.pi2)?;
            if m.variance() == Variance::Left && **m.category() == **t {
                let triv = CatModule::constant(cats.fusion.category.clone(), m.field().clone(), Variance::Left);
                ("Centralizer", extension_e2(&ext, Some(&triv), m, window, Some(ExtensionShape::ExtSourceLeft))?)
            } else {
                ("Centralizer", extension_e2(&ext, None, m, window, Some(ExtensionShape::CohomologySource))?)
            }
        }
        DecompositionKind::Normalizer => {
            if **m.category() != **t || m.variance() != Variance::Right {
                return Err(Error::ShapeMismatch("the normalizer decomposition takes a right module over the transporter category".into()));
            }
            return normalizer_report(&cats.transporter, m, window, "Normalizer");
        }
    };
    let mut e2 = e2;
    e2.shape = label.into();
    Ok(DecompositionReport { kind: label.into(), e2, chain_poset: None, ini_agrees: None })
}

/// The linking-system decompositions. `Subgroup` and `Normalizer` take `M`
/// right over `L`; `OrbitFusion` takes `M` right over `O^c(F)`.
pub fn linking_decomposition<F: Field>(ls: &LinkingSystem, kind: LinkingDecompositionKind, m: &CatModule<F>, window: Window) -> Result<DecompositionReport> {
    match kind {
        LinkingDecompositionKind::Subgroup => {
            let ext = analyze_extension(&ls.to_orbit)?;
            let mut e2 = extension_e2(&ext, None, m, window, Some(ExtensionShape::CohomologyTarget))?;
            e2.shape = "LinkingSubgroup".into();
            Ok(DecompositionReport { kind: e2.shape.clone(), e2, chain_poset: None, ini_agrees: None })
        }
        LinkingDecompositionKind::Normalizer => normalizer_report(&ls.linking, m, window, "LinkingNormalizer"),
        LinkingDecompositionKind::OrbitFusion => normalizer_report(&ls.orbit, m, window, "OrbitFusion"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseComparison {
    /// `H^*(F̄^c; M)`
    pub quotient_dims: Vec<usize>,
    /// `H^*(O^c; Res M)`
    pub restricted_dims: Vec<usize>,
    pub equal: bool,
    pub e2: E2Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseReport {
    pub source_regular: bool,
    pub kernel_orders: Vec<usize>,
    /// No kernel order is divisible by the field characteristic.
    pub p_local: bool,
    pub comparisons: Vec<CollapseComparison>,
}

/// The categories on the `p`-centric subgroups of `G`.
pub fn centric_categories(group: &Arc<FiniteGroup>, p: usize) -> Result<GroupCategories> {
    group_categories(&SubgroupCollection::from_spec(group.clone(), &CollectionSpec::PCentric(p))?)
}

/// `π3: O^c → F̄^c` on centric categories; compares `H^*(F̄^c; M)` with
/// `H^*(O^c; Res M)` for each `M` right over `F̄^c`.
pub fn oc_to_fbar<F: Field>(cats: &GroupCategories, modules: &[CatModule<F>], window: Window) -> Result<CollapseReport> {
    let ext = analyze_extension(&cats.pi3)?;
    let g = cats.collection.group();
    let kernel_orders: Vec<usize> = cats.collection.subgroups().iter().map(|&h| size(g.centralizer(h)) / size(g.center(h))).collect();
    let ch = modules.first().map_or(0, |m| m.field().characteristic() as usize);
    let p_local = ch == 0 || kernel_orders.iter().all(|k| k % ch != 0);
    let mut comparisons = Vec::new();
    if ext.source.holds {
        for m in modules {
            let m = m.rehome(cats.fusion_orbit.category.clone())?;
            let quotient_dims = cohomology_dims(&m, window.n_max)?;
            let restricted_dims = cohomology_dims(&m.restrict(&cats.pi3)?, window.n_max)?;
            let e2 = extension_e2(&ext, None, &m, window, Some(ExtensionShape::CohomologySource))?;
            comparisons.push(CollapseComparison { equal: quotient_dims == restricted_dims, quotient_dims, restricted_dims, e2 });
        }
    }
    Ok(CollapseReport { source_regular: ext.source.holds, kernel_orders, p_local, comparisons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groupcats::linking::linking_system;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn z2_subgroup_decomposition_sees_group_cohomology() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let cats = group_categories(&SubgroupCollection::from_spec(g, &CollectionSpec::All).unwrap()).unwrap();
        let m = CatModule::constant(cats.transporter.category.clone(), f2(), Variance::Right);
        let r = decomposition_e2(&cats, DecompositionKind::Subgroup, &m, Window::through(3)).unwrap();
        assert_eq!(r.e2.abutment, vec![1; 4]);
        assert!(r.e2.consistent());
    }

    #[test]
    fn s3_normalizer_chain_poset() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let cats = group_categories(&SubgroupCollection::from_spec(g, &CollectionSpec::NontrivialPSubgroups(2)).unwrap()).unwrap();
        let m = CatModule::constant(cats.transporter.category.clone(), f2(), Variance::Right);
        let r = decomposition_e2(&cats, DecompositionKind::Normalizer, &m, Window::through(2)).unwrap();
        let cp = r.chain_poset.unwrap();
        assert_eq!(cp.chain_classes, 1);
        assert!(cp.bijective && cp.order_isomorphic);
        assert_eq!(r.ini_agrees, Some(true));
        assert!(r.e2.consistent());
    }

    #[test]
    fn centralizer_collapses_for_odd_centralizers() {
        // S3 at 3 over F2: C_G(A3) = A3 has odd order
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let cats = group_categories(&SubgroupCollection::from_spec(g, &CollectionSpec::NontrivialPSubgroups(3)).unwrap()).unwrap();
        let m = CatModule::constant(cats.transporter.category.clone(), f2(), Variance::Left);
        let r = decomposition_e2(&cats, DecompositionKind::Centralizer, &m, Window::through(2)).unwrap();
        assert!((0..=3).all(|p| (1..=3).all(|q| r.e2.dim(p, q) == 0)));
        assert!(r.e2.equality);
    }

    #[test]
    fn s3_collapse_at_two() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let cats = centric_categories(&g, 2).unwrap();
        let m = CatModule::constant(cats.fusion_orbit.category.clone(), f2(), Variance::Right);
        let r = oc_to_fbar(&cats, &[m], Window::through(3)).unwrap();
        assert!(r.source_regular && r.p_local);
        assert!(r.comparisons[0].equal);
    }

    #[test]
    fn dihedral_linking_chain_posets() {
        let ls = linking_system(&Arc::new(FiniteGroup::dihedral(4).unwrap()), 2).unwrap();
        for gc in [&ls.linking, &ls.orbit] {
            let cp = chain_poset_check(gc).unwrap();
            assert!(cp.bijective && cp.order_isomorphic, "{}: {cp:?}", gc.label);
        }
    }
}
