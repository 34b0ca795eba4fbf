//! Inputs shared by the benchmarks.

use std::sync::Arc;

use catcoh::extension::{analyze_extension, RegularExtension};
use catcoh::groupcats::{group_categories, CollectionSpec, FiniteGroup, GroupCategories, SubgroupCollection};
use catcoh::{CatModule, FiniteCategory, PrimeField, Variance};

pub fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

/// Built-in group by short name: `Z<n>`, `S<n>`, `D<2n>` or `V4`.
pub fn group(name: &str) -> FiniteGroup {
    let z2 = || FiniteGroup::cyclic(2).unwrap();
    match name {
        "V4" => z2().direct_product(&z2()).unwrap(),
        _ => {
            let n: usize = name[1..].parse().expect("group order");
            match &name[..1] {
                "Z" => FiniteGroup::cyclic(n).unwrap(),
                "S" => FiniteGroup::symmetric(n).unwrap(),
                "D" => FiniteGroup::dihedral(n / 2).unwrap(),
                _ => panic!("unknown group {name}"),
            }
        }
    }
}

/// The group as a one-object category with trivial coefficients.
pub fn trivial_coefficients(name: &str) -> CatModule<PrimeField> {
    let cat = Arc::new(group(name).category().unwrap());
    CatModule::constant(cat, f2(), Variance::Right)
}

/// Transporter, orbit and fusion categories on all subgroups.
pub fn all_subgroups(name: &str) -> GroupCategories {
    let coll = SubgroupCollection::from_spec(Arc::new(group(name)), &CollectionSpec::All).unwrap();
    group_categories(&coll).unwrap()
}

/// Transporter to orbit category, with constant coefficients on the
/// transporter category.
pub fn orbit_extension(name: &str) -> (RegularExtension, CatModule<PrimeField>) {
    let cats = all_subgroups(name);
    let ext = analyze_extension(&cats.pi1).unwrap();
    let m = CatModule::constant(cats.transporter.category.clone(), f2(), Variance::Right);
    (ext, m)
}

/// Totally ordered set on `n` elements.
pub fn chain(n: usize) -> Arc<FiniteCategory> {
    Arc::new(FiniteCategory::poset((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).unwrap())
}
