use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::regular::{analyze_extension, LiftSection, Orientation, RegularExtension};
use crate::field::Field;
use crate::fincat::{CatFunctor, CommaSide};
use crate::homalg::{cat_cohomology, cat_homology, coefficient_map, comma_coefficient_modules, Graded, MapDirection, MAX_DEGREE};
use crate::linalg::Matrix;
use crate::modcat::{CatModule, ModuleMap, Variance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Cohomology,
    Homology,
}

/// Per-object kernel (co)homology `H^q(K(x); M(x))` or `H_q(K(x); N(x))`
/// for a right module over the source, with echelon bases.
fn kernel_values<F: Field>(ext: &RegularExtension, m: &CatModule<F>, q_max: usize, kind: KernelKind) -> Result<Vec<Graded<F>>> {
    (0..ext.source_category().num_objects())
        .map(|x| {
            let res = m.restrict(&ext.kernel_inclusion(x)?)?;
            match kind {
                KernelKind::Cohomology => cat_cohomology(&res, q_max),
                KernelKind::Homology => cat_homology(&res, q_max),
            }
        })
        .collect()
}

/// Structure matrices of the kernel modules for every degree, right module
/// `m` over the source; cohomology needs target regularity, homology source.
fn assemble<F: Field>(
    ext: &RegularExtension,
    m: &CatModule<F>,
    values: &[Graded<F>],
    q_max: usize,
    kind: KernelKind,
    section: LiftSection,
) -> Result<Vec<CatModule<F>>> {
    let c = ext.source_category();
    let d = ext.target_category();
    let f = m.field().clone();
    let (orient, dir) = match kind {
        KernelKind::Cohomology => (Orientation::Target, MapDirection::Cohomology),
        KernelKind::Homology => (Orientation::Source, MapDirection::Homology),
    };
    let incl: Vec<CatFunctor> = (0..c.num_objects()).map(|x| ext.kernel_inclusion(x)).collect::<Result<_>>()?;
    let mut per_morphism: Vec<Vec<Matrix<F::Elem>>> = Vec::with_capacity(d.num_morphisms());
    for phi in 0..d.num_morphisms() {
        let lift = ext.lift(phi, section);
        let (x, y) = (d.src(phi), d.tgt(phi));
        let hom = ext.kernel_hom(lift, orient)?;
        // cohomology: K(x) → K(y); homology: K(y) → K(x)
        let (a, b) = match kind {
            KernelKind::Cohomology => (x, y),
            KernelKind::Homology => (y, x),
        };
        let g = CatFunctor::new(incl[a].source().clone(), incl[b].source().clone(), vec![0], hom)?;
        let theta = vec![m.map(lift).clone()];
        // both directions read value(y) and land in value(x)
        per_morphism.push(coefficient_map(&g, &values[y], &values[x], &theta, dir)?);
    }
    (0..=q_max)
        .map(|q| {
            let dims = values.iter().map(|v| v.dims[q]).collect();
            let maps = per_morphism.iter().map(|mats| mats[q].clone()).collect();
            CatModule::new(d.clone(), Variance::Right, f.clone(), dims, maps)
        })
        .collect()
}

/// `x ↦ H^q(K(x); M(x))` (cohomology) or `x ↦ H_q(K(x); N(x))` (homology)
/// as modules over the quotient, for `q = 0..=q_max`.
///
/// Right modules use the extension directly: cohomology on a target
/// regular extension, homology on a source regular one. Left modules are
/// handled on the opposite extension and come back as left modules.
pub fn kernel_coefficient_modules<F: Field>(
    ext: &RegularExtension,
    m: &CatModule<F>,
    q_max: usize,
    kind: KernelKind,
    section: LiftSection,
) -> Result<Vec<CatModule<F>>> {
    Ok(kernel_modules(ext, m, q_max, kind, &[section])?.pop().expect("one section requested"))
}

/// The kernel values are shared by every section; only the structure
/// matrices depend on the lifts.
fn kernel_modules<F: Field>(
    ext: &RegularExtension,
    m: &CatModule<F>,
    q_max: usize,
    kind: KernelKind,
    sections: &[LiftSection],
) -> Result<Vec<Vec<CatModule<F>>>> {
    if q_max > MAX_DEGREE {
        return Err(Error::DegreeOverflow { requested: q_max, bound: MAX_DEGREE });
    }
    if **m.category() != **ext.source_category() {
        return Err(Error::MismatchedBase("module does not live over the extended category".into()));
    }
    let needed = match kind {
        KernelKind::Cohomology => Orientation::Target,
        KernelKind::Homology => Orientation::Source,
    };
    match m.variance() {
        Variance::Right => {
            ext.require(needed)?;
            let m = m.rehome(ext.source_category().clone())?;
            let values = kernel_values(ext, &m, q_max, kind)?;
            sections.iter().map(|&s| assemble(ext, &m, &values, q_max, kind, s)).collect()
        }
        Variance::Left => {
            let op = analyze_extension(&ext.projection.opposite())?;
            op.require(needed).map_err(|e| Error::WrongOrientation(format!("left module needs {:?} regularity of the original: {e}", needed.flip())))?;
            let mop = m.opposite_over(op.source_category().clone());
            let values = kernel_values(&op, &mop, q_max, kind)?;
            sections
                .iter()
                .map(|&s| {
                    let mods = assemble(&op, &mop, &values, q_max, kind, s)?;
                    Ok(mods.into_iter().map(|a| a.opposite_over(ext.target_category().clone())).collect())
                })
                .collect()
        }
    }
}

/// The module for a single degree.
pub fn kernel_coefficient_module<F: Field>(ext: &RegularExtension, m: &CatModule<F>, q: usize, kind: KernelKind) -> Result<CatModule<F>> {
    let mut all = kernel_coefficient_modules(ext, m, q, kind, LiftSection::Least)?;
    Ok(all.pop().expect("degree zero is always present"))
}

/// Least-section modules together with whether the greatest section gives
/// identical matrices in every degree `≤ q_max`.
pub fn kernel_modules_checked<F: Field>(ext: &RegularExtension, m: &CatModule<F>, q_max: usize, kind: KernelKind) -> Result<(Vec<CatModule<F>>, bool)> {
    let mut both = kernel_modules(ext, m, q_max, kind, &[LiftSection::Least, LiftSection::Greatest])?;
    let b = both.pop().expect("two sections");
    let a = both.pop().expect("two sections");
    let same = a.iter().zip(&b).all(|(x, y)| x.dims() == y.dims() && x.maps() == y.maps());
    Ok((a, same))
}

/// Whether the least and greatest lift sections give identical matrices in
/// every degree `≤ q_max`.
pub fn lift_independent<F: Field>(ext: &RegularExtension, m: &CatModule<F>, q_max: usize, kind: KernelKind) -> Result<bool> {
    Ok(kernel_modules_checked(ext, m, q_max, kind)?.1)
}

/// The comparison `H^q(π/x; Res M) → H^q(K(x); M(x))` induced by the
/// functors `K(x) → π/x`, assembled into module maps over the quotient for
/// `q = 0..=q_max`. Target regular extensions and right modules only.
pub fn comma_kernel_comparison<F: Field>(ext: &RegularExtension, m: &CatModule<F>, q_max: usize) -> Result<Vec<ModuleMap<F>>> {
    ext.require(Orientation::Target)?;
    if m.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("the comparison takes a right module".into()));
    }
    let m = m.rehome(ext.source_category().clone())?;
    let d = ext.target_category();
    let comma = comma_coefficient_modules(&ext.projection, &m, q_max, CommaSide::Over)?;
    let values = kernel_values(ext, &m, q_max, KernelKind::Cohomology)?;
    let kernel_mods = assemble(ext, &m, &values, q_max, KernelKind::Cohomology, LiftSection::Least)?;
    let mut per_object: Vec<Vec<Matrix<F::Elem>>> = Vec::with_capacity(d.num_objects());
    for x in 0..d.num_objects() {
        let incl = ext.kernel_inclusion(x)?;
        let cm = &comma.commas[x];
        let base = cm.object_of(x, d.identity(x)).ok_or_else(|| Error::InvalidFunctor("comma category lacks the identity object".into()))?;
        let mors = ext.kernels[x]
            .iter()
            .map(|&k| {
                cm.category
                    .hom(base, base)
                    .iter()
                    .copied()
                    .find(|&n| cm.projection.mor(n) == k)
                    .ok_or_else(|| Error::InvalidFunctor("kernel element has no comma morphism".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let j = CatFunctor::new(incl.source().clone(), cm.category.clone(), vec![base], mors)?;
        let theta = vec![Matrix::identity(m.field(), m.dim(x))];
        per_object.push(coefficient_map(&j, &comma.values[x], &values[x], &theta, MapDirection::Cohomology)?);
    }
    (0..=q_max)
        .map(|q| {
            let comps = per_object.iter().map(|v| v[q].clone()).collect();
            ModuleMap::new(comma.modules[q].clone(), kernel_mods[q].clone(), comps)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fincat::FiniteCategory;
    use std::sync::Arc;

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_monoid("*", names, &mul, 0).unwrap())
    }

    #[test]
    fn z4_over_z2_kernel_cohomology() {
        let f = PrimeField::new(2).unwrap();
        let pi = CatFunctor::new(cyclic(4), cyclic(2), vec![0], vec![0, 1, 0, 1]).unwrap();
        let ext = analyze_extension(&pi).unwrap();
        let m = CatModule::constant(pi.source().clone(), f, Variance::Right);
        let mods = kernel_coefficient_modules(&ext, &m, 3, KernelKind::Cohomology, LiftSection::Least).unwrap();
        for a in &mods {
            assert_eq!(a.dims(), &[1]);
        }
        assert!(lift_independent(&ext, &m, 3, KernelKind::Cohomology).unwrap());
        let cmp = comma_kernel_comparison(&ext, &m, 3).unwrap();
        assert!(cmp.iter().all(|c| c.is_iso()));
        let hom = kernel_coefficient_modules(&ext, &m, 2, KernelKind::Homology, LiftSection::Greatest).unwrap();
        assert!(hom.iter().all(|a| a.dims() == [1]));
    }

    #[test]
    fn left_module_goes_through_the_opposite() {
        let f = PrimeField::new(2).unwrap();
        let pi = CatFunctor::new(cyclic(4), cyclic(2), vec![0], vec![0, 1, 0, 1]).unwrap();
        let ext = analyze_extension(&pi).unwrap();
        let m = CatModule::constant(pi.source().clone(), f, Variance::Left);
        let mods = kernel_coefficient_modules(&ext, &m, 2, KernelKind::Cohomology, LiftSection::Least).unwrap();
        assert!(mods.iter().all(|a| a.variance() == Variance::Left && a.dims() == [1]));
    }
}
