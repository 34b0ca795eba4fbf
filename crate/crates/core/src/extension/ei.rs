use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::regular::{analyze_extension, Orientation, RegularExtension};
use crate::extension::spectral::{extension_e2, E2Report, ExtensionShape};
use crate::field::Field;
use crate::fincat::{ei_analysis, poset_projection, subdivide, FiniteCategory};
use crate::homalg::{cohomology_dims, Window};
use crate::modcat::{CatModule, Variance};

/// Which orientation and coefficient placement an EI category is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EiVariant {
    /// Target regular, `M` right over `C`: `H^p([C]; H^q(Aut(−); M(−)))`.
    Target,
    /// Source regular, `M` left over `C`.
    SourceLeft,
    /// Source regular, `M` right over `[C]`: `Ext^p_{[C]}(H_q(Aut(−); R), M)`.
    SourceExt,
}

impl EiVariant {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(EiVariant::Target),
            2 => Some(EiVariant::SourceLeft),
            3 => Some(EiVariant::SourceExt),
            _ => None,
        }
    }
}

/// Skeleton of an EI category with `M` restricted to it.
fn skeletal<F: Field>(c: &Arc<FiniteCategory>, m: &CatModule<F>) -> Result<(Arc<FiniteCategory>, CatModule<F>)> {
    let ei = ei_analysis(c)?;
    if let Some(w) = ei.witness {
        return Err(Error::NotEI(c.morphism_id(w).to_string()));
    }
    if c.is_skeletal() {
        return Ok((c.clone(), m.rehome(c.clone())?));
    }
    let res = m.restrict(&ei.inclusion)?;
    Ok((ei.skeleton.clone(), res))
}

fn not_regular(ext: &RegularExtension, o: Orientation) -> Error {
    match ext.require(o) {
        Err(Error::WrongOrientation(msg)) => Error::NotRegular(msg),
        Err(e) => e,
        Ok(()) => unreachable!("called only when regularity fails"),
    }
}

/// `E_2` over the poset of chain classes of the subdivision, from the
/// kernel cohomology of `s(C) → [s(C)]` with coefficients `Res_Ini M`.
/// The abutment is `H^*(C; M)` computed directly on `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionReport {
    pub e2: E2Report,
    /// Number of chain classes, i.e. objects of `[s(C)]`.
    pub classes: usize,
    /// `H^*(s(C); Res_Ini M)` agrees with `H^*(C; M)`.
    pub ini_agrees: bool,
}

pub fn subdivision_e2<F: Field>(c: &Arc<FiniteCategory>, m: &CatModule<F>, window: Window) -> Result<SubdivisionReport> {
    window.check()?;
    if m.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("subdivision coefficients are a right module".into()));
    }
    let direct = cohomology_dims(m, window.n_max)?;
    let (sk, msk) = skeletal(c, m)?;
    let sub = subdivide(&sk)?;
    let pi = poset_projection(&sub.small)?;
    let ext = analyze_extension(&pi)?;
    if !ext.target.holds {
        return Err(not_regular(&ext, Orientation::Target));
    }
    let coeff = msk.restrict(&sub.ini)?;
    let inner = extension_e2(&ext, None, &coeff, window, Some(ExtensionShape::CohomologyTarget))?;
    let ini_agrees = inner.abutment == direct;
    let mut e2 = E2Report::new("Subdivision".into(), window, Variance::Right, inner.dims, direct);
    e2.lift_independent = inner.lift_independent;
    Ok(SubdivisionReport { e2, classes: sub.chains.len(), ini_agrees })
}

/// `E_2` for the projection `C → [C]` of an EI category onto its poset of
/// isomorphism classes. For `SourceExt`, `m` lives over `[C]` (the poset
/// returned by `iso_class_poset`).
pub fn regular_ei_e2<F: Field>(c: &Arc<FiniteCategory>, m: &CatModule<F>, variant: EiVariant, window: Window) -> Result<E2Report> {
    window.check()?;
    let (sk, msk) = match variant {
        EiVariant::SourceExt => {
            let ei = ei_analysis(c)?;
            if let Some(w) = ei.witness {
                return Err(Error::NotEI(c.morphism_id(w).to_string()));
            }
            (ei.skeleton.clone(), m.clone())
        }
        _ => skeletal(c, m)?,
    };
    let pi = poset_projection(&sk)?;
    let ext = analyze_extension(&pi)?;
    let orientation = match variant {
        EiVariant::Target => Orientation::Target,
        _ => Orientation::Source,
    };
    if !ext.is_regular(orientation) {
        return Err(not_regular(&ext, orientation));
    }
    let mut report = match variant {
        EiVariant::Target => extension_e2(&ext, None, &msk, window, Some(ExtensionShape::CohomologyTarget))?,
        EiVariant::SourceLeft => {
            let triv = CatModule::constant(ext.target_category().clone(), msk.field().clone(), Variance::Left);
            extension_e2(&ext, Some(&triv), &msk, window, Some(ExtensionShape::ExtSourceLeft))?
        }
        EiVariant::SourceExt => extension_e2(&ext, None, &msk, window, Some(ExtensionShape::CohomologySource))?,
    };
    report.shape = format!("{variant:?}");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn z2() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::from_monoid("*", vec!["e".into(), "g".into()], &[vec![0, 1], vec![1, 0]], 0).unwrap())
    }

    #[test]
    fn group_collapses_to_group_cohomology() {
        let f = PrimeField::new(2).unwrap();
        let g = z2();
        let m = CatModule::constant(g.clone(), f, Variance::Right);
        let r = regular_ei_e2(&g, &m, EiVariant::Target, Window::through(3)).unwrap();
        assert_eq!(r.abutment, vec![1; 4]);
        assert!(r.concentrated && r.equality);
        let s = subdivision_e2(&g, &m, Window::through(3)).unwrap();
        assert_eq!(s.classes, 1);
        assert!(s.ini_agrees && s.e2.equality);
    }

    #[test]
    fn poset_gives_subdivision_cohomology() {
        let f = PrimeField::new(3).unwrap();
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |x, y| x == y || x == 0).unwrap());
        let m = CatModule::constant(c.clone(), f, Variance::Right);
        let s = subdivision_e2(&c, &m, Window::through(2)).unwrap();
        assert!(s.e2.concentrated && s.e2.equality && s.ini_agrees);
        assert_eq!(s.e2.abutment, vec![1, 0, 0]);
    }
}
