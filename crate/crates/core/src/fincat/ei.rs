use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory};

#[derive(Clone, Debug)]
pub struct EiAnalysis {
    pub is_ei: bool,
    /// First non-invertible endomorphism, if any.
    pub witness: Option<usize>,
    pub skeleton: Arc<FiniteCategory>,
    /// Inclusion `sk(C) → C`.
    pub inclusion: CatFunctor,
    /// Representative (minimal index) of each object's isomorphism class.
    pub representative: Vec<usize>,
}

impl EiAnalysis {
    /// The poset of isomorphism classes, `[x] ≤ [y]` iff `Mor(x, y) ≠ ∅`,
    /// on skeleton objects.
    pub fn iso_class_poset(&self) -> Result<Arc<FiniteCategory>> {
        if let Some(w) = self.witness {
            return Err(Error::NotEI(self.inclusion.target().morphism_id(w).to_string()));
        }
        let sk = &self.skeleton;
        let names = sk.objects().iter().map(|o| format!("[{o}]")).collect();
        Ok(Arc::new(FiniteCategory::poset(names, |a, b| !sk.hom(a, b).is_empty())?))
    }
}

pub fn ei_analysis(c: &Arc<FiniteCategory>) -> Result<EiAnalysis> {
    let mut witness = None;
    'outer: for x in 0..c.num_objects() {
        for &f in c.hom(x, x) {
            if !c.is_iso(f) {
                witness = Some(f);
                break 'outer;
            }
        }
    }
    let n = c.num_objects();
    let mut representative = vec![usize::MAX; n];
    for x in 0..n {
        if representative[x] != usize::MAX {
            continue;
        }
        for y in x..n {
            if representative[y] == usize::MAX && c.are_isomorphic(x, y) {
                representative[y] = x;
            }
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&x| representative[x] == x).collect();
    let (sk, obj_map, mor_map) = c.full_subcategory(&reps)?;
    let sk = Arc::new(sk);
    let inclusion = CatFunctor::new(sk.clone(), c.clone(), obj_map, mor_map)?;
    Ok(EiAnalysis { is_ei: witness.is_none(), witness, skeleton: sk, inclusion, representative })
}

/// The projection `C → [C]` of a skeletal EI category onto its poset of
/// objects.
pub fn poset_projection(c: &Arc<FiniteCategory>) -> Result<CatFunctor> {
    let ei = ei_analysis(c)?;
    if let Some(w) = ei.witness {
        return Err(Error::NotEI(c.morphism_id(w).to_string()));
    }
    if let Some((a, b)) = c.skeletal_witness() {
        return Err(Error::NotSkeletal(c.object_name(a).into(), c.object_name(b).into()));
    }
    let poset = ei.iso_class_poset()?;
    let objects: Vec<usize> = (0..c.num_objects()).collect();
    let morphisms = (0..c.num_morphisms()).map(|f| poset.hom(c.src(f), c.tgt(f))[0]).collect();
    CatFunctor::new(c.clone(), poset, objects, morphisms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_pair_collapses() {
        // Two objects with an isomorphism pair between them.
        let objects = vec!["a".to_string(), "b".to_string()];
        let ms = vec![
            crate::fincat::Morphism { id: "1a".into(), src: 0, tgt: 0 },
            crate::fincat::Morphism { id: "1b".into(), src: 1, tgt: 1 },
            crate::fincat::Morphism { id: "u".into(), src: 0, tgt: 1 },
            crate::fincat::Morphism { id: "v".into(), src: 1, tgt: 0 },
        ];
        let c = FiniteCategory::build(objects, ms, vec![0, 1], |g, f| {
            Some(match (g, f) {
                (0, f) | (1, f) => f,
                (g, 0) | (g, 1) => g,
                (2, 3) => 1,
                (3, 2) => 0,
                (g, f) => unreachable!("{g} {f}"),
            })
        })
        .unwrap();
        let c = Arc::new(c);
        let ei = ei_analysis(&c).unwrap();
        assert!(ei.is_ei);
        assert_eq!(ei.skeleton.num_objects(), 1);
        assert!(ei.inclusion.is_equivalence());
        assert_eq!(ei.iso_class_poset().unwrap().num_objects(), 1);
    }

    #[test]
    fn idempotent_is_not_ei() {
        let mul = vec![vec![0, 1], vec![1, 1]];
        let c = Arc::new(FiniteCategory::from_monoid("*", vec!["1".into(), "e".into()], &mul, 0).unwrap());
        let ei = ei_analysis(&c).unwrap();
        assert!(!ei.is_ei);
        assert!(matches!(ei.iso_class_poset(), Err(Error::NotEI(_))));
    }
}
