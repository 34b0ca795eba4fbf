use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `K(y)` acts freely from the left on `C(x, y)` with orbits the fibres of `π`.
    Target,
    /// `K(x)` acts freely from the right on `C(x, y)` with orbits the fibres of `π`.
    Source,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Target => Orientation::Source,
            Orientation::Source => Orientation::Target,
        }
    }
}

/// Why an orientation fails, in morphism ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `k ≠ 1` fixes `morphism`.
    NotFree { kernel_element: String, morphism: String },
    /// Same image under `π` but not in one kernel orbit.
    NotTransitive { morphism: String, other: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// An identity-on-objects, full-on-hom-sets functor `π: C → D` together with
/// its kernels and lift sections, whether regular or not.
#[derive(Clone, Debug)]
pub struct RegularExtension {
    pub projection: CatFunctor,
    pub target: Verdict,
    pub source: Verdict,
    /// `K(x) = ker(Aut_C(x) → Aut_D(x))`, sorted morphism indices.
    pub kernels: Vec<Vec<usize>>,
    /// Lexicographically least preimage (by id) of each `D`-morphism;
    /// identities lift to identities.
    pub least_lift: Vec<usize>,
    /// Lexicographically greatest preimage.
    pub greatest_lift: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftSection {
    Least,
    Greatest,
}

impl RegularExtension {
    pub fn source_category(&self) -> &Arc<FiniteCategory> {
        self.projection.source()
    }

    pub fn target_category(&self) -> &Arc<FiniteCategory> {
        self.projection.target()
    }

    pub fn is_regular(&self, o: Orientation) -> bool {
        match o {
            Orientation::Target => self.target.holds,
            Orientation::Source => self.source.holds,
        }
    }

    /// Target first when both hold.
    pub fn orientation(&self) -> Option<Orientation> {
        if self.target.holds {
            Some(Orientation::Target)
        } else if self.source.holds {
            Some(Orientation::Source)
        } else {
            None
        }
    }

    pub fn require(&self, o: Orientation) -> Result<()> {
        if self.is_regular(o) {
            return Ok(());
        }
        let verdict = match o {
            Orientation::Target => &self.target,
            Orientation::Source => &self.source,
        };
        Err(Error::WrongOrientation(format!("{o:?} regularity fails: {}", describe(verdict.counterexample.as_ref()))))
    }

    pub fn lift(&self, phi: usize, section: LiftSection) -> usize {
        match section {
            LiftSection::Least => self.least_lift[phi],
            LiftSection::Greatest => self.greatest_lift[phi],
        }
    }

    /// The group `K(x)` as a one-object category with its inclusion into `C`.
    pub fn kernel_inclusion(&self, x: usize) -> Result<CatFunctor> {
        let c = self.source_category();
        let (sub, objs, mors) = c.subcategory(&[x], &self.kernels[x])?;
        CatFunctor::new(Arc::new(sub), c.clone(), objs, mors)
    }

    /// Target case: for `φ: x → y` and `k ∈ K(x)`, the unique `k' ∈ K(y)`
    /// with `k'∘φ = φ∘k`. Source case: for `k ∈ K(y)`, the unique
    /// `k' ∈ K(x)` with `φ∘k' = k∘φ`.
    pub fn kernel_action(&self, phi: usize, k: usize, o: Orientation) -> Option<usize> {
        let c = self.source_category();
        let (x, y) = (c.src(phi), c.tgt(phi));
        match o {
            Orientation::Target => {
                let want = c.compose(phi, k);
                self.kernels[y].iter().copied().find(|&k2| c.compose(k2, phi) == want)
            }
            Orientation::Source => {
                let want = c.compose(k, phi);
                self.kernels[x].iter().copied().find(|&k2| c.compose(phi, k2) == want)
            }
        }
    }

    /// Group homomorphism induced by `φ` between kernels, as an index map
    /// on kernel positions: `K(x) → K(y)` (target) or `K(y) → K(x)` (source).
    pub fn kernel_hom(&self, phi: usize, o: Orientation) -> Result<Vec<usize>> {
        let c = self.source_category();
        let (from, to) = match o {
            Orientation::Target => (c.src(phi), c.tgt(phi)),
            Orientation::Source => (c.tgt(phi), c.src(phi)),
        };
        self.kernels[from]
            .iter()
            .map(|&k| {
                let k2 = self
                    .kernel_action(phi, k, o)
                    .ok_or_else(|| Error::WrongOrientation(format!("no kernel element matches {} along {}", c.morphism_id(k), c.morphism_id(phi))))?;
                Ok(self.kernels[to].binary_search(&k2).expect("kernel elements are sorted"))
            })
            .collect()
    }
}

fn describe(c: Option<&Counterexample>) -> String {
    match c {
        Some(Counterexample::NotFree { kernel_element, morphism }) => format!("{kernel_element} fixes {morphism}"),
        Some(Counterexample::NotTransitive { morphism, other }) => format!("{morphism} and {other} have the same image but lie in different orbits"),
        None => "no witness".into(),
    }
}

/// Kernels, freeness and orbit conditions for both orientations.
pub fn analyze_extension(pi: &CatFunctor) -> Result<RegularExtension> {
    let c = pi.source();
    let d = pi.target();
    if !pi.is_identity_on_objects() {
        return Err(Error::NotIdentityOnObjects(format!("{} objects map to {} objects", c.num_objects(), d.num_objects())));
    }
    let n = c.num_objects();
    let mut least = vec![usize::MAX; d.num_morphisms()];
    let mut greatest = vec![usize::MAX; d.num_morphisms()];
    for f in 0..c.num_morphisms() {
        let g = pi.mor(f);
        let better = |cur: usize, pick_less: bool| {
            cur == usize::MAX || {
                let (a, b) = (c.morphism_id(f), c.morphism_id(cur));
                if pick_less {
                    a < b
                } else {
                    a > b
                }
            }
        };
        if better(least[g], true) {
            least[g] = f;
        }
        if better(greatest[g], false) {
            greatest[g] = f;
        }
    }
    if let Some(g) = (0..d.num_morphisms()).find(|&g| least[g] == usize::MAX) {
        return Err(Error::NotSurjective { src: d.object_name(d.src(g)).into(), tgt: d.object_name(d.tgt(g)).into() });
    }
    for x in 0..n {
        least[d.identity(x)] = c.identity(x);
        greatest[d.identity(x)] = c.identity(x);
    }
    let kernels: Vec<Vec<usize>> = (0..n)
        .map(|x| c.automorphisms(x).into_iter().filter(|&k| d.is_identity(pi.mor(k))).collect())
        .map(|mut v: Vec<usize>| {
            v.sort_unstable();
            v
        })
        .collect();
    let target = check_orientation(pi, &kernels, Orientation::Target);
    let source = check_orientation(pi, &kernels, Orientation::Source);
    Ok(RegularExtension { projection: pi.clone(), target, source, kernels, least_lift: least, greatest_lift: greatest })
}

fn check_orientation(pi: &CatFunctor, kernels: &[Vec<usize>], o: Orientation) -> Verdict {
    let c = pi.source();
    let n = c.num_objects();
    for x in 0..n {
        for y in 0..n {
            let hom = c.hom(x, y);
            let (acting, act): (&[usize], Box<dyn Fn(usize, usize) -> usize>) = match o {
                Orientation::Target => (&kernels[y], Box::new(|k, f| c.compose(k, f))),
                Orientation::Source => (&kernels[x], Box::new(|k, f| c.compose(f, k))),
            };
            let mut seen = vec![false; c.num_morphisms()];
            for &f in hom {
                for &k in acting {
                    if !c.is_identity(k) && act(k, f) == f {
                        return Verdict {
                            holds: false,
                            counterexample: Some(Counterexample::NotFree { kernel_element: c.morphism_id(k).into(), morphism: c.morphism_id(f).into() }),
                        };
                    }
                }
                if seen[f] {
                    continue;
                }
                for &k in acting {
                    seen[act(k, f)] = true;
                }
                if let Some(&g) = hom.iter().find(|&&g| !seen[g] && pi.mor(g) == pi.mor(f)) {
                    return Verdict {
                        holds: false,
                        counterexample: Some(Counterexample::NotTransitive { morphism: c.morphism_id(f).into(), other: c.morphism_id(g).into() }),
                    };
                }
            }
        }
    }
    Verdict { holds: true, counterexample: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_monoid("*", names, &mul, 0).unwrap())
    }

    #[test]
    fn z4_onto_z2_is_regular_both_ways() {
        let (c, d) = (cyclic(4), cyclic(2));
        let pi = CatFunctor::new(c, d, vec![0], vec![0, 1, 0, 1]).unwrap();
        let ext = analyze_extension(&pi).unwrap();
        assert!(ext.target.holds && ext.source.holds);
        assert_eq!(ext.kernels[0], vec![0, 2]);
        assert_eq!(ext.least_lift, vec![0, 1]);
        assert_eq!(ext.greatest_lift, vec![0, 3]);
        assert_eq!(ext.kernel_hom(1, Orientation::Target).unwrap(), vec![0, 1]);
    }

    #[test]
    fn non_free_action_is_witnessed() {
        // Z/2 at b fixes the only arrow a → b
        let objects = vec!["a".to_string(), "b".to_string()];
        let morphisms = vec![
            crate::fincat::Morphism { id: "1a".into(), src: 0, tgt: 0 },
            crate::fincat::Morphism { id: "1b".into(), src: 1, tgt: 1 },
            crate::fincat::Morphism { id: "t".into(), src: 1, tgt: 1 },
            crate::fincat::Morphism { id: "u".into(), src: 0, tgt: 1 },
        ];
        let c = Arc::new(
            FiniteCategory::build(objects, morphisms, vec![0, 1], |g, f| match (g, f) {
                (0, 0) => Some(0),
                (1, x) | (x, 1) if x != 0 => Some(x),
                (2, 2) => Some(1),
                (2, 3) => Some(3),
                (3, 0) => Some(3),
                _ => None,
            })
            .unwrap(),
        );
        let d = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into()], |x, y| x <= y).unwrap());
        let pi = CatFunctor::new(c, d.clone(), vec![0, 1], vec![d.identity(0), d.identity(1), d.identity(1), d.hom(0, 1)[0]]).unwrap();
        let ext = analyze_extension(&pi).unwrap();
        assert!(!ext.target.holds);
        assert_eq!(ext.target.counterexample, Some(Counterexample::NotFree { kernel_element: "t".into(), morphism: "u".into() }));
        assert!(ext.source.holds);
        let op = analyze_extension(&pi.opposite()).unwrap();
        assert_eq!(op.target.holds, ext.source.holds);
        assert_eq!(op.source.holds, ext.target.holds);
    }

    #[test]
    fn object_collapse_is_rejected() {
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into()], |x, y| x == y).unwrap());
        let pi = CatFunctor::to_terminal(c);
        assert!(matches!(analyze_extension(&pi), Err(Error::NotIdentityOnObjects(_))));
    }
}
