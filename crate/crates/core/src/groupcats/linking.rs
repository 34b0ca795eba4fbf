use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fincat::CatFunctor;
use crate::groupcats::categories::{CosetSpec, GroupCategory};
use crate::groupcats::centric::{p_centric, CentricSubgroup};
use crate::groupcats::group::{members, FiniteGroup, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub holds: bool,
    pub witness: Option<String>,
}

/// The centric linking system of `G` at `p` on the centric subgroups of a
/// fixed Sylow subgroup `S`, with its neighbouring categories:
/// `ε: T^c_S(S) → L`, `π: L → F^c` and `L → O^c(F)`.
#[derive(Clone, Debug)]
pub struct LinkingSystem {
    pub group: Arc<FiniteGroup>,
    pub prime: usize,
    pub sylow: Subset,
    pub centrics: Vec<CentricSubgroup>,
    pub linking: GroupCategory,
    pub transporter: GroupCategory,
    pub fusion: GroupCategory,
    pub orbit: GroupCategory,
    pub epsilon: CatFunctor,
    pub pi: CatFunctor,
    pub to_orbit: CatFunctor,
    pub axioms: Vec<AxiomCheck>,
}

impl LinkingSystem {
    pub fn axioms_hold(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }

    fn eps_of(&self, p: usize, g: usize) -> usize {
        let t = self.transporter.morphism_of(p, p, g).expect("element of the object");
        self.epsilon.mor(t)
    }

    fn check_functors(&self) -> AxiomCheck {
        let l = &self.linking.category;
        let mut witness = None;
        if !self.epsilon.is_identity_on_objects() || !self.pi.is_identity_on_objects() {
            witness = Some("a structure functor moves objects".to_string());
        }
        let mut images = vec![false; l.num_morphisms()];
        for m in 0..self.transporter.category.num_morphisms() {
            let e = self.epsilon.mor(m);
            if std::mem::replace(&mut images[e], true) && witness.is_none() {
                witness = Some(format!("ε is not injective at {}", l.morphism_id(e)));
            }
        }
        let f = &self.fusion.category;
        let mut hit = vec![false; f.num_morphisms()];
        for m in 0..l.num_morphisms() {
            hit[self.pi.mor(m)] = true;
        }
        if let Some(miss) = hit.iter().position(|&h| !h) {
            witness.get_or_insert_with(|| format!("π misses {}", f.morphism_id(miss)));
        }
        AxiomCheck { axiom: "identity on objects, ε injective, π surjective".into(), holds: witness.is_none(), witness }
    }

    fn check_free_action(&self) -> AxiomCheck {
        let l = &self.linking.category;
        let mut witness = None;
        'all: for psi in 0..l.num_morphisms() {
            let p = l.src(psi);
            let center = self.centrics[p].center;
            let orbit: Vec<usize> = members(center).map(|z| l.compose(psi, self.eps_of(p, z))).collect();
            for (i, &x) in orbit.iter().enumerate() {
                if orbit[..i].contains(&x) {
                    witness = Some(format!("Z(P) does not act freely on {}", l.morphism_id(psi)));
                    break 'all;
                }
            }
            let fibre: Vec<usize> = l.hom(p, l.tgt(psi)).iter().copied().filter(|&m| self.pi.mor(m) == self.pi.mor(psi)).collect();
            if fibre.len() != orbit.len() || fibre.iter().any(|m| !orbit.contains(m)) {
                witness = Some(format!("the Z(P)-orbit of {} is not a fibre of π", l.morphism_id(psi)));
                break;
            }
        }
        AxiomCheck { axiom: "Z(P) acts freely with the fibres of π as orbits".into(), holds: witness.is_none(), witness }
    }

    fn check_conjugation(&self) -> AxiomCheck {
        let t = &self.transporter;
        let witness = (0..t.category.num_morphisms()).find_map(|m| {
            let c = &t.classes[m];
            let conj = self.fusion.morphism_of(c.src, c.tgt, c.rep);
            (conj != Some(self.pi.mor(self.epsilon.mor(m)))).then(|| format!("π∘ε differs from conjugation at {}", t.category.morphism_id(m)))
        });
        AxiomCheck { axiom: "π∘ε is conjugation".into(), holds: witness.is_none(), witness }
    }

    fn check_naturality(&self) -> AxiomCheck {
        let l = &self.linking.category;
        let g = &self.group;
        let mut witness = None;
        'all: for psi in 0..l.num_morphisms() {
            let (p, q) = (l.src(psi), l.tgt(psi));
            let h = self.linking.rep(psi);
            for x in members(self.linking.objects[p]) {
                let lhs = l.compose(psi, self.eps_of(p, x));
                let rhs = l.compose(self.eps_of(q, g.conj(h, x)), psi);
                if lhs != rhs {
                    witness = Some(format!("ψ∘ε(g) ≠ ε(π(ψ)(g))∘ψ for ψ = {}, g = {}", l.morphism_id(psi), g.name(x)));
                    break 'all;
                }
            }
        }
        AxiomCheck { axiom: "ψ∘ε(g) = ε(π(ψ)(g))∘ψ".into(), holds: witness.is_none(), witness }
    }
}

/// Builds the linking system of `G` at `p` and checks its axioms
/// exhaustively. The Sylow subgroup is the one with the least element list.
pub fn linking_system(group: &Arc<FiniteGroup>, p: usize) -> Result<LinkingSystem> {
    let g = group.as_ref();
    let sylow = g.sylow(p);
    let centrics: Vec<CentricSubgroup> = p_centric(g, p)?.into_iter().filter(|c| c.subgroup & !sylow == 0).collect();
    let objects: Vec<Subset> = centrics.iter().map(|c| c.subgroup).collect();
    let spec = |ambient, left, right: Vec<Subset>, label| CosetSpec { group: g, objects: objects.clone(), ambient, left, right, label };
    let ones = vec![1; objects.len()];
    let centralizers: Vec<Subset> = centrics.iter().map(|c| c.centralizer).collect();
    let linking = GroupCategory::build(group, spec(g.whole(), false, centrics.iter().map(|c| c.complement).collect(), "linking"))?;
    let transporter = GroupCategory::build(group, spec(sylow, false, ones, "transporter"))?;
    let fusion = GroupCategory::build(group, spec(g.whole(), false, centralizers.clone(), "fusion"))?;
    let orbit = GroupCategory::build(group, spec(g.whole(), true, centralizers, "orbit"))?;
    let epsilon = transporter.quotient_functor(&linking)?;
    let pi = linking.quotient_functor(&fusion)?;
    let to_orbit = linking.quotient_functor(&orbit)?;
    let mut ls =
        LinkingSystem { group: group.clone(), prime: p, sylow, centrics, linking, transporter, fusion, orbit, epsilon, pi, to_orbit, axioms: Vec::new() };
    ls.axioms = vec![ls.check_functors(), ls.check_free_action(), ls.check_conjugation(), ls.check_naturality()];
    Ok(ls)
}
