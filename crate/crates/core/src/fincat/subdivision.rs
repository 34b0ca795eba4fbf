use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{ei_analysis, CatFunctor, FiniteCategory, Morphism, ObjectChain};

/// The subdivision categories `S(C)` and `s(C) = S(C)^op` of a skeletal EI
/// category, on one canonical chain per isomorphism class.
#[derive(Clone, Debug)]
pub struct SubdivisionData {
    pub base: Arc<FiniteCategory>,
    /// Canonical strict chains; object `i` of `S(C)` is `chains[i]`.
    pub chains: Vec<ObjectChain>,
    /// `S(C)`
    pub big: Arc<FiniteCategory>,
    /// `s(C)`, same indices as `big`.
    pub small: Arc<FiniteCategory>,
    /// `Ini: s(C) → C`
    pub ini: CatFunctor,
    /// `Fin: S(C) → C`
    pub fin: CatFunctor,
    /// `(j, μ)` for each morphism of `S(C)`.
    pub morphism_data: Vec<(Vec<usize>, Vec<usize>)>,
    /// Automorphisms of each chain (morphism indices, identity first).
    pub automorphisms: Vec<Vec<usize>>,
    class: HashMap<Vec<usize>, usize>,
}

impl SubdivisionData {
    /// The canonical chain object isomorphic to a strict chain.
    pub fn class_of(&self, chain: &ObjectChain) -> Option<usize> {
        if chain.morphisms.is_empty() {
            return self.chains.iter().position(|c| c.morphisms.is_empty() && c.objects == chain.objects);
        }
        self.class.get(&chain.morphisms).copied()
    }

    /// `π_i: Aut_{s(C)}(σ) → Aut_C(σ_i)`, the inverse of the `i`-th
    /// component, listed in the order of `automorphisms[σ]`. Agrees with
    /// `Ini` for `i = 0`.
    pub fn projection(&self, sigma: usize, i: usize) -> Vec<usize> {
        self.automorphisms[sigma].iter().map(|&m| self.base.inverse(self.morphism_data[m].1[i]).expect("components are automorphisms")).collect()
    }
}

fn chain_name(c: &FiniteCategory, ch: &ObjectChain) -> String {
    if ch.morphisms.is_empty() {
        format!("[{}]", c.object_name(ch.objects[0]))
    } else {
        let ms: Vec<&str> = ch.morphisms.iter().map(|&f| c.morphism_id(f)).collect();
        format!("[{}]", ms.join(","))
    }
}

/// All strict chains of a skeletal EI category, grouped into orbits of the
/// action `(a_i)·α_i = a_i α_i a_{i-1}^{-1}`.
fn strict_chain_classes(c: &FiniteCategory) -> (Vec<ObjectChain>, HashMap<Vec<usize>, usize>) {
    let auts: Vec<Vec<usize>> = (0..c.num_objects()).map(|x| c.automorphisms(x)).collect();
    let mut reps: Vec<ObjectChain> = (0..c.num_objects()).map(ObjectChain::object).collect();
    let mut class: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut level: Vec<Vec<usize>> = (0..c.num_morphisms()).filter(|&f| c.src(f) != c.tgt(f)).map(|f| vec![f]).collect();
    while !level.is_empty() {
        for ms in &level {
            if class.contains_key(ms) {
                continue;
            }
            let idx = reps.len();
            reps.push(ObjectChain::from_morphisms(c, ms.clone()).unwrap());
            let mut queue = VecDeque::from([ms.clone()]);
            class.insert(ms.clone(), idx);
            while let Some(cur) = queue.pop_front() {
                let objects = ObjectChain::from_morphisms(c, cur.clone()).unwrap().objects;
                for (i, &x) in objects.iter().enumerate() {
                    for &a in &auts[x] {
                        let mut next = cur.clone();
                        if i >= 1 {
                            next[i - 1] = c.compose(a, next[i - 1]);
                        }
                        if i < cur.len() {
                            let ainv = c.inverse(a).unwrap();
                            next[i] = c.compose(next[i], ainv);
                        }
                        if !class.contains_key(&next) {
                            class.insert(next.clone(), idx);
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        let mut next_level = Vec::new();
        for ms in &level {
            let last = *ms.last().unwrap();
            let seen: HashSet<usize> = ObjectChain::from_morphisms(c, ms.clone()).unwrap().objects.into_iter().collect();
            for &g in c.morphisms_out_of(c.tgt(last)) {
                if !seen.contains(&c.tgt(g)) {
                    let mut v = ms.clone();
                    v.push(g);
                    next_level.push(v);
                }
            }
        }
        level = next_level;
    }
    (reps, class)
}

/// Injective order-preserving maps `[m] → [n]`.
fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(m, n, v + 1, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

/// Composite `σ_a → σ_b` along a chain (`a ≤ b`).
fn segment(c: &FiniteCategory, chain: &ObjectChain, a: usize, b: usize) -> usize {
    if a == b {
        c.identity(chain.objects[a])
    } else {
        c.compose_path(&chain.morphisms[a..b]).unwrap()
    }
}

pub fn subdivide(c: &Arc<FiniteCategory>) -> Result<SubdivisionData> {
    let ei = ei_analysis(c)?;
    if let Some(w) = ei.witness {
        return Err(Error::NotEI(c.morphism_id(w).to_string()));
    }
    if let Some((a, b)) = c.skeletal_witness() {
        return Err(Error::NotSkeletal(c.object_name(a).into(), c.object_name(b).into()));
    }
    let (mut chains, class_raw) = strict_chain_classes(c);
    // Order: length, then objects, then morphisms.
    let mut order: Vec<usize> = (0..chains.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&chains[a], &chains[b]);
        (x.len(), &x.objects, &x.morphisms).cmp(&(y.len(), &y.objects, &y.morphisms))
    });
    let mut new_pos = vec![0; chains.len()];
    for (i, &o) in order.iter().enumerate() {
        new_pos[o] = i;
    }
    chains = order.iter().map(|&o| chains[o].clone()).collect();
    let class: HashMap<Vec<usize>, usize> = class_raw.into_iter().map(|(k, v)| (k, new_pos[v])).collect();

    let auts: Vec<Vec<usize>> = (0..c.num_objects()).map(|x| c.automorphisms(x)).collect();
    let names: Vec<String> = chains.iter().map(|ch| chain_name(c, ch)).collect();
    let mut morphisms = Vec::new();
    let mut data: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut identity = vec![usize::MAX; chains.len()];
    for (t, tau) in chains.iter().enumerate() {
        for (s, sigma) in chains.iter().enumerate() {
            if tau.len() > sigma.len() {
                continue;
            }
            for j in injections(tau.len(), sigma.len()) {
                if j.iter().enumerate().any(|(i, &ji)| tau.objects[i] != sigma.objects[ji]) {
                    continue;
                }
                // Backtrack over μ_i with μ_i β_i = σ(j(i-1) → j(i)) μ_{i-1}.
                let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
                let mut found: Vec<Vec<usize>> = Vec::new();
                while let Some(mu) = stack.pop() {
                    let i = mu.len();
                    if i == tau.objects.len() {
                        found.push(mu);
                        continue;
                    }
                    for &a in auts[tau.objects[i]].iter().rev() {
                        if i > 0 {
                            let lhs = c.compose(a, tau.morphisms[i - 1]);
                            let rhs = c.compose(segment(c, sigma, j[i - 1], j[i]), mu[i - 1]);
                            if lhs != rhs {
                                continue;
                            }
                        }
                        let mut next = mu.clone();
                        next.push(a);
                        stack.push(next);
                    }
                }
                found.sort();
                for mu in found {
                    let is_id = t == s && mu.iter().zip(&tau.objects).all(|(&a, &x)| a == c.identity(x));
                    if is_id {
                        identity[t] = morphisms.len();
                    }
                    let jtxt: Vec<String> = j.iter().map(|v| v.to_string()).collect();
                    let mtxt: Vec<&str> = mu.iter().map(|&a| c.morphism_id(a)).collect();
                    morphisms.push(Morphism { id: format!("{}->{}|j={};mu={}", names[t], names[s], jtxt.join(","), mtxt.join(",")), src: t, tgt: s });
                    index.insert((t, s, j.clone(), mu.clone()), data.len());
                    data.push((j.clone(), mu));
                }
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let big = FiniteCategory::build(names, morphisms, identity, |g, f| {
        let (j, mu) = &data[g];
        let (k, nu) = &data[f];
        let jk: Vec<usize> = k.iter().map(|&ki| j[ki]).collect();
        let comp: Vec<usize> = k.iter().zip(nu).map(|(&ki, &n)| c.compose(mu[ki], n)).collect();
        index.get(&(ends[f].0, ends[g].1, jk, comp)).copied()
    })?;
    let big = Arc::new(big);
    let small = Arc::new(big.opposite());

    let chain_first: Vec<usize> = chains.iter().map(|ch| ch.first()).collect();
    let chain_last: Vec<usize> = chains.iter().map(|ch| ch.last()).collect();
    let mut ini_mor = Vec::with_capacity(data.len());
    let mut fin_mor = Vec::with_capacity(data.len());
    for (m, (j, mu)) in data.iter().enumerate() {
        let (t, s) = ends[m];
        let sigma = &chains[s];
        let tau = &chains[t];
        let mu0inv = c.inverse(mu[0]).unwrap();
        ini_mor.push(c.compose(mu0inv, segment(c, sigma, 0, j[0])));
        let last = tau.len();
        fin_mor.push(c.compose(segment(c, sigma, j[last], sigma.len()), mu[last]));
    }
    let ini = CatFunctor::new(small.clone(), c.clone(), chain_first, ini_mor)?;
    let fin = CatFunctor::new(big.clone(), c.clone(), chain_last, fin_mor)?;
    let automorphisms = (0..chains.len())
        .map(|s| {
            let mut a = big.automorphisms(s);
            a.sort_by_key(|&m| (m != big.identity(s), m));
            a
        })
        .collect();
    Ok(SubdivisionData { base: c.clone(), chains, big, small, ini, fin, morphism_data: data, automorphisms, class })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_subdivision() {
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into()], |x, y| x < y).unwrap());
        let sd = subdivide(&c).unwrap();
        assert_eq!(sd.big.num_objects(), 3);
        // two identities on [a], [b], one on [a<b], plus two subchain inclusions
        assert_eq!(sd.big.num_morphisms(), 5);
        let top = sd.chains.iter().position(|ch| ch.len() == 1).unwrap();
        let into_top: usize = (0..3).filter(|&s| s != top).map(|s| sd.big.hom(s, top).len()).sum();
        assert_eq!(into_top, 2);
    }

    #[test]
    fn terminal_subdivision_is_terminal() {
        let t = Arc::new(FiniteCategory::terminal());
        let sd = subdivide(&t).unwrap();
        assert_eq!(sd.big.num_objects(), 1);
        assert_eq!(sd.big.num_morphisms(), 1);
    }

    #[test]
    fn group_chain_automorphisms() {
        let mul = vec![vec![0, 1], vec![1, 0]];
        let g = Arc::new(FiniteCategory::from_monoid("*", vec!["e".into(), "g".into()], &mul, 0).unwrap());
        let sd = subdivide(&g).unwrap();
        assert_eq!(sd.big.num_objects(), 1);
        assert_eq!(sd.automorphisms[0].len(), 2);
        assert_eq!(sd.projection(0, 0), vec![0, 1]);
    }

    #[test]
    fn rejects_non_skeletal() {
        let objects = vec!["a".to_string(), "b".to_string()];
        let ms = vec![
            Morphism { id: "1a".into(), src: 0, tgt: 0 },
            Morphism { id: "1b".into(), src: 1, tgt: 1 },
            Morphism { id: "u".into(), src: 0, tgt: 1 },
            Morphism { id: "v".into(), src: 1, tgt: 0 },
        ];
        let c = FiniteCategory::build(objects, ms, vec![0, 1], |g, f| {
            Some(match (g, f) {
                (0, f) | (1, f) => f,
                (g, 0) | (g, 1) => g,
                (2, 3) => 1,
                (3, 2) => 0,
                _ => unreachable!(),
            })
        })
        .unwrap();
        assert!(matches!(subdivide(&Arc::new(c)), Err(Error::NotSkeletal(..))));
    }
}
