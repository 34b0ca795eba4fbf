use std::collections::HashMap;

use crate::fincat::FiniteCategory;

/// A composable chain `σ_0 → σ_1 → … → σ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectChain {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl ObjectChain {
    pub fn object(x: usize) -> Self {
        ObjectChain { objects: vec![x], morphisms: Vec::new() }
    }

    /// Chain from morphisms; `None` unless consecutive morphisms compose.
    pub fn from_morphisms(c: &FiniteCategory, morphisms: Vec<usize>) -> Option<Self> {
        let first = *morphisms.first()?;
        let mut objects = vec![c.src(first)];
        for w in morphisms.windows(2) {
            if c.tgt(w[0]) != c.src(w[1]) {
                return None;
            }
        }
        objects.extend(morphisms.iter().map(|&f| c.tgt(f)));
        Some(ObjectChain { objects, morphisms })
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn first(&self) -> usize {
        self.objects[0]
    }

    pub fn last(&self) -> usize {
        *self.objects.last().expect("chains have at least one object")
    }

    pub fn is_nondegenerate(&self, c: &FiniteCategory) -> bool {
        self.morphisms.iter().all(|&f| !c.is_identity(f))
    }

    /// Objects pairwise non-isomorphic.
    pub fn is_strict(&self, c: &FiniteCategory) -> bool {
        for i in 0..self.objects.len() {
            for j in i + 1..self.objects.len() {
                if c.are_isomorphic(self.objects[i], self.objects[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Face `d_i`; `None` when a composite is an identity (degenerate face).
    pub fn face(&self, c: &FiniteCategory, i: usize) -> Option<ObjectChain> {
        let n = self.len();
        assert!(n >= 1 && i <= n);
        if n == 1 {
            return Some(ObjectChain::object(if i == 0 { self.objects[1] } else { self.objects[0] }));
        }
        let mut objects = self.objects.clone();
        let mut morphisms = self.morphisms.clone();
        if i == 0 {
            objects.remove(0);
            morphisms.remove(0);
        } else if i == n {
            objects.pop();
            morphisms.pop();
        } else {
            let comp = c.compose(morphisms[i], morphisms[i - 1]);
            if c.is_identity(comp) {
                return None;
            }
            objects.remove(i);
            morphisms.remove(i);
            morphisms[i - 1] = comp;
        }
        Some(ObjectChain { objects, morphisms })
    }

    pub fn render(&self, c: &FiniteCategory) -> String {
        if self.morphisms.is_empty() {
            return c.object_name(self.objects[0]).to_string();
        }
        self.morphisms.iter().map(|&f| c.morphism_id(f)).collect::<Vec<_>>().join(",")
    }
}

/// All nondegenerate chains of length `n`, lexicographic in morphism
/// indices; for `n = 0` the objects.
pub fn nondegenerate_chains(c: &FiniteCategory, n: usize) -> Vec<ObjectChain> {
    if n == 0 {
        return (0..c.num_objects()).map(ObjectChain::object).collect();
    }
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    fn extend(c: &FiniteCategory, n: usize, stack: &mut Vec<usize>, out: &mut Vec<ObjectChain>) {
        if stack.len() == n {
            out.push(ObjectChain::from_morphisms(c, stack.clone()).expect("composable by construction"));
            return;
        }
        let candidates: Vec<usize> = match stack.last() {
            None => (0..c.num_morphisms()).collect(),
            Some(&f) => c.morphisms_out_of(c.tgt(f)).to_vec(),
        };
        for g in candidates {
            if c.is_identity(g) {
                continue;
            }
            stack.push(g);
            extend(c, n, stack, out);
            stack.pop();
        }
    }
    extend(c, n, &mut stack, &mut out);
    out
}

/// Nondegenerate chains of lengths `0..=top` with index lookup and face maps.
#[derive(Clone, Debug)]
pub struct Nerve {
    levels: Vec<Vec<ObjectChain>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn new(c: &FiniteCategory, top: usize) -> Self {
        let mut levels = Vec::with_capacity(top + 1);
        let mut index = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let chains = if n == 0 {
                nondegenerate_chains(c, 0)
            } else {
                // Extend the previous level on the right.
                let prev: &Vec<ObjectChain> = &levels[n - 1];
                let mut out = Vec::new();
                if n == 1 {
                    for f in 0..c.num_morphisms() {
                        if !c.is_identity(f) {
                            out.push(ObjectChain::from_morphisms(c, vec![f]).unwrap());
                        }
                    }
                } else {
                    for ch in prev {
                        for &g in c.morphisms_out_of(ch.last()) {
                            if c.is_identity(g) {
                                continue;
                            }
                            let mut ms = ch.morphisms.clone();
                            ms.push(g);
                            let mut os = ch.objects.clone();
                            os.push(c.tgt(g));
                            out.push(ObjectChain { objects: os, morphisms: ms });
                        }
                    }
                }
                out
            };
            let idx: HashMap<Vec<usize>, usize> = chains.iter().enumerate().map(|(i, ch)| (Self::key(ch), i)).collect();
            levels.push(chains);
            index.push(idx);
        }
        Nerve { levels, index }
    }

    fn key(ch: &ObjectChain) -> Vec<usize> {
        if ch.morphisms.is_empty() {
            vec![ch.objects[0]]
        } else {
            ch.morphisms.clone()
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[ObjectChain] {
        &self.levels[n]
    }

    pub fn count(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, |l| l.len())
    }

    pub fn find(&self, ch: &ObjectChain) -> Option<usize> {
        self.index.get(ch.len())?.get(&Self::key(ch)).copied()
    }

    /// Index of face `d_i` of chain `j` at level `n` within level `n-1`.
    pub fn face(&self, c: &FiniteCategory, n: usize, j: usize, i: usize) -> Option<usize> {
        let face = self.levels[n][j].face(c, i)?;
        Some(self.find(&face).expect("faces of nondegenerate chains are listed"))
    }
}
