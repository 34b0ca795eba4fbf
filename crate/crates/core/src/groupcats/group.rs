use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory};

/// Largest group order accepted; subgroups are `u64` bitmasks.
pub const MAX_GROUP_ORDER: usize = 64;

/// A set of group elements as a bitmask over element indices.
pub type Subset = u64;

pub fn members(s: Subset) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| s >> i & 1 == 1)
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

fn bit(i: usize) -> Subset {
    1u64 << i
}

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

/// On-disk group: element names with a table, or permutation generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawGroup {
    Table { elements: Vec<String>, table: Vec<Vec<usize>> },
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity. The
    /// identity is moved to index 0 if needed.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("no elements".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge { order: n, bound: MAX_GROUP_ORDER });
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup(format!("multiplication table must be {n}×{n} with entries below {n}")));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != n {
            return Err(Error::InvalidGroup("duplicate element names".into()));
        }
        let e = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)).ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("({}{}){} ≠ {}({}{})", names[a], names[b], names[c], names[a], names[b], names[c])));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a][b] == e).ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", names[a])))?;
        }
        let g = FiniteGroup { names, table, inverse };
        Ok(if e == 0 { g } else { g.relabel_identity_first(e) })
    }

    fn relabel_identity_first(self, e: usize) -> Self {
        let n = self.names.len();
        let mut order: Vec<usize> = vec![e];
        order.extend((0..n).filter(|&i| i != e));
        let mut pos = vec![0; n];
        for (i, &o) in order.iter().enumerate() {
            pos[o] = i;
        }
        let names = order.iter().map(|&o| self.names[o].clone()).collect();
        let table = order.iter().map(|&a| order.iter().map(|&b| pos[self.table[a][b]]).collect()).collect();
        let inverse = order.iter().map(|&a| pos[self.inverse[a]]).collect();
        FiniteGroup { names, table, inverse }
    }

    /// Closure of permutations of `{0, …, degree−1}` (image lists). Elements
    /// are sorted by image list, named in cycle notation on `1..=degree`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
                if elems.insert(y.clone()) {
                    if elems.len() > MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge { order: elems.len(), bound: MAX_GROUP_ORDER });
                    }
                    frontier.push(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elems.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        // (ab)(i) = a(b(i)): apply b first
        let table = elems.iter().map(|a| elems.iter().map(|b| index[&b.iter().map(|&i| a[i]).collect::<Vec<_>>()]).collect()).collect();
        let names = elems.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(names, table)
    }

    pub fn from_raw(raw: &RawGroup) -> Result<Self> {
        match raw {
            RawGroup::Table { elements, table } => Self::from_table(elements.clone(), table.clone()),
            RawGroup::Permutations { degree, generators } => Self::from_permutations(*degree, generators),
        }
    }

    pub fn to_raw(&self) -> RawGroup {
        RawGroup::Table { elements: self.names.clone(), table: self.table.clone() }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let names = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("a{i}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, table)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(n, &gens)
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl])
    }

    pub fn direct_product(&self, other: &Self) -> Result<Self> {
        let (n, m) = (self.order(), other.order());
        let names = (0..n * m).map(|i| format!("({},{})", self.names[i / m], other.names[i % m])).collect();
        let table = (0..n * m).map(|a| (0..n * m).map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m)).collect()).collect();
        Self::from_table(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g⁻¹`
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subset {
        if self.order() == 64 {
            u64::MAX
        } else {
            (1u64 << self.order()) - 1
        }
    }

    pub fn trivial(&self) -> Subset {
        1
    }

    pub fn is_subgroup(&self, s: Subset) -> bool {
        s & 1 == 1 && members(s).all(|a| members(s).all(|b| s >> self.mul(a, self.inv(b)) & 1 == 1))
    }

    /// The subgroup generated by a set of elements.
    pub fn generate(&self, gens: Subset) -> Subset {
        let mut s = 1 | gens;
        loop {
            let mut next = s;
            for a in members(s) {
                for b in members(gens) {
                    next |= bit(self.mul(a, b));
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// `g S g⁻¹`
    pub fn conjugate(&self, g: usize, s: Subset) -> Subset {
        members(s).fold(0, |acc, h| acc | bit(self.conj(g, h)))
    }

    /// All subgroups, sorted by order then bitmask.
    pub fn subgroups(&self) -> Vec<Subset> {
        let mut all: BTreeSet<Subset> = (0..self.order()).map(|g| self.generate(bit(g))).collect();
        loop {
            let current: Vec<Subset> = all.iter().copied().collect();
            let mut grew = false;
            for (i, &a) in current.iter().enumerate() {
                for &b in &current[i + 1..] {
                    if a & b != a && a & b != b {
                        grew |= all.insert(self.generate(a | b));
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut v: Vec<Subset> = all.into_iter().collect();
        v.sort_by_key(|&s| (size(s), s));
        v
    }

    pub fn centralizer(&self, s: Subset) -> Subset {
        (0..self.order()).filter(|&g| members(s).all(|h| self.mul(g, h) == self.mul(h, g))).fold(0, |acc, g| acc | bit(g))
    }

    pub fn normalizer(&self, s: Subset) -> Subset {
        self.transporter(s, s)
    }

    /// `N_G(H, K) = {g : gHg⁻¹ ≤ K}`
    pub fn transporter(&self, h: Subset, k: Subset) -> Subset {
        (0..self.order()).filter(|&g| self.conjugate(g, h) & !k == 0).fold(0, |acc, g| acc | bit(g))
    }

    /// `Z(P) = P ∩ C_G(P)`
    pub fn center(&self, p: Subset) -> Subset {
        p & self.centralizer(p)
    }

    /// Smallest conjugation-closed list containing the seeds, sorted.
    pub fn conjugacy_closure(&self, seeds: &[Subset]) -> Vec<Subset> {
        let mut all: BTreeSet<Subset> = BTreeSet::new();
        for &s in seeds {
            for g in 0..self.order() {
                all.insert(self.conjugate(g, s));
            }
        }
        let mut v: Vec<Subset> = all.into_iter().collect();
        v.sort_by_key(|&s| (size(s), s));
        v
    }

    pub fn is_p_group(&self, s: Subset, p: usize) -> bool {
        let mut n = size(s);
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Sylow `p`-subgroup with the least sorted element list.
    pub fn sylow(&self, p: usize) -> Subset {
        let mut best: Option<(usize, Vec<usize>, Subset)> = None;
        for s in self.subgroups() {
            if !self.is_p_group(s, p) {
                continue;
            }
            let key = (size(s), members(s).collect::<Vec<_>>());
            let better = match &best {
                None => true,
                Some((n, v, _)) => key.0 > *n || (key.0 == *n && key.1 < *v),
            };
            if better {
                best = Some((key.0, key.1, s));
            }
        }
        best.map_or(1, |b| b.2)
    }

    /// Short display name: `1` or `<g,…>` with a greedy generating set.
    pub fn subgroup_name(&self, s: Subset) -> String {
        if s == 1 {
            return "1".into();
        }
        let mut span = 1;
        let mut gens = Vec::new();
        for g in members(s) {
            if span >> g & 1 == 0 {
                gens.push(self.names[g].as_str());
                span = self.generate(span | bit(g));
            }
        }
        format!("<{}>", gens.join(","))
    }

    /// The group as a one-object category; morphism ids are element names.
    pub fn category(&self) -> Result<FiniteCategory> {
        FiniteCategory::from_monoid("*", self.names.clone(), &self.table, 0)
    }

    /// The functor between group categories induced by a homomorphism given
    /// as element images.
    pub fn hom_functor(&self, other: &FiniteGroup, images: &[usize]) -> Result<CatFunctor> {
        if images.len() != self.order() || images.iter().any(|&x| x >= other.order()) {
            return Err(Error::InvalidFunctor("homomorphism images have the wrong shape".into()));
        }
        CatFunctor::new(Arc::new(self.category()?), Arc::new(other.category()?), vec![0], images.to_vec())
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = p[i];
        }
        out.push_str(&format!("({})", cyc.join(",")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_subgroup_tools() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(0), "()");
        let subs = g.subgroups();
        assert_eq!(subs.len(), 6);
        let two = subs.iter().copied().find(|&s| size(s) == 2).unwrap();
        let a3 = subs.iter().copied().find(|&s| size(s) == 3).unwrap();
        assert_eq!(g.transporter(two, a3), 0);
        assert_eq!(g.centralizer(1), g.whole());
        assert_eq!(g.normalizer(two), two);
        assert_eq!(g.conjugacy_closure(&[two]).len(), 3);
        assert_eq!(size(g.sylow(2)), 2);
        assert_eq!(size(g.sylow(3)), 3);
    }

    #[test]
    fn dihedral_klein_is_normal() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        let subs = g.subgroups();
        assert_eq!(subs.len(), 10);
        let kleins: Vec<Subset> = subs.iter().copied().filter(|&s| size(s) == 4 && members(s).all(|x| g.element_order(x) <= 2)).collect();
        assert_eq!(kleins.len(), 2);
        assert_eq!(g.conjugacy_closure(&[kleins[0]]), vec![kleins[0]]);
    }

    #[test]
    fn table_axioms_are_checked() {
        let bad = FiniteGroup::from_table(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 1]]);
        assert!(matches!(bad, Err(Error::InvalidGroup(_))));
        let big = FiniteGroup::symmetric(5);
        assert!(matches!(big, Err(Error::GroupTooLarge { .. })));
        let k = FiniteGroup::cyclic(2).unwrap().direct_product(&FiniteGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(k.subgroups().len(), 5);
    }
}
