use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{CatFunctor, FiniteCategory};
use crate::linalg::{Echelon, Matrix, SparseVec};

/// Right modules are contravariant, left modules covariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Right,
    Left,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Right => Variance::Left,
            Variance::Left => Variance::Right,
        }
    }
}

/// A functor from a finite category to finite-dimensional vector spaces.
///
/// For `φ: x → y` the stored matrix is `M(φ): M(y) → M(x)` for right
/// modules and `M(φ): M(x) → M(y)` for left modules, acting on column
/// vectors. Hence `M(g∘f) = M(f)·M(g)` (right) and `M(g∘f) = M(g)·M(f)`
/// (left).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatModule<F: Field> {
    category: Arc<FiniteCategory>,
    variance: Variance,
    field: F,
    dims: Vec<usize>,
    maps: Vec<Matrix<F::Elem>>,
}

impl<F: Field> CatModule<F> {
    pub fn new(category: Arc<FiniteCategory>, variance: Variance, field: F, dims: Vec<usize>, maps: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let m = CatModule { category, variance, field, dims, maps };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(category: Arc<FiniteCategory>, variance: Variance, field: F, dims: Vec<usize>, maps: Vec<Matrix<F::Elem>>) -> Self {
        let m = CatModule { category, variance, field, dims, maps };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    /// Shapes, identities and the composition law.
    pub fn validate(&self) -> Result<()> {
        let c = &self.category;
        if self.dims.len() != c.num_objects() || self.maps.len() != c.num_morphisms() {
            return Err(Error::InvalidModule("data does not match the category size".into()));
        }
        for f in 0..c.num_morphisms() {
            let (rows, cols) = self.shape(f);
            let m = &self.maps[f];
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::InvalidModule(format!("matrix of {} is {}x{}, expected {}x{}", c.morphism_id(f), m.rows(), m.cols(), rows, cols)));
            }
        }
        for x in 0..c.num_objects() {
            if !self.maps[c.identity(x)].is_identity(&self.field) {
                return Err(Error::InvalidModule(format!("identity of {} does not act trivially", c.object_name(x))));
            }
        }
        for g in 0..c.num_morphisms() {
            if c.is_identity(g) {
                continue;
            }
            for &f in c.morphisms_into(c.src(g)) {
                if c.is_identity(f) {
                    continue;
                }
                let gf = c.compose(g, f);
                let prod = match self.variance {
                    Variance::Right => self.maps[f].mul(&self.field, &self.maps[g]),
                    Variance::Left => self.maps[g].mul(&self.field, &self.maps[f]),
                };
                if prod != self.maps[gf] {
                    return Err(Error::InvalidModule(format!("functoriality fails for {} ∘ {}", c.morphism_id(g), c.morphism_id(f))));
                }
            }
        }
        Ok(())
    }

    /// `(rows, cols)` of the matrix of `f`.
    fn shape(&self, f: usize) -> (usize, usize) {
        let (x, y) = (self.category.src(f), self.category.tgt(f));
        match self.variance {
            Variance::Right => (self.dims[x], self.dims[y]),
            Variance::Left => (self.dims[y], self.dims[x]),
        }
    }

    pub fn constant(category: Arc<FiniteCategory>, field: F, variance: Variance) -> Self {
        let dims = vec![1; category.num_objects()];
        let maps = vec![Matrix::identity(&field, 1); category.num_morphisms()];
        CatModule { category, variance, field, dims, maps }
    }

    pub fn zero(category: Arc<FiniteCategory>, field: F, variance: Variance) -> Self {
        let dims = vec![0; category.num_objects()];
        let maps = vec![Matrix::zeros(&field, 0, 0); category.num_morphisms()];
        CatModule { category, variance, field, dims, maps }
    }

    /// `RC(?, x)`: basis `Mor(y, x)` at `y`, structure by precomposition.
    pub fn representable(category: Arc<FiniteCategory>, x: usize, field: F) -> Result<Self> {
        let c = category.clone();
        if x >= c.num_objects() {
            return Err(Error::ObjectNotInCategory(x.to_string()));
        }
        let dims: Vec<usize> = (0..c.num_objects()).map(|y| c.hom(y, x).len()).collect();
        let maps = (0..c.num_morphisms())
            .map(|phi| {
                let (y, z) = (c.src(phi), c.tgt(phi));
                // R Mor(z, x) → R Mor(y, x), u ↦ u∘φ
                let mut m = Matrix::zeros(&field, dims[y], dims[z]);
                for (col, &u) in c.hom(z, x).iter().enumerate() {
                    let v = c.compose(u, phi);
                    let row = c.hom(y, x).iter().position(|&w| w == v).unwrap();
                    m.set(row, col, field.one());
                }
                m
            })
            .collect();
        Ok(CatModule::new_unchecked(category, Variance::Right, field, dims, maps))
    }

    /// `RC(x, ?)`: basis `Mor(x, y)` at `y`, structure by postcomposition.
    pub fn left_representable(category: Arc<FiniteCategory>, x: usize, field: F) -> Result<Self> {
        let c = category.clone();
        if x >= c.num_objects() {
            return Err(Error::ObjectNotInCategory(x.to_string()));
        }
        let dims: Vec<usize> = (0..c.num_objects()).map(|y| c.hom(x, y).len()).collect();
        let maps = (0..c.num_morphisms())
            .map(|phi| {
                let (y, z) = (c.src(phi), c.tgt(phi));
                let mut m = Matrix::zeros(&field, dims[z], dims[y]);
                for (col, &u) in c.hom(x, y).iter().enumerate() {
                    let v = c.compose(phi, u);
                    let row = c.hom(x, z).iter().position(|&w| w == v).unwrap();
                    m.set(row, col, field.one());
                }
                m
            })
            .collect();
        Ok(CatModule::new_unchecked(category, Variance::Left, field, dims, maps))
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, f: usize) -> &Matrix<F::Elem> {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    /// Dimension one everywhere with identity structure maps.
    pub fn is_constant(&self) -> bool {
        self.dims.iter().all(|&d| d == 1) && self.maps.iter().all(|m| m.is_identity(&self.field))
    }

    /// The same functor viewed as a module over the opposite category.
    pub fn opposite_over(&self, op: Arc<FiniteCategory>) -> Self {
        debug_assert_eq!(op.num_morphisms(), self.category.num_morphisms());
        CatModule { category: op, variance: self.variance.flip(), field: self.field.clone(), dims: self.dims.clone(), maps: self.maps.clone() }
    }

    pub fn opposite(&self) -> Self {
        self.opposite_over(Arc::new(self.category.opposite()))
    }

    /// The same data over an equal category value (used to re-home a module
    /// onto a structurally identical `Arc`).
    pub fn rehome(&self, category: Arc<FiniteCategory>) -> Result<Self> {
        if *category != *self.category {
            return Err(Error::MismatchedBase("categories differ".into()));
        }
        Ok(CatModule { category, ..self.clone() })
    }

    /// `Res_F M = M ∘ F`.
    pub fn restrict(&self, fun: &CatFunctor) -> Result<Self> {
        if **fun.target() != *self.category {
            return Err(Error::MismatchedBase("module does not live over the functor's target".into()));
        }
        let c = fun.source();
        let dims = (0..c.num_objects()).map(|x| self.dims[fun.obj(x)]).collect();
        let maps = (0..c.num_morphisms()).map(|f| self.maps[fun.mor(f)].clone()).collect();
        Ok(CatModule { category: c.clone(), variance: self.variance, field: self.field.clone(), dims, maps })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_base(other)?;
        let f = &self.field;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(f, a.rows() + b.rows(), a.cols() + b.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m.set(r, c, a.get(r, c).clone());
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
                    }
                }
                m
            })
            .collect();
        Ok(CatModule { category: self.category.clone(), variance: self.variance, field: f.clone(), dims, maps })
    }

    /// Conjugate by invertible matrices `B_x` (new basis = columns of `B_x`).
    pub fn change_basis(&self, bases: &[Matrix<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        let c = &self.category;
        let mut inv = Vec::with_capacity(bases.len());
        for (x, b) in bases.iter().enumerate() {
            if b.rows() != self.dims[x] || b.cols() != self.dims[x] {
                return Err(Error::InvalidModule("basis change has the wrong shape".into()));
            }
            inv.push(b.inverse(f).ok_or_else(|| Error::InvalidModule("basis change is singular".into()))?);
        }
        let maps = (0..c.num_morphisms())
            .map(|phi| {
                let (x, y) = (c.src(phi), c.tgt(phi));
                let (into, from) = match self.variance {
                    Variance::Right => (x, y),
                    Variance::Left => (y, x),
                };
                inv[into].mul(f, &self.maps[phi]).mul(f, &bases[from])
            })
            .collect();
        Ok(CatModule { category: c.clone(), variance: self.variance, field: f.clone(), dims: self.dims.clone(), maps })
    }

    pub fn check_same_base(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.category, &other.category) && *self.category != *other.category {
            return Err(Error::MismatchedBase("modules over different categories".into()));
        }
        if self.field != other.field {
            return Err(Error::MismatchedBase("modules over different fields".into()));
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("modules of different variance".into()));
        }
        Ok(())
    }

    /// Submodule generated by vectors `(object, vector)`; returns the
    /// module and its inclusion.
    pub fn generated_submodule(&self, gens: &[(usize, SparseVec<F::Elem>)]) -> Result<(Self, ModuleMap<F>)> {
        let f = &self.field;
        let c = &self.category;
        let mut spaces: Vec<Echelon<F>> = self.dims.iter().map(|&d| Echelon::new(f.clone(), d)).collect();
        let mut basis: Vec<Vec<SparseVec<F::Elem>>> = vec![Vec::new(); c.num_objects()];
        let mut queue: Vec<(usize, SparseVec<F::Elem>)> = gens.to_vec();
        while let Some((x, v)) = queue.pop() {
            if spaces[x].insert(v.clone()).is_none() {
                continue;
            }
            basis[x].push(v.clone());
            let dense = crate::linalg::sparse_to_dense(f, &v, self.dims[x]);
            let arrows: Vec<usize> = match self.variance {
                Variance::Right => c.morphisms_into(x).to_vec(),
                Variance::Left => c.morphisms_out_of(x).to_vec(),
            };
            for phi in arrows {
                let y = match self.variance {
                    Variance::Right => c.src(phi),
                    Variance::Left => c.tgt(phi),
                };
                let img = self.maps[phi].mul_vec(f, &dense);
                queue.push((y, crate::linalg::dense_to_sparse(f, &img)));
            }
        }
        let incl: Vec<Matrix<F::Elem>> = (0..c.num_objects()).map(|x| Matrix::from_columns(f, self.dims[x], &basis[x])).collect();
        self.submodule_from_inclusions(incl)
    }

    /// Given per-object injective matrices whose images form a submodule,
    /// the submodule and its inclusion map.
    pub fn submodule_from_inclusions(&self, incl: Vec<Matrix<F::Elem>>) -> Result<(Self, ModuleMap<F>)> {
        let f = &self.field;
        let c = &self.category;
        let dims: Vec<usize> = incl.iter().map(|m| m.cols()).collect();
        let mut maps = Vec::with_capacity(c.num_morphisms());
        for phi in 0..c.num_morphisms() {
            let (x, y) = (c.src(phi), c.tgt(phi));
            let (into, from) = match self.variance {
                Variance::Right => (x, y),
                Variance::Left => (y, x),
            };
            let img = self.maps[phi].mul(f, &incl[from]);
            maps.push(solve_columns(f, &incl[into], &img).ok_or_else(|| Error::InvalidModule("subspaces are not a submodule".into()))?);
        }
        let sub = CatModule::new(c.clone(), self.variance, f.clone(), dims, maps)?;
        let map = ModuleMap::new(sub.clone(), self.clone(), incl)?;
        Ok((sub, map))
    }

    pub fn to_raw(&self) -> RawModule {
        let c = &self.category;
        RawModule {
            field: self.field.spec().to_string(),
            variance: self.variance,
            dims: (0..c.num_objects()).map(|x| (c.object_name(x).to_string(), self.dims[x])).collect(),
            matrices: (0..c.num_morphisms())
                .filter(|&f| !c.is_identity(f))
                .map(|f| {
                    let rows = self.maps[f].render(&self.field).into_iter().map(|r| r.into_iter().map(RawEntry::from_rendered).collect()).collect();
                    (c.morphism_id(f).to_string(), rows)
                })
                .collect(),
        }
    }

    pub fn from_raw(category: Arc<FiniteCategory>, field: F, raw: &RawModule) -> Result<Self> {
        let c = category.clone();
        let mut dims = Vec::with_capacity(c.num_objects());
        for x in 0..c.num_objects() {
            let d = raw.dims.get(c.object_name(x)).ok_or_else(|| Error::InvalidModule(format!("no dimension for object {}", c.object_name(x))))?;
            dims.push(*d);
        }
        for key in raw.dims.keys() {
            if c.object_index(key).is_none() {
                return Err(Error::ObjectNotInCategory(key.clone()));
            }
        }
        for key in raw.matrices.keys() {
            if c.morphism_index(key).is_none() {
                return Err(Error::UnknownMorphism(key.clone()));
            }
        }
        let mut maps = Vec::with_capacity(c.num_morphisms());
        for phi in 0..c.num_morphisms() {
            let (x, y) = (c.src(phi), c.tgt(phi));
            let (rows, cols) = match raw.variance {
                Variance::Right => (dims[x], dims[y]),
                Variance::Left => (dims[y], dims[x]),
            };
            let m = match raw.matrices.get(c.morphism_id(phi)) {
                Some(entries) => {
                    parse_matrix(&field, rows, cols, entries).map_err(|e| Error::InvalidModule(format!("matrix of {}: {e}", c.morphism_id(phi))))?
                }
                None if c.is_identity(phi) => Matrix::identity(&field, rows),
                None => return Err(Error::InvalidModule(format!("no matrix for morphism {}", c.morphism_id(phi)))),
            };
            maps.push(m);
        }
        CatModule::new(category, raw.variance, field, dims, maps)
    }
}

/// Solve `A X = B` column by column; `None` if some column is outside the
/// column space of `A`. `A` must have independent columns for uniqueness.
pub fn solve_columns<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let mut ech = Echelon::new(f.clone(), a.rows());
    for c in 0..a.cols() {
        ech.insert_tagged(crate::linalg::dense_to_sparse(f, &a.column(c)), vec![(c, f.one())]);
    }
    let mut out = Matrix::zeros(f, a.cols(), b.cols());
    for c in 0..b.cols() {
        let (res, tag) = ech.reduce_tagged(crate::linalg::dense_to_sparse(f, &b.column(c)), Vec::new());
        if !res.is_empty() {
            return None;
        }
        for (i, v) in tag {
            out.set(i, c, f.neg(&v));
        }
    }
    Some(out)
}

/// A natural transformation between modules of the same variance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    source: CatModule<F>,
    target: CatModule<F>,
    components: Vec<Matrix<F::Elem>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: CatModule<F>, target: CatModule<F>, components: Vec<Matrix<F::Elem>>) -> Result<Self> {
        source.check_same_base(&target)?;
        let m = ModuleMap { source, target, components };
        m.check_natural()?;
        Ok(m)
    }

    pub fn check_natural(&self) -> Result<()> {
        let c = self.source.category.clone();
        let f = &self.source.field;
        for x in 0..c.num_objects() {
            let k = &self.components[x];
            if k.rows() != self.target.dims[x] || k.cols() != self.source.dims[x] {
                return Err(Error::InvalidModule(format!("component at {} has the wrong shape", c.object_name(x))));
            }
        }
        for phi in 0..c.num_morphisms() {
            let (x, y) = (c.src(phi), c.tgt(phi));
            let (into, from) = match self.source.variance {
                Variance::Right => (x, y),
                Variance::Left => (y, x),
            };
            let lhs = self.components[into].mul(f, &self.source.maps[phi]);
            let rhs = self.target.maps[phi].mul(f, &self.components[from]);
            if lhs != rhs {
                return Err(Error::InvalidModule(format!("naturality fails at {}", c.morphism_id(phi))));
            }
        }
        Ok(())
    }

    pub fn identity(m: &CatModule<F>) -> Self {
        let components = m.dims.iter().map(|&d| Matrix::identity(&m.field, d)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), components }
    }

    pub fn source(&self) -> &CatModule<F> {
        &self.source
    }

    pub fn target(&self) -> &CatModule<F> {
        &self.target
    }

    pub fn component(&self, x: usize) -> &Matrix<F::Elem> {
        &self.components[x]
    }

    pub fn components(&self) -> &[Matrix<F::Elem>] {
        &self.components
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ModuleMap<F>) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::MismatchedBase("maps are not composable".into()));
        }
        let f = &self.source.field;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| b.mul(f, a)).collect();
        Ok(ModuleMap { source: self.source.clone(), target: other.target.clone(), components })
    }

    pub fn is_injective(&self) -> bool {
        let f = &self.source.field;
        self.components.iter().all(|m| m.rank(f) == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        let f = &self.source.field;
        self.components.iter().all(|m| m.rank(f) == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Cokernel module and the projection onto it.
    pub fn cokernel(&self) -> Result<(CatModule<F>, ModuleMap<F>)> {
        let f = self.source.field.clone();
        let n = &self.target;
        let c = n.category.clone();
        let mut projections = Vec::with_capacity(c.num_objects());
        let mut lifts = Vec::with_capacity(c.num_objects());
        for x in 0..c.num_objects() {
            let mut ech = Echelon::new(f.clone(), n.dims[x]);
            for col in 0..self.components[x].cols() {
                ech.insert(crate::linalg::dense_to_sparse(&f, &self.components[x].column(col)));
            }
            let rref = ech.into_rref();
            let free = rref.free_columns();
            let mut p = Matrix::zeros(&f, free.len(), n.dims[x]);
            for j in 0..n.dims[x] {
                let red = rref.reduce(&[(j, f.one())]);
                for (i, &fc) in free.iter().enumerate() {
                    if let Ok(k) = red.binary_search_by_key(&fc, |e| e.0) {
                        p.set(i, j, red[k].1.clone());
                    }
                }
            }
            projections.push(p);
            lifts.push(free);
        }
        let dims: Vec<usize> = lifts.iter().map(|l| l.len()).collect();
        let maps = (0..c.num_morphisms())
            .map(|phi| {
                let (x, y) = (c.src(phi), c.tgt(phi));
                let (into, from) = match n.variance {
                    Variance::Right => (x, y),
                    Variance::Left => (y, x),
                };
                let mut m = Matrix::zeros(&f, dims[into], dims[from]);
                for (col, &l) in lifts[from].iter().enumerate() {
                    let img = projections[into].mul_vec(&f, &n.maps[phi].column(l));
                    for (r, v) in img.into_iter().enumerate() {
                        m.set(r, col, v);
                    }
                }
                m
            })
            .collect();
        let q = CatModule::new(c, n.variance, f, dims, maps)?;
        let proj = ModuleMap::new(n.clone(), q.clone(), projections)?;
        Ok((q, proj))
    }

    /// Kernel module and its inclusion.
    pub fn kernel(&self) -> Result<(CatModule<F>, ModuleMap<F>)> {
        let f = self.source.field.clone();
        let incl: Vec<Matrix<F::Elem>> = (0..self.source.dims.len())
            .map(|x| {
                let k = self.components[x].kernel(&f);
                Matrix::from_columns(&f, self.source.dims[x], &k)
            })
            .collect();
        self.source.submodule_from_inclusions(incl)
    }
}

/// Matrix entries in files: integers, or rationals written `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawEntry {
    Int(i64),
    Text(String),
}

/// Module description as read from a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawModule {
    pub field: String,
    pub variance: Variance,
    pub dims: BTreeMap<String, usize>,
    /// Row-major matrices per morphism id; identities may be omitted.
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<RawEntry>>>,
}

impl RawEntry {
    fn from_rendered(s: String) -> Self {
        match s.parse::<i64>() {
            Ok(n) => RawEntry::Int(n),
            Err(_) => RawEntry::Text(s),
        }
    }
}

fn parse_entry<F: Field>(field: &F, e: &RawEntry) -> std::result::Result<F::Elem, String> {
    let s = match e {
        RawEntry::Int(n) => return Ok(field.from_i64(*n)),
        RawEntry::Text(s) => s.as_str(),
    };
    parse_text(field, s)
}

fn parse_text<F: Field>(field: &F, s: &str) -> std::result::Result<F::Elem, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| format!("bad entry {s:?}"))?;
        let d: i64 = d.trim().parse().map_err(|_| format!("bad entry {s:?}"))?;
        let de = field.from_i64(d);
        if field.is_zero(&de) {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(field.mul(&field.from_i64(n), &field.inv(&de)))
    } else {
        let n: i64 = s.parse().map_err(|_| format!("bad entry {s:?}"))?;
        Ok(field.from_i64(n))
    }
}

fn parse_matrix<F: Field>(field: &F, rows: usize, cols: usize, entries: &[Vec<RawEntry>]) -> std::result::Result<Matrix<F::Elem>, String> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(format!("expected a {rows}x{cols} matrix"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        for e in row {
            data.push(parse_entry(field, e)?);
        }
    }
    Ok(Matrix::from_rows(rows, cols, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn z2() -> Arc<FiniteCategory> {
        let mul = vec![vec![0, 1], vec![1, 0]];
        Arc::new(FiniteCategory::from_monoid("*", vec!["e".into(), "g".into()], &mul, 0).unwrap())
    }

    #[test]
    fn representable_of_group_is_regular() {
        let f = PrimeField::new(2).unwrap();
        let m = CatModule::representable(z2(), 0, f).unwrap();
        assert_eq!(m.dims(), &[2]);
        m.validate().unwrap();
    }

    #[test]
    fn wrong_composition_rejected() {
        let f = PrimeField::new(3).unwrap();
        // g acts by 2, but g∘g = e must act by 1: 2*2 = 4 = 1 mod 3, valid.
        let ok = CatModule::new(z2(), Variance::Right, f, vec![1], vec![Matrix::identity(&f, 1), Matrix::from_i64(&f, 1, 1, &[2])]);
        assert!(ok.is_ok());
        let f5 = PrimeField::new(5).unwrap();
        let bad = CatModule::new(z2(), Variance::Right, f5, vec![1], vec![Matrix::identity(&f5, 1), Matrix::from_i64(&f5, 1, 1, &[2])]);
        assert!(bad.is_err());
    }

    #[test]
    fn raw_round_trip() {
        let f = PrimeField::new(2).unwrap();
        let m = CatModule::representable(z2(), 0, f).unwrap();
        let raw = m.to_raw();
        let back = CatModule::from_raw(z2(), f, &raw).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn cokernel_of_norm_map() {
        let f = PrimeField::new(2).unwrap();
        let c = z2();
        let reg = CatModule::representable(c.clone(), 0, f).unwrap();
        let triv = CatModule::constant(c.clone(), f, Variance::Right);
        // trivial → regular, 1 ↦ e + g
        let map = ModuleMap::new(triv, reg, vec![Matrix::from_i64(&f, 2, 1, &[1, 1])]).unwrap();
        let (q, _) = map.cokernel().unwrap();
        assert_eq!(q.dims(), &[1]);
        assert!(q.is_constant());
        let (k, _) = map.kernel().unwrap();
        assert_eq!(k.dims(), &[0]);
    }
}
