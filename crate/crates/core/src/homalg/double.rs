use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{comma_category, comma_transport, CatFunctor, CommaSide, Nerve};
use crate::homalg::cochains::{check_degree, ext_complex, pullback_cochains, NerveComplex};
use crate::linalg::{Matrix, SparseMatrix};
use crate::modcat::{CatModule, Variance};

/// Cells `(p, q)` with `p ≤ p_max`, `q ≤ q_max` and `p + q ≤ n_max + 1` are
/// computed; total degrees `≤ n_max` are then exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub p_max: usize,
    pub q_max: usize,
    pub n_max: usize,
}

impl Window {
    /// The smallest window guaranteeing total degrees `≤ n_max`.
    pub fn through(n_max: usize) -> Self {
        Window { p_max: n_max + 1, q_max: n_max + 1, n_max }
    }

    /// Every cell with `p + q ≤ n_max + 1` must be inside the rectangle.
    pub fn check(&self) -> Result<()> {
        check_degree(self.n_max + 1)?;
        if self.p_max < self.n_max + 1 || self.q_max < self.n_max + 1 {
            return Err(Error::WindowTooSmall(format!(
                "total degree {} needs p_max and q_max of at least {}, got {} and {}",
                self.n_max,
                self.n_max + 1,
                self.p_max,
                self.q_max
            )));
        }
        Ok(())
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        p <= self.p_max && q <= self.q_max && p + q <= self.n_max + 1
    }
}

/// First-quadrant double complex with commuting squares. The total
/// differential is `h + (−1)^p v`.
///
/// `horizontal[p][q]: C^{p,q} → C^{p+1,q}` and `vertical[p][q]: C^{p,q} →
/// C^{p,q+1}` are stored for cells with `p + q ≤ n_max`.
#[derive(Clone, Debug)]
pub struct DoubleComplex<F: Field> {
    field: F,
    n_max: usize,
    dims: Vec<Vec<usize>>,
    horizontal: Vec<Vec<SparseMatrix<F::Elem>>>,
    vertical: Vec<Vec<SparseMatrix<F::Elem>>>,
}

impl<F: Field> DoubleComplex<F> {
    /// `dims[p]` lists `dim C^{p,q}` for `q ≤ n_max + 1 − p`; `horizontal[p]`
    /// and `vertical[p]` list maps for `q ≤ n_max − p`.
    pub fn new(
        field: F,
        n_max: usize,
        dims: Vec<Vec<usize>>,
        horizontal: Vec<Vec<SparseMatrix<F::Elem>>>,
        vertical: Vec<Vec<SparseMatrix<F::Elem>>>,
    ) -> Result<Self> {
        let bad = |what: &str| Error::InvalidModule(format!("double complex: {what}"));
        if dims.len() != n_max + 2 || horizontal.len() != n_max + 1 || vertical.len() != n_max + 1 {
            return Err(bad("wrong number of columns"));
        }
        for p in 0..=n_max + 1 {
            if dims[p].len() != n_max + 2 - p {
                return Err(bad("wrong column height"));
            }
        }
        for p in 0..=n_max {
            if horizontal[p].len() != n_max + 1 - p || vertical[p].len() != n_max + 1 - p {
                return Err(bad("wrong number of maps in a column"));
            }
            for q in 0..=n_max - p {
                let (h, v) = (&horizontal[p][q], &vertical[p][q]);
                if h.cols != dims[p][q] || h.rows != dims[p + 1][q] {
                    return Err(bad(&format!("horizontal map at ({p},{q}) has the wrong shape")));
                }
                if v.cols != dims[p][q] || v.rows != dims[p][q + 1] {
                    return Err(bad(&format!("vertical map at ({p},{q}) has the wrong shape")));
                }
            }
        }
        Ok(DoubleComplex { field, n_max, dims, horizontal, vertical })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    pub fn horizontal(&self, p: usize, q: usize) -> &SparseMatrix<F::Elem> {
        &self.horizontal[p][q]
    }

    pub fn vertical(&self, p: usize, q: usize) -> &SparseMatrix<F::Elem> {
        &self.vertical[p][q]
    }

    /// `hh = 0`, `vv = 0` and `hv = vh` wherever both sides are stored.
    pub fn check(&self) -> Result<()> {
        let f = &self.field;
        let bad = |what: String| Err(Error::InvalidModule(format!("double complex: {what}")));
        for p in 0..=self.n_max {
            for q in 0..=self.n_max - p {
                if p + q < self.n_max {
                    if p < self.n_max - q && !self.horizontal[p + 1][q].mul(f, &self.horizontal[p][q]).is_zero() {
                        return bad(format!("hh ≠ 0 at ({p},{q})"));
                    }
                    if !self.vertical[p][q + 1].mul(f, &self.vertical[p][q]).is_zero() {
                        return bad(format!("vv ≠ 0 at ({p},{q})"));
                    }
                    let hv = self.horizontal[p][q + 1].mul(f, &self.vertical[p][q]);
                    let vh = self.vertical[p + 1][q].mul(f, &self.horizontal[p][q]);
                    if hv != vh {
                        return bad(format!("square at ({p},{q}) does not commute"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Start of block `p` inside `Tot^n` (blocks ordered by `p`), for
    /// `p ≤ n + 1`; the last entry is `dim Tot^n`.
    pub fn block_offsets(&self, n: usize) -> Vec<usize> {
        let mut offs = Vec::with_capacity(n + 2);
        let mut acc = 0;
        for p in 0..=n {
            offs.push(acc);
            acc += self.dim(p, n - p);
        }
        offs.push(acc);
        offs
    }

    pub fn total_dim(&self, n: usize) -> usize {
        *self.block_offsets(n).last().unwrap()
    }

    /// `d: Tot^n → Tot^{n+1}` for `n ≤ n_max`.
    pub fn total_differential(&self, n: usize) -> SparseMatrix<F::Elem> {
        assert!(n <= self.n_max);
        let f = &self.field;
        let (src, tgt) = (self.block_offsets(n), self.block_offsets(n + 1));
        let mut trip = Vec::new();
        for p in 0..=n {
            let q = n - p;
            for (r, row) in self.horizontal[p][q].data.iter().enumerate() {
                for (c, a) in row {
                    trip.push((tgt[p + 1] + r, src[p] + c, a.clone()));
                }
            }
            let negate = p % 2 == 1;
            for (r, row) in self.vertical[p][q].data.iter().enumerate() {
                for (c, a) in row {
                    let a = if negate { f.neg(a) } else { a.clone() };
                    trip.push((tgt[p] + r, src[p] + c, a));
                }
            }
        }
        SparseMatrix::from_triplets(f, tgt[n + 2], src[n + 1], trip)
    }

    /// `dim H^n(Tot)` for `n ≤ n_max`.
    pub fn total_cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.n_max).map(|n| self.total_differential(n).rank(&self.field)).collect();
        (0..=self.n_max).map(|n| self.total_dim(n) - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect()
    }

    /// Swap the roles of `p` and `q`.
    pub fn transpose(&self) -> Self {
        let n = self.n_max;
        let dims = (0..=n + 1).map(|q| (0..=n + 1 - q).map(|p| self.dims[p][q]).collect()).collect();
        let horizontal = (0..=n).map(|q| (0..=n - q).map(|p| self.vertical[p][q].clone()).collect()).collect();
        let vertical = (0..=n).map(|q| (0..=n - q).map(|p| self.horizontal[p][q].clone()).collect()).collect();
        DoubleComplex { field: self.field.clone(), n_max: n, dims, horizontal, vertical }
    }

    /// A single cochain complex placed in column 0 (vertical direction).
    pub fn single_column(field: F, n_max: usize, dims: &[usize], diffs: &[SparseMatrix<F::Elem>]) -> Result<Self> {
        if dims.len() < n_max + 2 || diffs.len() < n_max + 1 {
            return Err(Error::WindowTooSmall("column shorter than the window".into()));
        }
        let cols: Vec<Vec<usize>> = (0..=n_max + 1).map(|p| (0..=n_max + 1 - p).map(|q| if p == 0 { dims[q] } else { 0 }).collect()).collect();
        let horizontal = (0..=n_max).map(|p| (0..=n_max - p).map(|q| SparseMatrix::zeros(cols[p + 1][q], cols[p][q])).collect()).collect();
        let vertical = (0..=n_max).map(|p| (0..=n_max - p).map(|q| if p == 0 { diffs[q].clone() } else { SparseMatrix::zeros(0, 0) }).collect()).collect();
        DoubleComplex::new(field, n_max, cols, horizontal, vertical)
    }
}

/// `C^{p,q} = ⊕_{τ ∈ N_p(D)} C^q(F/τ_0; M∘π)`: horizontal faces from the
/// nerve of `D` with `d_0` acting by pullback along `F/α_1`, vertical
/// differential the cochain differential of the comma categories.
pub fn comma_bicomplex<F: Field>(fun: &CatFunctor, m: &CatModule<F>, window: Window) -> Result<DoubleComplex<F>> {
    window.check()?;
    if m.variance() != Variance::Right {
        return Err(Error::VarianceMismatch("the bicomplex takes a right module".into()));
    }
    if **fun.source() != **m.category() {
        return Err(Error::MismatchedBase("module does not live over the functor's source".into()));
    }
    let n_max = window.n_max;
    let top = n_max + 1;
    let f = m.field().clone();
    let d = fun.target();
    let commas = (0..d.num_objects()).map(|x| comma_category(fun, x, CommaSide::Over)).collect::<Result<Vec<_>>>()?;
    let columns: Vec<NerveComplex<F>> = commas
        .iter()
        .map(|comma| {
            let res = m.restrict(&comma.projection)?;
            let triv = CatModule::constant(res.category().clone(), f.clone(), Variance::Right);
            ext_complex(&triv, &res, top)
        })
        .collect::<Result<Vec<_>>>()?;
    let thetas: Vec<Vec<Matrix<F::Elem>>> = commas.iter().map(|comma| comma.pairs.iter().map(|&(c, _)| Matrix::identity(&f, m.dim(c))).collect()).collect();
    let mut transports: Vec<Option<CatFunctor>> = vec![None; d.num_morphisms()];
    for alpha in 0..d.num_morphisms() {
        if !d.is_identity(alpha) {
            transports[alpha] = Some(comma_transport(&commas[d.src(alpha)], &commas[d.tgt(alpha)], fun, alpha)?);
        }
    }
    let nerve = Nerve::new(d, top);

    // offsets[p][q][j]: start of chain j's block in C^{p,q}
    let offsets: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|p| {
            (0..=top - p)
                .map(|q| {
                    let mut acc = 0;
                    let mut offs = Vec::with_capacity(nerve.count(p) + 1);
                    for ch in nerve.level(p) {
                        offs.push(acc);
                        acc += columns[ch.first()].complex.dim(q);
                    }
                    offs.push(acc);
                    offs
                })
                .collect()
        })
        .collect();
    let dims: Vec<Vec<usize>> = offsets.iter().map(|col| col.iter().map(|o| *o.last().unwrap()).collect()).collect();

    let mut vertical = Vec::with_capacity(top);
    let mut horizontal = Vec::with_capacity(top);
    for p in 0..=n_max {
        let mut vcol = Vec::with_capacity(top - p);
        let mut hcol = Vec::with_capacity(top - p);
        for q in 0..=n_max - p {
            let mut trip = Vec::new();
            for (j, ch) in nerve.level(p).iter().enumerate() {
                let delta = columns[ch.first()].complex.link(q);
                let (r0, c0) = (offsets[p][q + 1][j], offsets[p][q][j]);
                for (r, row) in delta.data.iter().enumerate() {
                    for (c, a) in row {
                        trip.push((r0 + r, c0 + c, a.clone()));
                    }
                }
            }
            vcol.push(SparseMatrix::from_triplets(&f, dims[p][q + 1], dims[p][q], trip));

            let mut trip = Vec::new();
            for (j, tau) in nerve.level(p + 1).iter().enumerate() {
                let r0 = offsets[p + 1][q][j];
                if let Some(t) = nerve.face(d, p + 1, j, 0) {
                    let c0 = offsets[p][q][t];
                    let alpha = tau.morphisms[0];
                    let (d0, d1) = (d.src(alpha), d.tgt(alpha));
                    let g = transports[alpha].as_ref().expect("non-identity");
                    let pull = pullback_cochains(g, &columns[d1], &columns[d0], &thetas[d0], q);
                    for (r, row) in pull.data.iter().enumerate() {
                        for (c, a) in row {
                            trip.push((r0 + r, c0 + c, a.clone()));
                        }
                    }
                }
                let size = columns[tau.first()].complex.dim(q);
                for i in 1..=p + 1 {
                    if let Some(t) = nerve.face(d, p + 1, j, i) {
                        let c0 = offsets[p][q][t];
                        let s = if i % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                        for e in 0..size {
                            trip.push((r0 + e, c0 + e, s.clone()));
                        }
                    }
                }
            }
            hcol.push(SparseMatrix::from_triplets(&f, dims[p + 1][q], dims[p][q], trip));
        }
        vertical.push(vcol);
        horizontal.push(hcol);
    }
    DoubleComplex::new(f, n_max, dims, horizontal, vertical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fincat::FiniteCategory;
    use std::sync::Arc;

    #[test]
    fn window_guard() {
        assert!(Window { p_max: 2, q_max: 3, n_max: 3 }.check().is_err());
        assert!(Window::through(3).check().is_ok());
    }

    #[test]
    fn identity_functor_bicomplex() {
        let f = PrimeField::new(2).unwrap();
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |x, y| x <= y).unwrap());
        let m = CatModule::representable(c.clone(), 1, f).unwrap();
        let dc = comma_bicomplex(&CatFunctor::identity(c), &m, Window::through(2)).unwrap();
        dc.check().unwrap();
        assert_eq!(dc.total_cohomology_dims(), crate::homalg::cohomology_dims(&m, 2).unwrap());
        assert_eq!(dc.transpose().total_cohomology_dims(), dc.total_cohomology_dims());
    }
}
