use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homalg::double::DoubleComplex;
use crate::linalg::{Echelon, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    Column,
    Row,
}

/// One page over the triangle `p + q ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPage {
    /// Page index; the limit page carries `r = None`.
    pub r: Option<usize>,
    pub n_max: usize,
    /// `dims[p][q]` for `p + q ≤ n_max`.
    pub dims: Vec<Vec<usize>>,
    /// Rank of `d_r` leaving `(p, q)`; all zero on the limit page.
    pub ranks: Vec<Vec<usize>>,
    /// Per total degree: no `d_r` enters or leaves it.
    pub stable: Vec<bool>,
}

impl SpectralPage {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.ranks.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=n} dim E^{p,q}` for `n ≤ n_max`.
    pub fn totals(&self) -> Vec<usize> {
        (0..=self.n_max).map(|n| (0..=n).map(|p| self.dim(p, n - p)).sum()).collect()
    }

    pub fn has_nonzero_differential(&self) -> bool {
        self.ranks.iter().flatten().any(|&r| r > 0)
    }

    /// Nonzero entries lie in a single row or a single column.
    pub fn is_concentrated(&self) -> bool {
        let cells: Vec<(usize, usize)> =
            (0..=self.n_max).flat_map(|p| (0..=self.n_max - p).map(move |q| (p, q))).filter(|&(p, q)| self.dim(p, q) > 0).collect();
        cells.iter().all(|c| c.0 == cells.first().map_or(0, |f| f.0)) || cells.iter().all(|c| c.1 == cells.first().map_or(0, |f| f.1))
    }
}

/// Pages of the spectral sequence of a double complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPages {
    pub filtration: Filtration,
    pub n_max: usize,
    /// `E_1 … E_{r_max}`.
    pub pages: Vec<SpectralPage>,
    pub infinity: SpectralPage,
    /// `dim H^n(Tot)` for `n ≤ n_max`.
    pub abutment: Vec<usize>,
    /// `E_{r+1} = ker d_r / im d_r` holds between all consecutive pages.
    pub recurrence_ok: bool,
}

impl SpectralPages {
    pub fn page(&self, r: usize) -> Option<&SpectralPage> {
        self.pages.iter().find(|p| p.r == Some(r))
    }

    /// Limit totals agree with the abutment.
    pub fn converges(&self) -> bool {
        self.infinity.totals() == self.abutment
    }

    /// Independent re-check of the page recurrence from stored tables.
    pub fn revalidate(&self) -> bool {
        for w in self.pages.windows(2) {
            if !recurrence_holds(&w[0], &w[1]) {
                return false;
            }
        }
        // Beyond the last computed page the limit is reached once ranks vanish.
        if let Some(last) = self.pages.last() {
            if !last.has_nonzero_differential() && last.dims != self.infinity.dims {
                return false;
            }
        }
        self.converges()
    }
}

fn recurrence_holds(page: &SpectralPage, next: &SpectralPage) -> bool {
    let r = page.r.unwrap_or(0);
    for p in 0..=page.n_max {
        for q in 0..=page.n_max - p {
            let kernel = page.dim(p, q) - page.rank(p, q);
            let entering = if p >= r { page.rank(p - r, q + r - 1) } else { 0 };
            if kernel < entering || next.dim(p, q) != kernel - entering {
                return false;
            }
        }
    }
    true
}

/// Rank bookkeeping on the filtered total complex. Degree `n` has its
/// coordinates ordered by column, so `F^p Tot^n` is a suffix.
///
/// Every page entry is an alternating sum of corner ranks
/// `R_n(a, b) = rank(F^a Tot^n → Tot^{n+1} / F^b Tot^{n+1})`:
/// `Z_r^p = dim F^p − R(p, p+r)` and `d F^{p−s} ∩ F^p = R(p−s, ∞) − R(p−s, p)`.
struct Filtered<'a, F: Field> {
    dc: &'a DoubleComplex<F>,
    /// Images of the coordinate vectors of `Tot^n`.
    images: Vec<Vec<SparseVec<F::Elem>>>,
    offsets: Vec<Vec<usize>>,
    /// `(n, b)` to `R_n(a, b)` for every block index `a`.
    corners: HashMap<(usize, usize), Vec<usize>>,
}

impl<'a, F: Field> Filtered<'a, F> {
    fn new(dc: &'a DoubleComplex<F>) -> Self {
        let n_max = dc.n_max();
        let images = (0..=n_max).map(|n| dc.total_differential(n).transpose().data).collect();
        let offsets = (0..=n_max + 1).map(|n| dc.block_offsets(n)).collect();
        Filtered { dc, images, offsets, corners: HashMap::new() }
    }

    fn block(&self, n: usize, p: i64) -> usize {
        p.clamp(0, (self.offsets[n].len() - 1) as i64) as usize
    }

    /// `R_n(a, b)`; zero below degree zero.
    fn corner(&mut self, n: i64, a: i64, b: i64) -> usize {
        if n < 0 {
            return 0;
        }
        let n = n as usize;
        let (a, b) = (self.block(n, a), self.block(n + 1, b));
        if let Some(r) = self.corners.get(&(n, b)) {
            return r[a];
        }
        let hi = self.offsets[n + 1][b];
        let offs = &self.offsets[n];
        let mut ech = Echelon::new(self.dc.field().clone(), hi);
        let mut ranks = vec![0; offs.len()];
        // add source blocks from the deepest filtration level outwards
        for k in (0..offs.len() - 1).rev() {
            ech.extend(self.images[n][offs[k]..offs[k + 1]].iter().map(|v| v.iter().take_while(|e| e.0 < hi).cloned().collect()));
            ranks[k] = ech.rank();
        }
        let out = ranks[a];
        self.corners.insert((n, b), ranks);
        out
    }

    /// `(dim E_r^{p,q}, rank d_r)` at total degree `n = p + q`.
    fn cell(&mut self, p: usize, q: usize, r: usize) -> (usize, usize) {
        let n = (p + q) as i64;
        let (p, r) = (p as i64, r as i64);
        let dim = self.dc.dim(p as usize, q);
        let e = dim + self.corner(n, p + 1, p + r) + self.corner(n - 1, p - r + 1, p) - self.corner(n, p, p + r) - self.corner(n - 1, p - r + 1, p + 1);
        let rank = self.corner(n, p, p + r + 1) + self.corner(n, p + 1, p + r) - self.corner(n, p, p + r) - self.corner(n, p + 1, p + r + 1);
        (e, rank)
    }
}

/// Pages `E_1 … E_{r_max}` and `E_∞` for total degrees `≤ n_max`.
pub fn spectral_pages<F: Field>(dc: &DoubleComplex<F>, filtration: Filtration, r_max: usize) -> Result<SpectralPages> {
    if r_max == 0 {
        return Err(Error::WindowTooSmall("at least one page must be requested".into()));
    }
    let transposed;
    let dc = match filtration {
        Filtration::Column => dc,
        Filtration::Row => {
            transposed = dc.transpose();
            &transposed
        }
    };
    let n_max = dc.n_max();
    let mut fil = Filtered::new(dc);
    let r_inf = n_max + 2;
    let page_at = |r: usize, fil: &mut Filtered<F>| -> SpectralPage {
        let mut dims = Vec::with_capacity(n_max + 1);
        let mut ranks = Vec::with_capacity(n_max + 1);
        for p in 0..=n_max {
            let mut dcol = Vec::new();
            let mut rcol = Vec::new();
            for q in 0..=n_max - p {
                let (e, rank) = fil.cell(p, q, r);
                dcol.push(e);
                rcol.push(rank);
            }
            dims.push(dcol);
            ranks.push(rcol);
        }
        let stable = (0..=n_max)
            .map(|n| {
                let leaving = (0..=n).all(|p| ranks[p][n - p] == 0);
                let entering = n == 0 || (0..n).all(|p| ranks[p][n - 1 - p] == 0);
                leaving && entering
            })
            .collect();
        SpectralPage { r: Some(r), n_max, dims, ranks, stable }
    };
    let pages: Vec<SpectralPage> = (1..=r_max).map(|r| page_at(r, &mut fil)).collect();
    let mut infinity = page_at(r_inf, &mut fil);
    infinity.r = None;
    debug_assert!(!infinity.has_nonzero_differential());
    let abutment = dc.total_cohomology_dims();
    let recurrence_ok = pages.windows(2).all(|w| recurrence_holds(&w[0], &w[1]));
    Ok(SpectralPages { filtration, n_max, pages, infinity, abutment, recurrence_ok })
}
