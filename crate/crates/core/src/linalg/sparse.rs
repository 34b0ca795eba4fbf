use std::collections::HashMap;

use crate::field::Field;

/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c*b` for sorted sparse vectors.
pub fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Build a sorted sparse vector from unsorted entries, summing repeats.
pub fn collect_sparse<F: Field>(field: &F, mut entries: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(&last.1, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

pub fn dense_to_sparse<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter().enumerate().filter(|(_, x)| !field.is_zero(x)).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense<F: Field>(field: &F, v: &[(usize, F::Elem)], len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Row-major sparse matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_triplets<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize, triplets: Vec<(usize, usize, E)>) -> Self {
        let mut per_row: Vec<Vec<(usize, E)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            debug_assert!(r < rows && c < cols, "triplet ({r},{c}) out of {rows}x{cols}");
            per_row[r].push((c, v));
        }
        let data = per_row.into_iter().map(|row| collect_sparse(field, row)).collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut out: Vec<SparseVec<E>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data: out }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec<E>> {
        self.transpose().data
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[(usize, E)]) -> SparseVec<E> {
        let dense: HashMap<usize, &E> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = field.zero();
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    acc = field.add(&acc, &field.mul(a, x));
                }
            }
            if !field.is_zero(&acc) {
                out.push((r, acc));
            }
        }
        out
    }

    /// `self * other`
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &SparseMatrix<E>) -> SparseMatrix<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in sparse product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec<E> = Vec::new();
                for (k, a) in row {
                    acc = axpy(field, &acc, a, &other.data[*k]);
                }
                acc
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }

    fn echelon<F: Field<Elem = E>>(&self, field: &F) -> Echelon<F> {
        let mut ech = Echelon::new(field.clone(), self.cols);
        ech.extend(self.data.iter().cloned());
        ech
    }

    /// Eliminates along the shorter side.
    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        if self.rows > self.cols {
            self.transpose().echelon(field).rank()
        } else {
            self.echelon(field).rank()
        }
    }

    /// Basis of the null space, indexed by free columns in increasing order.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<SparseVec<E>> {
        self.echelon(field).into_rref().kernel_basis()
    }

    pub fn get<F: Field<Elem = E>>(&self, field: &F, r: usize, c: usize) -> E {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => field.zero(),
        }
    }
}

/// Incremental row echelon form. Every stored row has a distinct leading
/// column with coefficient one. Rows may optionally carry a provenance tag,
/// a sparse vector that is transformed alongside the row.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    tags: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<usize>,
}

const NO_PIVOT: usize = usize::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), tags: Vec::new(), pivot_row: vec![NO_PIVOT; ncols] }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row.get(col).is_some_and(|&r| r != NO_PIVOT)
    }

    /// Reduce `v` against the stored rows; returns the residual and the
    /// transformed tag `tag - Σ c_i tag_i`.
    pub fn reduce_tagged(&self, v: SparseVec<F::Elem>, tag: SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut cur = v;
        let mut tag = tag;
        let mut i = 0;
        while i < cur.len() {
            let col = cur[i].0;
            let r = self.pivot_row[col];
            if r != NO_PIVOT {
                let c = f.neg(&cur[i].1);
                let tail = axpy(f, &cur[i..], &c, &self.rows[r]);
                cur.truncate(i);
                cur.extend(tail);
                if !self.tags.is_empty() {
                    tag = axpy(f, &tag, &c, &self.tags[r]);
                }
            } else {
                i += 1;
            }
        }
        (cur, tag)
    }

    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_tagged(v, Vec::new()).0
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Returns the new pivot column when `v` is independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> Option<usize> {
        self.insert_tagged(v, Vec::new())
    }

    pub fn insert_tagged(&mut self, v: SparseVec<F::Elem>, tag: SparseVec<F::Elem>) -> Option<usize> {
        debug_assert!(v.last().is_none_or(|e| e.0 < self.ncols));
        let tracking = !tag.is_empty() || !self.tags.is_empty();
        if tracking && self.tags.len() < self.rows.len() {
            self.tags.resize(self.rows.len(), Vec::new());
        }
        let (res, tag) = self.reduce_tagged(v, tag);
        if res.is_empty() {
            return None;
        }
        let f = &self.field;
        let lead = res[0].0;
        let inv = f.inv(&res[0].1);
        let row = scale(f, &inv, &res);
        self.pivot_row[lead] = self.rows.len();
        self.rows.push(row);
        if tracking {
            self.tags.push(scale(f, &inv, &tag));
        }
        Some(lead)
    }

    /// Insert many vectors at once. Sparse ones go first, which keeps
    /// fill-in down; the span does not depend on the order.
    pub fn extend(&mut self, vs: impl IntoIterator<Item = SparseVec<F::Elem>>) {
        let mut vs: Vec<_> = vs.into_iter().collect();
        vs.sort_by_key(|v| v.len());
        for v in vs {
            self.insert(v);
        }
    }

    /// Back-substitute to reduced row echelon form.
    pub fn into_rref(self) -> Rref<F> {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        let mut rows = self.rows;
        let mut tags = self.tags;
        let tracking = !tags.is_empty();
        if tracking {
            tags.resize(rows.len(), Vec::new());
        }
        // Rows with larger pivots are already reduced when we reach a row.
        for &r in &order {
            let mut cur = std::mem::take(&mut rows[r]);
            let mut tag = if tracking { std::mem::take(&mut tags[r]) } else { Vec::new() };
            let mut i = 1;
            while i < cur.len() {
                let col = cur[i].0;
                match self.pivot_row[col] {
                    s if s != r && s != NO_PIVOT => {
                        let c = f.neg(&cur[i].1);
                        let tail = axpy(&f, &cur[i..], &c, &rows[s]);
                        cur.truncate(i);
                        cur.extend(tail);
                        if tracking {
                            tag = axpy(&f, &tag, &c, &tags[s]);
                        }
                    }
                    _ => i += 1,
                }
            }
            rows[r] = cur;
            if tracking {
                tags[r] = tag;
            }
        }
        let mut idx: Vec<usize> = (0..rows.len()).collect();
        idx.sort_by_key(|&r| rows[r][0].0);
        let sorted_rows: Vec<_> = idx.iter().map(|&r| rows[r].clone()).collect();
        let sorted_tags: Vec<_> = if tracking { idx.iter().map(|&r| tags[r].clone()).collect() } else { Vec::new() };
        let pivots: Vec<usize> = sorted_rows.iter().map(|r| r[0].0).collect();
        let pivot_index = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Rref { field: f, ncols: self.ncols, rows: sorted_rows, tags: sorted_tags, pivots, pivot_index }
    }
}

/// Reduced row echelon form, rows sorted by pivot column.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    tags: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_index: HashMap<usize, usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn tags(&self) -> &[SparseVec<F::Elem>] {
        &self.tags
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivot_index.contains_key(c)).collect()
    }

    /// Eliminate all pivot coordinates of `v`; one pass suffices in RREF.
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut out: SparseVec<F::Elem> = v.to_vec();
        for (col, a) in v {
            if let Some(&r) = self.pivot_index.get(col) {
                out = axpy(f, &out, &f.neg(a), &self.rows[r]);
            }
        }
        out
    }

    pub fn kernel_basis(&self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let mut deps: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
        for row in &self.rows {
            let p = row[0].0;
            for (c, a) in &row[1..] {
                deps.entry(*c).or_default().push((p, f.neg(a)));
            }
        }
        self.free_columns()
            .into_iter()
            .map(|c| {
                let mut v = deps.remove(&c).unwrap_or_default();
                v.push((c, f.one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}
