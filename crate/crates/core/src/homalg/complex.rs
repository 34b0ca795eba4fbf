use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::ObjectChain;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Differentials raise the degree.
    Cochain,
    /// Differentials lower the degree.
    Chain,
}

/// Basis vector label: a chain and an index into the coefficient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub chain: ObjectChain,
    pub index: usize,
}

/// A bounded complex in degrees `0..=top`.
///
/// `links[k]` is the differential between degrees `k` and `k+1`: for a
/// cochain complex `C^k → C^{k+1}`, for a chain complex `C_{k+1} → C_k`.
/// Matrices act on column vectors.
#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    field: F,
    direction: Direction,
    dims: Vec<usize>,
    links: Vec<SparseMatrix<F::Elem>>,
    labels: Option<Vec<Vec<BasisLabel>>>,
}

impl<F: Field> Complex<F> {
    pub fn new(field: F, direction: Direction, dims: Vec<usize>, links: Vec<SparseMatrix<F::Elem>>) -> Result<Self> {
        if dims.is_empty() || links.len() + 1 != dims.len() {
            return Err(Error::InvalidModule("complex needs one differential per adjacent degree pair".into()));
        }
        for (k, d) in links.iter().enumerate() {
            let (rows, cols) = match direction {
                Direction::Cochain => (dims[k + 1], dims[k]),
                Direction::Chain => (dims[k], dims[k + 1]),
            };
            if d.rows != rows || d.cols != cols {
                return Err(Error::InvalidModule(format!("differential {k} has the wrong shape")));
            }
        }
        Ok(Complex { field, direction, dims, links, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<BasisLabel>>) -> Self {
        debug_assert!(labels.iter().zip(&self.dims).all(|(l, &d)| l.len() == d));
        self.labels = Some(labels);
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn labels(&self) -> Option<&[Vec<BasisLabel>]> {
        self.labels.as_deref()
    }

    pub fn link(&self, k: usize) -> &SparseMatrix<F::Elem> {
        &self.links[k]
    }

    /// Differential leaving degree `n`, if it lies inside the complex.
    pub fn outgoing(&self, n: usize) -> Option<&SparseMatrix<F::Elem>> {
        match self.direction {
            Direction::Cochain => self.links.get(n),
            Direction::Chain => n.checked_sub(1).map(|k| &self.links[k]),
        }
    }

    /// Differential arriving in degree `n`, if it lies inside the complex.
    pub fn incoming(&self, n: usize) -> Option<&SparseMatrix<F::Elem>> {
        match self.direction {
            Direction::Cochain => n.checked_sub(1).map(|k| &self.links[k]),
            Direction::Chain => self.links.get(n),
        }
    }

    /// Highest degree whose (co)homology is determined: the top degree lacks
    /// its outgoing (cochain) or incoming (chain) differential.
    pub fn last_exact_degree(&self) -> Option<usize> {
        self.top().checked_sub(1)
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for k in 0..self.links.len().saturating_sub(1) {
            let prod = match self.direction {
                Direction::Cochain => self.links[k + 1].mul(&self.field, &self.links[k]),
                Direction::Chain => self.links[k].mul(&self.field, &self.links[k + 1]),
            };
            if !prod.is_zero() {
                return Err(Error::InvalidModule(format!("d∘d ≠ 0 at differential {k}")));
            }
        }
        Ok(())
    }

    /// Ranks of all links, with clearing. Each link is read as the map
    /// raising the degree (a chain link is transposed). A coordinate that
    /// is the pivot of an echelon row of the incoming image maps into the
    /// span of the later coordinates, so it never adds to the next rank and
    /// is skipped.
    pub fn link_ranks(&self) -> Vec<usize> {
        let mut cleared = vec![false; self.dims[0]];
        let mut out = Vec::with_capacity(self.links.len());
        for (k, d) in self.links.iter().enumerate() {
            let images = match self.direction {
                Direction::Cochain => d.transpose().data,
                Direction::Chain => d.data.clone(),
            };
            let mut ech = Echelon::new(self.field.clone(), self.dims[k + 1]);
            ech.extend(images.into_iter().zip(&cleared).filter(|(_, &c)| !c).map(|(v, _)| v));
            cleared = (0..self.dims[k + 1]).map(|c| ech.has_pivot(c)).collect();
            out.push(ech.rank());
        }
        out
    }

    /// Dimensions of (co)homology in degrees `0..top`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks = self.link_ranks();
        (0..self.top())
            .map(|n| {
                let out = match self.direction {
                    Direction::Cochain => ranks[n],
                    Direction::Chain => n.checked_sub(1).map_or(0, |k| ranks[k]),
                };
                let inc = match self.direction {
                    Direction::Cochain => n.checked_sub(1).map_or(0, |k| ranks[k]),
                    Direction::Chain => ranks[n],
                };
                self.dims[n] - out - inc
            })
            .collect()
    }

    /// Echelon basis of (co)homology in degree `n < top`.
    pub fn homology_basis(&self, n: usize) -> Result<HomologyBasis<F>> {
        if n >= self.top() {
            return Err(Error::DegreeOverflow { requested: n, bound: self.top().saturating_sub(1) });
        }
        let f = &self.field;
        let dim = self.dims[n];
        let cycles = match self.outgoing(n) {
            Some(d) => d.kernel(f),
            None => (0..dim).map(|i| vec![(i, f.one())]).collect(),
        };
        let boundaries = match self.incoming(n) {
            Some(d) => d.columns(),
            None => Vec::new(),
        };
        Ok(HomologyBasis::new(f.clone(), dim, boundaries, cycles))
    }
}

/// A basis of `Z/B` chosen by echelon pivots: boundaries are inserted first,
/// then cycles in order; a cycle that creates a new pivot becomes a
/// representative.
#[derive(Clone, Debug)]
pub struct HomologyBasis<F: Field> {
    echelon: Echelon<F>,
    representatives: Vec<SparseVec<F::Elem>>,
    ambient: usize,
}

impl<F: Field> HomologyBasis<F> {
    pub fn new(field: F, ambient: usize, boundaries: Vec<SparseVec<F::Elem>>, cycles: Vec<SparseVec<F::Elem>>) -> Self {
        let mut echelon = Echelon::new(field.clone(), ambient);
        echelon.extend(boundaries);
        let mut representatives = Vec::new();
        for z in cycles {
            let tag = vec![(representatives.len(), field.one())];
            if echelon.insert_tagged(z.clone(), tag).is_some() {
                representatives.push(z);
            }
        }
        HomologyBasis { echelon, representatives, ambient }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn representatives(&self) -> &[SparseVec<F::Elem>] {
        &self.representatives
    }

    /// Coordinates of the class of a cycle; `None` if `v` is not a cycle.
    pub fn coordinates(&self, v: &[(usize, F::Elem)]) -> Option<Vec<F::Elem>> {
        let f = self.echelon.field();
        let (res, tag) = self.echelon.reduce_tagged(v.to_vec(), Vec::new());
        if !res.is_empty() {
            return None;
        }
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in tag {
            out[i] = f.neg(&a);
        }
        Some(out)
    }

    pub fn is_boundary(&self, v: &[(usize, F::Elem)]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|a| self.echelon.field().is_zero(a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn circle_cohomology() {
        // Two vertices, two edges, both edges from v0 to v1.
        let f = PrimeField::new(3).unwrap();
        let d0 = SparseMatrix::from_triplets(&f, 2, 2, vec![(0, 0, 2), (0, 1, 1), (1, 0, 2), (1, 1, 1)]);
        let c = Complex::new(f, Direction::Cochain, vec![2, 2, 0], vec![d0, SparseMatrix::zeros(0, 2)]).unwrap();
        c.check_square_zero().unwrap();
        assert_eq!(c.homology_dims(), vec![1, 1]);
        let b = c.homology_basis(1).unwrap();
        assert_eq!(b.dim(), 1);
        let rep = b.representatives()[0].clone();
        assert_eq!(b.coordinates(&rep).unwrap(), vec![1]);
        // Coboundary of vertex 0 is trivial in cohomology.
        assert!(b.is_boundary(&[(0, 2), (1, 2)]));
    }
}
