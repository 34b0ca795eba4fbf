//! Exact linear algebra: dense matrices for structure maps, sparse
//! elimination for complexes and relation systems.

mod dense;
mod sparse;

pub use dense::Matrix;
pub use sparse::{axpy, collect_sparse, dense_to_sparse, scale, sparse_to_dense, Echelon, Rref, SparseMatrix, SparseVec};
