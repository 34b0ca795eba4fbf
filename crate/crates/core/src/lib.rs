pub mod error;
pub mod field;
pub mod linalg;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub mod extension;
pub mod fincat;
pub mod groupcats;
pub mod homalg;
pub mod modcat;

pub use fincat::{CatFunctor, FiniteCategory, NatTransformation, ObjectChain};
pub use modcat::{CatModule, ModuleMap, Variance};
