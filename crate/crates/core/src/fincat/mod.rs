//! Finite categories, functors, natural transformations, comma categories,
//! nerves, EI structure and subdivision.

mod category;
mod chains;
mod comma;
mod ei;
mod functor;
mod subdivision;

pub use category::{FiniteCategory, Morphism, RawCategory, RawMorphism};
pub use chains::{nondegenerate_chains, Nerve, ObjectChain};
pub use comma::{comma_category, comma_transport, Comma, CommaSide};
pub use ei::{ei_analysis, poset_projection, EiAnalysis};
pub use functor::{CatFunctor, NatTransformation, RawFunctor, RawTransformation};
pub use subdivision::{subdivide, SubdivisionData};
