mod change;
mod hom;
mod module;
mod tensor;

pub use change::{coinduce, induce, induce_map, induction_exact_on_probes, Coinduced, Induced};
pub use hom::{hom_space, representable_element, representable_map, HomSpace};
pub use module::{solve_columns, CatModule, ModuleMap, RawEntry, RawModule, Variance};
pub use tensor::{tensor, TensorPresentation};
