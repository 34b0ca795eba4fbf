//! Regular extensions of categories, kernel coefficient modules and the
//! spectral sequences built from them.

mod ei;
mod kernel;
mod regular;
mod spectral;

pub use ei::{regular_ei_e2, subdivision_e2, EiVariant, SubdivisionReport};
pub use kernel::{comma_kernel_comparison, kernel_coefficient_module, kernel_coefficient_modules, kernel_modules_checked, lift_independent, KernelKind};
pub use regular::{analyze_extension, Counterexample, LiftSection, Orientation, RegularExtension, Verdict};
pub use spectral::{extension_e2, extension_pages, matching_shapes, E2Report, ExtensionShape, FullPages};
