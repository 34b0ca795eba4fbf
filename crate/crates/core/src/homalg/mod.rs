mod cochains;
mod cohomology;
mod comma;
mod complex;
mod double;
mod export;
mod resolution;
mod spectral;

pub use cochains::{ext_complex, pullback_cochains, push_chain, push_chains, tor_complex, NerveComplex, NerveShape, MAX_DEGREE};
pub use cohomology::{
    all_invertible, cat_cohomology, cat_homology, coefficient_change, coefficient_map, cohomology_dims, ext_dims, ext_groups, first_homotopy_holds,
    homology_dims, induced_map, limit_dim, Graded, MapDirection,
};
pub use comma::{comma_coefficient_module, comma_coefficient_modules, CommaCoefficients};
pub use complex::{BasisLabel, Complex, Direction, HomologyBasis};
pub use double::{comma_bicomplex, DoubleComplex, Window};
pub use export::{graded_csv, graded_table, page_csv, page_table};
pub use resolution::{bar_resolution, ext_via_resolution, tor_groups, tor_via_resolution, BarResolution, TorGroups};
pub use spectral::{spectral_pages, Filtration, SpectralPage, SpectralPages};
