//! Resolutions, Ext and Tor, duality, Koszul homology, series and growth.

pub mod complex;
pub mod ext;
pub mod golod;
pub mod growth;
pub mod koszul;
pub mod resolution;

pub use ext::{
    bass_numbers, ext_dims, ext_generator_counts, hom_dim_direct, tensor_dim_direct, tor_dims,
};
pub use golod::{golod_series, golod_series_from_homology};
pub use growth::{growth_report, GrowthReport};
pub use koszul::{koszul_homology, KoszulComplex};
pub use resolution::{betti_numbers, FreeResolution, ResolutionCache};
