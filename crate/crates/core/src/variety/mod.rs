//! Smooth projective varieties given as complete intersections in products
//! of projective spaces, with their Chow-ring intersection theory.

pub mod catalog;
pub mod chern;
pub mod chow;
pub mod model;

pub use catalog::{standard_catalog, standard_catalog_json, Catalog, CatalogEntry, Descriptor};
pub use chern::{
    chern_number, chern_numbers, chern_ring, evaluate_chern_polynomial, newton_sd, partition_label, partitions,
    s_number, s_number_newton, s_number_virtual_roots, tangent_chern, variety_chern_data, ChernData, ChernNumbers,
};
pub use chow::{chow_degree, Ambient, ChowClass};
pub use model::{CompleteIntersection, Variety};
