//! Characteristic-number invariants: the `s_d` homomorphism, Adams
//! divisibility, coordinates of varieties in the rationalized Lazard ring
//! and verification of degree formulas.

pub mod coords;
pub mod degree;
pub mod report;
pub mod sd;

pub use coords::{
    class_in_lazard, class_in_lazard_bounded, formal_chern_numbers, formal_class_in_lazard, projective_product,
    LazardCoordinates, PartitionBasis, DEFAULT_DIMENSION_BOUND,
};
pub use degree::{degree_defect, gdf_verify, rost_check, MorphismDatum};
pub use report::{exact, exact_int, Report};
pub use sd::{
    adams_check, adams_prime, adams_sweep, is_adams_dimension, is_prime, product_sweep, s_d_hom, t_d1, AdamsResult,
    AdamsRow, FormalClass, ProductRow,
};
