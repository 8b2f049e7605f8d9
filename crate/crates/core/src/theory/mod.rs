//! Oriented theories on products of projective spaces, built from a
//! coefficient ring and a formal group law.

pub mod checks;
pub mod instance;
pub mod push;

pub use checks::{cross_theory_check, k0_c1_check, pb_basis_check};
pub use instance::{c1_line_bundle, extract_fgl, TheoryKind, TheoryRing, TheorySpec};
pub use push::{
    euler_characteristic_line_bundle, external_product, generalized_binomial, k_class, pullback_projection,
    pushforward_point, pushforward_projection, structure_sheaf_euler_characteristic,
};
