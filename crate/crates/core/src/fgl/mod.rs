//! Formal group laws: the universal law over the rationalized Lazard ring,
//! the additive and multiplicative laws, and the maps between them.

pub mod law;
pub mod lazard;
pub mod ringmap;

pub use law::{
    additive_specialization, beta_ring, builtin_fgl, check_fgl_axioms, formal_inverse, lazard_ring,
    multiplicative_specialization, n_series, universal_fgl, universal_logarithm, AxiomReport, AxiomResult,
    AxiomWitness, BuiltinKind, FormalGroupLaw, FormalGroupLawJson, DEFAULT_ORDER,
};
pub use lazard::{lazard_eq, LazardElement, LazardElementJson};
pub use ringmap::RingMap;
