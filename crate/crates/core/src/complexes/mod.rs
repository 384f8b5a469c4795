//! Minimal complexes of projectives `C_m(proj A)`: validation, cohomology,
//! minimization, morphisms, isomorphism and indecomposability.

mod complex;
mod invariants;
mod minimize;
mod morphisms;
mod projmap;

pub use complex::{shift_embed, validate, ProjComplex, Violation};
pub use invariants::{check_dim_bound, cohomology, hr_dim_sandwich, CohomologyProfile, DimBound, DimBoundReport, Sandwich};
pub use minimize::minimize;
pub use morphisms::{
    chain_maps, homotopies, is_indecomposable, is_isomorphic, ChainMap, IndecResult, IsoCertificate, IsoMode,
    IsoResult, SearchConfig,
};
pub use projmap::ProjMap;
