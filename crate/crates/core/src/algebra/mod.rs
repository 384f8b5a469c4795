//! Bound quiver algebras: quivers, presentations, normal-form bases, the
//! bounded-category view and the fundamental group.

mod basis;
mod category;
pub mod pi1;
mod quiver;

pub use basis::{AlgElem, Algebra};
pub use category::{BoundedCategory, CategoryCheck};
pub use pi1::{
    fundamental_group_report, is_simply_connected, minimal_relations, Connectedness, FundamentalGroupReport,
    GroupVerdict,
};
pub use quiver::{Arrow, PathWord, Presentation, Quiver, Relation, DEFAULT_LENGTH_CAP};
