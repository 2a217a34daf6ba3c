//! Exact verification of the multiplicative McKay correspondence for ADE
//! quotient surface singularities.
//!
//! Everything is computed over cyclotomic fields with arbitrary-precision
//! rationals: the finite subgroups of SL₂(ℂ), their character tables, McKay
//! graphs, the resolution and orbifold rings over a singular point, and the
//! correspondence matrix between them.
//!
//! ```
//! use mckay_core::{verify_local, AdeLabel, LocalModel, DEFAULT_SEED};
//!
//! let model = LocalModel::from_label(AdeLabel::D(4), DEFAULT_SEED).unwrap();
//! assert!(verify_local(&model).pass);
//! ```

pub mod ade;
pub mod algebra;
pub mod chartab;
pub mod corpus;
pub mod correspondence;
pub mod cyclo;
pub mod dynkin;
pub mod error;
pub mod global;
pub mod groups;
pub mod linalg;
pub mod orbifold;
pub mod parallel;
pub mod resolution;

pub use ade::AdeLabel;
pub use algebra::{Element, GradedAlgebra};
pub use chartab::{character_table, mckay_graph, CharacterTable, McKayGraph, DEFAULT_SEED};
pub use corpus::{run_corpus, CorpusReport};
pub use correspondence::{
    char_minor_determinant, phi_local, verify_local, CorrespondenceMap, LocalModel,
    VerificationReport,
};
pub use cyclo::{integer_sqrt_embed, CycNum};
pub use error::{Error, Result};
pub use global::{assemble_global, parse_surface, verify_global, GlobalReport, SurfaceModel};
pub use groups::{
    build_binary_polyhedral, conjugacy_structure, group_from_cayley, parse_group, ConjugacyStructure,
    FiniteGroup, Mat2,
};
pub use linalg::CycMatrix;
