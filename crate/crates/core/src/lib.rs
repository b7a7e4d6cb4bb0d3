//! Finite partition calculus: arrow relations, homogeneous sets,
//! counterexample trees and prime-power codes.

pub mod arrow;
pub mod coloring;
pub mod error;
pub mod godel;
pub mod homogeneous;
pub mod monotone;
pub mod subset;
pub mod tree;

pub use arrow::{arrow_check, least_arrow, ArrowQuery, ArrowReport, SearchConfig};
pub use coloring::Coloring;
pub use error::{Infeasible, ParamError, SearchError};
pub use homogeneous::{find_homogeneous, verify_counterexample, HomogeneityWitness, VerifyAudit};
pub use monotone::monotone_subsequence;
pub use subset::{colex_rank, colex_unrank, FiniteSet};
pub use tree::{build_levels, is_restriction, konig_branch, CtxTree, TreeError, TreeLevel, TreeParams};
