//! Broadcast independence of locally uniform 2-lobsters: a closed form
//! computed from the leaf census, an explicit optimal broadcast, and an
//! exact solver for small trees to check both against.

pub mod beta_star;
pub mod classify;
pub mod conformance;
pub mod construct;
pub mod dot;
pub mod genlab;
pub mod lobster;
pub mod oracle;
pub mod tree;

pub use beta_star::{beta_star, BetaStarError, BetaStarReport, Nus};
pub use classify::{classify_all, select_runs, SpineRun, SubtreeType};
pub use construct::{construct, ConstructError, ConstructionTrace};
pub use lobster::{
    build_tree_from_spec, recognize_lobster, validate, LobsterError, LobsterSpec, LobsterStructure,
    SubtreeSpec,
};
pub use oracle::{exact_beta_b, OracleError, OracleResult, ORACLE_MAX_VERTICES};
pub use tree::{BroadcastAssignment, Tree, TreeError, Vertex};
