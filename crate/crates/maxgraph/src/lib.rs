//! maxgraph computes metric-geometric invariants of graphs presented through
//! neighbor oracles — possibly infinite ones — together with the centered
//! Hardy-Littlewood and spherical maximal operators on finitely supported
//! functions. Everything that decides a pass/fail is exact: distances, balls
//! and spheres come from layered BFS, masses and averages are arbitrary-
//! precision rationals, and suprema over infinite vertex sets are truncated
//! to explicit windows whose values are reported as certified lower bounds.
//!
//! The crate ships the graph families used throughout the test and
//! verification suites (complete/star/linear/cycle graphs, a block sum of
//! growing complete graphs and its shifted variant, the k-regular tree, the
//! infinite comb, the steplike dyadic tree, and user edge lists) plus a CLI
//! (`maxgraph`) that exposes the operations and the verification harness.

pub mod bfs;
pub mod error;
pub mod families;
pub mod func;
pub mod harness;
pub mod indices;
pub mod key;
pub mod maximal;
pub mod oracle;
pub mod overlap;
pub mod par;
pub mod ratio;
pub mod report;
pub mod spherical;

pub use bfs::{ball, distance, eccentricity_to_set, sphere, BallRecord, Distance, Limits};
pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec};
pub use func::FinSupFn;
pub use key::VertexKey;
pub use oracle::GraphOracle;
pub use par::ExecMode;
