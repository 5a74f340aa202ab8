//! Verification tools for counting graphs without large cliques.
//!
//! The crate bundles four layers that cross-check each other:
//!
//! - [`graphs`]: labeled graphs on `{0..n-1}` stored as edge bitsets, Turán
//!   graphs and exact clique counting.
//! - [`oracle`]: exhaustive ground truth at small `n` (number of `K_l`-free
//!   graphs, minimum clique counts at a fixed edge budget, maximal free
//!   families and container-family validation).
//! - [`clique_hypergraph`] and [`certificate`]: co-degree statistics of the
//!   hypergraph whose hyperedges are the edge sets of `K_l` copies, and a
//!   log-domain evaluator for the container-theorem hypotheses and every
//!   step of the argument that turns them into a small graph family.
//! - [`bounds`]: closed-form Turán, supersaturation and final counting bounds.
//!
//! Quantities that outgrow machine integers are carried as
//! [`LogMagnitude`]s, and the vertex count itself may be given as `log2 n`
//! through [`Order::Log2`].
//!
//! The [`cli`] module wires everything into report-producing commands; the
//! `kfree` binary is a thin wrapper around [`cli::run`].

pub mod bounds;
pub mod certificate;
pub mod clique_hypergraph;
pub mod cli;
mod error;
pub mod graphs;
mod magnitude;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use magnitude::{ln_biguint, ln_ratio, LogMagnitude, Order};
