//! Exact point counting for spanning-tree polynomials over finite fields.
//!
//! Given a graph `G` with one variable per edge, `Q_G` is the sum over
//! spanning trees of the product of their edge variables and `P_G` the sum
//! over tree complements. This crate counts the assignments over `GF(q)`
//! that make these polynomials nonzero, together with the related
//! matrix-counting problems (symmetric rank censuses, matrices confined to a
//! support pattern, ordered bases orthogonal under a scalar product, matroid
//! basis polynomials), the closed forms they are compared against, and exact
//! interpolation in `q`.
//!
//! The crate is `no_std` and only needs `alloc`. Every exhaustive counter is
//! expressed as a [`count::ShardedCount`] job: an odometer over variable
//! assignments that can be split into disjoint prefix shards. Callers choose
//! how shards are executed through an [`count::Executor`]; the crate itself
//! only ships the sequential one.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod budget;
pub mod count;
pub mod counting;
pub mod error;
pub mod fit;
pub mod formulas;
pub mod gf;
pub mod graph;
pub mod linalg;
pub mod matroid;
pub mod odometer;
pub mod template;
pub mod treepoly;

pub use budget::Budget;
pub use count::{Engine, Executor, Sequential};
pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElem, PrimePower};
pub use graph::{Family, Graph};
