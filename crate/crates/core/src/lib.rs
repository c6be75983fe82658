//! Optimal cyclic ladder lotteries.
//!
//! A cyclic ladder lottery is a set of `n` vertical lines on a cylinder with
//! horizontal bars between cyclically adjacent lines; read top to bottom it
//! sorts the identity into a target permutation. Equivalently it is an
//! arrangement of `n` pseudolines on a cylinder, one route per element.
//!
//! The crate provides
//!
//! - [`perm`] and [`displacement`]: permutations, displacement vectors and the
//!   cyclic inversion arithmetic (crossing numbers, `inv`, `c_min`, optimal
//!   vectors);
//! - [`lottery`]: bar words in canonical form, routes, tangled triples with
//!   chirality and minimality, braid moves and lottery construction from a
//!   vector;
//! - [`reconfig`]: shortest reconfiguration under braid moves and under
//!   max-min contractions;
//! - [`enumerate`]: reverse-search enumeration of lotteries of a fixed vector,
//!   of optimal vectors, and of all optimal lotteries of a permutation;
//! - [`oracle`]: brute-force ground truth used by the test suites and by the
//!   `verify` command;
//! - [`render`]: SVG drawings.

pub mod displacement;
pub mod enumerate;
mod error;
pub mod lottery;
pub mod oracle;
pub mod perm;
pub mod reconfig;
pub mod render;

pub use displacement::{CrossingNumber, DisplacementVector};
pub use error::{Error, Result};
pub use lottery::{Chirality, CyclicLadderLottery, TangledTriple};
pub use perm::{wrap_position, Permutation};
pub use reconfig::{ReconfigSequence, ReconfigStep};
