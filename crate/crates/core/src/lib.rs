//! Elegant prime labelings of paths and small graphs.
//!
//! A labeling of a graph with `r` edges is *elegant* when it assigns distinct
//! primes from the first `r + 1` odd primes `3, 5, 7, ...` to the vertices so
//! that the absolute label differences along the edges are exactly
//! `2, 4, ..., 2r`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains:
//!
//! - [`primes`]: the pool of odd primes with rank lookup;
//! - [`pathstate`]: admissible paths with free-prime / free-gap bookkeeping;
//! - [`transforms`]: admissibility-preserving rewrites of paths;
//! - [`search`]: the randomized constructions of elegant paths;
//! - [`oracle`]: exhaustive enumeration for small targets;
//! - [`graphs`]: labelings of arbitrary small graphs.
#![no_std]

extern crate alloc;

pub mod graphs;
pub mod oracle;
pub mod pathstate;
pub mod primes;
pub mod search;
pub mod transforms;

pub use pathstate::{
    verify_elegant, verify_sequence, End, PathError, PathState, SplitView, VerifyError,
};
pub use primes::PrimePool;
