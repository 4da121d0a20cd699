//! Random surfaces built by gluing `2N` oriented triangles along their sides.
//!
//! A gluing is a perfect matching on the `6N` triangle sides. Together with the
//! fixed permutation `sigma = (1 2 3)(4 5 6)...` that cycles the sides of each
//! triangle, the matching (as an involution `tau`) determines a cubic fat graph,
//! and the cycles of `sigma * tau` (apply `tau`, then `sigma`) are the
//! left-hand-turn cycles, i.e. the cusps of the glued surface.
//!
//! The crate is organised by capability:
//!
//! - [`perm`] and [`gluing`]: permutations, pairings, fat graphs, genus.
//! - [`words`]: L/R turn words, their equivalence classes, traces and lengths.
//! - [`census`]: circuits on fat graphs and the counts `Z_[w]`.
//! - [`exact`]: exhaustive ground truth for small `N`.
//! - [`characters`]: symmetric-group characters and maximal-genus counts.
//! - [`stats`]: Monte Carlo censuses under genus conditioning and closed-form
//!   systole laws.
//! - [`report`] and [`cli`]: report persistence and the command-line front end.

#![forbid(unsafe_code)]

pub mod census;
pub mod characters;
pub mod cli;
mod error;
pub mod exact;
pub mod gluing;
pub mod perm;
pub mod report;
pub mod stats;
pub mod words;

pub use error::{Error, Result};
