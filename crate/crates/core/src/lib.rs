//! Constructive symmetry breaking for finite permutation groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`] and [`group`]: permutations, stabilizer chains, blocks,
//!   homomorphisms and normal structure;
//! * [`coloring`]: setwise and coloring stabilizers and searches for
//!   asymmetric and solvable colorings;
//! * [`constructions`]: explicit subsets and colorings with solvable or
//!   trivial stabilizers;
//! * [`reduce`]: subsets whose stabilizer has a smaller image under a
//!   homomorphism onto a nonsolvable group;
//! * [`pipeline`]: finite inverse sequences and zero-asymmetric colorings;
//! * [`graph`] and [`cc`]: rooted graph truncations and coherent configurations.
//!
//! Points are `0..n` internally; every text format is 1-based.
//!
//! ```
//! use motionforge::group::construct::symmetric;
//!
//! let s4 = symmetric(4);
//! assert_eq!(s4.order(), 24);
//! ```

mod backtrack;
pub mod cc;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod graph;
pub mod group;
pub mod io;
pub mod perm;
pub mod pipeline;
pub mod reduce;
pub mod refine;

pub use error::{Error, Result};
pub use group::{BlockSystem, GroupHom, MinDegree, PermGroup};
pub use perm::Permutation;
