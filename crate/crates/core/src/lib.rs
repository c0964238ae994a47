//! Decide, enumerate, count, and classify uniquely k-determined permutations.
//!
//! A permutation is *uniquely k-determined* when it is the only permutation
//! whose sequence of reduced length-k windows (its walk in the pattern-overlap
//! graph) takes that value. The crate provides:
//!
//! * [`perm`] — one-line permutations and order-isomorphism utilities,
//! * [`determinacy`] — window paths, two equivalent determinability criteria,
//!   and the index of reconstructibility,
//! * [`overlap`] — pattern-overlap graphs, walk enumeration, and realization
//!   of window paths as permutation sets,
//! * [`path_scheme`] — difference-set graphs and directed Hamiltonian path
//!   counting,
//! * [`prohibitions`] — the finite language of irreducible prohibited
//!   patterns certifying non-determinability,
//! * [`counting`] and [`gf`] — exact counts by independent engines, plus
//!   rational generating function recovery,
//! * [`poset`] — window-induced partial orders, linear extension counting,
//!   and m-k classification.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the types are safe to share across threads.

pub mod counting;
pub mod determinacy;
mod error;
pub mod gf;
mod limits;
pub mod overlap;
pub mod path_scheme;
pub mod perm;
pub mod poset;
pub mod prohibitions;

pub use error::{Error, Result};
pub use limits::Limits;
pub use perm::{PatternWord, Permutation};

// Big-integer types that appear in the public API.
pub use num::{BigInt, BigUint};
