//! Union-free families of finite sets: verification, constructions, bounds
//! on the maximum family size `M(n)`, and exact search for small `n`.
//!
//! A family `F` of subsets of `[n]` is union-free when no member is the
//! union of other members. Subsets are stored as bitmasks, so `n <= 64`.

pub mod approx;
pub mod binom;
pub mod bounds;
pub mod constructors;
pub mod error;
pub mod exact;
pub mod family;
pub mod mask;
pub mod uff;

pub use bounds::{lower_bound, upper_bound, BoundState, BoundsRow, TableMode};
pub use constructors::{ChainSpec, CushionSpec, LayeredSpec};
pub use error::{Error, Result};
pub use exact::{max_union_free, SearchConfig, SearchResult, SearchStatus};
pub use family::{Family, Maximality, Permutation, Witness, WitnessKind};
pub use mask::SubsetMask;
pub use uff::{parse_family, serialize_family};
