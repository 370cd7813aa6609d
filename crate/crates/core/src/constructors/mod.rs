//! Materialized families: chain families `q(n; m₁; …; m_l)`, the canonical
//! `q(n)`, cushioned families and layered compositions.

mod chain;
mod cushion;
mod layered;
pub mod spec_json;

pub use chain::{
    best_chain, canonical_chain, chain_family, describe_layers, enumerate_chain_specs, q_size,
    ChainSpec, ENUMERATE_MAX_N,
};
pub use cushion::{cushion_family, CushionLevel, CushionSpec, LevelPlacement};
pub use layered::{layered_compose, LayeredSpec};
