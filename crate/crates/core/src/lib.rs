//! Construction, verification and classification of connected
//! 2-arc-transitive bicirculants.

pub mod gf;
pub mod graph;
pub mod groups;
pub mod autgroup;
pub mod voltage;
pub mod families;
pub mod predicates;
pub mod classify;
