//! Exact ramification-slope arithmetic for 2-adic fields and the group
//! elimination that rules out number fields of degree 9 to 15 unramified
//! away from 2.
//!
//! The pieces, from the bottom up:
//!
//! * [`slope`]: slope contents `[s_1,...,s_m]_t^f` and their Galois mean slope.
//! * [`composita`]: bounds for the slope content of a compositum.
//! * [`towers`]: discriminant recursion in towers of degree-`p` extensions.
//! * [`tables`]: root discriminant bounds and local slope caps.
//! * [`catalog`]: transitive group data and the known exclusions.
//! * [`pipeline`]: gms caps per degree, order bounds and staged elimination.
//! * [`cli`]: the `ramify2` command line.

pub mod catalog;
pub mod cli;
pub mod composita;
pub mod pipeline;
pub mod rational;
pub mod slope;
pub mod tables;
pub mod towers;

pub use catalog::{Catalog, GroupRef, TransitiveGroupRecord};
pub use composita::{cap_wild_count, check_compositum_bounds, crude_compose, ComposeError};
pub use rational::Rational;
pub use slope::{SlopeContent, SlopeError};
