//! Equivariant complete intersections of four quadrics in P^7: group
//! closure, character tables, the Lefschetz trace test, invariant quadric
//! families, and finite-field certificates for freeness and nodes.

pub mod exact;
pub mod groups;
pub mod catalog;
pub mod chartab;
pub mod geometry;
pub mod lefschetz;
pub mod io;
pub mod pipeline;
pub mod quadrics;
pub mod report;
