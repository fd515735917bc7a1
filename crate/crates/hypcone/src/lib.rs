//! Hyperbolic cone structures with prescribed PSL(2,ℝ) holonomy.
//!
//! The crate evaluates Euler classes of surface group representations through
//! lifts to the universal cover, runs the mapping class group action on
//! punctured-torus characters, builds pentagon and octagon fundamental
//! domains, and glues them into genus-2 surfaces with one cone point of angle
//! 4π.

pub mod plane_geometry;
pub mod isometries;
pub mod covering_group;
pub mod character_dynamics;
pub mod domain_builder;
pub mod surface_glue;
pub mod cli_io;
