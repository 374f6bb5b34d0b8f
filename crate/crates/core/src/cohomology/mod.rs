//! Ext and Hochschild cohomology of the plactic monoid algebra, computed
//! from the Anick resolution.

pub mod ext;
pub mod graph;
pub mod hh;
pub mod hh_cup;
