//! Computer algebra for the plactic monoid.
//!
//! The crate covers the letter-level plactic monoid (Knuth relations, RSK),
//! the column calculus `∨`/`∧`, generic Gröbner–Shirshov presentations and
//! rewriting, the Anick resolution obtained by algebraic discrete Morse
//! theory on the normalized bar resolution, and the Ext and Hochschild
//! cohomology of the plactic monoid algebra.

pub mod anick;
pub mod cohomology;
pub mod column;
pub mod error;
pub mod field;
pub mod letters;
pub mod multidegree;
pub mod rewrite;
pub mod sparse;

pub use column::Column;
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use multidegree::Multidegree;
