//! Exact-arithmetic machinery for complex classical Cayley-Klein groups:
//! nilpotent-parameter (Pimenov) algebra, matrix Lie algebras and their root
//! systems, contraction structure, categories of linear relations, and spin /
//! Berezin representations. Everything runs over Q(i, sqrt2) with no
//! floating point anywhere.

pub mod error;
pub mod scalar;
pub mod pimenov;
pub mod qlinalg;
pub mod matrix;
pub mod groups;
pub mod rootsys;
pub mod contraction;

pub use error::{CkError, Result};
pub use pimenov::{interval_product, IotaMonomial, JMonomial, JValuation, JValue, PimenovElement};
pub use scalar::{Cyclotomic, Rational};
