//! Multiplicative arithmetic functions through their local generating
//! polynomials, companion matrices and isobaric polynomials.

pub mod catalog;
pub mod cli;
pub mod companion;
pub mod error;
pub mod identities;
pub mod isobaric;
pub mod localmf;
pub mod norm;
pub mod partitions;
pub mod periodicity;
pub mod ring;
pub mod roots;

pub use error::{Error, Result};
pub use ring::{RingKind, Scalar};
