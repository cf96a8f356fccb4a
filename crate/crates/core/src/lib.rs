//! Class groups, local class groups, Picard groups and Picard indices of
//! toric varieties and rational projective K*-surfaces, together with
//! enumeration engines for log del Pezzo surfaces of Picard number one.

pub mod exactlin;
mod error;
pub mod defmat;
pub mod classify;
pub mod json;
pub mod kstarindex;
pub mod toricpic;

pub use error::{Error, Result};
pub use exactlin::{AbelianGroup, IntMatrix};
