//! Stringy E-functions, stringy Euler numbers and stringy Hodge numbers of
//! log-terminal varieties, computed exactly from stratified resolution data
//! or from a toric fan, together with the non-Archimedean arc integral that
//! underlies their independence of the resolution.

pub mod arcspace;
pub mod error;
pub mod exactring;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod render;
pub mod resolution;
pub mod toricfan;

pub use error::{Error, Result};
pub use rational::Rational;
