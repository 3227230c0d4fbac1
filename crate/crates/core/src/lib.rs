//! Exact enumeration for boxed plane partitions, the squish map to double
//! dimer configurations on a half-scale honeycomb, and the SL₂ connection
//! weights on the resulting loops.

pub mod algebra;
pub mod connection;
pub mod error;
pub mod exec;
pub mod honeycomb;
pub mod partitionfn;
pub mod planepart;
pub mod properties;
pub mod render;
pub mod roots;
pub mod squish;
pub mod verify;

pub use error::{Error, Result};
