//! Exact homological algebra over ℤ and ℤ/pᵏ.

pub mod chaincx;
pub mod error;
pub mod exactlin;
pub mod fgmod;
pub mod orthlab;
pub mod random;
pub mod thc;
pub mod torkun;
pub mod verify;

pub use error::{Error, Result};
