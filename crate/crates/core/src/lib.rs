// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod debroglie;
pub mod error;
pub mod fiber;
pub mod mdr;
pub mod numerics;
pub mod quanta;
pub mod sentinel;
pub mod waveguide;
pub mod wavepacket;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
