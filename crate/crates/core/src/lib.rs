#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod grid;
pub mod math;
pub mod oracles;
pub mod params;
pub mod reaction;
pub mod stepper;
