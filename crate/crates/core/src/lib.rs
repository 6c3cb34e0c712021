#![no_std]
extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod error;
pub mod fixtures;
pub mod gen;
pub mod global;
pub mod greedy;
pub mod exact;
pub mod model;
pub mod oracle;
pub mod drm;
pub mod rational;
pub mod roots;
pub mod reduction;

pub use error::{Error, Result};
pub use rational::Rational;
