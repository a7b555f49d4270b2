#![no_std]

extern crate alloc;

pub mod asympt;
pub mod critical;
pub mod embed;
pub mod error;
pub mod linalg;
pub mod numeric;
pub mod pipeline;
pub mod poly;
pub mod radical;
pub mod roots;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
