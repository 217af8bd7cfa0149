#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod algebraic;
pub mod branches;
pub mod error;
pub mod exp;
pub mod linalg;
pub mod mpoly;
pub mod perturb;
pub mod poly;
pub mod polygon;
pub mod props;
pub mod roots;
pub mod scalar;
pub mod separation;
pub mod series;
pub mod valuation;
pub mod sturm;
pub mod zpoly;

pub use error::{Error, Result};
