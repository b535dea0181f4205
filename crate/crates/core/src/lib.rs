#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod coeffs;
pub mod elliptic;
pub mod error;
pub mod functionals;
pub mod harness;
pub mod hyp2f1;
pub mod sequences;
pub mod series;
pub mod special;

pub use error::{Error, Result};
