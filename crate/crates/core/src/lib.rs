pub mod cauchy;
pub mod dd;
pub mod error;
pub mod exec;
pub mod hadamard;
pub mod ortho;
pub mod poly;
pub mod quad;
pub mod rh;
pub mod series;
pub mod special;

pub use error::{Error, Result};
