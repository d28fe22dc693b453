pub mod cli;
pub mod error;
pub mod field;
pub mod harness;
pub mod model;
pub mod norm;
pub mod profile;
pub mod quad;
pub mod sampling;
pub mod vector;
