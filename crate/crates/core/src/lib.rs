pub mod cli;
pub mod error;
pub mod galg;
pub mod lattice;
pub mod linalg;
pub mod refspace;
pub mod rootsys;
pub mod scalar;
pub mod torus;
