pub mod cli;
pub mod error;
pub mod examples;
pub mod field;
pub mod frames;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod reconstruct;
pub mod report;
pub mod subspaces;
