pub mod boundary;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod formality;
pub mod hochschild;
pub mod linalg;
pub mod quiver;
pub mod structure;
pub mod threads;
