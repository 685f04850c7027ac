pub mod code;
pub mod construct;
pub mod fixtures;
pub mod function;
pub mod gf;
pub mod graph;
pub mod lattice;
pub mod report;
pub mod verify;
