pub mod atoms;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod factorization;
pub mod group;
pub mod lattice;
pub mod parse;
pub mod report;
pub mod sequence;
pub mod sweep;
pub mod transfer;
pub mod verify;
