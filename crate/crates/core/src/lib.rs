//! Exact Freudenthal triple systems carved out of split simple Lie algebras.

pub mod chevalley;
pub mod cli;
pub mod classify;
pub mod fts;
pub mod rootsys;
pub mod sampling;
pub mod scalar;
pub mod suite;
