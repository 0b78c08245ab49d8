//! Exact invariants of isolated quotient singularities ℂⁿ/G and their
//! contact boundaries S²ⁿ⁻¹/G.
//!
//! Everything here is pure computation over exact rationals and cyclotomic
//! numbers; file formats, caching and the command line live in the
//! `orbifill` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chen_ruan;
pub mod constraints;
pub mod cyclotomic;
pub mod floer;
pub mod group;
pub mod reeb;
pub mod span;
