//! Curvature of Cayley graphs of right-angled Artin-Coxeter hybrids (RAACHs)
//! and of finitely presented groups.
//!
//! The crate builds exact Cayley balls from normal forms, finite Cayley graphs
//! from coset enumeration, and evaluates Bakry-Emery and Ollivier /
//! Lin-Lu-Yau curvature with rational arithmetic wherever possible.

#![allow(clippy::needless_range_loop)]

pub mod builtin;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod graph;
pub mod group;
pub mod iso;
pub mod linalg;
pub mod presentation;
pub mod rational;
pub mod report;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::LocalGraph;
pub use presentation::{parse_presentation, Presentation};
pub use rational::Rational;
