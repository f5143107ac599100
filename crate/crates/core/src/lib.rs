//! Yamada polynomials of graphs and spatial graph diagrams, computed over
//! exact integer Laurent polynomials.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the command
//! line tool and output writers live in the companion `yamada` crate.

#![no_std]

extern crate alloc;

pub mod chainpoly;
pub mod diagram;
pub mod graph;
pub mod hpoly;
pub mod ring;
pub mod yamada;
pub mod zeros;

pub use ring::{LaurentPoly, RationalFunction, RingError};
