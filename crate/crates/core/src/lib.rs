//! Exact arithmetic dynamics of integer-valued sine polynomials.
//!
//! The crate builds the polynomial families `c_d`, `s_d`, `r_d` exactly,
//! checks their estimates and escape radii with rational arithmetic, and
//! enumerates the integer periodic orbits of the Hénon maps
//! `h_d(x, y) = (y, -x + s_d(y))`, their shifts, and the limiting map
//! `h_∞(x, y) = (y, -x + (2/√3) sin(πy/3))`.

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod output;
pub mod poly;

pub use arith::ExactRational;
pub use error::{Error, Result};
pub use exec::Exec;
pub use poly::{PolyExact, SdTable};
