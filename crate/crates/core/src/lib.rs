//! Fourier analysis on the Hamming cube and the first linear programming
//! bound for binary codes.
//!
//! The crate covers transforms and convolutions of functions on {0,1}ⁿ
//! ([`cube_fourier`]), binary codes and their duals ([`codes`]), the top
//! adjacency eigenvalue of Hamming balls with explicit nonnegative
//! eigenfunction witnesses ([`ball_spectra`]), executable checks of the
//! code-size and covering inequalities ([`lp_witness`]) and finite and
//! asymptotic bound evaluation ([`bounds`]). The `cube-spectra` binary wraps
//! all of it ([`cli`]).

pub mod ball_spectra;
pub mod bounds;
pub mod cli;
pub mod codes;
pub mod cube_fourier;
pub mod error;
pub mod limits;
pub mod lp_witness;
pub mod numfmt;

pub use error::{Error, Result};
