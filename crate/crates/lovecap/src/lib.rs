//! Capacitance of a circular parallel plate capacitor, three ways.
//!
//! The reduced capacitance `C(kappa)` of two coaxial unit-radius disks at
//! separation `kappa` is governed by the Love integral equation. This crate
//! computes it by
//!
//! - direct Nystrom solution of the Love equation ([`love`]), valid at any
//!   moderate separation,
//! - a small-separation asymptotic series with log-polynomial coefficients,
//!   both hard-coded ([`small_kappa`]) and re-derived from scratch by a
//!   bulk/edge matching recursion ([`matching`]),
//! - a large-separation Legendre-polynomial expansion ([`large_kappa`]),
//!
//! and cross-validates the three routes against each other. The same solution
//! also yields the Lieb-Liniger ground-state energy through the moment mapping
//! in [`lieb_liniger`].

pub mod bigreal;
pub mod checks;
pub mod constants;
pub mod error;
pub mod euler_moments;
pub mod figdata;
pub mod grid;
pub mod jet;
pub mod large_kappa;
pub mod lieb_liniger;
pub mod logpoly;
pub mod love;
pub mod matching;
pub mod method;
pub mod polygamma;
pub mod series;
pub mod small_kappa;

pub use bigreal::BigReal;
pub use error::{Error, Result};
