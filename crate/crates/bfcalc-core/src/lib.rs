//! Bernstein functions, sector geometry and dense-matrix functional calculi.
//!
//! The crate is split along the natural layers of the problem:
//!
//! * [`quad`] and [`special`] — quadrature kernels and the special functions
//!   the measure integrals reduce to;
//! * [`measure`] and [`bernstein`] — Radon measures with atoms, density
//!   segments and analytic tails, and Bernstein / complete Bernstein
//!   functions evaluated from them;
//! * [`cm`] — a complete-monotonicity tester based on Cauchy-integral
//!   differentiation;
//! * [`geometry`] — sector predicates and the scalar inequality checks;
//! * [`linalg`] and [`calculus`] — dense complex linear algebra and the
//!   operator-level calculi (Hirsch, Lévy–Khintchine, contour, Kato);
//! * [`subordination`] — closed-form subordinator families and subordinated
//!   matrix semigroups;
//! * [`sample`] — seeded random generators for functions and matrices.
//!
//! Everything is `no_std` + `alloc`; IO, JSON and the CLI live in the
//! companion `bfcalc` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bernstein;
pub mod calculus;
pub mod cm;
pub mod geometry;
pub mod linalg;
pub mod measure;
pub mod quad;
pub mod sample;
pub mod special;
pub mod subordination;

pub use num_complex::Complex64;
