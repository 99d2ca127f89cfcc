//! Exponentially weighted time integrals of quantum expectation values.
//!
//! For a time-independent Hamiltonian `H`, an observable `S` and a weight
//! `e^{-a t}` with complex `a = rate + i·frequency`, the integral
//!
//! ```text
//! I(t) = ∫_0^t ⟨ψ(t')|S|ψ(t')⟩ e^{-a t'} dt'
//! ```
//!
//! equals `⟨ψ(0)|P(t)|ψ(0)⟩` for an operator `P(t)` whose entries in the
//! eigenbasis of `H` are known in closed form:
//!
//! ```text
//! p_ij(t) = s_ij · (e^{z_ij t} - 1) / z_ij,   z_ij = i(λ_i - λ_j)/ħ - a
//! ```
//!
//! [`intop`] builds and evaluates `P(t)` (including `t = ∞`), [`evolve`] is
//! the conventional evolve-then-trapezoid baseline used as an oracle,
//! [`apps`] covers weighted averages, Fourier probing and parameter sweeps,
//! and [`bench`] reproduces the timing comparison between the two methods.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apps;
pub mod bench;
pub mod cli;
pub mod error;
pub mod evolve;
pub mod intop;
pub mod matcore;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, ComplexVector, EigenDecomposition};
pub use num_complex::Complex64;
