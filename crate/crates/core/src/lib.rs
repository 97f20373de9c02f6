//! Certified bounds for the analytic capacity of compact plane sets.
//!
//! The sets handled here are bounded by finitely many mutually exterior
//! analytic or piecewise-analytic Jordan curves (circles, ellipses, chains
//! of line segments and circular arcs). Capacity is bracketed from both
//! sides by a pair of dual quadratic programs over a finite family of
//! rational (and, near corners, fractional-power) trial functions:
//!
//! * the upper bound minimizes `(1/2π) ∫ |1 + g|² |dz|` over the span,
//! * the lower bound maximizes `2ℜ g'(∞) − (1/2π) ∫ |g|² |dz|`.
//!
//! Both programs share one Hermitian boundary Gram system, so each
//! refinement stage costs one assembly plus two positive-definite solves,
//! and every reported bracket `[lower, upper]` is certified up to
//! quadrature tolerance.
//!
//! The crate is `no_std` (with `alloc`): all IO, file formats and the CLI
//! live in the companion `gammacap` crate.
//!
//! # Layout
//!
//! * [`geometry`]: boundary components, compact sets, validation.
//! * [`basis`]: trial-function families and pole layouts.
//! * [`quadrature`]: adaptive Simpson boundary integration and the
//!   closed-form circle integrals.
//! * [`linalg`]: complex Cholesky solve with a 1-norm condition estimate.
//! * [`capacity`]: Gram assembly and the staged bound solver.
//! * [`experiments`]: subadditivity ratio sweeps and the rational
//!   Ahlfors-function verifier.
//! * [`oracles`]: exact reference capacities used for validation.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod basis;
pub mod capacity;
pub mod experiments;
pub mod geometry;
pub mod linalg;
pub mod oracles;
pub mod poly;
pub mod quadrature;

pub use num_complex::Complex64;

/// Wall-clock source injected into the staged solver so that per-stage
/// timings can be reported without tying the core crate to `std`.
pub trait Clock {
    /// Seconds since an arbitrary fixed origin.
    fn now(&self) -> f64;
}

/// Clock that always reads zero; stage timings come out as zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullClock;

impl Clock for NullClock {
    fn now(&self) -> f64 {
        0.0
    }
}
