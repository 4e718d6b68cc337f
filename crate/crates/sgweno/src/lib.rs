//! Third-order WENO finite differences for scalar conservation laws on
//! semi-coarsened sparse grids.
//!
//! The solver marches periodic scalar problems `u_t + div f(u) = s(u)` in
//! two or three dimensions. It can do so on one full grid, or on a family
//! of semi-coarsened component grids that are marched independently,
//! prolonged to the common finest grid and combined into a single solution.
//! The combination needs far fewer stored points for a comparable error,
//! which is the reason the family exists.
//!
//! The pieces, bottom up:
//!
//! * [`mesh`]: periodic grids, row-major storage, the combination index set
//!   and its point-count arithmetic.
//! * [`problems`]: the catalog of built-in problems with fluxes, sources,
//!   initial data and reference solutions.
//! * [`weno`]: the spatial operator; upwind reconstruction with smoothness
//!   weights over Lax-Friedrichs split fluxes.
//! * [`integrate`]: strong stability preserving Runge-Kutta time marching
//!   and the shared time-step policy for grid families.
//! * [`prolong`]: line interpolation (polynomial or weighted upwind) and
//!   the signed combination of component grids.
//! * [`report`]: error norms, observed orders, study tables.
//! * [`run`]: drivers tying the layers together, plus solution dumps.

pub mod error;
pub mod integrate;
pub mod mesh;
pub mod problems;
pub mod prolong;
pub mod report;
pub mod run;
pub mod weno;

pub use error::{Error, Result};
