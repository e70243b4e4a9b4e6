//! Shared numerical kernel: adaptive quadrature, bracketed root finding,
//! grid-plus-refinement maximization, and reproducible RNG streams.
//!
//! Everything here is pure given its inputs and safe to call concurrently;
//! [`RngStream`] values are single-owner, one per worker.

mod optimize;
mod quad;
mod rng;
mod roots;

pub use optimize::maximize_abs;
pub use quad::{integrate, integrate_split, QuadConfig};
pub use rng::RngStream;
pub use roots::{find_root, RootConfig};
