//! General-purpose numerical building blocks: an embedded Runge–Kutta
//! integrator, a bracketed root finder, adaptive Gauss–Kronrod quadrature
//! and compensated summation.

pub mod ode;
pub mod quadrature;
pub mod roots;
pub mod sum;

pub use ode::{Dopri5, OdeStats};
pub use quadrature::{integrate, Integral};
pub use roots::{find_root, Root};
pub use sum::KahanSum;
