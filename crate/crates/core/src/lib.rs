//! Exact Mordell-Weil rank computation for the elliptic curves
//! `y^2 = x^3 + A t^6 + B` over `Q(t)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactnum`]: rationals, `Q(sqrt(-3))`, perfect-power tests and
//!   sixth-power classes.
//! - [`funcfield`]: dense polynomials and reduced rational functions over
//!   either base field.
//! - [`curve`]: Weierstrass curves `y^2 = x^3 + C(t)`, the group law, the
//!   order-6 automorphism, Galois conjugation and fiber bookkeeping.
//! - [`rankalg`]: the four-term rank formula, normalization and the rank
//!   classification.
//! - [`generators`]: explicit generators on the four rank-two subfamilies,
//!   their embeddings into `E_{A,B}` and self-verifying certificates.
//! - [`oracle`]: bounded-height search for polynomial points, used to
//!   cross-check the rank formula from below.

pub mod curve;
pub mod error;
pub mod exactnum;
pub mod funcfield;
pub mod generators;
pub mod oracle;
pub mod rankalg;

pub use error::{Error, Result};
pub use exactnum::{QuadExt, Rational, SixthPowerClass};
