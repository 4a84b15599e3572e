//! Exact arithmetic on `Q` and `Q(sqrt(-3))`.

pub mod factor;
mod field;
pub mod powers;
mod quad;
mod rational;
mod sixth;

pub use field::Field;
pub use powers::{
    exact_int_root, is_cube_in_ext, is_kth_power, is_square_in_ext, is_square_or_neg3_square,
    SquareClass,
};
pub use quad::QuadExt;
pub use rational::Rational;
pub use sixth::{is_sixth_power_free, sixth_power_class, SixthPowerClass};
