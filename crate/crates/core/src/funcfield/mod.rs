//! Polynomials and reduced rational functions in one variable over `Q` or
//! `Q(sqrt(-3))`.

mod parse;
mod poly;
mod ratfunc;

pub use parse::{parse_ratfunc, split_pair};
pub use poly::Poly;
pub use ratfunc::RatFunc;
