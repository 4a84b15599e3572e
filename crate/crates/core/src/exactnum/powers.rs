use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Rational;

/// Exact integer k-th root of `n`, if one exists. Even `k` with negative
/// `n` has no root.
pub fn exact_int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    assert!(k >= 1, "root index must be positive");
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let negative = n.sign() == Sign::Minus;
    if negative && k.is_multiple_of(2) {
        return None;
    }
    let mag: BigUint = n.magnitude().clone();
    let root = mag.nth_root(k);
    if Pow::pow(&root, k) != mag {
        return None;
    }
    let root = BigInt::from(root);
    Some(if negative { -root } else { root })
}

/// Returns `r` with `r^k == x` when such a rational exists. For even `k`
/// the nonnegative root is returned and negative inputs have none.
pub fn is_kth_power(x: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    // numerator and denominator are coprime, so x is a k-th power iff both are
    let n = exact_int_root(x.numer(), k)?;
    let d = exact_int_root(x.denom(), k)?;
    Some(Rational::normalize(n, d).expect("denominator root is positive"))
}

/// Which of `x = r^2` or `-3x = r^2` holds for a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "root", rename_all = "snake_case")]
pub enum SquareClass {
    Square(Rational),
    Neg3Square(Rational),
    Neither,
}

impl SquareClass {
    pub fn holds(&self) -> bool {
        !matches!(self, SquareClass::Neither)
    }
}

pub fn is_square_or_neg3_square(x: &Rational) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroInput("x"));
    }
    if let Some(r) = is_kth_power(x, 2) {
        return Ok(SquareClass::Square(r));
    }
    let scaled = Rational::from(-3) * x;
    Ok(match is_kth_power(&scaled, 2) {
        Some(r) => SquareClass::Neg3Square(r),
        None => SquareClass::Neither,
    })
}

/// Whether `u` is a square in `Q(sqrt(-3))`: exactly when `u` or `-3u` is a
/// square in `Q`.
pub fn is_square_in_ext(u: &Rational) -> Result<bool> {
    Ok(is_square_or_neg3_square(u)?.holds())
}

/// Whether `u` is a cube in `Q(sqrt(-3))`: exactly when it is a cube in `Q`.
pub fn is_cube_in_ext(u: &Rational) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::ZeroInput("u"));
    }
    Ok(is_kth_power(u, 3).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::normalize(n, d).unwrap()
    }

    #[test]
    fn kth_power_examples() {
        assert_eq!(is_kth_power(&q(-27, 8), 3), Some(q(-3, 2)));
        assert_eq!(is_kth_power(&q(64, 1), 3), Some(q(4, 1)));
        assert_eq!(is_kth_power(&q(4, 1), 3), None);
        assert_eq!(is_kth_power(&q(16, 1), 2), Some(q(4, 1)));
        assert_eq!(is_kth_power(&q(-16, 1), 2), None);
        assert_eq!(is_kth_power(&q(0, 1), 5), Some(q(0, 1)));
        assert_eq!(is_kth_power(&q(7, 3), 1), Some(q(7, 3)));
        assert_eq!(is_kth_power(&q(1, 729), 6), Some(q(1, 3)));
    }

    #[test]
    fn square_class_examples() {
        assert_eq!(is_square_or_neg3_square(&q(81, 1)), Ok(SquareClass::Square(q(9, 1))));
        assert_eq!(is_square_or_neg3_square(&q(-12, 1)), Ok(SquareClass::Neg3Square(q(6, 1))));
        assert_eq!(is_square_or_neg3_square(&q(2, 1)), Ok(SquareClass::Neither));
        assert_eq!(is_square_or_neg3_square(&q(-1, 3)), Ok(SquareClass::Neg3Square(q(1, 1))));
        assert!(is_square_or_neg3_square(&q(0, 1)).is_err());
    }

    #[test]
    fn extension_tests() {
        assert_eq!(is_square_in_ext(&q(-3, 1)), Ok(true));
        assert_eq!(is_cube_in_ext(&q(-27, 1)), Ok(true));
        assert_eq!(is_square_in_ext(&q(2, 1)), Ok(false));
        assert_eq!(is_cube_in_ext(&q(2, 1)), Ok(false));
        assert!(is_cube_in_ext(&q(0, 1)).is_err());
    }
}
