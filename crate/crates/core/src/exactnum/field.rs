use std::fmt::{Debug, Display};
use std::hash::Hash;

use super::{QuadExt, Rational};

/// Coefficient field for polynomials, rational functions and curves.
///
/// Only `Q` and `Q(sqrt(-3))` implement it. The optional hooks report the
/// extra structure the curve module needs (a cube root of unity and the
/// nontrivial Galois automorphism).
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` on zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    /// The rational value, when the element lies in `Q`.
    fn to_rational(&self) -> Option<Rational>;

    /// `omega = (-1 + sqrt(-3))/2`, when the field contains it.
    fn omega() -> Option<Self> {
        None
    }

    /// `sqrt(-3)`, when the field contains it.
    fn sqrt_neg3() -> Option<Self> {
        None
    }

    /// Image under the nontrivial automorphism of `Q(sqrt(-3))/Q`;
    /// the identity on `Q`.
    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Whether the element should print with a leading minus sign.
    fn displays_negative(&self) -> bool {
        false
    }

    /// Whether the element prints as a single atom (no `+`/`-` inside).
    fn is_atomic(&self) -> bool {
        true
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn displays_negative(&self) -> bool {
        self.is_negative()
    }
}

impl Field for QuadExt {
    fn zero() -> Self {
        QuadExt::zero()
    }
    fn one() -> Self {
        QuadExt::one()
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.quad_add(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.quad_add(&other.quad_neg())
    }
    fn mul(&self, other: &Self) -> Self {
        self.quad_mul(other)
    }
    fn neg(&self) -> Self {
        self.quad_neg()
    }
    fn inv(&self) -> Option<Self> {
        self.quad_inv().ok()
    }
    fn from_rational(r: Rational) -> Self {
        QuadExt::from(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }
    fn omega() -> Option<Self> {
        Some(QuadExt::omega())
    }
    fn sqrt_neg3() -> Option<Self> {
        Some(QuadExt::sqrt_neg3())
    }
    fn conj(&self) -> Self {
        self.quad_conj()
    }
    fn displays_negative(&self) -> bool {
        self.b.is_zero() && self.a.is_negative() || self.a.is_zero() && self.b.is_negative()
    }
    fn is_atomic(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }
}
