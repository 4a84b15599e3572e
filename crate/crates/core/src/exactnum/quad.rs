use std::fmt;

use crate::error::{Error, Result};

use super::Rational;

/// An element `a + b*sqrt(-3)` of `Q(sqrt(-3))`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn zero() -> Self {
        QuadExt::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        QuadExt::new(Rational::one(), Rational::zero())
    }

    pub fn sqrt_neg3() -> Self {
        QuadExt::new(Rational::zero(), Rational::one())
    }

    /// The primitive cube root of unity `(-1 + sqrt(-3))/2`.
    pub fn omega() -> Self {
        let half = Rational::normalize(1, 2).expect("nonzero");
        QuadExt::new(-&half, half)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn quad_add(&self, other: &Self) -> Self {
        QuadExt::new(&self.a + &other.a, &self.b + &other.b)
    }

    pub fn quad_neg(&self) -> Self {
        QuadExt::new(-&self.a, -&self.b)
    }

    /// `(a + b r)(c + d r) = (ac - 3bd) + (ad + bc) r` with `r^2 = -3`.
    pub fn quad_mul(&self, other: &Self) -> Self {
        let three = Rational::from(3);
        let re = &self.a * &other.a - &three * &(&self.b * &other.b);
        let im = &self.a * &other.b + &self.b * &other.a;
        QuadExt::new(re, im)
    }

    pub fn quad_conj(&self) -> Self {
        QuadExt::new(self.a.clone(), -&self.b)
    }

    /// `a^2 + 3 b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + Rational::from(3) * (&self.b * &self.b)
    }

    pub fn quad_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.quad_conj();
        Ok(QuadExt::new(&c.a / &n, &c.b / &n))
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::new(a, Rational::zero())
    }
}

impl From<i64> for QuadExt {
    fn from(a: i64) -> Self {
        QuadExt::from(Rational::from(a))
    }
}

fn fmt_imag(b: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if b.is_one() {
        write!(f, "sqrt(-3)")
    } else if *b == -1 {
        write!(f, "-sqrt(-3)")
    } else {
        write!(f, "{b}*sqrt(-3)")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => fmt_imag(&self.b, f),
            (false, false) => {
                write!(f, "{}", self.a)?;
                if self.b.is_negative() {
                    write!(f, " - ")?;
                    fmt_imag(&-&self.b, f)
                } else {
                    write!(f, " + ")?;
                    fmt_imag(&self.b, f)
                }
            }
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
