use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Field, QuadExt, Rational};

use super::Poly;

/// Reduced quotient `num/den` with `gcd(num, den) = 1` and `den` monic, so
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero").clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// `c * t^n` for any integer `n`.
    pub fn monomial(c: F, n: i64) -> Self {
        let m = Poly::monomial(c, n.unsigned_abs() as usize);
        if n >= 0 {
            Self::from_poly(m)
        } else {
            Self::reduce(Poly::constant(F::one()), m)
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Self::reduce(base.num.pow(e), base.den.pow(e)))
    }

    /// Multiplies by `t^n`, `n` any integer.
    pub fn mul_t_pow(&self, n: i64) -> Self {
        self.mul(&Self::monomial(F::one(), n))
    }

    /// `self(p(t))` for a nonconstant or constant polynomial `p`.
    pub fn substitute(&self, p: &Poly<F>) -> Result<Self> {
        Self::new(self.num.compose(p), self.den.compose(p))
    }

    /// `self(t^q)`.
    pub fn inflate(&self, q: usize) -> Self {
        Self::reduce(self.num.inflate(q), self.den.inflate(q))
    }

    /// `self(1/t)`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.degree().expect("nonzero") as i64;
        let dd = self.den.degree().expect("nonzero") as i64;
        let num = self.num.reverse(dn as usize);
        let den = self.den.reverse(dd as usize);
        Self::reduce(num, den).mul_t_pow(dd - dn)
    }

    /// `self(g(t))` for an arbitrary rational function `g`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let horner = |p: &Poly<F>| {
            p.coeffs()
                .iter()
                .rev()
                .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
        };
        horner(&self.num).div(&horner(&self.den))
    }

    /// Value at `t = c`; `None` at a pole.
    pub fn eval(&self, c: &F) -> Option<F> {
        let d = self.den.eval(c);
        let inv = d.inv()?;
        Some(self.num.eval(c).mul(&inv))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> RatFunc<G> {
        RatFunc::reduce(self.num.map(f), self.den.map(f))
    }

    pub fn conj(&self) -> Self {
        // den monic stays monic under coefficient conjugation
        RatFunc { num: self.num.conj(), den: self.den.conj() }
    }

    /// Orders of vanishing at `t = 0` (positive) or poles (negative).
    pub fn valuation_at_zero(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("den nonzero") as i64;
        Some(vn - vd)
    }

    /// Renders with the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        let n = self.num.display_with(var);
        if self.is_polynomial() {
            return n;
        }
        let d = self.den.display_with(var);
        let wrap = |s: String, p: &Poly<F>| {
            let single_term = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            if single_term && !s.starts_with('-') && !s.contains(' ') { s } else { format!("({s})") }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.display_with("t"))
    }
}

impl RatFunc<Rational> {
    pub fn lift(&self) -> RatFunc<QuadExt> {
        RatFunc { num: self.num.lift(), den: self.den.lift() }
    }
}

impl RatFunc<QuadExt> {
    pub fn descend(&self) -> Option<RatFunc<Rational>> {
        Some(RatFunc { num: self.num.descend()?, den: self.den.descend()? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc<Rational> {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(rf(&[0, 0, 1], &[0, 0, 0, 1]), rf(&[1], &[0, 1]));
        let r = rf(&[2, 2], &[0, 4, 4]);
        assert_eq!(r, rf(&[1], &[0, 2]));
        assert_eq!(r.num(), &Poly::constant(Rational::normalize(1, 2).unwrap()));
        assert_eq!(r.den(), &p(&[0, 1]));
        assert!(RatFunc::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn sextic_reciprocal() {
        // A t^6 + B at t = 1/t', times t'^6, gives A + B t'^6
        let (a, b) = (3, -5);
        let c = RatFunc::from_poly(p(&[b, 0, 0, 0, 0, 0, a]));
        let flipped = c.invert_variable().mul_t_pow(6);
        assert_eq!(flipped, RatFunc::from_poly(p(&[a, 0, 0, 0, 0, 0, b])));
    }

    #[test]
    fn embedded_constant_over_t4() {
        let gamma = Rational::normalize(7, 3).unwrap();
        let x = RatFunc::constant(gamma.clone()).inflate(6).mul_t_pow(-4);
        assert_eq!(x.num(), &Poly::constant(gamma));
        assert_eq!(x.den(), &p(&[0, 0, 0, 0, 1]));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(rf(&[1], &[1]).div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[1], &[0, 0, 1]).to_string(), "1/t^2");
        assert_eq!(rf(&[1, 0, 0, 0, 0, 0, 1], &[0, 0, 0, 1]).to_string(), "(t^6 + 1)/t^3");
        assert_eq!(rf(&[-2], &[1, 1]).to_string(), "(-2)/(t + 1)");
    }
}
