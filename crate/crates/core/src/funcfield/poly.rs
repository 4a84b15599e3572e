use std::fmt;

use crate::exactnum::{Field, QuadExt, Rational};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    /// The variable `t`.
    pub fn x() -> Self {
        Poly::monomial(F::one(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by `t^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(inner).add(&Poly::constant(c.clone())))
    }

    /// `self(t^q)`.
    pub fn inflate(&self, q: usize) -> Self {
        assert!(q >= 1);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); (self.coeffs.len() - 1) * q + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * q] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// `t^d * self(1/t)` with `d >= deg`.
    pub fn reverse(&self, d: usize) -> Self {
        let n = self.coeffs.len();
        assert!(n == 0 || d + 1 >= n, "reversal degree below polynomial degree");
        let mut coeffs = vec![F::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead_inv = divisor
            .leading()
            .expect("polynomial division by zero")
            .inv()
            .expect("leading coefficient is nonzero");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd. `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Applies the Galois conjugation to every coefficient.
    pub fn conj(&self) -> Self {
        self.map(F::conj)
    }

    /// Renders with the given variable name, e.g. `(3/2)*t^2 - 1`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.displays_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term(&mag, i, var));
        }
        out
    }
}

fn term<F: Field>(c: &F, i: usize, var: &str) -> String {
    let monomial = match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    };
    let cs = c.to_string();
    if i == 0 {
        return if c.is_atomic() { cs } else { format!("({cs})") };
    }
    if c.is_one() {
        return monomial;
    }
    let plain = c.is_atomic() && !cs.contains('/') && !cs.contains('*');
    if plain {
        format!("{cs}*{monomial}")
    } else {
        format!("({cs})*{monomial}")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.display_with("t"))
    }
}

impl Poly<Rational> {
    pub fn lift(&self) -> Poly<QuadExt> {
        self.map(|c| QuadExt::from(c.clone()))
    }
}

impl Poly<QuadExt> {
    /// The polynomial over `Q`, if every coefficient is rational.
    pub fn descend(&self) -> Option<Poly<Rational>> {
        let cs: Option<Vec<Rational>> = self.coeffs.iter().map(|c| c.to_rational()).collect();
        cs.map(Poly::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn gcd_example() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[2, 2]).gcd(&p(&[0, 3])), p(&[1]));
        assert_eq!(p(&[0, 0, 4]).gcd(&Poly::zero()), p(&[0, 0, 1]));
    }

    #[test]
    fn compose_and_eval() {
        let (a, b) = (Rational::from(5), Rational::from(-7));
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        let sextic = lin.compose(&Poly::monomial(Rational::one(), 6));
        assert_eq!(sextic, p(&[-7, 0, 0, 0, 0, 0, 5]));
        assert_eq!(sextic, lin.inflate(6));
        assert_eq!(sextic.eval(&Rational::zero()), b);
    }

    #[test]
    fn division() {
        let (q, r) = p(&[1, 2, 3, 4]).div_rem(&p(&[1, 1]));
        assert_eq!(q.mul(&p(&[1, 1])).add(&r), p(&[1, 2, 3, 4]));
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn display() {
        let half3 = Rational::normalize(3, 2).unwrap();
        let poly = Poly::new(vec![Rational::from(-1), Rational::zero(), half3]);
        assert_eq!(poly.to_string(), "(3/2)*t^2 - 1");
        assert_eq!(p(&[0, -2]).display_with("s"), "-2*s");
        assert_eq!(p(&[1, 1]).to_string(), "t + 1");
        assert_eq!(Poly::<Rational>::zero().to_string(), "0");
        let w = Poly::constant(QuadExt::omega()).mul(&Poly::x());
        assert_eq!(w.to_string(), "(-1/2 + 1/2*sqrt(-3))*t");
    }

    #[test]
    fn reverse_poly() {
        assert_eq!(p(&[9, 8]).reverse(3), p(&[0, 0, 8, 9]));
    }
}
