//! Weierstrass curves `y^2 = x^3 + C(t)` over `F(t)`.

mod fiber;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Field, QuadExt, Rational};
use crate::funcfield::{parse_ratfunc, split_pair, Poly, RatFunc};

pub use fiber::{FiberReport, FiberShape, KodairaType, Place, PlaceFiber};

/// The curve `y^2 = x^3 + C(t)` (all a-invariants zero except `a6 = C`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FunctionFieldCurve<F: Field> {
    c: Poly<F>,
}

/// A point on a [`FunctionFieldCurve`]: the identity or an affine pair.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CurvePoint<F: Field> {
    Identity,
    Affine { x: RatFunc<F>, y: RatFunc<F> },
}

impl<F: Field> FunctionFieldCurve<F> {
    pub fn new(c: Poly<F>) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput("C(t)"));
        }
        Ok(FunctionFieldCurve { c })
    }

    pub fn c(&self) -> &Poly<F> {
        &self.c
    }

    /// `y^2 - x^3 - C`, zero exactly for affine points on the curve.
    pub fn residual(&self, x: &RatFunc<F>, y: &RatFunc<F>) -> RatFunc<F> {
        let x3 = x.square().mul(x);
        y.square().sub(&x3).sub(&RatFunc::from_poly(self.c.clone()))
    }

    pub fn on_curve(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Identity => true,
            CurvePoint::Affine { x, y } => self.residual(x, y).is_zero(),
        }
    }

    fn check(&self, p: &CurvePoint<F>) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Builds an affine point, rejecting pairs off the curve.
    pub fn point(&self, x: RatFunc<F>, y: RatFunc<F>) -> Result<CurvePoint<F>> {
        let p = CurvePoint::Affine { x, y };
        self.check(&p)?;
        Ok(p)
    }

    pub fn negate(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        Ok(p.neg())
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Identity, _) => return q.clone(),
            (_, CurvePoint::Identity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let slope = if x1 != x2 {
            y2.sub(y1).div(&x2.sub(x1)).expect("distinct x")
        } else if y1 == y2 && !y1.is_zero() {
            // tangent: 3x^2 / 2y
            let three = RatFunc::constant(F::from_i64(3));
            let two = RatFunc::constant(F::from_i64(2));
            three.mul(&x1.square()).div(&two.mul(y1)).expect("y nonzero")
        } else {
            // q = -p, or doubling a 2-torsion point
            return CurvePoint::Identity;
        };
        let x3 = slope.square().sub(x1).sub(x2);
        let y3 = slope.mul(&x1.sub(&x3)).sub(y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// `n * P` by double-and-add; negative `n` negates.
    pub fn scalar_mul(&self, n: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        let base = if n < 0 { p.neg() } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Identity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        Ok(acc)
    }

    /// The automorphism `(x, y) -> (omega x, -y)` of order six.
    pub fn tau(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let omega = F::omega().ok_or(Error::NoCubeRootOfUnity)?;
        self.check(p)?;
        Ok(match p {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.scale(&omega), y: y.neg() },
        })
    }

    /// `tau^n`, `n` taken mod 6.
    pub fn tau_pow(&self, n: u32, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let mut q = p.clone();
        for _ in 0..n % 6 {
            q = self.tau(&q)?;
        }
        if n.is_multiple_of(6) {
            F::omega().ok_or(Error::NoCubeRootOfUnity)?;
            self.check(p)?;
        }
        Ok(q)
    }

    /// The complex-multiplication action of the cube root of unity,
    /// `omega . P = tau^4(P) = (omega x, y)`.
    pub fn omega_mul(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.tau_pow(4, p)
    }

    /// `a P + b (omega . P)`.
    pub fn eisenstein_mul(&self, a: i64, b: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let wp = self.omega_mul(p)?;
        let left = self.scalar_mul(a, p)?;
        let right = self.scalar_mul(b, &wp)?;
        self.add(&left, &right)
    }

    /// Specializes at `t = t0`: the curve `y^2 = x^3 + C(t0)` over `F`
    /// (as constant functions) and the image of `p`. `None` when the fiber
    /// is singular or `p` has a pole there.
    pub fn specialize(&self, p: &CurvePoint<F>, t0: &F) -> Option<(Self, CurvePoint<F>)> {
        let c0 = self.c.eval(t0);
        if c0.is_zero() {
            return None;
        }
        let fiber = FunctionFieldCurve { c: Poly::constant(c0) };
        let image = match p {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: RatFunc::constant(x.eval(t0)?),
                y: RatFunc::constant(y.eval(t0)?),
            },
        };
        Some((fiber, image))
    }

    /// Proves `n P != O` for `n = 1..=limit` by specializing at a good
    /// fiber: specialization is a homomorphism there, so a nonzero `n P(t0)`
    /// forces `n P != O`. Returns the `t0` used, or `None` if some
    /// multiple vanished at every fiber tried.
    pub fn non_torsion_witness(&self, p: &CurvePoint<F>, limit: i64) -> Option<i64> {
        if p.is_identity() || !self.on_curve(p) {
            return None;
        }
        (1..=64i64).find(|&t0| {
            let Some((fiber, q)) = self.specialize(p, &F::from_i64(t0)) else { return false };
            let mut acc = CurvePoint::Identity;
            (1..=limit).all(|_| {
                acc = fiber.add_unchecked(&acc, &q);
                !acc.is_identity()
            })
        })
    }

    /// `-432 C^2`.
    pub fn discriminant(&self) -> Poly<F> {
        self.c.mul(&self.c).scale(&F::from_i64(-432))
    }

    /// Applies the Galois conjugation to the coordinates of `p`.
    pub fn galois_conj(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        if self.c.conj() != self.c {
            return Err(Error::NotConjugationStable);
        }
        self.check(p)?;
        Ok(p.conj())
    }

    pub fn display_with(&self, var: &str) -> String {
        let c = self.c.display_with(var);
        match c.strip_prefix('-') {
            Some(rest) => format!("y^2 = x^3 - {rest}"),
            None => format!("y^2 = x^3 + {c}"),
        }
    }
}

impl<F: Field> CurvePoint<F> {
    pub fn affine(x: RatFunc<F>, y: RatFunc<F>) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, CurvePoint::Identity)
    }

    pub fn neg(&self) -> Self {
        match self {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: y.neg() },
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.conj(), y: y.conj() },
        }
    }

    pub fn coords(&self) -> Option<(&RatFunc<F>, &RatFunc<F>)> {
        match self {
            CurvePoint::Identity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }

    /// Substitutes `var -> var^q` and scales `(x, y)` by `var^(-2r), var^(-3r)`.
    pub fn twist_inflate(&self, q: usize, r: i64) -> Self {
        match self {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.inflate(q).mul_t_pow(-2 * r),
                y: y.inflate(q).mul_t_pow(-3 * r),
            },
        }
    }

    /// Substitutes `var -> 1/var` and scales `(x, y)` by `var^(2w), var^(3w)`.
    pub fn twist_invert(&self, w: i64) -> Self {
        match self {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.invert_variable().mul_t_pow(2 * w),
                y: y.invert_variable().mul_t_pow(3 * w),
            },
        }
    }

    /// `(x, y)` in the funcfield grammar, or `O` for the identity.
    pub fn display_with(&self, var: &str) -> String {
        match self {
            CurvePoint::Identity => "O".to_string(),
            CurvePoint::Affine { x, y } => {
                format!("({}, {})", x.display_with(var), y.display_with(var))
            }
        }
    }

    /// Parses the output of [`CurvePoint::display_with`].
    pub fn parse(s: &str, var: Option<&str>) -> Result<Self> {
        let t = s.trim();
        if t == "O" {
            return Ok(CurvePoint::Identity);
        }
        let (xs, ys) = split_pair(t)?;
        Ok(CurvePoint::Affine { x: parse_ratfunc(xs, var)?, y: parse_ratfunc(ys, var)? })
    }
}

impl<F: Field> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl FunctionFieldCurve<Rational> {
    /// `E_{A,B}: y^2 = x^3 + A t^6 + B`.
    pub fn e_ab(a: &Rational, b: &Rational) -> Result<Self> {
        Self::subfamily(a, b, 0, 6)
    }

    /// `E_{A,B,k,m}: y^2 = x^3 + s^k (A s^m + B)`.
    pub fn subfamily(a: &Rational, b: &Rational, k: u32, m: u32) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroInput("A"));
        }
        if b.is_zero() {
            return Err(Error::ZeroInput("B"));
        }
        let (k, m) = (k as usize, m as usize);
        let mut coeffs = vec![Rational::zero(); k + m + 1];
        coeffs[k] = b.clone();
        coeffs[k + m] = &coeffs[k + m] + a;
        Self::new(Poly::new(coeffs))
    }

    pub fn lift(&self) -> FunctionFieldCurve<QuadExt> {
        FunctionFieldCurve { c: self.c.lift() }
    }
}

impl CurvePoint<Rational> {
    pub fn lift(&self) -> CurvePoint<QuadExt> {
        match self {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.lift(), y: y.lift() },
        }
    }
}

impl CurvePoint<QuadExt> {
    /// The same point over `Q`, if every coordinate coefficient is rational.
    pub fn descend(&self) -> Option<CurvePoint<Rational>> {
        match self {
            CurvePoint::Identity => Some(CurvePoint::Identity),
            CurvePoint::Affine { x, y } => {
                Some(CurvePoint::Affine { x: x.descend()?, y: y.descend()? })
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.descend().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| q(c)).collect())
    }

    fn pt(x: &[i64], y: &[i64]) -> CurvePoint<Rational> {
        CurvePoint::affine(RatFunc::from_poly(poly(x)), RatFunc::from_poly(poly(y)))
    }

    fn e_8_9_2() -> FunctionFieldCurve<Rational> {
        FunctionFieldCurve::subfamily(&q(8), &q(9), 2, 1).unwrap()
    }

    #[test]
    fn on_curve_examples() {
        let e = e_8_9_2();
        assert_eq!(e.c(), &poly(&[0, 0, 9, 8]));
        assert!(e.on_curve(&pt(&[0, -2], &[0, 3])));
        assert!(!e.on_curve(&pt(&[0, 2], &[0, 3])));
        assert!(e.on_curve(&CurvePoint::Identity));
        let e121 = FunctionFieldCurve::subfamily(&q(1), &q(2), 1, 1).unwrap();
        assert!(e121.on_curve(&pt(&[1], &[1, 1])));
    }

    #[test]
    fn group_law_basics() {
        let e = e_8_9_2();
        let p = pt(&[0, -2], &[0, 3]);
        assert_eq!(e.add(&p, &CurvePoint::Identity).unwrap(), p);
        assert_eq!(e.add(&p, &e.negate(&p).unwrap()).unwrap(), CurvePoint::Identity);
        let p2 = e.scalar_mul(2, &p).unwrap();
        assert!(e.on_curve(&p2));
        // doubling by hand: slope 3x^2/2y = 12 s^2 / 6 s = 2s;
        // x3 = 4s^2 + 4s, y3 = 2s(-2s - x3) - 3s
        let x3 = poly(&[0, 4, 4]);
        let y3 = poly(&[0, -3, -12, -8]);
        assert_eq!(p2, pt(&[0, 4, 4], &[0, -3, -12, -8]));
        assert!(e.on_curve(&CurvePoint::affine(RatFunc::from_poly(x3), RatFunc::from_poly(y3))));
        assert_eq!(e.add(&p, &p).unwrap(), p2);
        assert_eq!(e.scalar_mul(-1, &p).unwrap(), p.neg());
        assert_eq!(e.scalar_mul(0, &p).unwrap(), CurvePoint::Identity);
        assert_eq!(e.add(&pt(&[1], &[1]), &p), Err(Error::NotOnCurve));
    }

    #[test]
    fn tau_requires_extension() {
        let e = e_8_9_2();
        assert_eq!(e.tau(&CurvePoint::Identity), Err(Error::NoCubeRootOfUnity));
        let el = e.lift();
        let p = pt(&[0, -2], &[0, 3]).lift();
        assert_eq!(el.tau(&CurvePoint::Identity).unwrap(), CurvePoint::Identity);
        assert_eq!(el.tau_pow(6, &p).unwrap(), p);
        assert_eq!(el.tau_pow(3, &p).unwrap(), p.neg());
        // (omega^2 + omega + 1) P = O
        let w = el.omega_mul(&p).unwrap();
        let w2 = el.omega_mul(&w).unwrap();
        let s = el.add(&el.add(&w2, &w).unwrap(), &p).unwrap();
        assert!(s.is_identity());
    }

    #[test]
    fn galois_conjugation() {
        let el = e_8_9_2().lift();
        let p = pt(&[0, -2], &[0, 3]).lift();
        assert_eq!(el.galois_conj(&p).unwrap(), p);
        let tp = el.tau(&p).unwrap();
        let lhs = el.galois_conj(&tp).unwrap();
        let rhs = el.tau_pow(5, &el.galois_conj(&p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(el.galois_conj(&lhs).unwrap(), tp);
        let twisted = FunctionFieldCurve::new(Poly::constant(QuadExt::sqrt_neg3())).unwrap();
        assert_eq!(
            twisted.galois_conj(&CurvePoint::Identity),
            Err(Error::NotConjugationStable)
        );
    }

    #[test]
    fn specialization_agrees_with_symbolic_multiples() {
        let e = e_8_9_2();
        let p = pt(&[0, -2], &[0, 3]);
        let t0 = e.non_torsion_witness(&p, 6).unwrap();
        let (fiber, q0) = e.specialize(&p, &q(t0)).unwrap();
        for n in 1..=6 {
            let symbolic = e.scalar_mul(n, &p).unwrap();
            assert!(!symbolic.is_identity());
            let (_, special) = e.specialize(&symbolic, &q(t0)).unwrap();
            assert_eq!(fiber.scalar_mul(n, &q0).unwrap(), special);
        }
        // a 2-torsion point: y = 0 on y^2 = x^3 - s^3
        let e2 = FunctionFieldCurve::new(poly(&[0, 0, 0, -1])).unwrap();
        let t2 = pt(&[0, 1], &[0]);
        assert!(e2.on_curve(&t2));
        assert!(e2.scalar_mul(2, &t2).unwrap().is_identity());
        assert_eq!(e2.non_torsion_witness(&t2, 6), None);
    }

    #[test]
    fn point_display_round_trip() {
        let p = CurvePoint::affine(
            RatFunc::new(poly(&[1]), poly(&[0, 0, 1])).unwrap(),
            RatFunc::new(poly(&[1, 0, 0, 0, 0, 0, 1]), poly(&[0, 0, 0, 1])).unwrap(),
        );
        let s = p.display_with("t");
        assert_eq!(s, "(1/t^2, (t^6 + 1)/t^3)");
        assert_eq!(CurvePoint::<Rational>::parse(&s, Some("t")).unwrap(), p);
        assert_eq!(CurvePoint::<Rational>::parse("O", None).unwrap(), CurvePoint::Identity);
    }
}
