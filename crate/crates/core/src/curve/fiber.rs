use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};
use crate::funcfield::Poly;

use super::FunctionFieldCurve;

/// Kodaira types that occur for `y^2 = x^3 + C` with `j = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KodairaType {
    I0,
    II,
    IV,
    I0Star,
    IVStar,
    IIStar,
}

impl KodairaType {
    /// Type of the fiber where `C` vanishes to order `v` (minimal, `v < 6`).
    pub fn from_valuation(v: u32) -> Self {
        match v {
            0 => KodairaType::I0,
            1 => KodairaType::II,
            2 => KodairaType::IV,
            3 => KodairaType::I0Star,
            4 => KodairaType::IVStar,
            5 => KodairaType::IIStar,
            _ => panic!("valuation {v} is not minimal"),
        }
    }

    /// Fiber components not meeting the zero section.
    pub fn non_identity_components(self) -> u32 {
        match self {
            KodairaType::I0 | KodairaType::II => 0,
            KodairaType::IV => 2,
            KodairaType::I0Star => 4,
            KodairaType::IVStar => 6,
            KodairaType::IIStar => 8,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KodairaType::I0 => "I0",
            KodairaType::II => "II",
            KodairaType::IV => "IV",
            KodairaType::I0Star => "I0*",
            KodairaType::IVStar => "IV*",
            KodairaType::IIStar => "II*",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Place {
    /// `s = 0`.
    Zero,
    /// One of the `degree` distinct roots of `A s^m + B` over the algebraic closure.
    RootOf { poly: String, index: usize, degree: usize },
    /// `s = infinity`, read off after `s -> 1/s`, `x -> x/s^2`, `y -> y/s^3`.
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceFiber {
    pub place: Place,
    pub v_delta: u32,
    pub kodaira: KodairaType,
}

/// `C = B s^k + A s^(k+m)`; `E_{A,B}` is `k = 0, m = 6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberShape {
    pub a: Rational,
    pub b: Rational,
    pub k: u32,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub places: Vec<PlaceFiber>,
}

impl FiberReport {
    pub fn total_v_delta(&self) -> u32 {
        self.places.iter().map(|p| p.v_delta).sum()
    }

    pub fn non_identity_components(&self) -> u32 {
        self.places.iter().map(|p| p.kodaira.non_identity_components()).sum()
    }
}

impl FiberShape {
    /// Recognizes a two-term `C` of the supported form.
    pub fn of(c: &Poly<Rational>) -> Result<Self> {
        let terms: Vec<(usize, &Rational)> =
            c.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()).collect();
        let [(k, b), (top, a)] = terms[..] else {
            return Err(Error::UnsupportedShape(format!(
                "expected C = B s^k + A s^(k+m), got {} terms",
                terms.len()
            )));
        };
        if k > 5 || top > 6 {
            return Err(Error::UnsupportedShape(format!(
                "s^{k} + s^{top} is outside the rational elliptic range"
            )));
        }
        Ok(FiberShape { a: a.clone(), b: b.clone(), k: k as u32, m: (top - k) as u32 })
    }
}

impl FunctionFieldCurve<Rational> {
    pub fn fiber_shape(&self) -> Result<FiberShape> {
        FiberShape::of(self.c())
    }

    /// Singular fibers with their discriminant valuations and Kodaira types.
    pub fn fiber_report(&self) -> Result<FiberReport> {
        let shape = self.fiber_shape()?;
        let mut places = Vec::new();
        let mut push = |place, v_c: u32| {
            if v_c > 0 {
                places.push(PlaceFiber {
                    place,
                    v_delta: 2 * v_c,
                    kodaira: KodairaType::from_valuation(v_c),
                });
            }
        };
        push(Place::Zero, shape.k);
        // A s^m + B with B != 0 has m simple roots, none at s = 0
        let factor = Poly::monomial(shape.a.clone(), shape.m as usize)
            .add(&Poly::constant(shape.b.clone()))
            .display_with("s");
        for index in 0..shape.m as usize {
            push(
                Place::RootOf { poly: factor.clone(), index, degree: shape.m as usize },
                1,
            );
        }
        push(Place::Infinity, self.valuation_at_infinity()?);
        Ok(FiberReport { places })
    }

    /// Order of vanishing of `C` at infinity on the model obtained by
    /// `s -> 1/s`, `x -> x/s^2`, `y -> y/s^3`.
    pub fn valuation_at_infinity(&self) -> Result<u32> {
        let d = self.c().degree().expect("C nonzero");
        if d > 6 {
            return Err(Error::UnsupportedShape(format!("deg C = {d} > 6")));
        }
        // C(1/s) s^6 is a polynomial; its order at s = 0 is 6 - deg C
        let flipped = self.c().reverse(6);
        Ok(flipped.valuation().expect("nonzero") as u32)
    }

    /// `8 - (fiber components off the zero section)`.
    pub fn expected_geometric_rank(&self) -> Result<u32> {
        let report = self.fiber_report()?;
        let off = report.non_identity_components();
        8u32.checked_sub(off)
            .ok_or_else(|| Error::UnsupportedShape("component count exceeds 8".into()))
    }
}

impl<F: Field> FunctionFieldCurve<F> {
    pub fn discriminant_degree(&self) -> usize {
        self.discriminant().degree().expect("C nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn e_ab_six_type_ii_fibers() {
        let e = FunctionFieldCurve::e_ab(&q(3), &q(-7)).unwrap();
        let r = e.fiber_report().unwrap();
        assert_eq!(r.places.len(), 6);
        assert!(r.places.iter().all(|p| p.v_delta == 2 && p.kodaira == KodairaType::II));
        assert_eq!(r.total_v_delta(), 12);
        assert_eq!(e.expected_geometric_rank().unwrap(), 8);
        assert_eq!(e.discriminant_degree(), 12);
    }

    #[test]
    fn subfamily_k2() {
        let e = FunctionFieldCurve::subfamily(&q(8), &q(9), 2, 1).unwrap();
        let r = e.fiber_report().unwrap();
        let types: Vec<_> = r.places.iter().map(|p| (p.v_delta, p.kodaira)).collect();
        assert_eq!(
            types,
            vec![(4, KodairaType::IV), (2, KodairaType::II), (6, KodairaType::I0Star)]
        );
        assert_eq!(r.places[2].place, Place::Infinity);
        assert_eq!(r.total_v_delta(), 12);
        assert_eq!(e.expected_geometric_rank().unwrap(), 2);
    }

    #[test]
    fn subfamily_discriminant_degree() {
        for k in 1..=4u32 {
            let e = FunctionFieldCurve::subfamily(&q(5), &q(2), k, 1).unwrap();
            assert_eq!(e.discriminant_degree(), 2 * (k as usize + 1));
            assert_eq!(e.fiber_report().unwrap().total_v_delta(), 12);
            assert_eq!(e.expected_geometric_rank().unwrap(), 2);
        }
    }

    #[test]
    fn unsupported_shapes() {
        let e = FunctionFieldCurve::new(Poly::new(vec![q(1), q(1), q(1)])).unwrap();
        assert!(matches!(e.fiber_report(), Err(Error::UnsupportedShape(_))));
        let e = FunctionFieldCurve::new(Poly::monomial(q(1), 7).add(&Poly::one())).unwrap();
        assert!(e.expected_geometric_rank().is_err());
    }
}
