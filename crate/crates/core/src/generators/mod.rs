//! Explicit generators on the subfamilies `E_{A,B,k,1}: y^2 = x^3 + s^k (A s + B)`
//! and their images in `E_{A,B}(Q(t))`.
//!
//! For `k = 1` the point is `(gamma, alpha (s + B/2A))` with `alpha^2 = A`
//! and `gamma^3 = B^2/4A`; for `k = 2` it is `(-alpha s, beta s)` with
//! `alpha^3 = A`, `beta^2 = B`. The cases `k = 3, 4` come from `k = 2, 1`
//! with `A` and `B` interchanged, followed by `s -> 1/s`.
//!
//! When the needed square root only exists in `Q(sqrt(-3))` the point is
//! built there and pushed down to `Q(s)` as `P + conj(P)`, or
//! `omega P + conj(omega P)` when the first sum vanishes.

mod certificate;
mod inclusion;

use serde::Serialize;

use crate::curve::{CurvePoint, FunctionFieldCurve};
use crate::error::{Error, Result};
use crate::exactnum::{is_kth_power, is_square_or_neg3_square, Field, QuadExt, Rational, SquareClass};
use crate::funcfield::{Poly, RatFunc};

pub use certificate::{full_certificate, RankCertificate, WitnessChecks, WitnessRecord};
pub use inclusion::{
    inclusion_map, verify_inclusion_chain, InclusionCheck, InclusionReport, InclusionStatus,
    INCLUSIONS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "path", rename_all = "snake_case")]
pub enum ConstructionPath {
    /// All of `alpha`, `beta`, `gamma` are rational.
    Direct,
    /// `P + conj(P)`, or with `omega_twisted`, `omega P + conj(omega P)`.
    DescentCombination { omega_twisted: bool },
}

impl ConstructionPath {
    pub fn tag(&self) -> &'static str {
        match self {
            ConstructionPath::Direct => "direct",
            ConstructionPath::DescentCombination { omega_twisted: false } => "descent-combination",
            ConstructionPath::DescentCombination { omega_twisted: true } => {
                "descent-combination-omega"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub k: u32,
    pub subfamily: FunctionFieldCurve<Rational>,
    /// The point as first constructed, over `Q(sqrt(-3))(s)`.
    pub point_on_subfamily: CurvePoint<QuadExt>,
    pub descended_point: CurvePoint<Rational>,
    pub embedded_point: CurvePoint<Rational>,
    pub path: ConstructionPath,
}

/// Square root in `Q(sqrt(-3))` of a nonzero rational, when it exists.
/// Rational roots are positive; otherwise the root is `c sqrt(-3)` with
/// `c > 0`.
pub fn sqrt_in_ext(x: &Rational) -> Result<Option<QuadExt>> {
    Ok(match is_square_or_neg3_square(x)? {
        SquareClass::Square(r) => Some(QuadExt::from(r)),
        // x = -r^2/3 = (r/3 sqrt(-3))^2
        SquareClass::Neg3Square(r) => {
            Some(QuadExt::new(Rational::zero(), r.checked_div(&Rational::from(3))?))
        }
        SquareClass::Neither => None,
    })
}

fn const_rf(c: QuadExt) -> RatFunc<QuadExt> {
    RatFunc::constant(c)
}

fn linear(c0: QuadExt, c1: QuadExt) -> RatFunc<QuadExt> {
    RatFunc::from_poly(Poly::new(vec![c0, c1]))
}

/// `(gamma, alpha (s + B/2A))` on `E_{A,B,1,1}`.
fn k1_point(a: &Rational, b: &Rational) -> Result<Option<CurvePoint<QuadExt>>> {
    let Some(alpha) = sqrt_in_ext(a)? else { return Ok(None) };
    let gamma_cubed = (b * b).checked_div(&(Rational::from(4) * a))?;
    let Some(gamma) = is_kth_power(&gamma_cubed, 3) else { return Ok(None) };
    let shift = QuadExt::from(b.checked_div(&(Rational::from(2) * a))?);
    let y = linear(alpha.mul(&shift), alpha);
    Ok(Some(CurvePoint::affine(const_rf(QuadExt::from(gamma)), y)))
}

/// `(-alpha s, beta s)` on `E_{A,B,2,1}`.
fn k2_point(a: &Rational, b: &Rational) -> Result<Option<CurvePoint<QuadExt>>> {
    let Some(alpha) = is_kth_power(a, 3) else { return Ok(None) };
    let Some(beta) = sqrt_in_ext(b)? else { return Ok(None) };
    let x = linear(QuadExt::zero(), QuadExt::from(-alpha));
    let y = linear(QuadExt::zero(), beta);
    Ok(Some(CurvePoint::affine(x, y)))
}

/// The generator candidate on `E_{A,B,k,1}` over `Q(sqrt(-3))(s)`.
pub fn subfamily_point(a: &Rational, b: &Rational, k: u32) -> Result<Option<CurvePoint<QuadExt>>> {
    if a.is_zero() {
        return Err(Error::ZeroInput("A"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("B"));
    }
    Ok(match k {
        1 => k1_point(a, b)?,
        2 => k2_point(a, b)?,
        // E_{B,A,5-k,1} pulled back along s -> 1/s lands on E_{A,B,k,1}
        3 => k2_point(b, a)?.map(|p| p.twist_invert(1)),
        4 => k1_point(b, a)?.map(|p| p.twist_invert(1)),
        _ => return Err(Error::IndexOutOfRange(k)),
    })
}

/// Pushes a point over `Q(sqrt(-3))(s)` down to `Q(s)`.
pub fn descend_point(
    curve: &FunctionFieldCurve<QuadExt>,
    p: &CurvePoint<QuadExt>,
) -> Result<(CurvePoint<Rational>, ConstructionPath)> {
    if let Some(q) = p.descend() {
        return Ok((q, ConstructionPath::Direct));
    }
    let combine = |p: &CurvePoint<QuadExt>| -> Result<CurvePoint<QuadExt>> {
        curve.add(p, &curve.galois_conj(p)?)
    };
    let first = combine(p)?;
    let (sum, omega_twisted) = if first.is_identity() {
        (combine(&curve.omega_mul(p)?)?, true)
    } else {
        (first, false)
    };
    if sum.is_identity() {
        return Err(Error::DescentFailed(format!(
            "both conjugate combinations of {} vanish",
            p.display_with("s")
        )));
    }
    let q = sum.descend().ok_or_else(|| {
        Error::DescentFailed(format!("conjugate combination {} is not rational", sum.display_with("s")))
    })?;
    Ok((q, ConstructionPath::DescentCombination { omega_twisted }))
}

/// `(f(s), g(s)) -> (f(t^q)/t^(2r), g(t^q)/t^(3r))` with `q = 6/m`,
/// `r = k/m`, without checking curve membership.
pub fn embed_point<F: Field>(p: &CurvePoint<F>, k: u32, m: u32) -> Result<CurvePoint<F>> {
    if !is_legal_base_change(k, m) {
        return Err(Error::IllegalBaseChange { k, m });
    }
    Ok(p.twist_inflate((6 / m) as usize, i64::from(k / m)))
}

/// `m >= 1`, `k <= 5` and `m | gcd(6, k)`.
pub fn is_legal_base_change(k: u32, m: u32) -> bool {
    m >= 1 && k <= 5 && 6 % m == 0 && k.is_multiple_of(m)
}

/// Maps a point of `E_{A,B,k,m}(Q(s))` into `E_{A,B}(Q(t))`.
pub fn base_change_embed(
    a: &Rational,
    b: &Rational,
    p: &CurvePoint<Rational>,
    k: u32,
    m: u32,
) -> Result<CurvePoint<Rational>> {
    if !is_legal_base_change(k, m) {
        return Err(Error::IllegalBaseChange { k, m });
    }
    let source = FunctionFieldCurve::subfamily(a, b, k, m)?;
    if !source.on_curve(p) {
        return Err(Error::NotOnCurve);
    }
    let image = embed_point(p, k, m)?;
    debug_assert!(FunctionFieldCurve::e_ab(a, b)?.on_curve(&image));
    Ok(image)
}

/// Pullback along `t -> -omega t`; on the image of `E_{A,B,k,1}` this
/// acts as `tau^k`.
pub fn sigma_pullback(p: &CurvePoint<QuadExt>) -> Result<CurvePoint<QuadExt>> {
    let minus_omega = QuadExt::omega().quad_neg();
    let sub = Poly::new(vec![QuadExt::zero(), minus_omega]);
    Ok(match p {
        CurvePoint::Identity => CurvePoint::Identity,
        CurvePoint::Affine { x, y } => CurvePoint::affine(x.substitute(&sub)?, y.substitute(&sub)?),
    })
}

/// A generator of `E_{A,B,k,1}(Q(s))` up to finite index, or `None` when
/// that group is trivial.
pub fn subfamily_generator(a: &Rational, b: &Rational, k: u32) -> Result<Option<GeneratorWitness>> {
    let Some(point) = subfamily_point(a, b, k)? else { return Ok(None) };
    let subfamily = FunctionFieldCurve::subfamily(a, b, k, 1)?;
    let lifted = subfamily.lift();
    if !lifted.on_curve(&point) {
        return Err(Error::NotOnCurve);
    }
    let (descended, path) = descend_point(&lifted, &point)?;
    if !subfamily.on_curve(&descended) {
        return Err(Error::NotOnCurve);
    }
    let embedded = base_change_embed(a, b, &descended, k, 1)?;
    Ok(Some(GeneratorWitness {
        k,
        subfamily,
        point_on_subfamily: point,
        descended_point: descended,
        embedded_point: embedded,
        path,
    }))
}
