//! Bounded-height search for polynomial points
//! `(a2 s^2 + a1 s + a0, b3 s^3 + b2 s^2 + b1 s + b0)` on `y^2 = x^3 + C(s)`
//! with `deg C <= 6`, as an independent lower-bound check on the rank.
//!
//! Matching coefficients of `s^6, ..., 1` gives seven equations in the
//! seven unknowns. They are kept as sparse integer polynomials and only
//! ever evaluated, never solved.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{CurvePoint, FunctionFieldCurve};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::funcfield::{Poly, RatFunc};
use crate::generators::{subfamily_generator, ConstructionPath};
use crate::rankalg::rank_breakdown;

/// Unknowns in the order `a2, a1, a0, b3, b2, b1, b0`.
pub const VARIABLES: [&str; 7] = ["a2", "a1", "a0", "b3", "b2", "b1", "b0"];

const X_VARS: [(usize, usize); 3] = [(0, 2), (1, 1), (2, 0)];
const Y_VARS: [(usize, usize); 4] = [(3, 3), (4, 2), (5, 1), (6, 0)];

/// Which of the seven coefficients may be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchShape {
    pub free: [bool; 7],
}

impl SearchShape {
    pub fn generic() -> Self {
        SearchShape { free: [true; 7] }
    }

    /// Supports forced on `E_{A,B,k,1}` by its fibers at `s = 0` and `s = oo`.
    pub fn for_subfamily(k: u32) -> Result<Self> {
        let names: &[&str] = match k {
            1 => &["a0", "b1", "b0"],
            2 => &["a1", "b1"],
            3 => &["a1", "b2"],
            4 => &["a2", "b3", "b2"],
            _ => return Err(Error::IndexOutOfRange(k)),
        };
        let mut free = [false; 7];
        for n in names {
            free[VARIABLES.iter().position(|v| v == n).expect("known name")] = true;
        }
        Ok(SearchShape { free })
    }

    pub fn describe(&self) -> String {
        let x: Vec<_> = X_VARS.iter().filter(|(i, _)| self.free[*i]).map(|(i, _)| VARIABLES[*i]).collect();
        let y: Vec<_> = Y_VARS.iter().filter(|(i, _)| self.free[*i]).map(|(i, _)| VARIABLES[*i]).collect();
        format!("x: {{{}}}, y: {{{}}}", x.join(","), y.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Coefficients range over `p/q` with `max(|p|, q) <= height_bound`.
    pub height_bound: u64,
    pub shape: SearchShape,
}

impl SearchConfig {
    pub fn new(height_bound: u64, shape: SearchShape) -> Result<Self> {
        if height_bound == 0 {
            return Err(Error::ZeroInput("height bound"));
        }
        Ok(SearchConfig { height_bound, shape })
    }
}

/// One coefficient equation: `sum coef * prod var^e - c_degree = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaEquation {
    pub degree: usize,
    terms: Vec<(i64, [u8; 7])>,
    constant: Rational,
}

impl SigmaEquation {
    /// Variables with a nonzero exponent in some term.
    pub fn variables(&self) -> [bool; 7] {
        let mut used = [false; 7];
        for (_, e) in &self.terms {
            for (u, &k) in used.iter_mut().zip(e) {
                *u |= k > 0;
            }
        }
        used
    }

    pub fn eval(&self, vals: &[Rational; 7]) -> Rational {
        let mut acc = -self.constant.clone();
        for (coef, exps) in &self.terms {
            let mut m = Rational::from(*coef);
            for (v, &e) in vals.iter().zip(exps) {
                for _ in 0..e {
                    m = m * v;
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// Drops every term through a variable pinned to zero.
    fn restrict(&self, shape: &SearchShape) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, e)| e.iter().zip(shape.free).all(|(&k, f)| k == 0 || f))
            .cloned()
            .collect();
        SigmaEquation { degree: self.degree, terms, constant: self.constant.clone() }
    }
}

/// The seven equations, indexed by the power of `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSystem {
    pub equations: Vec<SigmaEquation>,
}

impl SigmaSystem {
    pub fn restrict(&self, shape: &SearchShape) -> Self {
        SigmaSystem { equations: self.equations.iter().map(|e| e.restrict(shape)).collect() }
    }

    /// The residual coefficients at a full assignment.
    pub fn residuals(&self, vals: &[Rational; 7]) -> Vec<Rational> {
        self.equations.iter().map(|e| e.eval(vals)).collect()
    }
}

fn unit(i: usize) -> [u8; 7] {
    let mut e = [0; 7];
    e[i] = 1;
    e
}

fn add_exps(a: [u8; 7], b: [u8; 7]) -> [u8; 7] {
    let mut e = a;
    for (x, y) in e.iter_mut().zip(b) {
        *x += y;
    }
    e
}

/// Coefficient equations of `y^2 - x^3 - C` for the degree-(2, 3) shape.
pub fn sigma_equations(e: &FunctionFieldCurve<Rational>) -> Result<SigmaSystem> {
    let c = e.c();
    if c.degree().is_some_and(|d| d > 6) {
        return Err(Error::UnsupportedShape(format!("deg C = {} > 6", c.degree().unwrap())));
    }
    let mut by_degree: Vec<BTreeMap<[u8; 7], i64>> = vec![BTreeMap::new(); 7];
    for &(i, di) in &Y_VARS {
        for &(j, dj) in &Y_VARS {
            *by_degree[di + dj].entry(add_exps(unit(i), unit(j))).or_default() += 1;
        }
    }
    for &(i, di) in &X_VARS {
        for &(j, dj) in &X_VARS {
            for &(l, dl) in &X_VARS {
                let e = add_exps(add_exps(unit(i), unit(j)), unit(l));
                *by_degree[di + dj + dl].entry(e).or_default() -= 1;
            }
        }
    }
    let equations = by_degree
        .into_iter()
        .enumerate()
        .map(|(degree, terms)| SigmaEquation {
            degree,
            terms: terms.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (c, e)).collect(),
            constant: c.coeff(degree),
        })
        .collect();
    Ok(SigmaSystem { equations })
}

/// Assignment order plus, per position, the equations that become fully
/// determined there. Greedy: next is the variable closing the most equations.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<usize>>,
    upfront: Vec<usize>,
}

fn plan(system: &SigmaSystem, shape: &SearchShape) -> Plan {
    let vars: Vec<[bool; 7]> = system.equations.iter().map(|e| e.variables()).collect();
    let mut assigned = [false; 7];
    let open = |eq: &[bool; 7], assigned: &[bool; 7]| {
        (0..7).filter(|&i| eq[i] && !assigned[i]).count()
    };
    let upfront = (0..7).filter(|&q| open(&vars[q], &assigned) == 0).collect();
    let mut order = Vec::new();
    let mut checks = Vec::new();
    // ties: alternate y and x, top degree first
    let preference = [3, 0, 4, 1, 5, 2, 6];
    while let Some(next) = preference
        .iter()
        .copied()
        .filter(|&v| shape.free[v] && !assigned[v])
        .max_by_key(|&v| {
            let closes = vars.iter().filter(|eq| eq[v] && open(eq, &assigned) == 1).count();
            (closes, std::cmp::Reverse(preference.iter().position(|&p| p == v)))
        })
    {
        let closing = (0..7)
            .filter(|&q| vars[q][next] && open(&vars[q], &assigned) == 1)
            .collect();
        assigned[next] = true;
        order.push(next);
        checks.push(closing);
    }
    Plan { order, checks, upfront }
}

fn extend(
    system: &SigmaSystem,
    plan: &Plan,
    cands: &[Rational],
    depth: usize,
    vals: &mut [Rational; 7],
    out: &mut Vec<[Rational; 7]>,
) {
    if depth == plan.order.len() {
        out.push(vals.clone());
        return;
    }
    let var = plan.order[depth];
    for c in cands {
        vals[var] = c.clone();
        if plan.checks[depth].iter().all(|&q| system.equations[q].eval(vals).is_zero()) {
            extend(system, plan, cands, depth + 1, vals, out);
        }
    }
    vals[var] = Rational::zero();
}

fn to_point(vals: &[Rational; 7]) -> CurvePoint<Rational> {
    let x = Poly::new(X_VARS.iter().rev().map(|(i, _)| vals[*i].clone()).collect());
    let y = Poly::new(Y_VARS.iter().rev().map(|(i, _)| vals[*i].clone()).collect());
    CurvePoint::affine(RatFunc::from_poly(x), RatFunc::from_poly(y))
}

/// Sign convention for dedup: positive leading `y` coefficient (or `y = 0`).
fn is_canonical(p: &CurvePoint<Rational>) -> bool {
    match p.coords() {
        None => true,
        Some((_, y)) => y.num().leading().is_none_or(|c| !c.is_negative()),
    }
}

fn canonical(p: &CurvePoint<Rational>) -> CurvePoint<Rational> {
    if is_canonical(p) {
        p.clone()
    } else {
        p.neg()
    }
}

/// All points of the configured shape and height on `e`, one per `+-P`
/// pair, in enumeration order. Every returned point is checked on the curve.
pub fn search_points(e: &FunctionFieldCurve<Rational>, cfg: &SearchConfig) -> Result<Vec<CurvePoint<Rational>>> {
    let system = sigma_equations(e)?.restrict(&cfg.shape);
    let plan = plan(&system, &cfg.shape);
    let zero: [Rational; 7] = Default::default();
    if !plan.upfront.iter().all(|&q| system.equations[q].eval(&zero).is_zero()) {
        return Ok(Vec::new());
    }
    let cands = Rational::up_to_height(cfg.height_bound);
    let raw: Vec<[Rational; 7]> = match plan.order.first() {
        None => vec![zero],
        Some(&first) => cands
            .par_iter()
            .flat_map_iter(|c| {
                let mut vals = zero.clone();
                vals[first] = c.clone();
                let mut out = Vec::new();
                if plan.checks[0].iter().all(|&q| system.equations[q].eval(&vals).is_zero()) {
                    extend(&system, &plan, &cands, 1, &mut vals, &mut out);
                }
                out
            })
            .collect(),
    };
    Ok(raw
        .iter()
        .map(to_point)
        .filter(|p| is_canonical(p) && e.on_curve(p))
        .collect())
}

/// Largest coefficient height of a polynomial point, `None` otherwise.
pub fn point_height(p: &CurvePoint<Rational>) -> Option<BigInt> {
    let (x, y) = p.coords()?;
    let (x, y) = (x.as_poly()?, y.as_poly()?);
    if x.degree().unwrap_or(0) > 2 || y.degree().unwrap_or(0) > 3 {
        return None;
    }
    x.coeffs().iter().chain(y.coeffs()).map(|c| c.height()).max().or(Some(BigInt::from(0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    /// `r_k = 1` and the direct generator (or another point) was found.
    Found,
    /// `r_k = 0` and nothing was found.
    NoneExpected,
    /// `r_k = 1` via descent: the generator need not have polynomial shape.
    OutOfSearchScope,
    /// `r_k = 1` directly, but the generator's coefficients exceed the bound.
    OutOfHeightBound,
    /// Direct generator within the bound that the search did not return.
    Missed,
    /// A point was found although `r_k = 0`.
    Contradiction,
}

impl OracleStatus {
    pub fn is_failure(&self) -> bool {
        matches!(self, OracleStatus::Missed | OracleStatus::Contradiction)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleTerm {
    pub k: u32,
    pub r_k: u8,
    pub shape: String,
    /// Construction path of the generator, when there is one.
    pub witness_path: Option<String>,
    pub witness: Option<String>,
    pub witness_height: Option<String>,
    pub found: Vec<String>,
    pub status: OracleStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
    pub height_bound: u64,
    pub rank: u32,
    /// Number of `k` with a found point: a lower bound for the rank.
    pub search_lower_bound: u32,
    pub terms: Vec<OracleTerm>,
}

impl OracleReport {
    pub fn is_sound(&self) -> bool {
        !self.terms.iter().any(|t| t.status.is_failure()) && self.search_lower_bound <= self.rank
    }
}

/// Runs the fiber-shaped search on each `E_{A,B,k,1}` and compares with
/// the rank formula and the constructed generators.
pub fn cross_validate(a: &Rational, b: &Rational, height_bound: u64) -> Result<OracleReport> {
    let breakdown = rank_breakdown(a, b)?;
    let mut terms = Vec::new();
    for k in 1..=4u32 {
        let curve = FunctionFieldCurve::subfamily(a, b, k, 1)?;
        let cfg = SearchConfig::new(height_bound, SearchShape::for_subfamily(k)?)?;
        let found = search_points(&curve, &cfg)?;
        let r_k = breakdown.r(k);
        let witness = subfamily_generator(a, b, k)?;
        let status = match (&witness, r_k) {
            (_, 0) if !found.is_empty() => OracleStatus::Contradiction,
            (_, 0) => OracleStatus::NoneExpected,
            (None, _) => OracleStatus::Missed,
            (Some(w), _) if w.path != ConstructionPath::Direct => OracleStatus::OutOfSearchScope,
            (Some(w), _) => {
                let target = canonical(&w.descended_point);
                let within = point_height(&target)
                    .is_some_and(|h| h <= BigInt::from(height_bound));
                if found.contains(&target) || (!within && !found.is_empty()) {
                    OracleStatus::Found
                } else if within {
                    OracleStatus::Missed
                } else {
                    OracleStatus::OutOfHeightBound
                }
            }
        };
        terms.push(OracleTerm {
            k,
            r_k,
            shape: cfg.shape.describe(),
            witness_path: witness.as_ref().map(|w| w.path.tag().to_string()),
            witness: witness.as_ref().map(|w| w.descended_point.display_with("s")),
            witness_height: witness
                .as_ref()
                .and_then(|w| point_height(&w.descended_point))
                .map(|h| h.to_string()),
            found: found.iter().map(|p| p.display_with("s")).collect(),
            status,
        });
    }
    Ok(OracleReport {
        a: a.clone(),
        b: b.clone(),
        height_bound,
        rank: breakdown.rank,
        search_lower_bound: terms.iter().filter(|t| !t.found.is_empty()).count() as u32,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn found(a: i64, b: i64, k: u32, h: u64) -> Vec<String> {
        let e = FunctionFieldCurve::subfamily(&q(a), &q(b), k, 1).unwrap();
        let cfg = SearchConfig::new(h, SearchShape::for_subfamily(k).unwrap()).unwrap();
        search_points(&e, &cfg).unwrap().iter().map(|p| p.display_with("s")).collect()
    }

    #[test]
    fn equations_for_k2_shape() {
        let e = FunctionFieldCurve::subfamily(&q(8), &q(9), 2, 1).unwrap();
        let sys = sigma_equations(&e).unwrap();
        assert_eq!(sys.equations.len(), 7);
        let mut vals: [Rational; 7] = Default::default();
        // zero candidate: residual is -C
        let r = sys.residuals(&vals);
        assert_eq!(r[2], q(-9));
        assert_eq!(r[3], q(-8));
        vals[1] = q(-2);
        vals[5] = q(3);
        assert!(sys.residuals(&vals).iter().all(|c| c.is_zero()));
        vals[5] = q(2);
        // b1^2 - B
        assert_eq!(sys.residuals(&vals)[2], q(-5));
    }

    #[test]
    fn rejects_high_degree() {
        let e = FunctionFieldCurve::new(Poly::monomial(q(1), 7)).unwrap();
        assert!(sigma_equations(&e).is_err());
        assert!(SearchConfig::new(0, SearchShape::generic()).is_err());
    }

    #[test]
    fn search_examples() {
        assert_eq!(found(8, 9, 2, 5), vec!["(-2*s, 3*s)"]);
        assert!(found(2, 3, 2, 10).is_empty());
        assert_eq!(found(1, 2, 1, 5), vec!["(1, s + 1)"]);
    }

    #[test]
    fn twisted_shapes() {
        // k = 3 on (A, B) = (9, 8): x = -2 s, y = 3 s^2
        assert_eq!(found(9, 8, 3, 5), vec!["(-2*s, 3*s^2)"]);
        // k = 4 on (2, 1): x = s^2, y = s^3 + s^2
        assert_eq!(found(2, 1, 4, 5), vec!["(s^2, s^3 + s^2)"]);
    }

    #[test]
    fn generic_shape_on_small_curve() {
        // the k = 2 generator embeds as (-t^2, 4)
        let e = FunctionFieldCurve::e_ab(&q(1), &q(16)).unwrap();
        let cfg = SearchConfig::new(4, SearchShape::generic()).unwrap();
        let pts = search_points(&e, &cfg).unwrap();
        assert!(pts.iter().any(|p| p.display_with("t") == "(-t^2, 4)"), "{pts:?}");
        assert!(pts.iter().all(|p| e.on_curve(p) && is_canonical(p)));
    }

    #[test]
    fn cross_validation_examples() {
        let r = cross_validate(&q(8), &q(9), 5).unwrap();
        let st: Vec<_> = r.terms.iter().map(|t| t.status).collect();
        use OracleStatus::*;
        assert_eq!(st, vec![NoneExpected, Found, NoneExpected, NoneExpected]);
        assert!(r.is_sound());

        let r = cross_validate(&q(1), &q(16), 10).unwrap();
        assert_eq!(r.search_lower_bound, 3);
        assert_eq!(r.rank, 3);
        assert!(r.is_sound());

        let r = cross_validate(&q(2), &q(3), 10).unwrap();
        assert_eq!(r.search_lower_bound, 0);
        assert!(r.is_sound());
    }

    #[test]
    fn descent_case_is_out_of_scope() {
        let r = cross_validate(&q(-3), &q(1), 6).unwrap();
        let t3 = &r.terms[2];
        assert_eq!(t3.status, OracleStatus::OutOfSearchScope);
        assert!(t3.found.is_empty());
    }
}
