use serde::Serialize;

use crate::curve::{CurvePoint, FunctionFieldCurve};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};

use super::subfamily_generator;

/// The finite-index inclusions `sum of E_{A,B,k,1} ⊂ E_{A,B,k',m'}`, as
/// `(sources, (k', m'))`.
pub const INCLUSIONS: [(&[u32], (u32, u32)); 5] = [
    (&[3], (0, 2)),
    (&[1, 4], (2, 2)),
    (&[2], (4, 2)),
    (&[2, 4], (0, 3)),
    (&[1, 3], (3, 3)),
];

/// `E_{A,B,k,1} -> E_{A,B,k',m'}`: `s -> u^m'` and coordinates scaled by
/// `u^(-2w), u^(-3w)` with `w = (m' k - k')/6`.
pub fn inclusion_map<F: Field>(
    p: &CurvePoint<F>,
    k: u32,
    target: (u32, u32),
) -> Result<CurvePoint<F>> {
    let (k2, m2) = target;
    let num = i64::from(m2) * i64::from(k) - i64::from(k2);
    if m2 == 0 || num % 6 != 0 {
        return Err(Error::IllegalBaseChange { k: k2, m: m2 });
    }
    Ok(p.twist_inflate(m2 as usize, num / 6))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InclusionStatus {
    /// The source group is trivial for this `(A, B)`.
    Vacuous,
    Verified { image: String },
    Failed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionCheck {
    pub source_k: u32,
    pub target: (u32, u32),
    pub status: InclusionStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
    pub checks: Vec<InclusionCheck>,
}

impl InclusionReport {
    pub fn all_passed(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.status, InclusionStatus::Failed { .. }))
    }

    /// Indices into [`INCLUSIONS`] with at least one verified source.
    pub fn exercised(&self) -> Vec<usize> {
        INCLUSIONS
            .iter()
            .enumerate()
            .filter(|(_, (srcs, tgt))| {
                self.checks.iter().any(|c| {
                    c.target == *tgt
                        && srcs.contains(&c.source_k)
                        && matches!(c.status, InclusionStatus::Verified { .. })
                })
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Maps each constructed subfamily generator into the larger curves of
/// [`INCLUSIONS`] and checks the image satisfies their equations.
pub fn verify_inclusion_chain(a: &Rational, b: &Rational) -> Result<InclusionReport> {
    let mut gens = Vec::new();
    for k in 1..=4 {
        gens.push(subfamily_generator(a, b, k)?);
    }
    let mut checks = Vec::new();
    for (sources, target) in INCLUSIONS {
        let curve = FunctionFieldCurve::subfamily(a, b, target.0, target.1)?;
        for &k in sources {
            let status = match &gens[(k - 1) as usize] {
                None => InclusionStatus::Vacuous,
                Some(w) => {
                    let image = inclusion_map(&w.descended_point, k, target)?;
                    if image.is_identity() {
                        InclusionStatus::Failed { reason: "image is the identity".into() }
                    } else if curve.on_curve(&image) {
                        InclusionStatus::Verified { image: image.display_with("s") }
                    } else {
                        InclusionStatus::Failed {
                            reason: format!("{} is not on {}", image.display_with("s"), curve.display_with("s")),
                        }
                    }
                }
            };
            checks.push(InclusionCheck { source_k: k, target, status });
        }
    }
    Ok(InclusionReport { a: a.clone(), b: b.clone(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse_ratfunc;

    #[test]
    fn k2_into_k4_m2() {
        let r = verify_inclusion_chain(&Rational::from(8), &Rational::from(9)).unwrap();
        assert!(r.all_passed());
        let c = r.checks.iter().find(|c| c.source_k == 2 && c.target == (4, 2)).unwrap();
        assert_eq!(c.status, InclusionStatus::Verified { image: "(-2*s^2, 3*s^2)".into() });
        let target = FunctionFieldCurve::subfamily(&Rational::from(8), &Rational::from(9), 4, 2).unwrap();
        assert_eq!(target.c(), parse_ratfunc::<Rational>("s^4*(8*s^2 + 9)", None).unwrap().num());
        assert!(r.checks.iter().any(|c| c.source_k == 1 && c.status == InclusionStatus::Vacuous));
    }

    #[test]
    fn illegal_inclusion() {
        let p: CurvePoint<Rational> = CurvePoint::Identity;
        assert!(inclusion_map(&p, 1, (0, 2)).is_err());
    }
}
