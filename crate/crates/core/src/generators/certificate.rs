use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, FunctionFieldCurve};
use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::rankalg::{rank_breakdown, RankBreakdown};

use super::{embed_point, sigma_pullback, subfamily_generator, GeneratorWitness};

/// Largest `n` for which `n P != O` is checked.
pub const TORSION_CHECK_LIMIT: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChecks {
    pub subfamily_point_on_curve: bool,
    pub descended_rational: bool,
    pub descended_on_subfamily: bool,
    pub descended_nonzero: bool,
    pub embedded_on_curve: bool,
    /// `n P != O` for `n = 1..=6`, shown on a specialized fiber.
    pub non_torsion: bool,
    /// Pullback along `t -> -omega t` equals `tau^k` on the embedded point.
    pub eigenspace: bool,
}

impl WitnessChecks {
    pub fn all(&self) -> bool {
        self.subfamily_point_on_curve
            && self.descended_rational
            && self.descended_on_subfamily
            && self.descended_nonzero
            && self.embedded_on_curve
            && self.non_torsion
            && self.eigenspace
    }
}

/// Serialized generator. Points use the funcfield grammar in `s`
/// (subfamily) or `t` (`E_{A,B}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub k: u32,
    /// The `sigma - tau^k` kernel this point lies in.
    pub eigenspace_tag: u32,
    pub construction: String,
    pub subfamily_curve: String,
    pub subfamily_point: String,
    pub descended_point: String,
    pub embedded_point: String,
    pub checks: WitnessChecks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
    pub curve: String,
    pub breakdown: RankBreakdown,
    pub rank: u32,
    pub witnesses: Vec<WitnessRecord>,
    /// Witnesses carry pairwise distinct eigenspace tags.
    pub independent: bool,
    pub verified: bool,
}

fn check_witness(a: &Rational, b: &Rational, w: &GeneratorWitness) -> Result<WitnessChecks> {
    let e = FunctionFieldCurve::e_ab(a, b)?;
    let non_torsion = e.non_torsion_witness(&w.embedded_point, TORSION_CHECK_LIMIT).is_some();
    let el = e.lift();
    let lifted = w.embedded_point.lift();
    let eigenspace = sigma_pullback(&lifted)? == el.tau_pow(w.k, &lifted)?;
    Ok(WitnessChecks {
        subfamily_point_on_curve: w.subfamily.lift().on_curve(&w.point_on_subfamily),
        descended_rational: true,
        descended_on_subfamily: w.subfamily.on_curve(&w.descended_point),
        descended_nonzero: !w.descended_point.is_identity(),
        embedded_on_curve: e.on_curve(&w.embedded_point),
        non_torsion,
        eigenspace,
    })
}

/// Rank breakdown plus one verified generator for every nonzero `r_k`.
pub fn full_certificate(a: &Rational, b: &Rational) -> Result<RankCertificate> {
    let breakdown = rank_breakdown(a, b)?;
    let mut witnesses = Vec::new();
    for k in 1..=4u32 {
        if breakdown.r(k) == 0 {
            continue;
        }
        let w = subfamily_generator(a, b, k)?.ok_or_else(|| {
            Error::DescentFailed(format!("r_{k} = 1 but no generator was constructed"))
        })?;
        let checks = check_witness(a, b, &w)?;
        witnesses.push(WitnessRecord {
            k,
            eigenspace_tag: k,
            construction: w.path.tag().to_string(),
            subfamily_curve: w.subfamily.display_with("s"),
            subfamily_point: w.point_on_subfamily.display_with("s"),
            descended_point: w.descended_point.display_with("s"),
            embedded_point: w.embedded_point.display_with("t"),
            checks,
        });
    }
    let mut tags: Vec<u32> = witnesses.iter().map(|w| w.eigenspace_tag).collect();
    tags.dedup();
    let independent = tags.len() == witnesses.len();
    let verified = independent
        && witnesses.len() as u32 == breakdown.rank
        && witnesses.iter().all(|w| w.checks.all());
    Ok(RankCertificate {
        a: a.clone(),
        b: b.clone(),
        curve: FunctionFieldCurve::e_ab(a, b)?.display_with("t"),
        rank: breakdown.rank,
        breakdown,
        witnesses,
        independent,
        verified,
    })
}

impl RankCertificate {
    /// Re-checks a (possibly deserialized) certificate from its strings
    /// alone, ignoring the stored check flags. Returns the list of failures.
    pub fn reverify(&self) -> Result<Vec<String>> {
        let mut failures = Vec::new();
        let (a, b) = (&self.a, &self.b);
        let e = FunctionFieldCurve::e_ab(a, b)?;
        let fresh = rank_breakdown(a, b)?;
        if fresh.rank != self.rank || fresh.r != self.breakdown.r {
            failures.push(format!("rank mismatch: stored {}, recomputed {}", self.rank, fresh.rank));
        }
        if self.witnesses.len() as u32 != self.rank {
            failures.push(format!("{} witnesses for rank {}", self.witnesses.len(), self.rank));
        }
        let mut seen = Vec::new();
        for w in &self.witnesses {
            let label = format!("witness k={}", w.k);
            if !(1..=4).contains(&w.k) || w.eigenspace_tag != w.k || seen.contains(&w.k) {
                failures.push(format!("{label}: bad or repeated eigenspace tag"));
            }
            seen.push(w.k);
            if fresh.r.get((w.k as usize).wrapping_sub(1)) != Some(&1) {
                failures.push(format!("{label}: r_k is zero"));
            }
            let sub = FunctionFieldCurve::subfamily(a, b, w.k.clamp(1, 4), 1)?;
            let raw: CurvePoint<QuadExt> = CurvePoint::parse(&w.subfamily_point, Some("s"))?;
            if !sub.lift().on_curve(&raw) {
                failures.push(format!("{label}: subfamily point off curve"));
            }
            let desc: CurvePoint<Rational> = CurvePoint::parse(&w.descended_point, Some("s"))?;
            let emb: CurvePoint<Rational> = CurvePoint::parse(&w.embedded_point, Some("t"))?;
            if desc.is_identity() || !sub.on_curve(&desc) {
                failures.push(format!("{label}: descended point invalid"));
            }
            if !e.on_curve(&emb) {
                failures.push(format!("{label}: embedded point off E_(A,B)"));
                continue;
            }
            if embed_point(&desc, w.k, 1)? != emb {
                failures.push(format!("{label}: embedded point is not the base change"));
            }
            if e.non_torsion_witness(&emb, TORSION_CHECK_LIMIT).is_none() {
                failures.push(format!("{label}: could not rule out n P = O for n <= {TORSION_CHECK_LIMIT}"));
            }
            let lifted = emb.lift();
            if sigma_pullback(&lifted)? != e.lift().tau_pow(w.k, &lifted)? {
                failures.push(format!("{label}: not in the tau^k eigenspace"));
            }
        }
        Ok(failures)
    }
}
