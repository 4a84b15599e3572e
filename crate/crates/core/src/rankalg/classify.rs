//! Rank classification read directly off the sixth-power classes.
//!
//! Every predicate here works on exponent vectors of the class
//! representatives; nothing calls the root-extraction tests used by
//! [`super::rank_breakdown`]. The census compares both routes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Rational, SixthPowerClass};

/// Which rank-two condition matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rank2Case {
    /// `B` is a square or `-3` times a square and `AB` is `2^4` or `-2^4 3^3`
    /// modulo sixth powers.
    A,
    /// `A` is `2^4` or `2^4 (-3)^3` modulo sixth powers and `B` is a cube.
    B,
    /// Both classes lie in `{1, (-3)^3}`.
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Classification {
    /// `swapped` when the match needed `A` and `B` interchanged.
    Rank3 { swapped: bool },
    Rank2 { case: Rank2Case, swapped: bool },
    Rank1,
    Rank0,
}

impl Classification {
    pub fn rank(&self) -> u32 {
        match self {
            Classification::Rank3 { .. } => 3,
            Classification::Rank2 { .. } => 2,
            Classification::Rank1 => 1,
            Classification::Rank0 => 0,
        }
    }

    /// Short tag used in TSV output, e.g. `rank2a` or `rank3-swapped`.
    pub fn tag(&self) -> String {
        let (base, swapped) = match self {
            Classification::Rank3 { swapped } => ("rank3".to_string(), *swapped),
            Classification::Rank2 { case, swapped } => {
                let c = match case {
                    Rank2Case::A => 'a',
                    Rank2Case::B => 'b',
                    Rank2Case::C => 'c',
                };
                (format!("rank2{c}"), *swapped)
            }
            Classification::Rank1 => ("rank1".to_string(), false),
            Classification::Rank0 => ("rank0".to_string(), false),
        };
        if swapped { format!("{base}-swapped") } else { base }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Classification together with the classes it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyResult {
    pub a_class: SixthPowerClass,
    pub b_class: SixthPowerClass,
    pub classification: Classification,
}

/// Precomputed classes of the constants the predicates compare against.
#[derive(Debug, Clone)]
pub struct ClassTables {
    four: SixthPowerClass,
    neg3: SixthPowerClass,
}

impl Default for ClassTables {
    fn default() -> Self {
        ClassTables {
            four: SixthPowerClass::of(&Rational::from(4)).expect("small"),
            neg3: SixthPowerClass::of(&Rational::from(-3)).expect("small"),
        }
    }
}

fn is_cube(c: &SixthPowerClass) -> bool {
    c.exponents().all(|(_, e)| e % 3 == 0)
}

fn is_square(c: &SixthPowerClass) -> bool {
    !c.is_negative() && c.exponents().all(|(_, e)| e % 2 == 0)
}

/// `{1, (-3)^3}`.
fn in_unit_family(c: &SixthPowerClass) -> bool {
    c.equals_int(1) || c.equals_int(-27)
}

/// `{2^4, (-3)^3 2^4}`.
fn in_sixteen_family(c: &SixthPowerClass) -> bool {
    c.equals_int(16) || c.equals_int(-432)
}

impl ClassTables {
    fn square_or_neg3_square(&self, c: &SixthPowerClass) -> bool {
        is_square(c) || is_square(&c.mul(&self.neg3))
    }

    fn rank2_case(&self, a: &SixthPowerClass, b: &SixthPowerClass) -> Option<Rank2Case> {
        let ab = a.mul(b);
        if self.square_or_neg3_square(b) && (ab.equals_int(16) || ab.equals_int(-432)) {
            return Some(Rank2Case::A);
        }
        if in_sixteen_family(a) && is_cube(b) {
            return Some(Rank2Case::B);
        }
        if in_unit_family(a) && in_unit_family(b) {
            return Some(Rank2Case::C);
        }
        None
    }

    /// Some subfamily has a rational generator.
    fn positive_rank(&self, a: &SixthPowerClass, b: &SixthPowerClass) -> bool {
        let four_ab = self.four.mul(a).mul(b);
        let sq_a = self.square_or_neg3_square(a);
        let sq_b = self.square_or_neg3_square(b);
        (is_cube(&four_ab) && (sq_a || sq_b)) || (is_cube(a) && sq_b) || (is_cube(b) && sq_a)
    }

    pub fn classify_classes(&self, a: &SixthPowerClass, b: &SixthPowerClass) -> Classification {
        if in_unit_family(a) && in_sixteen_family(b) {
            return Classification::Rank3 { swapped: false };
        }
        if in_unit_family(b) && in_sixteen_family(a) {
            return Classification::Rank3 { swapped: true };
        }
        if let Some(case) = self.rank2_case(a, b) {
            return Classification::Rank2 { case, swapped: false };
        }
        if let Some(case) = self.rank2_case(b, a) {
            return Classification::Rank2 { case, swapped: true };
        }
        if self.positive_rank(a, b) {
            Classification::Rank1
        } else {
            Classification::Rank0
        }
    }
}

pub fn classify(a: &Rational, b: &Rational) -> Result<ClassifyResult> {
    if a.is_zero() {
        return Err(Error::ZeroInput("A"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("B"));
    }
    let a_class = SixthPowerClass::of(a)?;
    let b_class = SixthPowerClass::of(b)?;
    let classification = ClassTables::default().classify_classes(&a_class, &b_class);
    Ok(ClassifyResult { a_class, b_class, classification })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(a: i64, b: i64) -> Classification {
        classify(&Rational::from(a), &Rational::from(b)).unwrap().classification
    }

    #[test]
    fn examples() {
        assert_eq!(cls(1, 16), Classification::Rank3 { swapped: false });
        assert_eq!(cls(16, 1), Classification::Rank3 { swapped: true });
        assert_eq!(cls(-27, -432), Classification::Rank3 { swapped: false });
        assert_eq!(cls(1, -27), Classification::Rank2 { case: Rank2Case::C, swapped: false });
        assert_eq!(cls(1, 1), Classification::Rank2 { case: Rank2Case::C, swapped: false });
        assert_eq!(cls(4, 1), Classification::Rank1);
        assert_eq!(cls(2, 3), Classification::Rank0);
        assert_eq!(cls(64, 729 * 2).rank(), cls(1, 2).rank());
    }

    #[test]
    fn rank2_cases() {
        // B = 4 square, A B = 16
        assert_eq!(cls(4, 4), Classification::Rank2 { case: Rank2Case::A, swapped: false });
        // A = 16, B = 8 a cube (not in the unit family)
        assert_eq!(cls(16, 8).tag(), "rank2b");
        assert_eq!(cls(8, 16).tag(), "rank2b-swapped");
    }

    #[test]
    fn zero_rejected() {
        assert!(classify(&Rational::zero(), &Rational::one()).is_err());
    }
}
