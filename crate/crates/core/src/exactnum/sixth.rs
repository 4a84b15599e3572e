use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};

use crate::error::{Error, Result};

use super::factor::{factorize, FactorConfig};
use super::Rational;

/// Canonical representative of the image of a nonzero rational in
/// `Q* / (Q*)^6`: the unique sixth-power-free integer in the class, sign
/// kept. The class of `16/81`, say, is `16 * 3^2 = 144`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SixthPowerClass {
    representative: BigInt,
    negative: bool,
    /// prime -> exponent in 1..=5
    exponents: BTreeMap<BigUint, u32>,
}

impl SixthPowerClass {
    pub fn of(x: &Rational) -> Result<Self> {
        Self::of_with(x, FactorConfig::default())
    }

    pub fn of_with(x: &Rational, cfg: FactorConfig) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroInput("x"));
        }
        let mut exps: BTreeMap<BigUint, i64> = BTreeMap::new();
        for (p, e) in factorize(x.numer().magnitude(), cfg)? {
            *exps.entry(p).or_default() += i64::from(e);
        }
        for (p, e) in factorize(x.denom().magnitude(), cfg)? {
            *exps.entry(p).or_default() -= i64::from(e);
        }
        let exponents = exps
            .into_iter()
            .filter_map(|(p, e)| {
                let r = e.rem_euclid(6) as u32;
                (r != 0).then_some((p, r))
            })
            .collect();
        Ok(Self::from_parts(x.is_negative(), exponents))
    }

    fn from_parts(negative: bool, exponents: BTreeMap<BigUint, u32>) -> Self {
        let mut rep = BigUint::one();
        for (p, e) in &exponents {
            rep *= Pow::pow(p, *e);
        }
        let mut representative = BigInt::from(rep);
        if negative {
            representative = -representative;
        }
        SixthPowerClass { representative, negative, exponents }
    }

    /// The class as a rational with denominator one.
    pub fn representative(&self) -> Rational {
        Rational::from_integer(self.representative.clone())
    }

    pub fn representative_int(&self) -> &BigInt {
        &self.representative
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Exponent of `p` in the representative (0..=5).
    pub fn valuation(&self, p: u64) -> u32 {
        self.exponents.get(&BigUint::from(p)).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&BigUint, u32)> {
        self.exponents.iter().map(|(p, e)| (p, *e))
    }

    /// Class of the product; combines exponent vectors, no refactoring.
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exponents.clone();
        for (p, e) in &other.exponents {
            *exps.entry(p.clone()).or_default() += e;
        }
        exps.retain(|_, e| {
            *e %= 6;
            *e != 0
        });
        Self::from_parts(self.negative != other.negative, exps)
    }

    pub fn is_identity(&self) -> bool {
        !self.negative && self.exponents.is_empty()
    }

    pub fn equals_int(&self, n: i64) -> bool {
        self.representative == BigInt::from(n)
    }
}

impl fmt::Display for SixthPowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative)
    }
}

impl fmt::Debug for SixthPowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SixthPowerClass({})", self.representative)
    }
}

/// Free-function form of [`SixthPowerClass::of`].
pub fn sixth_power_class(x: &Rational) -> Result<SixthPowerClass> {
    SixthPowerClass::of(x)
}

/// Whether `|n|` has no sixth-power divisor other than 1.
pub fn is_sixth_power_free(n: i64) -> bool {
    n != 0 && SixthPowerClass::of(&Rational::from(n))
        .map(|c| c.representative == BigInt::from(n))
        .unwrap_or(false)
}
