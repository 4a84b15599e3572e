use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{is_kth_power, is_square_or_neg3_square, Rational, SixthPowerClass, SquareClass};

/// Outcome of a cube test, with the root as witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeTest {
    /// Which quantity was tested: `"4AB"`, `"A"` or `"B"`.
    pub label: String,
    pub value: Rational,
    pub root: Option<Rational>,
}

impl CubeTest {
    fn run(label: &str, value: Rational) -> Self {
        let root = is_kth_power(&value, 3);
        CubeTest { label: label.to_string(), value, root }
    }

    pub fn holds(&self) -> bool {
        self.root.is_some()
    }
}

/// Outcome of the "square or -3 times a square" test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareTest {
    /// `"A"` or `"B"`.
    pub label: String,
    pub value: Rational,
    pub class: SquareClass,
}

impl SquareTest {
    fn run(label: &str, value: Rational) -> Result<Self> {
        let class = is_square_or_neg3_square(&value)?;
        Ok(SquareTest { label: label.to_string(), value, class })
    }

    pub fn holds(&self) -> bool {
        self.class.holds()
    }
}

/// Why `r_k` is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReason {
    pub k: u32,
    pub value: u8,
    pub cube: CubeTest,
    pub square: SquareTest,
}

/// `r_1..r_4` with witnesses and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBreakdown {
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
    /// `None` when the class could not be computed within the
    /// factorization budget; the rank does not depend on it.
    #[serde(rename = "A_class", with = "opt_class")]
    pub a_class: Option<SixthPowerClass>,
    #[serde(rename = "B_class", with = "opt_class")]
    pub b_class: Option<SixthPowerClass>,
    pub r: [u8; 4],
    pub rank: u32,
    pub reasons: Vec<TermReason>,
}

mod opt_class {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactnum::{Rational, SixthPowerClass};

    pub fn serialize<S: Serializer>(c: &Option<SixthPowerClass>, s: S) -> Result<S::Ok, S::Error> {
        match c {
            Some(c) => s.collect_str(c),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<SixthPowerClass>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| {
            let r: Rational = s.parse().map_err(serde::de::Error::custom)?;
            SixthPowerClass::of(&r).map_err(serde::de::Error::custom)
        })
        .transpose()
    }
}

impl RankBreakdown {
    pub fn r(&self, k: u32) -> u8 {
        self.r[(k - 1) as usize]
    }

    pub fn reason(&self, k: u32) -> &TermReason {
        &self.reasons[(k - 1) as usize]
    }
}

/// The four terms `r_1..r_4` without sixth-power classes.
pub fn rank_terms(a: &Rational, b: &Rational) -> Result<[TermReason; 4]> {
    if a.is_zero() {
        return Err(Error::ZeroInput("A"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("B"));
    }
    let four_ab = Rational::from(4) * a * b;
    let cube_4ab = CubeTest::run("4AB", four_ab);
    let cube_a = CubeTest::run("A", a.clone());
    let cube_b = CubeTest::run("B", b.clone());
    let sq_a = SquareTest::run("A", a.clone())?;
    let sq_b = SquareTest::run("B", b.clone())?;

    let term = |k: u32, cube: &CubeTest, square: &SquareTest| TermReason {
        k,
        value: u8::from(cube.holds() && square.holds()),
        cube: cube.clone(),
        square: square.clone(),
    };
    let terms = [
        term(1, &cube_4ab, &sq_a),
        term(2, &cube_a, &sq_b),
        term(3, &cube_b, &sq_a),
        term(4, &cube_4ab, &sq_b),
    ];
    // all four would make A, B and 4AB cubes, hence 4 a cube
    assert!(
        terms.iter().any(|t| t.value == 0),
        "rank 4 is impossible (A={a}, B={b})"
    );
    Ok(terms)
}

/// `rank E_{A,B}(Q(t)) = r_1 + r_2 + r_3 + r_4`.
pub fn rank_breakdown(a: &Rational, b: &Rational) -> Result<RankBreakdown> {
    let terms = rank_terms(a, b)?;
    let r = [terms[0].value, terms[1].value, terms[2].value, terms[3].value];
    Ok(RankBreakdown {
        a: a.clone(),
        b: b.clone(),
        a_class: SixthPowerClass::of(a).ok(),
        b_class: SixthPowerClass::of(b).ok(),
        r,
        rank: r.iter().map(|&x| u32::from(x)).sum(),
        reasons: terms.to_vec(),
    })
}

/// Rank only.
pub fn rank(a: &Rational, b: &Rational) -> Result<u32> {
    Ok(rank_terms(a, b)?.iter().map(|t| u32::from(t.value)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn known_instances() {
        let cases: [(i64, i64, [u8; 4]); 5] = [
            (1, 16, [1, 1, 0, 1]),
            (-27, 16, [1, 1, 0, 1]),
            (1, 1, [0, 1, 1, 0]),
            (2, 3, [0, 0, 0, 0]),
            (8, 9, [0, 1, 0, 0]),
        ];
        for (a, b, r) in cases {
            let bd = rank_breakdown(&q(a), &q(b)).unwrap();
            assert_eq!(bd.r, r, "({a}, {b})");
            assert_eq!(bd.rank, r.iter().map(|&x| x as u32).sum::<u32>());
        }
    }

    #[test]
    fn witnesses_are_recorded() {
        let bd = rank_breakdown(&q(-27), &q(16)).unwrap();
        let r1 = bd.reason(1);
        assert_eq!(r1.cube.root, Some(q(-12)));
        assert_eq!(r1.square.class, SquareClass::Neg3Square(q(9)));
        assert_eq!(bd.reason(2).cube.root, Some(q(-3)));
        assert_eq!(bd.reason(2).square.class, SquareClass::Square(q(4)));
        assert_eq!(bd.a_class.as_ref().unwrap().to_string(), "-27");
    }

    #[test]
    fn bound_one_by_hand() {
        assert_eq!(rank(&q(1), &q(1)).unwrap(), 2);
        assert_eq!(rank(&q(1), &q(-1)).unwrap(), 1);
        assert_eq!(rank(&q(-1), &q(1)).unwrap(), 1);
        assert_eq!(rank(&q(-1), &q(-1)).unwrap(), 0);
    }

    #[test]
    fn zero_inputs() {
        assert_eq!(rank(&q(0), &q(5)), Err(Error::ZeroInput("A")));
        assert_eq!(rank(&q(5), &q(0)), Err(Error::ZeroInput("B")));
    }

    #[test]
    fn json_shape() {
        let bd = rank_breakdown(&q(1), &q(16)).unwrap();
        let v = serde_json::to_value(&bd).unwrap();
        assert_eq!(v["A"], "1");
        assert_eq!(v["B_class"], "16");
        assert_eq!(v["r"], serde_json::json!([1, 1, 0, 1]));
        assert_eq!(v["rank"], 3);
        assert_eq!(v["reasons"][0]["cube"]["root"], "4");
        assert_eq!(v["reasons"][2]["square"]["class"]["kind"], "square");
        let back: RankBreakdown = serde_json::from_value(v).unwrap();
        assert_eq!(back, bd);
    }
}
