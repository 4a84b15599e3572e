use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{is_kth_power, Rational, SixthPowerClass};

/// How the normalized pair was reached: `A = u^6 A'`, `B = v^6 B'` (before
/// any swap), and whether the two entries were then interchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizeTranscript {
    pub u: Rational,
    pub v: Rational,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedPair {
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
    pub transcript: NormalizeTranscript,
}

/// Ordering key: pairs whose second class is in `{1, -27}` sort last, then
/// by value.
fn order_key(a: &SixthPowerClass, b: &SixthPowerClass) -> (bool, Rational, Rational) {
    let unit = b.equals_int(1) || b.equals_int(-27);
    (unit, a.representative(), b.representative())
}

/// Replaces `A`, `B` by their sixth-power-free representatives and picks a
/// canonical order, so that `(A, B)` and `(B, A)` normalize identically.
pub fn normalize_pair(a: &Rational, b: &Rational) -> Result<NormalizedPair> {
    if a.is_zero() {
        return Err(Error::ZeroInput("A"));
    }
    if b.is_zero() {
        return Err(Error::ZeroInput("B"));
    }
    let ca = SixthPowerClass::of(a)?;
    let cb = SixthPowerClass::of(b)?;
    let scale = |x: &Rational, c: &SixthPowerClass| {
        let ratio = x.checked_div(&c.representative()).expect("class is nonzero");
        is_kth_power(&ratio, 6).expect("x / class(x) is a sixth power")
    };
    let u = scale(a, &ca);
    let v = scale(b, &cb);
    let swapped = order_key(&cb, &ca) < order_key(&ca, &cb);
    let (na, nb) = if swapped { (cb, ca) } else { (ca, cb) };
    Ok(NormalizedPair {
        a: na.representative(),
        b: nb.representative(),
        transcript: NormalizeTranscript { u, v, swapped },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn examples() {
        let n = normalize_pair(&q(64), &q(729)).unwrap();
        assert_eq!((n.a.clone(), n.b.clone()), (q(1), q(1)));
        assert_eq!((n.transcript.u, n.transcript.v), (q(2), q(3)));
        assert!(!n.transcript.swapped);

        let n = normalize_pair(&q(16), &q(1)).unwrap();
        assert_eq!((n.a, n.b), (q(1), q(16)));
        assert!(n.transcript.swapped);

        let x = normalize_pair(&q(-5), &q(7 * 64)).unwrap();
        let y = normalize_pair(&q(7 * 64), &q(-5)).unwrap();
        assert_eq!((x.a, x.b), (y.a, y.b));
    }

    #[test]
    fn rational_scale_factor() {
        let a = Rational::normalize(3, 64).unwrap();
        let n = normalize_pair(&a, &q(1)).unwrap();
        // 3/64 = (1/2)^6 * 3
        assert_eq!(n.transcript.u, Rational::normalize(1, 2).unwrap());
        assert_eq!(n.b, q(3));
        assert!(n.transcript.swapped);
    }
}
