//! Integer factorization for sixth-power classes.
//!
//! Trial division removes every prime below [`TRIAL_LIMIT`]. A cofactor
//! below `TRIAL_LIMIT^2` is then prime. Larger cofactors are split with
//! Brent's variant of Pollard rho under an iteration budget, and primality
//! of the pieces is decided by Miller-Rabin with the first thirteen prime
//! bases, which is deterministic below [`MR_DETERMINISTIC_LIMIT`]. Inputs
//! that would need a probabilistic verdict, or that exhaust the budget,
//! fail with [`Error::InputTooLarge`].

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const TRIAL_LIMIT: u64 = 1_000_000;

/// Miller-Rabin with bases 2..=41 is exact below this bound
/// (3.317 * 10^24).
pub const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Total rho iterations allowed across all splits.
    pub rho_budget: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { rho_budget: 2_000_000 }
    }
}

/// Prime factorization of `n >= 1` as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint, cfg: FactorConfig) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput("n"));
    }
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();

    // fast path while the cofactor fits in u64
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        if let Some(r) = rest.to_u64() {
            if p.saturating_mul(p) > r {
                break;
            }
        }
        let pb = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, rem) = rest.div_rem(&pb);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    let sq_limit = BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT);
    let fully_trialled = p > TRIAL_LIMIT;
    if !fully_trialled || rest < sq_limit {
        // every prime up to sqrt(rest) has been tried
        out.push((rest, 1));
        return Ok(out);
    }

    let mut budget = cfg.rho_budget;
    let mut stack = vec![rest];
    let mut big: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m < sq_limit || is_prime_large(&m)? {
            big.push(m);
            continue;
        }
        let d = split(&m, &mut budget)?;
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    big.sort();
    for q in big {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

fn is_prime_large(n: &BigUint) -> Result<bool> {
    // a composite verdict is always correct; a prime verdict needs the bound
    if !miller_rabin(n) {
        return Ok(false);
    }
    if *n >= BigUint::from(MR_DETERMINISTIC_LIMIT) {
        return Err(Error::InputTooLarge(format!(
            "cofactor {n} exceeds the deterministic primality bound"
        )));
    }
    Ok(true)
}

fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &MR_BASES {
        let a = BigUint::from(a);
        if &a % n == BigUint::zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial divisor of the odd composite `n`.
fn split(n: &BigUint, budget: &mut u64) -> Result<BigUint> {
    for c in 1u32.. {
        if let Some(d) = brent_rho(n, &BigUint::from(c), budget) {
            return Ok(d);
        }
        if *budget == 0 {
            return Err(Error::InputTooLarge(format!(
                "factorization budget exhausted on {n}"
            )));
        }
    }
    unreachable!()
}

fn brent_rho(n: &BigUint, c: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let m: u64 = 128;
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += steps;
            *budget = budget.saturating_sub(steps);
            if *budget == 0 && g == one {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        // backtrack one step at a time
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u128) -> Vec<(u128, u32)> {
        factorize(&BigUint::from(n), FactorConfig::default())
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_u128().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_numbers() {
        assert_eq!(fac(1), vec![]);
        assert_eq!(fac(2), vec![(2, 1)]);
        assert_eq!(fac(432), vec![(2, 4), (3, 3)]);
        assert_eq!(fac(999_983), vec![(999_983, 1)]);
        assert_eq!(fac(64 * 729 * 5), vec![(2, 6), (3, 6), (5, 1)]);
    }

    #[test]
    fn large_prime_cofactor_without_rho() {
        // 1_000_003 * 1_000_033 > TRIAL_LIMIT^2, needs rho
        assert_eq!(fac(1_000_003 * 1_000_033), vec![(1_000_003, 1), (1_000_033, 1)]);
        // prime above the trial window
        assert_eq!(fac(1_000_000_007), vec![(1_000_000_007, 1)]);
    }

    #[test]
    fn rho_splits_semiprimes() {
        let p: u128 = 1_000_000_007;
        let q: u128 = 998_244_353;
        assert_eq!(fac(p * q * q), vec![(q, 2), (p, 1)]);
        let r: u128 = 4_294_967_311; // prime just above 2^32
        assert_eq!(fac(r * r * 7), vec![(7, 1), (r, 2)]);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let p: u128 = 1_000_000_007;
        let q: u128 = 998_244_353;
        let r = factorize(&BigUint::from(p * q), FactorConfig { rho_budget: 1 });
        assert!(matches!(r, Err(Error::InputTooLarge(_))));
    }

    #[test]
    fn huge_prime_is_rejected_not_guessed() {
        // 2^127 - 1 is prime but above the deterministic Miller-Rabin bound
        let m127 = (BigUint::one() << 127u32) - BigUint::one();
        let r = factorize(&m127, FactorConfig::default());
        assert!(matches!(r, Err(Error::InputTooLarge(_))));
    }
}
