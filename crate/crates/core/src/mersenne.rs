//! Lucas-Lehmer scan over Mersenne numbers `q = 2^k - 1`, recording for
//! each Mersenne prime the sixth cyclotomic value `Phi_6(q) = q^2 - q + 1`
//! and its primality classification.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{cyclotomic_value, is_prime_u64, primality, Primality};
use crate::error::{Error, Result};

/// Default scan ceiling for the exponent `k`.
pub const DEFAULT_MAX_EXPONENT: u32 = 1300;

/// Fixed seed for the supplementary Miller-Rabin rounds; part of the
/// output contract (determinism).
const MR_SEED: u64 = 0x7370_6563_7472_6131;

/// One record per Mersenne prime exponent in the scanned range.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MersenneRecord {
    /// Prime exponent with 2^k - 1 prime.
    pub k: u32,
    /// Decimal digits of q = 2^k - 1 (the value itself may be enormous).
    pub q_digits: usize,
    /// q = 2^k - 1 as a decimal string.
    pub q: String,
    /// Verdict for q itself (always prime here; kept for the record shape).
    pub q_is_prime: bool,
    /// Phi_6(q) = q^2 - q + 1 as a decimal string.
    pub phi6_value: String,
    /// Primality classification of Phi_6(q).
    pub phi6_is_prime: Primality,
}

/// Lucas-Lehmer test: is `2^k - 1` prime? `k` must be >= 2; composite `k`
/// short-circuits to false (then 2^k - 1 is composite), k = 2 to true.
pub fn lucas_lehmer(k: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::invalid("lucas_lehmer: exponent must be >= 2"));
    }
    if k == 2 {
        return Ok(true);
    }
    if !is_prime_u64(k as u64) {
        return Ok(false);
    }
    let m = (BigUint::one() << k) - 1u32;
    let mut s = BigUint::from(4u32);
    for _ in 0..k - 2 {
        s = (&s * &s + (&m - 2u32)) % &m;
    }
    Ok(s.is_zero())
}

/// Scan all exponents `2 <= k <= max_exponent`, keeping the Mersenne
/// primes; classify `Phi_6(q)` exactly below 2^64 and by Baillie-PSW plus
/// 20 fixed-seed Miller-Rabin rounds above.
pub fn scan(max_exponent: u32) -> Result<Vec<MersenneRecord>> {
    let mut out = Vec::new();
    for k in 2..=max_exponent {
        if !lucas_lehmer(k)? {
            continue;
        }
        let q = (BigUint::one() << k) - 1u32;
        let phi6 = cyclotomic_value(6, &BigInt::from(q.clone()))?
            .to_biguint()
            .expect("Phi_6 is positive on q >= 2");
        let verdict = classify(&phi6);
        out.push(MersenneRecord {
            k,
            q_digits: q.to_string().len(),
            q: q.to_string(),
            q_is_prime: true,
            phi6_value: phi6.to_string(),
            phi6_is_prime: verdict,
        });
    }
    Ok(out)
}

fn classify(n: &BigUint) -> Primality {
    match primality(n) {
        Primality::Composite => Primality::Composite,
        Primality::Prime => Primality::Prime,
        Primality::ProbablePrime => {
            // Supplementary rounds on top of BPSW, fixed seed.
            let mut rng = ChaCha20Rng::seed_from_u64(MR_SEED);
            let three = BigUint::from(3u32);
            if *n <= three {
                return Primality::ProbablePrime;
            }
            let span = n - &three; // bases drawn from [2, n - 2]
            for _ in 0..20 {
                let base = rng.gen_biguint_below(&span) + 2u32;
                if !crate::arith::strong_probable_prime(n, &base) {
                    return Primality::Composite;
                }
            }
            Primality::ProbablePrime
        }
    }
}

/// The Mersenne primes `q` in the scan whose `Phi_6(q)` is itself
/// (probably) prime, as decimal strings.
pub fn satisfying_q(records: &[MersenneRecord]) -> Vec<String> {
    records
        .iter()
        .filter(|r| r.phi6_is_prime != Primality::Composite)
        .map(|r| r.q.clone())
        .collect()
}
