//! Exact integer arithmetic: factorization, primality, multiplicative
//! orders, cyclotomic polynomials, and primitive parts of `a^i - 1`.
//!
//! The central quantity is `k_i(a)`, the product of the full `r`-parts of
//! `a^i - 1` over the primes `r` for which `i` is the least exponent with
//! `r | a^i - 1` (the "primitive" primes at level `i`). It is computed
//! without factoring via cyclotomic values and a single gcd; the brute
//! force route through full factorization exists in the test suite as an
//! independent oracle.

mod cyclo;
mod factor;
mod order;
mod primality;
mod primitive;

pub use cyclo::{cyclotomic_coeffs, cyclotomic_value};
pub use factor::{
    cache_seed, cache_snapshot, factorize, factorize_u64, factorize_with_budget, FactorBudget,
    Factorization,
};
pub use order::{mult_order, multiplicative_order_mod};
pub use primality::{is_prime, is_prime_u64, primality, Primality};
pub(crate) use primality::strong_probable_prime;
pub use primitive::{
    k_value, k_value_by_factorization, k_value_by_gcd_sieve, primitive_prime_divisors,
    zsigmondy_exception,
};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A nonzero integer base `a` with `|a| >= 2`, the domain on which orders,
/// primitive divisors, and `k_i(a)` are defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedBase(BigInt);

impl SignedBase {
    pub fn new(a: BigInt) -> Result<Self> {
        if a.magnitude() < &BigUint::from(2u32) {
            return Err(Error::invalid(format!("base must satisfy |a| >= 2, got {a}")));
        }
        Ok(SignedBase(a))
    }

    pub fn from_i64(a: i64) -> Result<Self> {
        Self::new(BigInt::from(a))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn abs(&self) -> BigUint {
        self.0.magnitude().clone()
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Minus
    }

    /// `-a` (stays in the domain).
    pub fn negated(&self) -> SignedBase {
        SignedBase(-&self.0)
    }

    /// `a^i` as a signed integer.
    pub fn pow(&self, i: u32) -> BigInt {
        self.0.pow(i)
    }

    /// `|a^i - 1|`, which is nonzero for every i >= 1.
    pub fn pow_minus_one_abs(&self, i: u32) -> BigUint {
        (self.pow(i) - BigInt::one()).magnitude().clone()
    }
}

impl std::fmt::Display for SignedBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The exponent map used to move between a base and its negation:
/// `nu(k) = 2k` for odd k, `k/2` when `k = 2 (mod 4)`, and `k` otherwise.
pub fn nu(k: u64) -> u64 {
    assert!(k > 0, "nu is defined on positive integers");
    if k % 2 == 1 {
        2 * k
    } else if k % 4 == 2 {
        k / 2
    } else {
        k
    }
}

/// `eta(k) = k` for odd k, `k/2` for even k.
pub fn eta(k: u64) -> u64 {
    assert!(k > 0, "eta is defined on positive integers");
    if k % 2 == 1 {
        k
    } else {
        k / 2
    }
}

/// The `r`-part of `n`: the largest power of the prime `r` dividing `n`.
pub fn r_part(n: &BigUint, r: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::invalid("r_part: n must be nonzero"));
    }
    if r < &BigUint::from(2u32) {
        return Err(Error::invalid("r_part: r must be a prime >= 2"));
    }
    let mut part = BigUint::one();
    let mut rest = n.clone();
    loop {
        let (q, rem) = rest.div_rem(r);
        if !rem.is_zero() {
            break;
        }
        part *= r;
        rest = q;
    }
    Ok(part)
}

/// The largest-prime-free part of `i` with respect to `r`: divide out every
/// power of `r`.
pub(crate) fn coprime_part(mut i: u64, r: u64) -> u64 {
    while i % r == 0 {
        i /= r;
    }
    i
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("euler_phi(0)"));
    }
    let f = factorize_u64(n)?;
    let mut phi: u64 = 1;
    for (p, e) in f.pairs() {
        let p = p.to_u64().expect("factor of a u64 fits in u64");
        phi *= (p - 1) * p.pow(e - 1);
    }
    Ok(phi)
}

/// Moebius function: 0 on non-squarefree, else (-1)^(number of primes).
pub fn moebius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::invalid("moebius(0)"));
    }
    let f = factorize_u64(n)?;
    if f.pairs().iter().any(|(_, e)| *e > 1) {
        return Ok(0);
    }
    Ok(if f.pairs().len() % 2 == 0 { 1 } else { -1 })
}

/// Sorted divisors of `n >= 1`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::invalid("divisors(0)"));
    }
    let f = factorize_u64(n)?;
    let mut out = vec![1u64];
    for (p, e) in f.pairs() {
        let p = p.to_u64().expect("factor of a u64 fits in u64");
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..*e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    Ok(out)
}
