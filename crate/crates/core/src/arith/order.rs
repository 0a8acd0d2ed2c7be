//! Multiplicative orders, with the standard convention at r = 2.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::factor::factorize;
use super::primality::is_prime;
use super::SignedBase;

/// The order `e(r, a)` of the base `a` modulo the prime `r`, for `r` odd
/// not dividing `a`. At `r = 2` (odd `a`) the convention is: 1 when
/// `a = 1 (mod 4)`, else 2.
pub fn mult_order(r: &BigUint, a: &SignedBase) -> Result<BigUint> {
    if !is_prime(r) {
        return Err(Error::invalid(format!("mult_order: {r} is not prime")));
    }
    if *r == BigUint::from(2u32) {
        let v = a.value();
        if v.is_even() {
            return Err(Error::invalid("mult_order: a must be odd at r = 2"));
        }
        let rem = v.mod_floor(&num_bigint::BigInt::from(4)); // in 0..4
        return Ok(if rem == num_bigint::BigInt::from(1) {
            BigUint::one()
        } else {
            BigUint::from(2u32)
        });
    }
    let r_int = num_bigint::BigInt::from(r.clone());
    let a_mod = a.value().mod_floor(&r_int).magnitude().clone();
    if a_mod.is_zero() {
        return Err(Error::invalid(format!("mult_order: {r} divides the base {a}")));
    }
    multiplicative_order_mod(&a_mod, r)
}

/// Order of `a` in `(Z / r)^*` for prime `r` and `a` not divisible by `r`.
/// Factors `r - 1` and descends prime by prime.
pub fn multiplicative_order_mod(a: &BigUint, r: &BigUint) -> Result<BigUint> {
    let one = BigUint::one();
    let mut order = r - &one;
    let f = factorize(&order)?;
    for (p, _) in f.pairs() {
        while (&order % p).is_zero() {
            let candidate = &order / p;
            if a.modpow(&candidate, r).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    debug_assert!(a.modpow(&order, r).is_one());
    Ok(order)
}
