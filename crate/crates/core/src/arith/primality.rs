//! Primality testing.
//!
//! Below 2^64 the answer is exact: Miller-Rabin with a witness set known to
//! be deterministic for the full 64-bit range. Above 2^64 the test is
//! Baillie-PSW (strong base-2 probable prime plus strong Lucas with
//! Selfridge parameters); callers that need to surface the distinction use
//! [`primality`] and receive [`Primality::ProbablePrime`] instead of a bare
//! `true`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Verdict of [`primality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primality {
    /// Proven prime (deterministic range).
    Prime,
    /// Passed Baillie-PSW; no counterexample to BPSW is known.
    ProbablePrime,
    Composite,
}

/// True when `n` is prime (below 2^64) or a Baillie-PSW probable prime.
pub fn is_prime(n: &BigUint) -> bool {
    primality(n) != Primality::Composite
}

/// Convenience wrapper for machine-word arguments.
pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u64_impl(n)
}

/// Classify `n`, distinguishing the deterministic range from the
/// probable-prime range.
pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64_impl(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    if n.is_even() {
        return Primality::Composite;
    }
    // Cheap divisibility screen before the heavy tests.
    for &p in SMALL_PRIMES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    if !strong_probable_prime(n, &BigUint::from(2u32)) {
        return Primality::Composite;
    }
    if !strong_lucas_probable_prime(n) {
        return Primality::Composite;
    }
    Primality::ProbablePrime
}

const SMALL_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn is_prime_u64_impl(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // This witness set is deterministic for all n < 2^64 (in fact for
    // n < 3.3 * 10^24).
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Strong probable-prime test to the given base. `n` must be odd and > 2.
pub(crate) fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: i64, n: &BigUint) -> i32 {
    debug_assert!(n.is_odd());
    // (-1/n) = (-1)^((n-1)/2)
    let sign = if a < 0 && (n % 4u32).to_u32().unwrap() == 3 {
        -1
    } else {
        1
    };
    let mut a = BigUint::from(a.unsigned_abs()) % n;
    let mut n = n.clone();
    sign * jacobi_uint(&mut a, &mut n)
}

fn jacobi_uint(a: &mut BigUint, n: &mut BigUint) -> i32 {
    let mut t = 1i32;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        *a >>= z;
        if z % 2 == 1 {
            let r = (&*n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        if (&*a % 4u32).to_u32().unwrap() == 3 && (&*n % 4u32).to_u32().unwrap() == 3 {
            t = -t;
        }
        std::mem::swap(a, n);
        *a %= &*n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
/// `n` must be odd, > 2, and not divisible by the small primes screened
/// above.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d: i64 = 5;
    loop {
        let j = jacobi(d, n);
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d.unsigned_abs()) != *n {
            return false;
        }
        if d == 13 {
            // A square never yields (D/n) = -1; rule it out once.
            let r = n.sqrt();
            if &r * &r == *n {
                return false;
            }
        }
        d = if d > 0 { -(d + 2) } else { -(d - 2) };
    }
    // P = 1, Q = (1 - D) / 4.
    let q_int: i64 = (1 - d) / 4;
    let n_big = n.clone();
    let to_residue = |v: i64| -> BigUint {
        if v >= 0 {
            BigUint::from(v as u64) % &n_big
        } else {
            let m = BigUint::from(v.unsigned_abs()) % &n_big;
            if m.is_zero() {
                m
            } else {
                &n_big - m
            }
        }
    };
    let d_res = to_residue(d);
    let q_res = to_residue(q_int);

    let one = BigUint::one();
    let np1 = n + &one;
    let s = np1.trailing_zeros().unwrap_or(0);
    let t = &np1 >> s; // odd

    // Compute U_t, V_t, Q^t by a left-to-right chain.
    let mut u = BigUint::one();
    let mut v = BigUint::one(); // U_1 = 1, V_1 = P = 1
    let mut qk = q_res.clone();
    let bits = t.bits();
    let halve = |x: BigUint| -> BigUint {
        if x.is_even() {
            x >> 1
        } else {
            (x + &n_big) >> 1
        }
    };
    for i in (0..bits - 1).rev() {
        // double: k -> 2k
        let u2 = (&u * &v) % &n_big;
        let v2 = {
            let vv = (&v * &v) % &n_big;
            let twoq = (&qk << 1) % &n_big;
            (&vv + &n_big - twoq) % &n_big
        };
        qk = (&qk * &qk) % &n_big;
        u = u2;
        v = v2;
        if t.bit(i) {
            // increment: k -> k+1 (P = 1)
            let un = halve((&u + &v) % &n_big);
            let vn = halve(((&d_res * &u) + &v) % &n_big);
            qk = (&qk * &q_res) % &n_big;
            u = un;
            v = vn;
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = {
            let vv = (&v * &v) % &n_big;
            let twoq = (&qk << 1) % &n_big;
            (&vv + &n_big - twoq) % &n_big
        };
        qk = (&qk * &qk) % &n_big;
        if v.is_zero() {
            return true;
        }
    }
    false
}
