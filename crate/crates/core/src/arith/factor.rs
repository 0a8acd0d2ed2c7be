//! Integer factorization: trial division for small primes, then Brent's
//! variant of Pollard rho with a Pollard p-1 stage for stubborn cofactors.
//!
//! Everything is deterministic: fixed starting points, a fixed sequence of
//! rho polynomial offsets, and iteration budgets instead of wall-clock
//! limits, so two runs factor a number identically.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::primality::{is_prime, is_prime_u64};

/// Prime factorization as sorted `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub(crate) fn from_sorted(factors: Vec<(BigUint, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Factorization { factors }
    }

    /// Sorted `(prime, exponent)` pairs.
    pub fn pairs(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// The distinct primes, ascending.
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Exponent of `p`, zero if absent.
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Recompose the factored value.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::one();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Iteration budget for the rho stage. The default is ample for every
/// number this crate produces in its supported ranges; the graph builder
/// lowers it to honor user-facing timeouts deterministically.
#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    /// Total Brent iterations allowed per composite to split.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 1 << 27,
        }
    }
}

/// Factor `n >= 1` completely, or fail with [`Error::FactorBudget`] when the
/// rho budget is exhausted on some cofactor.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    match factorize_with_budget(n, FactorBudget::default()) {
        (f, leftovers) if leftovers.is_empty() => Ok(f),
        (_, leftovers) => Err(Error::FactorBudget {
            digits: leftovers[0].to_string().len(),
        }),
    }
}

/// Factor as much of `n` as the budget allows. Returns the factored part
/// and any remaining composite cofactors (each fully resistant within the
/// budget, pairwise unordered but reported sorted).
pub fn factorize_with_budget(n: &BigUint, budget: FactorBudget) -> (Factorization, Vec<BigUint>) {
    assert!(!n.is_zero(), "factorize: n must be nonzero");
    if n.is_one() {
        return (Factorization::from_sorted(vec![]), vec![]);
    }
    if let Some(cached) = cache_get(n) {
        return (cached, vec![]);
    }

    let mut counts: HashMap<BigUint, u32> = HashMap::new();
    let mut leftovers: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();

    // Small-prime stage. Machine-word numbers get plain trial division over
    // the full sieve; larger ones get scalar remainders by the primes below
    // 10^4 only, since rho finds anything between 10^4 and 10^6 instantly.
    if rest.to_u64().is_some() {
        let mut m = rest.to_u64().unwrap();
        for &p in small_primes() {
            if p as u128 * p as u128 > m as u128 {
                break;
            }
            while m % p == 0 {
                *counts.entry(BigUint::from(p)).or_insert(0) += 1;
                m /= p;
            }
        }
        rest = BigUint::from(m);
    } else {
        for &p in small_primes() {
            if p >= 10_000 {
                break;
            }
            while (&rest % p).is_zero() {
                *counts.entry(BigUint::from(p)).or_insert(0) += 1;
                rest /= p;
            }
        }
    }

    // Split what remains.
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                *counts.entry(m).or_insert(0) += 1;
                continue;
            }
            // Perfect powers: rho behaves poorly on p^2; peel roots first.
            if let Some((root, k)) = perfect_power(&m) {
                for _ in 0..k {
                    stack.push(root.clone());
                }
                continue;
            }
            match split_composite(&m, budget) {
                Some(d) => {
                    let other = &m / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => leftovers.push(m),
            }
        }
    }

    let mut factors: Vec<(BigUint, u32)> = counts.into_iter().collect();
    factors.sort();
    leftovers.sort();
    let f = Factorization::from_sorted(factors);
    if leftovers.is_empty() {
        cache_put(n, &f);
    }
    (f, leftovers)
}

/// Factor a machine word completely (never budget-limited: rho on 64-bit
/// values always succeeds quickly).
pub fn factorize_u64(n: u64) -> Result<Factorization> {
    factorize(&BigUint::from(n))
}

fn cache() -> &'static Mutex<HashMap<BigUint, Factorization>> {
    static CACHE: OnceLock<Mutex<HashMap<BigUint, Factorization>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_get(n: &BigUint) -> Option<Factorization> {
    cache().lock().ok()?.get(n).cloned()
}

fn cache_put(n: &BigUint, f: &Factorization) {
    // Unbounded would be fine for the supported ranges, but stay defensive.
    if n.bits() <= 4096 {
        if let Ok(mut c) = cache().lock() {
            if c.len() < 1 << 16 {
                c.insert(n.clone(), f.clone());
            }
        }
    }
}

/// Preload the cache (used by the CLI's optional cache file).
pub fn cache_seed(entries: impl IntoIterator<Item = (BigUint, Vec<(BigUint, u32)>)>) {
    for (n, pairs) in entries {
        let f = Factorization {
            factors: pairs,
        };
        if f.value() == n && f.factors.windows(2).all(|w| w[0].0 < w[1].0) {
            cache_put(&n, &f);
        }
    }
}

/// Snapshot the cache (used by the CLI's optional cache file).
pub fn cache_snapshot() -> Vec<(BigUint, Vec<(BigUint, u32)>)> {
    let mut out: Vec<_> = cache()
        .lock()
        .map(|c| {
            c.iter()
                .map(|(n, f)| (n.clone(), f.factors.clone()))
                .collect::<Vec<_>>()
        })
        .unwrap_or_default();
    out.sort();
    out
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 1_000_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < limit {
            if sieve[i] {
                let mut j = i * i;
                while j < limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..limit).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

/// Largest k with n = r^k for some r, together with r; None when k = 1.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits();
    for k in (2..=bits.min(64) as u32).rev() {
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Find a nontrivial divisor of composite `m`, or None within budget.
fn split_composite(m: &BigUint, budget: FactorBudget) -> Option<BigUint> {
    if let Some(small) = m.to_u64() {
        return split_u64(small).map(BigUint::from);
    }
    // A cheap p-1 stage often cracks cofactors of cyclotomic values, whose
    // prime factors r satisfy r = 1 (mod i) and frequently have smooth r-1.
    if let Some(d) = pollard_p_minus_1(m, 100_000) {
        return Some(d);
    }
    brent_rho(m, budget.rho_iterations)
}

fn pollard_p_minus_1(m: &BigUint, b1: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut a = BigUint::from(2u32);
    for &p in small_primes() {
        if p > b1 {
            break;
        }
        // Raise to p^k with p^k <= b1 < p^(k+1).
        let mut pk = p;
        while pk <= b1 / p {
            pk *= p;
        }
        a = a.modpow(&BigUint::from(pk), m);
        if a.is_one() {
            return None;
        }
    }
    let g = (if a.is_zero() { m.clone() } else { &a - &one }).gcd(m);
    if !g.is_one() && g != *m {
        Some(g)
    } else {
        None
    }
}

/// Brent's cycle-finding rho with batched gcds and a deterministic offset
/// sequence.
fn brent_rho(m: &BigUint, max_iterations: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut spent: u64 = 0;
    let mut per_offset: u64 = 1 << 18;
    let mut c: u64 = 1;
    while spent < max_iterations {
        let allowance = per_offset.min(max_iterations - spent);
        if let Some(d) = brent_rho_once(m, c, allowance) {
            if d != *m && d > one {
                return Some(d);
            }
        }
        spent += allowance;
        c += 1;
        per_offset = per_offset.saturating_mul(2);
    }
    None
}

fn brent_rho_once(m: &BigUint, c: u64, max_iterations: u64) -> Option<BigUint> {
    let c_big = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c_big) % m;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g;
    let mut x;
    let mut ys = y.clone();
    let mut iterations: u64 = 0;
    let batch = 128u64;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k: u64 = 0;
        g = BigUint::one();
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = batch.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                if diff.is_zero() {
                    g = m.clone();
                    break;
                }
                q = (q * diff) % m;
            }
            if g.is_one() {
                g = q.gcd(m);
            }
            k += steps;
            iterations += steps;
            if iterations > max_iterations {
                return None;
            }
        }
        if !g.is_one() {
            break;
        }
        r *= 2;
    }
    if g == *m {
        // A batched gcd collapsed; walk back one step at a time from the
        // last batch start.
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            if diff.is_zero() {
                return None;
            }
            g = diff.gcd(m);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *m {
        None
    } else {
        Some(g)
    }
}

/// Rho for machine words; always succeeds (trial division already removed
/// factors below 10^6, so the number is a product of at most three primes
/// in range for rho).
fn split_u64(m: u64) -> Option<u64> {
    debug_assert!(!is_prime_u64(m) && m > 1);
    let mut c: u64 = 1;
    loop {
        if let Some(d) = brent_rho_u64(m, c) {
            if d != m && d > 1 {
                return Some(d);
            }
        }
        c += 1;
        if c > 64 {
            // Unreachable for composite m in practice; fall back to the
            // bignum path defensively.
            return brent_rho(&BigUint::from(m), 1 << 30).and_then(|d| d.to_u64());
        }
    }
}

fn brent_rho_u64(m: u64, c: u64) -> Option<u64> {
    let f = |x: u64| -> u64 { ((x as u128 * x as u128 + c as u128) % m as u128) as u64 };
    let mut y: u64 = 2;
    let mut r: u64 = 1;
    let mut q: u64 = 1;
    let mut g: u64;
    let mut x: u64;
    let mut ys = y;
    let limit: u64 = 1 << 24;
    let mut iterations: u64 = 0;
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        g = 1;
        while k < r && g == 1 {
            ys = y;
            let steps = 128.min(r - k);
            for _ in 0..steps {
                y = f(y);
                let diff = x.abs_diff(y);
                if diff == 0 {
                    g = m;
                    break;
                }
                q = ((q as u128 * diff as u128) % m as u128) as u64;
            }
            if g == 1 {
                g = gcd_u64(q, m);
            }
            k += steps;
            iterations += steps;
            if iterations > limit {
                return None;
            }
        }
        if g != 1 {
            break;
        }
        r *= 2;
    }
    if g == m {
        loop {
            ys = f(ys);
            let diff = x.abs_diff(ys);
            if diff == 0 {
                return None;
            }
            g = gcd_u64(diff, m);
            if g > 1 {
                break;
            }
        }
    }
    if g == m {
        None
    } else {
        Some(g)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u64) -> Vec<(u64, u32)> {
        factorize_u64(n)
            .unwrap()
            .pairs()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(fac(1), vec![]);
        assert_eq!(fac(2), vec![(2, 1)]);
        assert_eq!(fac(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(fac(1_000_003), vec![(1_000_003, 1)]);
    }

    #[test]
    fn recomposition_round_trips() {
        for n in [2u64, 97, 1024, 600851475143, 999999999989, 2u64.pow(61) - 1] {
            let f = factorize_u64(n).unwrap();
            assert_eq!(f.value(), BigUint::from(n));
        }
    }

    #[test]
    fn semiprime_u64() {
        // 10000000019 * 10000000033
        let n = BigUint::from(10000000019u64) * BigUint::from(10000000033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(
            f.pairs()
                .iter()
                .map(|(p, e)| (p.to_u64().unwrap(), *e))
                .collect::<Vec<_>>(),
            vec![(10000000019, 1), (10000000033, 1)]
        );
    }

    #[test]
    fn perfect_power_is_peeled() {
        let p = BigUint::from(1000003u64);
        let n = p.pow(3);
        let f = factorize(&n).unwrap();
        assert_eq!(f.pairs(), &[(p, 3)]);
    }

    #[test]
    fn mersenne_67_splits() {
        let n = (BigUint::one() << 67) - 1u32;
        let f = factorize(&n).unwrap();
        let ps: Vec<String> = f.primes().map(|p| p.to_string()).collect();
        assert_eq!(ps, vec!["193707721", "761838257287"]);
    }
}
