//! Cyclotomic polynomials: exact coefficients and fast exact evaluation.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{divisors, moebius};

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
///
/// Computed by iterated exact division: `x^n - 1` divided by `Phi_d` for
/// every proper divisor `d` of `n`, building the `Phi_d` the same way in
/// increasing order. All arithmetic is over `BigInt`; no floating point,
/// no modular shortcuts.
pub fn cyclotomic_coeffs(n: u32) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::invalid("cyclotomic_coeffs: n must be >= 1"));
    }
    let divs = divisors(n as u64)?;
    // Phi_d for each divisor d of n, computed in increasing order.
    let mut memo: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for &d in &divs {
        // x^d - 1
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = BigInt::from(-1);
        poly[d as usize] = BigInt::one();
        for (e, phi_e) in &memo {
            if d % e == 0 {
                poly = poly_div_exact(&poly, phi_e)?;
            }
        }
        memo.push((d, poly));
    }
    Ok(memo.pop().expect("n divides n").1)
}

/// Exact quotient of polynomials over Z; errors if division is not exact.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    if dn < dd {
        return Err(Error::invalid("poly_div_exact: degree underflow"));
    }
    let lead = den[dd].clone();
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let (q, r) = rem[i + dd].div_rem(&lead);
        if !r.is_zero() {
            return Err(Error::invalid("poly_div_exact: inexact leading division"));
        }
        if q.is_zero() {
            continue;
        }
        quot[i] = q.clone();
        for (j, d_j) in den.iter().enumerate() {
            let t = d_j * &q;
            rem[i + j] -= t;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::invalid("poly_div_exact: nonzero remainder"));
    }
    Ok(quot)
}

/// `Phi_n(a)` evaluated exactly.
///
/// For `|a| >= 2` this uses the Moebius product over divisors of `n`
/// (two products and one exact division), which stays fast even for very
/// large `a`. For `|a| <= 1` it falls back to direct evaluation of the
/// coefficient vector. The value is negative only for n in {1, 2} (and
/// only for suitable `a`); for n >= 3 it is always positive on
/// `|a| >= 2`.
pub fn cyclotomic_value(n: u32, a: &BigInt) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("cyclotomic_value: n must be >= 1"));
    }
    if a.magnitude() < &BigUint::from(2u32) {
        let coeffs = cyclotomic_coeffs(n)?;
        let mut acc = BigInt::zero();
        for c in coeffs.iter().rev() {
            acc = acc * a + c;
        }
        return Ok(acc);
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors(n as u64)? {
        let m = moebius((n as u64) / d)?;
        if m == 0 {
            continue;
        }
        let t = a.pow(d as u32) - 1;
        if m == 1 {
            num *= t;
        } else {
            den *= t;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "cyclotomic product must divide exactly");
    if !r.is_zero() {
        return Err(Error::invalid("cyclotomic_value: internal division mismatch"));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn coeffs_i64(n: u32) -> Vec<i64> {
        cyclotomic_coeffs(n)
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn first_few_polynomials() {
        assert_eq!(coeffs_i64(1), vec![-1, 1]);
        assert_eq!(coeffs_i64(2), vec![1, 1]);
        assert_eq!(coeffs_i64(3), vec![1, 1, 1]);
        assert_eq!(coeffs_i64(4), vec![1, 0, 1]);
        assert_eq!(coeffs_i64(6), vec![1, -1, 1]);
        assert_eq!(coeffs_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degree_is_totient() {
        for n in 1u32..=120 {
            let c = cyclotomic_coeffs(n).unwrap();
            assert_eq!(
                c.len() as u64 - 1,
                super::super::euler_phi(n as u64).unwrap(),
                "n = {n}"
            );
            assert!(c.last().unwrap().is_one());
        }
    }

    #[test]
    fn coefficient_of_105_breaks_the_pattern() {
        // The first index with a coefficient outside {-1, 0, 1}.
        let c = cyclotomic_coeffs(105).unwrap();
        assert!(c.iter().any(|x| x.magnitude() > &BigUint::from(1u32)));
        assert_eq!(c[7], BigInt::from(-2));
        for n in 1..105u32 {
            let c = cyclotomic_coeffs(n).unwrap();
            assert!(
                c.iter().all(|x| x.magnitude() <= &BigUint::from(1u32)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn value_agrees_with_horner() {
        for n in 1u32..=36 {
            let coeffs = cyclotomic_coeffs(n).unwrap();
            for a in -9i64..=9 {
                let a = BigInt::from(a);
                let mut acc = BigInt::zero();
                for c in coeffs.iter().rev() {
                    acc = &acc * &a + c;
                }
                assert_eq!(cyclotomic_value(n, &a).unwrap(), acc, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn signed_values_at_small_n() {
        assert_eq!(cyclotomic_value(1, &BigInt::from(-5)).unwrap(), BigInt::from(-6));
        assert_eq!(cyclotomic_value(2, &BigInt::from(-2)).unwrap(), BigInt::from(-1));
        assert_eq!(cyclotomic_value(2, &BigInt::from(7)).unwrap(), BigInt::from(8));
    }
}
