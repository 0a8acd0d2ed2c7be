//! Exact neighborhood data for the canonical pair of primitive-prime
//! vertex classes with disjoint neighborhoods: the literal degree of each
//! class and the maximal element orders divisible by a member of it.
//! Every order through such a prime divides one of the listed values, so
//! this data decides adjacency against both classes outright.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::nu;
use crate::error::{Error, Result};

use super::{Family, GroupSpec, Sign};

/// Degrees and maximal orders for the two designated vertex classes.
///
/// `r1_degree` and `r2_degree` are literal degrees `e(r, q)`. An element
/// order divisible by a class member divides one of the corresponding
/// `m` entries; a prime vertex is adjacent to the class if and only if it
/// divides one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointData {
    pub r1_degree: u64,
    pub r2_degree: u64,
    pub m1: Vec<BigUint>,
    pub m2: Vec<BigUint>,
}

/// Exact positive quotient; the row formulas guarantee divisibility, so a
/// remainder means the dispatch picked a wrong row.
fn exact(num: BigInt, den: BigInt) -> BigUint {
    let (quo, rem) = num.div_rem(&den);
    assert!(rem.is_zero() && quo.is_positive(), "inexact neighborhood quotient");
    quo.to_biguint().unwrap()
}

fn no_epsilon(epsilon: Option<Sign>, group: &GroupSpec) -> Result<()> {
    if epsilon.is_some() {
        return Err(Error::invalid(format!(
            "epsilon does not apply to {group}; it selects a branch only for \
             even-rank symplectic, odd-dimensional orthogonal, and minus-type \
             even-dimensional orthogonal groups"
        )));
    }
    Ok(())
}

fn require_epsilon(epsilon: Option<Sign>, group: &GroupSpec) -> Result<i64> {
    epsilon.map(|s| s.value()).ok_or_else(|| {
        Error::invalid(format!(
            "{group} has two valid neighborhood branches; pass epsilon to pick one"
        ))
    })
}

/// Which second maximal order accompanies the shared even-rank shape.
#[derive(Clone, Copy)]
enum EvenKind {
    Symplectic,
    OrthogonalOdd,
    OrthogonalMinus,
}

/// The disjoint-pair data for `group`, or an error when no row covers it.
///
/// `epsilon` is required exactly when the covering row carries a free sign
/// (symplectic and odd-dimensional orthogonal of even rank, minus-type
/// even orthogonal of even rank); both choices yield valid data.
pub fn disjoint_pair_data(group: &GroupSpec, epsilon: Option<Sign>) -> Result<DisjointData> {
    let n = group.prk();
    let even = n % 2 == 0;
    match group.family() {
        Family::Linear | Family::Unitary if n >= 9 => {
            no_epsilon(epsilon, group)?;
            Ok(linear_pair(group))
        }
        Family::Symplectic | Family::OrthogonalOdd if !even && n >= 5 => {
            no_epsilon(epsilon, group)?;
            Ok(odd_rank_pair(group, n))
        }
        Family::OrthogonalEvenPlus if even && n >= 6 => {
            no_epsilon(epsilon, group)?;
            Ok(odd_rank_pair(group, n - 1))
        }
        Family::Symplectic if even && n >= 6 => {
            let e = require_epsilon(epsilon, group)?;
            Ok(even_rank_pair(group, e, EvenKind::Symplectic))
        }
        Family::OrthogonalOdd if even && n >= 6 => {
            let e = require_epsilon(epsilon, group)?;
            Ok(even_rank_pair(group, e, EvenKind::OrthogonalOdd))
        }
        Family::OrthogonalEvenMinus if even && n >= 6 => {
            let e = require_epsilon(epsilon, group)?;
            Ok(even_rank_pair(group, e, EvenKind::OrthogonalMinus))
        }
        Family::OrthogonalEvenPlus | Family::OrthogonalEvenMinus if !even && n >= 5 => {
            no_epsilon(epsilon, group)?;
            Ok(signed_odd_rank_pair(group))
        }
        _ => Err(Error::unsupported(format!("no disjoint-pair data for {group}"))),
    }
}

/// Rank n >= 9 linear and unitary: levels n and n - 1 over the signed base.
fn linear_pair(group: &GroupSpec) -> DisjointData {
    let n = group.prk();
    let q = BigInt::from(group.q());
    let e = group.sign().expect("linear and unitary carry a sign").value();
    let sgn = |k: u64| if e < 0 && k % 2 == 1 { BigInt::from(-1) } else { BigInt::from(1) };
    let d = (&q - e).gcd(&BigInt::from(n));
    let m1 = exact(q.pow(n as u32) - sgn(n), (&q - e) * &d);
    let m2 = exact(q.pow(n as u32 - 1) - sgn(n - 1), d);
    let (r1, r2) = if e > 0 { (n, n - 1) } else { (nu(n), nu(n - 1)) };
    DisjointData { r1_degree: r1, r2_degree: r2, m1: vec![m1], m2: vec![m2] }
}

/// Odd n >= 5: levels 2n and n, orders (q^n +- 1)/(2, q - 1). Covers
/// symplectic and odd-dimensional orthogonal of rank n directly and
/// plus-type even orthogonal of rank n + 1.
fn odd_rank_pair(group: &GroupSpec, n: u64) -> DisjointData {
    let q = BigInt::from(group.q());
    let d = BigInt::from(if group.q() % 2 == 0 { 1u8 } else { 2 });
    let m1 = exact(q.pow(n as u32) + 1, d.clone());
    let m2 = exact(q.pow(n as u32) - 1, d);
    DisjointData { r1_degree: 2 * n, r2_degree: n, m1: vec![m1], m2: vec![m2] }
}

/// Even rank n >= 6 with a free sign: levels 2n and n - 1 over the signed
/// base; the second class carries one or two maximal orders by kind.
fn even_rank_pair(group: &GroupSpec, e: i64, kind: EvenKind) -> DisjointData {
    let n = group.prk();
    let q = BigInt::from(group.q());
    let p = BigInt::from(group.p());
    let d = BigInt::from(if group.q() % 2 == 0 { 1u8 } else { 2 });
    let head = q.pow(n as u32 - 1) - e;
    let m1 = exact(q.pow(n as u32) + 1, d.clone());
    let m2a = exact(&head * (&q + e), d.clone());
    let mut m2 = vec![m2a];
    match kind {
        EvenKind::Symplectic => m2.push(exact(&p * &head, BigInt::from(1))),
        EvenKind::OrthogonalOdd => m2.push(exact(&p * &head, d)),
        EvenKind::OrthogonalMinus => {}
    }
    let r2 = if e > 0 { n - 1 } else { 2 * (n - 1) };
    DisjointData { r1_degree: 2 * n, r2_degree: r2, m1: vec![m1], m2 }
}

/// Odd rank n >= 5 even-dimensional orthogonal: levels 2n - 2 and n over
/// the group's own sign.
fn signed_odd_rank_pair(group: &GroupSpec) -> DisjointData {
    let n = group.prk();
    let q = BigInt::from(group.q());
    let e = group.sign().expect("even-dimensional orthogonal carries a sign").value();
    let d = (&q - e).gcd(&BigInt::from(4));
    let m1 = exact((q.pow(n as u32 - 1) + 1) * (&q + e), d.clone());
    let m2 = exact(q.pow(n as u32) - e, d);
    let r2 = if e > 0 { n } else { 2 * n };
    DisjointData { r1_degree: 2 * n - 2, r2_degree: r2, m1: vec![m1], m2: vec![m2] }
}
