//! Descriptors of finite simple classical groups and their basic arithmetic
//! attributes.
//!
//! A [`GroupSpec`] names a group by family, `prk` (dimension for linear and
//! unitary groups, Lie rank otherwise), and field order `q = p^f`. Everything
//! else the crate needs is derived arithmetic: membership of a prime in
//! `pi(L)`, the effective degree `phi(r, L)`, the element-order bound
//! `q^{l+1}/(q-1)`, and the classification-table lookups in [`tables`] and
//! the exact-neighborhood data in [`disjoint`].

mod disjoint;
mod tables;

pub use disjoint::{disjoint_pair_data, DisjointData};
pub use tables::{exponent_bounds, table1_prediction, table2_class, Table1Prediction};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{eta, is_prime_u64, mult_order, nu, SignedBase};
use crate::error::{Error, Result};

/// The six classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Linear,
    Unitary,
    Symplectic,
    OrthogonalOdd,
    OrthogonalEvenPlus,
    OrthogonalEvenMinus,
}

impl Family {
    /// Short code used by the CLI syntax and serialized specs.
    pub fn code(self) -> &'static str {
        match self {
            Family::Linear => "L",
            Family::Unitary => "U",
            Family::Symplectic => "S",
            Family::OrthogonalOdd => "Oodd",
            Family::OrthogonalEvenPlus => "O+",
            Family::OrthogonalEvenMinus => "O-",
        }
    }

    pub fn from_code(code: &str) -> Option<Family> {
        Some(match code {
            "L" => Family::Linear,
            "U" => Family::Unitary,
            "S" => Family::Symplectic,
            "Oodd" => Family::OrthogonalOdd,
            "O+" => Family::OrthogonalEvenPlus,
            "O-" => Family::OrthogonalEvenMinus,
            _ => return None,
        })
    }
}

/// A sign, +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A simple classical group over a field of order `q = p^f`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupSpec {
    family: Family,
    prk: u64,
    p: u64,
    f: u32,
    q: u64,
}

impl GroupSpec {
    /// Validate and build a spec. Rejects composite `p`, out-of-range `prk`,
    /// and the handful of non-simple small cases.
    pub fn new(family: Family, prk: u64, p: u64, f: u32) -> Result<GroupSpec> {
        if !is_prime_u64(p) {
            return Err(Error::invalid(format!("characteristic {p} is not prime")));
        }
        if f == 0 {
            return Err(Error::invalid("field exponent f must be positive"));
        }
        let q = p
            .checked_pow(f)
            .ok_or_else(|| Error::invalid("field order p^f exceeds 64 bits"))?;
        let min_prk = match family {
            Family::Linear | Family::Unitary | Family::Symplectic | Family::OrthogonalOdd => 2,
            Family::OrthogonalEvenPlus | Family::OrthogonalEvenMinus => 4,
        };
        if prk < min_prk {
            return Err(Error::invalid(format!(
                "{} groups require prk >= {min_prk}, got {prk}",
                family.code()
            )));
        }
        let non_simple = match family {
            Family::Linear | Family::Unitary => {
                (prk == 2 && (q == 2 || q == 3)) || (family == Family::Unitary && prk == 3 && q == 2)
            }
            Family::Symplectic | Family::OrthogonalOdd => prk == 2 && q == 2,
            _ => false,
        };
        if non_simple {
            return Err(Error::invalid(format!(
                "{}:{prk} over field of order {q} is not a simple group",
                family.code()
            )));
        }
        Ok(GroupSpec { family, prk, p, f, q })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Dimension for linear/unitary, Lie rank for the others.
    pub fn prk(&self) -> u64 {
        self.prk
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The sign attached to the family: + for linear and plus-type
    /// orthogonal, - for unitary and minus-type, none for symplectic and
    /// odd-dimensional orthogonal.
    pub fn sign(&self) -> Option<Sign> {
        match self.family {
            Family::Linear | Family::OrthogonalEvenPlus => Some(Sign::Plus),
            Family::Unitary | Family::OrthogonalEvenMinus => Some(Sign::Minus),
            Family::Symplectic | Family::OrthogonalOdd => None,
        }
    }

    /// Untwisted Lie rank: prk - 1 for linear/unitary, prk otherwise.
    pub fn lie_rank(&self) -> u64 {
        match self.family {
            Family::Linear | Family::Unitary => self.prk - 1,
            _ => self.prk,
        }
    }

    /// Dimension of the natural module, e.g. 12 for S:6 and O-:6, 13 for
    /// Oodd:6.
    pub fn dimension(&self) -> u64 {
        match self.family {
            Family::Linear | Family::Unitary => self.prk,
            Family::Symplectic | Family::OrthogonalEvenPlus | Family::OrthogonalEvenMinus => {
                2 * self.prk
            }
            Family::OrthogonalOdd => 2 * self.prk + 1,
        }
    }

    /// Conventional name, e.g. `L9(5)`, `O12-(5)`.
    pub fn atlas_name(&self) -> String {
        match self.family {
            Family::Linear => format!("L{}({})", self.prk, self.q),
            Family::Unitary => format!("U{}({})", self.prk, self.q),
            Family::Symplectic => format!("S{}({})", 2 * self.prk, self.q),
            Family::OrthogonalOdd => format!("O{}({})", 2 * self.prk + 1, self.q),
            Family::OrthogonalEvenPlus => format!("O{}+({})", 2 * self.prk, self.q),
            Family::OrthogonalEvenMinus => format!("O{}-({})", 2 * self.prk, self.q),
        }
    }

    /// True when the degree rule admits a non-characteristic prime with
    /// `e(r, q) = e` into `pi(L)`.
    fn degree_in_profile(&self, e: u64) -> bool {
        let n = self.prk;
        match self.family {
            Family::Linear => e <= n,
            Family::Unitary => nu(e) <= n,
            Family::Symplectic | Family::OrthogonalOdd => eta(e) <= n,
            Family::OrthogonalEvenPlus => eta(e) <= n - 1 || n % e == 0,
            Family::OrthogonalEvenMinus => eta(e) <= n - 1 || ((2 * n) % e == 0 && n % e != 0),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}:{}:{}", self.family.code(), self.prk, self.p)?;
        if self.f > 1 {
            write!(out, ":{}", self.f)?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parse `family:prk:p[:f]`, e.g. `L:9:5` or `O-:6:5:1`.
    fn from_str(s: &str) -> Result<GroupSpec> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(Error::invalid(format!(
                "malformed group spec {s:?}: expected family:prk:p[:f]"
            )));
        }
        let family = Family::from_code(parts[0])
            .ok_or_else(|| Error::invalid(format!("unknown family code {:?}", parts[0])))?;
        let prk: u64 = parts[1]
            .parse()
            .map_err(|_| Error::invalid(format!("bad prk {:?}", parts[1])))?;
        let p: u64 = parts[2]
            .parse()
            .map_err(|_| Error::invalid(format!("bad characteristic {:?}", parts[2])))?;
        let f: u32 = match parts.get(3) {
            Some(t) => t
                .parse()
                .map_err(|_| Error::invalid(format!("bad field exponent {t:?}")))?,
            None => 1,
        };
        GroupSpec::new(family, prk, p, f)
    }
}

impl serde::Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<GroupSpec, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The degrees realized by primes of `pi(L)`, plus the characteristic mark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// All `i` with `1 <= i <= 2 prk` such that a prime with `e(r,q) = i`
    /// would lie in `pi(L)`.
    pub degrees: BTreeSet<u64>,
    /// Whether `p` itself belongs to `pi(L)` (always true here, kept
    /// explicit for serialized reports).
    pub includes_char: bool,
}

/// The degrees admissible for `L` by the family's rule.
pub fn degree_profile(group: &GroupSpec) -> DegreeProfile {
    let degrees = (1..=2 * group.prk())
        .filter(|&i| group.degree_in_profile(i))
        .collect();
    DegreeProfile {
        degrees,
        includes_char: true,
    }
}

/// Multiplicative order of `q` modulo the odd part of `r`, with the usual
/// mod-4 convention at `r = 2`.
pub fn degree_of(group: &GroupSpec, r: &BigUint) -> Result<BigUint> {
    mult_order(r, &SignedBase::from_i64(group.q() as i64)?)
}

/// Whether the prime `r` divides `|L|`.
///
/// The characteristic is always a member; otherwise the family's degree rule
/// on `e(r, q)` decides.
pub fn pi_membership(group: &GroupSpec, r: &BigUint) -> Result<bool> {
    if *r == BigUint::from(group.p()) {
        return Ok(true);
    }
    let e = degree_of(group, r)?;
    // Orders beyond 2 prk always fail the rule, and only those fit the rule's
    // range, so an overflowing order means a definite no.
    Ok(match e.to_u64() {
        Some(e) => group.degree_in_profile(e),
        None => false,
    })
}

/// The effective degree `phi(r, L)`: `e(r,q)` for linear groups, `nu(e)` for
/// unitary, `eta(e)` for symplectic and orthogonal.
pub fn phi_rl(group: &GroupSpec, r: &BigUint) -> Result<u64> {
    if *r == BigUint::from(group.p()) {
        return Err(Error::invalid(
            "phi(r, L) is undefined at the defining characteristic",
        ));
    }
    let e = degree_of(group, r)?
        .to_u64()
        .filter(|&e| group.degree_in_profile(e))
        .ok_or_else(|| Error::invalid(format!("{r} does not divide the order of {group}")))?;
    Ok(match group.family() {
        Family::Linear => e,
        Family::Unitary => nu(e),
        _ => eta(e),
    })
}

/// An exact nonnegative rational, kept as a numerator/denominator pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational {
    pub num: BigUint,
    pub den: BigUint,
}

impl Rational {
    pub fn new(num: BigUint, den: BigUint) -> Rational {
        assert!(den != BigUint::from(0u32), "zero denominator");
        Rational { num, den }
    }

    /// Whether this rational is strictly below the integer `w`.
    pub fn less_than_int(&self, w: &BigUint) -> bool {
        self.num < w * &self.den
    }

    /// Whether the integer `w` is strictly below this rational.
    pub fn greater_than_int(&self, w: &BigUint) -> bool {
        w * &self.den < self.num
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BigUint::from(1u32) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Upper bound `q^{l+1}/(q-1)` on element orders of `L`, `l` the Lie rank.
pub fn max_order_bound(group: &GroupSpec) -> Rational {
    let q = BigUint::from(group.q());
    let l = group.lie_rank() as u32;
    Rational::new(q.pow(l + 1), q - 1u32)
}


#[cfg(test)]
mod tests {
    use super::test_support::g;
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["L:9:5", "U:9:5", "S:6:5", "Oodd:6:5", "O+:7:3", "O-:6:5", "L:9:3:2"] {
            let spec = g(s);
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(g("O-:6:5:1").to_string(), "O-:6:5");
    }

    #[test]
    fn parse_rejects_bad_specs() {
        for s in [
            "L:9:6",      // composite characteristic
            "L:9",        // missing field
            "X:9:5",      // unknown family
            "L:1:5",      // prk too small
            "O+:3:5",     // orthogonal prk too small
            "L:2:2",      // not simple
            "U:3:2",      // not simple
            "S:2:2",      // not simple
            "L:9:5:0",    // zero exponent
        ] {
            assert!(s.parse::<GroupSpec>().is_err(), "{s} should not parse");
        }
        assert!("S:2:3".parse::<GroupSpec>().is_ok());
        assert!("Oodd:2:3".parse::<GroupSpec>().is_ok());
    }

    #[test]
    fn derived_attributes() {
        let l9 = g("L:9:5");
        assert_eq!(l9.lie_rank(), 8);
        assert_eq!(l9.dimension(), 9);
        assert_eq!(l9.sign(), Some(Sign::Plus));
        assert_eq!(l9.atlas_name(), "L9(5)");

        let om = g("O-:6:5");
        assert_eq!(om.lie_rank(), 6);
        assert_eq!(om.dimension(), 12);
        assert_eq!(om.sign(), Some(Sign::Minus));
        assert_eq!(om.atlas_name(), "O12-(5)");

        let s12 = g("S:6:5");
        assert_eq!(s12.dimension(), 12);
        assert_eq!(s12.sign(), None);
        assert_eq!(g("L:9:3:2").q(), 9);
    }

    #[test]
    fn pi_membership_pins() {
        let big = |n: u64| BigUint::from(n);
        assert!(pi_membership(&g("L:9:5"), &big(31)).unwrap());
        assert!(pi_membership(&g("L:9:5"), &big(5)).unwrap());
        assert!(pi_membership(&g("O-:6:5"), &big(601)).unwrap());
        // 5167 has e(5167, 5) = 18 > 9, so it misses L9(5) but lands in
        // U9(5) via nu(18) = 9.
        assert!(!pi_membership(&g("L:9:5"), &big(5167)).unwrap());
        assert!(pi_membership(&g("U:9:5"), &big(5167)).unwrap());
    }

    #[test]
    fn phi_pins() {
        let big = |n: u64| BigUint::from(n);
        assert_eq!(phi_rl(&g("L:9:5"), &big(31)).unwrap(), 3);
        assert_eq!(phi_rl(&g("U:9:5"), &big(31)).unwrap(), 6);
        assert_eq!(phi_rl(&g("S:6:5"), &big(13)).unwrap(), 2);
        assert!(phi_rl(&g("L:9:5"), &big(5)).is_err());
        assert!(phi_rl(&g("L:9:5"), &big(5167)).is_err());
    }

    #[test]
    fn degree_profile_bounds() {
        for s in ["L:9:5", "U:9:5", "S:6:5", "Oodd:6:3", "O+:7:3", "O-:6:5"] {
            let spec = g(s);
            let profile = degree_profile(&spec);
            assert!(profile.includes_char);
            assert!(profile
                .degrees
                .iter()
                .all(|&i| i >= 1 && i <= 2 * spec.prk()));
        }
        // O-:6 admits degree 12 through the 2n-divisor clause; 6 enters
        // via eta(6) = 3 <= n - 1 just as in the plus type.
        let om = degree_profile(&g("O-:6:5"));
        assert!(om.degrees.contains(&12));
        assert!(om.degrees.contains(&6));
        // O+:6 has no clause admitting level 2n.
        let op = degree_profile(&g("O+:6:5"));
        assert!(op.degrees.contains(&6));
        assert!(!op.degrees.contains(&12));
        // At O+:9 the divisor clause rescues degree 9 (eta(9) = 9 > 8),
        // while 11 and 2n = 18 stay out.
        let op9 = degree_profile(&g("O+:9:3"));
        assert!(op9.degrees.contains(&9));
        assert!(!op9.degrees.contains(&11));
        assert!(!op9.degrees.contains(&18));
    }

    #[test]
    fn order_bound_pins() {
        let b = max_order_bound(&g("S:5:5"));
        assert_eq!(b.to_string(), format!("{}/4", 5u64.pow(6)));
        let b = max_order_bound(&g("L:9:5"));
        assert_eq!(b.to_string(), format!("{}/4", 5u64.pow(9)));
        assert!(b.greater_than_int(&BigUint::from(488281u32)));
        assert!(b.less_than_int(&BigUint::from(488282u32)));
    }
}
