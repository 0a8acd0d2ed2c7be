//! Checkers for the individual claim kinds.
//!
//! Each checker takes a deserialized payload and produces an [`Outcome`],
//! or an error when the payload itself is malformed. A checker never guesses:
//! either the stated fact is decided exactly, or the claim fails with a
//! counterexample, or (for membership refutations only) the sufficient tests
//! abstain and the result is inconclusive.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::arith::{factorize, mult_order, primality, Primality, SignedBase};
use crate::error::{Error, Result};
use crate::graph::adjacent_odd;
use crate::groups::{max_order_bound, pi_membership, GroupSpec};
use crate::mersenne;

use super::expr::{parse_expr, parse_relation, Bindings, Cmp, Relation};
use super::Status;

/// Result of one check: the status plus human-readable evidence. The runner
/// attaches id, quote and timing.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub evidence: String,
}

impl Outcome {
    fn pass(evidence: String) -> Self {
        Outcome { status: Status::Pass, evidence }
    }

    fn fail(evidence: String) -> Self {
        Outcome { status: Status::Fail, evidence }
    }

    fn inconclusive(evidence: String) -> Self {
        Outcome { status: Status::Inconclusive, evidence }
    }
}

/// Upper bound on enumerated grid sizes. Every catalogue domain is a few
/// thousand points; hitting this means the payload is wrong, not slow.
const GRID_LIMIT: u64 = 4_000_000;

/// A bounded domain for one enumeration variable.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Domain {
    /// Explicit list, e.g. signs `[-1, 1]`.
    Values { values: Vec<i64> },
    /// All integers from `min` to `max` inclusive.
    IntRange { min: i64, max: i64 },
    /// Prime powers in `[min, max]`; `not_char` excludes powers of one prime.
    PrimePower {
        min: u64,
        max: u64,
        #[serde(default)]
        not_char: Option<u64>,
    },
    /// Prime powers of odd characteristic in `[min, max]`.
    OddPrimePower {
        min: u64,
        max: u64,
        #[serde(default)]
        not_char: Option<u64>,
    },
}

/// Smallest prime factor of `n` if `n` is a prime power, else `None`.
fn prime_power_radical(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some(n);
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 {
        Some(p)
    } else {
        None
    }
}

impl Domain {
    /// Enumerates the domain in ascending order.
    pub fn enumerate(&self) -> Result<Vec<BigInt>> {
        match self {
            Domain::Values { values } => {
                if values.is_empty() {
                    return Err(Error::invalid("empty value list in domain"));
                }
                let mut v: Vec<BigInt> = values.iter().map(|&x| BigInt::from(x)).collect();
                v.sort();
                Ok(v)
            }
            Domain::IntRange { min, max } => {
                if max < min {
                    return Err(Error::invalid(format!("empty range {min}..{max}")));
                }
                if (*max as i128 - *min as i128) as u64 >= GRID_LIMIT {
                    return Err(Error::invalid(format!("range {min}..{max} too large")));
                }
                Ok((*min..=*max).map(BigInt::from).collect())
            }
            Domain::PrimePower { min, max, not_char }
            | Domain::OddPrimePower { min, max, not_char } => {
                if max < min {
                    return Err(Error::invalid(format!("empty range {min}..{max}")));
                }
                if max - min >= GRID_LIMIT {
                    return Err(Error::invalid(format!("range {min}..{max} too large")));
                }
                let odd_only = matches!(self, Domain::OddPrimePower { .. });
                let mut out = Vec::new();
                for n in *min..=*max {
                    let Some(p) = prime_power_radical(n) else { continue };
                    if odd_only && p == 2 {
                        continue;
                    }
                    if Some(p) == *not_char {
                        continue;
                    }
                    out.push(BigInt::from(n));
                }
                Ok(out)
            }
        }
    }

    /// Largest element of the domain, used by the bound-search guard.
    fn upper(&self) -> Result<BigInt> {
        match self {
            Domain::Values { values } => values
                .iter()
                .max()
                .map(|&x| BigInt::from(x))
                .ok_or_else(|| Error::invalid("empty value list in domain")),
            Domain::IntRange { max, .. } => Ok(BigInt::from(*max)),
            Domain::PrimePower { max, .. } | Domain::OddPrimePower { max, .. } => {
                Ok(BigInt::from(*max))
            }
        }
    }
}

/// One named variable ranging over a domain.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarDomain {
    pub name: String,
    pub domain: Domain,
}

fn parse_big(s: &str, what: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::invalid(format!("bad {what} '{s}'")))
}

fn fmt_factorization(n: &BigUint) -> Result<String> {
    let f = factorize(n)?;
    let parts: Vec<String> = f
        .pairs()
        .iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    Ok(parts.join(" * "))
}

// ---------------------------------------------------------------------------
// ExactValue

/// A closed expression pinned to its value, factorization or primality.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactValuePayload {
    pub expr: String,
    #[serde(default)]
    pub expected: Option<String>,
    /// Expected factorization as `[prime, exponent]` pairs, ascending.
    #[serde(default)]
    pub factors: Option<Vec<(String, u32)>>,
    #[serde(default)]
    pub prime: Option<bool>,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn check_exact_value(p: &ExactValuePayload) -> Result<Outcome> {
    if p.expected.is_none() && p.factors.is_none() && p.prime.is_none() {
        return Err(Error::invalid(
            "exact-value payload pins nothing: need expected, factors or prime",
        ));
    }
    let expr = parse_expr(&p.expr)?;
    let value = expr.eval(&Bindings::new())?;
    let mut notes = vec![format!("{} = {}", p.expr, value)];

    if let Some(expected) = &p.expected {
        let want = parse_big(expected, "expected value")?;
        if value != want {
            return Ok(Outcome::fail(format!(
                "{} = {}, expected {}",
                p.expr, value, want
            )));
        }
    }

    if p.factors.is_none() && p.prime.is_none() {
        return Ok(Outcome::pass(notes.join("; ")));
    }
    let magnitude = value
        .to_biguint()
        .ok_or_else(|| Error::invalid(format!("cannot factor negative value {value}")))?;

    if let Some(factors) = &p.factors {
        let f = factorize(&magnitude)?;
        let got: Vec<(BigUint, u32)> = f.pairs().to_vec();
        let mut want = Vec::new();
        for (ps, e) in factors {
            let p = parse_big(ps, "prime factor")?
                .to_biguint()
                .ok_or_else(|| Error::invalid(format!("negative prime '{ps}'")))?;
            want.push((p, *e));
        }
        if got != want {
            return Ok(Outcome::fail(format!(
                "{} = {} = {}, expected factorization differs",
                p.expr,
                value,
                fmt_factorization(&magnitude)?
            )));
        }
        notes.push(fmt_factorization(&magnitude)?);
    }

    if let Some(want_prime) = p.prime {
        let got = match primality(&magnitude) {
            Primality::Prime | Primality::ProbablePrime => true,
            Primality::Composite => false,
        };
        if got != want_prime {
            return Ok(Outcome::fail(format!(
                "{} = {} is {}, expected {}",
                p.expr,
                value,
                if got { "prime" } else { "composite" },
                if want_prime { "prime" } else { "composite" },
            )));
        }
        notes.push(if got { "prime".into() } else { "composite".into() });
    }

    Ok(Outcome::pass(notes.join("; ")))
}

// ---------------------------------------------------------------------------
// OrderBound

/// Lower bound on the multiplicative order of each base modulo `r`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderBoundPayload {
    pub r: String,
    pub bases: Vec<i64>,
    pub min: u64,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn check_order_bound(p: &OrderBoundPayload) -> Result<Outcome> {
    if p.bases.is_empty() {
        return Err(Error::invalid("order-bound payload has no bases"));
    }
    let r = parse_big(&p.r, "modulus")?
        .to_biguint()
        .ok_or_else(|| Error::invalid(format!("modulus '{}' must be positive", p.r)))?;
    let min = BigUint::from(p.min);
    let mut notes = Vec::new();
    for &b in &p.bases {
        let base = SignedBase::new(BigInt::from(b))?;
        let order = mult_order(&r, &base)?;
        if order < min {
            return Ok(Outcome::fail(format!(
                "e({}, {}) = {} < {}",
                p.r, b, order, p.min
            )));
        }
        notes.push(format!("e({}, {}) = {}", p.r, b, order));
    }
    notes.push(format!("all >= {}", p.min));
    Ok(Outcome::pass(notes.join("; ")))
}

// ---------------------------------------------------------------------------
// BoundSearch

/// Finds the largest admissible value satisfying a one-variable inequality.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundSearchPayload {
    pub var: String,
    pub domain: Domain,
    /// Upper-bound inequality in `var`, strict or not.
    pub condition: String,
    /// Largest satisfier, or `null` when no admissible value satisfies it.
    pub expected_max: Option<i64>,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn check_bound_search(p: &BoundSearchPayload) -> Result<Outcome> {
    let rel = parse_relation(&p.condition)?;
    if !matches!(rel.cmp, Cmp::Lt | Cmp::Le) {
        return Err(Error::invalid(format!(
            "bound-search condition '{}' must be an upper bound (< or <=)",
            p.condition
        )));
    }
    let mut vars = BTreeSet::new();
    rel.variables(&mut vars);
    if !vars.contains(&p.var) {
        return Err(Error::invalid(format!(
            "bound-search condition '{}' does not mention '{}'",
            p.condition, p.var
        )));
    }
    vars.remove(&p.var);
    if let Some(stray) = vars.into_iter().next() {
        return Err(Error::invalid(format!(
            "unbound variable '{stray}' in bound-search condition"
        )));
    }

    let candidates = p.domain.enumerate()?;
    let upper = p.domain.upper()?;
    let mut bind = Bindings::new();
    let mut best: Option<BigInt> = None;
    let total = candidates.len();
    for v in candidates {
        bind.insert(p.var.clone(), v.clone());
        if rel.eval(&bind)? {
            best = Some(v);
        }
    }

    // The domain must extend well past the last satisfier, otherwise the
    // search says nothing about values just outside it.
    if let Some(b) = &best {
        if b * 2 > upper {
            return Err(Error::invalid(format!(
                "largest satisfier {b} is within a factor 2 of the domain bound {upper}; widen the domain"
            )));
        }
    }

    let expected = p.expected_max.map(BigInt::from);
    if best == expected {
        let summary = match &best {
            Some(b) => format!(
                "largest {} with {} is {} ({} candidates up to {})",
                p.var, p.condition, b, total, upper
            ),
            None => format!(
                "no {} with {} ({} candidates up to {})",
                p.var, p.condition, total, upper
            ),
        };
        Ok(Outcome::pass(summary))
    } else {
        let got = best.map_or("none".to_string(), |b| b.to_string());
        let want = expected.map_or("none".to_string(), |b| b.to_string());
        Ok(Outcome::fail(format!(
            "largest {} with {} is {}, expected {}",
            p.var, p.condition, got, want
        )))
    }
}

// ---------------------------------------------------------------------------
// Divisibility

/// Asserted divisibility (or its failure) between two expressions.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisibilityPayload {
    pub dividend: String,
    pub divisor: String,
    /// Variable bindings, decimal strings.
    #[serde(default, rename = "where")]
    pub bindings: Option<std::collections::BTreeMap<String, String>>,
    pub expected: bool,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn check_divisibility(p: &DivisibilityPayload) -> Result<Outcome> {
    let mut bind = Bindings::new();
    if let Some(vars) = &p.bindings {
        for (name, value) in vars {
            bind.insert(name.clone(), parse_big(value, "binding")?);
        }
    }
    let dividend = parse_expr(&p.dividend)?.eval(&bind)?;
    let divisor = parse_expr(&p.divisor)?.eval(&bind)?;
    if divisor.is_zero() {
        return Err(Error::invalid("zero divisor in divisibility claim"));
    }
    let remainder = dividend.clone() % divisor.clone();
    let divides = remainder.is_zero();
    let detail = if divides {
        format!(
            "{} = {} divides {} = {}",
            p.divisor, divisor, p.dividend, dividend
        )
    } else {
        format!(
            "{} = {} does not divide {} = {} (remainder {})",
            p.divisor,
            divisor,
            p.dividend,
            dividend,
            remainder.abs()
        )
    };
    if divides == p.expected {
        Ok(Outcome::pass(detail))
    } else {
        Ok(Outcome::fail(detail))
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Exhaustive solution listing over a finite grid, compared as a set.
/// With `mersenne_scan_max` set the grid is replaced by the Mersenne scan.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerationPayload {
    #[serde(default)]
    pub vars: Vec<VarDomain>,
    #[serde(default)]
    pub constraints: Vec<String>,
    /// Solutions as tuples in `vars` order.
    #[serde(default)]
    pub expected: Vec<Vec<i64>>,
    #[serde(default)]
    pub mersenne_scan_max: Option<u32>,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn check_enumeration(p: &EnumerationPayload) -> Result<Outcome> {
    if let Some(max) = p.mersenne_scan_max {
        return check_mersenne_scan(max, &p.expected);
    }
    if p.vars.is_empty() {
        return Err(Error::invalid("enumeration payload declares no variables"));
    }
    if p.constraints.is_empty() {
        return Err(Error::invalid("enumeration payload has no constraints"));
    }

    let relations: Vec<Relation> = p
        .constraints
        .iter()
        .map(|c| parse_relation(c))
        .collect::<Result<_>>()?;
    let declared: BTreeSet<String> = p.vars.iter().map(|v| v.name.clone()).collect();
    if declared.len() != p.vars.len() {
        return Err(Error::invalid("duplicate variable name in enumeration"));
    }
    let mut used = BTreeSet::new();
    for rel in &relations {
        rel.variables(&mut used);
    }
    if let Some(stray) = used.difference(&declared).next() {
        return Err(Error::invalid(format!(
            "constraint mentions undeclared variable '{stray}'"
        )));
    }

    let axes: Vec<Vec<BigInt>> = p
        .vars
        .iter()
        .map(|v| v.domain.enumerate())
        .collect::<Result<_>>()?;
    let size = axes.iter().map(|a| a.len() as u64).product::<u64>();
    if size >= GRID_LIMIT {
        return Err(Error::invalid(format!("grid of {size} points too large")));
    }

    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut index = vec![0usize; axes.len()];
    let mut bind = Bindings::new();
    'grid: loop {
        for (k, v) in p.vars.iter().enumerate() {
            bind.insert(v.name.clone(), axes[k][index[k]].clone());
        }
        let mut ok = true;
        for rel in &relations {
            if !rel.eval(&bind)? {
                ok = false;
                break;
            }
        }
        if ok {
            found.insert(index.iter().enumerate().map(|(k, &i)| axes[k][i].clone()).collect());
        }
        for k in (0..axes.len()).rev() {
            index[k] += 1;
            if index[k] < axes[k].len() {
                continue 'grid;
            }
            index[k] = 0;
            if k == 0 {
                break 'grid;
            }
        }
    }

    let expected: BTreeSet<Vec<BigInt>> = p
        .expected
        .iter()
        .map(|t| {
            if t.len() != p.vars.len() {
                return Err(Error::invalid(format!(
                    "expected tuple {t:?} has arity {}, vars have {}",
                    t.len(),
                    p.vars.len()
                )));
            }
            Ok(t.iter().map(|&x| BigInt::from(x)).collect())
        })
        .collect::<Result<_>>()?;

    let fmt_tuple = |t: &Vec<BigInt>| {
        let parts: Vec<String> = p
            .vars
            .iter()
            .zip(t)
            .map(|(v, x)| format!("{} = {}", v.name, x))
            .collect();
        format!("({})", parts.join(", "))
    };

    if found == expected {
        let listing = if found.is_empty() {
            "no solutions".to_string()
        } else {
            format!(
                "solutions: {}",
                found.iter().map(&fmt_tuple).collect::<Vec<_>>().join(", ")
            )
        };
        Ok(Outcome::pass(format!("{listing} ({size} grid points)")))
    } else if let Some(extra) = found.difference(&expected).next() {
        Ok(Outcome::fail(format!(
            "unexpected solution {}",
            fmt_tuple(extra)
        )))
    } else {
        let missing = expected.difference(&found).next().unwrap();
        Ok(Outcome::fail(format!(
            "expected solution {} not found",
            fmt_tuple(missing)
        )))
    }
}

fn check_mersenne_scan(max_exponent: u32, expected: &[Vec<i64>]) -> Result<Outcome> {
    let records = mersenne::scan(max_exponent)?;
    let got = mersenne::satisfying_q(&records);
    let want: BTreeSet<String> = expected
        .iter()
        .map(|t| {
            if t.len() != 1 {
                return Err(Error::invalid("mersenne expectations are single values"));
            }
            Ok(t[0].to_string())
        })
        .collect::<Result<_>>()?;
    let got_set: BTreeSet<String> = got.iter().cloned().collect();
    let prime_count = records.iter().filter(|r| r.q_is_prime).count();
    if got_set == want {
        Ok(Outcome::pass(format!(
            "{} Mersenne primes through exponent {}; q^2 - q + 1 survives compositeness only for q in [{}]",
            prime_count,
            max_exponent,
            got.join(", ")
        )))
    } else {
        Ok(Outcome::fail(format!(
            "scan through exponent {} gives [{}], expected [{}]",
            max_exponent,
            got.join(", "),
            want.into_iter().collect::<Vec<_>>().join(", ")
        )))
    }
}

// ---------------------------------------------------------------------------
// NotInOmega

/// Refutation that a value is an element order of the given group. The
/// sufficient tests can abstain, so this checker never fails a claim:
/// the outcome is pass or inconclusive.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NotInOmegaPayload {
    pub value: String,
    pub group: String,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn check_not_in_omega(p: &NotInOmegaPayload) -> Result<Outcome> {
    let group = GroupSpec::from_str(&p.group)?;
    let w = parse_expr(&p.value)?
        .eval(&Bindings::new())?
        .to_biguint()
        .ok_or_else(|| Error::invalid(format!("value '{}' must be positive", p.value)))?;
    if w < BigUint::from(2u8) {
        return Err(Error::invalid("trivial orders are always present"));
    }
    let name = group.atlas_name();

    // (a) A prime factor outside pi(S) refutes membership outright.
    let f = factorize(&w)?;
    for prime in f.primes() {
        if !pi_membership(&group, prime)? {
            let order = mult_order(prime, &SignedBase::new(BigInt::from(group.q()))?)?;
            return Ok(Outcome::pass(format!(
                "{} = {} has prime factor {} outside pi({}): e({}, {}) = {}",
                p.value,
                w,
                prime,
                name,
                prime,
                group.q(),
                order
            )));
        }
    }

    // (b) Larger than every element order.
    let bound = max_order_bound(&group);
    if bound.less_than_int(&w) {
        return Ok(Outcome::pass(format!(
            "{} = {} exceeds the element order bound {} of {}",
            p.value, w, bound, name
        )));
    }

    // (c) Product of two nonadjacent odd primes.
    let pairs = f.pairs();
    if pairs.len() == 2 && pairs.iter().all(|(_, e)| *e == 1) {
        let r = &pairs[0].0;
        let s = &pairs[1].0;
        let two = BigUint::from(2u8);
        let char_p = BigUint::from(group.p());
        if *r != two && *s != two && *r != char_p && *s != char_p {
            match adjacent_odd(&group, r, s) {
                Ok(false) => {
                    return Ok(Outcome::pass(format!(
                        "{} = {} * {} with {} and {} nonadjacent in GK({})",
                        w, r, s, r, s, name
                    )))
                }
                Ok(true) => {
                    return Ok(Outcome::inconclusive(format!(
                        "{} = {} * {}: both primes divide |{}| and the adjacency criteria hold",
                        w, r, s, name
                    )))
                }
                Err(_) => {
                    return Ok(Outcome::inconclusive(format!(
                        "{} = {} * {}: adjacency criteria abstain for {}",
                        w, r, s, name
                    )))
                }
            }
        }
    }

    Ok(Outcome::inconclusive(format!(
        "{} = {}: every prime factor divides |{}| and no sufficient test refutes membership",
        p.value, w, name
    )))
}

// ---------------------------------------------------------------------------
// InequalityGrid

/// A family of relations that must hold at every point of a finite grid,
/// optionally restricted by filter relations.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityGridPayload {
    pub vars: Vec<VarDomain>,
    #[serde(default)]
    pub filters: Vec<String>,
    pub conditions: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn check_inequality_grid(p: &InequalityGridPayload) -> Result<Outcome> {
    if p.vars.is_empty() {
        return Err(Error::invalid("grid payload declares no variables"));
    }
    if p.conditions.is_empty() {
        return Err(Error::invalid("grid payload has no conditions"));
    }
    let filters: Vec<Relation> = p
        .filters
        .iter()
        .map(|c| parse_relation(c))
        .collect::<Result<_>>()?;
    let conditions: Vec<Relation> = p
        .conditions
        .iter()
        .map(|c| parse_relation(c))
        .collect::<Result<_>>()?;

    let declared: BTreeSet<String> = p.vars.iter().map(|v| v.name.clone()).collect();
    let mut used = BTreeSet::new();
    for rel in filters.iter().chain(&conditions) {
        rel.variables(&mut used);
    }
    if let Some(stray) = used.difference(&declared).next() {
        return Err(Error::invalid(format!(
            "grid mentions undeclared variable '{stray}'"
        )));
    }

    let axes: Vec<Vec<BigInt>> = p
        .vars
        .iter()
        .map(|v| v.domain.enumerate())
        .collect::<Result<_>>()?;
    let size = axes.iter().map(|a| a.len() as u64).product::<u64>();
    if size >= GRID_LIMIT {
        return Err(Error::invalid(format!("grid of {size} points too large")));
    }

    let mut checked = 0u64;
    let mut index = vec![0usize; axes.len()];
    let mut bind = Bindings::new();
    'grid: loop {
        for (k, v) in p.vars.iter().enumerate() {
            bind.insert(v.name.clone(), axes[k][index[k]].clone());
        }
        let mut admissible = true;
        for rel in &filters {
            if !rel.eval(&bind)? {
                admissible = false;
                break;
            }
        }
        if admissible {
            checked += 1;
            for (ci, rel) in conditions.iter().enumerate() {
                if !rel.eval(&bind)? {
                    let point: Vec<String> = p
                        .vars
                        .iter()
                        .map(|v| format!("{} = {}", v.name, bind[&v.name]))
                        .collect();
                    return Ok(Outcome::fail(format!(
                        "condition '{}' fails at {}",
                        p.conditions[ci],
                        point.join(", ")
                    )));
                }
            }
        }
        for k in (0..axes.len()).rev() {
            index[k] += 1;
            if index[k] < axes[k].len() {
                continue 'grid;
            }
            index[k] = 0;
            if k == 0 {
                break 'grid;
            }
        }
    }

    Ok(Outcome::pass(format!(
        "{} conditions hold at {} admissible points ({} grid points)",
        p.conditions.len(),
        checked,
        size
    )))
}
