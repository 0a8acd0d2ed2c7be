//! Claim catalogue and verification runner.
//!
//! Every arithmetic fact the project certifies is a [`Claim`]: an id, the
//! source reference and verbatim quote it tracks, a kind, and a payload that
//! fully determines the check. The shipped catalogue lives in `claims.json`
//! next to this crate and is embedded at compile time; [`run_catalogue`]
//! replays it, in parallel, and produces a [`Report`] whose JSON form is
//! stable across runs except for per-claim timings.
//!
//! Statuses are deliberately narrow. `FAIL` always carries a counterexample.
//! `SKIPPED` marks claims recorded for completeness whose content is an
//! external hypothesis rather than a finite computation; the skip reason is
//! stored on the claim itself. `INCONCLUSIVE` can arise only from membership
//! refutations whose sufficient tests all abstain, never from an error.

mod checks;
mod expr;

pub use checks::{
    check_bound_search, check_divisibility, check_enumeration, check_exact_value,
    check_inequality_grid, check_not_in_omega, check_order_bound, BoundSearchPayload,
    DivisibilityPayload, Domain, EnumerationPayload, ExactValuePayload, InequalityGridPayload,
    NotInOmegaPayload, OrderBoundPayload, Outcome, VarDomain,
};
pub use expr::{parse_expr, parse_relation, Bindings, Cmp, Expr, Relation};

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The embedded claim catalogue.
const CATALOGUE_JSON: &str = include_str!("../../claims.json");

/// Outcome status of a single claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

/// Check kind; selects the payload schema and checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimKind {
    ExactValue,
    OrderBound,
    BoundSearch,
    Divisibility,
    Enumeration,
    NotInOmega,
    InequalityGrid,
}

/// One catalogue entry as stored in `claims.json`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub paper_ref: String,
    pub quote: String,
    pub kind: ClaimKind,
    /// Present on claims that are recorded but not checked; holds the reason.
    #[serde(default)]
    pub skip: Option<String>,
    pub payload: serde_json::Value,
}

/// Result of checking one claim.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub status: Status,
    pub paper_ref: String,
    pub quote: String,
    pub evidence: String,
    pub ms: u128,
}

/// Aggregate counts over a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub inconclusive: usize,
}

/// Full verification report; serializes to the shipped JSON schema.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization");
        out.push('\n');
        out
    }

    /// True when no claim failed; the process exit code keys off this.
    pub fn clean(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Parses the embedded catalogue, checking id uniqueness.
pub fn catalogue() -> Result<Vec<Claim>> {
    let claims: Vec<Claim> = serde_json::from_str(CATALOGUE_JSON)
        .map_err(|e| Error::invalid(format!("claims.json: {e}")))?;
    let mut seen = std::collections::BTreeSet::new();
    for c in &claims {
        if !seen.insert(c.id.as_str()) {
            return Err(Error::invalid(format!("duplicate claim id '{}'", c.id)));
        }
    }
    Ok(claims)
}

fn payload<T: serde::de::DeserializeOwned>(claim: &Claim) -> Result<T> {
    serde_json::from_value(claim.payload.clone()).map_err(|e| Error::MalformedClaim {
        id: claim.id.clone(),
        reason: e.to_string(),
    })
}

/// Checks a single claim. Payload problems surface as
/// [`Error::MalformedClaim`]; mathematical falsity is a `FAIL` result.
pub fn run_claim(claim: &Claim) -> Result<ClaimResult> {
    let start = Instant::now();
    let outcome = if let Some(reason) = &claim.skip {
        Outcome {
            status: Status::Skipped,
            evidence: reason.clone(),
        }
    } else {
        let checked = match claim.kind {
            ClaimKind::ExactValue => check_exact_value(&payload(claim)?),
            ClaimKind::OrderBound => check_order_bound(&payload(claim)?),
            ClaimKind::BoundSearch => check_bound_search(&payload(claim)?),
            ClaimKind::Divisibility => check_divisibility(&payload(claim)?),
            ClaimKind::Enumeration => check_enumeration(&payload(claim)?),
            ClaimKind::NotInOmega => check_not_in_omega(&payload(claim)?),
            ClaimKind::InequalityGrid => check_inequality_grid(&payload(claim)?),
        };
        checked.map_err(|e| Error::MalformedClaim {
            id: claim.id.clone(),
            reason: e.to_string(),
        })?
    };
    Ok(ClaimResult {
        id: claim.id.clone(),
        status: outcome.status,
        paper_ref: claim.paper_ref.clone(),
        quote: claim.quote.clone(),
        evidence: outcome.evidence,
        ms: start.elapsed().as_millis(),
    })
}

/// Runs the catalogue, or the subset whose ids start with `filter`.
///
/// Claims are independent, so they run on a small thread pool; results come
/// back sorted by id and the summary counts every status. A filter matching
/// nothing is an error, as is any malformed payload.
pub fn run_catalogue(filter: Option<&str>) -> Result<Report> {
    let all = catalogue()?;
    let selected: Vec<Claim> = match filter {
        None => all,
        Some(prefix) => {
            let subset: Vec<Claim> = all
                .into_iter()
                .filter(|c| c.id.starts_with(prefix))
                .collect();
            if subset.is_empty() {
                return Err(Error::invalid(format!(
                    "no claim id starts with '{prefix}'"
                )));
            }
            subset
        }
    };
    run_claims(&selected)
}

/// Runs an explicit claim list in parallel and assembles the report.
pub fn run_claims(claims: &[Claim]) -> Result<Report> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(claims.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<ClaimResult>> = Mutex::new(Vec::with_capacity(claims.len()));
    let failure: Mutex<Option<Error>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= claims.len() {
                    return;
                }
                match run_claim(&claims[i]) {
                    Ok(r) => results.lock().unwrap().push(r),
                    Err(e) => {
                        let mut slot = failure.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(e);
                        }
                        return;
                    }
                }
            });
        }
    });

    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let mut claims_out = results.into_inner().unwrap();
    claims_out.sort_by(|a, b| a.id.cmp(&b.id));

    let mut summary = Summary::default();
    for r in &claims_out {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
            Status::Inconclusive => summary.inconclusive += 1,
        }
    }
    Ok(Report {
        claims: claims_out,
        summary,
    })
}
