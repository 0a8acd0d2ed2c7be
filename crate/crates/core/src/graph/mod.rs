//! Prime graph construction. Vertices are the primes dividing the group
//! order; edges carry a three-state verdict with provenance. Odd pairs
//! away from the characteristic are decided by the adjacency criteria;
//! edges to 2 and p by the sufficient condition on small phi and by the
//! exact neighborhood data where one endpoint lies in a designated
//! primitive class. Everything else stays Unknown rather than guessed.

mod coclique;
mod export;

pub use coclique::{max_cocliques, t_of_r, CocliqueReport};

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{eta, k_value, nu, FactorBudget};
use crate::error::{Error, Result};
use crate::groups::{
    degree_of, degree_profile, disjoint_pair_data, phi_rl, Family, GroupSpec, Sign,
};

/// Adjacency verdict for one unordered prime pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeState {
    Adjacent,
    NonAdjacent,
    Unknown,
}

/// Which rule decided an edge. The serialized names are part of the
/// export format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeProvenance {
    #[serde(rename = "criterion-i")]
    CriterionI,
    #[serde(rename = "criterion-ii")]
    CriterionII,
    #[serde(rename = "criterion-iii")]
    CriterionIII,
    #[serde(rename = "lemma-2.5")]
    CharSufficient,
    #[serde(rename = "table-3")]
    ExactNeighborhood,
    #[serde(rename = "unknown")]
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub state: EdgeState,
    pub provenance: EdgeProvenance,
}

/// A composite left over by a factoring stall: its primes belong to the
/// given degree class but are not individually known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoVertex {
    pub value: BigUint,
    pub degree: u64,
}

/// Resource limits for graph construction.
#[derive(Debug, Clone)]
pub struct GraphBudget {
    /// Rho iterations per composite before it becomes a pseudo-vertex.
    pub rho_iterations: u64,
    /// Wall-clock limit for the whole build; breaching it aborts with a
    /// partial-graph error instead of degrading further.
    pub time_limit: Option<Duration>,
}

impl Default for GraphBudget {
    fn default() -> Self {
        GraphBudget { rho_iterations: 1 << 22, time_limit: None }
    }
}

/// The prime graph of one group: prime vertices keyed to their degree
/// (`None` marks the defining characteristic), a full edge map over
/// vertex pairs, and any factoring residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGraph {
    spec: GroupSpec,
    vertices: BTreeMap<BigUint, Option<u64>>,
    edges: BTreeMap<(BigUint, BigUint), Edge>,
    pseudo_vertices: Vec<PseudoVertex>,
    warnings: Vec<String>,
}

impl PrimeGraph {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Prime vertices with their degree; the characteristic has none.
    pub fn vertices(&self) -> &BTreeMap<BigUint, Option<u64>> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<(BigUint, BigUint), Edge> {
        &self.edges
    }

    pub fn pseudo_vertices(&self) -> &[PseudoVertex] {
        &self.pseudo_vertices
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Edge lookup in either endpoint order.
    pub fn edge(&self, r: &BigUint, s: &BigUint) -> Option<Edge> {
        self.edges.get(&key(r, s)).copied()
    }

    /// Degree of the vertex `r`, if `r` is a non-characteristic vertex.
    pub fn degree(&self, r: &BigUint) -> Option<u64> {
        self.vertices.get(r).copied().flatten()
    }

    pub fn to_dot(&self) -> String {
        export::to_dot(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        export::to_json(self)
    }

    /// Structural invariants: symmetric storage (guaranteed by keying),
    /// full pair coverage, and no Unknown verdict on an odd pair away
    /// from p where the criteria apply.
    pub fn validate(&self) -> Result<()> {
        let n = self.spec.prk();
        let primes: Vec<&BigUint> = self.vertices.keys().collect();
        for (i, r) in primes.iter().enumerate() {
            for s in primes.iter().skip(i + 1) {
                let edge = self.edge(r, s).ok_or_else(|| {
                    Error::invalid(format!("missing edge ({r}, {s})"))
                })?;
                if edge.state != EdgeState::Unknown {
                    continue;
                }
                let odd_pair = !self.is_char(r)
                    && !self.is_char(s)
                    && **r != BigUint::from(2u8)
                    && **s != BigUint::from(2u8);
                if !odd_pair {
                    continue;
                }
                let in_scope = match self.spec.family() {
                    Family::Linear | Family::Unitary => {
                        let phi = |v: &BigUint| self.phi_of(v).unwrap_or(0);
                        phi(r) >= 2 && phi(s) >= 2
                    }
                    _ => true,
                };
                if in_scope && n >= 4 {
                    return Err(Error::invalid(format!(
                        "undecided odd pair ({r}, {s}) inside criterion scope"
                    )));
                }
            }
        }
        Ok(())
    }

    fn is_char(&self, r: &BigUint) -> bool {
        *r == BigUint::from(self.spec.p())
    }

    /// phi of a vertex from its stored degree.
    pub fn phi_of(&self, r: &BigUint) -> Option<u64> {
        self.degree(r).map(|d| phi_from_degree(self.spec.family(), d))
    }
}

fn key(r: &BigUint, s: &BigUint) -> (BigUint, BigUint) {
    if r <= s {
        (r.clone(), s.clone())
    } else {
        (s.clone(), r.clone())
    }
}

/// phi as a function of the literal degree: the degree itself for linear
/// groups, nu for unitary, eta for the rest.
fn phi_from_degree(family: Family, degree: u64) -> u64 {
    match family {
        Family::Linear => degree,
        Family::Unitary => nu(degree),
        _ => eta(degree),
    }
}

/// Criterion verdict for an odd pair away from p, given each side's
/// literal degree and phi. `None` when no in-scope criterion applies
/// (linear/unitary with a phi-1 endpoint).
fn decide_odd(family: Family, n: u64, a: (u64, u64), b: (u64, u64)) -> Option<(bool, EdgeProvenance)> {
    // Order so phi(r) <= phi(s); the branch conditions are insensitive to
    // how ties break.
    let ((k, phi_r), (l, phi_s)) = if a.1 <= b.1 { (a, b) } else { (b, a) };
    match family {
        Family::Linear | Family::Unitary => {
            if phi_r < 2 || phi_s < 2 {
                return None;
            }
            let verdict = phi_r + phi_s <= n || phi_s % phi_r == 0;
            Some((verdict, EdgeProvenance::CriterionI))
        }
        Family::Symplectic | Family::OrthogonalOdd => {
            let verdict = phi_r + phi_s <= n || (l % k == 0 && (l / k) % 2 == 1);
            Some((verdict, EdgeProvenance::CriterionII))
        }
        Family::OrthogonalEvenPlus | Family::OrthogonalEvenMinus => {
            let eps = if family == Family::OrthogonalEvenPlus { 1i64 } else { -1 };
            let sign_term = if (k + l) % 2 == 0 { eps } else { -eps };
            let slack = 2 * n as i64 - (1 - sign_term);
            let sum_ok = 2 * (phi_r + phi_s) as i64 <= slack;
            let ratio_ok = l % k == 0 && (l / k) % 2 == 1;
            let special = eps == 1
                && n % 2 == 0
                && ((k, l) == (n / 2, n) || (k, l) == (n, n / 2));
            Some((sum_ok || ratio_ok || special, EdgeProvenance::CriterionIII))
        }
    }
}

fn check_odd_pair_pre(group: &GroupSpec, r: &BigUint, s: &BigUint) -> Result<()> {
    if group.prk() < 4 {
        return Err(Error::invalid("adjacency criteria require rank at least 4"));
    }
    if r == s {
        return Err(Error::invalid("adjacency needs two distinct primes"));
    }
    let two = BigUint::from(2u8);
    let p = BigUint::from(group.p());
    for v in [r, s] {
        if *v == two || *v == p {
            return Err(Error::invalid(format!(
                "{v} is excluded: criteria cover odd primes away from the characteristic"
            )));
        }
    }
    Ok(())
}

/// Criterion verdict for two odd primes of pi(L) away from the
/// characteristic. For linear and unitary groups both primes must have
/// phi at least 2; anything outside the hypotheses is an error, never a
/// silent false.
pub fn adjacent_odd(group: &GroupSpec, r: &BigUint, s: &BigUint) -> Result<bool> {
    check_odd_pair_pre(group, r, s)?;
    let (k, phi_r) = degree_and_phi(group, r)?;
    let (l, phi_s) = degree_and_phi(group, s)?;
    decide_odd(group.family(), group.prk(), (k, phi_r), (l, phi_s))
        .map(|(verdict, _)| verdict)
        .ok_or_else(|| {
            Error::invalid(format!(
                "criterion hypothesis needs phi >= 2 on both sides; got {phi_r} and {phi_s}"
            ))
        })
}

fn degree_and_phi(group: &GroupSpec, r: &BigUint) -> Result<(u64, u64)> {
    let phi = phi_rl(group, r)?;
    let e = degree_of(group, r)?;
    let k = u64::try_from(&e)
        .map_err(|_| Error::invalid(format!("degree of {r} overflows the profile range")))?;
    Ok((k, phi))
}

/// Sufficient condition for adjacency to both 2 and p: phi(r, L) at most
/// n - 2. A false result leaves those edges open, it does not refute them.
pub fn char_adjacency_sufficient(group: &GroupSpec, r: &BigUint) -> Result<bool> {
    if group.prk() < 4 {
        return Err(Error::invalid("adjacency criteria require rank at least 4"));
    }
    let two = BigUint::from(2u8);
    let p = BigUint::from(group.p());
    if *r == two || *r == p {
        return Err(Error::invalid(format!("{r} is excluded from the sufficient condition")));
    }
    Ok(phi_rl(group, r)? <= group.prk() - 2)
}

/// Builds the full prime graph with default budgets.
pub fn build_graph(group: &GroupSpec) -> Result<PrimeGraph> {
    build_graph_with(group, &GraphBudget::default())
}

/// Builds the full prime graph: vertices from the degree profile's
/// primitive parts plus the characteristic and the primes of q^2 - 1,
/// then the three decision passes in order (criteria, sufficient
/// condition, exact neighborhoods).
pub fn build_graph_with(group: &GroupSpec, budget: &GraphBudget) -> Result<PrimeGraph> {
    if group.prk() < 4 {
        return Err(Error::invalid("prime graphs are built for rank at least 4"));
    }
    let started = Instant::now();
    let mut graph = PrimeGraph {
        spec: group.clone(),
        vertices: BTreeMap::new(),
        edges: BTreeMap::new(),
        pseudo_vertices: Vec::new(),
        warnings: Vec::new(),
    };

    collect_vertices(group, budget, &mut graph)?;
    check_deadline(started, budget, &graph, "vertex collection")?;

    let verts: Vec<(BigUint, Option<u64>)> =
        graph.vertices.iter().map(|(r, d)| (r.clone(), *d)).collect();
    let two = BigUint::from(2u8);
    let p = BigUint::from(group.p());
    let n = group.prk();
    let family = group.family();

    // Pass 1: criteria on odd pairs away from p; everything else starts
    // Unknown so the later passes see a complete map.
    for (i, (r, dr)) in verts.iter().enumerate() {
        for (s, ds) in verts.iter().skip(i + 1) {
            let mut edge = Edge { state: EdgeState::Unknown, provenance: EdgeProvenance::Undetermined };
            if *r != two && *s != two && *r != p && *s != p {
                let (dr, ds) = (dr.expect("non-char vertex has a degree"), ds.expect("non-char vertex has a degree"));
                let a = (dr, phi_from_degree(family, dr));
                let b = (ds, phi_from_degree(family, ds));
                if let Some((verdict, provenance)) = decide_odd(family, n, a, b) {
                    edge = Edge {
                        state: if verdict { EdgeState::Adjacent } else { EdgeState::NonAdjacent },
                        provenance,
                    };
                }
            }
            graph.edges.insert(key(r, s), edge);
        }
    }
    check_deadline(started, budget, &graph, "criterion pass")?;

    // Pass 2: sufficient condition for adjacency to 2 and p.
    for (r, d) in &verts {
        if *r == two || *r == p {
            continue;
        }
        let phi = phi_from_degree(family, d.expect("non-char vertex has a degree"));
        if phi <= n - 2 {
            for c in [&two, &p] {
                if c == r {
                    continue;
                }
                set_edge(&mut graph, c, r, true, EdgeProvenance::CharSufficient);
            }
        }
    }
    check_deadline(started, budget, &graph, "sufficient-condition pass")?;

    // Pass 3: exact neighborhoods of the designated classes, under every
    // valid sign choice. Decides remaining edges at those vertices in
    // both directions and cross-checks the already decided ones.
    for eps in [None, Some(Sign::Plus), Some(Sign::Minus)] {
        let Ok(data) = disjoint_pair_data(group, eps) else { continue };
        for (class_degree, orders) in
            [(data.r1_degree, &data.m1), (data.r2_degree, &data.m2)]
        {
            for (v, d) in &verts {
                if *d != Some(class_degree) {
                    continue;
                }
                for (w, _) in &verts {
                    if w == v {
                        continue;
                    }
                    let claim = orders.iter().any(|m| (m % w).is_zero());
                    set_edge(&mut graph, v, w, claim, EdgeProvenance::ExactNeighborhood);
                }
            }
        }
    }
    check_deadline(started, budget, &graph, "neighborhood pass")?;

    Ok(graph)
}

/// Records a verdict, panicking if two decision routes ever disagree;
/// the first route to decide an edge keeps the provenance.
fn set_edge(graph: &mut PrimeGraph, r: &BigUint, s: &BigUint, adjacent: bool, provenance: EdgeProvenance) {
    let state = if adjacent { EdgeState::Adjacent } else { EdgeState::NonAdjacent };
    let slot = graph
        .edges
        .get_mut(&key(r, s))
        .expect("verdicts only land on existing pairs");
    match slot.state {
        EdgeState::Unknown => *slot = Edge { state, provenance },
        prior => assert_eq!(
            prior, state,
            "decision routes disagree on ({r}, {s}): {prior:?} vs {state:?} via {provenance:?}"
        ),
    }
}

fn check_deadline(
    started: Instant,
    budget: &GraphBudget,
    graph: &PrimeGraph,
    stage: &str,
) -> Result<()> {
    if let Some(limit) = budget.time_limit {
        if started.elapsed() > limit {
            return Err(Error::PartialGraph {
                reason: format!("time limit exceeded during {stage}"),
                graph: Box::new(graph.clone()),
            });
        }
    }
    Ok(())
}

/// Vertex collection: p, the split primes of q^2 - 1, and the primitive
/// part of every profile degree from 3 up, factored in parallel.
fn collect_vertices(group: &GroupSpec, budget: &GraphBudget, graph: &mut PrimeGraph) -> Result<()> {
    let q = group.q();
    let profile = degree_profile(group);
    graph.vertices.insert(BigUint::from(group.p()), None);

    // Degrees 1 and 2 split q^2 - 1 by divisibility; 2 itself follows the
    // mod-4 convention.
    let two = BigUint::from(2u8);
    if q % 2 == 1 {
        let e2 = if q % 4 == 1 { 1 } else { 2 };
        graph.vertices.insert(two.clone(), Some(e2));
    }
    for (shift, degree) in [(q - 1, 1u64), (q + 1, 2)] {
        if !profile.degrees.contains(&degree) {
            continue;
        }
        let (factors, leftovers) = crate::arith::factorize_with_budget(
            &BigUint::from(shift),
            FactorBudget { rho_iterations: budget.rho_iterations },
        );
        assert!(leftovers.is_empty(), "q^2 - 1 is tiny and always factors");
        for r in factors.primes() {
            if *r != two {
                graph.vertices.insert(r.clone(), Some(degree));
            }
        }
    }

    let high: Vec<u64> = profile.degrees.iter().copied().filter(|&i| i >= 3).collect();
    let base = crate::arith::SignedBase::from_i64(q as i64)?;
    let worklist = std::sync::Mutex::new(high.clone().into_iter());
    let results = std::sync::Mutex::new(BTreeMap::<u64, (Vec<BigUint>, Vec<BigUint>)>::new());
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(high.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let Some(i) = worklist.lock().unwrap().next() else { break };
                let k = k_value(i as u32, &base).expect("profile degrees are valid levels");
                let (factors, leftovers) = crate::arith::factorize_with_budget(
                    &k,
                    FactorBudget { rho_iterations: budget.rho_iterations },
                );
                let primes = factors.primes().cloned().collect();
                results.lock().unwrap().insert(i, (primes, leftovers));
            });
        }
    });

    for (i, (primes, leftovers)) in results.into_inner().unwrap() {
        for r in primes {
            let prior = graph.vertices.insert(r.clone(), Some(i));
            assert!(prior.is_none(), "prime {r} landed in two degree classes");
        }
        for c in leftovers {
            graph.warnings.push(format!(
                "degree {i}: composite {c} unfactored within budget; \
                 retained as pseudo-vertex, excluded from coclique search"
            ));
            graph.pseudo_vertices.push(PseudoVertex { value: c, degree: i });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn criterion_pins() {
        let l95 = g("L:9:5");
        assert!(adjacent_odd(&l95, &big(31), &big(829)).unwrap());
        assert!(!adjacent_odd(&l95, &big(313), &big(829)).unwrap());
        let om = g("O-:6:5");
        assert!(adjacent_odd(&om, &big(13), &big(601)).unwrap());
    }

    #[test]
    fn criterion_preconditions() {
        let l95 = g("L:9:5");
        assert!(adjacent_odd(&l95, &big(2), &big(829)).is_err());
        assert!(adjacent_odd(&l95, &big(5), &big(829)).is_err());
        assert!(adjacent_odd(&l95, &big(829), &big(829)).is_err());
        // 5167 sits outside pi(L9(5)).
        assert!(adjacent_odd(&l95, &big(5167), &big(829)).is_err());
        // phi = 1 endpoints are outside criterion (i)'s hypothesis.
        let l97 = g("L:9:7");
        assert!(adjacent_odd(&l97, &big(3), &big(19)).is_err());
        assert!(adjacent_odd(&g("L:3:5"), &big(3), &big(31)).is_err());
    }

    #[test]
    fn sufficient_condition_pins() {
        let l95 = g("L:9:5");
        assert!(char_adjacency_sufficient(&l95, &big(31)).unwrap());
        assert!(!char_adjacency_sufficient(&l95, &big(829)).unwrap());
        assert!(char_adjacency_sufficient(&g("S:6:5"), &big(13)).unwrap());
    }

    #[test]
    fn build_l95_pins() {
        let graph = build_graph(&g("L:9:5")).unwrap();
        assert!(graph.vertices().contains_key(&big(829)));
        assert_eq!(graph.degree(&big(829)), Some(9));
        assert!(!graph.vertices().contains_key(&big(5167)));
        assert_eq!(graph.degree(&big(5)), None);

        let e = graph.edge(&big(31), &big(829)).unwrap();
        assert_eq!(e.state, EdgeState::Adjacent);
        assert_eq!(e.provenance, EdgeProvenance::CriterionI);
        let e = graph.edge(&big(313), &big(829)).unwrap();
        assert_eq!(e.state, EdgeState::NonAdjacent);

        // The characteristic's edges: sufficient rule below n - 2, exact
        // neighborhoods on the two top classes, and 2-5 left open.
        let e = graph.edge(&big(5), &big(31)).unwrap();
        assert_eq!((e.state, e.provenance), (EdgeState::Adjacent, EdgeProvenance::CharSufficient));
        let e = graph.edge(&big(5), &big(829)).unwrap();
        assert_eq!((e.state, e.provenance), (EdgeState::NonAdjacent, EdgeProvenance::ExactNeighborhood));
        let e = graph.edge(&big(2), &big(5)).unwrap();
        assert_eq!(e.state, EdgeState::Unknown);

        graph.validate().unwrap();
        assert!(graph.pseudo_vertices().is_empty());
    }

    #[test]
    fn build_u95_contains_5167() {
        let graph = build_graph(&g("U:9:5")).unwrap();
        assert_eq!(graph.degree(&big(5167)), Some(18));
        graph.validate().unwrap();
    }

    #[test]
    fn build_om65_pin() {
        let graph = build_graph(&g("O-:6:5")).unwrap();
        let e = graph.edge(&big(13), &big(601)).unwrap();
        assert_eq!((e.state, e.provenance), (EdgeState::Adjacent, EdgeProvenance::CriterionIII));
        graph.validate().unwrap();
    }

    #[test]
    fn rebuild_is_deterministic() {
        let a = build_graph(&g("S:5:5")).unwrap();
        let b = build_graph(&g("S:5:5")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_dot(), b.to_dot());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn deadline_produces_partial_graph() {
        let budget = GraphBudget { rho_iterations: 1 << 22, time_limit: Some(Duration::ZERO) };
        match build_graph_with(&g("L:9:5"), &budget) {
            Err(Error::PartialGraph { graph, .. }) => {
                assert!(graph.vertices().len() > 1);
            }
            other => panic!("expected a partial-graph error, got {other:?}"),
        }
    }
}
