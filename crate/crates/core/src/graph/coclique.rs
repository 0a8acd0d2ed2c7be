//! Exact maximum-coclique search. Cocliques of the prime graph are
//! cliques of the non-adjacency relation, so the search is a standard
//! branch-and-bound maximum-clique on bitsets with greedy-coloring
//! bounds, followed by a full enumeration at the optimum size. The
//! graphs here stay far below the scale where exactness would cost
//! anything.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde_json::json;

use super::{EdgeState, PrimeGraph};
use crate::error::{Error, Result};

/// Stop collecting explicit cocliques past this many; the counts and the
/// degree-set accumulators stay exact regardless.
const COCLIQUE_CAP: usize = 100_000;

/// Maximum cocliques of a graph together with the derived degree data:
/// E is the intersection of the per-coclique degree sets, J their union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocliqueReport {
    pub t: u64,
    pub e: BTreeSet<u64>,
    pub j: BTreeSet<u64>,
    /// All maximum cocliques (ascending within and across), truncated at
    /// the cap; `coclique_count` is always the true number.
    pub max_cocliques: Vec<Vec<BigUint>>,
    /// Distinct degree sets E_rho over all maximum cocliques.
    pub e_rho_list: Vec<BTreeSet<u64>>,
    pub coclique_count: u64,
}

impl CocliqueReport {
    pub fn j_minus_e(&self) -> BTreeSet<u64> {
        self.j.difference(&self.e).copied().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "t": self.t,
            "E": self.e,
            "J": self.j,
            "J_minus_E": self.j_minus_e(),
            "E_rho_list": self.e_rho_list,
            "coclique_count": self.coclique_count,
            "max_cocliques": self
                .max_cocliques
                .iter()
                .map(|c| c.iter().map(|r| r.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Search vertex set. Restricted mode (the default) keeps odd primes
/// away from the characteristic and greedily drops vertices until no
/// Unknown edge remains inside; unrestricted mode takes every vertex and
/// refuses graphs with any Unknown edge.
fn candidates(graph: &PrimeGraph, restrict: bool) -> Result<Vec<BigUint>> {
    let two = BigUint::from(2u8);
    let p = BigUint::from(graph.spec().p());
    let mut cands: Vec<BigUint> = if restrict {
        graph.vertices().keys().filter(|r| **r != two && **r != p).cloned().collect()
    } else {
        graph.vertices().keys().cloned().collect()
    };

    let undecided = |r: &BigUint, s: &BigUint| {
        graph.edge(r, s).is_none_or(|e| e.state == EdgeState::Unknown)
    };
    if !restrict {
        for (i, r) in cands.iter().enumerate() {
            for s in cands.iter().skip(i + 1) {
                if undecided(r, s) {
                    return Err(Error::invalid(format!(
                        "unrestricted search needs a fully decided graph; ({r}, {s}) is unknown"
                    )));
                }
            }
        }
        return Ok(cands);
    }

    // Drop the vertex carrying the most undecided edges until none are
    // left; ties break to the smallest prime, which keeps the result
    // deterministic. A phi-1 vertex forms a star of unknowns and goes
    // first, sparing its partners.
    loop {
        let mut worst: Option<(usize, usize)> = None;
        for (i, r) in cands.iter().enumerate() {
            let count = cands.iter().filter(|s| *s != r && undecided(r, s)).count();
            if count > 0 && worst.is_none_or(|(best, _)| count > best) {
                worst = Some((count, i));
            }
        }
        match worst {
            Some((_, i)) => {
                cands.remove(i);
            }
            None => return Ok(cands),
        }
    }
}

/// Bitset helpers over `Vec<u64>`.
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn clear_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1 << (i % 64));
}

fn pop(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_assign(bits: &mut [u64], other: &[u64]) {
    for (a, b) in bits.iter_mut().zip(other) {
        *a &= b;
    }
}

fn and_not_assign(bits: &mut [u64], other: &[u64]) {
    for (a, b) in bits.iter_mut().zip(other) {
        *a &= !b;
    }
}

fn first_one(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn ones(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::with_capacity(pop(bits));
    for (i, mut w) in bits.iter().copied().enumerate() {
        while w != 0 {
            out.push(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

/// Adjacency bitsets of the non-adjacency relation on `cands`.
fn noncoherence(graph: &PrimeGraph, cands: &[BigUint]) -> Vec<Vec<u64>> {
    let words = words_for(cands.len());
    let mut adj = vec![vec![0u64; words]; cands.len()];
    for (i, r) in cands.iter().enumerate() {
        for (j, s) in cands.iter().enumerate().skip(i + 1) {
            if graph.edge(r, s).map(|e| e.state) == Some(EdgeState::NonAdjacent) {
                set_bit(&mut adj[i], j);
                set_bit(&mut adj[j], i);
            }
        }
    }
    adj
}

/// Greedy coloring of the candidate set; returns (vertex, color) in
/// ascending color order. Any clique inside `cand` has at most max-color
/// vertices.
fn color_order(adj: &[Vec<u64>], cand: &[u64]) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(pop(cand));
    let mut remaining = cand.to_vec();
    let mut color = 0usize;
    while first_one(&remaining).is_some() {
        color += 1;
        let mut class = remaining.clone();
        while let Some(v) = first_one(&class) {
            clear_bit(&mut remaining, v);
            clear_bit(&mut class, v);
            and_not_assign(&mut class, &adj[v]);
            order.push((v, color));
        }
    }
    order
}

fn clique_size(adj: &[Vec<u64>], cand: Vec<u64>, depth: usize, best: &mut usize) {
    if first_one(&cand).is_none() {
        *best = (*best).max(depth);
        return;
    }
    let order = color_order(adj, &cand);
    let mut cand = cand;
    for &(v, color) in order.iter().rev() {
        if depth + color <= *best {
            return;
        }
        let mut next = cand.clone();
        and_assign(&mut next, &adj[v]);
        clique_size(adj, next, depth + 1, best);
        clear_bit(&mut cand, v);
    }
}

/// Visits every clique of exactly `target` vertices, in ascending vertex
/// order, as index stacks.
fn enumerate_cliques(
    adj: &[Vec<u64>],
    cand: &[u64],
    target: usize,
    stack: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if stack.len() == target {
        visit(stack);
        return;
    }
    if stack.len() + pop(cand) < target {
        return;
    }
    for v in ones(cand) {
        let mut next = cand.to_vec();
        for u in 0..=v {
            clear_bit(&mut next, u);
        }
        and_assign(&mut next, &adj[v]);
        stack.push(v);
        enumerate_cliques(adj, &next, target, stack, visit);
        stack.pop();
    }
}

/// All maximum cocliques of the graph with the derived E/J degree data.
pub fn max_cocliques(graph: &PrimeGraph, restrict: bool) -> Result<CocliqueReport> {
    let cands = candidates(graph, restrict)?;
    if cands.is_empty() {
        return Ok(CocliqueReport {
            t: 0,
            e: BTreeSet::new(),
            j: BTreeSet::new(),
            max_cocliques: Vec::new(),
            e_rho_list: Vec::new(),
            coclique_count: 0,
        });
    }
    let adj = noncoherence(graph, &cands);
    let words = words_for(cands.len());
    let mut full = vec![0u64; words];
    for i in 0..cands.len() {
        set_bit(&mut full, i);
    }

    let mut best = 0usize;
    clique_size(&adj, full.clone(), 0, &mut best);

    let mut e: Option<BTreeSet<u64>> = None;
    let mut j = BTreeSet::new();
    let mut rho_set: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
    let mut cocliques: Vec<Vec<BigUint>> = Vec::new();
    let mut count = 0u64;
    let degree_of = |i: usize| {
        graph
            .degree(&cands[i])
            .expect("restricted candidates always carry a degree; unrestricted graphs may include p")
    };
    let char_vertex = BigUint::from(graph.spec().p());
    let mut stack = Vec::new();
    enumerate_cliques(&adj, &full, best, &mut stack, &mut |members| {
        count += 1;
        // The characteristic vertex (unrestricted mode only) carries no
        // degree and simply contributes nothing to E_rho.
        let rho: BTreeSet<u64> = members
            .iter()
            .filter(|&&i| cands[i] != char_vertex)
            .map(|&i| degree_of(i))
            .collect();
        match &mut e {
            None => e = Some(rho.clone()),
            Some(e) => *e = e.intersection(&rho).copied().collect(),
        }
        j.extend(rho.iter().copied());
        rho_set.insert(rho);
        if cocliques.len() < COCLIQUE_CAP {
            cocliques.push(members.iter().map(|&i| cands[i].clone()).collect());
        }
    });

    Ok(CocliqueReport {
        t: best as u64,
        e: e.unwrap_or_default(),
        j,
        max_cocliques: cocliques,
        e_rho_list: rho_set.into_iter().collect(),
        coclique_count: count,
    })
}

/// Exact maximum size of cocliques containing `r`: one more than the
/// largest coclique among r's non-neighbors in the searchable set.
pub fn t_of_r(graph: &PrimeGraph, r: &BigUint) -> Result<u64> {
    let cands = candidates(graph, true)?;
    if !cands.contains(r) {
        return Err(Error::invalid(format!(
            "{r} is not a decided search vertex of this graph"
        )));
    }
    let adj = noncoherence(graph, &cands);
    let idx = cands.iter().position(|c| c == r).expect("membership checked above");
    let mut best = 0usize;
    clique_size(&adj, adj[idx].clone(), 0, &mut best);
    Ok(best as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::super::build_graph;
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn l95_report_matches_prediction() {
        let graph = build_graph(&"L:9:5".parse().unwrap()).unwrap();
        let report = max_cocliques(&graph, true).unwrap();
        assert_eq!(report.t, 5);
        assert_eq!(report.e, (5..=9).collect());
        assert_eq!(report.j, report.e);
        assert_eq!(report.e_rho_list, vec![(5..=9).collect()]);
        assert!(report.coclique_count >= 1);
        for c in &report.max_cocliques {
            assert_eq!(c.len(), 5);
            for (i, r) in c.iter().enumerate() {
                for s in &c[i + 1..] {
                    assert_eq!(graph.edge(r, s).unwrap().state, EdgeState::NonAdjacent);
                }
            }
        }
    }

    #[test]
    fn t_of_r_pins() {
        let graph = build_graph(&"L:9:5".parse().unwrap()).unwrap();
        assert_eq!(t_of_r(&graph, &big(13)).unwrap(), 4);
        assert_eq!(t_of_r(&graph, &big(829)).unwrap(), 5);
        assert!(t_of_r(&graph, &big(31)).unwrap() <= 3);
        assert!(t_of_r(&graph, &big(2)).is_err());
    }

    #[test]
    fn s105_has_empty_j_minus_e() {
        let graph = build_graph(&"S:5:5".parse().unwrap()).unwrap();
        let report = max_cocliques(&graph, true).unwrap();
        assert_eq!(report.t, 5);
        assert_eq!(report.e, [3, 5, 6, 8, 10].into_iter().collect());
        assert!(report.j_minus_e().is_empty());
    }

    #[test]
    fn unrestricted_rejects_unknown_edges() {
        let graph = build_graph(&"L:9:5".parse().unwrap()).unwrap();
        // The 2-p edge is undecided, so the full-graph search must refuse.
        assert!(max_cocliques(&graph, false).is_err());
    }
}
