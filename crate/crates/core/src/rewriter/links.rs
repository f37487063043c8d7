use std::collections::BTreeMap;

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;

use super::word::{FreeWord, Symbol};
use super::RewriteError;

/// Every generator that occurs does so exactly once with each sign.
pub fn check_evenly_worded<G: Symbol>(w: &FreeWord<G>) -> bool {
    let mut counts: BTreeMap<&G, (u32, u32)> = BTreeMap::new();
    for l in w.letters() {
        let c = counts.entry(&l.symbol).or_default();
        if l.inverse {
            c.1 += 1;
        } else {
            c.0 += 1;
        }
    }
    counts.values().all(|&c| c == (1, 1))
}

/// Positions of `g` and `g^-1` in an evenly worded word.
fn positions<G: Symbol>(w: &FreeWord<G>) -> BTreeMap<G, (usize, usize)> {
    let mut pos: BTreeMap<G, (usize, usize)> = BTreeMap::new();
    for (i, l) in w.letters().iter().enumerate() {
        let e = pos.entry(l.symbol.clone()).or_default();
        if l.inverse {
            e.1 = i;
        } else {
            e.0 = i;
        }
    }
    pos
}

/// `A` and `B` are linked when the word reads `W0 A W1 B W2 A^-1 W3 B^-1 W4`
/// for one of the two ways of naming the pair.
pub fn are_linked<G: Symbol>(w: &FreeWord<G>, a: &G, b: &G) -> Result<bool, RewriteError> {
    if !check_evenly_worded(w) {
        return Err(RewriteError::NotEvenlyWorded);
    }
    let pos = positions(w);
    let (Some(&pa), Some(&pb)) = (pos.get(a), pos.get(b)) else {
        return Ok(false);
    };
    Ok(a != b && (pattern(pa, pb) || pattern(pb, pa)))
}

fn pattern(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 < b.0 && b.0 < a.1 && a.1 < b.1
}

/// Each generator is linked to a partner, with partners pairwise distinct
/// (a perfect matching in the linking graph).
pub fn check_fully_linked<G: Symbol>(w: &FreeWord<G>) -> Result<bool, RewriteError> {
    if !check_evenly_worded(w) {
        return Err(RewriteError::NotEvenlyWorded);
    }
    let pos: Vec<(usize, usize)> = positions(w).into_values().collect();
    if pos.len() % 2 == 1 {
        return Ok(false);
    }
    let mut graph = UnGraph::<(), ()>::with_capacity(pos.len(), 0);
    let nodes: Vec<_> = pos.iter().map(|_| graph.add_node(())).collect();
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pattern(pos[i], pos[j]) || pattern(pos[j], pos[i]) {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    Ok(maximum_matching(&graph).is_perfect())
}
