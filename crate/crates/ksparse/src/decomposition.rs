//! Decompositions of tight hypergraphs: constructive k-map extraction from
//! the (k,0)-pebble game orientation, verifiers for maps-and-trees
//! decompositions, and the add-any-edges checks relating (k,l)-tight graphs
//! to k-arborescences and k-maps.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::Hypergraph;
use crate::params::{ParamError, SparsityParams};
use crate::pebble::{decide, run_basic, VerdictKind};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph is not ({k},{l})-tight: pebble game verdict `{kind}`")]
    NotTight {
        k: usize,
        l: usize,
        kind: VerdictKind,
    },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("{0}")]
    Invalid(String),
}

/// Assignment of every edge to one of k spanning maps, with the
/// certifying orientation: per map, every vertex is the tail of exactly
/// one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecomposition {
    pub k: usize,
    pub assignment: Vec<usize>,
    pub tails: Vec<usize>,
}

/// Partition of the edges into l spanning trees and k-l spanning maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedDecomposition {
    pub tree_parts: Vec<Vec<usize>>,
    pub map_parts: Vec<Vec<usize>>,
}

/// Decomposes a (k,0)-tight hypergraph into k maps. The (k,0)-game leaves
/// zero pebbles, so every vertex is the tail of exactly k edges (loops
/// included); handing those out in edge order yields one spanning map per
/// slot.
pub fn k_map_decompose(graph: &Hypergraph, k: usize) -> Result<MapDecomposition, DecomposeError> {
    let params = SparsityParams::new(k, 0)?;
    let outcome = run_basic(graph, params);
    if outcome.verdict.kind != VerdictKind::Tight {
        return Err(DecomposeError::NotTight {
            k,
            l: 0,
            kind: outcome.verdict.kind,
        });
    }
    // All edges accepted in input order: game edge i is input edge i.
    let state = &outcome.state;
    let mut assignment = vec![0usize; graph.edge_count()];
    let mut slot = vec![0usize; graph.n()];
    for (e, a) in assignment.iter_mut().enumerate() {
        let t = state.tail(e);
        *a = slot[t];
        slot[t] += 1;
    }
    debug_assert!(slot.iter().all(|&c| c == k));
    Ok(MapDecomposition {
        k,
        assignment,
        tails: state.tails().to_vec(),
    })
}

/// Checks the map-decomposition invariants exactly: every edge assigned a
/// map in 0..k and tailed at one of its ends, and per map every vertex is
/// the tail of exactly one edge.
pub fn verify_map_decomposition(graph: &Hypergraph, d: &MapDecomposition) -> bool {
    let m = graph.edge_count();
    if d.assignment.len() != m || d.tails.len() != m || d.k == 0 {
        return false;
    }
    let mut count = vec![0usize; graph.n() * d.k];
    for (e, edge) in graph.edges().iter().enumerate() {
        if d.assignment[e] >= d.k || !edge.contains(d.tails[e]) {
            return false;
        }
        count[d.tails[e] * d.k + d.assignment[e]] += 1;
    }
    count.iter().all(|&c| c == 1)
}

/// A hypergraph is a k-arborescence (edge-disjoint union of k spanning
/// trees) exactly when it is (k,k)-tight.
pub fn is_k_arborescence(graph: &Hypergraph, k: usize) -> bool {
    match SparsityParams::new(k, k) {
        Ok(params) => decide(graph, params).kind == VerdictKind::Tight,
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// Adding any l-k dimension->=2 edges to a (k,l)-tight graph gives a
    /// k-arborescence. Guaranteed for l <= 3k; beyond that small vertex
    /// sets can be overfilled (see `check` tests).
    LovaszRecski,
    /// Adding any l edges of the complete-multiplicity complement to a
    /// (k,l)-tight graph gives a k-map. Guaranteed for l <= 2k.
    MapsAfterAdding,
}

/// Outcome of an augmentation sweep. `counterexamples` keeps the first few
/// failing added-edge multisets; `counterexample_count` counts all of them.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationReport {
    pub theorem: Theorem,
    pub mode: CheckMode,
    pub added_per_trial: usize,
    pub tested: usize,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Vec<Vec<usize>>>,
}

const KEPT_COUNTEREXAMPLES: usize = 16;

/// Checks that every augmentation of a (k,l)-tight graph by l-k edges of
/// dimension at least 2 (drawn from the complete graph of multiplicity
/// s*k-k, minus the input) is (k,k)-tight. Requires l >= k.
pub fn check_lovasz_recski(
    graph: &Hypergraph,
    params: SparsityParams,
    mode: CheckMode,
) -> Result<AugmentationReport, DecomposeError> {
    if params.l() < params.k() {
        return Err(DecomposeError::Invalid(format!(
            "needs l >= k, got k = {}, l = {}",
            params.k(),
            params.l()
        )));
    }
    require_tight(graph, params)?;
    let arb = SparsityParams::new(params.k(), params.k()).expect("k >= 1");
    let pool = complement_pool(graph, arb, 2);
    let added = params.l() - params.k();
    run_augmentations(graph, pool, added, mode, Theorem::LovaszRecski, |aug| {
        decide(aug, arb).kind == VerdictKind::Tight
    })
}

/// Checks that every augmentation of a (k,l)-tight graph by l edges of the
/// multiplicity-s*k complement is (k,0)-tight and decomposes into k maps.
pub fn check_maps_after_adding(
    graph: &Hypergraph,
    params: SparsityParams,
    mode: CheckMode,
) -> Result<AugmentationReport, DecomposeError> {
    require_tight(graph, params)?;
    let maps = SparsityParams::new(params.k(), 0).expect("k >= 1");
    let pool = complement_pool(graph, maps, 1);
    let k = params.k();
    run_augmentations(
        graph,
        pool,
        params.l(),
        mode,
        Theorem::MapsAfterAdding,
        |aug| match k_map_decompose(aug, k) {
            Ok(d) => verify_map_decomposition(aug, &d),
            Err(_) => false,
        },
    )
}

fn require_tight(graph: &Hypergraph, params: SparsityParams) -> Result<(), DecomposeError> {
    let verdict = decide(graph, params);
    if verdict.kind != VerdictKind::Tight {
        return Err(DecomposeError::NotTight {
            k: params.k(),
            l: params.l(),
            kind: verdict.kind,
        });
    }
    Ok(())
}

/// Available added-edge types: each s-subset (s >= min_dim) with remaining
/// multiplicity s*k - l minus the copies already in the graph.
fn complement_pool(
    graph: &Hypergraph,
    params: SparsityParams,
    min_dim: usize,
) -> Vec<(Vec<usize>, usize)> {
    let mut existing: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for e in graph.edges() {
        *existing.entry(e.ends().to_vec()).or_default() += 1;
    }
    let n = graph.n();
    let mut pool = Vec::new();
    for s in min_dim..=n {
        let mult = params.multiplicity_bound(s);
        if mult <= 0 {
            continue;
        }
        for ends in (0..n).combinations(s) {
            let used = existing.get(&ends).copied().unwrap_or(0);
            let avail = (mult as usize).saturating_sub(used);
            if avail > 0 {
                pool.push((ends, avail));
            }
        }
    }
    pool
}

fn run_augmentations(
    graph: &Hypergraph,
    pool: Vec<(Vec<usize>, usize)>,
    added: usize,
    mode: CheckMode,
    theorem: Theorem,
    mut passes: impl FnMut(&Hypergraph) -> bool,
) -> Result<AugmentationReport, DecomposeError> {
    let mut report = AugmentationReport {
        theorem,
        mode,
        added_per_trial: added,
        tested: 0,
        counterexample_count: 0,
        counterexamples: Vec::new(),
    };
    let base: Vec<Vec<usize>> = graph.edges().iter().map(|e| e.ends().to_vec()).collect();
    let mut test_one = |added_edges: &[Vec<usize>], report: &mut AugmentationReport| {
        let mut edges = base.clone();
        edges.extend(added_edges.iter().cloned());
        let aug = Hypergraph::new(graph.n(), edges).expect("pool edges are valid");
        report.tested += 1;
        if !passes(&aug) {
            report.counterexample_count += 1;
            if report.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                report.counterexamples.push(added_edges.to_vec());
            }
        }
    };

    match mode {
        CheckMode::Exhaustive => {
            let total_avail: usize = pool.iter().map(|(_, a)| a).sum();
            if total_avail < added {
                return Err(DecomposeError::Invalid(format!(
                    "complement holds only {total_avail} edges, need {added}"
                )));
            }
            let mut counts = vec![0usize; pool.len()];
            enumerate_multisets(&pool, added, 0, &mut counts, &mut |counts| {
                let added_edges: Vec<Vec<usize>> = pool
                    .iter()
                    .zip(counts)
                    .flat_map(|((ends, _), &c)| std::iter::repeat_n(ends.clone(), c))
                    .collect();
                test_one(&added_edges, &mut report);
            });
        }
        CheckMode::Sampled { trials, seed } => {
            let mut slots: Vec<usize> = Vec::new();
            for (i, (_, avail)) in pool.iter().enumerate() {
                slots.extend(std::iter::repeat_n(i, *avail));
            }
            if slots.len() < added {
                return Err(DecomposeError::Invalid(format!(
                    "complement holds only {} edges, need {added}",
                    slots.len()
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let picked: Vec<usize> = slots.choose_multiple(&mut rng, added).copied().collect();
                let mut added_edges: Vec<Vec<usize>> =
                    picked.iter().map(|&i| pool[i].0.clone()).collect();
                added_edges.sort();
                test_one(&added_edges, &mut report);
            }
        }
    }
    Ok(report)
}

fn enumerate_multisets(
    pool: &[(Vec<usize>, usize)],
    remaining: usize,
    from: usize,
    counts: &mut Vec<usize>,
    visit: &mut impl FnMut(&Vec<usize>),
) {
    if remaining == 0 {
        visit(counts);
        return;
    }
    if from >= pool.len() {
        return;
    }
    // Feasibility: enough multiplicity left in the tail of the pool.
    let tail_avail: usize = pool[from..].iter().map(|(_, a)| a).sum();
    if tail_avail < remaining {
        return;
    }
    let max_here = pool[from].1.min(remaining);
    for c in (0..=max_here).rev() {
        counts[from] = c;
        enumerate_multisets(pool, remaining - c, from + 1, counts, visit);
    }
    counts[from] = 0;
}

/// Checks a maps-and-trees decomposition: the parts partition the edge
/// set, every tree part is (1,1)-tight spanning, every map part is
/// (1,0)-tight spanning.
pub fn verify_maps_and_trees(
    graph: &Hypergraph,
    k: usize,
    l: usize,
    d: &MixedDecomposition,
) -> bool {
    if k < l || d.tree_parts.len() != l || d.map_parts.len() != k - l {
        return false;
    }
    let m = graph.edge_count();
    let mut seen = vec![false; m];
    for part in d.tree_parts.iter().chain(&d.map_parts) {
        for &e in part {
            if e >= m || seen[e] {
                return false;
            }
            seen[e] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    let tree = SparsityParams::new(1, 1).expect("valid");
    let map = SparsityParams::new(1, 0).expect("valid");
    for part in &d.tree_parts {
        let sub = graph.subgraph(part).expect("indices checked");
        if decide(&sub, tree).kind != VerdictKind::Tight {
            return false;
        }
    }
    for part in &d.map_parts {
        let sub = graph.subgraph(part).expect("indices checked");
        if decide(&sub, map).kind != VerdictKind::Tight {
            return false;
        }
    }
    true
}
