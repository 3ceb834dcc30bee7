//! Shared helpers for the integration and acceptance suites.
#![allow(dead_code)]

use ksparse::generators::random_hypergraph;
use ksparse::hypergraph::Hypergraph;
use ksparse::oracle;
use ksparse::params::SparsityParams;
use ksparse::pebble::VerdictKind;

/// All (k, l) pairs valid for this graph with k <= max_k: l ranges over
/// 0..=s*k-1 for the graph's minimum present edge dimension (2 when the
/// graph has no edges).
pub fn valid_params(graph: &Hypergraph, max_k: usize) -> Vec<SparsityParams> {
    let s = graph.min_dimension().unwrap_or(2);
    let mut out = Vec::new();
    for k in 1..=max_k {
        for l in 0..=(s * k - 1) {
            out.push(SparsityParams::new(k, l).expect("k >= 1"));
        }
    }
    out
}

/// The verdict the brute-force oracle assigns to (graph, params).
pub fn oracle_kind(graph: &Hypergraph, params: SparsityParams) -> VerdictKind {
    if !oracle::is_sparse_bruteforce(graph, params, 16).expect("within cap") {
        VerdictKind::Dependent
    } else if graph.edge_count() as i64 == params.tight_edge_count(graph.n()) {
        VerdictKind::Tight
    } else {
        VerdictKind::Sparse
    }
}

pub const FUZZ_DIM_SETS: &[&[usize]] = &[&[2], &[3], &[1, 2], &[2, 3], &[1, 2, 3]];

/// The seeded random-instance pool shared by the acceptance criteria:
/// n <= 7, m <= `max_m`, dims within {1,2,3}.
pub fn fuzz_graphs(max_m: usize, seeds: u64) -> Vec<Hypergraph> {
    let mut graphs = Vec::new();
    for (di, dims) in FUZZ_DIM_SETS.iter().enumerate() {
        let min_n = dims.iter().max().copied().unwrap_or(2);
        for n in min_n.max(2)..=7 {
            for seed in 0..seeds {
                let m_choices = [3, max_m / 2, max_m];
                for (mi, &m) in m_choices.iter().enumerate() {
                    let seed = (di as u64) << 24 | (n as u64) << 16 | (mi as u64) << 8 | seed;
                    graphs.push(random_hypergraph(n, m, dims, seed).expect("valid spec"));
                }
            }
        }
    }
    graphs
}

/// Deterministic xorshift permutation source for order-independence tests.
pub fn shuffled(len: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in (1..len).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    order
}
