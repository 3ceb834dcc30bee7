//! Brute-force ground truth for every definitional predicate. Everything
//! here is exponential and guarded by explicit caps; exceeding a cap is an
//! error, never a silent approximation. These functions certify the
//! polynomial pebble-game algorithms on small instances.
//!
//! Vertex-subset enumeration ranges over the support (vertices incident to
//! at least one edge) only: a subset whose span is empty is exempt from the
//! sparsity count, and adding isolated vertices to a subset only loosens it.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::components::Component;
use crate::hypergraph::{GraphError, Hypergraph};
use crate::params::SparsityParams;

use thiserror::Error;

pub const DEFAULT_SUBSET_CAP: usize = 16;
pub const DEFAULT_EDGE_CAP: usize = 20;
pub const DEFAULT_PARTITION_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute force refused: {what} = {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("input graph is not sparse")]
    NotSparse,
    #[error("input graph is not tight")]
    NotTight,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The rank function r_{k,l} generating the sparsity matroid:
/// r(E') = k*|V(E')| - l for nonempty E', and r(empty) = 0.
pub fn edge_set_rank(
    graph: &Hypergraph,
    params: SparsityParams,
    edges: &[usize],
) -> Result<i64, OracleError> {
    if edges.is_empty() {
        return Ok(0);
    }
    let spanned = graph.span_of_edges(edges)?;
    Ok(params.tight_edge_count(spanned.len()))
}

/// Decides sparsity by checking every support subset against k*n' - l.
pub fn is_sparse_bruteforce(
    graph: &Hypergraph,
    params: SparsityParams,
    cap: usize,
) -> Result<bool, OracleError> {
    let table = SupportTable::build(graph, cap)?;
    Ok(table.all_subsets_sparse(params))
}

/// Sparse with exactly k*n - l edges (n counts isolated vertices too).
pub fn is_tight_bruteforce(
    graph: &Hypergraph,
    params: SparsityParams,
    cap: usize,
) -> Result<bool, OracleError> {
    if graph.edge_count() as i64 != params.tight_edge_count(graph.n()) {
        return Ok(false);
    }
    is_sparse_bruteforce(graph, params, cap)
}

/// All vertex sets with nonempty span whose induced sub-hypergraph is tight,
/// in no particular order. These are the induced blocks.
pub fn tight_induced_sets(
    graph: &Hypergraph,
    params: SparsityParams,
    cap: usize,
) -> Result<Vec<BTreeSet<usize>>, OracleError> {
    let table = SupportTable::build(graph, cap)?;
    Ok(table
        .tight_subsets(params)
        .into_iter()
        .map(|mask| table.to_vertices(mask))
        .collect())
}

/// The components of a sparse graph: inclusion-maximal vertex sets whose
/// induced sub-hypergraph is tight and spans at least one edge. Errors on
/// non-sparse input. Sorted by (size desc, lexicographic vertex list).
pub fn components_bruteforce(
    graph: &Hypergraph,
    params: SparsityParams,
    cap: usize,
) -> Result<Vec<Component>, OracleError> {
    let table = SupportTable::build(graph, cap)?;
    if !table.all_subsets_sparse(params) {
        return Err(OracleError::NotSparse);
    }
    let tight = table.tight_subsets(params);
    let mut maximal: Vec<u32> = Vec::new();
    for &mask in &tight {
        if tight.iter().any(|&o| o != mask && o & mask == mask) {
            continue;
        }
        maximal.push(mask);
    }
    let mut components: Vec<Component> = maximal
        .into_iter()
        .map(|mask| {
            let vertices = table.to_vertices(mask);
            let vs: Vec<usize> = vertices.iter().copied().collect();
            let edge_indices = graph.span_of_vertices(&vs).expect("vertices in range");
            Component {
                vertices,
                edge_indices,
            }
        })
        .collect();
    components.sort_by(|a, b| {
        b.vertices
            .len()
            .cmp(&a.vertices.len())
            .then_with(|| a.vertices.iter().cmp(b.vertices.iter()))
    });
    Ok(components)
}

/// Checks Eq.-style partition connectivity: every partition of V into t
/// parts is crossed by at least k*(t-1) edges. An edge crosses when its
/// ends meet at least two parts.
pub fn is_partition_connected_bruteforce(
    graph: &Hypergraph,
    k: usize,
    cap: usize,
) -> Result<bool, OracleError> {
    let n = graph.n();
    if n > cap {
        return Err(OracleError::CapExceeded {
            what: "vertex count",
            size: n,
            cap,
        });
    }
    if n == 0 {
        return Ok(true);
    }
    // Restricted-growth strings enumerate set partitions.
    let mut assignment = vec![0usize; n];
    loop {
        let t = assignment.iter().max().copied().unwrap_or(0) + 1;
        if t > 1 {
            let crossing = graph
                .edges()
                .iter()
                .filter(|e| {
                    let first = assignment[e.ends()[0]];
                    e.ends().iter().any(|&v| assignment[v] != first)
                })
                .count();
            if crossing < k * (t - 1) {
                return Ok(false);
            }
        }
        if !next_restricted_growth(&mut assignment) {
            return Ok(true);
        }
    }
}

fn next_restricted_growth(a: &mut [usize]) -> bool {
    let n = a.len();
    for i in (1..n).rev() {
        let max_prefix = a[..i].iter().max().copied().unwrap_or(0);
        if a[i] <= max_prefix {
            a[i] += 1;
            for x in a[i + 1..].iter_mut() {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Maximum-cardinality sparse edge subset by exhaustive enumeration; among
/// those, minimum total weight when weights are given, ties broken by the
/// lexicographically least sorted index list. Returns sorted edge indices.
pub fn max_sparse_subgraph_bruteforce(
    graph: &Hypergraph,
    params: SparsityParams,
    weights: Option<&[f64]>,
    edge_cap: usize,
    subset_cap: usize,
) -> Result<Vec<usize>, OracleError> {
    let m = graph.edge_count();
    // Edge subsets are 32-bit masks.
    let edge_cap = edge_cap.min(32);
    if m > edge_cap {
        return Err(OracleError::CapExceeded {
            what: "edge count",
            size: m,
            cap: edge_cap,
        });
    }
    if let Some(ws) = weights {
        if ws.len() != m {
            return Err(OracleError::Invalid(format!(
                "expected {m} weights, got {}",
                ws.len()
            )));
        }
    }
    let table = SupportTable::build(graph, subset_cap)?;
    for size in (0..=m).rev() {
        let mut best: Option<(f64, Vec<usize>, u32)> = None;
        for cand in same_popcount_masks(m, size) {
            if !table.edge_subset_sparse(params, cand) {
                continue;
            }
            let indices: Vec<usize> = (0..m).filter(|&i| cand >> i & 1 == 1).collect();
            let weight = weights
                .map(|ws| indices.iter().map(|&i| ws[i]).sum())
                .unwrap_or(0.0);
            let better = match &best {
                None => true,
                Some((bw, bi, _)) => weight < *bw || (weight == *bw && indices < *bi),
            };
            if better {
                best = Some((weight, indices, cand));
            }
        }
        if let Some((_, indices, _)) = best {
            return Ok(indices);
        }
    }
    Ok(Vec::new())
}

/// Matroid basis exchange (B3): for distinct tight B1, B2 on the same
/// vertex set, some e1 in B1-B2 and e2 in B2-B1 give a tight B1-e1+e2.
/// Vacuously true when B1 = B2 as edge multisets. Errors when an input is
/// not tight.
pub fn basis_exchange_check(
    b1: &Hypergraph,
    b2: &Hypergraph,
    params: SparsityParams,
    edge_cap: usize,
    subset_cap: usize,
) -> Result<bool, OracleError> {
    if b1.n() != b2.n() {
        return Err(OracleError::Invalid(
            "bases live on different vertex sets".into(),
        ));
    }
    for (name, g) in [("B1", b1), ("B2", b2)] {
        if g.edge_count() > edge_cap {
            return Err(OracleError::CapExceeded {
                what: "edge count",
                size: g.edge_count(),
                cap: edge_cap,
            });
        }
        if !is_tight_bruteforce(g, params, subset_cap)? {
            return Err(OracleError::Invalid(format!("{name} is not tight")));
        }
    }

    let (only_b1, only_b2) = multiset_differences(b1, b2);
    if only_b1.is_empty() {
        return Ok(true);
    }
    for &e1 in &only_b1 {
        for &e2 in &only_b2 {
            let mut edges: Vec<Vec<usize>> = b1
                .edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != e1)
                .map(|(_, e)| e.ends().to_vec())
                .collect();
            edges.push(b2.edges()[e2].ends().to_vec());
            let candidate = Hypergraph::new(b1.n(), edges)?;
            if is_tight_bruteforce(&candidate, params, subset_cap)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Edge indices of `a` not matched by `b` as multisets of endpoint sets,
/// and vice versa.
fn multiset_differences(a: &Hypergraph, b: &Hypergraph) -> (Vec<usize>, Vec<usize>) {
    let count = |g: &Hypergraph| {
        let mut m: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, e) in g.edges().iter().enumerate() {
            m.entry(e.ends().to_vec()).or_default().push(i);
        }
        m
    };
    let ma = count(a);
    let mb = count(b);
    let mut only_a = Vec::new();
    let mut only_b = Vec::new();
    for (ends, ia) in &ma {
        let matched = mb.get(ends).map_or(0, Vec::len);
        only_a.extend(ia.iter().skip(matched).copied());
    }
    for (ends, ib) in &mb {
        let matched = ma.get(ends).map_or(0, Vec::len);
        only_b.extend(ib.iter().skip(matched).copied());
    }
    (only_a, only_b)
}

/// Gosper's hack: all m-bit masks with the given popcount, ascending.
fn same_popcount_masks(m: usize, count: usize) -> impl Iterator<Item = u32> {
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let mut cur: u64 = if count == 0 { 0 } else { (1u64 << count) - 1 };
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur as u32;
        if count == 0 || cur == 0 {
            done = true;
            return Some(out);
        }
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        if cur > full {
            done = true;
        }
        Some(out)
    })
}

/// Precomputed span counts for every subset of the support.
struct SupportTable {
    support: Vec<usize>,
    /// Per support-subset mask: bitmask of edges contained in it.
    edges_in: Vec<u32>,
    /// Per support-subset mask: number of edges contained in it (valid even
    /// when the edge bitmask overflows).
    count_in: Vec<u32>,
    mask_ok: bool,
}

// The table holds one entry per support subset; past this point the
// allocation alone is hopeless, whatever cap the caller asked for.
const HARD_SUBSET_CAP: usize = 24;

impl SupportTable {
    fn build(graph: &Hypergraph, cap: usize) -> Result<SupportTable, OracleError> {
        let support = graph.support();
        let cap = cap.min(HARD_SUBSET_CAP);
        if support.len() > cap {
            return Err(OracleError::CapExceeded {
                what: "support size",
                size: support.len(),
                cap,
            });
        }
        let mut index = vec![usize::MAX; graph.n()];
        for (i, &v) in support.iter().enumerate() {
            index[v] = i;
        }
        let m = graph.edge_count();
        let mask_ok = m <= 32;
        let edge_masks: Vec<u32> = graph
            .edges()
            .iter()
            .map(|e| {
                e.ends()
                    .iter()
                    .fold(0u32, |acc, &v| acc | 1 << index[v] as u32)
            })
            .collect();
        let size = 1usize << support.len();
        let mut edges_in = vec![0u32; size];
        let mut count_in = vec![0u32; size];
        for sv in 0..size {
            for (i, &em) in edge_masks.iter().enumerate() {
                if em & !(sv as u32) == 0 {
                    count_in[sv] += 1;
                    if mask_ok {
                        edges_in[sv] |= 1 << i;
                    }
                }
            }
        }
        Ok(SupportTable {
            support,
            edges_in,
            count_in,
            mask_ok,
        })
    }

    fn all_subsets_sparse(&self, params: SparsityParams) -> bool {
        self.count_in.iter().enumerate().all(|(sv, &cnt)| {
            cnt == 0 || (cnt as i64) <= params.tight_edge_count((sv as u32).count_ones() as usize)
        })
    }

    fn tight_subsets(&self, params: SparsityParams) -> Vec<u32> {
        self.count_in
            .iter()
            .enumerate()
            .filter(|&(sv, &cnt)| {
                cnt > 0 && cnt as i64 == params.tight_edge_count((sv as u32).count_ones() as usize)
            })
            .map(|(sv, _)| sv as u32)
            .collect()
    }

    fn edge_subset_sparse(&self, params: SparsityParams, cand: u32) -> bool {
        assert!(self.mask_ok, "edge bitmask requires m <= 32");
        self.edges_in.iter().enumerate().all(|(sv, &em)| {
            let cnt = (em & cand).count_ones();
            cnt == 0 || (cnt as i64) <= params.tight_edge_count((sv as u32).count_ones() as usize)
        })
    }

    fn to_vertices(&self, mask: u32) -> BTreeSet<usize> {
        self.support
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }
}
