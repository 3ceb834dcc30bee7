//! Constructors for the canonical graph families: complete hypergraphs
//! with class multiplicities, seeded random hypergraphs for fuzzing, and
//! uniform tight graphs built inductively above the existence threshold.

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::Hypergraph;
use crate::params::{ParamError, SparsityParams};
use crate::pebble::GameState;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("no tight graph on {n} vertices: smallest is n1 = {n1}")]
    BelowRange { n: usize, n1: usize },
    #[error("{0}")]
    Invalid(String),
}

/// The complete hypergraph with multiplicity s*k - l for each s-edge, for
/// the listed dimensions. Dimensions with s*k <= l contribute nothing.
pub fn complete_hypergraph(
    n: usize,
    k: usize,
    l: usize,
    dims: &[usize],
) -> Result<Hypergraph, GenerateError> {
    let params = SparsityParams::new(k, l)?;
    if dims.contains(&0) {
        return Err(GenerateError::Invalid("edge dimension 0".into()));
    }
    let mut dims: Vec<usize> = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    let mut edges = Vec::new();
    for &s in &dims {
        let mult = params.multiplicity_bound(s);
        if mult <= 0 || s > n {
            continue;
        }
        for ends in (0..n).combinations(s) {
            for _ in 0..mult {
                edges.push(ends.clone());
            }
        }
    }
    Ok(Hypergraph::new(n, edges).expect("combinations are valid edges"))
}

/// The threshold n1 >= s above which s-uniform (k,l)-tight graphs exist
/// for every n. For l >= (s-1)k the binding constraint is the counting
/// bound k*n - l <= (s*k - l) * C(n, s); it can hold at n = s, fail on an
/// intermediate stretch, and then hold for good (for (s,k,l) = (2,3,5) it
/// holds at 2, fails at 3 and 4, holds from 5). The slack is convex in n,
/// so the failing stretch is one interval and n1 is the first n past it.
/// Below l = (s-1)k there is no failing stretch at all and n1 = s.
pub fn min_n1(s: usize, k: usize, l: usize) -> Result<usize, GenerateError> {
    if s == 0 {
        return Err(GenerateError::Invalid("edge dimension 0".into()));
    }
    let params = SparsityParams::new(k, l)?;
    params.check_dimension(s)?;
    if s == 1 && l > 0 {
        // Loop capacity (k-l)*n falls behind k*n - l for every n >= 2:
        // 1-uniform tight graphs then exist only at n = 1.
        return Err(GenerateError::Invalid(
            "1-uniform tight graphs with l > 0 exist only on one vertex".into(),
        ));
    }
    if l < (s - 1) * k {
        return Ok(s);
    }
    let slack =
        |n: usize| params.multiplicity_bound(s) * binomial(n, s) - params.tight_edge_count(n);
    let mut n = s;
    let mut last_failure = None;
    loop {
        let cur = slack(n);
        if cur < 0 {
            last_failure = Some(n);
        } else if slack(n + 1) >= cur {
            // Convex slack with a non-negative increment never dips again.
            return Ok(last_failure.map_or(s, |f| f + 1));
        }
        n += 1;
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

const SAMPLE_RETRIES: usize = 64;

/// An s-uniform (k,l)-tight hypergraph on n >= n1 vertices, deterministic
/// per seed. The base case prunes the complete multiplicity-(s*k-l) graph
/// on n1 vertices at vertex 0 down to the tight edge count; each further
/// vertex gains k edges, sampled and validated through a running pebble
/// game, with a lexicographic fallback when sampling stalls.
pub fn generate_tight(
    n: usize,
    s: usize,
    k: usize,
    l: usize,
    seed: u64,
) -> Result<Hypergraph, GenerateError> {
    let n1 = min_n1(s, k, l)?;
    if n < n1 {
        return Err(GenerateError::BelowRange { n, n1 });
    }
    let params = SparsityParams::new(k, l).expect("checked by min_n1");

    let mut base: Vec<Vec<usize>> = Vec::new();
    let mult = params.multiplicity_bound(s);
    for ends in (0..n1).combinations(s) {
        for _ in 0..mult {
            base.push(ends.clone());
        }
    }
    let target = params.tight_edge_count(n1);
    debug_assert!(target >= 1);
    let mut excess = base.len() as i64 - target;
    // Prune highest-index edges at the designated vertex first.
    for i in (0..base.len()).rev() {
        if excess == 0 {
            break;
        }
        if base[i].contains(&0) {
            base.remove(i);
            excess -= 1;
        }
    }
    if excess != 0 {
        return Err(GenerateError::Invalid(format!(
            "base pruning stalled with excess {excess}"
        )));
    }

    let mut state = GameState::new(n, params);
    let accept = |state: &mut GameState, ends: &[usize]| -> bool {
        let ok = state
            .collect_pebbles(ends, l + 1)
            .expect("generated ends are valid");
        if !ok {
            return false;
        }
        let tail = *ends
            .iter()
            .find(|&&v| state.pebbles(v) > 0)
            .expect("pebbles collected");
        state
            .add_edge_move(ends, tail)
            .expect("collection certified");
        true
    };

    for ends in &base {
        if !accept(&mut state, ends) {
            return Err(GenerateError::Invalid(
                "base graph rejected by the pebble game".into(),
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in n1..n {
        let mut added = 0;
        for _ in 0..SAMPLE_RETRIES {
            if added == k {
                break;
            }
            let mut ends = sample_distinct(&mut rng, u, s - 1);
            ends.push(u);
            if accept(&mut state, &ends) {
                added += 1;
            }
        }
        if added < k {
            // Lexicographic fallback: greedy over every candidate edge at
            // u with full multiplicity; the matroid property guarantees k
            // acceptances.
            'outer: for others in (0..u).combinations(s - 1) {
                let mut ends = others.clone();
                ends.push(u);
                for _ in 0..params.multiplicity_bound(s).max(0) {
                    if added == k {
                        break 'outer;
                    }
                    if !accept(&mut state, &ends) {
                        break;
                    }
                    added += 1;
                }
            }
        }
        if added < k {
            return Err(GenerateError::Invalid(format!(
                "could not attach {k} edges at vertex {u}"
            )));
        }
    }

    debug_assert_eq!(state.total_pebbles(), l);
    Ok(state.graph())
}

/// m edges drawn uniformly: dimension uniform over `dims`, endpoints a
/// uniform s-subset. Deterministic per seed.
pub fn random_hypergraph(
    n: usize,
    m: usize,
    dims: &[usize],
    seed: u64,
) -> Result<Hypergraph, GenerateError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(GenerateError::Invalid(
            "dims must be nonempty, each >= 1".into(),
        ));
    }
    let max_dim = *dims.iter().max().expect("nonempty");
    if n < max_dim {
        return Err(GenerateError::Invalid(format!(
            "n = {n} smaller than max dimension {max_dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let s = dims[rng.random_range(0..dims.len())];
        edges.push(sample_distinct(&mut rng, n, s));
    }
    Ok(Hypergraph::new(n, edges).expect("sampled edges are valid"))
}

/// `count` distinct vertices from 0..n by partial Fisher-Yates.
fn sample_distinct(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<usize> {
    debug_assert!(count <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..count {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}
