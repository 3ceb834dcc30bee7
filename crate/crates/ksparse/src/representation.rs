//! The represented pebble game. Alongside each accepted edge e the game
//! keeps r(e): the ends that held the l+1 certifying pebbles, updated as
//! shifts retail the edge. The hypergraph R with edge set {r(e)} is sparse
//! in the same class and has dimension at least (l+1)/k, which makes it a
//! lower-dimensional representation of the input; when R always equals the
//! input, the input is critical.

use crate::components::run_with_components_rule;
use crate::hypergraph::Hypergraph;
use crate::params::SparsityParams;
use crate::pebble::{GameState, RepresentationRule};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentError {
    #[error("graph is dependent; rejected edge indices: {0:?}")]
    Dependent(Vec<usize>),
}

/// Per-edge representative sets of a finished game, in input edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationMap {
    pub representatives: Vec<Vec<usize>>,
    pub tails: Vec<usize>,
}

impl RepresentationMap {
    pub fn from_state(state: &GameState) -> RepresentationMap {
        RepresentationMap {
            representatives: (0..state.edge_count())
                .map(|e| state.representative(e))
                .collect(),
            tails: state.tails().to_vec(),
        }
    }
}

/// Runs the represented game (with the components machinery for dependent
/// edge rejection) and returns R together with the representation map.
/// Errors with the rejected edges when the input is dependent.
pub fn represent_with_map(
    graph: &Hypergraph,
    params: SparsityParams,
) -> Result<(Hypergraph, RepresentationMap), RepresentError> {
    let order: Vec<usize> = (0..graph.edge_count()).collect();
    let outcome = run_with_components_rule(graph, params, &order, RepresentationRule::Validated);
    if !outcome.verdict.rejected.is_empty() {
        return Err(RepresentError::Dependent(outcome.verdict.rejected));
    }
    // Every edge accepted in input order, so game edge i is input edge i.
    let map = RepresentationMap::from_state(&outcome.state);
    let mut r = outcome.state.representation_graph();
    if let Some(ws) = graph.weights() {
        r = r.with_weights(ws.to_vec()).expect("edge counts match");
    }
    Ok((r, map))
}

/// The representation problem: a sparse hypergraph R with r(e) a subset of
/// e for every edge, in input edge order.
pub fn represent(graph: &Hypergraph, params: SparsityParams) -> Result<Hypergraph, RepresentError> {
    represent_with_map(graph, params).map(|(r, _)| r)
}

/// A sparse graph is critical when the representation found by the game is
/// the graph itself, edge for edge.
pub fn is_critical(graph: &Hypergraph, params: SparsityParams) -> Result<bool, RepresentError> {
    let r = represent(graph, params)?;
    Ok(graph
        .edges()
        .iter()
        .zip(r.edges())
        .all(|(a, b)| a.ends() == b.ends()))
}
